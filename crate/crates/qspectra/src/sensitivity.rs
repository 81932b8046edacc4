//! Relevant variables, retracts, and mixed-edge counts.
//!
//! A variable is relevant when fixing all others can still change the value
//! of f. I[f] counts the mixed colored edges of a Cayley graph (edges whose
//! endpoints get different values); on the cycle power it satisfies the
//! spectral identity
//!
//!   I[f] = c/q^n · Σ_z |W_f(z)|² Σ_k a_k(z) sin²(πk/q)
//!
//! with c = 1 for ±1-valued f and c = 4/3 for three-valued f, and on the
//! Hamming graph  3·I[f] = q/q^n · Σ_z |W_f(z)|² wt(z)  for three-valued f.

use serde::Serialize;

use crate::domain::{DiscreteFunction, DomainSpec, ValueKind, Values};
use crate::error::{Error, Result};
use crate::graphs::{edges, sin2_table, sin2_weight_flat, GraphKind};
use crate::transform::Spectrum;

/// Mixed-edge totals, overall and per direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCount {
    pub total: u64,
    pub per_direction: Vec<u64>,
}

/// Everything sensitivity-related about one function.
#[derive(Debug, Clone, Serialize)]
pub struct SensitivityReport {
    /// 0-based indices of the relevant variables, ascending.
    pub relevant: Vec<usize>,
    pub t: u32,
    pub i_cycle: u64,
    pub i_hamming: u64,
    pub per_direction_cycle: Vec<u64>,
    pub per_direction_hamming: Vec<u64>,
}

// Slice-level workhorses shared with the sweep engine; value equality is
// symbol equality for every exact kind.

pub(crate) fn mixed_edges_slice<T: PartialEq>(
    vals: &[T],
    kind: GraphKind,
    spec: DomainSpec,
) -> EdgeCount {
    let mut per_direction = vec![0u64; spec.n() as usize];
    for e in edges(kind, spec) {
        if vals[e.x] != vals[e.y] {
            per_direction[e.direction] += 1;
        }
    }
    EdgeCount {
        total: per_direction.iter().sum(),
        per_direction,
    }
}

pub(crate) fn relevant_slice<T: PartialEq>(vals: &[T], spec: DomainSpec) -> Vec<usize> {
    let q = spec.q() as usize;
    let mut out = Vec::new();
    'var: for i in 0..spec.n() as usize {
        let stride = spec.stride(i);
        let block = stride * q;
        let mut base = 0;
        while base < spec.size() {
            for lo in 0..stride {
                let first = &vals[base + lo];
                for a in 1..q {
                    if vals[base + lo + a * stride] != *first {
                        out.push(i);
                        continue 'var;
                    }
                }
            }
            base += block;
        }
    }
    out
}

/// Σ_j t_j (q − t_j) where t_1, …, t_k are the equality-class sizes of the
/// q retracts at coordinate i.
pub(crate) fn retract_pair_count_slice<T: PartialEq>(
    vals: &[T],
    spec: DomainSpec,
    i: usize,
) -> u64 {
    let q = spec.q() as usize;
    let stride = spec.stride(i);
    let block = stride * q;
    // Layer a of coordinate i, as a predicate-equal comparison.
    let layers_equal = |a: usize, b: usize| -> bool {
        let mut base = 0;
        while base < spec.size() {
            for lo in 0..stride {
                if vals[base + lo + a * stride] != vals[base + lo + b * stride] {
                    return false;
                }
            }
            base += block;
        }
        true
    };
    let mut class_of = vec![usize::MAX; q];
    let mut sizes: Vec<u64> = Vec::new();
    for a in 0..q {
        let mut found = None;
        for (b, &cls) in class_of.iter().enumerate().take(a) {
            if cls != usize::MAX && layers_equal(a, b) {
                found = Some(cls);
                break;
            }
        }
        match found {
            Some(c) => {
                class_of[a] = c;
                sizes[c] += 1;
            }
            None => {
                class_of[a] = sizes.len();
                sizes.push(1);
            }
        }
    }
    if sizes.len() == 1 {
        return 0;
    }
    sizes.iter().map(|&t| t * (q as u64 - t)).sum()
}

/// Number of positions where the retracts at layers a and b of coordinate i
/// differ (the support of their difference).
pub(crate) fn retract_diff_support_slice<T: PartialEq>(
    vals: &[T],
    spec: DomainSpec,
    i: usize,
    a: usize,
    b: usize,
) -> u64 {
    let q = spec.q() as usize;
    let stride = spec.stride(i);
    let block = stride * q;
    let mut count = 0u64;
    let mut base = 0;
    while base < spec.size() {
        for lo in 0..stride {
            if vals[base + lo + a * stride] != vals[base + lo + b * stride] {
                count += 1;
            }
        }
        base += block;
    }
    count
}

fn with_exact_slices<R>(
    f: &DiscreteFunction,
    why: &'static str,
    g: impl FnOnce(&dyn SliceOps) -> R,
) -> Result<R> {
    match f.values() {
        Values::Pm1(v) => Ok(g(&SliceHolder(v.as_slice(), f.spec()))),
        Values::Omega3(v) => Ok(g(&SliceHolder(v.as_slice(), f.spec()))),
        Values::Bool01(v) => Ok(g(&SliceHolder(v.as_slice(), f.spec()))),
        Values::Int(v) => Ok(g(&SliceHolder(v.as_slice(), f.spec()))),
        Values::Complex(_) => Err(Error::KindMismatch {
            kind: "complex",
            why,
        }),
    }
}

trait SliceOps {
    fn mixed(&self, kind: GraphKind) -> EdgeCount;
    fn relevant(&self) -> Vec<usize>;
    fn pair_count(&self, i: usize) -> u64;
    fn diff_support(&self, i: usize, a: usize, b: usize) -> u64;
}

struct SliceHolder<'a, T: PartialEq>(&'a [T], DomainSpec);

impl<T: PartialEq> SliceOps for SliceHolder<'_, T> {
    fn mixed(&self, kind: GraphKind) -> EdgeCount {
        mixed_edges_slice(self.0, kind, self.1)
    }
    fn relevant(&self) -> Vec<usize> {
        relevant_slice(self.0, self.1)
    }
    fn pair_count(&self, i: usize) -> u64 {
        retract_pair_count_slice(self.0, self.1, i)
    }
    fn diff_support(&self, i: usize, a: usize, b: usize) -> u64 {
        retract_diff_support_slice(self.0, self.1, i, a, b)
    }
}

/// The retract f|_{x_i = a}: fix coordinate i (0-based) to the residue a.
pub fn retract(f: &DiscreteFunction, i: usize, a: u32) -> Result<DiscreteFunction> {
    let spec = f.spec();
    if i >= spec.n() as usize {
        return Err(Error::VariableOutOfRange {
            index: i,
            n: spec.n(),
        });
    }
    if a >= spec.q() {
        return Err(Error::CoordOutOfRange {
            value: a,
            q: spec.q(),
        });
    }
    let sub = spec.retracted()?;
    let stride = spec.stride(i);
    let src = |flat: usize| -> usize {
        let hi = flat / stride;
        let lo = flat % stride;
        hi * stride * spec.q() as usize + a as usize * stride + lo
    };
    let values = match f.values() {
        Values::Pm1(v) => Values::Pm1((0..sub.size()).map(|j| v[src(j)]).collect()),
        Values::Omega3(v) => Values::Omega3((0..sub.size()).map(|j| v[src(j)]).collect()),
        Values::Bool01(v) => Values::Bool01((0..sub.size()).map(|j| v[src(j)]).collect()),
        Values::Int(v) => Values::Int((0..sub.size()).map(|j| v[src(j)]).collect()),
        Values::Complex(v) => Values::Complex((0..sub.size()).map(|j| v[src(j)]).collect()),
    };
    DiscreteFunction::new(sub, values)
}

/// Indices of the relevant variables (ascending). Exact kinds only.
pub fn relevant_variables(f: &DiscreteFunction) -> Result<Vec<usize>> {
    with_exact_slices(f, "relevance needs exact value comparison", |s| {
        s.relevant()
    })
}

/// The number of relevant variables.
pub fn t_of(f: &DiscreteFunction) -> Result<u32> {
    Ok(relevant_variables(f)?.len() as u32)
}

/// Count mixed colored edges, total and per direction. Exact kinds only.
pub fn mixed_edges(f: &DiscreteFunction, kind: GraphKind) -> Result<EdgeCount> {
    with_exact_slices(f, "mixed-edge counting needs exact value comparison", |s| {
        s.mixed(kind)
    })
}

/// Relevant variables together with mixed-edge counts on both graphs.
pub fn sensitivity_report(f: &DiscreteFunction) -> Result<SensitivityReport> {
    let (relevant, cyc, ham) = with_exact_slices(f, "sensitivity needs an exact kind", |s| {
        (
            s.relevant(),
            s.mixed(GraphKind::CyclePower),
            s.mixed(GraphKind::Hamming),
        )
    })?;
    Ok(SensitivityReport {
        t: relevant.len() as u32,
        relevant,
        i_cycle: cyc.total,
        i_hamming: ham.total,
        per_direction_cycle: cyc.per_direction,
        per_direction_hamming: ham.per_direction,
    })
}

fn spectral_weighted_sum(s: &Spectrum, weight: impl Fn(usize) -> f64) -> f64 {
    let mut acc = 0.0;
    for z in 0..s.spec().size() {
        let nsq = s.norm_sq(z);
        if nsq != 0.0 {
            acc += nsq * weight(z);
        }
    }
    acc
}

/// I[f] on C_q^n from the spectrum of a ±1-valued function.
pub fn spectral_i_two_valued(s: &Spectrum) -> Result<f64> {
    if s.source_kind() != ValueKind::TwoValuedPm1 {
        return Err(Error::KindMismatch {
            kind: s.source_kind().token(),
            why: "this identity holds for pm1 values",
        });
    }
    let spec = s.spec();
    let sin2 = sin2_table(spec.q());
    Ok(spectral_weighted_sum(s, |z| sin2_weight_flat(spec, &sin2, z)) / spec.size() as f64)
}

/// I[f] on C_q^n from the spectrum of a three-valued function (values in
/// {1, ω, ω²}); the 4/3 factor comes from re-balancing the quadratic form.
pub fn spectral_i_three_valued(s: &Spectrum) -> Result<f64> {
    if s.source_kind() != ValueKind::ThreeValuedOmega {
        return Err(Error::KindMismatch {
            kind: s.source_kind().token(),
            why: "this identity holds for omega3 values",
        });
    }
    let spec = s.spec();
    let sin2 = sin2_table(spec.q());
    Ok(
        4.0 * spectral_weighted_sum(s, |z| sin2_weight_flat(spec, &sin2, z))
            / (3.0 * spec.size() as f64),
    )
}

/// I[f] on H(n,q) from the spectrum of a three-valued function:
/// I[f] = q/(3 q^n) · Σ_z |W_f(z)|² wt(z).
pub fn spectral_i_three_valued_hamming(s: &Spectrum) -> Result<f64> {
    if s.source_kind() != ValueKind::ThreeValuedOmega {
        return Err(Error::KindMismatch {
            kind: s.source_kind().token(),
            why: "this identity holds for omega3 values",
        });
    }
    let spec = s.spec();
    let q = spec.q() as usize;
    let wt = |z: usize| {
        let mut rest = z;
        let mut w = 0u32;
        for _ in 0..spec.n() {
            if !rest.is_multiple_of(q) {
                w += 1;
            }
            rest /= q;
        }
        w as f64
    };
    Ok(spec.q() as f64 * spectral_weighted_sum(s, wt) / (3.0 * spec.size() as f64))
}

/// Group the q retracts at coordinate i into equality classes of sizes
/// t_1, …, t_k and return Σ_j t_j (q − t_j) — the number of ordered pairs
/// of distinct retracts. Zero iff the variable is irrelevant.
pub fn retract_pair_count(f: &DiscreteFunction, i: usize) -> Result<u64> {
    let spec = f.spec();
    if i >= spec.n() as usize {
        return Err(Error::VariableOutOfRange {
            index: i,
            n: spec.n(),
        });
    }
    with_exact_slices(f, "retract comparison needs an exact kind", |s| {
        s.pair_count(i)
    })
}

/// Outcome of the support and vanishing-coefficient checks for one function.
#[derive(Debug, Clone, Serialize)]
pub struct SupportBoundsReport {
    pub deg0: u32,
    pub t: u32,
    pub support_size: u64,
    /// |supp(f)| ≥ q^{n−deg0}; only checked for q ≥ 3 and nonzero f.
    pub support_bound_checked: bool,
    pub support_bound_holds: bool,
    /// Every differing retract pair has difference-support ≥ q^{n−deg0}
    /// (q ≥ 3).
    pub retract_support_checked: bool,
    pub retract_support_holds: bool,
    /// W_f(z) = 0 whenever z_i ≠ 0 for an irrelevant variable i.
    pub vanishing_holds: bool,
    pub deg0_le_t: bool,
    pub deg0_le_n_minus_t: bool,
}

/// Verify the support lower bounds and the vanishing-coefficient property
/// against a function and its spectrum-derived degree.
pub fn check_support_bounds(f: &DiscreteFunction) -> Result<SupportBoundsReport> {
    let spec = f.spec();
    let s = crate::transform::forward(f);
    let profile = crate::degrees::degree_profile(&s, &[])?;
    let deg0 = profile.deg0;
    let relevant = relevant_variables(f)?;
    let t = relevant.len() as u32;
    let is_relevant = |i: usize| relevant.binary_search(&i).is_ok();

    let support_size = match f.values() {
        Values::Pm1(_) | Values::Omega3(_) => spec.size() as u64,
        Values::Bool01(v) => v.iter().filter(|&&b| b != 0).count() as u64,
        Values::Int(v) => v.iter().filter(|&&x| x != 0).count() as u64,
        Values::Complex(_) => {
            return Err(Error::KindMismatch {
                kind: "complex",
                why: "support bounds need an exact kind",
            })
        }
    };

    let q = spec.q();
    let floor = |e: u32| (q as u64).pow(e);
    let bound_applicable = q >= 3;
    let support_bound_holds = !bound_applicable || support_size >= floor(spec.n() - deg0);

    let mut retract_support_holds = true;
    if bound_applicable {
        let need = floor(spec.n() - deg0);
        for i in 0..spec.n() as usize {
            for a in 0..q as usize {
                for b in (a + 1)..q as usize {
                    let diff = with_exact_slices(f, "support bounds need an exact kind", |s| {
                        s.diff_support(i, a, b)
                    })?;
                    if diff > 0 && diff < need {
                        retract_support_holds = false;
                    }
                }
            }
        }
    }

    let mut vanishing_holds = true;
    'outer: for z in 0..spec.size() {
        if s.is_zero_at(z) {
            continue;
        }
        for i in 0..spec.n() as usize {
            if spec.digit(z, i) != 0 && !is_relevant(i) {
                vanishing_holds = false;
                break 'outer;
            }
        }
    }

    Ok(SupportBoundsReport {
        deg0,
        t,
        support_size,
        support_bound_checked: bound_applicable,
        support_bound_holds,
        retract_support_checked: bound_applicable,
        retract_support_holds,
        vanishing_holds,
        deg0_le_t: deg0 <= t,
        deg0_le_n_minus_t: deg0 <= spec.n() - t,
    })
}
