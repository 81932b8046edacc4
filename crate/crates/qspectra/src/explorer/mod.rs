//! Function-family generators, corpus sweeps, and extremal search.
//!
//! Exhaustive sweeps stream the whole function space in reflected Gray
//! order: one table entry changes per step, so the spectrum is maintained
//! incrementally via ΔW(z) = Δf(x)·ξ^{−⟨x,z⟩} instead of re-transforming
//! every candidate. Random corpora are drawn reproducibly from a seeded
//! generator. Both modes shard the corpus and merge shard summaries with
//! order-independent operations, so results do not depend on the worker
//! count.

mod gray;

use std::cell::OnceCell;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bounds_three_valued, bounds_two_valued, BoundReport};
use crate::degrees::{
    algebraic_degree, check_prop2, check_prop3, degree_profile_from, moebius, nnf,
    numerical_degree, DegreeProfile,
};
use crate::domain::{CycloNum, DiscreteFunction, DomainSpec, ValueKind, Values};
use crate::error::{Error, Result};
use crate::graphs::GraphKind;
use crate::sensitivity::{
    check_support_bounds, mixed_edges_slice, relevant_slice, retract_pair_count_slice,
    spectral_i_three_valued, spectral_i_three_valued_hamming, spectral_i_two_valued, EdgeCount,
};
use crate::transform::{forward, parseval_sum_exact, working_order, Spectrum};
use crate::util::sig12;

// ---------------------------------------------------------------------------
// Generators.

/// The product family on Z_4^n: f_m(x) = h(x_1)⋯h(x_m) with h = (1,1,0,0).
/// Each factor kills the middle frequency (Σ_x h(x) i^{−2x} = 0), which
/// pins deg_2 = deg_0 = m while t = m.
pub fn gen_fm(q: u32, m: u32, n: u32) -> Result<DiscreteFunction> {
    if q != 4 {
        return Err(Error::InvalidFamily(format!(
            "the fm family is defined for q = 4, got {q}"
        )));
    }
    if m < 1 || m > n {
        return Err(Error::InvalidFamily(format!(
            "need 1 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    let spec = DomainSpec::new(4, n)?;
    let vals = (0..spec.size())
        .map(|x| u8::from((0..m as usize).all(|k| spec.digit(x, k) <= 1)))
        .collect();
    DiscreteFunction::new(spec, Values::Bool01(vals))
}

/// Built-in named functions.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedFamily {
    /// x_1 ⊕ ⋯ ⊕ x_n (q = 2).
    XorAll,
    /// (−1)^{x_1} + ⋯ + (−1)^{x_n} = n − 2(x_1 + ⋯ + x_n) (q = 2).
    Jmath,
    /// The i-th coordinate (0-based, q = 2).
    Dictator(usize),
    /// Majority of the bits (q = 2, odd n).
    Majority,
    /// A constant integer.
    Constant(i64),
    /// The character φ_z, as a complex-valued function.
    Character(Vec<u32>),
}

pub fn gen_named(family: &NamedFamily, spec: DomainSpec) -> Result<DiscreteFunction> {
    let need_binary = |name: &str| -> Result<()> {
        if spec.q() != 2 {
            return Err(Error::InvalidFamily(format!(
                "{name} requires q = 2, got q = {}",
                spec.q()
            )));
        }
        Ok(())
    };
    match family {
        NamedFamily::XorAll => {
            need_binary("xor_all")?;
            let vals = (0..spec.size())
                .map(|x| (x.count_ones() % 2) as u8)
                .collect();
            DiscreteFunction::new(spec, Values::Bool01(vals))
        }
        NamedFamily::Jmath => {
            need_binary("jmath")?;
            let n = spec.n() as i64;
            let vals = (0..spec.size())
                .map(|x| n - 2 * x.count_ones() as i64)
                .collect();
            DiscreteFunction::new(spec, Values::Int(vals))
        }
        NamedFamily::Dictator(i) => {
            need_binary("dictator")?;
            if *i >= spec.n() as usize {
                return Err(Error::InvalidFamily(format!(
                    "dictator index {i} out of range for n = {}",
                    spec.n()
                )));
            }
            let vals = (0..spec.size()).map(|x| spec.digit(x, *i) as u8).collect();
            DiscreteFunction::new(spec, Values::Bool01(vals))
        }
        NamedFamily::Majority => {
            need_binary("majority")?;
            if spec.n().is_multiple_of(2) {
                return Err(Error::InvalidFamily(
                    "majority requires an odd number of variables".into(),
                ));
            }
            let half = spec.n() / 2;
            let vals = (0..spec.size())
                .map(|x| u8::from(x.count_ones() > half))
                .collect();
            DiscreteFunction::new(spec, Values::Bool01(vals))
        }
        NamedFamily::Constant(c) => Ok(DiscreteFunction::constant_int(spec, *c)),
        NamedFamily::Character(z) => DiscreteFunction::character(spec, z),
    }
}

// ---------------------------------------------------------------------------
// Corpora and laws.

/// Which functions a sweep runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corpus {
    pub spec: DomainSpec,
    pub kind: ValueKind,
    pub mode: CorpusMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusMode {
    /// Every function of the kind, streamed in Gray order.
    Exhaustive,
    /// `count` tables drawn uniformly and reproducibly from `seed`.
    Random { count: u64, seed: u64 },
}

/// The checks a sweep can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    /// Σ|W|² = q^n·Σ|f|², exactly.
    Parseval,
    /// Spectral mixed-edge identities vs direct counts.
    SpectralI,
    /// Two-valued bounds (π²/4)deg₁q^{d−1} and (π²/2)deg₂q^{d−2}.
    Theorem1,
    /// Three-valued bound d·q^{d+1}/(3(q−1)).
    Theorem2,
    /// Three-valued bounds (π²/3)deg₁q^{d−1} and (2π²/3)deg₂q^{d−2}.
    Theorem3,
    /// Proof-step inequalities: I ≥ 2tq^{n−d} (cycle, two-valued),
    /// I ≥ (q−1)tq^{n−d} (Hamming, three-valued), retract pairs ≥ 2q−2.
    ProofSteps,
    /// Support lower bounds and vanishing coefficients.
    Support,
    /// Interpolation-degree comparison through x ↦ ξ^x.
    Prop2,
    /// Algebraic-degree truth-set report (Boolean, q = 2).
    Prop3,
    /// Degree identities: deg_m = deg_0 for q ∈ {2,3}, plus the Boolean
    /// relations deg_alg ≤ deg_num = deg_0((−1)^f) and spectrum reflection.
    Degrees,
}

pub const ALL_LAWS: [Law; 10] = [
    Law::Parseval,
    Law::SpectralI,
    Law::Theorem1,
    Law::Theorem2,
    Law::Theorem3,
    Law::ProofSteps,
    Law::Support,
    Law::Prop2,
    Law::Prop3,
    Law::Degrees,
];

impl Law {
    pub fn token(&self) -> &'static str {
        match self {
            Law::Parseval => "parseval",
            Law::SpectralI => "spectral_I",
            Law::Theorem1 => "theorem1",
            Law::Theorem2 => "theorem2",
            Law::Theorem3 => "theorem3",
            Law::ProofSteps => "proof_steps",
            Law::Support => "support",
            Law::Prop2 => "prop2",
            Law::Prop3 => "prop3",
            Law::Degrees => "degrees",
        }
    }

    pub fn from_token(tok: &str) -> Option<Law> {
        ALL_LAWS.iter().copied().find(|l| l.token() == tok)
    }

    /// Whether this law is defined for a corpus of the given kind and q.
    pub fn applies_to(&self, kind: ValueKind, q: u32) -> bool {
        use ValueKind::*;
        match self {
            Law::Parseval | Law::Support | Law::Prop2 | Law::ProofSteps => {
                matches!(kind, TwoValuedPm1 | ThreeValuedOmega | Boolean01)
            }
            Law::SpectralI => matches!(kind, TwoValuedPm1 | ThreeValuedOmega),
            Law::Theorem1 => matches!(kind, TwoValuedPm1 | Boolean01),
            Law::Theorem2 | Law::Theorem3 => matches!(kind, ThreeValuedOmega),
            Law::Prop3 => matches!(kind, Boolean01) && q == 2,
            Law::Degrees => {
                matches!(kind, TwoValuedPm1 | ThreeValuedOmega | Boolean01) && (q == 2 || q == 3)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Summaries.

#[derive(Debug, Clone, Serialize)]
pub struct CorpusInfo {
    pub q: u32,
    pub n: u32,
    pub kind: String,
    pub mode: String,
    pub functions: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Random-corpus generator, fixed so summaries stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub function_index: u64,
    pub table: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawSummary {
    pub law: String,
    pub checked: u64,
    pub skipped: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<Violation>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub detail: BTreeMap<String, u64>,
}

/// A tightness-ranked function found during a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalRecord {
    pub function_index: u64,
    pub table: String,
    pub deg0: u32,
    pub deg1: u64,
    pub deg2: u64,
    pub t: u32,
    pub best_bound: String,
    pub best_bound_value: f64,
    pub tightness: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub schema_version: u32,
    pub corpus: CorpusInfo,
    pub laws: Vec<LawSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremal: Option<Vec<ExtremalRecord>>,
}

impl SweepSummary {
    pub fn total_violations(&self) -> u64 {
        self.laws.iter().map(|l| l.violations).sum()
    }
}

// ---------------------------------------------------------------------------
// The sweep engine.

struct Engine {
    spec: DomainSpec,
    kind: ValueKind,
    laws: Vec<Law>,
    collect_extremal: bool,
    top_k: usize,
}

impl Engine {
    fn new(corpus: &Corpus, laws: &[Law], collect_extremal: bool, top_k: usize) -> Result<Engine> {
        let kind = corpus.kind;
        if kind.symbol_count().is_none() {
            return Err(Error::KindMismatch {
                kind: kind.token(),
                why: "sweeps enumerate pm1, omega3 and bool01 tables",
            });
        }
        for law in laws {
            if !law.applies_to(kind, corpus.spec.q()) {
                return Err(Error::LawNotApplicable {
                    law: law.token(),
                    what: format!("kind {} with q = {}", kind.token(), corpus.spec.q()),
                });
            }
        }
        Ok(Engine {
            spec: corpus.spec,
            kind,
            laws: laws.to_vec(),
            collect_extremal,
            top_k,
        })
    }
}

/// Per-function context with lazily computed artifacts.
struct FnView<'a> {
    engine: &'a Engine,
    index: u64,
    table: &'a [u8],
    spectrum: &'a Spectrum,
    function: OnceCell<DiscreteFunction>,
    profile: OnceCell<Option<DegreeProfile>>,
    pm1_profile: OnceCell<Option<DegreeProfile>>,
    sens: OnceCell<SensData>,
}

struct SensData {
    relevant: Vec<usize>,
    t: u32,
    cycle: EdgeCount,
    hamming: EdgeCount,
}

impl<'a> FnView<'a> {
    fn new(engine: &'a Engine, index: u64, table: &'a [u8], spectrum: &'a Spectrum) -> Self {
        FnView {
            engine,
            index,
            table,
            spectrum,
            function: OnceCell::new(),
            profile: OnceCell::new(),
            pm1_profile: OnceCell::new(),
            sens: OnceCell::new(),
        }
    }

    fn spec(&self) -> DomainSpec {
        self.engine.spec
    }

    fn function(&self) -> &DiscreteFunction {
        self.function.get_or_init(|| {
            DiscreteFunction::from_symbols(self.spec(), self.engine.kind, self.table).unwrap()
        })
    }

    /// Degree profile of the function itself; None for the zero function
    /// (possible only for bool01).
    fn profile(&self) -> Option<&DegreeProfile> {
        self.profile
            .get_or_init(|| degree_profile_from(self.spec(), |z| !self.spectrum.is_zero_at(z), &[]))
            .as_ref()
    }

    /// Degree profile of the ±1 recoding; equals `profile` for pm1 input.
    /// For bool01 it is derived from the same spectrum: away from z = 0 the
    /// supports agree, and W_{1−2f}(0) = q^n − 2·W_f(0).
    fn pm1_profile(&self) -> Option<&DegreeProfile> {
        self.pm1_profile
            .get_or_init(|| match self.engine.kind {
                ValueKind::Boolean01 => {
                    let ones: usize = self.table.iter().map(|&b| b as usize).sum();
                    let zero_in = 2 * ones != self.spec().size();
                    degree_profile_from(
                        self.spec(),
                        |z| {
                            if z == 0 {
                                zero_in
                            } else {
                                !self.spectrum.is_zero_at(z)
                            }
                        },
                        &[],
                    )
                }
                _ => degree_profile_from(self.spec(), |z| !self.spectrum.is_zero_at(z), &[]),
            })
            .as_ref()
    }

    fn sens(&self) -> &SensData {
        self.sens.get_or_init(|| {
            let relevant = relevant_slice(self.table, self.spec());
            SensData {
                t: relevant.len() as u32,
                relevant,
                cycle: mixed_edges_slice(self.table, GraphKind::CyclePower, self.spec()),
                hamming: mixed_edges_slice(self.table, GraphKind::Hamming, self.spec()),
            }
        })
    }

    fn table_string(&self) -> String {
        table_string(self.engine.kind, self.table)
    }

    /// Bound report with the degrees read the way each theorem expects.
    fn bound_report(&self) -> Option<BoundReport> {
        let q = self.spec().q();
        let t = self.sens().t;
        match self.engine.kind {
            ValueKind::TwoValuedPm1 | ValueKind::Boolean01 => {
                let p = self.pm1_profile()?;
                if p.deg0 == 0 {
                    return None;
                }
                Some(bounds_two_valued(p, q, t))
            }
            ValueKind::ThreeValuedOmega => {
                let p = self.profile()?;
                if p.deg0 == 0 {
                    return None;
                }
                Some(bounds_three_valued(p, q, t))
            }
            _ => None,
        }
    }
}

fn table_string(kind: ValueKind, table: &[u8]) -> String {
    match kind {
        ValueKind::TwoValuedPm1 => table
            .iter()
            .map(|&s| if s == 0 { '-' } else { '+' })
            .collect(),
        _ => table.iter().map(|&s| char::from(b'0' + s)).collect(),
    }
}

#[derive(Debug, Clone, Default)]
struct LawAcc {
    checked: u64,
    skipped: u64,
    violations: u64,
    first: Option<Violation>,
    detail: BTreeMap<&'static str, u64>,
}

impl LawAcc {
    fn violation(&mut self, view: &FnView, message: String) {
        self.violations += 1;
        if self.first.is_none() {
            self.first = Some(Violation {
                function_index: view.index,
                table: view.table_string(),
                message,
            });
        }
    }

    fn bump(&mut self, key: &'static str) {
        *self.detail.entry(key).or_insert(0) += 1;
    }

    fn merge(&mut self, other: LawAcc) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.violations += other.violations;
        if self.first.is_none() {
            self.first = other.first;
        }
        for (k, v) in other.detail {
            *self.detail.entry(k).or_insert(0) += v;
        }
    }
}

const SPECTRAL_TOL: f64 = 1e-6;

fn check_spectral_identity(direct: u64, spectral: f64) -> std::result::Result<(), String> {
    if (spectral - direct as f64).abs() > SPECTRAL_TOL {
        return Err(format!(
            "spectral value {spectral} vs direct count {direct}"
        ));
    }
    Ok(())
}

fn check_law(law: Law, view: &FnView, acc: &mut LawAcc) {
    let spec = view.spec();
    let q = spec.q();
    let n = spec.n();
    match law {
        Law::Parseval => {
            let lhs = parseval_sum_exact(view.spectrum).expect("sweep spectra are exact");
            let sum_sq: i128 = match view.engine.kind {
                ValueKind::Boolean01 => view.table.iter().map(|&b| b as i128).sum(),
                _ => spec.size() as i128,
            };
            let rhs = spec.size() as i128 * sum_sq;
            acc.checked += 1;
            if lhs != rhs {
                acc.violation(view, format!("parseval sum {lhs}, expected {rhs}"));
            }
        }
        Law::SpectralI => {
            acc.checked += 1;
            let outcome = match view.engine.kind {
                ValueKind::TwoValuedPm1 => {
                    let i = spectral_i_two_valued(view.spectrum).expect("kind checked");
                    check_spectral_identity(view.sens().cycle.total, i)
                }
                ValueKind::ThreeValuedOmega => {
                    let ic = spectral_i_three_valued(view.spectrum).expect("kind checked");
                    let ih = spectral_i_three_valued_hamming(view.spectrum).expect("kind checked");
                    check_spectral_identity(view.sens().cycle.total, ic)
                        .and_then(|()| check_spectral_identity(view.sens().hamming.total, ih))
                }
                _ => unreachable!("validated in Engine::new"),
            };
            if let Err(msg) = outcome {
                acc.violation(view, msg);
            }
        }
        Law::Theorem1 | Law::Theorem2 | Law::Theorem3 => {
            let Some(report) = view.bound_report() else {
                acc.skipped += 1; // constants carry no bound
                return;
            };
            let wanted: &[&str] = match law {
                Law::Theorem1 => &["two_valued_deg1", "two_valued_deg2"],
                Law::Theorem2 => &["three_valued_deg0"],
                Law::Theorem3 => &["three_valued_deg1", "three_valued_deg2"],
                _ => unreachable!(),
            };
            acc.checked += 1;
            for e in report.entries.iter().filter(|e| wanted.contains(&e.name)) {
                if !e.holds {
                    acc.violation(
                        view,
                        format!("t = {} exceeds {} = {}", report.t_observed, e.name, e.value),
                    );
                    break;
                }
            }
        }
        Law::ProofSteps => {
            acc.checked += 1;
            let t = view.sens().t as u64;
            let mut failure: Option<String> = None;
            match view.engine.kind {
                ValueKind::TwoValuedPm1 | ValueKind::Boolean01 => {
                    let d = view.pm1_profile().map(|p| p.deg0).unwrap_or(0);
                    let rhs = 2 * t * (q as u64).pow(n - d);
                    if view.sens().cycle.total < rhs {
                        failure = Some(format!(
                            "I_cycle = {} below 2·t·q^(n-d) = {rhs}",
                            view.sens().cycle.total
                        ));
                    }
                }
                ValueKind::ThreeValuedOmega => {
                    let d = view.profile().map(|p| p.deg0).unwrap_or(0);
                    let rhs = (q as u64 - 1) * t * (q as u64).pow(n - d);
                    if view.sens().hamming.total < rhs {
                        failure = Some(format!(
                            "I_hamming = {} below (q-1)·t·q^(n-d) = {rhs}",
                            view.sens().hamming.total
                        ));
                    }
                }
                _ => unreachable!(),
            }
            if failure.is_none() {
                let need = 2 * q as u64 - 2;
                for &i in &view.sens().relevant {
                    let pairs = retract_pair_count_slice(view.table, spec, i);
                    if pairs < need {
                        failure = Some(format!(
                            "retract pair count {pairs} at relevant coordinate {i} below {need}"
                        ));
                        break;
                    }
                }
            }
            if let Some(msg) = failure {
                acc.violation(view, msg);
            }
        }
        Law::Support => {
            let f = view.function();
            match check_support_bounds(f) {
                Ok(rep) => {
                    acc.checked += 1;
                    if rep.deg0_le_t {
                        acc.bump("deg0_le_t");
                    }
                    if rep.deg0_le_n_minus_t {
                        acc.bump("deg0_le_n_minus_t");
                    }
                    let ok = rep.support_bound_holds
                        && rep.retract_support_holds
                        && rep.vanishing_holds
                        && rep.deg0_le_t;
                    if !ok {
                        acc.violation(view, format!("support bounds failed: {rep:?}"));
                    }
                }
                Err(Error::ZeroFunction) => acc.skipped += 1,
                Err(e) => acc.violation(view, format!("support check error: {e}")),
            }
        }
        Law::Prop2 => match check_prop2(view.function()) {
            Ok(rep) => {
                acc.checked += 1;
                if !rep.equality_holds || !rep.inequality_holds {
                    acc.violation(view, format!("interpolation degree mismatch: {rep:?}"));
                }
            }
            Err(Error::ZeroFunction) => acc.skipped += 1,
            Err(e) => acc.violation(view, format!("prop2 error: {e}")),
        },
        Law::Prop3 => {
            let rep = check_prop3(view.function()).expect("bool01 q=2 validated");
            acc.checked += 1;
            if rep.printed_holds {
                acc.bump("printed_inequality_holds");
            } else if rep.exempt {
                acc.bump("printed_fails_deg_alg_le_1");
            } else {
                acc.bump("printed_fails_deg_alg_gt_1");
            }
            if !rep.exempt && !rep.restricted_holds {
                acc.violation(
                    view,
                    format!(
                        "deg_alg = {} exceeds min(deg0, n - min support weight) = {}",
                        rep.algebraic_degree, rep.restricted_rhs
                    ),
                );
            }
        }
        Law::Degrees => {
            acc.checked += 1;
            let mut failure: Option<String> = None;
            if let Some(p) = view.profile() {
                if p.deg1 != p.deg0 as u64 || p.deg2 != p.deg0 as u64 {
                    failure = Some(format!(
                        "deg profile ({}, {}, {}) not collapsed for q = {q}",
                        p.deg0, p.deg1, p.deg2
                    ));
                }
            }
            if failure.is_none() && view.engine.kind == ValueKind::Boolean01 && q == 2 {
                failure = boolean_degree_relations(view).err();
            }
            if let Some(msg) = failure {
                acc.violation(view, msg);
            }
        }
    }
}

/// The Boolean-function relations checked exhaustively for q = 2:
/// deg_alg ≤ deg_num, deg_num = deg_0((−1)^f), and the spectrum-support
/// reflection between f and f ⊕ ℓ_1.
fn boolean_degree_relations(view: &FnView) -> std::result::Result<(), String> {
    let f = view.function();
    let spec = view.spec();
    let dega = algebraic_degree(&moebius(f).map_err(|e| e.to_string())?);
    let degn = numerical_degree(&nnf(f).map_err(|e| e.to_string())?);
    if dega > degn {
        return Err(format!("deg_alg = {dega} exceeds deg_num = {degn}"));
    }
    let p = view.pm1_profile().expect("±1 recodings are never zero");
    if degn != p.deg0 {
        return Err(format!("deg_num = {degn} but deg_0((-1)^f) = {}", p.deg0));
    }
    // Independent route for f ⊕ ℓ_1: recode and transform it directly.
    let flipped: Vec<i8> = view
        .table
        .iter()
        .enumerate()
        .map(|(x, &b)| {
            let bit = b ^ (x.count_ones() % 2) as u8;
            1 - 2 * bit as i8
        })
        .collect();
    let g = DiscreteFunction::new(spec, Values::Pm1(flipped)).map_err(|e| e.to_string())?;
    let sg = forward(&g);
    let pm1 = f.to_pm1().map_err(|e| e.to_string())?;
    let sf = forward(&pm1);
    let top = spec.size() - 1;
    for y in 0..spec.size() {
        if sf.is_zero_at(y) != sg.is_zero_at(top - y) {
            return Err(format!("support reflection fails at y = {y}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Extremal records.

fn record_rank(a: &ExtremalRecord, b: &ExtremalRecord) -> std::cmp::Ordering {
    b.tightness
        .total_cmp(&a.tightness)
        .then_with(|| a.table.cmp(&b.table))
        .then_with(|| a.function_index.cmp(&b.function_index))
}

fn push_extremal(records: &mut Vec<ExtremalRecord>, rec: ExtremalRecord, k: usize) {
    records.push(rec);
    records.sort_by(record_rank);
    records.truncate(k);
}

fn extremal_candidate(view: &FnView, records: &mut Vec<ExtremalRecord>, k: usize) {
    let Some(report) = view.bound_report() else {
        return;
    };
    let best = report
        .min_asserted_bound()
        .expect("non-constant reports have entries");
    let profile = match view.engine.kind {
        ValueKind::ThreeValuedOmega => view.profile(),
        _ => view.pm1_profile(),
    }
    .expect("bound_report implies a profile");
    push_extremal(
        records,
        ExtremalRecord {
            function_index: view.index,
            table: view.table_string(),
            deg0: profile.deg0,
            deg1: profile.deg1,
            deg2: profile.deg2,
            t: report.t_observed,
            best_bound: best.name.to_string(),
            best_bound_value: sig12(best.value),
            tightness: sig12(report.t_observed as f64 / best.value),
        },
        k,
    );
}

// ---------------------------------------------------------------------------
// Shard execution.

struct ShardOutcome {
    accs: Vec<LawAcc>,
    extremal: Vec<ExtremalRecord>,
}

fn process_function(
    engine: &Engine,
    index: u64,
    table: &[u8],
    spectrum: &Spectrum,
    outcome: &mut ShardOutcome,
) {
    let view = FnView::new(engine, index, table, spectrum);
    for (law, acc) in engine.laws.iter().zip(outcome.accs.iter_mut()) {
        check_law(*law, &view, acc);
    }
    if engine.collect_extremal {
        extremal_candidate(&view, &mut outcome.extremal, engine.top_k);
    }
}

/// Precomputed tables for the incremental spectrum update: for a table
/// entry change old → new at point x, W(z) gains Δ·ξ^{−⟨x,z⟩}.
struct UpdateTables {
    /// (q − ⟨x,z⟩) mod q, flattened (x·size + z).
    neg_exp: Vec<u8>,
    /// Δ(old→new)·ξ^{e·order/q}, flattened ((old·v + new)·q + e).
    deltas: Vec<CycloNum>,
}

fn build_update_tables(spec: DomainSpec, kind: ValueKind, order: u32) -> UpdateTables {
    let size = spec.size();
    let q = spec.q();
    let mut neg_exp = vec![0u8; size * size];
    for x in 0..size {
        for z in 0..size {
            neg_exp[x * size + z] = ((q - spec.dot_mod_q(x, z)) % q) as u8;
        }
    }
    let v = kind.symbol_count().unwrap();
    let step = order / q;
    let sym_value = |s: usize| -> CycloNum {
        match kind {
            ValueKind::TwoValuedPm1 => CycloNum::from_int(order, if s == 0 { -1 } else { 1 }),
            ValueKind::Boolean01 => CycloNum::from_int(order, s as i128),
            ValueKind::ThreeValuedOmega => CycloNum::root(order, order / 3 * s as u32),
            _ => unreachable!(),
        }
    };
    let mut deltas = Vec::with_capacity(v * v * q as usize);
    for old in 0..v {
        for new in 0..v {
            let d = sym_value(new).sub(&sym_value(old)).unwrap();
            for e in 0..q {
                deltas.push(d.mul_root(e * step));
            }
        }
    }
    UpdateTables { neg_exp, deltas }
}

fn new_outcome(engine: &Engine) -> ShardOutcome {
    ShardOutcome {
        accs: engine.laws.iter().map(|_| LawAcc::default()).collect(),
        extremal: Vec::new(),
    }
}

fn run_exhaustive_shard(
    engine: &Engine,
    tables: &UpdateTables,
    start: u64,
    end: u64,
) -> ShardOutcome {
    let spec = engine.spec;
    let size = spec.size();
    let v = engine.kind.symbol_count().unwrap() as u64;
    let mut table = gray::decode(start, v, size);
    let f = DiscreteFunction::from_symbols(spec, engine.kind, &table).unwrap();
    let mut spectrum = forward(&f);
    let mut outcome = new_outcome(engine);
    process_function(engine, start, &table, &spectrum, &mut outcome);

    let q = spec.q() as usize;
    let vsym = v as usize;
    let mut next = vec![0u8; size];
    for idx in (start + 1)..end {
        gray::decode_into(idx, v, &mut next);
        let (pos, old, new) = gray::step(&table, &next);
        let pair_base = ((old as usize) * vsym + new as usize) * q;
        {
            let coeffs = spectrum.exact_coeffs_mut();
            let exps = &tables.neg_exp[pos * size..(pos + 1) * size];
            for (w, &e) in coeffs.iter_mut().zip(exps) {
                w.add_assign_ref(&tables.deltas[pair_base + e as usize]);
            }
        }
        table[pos] = new;
        process_function(engine, idx, &table, &spectrum, &mut outcome);
    }
    outcome
}

fn merge_outcomes(engine: &Engine, parts: Vec<ShardOutcome>) -> ShardOutcome {
    let mut total = new_outcome(engine);
    for part in parts {
        for (into, from) in total.accs.iter_mut().zip(part.accs) {
            into.merge(from);
        }
        for rec in part.extremal {
            push_extremal(&mut total.extremal, rec, engine.top_k);
        }
    }
    total
}

fn exhaustive_total(v: u64, size: usize) -> Result<u64> {
    let bits = size as f64 * (v as f64).log2();
    if bits > 24.0 {
        return Err(Error::InfeasibleCorpus(format!(
            "{v}^{size} functions exceed the 2^24 exhaustive cap"
        )));
    }
    Ok(v.pow(size as u32))
}

fn run_exhaustive(engine: &Engine) -> Result<(u64, ShardOutcome)> {
    let size = engine.spec.size();
    let v = engine.kind.symbol_count().unwrap() as u64;
    let total = exhaustive_total(v, size)?;
    let tables = build_update_tables(
        engine.spec,
        engine.kind,
        working_order(engine.kind, engine.spec.q()),
    );
    // Fixed shard count, independent of the worker pool, so merged
    // summaries are identical for any thread count.
    let shards = 64u64.min(total);
    let per = total / shards;
    let rem = total % shards;
    let ranges: Vec<(u64, u64)> = (0..shards)
        .map(|s| {
            let lo = s * per + s.min(rem);
            let hi = lo + per + u64::from(s < rem);
            (lo, hi)
        })
        .collect();
    let parts: Vec<ShardOutcome> = ranges
        .par_iter()
        .map(|&(lo, hi)| run_exhaustive_shard(engine, &tables, lo, hi))
        .collect();
    Ok((total, merge_outcomes(engine, parts)))
}

fn run_random(engine: &Engine, count: u64, seed: u64) -> Result<(u64, ShardOutcome)> {
    if count == 0 {
        return Err(Error::InfeasibleCorpus(
            "random corpora need at least one function".into(),
        ));
    }
    let size = engine.spec.size();
    let v = engine.kind.symbol_count().unwrap() as u8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = vec![0u8; count as usize * size];
    for slot in all.iter_mut() {
        *slot = rng.gen_range(0..v);
    }
    const CHUNK: usize = 256;
    let parts: Vec<ShardOutcome> = all
        .par_chunks(CHUNK * size)
        .enumerate()
        .map(|(ci, block)| {
            let mut outcome = new_outcome(engine);
            for (j, tab) in block.chunks(size).enumerate() {
                let idx = (ci * CHUNK + j) as u64;
                let f = DiscreteFunction::from_symbols(engine.spec, engine.kind, tab).unwrap();
                let spectrum = forward(&f);
                process_function(engine, idx, tab, &spectrum, &mut outcome);
            }
            outcome
        })
        .collect();
    Ok((count, merge_outcomes(engine, parts)))
}

fn assemble_summary(
    corpus: &Corpus,
    engine: &Engine,
    functions: u64,
    outcome: ShardOutcome,
) -> SweepSummary {
    let (mode, seed, rng) = match corpus.mode {
        CorpusMode::Exhaustive => ("exhaustive".to_string(), None, None),
        CorpusMode::Random { seed, .. } => ("random".to_string(), Some(seed), Some("chacha8")),
    };
    let laws = engine
        .laws
        .iter()
        .zip(outcome.accs)
        .map(|(law, acc)| LawSummary {
            law: law.token().to_string(),
            checked: acc.checked,
            skipped: acc.skipped,
            violations: acc.violations,
            first_violation: acc.first,
            detail: acc
                .detail
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        })
        .collect();
    SweepSummary {
        schema_version: 1,
        corpus: CorpusInfo {
            q: corpus.spec.q(),
            n: corpus.spec.n(),
            kind: corpus.kind.token().to_string(),
            mode,
            functions,
            seed,
            rng,
        },
        laws,
        extremal: engine.collect_extremal.then_some(outcome.extremal),
    }
}

/// Run the given laws over every function of a corpus, with the default
/// top-10 extremal list when a bound law is present.
pub fn sweep(corpus: &Corpus, laws: &[Law]) -> Result<SweepSummary> {
    let collect = laws
        .iter()
        .any(|l| matches!(l, Law::Theorem1 | Law::Theorem2 | Law::Theorem3));
    sweep_with(corpus, laws, collect, 10)
}

pub fn sweep_with(
    corpus: &Corpus,
    laws: &[Law],
    collect_extremal: bool,
    top_k: usize,
) -> Result<SweepSummary> {
    let engine = Engine::new(corpus, laws, collect_extremal, top_k)?;
    let (functions, outcome) = match corpus.mode {
        CorpusMode::Exhaustive => run_exhaustive(&engine)?,
        CorpusMode::Random { count, seed } => run_random(&engine, count, seed)?,
    };
    Ok(assemble_summary(corpus, &engine, functions, outcome))
}

/// Top-k functions of a corpus ranked by tightness t / (best bound), ties
/// broken by truth-table lexicographic order. Errors when the corpus holds
/// no function with an applicable bound (e.g. constants only).
pub fn search_extremal(corpus: &Corpus, k: usize) -> Result<Vec<ExtremalRecord>> {
    let law = match corpus.kind {
        ValueKind::ThreeValuedOmega => Law::Theorem3,
        _ => Law::Theorem1,
    };
    let summary = sweep_with(corpus, &[law], true, k)?;
    let records = summary.extremal.unwrap_or_default();
    if records.is_empty() {
        return Err(Error::NoApplicableBound);
    }
    Ok(records)
}
