//! Forward and inverse Fourier–Hadamard transforms on Z_q^n.
//!
//! With characters φ_z(x) = ξ^{⟨x,z⟩}, ξ = e^{2πi/q}, the forward transform
//! computes the unnormalized coefficients W_f(z) = (f, φ_z) =
//! Σ_x f(x) ξ^{−⟨x,z⟩}, and the inverse reconstructs
//! f(x) = q^{−n} Σ_z W_f(z) ξ^{⟨x,z⟩}.
//!
//! Exact value kinds are transformed in cyclotomic-integer arithmetic; the
//! working ring is Z[ξ_N] with N = q, except for three-valued functions
//! whose values ω^a live in Z[ω], where N = lcm(3, q). Complex-kind
//! functions use floating arithmetic with a scale-aware zero threshold.

use num_complex::Complex64;

use crate::domain::{ctx, CycloCtx, CycloNum, DiscreteFunction, DomainSpec, ValueKind, Values};
use crate::error::{Error, Result};

/// Spectrum entries, exact or floating.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecData {
    Exact {
        /// Cyclotomic order of the working ring Z[ξ_order].
        order: u32,
        coeffs: Vec<CycloNum>,
    },
    Complex {
        coeffs: Vec<Complex64>,
        /// |W| at or below this is treated as zero.
        zero_tol: f64,
    },
}

/// The table of Fourier–Hadamard coefficients W_f(z), flat-indexed by z.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    spec: DomainSpec,
    source_kind: ValueKind,
    data: SpecData,
}

impl Spectrum {
    /// Normalization carried by every spectrum this crate produces.
    pub const NORMALIZATION: &'static str = "unnormalized: W_f(z) = (f, phi_z)";

    pub fn spec(&self) -> DomainSpec {
        self.spec
    }

    pub fn source_kind(&self) -> ValueKind {
        self.source_kind
    }

    pub fn data(&self) -> &SpecData {
        &self.data
    }

    pub(crate) fn from_parts(spec: DomainSpec, source_kind: ValueKind, data: SpecData) -> Self {
        Spectrum {
            spec,
            source_kind,
            data,
        }
    }

    pub(crate) fn exact_coeffs_mut(&mut self) -> &mut Vec<CycloNum> {
        match &mut self.data {
            SpecData::Exact { coeffs, .. } => coeffs,
            SpecData::Complex { .. } => panic!("not an exact spectrum"),
        }
    }

    /// Exact zero test for exact spectra; thresholded for complex ones.
    pub fn is_zero_at(&self, z: usize) -> bool {
        match &self.data {
            SpecData::Exact { coeffs, .. } => coeffs[z].is_zero(),
            SpecData::Complex { coeffs, zero_tol } => coeffs[z].norm() <= *zero_tol,
        }
    }

    /// |W_f(z)|² as a double.
    pub fn norm_sq(&self, z: usize) -> f64 {
        match &self.data {
            SpecData::Exact { coeffs, .. } => coeffs[z].norm_sq(),
            SpecData::Complex { coeffs, .. } => coeffs[z].norm_sqr(),
        }
    }

    /// Flat indices of the nonzero coefficients, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.spec.size())
            .filter(|&z| !self.is_zero_at(z))
            .collect()
    }

    pub fn support_size(&self) -> usize {
        (0..self.spec.size())
            .filter(|&z| !self.is_zero_at(z))
            .count()
    }
}

/// Cyclotomic order of the working ring for an exact value kind.
pub(crate) fn working_order(kind: ValueKind, q: u32) -> u32 {
    match kind {
        ValueKind::ThreeValuedOmega => lcm(3, q),
        _ => q,
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inject the value table into Z[ξ_order].
pub(crate) fn inject_exact(f: &DiscreteFunction, order: u32) -> Vec<CycloNum> {
    match f.values() {
        Values::Pm1(v) => v
            .iter()
            .map(|&x| CycloNum::from_int(order, x as i128))
            .collect(),
        Values::Bool01(v) => v
            .iter()
            .map(|&x| CycloNum::from_int(order, x as i128))
            .collect(),
        Values::Int(v) => v
            .iter()
            .map(|&x| CycloNum::from_int(order, x as i128))
            .collect(),
        Values::Omega3(v) => {
            let step = order / 3;
            v.iter()
                .map(|&a| CycloNum::root(order, step * a as u32))
                .collect()
        }
        Values::Complex(_) => unreachable!("complex kind uses the floating path"),
    }
}

/// Exponent table for one axis pass: entry (a, b) is the power of ξ_order
/// multiplying input digit b in output digit a.
fn axis_exponents(spec: DomainSpec, order: u32, forward: bool) -> Vec<u32> {
    let q = spec.q();
    let step = order / q;
    let mut exps = vec![0u32; (q * q) as usize];
    for a in 0..q {
        for b in 0..q {
            let prod = (a as u64 * b as u64 % q as u64) as u32;
            let e = if forward { (q - prod) % q } else { prod };
            exps[(a * q + b) as usize] = e * step;
        }
    }
    exps
}

fn axis_pass_exact(
    data: &mut [CycloNum],
    spec: DomainSpec,
    axis: usize,
    exps: &[u32],
    order: u32,
    c: &CycloCtx,
) {
    let q = spec.q() as usize;
    let stride = spec.stride(axis);
    let block = stride * q;
    let mut scratch: Vec<CycloNum> = (0..q).map(|_| CycloNum::zero(order)).collect();
    let mut base = 0;
    while base < spec.size() {
        for lo in 0..stride {
            for (a, s) in scratch.iter_mut().enumerate() {
                s.set_zero();
                for b in 0..q {
                    s.add_scaled_root_with(&data[base + lo + b * stride], exps[a * q + b], c);
                }
            }
            for (a, s) in scratch.iter_mut().enumerate() {
                std::mem::swap(&mut data[base + lo + a * stride], s);
            }
        }
        base += block;
    }
}

fn axis_pass_complex(
    data: &mut [Complex64],
    spec: DomainSpec,
    axis: usize,
    twiddles: &[Complex64],
) {
    let q = spec.q() as usize;
    let stride = spec.stride(axis);
    let block = stride * q;
    let mut scratch = vec![Complex64::new(0.0, 0.0); q];
    let mut base = 0;
    while base < spec.size() {
        for lo in 0..stride {
            for (a, s) in scratch.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for b in 0..q {
                    acc += twiddles[a * q + b] * data[base + lo + b * stride];
                }
                *s = acc;
            }
            for (a, s) in scratch.iter().enumerate() {
                data[base + lo + a * stride] = *s;
            }
        }
        base += block;
    }
}

fn complex_twiddles(spec: DomainSpec, forward: bool) -> Vec<Complex64> {
    let q = spec.q();
    let sign = if forward { -1.0 } else { 1.0 };
    let angle = sign * 2.0 * std::f64::consts::PI / q as f64;
    let mut t = vec![Complex64::new(0.0, 0.0); (q * q) as usize];
    for a in 0..q {
        for b in 0..q {
            let prod = (a as u64 * b as u64 % q as u64) as f64;
            t[(a * q + b) as usize] = Complex64::from_polar(1.0, angle * prod);
        }
    }
    t
}

fn zero_tolerance(spec: DomainSpec, values: &[Complex64]) -> f64 {
    let max_abs = values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    1e-8 * (spec.size() as f64).sqrt() * max_abs
}

/// Forward transform by axis-by-axis application of the q×q character
/// matrix; n·q^{n+1} ring operations in total.
pub fn forward(f: &DiscreteFunction) -> Spectrum {
    let spec = f.spec();
    match f.values() {
        Values::Complex(v) => {
            let zero_tol = zero_tolerance(spec, v);
            let mut data = v.clone();
            let tw = complex_twiddles(spec, true);
            for axis in 0..spec.n() as usize {
                axis_pass_complex(&mut data, spec, axis, &tw);
            }
            Spectrum::from_parts(
                spec,
                f.kind(),
                SpecData::Complex {
                    coeffs: data,
                    zero_tol,
                },
            )
        }
        _ => {
            let order = working_order(f.kind(), spec.q());
            let c = ctx(order);
            let mut data = inject_exact(f, order);
            let exps = axis_exponents(spec, order, true);
            for axis in 0..spec.n() as usize {
                axis_pass_exact(&mut data, spec, axis, &exps, order, &c);
            }
            Spectrum::from_parts(
                spec,
                f.kind(),
                SpecData::Exact {
                    order,
                    coeffs: data,
                },
            )
        }
    }
}

/// The direct double-loop definition W_f(z) = Σ_x f(x) ξ^{−⟨x,z⟩};
/// O(q^{2n}) and deliberately separate from the tensor path so it can serve
/// as its oracle.
pub fn naive_forward(f: &DiscreteFunction) -> Spectrum {
    let spec = f.spec();
    let q = spec.q();
    match f.values() {
        Values::Complex(v) => {
            let zero_tol = zero_tolerance(spec, v);
            let angle = -2.0 * std::f64::consts::PI / q as f64;
            let coeffs = (0..spec.size())
                .map(|z| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (x, val) in v.iter().enumerate() {
                        let e = spec.dot_mod_q(x, z) as f64;
                        acc += val * Complex64::from_polar(1.0, angle * e);
                    }
                    acc
                })
                .collect();
            Spectrum::from_parts(spec, f.kind(), SpecData::Complex { coeffs, zero_tol })
        }
        _ => {
            let order = working_order(f.kind(), q);
            let c = ctx(order);
            let vals = inject_exact(f, order);
            let step = order / q;
            let coeffs = (0..spec.size())
                .map(|z| {
                    let mut acc = CycloNum::zero(order);
                    for (x, val) in vals.iter().enumerate() {
                        let e = (q - spec.dot_mod_q(x, z)) % q;
                        acc.add_scaled_root_with(val, e * step, &c);
                    }
                    acc
                })
                .collect();
            Spectrum::from_parts(spec, f.kind(), SpecData::Exact { order, coeffs })
        }
    }
}

fn cyclo_to_value(kind: ValueKind, w: &CycloNum, order: u32, z: usize) -> Result<Values> {
    // Helper producing a single-value Values; assembled by the caller.
    let bad = || Error::InvalidValue {
        value: w.to_string(),
        kind: kind.token(),
    };
    Ok(match kind {
        ValueKind::TwoValuedPm1 => match w.as_int() {
            Some(1) => Values::Pm1(vec![1]),
            Some(-1) => Values::Pm1(vec![-1]),
            _ => return Err(bad()),
        },
        ValueKind::Boolean01 => match w.as_int() {
            Some(0) => Values::Bool01(vec![0]),
            Some(1) => Values::Bool01(vec![1]),
            _ => return Err(bad()),
        },
        ValueKind::Integer => match w.as_int() {
            Some(v) if i64::try_from(v).is_ok() => Values::Int(vec![v as i64]),
            _ => return Err(bad()),
        },
        ValueKind::ThreeValuedOmega => {
            let step = order / 3;
            let mut found = None;
            for a in 0..3u8 {
                if *w == CycloNum::root(order, step * a as u32) {
                    found = Some(a);
                    break;
                }
            }
            match found {
                Some(a) => Values::Omega3(vec![a]),
                None => return Err(bad()),
            }
        }
        ValueKind::Complex => return Err(Error::IndexOutOfRange { index: z, size: 0 }),
    })
}

/// Inverse transform; exact kinds reconstruct exactly (erroring when the
/// spectrum is not q^n times an integral function), the complex kind
/// divides in floating arithmetic.
pub fn inverse(s: &Spectrum) -> Result<DiscreteFunction> {
    let spec = s.spec();
    let size = spec.size() as i128;
    match &s.data {
        SpecData::Complex { coeffs, .. } => {
            let mut data = coeffs.clone();
            let tw = complex_twiddles(spec, false);
            for axis in 0..spec.n() as usize {
                axis_pass_complex(&mut data, spec, axis, &tw);
            }
            let scale = 1.0 / spec.size() as f64;
            for v in &mut data {
                *v *= scale;
            }
            DiscreteFunction::new(spec, Values::Complex(data))
        }
        SpecData::Exact { order, coeffs } => {
            let c = ctx(*order);
            let mut data = coeffs.clone();
            let exps = axis_exponents(spec, *order, false);
            for axis in 0..spec.n() as usize {
                axis_pass_exact(&mut data, spec, axis, &exps, *order, &c);
            }
            let kind = s.source_kind;
            let mut acc: Option<Values> = None;
            for (x, w) in data.iter().enumerate() {
                let v = w
                    .exact_div(size)
                    .map_err(|_| Error::NonIntegralInverse(x))?;
                let one = cyclo_to_value(kind, &v, *order, x)?;
                acc = Some(match (acc, one) {
                    (None, one) => one,
                    (Some(Values::Pm1(mut a)), Values::Pm1(b)) => {
                        a.extend(b);
                        Values::Pm1(a)
                    }
                    (Some(Values::Omega3(mut a)), Values::Omega3(b)) => {
                        a.extend(b);
                        Values::Omega3(a)
                    }
                    (Some(Values::Bool01(mut a)), Values::Bool01(b)) => {
                        a.extend(b);
                        Values::Bool01(a)
                    }
                    (Some(Values::Int(mut a)), Values::Int(b)) => {
                        a.extend(b);
                        Values::Int(a)
                    }
                    _ => unreachable!(),
                });
            }
            DiscreteFunction::new(spec, acc.expect("domains are nonempty"))
        }
    }
}

/// Σ_z |W_f(z)|² as a double. For a function with unimodular values this
/// equals q^{2n} (Parseval).
pub fn parseval_sum(s: &Spectrum) -> f64 {
    (0..s.spec().size()).map(|z| s.norm_sq(z)).sum()
}

/// Σ_z |W_f(z)|² computed exactly in the ring; defined for exact spectra,
/// where the sum is always a rational integer.
pub fn parseval_sum_exact(s: &Spectrum) -> Result<i128> {
    match &s.data {
        SpecData::Complex { .. } => Err(Error::KindMismatch {
            kind: "complex",
            why: "exact Parseval sums need an exact spectrum",
        }),
        SpecData::Exact { order, coeffs } => {
            let c = ctx(*order);
            let mut acc = CycloNum::zero(*order);
            for w in coeffs {
                acc.add_assign_ref(&w.mul_with(&w.conj(), &c));
            }
            acc.as_int().ok_or(Error::KindMismatch {
                kind: "exact",
                why: "Parseval sum did not reduce to a rational integer",
            })
        }
    }
}
