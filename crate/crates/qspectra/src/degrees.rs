//! Degree functionals of discrete functions.
//!
//! From the spectrum: deg_m(f) = max over nonzero W_f(z) of Σ_k |z_k|^m,
//! with the z_k taken as symmetric representatives and 0^0 = 0, so that
//! deg_0 is the maximal number of nonzero coordinates (the weight).
//!
//! For Boolean functions the classical normal forms live here too: the
//! algebraic normal form over GF(2) with its Möbius transform, the
//! numerical normal form over the reals, and Lagrange interpolation over an
//! arbitrary finite value set T ⊂ C.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::domain::{sym_table, DiscreteFunction, DomainSpec, Values};
use crate::error::{Error, Result};
use crate::transform::{forward, Spectrum};

/// deg_0, deg_1, deg_2 plus any extra requested orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub deg0: u32,
    pub deg1: u64,
    pub deg2: u64,
    /// Additional orders m ↦ deg_m, when requested.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub generic: BTreeMap<u32, u64>,
}

/// Number of nonzero coordinates of z.
pub fn weight(z: &[u32]) -> u32 {
    z.iter().filter(|&&c| c != 0).count() as u32
}

/// deg_m(φ_z) = Σ_k |z_k|^m over symmetric representatives, with 0^0 = 0
/// so that m = 0 recovers the weight.
pub fn char_degree(z: &[u32], q: u32, m: u32) -> u64 {
    let syms = sym_table(q);
    let mut acc: u128 = 0;
    for &c in z {
        let a = syms[c as usize].unsigned_abs() as u128;
        if a != 0 {
            acc += a.pow(m);
        }
    }
    u64::try_from(acc).expect("degree exceeds u64")
}

fn char_degree_flat(spec: DomainSpec, syms: &[i64], z: usize, m: u32) -> u64 {
    let q = spec.q() as usize;
    let mut rest = z;
    let mut acc: u128 = 0;
    for _ in 0..spec.n() {
        let a = syms[rest % q].unsigned_abs() as u128;
        if a != 0 {
            acc += a.pow(m);
        }
        rest /= q;
    }
    u64::try_from(acc).expect("degree exceeds u64")
}

/// Profile over an arbitrary support predicate; None when the support is
/// empty. Lets callers profile a recoded spectrum without re-transforming.
pub(crate) fn degree_profile_from(
    spec: DomainSpec,
    is_nonzero: impl Fn(usize) -> bool,
    extra_ms: &[u32],
) -> Option<DegreeProfile> {
    let syms = sym_table(spec.q());
    let mut seen = false;
    let (mut d0, mut d1, mut d2) = (0u64, 0u64, 0u64);
    let mut generic: BTreeMap<u32, u64> = extra_ms.iter().map(|&m| (m, 0)).collect();
    for z in 0..spec.size() {
        if !is_nonzero(z) {
            continue;
        }
        seen = true;
        d0 = d0.max(char_degree_flat(spec, &syms, z, 0));
        d1 = d1.max(char_degree_flat(spec, &syms, z, 1));
        d2 = d2.max(char_degree_flat(spec, &syms, z, 2));
        for (&m, slot) in generic.iter_mut() {
            *slot = (*slot).max(char_degree_flat(spec, &syms, z, m));
        }
    }
    seen.then_some(DegreeProfile {
        deg0: d0 as u32,
        deg1: d1,
        deg2: d2,
        generic,
    })
}

/// deg_m(f) = max of deg_m(φ_z) over the spectrum support, for m ∈ {0,1,2}
/// and any extra orders. Errors on the identically-zero function.
pub fn degree_profile(s: &Spectrum, extra_ms: &[u32]) -> Result<DegreeProfile> {
    degree_profile_from(s.spec(), |z| !s.is_zero_at(z), extra_ms).ok_or(Error::ZeroFunction)
}

// ---------------------------------------------------------------------------
// Algebraic normal form (GF(2)).

/// ANF coefficients M_f(y) ∈ {0,1}, flat-indexed by the monomial mask y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfTable {
    n: u32,
    coeffs: Vec<u8>,
}

impl AnfTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Monomial masks present in the ANF, ascending.
    pub fn monomials(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(y, _)| y)
            .collect()
    }
}

/// Möbius transform of a Boolean (bool01, q = 2) function: the butterfly
/// XOR over each coordinate. Applying it twice is the identity.
pub fn moebius(f: &DiscreteFunction) -> Result<AnfTable> {
    let spec = f.spec();
    if spec.q() != 2 {
        return Err(Error::RequiresBinary(spec.q()));
    }
    let v = match f.values() {
        Values::Bool01(v) => v,
        _ => {
            return Err(Error::KindMismatch {
                kind: f.kind().token(),
                why: "the Möbius transform needs bool01 values",
            })
        }
    };
    let n = spec.n() as usize;
    let mut a = v.clone();
    let size = a.len();
    // Flat order has x_n fastest, so coordinate i toggles bit n−1−i of the
    // index; the butterfly is index-symmetric, any bit order works.
    for bit in 0..n {
        let half = 1usize << bit;
        for y in 0..size {
            if y & half != 0 {
                a[y] ^= a[y ^ half];
            }
        }
    }
    Ok(AnfTable {
        n: spec.n(),
        coeffs: a,
    })
}

/// Largest monomial weight in the ANF; 0 for the zero function.
pub fn algebraic_degree(t: &AnfTable) -> u32 {
    t.coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(y, _)| y.count_ones())
        .max()
        .unwrap_or(0)
}

// ---------------------------------------------------------------------------
// Numerical normal form (real multilinear polynomial on {0,1}^n).

#[derive(Debug, Clone, PartialEq)]
pub enum NnfCoeffs {
    /// Exact coefficients; integer-valued inputs always land here.
    Int(Vec<i64>),
    /// Floating coefficients with a 1e−9 zero threshold.
    Real(Vec<f64>),
}

/// NNF coefficients a(y), flat-indexed by the monomial mask y:
/// f(x) = Σ_y a(y) x^y on {0,1}^n.
#[derive(Debug, Clone, PartialEq)]
pub struct NnfTable {
    n: u32,
    coeffs: NnfCoeffs,
}

const NNF_ZERO_TOL: f64 = 1e-9;

impl NnfTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &NnfCoeffs {
        &self.coeffs
    }

    pub fn is_zero_at(&self, y: usize) -> bool {
        match &self.coeffs {
            NnfCoeffs::Int(c) => c[y] == 0,
            NnfCoeffs::Real(c) => c[y].abs() <= NNF_ZERO_TOL,
        }
    }

    /// Evaluate the polynomial at a point of {0,1}^n given as a flat index.
    pub fn eval01(&self, x: usize) -> f64 {
        let mut acc = 0.0;
        for y in 0..(1usize << self.n) {
            if y & x == y && !self.is_zero_at(y) {
                acc += match &self.coeffs {
                    NnfCoeffs::Int(c) => c[y] as f64,
                    NnfCoeffs::Real(c) => c[y],
                };
            }
        }
        acc
    }
}

fn real_moebius_int(values: &[i64], n: usize) -> Vec<i64> {
    let mut a = values.to_vec();
    for bit in 0..n {
        let half = 1usize << bit;
        for y in 0..a.len() {
            if y & half != 0 {
                a[y] -= a[y ^ half];
            }
        }
    }
    a
}

/// Numerical normal form of a real-valued function on {0,1}^n: the real
/// Möbius transform a(y) = Σ_{x ≤ y} (−1)^{wt(y)−wt(x)} f(x).
pub fn nnf(f: &DiscreteFunction) -> Result<NnfTable> {
    let spec = f.spec();
    if spec.q() != 2 {
        return Err(Error::RequiresBinary(spec.q()));
    }
    let n = spec.n() as usize;
    let coeffs = match f.values() {
        Values::Bool01(v) => NnfCoeffs::Int(real_moebius_int(
            &v.iter().map(|&x| x as i64).collect::<Vec<_>>(),
            n,
        )),
        Values::Pm1(v) => NnfCoeffs::Int(real_moebius_int(
            &v.iter().map(|&x| x as i64).collect::<Vec<_>>(),
            n,
        )),
        Values::Int(v) => NnfCoeffs::Int(real_moebius_int(v, n)),
        Values::Complex(v) => {
            for c in v {
                if c.im.abs() > NNF_ZERO_TOL {
                    return Err(Error::KindMismatch {
                        kind: "complex",
                        why: "the NNF is defined for real-valued functions",
                    });
                }
            }
            let mut a: Vec<f64> = v.iter().map(|c| c.re).collect();
            for bit in 0..n {
                let half = 1usize << bit;
                for y in 0..a.len() {
                    if y & half != 0 {
                        a[y] -= a[y ^ half];
                    }
                }
            }
            NnfCoeffs::Real(a)
        }
        Values::Omega3(_) => {
            return Err(Error::KindMismatch {
                kind: "omega3",
                why: "the NNF is defined for real-valued functions",
            })
        }
    };
    Ok(NnfTable {
        n: spec.n(),
        coeffs,
    })
}

/// Largest monomial weight with a nonzero NNF coefficient; 0 for constants.
pub fn numerical_degree(t: &NnfTable) -> u32 {
    (0..(1usize << t.n))
        .filter(|&y| !t.is_zero_at(y))
        .map(|y| y.count_ones())
        .max()
        .unwrap_or(0)
}

// ---------------------------------------------------------------------------
// Lagrange interpolation over a finite T ⊂ C.

/// The unique polynomial with per-variable degree ≤ |T|−1 agreeing with a
/// given function on T^n. Coefficients are flat-indexed base |T| by the
/// exponent tuple (e_1, …, e_n), e_n fastest.
#[derive(Debug, Clone)]
pub struct InterpPolynomial {
    nodes: Vec<Complex64>,
    n: u32,
    coeffs: Vec<Complex64>,
    zero_tol: f64,
}

impl InterpPolynomial {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.nodes.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn exponents(&self, idx: usize) -> Vec<usize> {
        let k = self.k();
        let mut e = vec![0usize; self.n as usize];
        let mut rest = idx;
        for i in (0..self.n as usize).rev() {
            e[i] = rest % k;
            rest /= k;
        }
        e
    }

    pub fn is_zero_at(&self, idx: usize) -> bool {
        self.coeffs[idx].norm() <= self.zero_tol
    }

    /// Max total degree Σ e_i over the supported monomials.
    pub fn total_degree(&self) -> u64 {
        (0..self.coeffs.len())
            .filter(|&i| !self.is_zero_at(i))
            .map(|i| self.exponents(i).iter().sum::<usize>() as u64)
            .max()
            .unwrap_or(0)
    }

    /// Max number of distinct variables appearing in a supported monomial.
    pub fn distinct_variable_degree(&self) -> u32 {
        (0..self.coeffs.len())
            .filter(|&i| !self.is_zero_at(i))
            .map(|i| self.exponents(i).iter().filter(|&&e| e != 0).count() as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut term = *c;
            for (v, &e) in point.iter().zip(self.exponents(i).iter()) {
                for _ in 0..e {
                    term *= v;
                }
            }
            acc += term;
        }
        acc
    }
}

/// Coefficient matrix of the Lagrange basis: column i holds the
/// coefficients of L_i(x) = Π_{j≠i} (x − t_j)/(t_i − t_j).
fn lagrange_basis(nodes: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let k = nodes.len();
    for i in 0..k {
        for j in (i + 1)..k {
            if (nodes[i] - nodes[j]).norm() == 0.0 {
                return Err(Error::RepeatedNodes);
            }
        }
    }
    let mut cols = Vec::with_capacity(k);
    for i in 0..k {
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        let mut denom = Complex64::new(1.0, 0.0);
        for (j, &t) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            // poly *= (x − t_j)
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (d, &c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * t;
            }
            poly = next;
            denom *= nodes[i] - t;
        }
        let col: Vec<Complex64> = poly.iter().map(|&c| c / denom).collect();
        cols.push(col);
    }
    Ok(cols)
}

/// Interpolate a function T^n → C, given its values in flat order over T^n
/// (node index varying fastest in the last coordinate). Applies the inverse
/// Vandermonde map along each axis; the result is the unique element of
/// C_k(x_1, …, x_n) restricting to the data.
pub fn lagrange_interpolate(
    values: &[Complex64],
    nodes: &[Complex64],
    n: u32,
) -> Result<InterpPolynomial> {
    let k = nodes.len();
    if k == 0 {
        return Err(Error::RepeatedNodes);
    }
    let expected = k
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidDomain("interpolation table too large".into()))?;
    if values.len() != expected {
        return Err(Error::WrongLength {
            got: values.len(),
            expected,
        });
    }
    let basis = lagrange_basis(nodes)?;
    let mut data = values.to_vec();
    let mut scratch = vec![Complex64::new(0.0, 0.0); k];
    for axis in 0..n as usize {
        let stride = k.pow(n - 1 - axis as u32);
        let block = stride * k;
        let mut base = 0;
        while base < data.len() {
            for lo in 0..stride {
                for s in scratch.iter_mut() {
                    *s = Complex64::new(0.0, 0.0);
                }
                for b in 0..k {
                    let v = data[base + lo + b * stride];
                    for (d, s) in scratch.iter_mut().enumerate() {
                        *s += basis[b][d] * v;
                    }
                }
                for (d, s) in scratch.iter().enumerate() {
                    data[base + lo + d * stride] = *s;
                }
            }
            base += block;
        }
    }
    let max_abs = data.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let zero_tol = 1e-9 * (1.0 + max_abs);
    Ok(InterpPolynomial {
        nodes: nodes.to_vec(),
        n,
        coeffs: data,
        zero_tol,
    })
}

// ---------------------------------------------------------------------------
// Degree comparisons through the substitution x ↦ ξ^x.

/// Outcome of comparing the interpolation degrees of g (where f = g ∘ s,
/// s(x) = ξ^x) against the spectral degrees of f.
#[derive(Debug, Clone, Serialize)]
pub struct Prop2Report {
    /// Max number of distinct variables in a monomial of g.
    pub distinct_var_degree_g: u32,
    pub deg0_f: u32,
    /// Total degree of g.
    pub total_degree_g: u64,
    pub deg1_f: u64,
    /// distinct_var_degree_g == deg0_f.
    pub equality_holds: bool,
    /// total_degree_g ≥ deg1_f.
    pub inequality_holds: bool,
}

/// Interpolate g on the node set {ξ^0, …, ξ^{q−1}} and compare its two
/// polynomial degrees with deg_0(f) and deg_1(f) from the spectrum.
pub fn check_prop2(f: &DiscreteFunction) -> Result<Prop2Report> {
    let spec = f.spec();
    let q = spec.q();
    let angle = 2.0 * std::f64::consts::PI / q as f64;
    let nodes: Vec<Complex64> = (0..q)
        .map(|j| Complex64::from_polar(1.0, angle * j as f64))
        .collect();
    let g = lagrange_interpolate(&f.to_complex_values(), &nodes, spec.n())?;
    let profile = degree_profile(&forward(f), &[])?;
    let dvg = g.distinct_variable_degree();
    let tdg = g.total_degree();
    Ok(Prop2Report {
        distinct_var_degree_g: dvg,
        deg0_f: profile.deg0,
        total_degree_g: tdg,
        deg1_f: profile.deg1,
        equality_holds: dvg == profile.deg0,
        inequality_holds: tdg >= profile.deg1,
    })
}

/// Both sides of the algebraic-degree comparison for one Boolean function.
///
/// `printed_rhs` is min{deg_0, n − deg_0}; that inequality fails for some
/// functions (the exhaustive sweep reports the truth set). `restricted_rhs`
/// is min{deg_0, n − minwt} over the spectrum support of (−1)^f, which is
/// an upper bound on deg_alg whenever deg_alg > 1.
#[derive(Debug, Clone, Serialize)]
pub struct Prop3Report {
    pub algebraic_degree: u32,
    pub deg0: u32,
    pub n_minus_deg0: u32,
    pub printed_rhs: u32,
    pub printed_holds: bool,
    /// deg_alg ≤ 1 cases sit outside the reflection argument.
    pub exempt: bool,
    pub min_support_weight: u32,
    pub restricted_rhs: u32,
    pub restricted_holds: bool,
}

/// Evaluate the algebraic-degree bounds for a Boolean (bool01, q = 2)
/// function. Degrees deg_0 and the support weights refer to the spectrum of
/// the ±1 recoding (−1)^f.
pub fn check_prop3(f: &DiscreteFunction) -> Result<Prop3Report> {
    let spec = f.spec();
    if spec.q() != 2 {
        return Err(Error::RequiresBinary(spec.q()));
    }
    let anf = moebius(f)?;
    let dega = algebraic_degree(&anf);
    let s = forward(&f.to_pm1()?);
    let profile = degree_profile(&s, &[])?;
    let n = spec.n();
    let min_wt = (0..spec.size())
        .filter(|&z| !s.is_zero_at(z))
        .map(|z| z.count_ones())
        .min()
        .expect("±1 functions have nonzero spectra");
    let printed_rhs = profile.deg0.min(n - profile.deg0);
    let restricted_rhs = profile.deg0.min(n - min_wt);
    Ok(Prop3Report {
        algebraic_degree: dega,
        deg0: profile.deg0,
        n_minus_deg0: n - profile.deg0,
        printed_rhs,
        printed_holds: dega <= printed_rhs,
        exempt: dega <= 1,
        min_support_weight: min_wt,
        restricted_rhs,
        restricted_holds: dega <= restricted_rhs,
    })
}
