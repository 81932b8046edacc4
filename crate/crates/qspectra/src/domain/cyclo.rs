//! Exact arithmetic in the ring Z[ξ] of cyclotomic integers, ξ = e^{2πi/N}.
//!
//! Elements are stored canonically reduced modulo the N-th cyclotomic
//! polynomial Φ_N, i.e. as integer coordinates in the power basis
//! 1, ξ, …, ξ^{φ(N)−1}. Canonical form is unique, so equality and the zero
//! test are exact. This is what makes degree functionals trustworthy: a
//! Fourier coefficient is zero iff its coordinate vector is zero.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

// Dense little-endian integer polynomial helpers (index = exponent).

/// Exact division by a monic divisor; panics if the division leaves a
/// remainder (never happens for the cyclotomic tower built below).
fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    assert_eq!(*den.last().unwrap(), 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i128; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact polynomial division");
    quot
}

fn cyclotomic_poly_rec(n: u32, cache: &mut HashMap<u32, Vec<i128>>) -> Vec<i128> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n − 1 divided by Φ_d for every proper divisor d of n.
    let mut poly = vec![0i128; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly_rec(d, cache);
            poly = poly_div_exact(&poly, &phi_d);
        }
    }
    cache.insert(n, poly.clone());
    poly
}

/// Coefficients of the N-th cyclotomic polynomial, low degree first.
pub(crate) fn cyclotomic_poly(n: u32) -> Vec<i128> {
    cyclotomic_poly_rec(n, &mut HashMap::new())
}

/// Shared per-order tables: reduction rows x^e mod Φ_N and complex roots.
pub(crate) struct CycloCtx {
    pub(crate) phi: usize,
    /// rows[e] = coordinates of x^e in the power basis, for e ≤ φ + N − 2.
    rows: Vec<Vec<i128>>,
    /// ξ^j as a complex double, j < φ.
    roots: Vec<Complex64>,
}

impl CycloCtx {
    fn new(order: u32) -> Self {
        assert!(order >= 2);
        let min_poly = cyclotomic_poly(order);
        let phi = min_poly.len() - 1;
        let max_e = phi + order as usize - 2;
        let mut rows: Vec<Vec<i128>> = Vec::with_capacity(max_e + 1);
        for e in 0..=max_e {
            if e < phi {
                let mut row = vec![0i128; phi];
                row[e] = 1;
                rows.push(row);
            } else {
                // x^e = x · x^{e−1}, then substitute x^φ = −(Φ − x^φ).
                let prev = &rows[e - 1];
                let mut row = vec![0i128; phi];
                let lead = prev[phi - 1];
                row[1..phi].copy_from_slice(&prev[..phi - 1]);
                if lead != 0 {
                    for j in 0..phi {
                        row[j] -= lead * min_poly[j];
                    }
                }
                rows.push(row);
            }
        }
        let angle = 2.0 * std::f64::consts::PI / order as f64;
        let roots = (0..phi)
            .map(|j| Complex64::from_polar(1.0, angle * j as f64))
            .collect();
        CycloCtx { phi, rows, roots }
    }

    #[inline]
    pub(crate) fn row(&self, e: usize) -> &[i128] {
        &self.rows[e]
    }
}

static CTX_CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloCtx>>>> = OnceLock::new();

/// Fetch (building and caching on first use) the tables for a given order.
pub(crate) fn ctx(order: u32) -> Arc<CycloCtx> {
    let cache = CTX_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(order)
        .or_insert_with(|| Arc::new(CycloCtx::new(order)))
        .clone()
}

/// A cyclotomic integer: an element of Z[ξ], ξ = e^{2πi/order}, in canonical
/// reduced form modulo Φ_order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    order: u32,
    coeffs: Vec<i128>,
}

impl CycloNum {
    pub fn zero(order: u32) -> Self {
        let c = ctx(order);
        CycloNum {
            order,
            coeffs: vec![0; c.phi],
        }
    }

    pub fn from_int(order: u32, v: i128) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = v;
        z
    }

    /// ξ^exp (exponent taken modulo the order).
    pub fn root(order: u32, exp: u32) -> Self {
        let c = ctx(order);
        let e = (exp % order) as usize;
        CycloNum {
            order,
            coeffs: c.row(e).to_vec(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True iff the element is a rational integer, returning it.
    pub fn as_int(&self) -> Option<i128> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn check_order(&self, other: &CycloNum) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloNum {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloNum {
            order: self.order,
            coeffs,
        })
    }

    pub fn neg(&self) -> CycloNum {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: i128) -> CycloNum {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        let c = ctx(self.order);
        Ok(self.mul_with(other, &c))
    }

    pub(crate) fn mul_with(&self, other: &CycloNum, c: &CycloCtx) -> CycloNum {
        let phi = c.phi;
        let mut conv = vec![0i128; 2 * phi - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                conv[i + j] += x * y;
            }
        }
        let mut out = vec![0i128; phi];
        out.copy_from_slice(&conv[..phi]);
        for (e, &v) in conv.iter().enumerate().skip(phi) {
            if v != 0 {
                for (t, &r) in c.row(e).iter().enumerate() {
                    out[t] += v * r;
                }
            }
        }
        CycloNum {
            order: self.order,
            coeffs: out,
        }
    }

    /// Multiply by ξ^exp.
    pub fn mul_root(&self, exp: u32) -> CycloNum {
        let c = ctx(self.order);
        self.mul_root_with(exp, &c)
    }

    pub(crate) fn mul_root_with(&self, exp: u32, c: &CycloCtx) -> CycloNum {
        let e = (exp % self.order) as usize;
        let mut out = vec![0i128; c.phi];
        for (j, &v) in self.coeffs.iter().enumerate() {
            if v != 0 {
                for (t, &r) in c.row(j + e).iter().enumerate() {
                    out[t] += v * r;
                }
            }
        }
        CycloNum {
            order: self.order,
            coeffs: out,
        }
    }

    /// self += v · ξ^exp. Callers guarantee matching orders.
    pub(crate) fn add_scaled_root_with(&mut self, v: &CycloNum, exp: u32, c: &CycloCtx) {
        debug_assert_eq!(self.order, v.order);
        let e = (exp % self.order) as usize;
        for (j, &x) in v.coeffs.iter().enumerate() {
            if x != 0 {
                for (t, &r) in c.row(j + e).iter().enumerate() {
                    self.coeffs[t] += x * r;
                }
            }
        }
    }

    pub(crate) fn add_assign_ref(&mut self, other: &CycloNum) {
        debug_assert_eq!(self.order, other.order);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub(crate) fn set_zero(&mut self) {
        for c in &mut self.coeffs {
            *c = 0;
        }
    }

    /// Complex conjugate (ξ ↦ ξ^{−1}).
    pub fn conj(&self) -> CycloNum {
        let c = ctx(self.order);
        let mut out = vec![0i128; c.phi];
        out[0] = self.coeffs[0];
        for (j, &v) in self.coeffs.iter().enumerate().skip(1) {
            if v != 0 {
                for (t, &r) in c.row(self.order as usize - j).iter().enumerate() {
                    out[t] += v * r;
                }
            }
        }
        CycloNum {
            order: self.order,
            coeffs: out,
        }
    }

    /// Embed into Z[ξ_M] for an order M that this order divides.
    pub fn lift(&self, new_order: u32) -> Result<CycloNum> {
        if !new_order.is_multiple_of(self.order) {
            return Err(Error::OrderNotDivisible(self.order, new_order));
        }
        if new_order == self.order {
            return Ok(self.clone());
        }
        let step = (new_order / self.order) as usize;
        let c = ctx(new_order);
        let mut out = vec![0i128; c.phi];
        for (j, &v) in self.coeffs.iter().enumerate() {
            if v != 0 {
                for (t, &r) in c.row(j * step).iter().enumerate() {
                    out[t] += v * r;
                }
            }
        }
        Ok(CycloNum {
            order: new_order,
            coeffs: out,
        })
    }

    /// Exact division by a rational integer; errors when any coordinate is
    /// not divisible.
    pub fn exact_div(&self, k: i128) -> Result<CycloNum> {
        assert!(k != 0, "division by zero");
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            if c % k != 0 {
                return Err(Error::NonIntegralInverse(0));
            }
            coeffs.push(c / k);
        }
        Ok(CycloNum {
            order: self.order,
            coeffs,
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        let c = ctx(self.order);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &v) in self.coeffs.iter().enumerate() {
            if v != 0 {
                acc += c.roots[j] * v as f64;
            }
        }
        acc
    }

    /// |self|² as a double (via the complex embedding).
    pub fn norm_sq(&self) -> f64 {
        self.to_complex().norm_sqr()
    }
}

impl fmt::Display for CycloNum {
    /// Renders the canonical polynomial in ξ, e.g. `1 - 2ξ + ξ^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if j == 1 {
                        write!(f, "ξ")?;
                    } else {
                        write!(f, "ξ^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys_match_known_values() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // Degree is Euler's totient.
        assert_eq!(cyclotomic_poly(15).len() - 1, 8);
        assert_eq!(cyclotomic_poly(192).len() - 1, 64);
    }

    #[test]
    fn cube_roots_of_unity_sum_to_zero() {
        let one = CycloNum::from_int(3, 1);
        let xi = CycloNum::root(3, 1);
        let xi2 = CycloNum::root(3, 2);
        let sum = one.add(&xi).unwrap().add(&xi2).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn fourth_roots_multiply_to_one() {
        let xi = CycloNum::root(4, 1);
        let xi3 = CycloNum::root(4, 3);
        assert_eq!(xi.mul(&xi3).unwrap(), CycloNum::from_int(4, 1));
    }

    #[test]
    fn conjugate_is_inverse_root() {
        for q in [3u32, 4, 5, 6, 12, 15] {
            let xi = CycloNum::root(q, 1);
            assert_eq!(xi.conj(), CycloNum::root(q, q - 1), "q = {q}");
        }
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = CycloNum::root(3, 1);
        let b = CycloNum::root(4, 1);
        assert!(matches!(a.add(&b), Err(Error::OrderMismatch(3, 4))));
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch(3, 4))));
    }

    #[test]
    fn lift_preserves_the_embedded_value() {
        let xi3 = CycloNum::root(3, 1);
        let lifted = xi3.lift(12).unwrap();
        assert_eq!(lifted, CycloNum::root(12, 4));
        let back = lifted.to_complex();
        assert!((back - xi3.to_complex()).norm() < 1e-12);
        assert!(matches!(xi3.lift(4), Err(Error::OrderNotDivisible(3, 4))));
    }

    #[test]
    fn exact_division_checks_divisibility() {
        let a = CycloNum::root(5, 2).scale(6);
        assert_eq!(a.exact_div(3).unwrap(), CycloNum::root(5, 2).scale(2));
        assert!(a.exact_div(4).is_err());
    }

    #[test]
    fn display_is_canonical_polynomial() {
        let x = CycloNum::from_int(4, 1)
            .sub(&CycloNum::root(4, 1).scale(2))
            .unwrap();
        assert_eq!(x.to_string(), "1 - 2ξ");
        assert_eq!(CycloNum::zero(4).to_string(), "0");
        // ξ^2 = −1 for order 4, reduction happens on construction.
        assert_eq!(CycloNum::root(4, 2).to_string(), "-1");
    }

    #[test]
    fn complex_embedding_matches_roots_of_unity() {
        for q in [2u32, 3, 4, 5, 6, 12, 15, 35, 105] {
            for k in 0..q {
                let z = CycloNum::root(q, k).to_complex();
                let expect =
                    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / q as f64);
                assert!((z - expect).norm() < 1e-11, "q={q} k={k}");
            }
        }
    }
}
