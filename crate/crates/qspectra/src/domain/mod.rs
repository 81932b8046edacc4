//! Core value types for functions on Z_q^n.
//!
//! Conventions used throughout the crate:
//!
//! * Points of Z_q^n are tuples (x_1, …, x_n) of residues in {0, …, q−1},
//!   flattened to a single index with x_n varying fastest:
//!   flat = Σ_i x_i · q^{n−i}.
//! * Z_q is also read through *symmetric representatives*: the set
//!   {−(q−1)/2, …, (q−1)/2} for odd q and {−(q−2)/2, …, q/2} for even q
//!   (note the asymmetry: +q/2 is in, −q/2 is not). Degree functionals
//!   |z_k|^m are always taken over these representatives.

mod cyclo;

pub use cyclo::CycloNum;
pub(crate) use cyclo::{ctx, CycloCtx};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest alphabet the cyclotomic tables support.
pub const MAX_Q: u32 = 64;
/// Cap on q^n so flat indices stay well inside the platform index range.
pub const MAX_POINTS: u128 = 1 << 40;

/// The shape of a function domain: alphabet size q and arity n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DomainSpec {
    q: u32,
    n: u32,
    size: usize,
}

impl DomainSpec {
    pub fn new(q: u32, n: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidDomain(format!(
                "q must be at least 2, got {q}"
            )));
        }
        if q > MAX_Q {
            return Err(Error::InvalidDomain(format!(
                "q must be at most {MAX_Q}, got {q}"
            )));
        }
        if n < 1 {
            return Err(Error::InvalidDomain("n must be at least 1".into()));
        }
        let mut size: u128 = 1;
        for _ in 0..n {
            size *= q as u128;
            if size > MAX_POINTS {
                return Err(Error::InvalidDomain(format!(
                    "q^n exceeds the supported maximum of 2^40 (q = {q}, n = {n})"
                )));
            }
        }
        Ok(DomainSpec {
            q,
            n,
            size: size as usize,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of points, q^n.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Stride of coordinate i (0-based) in the flat order; x_n is fastest.
    pub fn stride(&self, i: usize) -> usize {
        (self.q as usize).pow(self.n - 1 - i as u32)
    }

    /// Coordinate i of the point with the given flat index.
    pub fn digit(&self, flat: usize, i: usize) -> u32 {
        ((flat / self.stride(i)) % self.q as usize) as u32
    }

    pub fn flat_index(&self, coords: &[u32]) -> Result<usize> {
        if coords.len() != self.n as usize {
            return Err(Error::WrongArity {
                got: coords.len(),
                expected: self.n,
            });
        }
        let mut flat = 0usize;
        for &c in coords {
            if c >= self.q {
                return Err(Error::CoordOutOfRange {
                    value: c,
                    q: self.q,
                });
            }
            flat = flat * self.q as usize + c as usize;
        }
        Ok(flat)
    }

    pub fn unflatten(&self, flat: usize) -> Result<Vec<u32>> {
        if flat >= self.size {
            return Err(Error::IndexOutOfRange {
                index: flat,
                size: self.size,
            });
        }
        let mut coords = vec![0u32; self.n as usize];
        let mut rest = flat;
        for i in (0..self.n as usize).rev() {
            coords[i] = (rest % self.q as usize) as u32;
            rest /= self.q as usize;
        }
        Ok(coords)
    }

    /// Iterate all points in flat order.
    pub fn points(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.size).map(move |f| self.unflatten(f).unwrap())
    }

    /// The domain with coordinate `i` removed (for retracts).
    pub fn retracted(&self) -> Result<DomainSpec> {
        if self.n < 2 {
            return Err(Error::RetractArity(self.n));
        }
        DomainSpec::new(self.q, self.n - 1)
    }

    /// ⟨x, z⟩ mod q for two flat indices.
    pub(crate) fn dot_mod_q(&self, x: usize, z: usize) -> u32 {
        let q = self.q as usize;
        let mut a = x;
        let mut b = z;
        let mut acc = 0usize;
        for _ in 0..self.n {
            acc += (a % q) * (b % q);
            a /= q;
            b /= q;
        }
        (acc % q) as u32
    }
}

/// The symmetric representative of residue `r` modulo `q`.
///
/// Odd q maps onto {−(q−1)/2, …, (q−1)/2}; even q onto {−(q−2)/2, …, q/2}
/// — the residue q/2 keeps its positive sign.
pub fn sym_rep(r: u32, q: u32) -> Result<i64> {
    if q < 2 {
        return Err(Error::InvalidDomain(format!(
            "q must be at least 2, got {q}"
        )));
    }
    if r >= q {
        return Err(Error::CoordOutOfRange { value: r, q });
    }
    Ok(if r <= q / 2 {
        r as i64
    } else {
        r as i64 - q as i64
    })
}

/// Symmetric representatives of 0, …, q−1 as a lookup table.
pub(crate) fn sym_table(q: u32) -> Vec<i64> {
    (0..q).map(|r| sym_rep(r, q).unwrap()).collect()
}

/// Value kind of a discrete function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    /// Two-valued, values in {−1, 1}.
    TwoValuedPm1,
    /// Three-valued, values in {1, ω, ω²} with ω = e^{2πi/3}, stored as the
    /// exponent of ω.
    ThreeValuedOmega,
    /// Boolean, values in {0, 1}.
    Boolean01,
    /// Arbitrary integer values.
    Integer,
    /// Arbitrary complex values (floating arithmetic throughout).
    Complex,
}

impl ValueKind {
    pub fn token(&self) -> &'static str {
        match self {
            ValueKind::TwoValuedPm1 => "pm1",
            ValueKind::ThreeValuedOmega => "omega3",
            ValueKind::Boolean01 => "bool01",
            ValueKind::Integer => "int",
            ValueKind::Complex => "complex",
        }
    }

    pub fn from_token(tok: &str) -> Option<ValueKind> {
        Some(match tok {
            "pm1" => ValueKind::TwoValuedPm1,
            "omega3" => ValueKind::ThreeValuedOmega,
            "bool01" => ValueKind::Boolean01,
            "int" => ValueKind::Integer,
            "complex" => ValueKind::Complex,
            _ => return None,
        })
    }

    /// True when values admit exact (cyclotomic-integer) arithmetic.
    pub fn is_exact(&self) -> bool {
        !matches!(self, ValueKind::Complex)
    }

    /// Number of symbols for the enumerable kinds.
    pub fn symbol_count(&self) -> Option<usize> {
        match self {
            ValueKind::TwoValuedPm1 | ValueKind::Boolean01 => Some(2),
            ValueKind::ThreeValuedOmega => Some(3),
            _ => None,
        }
    }
}

impl std::fmt::Display for ValueKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

/// Dense value table of a discrete function.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Pm1(Vec<i8>),
    Omega3(Vec<u8>),
    Bool01(Vec<u8>),
    Int(Vec<i64>),
    Complex(Vec<Complex64>),
}

impl Values {
    pub fn len(&self) -> usize {
        match self {
            Values::Pm1(v) => v.len(),
            Values::Omega3(v) => v.len(),
            Values::Bool01(v) => v.len(),
            Values::Int(v) => v.len(),
            Values::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> ValueKind {
        match self {
            Values::Pm1(_) => ValueKind::TwoValuedPm1,
            Values::Omega3(_) => ValueKind::ThreeValuedOmega,
            Values::Bool01(_) => ValueKind::Boolean01,
            Values::Int(_) => ValueKind::Integer,
            Values::Complex(_) => ValueKind::Complex,
        }
    }
}

/// A function Z_q^n → C given by its dense value table in flat order.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteFunction {
    spec: DomainSpec,
    values: Values,
}

impl DiscreteFunction {
    pub fn new(spec: DomainSpec, values: Values) -> Result<Self> {
        if values.len() != spec.size() {
            return Err(Error::WrongLength {
                got: values.len(),
                expected: spec.size(),
            });
        }
        match &values {
            Values::Pm1(v) => {
                for &x in v {
                    if x != 1 && x != -1 {
                        return Err(Error::InvalidValue {
                            value: x.to_string(),
                            kind: "pm1",
                        });
                    }
                }
            }
            Values::Omega3(v) => {
                for &x in v {
                    if x > 2 {
                        return Err(Error::InvalidValue {
                            value: x.to_string(),
                            kind: "omega3",
                        });
                    }
                }
            }
            Values::Bool01(v) => {
                for &x in v {
                    if x > 1 {
                        return Err(Error::InvalidValue {
                            value: x.to_string(),
                            kind: "bool01",
                        });
                    }
                }
            }
            _ => {}
        }
        Ok(DiscreteFunction { spec, values })
    }

    pub fn spec(&self) -> DomainSpec {
        self.spec
    }

    pub fn kind(&self) -> ValueKind {
        self.values.kind()
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.spec.size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn constant_int(spec: DomainSpec, c: i64) -> Self {
        DiscreteFunction {
            spec,
            values: Values::Int(vec![c; spec.size()]),
        }
    }

    /// Build from symbol indices for the enumerable kinds
    /// (pm1: 0 ↦ −1, 1 ↦ +1; omega3: exponent of ω; bool01: the bit).
    pub fn from_symbols(spec: DomainSpec, kind: ValueKind, syms: &[u8]) -> Result<Self> {
        let values = match kind {
            ValueKind::TwoValuedPm1 => {
                Values::Pm1(syms.iter().map(|&s| if s == 0 { -1 } else { 1 }).collect())
            }
            ValueKind::ThreeValuedOmega => Values::Omega3(syms.to_vec()),
            ValueKind::Boolean01 => Values::Bool01(syms.to_vec()),
            _ => {
                return Err(Error::KindMismatch {
                    kind: kind.token(),
                    why: "only pm1, omega3 and bool01 are symbol-enumerable",
                })
            }
        };
        DiscreteFunction::new(spec, values)
    }

    /// Symbol indices for the enumerable kinds (inverse of `from_symbols`).
    pub fn symbols(&self) -> Option<Vec<u8>> {
        match &self.values {
            Values::Pm1(v) => Some(v.iter().map(|&x| if x < 0 { 0 } else { 1 }).collect()),
            Values::Omega3(v) => Some(v.clone()),
            Values::Bool01(v) => Some(v.clone()),
            _ => None,
        }
    }

    /// The character φ_z(x) = ξ^{⟨x,z⟩} as a complex-valued function.
    pub fn character(spec: DomainSpec, z: &[u32]) -> Result<Self> {
        let zf = spec.flat_index(z)?;
        let angle = 2.0 * std::f64::consts::PI / spec.q() as f64;
        let values = (0..spec.size())
            .map(|x| Complex64::from_polar(1.0, angle * spec.dot_mod_q(x, zf) as f64))
            .collect();
        DiscreteFunction::new(spec, Values::Complex(values))
    }

    /// φ_z in exact form; only q ∈ {2, 3} have characters inside an exact
    /// value kind (±1 and powers of ω respectively).
    pub fn character_exact(spec: DomainSpec, z: &[u32]) -> Result<Self> {
        let zf = spec.flat_index(z)?;
        match spec.q() {
            2 => {
                let v = (0..spec.size())
                    .map(|x| if spec.dot_mod_q(x, zf) == 0 { 1i8 } else { -1 })
                    .collect();
                DiscreteFunction::new(spec, Values::Pm1(v))
            }
            3 => {
                let v = (0..spec.size())
                    .map(|x| spec.dot_mod_q(x, zf) as u8)
                    .collect();
                DiscreteFunction::new(spec, Values::Omega3(v))
            }
            _ => Err(Error::KindMismatch {
                kind: "character",
                why: "exact characters exist only for q in {2, 3}",
            }),
        }
    }

    /// The ±1 recoding 1 − 2f of a Boolean function (other kinds pass
    /// through when already two-valued).
    pub fn to_pm1(&self) -> Result<DiscreteFunction> {
        match &self.values {
            Values::Bool01(v) => {
                let pm: Vec<i8> = v.iter().map(|&b| 1 - 2 * b as i8).collect();
                DiscreteFunction::new(self.spec, Values::Pm1(pm))
            }
            Values::Pm1(_) => Ok(self.clone()),
            _ => Err(Error::KindMismatch {
                kind: self.kind().token(),
                why: "±1 recoding is defined for bool01 and pm1 values",
            }),
        }
    }

    pub fn to_complex_values(&self) -> Vec<Complex64> {
        match &self.values {
            Values::Pm1(v) => v.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect(),
            Values::Bool01(v) => v.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect(),
            Values::Int(v) => v.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect(),
            Values::Omega3(v) => {
                let angle = 2.0 * std::f64::consts::PI / 3.0;
                v.iter()
                    .map(|&x| Complex64::from_polar(1.0, angle * x as f64))
                    .collect()
            }
            Values::Complex(v) => v.clone(),
        }
    }

    /// Exact value equality at two points; not available for complex values.
    pub fn value_eq(&self, i: usize, j: usize) -> Result<bool> {
        match &self.values {
            Values::Pm1(v) => Ok(v[i] == v[j]),
            Values::Omega3(v) => Ok(v[i] == v[j]),
            Values::Bool01(v) => Ok(v[i] == v[j]),
            Values::Int(v) => Ok(v[i] == v[j]),
            Values::Complex(_) => Err(Error::KindMismatch {
                kind: "complex",
                why: "exact value comparison requires an exact kind",
            }),
        }
    }

    /// True when all values coincide (exact kinds only).
    pub fn is_constant(&self) -> Result<bool> {
        for i in 1..self.len() {
            if !self.value_eq(0, i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Render one value the way the truth-table file format does.
    pub fn value_display(&self, i: usize) -> String {
        match &self.values {
            Values::Pm1(v) => v[i].to_string(),
            Values::Omega3(v) => v[i].to_string(),
            Values::Bool01(v) => v[i].to_string(),
            Values::Int(v) => v[i].to_string(),
            Values::Complex(v) => format!("{} {}", v[i].re, v[i].im),
        }
    }
}
