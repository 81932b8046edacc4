//! Cayley graphs on Z_q^n and their spectra.
//!
//! Two connecting sets are supported per coordinate: all of Z_q∖{0}, which
//! gives the Hamming graph H(n,q), and {−1, 1}, which gives the Cartesian
//! power of the q-cycle C_q^n (the Lee-metric hypercube). Characters φ_z are
//! eigenfunctions of both; the eigenvalues are
//!
//! * H(n,q):  λ_z = (q−1)n − q·wt(z)
//! * C_q^n:   λ_z = 2n − 4 Σ_k a_k(z) sin²(πk/q)
//!
//! where a_k(z) counts coordinates of z equal to k. For q = 2 the cycle
//! degenerates and C_2^n is taken as a multigraph with every edge doubled,
//! which keeps λ_z = 2n − 4·wt(z) the exact adjacency eigenvalue.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::transform::Spectrum;

/// Which Cayley graph on Z_q^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// Connecting set Z_q ∖ {0} in each coordinate: the Hamming graph.
    Hamming,
    /// Connecting set {−1, 1} in each coordinate: the power of the q-cycle.
    CyclePower,
}

/// An undirected edge, endpoints as flat indices, tagged with the
/// coordinate in which they differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub x: usize,
    pub y: usize,
    pub direction: usize,
}

/// Degree of every vertex: n(q−1) for Hamming, 2n for the cycle power
/// (with the q = 2 multigraph convention).
pub fn vertex_degree(kind: GraphKind, spec: DomainSpec) -> u64 {
    match kind {
        GraphKind::Hamming => spec.n() as u64 * (spec.q() as u64 - 1),
        GraphKind::CyclePower => 2 * spec.n() as u64,
    }
}

/// Total number of edges: n(q−1)q^n/2 for Hamming, nq^n for the cycle power.
pub fn edge_count(kind: GraphKind, spec: DomainSpec) -> u64 {
    vertex_degree(kind, spec) * spec.size() as u64 / 2
}

/// Every undirected edge exactly once, tagged with its direction. For the
/// q = 2 cycle power each Hamming edge is emitted twice (multigraph).
pub fn edges(kind: GraphKind, spec: DomainSpec) -> Box<dyn Iterator<Item = Edge>> {
    let q = spec.q() as usize;
    let n = spec.n() as usize;
    let size = spec.size();
    match kind {
        GraphKind::CyclePower => Box::new((0..n).flat_map(move |i| {
            let stride = spec.stride(i);
            (0..size).map(move |x| {
                let d = (x / stride) % q;
                let y = if d + 1 < q {
                    x + stride
                } else {
                    x + stride - q * stride
                };
                Edge { x, y, direction: i }
            })
        })),
        GraphKind::Hamming => Box::new((0..n).flat_map(move |i| {
            let stride = spec.stride(i);
            (0..size).flat_map(move |x| {
                let d = (x / stride) % q;
                ((d + 1)..q).map(move |c| Edge {
                    x,
                    y: x + (c - d) * stride,
                    direction: i,
                })
            })
        })),
    }
}

fn sin2_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<f64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<f64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// sin²(πk/q) for k = 0, …, q−1, memoized per q.
pub fn sin2_table(q: u32) -> Arc<Vec<f64>> {
    let mut map = sin2_cache().lock().unwrap();
    map.entry(q)
        .or_insert_with(|| {
            Arc::new(
                (0..q)
                    .map(|k| {
                        let s = (std::f64::consts::PI * k as f64 / q as f64).sin();
                        s * s
                    })
                    .collect(),
            )
        })
        .clone()
}

/// Σ_k a_k(z) sin²(πk/q) for a flat-indexed z (the symmetric representative
/// of a residue contributes the same sin² as the residue itself).
pub(crate) fn sin2_weight_flat(spec: DomainSpec, sin2: &[f64], z: usize) -> f64 {
    let q = spec.q() as usize;
    let mut rest = z;
    let mut acc = 0.0;
    for _ in 0..spec.n() {
        acc += sin2[rest % q];
        rest /= q;
    }
    acc
}

/// Eigenvalue of φ_z on the Hamming graph: (q−1)n − q·wt(z).
pub fn eigenvalue_hamming(z: &[u32], spec: DomainSpec) -> i64 {
    let wt = z.iter().filter(|&&c| c != 0).count() as i64;
    (spec.q() as i64 - 1) * spec.n() as i64 - spec.q() as i64 * wt
}

/// Eigenvalue of φ_z on the cycle power: 2n − 4 Σ_k a_k(z) sin²(πk/q).
pub fn eigenvalue_cycle(z: &[u32], spec: DomainSpec) -> f64 {
    let sin2 = sin2_table(spec.q());
    let mut acc = 0.0;
    for &c in z {
        acc += sin2[c as usize];
    }
    2.0 * spec.n() as f64 - 4.0 * acc
}

/// Apply the adjacency operator pointwise: (Af)(x) = Σ_{y ~ x} f(y), with
/// multiplicity for the q = 2 cycle multigraph.
pub fn adjacency_apply(kind: GraphKind, spec: DomainSpec, f: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); spec.size()];
    for e in edges(kind, spec) {
        out[e.x] += f[e.y];
        out[e.y] += f[e.x];
    }
    out
}

/// The quadratic form (Af, f) evaluated spectrally:
/// q^{−n} Σ_z λ_z |W_f(z)|².
pub fn quadratic_form(s: &Spectrum, kind: GraphKind) -> f64 {
    let spec = s.spec();
    let q = spec.q();
    let sin2 = sin2_table(q);
    let mut acc = 0.0;
    for z in 0..spec.size() {
        let nsq = s.norm_sq(z);
        if nsq == 0.0 {
            continue;
        }
        let lambda = match kind {
            GraphKind::Hamming => {
                let mut rest = z;
                let mut wt = 0i64;
                for _ in 0..spec.n() {
                    if rest % q as usize != 0 {
                        wt += 1;
                    }
                    rest /= q as usize;
                }
                ((q as i64 - 1) * spec.n() as i64 - q as i64 * wt) as f64
            }
            GraphKind::CyclePower => 2.0 * spec.n() as f64 - 4.0 * sin2_weight_flat(spec, &sin2, z),
        };
        acc += lambda * nsq;
    }
    acc / spec.size() as f64
}

/// Lee distance Σ_i min{|u_i − v_i|, q − |u_i − v_i|}.
pub fn lee_distance(u: &[u32], v: &[u32], spec: DomainSpec) -> Result<u64> {
    if u.len() != spec.n() as usize || v.len() != spec.n() as usize {
        return Err(Error::WrongArity {
            got: u.len().max(v.len()),
            expected: spec.n(),
        });
    }
    let q = spec.q() as i64;
    let mut acc = 0u64;
    for (&a, &b) in u.iter().zip(v) {
        if a >= spec.q() || b >= spec.q() {
            return Err(Error::CoordOutOfRange {
                value: a.max(b),
                q: spec.q(),
            });
        }
        let d = (a as i64 - b as i64).abs();
        acc += d.min(q - d) as u64;
    }
    Ok(acc)
}

/// Hamming distance: the number of differing coordinates.
pub fn hamming_distance(u: &[u32], v: &[u32]) -> Result<u64> {
    if u.len() != v.len() {
        return Err(Error::WrongArity {
            got: v.len(),
            expected: u.len() as u32,
        });
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count() as u64)
}
