//! Spectral analysis of discrete functions on Z_q^n.
//!
//! The crate computes Fourier–Hadamard coefficients W_f(z) = (f, φ_z) of
//! two- and three-valued (and general) functions in exact cyclotomic
//! arithmetic, derives the degree functionals deg_m(f) = max Σ|z_k|^m over
//! the spectrum support, counts relevant variables and mixed edges on the
//! Hamming graph H(n,q) and the cycle power C_q^n, and verifies the upper
//! bounds these quantities impose on the number of relevant variables —
//! exhaustively, over whole function spaces, or on seeded random corpora.
//!
//! Quick taste:
//!
//! ```
//! use qspectra::{forward, gen_fm, sensitivity_report, degree_profile};
//!
//! let f = gen_fm(4, 2, 3).unwrap();            // h(x1)·h(x2) on Z_4^3
//! let profile = degree_profile(&forward(&f), &[]).unwrap();
//! let sens = sensitivity_report(&f).unwrap();
//! assert_eq!(profile.deg0, 2);
//! assert_eq!(sens.t, 2);                       // two relevant variables
//! ```
//!
//! The `book/` directory of the repository walks through the concepts
//! chapter by chapter; every code block there compiles and runs as part of
//! `cargo test --doc`.

pub mod bounds;
pub mod cli;
pub mod degrees;
pub mod domain;
pub mod explorer;
pub mod graphs;
pub mod io;
pub mod report;
pub mod sensitivity;
pub mod transform;

mod error;
mod util;

pub use bounds::{bounds_three_valued, bounds_two_valued, tightness, BoundEntry, BoundReport};
pub use degrees::{
    algebraic_degree, char_degree, check_prop2, check_prop3, degree_profile, lagrange_interpolate,
    moebius, nnf, numerical_degree, weight, AnfTable, DegreeProfile, InterpPolynomial, NnfTable,
    Prop2Report, Prop3Report,
};
pub use domain::{sym_rep, CycloNum, DiscreteFunction, DomainSpec, ValueKind, Values};
pub use error::{Error, Result};
pub use explorer::{
    gen_fm, gen_named, search_extremal, sweep, Corpus, CorpusMode, ExtremalRecord, Law,
    NamedFamily, SweepSummary,
};
pub use graphs::{
    adjacency_apply, edge_count, edges, eigenvalue_cycle, eigenvalue_hamming, hamming_distance,
    lee_distance, quadratic_form, sin2_table, vertex_degree, Edge, GraphKind,
};
pub use io::{read_truth_table, write_truth_table};
pub use report::{analyze, AnalysisReport};
pub use sensitivity::{
    check_support_bounds, mixed_edges, relevant_variables, retract, retract_pair_count,
    sensitivity_report, spectral_i_three_valued, spectral_i_three_valued_hamming,
    spectral_i_two_valued, t_of, EdgeCount, SensitivityReport, SupportBoundsReport,
};
pub use transform::{
    forward, inverse, naive_forward, parseval_sum, parseval_sum_exact, SpecData, Spectrum,
};

// The guide chapters double as doc-tests so the book can never drift from
// the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/transform.md")]
    mod transform {}
    #[doc = include_str!("../../../book/src/degrees.md")]
    mod degrees {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/sensitivity.md")]
    mod sensitivity {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/exploring.md")]
    mod exploring {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
