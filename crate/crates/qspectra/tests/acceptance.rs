//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured runtime. Every tolerance is pinned here, in code.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qspectra::{
    adjacency_apply, analyze, eigenvalue_cycle, eigenvalue_hamming, forward, gen_fm, gen_named,
    inverse, naive_forward, sweep, Corpus, CorpusMode, DiscreteFunction, DomainSpec, GraphKind,
    Law, NamedFamily, SpecData, ValueKind, Values,
};

fn pass(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "{criterion}: runtime {elapsed:?} exceeds the {budget:?} budget"
    );
    println!("criterion {criterion}: PASS ({elapsed:.2?})");
}

fn random_function(spec: DomainSpec, kind: ValueKind, rng: &mut ChaCha8Rng) -> DiscreteFunction {
    match kind {
        ValueKind::Complex => {
            let v: Vec<Complex64> = (0..spec.size())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            DiscreteFunction::new(spec, Values::Complex(v)).unwrap()
        }
        _ => {
            let v = kind.symbol_count().unwrap() as u8;
            let syms: Vec<u8> = (0..spec.size()).map(|_| rng.gen_range(0..v)).collect();
            DiscreteFunction::from_symbols(spec, kind, &syms).unwrap()
        }
    }
}

fn assert_exact_pipeline(f: &DiscreteFunction) {
    let s = forward(f);
    assert_eq!(s, naive_forward(f), "tensor and naive transforms differ");
    assert_eq!(&inverse(&s).unwrap(), f, "exact roundtrip failed");
}

fn assert_float_pipeline(f: &DiscreteFunction) {
    let s = forward(f);
    let ns = naive_forward(f);
    match (s.data(), ns.data()) {
        (SpecData::Complex { coeffs: a, .. }, SpecData::Complex { coeffs: b, .. }) => {
            for (x, y) in a.iter().zip(b) {
                assert!(
                    (x - y).norm() <= 1e-9,
                    "tensor vs naive drift {}",
                    (x - y).norm()
                );
            }
        }
        _ => unreachable!(),
    }
    let back = inverse(&s).unwrap();
    match (f.values(), back.values()) {
        (Values::Complex(a), Values::Complex(b)) => {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).norm() <= 1e-9, "roundtrip drift {}", (x - y).norm());
            }
        }
        _ => unreachable!(),
    }
}

#[test]
fn criterion_01_transform_correctness() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for q in 2u32..=6 {
        for n in 1u32..=3 {
            let spec = DomainSpec::new(q, n).unwrap();
            // 100 random functions per spec: 50 two-valued, 25 three-valued,
            // 25 complex.
            for _ in 0..50 {
                assert_exact_pipeline(&random_function(spec, ValueKind::TwoValuedPm1, &mut rng));
            }
            for _ in 0..25 {
                assert_exact_pipeline(&random_function(
                    spec,
                    ValueKind::ThreeValuedOmega,
                    &mut rng,
                ));
            }
            for _ in 0..25 {
                assert_float_pipeline(&random_function(spec, ValueKind::Complex, &mut rng));
            }
            // Characters at a few frequencies.
            for z in [0, spec.size() - 1, spec.size() / 2] {
                let zc = spec.unflatten(z).unwrap();
                assert_float_pipeline(&DiscreteFunction::character(spec, &zc).unwrap());
            }
        }
    }
    // Named families.
    for n in 1u32..=3 {
        for m in 1..=n {
            assert_exact_pipeline(&gen_fm(4, m, n).unwrap());
        }
        let spec2 = DomainSpec::new(2, n).unwrap();
        assert_exact_pipeline(&gen_named(&NamedFamily::XorAll, spec2).unwrap());
        assert_exact_pipeline(&gen_named(&NamedFamily::Jmath, spec2).unwrap());
        assert_exact_pipeline(&gen_named(&NamedFamily::Dictator(0), spec2).unwrap());
        if n % 2 == 1 {
            assert_exact_pipeline(&gen_named(&NamedFamily::Majority, spec2).unwrap());
        }
        assert_exact_pipeline(&gen_named(&NamedFamily::Constant(3), spec2).unwrap());
    }
    pass(
        "01 (transform correctness)",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_02_parseval() {
    let started = Instant::now();
    for (kind, expect) in [
        (ValueKind::TwoValuedPm1, 512u64),
        (ValueKind::ThreeValuedOmega, 19683),
    ] {
        let corpus = Corpus {
            spec: DomainSpec::new(3, 2).unwrap(),
            kind,
            mode: CorpusMode::Exhaustive,
        };
        let summary = sweep(&corpus, &[Law::Parseval]).unwrap();
        assert_eq!(summary.laws[0].checked, expect);
        assert_eq!(
            summary.laws[0].violations, 0,
            "{kind:?} parseval violations"
        );
    }
    // Sampled q = 5, n = 3: exact arithmetic, so equality is exact and in
    // particular within the 1e−9 relative budget.
    let corpus = Corpus {
        spec: DomainSpec::new(5, 3).unwrap(),
        kind: ValueKind::ThreeValuedOmega,
        mode: CorpusMode::Random {
            count: 1000,
            seed: 7,
        },
    };
    let summary = sweep(&corpus, &[Law::Parseval]).unwrap();
    assert_eq!(summary.laws[0].checked, 1000);
    assert_eq!(summary.laws[0].violations, 0);
    pass("02 (parseval)", started, Duration::from_secs(30));
}

#[test]
fn criterion_03_eigenvalue_identities() {
    let started = Instant::now();
    for (q, n) in [(3u32, 2u32), (4, 2), (5, 2), (3, 3)] {
        let spec = DomainSpec::new(q, n).unwrap();
        for z in 0..spec.size() {
            let zc = spec.unflatten(z).unwrap();
            let phi = DiscreteFunction::character(spec, &zc)
                .unwrap()
                .to_complex_values();
            for kind in [GraphKind::Hamming, GraphKind::CyclePower] {
                let lambda = match kind {
                    GraphKind::Hamming => eigenvalue_hamming(&zc, spec) as f64,
                    GraphKind::CyclePower => eigenvalue_cycle(&zc, spec),
                };
                let applied = adjacency_apply(kind, spec, &phi);
                for (a, v) in applied.iter().zip(&phi) {
                    assert!(
                        (a - lambda * v).norm() <= 1e-9,
                        "q={q} n={n} z={zc:?} {kind:?}"
                    );
                }
            }
        }
    }
    pass(
        "03 (eigenvalue identities)",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_04_spectral_sensitivity_identities() {
    let started = Instant::now();
    for (q, kind, expect) in [
        (3u32, ValueKind::TwoValuedPm1, 512u64),
        (4, ValueKind::TwoValuedPm1, 65536),
        (3, ValueKind::ThreeValuedOmega, 19683),
    ] {
        let corpus = Corpus {
            spec: DomainSpec::new(q, 2).unwrap(),
            kind,
            mode: CorpusMode::Exhaustive,
        };
        let summary = sweep(&corpus, &[Law::SpectralI]).unwrap();
        assert_eq!(summary.laws[0].checked, expect, "q={q} {kind:?}");
        assert_eq!(summary.laws[0].violations, 0, "q={q} {kind:?}");
    }
    pass(
        "04 (spectral sensitivity identities)",
        started,
        Duration::from_secs(300),
    );
}

fn two_valued_corpora() -> Vec<Corpus> {
    vec![
        Corpus {
            spec: DomainSpec::new(3, 2).unwrap(),
            kind: ValueKind::TwoValuedPm1,
            mode: CorpusMode::Exhaustive,
        },
        Corpus {
            spec: DomainSpec::new(4, 2).unwrap(),
            kind: ValueKind::TwoValuedPm1,
            mode: CorpusMode::Exhaustive,
        },
        Corpus {
            spec: DomainSpec::new(5, 3).unwrap(),
            kind: ValueKind::TwoValuedPm1,
            mode: CorpusMode::Random {
                count: 100_000,
                seed: 5,
            },
        },
    ]
}

fn three_valued_corpora() -> Vec<Corpus> {
    vec![
        Corpus {
            spec: DomainSpec::new(3, 2).unwrap(),
            kind: ValueKind::ThreeValuedOmega,
            mode: CorpusMode::Exhaustive,
        },
        Corpus {
            spec: DomainSpec::new(4, 2).unwrap(),
            kind: ValueKind::ThreeValuedOmega,
            mode: CorpusMode::Random {
                count: 10_000,
                seed: 11,
            },
        },
        Corpus {
            spec: DomainSpec::new(5, 2).unwrap(),
            kind: ValueKind::ThreeValuedOmega,
            mode: CorpusMode::Random {
                count: 10_000,
                seed: 13,
            },
        },
    ]
}

#[test]
fn criterion_05_theorem1_bounds() {
    let started = Instant::now();
    for corpus in two_valued_corpora() {
        let summary = sweep(&corpus, &[Law::Theorem1]).unwrap();
        let law = &summary.laws[0];
        assert_eq!(
            law.violations, 0,
            "theorem1 violated on {:?}",
            summary.corpus
        );
        assert_eq!(law.checked + law.skipped, summary.corpus.functions);
        if corpus.mode == CorpusMode::Exhaustive {
            assert_eq!(law.skipped, 2, "exactly the two constants are skipped");
        }
    }
    pass("05 (two-valued bounds)", started, Duration::from_secs(120));
}

#[test]
fn criterion_06_three_valued_bounds() {
    let started = Instant::now();
    for corpus in three_valued_corpora() {
        let summary = sweep(&corpus, &[Law::Theorem2, Law::Theorem3]).unwrap();
        for law in &summary.laws {
            assert_eq!(
                law.violations, 0,
                "{} violated on {:?}",
                law.law, summary.corpus
            );
        }
        if corpus.mode == CorpusMode::Exhaustive {
            assert_eq!(
                summary.laws[0].skipped, 3,
                "exactly the three constants are skipped"
            );
        }
    }
    pass(
        "06 (three-valued bounds)",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_07_proof_step_inequalities() {
    let started = Instant::now();
    for corpus in two_valued_corpora()
        .into_iter()
        .chain(three_valued_corpora())
    {
        let summary = sweep(&corpus, &[Law::ProofSteps]).unwrap();
        assert_eq!(
            summary.laws[0].violations, 0,
            "proof steps violated on {:?}",
            summary.corpus
        );
    }
    pass(
        "07 (proof-step inequalities)",
        started,
        Duration::from_secs(240),
    );
}

#[test]
fn criterion_08_fm_reproduction() {
    let started = Instant::now();
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    for m in 1u32..=3 {
        let n = m + 1;
        let f = gen_fm(4, m, n).unwrap();
        let report = analyze(&f).unwrap();
        let deg = report.degrees.expect("fm is nonzero");
        assert_eq!(deg.deg0, m);
        assert_eq!(deg.deg2, m as u64);
        assert_eq!(report.sensitivity.as_ref().unwrap().t, m);

        // Vanishing coefficients past the active prefix.
        let s = forward(&f);
        let spec = f.spec();
        for z in 0..spec.size() {
            let outside = (m as usize..n as usize).any(|k| spec.digit(z, k) != 0);
            if outside {
                assert!(s.is_zero_at(z), "W(z) should vanish at z = {z}");
            }
        }

        // Bound comparison: (π²/2)·m·4^{m−2} = π²·m·4^m/32 versus m·4^m/3,
        // the new value strictly smaller.
        let bounds = report.bounds.unwrap();
        let new_bound = bounds
            .entries
            .iter()
            .find(|e| e.name == "two_valued_deg2")
            .unwrap();
        let old_bound = bounds
            .entries
            .iter()
            .find(|e| e.name == "valyuzhenich")
            .unwrap();
        let expect_new = pi2 * m as f64 * 4f64.powi(m as i32) / 32.0;
        let expect_old = m as f64 * 4f64.powi(m as i32) / 3.0;
        assert!((new_bound.value - expect_new).abs() <= 1e-9);
        assert!((old_bound.value - expect_old).abs() <= 1e-9);
        assert!(new_bound.value < old_bound.value);
        assert!(new_bound.holds);
    }
    pass(
        "08 (extremal family reproduction)",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_09_boolean_degree_relations() {
    let started = Instant::now();
    let corpus = Corpus {
        spec: DomainSpec::new(2, 4).unwrap(),
        kind: ValueKind::Boolean01,
        mode: CorpusMode::Exhaustive,
    };
    let summary = sweep(&corpus, &[Law::Degrees, Law::Prop3]).unwrap();
    assert_eq!(summary.corpus.functions, 65536);
    for law in &summary.laws {
        assert_eq!(law.violations, 0, "{} violated", law.law);
    }
    // The truth-set report: every function lands in exactly one bucket.
    let prop3 = summary.laws.iter().find(|l| l.law == "prop3").unwrap();
    let holds = prop3.detail["printed_inequality_holds"];
    let fails_le1 = prop3.detail["printed_fails_deg_alg_le_1"];
    let fails_gt1 = prop3.detail["printed_fails_deg_alg_gt_1"];
    assert_eq!(holds + fails_le1 + fails_gt1, 65536);
    // Both failure shapes are realized (the parity function and, e.g., AND).
    assert!(fails_le1 > 0 && fails_gt1 > 0);
    println!(
        "criterion 09 truth set: printed inequality holds {holds}, \
         fails with deg_alg <= 1: {fails_le1}, fails with deg_alg > 1: {fails_gt1}"
    );
    pass(
        "09 (boolean degree relations)",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_10_support_bounds() {
    let started = Instant::now();
    let corpus = Corpus {
        spec: DomainSpec::new(3, 2).unwrap(),
        kind: ValueKind::TwoValuedPm1,
        mode: CorpusMode::Exhaustive,
    };
    let summary = sweep(&corpus, &[Law::Support]).unwrap();
    let law = &summary.laws[0];
    assert_eq!(law.checked, 512);
    assert_eq!(law.violations, 0);
    assert_eq!(law.detail["deg0_le_t"], 512);
    pass("10 (support bounds)", started, Duration::from_secs(60));
}

#[test]
fn criterion_11_determinism() {
    let started = Instant::now();
    let bin = env!("CARGO_BIN_EXE_qspectra");
    let run = |threads: &str| -> Vec<u8> {
        let out = std::process::Command::new(bin)
            .args([
                "verify",
                "--law",
                "spectral_I",
                "--q",
                "3",
                "--n",
                "2",
                "--kind",
                "three",
                "--samples",
                "500",
                "--seed",
                "9",
                "--threads",
                threads,
            ])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    let first = run("1");
    let second = run("1");
    let four = run("4");
    assert_eq!(first, second, "same flags must reproduce byte-identically");
    assert_eq!(first, four, "thread count must not change the summary");

    // Exhaustive sweeps shard internally; those must be thread-stable too.
    let run_ex = |threads: &str| -> Vec<u8> {
        let out = std::process::Command::new(bin)
            .args([
                "verify",
                "--law",
                "theorem1",
                "--q",
                "3",
                "--n",
                "2",
                "--kind",
                "two",
                "--exhaustive",
                "--threads",
                threads,
            ])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run_ex("1"), run_ex("4"));
    pass("11 (determinism)", started, Duration::from_secs(120));
}
