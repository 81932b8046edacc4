//! Command-line interface: `analyze`, `verify`, `gen`, `spectrum`.
//!
//! Exit codes: 0 on success (and zero violations), 1 when `verify` finds a
//! violation, 2 on usage or parse errors.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::domain::{sym_rep, DiscreteFunction, DomainSpec, ValueKind};
use crate::error::{Error, Result};
use crate::explorer::{gen_fm, gen_named, sweep, Corpus, CorpusMode, Law, NamedFamily, ALL_LAWS};
use crate::io::{read_truth_table, write_truth_table};
use crate::report::analyze;
use crate::transform::{forward, SpecData};
use crate::util::sig12;

#[derive(Debug, Parser)]
#[command(
    name = "qspectra",
    version,
    about = "Spectral analysis of discrete functions on Z_q^n"
)]
pub struct Cli {
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true, env = "QSPECTRA_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a truth-table file and print a JSON report.
    Analyze {
        /// Path to a truth-table file.
        input: PathBuf,
    },
    /// Check a law over a corpus of functions; exits 0 iff no violations.
    Verify {
        /// One of: parseval, spectral_I, theorem1, theorem2, theorem3,
        /// proof_steps, support, prop2, prop3, degrees, all.
        #[arg(long)]
        law: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        /// Value kind of the corpus: two (±1), three (omega3) or bool.
        #[arg(long)]
        kind: String,
        /// Sweep every function of the kind.
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Sweep this many random functions instead.
        #[arg(long)]
        samples: Option<u64>,
        /// Seed for random corpora.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a named function family as a truth-table file.
    Gen {
        /// One of: fm, xor_all, jmath, dictator, majority, constant,
        /// character.
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Number of active factors for the fm family.
        #[arg(long)]
        m: Option<u32>,
        /// 1-based variable index for the dictator family.
        #[arg(long)]
        i: Option<u32>,
        /// Value for the constant family.
        #[arg(long)]
        c: Option<i64>,
        /// Comma-separated frequency vector for the character family.
        #[arg(long)]
        z: Option<String>,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the nonzero Fourier-Hadamard coefficients of a file.
    Spectrum { input: PathBuf },
}

fn kind_from_cli(token: &str) -> Result<ValueKind> {
    Ok(match token {
        "two" => ValueKind::TwoValuedPm1,
        "three" => ValueKind::ThreeValuedOmega,
        "bool" => ValueKind::Boolean01,
        other => {
            return Err(Error::InvalidFamily(format!(
                "unknown corpus kind {other}; expected two, three or bool"
            )))
        }
    })
}

fn laws_from_cli(token: &str, kind: ValueKind, q: u32) -> Result<Vec<Law>> {
    if token == "all" {
        let laws: Vec<Law> = ALL_LAWS
            .iter()
            .copied()
            .filter(|l| l.applies_to(kind, q))
            .collect();
        return Ok(laws);
    }
    let law = Law::from_token(token)
        .ok_or_else(|| Error::InvalidFamily(format!("unknown law {token}")))?;
    Ok(vec![law])
}

fn cmd_analyze(input: &PathBuf) -> Result<()> {
    let text = std::fs::read_to_string(input)?;
    let f = read_truth_table(&text)?;
    let report = analyze(&f)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(())
}

fn cmd_verify(
    law: &str,
    q: u32,
    n: u32,
    kind: &str,
    exhaustive: bool,
    samples: Option<u64>,
    seed: u64,
) -> Result<u8> {
    let kind = kind_from_cli(kind)?;
    let spec = DomainSpec::new(q, n)?;
    let mode = match (exhaustive, samples) {
        (true, None) => CorpusMode::Exhaustive,
        (false, Some(count)) => CorpusMode::Random { count, seed },
        _ => {
            return Err(Error::InvalidFamily(
                "pass exactly one of --exhaustive or --samples <K>".into(),
            ))
        }
    };
    let corpus = Corpus { spec, kind, mode };
    let laws = laws_from_cli(law, kind, q)?;
    let summary = sweep(&corpus, &laws)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    );
    Ok(if summary.total_violations() == 0 {
        0
    } else {
        1
    })
}

fn parse_z(z: &str) -> Result<Vec<u32>> {
    z.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidFamily(format!("bad character frequency: {tok}")))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    family: &str,
    q: Option<u32>,
    n: Option<u32>,
    m: Option<u32>,
    i: Option<u32>,
    c: Option<i64>,
    z: Option<&str>,
    output: Option<&PathBuf>,
) -> Result<()> {
    let need = |opt: Option<u32>, what: &str| -> Result<u32> {
        opt.ok_or_else(|| Error::InvalidFamily(format!("{family} requires --{what}")))
    };
    let f: DiscreteFunction = match family {
        "fm" => {
            let q = q.unwrap_or(4);
            gen_fm(q, need(m, "m")?, need(n, "n")?)?
        }
        "xor_all" | "jmath" | "majority" | "dictator" => {
            let q = q.unwrap_or(2);
            let spec = DomainSpec::new(q, need(n, "n")?)?;
            let fam = match family {
                "xor_all" => NamedFamily::XorAll,
                "jmath" => NamedFamily::Jmath,
                "majority" => NamedFamily::Majority,
                _ => {
                    let idx = need(i, "i")?;
                    if idx == 0 {
                        return Err(Error::InvalidFamily("--i is 1-based".into()));
                    }
                    NamedFamily::Dictator(idx as usize - 1)
                }
            };
            gen_named(&fam, spec)?
        }
        "constant" => {
            let spec = DomainSpec::new(need(q, "q")?, need(n, "n")?)?;
            gen_named(
                &NamedFamily::Constant(
                    c.ok_or_else(|| Error::InvalidFamily("constant requires --c".into()))?,
                ),
                spec,
            )?
        }
        "character" => {
            let zv =
                parse_z(z.ok_or_else(|| Error::InvalidFamily("character requires --z".into()))?)?;
            let spec = DomainSpec::new(need(q, "q")?, zv.len() as u32)?;
            gen_named(&NamedFamily::Character(zv), spec)?
        }
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    let text = write_truth_table(&f);
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_spectrum(input: &PathBuf) -> Result<()> {
    let text = std::fs::read_to_string(input)?;
    let f = read_truth_table(&text)?;
    let spec = f.spec();
    let s = forward(&f);
    println!(
        "# spectrum of q={} n={} kind={}; {}",
        spec.q(),
        spec.n(),
        f.kind().token(),
        crate::transform::Spectrum::NORMALIZATION
    );
    if let SpecData::Exact { order, .. } = s.data() {
        println!("# exact values in Z[ξ], ξ = exp(2πi/{order})");
    }
    for z in 0..spec.size() {
        if s.is_zero_at(z) {
            continue;
        }
        let coords = spec.unflatten(z)?;
        let sym: Vec<String> = coords
            .iter()
            .map(|&r| {
                sym_rep(r, spec.q())
                    .expect("residues are in range")
                    .to_string()
            })
            .collect();
        let rendered = match s.data() {
            SpecData::Exact { coeffs, .. } => coeffs[z].to_string(),
            SpecData::Complex { coeffs, .. } => {
                let w = coeffs[z];
                format!(
                    "{}{}{}i",
                    sig12(w.re),
                    if w.im < 0.0 { " - " } else { " + " },
                    sig12(w.im.abs())
                )
            }
        };
        println!("z=({}) W= {}", sym.join(","), rendered);
    }
    Ok(())
}

fn execute(command: &Command) -> Result<u8> {
    match command {
        Command::Analyze { input } => cmd_analyze(input).map(|()| 0),
        Command::Verify {
            law,
            q,
            n,
            kind,
            exhaustive,
            samples,
            seed,
        } => cmd_verify(law, *q, *n, kind, *exhaustive, *samples, *seed),
        Command::Gen {
            family,
            q,
            n,
            m,
            i,
            c,
            z,
            output,
        } => cmd_gen(family, *q, *n, *m, *i, *c, z.as_deref(), output.as_ref()).map(|()| 0),
        Command::Spectrum { input } => cmd_spectrum(input).map(|()| 0),
    }
}

/// Run a parsed command line, returning the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let outcome = match cli.threads {
        Some(t) if t >= 1 => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        },
        _ => execute(&cli.command),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_and_law_parsing() {
        assert_eq!(kind_from_cli("two").unwrap(), ValueKind::TwoValuedPm1);
        assert_eq!(kind_from_cli("three").unwrap(), ValueKind::ThreeValuedOmega);
        assert_eq!(kind_from_cli("bool").unwrap(), ValueKind::Boolean01);
        assert!(kind_from_cli("complex").is_err());

        let laws = laws_from_cli("all", ValueKind::TwoValuedPm1, 3).unwrap();
        assert!(laws.contains(&Law::Theorem1));
        assert!(!laws.contains(&Law::Theorem3));
        assert!(laws_from_cli("nope", ValueKind::TwoValuedPm1, 3).is_err());
    }

    #[test]
    fn z_vectors_parse() {
        assert_eq!(parse_z("1,2").unwrap(), vec![1, 2]);
        assert_eq!(parse_z("0, 3 ,1").unwrap(), vec![0, 3, 1]);
        assert!(parse_z("1,x").is_err());
    }
}
