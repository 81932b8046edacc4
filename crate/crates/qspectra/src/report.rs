//! The machine-readable analysis report: one document per analyzed
//! function, produced by the full pipeline
//! parse → transform → degrees → sensitivity → bounds.

use serde::Serialize;

use crate::bounds::{bounds_three_valued, bounds_two_valued, BoundReport};
use crate::degrees::{
    algebraic_degree, degree_profile, moebius, nnf, numerical_degree, DegreeProfile,
};
use crate::domain::{DiscreteFunction, ValueKind, Values};
use crate::error::Result;
use crate::sensitivity::{
    sensitivity_report, spectral_i_three_valued, spectral_i_three_valued_hamming,
    spectral_i_two_valued, EdgeCount,
};
use crate::transform::{forward, parseval_sum, Spectrum};
use crate::util::sig12;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub q: u32,
    pub n: u32,
    pub kind: ValueKind,
    pub points: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumInfo {
    pub normalization: &'static str,
    pub support_size: u64,
    pub parseval_sum: f64,
    /// q^{2n}, stated when every value has unit modulus.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parseval_expected: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BooleanInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebraic_degree: Option<u32>,
    pub numerical_degree: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct SensitivityInfo {
    /// 1-based variable indices, matching the x_1, …, x_n naming.
    pub relevant_variables: Vec<u32>,
    pub t: u32,
    pub mixed_edges_cycle: EdgeCount,
    pub mixed_edges_hamming: EdgeCount,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral_i_cycle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral_i_hamming: Option<f64>,
    /// Whether each spectral value matches the direct count (1e−6, then
    /// rounded to the nearest integer).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral_matches_direct: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundEntryInfo {
    pub name: &'static str,
    pub formula: &'static str,
    pub value: f64,
    pub applicable: bool,
    pub asserted: bool,
    pub holds: bool,
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsInfo {
    pub t_observed: u32,
    pub entries: Vec<BoundEntryInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tightness: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub generator: GeneratorInfo,
    pub input: InputInfo,
    pub spectrum: SpectrumInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<DegreeProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boolean: Option<BooleanInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sensitivity: Option<SensitivityInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsInfo>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn bound_info(report: &BoundReport) -> BoundsInfo {
    let tightness = crate::bounds::tightness(report).ok().map(sig12);
    BoundsInfo {
        t_observed: report.t_observed,
        entries: report
            .entries
            .iter()
            .map(|e| BoundEntryInfo {
                name: e.name,
                formula: e.formula,
                value: sig12(e.value),
                applicable: e.applicable,
                asserted: e.asserted,
                holds: e.holds,
                margin: sig12(e.margin),
            })
            .collect(),
        tightness,
    }
}

fn unimodular(kind: ValueKind) -> bool {
    matches!(kind, ValueKind::TwoValuedPm1 | ValueKind::ThreeValuedOmega)
}

/// Run the whole pipeline on one function.
pub fn analyze(f: &DiscreteFunction) -> Result<AnalysisReport> {
    let spec = f.spec();
    let kind = f.kind();
    let mut notes: Vec<String> = Vec::new();
    let s = forward(f);

    let spectrum = SpectrumInfo {
        normalization: Spectrum::NORMALIZATION,
        support_size: s.support_size() as u64,
        parseval_sum: sig12(parseval_sum(&s)),
        parseval_expected: unimodular(kind)
            .then(|| sig12((spec.size() as f64) * (spec.size() as f64))),
    };

    let degrees = match degree_profile(&s, &[]) {
        Ok(p) => Some(p),
        Err(_) => {
            notes.push("degrees undefined: the function is identically zero".into());
            None
        }
    };

    let boolean =
        if spec.q() == 2 && kind.is_exact() && !matches!(kind, ValueKind::ThreeValuedOmega) {
            let as_bool = match f.values() {
                Values::Bool01(_) => Some(f.clone()),
                Values::Pm1(v) => {
                    let bits: Vec<u8> = v.iter().map(|&x| u8::from(x < 0)).collect();
                    Some(DiscreteFunction::new(spec, Values::Bool01(bits))?)
                }
                _ => None,
            };
            let algebraic = match &as_bool {
                Some(b) => Some(algebraic_degree(&moebius(b)?)),
                None => None,
            };
            Some(BooleanInfo {
                algebraic_degree: algebraic,
                numerical_degree: numerical_degree(&nnf(f)?),
            })
        } else {
            None
        };

    let (sensitivity, bounds) = if kind.is_exact() {
        let rep = sensitivity_report(f)?;
        let (spectral_cycle, spectral_hamming) = match kind {
            ValueKind::TwoValuedPm1 => (Some(spectral_i_two_valued(&s)?), None),
            ValueKind::Boolean01 => {
                // The identity needs ±1 values; evaluate it on the recoding,
                // which has the same mixed edges.
                let sp = forward(&f.to_pm1()?);
                (Some(spectral_i_two_valued(&sp)?), None)
            }
            ValueKind::ThreeValuedOmega => (
                Some(spectral_i_three_valued(&s)?),
                Some(spectral_i_three_valued_hamming(&s)?),
            ),
            _ => (None, None),
        };
        let matches = match (spectral_cycle, spectral_hamming) {
            (None, _) => None,
            (Some(c), h) => {
                let ok_c = (c - rep.i_cycle as f64).abs() <= 1e-6;
                let ok_h = h.is_none_or(|h| (h - rep.i_hamming as f64).abs() <= 1e-6);
                Some(ok_c && ok_h)
            }
        };

        let bound_report = match kind {
            ValueKind::TwoValuedPm1 | ValueKind::Boolean01 => {
                let recode_spec = forward(&f.to_pm1()?);
                match degree_profile(&recode_spec, &[]) {
                    Ok(p) if p.deg0 > 0 => Some(bounds_two_valued(&p, spec.q(), rep.t)),
                    _ => {
                        notes.push("constant function: bounds not applicable".into());
                        Some(BoundReport {
                            t_observed: rep.t,
                            entries: Vec::new(),
                        })
                    }
                }
            }
            ValueKind::ThreeValuedOmega => match degrees.as_ref() {
                Some(p) if p.deg0 > 0 => Some(bounds_three_valued(p, spec.q(), rep.t)),
                _ => {
                    notes.push("constant function: bounds not applicable".into());
                    Some(BoundReport {
                        t_observed: rep.t,
                        entries: Vec::new(),
                    })
                }
            },
            ValueKind::Integer => {
                notes.push("integer-valued input: no bound theory applies".into());
                None
            }
            ValueKind::Complex => None,
        };

        let info = SensitivityInfo {
            relevant_variables: rep.relevant.iter().map(|&i| i as u32 + 1).collect(),
            t: rep.t,
            mixed_edges_cycle: EdgeCount {
                total: rep.i_cycle,
                per_direction: rep.per_direction_cycle.clone(),
            },
            mixed_edges_hamming: EdgeCount {
                total: rep.i_hamming,
                per_direction: rep.per_direction_hamming.clone(),
            },
            spectral_i_cycle: spectral_cycle.map(sig12),
            spectral_i_hamming: spectral_hamming.map(sig12),
            spectral_matches_direct: matches,
        };
        (Some(info), bound_report.as_ref().map(bound_info))
    } else {
        notes.push("complex-valued input: sensitivity and bounds are skipped".into());
        (None, None)
    };

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        generator: GeneratorInfo {
            name: "qspectra",
            version: env!("CARGO_PKG_VERSION"),
        },
        input: InputInfo {
            q: spec.q(),
            n: spec.n(),
            kind,
            points: spec.size() as u64,
        },
        spectrum,
        degrees,
        boolean,
        sensitivity,
        bounds,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DomainSpec;
    use crate::explorer::gen_fm;

    #[test]
    fn fm_report_has_the_expected_shape() {
        let f = gen_fm(4, 2, 3).unwrap();
        let rep = analyze(&f).unwrap();
        let deg = rep.degrees.unwrap();
        assert_eq!((deg.deg0, deg.deg2), (2, 2));
        let sens = rep.sensitivity.unwrap();
        assert_eq!(sens.t, 2);
        assert_eq!(sens.relevant_variables, vec![1, 2]);
        assert_eq!(sens.spectral_matches_direct, Some(true));
        let bounds = rep.bounds.unwrap();
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let d2 = bounds
            .entries
            .iter()
            .find(|e| e.name == "two_valued_deg2")
            .unwrap();
        assert!((d2.value - pi2).abs() < 1e-9);
        assert!(d2.holds);
    }

    #[test]
    fn constant_reports_not_applicable() {
        let spec = DomainSpec::new(3, 2).unwrap();
        let f = DiscreteFunction::new(spec, Values::Bool01(vec![1; 9])).unwrap();
        let rep = analyze(&f).unwrap();
        assert_eq!(rep.sensitivity.unwrap().t, 0);
        assert!(rep.bounds.unwrap().entries.is_empty());
        assert!(rep.notes.iter().any(|n| n.contains("not applicable")));
    }

    #[test]
    fn complex_input_skips_sensitivity() {
        let spec = DomainSpec::new(5, 1).unwrap();
        let f = DiscreteFunction::character(spec, &[2]).unwrap();
        let rep = analyze(&f).unwrap();
        assert!(rep.sensitivity.is_none());
        assert!(rep.bounds.is_none());
        assert_eq!(rep.spectrum.support_size, 1);
    }

    #[test]
    fn report_json_is_stable() {
        let f = gen_fm(4, 1, 2).unwrap();
        let a = serde_json::to_string_pretty(&analyze(&f).unwrap()).unwrap();
        let b = serde_json::to_string_pretty(&analyze(&f).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"schema_version\": 1"));
    }
}
