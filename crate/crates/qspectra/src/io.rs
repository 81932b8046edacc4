//! The truth-table text format.
//!
//! Line 1: `q <int> n <int> kind <token>` with kind one of `pm1`, `omega3`,
//! `bool01`, `int`, `complex`. Then q^n lines, one value per point in flat
//! order (x_n fastest): `-1`/`1` for pm1, the exponent `0`/`1`/`2` for
//! omega3, `0`/`1` for bool01, a decimal integer for int, and `<re> <im>`
//! for complex. The writer is canonical (LF endings, single spaces), so
//! write ∘ read is byte-identical on canonical files.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::domain::{DiscreteFunction, DomainSpec, ValueKind, Values};
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parse a truth-table document.
pub fn read_truth_table(text: &str) -> Result<DiscreteFunction> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 6 || toks[0] != "q" || toks[2] != "n" || toks[4] != "kind" {
        return Err(parse_err(
            1,
            "expected header `q <int> n <int> kind <token>`",
        ));
    }
    let q: u32 = toks[1]
        .parse()
        .map_err(|_| parse_err(1, format!("bad q: {}", toks[1])))?;
    let n: u32 = toks[3]
        .parse()
        .map_err(|_| parse_err(1, format!("bad n: {}", toks[3])))?;
    let kind = ValueKind::from_token(toks[5])
        .ok_or_else(|| parse_err(1, format!("unknown kind: {}", toks[5])))?;
    let spec = DomainSpec::new(q, n).map_err(|e| parse_err(1, e.to_string()))?;

    let expected = spec.size();
    let mut count = 0usize;
    let mut pm1 = Vec::new();
    let mut omega = Vec::new();
    let mut bits = Vec::new();
    let mut ints = Vec::new();
    let mut cplx = Vec::new();
    for (i, raw) in lines {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if count == expected {
            return Err(parse_err(
                lineno,
                format!("extra value; expected exactly q^n = {expected}"),
            ));
        }
        match kind {
            ValueKind::TwoValuedPm1 => match line {
                "1" => pm1.push(1i8),
                "-1" => pm1.push(-1i8),
                other => {
                    return Err(parse_err(
                        lineno,
                        format!("pm1 value must be -1 or 1, got {other}"),
                    ))
                }
            },
            ValueKind::ThreeValuedOmega => match line {
                "0" => omega.push(0u8),
                "1" => omega.push(1u8),
                "2" => omega.push(2u8),
                other => {
                    return Err(parse_err(
                        lineno,
                        format!("omega3 value must be 0, 1 or 2, got {other}"),
                    ))
                }
            },
            ValueKind::Boolean01 => match line {
                "0" => bits.push(0u8),
                "1" => bits.push(1u8),
                other => {
                    return Err(parse_err(
                        lineno,
                        format!("bool01 value must be 0 or 1, got {other}"),
                    ))
                }
            },
            ValueKind::Integer => match line.parse::<i64>() {
                Ok(v) => ints.push(v),
                Err(_) => return Err(parse_err(lineno, format!("bad integer: {line}"))),
            },
            ValueKind::Complex => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(parse_err(lineno, "complex value must be `<re> <im>`"));
                }
                let re: f64 = parts[0]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad real part: {}", parts[0])))?;
                let im: f64 = parts[1]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad imaginary part: {}", parts[1])))?;
                cplx.push(Complex64::new(re, im));
            }
        }
        count += 1;
    }
    if count != expected {
        return Err(parse_err(
            text.lines().count(),
            format!("found {count} values, expected q^n = {expected}"),
        ));
    }
    let values = match kind {
        ValueKind::TwoValuedPm1 => Values::Pm1(pm1),
        ValueKind::ThreeValuedOmega => Values::Omega3(omega),
        ValueKind::Boolean01 => Values::Bool01(bits),
        ValueKind::Integer => Values::Int(ints),
        ValueKind::Complex => Values::Complex(cplx),
    };
    DiscreteFunction::new(spec, values)
}

/// Render the canonical truth-table document.
pub fn write_truth_table(f: &DiscreteFunction) -> String {
    let spec = f.spec();
    let mut out = String::new();
    writeln!(
        out,
        "q {} n {} kind {}",
        spec.q(),
        spec.n(),
        f.kind().token()
    )
    .unwrap();
    for i in 0..f.len() {
        writeln!(out, "{}", f.value_display(i)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_byte_identical() {
        let spec = DomainSpec::new(3, 2).unwrap();
        let f =
            DiscreteFunction::new(spec, Values::Omega3(vec![0, 1, 2, 2, 1, 0, 0, 0, 1])).unwrap();
        let text = write_truth_table(&f);
        let back = read_truth_table(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(write_truth_table(&back), text);

        let g = DiscreteFunction::new(spec, Values::Complex(vec![Complex64::new(0.5, -1.25); 9]))
            .unwrap();
        let text = write_truth_table(&g);
        assert_eq!(write_truth_table(&read_truth_table(&text).unwrap()), text);
    }

    #[test]
    fn header_and_value_errors_carry_line_numbers() {
        assert!(matches!(
            read_truth_table(""),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_truth_table("q 3 n 2 kind nope\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        let bad_value = "q 2 n 1 kind pm1\n1\n7\n";
        assert!(matches!(
            read_truth_table(bad_value),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn wrong_count_names_the_expected_size() {
        let short = "q 3 n 2 kind bool01\n1\n0\n1\n";
        match read_truth_table(short) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("q^n = 9"), "{msg}"),
            other => panic!("unexpected: {other:?}"),
        }
        let long = format!("q 2 n 1 kind bool01\n{}", "1\n".repeat(3));
        assert!(read_truth_table(&long).is_err());
    }
}
