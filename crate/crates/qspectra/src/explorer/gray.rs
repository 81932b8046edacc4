//! Reflected mixed-radix Gray enumeration of value tables.
//!
//! The sequence over `digits` base-`base` digits visits every word once,
//! consecutive words differing in exactly one digit by ±1. Decoding is
//! closed-form, so a sweep shard can start anywhere without replaying the
//! prefix: decode(start), then diff successive decodes.

/// Digits of the k-th word of the reflected Gray sequence, most significant
/// first, written into `out`.
pub(crate) fn decode_into(mut k: u64, base: u64, out: &mut [u8]) {
    let digits = out.len() as u32;
    let mut block = base.pow(digits.saturating_sub(1));
    for slot in out.iter_mut() {
        let a = k / block;
        k %= block;
        *slot = a as u8;
        if a % 2 == 1 {
            // Odd digit: the inner sequence runs reversed.
            k = block - 1 - k;
        }
        if block > 1 {
            block /= base;
        }
    }
}

pub(crate) fn decode(k: u64, base: u64, digits: usize) -> Vec<u8> {
    let mut out = vec![0u8; digits];
    decode_into(k, base, &mut out);
    out
}

/// Position and new value of the single digit that changes between words
/// k and k+1.
pub(crate) fn step(prev: &[u8], next: &[u8]) -> (usize, u8, u8) {
    for (i, (&a, &b)) in prev.iter().zip(next).enumerate() {
        if a != b {
            debug_assert!(a.abs_diff(b) == 1, "gray step must be ±1");
            debug_assert!(prev[i + 1..] == next[i + 1..]);
            return (i, a, b);
        }
    }
    panic!("consecutive gray words must differ");
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn binary_sequence_is_the_classic_one() {
        let got: Vec<Vec<u8>> = (0..8).map(|k| decode(k, 2, 3)).collect();
        let expect = [
            [0, 0, 0],
            [0, 0, 1],
            [0, 1, 1],
            [0, 1, 0],
            [1, 1, 0],
            [1, 1, 1],
            [1, 0, 1],
            [1, 0, 0],
        ];
        assert_eq!(got, expect);
    }

    #[test]
    fn every_word_once_with_unit_steps() {
        for (base, digits) in [(2u64, 8usize), (3, 5), (4, 4), (5, 3)] {
            let total = base.pow(digits as u32);
            let mut seen = HashSet::new();
            let mut prev = decode(0, base, digits);
            seen.insert(prev.clone());
            for k in 1..total {
                let next = decode(k, base, digits);
                let (_, a, b) = step(&prev, &next);
                assert_eq!(a.abs_diff(b), 1);
                assert!(seen.insert(next.clone()), "repeat at {k}");
                prev = next;
            }
            assert_eq!(seen.len() as u64, total);
        }
    }
}
