//! Small shared helpers.

/// Round to 12 significant digits; reports carry floats in this form so
/// re-runs serialize identically.
pub(crate) fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(11 - magnitude);
    (x * factor).round() / factor
}

#[cfg(test)]
mod tests {
    use super::sig12;

    #[test]
    #[allow(clippy::approx_constant)] // the literal is π rounded to 12 digits
    fn rounding_keeps_twelve_digits() {
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(1.0), 1.0);
        assert_eq!(sig12(std::f64::consts::PI), 3.14159265359);
        assert_eq!(sig12(1234.567890123456), 1234.56789012);
        assert_eq!(sig12(-9.876543210987654e-7), -9.87654321099e-7);
        assert!(sig12(f64::INFINITY).is_infinite());
    }
}
