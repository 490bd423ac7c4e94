/// Formats a real with 17 significant digits in scientific notation.
///
/// Seventeen digits round-trip every `f64`, and the fixed width keeps CSV
/// output byte-stable across runs.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for x in [
            0.0,
            -1.5,
            0.1,
            1.0 / 3.0,
            2.0 / 10001f64.sqrt(),
            1e-300,
            6.02e23,
        ] {
            let s = fmt_real(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_real(0.5), "5.0000000000000000e-1");
    }
}
