/// C-style `%.5e`: six significant digits and a signed, at least two-digit
/// exponent (`1.91000e-01`).
pub fn fmt_sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.5e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf() {
        assert_eq!(fmt_sci(0.191), "1.91000e-01");
        assert_eq!(fmt_sci(4.17), "4.17000e+00");
        assert_eq!(fmt_sci(-38.4), "-3.84000e+01");
        assert_eq!(fmt_sci(0.0), "0.00000e+00");
        assert_eq!(fmt_sci(1.234567e-120), "1.23457e-120");
        assert_eq!(fmt_sci(f64::NAN), "nan");
        assert_eq!(fmt_sci(f64::NEG_INFINITY), "-inf");
    }
}
