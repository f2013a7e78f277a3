//! Round-trip-safe decimal formatting of `f64` values.

/// Significant digits that make every `f64` round-trip through text.
pub const ROUND_TRIP_DIGITS: usize = 17;

/// Formats `x` with `digits` significant digits.
///
/// Plain decimal notation is used for 1e-5 ≤ |x| < 1e17, scientific
/// notation otherwise; trailing zeros are dropped in both.
pub fn format_number(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs();
    if !(1e-5..1e17).contains(&mag) {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, exp) = s.split_once('e').expect("scientific format has an exponent");
        return format!("{}e{}", trim_fraction(mantissa), exp);
    }
    let exponent = mag.log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    trim_fraction(&format!("{:.*}", decimals, x)).to_string()
}

/// Formats with the default 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format_number(x, ROUND_TRIP_DIGITS)
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(fmt17(-1.0), "-1");
        assert_eq!(fmt17(10.0 * std::f64::consts::PI), "31.415926535897931");
        assert_eq!(fmt17(0.0), "0");
        assert_eq!(format_number(2.5e-7, 6), "2.5e-7");
        assert_eq!(fmt17(1e20), "1e20");
        assert_eq!(format_number(1.0 / 3.0, 4), "0.3333");
        assert_eq!(fmt17(-1.0 / 18.0), "-0.055555555555555552");
    }

    #[test]
    fn round_trip() {
        let mut x = 1.234_567_890_123_456_7e-12;
        for _ in 0..60 {
            for v in [x, -x, 1.0 / x] {
                assert_eq!(fmt17(v).parse::<f64>().unwrap(), v);
            }
            x *= 7.3;
        }
    }
}
