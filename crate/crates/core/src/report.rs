//! Shared text formatting for CSV and JSON outputs.

/// Decimal text with `digits` significant digits, `%g` style: plain
/// notation for moderate exponents, scientific otherwise, trailing zeros
/// trimmed.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Twelve significant digits, the precision of every CSV column.
pub fn g12(x: f64) -> String {
    format_sig(x, 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_like_percent_g() {
        assert_eq!(g12(0.0), "0");
        assert_eq!(g12(1.0), "1");
        assert_eq!(g12(0.1), "0.1");
        assert_eq!(g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(g12(-2.5e-7), "-2.5e-7");
        assert_eq!(g12(123456789012345.0), "1.23456789012e14");
        assert_eq!(g12(3.3076504890650856), "3.30765048907");
        assert_eq!(g12(0.0001234), "0.0001234");
        assert_eq!(g12(999999999999.9), "1e12");
    }
}
