//! Fixed float formatting for reports.
//!
//! Every float written to CSV, JSON, or SVG goes through [`sig12`]: 12
//! significant digits with trailing zeros trimmed, positional notation for
//! exponents in [-4, 12) and scientific otherwise. Fixed formatting is what
//! makes byte-level reproducibility of output files testable.

/// Formats `value` with `digits` significant digits.
pub fn sig(value: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if value == 0.0 {
        return "0".to_string();
    }
    if value.is_nan() {
        return "nan".to_string();
    }
    if value.is_infinite() {
        return if value > 0.0 { "inf" } else { "-inf" }.to_string();
    }

    // `{:.*e}` rounds correctly to `digits` significant digits; the rest is
    // string surgery on its "d.dddde±exp" output.
    let formatted = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp_str) = formatted.split_once('e').expect("exponent present");
    let exponent: i32 = exp_str.parse().expect("numeric exponent");
    let negative = mantissa.starts_with('-');
    let digits_only: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let body = if !(-4..12).contains(&exponent) {
        let trimmed = digits_only.trim_end_matches('0');
        let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
        if trimmed.len() == 1 {
            format!("{}e{}", trimmed, exponent)
        } else {
            format!("{}.{}e{}", &trimmed[..1], &trimmed[1..], exponent)
        }
    } else if exponent >= 0 {
        let point = exponent as usize + 1;
        if point >= digits_only.len() {
            // Fewer significant digits than integer places: pad with zeros.
            format!("{}{}", digits_only, "0".repeat(point - digits_only.len()))
        } else {
            let int_part = &digits_only[..point];
            let frac = digits_only[point..].trim_end_matches('0');
            if frac.is_empty() {
                int_part.to_string()
            } else {
                format!("{int_part}.{frac}")
            }
        }
    } else {
        let zeros = "0".repeat((-exponent - 1) as usize);
        let frac = format!("{zeros}{digits_only}");
        let frac = frac.trim_end_matches('0');
        format!("0.{frac}")
    };

    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// The report-wide standard: 12 significant digits.
pub fn sig12(value: f64) -> String {
    sig(value, 12)
}
