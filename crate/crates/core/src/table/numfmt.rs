//! Canonical number formatting shared by tables, charts and answers.
//!
//! Numbers are printed with up to [`MAX_DECIMALS`] decimal places, trailing
//! zeros trimmed and never in scientific notation, so the same value always
//! produces the same text in markdown tables, axis ticks and gold answers.

/// Decimal places kept by the canonical format.
pub const MAX_DECIMALS: usize = 4;

/// Formats a finite number with `decimals` decimal places, trimming
/// trailing zeros and the dangling point. Negative zero collapses to "0".
pub fn format_with(value: f64, decimals: usize) -> String {
    let mut s = format!("{value:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Formats a number under the canonical rule (4 decimal places).
pub fn format_number(value: f64) -> String {
    format_with(value, MAX_DECIMALS)
}

/// Rounds a value onto the canonical grid: the unique number that
/// round-trips through [`format_number`] and [`parse_number`].
pub fn canonical(value: f64) -> f64 {
    parse_number(&format_number(value)).expect("canonical format always parses")
}

/// Attempts to read a numeric cell. Accepts an optional sign, decimals,
/// strict thousands separators ("1,234,567") and one trailing percent
/// sign, which is stripped without rescaling. Returns `None` for anything
/// else, including non-finite results.
pub fn parse_number(raw: &str) -> Option<f64> {
    let s = raw.trim();
    let s = s.strip_suffix('%').map(str::trim_end).unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    let (negative, rest) = match s.as_bytes()[0] {
        b'+' => (false, &s[1..]),
        b'-' => (true, &s[1..]),
        _ => (false, s),
    };
    if rest.is_empty() {
        return None;
    }
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (rest, None),
    };
    let digits = if int_part.contains(',') {
        let groups: Vec<&str> = int_part.split(',').collect();
        let head = groups[0];
        if head.is_empty() || head.len() > 3 || !all_digits(head) {
            return None;
        }
        if groups[1..].iter().any(|g| g.len() != 3 || !all_digits(g)) {
            return None;
        }
        groups.concat()
    } else {
        if !all_digits(int_part) {
            return None;
        }
        int_part.to_string()
    };
    if let Some(f) = frac_part {
        if f.is_empty() || !all_digits(f) {
            return None;
        }
    }
    let text = match frac_part {
        Some(f) => format!("{}.{f}", if digits.is_empty() { "0" } else { &digits }),
        None if digits.is_empty() => return None,
        None => digits,
    };
    let value: f64 = text.parse().ok()?;
    if !value.is_finite() {
        return None;
    }
    let signed = if negative { -value } else { value };
    // collapse -0.0
    Some(if signed == 0.0 { 0.0 } else { signed })
}

fn all_digits(s: &str) -> bool {
    s.bytes().all(|b| b.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(format_number(5.0), "5");
        assert_eq!(format_number(3.14159), "3.1416");
        assert_eq!(format_with(3.14159, 2), "3.14");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(1000000000000.0), "1000000000000");
    }

    #[test]
    fn parses_plain_and_decorated_numbers() {
        assert_eq!(parse_number("1,234"), Some(1234.0));
        assert_eq!(parse_number("-1,234.5"), Some(-1234.5));
        assert_eq!(parse_number("45%"), Some(45.0));
        assert_eq!(parse_number("+0.5"), Some(0.5));
        assert_eq!(parse_number(".5"), Some(0.5));
        assert_eq!(parse_number(" 42 "), Some(42.0));
    }

    #[test]
    fn rejects_non_numbers() {
        for s in ["", "-", "abc", "1,23", "12,34", "1.2.3", "5.", "1 234", "NaN", "inf", "%"] {
            assert_eq!(parse_number(s), None, "should reject {s:?}");
        }
    }

    #[test]
    fn canonical_is_idempotent() {
        for v in [0.0, 1.0, -17.25, 3.14159, 1234.56789, -0.000049] {
            let c = canonical(v);
            assert_eq!(canonical(c), c);
            assert_eq!(parse_number(&format_number(c)), Some(c));
        }
    }
}
