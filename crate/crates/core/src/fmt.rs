//! Number formatting shared by the CSV and markdown writers.

/// Format with 10 significant digits, trailing zeros trimmed; switches to
/// scientific notation outside `[1e-5, 1e10)`.
pub fn sig10(x: f64) -> String {
    significant(x, 10)
}

pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // round first so that e.g. 9.9999999999 picks the right exponent
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..10).contains(&exp) {
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

/// Fixed six decimal places.
pub fn fixed6(x: f64) -> String {
    format!("{x:.6}")
}

/// GitHub-flavoured markdown table. Pipes inside cells are escaped.
pub fn markdown_table<S: AsRef<str>>(header: &[&str], rows: &[Vec<S>]) -> String {
    let esc = |s: &str| s.replace('|', "\\|");
    let mut out = String::new();
    out.push_str("| ");
    out.push_str(
        &header
            .iter()
            .map(|h| esc(h))
            .collect::<Vec<_>>()
            .join(" | "),
    );
    out.push_str(" |\n|");
    for _ in header {
        out.push_str("---|");
    }
    out.push('\n');
    for row in rows {
        out.push_str("| ");
        out.push_str(
            &row.iter()
                .map(|c| esc(c.as_ref()))
                .collect::<Vec<_>>()
                .join(" | "),
        );
        out.push_str(" |\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_layout() {
        let t = markdown_table(&["a", "b"], &[vec!["1", "x|y"]]);
        assert_eq!(t, "| a | b |\n|---|---|\n| 1 | x\\|y |\n");
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig10(0.0), "0");
        assert_eq!(sig10(1.0), "1");
        assert_eq!(sig10(2.0 / 3.0), "0.6666666667");
        assert_eq!(sig10(221.5712345678), "221.5712346");
        assert_eq!(sig10(-0.125), "-0.125");
        assert_eq!(sig10(1.0e-7), "1e-7");
        assert_eq!(sig10(9.99999999999), "10");
        assert_eq!(fixed6(1.0 / 3.0), "0.333333");
    }
}
