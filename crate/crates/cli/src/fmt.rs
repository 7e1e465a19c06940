//! Locale-free number formatting with 9 significant digits.

/// `x` rounded to 9 significant digits (used before JSON serialisation).
pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

/// Shortest decimal rendering of [`sig9`]`(x)`, never in exponent form.
pub fn num(x: f64) -> String {
    format!("{}", sig9(x))
}

/// [`num`] for optional values; `None` becomes an empty cell.
pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}
