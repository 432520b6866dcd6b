//! Number formatting for reports.
//!
//! Human-readable reports print fixed decimals with ties rounded toward zero
//! (`0.46055 -> 0.4605`, `109.16445 -> 109.1644`), matching the printed
//! reference tables. Structured outputs keep 6 significant digits.

/// Decimals printed in human-readable reports.
pub const REPORT_DECIMALS: usize = 4;

/// Significant digits kept in structured (JSON) outputs.
pub const STRUCTURED_DIGITS: usize = 6;

/// Rounds to `decimals` places, ties toward zero.
///
/// Binary noise below `1e-3` of the last printed unit is discarded first so
/// that decimal ties such as `0.46055` are recognised as ties.
pub fn round_tie_to_zero(x: f64, decimals: usize) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let scale = 10f64.powi(decimals as i32);
    let y = ((x.abs() * scale) * 1e3).round() / 1e3;
    let r = if y.fract() > 0.5 { y.ceil() } else { y.floor() };
    (r / scale).copysign(x)
}

/// Fixed-decimal string using [`round_tie_to_zero`].
pub fn fixed(x: f64, decimals: usize) -> String {
    let r = round_tie_to_zero(x, decimals);
    // avoid "-0.0000"
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.decimals$}")
}

/// Report-precision string.
pub fn report(x: f64) -> String {
    fixed(x, REPORT_DECIMALS)
}

/// Rounds to `digits` significant digits.
pub fn significant(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("scientific format parses")
}

/// Structured-output rounding.
pub fn structured(x: f64) -> f64 {
    significant(x, STRUCTURED_DIGITS)
}
