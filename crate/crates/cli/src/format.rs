//! Deterministic text formatting of algebra values.

use aholo::multilinear::{ALinearMap, AVector};
use aholo::AlgebraElement;
use num_complex::Complex64;

/// Parts below this fraction of the printed object's size are shown as zero.
/// JSON output is never rounded.
pub const CHOP: f64 = 1e-12;

/// Shortest round-trip decimal, with `-0` printed as `0` and exponent
/// notation outside `[1e-4, 1e15)`.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.is_finite() && (x.abs() < 1e-4 || x.abs() >= 1e15) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn chop(z: Complex64, scale: f64) -> Complex64 {
    let cut = |x: f64| if x.abs() <= CHOP * scale { 0.0 } else { x };
    Complex64::new(cut(z.re), cut(z.im))
}

pub fn complex(z: Complex64) -> String {
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => real(z.re),
        (true, false) => format!("{}i", real(z.im)),
        (false, false) if z.im < 0.0 || z.im.is_sign_negative() => format!("{}-{}i", real(z.re), real(-z.im)),
        (false, false) => format!("{}+{}i", real(z.re), real(z.im)),
    }
}

fn magnitude<'a>(values: impl IntoIterator<Item = &'a AlgebraElement>) -> f64 {
    values
        .into_iter()
        .flat_map(|a| a.components())
        .map(|z| z.re.abs().max(z.im.abs()))
        .fold(0.0, f64::max)
}

/// A scalar for `m = 1`, otherwise `(c_1, .., c_m)`.
fn element_scaled(a: &AlgebraElement, scale: f64) -> String {
    let parts: Vec<String> = a.components().iter().map(|&z| complex(chop(z, scale))).collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join(", "))
    }
}

pub fn vector(v: &AVector) -> String {
    let scale = magnitude(v.entries());
    v.entries().iter().map(|a| element_scaled(a, scale)).collect::<Vec<_>>().join("\n")
}

pub fn matrix(map: &ALinearMap) -> String {
    let scale = magnitude(map.entries());
    (0..map.rows())
        .map(|r| (0..map.cols()).map(|c| element_scaled(map.get(r, c), scale)).collect::<Vec<_>>().join("  "))
        .collect::<Vec<_>>()
        .join("\n")
}

/// `z -> a z + b`, dropping unit scales and zero shifts.
pub fn affine(scale: Complex64, shift: Complex64) -> String {
    let lead = if scale == Complex64::new(1.0, 0.0) {
        "z".to_string()
    } else if scale.re == 0.0 || scale.im == 0.0 {
        format!("{} z", complex(scale))
    } else {
        format!("({}) z", complex(scale))
    };
    let negated = -shift;
    match (shift.re == 0.0, shift.im == 0.0) {
        (true, true) => format!("z -> {lead}"),
        (true, false) if shift.im < 0.0 => format!("z -> {lead} - {}", complex(negated)),
        (false, true) if shift.re < 0.0 => format!("z -> {lead} - {}", complex(negated)),
        (true, false) | (false, true) => format!("z -> {lead} + {}", complex(shift)),
        (false, false) => format!("z -> {lead} + ({})", complex(shift)),
    }
}

pub fn list(values: &[usize]) -> String {
    format!("[{}]", values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))
}
