//! A small library of test fields on the torus.
//!
//! Low Fourier modes and a smooth bump cover the continuous case; the sharp sigmoid
//! varies by almost 2 across a band of width ~0.01 around the circle `x1 = 0`, which
//! is where the sawtooth map itself is discontinuous.

use std::f64::consts::PI;

use crate::antiwick::{FieldMeta, ScalarField};
use crate::error::{Error, Result};
use crate::torus::wrap_delta;

/// Width of the transition band of [`sharp_sigmoid`].
pub const SHARP_WIDTH: f64 = 0.01;

fn meta(name: String, continuous: bool, sup: f64) -> FieldMeta {
    FieldMeta {
        name,
        is_continuous: continuous,
        sup_norm_bound: Some(sup),
    }
}

pub fn constant(c: f64) -> ScalarField {
    ScalarField::new(meta(format!("const({c})"), true, c.abs()), move |_| c)
}

/// `sin(2π(k1 x1 + k2 x2))`.
pub fn sin_mode(k1: i32, k2: i32) -> ScalarField {
    let (a, b) = (2.0 * PI * k1 as f64, 2.0 * PI * k2 as f64);
    ScalarField::new(meta(format!("sin({k1},{k2})"), true, 1.0), move |x| {
        (a * x[0] + b * x[1]).sin()
    })
}

/// `cos(2π(k1 x1 + k2 x2))`.
pub fn cos_mode(k1: i32, k2: i32) -> ScalarField {
    let (a, b) = (2.0 * PI * k1 as f64, 2.0 * PI * k2 as f64);
    ScalarField::new(meta(format!("cos({k1},{k2})"), true, 1.0), move |x| {
        (a * x[0] + b * x[1]).cos()
    })
}

/// `sin(2π x1) · sin(2π x2)`.
pub fn sin2d() -> ScalarField {
    ScalarField::new(meta("sin2d".into(), true, 1.0), |x| {
        (2.0 * PI * x[0]).sin() * (2.0 * PI * x[1]).sin()
    })
}

/// Periodic bump `exp(κ(cos 2π(x1-½) + cos 2π(x2-½) - 2))` peaked at the centre.
pub fn bump() -> ScalarField {
    const KAPPA: f64 = 4.0;
    ScalarField::new(meta("bump".into(), true, 1.0), |x| {
        let c = (2.0 * PI * (x[0] - 0.5)).cos() + (2.0 * PI * (x[1] - 0.5)).cos();
        (KAPPA * (c - 2.0)).exp()
    })
}

/// `tanh(u/w) − 2u·tanh(1/(2w))` with `u = x1` taken in `[-½, ½)`.
///
/// The linear correction makes the field periodic in `x1`; the steep part sits on
/// `x1 = 0`.
pub fn sharp_sigmoid() -> ScalarField {
    let w = SHARP_WIDTH;
    let edge = (0.5 / w).tanh();
    ScalarField::new(meta("sharp".into(), true, 2.0), move |x| {
        let u = wrap_delta(x[0]);
        (u / w).tanh() - 2.0 * u * edge
    })
}

/// Indicator of the half-open rectangle `[x_range) × [y_range)`.
pub fn indicator_rect(x_range: [f64; 2], y_range: [f64; 2]) -> ScalarField {
    let name = format!("1[{:?}x{:?}]", x_range, y_range);
    ScalarField::new(meta(name, false, 1.0), move |x| {
        let inside =
            (x_range[0]..x_range[1]).contains(&x[0]) && (y_range[0]..y_range[1]).contains(&x[1]);
        if inside {
            1.0
        } else {
            0.0
        }
    })
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &["one", "sin1", "cos1", "sin11", "sin2d", "bump", "sharp"];

pub fn by_name(name: &str) -> Result<ScalarField> {
    Ok(match name {
        "one" => constant(1.0),
        "sin1" => sin_mode(1, 0),
        "cos1" => cos_mode(1, 0),
        "sin11" => sin_mode(1, 1),
        "sin2d" => sin2d(),
        "bump" => bump(),
        "sharp" => sharp_sigmoid(),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown field {name:?}; expected one of {}",
                NAMES.join(", ")
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sup_bounds_hold_on_grid() {
        for name in NAMES {
            let f = by_name(name).unwrap();
            let bound = f.meta().sup_norm_bound.unwrap();
            for i in 0..200 {
                for k in 0..200 {
                    let v = f.eval([i as f64 / 200.0, k as f64 / 200.0]);
                    assert!(v.abs() <= bound + 1e-12, "{name}");
                }
            }
        }
    }

    #[test]
    fn sharp_is_periodic_and_steep() {
        let f = sharp_sigmoid();
        assert!((f.eval([0.4999999, 0.3]) - f.eval([0.5, 0.3])).abs() < 1e-5);
        assert!(f.eval([0.02, 0.0]) - f.eval([0.98, 0.0]) > 1.8);
        assert_eq!(f.eval([0.0, 0.5]), 0.0);
    }

    #[test]
    fn unknown_name() {
        assert!(by_name("nope").is_err());
    }
}
