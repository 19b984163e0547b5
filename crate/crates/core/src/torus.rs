//! Points of the 2-torus, the sawtooth maps `S_α` and their spectral data.
//!
//! The map acts as
//!
//! ```text
//! S_α(x1, x2) = ( <(1+α)<x1> + x2>,  <α<x1> + x2> )
//! S_α⁻¹(x1, x2) = ( <x1 - x2>,  <<x2> - α<x1 - x2>> )
//! ```
//!
//! where `<t>` is the fractional part. For integer α this is the toral automorphism
//! given by the matrix `[[1+α, 1], [α, 1]]` mod 1; otherwise the map jumps across the
//! circle `x1 = 0` (and its inverse across the diagonal).
//!
//! Two evaluation routes exist: [`sawtooth_forward`] / [`sawtooth_inverse`] on
//! [`TorusPoint`] honour the scalar mode (exact when α and the point are rational),
//! and [`forward_xy`] / [`inverse_xy`] are the binary64 kernels used by the sampling
//! experiments.

use std::fmt;

use crate::scalar::{frac_f64, Scalar};

/// A point of `[0,1)²`, the canonical representative of `R²/Z²`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    x1: Scalar,
    x2: Scalar,
}

impl TorusPoint {
    /// Reduces both coordinates mod 1.
    pub fn new(x1: Scalar, x2: Scalar) -> Self {
        TorusPoint {
            x1: x1.frac(),
            x2: x2.frac(),
        }
    }

    pub fn from_f64(x1: f64, x2: f64) -> Self {
        TorusPoint::new(Scalar::float(x1), Scalar::float(x2))
    }

    pub fn from_ratios((p1, q1): (i64, i64), (p2, q2): (i64, i64)) -> Self {
        TorusPoint::new(Scalar::ratio(p1, q1), Scalar::ratio(p2, q2))
    }

    pub fn origin() -> Self {
        TorusPoint::new(Scalar::zero(), Scalar::zero())
    }

    pub fn x1(&self) -> &Scalar {
        &self.x1
    }

    pub fn x2(&self) -> &Scalar {
        &self.x2
    }

    pub fn is_exact(&self) -> bool {
        self.x1.is_exact() && self.x2.is_exact()
    }

    pub fn to_xy(&self) -> [f64; 2] {
        [self.x1.to_f64(), self.x2.to_f64()]
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

/// Wraps a coordinate difference into `[-1/2, 1/2)`.
#[inline]
pub fn wrap_delta(d: f64) -> f64 {
    d - (d + 0.5).floor()
}

/// Toral distance `min_{n ∈ Z²} ‖x - y + n‖`.
pub fn torus_distance(x: &TorusPoint, y: &TorusPoint) -> f64 {
    torus_distance_xy(x.to_xy(), y.to_xy())
}

#[inline]
pub fn torus_distance_xy(x: [f64; 2], y: [f64; 2]) -> f64 {
    let d1 = wrap_delta(x[0] - y[0]);
    let d2 = wrap_delta(x[1] - y[1]);
    d1.hypot(d2)
}

/// Dynamical regime of the matrix `[[1+α, 1], [α, 1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Hyperbolic => "hyperbolic",
            Regime::Elliptic => "elliptic",
            Regime::Parabolic => "parabolic",
        })
    }
}

/// Eigenvalue descriptor for the sawtooth matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Eigenvalues {
    /// A real pair `(λ, 1/λ)` with `|λ| > 1`.
    Real { lambda: f64, lambda_inv: f64 },
    /// Complex conjugate pair on the unit circle, `e^{±iθ}`.
    ComplexConjugate { angle: f64 },
    /// A repeated eigenvalue (`1` for α = 0, `-1` for α = -4).
    Parabolic { value: f64 },
}

/// α together with the derived spectral data of `S_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct SawtoothParams {
    alpha: Scalar,
    alpha_f64: f64,
    lambda: Eigenvalues,
    eta: f64,
    regime: Regime,
}

impl SawtoothParams {
    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha_f64
    }

    pub fn lambda(&self) -> Eigenvalues {
        self.lambda
    }

    /// Largest singular value of the sawtooth matrix.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// True when α is an integer, i.e. the map is a continuous toral automorphism.
    pub fn is_continuous(&self) -> bool {
        self.alpha.is_integer()
    }

    /// Modulus of the dominant eigenvalue (`1` outside the hyperbolic regime).
    pub fn spectral_radius(&self) -> f64 {
        match self.lambda {
            Eigenvalues::Real { lambda, .. } => lambda.abs(),
            _ => 1.0,
        }
    }
}

/// Builds [`SawtoothParams`] for the given α.
pub fn spectral(alpha: Scalar) -> SawtoothParams {
    assert!(alpha.is_finite(), "alpha must be finite");
    let a = alpha.to_f64();
    let trace = a + 2.0;

    // The discriminant (α+2)² - 4 = α(α+4) decides the regime; evaluate its sign
    // exactly when possible.
    let disc_sign = match &alpha {
        Scalar::Exact(_) => {
            let disc = &alpha * (&alpha + Scalar::integer(4));
            if disc.is_zero() {
                0
            } else if disc.is_negative() {
                -1
            } else {
                1
            }
        }
        Scalar::Float(_) => {
            let disc = a * (a + 4.0);
            if disc == 0.0 {
                0
            } else {
                disc.signum() as i32
            }
        }
    };

    let (lambda, regime) = match disc_sign {
        1 => {
            let root = (trace * trace - 4.0).sqrt();
            let lambda = if trace > 0.0 {
                (trace + root) / 2.0
            } else {
                (trace - root) / 2.0
            };
            (
                Eigenvalues::Real {
                    lambda,
                    lambda_inv: 1.0 / lambda,
                },
                Regime::Hyperbolic,
            )
        }
        0 => (
            Eigenvalues::Parabolic { value: trace / 2.0 },
            Regime::Parabolic,
        ),
        _ => (
            Eigenvalues::ComplexConjugate {
                angle: (trace / 2.0).clamp(-1.0, 1.0).acos(),
            },
            Regime::Elliptic,
        ),
    };

    // η² is the larger root of z² - b z + 1 = 0 with b = tr(SᵀS) = 2α² + 2α + 3.
    let b = 2.0 * a * a + 2.0 * a + 3.0;
    let eta_sq = (b + (b * b - 4.0).sqrt()) / 2.0;

    SawtoothParams {
        alpha,
        alpha_f64: a,
        lambda,
        eta: eta_sq.sqrt(),
        regime,
    }
}

/// Forward sawtooth map on a torus point.
pub fn sawtooth_forward(p: &SawtoothParams, x: &TorusPoint) -> TorusPoint {
    let f1 = x.x1.frac();
    let y2 = &p.alpha * &f1 + &x.x2;
    // (1 + α)⟨x1⟩ + x2 = y2 + ⟨x1⟩
    let y1 = &y2 + &f1;
    TorusPoint::new(y1, y2)
}

/// Inverse sawtooth map on a torus point.
pub fn sawtooth_inverse(p: &SawtoothParams, x: &TorusPoint) -> TorusPoint {
    let u = (&x.x1 - &x.x2).frac();
    let y2 = x.x2.frac() - &p.alpha * &u;
    TorusPoint::new(u, y2)
}

/// `|j|`-fold composition of the forward (`j > 0`) or inverse (`j < 0`) map.
pub fn iterate(p: &SawtoothParams, x: &TorusPoint, j: i64) -> TorusPoint {
    let mut y = x.clone();
    for _ in 0..j.unsigned_abs() {
        y = if j > 0 {
            sawtooth_forward(p, &y)
        } else {
            sawtooth_inverse(p, &y)
        };
    }
    y
}

/// Binary64 forward map.
#[inline]
pub fn forward_xy(alpha: f64, x: [f64; 2]) -> [f64; 2] {
    let f1 = frac_f64(x[0]);
    [
        frac_f64((1.0 + alpha) * f1 + x[1]),
        frac_f64(alpha * f1 + x[1]),
    ]
}

/// Binary64 inverse map.
#[inline]
pub fn inverse_xy(alpha: f64, x: [f64; 2]) -> [f64; 2] {
    let u = frac_f64(x[0] - x[1]);
    [u, frac_f64(frac_f64(x[1]) - alpha * u)]
}

#[inline]
pub fn iterate_xy(alpha: f64, mut x: [f64; 2], j: i64) -> [f64; 2] {
    for _ in 0..j.unsigned_abs() {
        x = if j > 0 {
            forward_xy(alpha, x)
        } else {
            inverse_xy(alpha, x)
        };
    }
    x
}

/// Raw matrix action `S_α · v` on a vector of R² (no reduction).
#[inline]
pub fn matrix_apply(alpha: f64, v: [f64; 2]) -> [f64; 2] {
    [(1.0 + alpha) * v[0] + v[1], alpha * v[0] + v[1]]
}

/// Raw inverse matrix action `S_α⁻¹ · v = [[1, -1], [-α, 1+α]] · v`.
#[inline]
pub fn matrix_inverse_apply(alpha: f64, v: [f64; 2]) -> [f64; 2] {
    [v[0] - v[1], -alpha * v[0] + (1.0 + alpha) * v[1]]
}
