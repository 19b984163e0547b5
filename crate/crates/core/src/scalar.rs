//! Dual-mode scalars: arbitrary-precision rationals or binary64 floats.
//!
//! The sawtooth maps are built from floor and fractional-part operations, which
//! are discontinuous. Keeping α and lattice coordinates as exact rationals decides
//! every boundary case correctly; the float mode exists for irrational α.
//!
//! Mixing modes promotes to float. There is deliberately no conversion from a
//! float to an exact value.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn ratio(numer: i64, denom: i64) -> Scalar {
        assert!(denom != 0, "zero denominator");
        Scalar::Exact(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: i64) -> Scalar {
        Scalar::Exact(BigRational::from_integer(n.into()))
    }

    pub fn float(v: f64) -> Scalar {
        Scalar::Float(v)
    }

    pub fn zero() -> Scalar {
        Scalar::integer(0)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Exact(_) => true,
            Scalar::Float(v) => v.is_finite(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(v) => *v,
        }
    }

    /// Numerator and denominator as machine integers, if exact and small enough.
    pub fn as_small_ratio(&self) -> Option<(i64, i64)> {
        match self {
            Scalar::Exact(r) => Some((r.numer().to_i64()?, r.denom().to_i64()?)),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_integer(),
            Scalar::Float(v) => v.fract() == 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Float(v) => *v < 0.0,
        }
    }

    /// Euclidean floor: the largest integer `n` with `t - 1 < n <= t`.
    pub fn efloor(&self) -> BigInt {
        match self {
            Scalar::Exact(r) => r.numer().div_floor(r.denom()),
            Scalar::Float(v) => BigInt::from(
                v.floor()
                    .to_i64()
                    .expect("floor of a non-finite or huge float"),
            ),
        }
    }

    /// Smallest integer `n` with `t <= n < t + 1`.
    pub fn eceil(&self) -> BigInt {
        -(-self).efloor()
    }

    /// Fractional part `t - efloor(t)`, always in `[0, 1)`.
    pub fn frac(&self) -> Scalar {
        match self {
            // The floor remainder shares no factor with the denominator.
            Scalar::Exact(r) => Scalar::Exact(BigRational::new_raw(
                r.numer().mod_floor(r.denom()),
                r.denom().clone(),
            )),
            Scalar::Float(v) => Scalar::Float(frac_f64(*v)),
        }
    }

    /// Distance to the nearest integer.
    pub fn distance_to_integer(&self) -> f64 {
        let f = self.frac().to_f64();
        f.min(1.0 - f)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators or denominators: divide in floating point after scaling.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Euclidean floor of a float, as an integer.
pub fn efloor_f64(t: f64) -> i64 {
    t.floor() as i64
}

/// Fractional part of a float, clamped so the result is never `1.0`.
#[inline]
pub fn frac_f64(t: f64) -> f64 {
    let r = t - t.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Exact(BigRational::from_integer(n))
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// `p/q` or a bare integer parses as exact; anything else as a float.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a number: {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Scalar::Exact(BigRational::new(p, q)));
        }
        if let Ok(n) = s.parse::<BigInt>() {
            return Ok(Scalar::Exact(BigRational::from_integer(n)));
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(bad());
        }
        Ok(Scalar::Float(v))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
