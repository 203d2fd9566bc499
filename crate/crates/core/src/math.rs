//! Exact rationals plus the handful of float helpers `core` lacks.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Exact rational used for conformal weights and central charges.
pub type Q = Ratio<i64>;

pub const TAU: f64 = 2.0 * core::f64::consts::PI;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

/// Representative of `x` in `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - x.floor()
}

pub fn is_integer(x: Q) -> bool {
    x.is_integer()
}

pub fn congruent_mod1(a: Q, b: Q) -> bool {
    (a - b).is_integer()
}

pub fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// `exp(2 pi i x)` for exact `x`, reduced mod 1 first so large weights keep
/// full precision.
pub fn phase(x: Q) -> Complex64 {
    let t = TAU * to_f64(frac(x));
    Complex64::new(libm::cos(t), libm::sin(t))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `p/q` text form; integers print without a denominator.
pub fn fmt_q(x: Q) -> alloc::string::String {
    use alloc::format;
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().ok()?;
            let b: i64 = b.trim().parse().ok()?;
            if b == 0 {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => s.parse::<i64>().ok().map(Q::from_integer),
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
