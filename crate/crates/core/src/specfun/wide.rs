//! Floating point numbers with an extended binary exponent.
//!
//! Modified Bessel functions of high order at small argument leave the `f64`
//! range long before the ratios built from them do. `Wide` keeps a normalized
//! `f64` mantissa together with an `i32` power of two so that products and
//! quotients stay exact up to rounding of the mantissa.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `mant * 2^exp2`, with `|mant|` in `[0.5, 1)` unless the value is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wide {
    mant: f64,
    exp2: i32,
}

const EXP_MASK: u64 = 0x7ff << 52;

/// Splits a finite `x` into a mantissa in `[0.5, 1)` and a power of two.
fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let biased = ((bits & EXP_MASK) >> 52) as i32;
    if biased == 0 {
        // subnormal
        let (m, e) = frexp(x * pow2(54));
        return (m, e - 54);
    }
    let m = f64::from_bits((bits & !EXP_MASK) | (1022u64 << 52));
    (m, biased - 1022)
}

/// `2^e` for `e` in the normal exponent range.
fn pow2(e: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// `x * 2^e` without intermediate overflow.
pub(crate) fn ldexp(mut x: f64, mut e: i32) -> f64 {
    while e > 1023 {
        x *= pow2(1023);
        e -= 1023;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1022 {
        x *= pow2(-1022);
        e += 1022;
        if x == 0.0 {
            return x;
        }
    }
    x * pow2(e)
}

impl Wide {
    pub const ZERO: Wide = Wide { mant: 0.0, exp2: 0 };
    pub const ONE: Wide = Wide { mant: 0.5, exp2: 1 };

    /// `x * 2^exp2`.
    pub fn new(x: f64, exp2: i32) -> Wide {
        let (m, e) = frexp(x);
        if m == 0.0 {
            Wide::ZERO
        } else {
            Wide {
                mant: m,
                exp2: e.saturating_add(exp2),
            }
        }
    }

    pub fn from_f64(x: f64) -> Wide {
        Wide::new(x, 0)
    }

    /// Nearest `f64`; saturates to infinity or flushes to zero outside range.
    pub fn to_f64(self) -> f64 {
        ldexp(self.mant, self.exp2)
    }

    pub fn mantissa(self) -> f64 {
        self.mant
    }

    pub fn exponent(self) -> i32 {
        self.exp2
    }

    pub fn is_zero(self) -> bool {
        self.mant == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.mant.is_finite()
    }

    pub fn abs(self) -> Wide {
        Wide {
            mant: self.mant.abs(),
            exp2: self.exp2,
        }
    }

    pub fn signum(self) -> f64 {
        if self.mant == 0.0 {
            0.0
        } else {
            self.mant.signum()
        }
    }

    /// Natural logarithm of the absolute value.
    pub fn ln_abs(self) -> f64 {
        self.mant.abs().ln() + f64::from(self.exp2) * std::f64::consts::LN_2
    }

    pub fn recip(self) -> Wide {
        Wide::new(1.0 / self.mant, -self.exp2)
    }

    /// Square root of a non-negative value.
    pub fn sqrt(self) -> Wide {
        if self.mant == 0.0 {
            return Wide::ZERO;
        }
        if self.exp2 % 2 == 0 {
            Wide::new(self.mant.sqrt(), self.exp2 / 2)
        } else {
            // exp2 odd: move one factor of two into the mantissa
            Wide::new((2.0 * self.mant).sqrt(), (self.exp2 - 1) / 2)
        }
    }

    /// Multiplies by an ordinary float.
    pub fn scale(self, s: f64) -> Wide {
        Wide::new(self.mant * s, self.exp2)
    }
}

impl Mul for Wide {
    type Output = Wide;
    fn mul(self, rhs: Wide) -> Wide {
        Wide::new(self.mant * rhs.mant, self.exp2 + rhs.exp2)
    }
}

impl Div for Wide {
    type Output = Wide;
    fn div(self, rhs: Wide) -> Wide {
        Wide::new(self.mant / rhs.mant, self.exp2 - rhs.exp2)
    }
}

impl Neg for Wide {
    type Output = Wide;
    fn neg(self) -> Wide {
        Wide {
            mant: -self.mant,
            exp2: self.exp2,
        }
    }
}

impl Add for Wide {
    type Output = Wide;
    fn add(self, rhs: Wide) -> Wide {
        if self.mant == 0.0 {
            return rhs;
        }
        if rhs.mant == 0.0 {
            return self;
        }
        let (big, small) = if self.exp2 >= rhs.exp2 {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let shift = big.exp2 - small.exp2;
        if shift > 60 {
            return big;
        }
        Wide::new(big.mant + ldexp(small.mant, -shift), big.exp2)
    }
}

impl Sub for Wide {
    type Output = Wide;
    fn sub(self, rhs: Wide) -> Wide {
        self + (-rhs)
    }
}

impl PartialOrd for Wide {
    fn partial_cmp(&self, other: &Wide) -> Option<Ordering> {
        let (a, b) = (self.signum(), other.signum());
        if a != b {
            return a.partial_cmp(&b);
        }
        if a == 0.0 {
            return Some(Ordering::Equal);
        }
        let mag = match self.exp2.cmp(&other.exp2) {
            Ordering::Equal => self.mant.abs().partial_cmp(&other.mant.abs())?,
            o => o,
        };
        Some(if a > 0.0 { mag } else { mag.reverse() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frexp_roundtrip() {
        for &x in &[1.0, 0.75, 3.0e-310, 1.0e300, -42.5, 5e-324] {
            let (m, e) = frexp(x);
            assert!(m.abs() >= 0.5 && m.abs() < 1.0, "{x}: {m}");
            assert_eq!(ldexp(m, e), x);
        }
    }

    #[test]
    fn arithmetic_beyond_f64_range() {
        let huge = Wide::new(0.75, 5000);
        let tiny = Wide::new(0.5, -5000);
        assert_eq!((huge * tiny).to_f64(), 0.375);
        assert_eq!(huge.to_f64(), f64::INFINITY);
        assert_eq!(tiny.to_f64(), 0.0);
        assert!((huge.ln_abs() - (0.75f64.ln() + 5000.0 * std::f64::consts::LN_2)).abs() < 1e-12);
        let s = Wide::new(0.5, 4001).sqrt();
        assert_eq!(s.exponent(), 2001);
        assert!((s.mantissa() - 0.5).abs() < 1e-16);
        assert!(tiny < huge);
        assert!(-huge < tiny);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = Wide::from_f64(1.5);
        let b = Wide::from_f64(2.25e-5);
        assert_eq!((a + b).to_f64(), 1.5 + 2.25e-5);
        assert_eq!((a + Wide::new(1.0, -200)).to_f64(), 1.5);
    }
}
