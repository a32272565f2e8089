//! Modified Bessel functions of integer order.
//!
//! All values are exponentially scaled: `e^{-x} I_n(x)` and `e^{x} K_n(x)`.
//! For a single argument the whole ladder of orders `0..=n` is produced in one
//! pass:
//!
//! * `K_0`, `K_1` from Temme's series (`x < 2`) or Steed's continued
//!   fraction (`x >= 2`), then upward recurrence in the order, which is
//!   stable for `K`.
//! * `I_{n+1}/I_n` at the top order from the continued fraction for the
//!   ratio, normalised with the Wronskian `I_n K_{n+1} + I_{n+1} K_n = 1/x`,
//!   then downward recurrence, which is stable for `I`.
//!
//! Values are carried as [`Wide`] numbers, so high orders at small argument
//! neither overflow (`K`) nor underflow (`I`).

mod wide;

pub use wide::Wide;

use crate::error::{Error, Result};

/// Largest order accepted by the public entry points.
pub const MAX_ORDER: u64 = 200_000;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Rescaling threshold used inside the recurrences.
const RESCALE_EXP: i32 = 600;

fn check_argument(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(x))
    }
}

fn fold_order(n: i64) -> Result<usize> {
    let m = n.unsigned_abs();
    if m > MAX_ORDER {
        return Err(Error::OrderTooLarge(m));
    }
    Ok(m as usize)
}

/// Scaled `(e^x K_0(x), e^x K_1(x))` for `x > 0`.
fn k01_scaled(x: f64) -> (f64, f64) {
    const EPS: f64 = 1.0e-17;
    if x < 2.0 {
        let half = 0.5 * x;
        let d = -half.ln();
        let x2 = half * half;
        let mut ff = d - EULER_GAMMA;
        let mut sum = ff;
        let mut p = 0.5;
        let mut q = 0.5;
        let mut c = 1.0;
        let mut sum1 = p;
        for i in 1..1000 {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi);
            c *= x2 / fi;
            p /= fi;
            q /= fi;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        let e = x.exp();
        (sum * e, sum1 * (2.0 / x) * e)
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..100_000 {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        h *= a1;
        let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() / s;
        let k1 = k0 * (x + 0.5 - h) / x;
        (k0, k1)
    }
}

/// `I_{nu+1}(x) / I_nu(x)` by the modified Lentz method.
fn i_ratio(nu: usize, x: f64) -> f64 {
    const TINY: f64 = 1.0e-300;
    let mut f = TINY;
    let mut c = f;
    let mut d = 0.0;
    let max_iter = 10_000 + (20.0 * x) as usize;
    for k in 1..=max_iter {
        let b = 2.0 * (nu + k) as f64 / x;
        d += b;
        if d == 0.0 {
            d = TINY;
        }
        d = 1.0 / d;
        c = b + 1.0 / c;
        if c == 0.0 {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() <= f64::EPSILON {
            break;
        }
    }
    f
}

/// Scaled `I_n(x)` and `K_n(x)` for every order `0..=max_order` at one
/// argument.
#[derive(Debug, Clone)]
pub struct BesselLadder {
    x: f64,
    i: Vec<Wide>,
    k: Vec<Wide>,
}

impl BesselLadder {
    /// Evaluates the ladder. Derivatives are available up to `max_order`
    /// as well (one extra order is computed internally).
    pub fn new(x: f64, max_order: usize) -> Result<Self> {
        check_argument(x)?;
        if max_order as u64 > MAX_ORDER {
            return Err(Error::OrderTooLarge(max_order as u64));
        }
        let top = max_order + 1;

        let (k0, k1) = k01_scaled(x);
        let mut k = Vec::with_capacity(top + 2);
        k.push(Wide::from_f64(k0));
        k.push(Wide::from_f64(k1));
        let (mut prev, mut cur, mut e) = (k0, k1, 0i32);
        for n in 1..=top {
            let next = prev + (2.0 * n as f64 / x) * cur;
            prev = cur;
            cur = next;
            if cur.abs() > wide::ldexp(1.0, RESCALE_EXP) {
                prev = wide::ldexp(prev, -RESCALE_EXP);
                cur = wide::ldexp(cur, -RESCALE_EXP);
                e += RESCALE_EXP;
            }
            k.push(Wide::new(cur, e));
        }

        let r = i_ratio(top, x);
        let denom = (k[top + 1] + k[top].scale(r)).scale(x);
        let i_top = denom.recip();
        let mut i = vec![Wide::ZERO; top + 1];
        i[top] = i_top;
        let e = i_top.exponent();
        let mut cur = i_top.mantissa();
        let mut up = r * cur;
        let mut e = e;
        for n in (1..=top).rev() {
            let next = up + (2.0 * n as f64 / x) * cur;
            up = cur;
            cur = next;
            if cur.abs() > wide::ldexp(1.0, RESCALE_EXP) {
                up = wide::ldexp(up, -RESCALE_EXP);
                cur = wide::ldexp(cur, -RESCALE_EXP);
                e += RESCALE_EXP;
            }
            i[n - 1] = Wide::new(cur, e);
        }
        k.truncate(top + 1);
        Ok(BesselLadder { x, i, k })
    }

    pub fn argument(&self) -> f64 {
        self.x
    }

    /// Highest order for which derivatives are available.
    pub fn max_order(&self) -> usize {
        self.i.len() - 2
    }

    /// `e^{-x} I_|n|(x)`.
    pub fn i(&self, n: i64) -> Wide {
        self.i[n.unsigned_abs() as usize]
    }

    /// `e^{x} K_|n|(x)`.
    pub fn k(&self, n: i64) -> Wide {
        self.k[n.unsigned_abs() as usize]
    }

    /// `e^{-x} I'_n(x) = e^{-x} (I_{n-1} + I_{n+1}) / 2`.
    pub fn i_prime(&self, n: i64) -> Wide {
        let m = n.unsigned_abs() as i64;
        if m == 0 {
            self.i(1)
        } else {
            (self.i(m - 1) + self.i(m + 1)).scale(0.5)
        }
    }

    /// `e^{x} K'_n(x) = -e^{x} (K_{n-1} + K_{n+1}) / 2`; always negative.
    pub fn k_prime(&self, n: i64) -> Wide {
        let m = n.unsigned_abs() as i64;
        if m == 0 {
            -self.k(1)
        } else {
            -(self.k(m - 1) + self.k(m + 1)).scale(0.5)
        }
    }
}

/// Scaled pair `e^{-x} I_n(x)`, `e^{x} K_n(x)` at a single order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledBessel {
    order: u32,
    argument: f64,
    i: Wide,
    k: Wide,
}

impl ScaledBessel {
    /// Negative orders fold onto `|n|`.
    pub fn new(n: i64, x: f64) -> Result<Self> {
        check_argument(x)?;
        let m = fold_order(n)?;
        let ladder = BesselLadder::new(x, m)?;
        Ok(ScaledBessel {
            order: m as u32,
            argument: x,
            i: ladder.i(m as i64),
            k: ladder.k(m as i64),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    pub fn i_scaled(&self) -> f64 {
        self.i.to_f64()
    }

    pub fn k_scaled(&self) -> f64 {
        self.k.to_f64()
    }

    pub fn i_wide(&self) -> Wide {
        self.i
    }

    pub fn k_wide(&self) -> Wide {
        self.k
    }

    /// `I_n(x) K_n(x)`; the exponential factors cancel so this is always
    /// representable.
    pub fn ik_product(&self) -> f64 {
        (self.i * self.k).to_f64()
    }
}

fn ladder_for(n: i64, x: f64) -> Result<(BesselLadder, i64)> {
    check_argument(x)?;
    let m = fold_order(n)?;
    Ok((BesselLadder::new(x, m)?, m as i64))
}

/// `e^{-x} I_n(x)`.
pub fn bessel_i_scaled(n: i64, x: f64) -> Result<f64> {
    let (l, m) = ladder_for(n, x)?;
    Ok(l.i(m).to_f64())
}

/// `e^{x} K_n(x)`.
pub fn bessel_k_scaled(n: i64, x: f64) -> Result<f64> {
    let (l, m) = ladder_for(n, x)?;
    Ok(l.k(m).to_f64())
}

/// `e^{-x} I'_n(x)`.
pub fn bessel_i_prime_scaled(n: i64, x: f64) -> Result<f64> {
    let (l, m) = ladder_for(n, x)?;
    Ok(l.i_prime(m).to_f64())
}

/// `e^{x} K'_n(x)`.
pub fn bessel_k_prime_scaled(n: i64, x: f64) -> Result<f64> {
    let (l, m) = ladder_for(n, x)?;
    Ok(l.k_prime(m).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent power series for `I_n(x)`, unscaled.
    fn i_series(n: u32, x: f64) -> f64 {
        let h = 0.5 * x;
        let mut term = h.powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
        let mut sum = term;
        for k in 1..200 {
            term *= h * h / (k as f64 * (k + n) as f64);
            sum += term;
            if term < sum * 1e-18 {
                break;
            }
        }
        sum
    }

    /// `e^x K_n(x) = ∫_0^∞ exp(-x (cosh t - 1)) cosh(n t) dt` by the
    /// trapezoidal rule, which converges geometrically for this integrand.
    fn k_integral(n: u32, x: f64) -> f64 {
        let h: f64 = 0.01;
        let mut sum = 0.5;
        let mut t = h;
        loop {
            let v = (-x * (t.cosh() - 1.0)).exp() * (n as f64 * t).cosh();
            sum += v;
            if v < 1e-20 * sum {
                break;
            }
            t += h;
        }
        sum * h
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn i0_at_one_matches_series() {
        let v = bessel_i_scaled(0, 1.0).unwrap();
        let oracle = i_series(0, 1.0) * (-1.0f64).exp();
        assert!(rel(v, oracle) < 1e-14, "{v} vs {oracle}");
        assert!((v - 0.465_759_607_593_640_6).abs() < 1e-13);
    }

    #[test]
    fn k0_at_one_matches_integral() {
        let v = bessel_k_scaled(0, 1.0).unwrap();
        let oracle = k_integral(0, 1.0);
        assert!(rel(v, oracle) < 1e-13, "{v} vs {oracle}");
        assert!((v - 1.144_463_079_806_895).abs() < 1e-12);
    }

    #[test]
    fn i_against_series_grid() {
        for n in [0u32, 1, 2, 5, 13, 40] {
            for x in [1e-3, 0.3, 1.0, 1.999, 2.0, 7.5, 25.0, 60.0] {
                let v = bessel_i_scaled(n as i64, x).unwrap();
                let oracle = i_series(n, x) * (-x).exp();
                assert!(rel(v, oracle) < 1e-13, "n={n} x={x}: {v} vs {oracle}");
            }
        }
    }

    #[test]
    fn k_against_integral_grid() {
        for n in [0u32, 1, 2, 3, 7, 20] {
            for x in [0.05, 0.5, 1.5, 1.999, 2.0, 2.001, 4.0, 30.0, 400.0] {
                let v = bessel_k_scaled(n as i64, x).unwrap();
                let oracle = k_integral(n, x);
                assert!(rel(v, oracle) < 1e-13, "n={n} x={x}: {v} vs {oracle}");
            }
        }
    }

    #[test]
    fn negative_orders_fold_exactly() {
        for x in [0.01, 1.0, 17.0] {
            assert_eq!(
                bessel_i_scaled(-3, x).unwrap(),
                bessel_i_scaled(3, x).unwrap()
            );
            assert_eq!(
                bessel_k_scaled(-2, x).unwrap(),
                bessel_k_scaled(2, x).unwrap()
            );
            assert_eq!(
                bessel_k_prime_scaled(-4, x).unwrap(),
                bessel_k_prime_scaled(4, x).unwrap()
            );
        }
    }

    #[test]
    fn small_argument_limit_of_i1() {
        let v = bessel_i_scaled(1, 1e-6).unwrap();
        assert!(rel(v, 0.5e-6) < 1e-6);
    }

    #[test]
    fn wronskian_at_one() {
        let i0 = bessel_i_scaled(0, 1.0).unwrap();
        let i1 = bessel_i_scaled(1, 1.0).unwrap();
        let k0 = bessel_k_scaled(0, 1.0).unwrap();
        let k1 = bessel_k_scaled(1, 1.0).unwrap();
        assert!((i0 * k1 + i1 * k0 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_identities() {
        for x in [0.2, 3.0, 50.0] {
            // different ladder lengths, so equal only to rounding
            let ip0 = bessel_i_prime_scaled(0, x).unwrap();
            assert!(rel(ip0, bessel_i_scaled(1, x).unwrap()) < 1e-15);
            let kp0 = bessel_k_prime_scaled(0, x).unwrap();
            assert!(rel(kp0, -bessel_k_scaled(1, x).unwrap()) < 1e-15);
        }
        let ip = bessel_i_prime_scaled(1, 2.0).unwrap();
        let oracle = 0.5 * (i_series(0, 2.0) + i_series(2, 2.0)) * (-2.0f64).exp();
        assert!(rel(ip, oracle) < 1e-13);

        let kp = bessel_k_prime_scaled(2, 1.5).unwrap();
        let oracle = -0.5 * (k_integral(1, 1.5) + k_integral(3, 1.5));
        assert!(rel(kp, oracle) < 1e-13);
    }

    #[test]
    fn i_prime_matches_finite_difference() {
        let (x, h) = (3.0, 1e-5);
        let unscaled = |x: f64| bessel_i_scaled(2, x).unwrap() * x.exp();
        let fd = (unscaled(x + h) - unscaled(x - h)) / (2.0 * h);
        let exact = bessel_i_prime_scaled(2, x).unwrap() * x.exp();
        assert!(rel(fd, exact) < 1e-8, "{fd} vs {exact}");
    }

    #[test]
    fn k_prime_is_negative() {
        for n in [0, 1, 5, 300] {
            for x in [1e-4, 0.5, 9.0, 2000.0] {
                assert!(bessel_k_prime_scaled(n, x).unwrap() < 0.0);
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert_eq!(bessel_i_scaled(0, 0.0), Err(Error::Domain(0.0)));
        assert!(bessel_k_scaled(0, -1.0).is_err());
        assert!(bessel_k_scaled(0, f64::NAN).is_err());
        assert!(bessel_k_scaled(0, f64::INFINITY).is_err());
        assert!(matches!(
            bessel_i_scaled(1 << 40, 1.0),
            Err(Error::OrderTooLarge(_))
        ));
    }

    #[test]
    fn ladder_agrees_with_single_order_calls() {
        let l = BesselLadder::new(4.2, 30).unwrap();
        for n in 0..=30 {
            let single = ScaledBessel::new(n, 4.2).unwrap();
            assert!(rel(l.i(n).to_f64(), single.i_scaled()) < 1e-14);
            assert!(rel(l.k(n).to_f64(), single.k_scaled()) < 1e-14);
        }
    }

    #[test]
    fn extreme_products_are_representable() {
        let s = ScaledBessel::new(2000, 1e-6).unwrap();
        assert_eq!(s.i_scaled(), 0.0);
        assert!(s.k_scaled().is_infinite());
        let p = s.ik_product();
        assert!(rel(p, 1.0 / 4000.0) < 1e-6, "{p}");
    }
}
