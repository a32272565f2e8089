//! Adaptive Gauss–Legendre panels on a semi-infinite interval.

use rayon::prelude::*;

use super::NumericsPolicy;
use crate::error::{Error, Result};

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> GaussLegendre {
        assert!(order >= 1, "quadrature order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn mapped_nodes(&self, a: f64, b: f64) -> impl Iterator<Item = f64> + '_ {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        self.nodes.iter().map(move |&t| c + h * t)
    }

    fn apply(&self, a: f64, b: f64, values: &[f64]) -> f64 {
        let h = 0.5 * (b - a);
        h * self
            .weights
            .iter()
            .zip(values)
            .map(|(w, v)| w * v)
            .sum::<f64>()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Panel error estimates plus the tail bound.
    pub err: f64,
    pub panels: usize,
    pub evaluations: usize,
    /// Final upper integration limit.
    pub upper: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    whole: f64,
    left: f64,
    right: f64,
    abs: f64,
}

impl Panel {
    fn value(&self) -> f64 {
        self.left + self.right
    }

    fn err(&self) -> f64 {
        (self.whole - self.value()).abs()
    }
}

/// What to evaluate for one panel: the half-panels always, the full panel
/// only when not inherited from the parent.
struct PanelJob {
    a: f64,
    b: f64,
    whole: Option<f64>,
}

struct Evaluator<'a, F> {
    f: &'a F,
    rule: GaussLegendre,
    evaluations: usize,
}

impl<F> Evaluator<'_, F>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    fn run(&mut self, jobs: &[PanelJob]) -> Result<Vec<Panel>> {
        let q = self.rule.nodes.len();
        let mut xs = Vec::new();
        for job in jobs {
            let mid = 0.5 * (job.a + job.b);
            xs.extend(self.rule.mapped_nodes(job.a, mid));
            xs.extend(self.rule.mapped_nodes(mid, job.b));
            if job.whole.is_none() {
                xs.extend(self.rule.mapped_nodes(job.a, job.b));
            }
        }
        let f = self.f;
        let ys = xs.par_iter().map(|&x| f(x)).collect::<Result<Vec<f64>>>()?;
        self.evaluations += ys.len();
        if let Some(bad) = ys.iter().position(|y| !y.is_finite()) {
            return Err(Error::QuadratureNotConverged {
                panels: 0,
                value: ys[bad],
                err: f64::INFINITY,
            });
        }

        let mut out = Vec::with_capacity(jobs.len());
        let mut at = 0;
        for job in jobs {
            let mid = 0.5 * (job.a + job.b);
            let l = &ys[at..at + q];
            let r = &ys[at + q..at + 2 * q];
            at += 2 * q;
            let whole = match job.whole {
                Some(w) => w,
                None => {
                    let w = self.rule.apply(job.a, job.b, &ys[at..at + q]);
                    at += q;
                    w
                }
            };
            let abs_l: Vec<f64> = l.iter().map(|v| v.abs()).collect();
            let abs_r: Vec<f64> = r.iter().map(|v| v.abs()).collect();
            out.push(Panel {
                a: job.a,
                b: job.b,
                whole,
                left: self.rule.apply(job.a, mid, l),
                right: self.rule.apply(mid, job.b, r),
                abs: self.rule.apply(job.a, mid, &abs_l) + self.rule.apply(mid, job.b, &abs_r),
            });
        }
        Ok(out)
    }
}

/// Most times the upper limit may be doubled to bring the tail bound down.
const MAX_EXTENSIONS: usize = 8;

/// `∫_0^∞ f(β) dβ` for an integrand decaying like `exp(-decay_scale β)`.
///
/// The interval `(0, beta_max_factor / decay_scale]` is covered with
/// geometrically graded panels, each integrated with `quad_order`-point
/// Gauss–Legendre on both halves; the panel error is the difference to the
/// single rule over the whole panel. The worst panel is bisected until the
/// summed error, including a tail bound `2 |f(β_max)| / decay_scale`, meets
/// `rel_tol`. The integrand is never evaluated at `β = 0`.
pub fn integrate<F>(integrand: F, policy: &NumericsPolicy, decay_scale: f64) -> Result<Integral>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    policy.check()?;
    if !(decay_scale > 0.0) || !decay_scale.is_finite() {
        return Err(Error::InvalidPolicy(format!(
            "decay scale must be positive, got {decay_scale}"
        )));
    }
    let mut ev = Evaluator {
        f: &integrand,
        rule: GaussLegendre::new(policy.quad_order),
        evaluations: 0,
    };

    let mut upper = policy.beta_max_factor / decay_scale;
    let mut edges = vec![0.0];
    edges.extend((0..6).rev().map(|k| upper / f64::from(1u32 << k)));
    let jobs: Vec<PanelJob> = edges
        .windows(2)
        .map(|w| PanelJob {
            a: w[0],
            b: w[1],
            whole: None,
        })
        .collect();
    let mut panels = ev.run(&jobs)?;

    let mut extensions = 0;
    let tail_at = |x: f64, ev: &mut Evaluator<'_, F>| -> Result<f64> {
        ev.evaluations += 1;
        Ok(2.0 * integrand(x)?.abs() / decay_scale)
    };
    let mut tail = tail_at(upper, &mut ev)?;

    loop {
        let value: f64 = panels.iter().map(Panel::value).sum();
        let l1: f64 = panels.iter().map(|p| p.abs).sum();
        let target = policy.rel_tol * value.abs();

        if tail > 0.1 * target && tail > 1e-16 * l1 && extensions < MAX_EXTENSIONS {
            let job = PanelJob {
                a: upper,
                b: 2.0 * upper,
                whole: None,
            };
            panels.extend(ev.run(std::slice::from_ref(&job))?);
            upper *= 2.0;
            extensions += 1;
            tail = tail_at(upper, &mut ev)?;
            continue;
        }

        let err: f64 = panels.iter().map(Panel::err).sum::<f64>() + tail;
        if err <= target || err <= 1e-15 * l1 {
            return Ok(Integral {
                value,
                err,
                panels: panels.len(),
                evaluations: ev.evaluations,
                upper,
            });
        }
        if panels.len() >= policy.max_panels {
            return Err(Error::QuadratureNotConverged {
                panels: panels.len(),
                value,
                err,
            });
        }

        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err().total_cmp(&y.1.err()))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let p = panels[worst];
        let mid = 0.5 * (p.a + p.b);
        let children = ev.run(&[
            PanelJob {
                a: p.a,
                b: mid,
                whole: Some(p.left),
            },
            PanelJob {
                a: mid,
                b: p.b,
                whole: Some(p.right),
            },
        ])?;
        panels.splice(worst..=worst, children);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy(rel_tol: f64) -> NumericsPolicy {
        NumericsPolicy {
            rel_tol,
            ..NumericsPolicy::default()
        }
    }

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let rule = GaussLegendre::new(7);
        let s: f64 = rule.weights().iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // exact for degree 13
        let v = rule.apply(
            0.0,
            2.0,
            &rule
                .mapped_nodes(0.0, 2.0)
                .map(|x| x.powi(13))
                .collect::<Vec<_>>(),
        );
        assert!((v - 2f64.powi(14) / 14.0).abs() < 1e-10);
    }

    #[test]
    fn exponential_moments() {
        let r = integrate(|b| Ok(b * (-b).exp()), &policy(1e-12), 1.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "{r:?}");
        let r = integrate(|b| Ok(b.powi(3) * (-2.0 * b).exp()), &policy(1e-12), 2.0).unwrap();
        assert!((r.value - 0.375).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn log_endpoint_behaviour() {
        // ∫ β ln(β) e^{-β} dβ = 1 - γ
        let r = integrate(|b| Ok(b * b.ln() * (-b).exp()), &policy(1e-10), 1.0).unwrap();
        let expected = 1.0 - 0.577_215_664_901_532_9;
        assert!((r.value - expected).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn never_samples_origin() {
        let r = integrate(
            |b| {
                assert!(b > 0.0);
                Ok((-b).exp())
            },
            &policy(1e-10),
            1.0,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn slow_decay_extends_upper_limit() {
        // the stated decay scale is too fast; the tail bound pushes the limit out
        let r = integrate(|b| Ok((-0.2 * b).exp()), &policy(1e-9), 1.0).unwrap();
        assert!(r.upper > 30.0);
        assert!((r.value - 5.0).abs() < 1e-7, "{r:?}");
    }

    #[test]
    fn zero_integrand() {
        let r = integrate(|_| Ok(0.0), &policy(1e-8), 1.0).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn panel_budget_exhaustion() {
        let p = NumericsPolicy {
            max_panels: 7,
            rel_tol: 1e-10,
            ..NumericsPolicy::default()
        };
        let e = integrate(|b| Ok((b * 40.0).sin().abs() * (-b).exp()), &p, 1.0).unwrap_err();
        assert_eq!(e.name(), "QuadratureNotConverged");
    }

    #[test]
    fn integrand_errors_propagate() {
        let e = integrate(
            |_| Err(Error::KernelOverflow { beta: 1.0 }),
            &policy(1e-6),
            1.0,
        )
        .unwrap_err();
        assert_eq!(e.name(), "KernelOverflow");
    }
}
