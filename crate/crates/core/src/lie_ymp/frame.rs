use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::Metric;
use crate::error::{Error, Result};
use crate::scalar::{rational, rational_int, Rational};

/// Exact pseudo-orthogonal frame `y^μ_a`, stored row `μ`, column `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    y: Vec<Vec<Rational>>,
}

impl Frame {
    pub fn identity(n: usize) -> Self {
        let y =
            (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
        Frame { y }
    }

    pub fn from_rows(y: Vec<Vec<Rational>>) -> Result<Self> {
        let n = y.len();
        if let Some(bad) = y.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        Ok(Frame { y })
    }

    pub fn dim(&self) -> usize {
        self.y.len()
    }

    pub fn entry(&self, mu: usize, a: usize) -> &Rational {
        &self.y[mu][a]
    }

    pub fn set(&mut self, mu: usize, a: usize, v: Rational) {
        self.y[mu][a] = v;
    }

    /// Plane transformation in coordinates `(i, j)` parametrized by a rational `t`.
    ///
    /// Same-sign planes get the rotation `c = (1-t²)/(1+t²)`, `s = 2t/(1+t²)`;
    /// mixed planes get the boost `c = (1+t²)/(1-t²)`, `s = 2t/(1-t²)` (`|t| ≠ 1`).
    pub fn plane(metric: &Metric, i: usize, j: usize, t: &Rational) -> Result<Self> {
        let n = metric.dim();
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidArgument(format!("bad plane ({i}, {j}) for dimension {n}")));
        }
        let one = Rational::one();
        let t2 = t * t;
        let mut f = Frame::identity(n);
        if metric.sign(i) == metric.sign(j) {
            let d = &one + &t2;
            let c = (&one - &t2) / &d;
            let s = rational_int(2) * t / &d;
            f.y[i][i] = c.clone();
            f.y[j][j] = c;
            f.y[i][j] = -s.clone();
            f.y[j][i] = s;
        } else {
            let d = &one - &t2;
            if d.is_zero() {
                return Err(Error::InvalidArgument("boost parameter must satisfy |t| != 1".into()));
            }
            let c = (&one + &t2) / &d;
            let s = rational_int(2) * t / &d;
            f.y[i][i] = c.clone();
            f.y[j][j] = c;
            f.y[i][j] = s.clone();
            f.y[j][i] = s;
        }
        Ok(f)
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Frame) -> Frame {
        let n = self.dim();
        let y = (0..n)
            .map(|i| {
                (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &self.y[i][k] * &other.y[k][j])).collect()
            })
            .collect();
        Frame { y }
    }

    /// `y^μ_a y^ν_b η^{ab} = η^{μν}`, exactly.
    pub fn is_pseudo_orthogonal(&self, metric: &Metric) -> bool {
        let n = self.dim();
        if n != metric.dim() {
            return false;
        }
        for mu in 0..n {
            for nu in mu..n {
                let v = (0..n).fold(Rational::zero(), |acc, a| {
                    acc + rational_int(metric.sign(a)) * &self.y[mu][a] * &self.y[nu][a]
                });
                let expected = if mu == nu { rational_int(metric.sign(mu)) } else { Rational::zero() };
                if v != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Product of `steps` random plane transformations with small-denominator parameters.
    pub fn random<R: Rng + ?Sized>(metric: &Metric, rng: &mut R, steps: usize) -> Frame {
        let n = metric.dim();
        let mut f = Frame::identity(n);
        if n < 2 {
            return f;
        }
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let den = rng.gen_range(2..=5i64);
            let num = rng.gen_range(-(den - 1)..=(den - 1));
            let t = rational(num, den);
            debug_assert!(t.abs() < Rational::one());
            f = f.compose(&Frame::plane(metric, i, j, &t).expect("valid plane"));
        }
        f
    }
}
