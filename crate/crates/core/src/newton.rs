//! Numerical search for constant solutions in structure-constant coordinates.
//!
//! Unknowns are the upper-index coordinates `a^μ_r` of `A^μ = a^μ_r t^r`,
//! flattened as `μ·N + r`. The residual has the same layout:
//! `R^ν_l = Σ_μ η_{μμ} [a^μ,[a^μ,a^ν]]_l - λ a^ν_l`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_traits::{FromPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::lie_ymp::{LieBasis, Metric, SolutionCandidate};
use crate::scalar::{rational_to_f64, rationalize, Rational};

/// Arithmetic shared by the exact and the floating-point residual.
trait Ring: Clone + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {}

impl<T> Ring for T where T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T> {}

/// Nonzero structure constants `(r, s, l, c^{rs}_l)`.
type Table<T> = Vec<(usize, usize, usize, T)>;

#[derive(Clone, Debug, PartialEq)]
pub struct CubicSystem {
    basis: LieBasis,
    metric: Metric,
    lambda: Rational,
    exact: Table<Rational>,
    float: Table<f64>,
    lambda_f64: f64,
}

pub fn expand_system(basis: LieBasis, metric: Metric, lambda: Rational) -> CubicSystem {
    let exact = basis.nonzero();
    let float = exact.iter().map(|(r, s, l, c)| (*r, *s, *l, rational_to_f64(c))).collect();
    let lambda_f64 = rational_to_f64(&lambda);
    CubicSystem { basis, metric, lambda, exact, float, lambda_f64 }
}

fn bracket<T: Ring>(table: &Table<T>, n: usize, x: &[T], y: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); n];
    for (r, s, l, c) in table {
        if x[*r].is_zero() || y[*s].is_zero() {
            continue;
        }
        out[*l] = out[*l].clone() + c.clone() * x[*r].clone() * y[*s].clone();
    }
    out
}

/// `B(x,y,z)^ν = Σ_μ η_{μμ} [x^μ,[y^μ,z^ν]]`.
fn trilinear<T: Ring>(table: &Table<T>, metric: &Metric, dim: usize, x: &[T], y: &[T], z: &[T]) -> Vec<T> {
    let n = metric.dim();
    let block = |v: &[T], mu: usize| v[mu * dim..(mu + 1) * dim].to_vec();
    let mut out = vec![T::zero(); n * dim];
    for nu in 0..n {
        let zn = block(z, nu);
        for mu in 0..n {
            let inner = bracket(table, dim, &block(y, mu), &zn);
            let term = bracket(table, dim, &block(x, mu), &inner);
            for (l, t) in term.into_iter().enumerate() {
                let slot = &mut out[nu * dim + l];
                *slot = if metric.sign(mu) > 0 { slot.clone() + t } else { slot.clone() - t };
            }
        }
    }
    out
}

fn residual_generic<T: Ring>(table: &Table<T>, metric: &Metric, dim: usize, lambda: &T, a: &[T]) -> Vec<T> {
    trilinear(table, metric, dim, a, a, a).into_iter().zip(a).map(|(b, x)| b - lambda.clone() * x.clone()).collect()
}

impl CubicSystem {
    pub fn basis(&self) -> &LieBasis {
        &self.basis
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// Number of unknowns and of equations, `nN`.
    pub fn size(&self) -> usize {
        self.metric.dim() * self.basis.dim()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.size() {
            return Err(Error::DimensionMismatch { expected: self.size(), found: len });
        }
        Ok(())
    }

    pub fn residual_exact(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(a.len())?;
        Ok(residual_generic(&self.exact, &self.metric, self.basis.dim(), &self.lambda, a))
    }

    pub fn residual(&self, a: &[f64]) -> Result<Vec<f64>> {
        self.check_len(a.len())?;
        Ok(residual_generic(&self.float, &self.metric, self.basis.dim(), &self.lambda_f64, a))
    }

    /// Residual and its Jacobian; column `j` is `B(e_j,a,a)+B(a,e_j,a)+B(a,a,e_j) - λe_j`.
    pub fn residual_and_jacobian(&self, a: &[f64]) -> Result<(Vec<f64>, DMatrix<f64>)> {
        let r = self.residual(a)?;
        let size = self.size();
        let dim = self.basis.dim();
        let columns: Vec<Vec<f64>> = (0..size)
            .map(|j| {
                let mut h = vec![0.0; size];
                h[j] = 1.0;
                let b1 = trilinear(&self.float, &self.metric, dim, &h, a, a);
                let b2 = trilinear(&self.float, &self.metric, dim, a, &h, a);
                let b3 = trilinear(&self.float, &self.metric, dim, a, a, &h);
                (0..size).map(|i| b1[i] + b2[i] + b3[i] - self.lambda_f64 * h[i]).collect()
            })
            .collect();
        let jac = DMatrix::from_fn(size, size, |i, j| columns[j][i]);
        Ok((r, jac))
    }

    /// Candidate with components `A_μ = η_{μμ} a^μ_r t^r`; needs a realized basis.
    pub fn to_candidate(&self, a: &[Rational]) -> Result<SolutionCandidate<Multivector>> {
        self.check_len(a.len())?;
        let alg =
            self.basis.algebra().ok_or_else(|| Error::InvalidArgument("abstract basis has no realization".into()))?;
        let dim = self.basis.dim();
        let components = (0..self.metric.dim())
            .map(|mu| Ok(self.basis.embed(&a[mu * dim..(mu + 1) * dim])?.scale(&self.metric.sign_scalar(mu))))
            .collect::<Result<Vec<_>>>()?;
        SolutionCandidate::new(alg, self.metric, components, self.lambda.clone())
    }

    /// Upper-index coordinates of a candidate whose components lie in the basis span.
    pub fn coordinates_of(&self, c: &SolutionCandidate<Multivector>) -> Option<Vec<Rational>> {
        if c.metric != self.metric {
            return None;
        }
        let mut out = Vec::with_capacity(self.size());
        for (mu, a) in c.components.iter().enumerate() {
            out.extend(self.basis.coordinates(&a.scale(&self.metric.sign_scalar(mu)))?);
        }
        Some(out)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Initial step fraction in `(0, 1]`; halved until the residual decreases.
    pub damping: f64,
    /// Consecutive non-improving iterations tolerated before giving up.
    pub patience: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { tol: 1e-10, max_iter: 100, damping: 1.0, patience: 5 }
    }
}

/// Exact confirmation of a float solution.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// Continued-fraction snap whose exact residual vanishes.
    Rational(Vec<Rational>),
    /// No nearby rational solution; the float residual bound stands.
    Float,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub solution: Vec<f64>,
    /// `‖R‖` recomputed with exact arithmetic at the returned floats.
    pub residual_norm: f64,
    pub iterations: usize,
    pub restart: usize,
    pub seed: u64,
    pub certificate: Certificate,
}

/// Largest denominator tried when snapping float solutions to rationals.
pub const SNAP_DENOMINATOR: u64 = 1_000_000;

fn min_norm_step(jac: &DMatrix<f64>, r: &[f64]) -> Option<DVector<f64>> {
    let rhs = -DVector::from_column_slice(r);
    let svd = jac.clone().svd(true, true);
    let cutoff = svd.singular_values.max() * 1e-12;
    svd.solve(&rhs, cutoff.max(f64::MIN_POSITIVE)).ok()
}

/// Damped Gauss–Newton with minimum-norm steps; returns the converged point.
pub fn newton_solve(sys: &CubicSystem, a0: &[f64], opts: &NewtonOptions) -> Result<SolveReport> {
    if opts.tol.is_nan() || opts.tol <= 0.0 || opts.damping.is_nan() || opts.damping <= 0.0 || opts.damping > 1.0 {
        return Err(Error::InvalidArgument("need tol > 0 and damping in (0, 1]".into()));
    }
    let mut a = a0.to_vec();
    let (mut r, mut jac) = sys.residual_and_jacobian(&a)?;
    let mut current = norm(&r);
    let mut stalled = 0;
    for iter in 0..=opts.max_iter {
        if current <= opts.tol {
            return Ok(finish(sys, a, iter, 0, 0));
        }
        if iter == opts.max_iter {
            break;
        }
        let Some(step) = min_norm_step(&jac, &r) else {
            return Err(Error::Diverged { iterations: iter, residual: current });
        };
        let mut t = opts.damping;
        let mut accepted = None;
        while t > 1e-10 {
            let trial: Vec<f64> = a.iter().zip(step.iter()).map(|(x, d)| x + t * d).collect();
            let tr = sys.residual(&trial)?;
            let tn = norm(&tr);
            if tn.is_finite() && tn < current {
                accepted = Some((trial, tn));
                break;
            }
            t *= 0.5;
        }
        match accepted {
            Some((trial, tn)) => {
                stalled = if tn > 0.5 * current { stalled + 1 } else { 0 };
                a = trial;
                current = tn;
            }
            None => stalled += 1,
        }
        if stalled > opts.patience || !current.is_finite() {
            return Err(Error::Diverged { iterations: iter + 1, residual: current });
        }
        (r, jac) = sys.residual_and_jacobian(&a)?;
        current = norm(&r);
    }
    Err(Error::NoConvergence { iterations: opts.max_iter, residual: current })
}

fn exact_norm(sys: &CubicSystem, a: &[Rational]) -> f64 {
    let r = sys.residual_exact(a).expect("length checked");
    let sq = r.iter().fold(Rational::zero(), |acc, x| acc + x * x);
    rational_to_f64(&sq).sqrt()
}

fn finish(sys: &CubicSystem, a: Vec<f64>, iterations: usize, restart: usize, seed: u64) -> SolveReport {
    let exact: Vec<Rational> = a.iter().map(|&x| Rational::from_f64(x).expect("finite")).collect();
    let residual_norm = exact_norm(sys, &exact);
    let certificate = certify(sys, &a);
    SolveReport { solution: a, residual_norm, iterations, restart, seed, certificate }
}

/// Snaps each coordinate to a small-denominator rational and checks the exact residual.
pub fn certify(sys: &CubicSystem, a: &[f64]) -> Certificate {
    let snapped: Option<Vec<Rational>> = a.iter().map(|&x| rationalize(x, SNAP_DENOMINATOR)).collect();
    match snapped {
        Some(q) if sys.residual_exact(&q).is_ok_and(|r| r.iter().all(Zero::is_zero)) => Certificate::Rational(q),
        _ => Certificate::Float,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultistartOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Starts are uniform in `[-start_box, start_box]^{nN}`.
    pub start_box: f64,
    pub newton: NewtonOptions,
}

impl Default for MultistartOptions {
    fn default() -> Self {
        MultistartOptions { restarts: 64, seed: 0, start_box: 2.0, newton: NewtonOptions::default() }
    }
}

fn dedup_key(v: &[f64]) -> Vec<i64> {
    v.iter().map(|x| (x * 1e6).round() as i64).collect()
}

/// Independent Newton runs from random starts, seeded `seed ^ index`.
///
/// Output is sorted lexicographically by coordinates and deduplicated by
/// rounding to 6 decimals, so it does not depend on thread scheduling.
/// Deduplication ignores conjugation orbits.
pub fn multistart(sys: &CubicSystem, opts: &MultistartOptions) -> Result<Vec<SolveReport>> {
    if opts.restarts == 0 {
        return Err(Error::InvalidArgument("need at least one restart".into()));
    }
    let size = sys.size();
    let mut found: Vec<SolveReport> = (0..opts.restarts)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ k as u64);
            let start: Vec<f64> = (0..size).map(|_| rng.gen_range(-opts.start_box..=opts.start_box)).collect();
            newton_solve(sys, &start, &opts.newton).ok().map(|mut rep| {
                rep.restart = k;
                rep.seed = opts.seed;
                rep
            })
        })
        .collect();
    found.sort_by(|x, y| {
        let kx = dedup_key(&x.solution);
        let ky = dedup_key(&y.solution);
        kx.cmp(&ky).then(x.restart.cmp(&y.restart))
    });
    found.dedup_by(|later, earlier| dedup_key(&later.solution) == dedup_key(&earlier.solution));
    Ok(found.into_iter().filter(|rep| rep.residual_norm <= opts.newton.tol).collect())
}

/// Lower-index candidate for a float solution, using exact binary values of the floats.
pub fn float_candidate(sys: &CubicSystem, a: &[f64]) -> Result<SolutionCandidate<Multivector>> {
    let exact: Vec<Rational> = a
        .iter()
        .map(|&x| Rational::from_f64(x).ok_or_else(|| Error::InvalidArgument(format!("non-finite coordinate {x}"))))
        .collect::<Result<_>>()?;
    sys.to_candidate(&exact)
}

/// Scales a coordinate vector by a rational factor, matching `λ → κ²λ`.
pub fn scale_coordinates(a: &[Rational], kappa: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * kappa).collect()
}
