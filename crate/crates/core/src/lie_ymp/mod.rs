//! Constant solutions of the Yang–Mills–Proca system.
//!
//! For an `x`-independent potential the field equations collapse to the
//! cubic system `[A_μ,[A^μ,A^ν]] = λ A^ν` with `λ = -m²/ρ²`. This module
//! evaluates that system exactly, fits `λ`, applies its symmetries and
//! builds the known solution families.

mod classify;
mod factory;
mod frame;
mod structure;

pub use classify::{classify_n2, classify_n3, N2Class, N3Class};
pub use factory::{
    anticommutation_theta, apply_frame, factory_anticommuting, factory_commuting, factory_extra_n3, factory_grassmann,
    factory_zero_subset, grassmann_pairs, signature_pair_count,
};
pub use frame::Frame;
pub use structure::{structure_constants, LieBasis};

use std::fmt;

use num_traits::{One, Zero};

use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::scalar::{rational_int, rational_to_f64, Rational, Scalar};

/// Diagonal pseudo-Euclidean metric with `p` entries `+1` followed by `q` entries `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Metric {
    pub p: usize,
    pub q: usize,
}

impl Metric {
    pub fn new(p: usize, q: usize) -> Self {
        Metric { p, q }
    }

    pub fn euclidean(n: usize) -> Self {
        Metric { p: n, q: 0 }
    }

    pub fn minkowski() -> Self {
        Metric { p: 1, q: 3 }
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// `η_{μμ}` for a 0-based index.
    pub fn sign(&self, mu: usize) -> i64 {
        assert!(mu < self.dim(), "index {mu} out of range for metric of dimension {}", self.dim());
        if mu < self.p {
            1
        } else {
            -1
        }
    }

    pub fn sign_scalar(&self, mu: usize) -> Scalar {
        Scalar::from_int(self.sign(mu))
    }

    /// `k_μ k^μ` for a covector with rational entries.
    pub fn square(&self, k: &[Rational]) -> Rational {
        k.iter().enumerate().fold(Rational::zero(), |acc, (mu, v)| acc + rational_int(self.sign(mu)) * v * v)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^({},{})", self.p, self.q)
    }
}

/// The sign `θ` in `A_μA_ν + A_νA_μ = 2θη_{μν}·1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theta {
    Plus,
    Minus,
}

impl Theta {
    pub fn sign(self) -> i64 {
        match self {
            Theta::Plus => 1,
            Theta::Minus => -1,
        }
    }

    pub fn from_sign(s: i64) -> Option<Theta> {
        match s {
            1 => Some(Theta::Plus),
            -1 => Some(Theta::Minus),
            _ => None,
        }
    }
}

/// `λ = 4θ(n-1)κ²`, the eigenvalue carried by an anticommuting set of `n` elements.
pub fn anticommuting_lambda(theta: Theta, n: usize, kappa: &Rational) -> Rational {
    rational_int(4 * theta.sign() * (n as i64 - 1)) * kappa * kappa
}

/// A covector `A_μ` of algebra elements together with the constant `λ` it
/// is claimed to solve the cubic system for.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionCandidate<T: AlgebraElement> {
    pub space: T::Space,
    pub metric: Metric,
    /// Lower-index components `A_μ`, `μ = 0..n`.
    pub components: Vec<T>,
    pub lambda: Rational,
    pub theta: Option<Theta>,
    pub kappa: Rational,
}

impl<T: AlgebraElement> SolutionCandidate<T> {
    pub fn new(space: T::Space, metric: Metric, components: Vec<T>, lambda: Rational) -> Result<Self> {
        if components.len() != metric.dim() {
            return Err(Error::DimensionMismatch { expected: metric.dim(), found: components.len() });
        }
        if let Some(bad) = components.iter().find(|a| a.space() != space) {
            return Err(Error::AlgebraMismatch(space.to_string(), bad.space().to_string()));
        }
        Ok(SolutionCandidate { space, metric, components, lambda, theta: None, kappa: Rational::one() })
    }

    pub fn with_meta(mut self, theta: Option<Theta>, kappa: Rational) -> Self {
        self.theta = theta;
        self.kappa = kappa;
        self
    }

    pub fn with_lambda(mut self, lambda: Rational) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn n(&self) -> usize {
        self.metric.dim()
    }

    /// The all-zero candidate.
    pub fn zero(space: T::Space, metric: Metric, lambda: Rational) -> Self {
        let components = vec![T::zero_in(&space); metric.dim()];
        SolutionCandidate { space, metric, components, lambda, theta: None, kappa: Rational::one() }
    }
}

/// `T^ν = Σ_μ η_{μμ} [A_μ,[A_μ,A^ν]]`, the cubic side of the system.
pub fn triple_bracket<T: AlgebraElement>(components: &[T], metric: &Metric) -> Result<Vec<T>> {
    if components.len() != metric.dim() {
        return Err(Error::DimensionMismatch { expected: metric.dim(), found: components.len() });
    }
    let Some(first) = components.first() else {
        return Ok(Vec::new());
    };
    let space = first.space();
    let out = (0..components.len())
        .map(|nu| {
            let upper = components[nu].scaled(&metric.sign_scalar(nu));
            let mut acc = T::zero_in(&space);
            for (mu, a) in components.iter().enumerate() {
                if mu == nu || a.is_zero() {
                    continue;
                }
                let inner = a.commutator(&upper);
                if inner.is_zero() {
                    continue;
                }
                let term = a.commutator(&inner);
                acc = if metric.sign(mu) > 0 { acc.plus(&term) } else { acc.minus(&term) };
            }
            acc
        })
        .collect();
    Ok(out)
}

/// `R^ν = Σ_μ η_{μμ}[A_μ,[A_μ,A^ν]] - λA^ν`, exact.
pub fn ymp_residual<T: AlgebraElement>(c: &SolutionCandidate<T>) -> Result<Vec<T>> {
    let t = triple_bracket(&c.components, &c.metric)?;
    let lambda = Scalar::from_rational(c.lambda.clone());
    Ok(t.into_iter()
        .enumerate()
        .map(|(nu, tv)| {
            let upper = c.components[nu].scaled(&c.metric.sign_scalar(nu));
            tv.minus(&upper.scaled(&lambda))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub ok: bool,
    /// Largest Euclidean norm among the residual components.
    pub max_residual_norm: f64,
    pub exact_zero: bool,
}

/// Checks the residual against `tol`; `tol = 0` demands exact vanishing.
pub fn verify<T: AlgebraElement>(c: &SolutionCandidate<T>, tol: f64) -> Result<VerifyReport> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be non-negative, got {tol}")));
    }
    let r = ymp_residual(c)?;
    let exact_zero = r.iter().all(AlgebraElement::is_zero);
    let max_sq = r.iter().map(AlgebraElement::norm_sq).max().unwrap_or_default();
    let max_residual_norm = rational_to_f64(&max_sq).sqrt();
    let ok = exact_zero || (tol > 0.0 && max_residual_norm <= tol);
    Ok(VerifyReport { ok, max_residual_norm, exact_zero })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaFit {
    pub lambda: Scalar,
    pub residual_norm: f64,
    /// True when `T - λ*A` vanishes exactly.
    pub exact: bool,
}

/// Least-squares eigenvalue `λ* = Σ⟨A^ν,T^ν⟩ / Σ⟨A^ν,A^ν⟩`.
pub fn lambda_fit<T: AlgebraElement>(components: &[T], metric: &Metric) -> Result<LambdaFit> {
    let t = triple_bracket(components, metric)?;
    let upper: Vec<T> = components.iter().enumerate().map(|(nu, a)| a.scaled(&metric.sign_scalar(nu))).collect();
    let mut num = Scalar::zero();
    let mut den = Rational::zero();
    for (a, tv) in upper.iter().zip(&t) {
        num += &a.inner(tv);
        den += a.norm_sq();
    }
    if den.is_zero() {
        return Err(Error::InvalidArgument("cannot fit λ for an all-zero covector".into()));
    }
    let lambda = &num / &Scalar::from_rational(den);
    let mut sq = Rational::zero();
    for (a, tv) in upper.iter().zip(&t) {
        sq += tv.minus(&a.scaled(&lambda)).norm_sq();
    }
    Ok(LambdaFit { lambda, exact: sq.is_zero(), residual_norm: rational_to_f64(&sq).sqrt() })
}

/// `A → κA`, `λ → κ²λ`.
pub fn scale<T: AlgebraElement>(c: &SolutionCandidate<T>, kappa: &Rational) -> Result<SolutionCandidate<T>> {
    if kappa.is_zero() {
        return Err(Error::InvalidArgument("scaling factor must be nonzero".into()));
    }
    let k = Scalar::from_rational(kappa.clone());
    let mut out = c.clone();
    out.components = c.components.iter().map(|a| a.scaled(&k)).collect();
    out.lambda = &c.lambda * kappa * kappa;
    out.kappa = &c.kappa * kappa;
    Ok(out)
}

/// Global transformation `A_μ → S⁻¹A_μS`; `λ` is unchanged.
pub fn conjugate<T: AlgebraElement>(c: &SolutionCandidate<T>, s: &T) -> Result<SolutionCandidate<T>> {
    if s.space() != c.space {
        return Err(Error::AlgebraMismatch(c.space.to_string(), s.space().to_string()));
    }
    let inv = s.inverse()?;
    let mut out = c.clone();
    out.components = c.components.iter().map(|a| inv.times(a).times(s)).collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{Algebra, Blade, Multivector};
    use crate::scalar::rational;

    fn e(alg: Algebra, i: usize) -> Multivector {
        Multivector::generator(alg, i)
    }

    #[test]
    fn euclidean_pair_solves_with_lambda_four() {
        let a = Algebra::real(2, 0);
        let c = SolutionCandidate::new(a, Metric::euclidean(2), vec![e(a, 1), e(a, 2)], rational_int(4)).unwrap();
        assert!(ymp_residual(&c).unwrap().iter().all(|r| r.is_zero()));
        let rep = verify(&c, 0.0).unwrap();
        assert!(rep.ok && rep.exact_zero);
        assert_eq!(rep.max_residual_norm, 0.0);
    }

    #[test]
    fn wrong_lambda_is_rejected() {
        let a = Algebra::real(2, 0);
        let c = SolutionCandidate::new(a, Metric::euclidean(2), vec![e(a, 1), e(a, 2)], rational_int(5)).unwrap();
        let rep = verify(&c, 0.0).unwrap();
        assert!(!rep.ok);
        assert!((rep.max_residual_norm - 1.0).abs() < 1e-15);
        assert!(verify(&c, 2.0).unwrap().ok);
    }

    #[test]
    fn commuting_and_zero_candidates() {
        let a = Algebra::real(2, 0);
        let two = Scalar::from_int(2);
        let c = SolutionCandidate::new(a, Metric::euclidean(2), vec![e(a, 1), e(a, 1).scale(&two)], Rational::zero())
            .unwrap();
        assert!(verify(&c, 0.0).unwrap().ok);
        let z = SolutionCandidate::<Multivector>::zero(a, Metric::new(1, 1), rational_int(7));
        assert!(verify(&z, 0.0).unwrap().ok);
    }

    #[test]
    fn dimension_and_algebra_checks() {
        let a = Algebra::real(2, 0);
        let b = Algebra::real(3, 0);
        assert!(matches!(
            SolutionCandidate::new(a, Metric::euclidean(3), vec![e(a, 1)], Rational::zero()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            SolutionCandidate::new(a, Metric::euclidean(2), vec![e(a, 1), e(b, 1)], Rational::zero()),
            Err(Error::AlgebraMismatch(..))
        ));
    }

    #[test]
    fn lambda_fit_recovers_eigenvalue() {
        let a = Algebra::real(1, 3);
        let gens: Vec<_> = (1..=4).map(|i| e(a, i)).collect();
        let fit = lambda_fit(&gens, &Metric::minkowski()).unwrap();
        assert_eq!(fit.lambda, Scalar::from_int(12));
        assert!(fit.exact);
        assert_eq!(fit.residual_norm, 0.0);
        assert!(lambda_fit(&vec![Multivector::zero(a); 4], &Metric::minkowski()).is_err());

        let b = Algebra::real(2, 0);
        let fit = lambda_fit(&[e(b, 1), e(b, 1)], &Metric::euclidean(2)).unwrap();
        assert!(fit.lambda.is_zero() && fit.exact);

        let e12 = Multivector::basis(b, Blade::from_indices(&[1, 2]));
        let fit = lambda_fit(&[&e(b, 1) + &e12, e(b, 2)], &Metric::euclidean(2)).unwrap();
        assert!(!fit.exact && fit.residual_norm > 0.0);
    }

    #[test]
    fn scaling() {
        let a = Algebra::real(2, 0);
        let c = SolutionCandidate::new(a, Metric::euclidean(2), vec![e(a, 1), e(a, 2)], rational_int(4)).unwrap();
        let s = scale(&c, &rational_int(3)).unwrap();
        assert_eq!(s.lambda, rational_int(36));
        assert!(verify(&s, 0.0).unwrap().ok);
        assert_eq!(scale(&c, &rational_int(1)).unwrap(), c);
        assert_eq!(scale(&c, &rational_int(-1)).unwrap().lambda, rational_int(4));
        assert!(scale(&c, &Rational::zero()).is_err());
        assert_eq!(scale(&c, &rational(1, 2)).unwrap().lambda, rational_int(1));
    }

    #[test]
    fn conjugation_preserves_solutions() {
        let a = Algebra::real(2, 0);
        let c = SolutionCandidate::new(a, Metric::euclidean(2), vec![e(a, 1), e(a, 2)], rational_int(4)).unwrap();
        assert_eq!(conjugate(&c, &Multivector::identity(a)).unwrap(), c);
        let s = &Multivector::identity(a) + &Multivector::basis(a, Blade::from_indices(&[1, 2]));
        let d = conjugate(&c, &s).unwrap();
        assert_ne!(d.components, c.components);
        assert!(verify(&d, 0.0).unwrap().ok);
        let zero_divisor = &Multivector::identity(a) + &e(a, 1);
        assert_eq!(conjugate(&c, &zero_divisor), Err(Error::NotInvertible));
    }
}
