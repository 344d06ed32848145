//! Case analysis of small candidates in `Cl^𝔽(p,q)` with `n = 2, 3`.
//!
//! Only the named families are recognized; everything else is `Unknown`.
//! Each label is re-checked against its defining predicate before returning.

use super::SolutionCandidate;
use crate::clifford::{Blade, Multivector};
use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum N2Class {
    /// `{A_1,A_2} = 0`; `lambda` is the value forced by `(A^μ)² = λη^{μμ}/4`
    /// when both squares agree on it.
    Anticommuting {
        lambda: Option<Scalar>,
    },
    /// `A_1 = μ A_2`.
    Proportional {
        mu: Scalar,
    },
    /// `A_which = 0` (0-based); solves only for `λ = 0`.
    ZeroComponent {
        which: usize,
    },
    Commuting,
    Unknown,
}

#[derive(Clone, Debug, PartialEq)]
pub enum N3Class {
    /// Pairwise anticommuting with `η^{ii}(A^i)² = λ/8` for all `i`.
    Anticommuting {
        lambda: Option<Scalar>,
    },
    /// `A_which = 0` and the other two anticommute with scalar squares.
    ZeroComponentClifford2 {
        which: usize,
    },
    /// All components are multiples of one element.
    Proportional,
    Commuting,
    Unknown,
}

fn check_shape(c: &SolutionCandidate<Multivector>, n: usize) -> Result<()> {
    let alg = c.space;
    if alg.is_degenerate() {
        return Err(Error::DegenerateAlgebra);
    }
    if alg.n() != n || c.n() != n {
        return Err(Error::InvalidArgument(format!(
            "classification needs algebra and metric of dimension {n}, got {} and {}",
            alg.n(),
            c.n()
        )));
    }
    let top = Blade((1u32 << n) - 1);
    let central =
        |a: &Multivector| !a.coefficient(Blade::SCALAR).is_zero() || (n % 2 == 1 && !a.coefficient(top).is_zero());
    if c.components.iter().any(central) {
        return Err(Error::OutsideLieSubalgebra);
    }
    Ok(())
}

/// Scalar value of an element that is a multiple of the identity.
fn as_scalar(a: &Multivector) -> Option<Scalar> {
    a.is_scalar().then(|| a.scalar_part())
}

/// `μ` with `a = μ b`, if it exists (`b ≠ 0`).
fn ratio(a: &Multivector, b: &Multivector) -> Option<Scalar> {
    let (blade, cb) = b.terms().next()?;
    let mu = &a.coefficient(blade) / cb;
    (b.scale(&mu) == *a).then_some(mu)
}

pub fn classify_n2(c: &SolutionCandidate<Multivector>) -> Result<N2Class> {
    check_shape(c, 2)?;
    let (a1, a2) = (&c.components[0], &c.components[1]);
    if let Some(which) = c.components.iter().position(Multivector::is_zero) {
        return Ok(N2Class::ZeroComponent { which });
    }
    let s1 = a1 * a1;
    let s2 = a2 * a2;
    let anti = a1.anticommutator(a2);
    // the three quantities are central in Cl⊛ for n = 2
    debug_assert!(s1.is_scalar() && s2.is_scalar() && anti.is_scalar());

    let mu = match as_scalar(&s2) {
        Some(sq) if !sq.is_zero() => {
            let m = &anti.scalar_part() / &(&sq * &Scalar::from_int(2));
            (a2.scale(&m) == *a1).then_some(m)
        }
        _ => ratio(a1, a2),
    };
    if let Some(mu) = mu {
        return Ok(N2Class::Proportional { mu });
    }
    if anti.is_zero() {
        let implied = |a_sq: &Multivector, mu: usize| {
            as_scalar(a_sq).map(|v| &(&v * &Scalar::from_int(4)) * &c.metric.sign_scalar(mu))
        };
        let lambda = match (implied(&s1, 0), implied(&s2, 1)) {
            (Some(l1), Some(l2)) if l1 == l2 => Some(l1),
            _ => None,
        };
        return Ok(N2Class::Anticommuting { lambda });
    }
    if a1.commutator(a2).is_zero() {
        return Ok(N2Class::Commuting);
    }
    Ok(N2Class::Unknown)
}

pub fn classify_n3(c: &SolutionCandidate<Multivector>) -> Result<N3Class> {
    check_shape(c, 3)?;
    let a = &c.components;
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let zeros: Vec<usize> = (0..3).filter(|&i| a[i].is_zero()).collect();

    if zeros.is_empty() && pairs.iter().all(|&(i, j)| a[i].anticommutator(&a[j]).is_zero()) {
        let vals: Vec<Option<Scalar>> =
            (0..3).map(|i| as_scalar(&(&a[i] * &a[i])).map(|v| &v * &c.metric.sign_scalar(i))).collect();
        let lambda = match (&vals[0], &vals[1], &vals[2]) {
            (Some(x), Some(y), Some(z)) if x == y && y == z => Some(x * &Scalar::from_int(8)),
            _ => None,
        };
        return Ok(N3Class::Anticommuting { lambda });
    }
    if zeros.len() == 1 {
        let which = zeros[0];
        let rest: Vec<&Multivector> = (0..3).filter(|&i| i != which).map(|i| &a[i]).collect();
        let squares_scalar = rest.iter().all(|x| {
            let sq = *x * *x;
            sq.is_scalar() && !sq.is_zero()
        });
        if squares_scalar && rest[0].anticommutator(rest[1]).is_zero() {
            return Ok(N3Class::ZeroComponentClifford2 { which });
        }
    }
    let nonzero: Vec<&Multivector> = a.iter().filter(|x| !x.is_zero()).collect();
    if nonzero.len() >= 2 && nonzero.iter().all(|x| ratio(x, nonzero[0]).is_some()) {
        return Ok(N3Class::Proportional);
    }
    if pairs.iter().all(|&(i, j)| a[i].commutator(&a[j]).is_zero()) {
        return Ok(N3Class::Commuting);
    }
    Ok(N3Class::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Algebra;
    use crate::lie_ymp::{factory_anticommuting, Metric, Theta};
    use crate::scalar::{rational_int, Rational};

    fn cand(alg: Algebra, metric: Metric, comps: Vec<Multivector>) -> SolutionCandidate<Multivector> {
        SolutionCandidate::new(alg, metric, comps, Rational::default()).unwrap()
    }

    #[test]
    fn n2_cases() {
        let alg = Algebra::real(2, 0);
        let m = Metric::euclidean(2);
        let e1 = Multivector::generator(alg, 1);
        let e2 = Multivector::generator(alg, 2);
        assert_eq!(
            classify_n2(&cand(alg, m, vec![e1.clone(), e2.clone()])).unwrap(),
            N2Class::Anticommuting { lambda: Some(Scalar::from_int(4)) }
        );
        assert_eq!(
            classify_n2(&cand(alg, m, vec![e1.clone(), e1.scale(&Scalar::from_int(3))])).unwrap(),
            N2Class::Proportional { mu: Scalar::from_ratio(1, 3) }
        );
        assert_eq!(
            classify_n2(&cand(alg, m, vec![e1.clone(), Multivector::zero(alg)])).unwrap(),
            N2Class::ZeroComponent { which: 1 }
        );
        let with_scalar = &e1 + &Multivector::identity(alg);
        assert_eq!(classify_n2(&cand(alg, m, vec![with_scalar, e2.clone()])), Err(Error::OutsideLieSubalgebra));
        // e1 and e1 + e12: neither proportional nor (anti)commuting
        let e12 = &e1 * &e2;
        assert_eq!(classify_n2(&cand(alg, m, vec![e1.clone(), &e1 + &e12])).unwrap(), N2Class::Unknown);
    }

    #[test]
    fn n2_anticommuting_scaled_factory() {
        let c = factory_anticommuting(Algebra::real(1, 1), Metric::new(1, 1), Theta::Plus, &rational_int(2)).unwrap();
        assert_eq!(
            classify_n2(&c).unwrap(),
            N2Class::Anticommuting { lambda: Some(Scalar::from_rational(c.lambda.clone())) }
        );
    }

    #[test]
    fn n3_cases() {
        let alg = Algebra::real(3, 0);
        let m = Metric::euclidean(3);
        let e = |i| Multivector::generator(alg, i);
        assert_eq!(
            classify_n3(&cand(alg, m, vec![e(1), e(2), e(3)])).unwrap(),
            N3Class::Anticommuting { lambda: Some(Scalar::from_int(8)) }
        );
        assert_eq!(
            classify_n3(&cand(alg, m, vec![Multivector::zero(alg), e(2), e(3)])).unwrap(),
            N3Class::ZeroComponentClifford2 { which: 0 }
        );
        assert_eq!(
            classify_n3(&cand(alg, m, vec![e(1), e(1).scale(&Scalar::from_int(-2)), Multivector::zero(alg)])).unwrap(),
            N3Class::Proportional
        );
        let e23 = &e(2) * &e(3);
        assert_eq!(classify_n3(&cand(alg, m, vec![e(1), e23.clone(), &e(1) + &e23])).unwrap(), N3Class::Commuting);
        let top = &e(1) * &e23;
        assert_eq!(classify_n3(&cand(alg, m, vec![top, e(2), e(3)])), Err(Error::OutsideLieSubalgebra));
    }
}
