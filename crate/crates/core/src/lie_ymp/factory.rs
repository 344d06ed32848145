use num_traits::Zero;

use super::{anticommuting_lambda, Frame, Metric, SolutionCandidate, Theta};
use crate::clifford::{Algebra, Multivector};
use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Returns `θ` if `A_μA_ν + A_νA_μ = 2θη_{μν}·1` holds for every pair.
pub fn anticommutation_theta<T: AlgebraElement>(components: &[T], metric: &Metric) -> Option<Theta> {
    let first = components.first()?;
    if components.len() != metric.dim() {
        return None;
    }
    let id = T::identity_in(&first.space());
    let sq0 = first.times(first);
    let theta = [Theta::Plus, Theta::Minus]
        .into_iter()
        .find(|t| sq0 == id.scaled(&Scalar::from_int(t.sign() * metric.sign(0))))?;
    for (mu, a) in components.iter().enumerate() {
        for (nu, b) in components.iter().enumerate().skip(mu) {
            let expected = if mu == nu {
                id.scaled(&Scalar::from_int(2 * theta.sign() * metric.sign(mu)))
            } else {
                T::zero_in(&first.space())
            };
            if a.anticommutator(b) != expected {
                return None;
            }
        }
    }
    Some(theta)
}

/// Anticommuting set squaring to `θη_{μμ}κ²`, built from generators of `alg`
/// (or `i` times generators in a complex algebra).
pub fn factory_anticommuting(
    alg: Algebra,
    metric: Metric,
    theta: Theta,
    kappa: &Rational,
) -> Result<SolutionCandidate<Multivector>> {
    if kappa.is_zero() {
        return Err(Error::InvalidArgument("κ must be nonzero".into()));
    }
    let n = metric.dim();
    if n < 2 {
        return Err(Error::InvalidArgument("the anticommuting family needs n >= 2".into()));
    }
    let mut used = vec![false; alg.n() + 1];
    let mut picks: Vec<Option<Multivector>> = vec![None; n];
    // direct matches first, then i·e for the opposite square
    for (mu, pick) in picks.iter_mut().enumerate() {
        let target = theta.sign() * metric.sign(mu);
        if let Some(g) = (1..=alg.n()).find(|&g| !used[g] && i64::from(alg.generator_square(g)) == target) {
            used[g] = true;
            *pick = Some(Multivector::generator(alg, g));
        }
    }
    for (mu, pick) in picks.iter_mut().enumerate() {
        if pick.is_some() {
            continue;
        }
        let target = theta.sign() * metric.sign(mu);
        let found = if alg.is_complex() {
            (1..=alg.n()).find(|&g| !used[g] && i64::from(alg.generator_square(g)) == -target)
        } else {
            None
        };
        let Some(g) = found else {
            return Err(Error::NoSuchConstruction(format!(
                "{alg} has no {n} anticommuting elements with squares θη for θ={} on {metric}",
                theta.sign()
            )));
        };
        used[g] = true;
        *pick = Some(Multivector::generator(alg, g).scale(&Scalar::i()));
    }
    let k = Scalar::from_rational(kappa.clone());
    let components = picks.into_iter().map(|a| a.expect("assigned").scale(&k)).collect();
    let lambda = anticommuting_lambda(theta, n, kappa);
    Ok(SolutionCandidate::new(alg, metric, components, lambda)?.with_meta(Some(theta), kappa.clone()))
}

/// Zeroes the listed components of an anticommuting candidate and updates
/// `λ` to `4θ(ń-1)κ²` with `ń` the number of surviving components.
pub fn factory_zero_subset<T: AlgebraElement>(
    c: &SolutionCandidate<T>,
    zero_indices: &[usize],
) -> Result<SolutionCandidate<T>> {
    let theta = c
        .theta
        .ok_or_else(|| Error::InvalidArgument("candidate carries no θ; expected an anticommuting set".into()))?;
    let n = c.n();
    let mut idx = zero_indices.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != zero_indices.len() || idx.iter().any(|&i| i >= n) {
        return Err(Error::InvalidArgument(format!("bad index list {zero_indices:?} for n = {n}")));
    }
    if idx.is_empty() || n - idx.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "must zero between 1 and n-2 = {} components, got {}",
            n.saturating_sub(2),
            idx.len()
        )));
    }
    let mut out = c.clone();
    for &i in &idx {
        out.components[i] = T::zero_in(&c.space);
    }
    out.lambda = anticommuting_lambda(theta, n - idx.len(), &c.kappa);
    Ok(out)
}

/// Pairwise commuting seeds, a `λ = 0` solution.
pub fn factory_commuting(
    alg: Algebra,
    seeds: Vec<Multivector>,
    metric: Metric,
) -> Result<SolutionCandidate<Multivector>> {
    for (i, a) in seeds.iter().enumerate() {
        for b in &seeds[i + 1..] {
            if !a.commutator(b).is_zero() {
                return Err(Error::InvalidArgument("seeds do not pairwise commute".into()));
            }
        }
    }
    SolutionCandidate::new(alg, metric, seeds, Rational::zero())
}

/// Companion Grassmann sets `θ^k`, `π^k` (`k = 1..count`) in a complex algebra.
///
/// Generator `e^k` is paired with `e^{N+k}`; with `c` chosen so that
/// `c²(e^{N+k})² = -(e^k)²` and `s = (e^k)²`,
/// `θ^k = (e^k + c e^{N+k})/2`, `π^k = s(e^k - c e^{N+k})/2`.
/// In `Cl^ℂ(n,0)` this is `θ^k = (e^k + i e^{N+k})/2`, `π^k = (e^k - i e^{N+k})/2`.
pub fn grassmann_pairs(alg: Algebra, count: usize) -> Result<(Vec<Multivector>, Vec<Multivector>)> {
    if !alg.is_complex() {
        return Err(Error::RequiresComplex);
    }
    if alg.is_degenerate() {
        return Err(Error::DegenerateAlgebra);
    }
    if alg.n() < 2 * count {
        return Err(Error::InvalidArgument(format!(
            "{alg} has {} generators, {count} Grassmann pairs need {}",
            alg.n(),
            2 * count
        )));
    }
    let half = Scalar::from_ratio(1, 2);
    let mut thetas = Vec::with_capacity(count);
    let mut pis = Vec::with_capacity(count);
    for k in 1..=count {
        let (a, b) = (k, count + k);
        let sa = i64::from(alg.generator_square(a));
        let sb = i64::from(alg.generator_square(b));
        let c = if sa == sb { Scalar::i() } else { Scalar::one() };
        let ea = Multivector::generator(alg, a);
        let eb = Multivector::generator(alg, b).scale(&c);
        thetas.push((&ea + &eb).scale(&half));
        pis.push((&ea - &eb).scale(&(&half * &Scalar::from_int(sa))));
    }
    Ok((thetas, pis))
}

/// `θ^1..θ^count` padded with zeros to the metric dimension; `λ = 0`.
pub fn factory_grassmann(alg: Algebra, count: usize, metric: Metric) -> Result<SolutionCandidate<Multivector>> {
    if count > metric.dim() {
        return Err(Error::InvalidArgument(format!(
            "{count} Grassmann components do not fit a metric of dimension {}",
            metric.dim()
        )));
    }
    let (mut thetas, _) = grassmann_pairs(alg, count)?;
    thetas.resize(metric.dim(), Multivector::zero(alg));
    SolutionCandidate::new(alg, metric, thetas, Rational::zero())
}

/// The additional three-dimensional family `(e^1, e^2, e^1e^2)`.
///
/// In `Cl(2,1)` it anticommutes with squares `(1,1,-1)`: `θ = +1` on `ℝ^{2,1}`, `λ = 8`.
/// In `Cl(0,3)` all squares are `-1`: `θ = -1` on `ℝ^3`, `λ = -8`.
pub fn factory_extra_n3(alg: Algebra) -> Result<SolutionCandidate<Multivector>> {
    let (metric, theta) = match (alg.p(), alg.q(), alg.r()) {
        (2, 1, 0) => (Metric::new(2, 1), Theta::Plus),
        (0, 3, 0) => (Metric::euclidean(3), Theta::Minus),
        _ => {
            return Err(Error::InvalidSignature(format!(
                "the extra n = 3 family lives in Cl(2,1) or Cl(0,3), not {alg}"
            )))
        }
    };
    let e1 = Multivector::generator(alg, 1);
    let e2 = Multivector::generator(alg, 2);
    let e12 = &e1 * &e2;
    let kappa = Rational::from_integer(1.into());
    let lambda = anticommuting_lambda(theta, 3, &kappa);
    Ok(SolutionCandidate::new(alg, metric, vec![e1, e2, e12], lambda)?.with_meta(Some(theta), kappa))
}

/// `A^μ = κ y^μ_a γ^a` for an anticommuting set `γ^a`.
pub fn apply_frame<T: AlgebraElement>(
    frame: &Frame,
    metric: Metric,
    gens: &[T],
    kappa: &Rational,
) -> Result<SolutionCandidate<T>> {
    if kappa.is_zero() {
        return Err(Error::InvalidArgument("κ must be nonzero".into()));
    }
    if frame.dim() != metric.dim() {
        return Err(Error::DimensionMismatch { expected: metric.dim(), found: frame.dim() });
    }
    if !frame.is_pseudo_orthogonal(&metric) {
        return Err(Error::NotPseudoOrthogonal);
    }
    let theta = anticommutation_theta(gens, &metric)
        .ok_or_else(|| Error::InvalidArgument("generators do not satisfy the anticommutation relations".into()))?;
    let space = gens[0].space();
    let k = Scalar::from_rational(kappa.clone());
    let components = (0..metric.dim())
        .map(|mu| {
            gens.iter().enumerate().fold(T::zero_in(&space), |acc, (a, g)| {
                let y = frame.entry(mu, a);
                if y.is_zero() {
                    acc
                } else {
                    acc.plus(&g.scaled(&(&k * &Scalar::from_rational(y.clone()))))
                }
            })
        })
        .collect();
    let lambda = anticommuting_lambda(theta, metric.dim(), kappa);
    Ok(SolutionCandidate::new(space, metric, components, lambda)?.with_meta(Some(theta), kappa.clone()))
}

/// Number of sub-signatures `(ṕ,q́)` with `ṕ ≤ p`, `q́ ≤ q`, `ṕ+q́ ≥ 2`, each
/// carrying a pair (`θ = ±1`) of anticommuting families. Equals
/// `(p+1)(q+1) - 3` when `p, q ≥ 1`.
pub fn signature_pair_count(p: usize, q: usize) -> usize {
    (0..=p).flat_map(|a| (0..=q).map(move |b| a + b)).filter(|&m| m >= 2).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{Blade, Field};
    use crate::lie_ymp::verify;
    use crate::scalar::{rational, rational_int};

    #[test]
    fn anticommuting_real_and_complex() {
        let c =
            factory_anticommuting(Algebra::real(2, 0), Metric::euclidean(2), Theta::Plus, &rational_int(1)).unwrap();
        assert_eq!(c.components, vec![Multivector::generator(c.space, 1), Multivector::generator(c.space, 2)]);
        assert_eq!(c.lambda, rational_int(4));
        assert!(verify(&c, 0.0).unwrap().ok);

        let alg = Algebra::complex(4, 0);
        let c = factory_anticommuting(alg, Metric::euclidean(4), Theta::Minus, &rational_int(1)).unwrap();
        for (i, a) in c.components.iter().enumerate() {
            assert_eq!(*a, Multivector::generator(alg, i + 1).scale(&Scalar::i()));
        }
        assert_eq!(c.lambda, rational_int(-12));
        assert!(verify(&c, 0.0).unwrap().ok);
        // (A^μ)² = λ η^{μμ} e / (4(n-1))
        for (mu, a) in c.components.iter().enumerate() {
            let expected = Scalar::from_rational(&c.lambda * rational_int(c.metric.sign(mu)) / rational_int(12));
            assert_eq!(a * a, Multivector::scalar(alg, expected));
        }
    }

    #[test]
    fn real_algebra_without_theta_minus_set() {
        let r = factory_anticommuting(Algebra::real(2, 0), Metric::euclidean(2), Theta::Minus, &rational_int(1));
        assert!(matches!(r, Err(Error::NoSuchConstruction(_))));
        // Cl(0,2) supplies it directly
        let c =
            factory_anticommuting(Algebra::real(0, 2), Metric::euclidean(2), Theta::Minus, &rational_int(1)).unwrap();
        assert_eq!(c.lambda, rational_int(-4));
        assert!(verify(&c, 0.0).unwrap().ok);
    }

    #[test]
    fn zero_subsets() {
        let c =
            factory_anticommuting(Algebra::real(4, 0), Metric::euclidean(4), Theta::Plus, &rational_int(1)).unwrap();
        let z1 = factory_zero_subset(&c, &[2]).unwrap();
        assert_eq!(z1.lambda, rational_int(8));
        assert!(verify(&z1, 0.0).unwrap().ok);
        let z2 = factory_zero_subset(&c, &[0, 3]).unwrap();
        assert_eq!(z2.lambda, rational_int(4));
        assert!(verify(&z2, 0.0).unwrap().ok);
        assert!(factory_zero_subset(&c, &[0, 1, 2]).is_err());
        assert!(factory_zero_subset(&c, &[]).is_err());
        assert!(factory_zero_subset(&c, &[1, 1]).is_err());
        assert!(factory_zero_subset(&c, &[4]).is_err());
    }

    #[test]
    fn commuting_family() {
        let alg = Algebra::real(3, 0);
        let e1 = Multivector::generator(alg, 1);
        let e23 = Multivector::basis(alg, Blade::from_indices(&[2, 3]));
        let c = factory_commuting(alg, vec![e1.clone(), e23.clone(), e1.clone()], Metric::euclidean(3)).unwrap();
        assert!(verify(&c, 0.0).unwrap().ok);
        let id = Multivector::identity(alg);
        let c =
            factory_commuting(alg, vec![id.clone(), id.scale(&Scalar::from_int(3)), id], Metric::new(1, 2)).unwrap();
        assert!(verify(&c, 0.0).unwrap().ok);
        let e2 = Multivector::generator(alg, 2);
        assert!(factory_commuting(alg, vec![e1, e2, e23], Metric::euclidean(3)).is_err());
    }

    #[test]
    fn grassmann_relations() {
        let alg = Algebra::complex(2, 0);
        let c = factory_grassmann(alg, 1, Metric::euclidean(2)).unwrap();
        let half = Scalar::from_ratio(1, 2);
        let expected = Multivector::from_terms(
            alg,
            [(Blade::generator(1), half.clone()), (Blade::generator(2), &half * &Scalar::i())],
        );
        assert_eq!(c.components[0], expected);
        assert!((&c.components[0] * &c.components[0]).is_zero());
        assert!(c.components[1].is_zero());
        assert!(verify(&c, 0.0).unwrap().ok);

        let alg = Algebra::complex(6, 0);
        let (th, pi) = grassmann_pairs(alg, 3).unwrap();
        let id = Multivector::identity(alg);
        for k in 0..3 {
            for l in 0..3 {
                let delta = if k == l { id.clone() } else { Multivector::zero(alg) };
                assert_eq!(th[k].anticommutator(&pi[l]), delta);
                assert!(th[k].anticommutator(&th[l]).is_zero());
                assert!(pi[k].anticommutator(&pi[l]).is_zero());
            }
            // e^k = θ^k + π^k and e^{N+k} = -i(θ^k - π^k)
            assert_eq!(&th[k] + &pi[k], Multivector::generator(alg, k + 1));
            assert_eq!((&th[k] - &pi[k]).scale(&-Scalar::i()), Multivector::generator(alg, k + 4));
        }
        assert!(grassmann_pairs(Algebra::complex(3, 0), 2).is_err());
        assert_eq!(grassmann_pairs(Algebra::real(2, 0), 1), Err(Error::RequiresComplex));
    }

    #[test]
    fn grassmann_in_mixed_signature() {
        let alg = Algebra::complex(1, 3);
        let (th, pi) = grassmann_pairs(alg, 2).unwrap();
        let id = Multivector::identity(alg);
        for k in 0..2 {
            assert!((&th[k] * &th[k]).is_zero());
            assert_eq!(th[k].anticommutator(&pi[k]), id);
        }
    }

    #[test]
    fn extra_three_dimensional_family() {
        let c = factory_extra_n3(Algebra::real(2, 1)).unwrap();
        assert_eq!(c.lambda, rational_int(8));
        assert!(verify(&c, 0.0).unwrap().ok);
        let prod = &(&c.components[0] * &c.components[1]) * &c.components[2];
        assert_eq!(prod.scalar_part(), Scalar::from_int(-1));

        let c = factory_extra_n3(Algebra::real(0, 3)).unwrap();
        assert_eq!(c.lambda, rational_int(-8));
        assert_eq!(c.theta, Some(Theta::Minus));
        assert!(verify(&c, 0.0).unwrap().ok);
        assert!(factory_extra_n3(Algebra::real(3, 0)).is_err());
        assert!(factory_extra_n3(Algebra::new(2, 1, 0, Field::Complex).unwrap()).is_ok());
    }

    #[test]
    fn frames_preserve_the_family() {
        let alg = Algebra::complex(1, 3);
        let metric = Metric::minkowski();
        let igamma: Vec<_> = (1..=4).map(|i| Multivector::generator(alg, i).scale(&Scalar::i())).collect();
        let c = apply_frame(&Frame::identity(4), metric, &igamma, &rational_int(1)).unwrap();
        assert_eq!(c.lambda, rational_int(-12));
        assert!(verify(&c, 0.0).unwrap().ok);

        let boost = Frame::plane(&metric, 0, 1, &rational(1, 3)).unwrap();
        assert_eq!(boost.entry(0, 0), &rational(5, 4));
        assert_eq!(boost.entry(0, 1), &rational(3, 4));
        let c = apply_frame(&boost, metric, &igamma, &rational_int(1)).unwrap();
        assert!(verify(&c, 0.0).unwrap().ok);

        let mut bad = Frame::identity(4);
        bad.set(0, 0, rational_int(2));
        assert_eq!(apply_frame(&bad, metric, &igamma, &rational_int(1)), Err(Error::NotPseudoOrthogonal));
    }

    #[test]
    fn signature_count() {
        assert_eq!(signature_pair_count(1, 3), 5);
        for (p, q) in [(1, 1), (2, 2), (3, 1)] {
            assert_eq!(signature_pair_count(p, q), (p + 1) * (q + 1) - 3);
        }
        assert_eq!(signature_pair_count(2, 0), 1);
    }
}
