use num_traits::Zero;

use crate::clifford::{Algebra, Multivector};
use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Rational, Scalar};

/// A real Lie algebra given by structure constants `[t^r,t^s] = c^{rs}_l t^l`,
/// optionally realized by concrete multivectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LieBasis {
    elements: Option<Vec<Multivector>>,
    dim: usize,
    /// `c^{rs}_l` at index `(r·N + s)·N + l`.
    constants: Vec<Rational>,
}

impl LieBasis {
    /// Abstract basis from a full `N×N×N` table; antisymmetry is checked.
    pub fn from_constants(dim: usize, constants: Vec<Rational>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: constants.len() });
        }
        let b = LieBasis { elements: None, dim, constants };
        for r in 0..dim {
            for s in 0..dim {
                for l in 0..dim {
                    if *b.constant(r, s, l) != -b.constant(s, r, l).clone() {
                        return Err(Error::InvalidArgument(format!(
                            "structure constants are not antisymmetric at ({r},{s},{l})"
                        )));
                    }
                }
            }
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, r: usize, s: usize, l: usize) -> &Rational {
        &self.constants[(r * self.dim + s) * self.dim + l]
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    pub fn elements(&self) -> Option<&[Multivector]> {
        self.elements.as_deref()
    }

    pub fn algebra(&self) -> Option<Algebra> {
        self.elements.as_ref().and_then(|e| e.first()).map(Multivector::algebra)
    }

    /// Nonzero entries `(r, s, l, c^{rs}_l)`.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, Rational)> {
        let n = self.dim;
        let mut out = Vec::new();
        for r in 0..n {
            for s in 0..n {
                for l in 0..n {
                    let c = self.constant(r, s, l);
                    if !c.is_zero() {
                        out.push((r, s, l, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// `Σ_r coords[r] t^r`; needs a realized basis.
    pub fn embed(&self, coords: &[Rational]) -> Result<Multivector> {
        let elements =
            self.elements.as_ref().ok_or_else(|| Error::InvalidArgument("abstract basis has no realization".into()))?;
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: coords.len() });
        }
        let alg = elements[0].algebra();
        Ok(elements.iter().zip(coords).fold(Multivector::zero(alg), |acc, (t, c)| {
            if c.is_zero() {
                acc
            } else {
                &acc + &t.scale(&Scalar::from_rational(c.clone()))
            }
        }))
    }

    /// Real coordinates of `x` in the basis, if `x` lies in its real span.
    pub fn coordinates(&self, x: &Multivector) -> Option<Vec<Rational>> {
        let elements = self.elements.as_ref()?;
        let coords = coordinates_in(elements, x)?;
        coords.into_iter().map(|c| c.is_real().then(|| c.re().clone())).collect()
    }
}

fn coordinates_in(basis: &[Multivector], x: &Multivector) -> Option<Vec<Scalar>> {
    let alg = basis[0].algebra();
    let cols: Vec<Vec<Scalar>> = basis.iter().map(Multivector::to_dense).collect();
    let m = linalg::from_columns(&cols, alg.dim());
    linalg::solve(&m, &x.to_dense())
}

/// Structure constants of the span of `basis`, recovered by exact linear solves.
pub fn structure_constants(basis: &[Multivector]) -> Result<LieBasis> {
    let Some(first) = basis.first() else {
        return Ok(LieBasis { elements: Some(Vec::new()), dim: 0, constants: Vec::new() });
    };
    let alg = first.algebra();
    if let Some(bad) = basis.iter().find(|b| b.algebra() != alg) {
        return Err(Error::AlgebraMismatch(alg.to_string(), bad.algebra().to_string()));
    }
    let n = basis.len();
    let cols: Vec<Vec<Scalar>> = basis.iter().map(Multivector::to_dense).collect();
    let m = linalg::from_columns(&cols, alg.dim());
    if linalg::rank(&m) < n {
        return Err(Error::LinearlyDependent);
    }
    let mut constants = vec![Rational::zero(); n * n * n];
    for r in 0..n {
        for s in (r + 1)..n {
            let br = basis[r].commutator(&basis[s]);
            let x = linalg::solve(&m, &br.to_dense()).ok_or(Error::BracketLeavesSpan(r, s))?;
            for (l, c) in x.into_iter().enumerate() {
                if !c.is_real() {
                    return Err(Error::NonRealStructureConstant);
                }
                constants[(r * n + s) * n + l] = c.re().clone();
                constants[(s * n + r) * n + l] = -c.re().clone();
            }
        }
    }
    Ok(LieBasis { elements: Some(basis.to_vec()), dim: n, constants })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{lie_basis, Blade};
    use crate::scalar::rational_int;

    #[test]
    fn cl20_lie_basis_constants() {
        let alg = Algebra::real(2, 0);
        let basis: Vec<_> = lie_basis(&alg).unwrap().into_iter().map(|b| Multivector::basis(alg, b)).collect();
        let lb = structure_constants(&basis).unwrap();
        assert_eq!(lb.dim(), 3);
        // ordering by mask: e1, e2, e12; [e1,e2] = 2e12
        assert_eq!(*lb.constant(0, 1, 2), rational_int(2));
        assert_eq!(*lb.constant(1, 0, 2), rational_int(-2));
        // reconstruct every bracket
        for r in 0..3 {
            for s in 0..3 {
                let coords: Vec<_> = (0..3).map(|l| lb.constant(r, s, l).clone()).collect();
                assert_eq!(lb.embed(&coords).unwrap(), basis[r].commutator(&basis[s]));
            }
        }
    }

    #[test]
    fn su2_like_triple() {
        let alg = Algebra::real(3, 0);
        let basis: Vec<_> =
            [[2, 3], [1, 3], [1, 2]].iter().map(|ix| Multivector::basis(alg, Blade::from_indices(ix))).collect();
        let lb = structure_constants(&basis).unwrap();
        for (r, s, l, c) in lb.nonzero() {
            assert!(c == rational_int(2) || c == rational_int(-2), "c[{r}{s}{l}] = {c}");
            assert!(r != s && s != l && r != l);
        }
        assert_eq!(lb.nonzero().len(), 6);
    }

    #[test]
    fn abelian_and_failure_modes() {
        let alg = Algebra::real(3, 0);
        let e1 = Multivector::generator(alg, 1);
        let e23 = Multivector::basis(alg, Blade::from_indices(&[2, 3]));
        let lb = structure_constants(&[e1.clone(), e23]).unwrap();
        assert!(lb.nonzero().is_empty());

        let e2 = Multivector::generator(alg, 2);
        assert_eq!(structure_constants(&[e1.clone(), e2.clone()]), Err(Error::BracketLeavesSpan(0, 1)));
        assert_eq!(structure_constants(&[e1.clone(), e1.scale(&Scalar::from_int(2))]), Err(Error::LinearlyDependent));
    }

    #[test]
    fn abstract_constants_need_antisymmetry() {
        let mut c = vec![Rational::zero(); 8];
        // c[r][s][l] at (r·dim + s)·dim + l
        c[2] = rational_int(1);
        assert!(LieBasis::from_constants(2, c.clone()).is_err());
        c[4] = rational_int(-1);
        assert!(LieBasis::from_constants(2, c).is_ok());
    }
}
