//! Matrix realizations: Dirac and Pauli matrices, pseudo-unitary Lie algebra
//! membership, a faithful complex representation of Clifford algebras and the
//! embedding of degenerate algebras into non-degenerate ones.

use std::fmt;

use num_traits::Zero;

use crate::clifford::{Algebra, Blade, Multivector};
use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Rational, Scalar};

/// Square matrix of exact Gaussian rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct CMatrix {
    order: usize,
    data: Vec<Scalar>,
}

impl CMatrix {
    pub fn zeros(order: usize) -> Self {
        CMatrix { order, data: vec![Scalar::zero(); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = CMatrix::zeros(order);
        for i in 0..order {
            m.data[i * order + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let order = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != order) {
            return Err(Error::DimensionMismatch { expected: order, found: r.len() });
        }
        Ok(CMatrix { order, data: rows.into_iter().flatten().collect() })
    }

    /// Integer entries, for the printed constant matrices.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect();
        CMatrix::from_rows(rows).expect("square")
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = CMatrix::zeros(entries.len());
        for (i, v) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = v.clone();
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.order.max(1)).map(<[Scalar]>::to_vec).collect()
    }

    fn check(&self, other: &CMatrix) -> Result<()> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch { expected: self.order, found: other.order });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check(other)?;
        let n = self.order;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> CMatrix {
        self.check(other).expect("matrix order mismatch");
        CMatrix { order: self.order, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> CMatrix {
        CMatrix { order: self.order, data: self.data.iter().map(|v| v * s).collect() }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        let n = self.order;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.order).fold(Scalar::zero(), |acc, i| acc + &self.data[i * self.order + i])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Smallest `k ≥ 1` with `self^k = 0`, if any (`k ≤ order` always suffices).
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=self.order.max(1) {
            if p.is_zero() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }
}

impl std::ops::Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.try_mul(rhs).expect("matrix order mismatch")
    }
}

impl std::ops::Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl std::ops::Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({})", self.order)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The matrix order, used as the "space" of matrix elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixSpace(pub usize);

impl fmt::Display for MatrixSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat({}, C)", self.0)
    }
}

impl AlgebraElement for CMatrix {
    type Space = MatrixSpace;

    fn space(&self) -> MatrixSpace {
        MatrixSpace(self.order)
    }

    fn zero_in(space: &MatrixSpace) -> Self {
        CMatrix::zeros(space.0)
    }

    fn identity_in(space: &MatrixSpace) -> Self {
        CMatrix::identity(space.0)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn scaled(&self, s: &Scalar) -> Self {
        self.scale(s)
    }

    fn is_zero(&self) -> bool {
        CMatrix::is_zero(self)
    }

    fn norm_sq(&self) -> Rational {
        self.data.iter().fold(Rational::zero(), |acc, v| acc + v.norm_sq())
    }

    fn inner(&self, other: &Self) -> Scalar {
        linalg::inner(&self.data, &other.data)
    }

    fn inverse(&self) -> Result<Self> {
        let inv = linalg::inverse(&self.rows()).ok_or(Error::NotInvertible)?;
        CMatrix::from_rows(inv)
    }
}

/// Dirac matrices `γ^0..γ^3` in the Dirac representation.
pub fn dirac_gammas() -> [CMatrix; 4] {
    let i = Scalar::i();
    let g0 = CMatrix::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
    let g1 = CMatrix::from_ints(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[-1, 0, 0, 0]]);
    let g2 = CMatrix::from_ints(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]]).scale(&i);
    let g3 = CMatrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, -1], &[-1, 0, 0, 0], &[0, 1, 0, 0]]);
    [g0, g1, g2, g3]
}

/// `τ^a = i σ^a`: Pauli matrices times the imaginary unit.
pub fn pauli_taus() -> [CMatrix; 3] {
    let i = Scalar::i();
    let s1 = CMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    let s2 = CMatrix::from_rows(vec![vec![Scalar::zero(), -Scalar::i()], vec![Scalar::i(), Scalar::zero()]])
        .expect("square");
    let s3 = CMatrix::from_ints(&[&[1, 0], &[0, -1]]);
    [s1.scale(&i), s2.scale(&i), s3.scale(&i)]
}

/// `β s† β = -s` and `tr s = 0` (`β` a diagonal `±1` matrix; identity for `su(n)`).
pub fn su_membership(s: &CMatrix, beta: &CMatrix) -> Result<bool> {
    s.check(beta)?;
    let n = beta.order();
    for i in 0..n {
        for j in 0..n {
            let v = beta.get(i, j);
            let ok = if i == j { v.is_one() || (-v).is_one() } else { v.is_zero() };
            if !ok {
                return Err(Error::InvalidArgument("β must be diagonal with entries ±1".into()));
            }
        }
    }
    let lhs = &(beta * &s.dagger()) * beta;
    Ok(lhs == s.scale(&Scalar::from_int(-1)) && s.trace().is_zero())
}

/// The two nilpotent anticommuting 4×4 matrices realizing two Grassmann numbers.
pub fn grassmann_example_matrices() -> (CMatrix, CMatrix) {
    let a1 = CMatrix::from_ints(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]);
    let a2 = CMatrix::from_ints(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, -1, 0, 0]]);
    (a1, a2)
}

fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (n, m) = (a.order, b.order);
    let mut out = CMatrix::zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.data[(i * m + k) * n * m + j * m + l] = x * y;
                    }
                }
            }
        }
    }
    out
}

fn kron_all(factors: &[CMatrix]) -> CMatrix {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, f| kron(&acc, f))
}

pub const MAX_REP_GENERATORS: usize = 8;

/// Generator images of a Clifford algebra in complex matrices of order `2^⌈n/2⌉`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    source: Algebra,
    images: Vec<CMatrix>,
}

impl Representation {
    pub fn source(&self) -> Algebra {
        self.source
    }

    pub fn order(&self) -> usize {
        self.images.first().map_or(1, CMatrix::order)
    }

    pub fn generator_images(&self) -> &[CMatrix] {
        &self.images
    }

    pub fn blade_image(&self, b: Blade) -> CMatrix {
        b.indices().iter().fold(CMatrix::identity(self.order()), |acc, &i| &acc * &self.images[i - 1])
    }

    pub fn image(&self, u: &Multivector) -> Result<CMatrix> {
        if u.algebra() != self.source {
            return Err(Error::AlgebraMismatch(self.source.to_string(), u.algebra().to_string()));
        }
        let mut acc = CMatrix::zeros(self.order());
        for (b, c) in u.terms() {
            acc = &acc + &self.blade_image(b).scale(c);
        }
        Ok(acc)
    }

    /// Rank of the `2^n` blade images viewed as vectors.
    pub fn blade_image_rank(&self) -> usize {
        let rows: Vec<Vec<Scalar>> = self.source.blades().map(|b| self.blade_image(b).data).collect();
        linalg::rank(&rows)
    }

    /// Injective on the whole algebra.
    pub fn is_faithful(&self) -> bool {
        self.blade_image_rank() == self.source.dim()
    }
}

/// Jordan–Wigner ladder: with `m = ⌈n/2⌉` tensor factors,
/// `Γ_{2k-1} = Z^{⊗(k-1)} ⊗ X ⊗ I…`, `Γ_{2k} = Z^{⊗(k-1)} ⊗ Y ⊗ I…` and,
/// for odd `n`, `Γ_n = Z^{⊗m}`. Generators squaring to `-1` get a factor `i`.
///
/// Real algebras are represented through their complexification.
pub fn faithful_rep(alg: Algebra) -> Result<Representation> {
    if alg.is_degenerate() {
        return Err(Error::DegenerateAlgebra);
    }
    let n = alg.n();
    if n > MAX_REP_GENERATORS {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds {MAX_REP_GENERATORS} generators")));
    }
    let m = n.div_ceil(2);
    let id = CMatrix::identity(2);
    let x = CMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    let y = CMatrix::from_rows(vec![vec![Scalar::zero(), -Scalar::i()], vec![Scalar::i(), Scalar::zero()]])
        .expect("square");
    let z = CMatrix::from_ints(&[&[1, 0], &[0, -1]]);
    let images = (1..=n)
        .map(|g| {
            let base = if m == 0 {
                CMatrix::identity(1)
            } else if g == n && n % 2 == 1 {
                kron_all(&vec![z.clone(); m])
            } else {
                let k = (g - 1) / 2;
                let mid = if g % 2 == 1 { x.clone() } else { y.clone() };
                let factors: Vec<CMatrix> = (0..m)
                    .map(|t| match t.cmp(&k) {
                        std::cmp::Ordering::Less => z.clone(),
                        std::cmp::Ordering::Equal => mid.clone(),
                        std::cmp::Ordering::Greater => id.clone(),
                    })
                    .collect();
                kron_all(&factors)
            };
            if alg.generator_square(g) < 0 {
                base.scale(&Scalar::i())
            } else {
                base
            }
        })
        .collect();
    Ok(Representation { source: alg, images })
}

/// Homomorphism `ψ: Cl(p,q,r) → Cl(p+r, q+r)` with `e^k ↦ e^k`, `ε^l ↦ ε^l`
/// and `θ^m ↦ e^{p+m} + ε^{q+m}`.
///
/// In the target the positive generators are `1..=p+r` and the negative ones
/// `p+r+1..=p+q+2r`, so `ε^l` of the source lands on target generator `p+r+l`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerateEmbedding {
    source: Algebra,
    target: Algebra,
    images: Vec<Multivector>,
}

impl DegenerateEmbedding {
    pub fn source(&self) -> Algebra {
        self.source
    }

    pub fn target(&self) -> Algebra {
        self.target
    }

    pub fn generator_images(&self) -> &[Multivector] {
        &self.images
    }

    pub fn blade_image(&self, b: Blade) -> Multivector {
        b.indices().iter().fold(Multivector::identity(self.target), |acc, &i| &acc * &self.images[i - 1])
    }

    pub fn apply(&self, u: &Multivector) -> Result<Multivector> {
        if u.algebra() != self.source {
            return Err(Error::AlgebraMismatch(self.source.to_string(), u.algebra().to_string()));
        }
        let mut acc = Multivector::zero(self.target);
        for (b, c) in u.terms() {
            acc = &acc + &self.blade_image(b).scale(c);
        }
        Ok(acc)
    }
}

pub fn embed_degenerate(src: Algebra) -> Result<DegenerateEmbedding> {
    let (p, q, r) = (src.p(), src.q(), src.r());
    let target = Algebra::new(p + r, q + r, 0, src.field())?;
    let pos = |k: usize| Multivector::generator(target, k);
    let neg = |l: usize| Multivector::generator(target, p + r + l);
    let mut images = Vec::with_capacity(src.n());
    images.extend((1..=p).map(pos));
    images.extend((1..=q).map(neg));
    images.extend((1..=r).map(|m| &pos(p + m) + &neg(q + m)));
    Ok(DegenerateEmbedding { source: src, target, images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Field;
    use crate::lie_ymp::{verify, Metric, SolutionCandidate};
    use crate::scalar::rational_int;

    #[test]
    fn dirac_relations() {
        let g = dirac_gammas();
        let id = CMatrix::identity(4);
        assert_eq!(&g[0] * &g[0], id);
        let metric = Metric::minkowski();
        for a in 0..4 {
            for b in 0..4 {
                let anti = &(&g[a] * &g[b]) + &(&g[b] * &g[a]);
                let expected = if a == b { id.scale(&Scalar::from_int(2 * metric.sign(a))) } else { CMatrix::zeros(4) };
                assert_eq!(anti, expected, "({a},{b})");
            }
            assert_eq!(g[a].dagger(), &(&g[0] * &g[a]) * &g[0]);
        }
    }

    #[test]
    fn su22_membership() {
        let g = dirac_gammas();
        let beta = g[0].clone();
        for ga in &g {
            assert!(su_membership(&ga.scale(&Scalar::i()), &beta).unwrap());
            assert!(!su_membership(ga, &beta).unwrap());
        }
        assert!(su_membership(&CMatrix::zeros(4), &beta).unwrap());
        assert!(su_membership(&CMatrix::zeros(2), &beta).is_err());
        assert!(su_membership(&CMatrix::zeros(4), &CMatrix::identity(4).scale(&Scalar::from_int(2))).is_err());
    }

    #[test]
    fn pauli_taus_in_su2() {
        let t = pauli_taus();
        let id = CMatrix::identity(2);
        assert_eq!(&t[0] * &t[0], id.scale(&Scalar::from_int(-1)));
        for a in 0..3 {
            assert!(su_membership(&t[a], &id).unwrap());
            for b in (a + 1)..3 {
                assert!((&(&t[a] * &t[b]) + &(&t[b] * &t[a])).is_zero());
            }
        }
        let c = SolutionCandidate::new(MatrixSpace(2), Metric::euclidean(3), t.to_vec(), rational_int(-8)).unwrap();
        assert!(verify(&c, 0.0).unwrap().ok);
    }

    #[test]
    fn grassmann_matrices() {
        let (a1, a2) = grassmann_example_matrices();
        assert!((&a1 * &a1).is_zero());
        assert!((&a2 * &a2).is_zero());
        assert_eq!(&a1 * &a2, (&a2 * &a1).scale(&Scalar::from_int(-1)));
        let z = CMatrix::zeros(4);
        let c =
            SolutionCandidate::new(MatrixSpace(4), Metric::minkowski(), vec![a1, a2, z.clone(), z], rational_int(0))
                .unwrap();
        assert!(verify(&c, 0.0).unwrap().ok);
    }

    #[test]
    fn jordan_wigner_relations() {
        for (p, q) in [(2, 0), (1, 3), (3, 0), (0, 5), (2, 4)] {
            let alg = Algebra::complex(p, q);
            let rep = faithful_rep(alg).unwrap();
            assert_eq!(rep.order(), 1 << alg.n().div_ceil(2));
            let id = CMatrix::identity(rep.order());
            for a in 1..=alg.n() {
                for b in 1..=alg.n() {
                    let (ga, gb) = (&rep.generator_images()[a - 1], &rep.generator_images()[b - 1]);
                    let anti = &(ga * gb) + &(gb * ga);
                    let expected = if a == b {
                        id.scale(&Scalar::from_int(2 * i64::from(alg.generator_square(a))))
                    } else {
                        CMatrix::zeros(rep.order())
                    };
                    assert_eq!(anti, expected);
                }
            }
        }
    }

    #[test]
    fn faithfulness() {
        assert!(faithful_rep(Algebra::complex(2, 0)).unwrap().is_faithful());
        assert!(faithful_rep(Algebra::complex(1, 3)).unwrap().is_faithful());
        // the odd-n ladder with the extra Z…Z generator is faithful as well
        assert!(faithful_rep(Algebra::complex(3, 0)).unwrap().is_faithful());
        assert!(faithful_rep(Algebra::complex(9, 0)).is_err());
        assert!(faithful_rep(Algebra::new(1, 0, 1, Field::Complex).unwrap()).is_err());
    }

    #[test]
    fn psi_for_grassmann_two() {
        let src = Algebra::new(0, 0, 2, Field::Complex).unwrap();
        let psi = embed_degenerate(src).unwrap();
        assert_eq!(psi.target(), Algebra::complex(2, 2));
        let t = psi.target();
        assert_eq!(psi.generator_images()[0], &Multivector::generator(t, 1) + &Multivector::generator(t, 3));
        assert_eq!(psi.generator_images()[1], &Multivector::generator(t, 2) + &Multivector::generator(t, 4));
        let th1 = psi.apply(&Multivector::generator(src, 1)).unwrap();
        assert!((&th1 * &th1).is_zero());
        assert_eq!(psi.apply(&Multivector::identity(src)).unwrap(), Multivector::identity(t));
    }
}
