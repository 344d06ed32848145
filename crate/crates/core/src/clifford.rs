//! Clifford algebras `Cl(p,q,r)` over ℝ or ℂ with exact coefficients.
//!
//! Generators are numbered `1..=n`; the first `p` square to `+1`, the next
//! `q` to `-1` and the last `r` to `0`. A basis blade is stored as a bitmask
//! with bit `i-1` standing for generator `e^i`, factors in ascending order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Rational, Scalar};

pub const MAX_GENERATORS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    p: usize,
    q: usize,
    r: usize,
    field: Field,
}

impl Algebra {
    pub fn new(p: usize, q: usize, r: usize, field: Field) -> Result<Self> {
        let n = p + q + r;
        if n > MAX_GENERATORS {
            return Err(Error::InvalidSignature(format!("p+q+r = {n} exceeds {MAX_GENERATORS} generators")));
        }
        Ok(Algebra { p, q, r, field })
    }

    /// Non-degenerate real algebra. Panics if `p+q > 16`.
    pub fn real(p: usize, q: usize) -> Self {
        Algebra::new(p, q, 0, Field::Real).expect("signature too large")
    }

    /// Non-degenerate complexified algebra. Panics if `p+q > 16`.
    pub fn complex(p: usize, q: usize) -> Self {
        Algebra::new(p, q, 0, Field::Complex).expect("signature too large")
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn with_field(self, field: Field) -> Self {
        Algebra { field, ..self }
    }

    pub fn n(&self) -> usize {
        self.p + self.q + self.r
    }

    /// Number of basis blades, `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn is_complex(&self) -> bool {
        self.field == Field::Complex
    }

    pub fn is_degenerate(&self) -> bool {
        self.r > 0
    }

    /// Square of generator `e^i` (1-based): `1`, `-1` or `0`.
    pub fn generator_square(&self, i: usize) -> i8 {
        assert!((1..=self.n()).contains(&i), "generator index {i} out of range");
        if i <= self.p {
            1
        } else if i <= self.p + self.q {
            -1
        } else {
            0
        }
    }

    pub fn blades(&self) -> impl Iterator<Item = Blade> {
        (0..self.dim() as u32).map(Blade)
    }

    pub fn contains(&self, b: Blade) -> bool {
        (b.0 as usize) < self.dim()
    }

    /// Product of two basis blades: `None` if a degenerate generator is
    /// repeated, otherwise the sign (`true` for negative) and resulting blade.
    pub fn blade_product(&self, a: Blade, b: Blade) -> Option<(bool, Blade)> {
        let mut swaps = 0u32;
        let mut bits = b.0;
        while bits != 0 {
            let j = bits.trailing_zeros();
            // factors of `a` above generator j must move past it
            swaps += (a.0 >> (j + 1)).count_ones();
            bits &= bits - 1;
        }
        let mut negative = swaps % 2 == 1;
        let mut common = a.0 & b.0;
        while common != 0 {
            let j = common.trailing_zeros() as usize;
            match self.generator_square(j + 1) {
                0 => return None,
                -1 => negative = !negative,
                _ => {}
            }
            common &= common - 1;
        }
        Some((negative, Blade(a.0 ^ b.0)))
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.field {
            Field::Real => "",
            Field::Complex => "^C",
        };
        if self.r == 0 {
            write!(f, "Cl{tag}({},{})", self.p, self.q)
        } else {
            write!(f, "Cl{tag}({},{},{})", self.p, self.q, self.r)
        }
    }
}

/// Basis blade `e^{a1...ak}`, `a1 < ... < ak`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Blade from 1-based generator indices (any order, no repeats).
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut mask = 0u32;
        for &i in indices {
            assert!((1..=MAX_GENERATORS).contains(&i), "generator index {i} out of range");
            assert!(mask & (1 << (i - 1)) == 0, "repeated generator {i}");
            mask |= 1 << (i - 1);
        }
        Blade(mask)
    }

    pub fn generator(i: usize) -> Self {
        Blade::from_indices(&[i])
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Ascending 1-based generator indices.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).map(|i| i + 1).collect()
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "e");
        }
        let idx: Vec<String> = self.indices().iter().map(usize::to_string).collect();
        if idx.iter().all(|s| s.len() == 1) {
            write!(f, "e{}", idx.concat())
        } else {
            write!(f, "e{{{}}}", idx.join(","))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// Element of a Clifford algebra: sparse map from blades to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector {
    alg: Algebra,
    terms: BTreeMap<Blade, Scalar>,
}

impl Multivector {
    pub fn zero(alg: Algebra) -> Self {
        Multivector { alg, terms: BTreeMap::new() }
    }

    pub fn identity(alg: Algebra) -> Self {
        Multivector::scalar(alg, Scalar::one())
    }

    pub fn scalar(alg: Algebra, s: Scalar) -> Self {
        Multivector::term(alg, Blade::SCALAR, s)
    }

    pub fn term(alg: Algebra, blade: Blade, coef: Scalar) -> Self {
        assert!(alg.contains(blade), "blade {blade} not in {alg}");
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(blade, coef);
        }
        Multivector { alg, terms }
    }

    pub fn basis(alg: Algebra, blade: Blade) -> Self {
        Multivector::term(alg, blade, Scalar::one())
    }

    /// Generator `e^i`, 1-based.
    pub fn generator(alg: Algebra, i: usize) -> Self {
        assert!((1..=alg.n()).contains(&i), "generator index {i} out of range for {alg}");
        Multivector::basis(alg, Blade::generator(i))
    }

    /// Ordered product `e^{i1} e^{i2} ...` of generators (1-based, any order).
    pub fn product_of_generators(alg: Algebra, indices: &[usize]) -> Self {
        indices.iter().fold(Multivector::identity(alg), |acc, &i| &acc * &Multivector::generator(alg, i))
    }

    pub fn from_terms(alg: Algebra, terms: impl IntoIterator<Item = (Blade, Scalar)>) -> Self {
        let mut m = Multivector::zero(alg);
        for (b, c) in terms {
            assert!(alg.contains(b), "blade {b} not in {alg}");
            m.add_term(b, &c);
        }
        m
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Scalar)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, blade: Blade) -> Scalar {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the element is a multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|b| *b == Blade::SCALAR)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    /// Rejects imaginary coefficients in a real algebra.
    pub fn check_field(&self) -> Result<()> {
        if self.alg.field == Field::Real && !self.is_real() {
            return Err(Error::NotReal);
        }
        Ok(())
    }

    fn add_term(&mut self, b: Blade, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    fn check_same(&self, other: &Multivector) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg.to_string(), other.alg.to_string()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Multivector {
        if s.is_zero() {
            return Multivector::zero(self.alg);
        }
        Multivector { alg: self.alg, terms: self.terms.iter().map(|(b, c)| (*b, c * s)).collect() }
    }

    pub fn grade_project(&self, k: usize) -> Multivector {
        Multivector {
            alg: self.alg,
            terms: self.terms.iter().filter(|(b, _)| b.grade() == k).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    /// Coefficient of the identity blade.
    pub fn scalar_part(&self) -> Scalar {
        self.coefficient(Blade::SCALAR)
    }

    /// Squared Euclidean norm of the blade coefficients.
    pub fn norm_sq(&self) -> Rational {
        self.terms.values().fold(Rational::default(), |acc, c| acc + c.norm_sq())
    }

    pub fn norm(&self) -> f64 {
        crate::scalar::rational_to_f64(&self.norm_sq()).sqrt()
    }

    /// Hermitian coefficient inner product `Σ conj(self_b) other_b`.
    pub fn inner(&self, other: &Multivector) -> Scalar {
        let mut acc = Scalar::zero();
        for (b, c) in &self.terms {
            if let Some(d) = other.terms.get(b) {
                acc += &(&c.conj() * d);
            }
        }
        acc
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Multivector {
        Multivector { alg: self.alg, terms: self.terms.iter().map(|(b, c)| (*b, c.conj())).collect() }
    }

    /// Coordinates in the blade basis, indexed by mask.
    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.alg.dim()];
        for (b, c) in &self.terms {
            v[b.0 as usize] = c.clone();
        }
        v
    }

    pub fn from_dense(alg: Algebra, v: &[Scalar]) -> Multivector {
        assert_eq!(v.len(), alg.dim());
        Multivector::from_terms(alg, v.iter().enumerate().map(|(i, c)| (Blade(i as u32), c.clone())))
    }

    /// Matrix of `x ↦ self·x` in the blade basis.
    pub fn left_multiplication_matrix(&self) -> linalg::Matrix {
        let d = self.alg.dim();
        let mut m = linalg::zeros(d, d);
        for col in self.alg.blades() {
            for (b, c) in &self.terms {
                if let Some((neg, out)) = self.alg.blade_product(*b, col) {
                    let v = if neg { -c } else { c.clone() };
                    m[out.0 as usize][col.0 as usize] += &v;
                }
            }
        }
        m
    }

    /// Exact inverse obtained by solving `self·x = e` in blade coordinates.
    pub fn inverse(&self) -> Result<Multivector> {
        let m = self.left_multiplication_matrix();
        let mut rhs = vec![Scalar::zero(); self.alg.dim()];
        rhs[0] = Scalar::one();
        let x = linalg::solve(&m, &rhs).ok_or(Error::NotInvertible)?;
        let inv = Multivector::from_dense(self.alg, &x);
        // a one-sided inverse in a finite-dimensional algebra is two-sided,
        // but a rank-deficient solve can still return a spurious vector
        if &inv * self != Multivector::identity(self.alg) {
            return Err(Error::NotInvertible);
        }
        Ok(inv)
    }
}

pub fn geometric_product(u: &Multivector, v: &Multivector) -> Result<Multivector> {
    u.check_same(v)?;
    let alg = u.alg;
    let mut out = Multivector::zero(alg);
    for (a, ca) in &u.terms {
        for (b, cb) in &v.terms {
            if let Some((neg, blade)) = alg.blade_product(*a, *b) {
                let c = ca * cb;
                out.add_term(blade, &if neg { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// `uv - vu` or `uv + vu`.
pub fn bracket(u: &Multivector, v: &Multivector, kind: BracketKind) -> Result<Multivector> {
    let uv = geometric_product(u, v)?;
    let vu = geometric_product(v, u)?;
    match kind {
        BracketKind::Commutator => uv.try_sub(&vu),
        BracketKind::Anticommutator => uv.try_add(&vu),
    }
}

pub fn commutator(u: &Multivector, v: &Multivector) -> Multivector {
    bracket(u, v, BracketKind::Commutator).expect("algebra mismatch")
}

pub fn anticommutator(u: &Multivector, v: &Multivector) -> Multivector {
    bracket(u, v, BracketKind::Anticommutator).expect("algebra mismatch")
}

/// Blades spanning the center of a non-degenerate algebra.
pub fn center_basis(alg: &Algebra) -> Result<Vec<Blade>> {
    if alg.is_degenerate() {
        return Err(Error::DegenerateAlgebra);
    }
    let n = alg.n();
    let mut out = vec![Blade::SCALAR];
    if n % 2 == 1 {
        out.push(Blade((1u32 << n) - 1));
    }
    Ok(out)
}

/// Non-central basis blades, which span the Lie subalgebra used as gauge algebra.
pub fn lie_basis(alg: &Algebra) -> Result<Vec<Blade>> {
    let center = center_basis(alg)?;
    Ok(alg.blades().filter(|b| !center.contains(b)).collect())
}

/// Blades containing at least one degenerate generator; they span the Jacobson radical.
pub fn radical_basis(alg: &Algebra) -> Result<Vec<Blade>> {
    if !alg.is_degenerate() {
        return Err(Error::NonDegenerateAlgebra);
    }
    let degenerate_mask: u32 = ((1u32 << alg.r) - 1) << (alg.p + alg.q);
    Ok(alg.blades().filter(|b| b.0 & degenerate_mask != 0).collect())
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.alg, self)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| {
                if *b == Blade::SCALAR {
                    format!("{c}")
                } else if c.is_one() {
                    format!("{b}")
                } else {
                    format!("{c}{b}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("algebra mismatch")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("algebra mismatch")
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        geometric_product(self, rhs).expect("algebra mismatch")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(&Scalar::from_int(-1))
    }
}
