//! Fields on `R^{p,q}` given as finite sums of plane waves `Σ_k C_k e^{ik·x}`
//! with Clifford-algebra coefficients.
//!
//! Wavevectors carry lower indices `k_μ`, so `∂_μ` multiplies the amplitude
//! at `k` by `i k_μ`. Amplitudes are complex even over a real algebra; a real
//! field is a sum over conjugate pairs `±k`.

mod operators;
mod series;

pub use operators::{
    abelian_gauge_shift, conservation_defect, field_strength, maxwell_operator, maxwell_residual, proca_from_current,
    proca_preconditions, ym_current, ym_residual, ymp_residual_field, FieldStrength, ProcaCertificate, ProcaSolution,
    YmpParams,
};
pub use series::{linear_part, linearized_residual, qk_terms, solve_order, OrderSolution, SeriesField};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::clifford::{Algebra, Multivector};
use crate::error::{Error, Result};
use crate::lie_ymp::Metric;
use crate::scalar::{format_rational, rational_to_f64, Rational, Scalar};

/// Covector `k_μ` with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WaveVector(Vec<Rational>);

impl WaveVector {
    pub fn new(k: Vec<Rational>) -> Self {
        WaveVector(k)
    }

    pub fn zero(n: usize) -> Self {
        WaveVector(vec![Rational::zero(); n])
    }

    pub fn from_ints(k: &[i64]) -> Self {
        WaveVector(k.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, mu: usize) -> &Rational {
        &self.0[mu]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn plus(&self, other: &WaveVector) -> WaveVector {
        WaveVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> WaveVector {
        WaveVector(self.0.iter().map(|a| -a.clone()).collect())
    }

    /// `k_μ k^μ`.
    pub fn square(&self, metric: &Metric) -> Rational {
        metric.square(&self.0)
    }

    /// `k^μ` as a contravariant vector.
    pub fn raised(&self, metric: &Metric) -> Vec<Rational> {
        self.0.iter().enumerate().map(|(mu, v)| Rational::from_integer(metric.sign(mu).into()) * v).collect()
    }

    /// Dot product with `x^μ` in floating point.
    pub fn phase(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(k, xi)| rational_to_f64(k) * xi).sum()
    }
}

impl fmt::Display for WaveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Single algebra-valued function `Σ_k C_k e^{ik·x}`; zero amplitudes are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveField {
    alg: Algebra,
    dim: usize,
    waves: BTreeMap<WaveVector, Multivector>,
}

impl WaveField {
    pub fn zero(alg: Algebra, dim: usize) -> Self {
        WaveField { alg, dim, waves: BTreeMap::new() }
    }

    pub fn constant(c: Multivector, dim: usize) -> Self {
        WaveField::wave(WaveVector::zero(dim), c)
    }

    pub fn wave(k: WaveVector, c: Multivector) -> Self {
        let mut f = WaveField::zero(c.algebra(), k.dim());
        f.add_wave(k, &c);
        f
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    /// Dimension of the underlying space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn waves(&self) -> impl Iterator<Item = (&WaveVector, &Multivector)> {
        self.waves.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &WaveVector> {
        self.waves.keys()
    }

    pub fn amplitude(&self, k: &WaveVector) -> Multivector {
        self.waves.get(k).cloned().unwrap_or_else(|| Multivector::zero(self.alg))
    }

    pub fn is_zero(&self) -> bool {
        self.waves.is_empty()
    }

    /// Every amplitude is a multiple of the identity.
    pub fn is_abelian(&self) -> bool {
        self.waves.values().all(Multivector::is_scalar)
    }

    pub fn add_wave(&mut self, k: WaveVector, c: &Multivector) {
        assert_eq!(k.dim(), self.dim, "wavevector dimension");
        assert_eq!(c.algebra(), self.alg, "amplitude algebra");
        if c.is_zero() {
            return;
        }
        match self.waves.entry(k) {
            Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    fn check(&self, other: &WaveField) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg.to_string(), other.alg.to_string()));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn plus(&self, other: &WaveField) -> WaveField {
        self.check(other).expect("incompatible fields");
        let mut out = self.clone();
        for (k, c) in &other.waves {
            out.add_wave(k.clone(), c);
        }
        out
    }

    pub fn minus(&self, other: &WaveField) -> WaveField {
        self.plus(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> WaveField {
        if s.is_zero() {
            return WaveField::zero(self.alg, self.dim);
        }
        WaveField {
            alg: self.alg,
            dim: self.dim,
            waves: self.waves.iter().map(|(k, c)| (k.clone(), c.scale(s))).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> WaveField {
        self.scale(&Scalar::from_rational(r.clone()))
    }

    /// Applies `f` to every amplitude (for constant left/right multiplications).
    pub fn map(&self, f: impl Fn(&Multivector) -> Multivector) -> WaveField {
        let mut out = WaveField::zero(self.alg, self.dim);
        for (k, c) in &self.waves {
            out.add_wave(k.clone(), &f(c));
        }
        out
    }

    /// Pointwise geometric product: amplitudes multiply, wavevectors add.
    pub fn try_product(&self, other: &WaveField) -> Result<WaveField> {
        self.check(other)?;
        let mut out = WaveField::zero(self.alg, self.dim);
        for (k1, c1) in &self.waves {
            for (k2, c2) in &other.waves {
                out.add_wave(k1.plus(k2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn product(&self, other: &WaveField) -> WaveField {
        self.try_product(other).expect("incompatible fields")
    }

    pub fn commutator(&self, other: &WaveField) -> WaveField {
        self.product(other).minus(&other.product(self))
    }

    /// `∂_μ`: amplitude at `k` times `i k_μ`.
    pub fn derivative(&self, mu: usize) -> WaveField {
        let mut out = WaveField::zero(self.alg, self.dim);
        for (k, c) in &self.waves {
            let ik = Scalar::new(Rational::zero(), k.get(mu).clone());
            out.add_wave(k.clone(), &c.scale(&ik));
        }
        out
    }

    /// Sum of squared amplitude norms.
    pub fn norm_sq(&self) -> Rational {
        self.waves.values().fold(Rational::zero(), |acc, c| acc + c.norm_sq())
    }

    /// Dense blade coordinates of the field value at the point `x`.
    pub fn eval(&self, x: &[f64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); self.alg.dim()];
        for (k, c) in &self.waves {
            let phase = Complex64::from_polar(1.0, k.phase(x));
            for (b, coef) in c.terms() {
                out[b.0 as usize] += coef.to_c64() * phase;
            }
        }
        out
    }
}

/// Covector or vector of wave fields on `R^{p,q}`.
///
/// Potentials are stored with lower indices. Currents and residuals returned
/// by the operators carry upper indices; each operation states which.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneWaveField {
    metric: Metric,
    alg: Algebra,
    components: Vec<WaveField>,
}

impl PlaneWaveField {
    pub fn new(metric: Metric, alg: Algebra, components: Vec<WaveField>) -> Result<Self> {
        let n = metric.dim();
        if components.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: components.len() });
        }
        for c in &components {
            if c.alg != alg {
                return Err(Error::AlgebraMismatch(alg.to_string(), c.alg.to_string()));
            }
            if c.dim != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.dim });
            }
        }
        Ok(PlaneWaveField { metric, alg, components })
    }

    pub fn zero(metric: Metric, alg: Algebra) -> Self {
        PlaneWaveField { metric, alg, components: vec![WaveField::zero(alg, metric.dim()); metric.dim()] }
    }

    /// Constant field with the given components.
    pub fn constant(metric: Metric, components: &[Multivector]) -> Result<Self> {
        let alg = components
            .first()
            .map(Multivector::algebra)
            .ok_or(Error::DimensionMismatch { expected: metric.dim(), found: 0 })?;
        let comps = components.iter().map(|c| WaveField::constant(c.clone(), metric.dim())).collect();
        PlaneWaveField::new(metric, alg, comps)
    }

    /// Field from per-wavevector covectors of amplitudes.
    pub fn from_waves(metric: Metric, alg: Algebra, waves: &[(WaveVector, Vec<Multivector>)]) -> Result<Self> {
        let n = metric.dim();
        let mut out = PlaneWaveField::zero(metric, alg);
        for (k, coeffs) in waves {
            if k.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: k.dim() });
            }
            if coeffs.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: coeffs.len() });
            }
            for (mu, c) in coeffs.iter().enumerate() {
                if c.algebra() != alg {
                    return Err(Error::AlgebraMismatch(alg.to_string(), c.algebra().to_string()));
                }
                out.components[mu].add_wave(k.clone(), c);
            }
        }
        Ok(out)
    }

    /// Single wave `k` with amplitude covector `coeffs`.
    pub fn single_wave(metric: Metric, k: WaveVector, coeffs: Vec<Multivector>) -> Result<Self> {
        let alg = coeffs
            .first()
            .map(Multivector::algebra)
            .ok_or(Error::DimensionMismatch { expected: metric.dim(), found: 0 })?;
        PlaneWaveField::from_waves(metric, alg, &[(k, coeffs)])
    }

    /// Abelian field `b_μ(k)·e` from rational amplitude covectors.
    pub fn abelian(metric: Metric, alg: Algebra, waves: &[(WaveVector, Vec<Scalar>)]) -> Result<Self> {
        let lifted: Vec<(WaveVector, Vec<Multivector>)> = waves
            .iter()
            .map(|(k, b)| (k.clone(), b.iter().map(|s| Multivector::scalar(alg, s.clone())).collect()))
            .collect();
        PlaneWaveField::from_waves(metric, alg, &lifted)
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn component(&self, mu: usize) -> &WaveField {
        &self.components[mu]
    }

    pub fn components(&self) -> &[WaveField] {
        &self.components
    }

    /// Component with the index moved by `η_{μμ}`.
    pub fn flipped(&self, mu: usize) -> WaveField {
        if self.metric.sign(mu) > 0 {
            self.components[mu].clone()
        } else {
            self.components[mu].scale(&Scalar::from_int(-1))
        }
    }

    /// The same field with every index moved by the metric.
    pub fn flip_all(&self) -> PlaneWaveField {
        let components = (0..self.dim()).map(|mu| self.flipped(mu)).collect();
        PlaneWaveField { metric: self.metric, alg: self.alg, components }
    }

    /// Union of the component supports.
    pub fn support(&self) -> Vec<WaveVector> {
        let mut all: Vec<WaveVector> = self.components.iter().flat_map(|c| c.support().cloned()).collect();
        all.sort();
        all.dedup();
        all
    }

    /// Amplitude covector at `k`.
    pub fn amplitudes(&self, k: &WaveVector) -> Vec<Multivector> {
        self.components.iter().map(|c| c.amplitude(k)).collect()
    }

    pub fn waves(&self) -> Vec<(WaveVector, Vec<Multivector>)> {
        self.support()
            .into_iter()
            .map(|k| {
                let a = self.amplitudes(&k);
                (k, a)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(WaveField::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.support().iter().all(WaveVector::is_zero)
    }

    pub fn is_abelian(&self) -> bool {
        self.components.iter().all(WaveField::is_abelian)
    }

    /// `∂_μ V^μ`, with the stored components read as upper-index.
    pub fn divergence_upper(&self) -> WaveField {
        (0..self.dim())
            .fold(WaveField::zero(self.alg, self.dim()), |acc, mu| acc.plus(&self.components[mu].derivative(mu)))
    }

    /// `∂_μ A^μ` for a lower-index potential.
    pub fn divergence(&self) -> WaveField {
        self.flip_all().divergence_upper()
    }

    fn check(&self, other: &PlaneWaveField) -> Result<()> {
        if self.metric != other.metric {
            return Err(Error::InvalidArgument(format!("metrics differ: {} vs {}", self.metric, other.metric)));
        }
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg.to_string(), other.alg.to_string()));
        }
        Ok(())
    }

    pub fn try_plus(&self, other: &PlaneWaveField) -> Result<PlaneWaveField> {
        self.check(other)?;
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.plus(b)).collect();
        Ok(PlaneWaveField { metric: self.metric, alg: self.alg, components })
    }

    pub fn try_minus(&self, other: &PlaneWaveField) -> Result<PlaneWaveField> {
        self.try_plus(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> PlaneWaveField {
        self.map_components(|c| c.scale(s))
    }

    pub fn map_components(&self, f: impl Fn(&WaveField) -> WaveField) -> PlaneWaveField {
        PlaneWaveField { metric: self.metric, alg: self.alg, components: self.components.iter().map(f).collect() }
    }

    pub fn norm_sq(&self) -> Rational {
        self.components.iter().fold(Rational::zero(), |acc, c| acc + c.norm_sq())
    }

    /// Euclidean norm of all amplitudes.
    pub fn norm(&self) -> f64 {
        rational_to_f64(&self.norm_sq()).sqrt()
    }

    /// `S⁻¹ X S` applied to every amplitude.
    pub fn conjugate(&self, s: &Multivector) -> Result<PlaneWaveField> {
        if s.algebra() != self.alg {
            return Err(Error::AlgebraMismatch(self.alg.to_string(), s.algebra().to_string()));
        }
        let inv = s.inverse()?;
        Ok(self.map_components(|c| c.map(|a| &(&inv * a) * s)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> Algebra {
        Algebra::complex(1, 3)
    }

    #[test]
    fn derivative_of_waves() {
        let e1 = Multivector::generator(alg(), 1);
        assert!(WaveField::constant(e1.clone(), 4).derivative(2).is_zero());
        let k = WaveVector::from_ints(&[3, 0, -2, 0]);
        let f = WaveField::wave(k.clone(), e1.clone());
        let d = f.derivative(2);
        assert_eq!(d.amplitude(&k), e1.scale(&Scalar::new(Rational::zero(), Rational::from_integer((-2).into()))));
        assert_eq!(d.support().count(), 1);
    }

    #[test]
    fn products_add_wavevectors() {
        let e1 = Multivector::generator(alg(), 1);
        let e2 = Multivector::generator(alg(), 2);
        let k1 = WaveVector::from_ints(&[1, 0, 0, 0]);
        let k2 = WaveVector::from_ints(&[0, 2, 0, 1]);
        let f = WaveField::wave(k1.clone(), e1.clone());
        let g = WaveField::wave(k2.clone(), e2.clone());
        let fg = f.product(&g);
        assert_eq!(fg.support().cloned().collect::<Vec<_>>(), vec![k1.plus(&k2)]);
        assert_eq!(fg.amplitude(&k1.plus(&k2)), &e1 * &e2);
        let one = WaveField::constant(Multivector::identity(alg()), 4);
        assert_eq!(f.product(&one), f);
        // opposite waves cancel into a constant
        let back = WaveField::wave(k1.neg(), e1.clone());
        assert_eq!(f.product(&back), WaveField::constant(Multivector::identity(alg()), 4));
    }

    #[test]
    fn cancelling_amplitudes_leave_no_entry() {
        let e1 = Multivector::generator(alg(), 1);
        let k = WaveVector::from_ints(&[1, 1, 0, 0]);
        let f = WaveField::wave(k.clone(), e1.clone());
        assert!(f.minus(&f).is_zero());
        assert_eq!(f.minus(&f).support().count(), 0);
    }

    #[test]
    fn divergence_and_flip() {
        let metric = Metric::minkowski();
        let e = |i| Multivector::generator(alg(), i);
        let k = WaveVector::from_ints(&[1, 1, 0, 0]);
        // A_μ = k_μ C is a gradient, so ∂_μA^μ = -k² C = 0 for null k
        let a = PlaneWaveField::single_wave(
            metric,
            k.clone(),
            vec![e(1), e(1), Multivector::zero(alg()), Multivector::zero(alg())],
        )
        .unwrap();
        assert!(a.divergence().is_zero());
        assert_eq!(a.flip_all().component(1), &a.component(1).scale(&Scalar::from_int(-1)));
        assert!(PlaneWaveField::new(metric, alg(), vec![]).is_err());
    }

    #[test]
    fn evaluation_matches_amplitudes_at_origin() {
        let e1 = Multivector::generator(alg(), 1);
        let f = WaveField::wave(WaveVector::from_ints(&[1, 2, 3, 4]), e1.scale(&Scalar::from_ratio(1, 2)));
        let v = f.eval(&[0.0; 4]);
        assert_eq!(v[1], Complex64::new(0.5, 0.0));
        let w = f.eval(&[std::f64::consts::PI, 0.0, 0.0, 0.0]);
        assert!((w[1] - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
    }
}
