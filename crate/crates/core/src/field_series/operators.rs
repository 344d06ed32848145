use num_traits::Zero;

use super::{PlaneWaveField, WaveField, WaveVector};
use crate::clifford::{Algebra, Multivector};
use crate::error::{Error, Result};
use crate::lie_ymp::{Metric, Theta};
use crate::scalar::{Rational, Scalar};

/// Coupling, mass term and sign convention of the Yang–Mills–Proca system.
///
/// The mass enters only through `m²`, which may be negative: constant
/// solutions with `λ = -m²/ρ² > 0` need it.
#[derive(Clone, Debug, PartialEq)]
pub struct YmpParams {
    pub rho: Rational,
    pub mass_sq: Rational,
    pub theta: Theta,
}

impl YmpParams {
    pub fn new(rho: Rational, mass_sq: Rational, theta: Theta) -> Self {
        YmpParams { rho, mass_sq, theta }
    }

    /// Parameters with `ρ = 1` and `m² = -λ`.
    pub fn from_lambda(lambda: &Rational, theta: Theta) -> Self {
        YmpParams { rho: Rational::from_integer(1.into()), mass_sq: -lambda.clone(), theta }
    }

    /// `λ = -m²/ρ²`.
    pub fn lambda(&self) -> Result<Rational> {
        if self.rho.is_zero() {
            return Err(Error::InvalidArgument("λ is undefined for ρ = 0".into()));
        }
        Ok(-self.mass_sq.clone() / (&self.rho * &self.rho))
    }
}

fn rho_scalar(rho: &Rational) -> Scalar {
    Scalar::from_rational(rho.clone())
}

fn sign(metric: &Metric, mu: usize) -> Scalar {
    metric.sign_scalar(mu)
}

/// `F_{μν}` for `μ < ν`; the other entries follow by antisymmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldStrength {
    metric: Metric,
    alg: Algebra,
    upper_triangle: Vec<WaveField>,
}

impl FieldStrength {
    fn slot(&self, mu: usize, nu: usize) -> usize {
        let n = self.metric.dim();
        mu * n - mu * (mu + 1) / 2 + (nu - mu - 1)
    }

    /// `F_{μν}` with lower indices.
    pub fn get(&self, mu: usize, nu: usize) -> WaveField {
        match mu.cmp(&nu) {
            std::cmp::Ordering::Less => self.upper_triangle[self.slot(mu, nu)].clone(),
            std::cmp::Ordering::Greater => self.upper_triangle[self.slot(nu, mu)].scale(&Scalar::from_int(-1)),
            std::cmp::Ordering::Equal => WaveField::zero(self.alg, self.metric.dim()),
        }
    }

    /// `F^{μν} = η^{μμ}η^{νν}F_{μν}`.
    pub fn raised(&self, mu: usize, nu: usize) -> WaveField {
        let f = self.get(mu, nu);
        if self.metric.sign(mu) * self.metric.sign(nu) > 0 {
            f
        } else {
            f.scale(&Scalar::from_int(-1))
        }
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }
}

/// `F_{μν} = ∂_μA_ν - ∂_νA_μ - ρ[A_μ,A_ν]`.
pub fn field_strength(a: &PlaneWaveField, rho: &Rational) -> FieldStrength {
    let n = a.dim();
    let r = rho_scalar(rho);
    let mut upper_triangle = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for mu in 0..n {
        for nu in (mu + 1)..n {
            let (am, an) = (a.component(mu), a.component(nu));
            let mut f = an.derivative(mu).minus(&am.derivative(nu));
            if !r.is_zero() {
                f = f.minus(&am.commutator(an).scale(&r));
            }
            upper_triangle.push(f);
        }
    }
    FieldStrength { metric: a.metric(), alg: a.algebra(), upper_triangle }
}

/// `J^ν = ∂_μF^{μν} - ρ[A_μ,F^{μν}]`, upper index.
pub fn ym_current(a: &PlaneWaveField, rho: &Rational) -> PlaneWaveField {
    let n = a.dim();
    let f = field_strength(a, rho);
    let r = rho_scalar(rho);
    let comps = (0..n)
        .map(|nu| {
            (0..n).fold(WaveField::zero(a.algebra(), n), |acc, mu| {
                let fmn = f.raised(mu, nu);
                let mut term = fmn.derivative(mu);
                if !r.is_zero() {
                    term = term.minus(&a.component(mu).commutator(&fmn).scale(&r));
                }
                acc.plus(&term)
            })
        })
        .collect();
    PlaneWaveField::new(a.metric(), a.algebra(), comps).expect("shape preserved")
}

/// `∂_νJ^ν - ρ[A_ν,J^ν]` for an upper-index `J`; vanishes identically when `J = ym_current(A, ρ)`.
pub fn conservation_defect(a: &PlaneWaveField, j: &PlaneWaveField, rho: &Rational) -> Result<WaveField> {
    if a.metric() != j.metric() || a.algebra() != j.algebra() {
        return Err(Error::InvalidArgument("potential and current live on different spaces".into()));
    }
    let r = rho_scalar(rho);
    let n = a.dim();
    Ok((0..n).fold(WaveField::zero(a.algebra(), n), |acc, nu| {
        let jn = j.component(nu);
        acc.plus(&jn.derivative(nu)).minus(&a.component(nu).commutator(jn).scale(&r))
    }))
}

/// Left side of the second-order Yang–Mills equation minus the given upper-index source.
pub fn ym_residual(a: &PlaneWaveField, j: &PlaneWaveField, rho: &Rational) -> Result<PlaneWaveField> {
    ym_current(a, rho).try_minus(j)
}

/// Second-order form valid under `∂_μA^μ = 0`:
/// `∂_μ∂^μA^ν - 2ρ[A^μ,∂_μA^ν] + ρ[A_μ,∂^νA^μ] + ρ²[A_μ,[A^μ,A^ν]] + m²A^ν`.
fn ymp_lorentz_form(a: &PlaneWaveField, params: &YmpParams) -> PlaneWaveField {
    let n = a.dim();
    let metric = a.metric();
    let alg = a.algebra();
    let r = rho_scalar(&params.rho);
    let r2 = &r * &r;
    let m2 = Scalar::from_rational(params.mass_sq.clone());
    let upper = a.flip_all();
    let comps = (0..n)
        .map(|nu| {
            let an = upper.component(nu);
            let mut acc = an.scale(&m2);
            for mu in 0..n {
                let s = sign(&metric, mu);
                acc = acc.plus(&an.derivative(mu).derivative(mu).scale(&s));
                acc =
                    acc.minus(&upper.component(mu).commutator(&an.derivative(mu)).scale(&(&r * &Scalar::from_int(2))));
                let d_nu_upper = upper.component(mu).derivative(nu).scale(&sign(&metric, nu));
                acc = acc.plus(&a.component(mu).commutator(&d_nu_upper).scale(&r));
                let inner = upper.component(mu).commutator(an);
                acc = acc.plus(&a.component(mu).commutator(&inner).scale(&r2));
            }
            acc
        })
        .collect();
    PlaneWaveField::new(metric, alg, comps).expect("shape preserved")
}

/// Yang–Mills–Proca residual `J^ν(A) + m²A^ν`, upper index.
///
/// When `∂_μA^μ = 0` the Lorentz-gauge form is evaluated as well and must agree.
pub fn ymp_residual_field(a: &PlaneWaveField, params: &YmpParams) -> Result<PlaneWaveField> {
    let m2 = Scalar::from_rational(params.mass_sq.clone());
    let full = ym_current(a, &params.rho).try_plus(&a.flip_all().scale(&m2))?;
    if a.divergence().is_zero() && ymp_lorentz_form(a, params) != full {
        return Err(Error::FormMismatch);
    }
    Ok(full)
}

fn require_abelian(f: &PlaneWaveField) -> Result<()> {
    if f.is_abelian() {
        Ok(())
    } else {
        Err(Error::NonAbelian)
    }
}

/// `∂_μ∂^μa^ν - ∂^ν∂_μa^μ` for a lower-index potential, upper index.
pub fn maxwell_operator(a: &PlaneWaveField) -> PlaneWaveField {
    let n = a.dim();
    let metric = a.metric();
    let upper = a.flip_all();
    let div = upper.divergence_upper();
    let comps = (0..n)
        .map(|nu| {
            let an = upper.component(nu);
            let box_term = (0..n).fold(WaveField::zero(a.algebra(), n), |acc, mu| {
                acc.plus(&an.derivative(mu).derivative(mu).scale(&sign(&metric, mu)))
            });
            box_term.minus(&div.derivative(nu).scale(&sign(&metric, nu)))
        })
        .collect();
    PlaneWaveField::new(metric, a.algebra(), comps).expect("shape preserved")
}

/// Maxwell residual for an abelian potential `a` and upper-index current `j`.
pub fn maxwell_residual(a: &PlaneWaveField, j: &PlaneWaveField) -> Result<PlaneWaveField> {
    require_abelian(a)?;
    require_abelian(j)?;
    maxwell_operator(a).try_minus(j)
}

/// `a_μ → a_μ + ∂_μσ`.
pub fn abelian_gauge_shift(a: &PlaneWaveField, sigma: &WaveField) -> Result<PlaneWaveField> {
    require_abelian(a)?;
    if !sigma.is_abelian() {
        return Err(Error::NonAbelian);
    }
    if sigma.algebra() != a.algebra() || sigma.dim() != a.dim() {
        return Err(Error::InvalidArgument("gauge function lives on a different space".into()));
    }
    let comps = (0..a.dim()).map(|mu| a.component(mu).plus(&sigma.derivative(mu))).collect();
    PlaneWaveField::new(a.metric(), a.algebra(), comps)
}

/// Waves of an upper-index current violating `k_μj^μ = 0` or `(m² - k²) j = 0`.
pub fn proca_preconditions(j: &PlaneWaveField, mass: &Rational) -> Vec<(WaveVector, String)> {
    let metric = j.metric();
    let m2 = mass * mass;
    let mut bad = Vec::new();
    for (k, amps) in j.waves() {
        let dot = amps.iter().enumerate().fold(Multivector::zero(j.algebra()), |acc, (mu, c)| {
            &acc + &c.scale(&Scalar::from_rational(k.get(mu).clone()))
        });
        if !dot.is_zero() {
            bad.push((k.clone(), "current is not divergence-free (k_μ j^μ ≠ 0)".to_string()));
        }
        if k.square(&metric) != m2 {
            bad.push((k, format!("wavevector is off the mass shell (k² ≠ m² = {m2})")));
        }
    }
    bad
}

/// Exact checks passed by the constructed Proca potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProcaCertificate {
    /// `∂_μf^{μν} + m²a^ν = 0`.
    pub proca: bool,
    /// `∂_μ∂^μa^ν + m²a^ν = 0`.
    pub klein_gordon: bool,
    /// `∂_μa^μ = 0`.
    pub lorentz: bool,
    /// `a` solves Maxwell's equations with the given current.
    pub maxwell: bool,
}

impl ProcaCertificate {
    pub fn all(&self) -> bool {
        self.proca && self.klein_gordon && self.lorentz && self.maxwell
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProcaSolution {
    /// Lower-index potential `a_μ = -j_μ/m²`.
    pub potential: PlaneWaveField,
    pub certificate: ProcaCertificate,
}

/// Potential `a_μ = -j_μ/m²` for an abelian, divergence-free, on-shell current.
pub fn proca_from_current(j: &PlaneWaveField, mass: &Rational) -> Result<ProcaSolution> {
    if mass.is_zero() {
        return Err(Error::InvalidArgument("mass must be nonzero".into()));
    }
    require_abelian(j)?;
    let bad = proca_preconditions(j, mass);
    if let Some((k, reason)) = bad.first() {
        let reason =
            if bad.len() > 1 { format!("{reason} (and {} more violations)", bad.len() - 1) } else { reason.clone() };
        return Err(Error::WavePrecondition { wave: k.to_string(), reason });
    }
    let m2 = Scalar::from_rational(mass * mass);
    let inv = Scalar::from_int(-1) * m2.inv().expect("nonzero mass");
    let potential = j.flip_all().scale(&inv);
    let metric = j.metric();
    let n = metric.dim();
    let upper = potential.flip_all();
    let maxwell_lhs = maxwell_operator(&potential);
    let proca = maxwell_lhs.try_plus(&upper.scale(&m2))?.is_zero();
    let kg = (0..n).all(|nu| {
        let an = upper.component(nu);
        (0..n)
            .fold(an.scale(&m2), |acc, mu| acc.plus(&an.derivative(mu).derivative(mu).scale(&sign(&metric, mu))))
            .is_zero()
    });
    let lorentz = potential.divergence().is_zero();
    let maxwell = maxwell_lhs.try_minus(j)?.is_zero();
    Ok(ProcaSolution { potential, certificate: ProcaCertificate { proca, klein_gordon: kg, lorentz, maxwell } })
}
