//! Perturbation series `A_μ = Σ_k ε^k A_μ^{(k)}` around a constant solution of
//! the Yang–Mills equations with `ρ = 1`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{PlaneWaveField, WaveField, WaveVector};
use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::lie_ymp::{anticommutation_theta, Metric, Theta};
use crate::linalg;
use crate::scalar::{rational_to_f64, Rational, Scalar};

/// Orders `A^{(0)}, A^{(1)}, …` of a series, all lower-index potentials on one space.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesField {
    orders: Vec<PlaneWaveField>,
}

impl SeriesField {
    pub fn new(orders: Vec<PlaneWaveField>) -> Result<Self> {
        let first = orders.first().ok_or_else(|| Error::InvalidArgument("series needs an order-0 term".into()))?;
        let (metric, alg) = (first.metric(), first.algebra());
        if let Some(bad) = orders.iter().find(|o| o.metric() != metric || o.algebra() != alg) {
            return Err(Error::InvalidArgument(format!(
                "series orders live on different spaces: {metric}/{alg} vs {}/{}",
                bad.metric(),
                bad.algebra()
            )));
        }
        Ok(SeriesField { orders })
    }

    pub fn orders(&self) -> &[PlaneWaveField] {
        &self.orders
    }

    pub fn order(&self, k: usize) -> Option<&PlaneWaveField> {
        self.orders.get(k)
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn metric(&self) -> Metric {
        self.orders[0].metric()
    }

    pub fn push(&mut self, next: PlaneWaveField) -> Result<()> {
        if next.metric() != self.metric() || next.algebra() != self.orders[0].algebra() {
            return Err(Error::InvalidArgument("order lives on a different space".into()));
        }
        self.orders.push(next);
        Ok(())
    }

    /// `Σ_k ε^k A^{(k)}` for a rational `ε`.
    pub fn evaluate(&self, eps: &Rational) -> PlaneWaveField {
        let mut power = Rational::from_integer(1.into());
        let mut acc = PlaneWaveField::zero(self.metric(), self.orders[0].algebra());
        for o in &self.orders {
            acc = acc.try_plus(&o.scale(&Scalar::from_rational(power.clone()))).expect("same space");
            power *= eps;
        }
        acc
    }
}

/// Derived quantities of one order: `A^μ`, `A_μ`, `∂_μA^μ` and `∂_μA^ν` (row `μ`, column `ν`).
struct OrderTerms {
    upper: Vec<WaveField>,
    lower: Vec<WaveField>,
    div: WaveField,
    grad: Vec<Vec<WaveField>>,
}

impl OrderTerms {
    fn new(a: &PlaneWaveField) -> Self {
        let n = a.dim();
        let upper_field = a.flip_all();
        let upper: Vec<WaveField> = upper_field.components().to_vec();
        let grad = (0..n).map(|mu| upper.iter().map(|u| u.derivative(mu)).collect()).collect();
        OrderTerms { upper, lower: a.components().to_vec(), div: upper_field.divergence_upper(), grad }
    }
}

/// `Q_k^ν`, the `ε^k` coefficient of the Yang–Mills operator (`ρ = 1`), upper index.
fn qk_single(terms: &[OrderTerms], k: usize, metric: &Metric, zero: &WaveField) -> Vec<WaveField> {
    let n = metric.dim();
    let sign = |mu: usize| metric.sign_scalar(mu);
    let get = |l: usize| terms.get(l);
    (0..n)
        .map(|nu| {
            let mut q = zero.clone();
            if let Some(t) = get(k) {
                for mu in 0..n {
                    q = q.plus(&t.grad[mu][nu].derivative(mu).scale(&sign(mu)));
                }
                q = q.minus(&t.div.derivative(nu).scale(&sign(nu)));
            }
            for l in 0..=k {
                let (Some(tl), Some(tr)) = (get(l), get(k - l)) else { continue };
                q = q.minus(&tl.div.commutator(&tr.upper[nu]));
                for mu in 0..n {
                    q = q.minus(&tl.upper[mu].commutator(&tr.grad[mu][nu]));
                }
            }
            for s in 0..=k {
                let Some(outer) = get(k - s) else { continue };
                for mu in 0..n {
                    let mut inner = zero.clone();
                    if let Some(ts) = get(s) {
                        inner = ts.grad[mu][nu].scale(&sign(mu)).minus(&ts.grad[nu][mu].scale(&sign(nu)));
                    }
                    for r in 0..=s {
                        if let (Some(tr), Some(tsr)) = (get(r), get(s - r)) {
                            inner = inner.minus(&tr.upper[mu].commutator(&tsr.upper[nu]));
                        }
                    }
                    q = q.minus(&outer.lower[mu].commutator(&inner));
                }
            }
            q
        })
        .collect()
}

/// `Q_0, …, Q_K` for the series; orders beyond the stored ones count as zero.
pub fn qk_terms(series: &SeriesField, max_order: usize) -> Vec<PlaneWaveField> {
    let metric = series.metric();
    let alg = series.orders[0].algebra();
    let zero = WaveField::zero(alg, metric.dim());
    let terms: Vec<OrderTerms> = series.orders.iter().take(max_order + 1).map(OrderTerms::new).collect();
    (0..=max_order)
        .map(|k| PlaneWaveField::new(metric, alg, qk_single(&terms, k, &metric, &zero)).expect("shape preserved"))
        .collect()
}

/// Part of `Q_k` linear in `A^{(k)} = x` (`k ≥ 1`); depends only on the base `A^{(0)}`.
pub fn linear_part(base: &PlaneWaveField, x: &PlaneWaveField) -> Result<PlaneWaveField> {
    let series = SeriesField::new(vec![base.clone(), x.clone()])?;
    Ok(qk_terms(&series, 1).pop().expect("two orders"))
}

/// Linearization around a constant anticommuting set `γ_μ` (lower index), upper index:
/// `∂_μ∂^μB^ν - ∂^ν∂_μB^μ + [γ^ν,∂_μB^μ] - 2[γ^μ,∂_μB^ν] + [γ_μ,∂^νB^μ]
///  + [γ_μ,[γ^μ,B^ν]] + [γ_μ,[B^μ,γ^ν]] + [B_μ,[γ^μ,γ^ν]]`.
pub fn linearized_residual(b: &PlaneWaveField, gammas: &[Multivector], theta: Theta) -> Result<PlaneWaveField> {
    let metric = b.metric();
    let n = metric.dim();
    if gammas.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: gammas.len() });
    }
    if anticommutation_theta(gammas, &metric) != Some(theta) {
        return Err(Error::InvalidArgument(format!(
            "constant set does not satisfy the anticommutation relations with θ = {}",
            theta.sign()
        )));
    }
    let alg = b.algebra();
    let sign = |mu: usize| metric.sign_scalar(mu);
    let g_low: Vec<WaveField> = gammas.iter().map(|g| WaveField::constant(g.clone(), n)).collect();
    let g_up: Vec<WaveField> = (0..n).map(|mu| g_low[mu].scale(&sign(mu))).collect();
    let bu = b.flip_all();
    let div = bu.divergence_upper();
    let two = Scalar::from_int(2);
    let comps = (0..n)
        .map(|nu| {
            let bn = bu.component(nu);
            let mut q = WaveField::zero(alg, n);
            for mu in 0..n {
                q = q.plus(&bn.derivative(mu).derivative(mu).scale(&sign(mu)));
            }
            q = q.minus(&div.derivative(nu).scale(&sign(nu)));
            q = q.plus(&g_up[nu].commutator(&div));
            for mu in 0..n {
                q = q.minus(&g_up[mu].commutator(&bn.derivative(mu)).scale(&two));
                q = q.plus(&g_low[mu].commutator(&bu.component(mu).derivative(nu).scale(&sign(nu))));
                q = q.plus(&g_low[mu].commutator(&g_up[mu].commutator(bn)));
                q = q.plus(&g_low[mu].commutator(&bu.component(mu).commutator(&g_up[nu])));
                q = q.plus(&b.component(mu).commutator(&g_up[mu].commutator(&g_up[nu])));
            }
            q
        })
        .collect();
    PlaneWaveField::new(metric, alg, comps)
}

/// Result of one order of the perturbative procedure.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderSolution {
    /// Minimum-norm `A^{(k)}` over the requested support, lower index.
    pub field: PlaneWaveField,
    /// `‖Q_k‖` recomputed from the full series.
    pub residual_norm: f64,
    /// Basis of the homogeneous solutions over the same support.
    pub kernel: Vec<PlaneWaveField>,
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = i;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

type RowKey = (WaveVector, usize, Blade);
/// Particular solution and kernel basis of one block, as sparse `(column, value)` lists.
type BlockSolution = (Vec<(usize, Scalar)>, Vec<Vec<(usize, Scalar)>>);

fn rows_of(f: &PlaneWaveField) -> Vec<(RowKey, Scalar)> {
    let mut out = Vec::new();
    for (nu, c) in f.components().iter().enumerate() {
        for (k, amp) in c.waves() {
            for (b, v) in amp.terms() {
                out.push(((k.clone(), nu, b), v.clone()));
            }
        }
    }
    out
}

/// Solves `Q_k = 0` for `A^{(k)}` supported on `support`, given orders `0..k`.
///
/// The unknowns are all blade amplitudes of all components at each support
/// wave; the system is split into blocks of waves it couples and each block is
/// solved by exact minimum-norm least squares. Fails with `Inconsistent` when
/// the recomputed `‖Q_k‖` exceeds `tol`.
pub fn solve_order(series: &SeriesField, k: usize, support: &[WaveVector], tol: f64) -> Result<OrderSolution> {
    if k == 0 {
        return Err(Error::InvalidArgument("order 0 is the nonlinear constant problem".into()));
    }
    if series.len() < k {
        return Err(Error::InvalidArgument(format!("orders 0..{} are required, got {}", k - 1, series.len())));
    }
    let metric = series.metric();
    let n = metric.dim();
    let base = &series.orders[0];
    let alg = base.algebra();
    if let Some(bad) = support.iter().find(|w| w.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
    }
    let prefix = SeriesField::new(series.orders[..k].to_vec())?;
    let inhom = qk_terms(&prefix, k).pop().expect("k + 1 terms");

    let waves: Vec<WaveVector> = support.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    // unknown j ↔ (wave, μ, blade)
    let unknowns: Vec<(usize, usize, Blade)> = waves
        .iter()
        .enumerate()
        .flat_map(|(w, _)| (0..n).flat_map(move |mu| alg.blades().map(move |b| (w, mu, b))))
        .collect();
    let columns: Vec<Vec<(RowKey, Scalar)>> = unknowns
        .par_iter()
        .map(|&(w, mu, b)| {
            let mut amps = vec![Multivector::zero(alg); n];
            amps[mu] = Multivector::basis(alg, b);
            let x = PlaneWaveField::from_waves(metric, alg, &[(waves[w].clone(), amps)]).expect("valid wave");
            rows_of(&linear_part(base, &x).expect("same space"))
        })
        .collect();

    // group support waves that share output waves
    let mut wave_ids: BTreeMap<WaveVector, usize> = waves.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent: Vec<usize> = (0..wave_ids.len()).collect();
    for (col, &(w, _, _)) in columns.iter().zip(&unknowns) {
        for ((kv, _, _), _) in col {
            let next = wave_ids.len();
            let id = *wave_ids.entry(kv.clone()).or_insert(next);
            if id == parent.len() {
                parent.push(id);
            }
            let (a, b) = (find(&mut parent, w), find(&mut parent, id));
            parent[a] = b;
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, &(w, _, _)) in unknowns.iter().enumerate() {
        blocks.entry(find(&mut parent, w)).or_default().push(j);
    }
    let inhom_rows = rows_of(&inhom);
    let block_list: Vec<(usize, Vec<usize>)> = blocks.into_iter().collect();
    let block_ids: BTreeMap<WaveVector, usize> =
        wave_ids.iter().map(|(w, &i)| (w.clone(), find(&mut parent, i))).collect();

    let solved: Vec<BlockSolution> = block_list
        .par_iter()
        .map(|(root, cols)| {
            let mut row_index: BTreeMap<RowKey, usize> = BTreeMap::new();
            for &j in cols {
                for (key, _) in &columns[j] {
                    let next = row_index.len();
                    row_index.entry(key.clone()).or_insert(next);
                }
            }
            for (key, _) in &inhom_rows {
                if block_ids.get(&key.0) == Some(root) {
                    let next = row_index.len();
                    row_index.entry(key.clone()).or_insert(next);
                }
            }
            if row_index.is_empty() {
                let kernel = cols.iter().map(|&j| vec![(j, Scalar::one())]).collect();
                return (Vec::new(), kernel);
            }
            let mut m = linalg::zeros(row_index.len(), cols.len());
            for (c, &j) in cols.iter().enumerate() {
                for (key, v) in &columns[j] {
                    m[row_index[key]][c] = v.clone();
                }
            }
            let mut rhs = vec![Scalar::zero(); row_index.len()];
            for (key, v) in &inhom_rows {
                if let Some(&r) = row_index.get(key) {
                    rhs[r] = -v.clone();
                }
            }
            let (x, _) = linalg::min_norm_least_squares(&m, &rhs);
            let solution = cols.iter().zip(x).filter(|(_, v)| !v.is_zero()).map(|(&j, v)| (j, v)).collect();
            let kernel = linalg::nullspace(&m)
                .into_iter()
                .map(|v| cols.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(&j, c)| (j, c)).collect())
                .collect();
            (solution, kernel)
        })
        .collect();

    let assemble = |entries: &[(usize, Scalar)]| {
        let mut comps = vec![WaveField::zero(alg, n); n];
        for (j, v) in entries {
            let (w, mu, b) = unknowns[*j];
            comps[mu].add_wave(waves[w].clone(), &Multivector::term(alg, b, v.clone()));
        }
        PlaneWaveField::new(metric, alg, comps).expect("shape preserved")
    };
    let all: Vec<(usize, Scalar)> = solved.iter().flat_map(|(s, _)| s.iter().cloned()).collect();
    let field = assemble(&all);
    let kernel = solved.iter().flat_map(|(_, ks)| ks.iter().map(|kv| assemble(kv))).collect();

    let mut full = prefix;
    full.push(field.clone())?;
    let qk = qk_terms(&full, k).pop().expect("k + 1 terms");
    let residual_norm = rational_to_f64(&qk.norm_sq()).sqrt();
    if residual_norm > tol {
        return Err(Error::Inconsistent(residual_norm));
    }
    Ok(OrderSolution { field, residual_norm, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Algebra;

    fn gamma_base() -> (Metric, Algebra, Vec<Multivector>, PlaneWaveField) {
        let metric = Metric::minkowski();
        let alg = Algebra::complex(1, 3);
        let gammas: Vec<_> = (1..=4).map(|i| Multivector::generator(alg, i)).collect();
        let base = PlaneWaveField::constant(metric, &gammas).unwrap();
        (metric, alg, gammas, base)
    }

    #[test]
    fn q0_is_the_constant_current() {
        let (metric, _, gammas, base) = gamma_base();
        let q = qk_terms(&SeriesField::new(vec![base.clone()]).unwrap(), 3);
        let expected = base.flip_all().scale(&Scalar::from_int(12));
        assert_eq!(q[0], expected);
        assert!(q[1..].iter().all(PlaneWaveField::is_zero));
        assert_eq!(q[0].metric(), metric);
        assert_eq!(gammas.len(), 4);
    }

    #[test]
    fn central_null_wave_solves_linearization() {
        let (metric, alg, gammas, base) = gamma_base();
        let b = PlaneWaveField::abelian(
            metric,
            alg,
            &[(WaveVector::from_ints(&[1, 1, 0, 0]), [0, 0, 1, 0].map(Scalar::from_int).to_vec())],
        )
        .unwrap();
        let q = qk_terms(&SeriesField::new(vec![base, b.clone()]).unwrap(), 1);
        assert!(q[1].is_zero());
        assert!(linearized_residual(&b, &gammas, Theta::Plus).unwrap().is_zero());
        assert!(linearized_residual(&b, &gammas, Theta::Minus).is_err());
    }

    #[test]
    fn constant_perturbation_matches_linearization() {
        let (_, _, gammas, base) = gamma_base();
        let b = base.scale(&Scalar::from_ratio(2, 5));
        let q1 = linear_part(&base, &b).unwrap();
        assert_eq!(q1, linearized_residual(&b, &gammas, Theta::Plus).unwrap());
        assert!(linearized_residual(&PlaneWaveField::zero(base.metric(), base.algebra()), &gammas, Theta::Plus)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn empty_support_with_zero_source() {
        let (_, _, _, base) = gamma_base();
        let s = SeriesField::new(vec![base]).unwrap();
        let sol = solve_order(&s, 1, &[], 1e-12).unwrap();
        assert!(sol.field.is_zero());
        assert_eq!(sol.residual_norm, 0.0);
        assert!(solve_order(&s, 0, &[], 1e-12).is_err());
        assert!(solve_order(&s, 2, &[], 1e-12).is_err());
    }

    #[test]
    fn second_order_with_noncentral_first_order() {
        let (metric, alg, _, base) = gamma_base();
        let k = WaveVector::from_ints(&[1, 1, 0, 0]);
        let e = |ix: &[usize]| Multivector::product_of_generators(alg, ix);
        let b = PlaneWaveField::single_wave(
            metric,
            k.clone(),
            vec![e(&[3, 4]), e(&[3, 4]), &e(&[2, 4]) - &e(&[1, 4]), Multivector::zero(alg)],
        )
        .unwrap();
        let mut s = SeriesField::new(vec![base]).unwrap();
        s.push(b).unwrap();
        let q = qk_terms(&s, 2);
        assert!(q[1].is_zero());
        assert!(!q[2].is_zero());
        let double = k.plus(&k);
        assert_eq!(q[2].support(), vec![double.clone()]);
        let sol = solve_order(&s, 2, &[double], 1e-9).unwrap();
        assert!(sol.residual_norm <= 1e-9);
        assert!(!sol.field.is_zero());
        // without the doubled wave the source cannot be matched
        assert!(matches!(solve_order(&s, 2, &[k], 1e-9), Err(Error::Inconsistent(_))));
    }
}
