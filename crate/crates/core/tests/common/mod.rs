#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ymp_core::clifford::{Algebra, Blade, Multivector};
use ymp_core::field_series::{PlaneWaveField, WaveVector};
use ymp_core::lie_ymp::Metric;
use ymp_core::scalar::{rational, Rational, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rational(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn small_scalar<R: Rng>(rng: &mut R, complex: bool) -> Scalar {
    let im = if complex && rng.gen_bool(0.5) { small_rational(rng) } else { Rational::from_integer(0.into()) };
    Scalar::new(small_rational(rng), im)
}

/// Random element with at most `terms` nonzero blades.
pub fn random_multivector<R: Rng>(rng: &mut R, alg: Algebra, terms: usize) -> Multivector {
    let terms = (0..terms).map(|_| (Blade(rng.gen_range(0..alg.dim() as u32)), small_scalar(rng, alg.is_complex())));
    Multivector::from_terms(alg, terms.collect::<Vec<_>>())
}

pub fn random_wave_vector<R: Rng>(rng: &mut R, dim: usize) -> WaveVector {
    WaveVector::from_ints(&(0..dim).map(|_| rng.gen_range(-2..=2)).collect::<Vec<_>>())
}

/// Potential with `waves` random wavevectors and sparse random amplitudes.
pub fn random_plane_wave<R: Rng>(
    rng: &mut R,
    metric: Metric,
    alg: Algebra,
    waves: usize,
    terms: usize,
) -> PlaneWaveField {
    let list: Vec<_> = (0..waves)
        .map(|_| {
            let k = random_wave_vector(rng, metric.dim());
            let amps = (0..metric.dim()).map(|_| random_multivector(rng, alg, terms)).collect();
            (k, amps)
        })
        .collect();
    PlaneWaveField::from_waves(metric, alg, &list).unwrap()
}

/// Product of two blades by reducing the word of generators: adjacent
/// transpositions flip the sign and adjacent repeats contract to their square.
pub fn oracle_blade_product(alg: &Algebra, a: u32, b: u32) -> Option<(f64, u32)> {
    let letters = |m: u32| (1..=alg.n()).filter(move |&i| m & (1 << (i - 1)) != 0);
    let mut word: Vec<usize> = letters(a).chain(letters(b)).collect();
    let mut sign = 1.0;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if word[i] == word[i + 1] {
                match alg.generator_square(word[i]) {
                    0 => return None,
                    s => sign *= f64::from(s),
                }
                word.drain(i..i + 2);
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    Some((sign, word.iter().fold(0, |m, &i| m | (1 << (i - 1)))))
}

/// Dense geometric product built from `oracle_blade_product`.
pub fn oracle_dense_product(alg: &Algebra, u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); alg.dim()];
    for (a, x) in u.iter().enumerate() {
        if x.norm() == 0.0 {
            continue;
        }
        for (b, y) in v.iter().enumerate() {
            if y.norm() == 0.0 {
                continue;
            }
            if let Some((s, m)) = oracle_blade_product(alg, a as u32, b as u32) {
                out[m as usize] += x * y * s;
            }
        }
    }
    out
}

pub fn dense(m: &Multivector) -> Vec<Complex64> {
    m.to_dense().iter().map(Scalar::to_c64).collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Exact inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn rational_inverse(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != zero).expect("invertible");
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && a[r][col] != zero {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}
