//! JSON wire formats.
//!
//! Rationals travel as decimal integer strings so that no precision is lost;
//! parsers also accept plain JSON integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::clifford::{Algebra, Blade, Field, Multivector};
use crate::error::{Error, Result};
use crate::field_series::{PlaneWaveField, WaveVector};
use crate::lie_ymp::{Metric, SolutionCandidate, Theta};
use crate::matrix_rep::CMatrix;
use crate::newton::{Certificate, SolveReport};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| perr(format!("not an integer: {s:?}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer literal")),
        other => Err(perr(format!("expected an integer, got {other}"))),
    }
}

fn ratio(num: &Value, den: &Value) -> Result<Rational> {
    let d = bigint(den)?;
    if d.is_zero() {
        return Err(perr("zero denominator"));
    }
    Ok(Rational::new(bigint(num)?, d))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what}: expected an array")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing key {key:?}")))
}

fn usize_of(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| perr(format!("{key}: expected a non-negative integer")))
}

/// `[num, den]`.
pub fn rational_to_json(r: &Rational) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match array(v, "rational")?.as_slice() {
        [n, d] => ratio(n, d),
        _ => Err(perr("rational: expected [num, den]")),
    }
}

/// `[re_num, re_den, im_num, im_den]`.
pub fn scalar_to_json(s: &Scalar) -> Value {
    json!([
        s.re().numer().to_string(),
        s.re().denom().to_string(),
        s.im().numer().to_string(),
        s.im().denom().to_string()
    ])
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match array(v, "scalar")?.as_slice() {
        [rn, rd, in_, id] => Ok(Scalar::new(ratio(rn, rd)?, ratio(in_, id)?)),
        _ => Err(perr("scalar: expected [re_num, re_den, im_num, im_den]")),
    }
}

pub fn algebra_to_json(alg: &Algebra) -> Value {
    let f = match alg.field() {
        Field::Real => "R",
        Field::Complex => "C",
    };
    json!({"p": alg.p(), "q": alg.q(), "r": alg.r(), "field": f})
}

pub fn algebra_from_json(v: &Value) -> Result<Algebra> {
    let r = if v.get("r").is_some() { usize_of(v, "r")? } else { 0 };
    let f = match field(v, "field")?.as_str() {
        Some("R") => Field::Real,
        Some("C") => Field::Complex,
        _ => return Err(perr("field: expected \"R\" or \"C\"")),
    };
    Algebra::new(usize_of(v, "p")?, usize_of(v, "q")?, r, f)
}

pub fn metric_to_json(m: &Metric) -> Value {
    json!({"p": m.p, "q": m.q})
}

pub fn metric_from_json(v: &Value) -> Result<Metric> {
    Ok(Metric::new(usize_of(v, "p")?, usize_of(v, "q")?))
}

fn blade_key(b: Blade) -> String {
    b.indices().iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn parse_blade_key(key: &str, alg: &Algebra) -> Result<Blade> {
    if key.trim().is_empty() {
        return Ok(Blade::SCALAR);
    }
    let mut idx = Vec::new();
    for part in key.split(',') {
        let i: usize = part.trim().parse().map_err(|_| perr(format!("bad blade key {key:?}")))?;
        if i == 0 || i > alg.n() {
            return Err(perr(format!("blade key {key:?} names a generator outside {alg}")));
        }
        idx.push(i);
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(perr(format!("blade key {key:?} must list distinct indices in ascending order")));
    }
    Ok(Blade::from_indices(&idx))
}

/// `{"blades": {"1,2": scalar, ...}}`.
pub fn multivector_to_json(m: &Multivector) -> Value {
    let blades: Map<String, Value> = m.terms().map(|(b, c)| (blade_key(b), scalar_to_json(c))).collect();
    json!({ "blades": blades })
}

pub fn multivector_from_json(v: &Value, alg: Algebra) -> Result<Multivector> {
    let blades = field(v, "blades")?.as_object().ok_or_else(|| perr("blades: expected an object"))?;
    let mut terms = Vec::with_capacity(blades.len());
    for (k, c) in blades {
        terms.push((parse_blade_key(k, &alg)?, scalar_from_json(c)?));
    }
    let m = Multivector::from_terms(alg, terms);
    m.check_field()?;
    Ok(m)
}

pub fn candidate_to_json(c: &SolutionCandidate<Multivector>) -> Value {
    json!({
        "algebra": algebra_to_json(&c.space),
        "metric": metric_to_json(&c.metric),
        "lambda": rational_to_json(&c.lambda),
        "theta": c.theta.map(Theta::sign),
        "kappa": rational_to_json(&c.kappa),
        "A": c.components.iter().map(multivector_to_json).collect::<Vec<_>>(),
    })
}

pub fn candidate_from_json(v: &Value) -> Result<SolutionCandidate<Multivector>> {
    let alg = algebra_from_json(field(v, "algebra")?)?;
    let metric = metric_from_json(field(v, "metric")?)?;
    let lambda = rational_from_json(field(v, "lambda")?)?;
    let theta = match v.get("theta") {
        None | Some(Value::Null) => None,
        Some(t) => Some(t.as_i64().and_then(Theta::from_sign).ok_or_else(|| perr("theta: expected 1, -1 or null"))?),
    };
    let kappa = match v.get("kappa") {
        None | Some(Value::Null) => Rational::one(),
        Some(k) => rational_from_json(k)?,
    };
    let comps =
        array(field(v, "A")?, "A")?.iter().map(|m| multivector_from_json(m, alg)).collect::<Result<Vec<_>>>()?;
    Ok(SolutionCandidate::new(alg, metric, comps, lambda)?.with_meta(theta, kappa))
}

/// Row-major array of scalar quadruples.
pub fn cmatrix_to_json(m: &CMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| Value::Array(r.iter().map(scalar_to_json).collect())).collect())
}

pub fn cmatrix_from_json(v: &Value) -> Result<CMatrix> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(scalar_from_json).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    CMatrix::from_rows(rows)
}

pub fn wave_vector_to_json(k: &WaveVector) -> Value {
    Value::Array(k.components().iter().map(|c| Value::String(format_rational(c))).collect())
}

pub fn wave_vector_from_json(v: &Value) -> Result<WaveVector> {
    let parts = array(v, "k")?
        .iter()
        .map(|c| match c {
            Value::String(s) => parse_rational(s),
            Value::Number(_) => parse_rational(&c.to_string()),
            other => Err(perr(format!("k: expected rational strings, got {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WaveVector::new(parts))
}

/// `{"metric", "algebra", "waves": [{"k": [...], "coeffs": [multivector, ...]}]}`.
pub fn plane_wave_to_json(f: &PlaneWaveField) -> Value {
    let waves: Vec<Value> = f
        .waves()
        .iter()
        .map(|(k, amps)| {
            json!({
                "k": wave_vector_to_json(k),
                "coeffs": amps.iter().map(multivector_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({"metric": metric_to_json(&f.metric()), "algebra": algebra_to_json(&f.algebra()), "waves": waves})
}

pub fn plane_wave_from_json(v: &Value) -> Result<PlaneWaveField> {
    let metric = metric_from_json(field(v, "metric")?)?;
    let alg = algebra_from_json(field(v, "algebra")?)?;
    let waves = array(field(v, "waves")?, "waves")?
        .iter()
        .map(|w| {
            let k = wave_vector_from_json(field(w, "k")?)?;
            let coeffs = array(field(w, "coeffs")?, "coeffs")?
                .iter()
                .map(|m| multivector_from_json(m, alg))
                .collect::<Result<Vec<_>>>()?;
            Ok((k, coeffs))
        })
        .collect::<Result<Vec<_>>>()?;
    PlaneWaveField::from_waves(metric, alg, &waves)
}

pub fn report_to_json(r: &SolveReport) -> Value {
    let certificate = match &r.certificate {
        Certificate::Rational(q) => Value::Array(q.iter().map(rational_to_json).collect()),
        Certificate::Float => Value::Null,
    };
    json!({
        "solution": r.solution,
        "residual_norm": r.residual_norm,
        "iterations": r.iterations,
        "restart": r.restart,
        "seed": r.seed,
        "certificate": certificate,
    })
}

pub fn report_from_json(v: &Value) -> Result<SolveReport> {
    let solution = array(field(v, "solution")?, "solution")?
        .iter()
        .map(|x| x.as_f64().ok_or_else(|| perr("solution: expected numbers")))
        .collect::<Result<Vec<_>>>()?;
    let certificate = match field(v, "certificate")? {
        Value::Null => Certificate::Float,
        c => Certificate::Rational(array(c, "certificate")?.iter().map(rational_from_json).collect::<Result<_>>()?),
    };
    Ok(SolveReport {
        solution,
        residual_norm: field(v, "residual_norm")?.as_f64().ok_or_else(|| perr("residual_norm: expected a number"))?,
        iterations: usize_of(v, "iterations")?,
        restart: usize_of(v, "restart")?,
        seed: field(v, "seed")?.as_u64().ok_or_else(|| perr("seed: expected an integer"))?,
        certificate,
    })
}

/// Array of wavevectors.
pub fn read_wave_list(v: &Value) -> Result<Vec<WaveVector>> {
    v.as_array().ok_or_else(|| perr("expected an array of wavevectors"))?.iter().map(wave_vector_from_json).collect()
}
