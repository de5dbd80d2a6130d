//! JSON form of semantic values, directed by the expected space.
//!
//! | space            | JSON                                                          |
//! |------------------|---------------------------------------------------------------|
//! | `k^n`            | `[x₁, …, xₙ]`                                                 |
//! | `Hom(k^m, k^n)`  | `n` rows of `m` entries                                       |
//! | `X ⊗ Y`          | `[{"coeff": c, "left": x, "right": y}, …]`                    |
//! | `!X`             | `[{"coeff": c, "point": x, "tangents": [y, …]}, …]`           |
//! | any              | `{"proof": name}`, resolved by the caller                     |
//! | any              | `{"sum": [x, …]}`                                             |
//!
//! `coeff` defaults to 1. Scalars are integers or `"p/q"` strings.

use serde_json::{json, Map, Value};

use super::observe::{observe, probe_inputs, ObsKey, ProbeConfig};
use super::{BangVal, SemSpace, SemValue, TensorVal};
use crate::bang::Ket;
use crate::error::{Error, Result};
use crate::exact::{scalar_from_json, Matrix, Scalar, VecQ};

pub type Resolver<'a> = dyn Fn(&str, &SemSpace) -> Result<SemValue> + 'a;

fn array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Json(format!("expected {what}, found {v}")))
}

fn coeff(obj: &Map<String, Value>) -> Result<Scalar> {
    obj.get("coeff").map(scalar_from_json).unwrap_or(Ok(Scalar::one()))
}

fn field<'v>(obj: &'v Map<String, Value>, name: &str) -> Result<&'v Value> {
    obj.get(name)
        .ok_or_else(|| Error::Json(format!("missing field \"{name}\"")))
}

pub fn value_from_json(v: &Value, space: &SemSpace, resolve: &Resolver<'_>) -> Result<SemValue> {
    if let Some(name) = v.as_object().and_then(|o| o.get("proof")) {
        let name = name
            .as_str()
            .ok_or_else(|| Error::Json("\"proof\" must be a string".into()))?;
        let value = resolve(name, space)?;
        value.expect_space(space)?;
        return Ok(value);
    }
    if let Some(items) = v.as_object().and_then(|o| o.get("sum")) {
        let mut acc = SemValue::zero(space);
        for item in array(items, "a list of summands")? {
            acc = acc.add(&value_from_json(item, space, resolve)?)?;
        }
        return Ok(acc);
    }
    match space {
        SemSpace::Base(n) => {
            let x = VecQ::new(
                array(v, "a coordinate array")?
                    .iter()
                    .map(scalar_from_json)
                    .collect::<Result<_>>()?,
            )?;
            if x.dim() != *n {
                return Err(Error::DimensionMismatch {
                    expected: *n,
                    found: x.dim(),
                });
            }
            Ok(SemValue::Base(x))
        }
        SemSpace::Tensor(a, b) => {
            let mut terms = Vec::new();
            for item in array(v, "a list of tensor terms")? {
                let obj = item
                    .as_object()
                    .ok_or_else(|| Error::Json(format!("expected tensor term, found {item}")))?;
                terms.push((
                    coeff(obj)?,
                    value_from_json(field(obj, "left")?, a, resolve)?,
                    value_from_json(field(obj, "right")?, b, resolve)?,
                ));
            }
            Ok(SemValue::Tensor(TensorVal {
                left: (**a).clone(),
                right: (**b).clone(),
                terms,
            }))
        }
        SemSpace::Bang(a) => {
            let mut out = BangVal::zero((**a).clone());
            for item in array(v, "a list of kets")? {
                let obj = item
                    .as_object()
                    .ok_or_else(|| Error::Json(format!("expected ket object, found {item}")))?;
                let point = value_from_json(field(obj, "point")?, a, resolve)?;
                let tangents = match obj.get("tangents") {
                    Some(ts) => array(ts, "a tangent list")?
                        .iter()
                        .map(|t| value_from_json(t, a, resolve))
                        .collect::<Result<_>>()?,
                    None => Vec::new(),
                };
                out.terms.push((coeff(obj)?, Ket::new(point, tangents)));
            }
            Ok(out.into())
        }
        SemSpace::Hom(..) => match space.matrix_shape() {
            Some((m, n)) => {
                let rows = array(v, "matrix rows")?
                    .iter()
                    .map(|r| array(r, "a matrix row")?.iter().map(scalar_from_json).collect())
                    .collect::<Result<Vec<Vec<Scalar>>>>()?;
                let mat = Matrix::new(rows)?;
                if (mat.rows(), mat.cols()) != (n, m) {
                    return Err(Error::Json(format!(
                        "expected a {n}×{m} matrix, found {}×{}",
                        mat.rows(),
                        mat.cols()
                    )));
                }
                Ok(SemValue::Mat(mat))
            }
            None => Err(Error::Json(format!(
                "values of {space} are given as {{\"proof\": name}}"
            ))),
        },
    }
}

fn scalars(c: &[Scalar]) -> Value {
    Value::Array(c.iter().map(|x| json!(x)).collect())
}

/// Rebuild a flat value from its coordinates.
fn flat_value(space: &SemSpace, c: &[Scalar]) -> Result<Value> {
    match space.matrix_shape() {
        Some((m, _)) => Ok(Value::Array(c.chunks(m).map(scalars).collect())),
        None => Ok(scalars(c)),
    }
}

fn unit_value(space: &SemSpace, i: usize) -> Result<Value> {
    let n = space.flat_dim().expect("flat space");
    let mut c = vec![Scalar::zero(); n];
    c[i] = Scalar::one();
    flat_value(space, &c)
}

/// Render a value. Kets over finite-dimensional spaces are printed in
/// canonical form with basis-vector tangents; maps print a probe table,
/// spending at most `budget` tangents.
pub fn value_to_json(v: &SemValue, budget: usize, cfg: &ProbeConfig) -> Result<Value> {
    match v {
        SemValue::Base(x) => Ok(scalars(x.coords())),
        SemValue::Mat(m) => Ok(Value::Array(m.row_vecs().iter().map(|r| scalars(r)).collect())),
        SemValue::Tensor(t) => Ok(Value::Array(
            t.terms
                .iter()
                .map(|(c, a, b)| {
                    Ok(json!({
                        "coeff": c,
                        "left": value_to_json(a, budget, cfg)?,
                        "right": value_to_json(b, budget, cfg)?,
                    }))
                })
                .collect::<Result<_>>()?,
        )),
        SemValue::Bang(b) if b.inner.flat_dim().is_some() => {
            let obs = observe(v, budget, cfg)?;
            let n = b.inner.flat_dim().unwrap_or(0);
            let mut out = Vec::with_capacity(obs.len());
            for (key, c) in obs.iter() {
                let ObsKey::Ket { point, tangents } = key else {
                    unreachable!("kets observe to ket keys")
                };
                let mut p = vec![Scalar::zero(); n];
                for (k, x) in point.iter() {
                    if let ObsKey::Coord(i) = k {
                        p[*i] = x.clone();
                    }
                }
                let ts = tangents
                    .iter()
                    .map(|t| match t {
                        ObsKey::Coord(i) => unit_value(&b.inner, *i),
                        _ => unreachable!("flat tangents observe to coordinates"),
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push(json!({"coeff": c, "point": flat_value(&b.inner, &p)?, "tangents": ts}));
            }
            Ok(Value::Array(out))
        }
        SemValue::Bang(b) => Ok(Value::Array(
            b.terms
                .iter()
                .map(|(c, k)| {
                    Ok(json!({
                        "coeff": c,
                        "point": value_to_json(&k.point, budget, cfg)?,
                        "tangents": k.tangents.iter().map(|t| value_to_json(t, budget, cfg)).collect::<Result<Vec<_>>>()?,
                    }))
                })
                .collect::<Result<_>>()?,
        )),
        SemValue::Map(m) => {
            let mut rows = Vec::new();
            for (input, spent) in probe_inputs(&m.dom, budget, cfg)? {
                let output = (m.f)(&input)?;
                rows.push(json!({
                    "input": value_to_json(&input, budget - spent, cfg)?,
                    "output": value_to_json(&output, budget - spent, cfg)?,
                }));
            }
            Ok(json!({"space": SemSpace::hom(m.dom.clone(), m.cod.clone()).to_string(), "probes": rows}))
        }
    }
}
