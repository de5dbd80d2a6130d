//! JSON form of base-space elements:
//! `[{"coeff":"p/q","point":[…],"tangents":[[…],…]}, …]`.

use serde_json::{json, Value};

use super::{BangElement, Ket, Space};
use crate::error::{Error, Result};
use crate::exact::{scalar_from_json, Scalar, VecQ};

fn vec_from_json(v: &Value) -> Result<VecQ> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Json(format!("expected coordinate array, found {v}")))?;
    VecQ::new(arr.iter().map(scalar_from_json).collect::<Result<_>>()?)
}

/// Parse a possibly unnormalized ket list and canonicalize it. `dim` is
/// required only when the list is empty.
pub fn bang_from_json(v: &Value, dim: Option<usize>) -> Result<BangElement<VecQ>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Json("expected a list of ket objects".into()))?;
    let mut raw = Vec::with_capacity(items.len());
    for item in items {
        let obj = item
            .as_object()
            .ok_or_else(|| Error::Json(format!("expected ket object, found {item}")))?;
        let coeff = match obj.get("coeff") {
            Some(c) => scalar_from_json(c)?,
            None => Scalar::one(),
        };
        let point = vec_from_json(
            obj.get("point")
                .ok_or_else(|| Error::Json("ket object without \"point\"".into()))?,
        )?;
        let tangents = match obj.get("tangents") {
            Some(Value::Array(ts)) => ts.iter().map(vec_from_json).collect::<Result<_>>()?,
            Some(other) => return Err(Error::Json(format!("bad tangents {other}"))),
            None => Vec::new(),
        };
        raw.push((coeff, Ket::new(point, tangents)));
    }
    let dim = match (raw.first(), dim) {
        (Some((_, k)), _) => k.point.dim(),
        (None, Some(d)) => d,
        (None, None) => return Err(Error::Json("empty ket list needs a dimension".into())),
    };
    BangElement::canonicalize(Space::Base(dim), raw)
}

pub fn bang_to_json(t: &BangElement<VecQ>) -> Value {
    Value::Array(
        t.iter()
            .map(|(k, c)| {
                json!({
                    "coeff": c,
                    "point": k.point,
                    "tangents": k.tangents,
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_canonicalizes() {
        let v: Value = serde_json::from_str(
            r#"[{"coeff":"1/2","point":[1,0],"tangents":[[1,1]]},
                {"point":["1","0"],"tangents":[["0","1"]]}]"#,
        )
        .unwrap();
        let t = bang_from_json(&v, None).unwrap();
        let p = VecQ::from_ints(&[1, 0]);
        let expected = BangElement::ket(p.clone(), vec![VecQ::from_ints(&[1, 0])])
            .unwrap()
            .scaled(&Scalar::new(1, 2))
            .add(
                &BangElement::ket(p, vec![VecQ::from_ints(&[0, 1])])
                    .unwrap()
                    .scaled(&Scalar::new(3, 2)),
            )
            .unwrap();
        assert_eq!(t, expected);
        assert_eq!(bang_from_json(&bang_to_json(&t), None).unwrap(), t);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(bang_from_json(&json!({"point": [1]}), None).is_err());
        assert!(bang_from_json(&json!([]), None).is_err());
        assert!(bang_from_json(&json!([]), Some(2)).unwrap().is_zero());
        assert!(bang_from_json(&json!([{"coeff": "1/0", "point": [1]}]), None).is_err());
    }
}
