//! JSON encodings of elements, endomorphism specs and automorphism data.
//!
//! Integers are JSON numbers when they fit in an `i64` and decimal strings
//! otherwise. Wherever an element is expected, a word string such as
//! `"a [b,a]^2"` is accepted as well.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::autos::{AutoSpec, GenInnerData, PolyAutoData};
use crate::lattice::{InfeasibilityCertificate, IntMatrix};
use crate::normality::{IndependenceCertificate, Refusal, Synthesis};
use crate::{BasicCommutator, DerivedVector, Element, Error, GroupParams, Result};

fn err(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

pub fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(n.to_string()),
    }
}

pub fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| err(format!("{n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| err(format!("{s:?} is not an integer"))),
        other => Err(err(format!("expected an integer, found {other}"))),
    }
}

fn vec_to_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(bigint_to_json).collect())
}

fn vec_from_json(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array().ok_or_else(|| err("expected an array of integers"))?.iter().map(bigint_from_json).collect()
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(format!("missing field {key:?}")))
}

fn usize_field(obj: &Value, key: &str) -> Result<usize> {
    field(obj, key)?.as_u64().map(|x| x as usize).ok_or_else(|| err(format!("field {key:?} must be a nonnegative integer")))
}

/// The `rank`/`class` pair recorded in an object, if both are present.
pub fn params_from_json(v: &Value) -> Result<Option<GroupParams>> {
    match (v.get("rank"), v.get("class")) {
        (Some(_), Some(_)) => Ok(Some(GroupParams::new(usize_field(v, "rank")?, usize_field(v, "class")?)?)),
        (None, None) => Ok(None),
        _ => Err(err("\"rank\" and \"class\" must be given together")),
    }
}

fn check_params(v: &Value, params: GroupParams) -> Result<()> {
    match params_from_json(v)? {
        Some(found) if found != params => Err(Error::ParamsMismatch { left: found, right: params }),
        _ => Ok(()),
    }
}

pub fn element_to_json(x: &Element) -> Value {
    let derived: Vec<Value> =
        x.derived().iter().map(|(c, e)| json!({ "seq": c.seq(), "coef": bigint_to_json(e) })).collect();
    json!({ "rank": x.rank(), "class": x.class(), "exp": vec_to_json(x.exp()), "derived": derived })
}

pub fn element_from_json(v: &Value, params: GroupParams) -> Result<Element> {
    if let Some(s) = v.as_str() {
        return Element::parse(s, params);
    }
    if !v.is_object() {
        return Err(err(format!("expected an element, found {v}")));
    }
    check_params(v, params)?;
    let exp = match v.get("exp") {
        Some(e) => vec_from_json(e)?,
        None => vec![BigInt::from(0); params.rank],
    };
    let mut derived = DerivedVector::new();
    if let Some(terms) = v.get("derived") {
        for t in terms.as_array().ok_or_else(|| err("\"derived\" must be an array"))? {
            let seq = field(t, "seq")?
                .as_array()
                .ok_or_else(|| err("\"seq\" must be an array"))?
                .iter()
                .map(|g| g.as_u64().map(|g| g as usize).ok_or_else(|| err("generator indices must be nonnegative integers")))
                .collect::<Result<Vec<_>>>()?;
            derived.add_term(BasicCommutator::new(seq)?, bigint_from_json(field(t, "coef")?)?);
        }
    }
    Element::from_parts(params, exp, &derived)
}

pub fn spec_to_json(f: &AutoSpec) -> Value {
    let p = f.params();
    json!({ "rank": p.rank, "class": p.class, "images": f.images().iter().map(element_to_json).collect::<Vec<_>>() })
}

/// Accepts `{"images": [...]}` or a bare array of images.
pub fn spec_from_json(v: &Value, params: GroupParams) -> Result<AutoSpec> {
    let images = match v {
        Value::Array(xs) => xs,
        Value::Object(_) => {
            check_params(v, params)?;
            field(v, "images")?.as_array().ok_or_else(|| err("\"images\" must be an array"))?
        }
        _ => return Err(err(format!("expected a spec, found {v}"))),
    };
    let images = images.iter().map(|x| element_from_json(x, params)).collect::<Result<Vec<_>>>()?;
    AutoSpec::new(params, images)
}

fn pairs_to_json(pairs: &[(Element, BigInt)], key: &str) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|(u, e)| {
                let mut m = Map::new();
                m.insert("u".into(), element_to_json(u));
                m.insert(key.into(), bigint_to_json(e));
                Value::Object(m)
            })
            .collect(),
    )
}

fn pairs_from_json(v: &Value, params: GroupParams, key: &str) -> Result<Vec<(Element, BigInt)>> {
    let pairs = match v {
        Value::Array(_) => v,
        _ => {
            check_params(v, params)?;
            field(v, "pairs")?
        }
    };
    pairs
        .as_array()
        .ok_or_else(|| err("\"pairs\" must be an array"))?
        .iter()
        .map(|p| Ok((element_from_json(field(p, "u")?, params)?, bigint_from_json(field(p, key)?)?)))
        .collect()
}

pub fn gen_inner_to_json(g: &GenInnerData) -> Value {
    let p = g.params();
    json!({ "rank": p.rank, "class": p.class, "pairs": pairs_to_json(g.pairs(), "lambda") })
}

pub fn gen_inner_from_json(v: &Value, params: GroupParams) -> Result<GenInnerData> {
    GenInnerData::new(params, pairs_from_json(v, params, "lambda")?)
}

pub fn poly_to_json(data: &PolyAutoData) -> Value {
    let p = data.params();
    json!({ "rank": p.rank, "class": p.class, "pairs": pairs_to_json(data.pairs(), "epsilon") })
}

pub fn poly_from_json(v: &Value, params: GroupParams) -> Result<PolyAutoData> {
    PolyAutoData::new(params, pairs_from_json(v, params, "epsilon")?)
}

fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_to_json(m.row(i))).collect())
}

pub fn certificate_to_json(c: &InfeasibilityCertificate) -> Value {
    json!({ "row": vec_to_json(&c.row), "divisor": bigint_to_json(&c.divisor), "residue": bigint_to_json(&c.residue) })
}

pub fn refusal_to_json(r: &Refusal) -> Value {
    json!({
        "witness_generator": r.witness_generator,
        "layer": r.layer,
        "defect": vec_to_json(&r.defect),
        "certificate": certificate_to_json(&r.certificate),
        "matrix": matrix_to_json(&r.matrix),
        "rhs": vec_to_json(&r.rhs),
    })
}

pub fn synthesis_to_json(s: &Synthesis) -> Value {
    match s {
        Synthesis::GenInner(g) => json!({ "generalized_inner": true, "data": gen_inner_to_json(g) }),
        Synthesis::NotGeneralizedInner(r) => json!({ "generalized_inner": false, "refusal": refusal_to_json(r) }),
    }
}

pub fn independence_to_json(c: &IndependenceCertificate) -> Value {
    json!({
        "s": c.s,
        "degree": c.degree,
        "rank": c.rank,
        "columns": c.columns,
        "elementary_divisors": vec_to_json(&c.elementary_divisors),
        "injective": c.injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, k: usize) -> GroupParams {
        GroupParams::new(d, k).unwrap()
    }

    #[test]
    fn element_round_trip() {
        let params = p(3, 4);
        let x = Element::parse("a^2 c^-1 [b,a]^3 [c,a,b]", params).unwrap();
        let v = element_to_json(&x);
        assert_eq!(v["exp"], json!([2, 0, -1]));
        assert_eq!(element_from_json(&v, params).unwrap(), x);
        assert_eq!(element_from_json(&json!("a^2 c^-1 [b,a]^3 [c,a,b]"), params).unwrap(), x);
        assert!(matches!(element_from_json(&v, p(3, 5)), Err(Error::ParamsMismatch { .. })));
    }

    #[test]
    fn huge_coefficients_are_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let v = bigint_to_json(&big);
        assert!(v.is_string());
        assert_eq!(bigint_from_json(&v).unwrap(), big);
        assert_eq!(bigint_from_json(&json!(-7)).unwrap(), BigInt::from(-7));
        assert!(bigint_from_json(&json!(1.5)).is_err());
    }

    #[test]
    fn spec_and_data_round_trips() {
        let params = p(2, 3);
        let f = AutoSpec::parse(params, &["a", "b [b,a,a]"]).unwrap();
        assert_eq!(spec_from_json(&spec_to_json(&f), params).unwrap(), f);
        assert_eq!(spec_from_json(&json!({"images": ["a", "b [b,a,a]"]}), params).unwrap(), f);
        assert_eq!(spec_from_json(&json!(["a", "b [b,a,a]"]), params).unwrap(), f);
        let g = GenInnerData::new(params, [(Element::parse("a b", params).unwrap(), BigInt::from(-2))]).unwrap();
        assert_eq!(gen_inner_from_json(&gen_inner_to_json(&g), params).unwrap(), g);
        let poly = PolyAutoData::from_gen_inner(&g);
        let v = poly_to_json(&poly);
        assert!(v["pairs"][0].get("epsilon").is_some());
        assert_eq!(poly_from_json(&v, params).unwrap(), poly);
    }

    #[test]
    fn malformed_input() {
        let params = p(2, 3);
        assert!(element_from_json(&json!(3), params).is_err());
        assert!(element_from_json(&json!({"exp": [1]}), params).is_err());
        assert!(element_from_json(&json!({"exp": [0, 0], "derived": [{"seq": [0, 1], "coef": 1}]}), params).is_err());
        assert!(spec_from_json(&json!({"rank": 2}), params).is_err());
    }
}
