use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::{AutoSpec, GenInnerData};
use crate::group::power;
use crate::{Element, GroupParams, Result};

/// Data `(u_i, ε_i)` of `x ↦ (u_1^{-1} x^{ε_1} u_1) ⋯ (u_m^{-1} x^{ε_m} u_m)`.
/// The order of the factors matters.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyAutoData {
    params: GroupParams,
    pairs: Vec<(Element, BigInt)>,
}

impl PolyAutoData {
    pub fn new(params: GroupParams, pairs: Vec<(Element, BigInt)>) -> Result<Self> {
        for (u, _) in &pairs {
            params.check_same(u.params())?;
        }
        Ok(PolyAutoData { params, pairs })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn pairs(&self) -> &[(Element, BigInt)] {
        &self.pairs
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        apply_poly_auto(self, x)
    }

    pub fn epsilon(&self) -> BigInt {
        epsilon_sum(self)
    }

    /// The literal polynomial form of a generalized inner automorphism:
    /// `[x, u] = x^{-1} (u^{-1} x u)` and `[x, u]^{-1} = (u^{-1} x^{-1} u) x`.
    pub fn from_gen_inner(data: &GenInnerData) -> PolyAutoData {
        let params = data.params();
        let one = Element::identity(params);
        let mut pairs = vec![(one.clone(), BigInt::one())];
        for (u, lambda) in data.pairs() {
            let factor: [(Element, BigInt); 2] = if lambda.is_positive() {
                [(one.clone(), -BigInt::one()), (u.clone(), BigInt::one())]
            } else {
                [(u.clone(), -BigInt::one()), (one.clone(), BigInt::one())]
            };
            for _ in 0..lambda.magnitude().to_u64().expect("exponent fits in u64") {
                pairs.extend(factor.iter().cloned());
            }
        }
        PolyAutoData { params, pairs }
    }

    pub fn reduce_class(&self, j: usize) -> Result<PolyAutoData> {
        let params = self.params.with_class(j)?;
        let pairs = self.pairs.iter().map(|(u, e)| Ok((u.reduce_class(j)?, e.clone()))).collect::<Result<_>>()?;
        PolyAutoData::new(params, pairs)
    }
}

impl fmt::Display for PolyAutoData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.pairs.iter().map(|(u, e)| format!("({u})^-1 {} ({u})", power("x", e))).collect();
        f.write_str(&parts.join(" · "))
    }
}

impl fmt::Debug for PolyAutoData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyAutoData({}; {})", self.params, self)
    }
}

pub fn apply_poly_auto(data: &PolyAutoData, x: &Element) -> Result<Element> {
    data.params.check_same(x.params())?;
    Ok(data.pairs.iter().fold(Element::identity(data.params), |acc, (u, e)| acc.mul(&x.pow(e).conjugate(u))))
}

pub fn epsilon_sum(data: &PolyAutoData) -> BigInt {
    data.pairs.iter().map(|(_, e)| e).sum()
}

/// The endomorphism agreeing with the polynomial map on the generators.
/// It equals the polynomial map only if the latter is multiplicative.
pub fn poly_to_spec(data: &PolyAutoData) -> AutoSpec {
    let images = Element::generators(data.params).iter().map(|a| apply_poly_auto(data, a).expect("params match")).collect();
    AutoSpec::new(data.params, images).expect("params match")
}

/// A pair of generators `(i, j)` on which the map induced on the class-2
/// quotient is not multiplicative, i.e. `φ(a_i a_j) ≠ φ(a_i) φ(a_j)`.
///
/// There the map is `x ↦ x^ε [x, u]` and multiplicativity reduces to
/// `(xy)^ε = x^ε y^ε`, which fails on noncommuting generators unless
/// `ε ∈ {0, 1}`.
pub fn multiplicativity_witness(data: &PolyAutoData) -> Result<Option<(usize, usize)>> {
    let params = data.params;
    let quotient = data.reduce_class(params.class.min(2))?;
    let gens = Element::generators(quotient.params);
    for (i, x) in gens.iter().enumerate() {
        for (j, y) in gens.iter().enumerate() {
            let lhs = quotient.apply(&x.mul(y))?;
            let rhs = quotient.apply(x)?.mul(&quotient.apply(y)?);
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, k: usize) -> GroupParams {
        GroupParams::new(d, k).unwrap()
    }

    fn data(params: GroupParams, pairs: &[(&str, i64)]) -> PolyAutoData {
        let pairs = pairs.iter().map(|(u, e)| (Element::parse(u, params).unwrap(), BigInt::from(*e))).collect();
        PolyAutoData::new(params, pairs).unwrap()
    }

    #[test]
    fn simple_evaluations() {
        let params = p(3, 4);
        let x = Element::parse("a b^2 c^-1", params).unwrap();
        assert_eq!(data(params, &[("", 1)]).apply(&x).unwrap(), x);
        let u = Element::parse("c a", params).unwrap();
        assert_eq!(data(params, &[("c a", 1)]).apply(&x).unwrap(), x.conjugate(&u));
        assert_eq!(epsilon_sum(&data(params, &[("a", 2), ("b", -1), ("c", 3)])), BigInt::from(4));
    }

    #[test]
    fn gen_inner_maps_are_polynomial() {
        let params = p(3, 4);
        let u = Element::parse("a c^-1", params).unwrap();
        let v = Element::parse("b^2 [c,a]", params).unwrap();
        let phi = GenInnerData::new(params, [(u, BigInt::from(2)), (v, BigInt::from(-3))]).unwrap();
        let poly = PolyAutoData::from_gen_inner(&phi);
        assert_eq!(poly.epsilon(), BigInt::one());
        for x in ["a", "b c^-2 a", "[b,a] c"] {
            let x = Element::parse(x, params).unwrap();
            assert_eq!(poly.apply(&x).unwrap(), phi.apply(&x).unwrap());
        }
    }

    #[test]
    fn witness_exists_exactly_when_epsilon_is_not_zero_or_one() {
        let params = p(2, 3);
        assert_eq!(multiplicativity_witness(&data(params, &[("a", 1)])).unwrap(), None);
        assert_eq!(multiplicativity_witness(&data(params, &[("a", 1), ("b", -1)])).unwrap(), None);
        for eps in [&[("a", 2)][..], &[("a", -1)], &[("b", 1), ("a", 1), ("", 1)], &[("a", -2), ("b", 1)]] {
            assert!(multiplicativity_witness(&data(params, eps)).unwrap().is_some(), "{eps:?}");
        }
    }
}
