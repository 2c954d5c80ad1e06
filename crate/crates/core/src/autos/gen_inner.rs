use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::AutoSpec;
use crate::group::power;
use crate::{Element, Error, GroupParams, Result};

/// Data `(u_i, λ_i)` of the map `x ↦ x ∏ [x, u_i]^{λ_i}`.
///
/// Equal `u` are merged and zero exponents dropped on construction. Two data
/// sets describing the same map are not identified; compare the induced
/// specs instead.
#[derive(Clone, PartialEq, Eq)]
pub struct GenInnerData {
    params: GroupParams,
    pairs: Vec<(Element, BigInt)>,
}

impl GenInnerData {
    pub fn new(params: GroupParams, pairs: impl IntoIterator<Item = (Element, BigInt)>) -> Result<Self> {
        let mut merged: Vec<(Element, BigInt)> = Vec::new();
        let mut index: HashMap<Element, usize> = HashMap::new();
        for (u, lambda) in pairs {
            params.check_same(u.params())?;
            if u.is_identity() || lambda.is_zero() {
                continue;
            }
            match index.get(&u) {
                Some(&i) => merged[i].1 += lambda,
                None => {
                    index.insert(u.clone(), merged.len());
                    merged.push((u, lambda));
                }
            }
        }
        merged.retain(|(_, l)| !l.is_zero());
        Ok(GenInnerData { params, pairs: merged })
    }

    pub fn identity(params: GroupParams) -> Self {
        GenInnerData { params, pairs: Vec::new() }
    }

    /// The inner automorphism `x ↦ u^{-1} x u`.
    pub fn conjugation(u: &Element) -> Self {
        GenInnerData::new(u.params(), [(u.clone(), BigInt::one())]).expect("params match")
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn pairs(&self) -> &[(Element, BigInt)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Same map with each `u` reduced modulo `γ_k`, which does not change
    /// `[x, u]`.
    pub fn reduced(&self) -> GenInnerData {
        let k = self.params.class;
        let pairs = self.pairs.iter().map(|(u, l)| (drop_top_layer(u, k), l.clone())).collect::<Vec<_>>();
        GenInnerData::new(self.params, pairs).expect("params match")
    }

    pub fn to_nested(&self) -> NestedGenInnerData {
        NestedGenInnerData {
            params: self.params,
            terms: self.pairs.iter().map(|(u, l)| (vec![u.clone()], l.clone())).collect(),
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        apply_gen_inner(self, x)
    }

    pub fn to_spec(&self) -> AutoSpec {
        gen_inner_to_spec(self)
    }

    /// Whether both data induce the same map.
    pub fn equivalent(&self, other: &GenInnerData) -> bool {
        self.params == other.params && self.to_spec() == other.to_spec()
    }

    pub fn reduce_class(&self, j: usize) -> Result<GenInnerData> {
        let params = self.params.with_class(j)?;
        let pairs = self.pairs.iter().map(|(u, l)| Ok((u.reduce_class(j)?, l.clone()))).collect::<Result<Vec<_>>>()?;
        GenInnerData::new(params, pairs)
    }

    pub fn lift_class(&self, j: usize) -> Result<GenInnerData> {
        let params = self.params.with_class(j)?;
        let pairs = self.pairs.iter().map(|(u, l)| Ok((u.lift_class(j)?, l.clone()))).collect::<Result<Vec<_>>>()?;
        GenInnerData::new(params, pairs)
    }
}

fn drop_top_layer(u: &Element, k: usize) -> Element {
    if k < 2 {
        return u.clone();
    }
    let top = Element::layer_range(u.params(), k);
    if u.derived_coords()[top.clone()].iter().all(Zero::is_zero) {
        return u.clone();
    }
    let mut coords = u.derived_coords().to_vec();
    for c in &mut coords[top] {
        *c = BigInt::zero();
    }
    Element::from_coords(u.params(), u.exp().to_vec(), coords)
}

impl fmt::Display for GenInnerData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x")?;
        for (u, l) in &self.pairs {
            write!(f, " {}", power(&format!("[x,{u}]"), l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GenInnerData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenInnerData({}; {})", self.params, self)
    }
}

/// Data of `x ↦ x ∏ [x, v_{i,1}, …, v_{i,σ(i)}]^{η_i}`.
#[derive(Clone, PartialEq, Eq)]
pub struct NestedGenInnerData {
    params: GroupParams,
    terms: Vec<(Vec<Element>, BigInt)>,
}

impl NestedGenInnerData {
    pub fn new(params: GroupParams, terms: impl IntoIterator<Item = (Vec<Element>, BigInt)>) -> Result<Self> {
        let mut out = NestedGenInnerData { params, terms: Vec::new() };
        let mut index = HashMap::new();
        for (tail, eta) in terms {
            if tail.is_empty() {
                return Err(Error::InvalidInput("nested term with an empty tail".into()));
            }
            for v in &tail {
                params.check_same(v.params())?;
            }
            out.push(&mut index, tail, eta);
        }
        out.terms.retain(|(_, e)| !e.is_zero());
        Ok(out)
    }

    pub fn identity(params: GroupParams) -> Self {
        NestedGenInnerData { params, terms: Vec::new() }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn terms(&self) -> &[(Vec<Element>, BigInt)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a term unless it is trivial in class `k`; merges equal tails.
    fn push(&mut self, index: &mut HashMap<Vec<Element>, usize>, tail: Vec<Element>, eta: BigInt) {
        if eta.is_zero() || is_trivial_tail(&tail, self.params.class) {
            return;
        }
        match index.get(&tail) {
            Some(&i) => self.terms[i].1 += eta,
            None => {
                index.insert(tail.clone(), self.terms.len());
                self.terms.push((tail, eta));
            }
        }
    }

    fn negated(&self) -> NestedGenInnerData {
        NestedGenInnerData { params: self.params, terms: self.terms.iter().map(|(t, e)| (t.clone(), -e)).collect() }
    }
}

/// `[x, v_1, …, v_L]` lies in `γ_{1 + Σ depth(v_j)}`, so it vanishes once
/// that exceeds the class.
fn is_trivial_tail(tail: &[Element], class: usize) -> bool {
    let mut weight = 1;
    for v in tail {
        match v.depth() {
            None => return true,
            Some(w) => weight += w,
        }
        if weight > class {
            return true;
        }
    }
    false
}

impl fmt::Display for NestedGenInnerData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x")?;
        for (tail, eta) in &self.terms {
            let parts: Vec<String> = tail.iter().map(ToString::to_string).collect();
            write!(f, " {}", power(&format!("[x,{}]", parts.join(",")), eta))?;
        }
        Ok(())
    }
}

impl fmt::Debug for NestedGenInnerData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NestedGenInnerData({}; {})", self.params, self)
    }
}

fn add_scaled(acc: &mut [BigInt], v: &Element, s: &BigInt) {
    for (a, b) in acc.iter_mut().zip(v.derived_coords()) {
        if !b.is_zero() {
            *a += s * b;
        }
    }
}

/// `x ∏ [x, u_i]^{λ_i}`.
pub fn apply_gen_inner(data: &GenInnerData, x: &Element) -> Result<Element> {
    data.params.check_same(x.params())?;
    if data.pairs.is_empty() {
        return Ok(x.clone());
    }
    let xi = x.inverse();
    let mut t = vec![BigInt::zero(); x.derived_coords().len()];
    for (u, lambda) in &data.pairs {
        // [x, u] = x^-1 (u^-1 x u)
        let c = xi.mul(&u.inverse().mul(x).mul(u));
        add_scaled(&mut t, &c, lambda);
    }
    Ok(x.mul(&Element::from_derived_coords(x.params(), t)))
}

pub fn apply_nested(data: &NestedGenInnerData, x: &Element) -> Result<Element> {
    data.params.check_same(x.params())?;
    let mut t = vec![BigInt::zero(); x.derived_coords().len()];
    for (tail, eta) in &data.terms {
        let mut c = x.clone();
        for v in tail {
            c = c.commutator(v);
        }
        add_scaled(&mut t, &c, eta);
    }
    Ok(x.mul(&Element::from_derived_coords(x.params(), t)))
}

pub fn gen_inner_to_spec(data: &GenInnerData) -> AutoSpec {
    let images = Element::generators(data.params)
        .iter()
        .map(|a| apply_gen_inner(data, a).expect("params match"))
        .collect();
    AutoSpec::new(data.params, images).expect("params match")
}

/// Rewrites nested commutators as products of simple ones:
/// `[x, v_1, …, v_L] = ∏_{∅ ≠ S ⊆ {1..L}} [x, v_S]^{(-1)^{L-|S|}}`, where
/// `v_S` is the ordered product. For `L = 2` this is
/// `[x,y,z] = [x,y]^{-1} [x,z]^{-1} [x,yz]`; the general case follows by
/// induction since `t ↦ [t, v]` is a homomorphism on `M'`.
pub fn flatten(nested: &NestedGenInnerData) -> GenInnerData {
    let params = nested.params;
    let k = params.class;
    let mut pairs = Vec::new();
    for (tail, eta) in &nested.terms {
        if is_trivial_tail(tail, k) {
            continue;
        }
        let l = tail.len();
        for mask in 1usize..(1 << l) {
            let mut v = Element::identity(params);
            for (j, t) in tail.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    v = v.mul(t);
                }
            }
            let sign = if (l - mask.count_ones() as usize) % 2 == 0 { eta.clone() } else { -eta };
            pairs.push((v, sign));
        }
    }
    GenInnerData::new(params, pairs).expect("params match").reduced()
}

/// Nested data of `ψ ∘ φ`: with `φ(x) = x ∏ [x, T_i]^{λ_i}` and
/// `ψ(x) = x ∏ [x, S_j]^{μ_j}`, `ψ(φ(x)) = x ∏ [x,T_i]^{λ_i} ∏ [x,S_j]^{μ_j}
/// ∏ [x, T_i, S_j]^{λ_i μ_j}`. Terms of weight above the class are dropped.
pub fn compose_nested(psi: &NestedGenInnerData, phi: &NestedGenInnerData) -> Result<NestedGenInnerData> {
    psi.params.check_same(phi.params)?;
    let mut out = NestedGenInnerData::identity(psi.params);
    let mut index = HashMap::new();
    for (t, l) in phi.terms.iter().chain(&psi.terms) {
        out.push(&mut index, t.clone(), l.clone());
    }
    for (t, l) in &phi.terms {
        for (s, m) in &psi.terms {
            let tail: Vec<Element> = t.iter().chain(s).cloned().collect();
            out.push(&mut index, tail, l * m);
        }
    }
    out.terms.retain(|(_, e)| !e.is_zero());
    Ok(out)
}

/// Data of `ψ ∘ φ`.
pub fn compose_gen_inner(psi: &GenInnerData, phi: &GenInnerData) -> Result<GenInnerData> {
    Ok(flatten(&compose_nested(&psi.to_nested(), &phi.to_nested())?))
}

/// Inverse by defect doubling: if `ψ ∘ φ = x ∏ [x, V_i]^{η_i}` then
/// composing with `x ↦ x ∏ [x, V_i]^{-η_i}` leaves the defect
/// `x ∏_{i,j} [x, V_i, V_j]^{-η_i η_j}`, whose tails are twice as long.
pub fn invert_gen_inner(phi: &GenInnerData) -> GenInnerData {
    let params = phi.params;
    let mut psi = NestedGenInnerData::identity(params);
    let mut defect = phi.reduced().to_nested();
    while !defect.is_empty() {
        psi = compose_nested(&defect.negated(), &psi).expect("params match");
        let mut next = NestedGenInnerData::identity(params);
        let mut index = HashMap::new();
        for (t, l) in &defect.terms {
            for (s, m) in &defect.terms {
                let tail: Vec<Element> = t.iter().chain(s).cloned().collect();
                next.push(&mut index, tail, -(l * m));
            }
        }
        next.terms.retain(|(_, e)| !e.is_zero());
        defect = next;
    }
    flatten(&psi)
}

/// For class at most 2 every generalized inner automorphism is conjugation
/// by `u = ∏ u_i^{λ_i}`.
pub fn class2_conjugator(data: &GenInnerData) -> Result<Element> {
    if data.params.class > 2 {
        return Err(Error::ClassTooLarge { class: data.params.class, max: 2 });
    }
    Ok(data.pairs.iter().fold(Element::identity(data.params), |acc, (u, l)| acc.mul(&u.pow(l))))
}
