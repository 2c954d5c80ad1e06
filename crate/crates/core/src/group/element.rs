use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::basic::{power, BasicCommutator, DerivedVector};
use super::context::Context;
use crate::words::{generator_name, Word};
use crate::{Error, GroupParams, Result};

/// An element of `M` in canonical form
/// `a0^{e0} ··· a(d-1)^{e(d-1)} · Π c^{μ(c)}`, the product running over
/// basic commutators in canonical order.
#[derive(Clone)]
pub struct Element {
    ctx: Arc<Context>,
    exp: Vec<BigInt>,
    derived: Vec<BigInt>,
}

impl Element {
    pub fn identity(params: GroupParams) -> Element {
        let ctx = Context::get(params);
        Element { exp: vec![BigInt::zero(); params.rank], derived: ctx.zero(), ctx }
    }

    /// # Panics
    /// If `index >= params.rank`.
    pub fn generator(params: GroupParams, index: usize) -> Element {
        assert!(index < params.rank, "generator {index} out of range for {params}");
        let mut x = Element::identity(params);
        x.exp[index] = BigInt::one();
        x
    }

    pub fn generators(params: GroupParams) -> Vec<Element> {
        (0..params.rank).map(|i| Element::generator(params, i)).collect()
    }

    /// Canonical form of the image of `w` in `M`.
    pub fn collect(w: &Word, params: GroupParams) -> Result<Element> {
        w.check_rank(params.rank)?;
        let mut x = Element::identity(params);
        for l in w.letters() {
            x.ctx.clone().step(&mut x.exp, &mut x.derived, l.gen, &l.exp);
        }
        Ok(x)
    }

    /// Parses `text` as a word and collects it.
    pub fn parse(text: &str, params: GroupParams) -> Result<Element> {
        Element::collect(&crate::words::parse_word(text, params)?, params)
    }

    pub fn from_parts(params: GroupParams, exp: Vec<BigInt>, derived: &DerivedVector) -> Result<Element> {
        if exp.len() != params.rank {
            return Err(Error::DimensionMismatch(format!(
                "exponent vector has length {}, rank is {}",
                exp.len(),
                params.rank
            )));
        }
        let ctx = Context::get(params);
        let mut coords = ctx.zero();
        for (c, e) in derived.iter() {
            let idx = ctx.index_of(c.seq()).ok_or_else(|| Error::WeightOutOfRange {
                weight: c.weight(),
                min: 2,
                max: params.class,
            })?;
            if c.seq().iter().any(|&g| g >= params.rank) {
                return Err(Error::InvalidBasic(c.seq().to_vec()));
            }
            coords[idx] = e.clone();
        }
        Ok(Element { ctx, exp, derived: coords })
    }

    /// Element of the derived subgroup with the given dense coordinates.
    pub(crate) fn from_derived_coords(params: GroupParams, coords: Vec<BigInt>) -> Element {
        let ctx = Context::get(params);
        assert_eq!(coords.len(), ctx.dim());
        Element { ctx, exp: vec![BigInt::zero(); params.rank], derived: coords }
    }

    pub(crate) fn from_coords(params: GroupParams, exp: Vec<BigInt>, coords: Vec<BigInt>) -> Element {
        let ctx = Context::get(params);
        assert_eq!(coords.len(), ctx.dim());
        assert_eq!(exp.len(), params.rank);
        Element { ctx, exp, derived: coords }
    }

    pub fn params(&self) -> GroupParams {
        self.ctx.params
    }

    pub fn rank(&self) -> usize {
        self.ctx.params.rank
    }

    pub fn class(&self) -> usize {
        self.ctx.params.class
    }

    /// Abelianization exponents in ascending generator order.
    pub fn exp(&self) -> &[BigInt] {
        &self.exp
    }

    /// Coordinates over [`Element::basis`], in canonical order.
    pub fn derived_coords(&self) -> &[BigInt] {
        &self.derived
    }

    pub fn derived(&self) -> DerivedVector {
        self.ctx
            .basis
            .iter()
            .zip(&self.derived)
            .filter(|(_, e)| !e.is_zero())
            .map(|(c, e)| (c.clone(), e.clone()))
            .collect()
    }

    /// The basic commutators of the group, in canonical order.
    pub fn basis(params: GroupParams) -> Vec<BasicCommutator> {
        Context::get(params).basis.clone()
    }

    pub fn coordinate(&self, c: &BasicCommutator) -> BigInt {
        self.ctx.index_of(c.seq()).map(|i| self.derived[i].clone()).unwrap_or_default()
    }

    pub fn is_identity(&self) -> bool {
        self.exp.iter().all(Zero::is_zero) && self.derived.iter().all(Zero::is_zero)
    }

    pub fn is_in_derived_subgroup(&self) -> bool {
        self.exp.iter().all(Zero::is_zero)
    }

    /// Largest `w` with `self ∈ γ_w(M)`; `None` for the identity.
    pub fn depth(&self) -> Option<usize> {
        if !self.is_in_derived_subgroup() {
            return Some(1);
        }
        self.derived.iter().position(|e| !e.is_zero()).map(|i| self.ctx.weight_of(i))
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.params().check_same(other.params())?;
        Ok(self.mul(other))
    }

    /// # Panics
    /// If the parameters differ; see [`Element::checked_mul`].
    pub fn mul(&self, other: &Element) -> Element {
        assert_eq!(self.params(), other.params(), "parameter mismatch");
        let mut exp = self.exp.clone();
        let mut t = self.derived.clone();
        for (j, n) in other.exp.iter().enumerate() {
            self.ctx.step(&mut exp, &mut t, j, n);
        }
        for (a, b) in t.iter_mut().zip(&other.derived) {
            *a += b;
        }
        Element { ctx: self.ctx.clone(), exp, derived: t }
    }

    pub fn inverse(&self) -> Element {
        // (a^e t)^-1 = t^-1 (a^e)^-1, and (a^e)^-1 = a^-e τ
        let mut exp = vec![BigInt::zero(); self.rank()];
        let mut tau = self.ctx.zero();
        for (j, n) in self.exp.iter().enumerate().rev() {
            self.ctx.step(&mut exp, &mut tau, j, &-n);
        }
        let conj = self.ctx.act_by(&exp, &self.derived);
        for (a, b) in tau.iter_mut().zip(conj) {
            *a -= b;
        }
        Element { ctx: self.ctx.clone(), exp, derived: tau }
    }

    pub fn pow(&self, n: &BigInt) -> Element {
        if self.is_in_derived_subgroup() {
            return self.scale_derived(n);
        }
        let mut base = if n.is_negative() { self.inverse() } else { self.clone() };
        let mut n = n.abs();
        let mut acc = Element::identity(self.params());
        let two = BigInt::from(2);
        while !n.is_zero() {
            if (&n % &two).is_one() {
                acc = acc.mul(&base);
            }
            n /= &two;
            if !n.is_zero() {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn pow_i64(&self, n: i64) -> Element {
        self.pow(&BigInt::from(n))
    }

    fn scale_derived(&self, n: &BigInt) -> Element {
        Element {
            ctx: self.ctx.clone(),
            exp: self.exp.clone(),
            derived: self.derived.iter().map(|e| e * n).collect(),
        }
    }

    pub fn checked_commutator(&self, other: &Element) -> Result<Element> {
        self.params().check_same(other.params())?;
        Ok(self.commutator(other))
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, y: &Element) -> Element {
        assert_eq!(self.params(), y.params(), "parameter mismatch");
        if self.is_in_derived_subgroup() {
            // [t, y] = t^-1 t^y, and only the abelianization of y acts
            let moved = self.ctx.act_by(&y.exp, &self.derived);
            let coords = moved.iter().zip(&self.derived).map(|(a, b)| a - b).collect();
            return Element::from_derived_coords(self.params(), coords);
        }
        self.inverse().mul(&y.inverse()).mul(&self.mul(y))
    }

    /// `u^-1 x u`.
    pub fn conjugate(&self, u: &Element) -> Element {
        u.inverse().mul(self).mul(u)
    }

    /// `[x1, …, xn]`, left-normed.
    pub fn left_normed(xs: &[Element]) -> Result<Element> {
        let (first, rest) = xs.split_first().ok_or_else(|| Error::InvalidInput("empty commutator".into()))?;
        rest.iter().try_fold(first.clone(), |acc, y| acc.checked_commutator(y))
    }

    /// `[x, _n y]`: `[x,_0 y] = x`, `[x,_n y] = [[x,_{n-1} y], y]`.
    pub fn left_normed_rep(x: &Element, n: usize, y: &Element) -> Result<Element> {
        x.params().check_same(y.params())?;
        Ok((0..n).fold(x.clone(), |acc, _| acc.commutator(y)))
    }

    pub fn equals(&self, other: &Element) -> Result<bool> {
        self.params().check_same(other.params())?;
        Ok(self == other)
    }

    /// Image in the class-`j` quotient.
    pub fn reduce_class(&self, j: usize) -> Result<Element> {
        let k = self.class();
        if j == 0 || j > k {
            return Err(Error::WeightOutOfRange { weight: j, min: 1, max: k });
        }
        let params = self.params().with_class(j)?;
        let ctx = Context::get(params);
        let derived = self.derived[..ctx.dim()].to_vec();
        Ok(Element { ctx, exp: self.exp.clone(), derived })
    }

    /// The element with the same coordinates in the class-`j` group, `j >= class`.
    pub fn lift_class(&self, j: usize) -> Result<Element> {
        let k = self.class();
        if j < k {
            return Err(Error::WeightOutOfRange { weight: j, min: k, max: usize::MAX });
        }
        let params = self.params().with_class(j)?;
        let ctx = Context::get(params);
        let mut derived = ctx.zero();
        derived[..self.derived.len()].clone_from_slice(&self.derived);
        Ok(Element { ctx, exp: self.exp.clone(), derived })
    }

    /// Coordinates of the weight-`w` component of an element of `γ_w(M)`.
    /// Layer 1 is the abelianization, with the generators as basis.
    pub fn gamma_layer(&self, w: usize) -> Result<Vec<BigInt>> {
        let k = self.class();
        if w == 0 || w > k {
            return Err(Error::WeightOutOfRange { weight: w, min: 1, max: k });
        }
        if w == 1 {
            return Ok(self.exp.clone());
        }
        let rank = self.rank();
        if let Some(g) = self.exp.iter().position(|e| !e.is_zero()) {
            return Err(Error::NotInLayer { weight: w, coordinate: generator_name(g, rank) });
        }
        let layer = self.ctx.layer(w);
        if let Some(i) = self.derived[..layer.start].iter().position(|e| !e.is_zero()) {
            return Err(Error::NotInLayer { weight: w, coordinate: self.ctx.basis[i].display(rank) });
        }
        Ok(self.derived[layer].to_vec())
    }

    /// The canonical word `a0^{e0} ··· Π c^{μ(c)}` with each basic commutator
    /// expanded.
    pub fn to_word(&self) -> Word {
        let mut w = Word::from_letters(self.exp.iter().cloned().enumerate());
        for (c, e) in self.ctx.basis.iter().zip(&self.derived) {
            if e.is_zero() {
                continue;
            }
            let gens: Vec<Word> = c.seq().iter().map(|&g| Word::generator(g)).collect();
            let comm = Word::left_normed(&gens).expect("nonempty");
            w = w.mul(&comm.pow(e).expect("basic commutator power"));
        }
        w
    }

    pub fn layer_range(params: GroupParams, w: usize) -> std::ops::Range<usize> {
        Context::get(params).layer(w)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.params == other.ctx.params && self.exp == other.exp && self.derived == other.derived
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.params.hash(state);
        self.exp.hash(state);
        self.derived.hash(state);
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self.rank();
        let mut parts = Vec::new();
        for (g, e) in self.exp.iter().enumerate() {
            if !e.is_zero() {
                parts.push(power(&generator_name(g, rank), e));
            }
        }
        for (c, e) in self.ctx.basis.iter().zip(&self.derived) {
            if !e.is_zero() {
                parts.push(power(&c.display(rank), e));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({}; {})", self.params(), self)
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        Element::mul(self, rhs)
    }
}
