use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::delta::{delta_min, delta_shift, enumerate_deltas, eval_delta_comm, DeltaFunction};
use crate::group::enumerate_basics;
use crate::lattice::{smith_normal_form, IntMatrix};
use crate::{Element, Error, GroupParams, Result};

/// Exponents `ε(i, Δ)` of `w = ∏ [a_s, a_i, Δ]^{ε(i,Δ)}`. Zero entries are
/// not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExponentAssignment {
    entries: BTreeMap<(usize, DeltaFunction), BigInt>,
}

impl ExponentAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, i: usize, delta: DeltaFunction, e: impl Into<BigInt>) {
        let e = e.into();
        if e.is_zero() {
            self.entries.remove(&(i, delta));
        } else {
            self.entries.insert((i, delta), e);
        }
    }

    pub fn get(&self, i: usize, delta: &DeltaFunction) -> BigInt {
        self.entries.get(&(i, delta.clone())).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &DeltaFunction, &BigInt)> {
        self.entries.iter().map(|((i, d), e)| (*i, d, e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl FromIterator<(usize, DeltaFunction, BigInt)> for ExponentAssignment {
    fn from_iter<T: IntoIterator<Item = (usize, DeltaFunction, BigInt)>>(iter: T) -> Self {
        let mut out = ExponentAssignment::new();
        for (i, d, e) in iter {
            let cur = out.get(i, &d);
            out.set(i, d, cur + e);
        }
        out
    }
}

/// Rank data for the map `ε ↦ w` restricted to `i ≠ s` and `Δ` of degree
/// `k - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceCertificate {
    pub s: usize,
    pub degree: usize,
    pub rank: usize,
    pub columns: usize,
    pub elementary_divisors: Vec<BigInt>,
    pub injective: bool,
}

fn check_assignment(eps: &ExponentAssignment, s: usize, params: GroupParams) -> Result<usize> {
    let (d, k) = (params.rank, params.class);
    if k < 2 {
        return Err(Error::WeightOutOfRange { weight: k, min: 2, max: usize::MAX });
    }
    if s >= d {
        return Err(Error::InvalidInput(format!("index {s} out of range for rank {d}")));
    }
    let degree = k - 2;
    for (i, delta, _) in eps.iter() {
        if i >= d {
            return Err(Error::InvalidInput(format!("index {i} out of range for rank {d}")));
        }
        if delta.degree() != degree {
            return Err(Error::InvalidDelta(format!("{delta} has degree {}, expected {degree}", delta.degree())));
        }
        if delta.values()[d.min(delta.values().len())..].iter().any(|&v| v != 0) {
            return Err(Error::InvalidDelta(format!("{delta} has support beyond rank {d}")));
        }
    }
    Ok(degree)
}

fn basic_seq(x: usize, y: usize, delta: &DeltaFunction) -> Vec<usize> {
    let mut seq = vec![x, y];
    seq.extend(delta.expand());
    seq
}

/// `[a_s, a_i, Δ]` as a signed combination of basic commutators.
fn rewrite_term(s: usize, i: usize, delta: &DeltaFunction) -> Result<Vec<(Vec<usize>, i64)>> {
    if i == s {
        return Ok(Vec::new());
    }
    if delta.is_zero() {
        return Ok(if s > i { vec![(vec![s, i], 1)] } else { vec![(vec![i, s], -1)] });
    }
    let m = delta_min(delta)?;
    Ok(if i <= m && i < s {
        vec![(basic_seq(s, i, delta), 1)]
    } else if i <= m || s <= m {
        // s < i ≤ m or s ≤ m < i
        vec![(basic_seq(i, s, delta), -1)]
    } else {
        vec![
            (basic_seq(i, m, &delta_shift(delta, m, s)?), -1),
            (basic_seq(s, m, &delta_shift(delta, m, i)?), 1),
        ]
    })
}

fn layer_index(params: GroupParams, w: usize) -> Result<HashMap<Vec<usize>, usize>> {
    Ok(enumerate_basics(params, w)?.into_iter().enumerate().map(|(n, c)| (c.seq().to_vec(), n)).collect())
}

fn rewrite_with(
    eps: &ExponentAssignment,
    s: usize,
    index: &HashMap<Vec<usize>, usize>,
) -> Result<Vec<BigInt>> {
    let mut out = vec![BigInt::zero(); index.len()];
    for (i, delta, e) in eps.iter() {
        for (seq, sign) in rewrite_term(s, i, delta)? {
            let n = index[&seq];
            out[n] += e * sign;
        }
    }
    Ok(out)
}

/// Layer coordinates of `w = ∏ [a_s, a_i, Δ]^{ε(i,Δ)}` in `γ_k`, obtained
/// by rewriting every factor onto basic commutators: when `i` or `s` is at
/// most `m(Δ)` the factor is basic up to sign, otherwise
/// `[a_s,a_i,Δ] = [a_i,a_m,Δ_(m)^(s)]^{-1} [a_s,a_m,Δ_(m)^(i)]`.
pub fn lemma32_rewrite(eps: &ExponentAssignment, s: usize, params: GroupParams) -> Result<Vec<BigInt>> {
    let degree = check_assignment(eps, s, params)?;
    rewrite_with(eps, s, &layer_index(params, degree + 2)?)
}

/// The same coordinates by collecting the product.
pub fn lemma32_direct(eps: &ExponentAssignment, s: usize, params: GroupParams) -> Result<Vec<BigInt>> {
    check_assignment(eps, s, params)?;
    let gens = Element::generators(params);
    let mut w = Element::identity(params);
    for (i, delta, e) in eps.iter() {
        w = w.mul(&eval_delta_comm(&gens[s], &gens[i], delta)?.pow(e));
    }
    w.gamma_layer(params.class)
}

/// Columns of the map `ε ↦ w` over the unknowns `(i, Δ)`, `i ≠ s`, in the
/// order returned alongside.
pub(crate) fn rewrite_columns(s: usize, params: GroupParams) -> Result<(Vec<(usize, DeltaFunction)>, Vec<Vec<BigInt>>)> {
    let d = params.rank;
    let index = layer_index(params, params.class)?;
    let mut unknowns = Vec::new();
    let mut columns = Vec::new();
    for delta in enumerate_deltas(d, params.class - 2) {
        for i in (0..d).filter(|&i| i != s) {
            let mut eps = ExponentAssignment::new();
            eps.set(i, delta.clone(), BigInt::one());
            columns.push(rewrite_with(&eps, s, &index)?);
            unknowns.push((i, delta.clone()));
        }
    }
    Ok((unknowns, columns))
}

/// Whether `w = 1` forces every `ε(i, Δ)` with `i ≠ s` to vanish.
pub fn lemma32_independent(s: usize, params: GroupParams) -> Result<IndependenceCertificate> {
    if params.rank < 2 {
        return Err(Error::RankTooSmall { rank: params.rank, min: 2 });
    }
    if params.class < 2 {
        return Err(Error::WeightOutOfRange { weight: params.class, min: 2, max: usize::MAX });
    }
    if s >= params.rank {
        return Err(Error::InvalidInput(format!("index {s} out of range for rank {}", params.rank)));
    }
    let (unknowns, columns) = rewrite_columns(s, params)?;
    let rows = Element::layer_range(params, params.class).len();
    let snf = smith_normal_form(&IntMatrix::from_columns(&columns, rows));
    let rank = snf.rank();
    Ok(IndependenceCertificate {
        s,
        degree: params.class - 2,
        rank,
        columns: unknowns.len(),
        elementary_divisors: snf.elementary_divisors(),
        injective: rank == unknowns.len(),
    })
}
