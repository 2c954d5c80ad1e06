use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::words::generator_name;
use crate::{Error, GroupParams, Result};

/// A left-normed generator commutator `[b1, b2, …, bw]` with
/// `b1 > b2 <= b3 <= … <= bw` and `w >= 2`.
///
/// Ordering is the canonical one: weight first, then lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasicCommutator(Vec<usize>);

impl BasicCommutator {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        if is_basic_shape(&seq) {
            Ok(BasicCommutator(seq))
        } else {
            Err(Error::InvalidBasic(seq))
        }
    }

    pub(crate) fn new_unchecked(seq: Vec<usize>) -> Self {
        debug_assert!(is_basic_shape(&seq), "{seq:?}");
        BasicCommutator(seq)
    }

    pub fn seq(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn display(&self, rank: usize) -> String {
        let names: Vec<_> = self.0.iter().map(|&g| generator_name(g, rank)).collect();
        format!("[{}]", names.join(","))
    }
}

impl Ord for BasicCommutator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BasicCommutator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn is_basic_shape(seq: &[usize]) -> bool {
    seq.len() >= 2 && seq[0] > seq[1] && seq[1..].windows(2).all(|w| w[0] <= w[1])
}

/// All basic commutators of weight `w` on `params.rank` generators, in
/// canonical order. Their number is `(w-1) * C(d+w-2, w)`.
pub fn enumerate_basics(params: GroupParams, w: usize) -> Result<Vec<BasicCommutator>> {
    if w < 2 || w > params.class {
        return Err(Error::WeightOutOfRange { weight: w, min: 2, max: params.class });
    }
    Ok(enumerate_weight(params.rank, w))
}

pub(crate) fn enumerate_weight(d: usize, w: usize) -> Vec<BasicCommutator> {
    let mut out = Vec::new();
    let mut seq = vec![0; w];
    for b1 in 0..d {
        for b2 in 0..b1 {
            seq[0] = b1;
            seq[1] = b2;
            fill_tail(&mut seq, 2, b2, d, &mut out);
        }
    }
    out.sort();
    out
}

fn fill_tail(seq: &mut Vec<usize>, pos: usize, min: usize, d: usize, out: &mut Vec<BasicCommutator>) {
    if pos == seq.len() {
        out.push(BasicCommutator(seq.clone()));
        return;
    }
    for g in min..d {
        seq[pos] = g;
        fill_tail(seq, pos + 1, g, d, out);
    }
}

/// Expands the left-normed commutator of the generators in `seq` over basic
/// commutators, as a list of `(basic sequence, coefficient)` terms.
///
/// Uses `[x,y] = [y,x]^-1`, `[t,x,y] = [t,y,x]` for `t` in the derived
/// subgroup and the Jacobi relation `[x,y,z][y,z,x][z,x,y] = 1`. Sequences
/// longer than `class` vanish.
pub(crate) fn expand_left_normed(seq: &[usize], class: usize) -> Vec<(Vec<usize>, i64)> {
    if seq.len() < 2 || seq.len() > class || seq[0] == seq[1] {
        return Vec::new();
    }
    let (mut x, mut y, mut sign) = (seq[0], seq[1], 1i64);
    if x < y {
        std::mem::swap(&mut x, &mut y);
        sign = -1;
    }
    let mut tail = seq[2..].to_vec();
    tail.sort_unstable();
    match tail.first() {
        Some(&z) if z < y => {
            // [x,y,z,R] = [x,z,y,R] - [y,z,x,R], all three heads now basic
            let rest = &tail[1..];
            let with = |head: [usize; 2], extra: usize| {
                let mut t = rest.to_vec();
                t.push(extra);
                t.sort_unstable();
                let mut s = head.to_vec();
                s.extend(t);
                s
            };
            vec![(with([x, z], y), sign), (with([y, z], x), -sign)]
        }
        _ => {
            let mut s = vec![x, y];
            s.extend(tail);
            vec![(s, sign)]
        }
    }
}

/// Sparse integer combination of basic commutators; an element of the
/// derived subgroup written additively. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DerivedVector(BTreeMap<BasicCommutator, BigInt>);

impl DerivedVector {
    pub fn new() -> Self {
        DerivedVector::default()
    }

    pub fn add_term(&mut self, c: BasicCommutator, coef: impl Into<BigInt>) {
        let coef = coef.into();
        if coef.is_zero() {
            return;
        }
        let entry = self.0.entry(c.clone()).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.0.remove(&c);
        }
    }

    pub fn get(&self, c: &BasicCommutator) -> BigInt {
        self.0.get(c).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&BasicCommutator, &BigInt)> {
        self.0.iter()
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.0.keys().map(BasicCommutator::weight).max()
    }

    pub fn display(&self, rank: usize) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|(c, e)| power(&c.display(rank), e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl FromIterator<(BasicCommutator, BigInt)> for DerivedVector {
    fn from_iter<I: IntoIterator<Item = (BasicCommutator, BigInt)>>(iter: I) -> Self {
        let mut v = DerivedVector::new();
        for (c, e) in iter {
            v.add_term(c, e);
        }
        v
    }
}

impl fmt::Display for DerivedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self.0.keys().flat_map(|c| c.seq().iter().copied()).max().map_or(1, |g| g + 1);
        f.write_str(&self.display(rank))
    }
}

pub(crate) fn power(base: &str, e: &BigInt) -> String {
    if e.is_one() {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

/// Expansion of the left-normed commutator `[c1, …, cw]` of generators as a
/// combination of basic commutators of `M` with the given parameters.
///
/// # Panics
/// If a generator index is not below the rank.
pub fn normalize_left_normed(seq: &[usize], params: GroupParams) -> DerivedVector {
    assert!(seq.iter().all(|&g| g < params.rank), "generator out of range in {seq:?}");
    expand_left_normed(seq, params.class)
        .into_iter()
        .map(|(s, c)| (BasicCommutator::new_unchecked(s), BigInt::from(c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, r: usize) -> usize {
        if r > n {
            return 0;
        }
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Brute force: every sequence in `0..d` of length `w`, filtered by shape.
    fn brute_force(d: usize, w: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let total = d.pow(w as u32);
        for code in 0..total {
            let mut c = code;
            let mut seq = Vec::with_capacity(w);
            for _ in 0..w {
                seq.push(c % d);
                c /= d;
            }
            seq.reverse();
            if is_basic_shape(&seq) {
                out.push(seq);
            }
        }
        out
    }

    #[test]
    fn small_enumerations() {
        let p = GroupParams::new(2, 3).unwrap();
        let seqs = |w| enumerate_basics(p, w).unwrap().into_iter().map(|c| c.0).collect::<Vec<_>>();
        assert_eq!(seqs(2), vec![vec![1, 0]]);
        assert_eq!(seqs(3), vec![vec![1, 0, 0], vec![1, 0, 1]]);
        assert_eq!(enumerate_basics(GroupParams::new(3, 3).unwrap(), 3).unwrap().len(), 8);
        assert!(enumerate_basics(p, 1).is_err());
        assert!(enumerate_basics(p, 4).is_err());
    }

    #[test]
    fn counts_match_brute_force_and_formula() {
        for d in 1..=3 {
            for w in 2..=6 {
                let listed: Vec<_> = enumerate_weight(d, w).into_iter().map(|c| c.0).collect();
                let brute = brute_force(d, w);
                assert_eq!(listed, brute, "d={d} w={w}");
                assert_eq!(listed.len(), (w - 1) * binomial(d + w - 2, w), "d={d} w={w}");
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let p = GroupParams::new(3, 3).unwrap();
        assert!(normalize_left_normed(&[0, 0], p).is_empty());
        let bc = |s: Vec<usize>| BasicCommutator::new(s).unwrap();

        let abc = normalize_left_normed(&[0, 1, 2], p);
        assert_eq!(abc, [(bc(vec![1, 0, 2]), BigInt::from(-1))].into_iter().collect());

        let cba = normalize_left_normed(&[2, 1, 0], p);
        let expected: DerivedVector =
            [(bc(vec![2, 0, 1]), BigInt::from(1)), (bc(vec![1, 0, 2]), BigInt::from(-1))].into_iter().collect();
        assert_eq!(cba, expected);

        // weight above the class vanishes
        assert!(normalize_left_normed(&[1, 0, 0, 0], p).is_empty());
    }

    #[test]
    fn normalize_is_identity_on_basics() {
        let p = GroupParams::new(3, 5).unwrap();
        for w in 2..=5 {
            for c in enumerate_basics(p, w).unwrap() {
                let v = normalize_left_normed(c.seq(), p);
                assert_eq!(v, [(c.clone(), BigInt::one())].into_iter().collect());
            }
        }
    }

    #[test]
    fn ordering_is_weight_then_lex() {
        let a = BasicCommutator::new(vec![2, 1]).unwrap();
        let b = BasicCommutator::new(vec![1, 0, 0]).unwrap();
        assert!(a < b);
    }
}
