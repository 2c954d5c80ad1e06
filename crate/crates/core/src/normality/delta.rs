use std::fmt;

use crate::{Element, Error, GroupParams, Result};

/// A function `Δ : {0..r} → ℕ`, stored as its values. Indices past the end
/// count as zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaFunction {
    values: Vec<usize>,
}

impl DeltaFunction {
    pub fn new(values: Vec<usize>) -> Self {
        DeltaFunction { values }
    }

    pub fn zero(len: usize) -> Self {
        DeltaFunction { values: vec![0; len] }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, j: usize) -> usize {
        self.values.get(j).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.values.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// The generator sequence `a_0 (Δ(0) times), a_1 (Δ(1) times), …`.
    pub fn expand(&self) -> Vec<usize> {
        self.values.iter().enumerate().flat_map(|(j, &n)| std::iter::repeat(j).take(n)).collect()
    }

    /// The function counting occurrences in `seq`.
    pub fn from_sequence(seq: &[usize], len: usize) -> Self {
        let mut values = vec![0; len.max(seq.iter().map(|&g| g + 1).max().unwrap_or(0))];
        for &g in seq {
            values[g] += 1;
        }
        DeltaFunction { values }
    }

    fn padded(&self, len: usize) -> DeltaFunction {
        let mut values = self.values.clone();
        if values.len() < len {
            values.resize(len, 0);
        }
        DeltaFunction { values }
    }
}

impl fmt::Display for DeltaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `m(Δ)`, the least index with `Δ(j) ≠ 0`.
pub fn delta_min(delta: &DeltaFunction) -> Result<usize> {
    delta.values.iter().position(|&v| v != 0).ok_or_else(|| Error::InvalidDelta("the zero function has no least support index".into()))
}

/// `Δ_{(j)}^{(j')}`: one fewer at `j`, one more at `j'`.
pub fn delta_shift(delta: &DeltaFunction, j: usize, j_prime: usize) -> Result<DeltaFunction> {
    if j == j_prime {
        return Err(Error::InvalidDelta(format!("shift indices coincide ({j})")));
    }
    if delta.get(j) == 0 {
        return Err(Error::InvalidDelta(format!("Δ({j}) = 0 cannot be decreased")));
    }
    let mut out = delta.padded(j_prime + 1);
    out.values[j] -= 1;
    out.values[j_prime] += 1;
    Ok(out)
}

/// All functions on `{0..len-1}` of the given degree, in lexicographic
/// order of their expanded sequences.
pub fn enumerate_deltas(len: usize, degree: usize) -> Vec<DeltaFunction> {
    fn rec(len: usize, start: usize, left: usize, seq: &mut Vec<usize>, out: &mut Vec<DeltaFunction>) {
        if left == 0 {
            out.push(DeltaFunction::from_sequence(seq, len));
            return;
        }
        for g in start..len {
            seq.push(g);
            rec(len, g, left - 1, seq, out);
            seq.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if degree == 0 {
            out.push(DeltaFunction::zero(0));
        }
        return out;
    }
    rec(len, 0, degree, &mut Vec::new(), &mut out);
    out
}

/// `[x, y, Δ] = [x, y, _{Δ(0)} a_0, …, _{Δ(r)} a_r]`.
pub fn eval_delta_comm(x: &Element, y: &Element, delta: &DeltaFunction) -> Result<Element> {
    let params: GroupParams = x.params();
    params.check_same(y.params())?;
    if delta.values.len() > params.rank && delta.values[params.rank..].iter().any(|&v| v != 0) {
        return Err(Error::InvalidDelta(format!("support beyond rank {}", params.rank)));
    }
    let gens = Element::generators(params);
    let mut acc = x.commutator(y);
    for g in delta.expand() {
        acc = acc.commutator(&gens[g]);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, k: usize) -> GroupParams {
        GroupParams::new(d, k).unwrap()
    }

    #[test]
    fn min_and_shift() {
        let delta = DeltaFunction::new(vec![0, 2, 1]);
        assert_eq!(delta_min(&delta).unwrap(), 1);
        let shifted = delta_shift(&delta, 1, 0).unwrap();
        assert_eq!(shifted, DeltaFunction::new(vec![1, 1, 1]));
        assert_eq!(shifted.degree(), delta.degree());
        assert!(delta_min(&DeltaFunction::zero(3)).is_err());
        assert!(delta_shift(&delta, 0, 1).is_err());
        assert!(delta_shift(&delta, 1, 1).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // multisets of size n from d symbols
        assert_eq!(enumerate_deltas(3, 2).len(), 6);
        assert_eq!(enumerate_deltas(2, 3).len(), 4);
        assert_eq!(enumerate_deltas(3, 0), vec![DeltaFunction::zero(3)]);
        assert!(enumerate_deltas(3, 3).iter().all(|d| d.degree() == 3 && d.values().len() == 3));
    }

    #[test]
    fn evaluation() {
        let params = p(3, 3);
        let (a, b, c) = (Element::generator(params, 0), Element::generator(params, 1), Element::generator(params, 2));
        assert_eq!(eval_delta_comm(&c, &b, &DeltaFunction::zero(3)).unwrap(), c.commutator(&b));
        assert_eq!(
            eval_delta_comm(&c, &b, &DeltaFunction::new(vec![1, 0, 0])).unwrap(),
            Element::parse("[c,b,a]", params).unwrap()
        );
        let _ = a;
        assert!(eval_delta_comm(&c, &b, &DeltaFunction::new(vec![0, 0, 0, 1])).is_err());
    }

    #[test]
    fn tail_order_is_irrelevant() {
        let params = p(3, 5);
        let gens = Element::generators(params);
        let x = Element::parse("a b^-1", params).unwrap();
        let y = Element::parse("c a^2", params).unwrap();
        let delta = DeltaFunction::new(vec![1, 1, 1]);
        let expected = eval_delta_comm(&x, &y, &delta).unwrap();
        for perm in [[2, 1, 0], [1, 0, 2], [0, 2, 1]] {
            let got = perm.iter().fold(x.commutator(&y), |acc, &g| acc.commutator(&gens[g]));
            assert_eq!(got, expected);
        }
    }
}
