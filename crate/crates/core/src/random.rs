//! Seeded random samples of words, elements and automorphism data, for
//! property checks and the verification suites.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autos::{AutoSpec, GenInnerData, NestedGenInnerData};
use crate::{Element, GroupParams, Word};

/// The generator used throughout; identical seeds give identical samples.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    let x = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        x
    } else {
        -x
    }
}

/// A word with up to `max_len` syllables and exponents in `-2..=2`.
pub fn word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| (rng.gen_range(0..rank), nonzero(rng, 2))))
}

pub fn element<R: Rng>(rng: &mut R, params: GroupParams, max_len: usize) -> Element {
    Element::collect(&word(rng, params.rank, max_len), params).expect("letters within rank")
}

/// An element that is not in `M'`.
pub fn element_outside_derived<R: Rng>(rng: &mut R, params: GroupParams, max_len: usize) -> Element {
    loop {
        let x = element(rng, params, max_len.max(1));
        if !x.is_in_derived_subgroup() {
            return x;
        }
    }
}

/// A random element of `M'`: a short product of commutators of short
/// elements.
pub fn derived_element<R: Rng>(rng: &mut R, params: GroupParams) -> Element {
    let n = rng.gen_range(1..=3);
    (0..n).fold(Element::identity(params), |acc, _| {
        let x = element(rng, params, 3);
        let y = element(rng, params, 3);
        acc.mul(&x.commutator(&y))
    })
}

/// Generalized inner data with `1..=max_pairs` pairs and exponents in `-3..=3`.
pub fn gen_inner<R: Rng>(rng: &mut R, params: GroupParams, max_pairs: usize, max_len: usize) -> GenInnerData {
    let m = rng.gen_range(1..=max_pairs.max(1));
    let pairs: Vec<(Element, BigInt)> =
        (0..m).map(|_| (element_outside_derived(rng, params, max_len), BigInt::from(nonzero(rng, 3)))).collect();
    GenInnerData::new(params, pairs).expect("params match")
}

pub fn nested<R: Rng>(rng: &mut R, params: GroupParams, max_terms: usize, max_tail: usize) -> NestedGenInnerData {
    let m = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(Vec<Element>, BigInt)> = (0..m)
        .map(|_| {
            let l = rng.gen_range(1..=max_tail.max(1));
            let tail = (0..l).map(|_| element(rng, params, 3)).collect();
            (tail, BigInt::from(nonzero(rng, 3)))
        })
        .collect();
    NestedGenInnerData::new(params, terms).expect("params match")
}

/// An IA endomorphism `a_i ↦ a_i t_i` with random `t_i ∈ M'`; some `t_i`
/// are left trivial.
pub fn ia_spec<R: Rng>(rng: &mut R, params: GroupParams) -> AutoSpec {
    let images = Element::generators(params)
        .into_iter()
        .map(|a| if rng.gen_bool(0.25) { a } else { a.mul(&derived_element(rng, params)) })
        .collect();
    AutoSpec::new(params, images).expect("params match")
}

/// A word in the kernel of `F → M`: either a commutator of two commutators
/// or a left-normed commutator of weight `k + 1`, built from short words.
pub fn relator<R: Rng>(rng: &mut R, params: GroupParams) -> Word {
    let d = params.rank;
    if rng.gen_bool(0.5) {
        let mut c = || Word::commutator(&word(rng, d, 2), &word(rng, d, 2));
        Word::commutator(&c(), &c())
    } else {
        let ws: Vec<Word> = (0..=params.class).map(|_| word(rng, d, 1)).collect();
        Word::left_normed(&ws).expect("nonempty")
    }
}

/// `w` with a random relator inserted at a random position; equal to `w`
/// in the group.
pub fn spliced<R: Rng>(rng: &mut R, w: &Word, params: GroupParams) -> Word {
    let letters = w.letters();
    let mid = rng.gen_range(0..=letters.len());
    let part = |ls: &[crate::words::Letter]| Word::from_letters(ls.iter().map(|l| (l.gen, l.exp.clone())));
    part(&letters[..mid]).mul(&relator(rng, params)).mul(&part(&letters[mid..]))
}

/// Picks a `(rank, class)` pair uniformly from the given ranges.
pub fn params_in<R: Rng>(rng: &mut R, ranks: &[usize], classes: &[usize]) -> GroupParams {
    let d = *ranks.choose(rng).expect("nonempty");
    let k = *classes.choose(rng).expect("nonempty");
    GroupParams::new(d, k).expect("positive parameters")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_samples() {
        let params = GroupParams::new(3, 4).unwrap();
        let a: Vec<Element> = (0..5).map({
            let mut r = seeded(7);
            move |_| element(&mut r, params, 10)
        }).collect();
        let b: Vec<Element> = (0..5).map({
            let mut r = seeded(7);
            move |_| element(&mut r, params, 10)
        }).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn samples_have_the_promised_shape() {
        let params = GroupParams::new(2, 4).unwrap();
        let mut rng = seeded(1);
        for _ in 0..20 {
            assert!(derived_element(&mut rng, params).is_in_derived_subgroup());
            assert!(!element_outside_derived(&mut rng, params, 4).is_in_derived_subgroup());
            assert!(ia_spec(&mut rng, params).is_ia());
            let w = word(&mut rng, 2, 10);
            assert_eq!(Element::collect(&spliced(&mut rng, &w, params), params).unwrap(), Element::collect(&w, params).unwrap());
        }
    }
}
