use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::magnus::oracle_equal;
use crate::words::parse_word;
use crate::{GroupParams, Word};

fn params(d: usize, k: usize) -> GroupParams {
    GroupParams::new(d, k).unwrap()
}

fn el(text: &str, p: GroupParams) -> Element {
    Element::parse(text, p).unwrap()
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn basic(seq: &[usize]) -> BasicCommutator {
    BasicCommutator::new(seq.to_vec()).unwrap()
}

#[test]
fn collect_examples() {
    let p = params(2, 3);
    assert!(el("", p).is_identity());
    let c = el("a^-1 b^-1 a b", p);
    assert_eq!(c.exp(), &ints(&[0, 0])[..]);
    assert_eq!(c.derived().iter().collect::<Vec<_>>(), vec![(&basic(&[1, 0]), &BigInt::from(-1))]);
    let sq = el("(a b)^2", p);
    assert_eq!(sq.exp(), &ints(&[2, 2])[..]);
    assert_eq!(sq.coordinate(&basic(&[1, 0])), BigInt::from(1));
    assert_eq!(sq.coordinate(&basic(&[1, 0, 1])), BigInt::from(1));
    assert_eq!(sq.coordinate(&basic(&[1, 0, 0])), BigInt::from(0));
    assert_eq!(sq.to_string(), "a^2 b^2 [b,a] [b,a,b]");
}

#[test]
fn mul_and_inverse_examples() {
    let p = params(2, 2);
    let a = Element::generator(p, 0);
    let b = Element::generator(p, 1);
    assert_eq!(a.mul(&Element::identity(p)), a);
    let ab = a.mul(&b);
    assert!(ab.derived().is_empty());
    let ba = b.mul(&a);
    assert_eq!(ba.exp(), &ints(&[1, 1])[..]);
    assert_eq!(ba.coordinate(&basic(&[1, 0])), BigInt::from(1));
    let inv = ab.inverse();
    assert_eq!(inv.exp(), &ints(&[-1, -1])[..]);
    assert_eq!(inv.coordinate(&basic(&[1, 0])), BigInt::from(1));
    assert!(ab.mul(&inv).is_identity());
    assert!(Element::identity(p).inverse().is_identity());
}

#[test]
fn commutator_examples() {
    let p = params(3, 4);
    let x = el("a b^2 c", p);
    assert!(x.commutator(&x).is_identity());
    let c = el("b", p).commutator(&el("a", p));
    assert_eq!(c.to_string(), "[b,a]");
    let t = el("[c,a] [b,a,b]^2", p);
    let y = el("a c^-1 b", p);
    assert_eq!(t.pow_i64(3).commutator(&y), t.commutator(&y).pow_i64(3));
}

#[test]
fn left_normed_examples() {
    let p = params(2, 4);
    let (a, b) = (el("a", p), el("b", p));
    assert_eq!(Element::left_normed(&[a.clone()]).unwrap(), a);
    assert_eq!(Element::left_normed_rep(&a, 0, &b).unwrap(), a);
    let lhs = Element::left_normed(&[b.clone(), a.clone(), a.clone()]).unwrap();
    assert_eq!(lhs, Element::left_normed_rep(&b.commutator(&a), 1, &a).unwrap());
    assert_eq!(lhs.to_string(), "[b,a,a]");
    assert!(Element::left_normed(&[]).is_err());
}

#[test]
fn equality_and_truncation() {
    let p = params(2, 3);
    assert!(!el("a b", p).equals(&el("b a", p)).unwrap());
    assert!(el("[b,a,a,a,a]", params(2, 4)).is_identity());
    assert!(!el("[b,a,a,a,a]", params(2, 5)).is_identity());
    assert!(el("a", p).equals(&el("a", params(2, 4))).is_err());
}

#[test]
fn reduce_class_examples() {
    let p = params(2, 3);
    let x = el("(a b)^2", p);
    assert_eq!(x.reduce_class(3).unwrap(), x);
    let r = x.reduce_class(2).unwrap();
    assert_eq!(r.to_string(), "a^2 b^2 [b,a]");
    let ab = x.reduce_class(1).unwrap();
    assert!(ab.derived().is_empty());
    assert_eq!(ab.exp(), x.exp());
    assert!(x.reduce_class(4).is_err());
    assert!(x.reduce_class(0).is_err());
    assert_eq!(r.lift_class(3).unwrap().reduce_class(2).unwrap(), r);
}

#[test]
fn gamma_layer_examples() {
    let p = params(2, 3);
    assert_eq!(Element::identity(p).gamma_layer(3).unwrap(), ints(&[0, 0]));
    assert_eq!(el("[b,a,a]", p).gamma_layer(3).unwrap(), ints(&[1, 0]));
    let q = params(3, 3);
    let layer = el("[c,b,a]", q).gamma_layer(3).unwrap();
    let basics = enumerate_basics(q, 3).unwrap();
    for (c, v) in basics.iter().zip(&layer) {
        let expected = match c.seq() {
            [2, 0, 1] => 1,
            [1, 0, 2] => -1,
            _ => 0,
        };
        assert_eq!(v, &BigInt::from(expected), "{}", c.display(3));
    }
    assert!(matches!(el("[b,a]", p).gamma_layer(3), Err(crate::Error::NotInLayer { .. })));
    assert!(matches!(el("a", p).gamma_layer(2), Err(crate::Error::NotInLayer { .. })));
}

#[test]
fn abelian_and_cyclic_groups() {
    let p = params(3, 1);
    assert_eq!(el("[a,b] b a", p), el("a b", p));
    let q = params(1, 4);
    assert_eq!(el("a^3 a^-5", q).exp(), &ints(&[-2])[..]);
}

#[test]
fn huge_exponents_stay_exact() {
    let p = params(2, 3);
    let x = el("a^1000000000000 b^-999999999999", p);
    let y = el("b^123456789123 a", p);
    assert_eq!(x.mul(&y).mul(&y.inverse()), x);
    let big = x.pow(&BigInt::from(10).pow(20));
    assert_eq!(big.mul(&big.inverse()), Element::identity(p));
}

fn arb_word(d: usize, len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..d, -3i64..=3), 0..=len).prop_map(Word::from_letters)
}

fn arb_params() -> impl Strategy<Value = GroupParams> {
    (1usize..=3, 1usize..=5).prop_map(|(d, k)| params(d, k))
}

fn arb_elements(n: usize) -> impl Strategy<Value = (GroupParams, Vec<Element>)> {
    arb_params().prop_flat_map(move |p| {
        prop::collection::vec(arb_word(p.rank, 8), n)
            .prop_map(move |ws| (p, ws.iter().map(|w| Element::collect(w, p).unwrap()).collect()))
    })
}

fn arb_derived(p: GroupParams) -> impl Strategy<Value = Element> {
    prop::collection::vec((0..p.rank, 0..p.rank, -3i64..=3), 1..4).prop_map(move |terms| {
        let mut t = Element::identity(p);
        for (i, j, n) in terms {
            let c = Element::generator(p, i).commutator(&Element::generator(p, j));
            t = t.mul(&c.pow_i64(n));
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms((_p, xs) in arb_elements(3)) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(x.mul(y).mul(z), x.mul(&y.mul(z)));
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert!(x.inverse().mul(x).is_identity());
        prop_assert_eq!(x.mul(&Element::identity(x.params())), x.clone());
    }

    #[test]
    fn collection_is_a_homomorphism(p in arb_params(), (w1, w2) in (arb_word(3, 10), arb_word(3, 10))) {
        let keep = (0..p.rank).collect();
        let (w1, w2) = (w1.retract(&keep), w2.retract(&keep));
        let lhs = Element::collect(&w1.mul(&w2), p).unwrap();
        prop_assert_eq!(lhs, Element::collect(&w1, p).unwrap().mul(&Element::collect(&w2, p).unwrap()));
    }

    #[test]
    fn metabelian_law((_p, xs) in arb_elements(4)) {
        let c1 = xs[0].commutator(&xs[1]);
        let c2 = xs[2].commutator(&xs[3]);
        prop_assert!(c1.commutator(&c2).is_identity());
    }

    #[test]
    fn nilpotency((p, xs) in arb_elements(6)) {
        let chain: Vec<Element> = xs.iter().cycle().take(p.class + 1).cloned().collect();
        prop_assert!(Element::left_normed(&chain).unwrap().is_identity());
    }

    #[test]
    fn commutator_identities((xs, t) in arb_elements(3)
            .prop_filter("nonabelian", |(p, _)| p.rank >= 2 && p.class >= 2)
            .prop_flat_map(|(p, xs)| (Just(xs), arb_derived(p))),
        lambda in -4i64..=4) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(x.mul(&t).commutator(y), x.commutator(y).mul(&t.commutator(y)));
        prop_assert_eq!(t.pow_i64(lambda).commutator(y), t.commutator(y).pow_i64(lambda));
        let triple = |a: &Element, b: &Element, c: &Element| Element::left_normed(&[a.clone(), b.clone(), c.clone()]).unwrap();
        prop_assert!(triple(x, y, z).mul(&triple(y, z, x)).mul(&triple(z, x, y)).is_identity());
        prop_assert_eq!(triple(&t, x, y), triple(&t, y, x));
    }

    #[test]
    fn oracle_agreement(p in arb_params(), w1 in arb_word(3, 12), w2 in arb_word(3, 12)) {
        let keep = (0..p.rank).collect();
        let (w1, w2) = (w1.retract(&keep), w2.retract(&keep));
        let collected = Element::collect(&w1, p).unwrap() == Element::collect(&w2, p).unwrap();
        prop_assert_eq!(collected, oracle_equal(&w1, &w2, p).unwrap());
    }

    #[test]
    fn canonical_word_recollects((_p, xs) in arb_elements(1)) {
        let x = &xs[0];
        prop_assert_eq!(&Element::collect(&x.to_word(), x.params()).unwrap(), x);
        let reparsed = Element::collect(&parse_word(&x.to_string(), x.params()).unwrap(), x.params()).unwrap();
        prop_assert_eq!(&reparsed, x);
    }
}
