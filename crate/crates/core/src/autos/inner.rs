use num_bigint::BigInt;
use num_traits::Zero;

use super::AutoSpec;
use crate::lattice::{integer_solve, IntMatrix, IntegerSolution};
use crate::{Element, Result};

/// An element `u` with `f(x) = u^{-1} x u` for all `x`, if there is one.
///
/// Writing `f(a_i) = a_i δ_i`, we need `[a_i, u] = δ_i` for every `i`. The
/// conjugator is built one lower-central layer at a time: if `u` already
/// matches modulo `γ_w`, a correction `z ∈ γ_{w-1}` must satisfy
/// `[a_i, z] ≡ δ_i [a_i, u]^{-1} (mod γ_{w+1})`, which is linear in the
/// layer-`(w-1)` coordinates of `z`.
pub fn is_inner(f: &AutoSpec) -> Result<Option<Element>> {
    f.require_ia()?;
    let params = f.params();
    let (d, k) = (params.rank, params.class);
    let gens = Element::generators(params);
    let deltas: Vec<Element> = gens.iter().zip(f.images()).map(|(a, fa)| a.inverse().mul(fa)).collect();
    let mut u = Element::identity(params);
    for w in 2..=k {
        let unknowns: Vec<Element> = if w == 2 {
            gens.clone()
        } else {
            Element::layer_range(params, w - 1)
                .map(|i| {
                    let mut coords = vec![BigInt::zero(); Element::basis(params).len()];
                    coords[i] = BigInt::from(1);
                    Element::from_derived_coords(params, coords)
                })
                .collect()
        };
        let layer = Element::layer_range(params, w);
        let mut rhs = Vec::with_capacity(d * layer.len());
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d * layer.len());
        for (a, delta) in gens.iter().zip(&deltas) {
            let residual = a.commutator(&u).inverse().mul(delta);
            if residual.depth().is_some_and(|dw| dw < w) {
                return Ok(None);
            }
            rhs.extend_from_slice(&residual.derived_coords()[layer.clone()]);
            let columns: Vec<Element> = unknowns.iter().map(|z| a.commutator(z)).collect();
            for r in layer.clone() {
                rows.push(columns.iter().map(|c| c.derived_coords()[r].clone()).collect());
            }
        }
        let matrix = IntMatrix::from_rows(rows, unknowns.len());
        match integer_solve(&matrix, &rhs)? {
            IntegerSolution::Infeasible(_) => return Ok(None),
            IntegerSolution::Solvable { particular, .. } => {
                let z = unknowns
                    .iter()
                    .zip(&particular)
                    .fold(Element::identity(params), |acc, (b, x)| acc.mul(&b.pow(x)));
                u = u.mul(&z);
            }
        }
    }
    let matches = gens.iter().zip(f.images()).all(|(a, fa)| a.conjugate(&u) == *fa);
    Ok(matches.then_some(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{gen_inner_to_spec, GenInnerData};
    use crate::GroupParams;

    #[test]
    fn conjugations_are_recognized() {
        let params = GroupParams::new(3, 4).unwrap();
        for text in ["a b", "c^-2 a [b,a]", "b^3 c a^-1 [c,a,b]"] {
            let u = Element::parse(text, params).unwrap();
            let f = gen_inner_to_spec(&GenInnerData::conjugation(&u));
            let v = is_inner(&f).unwrap().expect("conjugation is inner");
            assert!(gen_inner_to_spec(&GenInnerData::conjugation(&v)) == f);
        }
    }

    #[test]
    fn identity_is_inner() {
        let params = GroupParams::new(2, 5).unwrap();
        let u = is_inner(&AutoSpec::identity(params)).unwrap().unwrap();
        assert!(u.is_identity());
    }

    #[test]
    fn x_times_x_a_a_is_not_inner() {
        let params = GroupParams::new(2, 3).unwrap();
        let f = AutoSpec::parse(params, &["a [a,a,a]", "b [b,a,a]"]).unwrap();
        assert_eq!(is_inner(&f).unwrap(), None);
    }

    #[test]
    fn non_ia_is_an_error() {
        let params = GroupParams::new(2, 3).unwrap();
        let f = AutoSpec::parse(params, &["a^-1", "b"]).unwrap();
        assert!(is_inner(&f).is_err());
    }
}
