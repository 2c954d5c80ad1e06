//! Normal closures, the `[x, y, Δ]` symbols, rewriting onto basic
//! commutators, and the synthesizer that decides whether an automorphism is
//! generalized inner.

mod delta;
mod rewrite;
mod synth;

use num_bigint::BigInt;

use crate::lattice::{integer_solve, IntMatrix, IntegerSolution};
use crate::{Element, Error, GroupParams, Result};

pub use delta::{delta_min, delta_shift, enumerate_deltas, eval_delta_comm, DeltaFunction};
pub use rewrite::{
    lemma32_direct, lemma32_independent, lemma32_rewrite, ExponentAssignment, IndependenceCertificate,
};
pub use synth::{poly_to_gen_inner, synthesize_gen_inner, Refusal, Synthesis};

/// All `[a^t b, c_1, …, c_{k-1}]` with each `c_j` ranging over `subset`
/// (all generators when `None`), in lexicographic order of the `c`'s.
pub fn lemma31_generators(
    a_idx: usize,
    b_idx: usize,
    t: i64,
    params: GroupParams,
    subset: Option<&[usize]>,
) -> Result<Vec<Element>> {
    let (d, k) = (params.rank, params.class);
    if a_idx >= d || b_idx >= d {
        return Err(Error::InvalidInput(format!("generator index out of range for rank {d}")));
    }
    if a_idx == b_idx {
        return Err(Error::InvalidInput("the two generators must be distinct".into()));
    }
    if k < 2 {
        return Err(Error::WeightOutOfRange { weight: k, min: 2, max: usize::MAX });
    }
    let all: Vec<usize> = (0..d).collect();
    let subset = subset.unwrap_or(&all);
    if let Some(&bad) = subset.iter().find(|&&c| c >= d) {
        return Err(Error::InvalidInput(format!("subset index {bad} out of range for rank {d}")));
    }
    if !subset.contains(&a_idx) || !subset.contains(&b_idx) {
        return Err(Error::InvalidInput("subset must contain both generators".into()));
    }
    let gens = Element::generators(params);
    let head = gens[a_idx].pow_i64(t).mul(&gens[b_idx]);
    let mut out = Vec::new();
    let mut idx = vec![0usize; k - 1];
    loop {
        out.push(idx.iter().fold(head.clone(), |acc, &j| acc.commutator(&gens[subset[j]])));
        // odometer over subset^(k-1)
        let mut pos = k - 1;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < subset.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Coefficients expressing `w` as a product of powers of `gens`, all in
/// `γ_k` (where they commute), or `None` if `w` is not in their span.
pub fn closure_membership(w: &Element, gens: &[Element]) -> Result<Option<Vec<BigInt>>> {
    let k = w.class();
    let target = w.gamma_layer(k)?;
    let columns = gens
        .iter()
        .map(|g| {
            w.params().check_same(g.params())?;
            g.gamma_layer(k)
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = IntMatrix::from_columns(&columns, target.len());
    Ok(match integer_solve(&matrix, &target)? {
        IntegerSolution::Solvable { particular, .. } => Some(particular),
        IntegerSolution::Infeasible(_) => None,
    })
}
