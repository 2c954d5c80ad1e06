use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::delta::DeltaFunction;
use super::rewrite::rewrite_columns;
use crate::autos::{
    compose_gen_inner, flatten, invert_ia, is_inner, multiplicativity_witness, poly_to_spec, AutoSpec, GenInnerData,
    NestedGenInnerData, PolyAutoData,
};
use crate::lattice::{integer_solve, smith_normal_form, InfeasibilityCertificate, IntMatrix, IntegerSolution};
use crate::{random, Element, Error, GroupParams, Result};

/// Why an automorphism is not generalized inner: after matching it on
/// `M/γ_layer`, the defects cannot be produced by any correction of weight
/// `layer`. `matrix · ε = rhs` is the system over generators `0..` and
/// `certificate` proves it has no integer solution; the rows belonging to
/// generators after `witness_generator` are not needed for that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refusal {
    pub witness_generator: usize,
    pub layer: usize,
    /// Layer coordinates of `a_j^{-1} r(a_j)` for the witness generator `a_j`.
    pub defect: Vec<BigInt>,
    pub matrix: IntMatrix,
    pub rhs: Vec<BigInt>,
    pub certificate: InfeasibilityCertificate,
}

impl Refusal {
    pub fn verify(&self) -> bool {
        self.certificate.verify(&self.matrix, &self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Synthesis {
    GenInner(GenInnerData),
    NotGeneralizedInner(Refusal),
}

impl Synthesis {
    pub fn data(&self) -> Option<&GenInnerData> {
        match self {
            Synthesis::GenInner(g) => Some(g),
            Synthesis::NotGeneralizedInner(_) => None,
        }
    }

    pub fn refusal(&self) -> Option<&Refusal> {
        match self {
            Synthesis::GenInner(_) => None,
            Synthesis::NotGeneralizedInner(r) => Some(r),
        }
    }
}

fn check_bijective_mod_derived(f: &AutoSpec) -> Result<()> {
    let d = f.params().rank;
    let ab = f.abelianization();
    let snf = smith_normal_form(&IntMatrix::from_rows(ab, d));
    if snf.rank() == d && snf.diagonal.iter().all(|x| x.abs().is_one()) {
        Ok(())
    } else {
        Err(Error::NotAutomorphism("the induced map on the abelianization is not invertible".into()))
    }
}

/// Data `g` with `gen_inner_to_spec(g) = f`, or a certificate that none
/// exists.
///
/// Works by induction on the class. Data for `f mod γ_k` is lifted
/// verbatim; the residual `r = ψ^{-1} ∘ f` then moves each `a_j` by an
/// element of `γ_k`, and the remaining correction must have the form
/// `x ↦ x ∏ [x, a_i, Δ]^{ε(i,Δ)}` with `Δ` of degree `k - 2`. The exponents
/// are shared by all generators, which gives one integer system.
pub fn synthesize_gen_inner(f: &AutoSpec) -> Result<Synthesis> {
    let params = f.params();
    if params.rank < 2 {
        return Err(Error::RankTooSmall { rank: params.rank, min: 2 });
    }
    check_bijective_mod_derived(f)?;
    synthesize(f)
}

fn synthesize(f: &AutoSpec) -> Result<Synthesis> {
    let params = f.params();
    let (d, k) = (params.rank, params.class);
    let gens = Element::generators(params);
    if let Some(j) = (0..d).find(|&j| !f.image(j).exp().iter().enumerate().all(|(r, e)| *e == BigInt::from(u8::from(r == j)))) {
        let defect: Vec<BigInt> =
            f.image(j).exp().iter().enumerate().map(|(r, e)| e - BigInt::from(u8::from(r == j))).collect();
        let pos = defect.iter().position(|x| !x.is_zero()).expect("non-IA generator");
        let mut row = vec![BigInt::zero(); d];
        row[pos] = BigInt::one();
        let certificate = InfeasibilityCertificate { row, divisor: BigInt::zero(), residue: defect[pos].clone() };
        return Ok(Synthesis::NotGeneralizedInner(Refusal {
            witness_generator: j,
            layer: 1,
            matrix: IntMatrix::zeros(d, 0),
            rhs: defect.clone(),
            defect,
            certificate,
        }));
    }
    if k == 1 {
        return Ok(Synthesis::GenInner(GenInnerData::identity(params)));
    }
    if k == 2 {
        if let Some(u) = is_inner(f)? {
            return Ok(Synthesis::GenInner(GenInnerData::conjugation(&u)));
        }
    }
    let psi = match synthesize(&f.reduce_class(k - 1)?)? {
        Synthesis::GenInner(g) => g.lift_class(k)?,
        refusal => return Ok(refusal),
    };
    let residual = invert_ia(&psi.to_spec())?.compose(f)?;
    let defects: Vec<Vec<BigInt>> = gens
        .iter()
        .zip(residual.images())
        .map(|(a, ra)| a.inverse().mul(ra).gamma_layer(k))
        .collect::<Result<_>>()?;
    let rows_per = Element::layer_range(params, k).len();
    let mut unknowns: Vec<(usize, DeltaFunction)> = Vec::new();
    let mut blocks: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(d);
    for s in 0..d {
        let (u, c) = rewrite_columns(s, params)?;
        // the unknown list skips i = s; put every (i, Δ) in one common order
        let full = full_columns(&u, c, s, params, rows_per);
        if unknowns.is_empty() {
            unknowns = full.0;
        }
        blocks.push(full.1);
    }
    let stacked = |upto: usize| -> (IntMatrix, Vec<BigInt>) {
        let rows: Vec<Vec<BigInt>> = (0..upto)
            .flat_map(|s| (0..rows_per).map(move |r| (s, r)))
            .map(|(s, r)| blocks[s].iter().map(|col| col[r].clone()).collect())
            .collect();
        let rhs = defects[..upto].concat();
        (IntMatrix::from_rows(rows, unknowns.len()), rhs)
    };
    let (matrix, rhs) = stacked(d);
    let eps = match integer_solve(&matrix, &rhs)? {
        IntegerSolution::Solvable { particular, .. } => particular,
        IntegerSolution::Infeasible(full_cert) => {
            for j in 0..d {
                let (m, b) = stacked(j + 1);
                if let IntegerSolution::Infeasible(mut cert) = integer_solve(&m, &b)? {
                    cert.row.resize(rhs.len(), BigInt::zero());
                    return Ok(Synthesis::NotGeneralizedInner(Refusal {
                        witness_generator: j,
                        layer: k,
                        defect: defects[j].clone(),
                        matrix,
                        rhs,
                        certificate: cert,
                    }));
                }
            }
            let witness_generator = d - 1;
            return Ok(Synthesis::NotGeneralizedInner(Refusal {
                witness_generator,
                layer: k,
                defect: defects[witness_generator].clone(),
                matrix,
                rhs,
                certificate: full_cert,
            }));
        }
    };
    let terms = unknowns.iter().zip(&eps).filter(|(_, e)| !e.is_zero()).map(|((i, delta), e)| {
        let mut tail = vec![gens[*i].clone()];
        tail.extend(delta.expand().into_iter().map(|g| gens[g].clone()));
        (tail, e.clone())
    });
    let theta = flatten(&NestedGenInnerData::new(params, terms)?);
    let out = compose_gen_inner(&psi, &theta)?;
    if out.to_spec() != *f {
        return Err(Error::NoConvergence("synthesized data does not reproduce the automorphism".into()));
    }
    Ok(Synthesis::GenInner(out))
}

/// Columns for all `(i, Δ)` including `i = s`, whose columns are zero.
fn full_columns(
    unknowns: &[(usize, DeltaFunction)],
    columns: Vec<Vec<BigInt>>,
    s: usize,
    params: GroupParams,
    rows: usize,
) -> (Vec<(usize, DeltaFunction)>, Vec<Vec<BigInt>>) {
    let mut all = Vec::new();
    let mut cols = Vec::new();
    let mut given = unknowns.iter().zip(columns).peekable();
    for delta in super::delta::enumerate_deltas(params.rank, params.class - 2) {
        for i in 0..params.rank {
            all.push((i, delta.clone()));
            if i == s {
                cols.push(vec![BigInt::zero(); rows]);
            } else {
                let ((gi, gd), col) = given.next().expect("same enumeration");
                debug_assert!(*gi == i && *gd == delta);
                cols.push(col);
            }
        }
    }
    (all, cols)
}

/// Number of random words, besides products of generator pairs, on which a
/// polynomial map is compared with the endomorphism it induces.
const HOMOMORPHISM_SAMPLES: usize = 24;

/// Synthesis for the automorphism defined by a polynomial map.
pub fn poly_to_gen_inner(data: &PolyAutoData) -> Result<Synthesis> {
    let params = data.params();
    let eps = data.epsilon();
    if !eps.is_one() {
        return Err(Error::NotAutomorphism(match multiplicativity_witness(data)? {
            Some((i, j)) => format!("exponent sum {eps}: not multiplicative on a{i}·a{j}"),
            None => format!("exponent sum {eps}: the image lies in the derived subgroup"),
        }));
    }
    let spec = poly_to_spec(data);
    let gens = Element::generators(params);
    let mut probes: Vec<Element> = gens.iter().flat_map(|x| gens.iter().map(move |y| x.mul(y))).collect();
    let mut rng = random::seeded(0x5eed);
    probes.extend((0..HOMOMORPHISM_SAMPLES).map(|_| random::element(&mut rng, params, 6)));
    for x in &probes {
        if data.apply(x)? != spec.apply(x)? {
            return Err(Error::NotAutomorphism(format!("not a homomorphism: differs from its induced endomorphism at {x}")));
        }
    }
    invert_ia(&spec)?;
    synthesize_gen_inner(&spec)
}
