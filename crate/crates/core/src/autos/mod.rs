//! Endomorphisms of `M` given by generator images, and the calculus of
//! generalized inner automorphisms `x ↦ x ∏ [x, u_i]^{λ_i}`.

mod gen_inner;
mod inner;
mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Element, Error, GroupParams, Result};

pub use gen_inner::{
    apply_gen_inner, apply_nested, class2_conjugator, compose_gen_inner, compose_nested, flatten,
    gen_inner_to_spec, invert_gen_inner, GenInnerData, NestedGenInnerData,
};
pub use inner::is_inner;
pub use poly::{apply_poly_auto, epsilon_sum, multiplicativity_witness, poly_to_spec, PolyAutoData};

/// An endomorphism of `M`, determined by the images of the generators.
#[derive(Clone)]
pub struct AutoSpec {
    params: GroupParams,
    images: Vec<Element>,
    /// Derived coordinates of the image of each basic commutator.
    basic_images: OnceLock<Arc<Vec<Vec<BigInt>>>>,
}

impl AutoSpec {
    pub fn new(params: GroupParams, images: Vec<Element>) -> Result<Self> {
        if images.len() != params.rank {
            return Err(Error::DimensionMismatch(format!(
                "{} generator images given, rank is {}",
                images.len(),
                params.rank
            )));
        }
        for im in &images {
            params.check_same(im.params())?;
        }
        Ok(AutoSpec { params, images, basic_images: OnceLock::new() })
    }

    pub fn identity(params: GroupParams) -> Self {
        AutoSpec::new(params, Element::generators(params)).expect("generators match")
    }

    /// Parses one word per generator.
    pub fn parse(params: GroupParams, images: &[&str]) -> Result<Self> {
        let images = images.iter().map(|s| Element::parse(s, params)).collect::<Result<_>>()?;
        AutoSpec::new(params, images)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Element {
        &self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().zip(Element::generators(self.params)).all(|(x, a)| *x == a)
    }

    pub fn is_ia(&self) -> bool {
        self.first_non_ia().is_none()
    }

    fn first_non_ia(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, x)| {
            x.exp().iter().enumerate().any(|(j, e)| if i == j { !e.is_one() } else { !e.is_zero() })
        })
    }

    pub(crate) fn require_ia(&self) -> Result<()> {
        match self.first_non_ia() {
            Some(generator) => Err(Error::NotIa { generator }),
            None => Ok(()),
        }
    }

    /// Matrix of the induced map on `M / M'`; column `i` is the image of `a_i`.
    pub fn abelianization(&self) -> Vec<Vec<BigInt>> {
        let d = self.params.rank;
        (0..d).map(|r| (0..d).map(|c| self.images[c].exp()[r].clone()).collect()).collect()
    }

    pub fn reduce_class(&self, j: usize) -> Result<AutoSpec> {
        let params = self.params.with_class(j)?;
        let images = self.images.iter().map(|x| x.reduce_class(j)).collect::<Result<_>>()?;
        AutoSpec::new(params, images)
    }

    pub fn lift_class(&self, j: usize) -> Result<AutoSpec> {
        let params = self.params.with_class(j)?;
        let images = self.images.iter().map(|x| x.lift_class(j)).collect::<Result<_>>()?;
        AutoSpec::new(params, images)
    }

    fn basic_images(&self) -> &[Vec<BigInt>] {
        self.basic_images.get_or_init(|| Arc::new(self.compute_basic_images()))
    }

    fn compute_basic_images(&self) -> Vec<Vec<BigInt>> {
        let basis = Element::basis(self.params);
        let index: HashMap<&[usize], usize> = basis.iter().enumerate().map(|(i, c)| (c.seq(), i)).collect();
        let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(basis.len());
        for c in &basis {
            let seq = c.seq();
            let (&last, prefix) = seq.split_last().expect("weight at least two");
            let head = if prefix.len() == 1 {
                self.images[prefix[0]].clone()
            } else {
                Element::from_derived_coords(self.params, out[index[prefix]].clone())
            };
            out.push(head.commutator(&self.images[last]).derived_coords().to_vec());
        }
        out
    }

    /// `f(x)`.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.params.check_same(x.params())?;
        let mut out = Element::identity(self.params);
        for (im, e) in self.images.iter().zip(x.exp()) {
            if !e.is_zero() {
                out = out.mul(&im.pow(e));
            }
        }
        let imgs = self.basic_images();
        let mut t = vec![BigInt::zero(); imgs.len()];
        for (mu, img) in x.derived_coords().iter().zip(imgs) {
            if mu.is_zero() {
                continue;
            }
            for (a, b) in t.iter_mut().zip(img) {
                if !b.is_zero() {
                    *a += mu * b;
                }
            }
        }
        Ok(out.mul(&Element::from_derived_coords(self.params, t)))
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &AutoSpec) -> Result<AutoSpec> {
        self.params.check_same(f.params)?;
        let images = f.images.iter().map(|x| self.apply(x)).collect::<Result<_>>()?;
        AutoSpec::new(self.params, images)
    }

    /// Displays images as `a -> …`, one per line.
    pub fn display(&self) -> String {
        let d = self.params.rank;
        let lines: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, x)| format!("{} -> {}", crate::words::generator_name(i, d), x))
            .collect();
        lines.join("\n")
    }
}

impl PartialEq for AutoSpec {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.images == other.images
    }
}

impl Eq for AutoSpec {}

impl fmt::Debug for AutoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AutoSpec").field("params", &self.params).field("images", &self.images).finish()
    }
}

impl fmt::Display for AutoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

pub fn apply_endo(f: &AutoSpec, x: &Element) -> Result<Element> {
    f.apply(x)
}

/// Spec of `g ∘ f`.
pub fn compose_endo(g: &AutoSpec, f: &AutoSpec) -> Result<AutoSpec> {
    g.compose(f)
}

pub fn is_ia(f: &AutoSpec) -> bool {
    f.is_ia()
}

/// Inverse of an IA endomorphism by repeated defect correction: with
/// `h = f ∘ g` and `h(a_i) = a_i d_i`, replace `g` by `g ∘ c` where
/// `c(a_i) = a_i d_i^{-1}`. The defects move one layer down each round.
pub fn invert_ia(f: &AutoSpec) -> Result<AutoSpec> {
    f.require_ia()?;
    let params = f.params;
    let gens = Element::generators(params);
    let mut g = AutoSpec::identity(params);
    for _ in 0..=params.class {
        let h = f.compose(&g)?;
        if h.is_identity() {
            return Ok(g);
        }
        let images = gens
            .iter()
            .zip(&h.images)
            .map(|(a, ha)| {
                let defect = a.inverse().mul(ha);
                a.mul(&defect.inverse())
            })
            .collect();
        g = g.compose(&AutoSpec::new(params, images)?)?;
    }
    Err(Error::NoConvergence(format!("IA inversion did not terminate within {} rounds", params.class + 1)))
}

/// `[f, g] = f^{-1} ∘ g^{-1} ∘ f ∘ g`.
pub fn aut_commutator(f: &AutoSpec, g: &AutoSpec) -> Result<AutoSpec> {
    f.params.check_same(g.params)?;
    let fi = invert_ia(f)?;
    let gi = invert_ia(g)?;
    fi.compose(&gi)?.compose(f)?.compose(g)
}
