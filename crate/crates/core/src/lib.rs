//! Exact computation in free metabelian nilpotent groups
//! `M = F / F'' γ_{k+1}(F)` of finite rank `d` and class `k`.
//!
//! The crate is layered:
//!
//! * [`words`] parses and manipulates free-group words.
//! * [`group`] collects words into canonical forms over basic commutators
//!   and implements the group operations.
//! * [`magnus`] is an independent truncated matrix representation used as an
//!   equality oracle for the collector.
//! * [`autos`] holds the automorphism calculus: endomorphisms given by
//!   generator images, generalized inner automorphisms (maps of the form
//!   `x ↦ x ∏ [x, u_i]^{λ_i}`), their composition and inversion, inner-ness
//!   and polynomial automorphisms.
//! * [`normality`] decides whether an automorphism is generalized inner and
//!   synthesizes witness data layer by layer, using exact integer linear
//!   algebra from [`lattice`].

pub mod autos;
pub mod error;
pub mod group;
pub mod json;
pub mod lattice;
pub mod magnus;
pub mod normality;
pub mod random;
pub mod words;

use std::fmt;

pub use error::{Error, Result};
pub use group::{BasicCommutator, DerivedVector, Element};
pub use words::Word;

/// Rank `d` (number of free generators) and nilpotency class `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupParams {
    pub rank: usize,
    pub class: usize,
}

impl GroupParams {
    pub fn new(rank: usize, class: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidParams("rank must be at least 1".into()));
        }
        if class == 0 {
            return Err(Error::InvalidParams("class must be at least 1".into()));
        }
        Ok(GroupParams { rank, class })
    }

    pub fn with_class(self, class: usize) -> Result<Self> {
        GroupParams::new(self.rank, class)
    }

    pub(crate) fn check_same(self, other: GroupParams) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamsMismatch { left: self, right: other })
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}, class {}", self.rank, self.class)
    }
}
