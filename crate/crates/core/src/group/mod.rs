//! Canonical forms and group arithmetic in `M`.
//!
//! Every element is stored as `a^e · t` with `a^e = a0^{e0} ··· a(d-1)^{e(d-1)}`
//! and `t` in the derived subgroup, written in the basis of basic
//! commutators of weight `2..=k`. The derived subgroup is abelian and each
//! generator acts on it by conjugation as a unipotent matrix, which is all
//! the collector needs.

mod basic;
mod context;
mod element;

pub use basic::{enumerate_basics, is_basic_shape, normalize_left_normed, BasicCommutator, DerivedVector};
pub use element::Element;

pub(crate) use basic::power;

#[cfg(test)]
mod tests;
