//! Exact computational algebra for group operads.
//!
//! A group operad is a sequence of groups `G_0, G_1, G_2, ...` carrying an
//! operadic composition `gamma: G_k x G_{m_1} x ... x G_{m_k} -> G_m` and a
//! projection to the symmetric groups, subject to a crossed-homomorphism law.
//! This crate implements the canonical families (trivial, symmetric, braid,
//! pure braid, ribbon braid, abelian powers), the derived simplicial and
//! crossed-simplicial structure, wreath products, bar constructions with
//! their fundamental-group realization, and the free monoid / universal
//! group built from a family over a pointed alphabet, including the induced
//! surjection from the braid-side universal group onto the symmetric-side
//! one whose kernel is a free group.
//!
//! Everything here is exact and deterministic: no floats, and all sampling
//! flows from caller-provided seeds.

pub mod bar;
pub mod braid;
pub mod families;
pub mod fingroup;
pub mod monad;
pub mod operad;
pub mod perm;

pub use braid::{BraidNormalForm, BraidWord};
pub use operad::{Element, Family};
pub use perm::Permutation;
