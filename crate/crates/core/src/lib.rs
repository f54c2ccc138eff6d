//! Exact GF(2) computation of the spectral sequence of a fibre bundle from
//! a chain-level model of its structure group.
//!
//! The pipeline runs in stages, one module each:
//!
//! - [`gf2`] and [`complexes`]: linear algebra, chain complexes, DG algebras
//!   and modules, homology with explicit cycle choices.
//! - [`hochschild`]: Hochschild cochains on homology, `δ`, `⌣` and `⌣₁`.
//! - [`transfer`]: the higher operations `f^i` and `f̄^i` transferred from
//!   the group and the fibre to their homology.
//! - [`base_cochains`]: simplicial sets and normalized cochains on the base.
//! - [`predifferential`]: the degree-wise solution `h₀` and the twisting
//!   cochains `h = α(h₀)` and `h̄ = β(h₀)`.
//! - [`spectral`]: the twisted tensor product and its pages.
//! - [`cli`]: fixture formats, the end-to-end pipeline and the `fibress` binary.
//!
//! Every stage certifies its own output; a failed identity is an error, not a
//! warning.

pub mod base_cochains;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod gf2;
pub mod graded;
pub mod hochschild;
pub mod predifferential;
pub mod spectral;
pub mod transfer;
#[cfg(test)]
mod test_support;
