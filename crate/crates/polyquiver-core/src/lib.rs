//! Exact combinatorial models of cluster categories built from polygon
//! diagonals.
//!
//! The crate constructs stable translation quivers for three families of
//! models and cross-checks them against each other:
//!
//! * [`orbit`] — the quiver of m-diagonals of a repetitive polygon, a model
//!   for the AR-quiver of an orbit category of the bounded derived category
//!   of type A.
//! * [`cover`] — a universal-cover engine on finite windows of the
//!   translation quiver ZA_n, with shift and Serre actions and Hom/Ext
//!   dimensions computed by orbit summation.
//! * [`derived`] — an infinite-polygon window model whose regions realise
//!   the module category of a linearly oriented type-A quiver.
//!
//! [`tilting`] enumerates angulations and cluster-tilting objects, and
//! [`embedding`] realises the repetitive model as a band inside a larger
//! cluster-category quiver. Everything is integer combinatorics; there is no
//! floating point and no randomness, so all outputs are deterministic.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the command
//! line front end live in the companion `polyquiver-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cover;
pub mod derived;
pub mod embedding;
pub mod iso;
pub mod orbit;
pub mod polygon;
pub mod quiver;
pub mod tilting;

pub use iso::{find_isomorphism, QuiverIsomorphism};
pub use polygon::{Diagonal, ModelParams};
pub use quiver::{ArrowKind, QuiverBuilder, TranslationQuiver, VertexId, VertexLabel};
