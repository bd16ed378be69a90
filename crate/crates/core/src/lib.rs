//! Exact combinatorics of cobweb posets.
//!
//! A cobweb poset is the layered digraph designated by a sequence of positive
//! integers `F = (F_1, F_2, ...)`: level `s` carries `F_s` vertices, level 0 a
//! single root, and every pair of consecutive levels is joined by a complete
//! bipartite family of upward arcs.  This crate builds those posets exactly
//! (arbitrary-precision arithmetic throughout) and provides:
//!
//! * the generalized binomial ("F-nomial") coefficients of a sequence and the
//!   counting of maximal chains between levels,
//! * incidence and Möbius matrices plus characteristic polynomials,
//! * decision procedures and bounded searches for cobweb admissibility and
//!   the GCD-morphism property,
//! * exact-cover enumeration of layer tilings by box blocks, with the
//!   equal-block-partition upper bound.
//!
//! The [`reference`] module holds deliberately naive algorithms used to
//! cross-check the main implementations in tests.

pub mod combinatorics;
pub mod error;
pub mod poset;
pub mod properties;
pub mod reference;
pub mod sequence;
pub mod tiling;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use sequence::FSequence;
