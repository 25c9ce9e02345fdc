//! Exact machinery for pebble-game universality analysis of finite simple graphs.
//!
//! The crate decides, for a graph `G` and a pebble count `k`:
//!
//! * whether the Duplicator wins the one-sided existential `k`-pebble game
//!   from `A` to `B`, for a bounded number of rounds or eternally ([`game`]);
//! * whether `G` is `k`-universal, via a least-fixed-point rank computation
//!   over (k-1)-tuples ([`universality`]);
//! * whether `G` is `k`-extendible, by direct first-order checking
//!   ([`extendibility`]);
//! * coloring numbers, witness orderings, and witness-extension relations
//!   ([`coloring`]);
//! * sparse/dense classification of graph pairs at an exact rational density
//!   threshold, safe/rigid extensions, and the bounded closure operator
//!   ([`sparse`]).
//!
//! [`constructions`] provides deterministic generators for the structured
//! graph families the test suite and the `kuniv` CLI exercise, together with
//! verifiers for their structural properties. [`acceptance`] bundles the
//! end-to-end checks into a reproducible suite.
//!
//! All types are immutable after construction and safe to share across
//! threads. Every randomized entry point takes an explicit seed and is
//! deterministic given that seed.

pub mod acceptance;
pub mod coloring;
pub mod constructions;
pub mod extendibility;
pub mod game;
pub mod graph;
pub mod io;
pub mod rational;
pub mod sparse;
pub mod universality;

mod bits;
mod error;
mod omega;

pub use error::{Error, Result};
pub use graph::{Graph, OverlapSpec, VertexSet};
pub use omega::NatOmega;
