//! Pairs of permutations acting on a shared finite edge set, treated as
//! bicolored graphs embedded in oriented surfaces.
//!
//! A pair `(white, black)` of permutations of an edge set `E` describes a
//! bicolored graph: white vertices are the cycles of `white`, black vertices
//! are the cycles of `black`, and each element of `E` is an edge joining the
//! two cycles containing it. The pair also carries a synthetic Euler
//! characteristic and genus, so connectivity questions about the graph become
//! cycle-counting questions about the permutations.
//!
//! The centerpiece is a local surgery ([`reroute::reroute`]) that replaces a
//! marked edge `a` by two derived edges and redirects one of them toward a
//! second marked edge `b`. Applying the surgery twice is equivalent to
//! conjugating `white` by the transposition `(a b)`, which makes the effect of
//! such a conjugation on genus and connectivity predictable from local data
//! around `a` and `b`. The [`pair`] module classifies marked pairs, the
//! [`reroute`] module implements the surgery and the branching rules that
//! predict how classes transform, the [`graph`] module gives the graph-side
//! view, and the [`oracle`] module brute-forces every claim over all pairs of
//! small degree.
//!
//! # Composition convention
//!
//! Everything here composes functionally: `compose(p, q)` is the permutation
//! `e -> p(q(e))`, so `q` acts first. Computer algebra systems such as Magma
//! or GAP act on the right instead; their product `p * q` applies `p` first.
//! Translating: their `black * white` is `compose(white, black)` here, which
//! is exactly the face permutation ([`pair::PermutationPair::product`]).
//!
//! The crate is `no_std` (with `alloc`); parsing, printing and all analysis
//! run without any OS services.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod graph;
pub mod label;
pub mod notation;
pub mod oracle;
pub mod pair;
pub mod perm;
pub mod reroute;

pub use error::Error;
pub use label::{ElementLabel, GroundSet, Tag};
pub use pair::{ExceptionalClass, GenusEffect, PairReport, PermutationPair, TypeClass};
pub use perm::{Cycle, Permutation};
