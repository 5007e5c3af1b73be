//! Computations in free groups: words and cyclic words, uniform conjugacy of
//! tuples, Whitehead orbit problems with per-block conjugators, a constants
//! engine with formula trees, and exact geometry checkers at `delta = 0`
//! together with a Cayley-ball backend for small-cancellation presentations.
//!
//! The runnable programs under `examples/` are the quickest tour.

pub mod bounds;
pub mod cli;
pub mod conjugacy;
pub mod geometry;
pub mod suites;
pub mod whitehead;
pub mod word;
