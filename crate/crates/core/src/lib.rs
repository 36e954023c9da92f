//! Finite Alexander quandles.
//!
//! An Alexander quandle is a finite module over `Λ = Z[t, t⁻¹]` with the
//! operation `x^y = t·x + (1 - t)·y`. This crate builds them from abelian
//! groups and automorphisms, decides isomorphism by comparing the
//! submodules `(1 - t)M` (with a Cayley-table search as an independent
//! check), and classifies all Alexander quandles of small order.

pub mod abelian;
pub mod arith;
pub mod classify;
pub mod lambda;
pub mod linear;
pub mod notation;
pub mod quandle;
