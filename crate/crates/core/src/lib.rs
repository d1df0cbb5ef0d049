//! Spin(4) arithmetic, signed Bruhat cells, itineraries of locally convex
//! curves in the 3-sphere, and the finite combinatorics of the strata
//! `M_{μ0,μ1}` of such curves.
//!
//! The crate is organised bottom-up:
//!
//! * [`spin4`] — unit quaternion pairs, the covering map `Π: Spin4 → SO4`,
//!   the one-parameter subgroups `α_j` and the exact finite groups `Quat4`
//!   and `B̃4⁺`.
//! * [`weyl`] — permutations of `{1,2,3,4}`, itinerary words, the grading
//!   `μ`, refinement tables and letter multiplicities.
//! * [`bruhat`] — signed Bruhat cell classification, spin lifts, charts,
//!   total positivity and the `chop`/`adv` maps.
//! * [`curves`] — integration and Frenet lifts of locally convex curves,
//!   singular sets and itineraries, the transversal family through
//!   `[bacb]` and the normal form near `η`.
//! * [`strata`] — polytope strata, `I`-equivalence, contraction schedules
//!   and the bouquet generator.
//! * [`monodromy`] — classification of coefficient triples of the
//!   fourth-order periodic ODE.

// `!(x > 0.0)` is used on purpose so that NaN is rejected, and index
// loops over small fixed-size matrices read better than iterator chains.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bruhat;
pub mod curves;
pub mod error;
pub mod linalg;
pub mod monodromy;
pub mod spin4;
pub mod strata;
pub mod weyl;

pub use error::{Error, Result};
