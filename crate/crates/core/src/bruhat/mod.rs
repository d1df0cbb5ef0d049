//! Signed Bruhat cells of `SO4` and `Spin4`.
//!
//! A matrix `Q ∈ SO4` lies in the cell `Bru_ρ` of all `U₀ P U₁` with
//! `U₀, U₁` upper triangular with positive diagonal and `P` a signed
//! permutation matrix of pattern `ρ`. In `Spin4` each cell has two
//! components, labelled by the elements of `B̃4⁺`.

mod chart;
mod chopadv;
mod classify;
mod lift;
mod positive;
mod rep;

pub use chart::{chart_l, chart_q, chart_q_at, translated_chart_matrix, LowerUni};
pub use chopadv::{adv, chop, chop_adv, chop_adv_at, ChopAdvOptions};
pub use classify::{classify_cell, random_cell_matrix, random_upper, CellClass, DEFAULT_RANK_TOL};
pub use lift::{random_cell_point, spin_lift_rep, spin_lift_rep_with, track_matrix_path};
pub use positive::{pos_generate, pos_invert, pos_test, PosClass, PosFactorization};
pub use rep::SignedRep;
