//! The finite combinatorics of the strata `M_{μ0,μ1}`: the polytope
//! `T_{μ0,μ1}` of pairs of increasing time tuples, its stratification by
//! the hyperplanes `t_{0,i} = t_{1,j}`, the coarser `I`-stratifications and
//! the schedule of triple merges between them, the `A_{k,±}` substitutions
//! and the bouquet generator.

mod bouquet;
mod polytope;
mod schedule;

pub use bouquet::{bouquet, central_name, n_z1, parse_central, BouquetSpec};
pub use polytope::{
    point_to_word, sample_point, sign_vector, strata_enumerate, substitute, Stratum, Substitution, TPoint,
};
pub use schedule::{contraction_schedule, i_equivalence, MergeEvent, Schedule};
