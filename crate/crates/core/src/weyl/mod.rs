//! Combinatorics of `S4` and of itinerary words over `S4 ∖ {e}`.

mod multiplicity;
mod perm;
mod refine;
mod word;

pub use multiplicity::{
    combinatorial_multiplicity, letter_multiplicity, letter_multiplicity_with, word_multiplicity, MultiplicityOptions,
};
pub use perm::{Generator, Permutation, N};
pub use refine::{
    check_m_star_closure, coarsenings, in_y2, nontrivial_m_star_pairs, refinement_table, refines_letter, refines_word,
    word_hat, ClosureReport, RefinementEntry, RefinementTable,
};
pub use word::{
    dim_word, endpoint_class, m_bullet_letters, m_letters, m_star_words, mu, mu_of_letter, similar_words, MuVector,
    Word,
};
