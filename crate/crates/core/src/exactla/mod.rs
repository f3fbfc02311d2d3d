//! Exact linear algebra over the integers and over `Z[s, s^-1]`.

mod lambda;
mod matrix;
mod smith;

pub use lambda::{
    adjugate, binomial, char_matrix, maximal_minor_gcd, maximal_minors, rank_over_fractions, ElementaryIdeal,
    DEFAULT_MAX_MINORS,
};
pub use matrix::Matrix;
pub use smith::{
    cokernel_invariants, is_surjective_character, kills_relations, smith_normal_form, surjection_onto_cyclic,
    CokernelInvariants, GroupOrder, SmithDecomposition,
};
