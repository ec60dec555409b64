//! Sums and joins, biseparations, prime factorization and toggling.

mod biseparation;
mod joins;
mod sums;
mod toggle;

pub use biseparation::{
    classify_biseparation, enumerate_biseparations, is_biseparation, BiseparationCertificate, BiseparationClass,
    ClassFilter, ComponentInfo, ComponentSide, TreeEdge, DEFAULT_ENUMERATION_BOUND,
};
pub use joins::{
    classify_join_biseparation, is_join_biseparation, join_summand_splits, prime_factorization,
    prime_factorization_with, split_sides, JoinClass, JoinNode, JoinTree, Split,
};
pub use sums::{join, n_sum, Interleave, Side, SumPairing};
pub use toggle::{toggle_join_summand, toggle_orbit, toggles_related};
