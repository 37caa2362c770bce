//! Finite posets, chain-cover sorting, and the classification of posets on
//! which sorting along one chain cover never unsorts the other.
//!
//! The central decision procedure is [`classify_n2`], backed by the
//! cylinder-window embedding machinery in [`cylinder`] and [`classifier`].
//! The [`oracle`] module provides a definitional brute-force decider and
//! exhaustive enumeration for cross-validation on small posets.

pub mod classifier;
pub mod cylinder;
pub mod oracle;
pub mod poset;
pub mod reduction;
pub mod sorting;

pub use classifier::{
    classify, classify_n2, classify_n2_doubleprime, classify_n2_prime, diamond_type,
    embed_convex_cylinder, maximal_branch_chains, technical_condition, type_i_bound_check,
    Classification, ClassifyOptions, ComponentClassification, ComponentWitness, DiamondType,
    Embedding, Obstruction, TechnicalViolation,
};
pub use cylinder::{
    enumerate_connected_windows, rectangle_window, CylCoord, CylError, CylWindow, Cylinder,
};
pub use oracle::{
    brute_force_n2, canonical_key, enumerate_chain_covers, enumerate_posets,
    exhaustive_extension_distribution, oracle_compare, sample_extension_distribution,
    BruteForceResult, ExtensionHistogram, OracleEntry, OracleError, OracleReport,
};
pub use poset::{find_diamonds, Diamond, Element, ElementSet, Labeling, Poset, PosetError};
pub use reduction::{
    all_reductions, most_reduced, split_element, ReductionWitness, SplitMap,
};
pub use sorting::{
    chain_sort, chain_sort_values, edge_coverage, is_sorted_along, nmu_check, nmu_check_par,
    nmu_check_seq, restrict_cover, restrict_pair_to_convex, ChainCover, CoverError, CoverPair,
    EdgeColor, Mode, NmuFailure, NmuVerdict,
};

/// Maximum supported poset size; element subsets are stored in a `u64`.
pub const MAX_ELEMENTS: usize = 64;
