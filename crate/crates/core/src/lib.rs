//! Generalized Calkin-Wilf trees.
//!
//! For positive integers `u` and `v`, the tree `T^(u,v)(z)` is rooted at a
//! positive rational `z`, and every vertex `w` has left child `w/(uw+1)` and
//! right child `w+v`. With `u = v = 1` and `z = 1` this is the classical
//! Calkin-Wilf tree, which lists every positive rational exactly once. For
//! other parameters the trees rooted at the orphans (the rationals in
//! `[1/u, v]`) partition the positive rationals into a forest.
//!
//! Everything here is exact: values are reduced fractions over
//! arbitrary-precision integers.
//!
//! ```
//! use cwforest::{orphan_ancestor, Rational, UVParams};
//!
//! let params = UVParams::new(2, 3).unwrap();
//! let w: Rational = "2147/620".parse().unwrap();
//! let (root, trace) = orphan_ancestor(&w, params).unwrap();
//! assert_eq!(root.to_string(), "5/2");
//! assert_eq!(trace.depth(), 7);
//! ```

pub mod ancestry;
pub mod arith;
pub mod contfrac;
pub mod error;
pub mod forest;
pub mod matrix;
pub mod rational;
pub mod suite;
pub mod symmetry;
pub mod tree;
pub mod word;

pub use ancestry::{
    depth_of, exponent_vector_raw, is_descendant, is_orphan, is_strict_descendant, orphan_ancestor, path_between,
    AncestorStep, AncestorTrace, ExponentVector,
};
pub use arith::{apply_left, apply_right, UVParams};
pub use contfrac::ContinuedFraction;
pub use error::{Error, Result};
pub use forest::{
    first_shared_vertex, intersection_check, orphans_in_box, subtree_subset_check, verify_partition, ForestReport,
    IntersectionReport, SubsetReport,
};
pub use matrix::{word_to_matrix, Mat2};
pub use rational::Rational;
pub use suite::{run_suite, Suite, SuiteConfig, SuiteResult};
pub use symmetry::{
    check_nathanson, check_skew_symmetry, check_symmetry_formula, mirror_matrix, position_matrix,
    sigma_conjugation_check, IdentityCheck,
};
pub use tree::{
    adjacent_lca, children, dn_relation, newman_successor, parent, successor, ParentResult, Tree, DEFAULT_MAX_ROW,
};
pub use word::{
    decode_uv_code, encode_uv_code, index_to_word, uv_code_root, word_to_index, BinaryCode, Move, ParentCode, PathWord,
    Position,
};
