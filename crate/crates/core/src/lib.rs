//! Flagged Schur and key polynomial combinatorics: crystals on skew and shuffle
//! tableaux, Demazure subset checks, Temperley-Lieb immanants of flagged
//! Jacobi-Trudi matrices, and key expansions, all in exact arithmetic.

pub mod apps;
pub mod combinat;
pub mod crystal;
pub mod demazure;
pub mod error;
pub mod jt;
pub mod keys;
pub mod linsolve;
pub mod poly;
pub mod scalar;
pub mod tableau;
pub mod tl;

pub use combinat::{
    all_reduced_words, apply_perm, bruhat_leq, dominance_leq, reduced_word, Composition, Flag,
    Partition, Permutation,
};
pub use error::{Error, Result};
pub use keys::{is_key_positive, key_expand, key_polynomial, KeyCache, KeyExpansion};
pub use poly::{complete_homogeneous, Polynomial};
pub use scalar::Coefficient;

/// Arbitrary-precision integer, the default coefficient ring.
pub type Int = num_bigint::BigInt;
/// Integer polynomials.
pub type IntPoly = Polynomial<Int>;
pub type Rat = num_rational::BigRational;
pub type RatPoly = Polynomial<Rat>;
