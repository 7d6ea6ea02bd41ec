//! Glaisher's partition correspondence and the diagonal-permutation family.
//!
//! For a modulus `d >= 2`, the partitions of `n` split two ways:
//!
//! - *d-nondivisible* partitions have no part divisible by `d`; their
//!   complement is the set `A_n` (some part divisible by `d`).
//! - *d-regular* partitions repeat no part `d` or more times; their
//!   complement is the set `B_n` (some part repeated at least `d` times).
//!
//! The classical split/merge maps ([`glaisher_map`]) pair the two classes
//! directly. The [`diagonal`] module builds a whole family of bijections
//! `A_n -> B_n` by writing every multiplicity as base-`d` digits in a matrix
//! for each base not divisible by `d` ([`digit_matrix`]) and permuting digits along the
//! anti-diagonals, subject to one endpoint constraint. [`verify`] checks any
//! member of the family exhaustively against the counting oracles in
//! [`counting`].
//!
//! ```
//! use glaisher::{apply_forward, apply_inverse, Partition, PermutationScheme};
//!
//! let p: Partition = "4".parse().unwrap();
//! let q = apply_forward(&p, 2, &PermutationScheme::Rotate).unwrap();
//! assert_eq!(q.to_string(), "2+2");
//! assert_eq!(apply_inverse(&q, 2, &PermutationScheme::Rotate).unwrap(), p);
//! ```

pub mod cli;
pub mod counting;
pub mod diagonal;
pub mod digit_matrix;
mod error;
pub mod glaisher_map;
pub mod partition;
pub mod verify;

pub use counting::{count_nondivisible, count_regular, count_table, partition_count, CountRow};
pub use diagonal::{
    apply_forward, apply_inverse, diagonal_cells, is_admissible, AdmissiblePermutation, Diagonal,
    DiagonalPermutation, DiagonalRule, PermutationScheme,
};
pub use digit_matrix::{decode, encode, Cell, DigitMatrix, DigitMatrixFamily};
pub use error::{Error, Result};
pub use glaisher_map::{merge_map, split_map};
pub use partition::{enumerate_partitions, Partition, Partitions};
pub use verify::{verify_bijection, verify_counts, VerificationReport};

/// Largest `n` accepted by the exhaustive checks (p(60) = 966467).
pub const MAX_ENUMERATION_N: u64 = 60;

pub(crate) fn check_modulus(d: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidModulus(d));
    }
    Ok(())
}
