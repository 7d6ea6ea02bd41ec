//! Enumeration-free counts of p(n), a(n) and b(n).
//!
//! - [`partition_count`]: p(n) by Euler's pentagonal-number recurrence.
//! - [`count_nondivisible`]: a(n), partitions with no part divisible by d.
//! - [`count_regular`]: b(n), partitions with every multiplicity below d.
//!
//! Everything is computed in arbitrary precision.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::{check_modulus, Error, Result};

/// p(n) via the pentagonal-number recurrence
/// `p(m) = sum_{k>=1} (-1)^(k+1) [p(m - k(3k-1)/2) + p(m - k(3k+1)/2)]`.
pub fn partition_count(n: u64) -> BigUint {
    let n = n as usize;
    let mut table: Vec<BigInt> = Vec::with_capacity(n + 1);
    table.push(BigInt::one());
    for m in 1..=n {
        let mut sum = BigInt::zero();
        for k in 1usize.. {
            let first = k * (3 * k - 1) / 2;
            if first > m {
                break;
            }
            let second = k * (3 * k + 1) / 2;
            let mut term = table[m - first].clone();
            if second <= m {
                term += &table[m - second];
            }
            if k % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        table.push(sum);
    }
    table
        .pop()
        .and_then(|v| v.to_biguint())
        .expect("partition counts are nonnegative")
}

/// Counts partitions of `n` whose parts satisfy `allowed`, each part used at
/// most `cap(part)` times. Parts are processed in increasing order with an
/// in-place table of length `n + 1`.
fn restricted_count(n: u64, allowed: impl Fn(u64) -> bool, cap: impl Fn(u64) -> u64) -> BigUint {
    let size = n as usize;
    let mut ways = vec![BigUint::zero(); size + 1];
    ways[0] = BigUint::one();
    for part in (1..=n).filter(|&m| allowed(m)) {
        let step = part as usize;
        let limit = cap(part) as usize;
        // Descending so that ways[total - c*step] still holds the value
        // from before this part was introduced.
        for total in (step..=size).rev() {
            let mut acc = BigUint::zero();
            for copies in 1..=limit.min(total / step) {
                acc += &ways[total - copies * step];
            }
            ways[total] += acc;
        }
    }
    ways.swap_remove(size)
}

/// a(n): partitions of `n` in which no part is divisible by `d`.
pub fn count_nondivisible(n: u64, d: u64) -> Result<BigUint> {
    check_modulus(d)?;
    Ok(restricted_count(n, |m| m % d != 0, |m| n / m))
}

/// b(n): partitions of `n` in which no part is repeated `d` or more times.
pub fn count_regular(n: u64, d: u64) -> Result<BigUint> {
    check_modulus(d)?;
    Ok(restricted_count(n, |_| true, |_| d - 1))
}

/// One row of the count table for a fixed modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: u64,
    #[serde(rename = "p", serialize_with = "as_decimal")]
    pub p_n: BigUint,
    #[serde(rename = "a", serialize_with = "as_decimal")]
    pub a_n: BigUint,
    #[serde(rename = "b", serialize_with = "as_decimal")]
    pub b_n: BigUint,
    /// |A_n| = p(n) - a(n): partitions with some part divisible by d.
    #[serde(rename = "card_A", serialize_with = "as_decimal")]
    pub card_a: BigUint,
    /// |B_n| = p(n) - b(n): partitions with some part repeated d or more times.
    #[serde(rename = "card_B", serialize_with = "as_decimal")]
    pub card_b: BigUint,
}

// JSON numbers of any size, without going through f64.
fn as_decimal<S: serde::Serializer>(value: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    let raw = serde_json::value::RawValue::from_string(value.to_string())
        .map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

impl CountRow {
    pub fn new(n: u64, d: u64) -> Result<Self> {
        let p_n = partition_count(n);
        let a_n = count_nondivisible(n, d)?;
        let b_n = count_regular(n, d)?;
        if a_n != b_n {
            return Err(Error::IdentityViolation {
                n,
                d,
                a: a_n.to_string(),
                b: b_n.to_string(),
            });
        }
        Ok(Self {
            n,
            card_a: &p_n - &a_n,
            card_b: &p_n - &b_n,
            p_n,
            a_n,
            b_n,
        })
    }
}

/// Rows for `n = 0..=n_max`; fails with [`Error::IdentityViolation`] if any
/// row has a(n) != b(n).
pub fn count_table(n_max: u64, d: u64) -> Result<Vec<CountRow>> {
    check_modulus(d)?;
    (0..=n_max).map(|n| CountRow::new(n, d)).collect()
}

pub const TSV_HEADER: &str = "n\tp\ta\tb\tcard_A\tcard_B";

/// Tab-separated table with header `n p a b card_A card_B`.
pub fn to_tsv(rows: &[CountRow]) -> String {
    let mut out = String::new();
    out.push_str(TSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.n, r.p_n, r.a_n, r.b_n, r.card_a, r.card_b
        );
    }
    out
}

/// One JSON object per line, with the same field names as the TSV header.
pub fn to_json_lines(rows: &[CountRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&serde_json::to_string(r).expect("count rows serialize"));
        out.push('\n');
    }
    out
}
