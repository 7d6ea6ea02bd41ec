//! The classical Glaisher correspondence between d-regular and
//! d-nondivisible partitions.

use std::collections::BTreeMap;

use crate::digit_matrix::d_adic_split;
use crate::{check_modulus, Error, Partition, Result};

/// Replaces every part `x * d^t` (with `d` not dividing `x`) by `d^t` copies
/// of `x`. Defined on d-regular partitions only.
pub fn split_map(p: &Partition, d: u64) -> Result<Partition> {
    check_modulus(d)?;
    let mut out: BTreeMap<u64, u64> = BTreeMap::new();
    for (part, count) in p.multiplicities() {
        if count >= d {
            return Err(Error::RegularityViolation {
                part,
                multiplicity: count,
                d,
            });
        }
        let (base, t) = d_adic_split(part, d);
        // count * d^t * base <= weight, so no overflow.
        *out.entry(base).or_insert(0) += count * d.pow(t);
    }
    Partition::from_multiplicities(out)
}

/// Writes the multiplicity of each part `s` in base `d` as
/// `sum_i a_i d^i` and gives the part `s * d^i` multiplicity `a_i`.
/// Defined on d-nondivisible partitions only.
pub fn merge_map(p: &Partition, d: u64) -> Result<Partition> {
    check_modulus(d)?;
    let mut out: Vec<(u64, u64)> = Vec::new();
    for (part, count) in p.multiplicities() {
        if part % d == 0 {
            return Err(Error::DivisibilityViolation { part, d });
        }
        let mut rest = count;
        let mut scaled = part;
        while rest > 0 {
            out.push((scaled, rest % d));
            rest /= d;
            if rest > 0 {
                scaled *= d;
            }
        }
    }
    Partition::from_multiplicities(out)
}
