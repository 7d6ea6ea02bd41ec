//! Integer partitions stored as part -> multiplicity maps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{check_modulus, Error, Result};

/// A finite multiset of positive parts.
///
/// Storage is canonical: only parts with multiplicity at least one are kept,
/// so equal multisets compare equal however they were built. Text rendering
/// lists parts in descending order joined by `+`, with `0` for the empty
/// partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    multiplicities: BTreeMap<u64, u64>,
    weight: u64,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from a list of parts in any order.
    pub fn from_parts<I: IntoIterator<Item = u64>>(parts: I) -> Result<Self> {
        Self::from_multiplicities(parts.into_iter().map(|part| (part, 1)))
    }

    /// Builds a partition from `(part, multiplicity)` pairs. Repeated parts
    /// accumulate and zero multiplicities are dropped.
    pub fn from_multiplicities<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Self> {
        let mut multiplicities = BTreeMap::new();
        let mut weight: u64 = 0;
        for (part, count) in pairs {
            if part == 0 {
                return Err(Error::NonPositivePart(0));
            }
            if count == 0 {
                continue;
            }
            let contribution = part.checked_mul(count).ok_or(Error::Overflow)?;
            weight = weight.checked_add(contribution).ok_or(Error::Overflow)?;
            let slot = multiplicities.entry(part).or_insert(0u64);
            *slot = slot.checked_add(count).ok_or(Error::Overflow)?;
        }
        Ok(Self {
            multiplicities,
            weight,
        })
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Number of times `part` occurs; zero when absent.
    pub fn multiplicity(&self, part: u64) -> Result<u64> {
        if part == 0 {
            return Err(Error::NonPositivePart(0));
        }
        Ok(self.multiplicities.get(&part).copied().unwrap_or(0))
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// Number of parts counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    /// `(part, multiplicity)` pairs in ascending part order.
    pub fn multiplicities(&self) -> impl DoubleEndedIterator<Item = (u64, u64)> + '_ {
        self.multiplicities
            .iter()
            .map(|(&part, &count)| (part, count))
    }

    /// Parts in descending order, repeated by multiplicity.
    pub fn parts(&self) -> Vec<u64> {
        self.multiplicities
            .iter()
            .rev()
            .flat_map(|(&part, &count)| std::iter::repeat_n(part, count as usize))
            .collect()
    }

    /// True iff no part is divisible by `d`.
    pub fn is_d_nondivisible(&self, d: u64) -> Result<bool> {
        check_modulus(d)?;
        Ok(self.multiplicities.keys().all(|part| part % d != 0))
    }

    /// True iff every part occurs fewer than `d` times.
    pub fn is_d_regular(&self, d: u64) -> Result<bool> {
        check_modulus(d)?;
        Ok(self.multiplicities.values().all(|&count| count < d))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&part, &count) in self.multiplicities.iter().rev() {
            for _ in 0..count {
                if !first {
                    f.write_str("+")?;
                }
                write!(f, "{part}")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `3+1+1` (any order, surrounding whitespace allowed) or `0`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed == "0" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for token in trimmed.split('+') {
            let token = token.trim();
            let value: i64 = token.parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                reason: format!("{token:?} is not an integer"),
            })?;
            if value <= 0 {
                return Err(Error::NonPositivePart(value));
            }
            parts.push(value as u64);
        }
        Self::from_parts(parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All partitions of `n`, each exactly once.
///
/// Order: partitions written as descending part lists, in reverse
/// lexicographic order, beginning with `{n}` and ending with `{1^n}`. For
/// `n = 0` the single empty partition is produced. Practical up to
/// [`MAX_ENUMERATION_N`](crate::MAX_ENUMERATION_N).
pub fn enumerate_partitions(n: u64) -> Partitions {
    Partitions {
        current: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

/// Iterator returned by [`enumerate_partitions`].
#[derive(Clone, Debug)]
pub struct Partitions {
    current: Option<Vec<u64>>,
}

impl Partitions {
    fn advance(parts: &mut Vec<u64>) -> bool {
        let mut ones = 0u64;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        let Some(last) = parts.last_mut() else {
            return false;
        };
        *last -= 1;
        let size = *last;
        let mut remainder = ones + 1;
        while remainder >= size {
            parts.push(size);
            remainder -= size;
        }
        if remainder > 0 {
            parts.push(remainder);
        }
        true
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.as_mut()?;
        let out =
            Partition::from_parts(parts.iter().copied()).expect("enumerated parts are positive");
        if !Self::advance(parts) {
            self.current = None;
        }
        Some(out)
    }
}
