//! Base-`d` digit matrices of a partition.
//!
//! Every part `m` factors uniquely as `m = x * d^e` with `d` not dividing `x`.
//! For each such base `x` there is a matrix whose cell `(i, j)` holds the
//! coefficient of `d^(i-1)` in the base-`d` expansion of the multiplicity of
//! the part `x * d^(j-1)`. Rows and columns are 1-based, so:
//!
//! - column 1 holds parts not divisible by `d`; any digit in a column `j >= 2`
//!   means some part is divisible by `d`;
//! - row 1 holds digits of multiplicities below `d`; any digit in a row
//!   `i >= 2` means some part repeats `d` or more times;
//! - a digit `c` at `(i, j)` contributes `c * x * d^(i+j-2)` to the weight,
//!   which depends on the cell only through the anti-diagonal `i + j`.
//!
//! Matrices are sparse; zero digits are not stored.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::{check_modulus, Error, Partition, Result};

/// A 1-based matrix position. Ordering is row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub i: u32,
    pub j: u32,
}

impl Cell {
    /// Panics if either index is zero.
    pub fn new(i: u32, j: u32) -> Self {
        assert!(i >= 1 && j >= 1, "cell indices are 1-based, got ({i}, {j})");
        Self { i, j }
    }

    /// Index of the anti-diagonal through this cell.
    pub fn diagonal(self) -> u32 {
        self.i + self.j
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Splits `m` into `(x, e)` with `m = x * d^e` and `d` not dividing `x`.
pub fn d_adic_split(mut m: u64, d: u64) -> (u64, u32) {
    debug_assert!(m >= 1 && d >= 2);
    let mut e = 0;
    while m.is_multiple_of(d) {
        m /= d;
        e += 1;
    }
    (m, e)
}

/// The digit matrix of a single base `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitMatrix {
    base: u64,
    modulus: u64,
    entries: BTreeMap<Cell, u64>,
}

impl DigitMatrix {
    fn new(base: u64, modulus: u64) -> Self {
        Self {
            base,
            modulus,
            entries: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Digit at `cell`, zero when absent.
    pub fn digit(&self, cell: Cell) -> u64 {
        self.entries.get(&cell).copied().unwrap_or(0)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (Cell, u64)> + '_ {
        self.entries.iter().map(|(&c, &v)| (c, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn weight(&self) -> Option<u64> {
        self.entries.iter().try_fold(0u64, |acc, (cell, &digit)| {
            let scale = self.modulus.checked_pow(cell.i + cell.j - 2)?;
            let term = digit.checked_mul(self.base)?.checked_mul(scale)?;
            acc.checked_add(term)
        })
    }
}

/// All digit matrices of one partition for a fixed modulus `d`, keyed by base.
/// Only bases with at least one nonzero digit are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitMatrixFamily {
    modulus: u64,
    matrices: BTreeMap<u64, DigitMatrix>,
}

impl DigitMatrixFamily {
    pub fn new(d: u64) -> Result<Self> {
        check_modulus(d)?;
        Ok(Self {
            modulus: d,
            matrices: BTreeMap::new(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Matrices in increasing base order.
    pub fn matrices(&self) -> impl Iterator<Item = &DigitMatrix> {
        self.matrices.values()
    }

    pub fn matrix(&self, base: u64) -> Option<&DigitMatrix> {
        self.matrices.get(&base)
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Sets the digit at `(x, cell)`. A zero digit clears the cell.
    ///
    /// Rejects a base divisible by `d`, a digit outside `0..d`, and any
    /// change that would push the family weight past `u64::MAX`.
    pub fn set(&mut self, base: u64, cell: Cell, digit: u64) -> Result<()> {
        let d = self.modulus;
        if base == 0 || base.is_multiple_of(d) {
            return Err(Error::InvalidFamily(format!(
                "base {base} must be positive and not divisible by d = {d}"
            )));
        }
        if digit >= d {
            return Err(Error::InvalidFamily(format!(
                "digit {digit} at {cell} of base {base} is not below d = {d}"
            )));
        }
        let matrix = self
            .matrices
            .entry(base)
            .or_insert_with(|| DigitMatrix::new(base, d));
        let previous = if digit == 0 {
            matrix.entries.remove(&cell)
        } else {
            matrix.entries.insert(cell, digit)
        };
        if matrix.weight().is_none() || self.checked_weight().is_none() {
            let matrix = self.matrices.get_mut(&base).expect("just inserted");
            match previous {
                Some(v) => matrix.entries.insert(cell, v),
                None => matrix.entries.remove(&cell),
            };
            self.prune(base);
            return Err(Error::Overflow);
        }
        self.prune(base);
        Ok(())
    }

    fn prune(&mut self, base: u64) {
        if self.matrices.get(&base).is_some_and(DigitMatrix::is_empty) {
            self.matrices.remove(&base);
        }
    }

    fn checked_weight(&self) -> Option<u64> {
        self.matrices
            .values()
            .try_fold(0u64, |acc, m| acc.checked_add(m.weight()?))
    }

    /// Sum over all entries of `digit * x * d^(i+j-2)`; equals the weight of
    /// the decoded partition.
    pub fn weight(&self) -> u64 {
        self.checked_weight()
            .expect("family weight is kept within u64 on construction")
    }

    /// First nonzero digit in a column `j >= 2`: smallest base, then
    /// row-major. Present iff the decoded partition has a part divisible by `d`.
    pub fn high_column_witness(&self) -> Option<(u64, Cell)> {
        self.first_entry(|c| c.j >= 2)
    }

    /// First nonzero digit in a row `i >= 2`, same tie-break. Present iff the
    /// decoded partition repeats some part `d` or more times.
    pub fn high_row_witness(&self) -> Option<(u64, Cell)> {
        self.first_entry(|c| c.i >= 2)
    }

    fn first_entry(&self, pred: impl Fn(Cell) -> bool) -> Option<(u64, Cell)> {
        self.matrices.values().find_map(|m| {
            m.entries
                .keys()
                .copied()
                .find(|&c| pred(c))
                .map(|c| (m.base, c))
        })
    }

    /// Rebuilds the family with every cell moved by `relocate(base, cell)`.
    ///
    /// `relocate` must be injective on each matrix; the weight is preserved
    /// as long as each cell stays on its anti-diagonal.
    pub(crate) fn relocated(&self, mut relocate: impl FnMut(u64, Cell) -> Cell) -> Self {
        let matrices = self
            .matrices
            .iter()
            .map(|(&base, m)| {
                let entries: BTreeMap<Cell, u64> = m
                    .entries
                    .iter()
                    .map(|(&cell, &digit)| (relocate(base, cell), digit))
                    .collect();
                assert_eq!(
                    entries.len(),
                    m.entries.len(),
                    "cell relocation collided in base {base}"
                );
                (
                    base,
                    DigitMatrix {
                        base,
                        modulus: self.modulus,
                        entries,
                    },
                )
            })
            .collect();
        Self {
            modulus: self.modulus,
            matrices,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyJson::from(self)).expect("family serializes")
    }

    /// Parses `{"d": D, "matrices": [{"x": X, "entries": [[i, j, digit], ...]}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FamilyJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            input: text.to_string(),
            reason: e.to_string(),
        })?;
        let mut family = Self::new(raw.d)?;
        for m in raw.matrices {
            for [i, j, digit] in m.entries {
                if i == 0 || j == 0 || i > u32::MAX as u64 || j > u32::MAX as u64 {
                    return Err(Error::InvalidFamily(format!(
                        "cell ({i}, {j}) out of range"
                    )));
                }
                let cell = Cell::new(i as u32, j as u32);
                if family.matrix(m.x).is_some_and(|mx| mx.digit(cell) != 0) {
                    return Err(Error::InvalidFamily(format!(
                        "duplicate cell {cell} in base {}",
                        m.x
                    )));
                }
                if digit == 0 {
                    return Err(Error::InvalidFamily(format!("zero digit stored at {cell}")));
                }
                family.set(m.x, cell, digit)?;
            }
        }
        Ok(family)
    }

    /// Text grids, one per base, with `.` for zero digits.
    pub fn render_grid(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "d = {}", self.modulus);
        if self.is_empty() {
            out.push_str("(no digits)\n");
            return out;
        }
        for m in self.matrices.values() {
            let rows = m.entries.keys().map(|c| c.i).max().unwrap_or(1);
            let cols = m.entries.keys().map(|c| c.j).max().unwrap_or(1);
            let width = [
                format!("{}", self.modulus - 1).len(),
                format!("j={cols}").len(),
            ]
            .into_iter()
            .max()
            .unwrap_or(1);
            let label = format!("i={rows}").len();
            let _ = writeln!(out, "x = {}", m.base);
            let _ = write!(out, "{:label$}", "");
            for j in 1..=cols {
                let _ = write!(out, " {:>width$}", format!("j={j}"));
            }
            out.push('\n');
            for i in 1..=rows {
                let _ = write!(out, "{:<label$}", format!("i={i}"));
                for j in 1..=cols {
                    let digit = m.digit(Cell::new(i, j));
                    let shown = if digit == 0 {
                        ".".to_string()
                    } else {
                        digit.to_string()
                    };
                    let _ = write!(out, " {shown:>width$}");
                }
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    d: u64,
    matrices: Vec<MatrixJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    x: u64,
    entries: Vec<[u64; 3]>,
}

impl From<&DigitMatrixFamily> for FamilyJson {
    fn from(f: &DigitMatrixFamily) -> Self {
        Self {
            d: f.modulus,
            matrices: f
                .matrices
                .values()
                .map(|m| MatrixJson {
                    x: m.base,
                    entries: m
                        .entries()
                        .map(|(c, digit)| [c.i as u64, c.j as u64, digit])
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Digit matrices of `p` for modulus `d`.
pub fn encode(p: &Partition, d: u64) -> Result<DigitMatrixFamily> {
    let mut family = DigitMatrixFamily::new(d)?;
    for (part, count) in p.multiplicities() {
        let (base, exponent) = d_adic_split(part, d);
        let matrix = family
            .matrices
            .entry(base)
            .or_insert_with(|| DigitMatrix::new(base, d));
        let mut rest = count;
        let mut row = 1;
        while rest > 0 {
            let digit = rest % d;
            if digit != 0 {
                matrix.entries.insert(Cell::new(row, exponent + 1), digit);
            }
            rest /= d;
            row += 1;
        }
    }
    Ok(family)
}

/// Inverse of [`encode`]: part `x * d^(j-1)` gets multiplicity
/// `sum_i digit(i, j) * d^(i-1)`.
pub fn decode(family: &DigitMatrixFamily) -> Partition {
    let d = family.modulus;
    let mut pairs: BTreeMap<u64, u64> = BTreeMap::new();
    for m in family.matrices.values() {
        for (cell, digit) in m.entries() {
            // Bounded by the family weight, which fits in u64.
            let part = m.base * d.pow(cell.j - 1);
            *pairs.entry(part).or_insert(0) += digit * d.pow(cell.i - 1);
        }
    }
    Partition::from_multiplicities(pairs).expect("family weight fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn family(d: u64, entries: &[(u64, u32, u32, u64)]) -> DigitMatrixFamily {
        let mut f = DigitMatrixFamily::new(d).unwrap();
        for &(x, i, j, digit) in entries {
            f.set(x, Cell::new(i, j), digit).unwrap();
        }
        f
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&p("2"), 2).unwrap(), family(2, &[(1, 1, 2, 1)]));
        assert!(encode(&Partition::empty(), 3).unwrap().is_empty());
        // 3 = 11 in base 2
        assert_eq!(
            encode(&p("3+1+1+1"), 2).unwrap(),
            family(2, &[(3, 1, 1, 1), (1, 1, 1, 1), (1, 2, 1, 1)])
        );
        assert_eq!(encode(&p("2"), 1), Err(Error::InvalidModulus(1)));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode(&family(2, &[(1, 1, 2, 1)])), p("2"));
        assert_eq!(
            decode(&DigitMatrixFamily::new(2).unwrap()),
            Partition::empty()
        );
        assert_eq!(decode(&family(2, &[(1, 3, 1, 1)])), p("1+1+1+1"));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(family(2, &[(1, 1, 2, 1)]).weight(), 2);
        assert_eq!(DigitMatrixFamily::new(3).unwrap().weight(), 0);
        assert_eq!(family(2, &[(1, 2, 2, 1)]).weight(), 4);
        assert_eq!(decode(&family(2, &[(1, 2, 2, 1)])), p("2+2"));
    }

    #[test]
    fn witnesses() {
        let f = encode(&p("4+1"), 2).unwrap();
        assert_eq!(f.high_column_witness(), Some((1, Cell::new(1, 3))));
        assert_eq!(encode(&p("3+1+1"), 2).unwrap().high_column_witness(), None);
        assert_eq!(
            encode(&Partition::empty(), 2)
                .unwrap()
                .high_column_witness(),
            None
        );

        assert_eq!(
            encode(&p("1+1"), 2).unwrap().high_row_witness(),
            Some((1, Cell::new(2, 1)))
        );
        assert_eq!(encode(&p("3+2"), 2).unwrap().high_row_witness(), None);
        assert_eq!(
            encode(&Partition::empty(), 5).unwrap().high_row_witness(),
            None
        );
    }

    #[test]
    fn witness_tie_break() {
        // Bases 1 and 3 both qualify; the smaller wins, then row-major.
        let f = encode(&p("12+4+2"), 2).unwrap();
        assert_eq!(f.high_column_witness(), Some((1, Cell::new(1, 2))));
        let f = encode(&p("6+3+3+3+3"), 3).unwrap();
        // 3 = 1*3^1 with multiplicity 4 = 11 in base 3: column 2, rows 1 and 2.
        assert_eq!(f.high_row_witness(), Some((1, Cell::new(2, 2))));
    }

    #[test]
    fn set_validates() {
        let mut f = DigitMatrixFamily::new(3).unwrap();
        assert!(f.set(3, Cell::new(1, 1), 1).is_err());
        assert!(f.set(2, Cell::new(1, 1), 3).is_err());
        f.set(2, Cell::new(1, 1), 2).unwrap();
        f.set(2, Cell::new(1, 1), 0).unwrap();
        assert!(f.is_empty());
        assert_eq!(f.set(1, Cell::new(60, 1), 1), Err(Error::Overflow));
        assert!(f.is_empty());
    }

    #[test]
    fn json_format() {
        let f = encode(&p("3+1+1+1"), 2).unwrap();
        let text = f.to_json();
        assert_eq!(
            text,
            r#"{"d":2,"matrices":[{"x":1,"entries":[[1,1,1],[2,1,1]]},{"x":3,"entries":[[1,1,1]]}]}"#
        );
        assert_eq!(DigitMatrixFamily::from_json(&text).unwrap(), f);
        assert!(DigitMatrixFamily::from_json(
            r#"{"d":2,"matrices":[{"x":2,"entries":[[1,1,1]]}]}"#
        )
        .is_err());
        assert!(DigitMatrixFamily::from_json(
            r#"{"d":2,"matrices":[{"x":1,"entries":[[0,1,1]]}]}"#
        )
        .is_err());
        assert!(DigitMatrixFamily::from_json(
            r#"{"d":2,"matrices":[{"x":1,"entries":[[1,1,2]]}]}"#
        )
        .is_err());
        assert!(DigitMatrixFamily::from_json(r#"{"d":1,"matrices":[]}"#).is_err());
    }

    #[test]
    fn grid_rendering() {
        let grid = encode(&p("4+2+2"), 2).unwrap().render_grid();
        assert_eq!(
            grid,
            "d = 2\nx = 1\n    j=1 j=2 j=3\ni=1   .   .   1\ni=2   .   1   .\n"
        );
    }

    #[test]
    fn valuation() {
        assert_eq!(d_adic_split(12, 2), (3, 2));
        assert_eq!(d_adic_split(7, 2), (7, 0));
        assert_eq!(d_adic_split(18, 3), (2, 2));
    }
}
