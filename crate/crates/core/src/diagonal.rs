//! Bijections `A_n -> B_n` built by permuting digits along anti-diagonals.
//!
//! The anti-diagonal `D(k)` of a digit matrix is the set of cells with
//! `i + j = k`, listed here from the top endpoint `(1, k-1)` down to the
//! bottom endpoint `(k-1, 1)`. Every digit on `D(k)` carries the same weight
//! `x * d^(k-2)`, so any permutation of the cells of each diagonal preserves
//! the partition's total.
//!
//! A permutation of `D(k)` is *admissible* when it sends the bottom endpoint
//! `(k-1, 1)` to the top endpoint `(1, k-1)`. Then no other cell lands in row
//! 1, so a digit sitting in a column `j >= 2` (a part divisible by `d`) always
//! moves to a row `i >= 2` (a part repeated `d` or more times), while a
//! matrix confined to column 1 moves onto row 1. Applying an admissible
//! permutation to every diagonal of every matrix is therefore a bijection on
//! all partitions of `n` that carries `A_n` onto `B_n` and, on the
//! complement, reproduces Glaisher's merge map.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::digit_matrix::{encode, Cell};
use crate::{check_modulus, decode, Error, Partition, Result};

/// The anti-diagonal `{(i, j) : i + j = k}` for `k >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Diagonal {
    k: u32,
}

impl Diagonal {
    pub fn new(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidDiagonal(k));
        }
        Ok(Self { k })
    }

    pub fn index(self) -> u32 {
        self.k
    }

    pub fn len(self) -> usize {
        (self.k - 1) as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    /// The cell in position `pos` (0-based, row-ascending): row `pos + 1`.
    pub fn cell(self, pos: usize) -> Cell {
        let i = pos as u32 + 1;
        Cell::new(i, self.k - i)
    }

    /// Position of `cell` on this diagonal, if it lies on it.
    pub fn position(self, cell: Cell) -> Option<usize> {
        (cell.i + cell.j == self.k).then(|| (cell.i - 1) as usize)
    }

    /// `(1, k-1), (2, k-2), ..., (k-1, 1)`.
    pub fn cells(self) -> impl Iterator<Item = Cell> {
        (0..self.len()).map(move |pos| self.cell(pos))
    }

    /// `(1, k-1)`.
    pub fn top(self) -> Cell {
        self.cell(0)
    }

    /// `(k-1, 1)`.
    pub fn bottom(self) -> Cell {
        self.cell(self.len() - 1)
    }

    /// Cells with `2 <= i <= k-2`; empty for `k <= 3`.
    pub fn interior(self) -> impl Iterator<Item = Cell> {
        let len = self.len();
        (1..len.saturating_sub(1)).map(move |pos| self.cell(pos))
    }
}

/// Cells of `D(k)` in row-ascending order.
pub fn diagonal_cells(k: u32) -> Result<Vec<Cell>> {
    Ok(Diagonal::new(k)?.cells().collect())
}

/// A bijection of the cells of one diagonal, admissible or not.
///
/// Stored as positions: `images[a] = b` sends the cell in row `a + 1` to the
/// cell in row `b + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalPermutation {
    diagonal: Diagonal,
    images: Vec<usize>,
}

impl DiagonalPermutation {
    pub fn identity(k: u32) -> Result<Self> {
        let diagonal = Diagonal::new(k)?;
        Ok(Self {
            diagonal,
            images: (0..diagonal.len()).collect(),
        })
    }

    /// From an explicit image list (positions, row-ascending). Fails unless
    /// `images` is a permutation of `0..k-1`.
    pub fn from_positions(k: u32, images: Vec<usize>) -> Result<Self> {
        let diagonal = Diagonal::new(k)?;
        let mut seen = vec![false; diagonal.len()];
        if images.len() != diagonal.len() {
            return Err(Error::InvalidFamily(format!(
                "diagonal {k} has {} cells, got {} images",
                diagonal.len(),
                images.len()
            )));
        }
        for &b in &images {
            if b >= seen.len() || std::mem::replace(&mut seen[b], true) {
                return Err(Error::InvalidFamily(format!(
                    "images {images:?} are not a permutation of diagonal {k}"
                )));
            }
        }
        Ok(Self { diagonal, images })
    }

    /// From `(source, target)` cell pairs; cells not mentioned stay fixed.
    pub fn from_pairs(k: u32, pairs: &[(Cell, Cell)]) -> Result<Self> {
        let diagonal = Diagonal::new(k)?;
        let mut images: Vec<usize> = (0..diagonal.len()).collect();
        for &(from, to) in pairs {
            let a = locate(diagonal, from)?;
            images[a] = locate(diagonal, to)?;
        }
        Self::from_positions(k, images)
    }

    pub fn diagonal(&self) -> Diagonal {
        self.diagonal
    }

    /// Image of `cell`, which must lie on this diagonal.
    pub fn apply(&self, cell: Cell) -> Cell {
        let pos = self
            .diagonal
            .position(cell)
            .expect("cell lies on the diagonal");
        self.diagonal.cell(self.images[pos])
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            images[b] = a;
        }
        Self {
            diagonal: self.diagonal,
            images,
        }
    }

    /// `(source, target)` pairs in row-ascending source order.
    pub fn pairs(&self) -> Vec<(Cell, Cell)> {
        self.diagonal.cells().map(|c| (c, self.apply(c))).collect()
    }

    /// True iff the bottom endpoint maps to the top endpoint.
    pub fn is_admissible(&self) -> bool {
        self.apply(self.diagonal.bottom()) == self.diagonal.top()
    }
}

impl fmt::Display for DiagonalPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({}):", self.diagonal.k)?;
        for (from, to) in self.pairs() {
            write!(f, " {from}->{to}")?;
        }
        Ok(())
    }
}

fn locate(diagonal: Diagonal, cell: Cell) -> Result<usize> {
    diagonal.position(cell).ok_or(Error::CellOffDiagonal {
        i: cell.i,
        j: cell.j,
        k: diagonal.k,
    })
}

/// Checks a candidate map given as `(source, target)` pairs.
///
/// True iff the pairs define a bijection of `D(k)` (every cell appears once
/// as a source and once as a target) and, for `k >= 3`, send `(k-1, 1)` to
/// `(1, k-1)`. For `k = 2` the only bijection is the identity, which is
/// admissible. Errors if any cell is off the diagonal.
pub fn is_admissible(pairs: &[(Cell, Cell)], k: u32) -> Result<bool> {
    let diagonal = Diagonal::new(k)?;
    let mut sources = vec![false; diagonal.len()];
    let mut targets = vec![false; diagonal.len()];
    let mut bottom_image = None;
    for &(from, to) in pairs {
        let a = locate(diagonal, from)?;
        let b = locate(diagonal, to)?;
        if std::mem::replace(&mut sources[a], true) || std::mem::replace(&mut targets[b], true) {
            return Ok(false);
        }
        if from == diagonal.bottom() {
            bottom_image = Some(to);
        }
    }
    let bijective = sources.iter().all(|&s| s) && targets.iter().all(|&t| t);
    Ok(bijective && bottom_image == Some(diagonal.top()))
}

/// A [`DiagonalPermutation`] known to send `(k-1, 1)` to `(1, k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissiblePermutation(DiagonalPermutation);

impl AdmissiblePermutation {
    pub fn as_permutation(&self) -> &DiagonalPermutation {
        &self.0
    }

    pub fn into_permutation(self) -> DiagonalPermutation {
        self.0
    }

    pub fn apply(&self, cell: Cell) -> Cell {
        self.0.apply(cell)
    }
}

impl TryFrom<DiagonalPermutation> for AdmissiblePermutation {
    type Error = DiagonalPermutation;

    fn try_from(perm: DiagonalPermutation) -> std::result::Result<Self, DiagonalPermutation> {
        if perm.is_admissible() {
            Ok(Self(perm))
        } else {
            Err(perm)
        }
    }
}

/// Assigns a permutation to every `(base x, diagonal k)` pair.
///
/// [`PermutationScheme`] is the admissible implementation; other rules
/// (e.g. deliberately inadmissible fixtures) can be plugged into the same
/// transport and verification code.
pub trait DiagonalRule {
    /// Permutation of `D(k)` used in the matrix of base `x`. `k >= 2`.
    fn permutation(&self, x: u64, k: u32) -> DiagonalPermutation;

    /// Identifier shown in reports.
    fn label(&self) -> String;
}

/// The built-in members of the bijection family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PermutationScheme {
    /// Exchange `(1, k-1)` and `(k-1, 1)`; fix the interior.
    Swap,
    /// `(k-1,1) -> (1,k-1) -> (2,k-2) -> ... -> (k-2,2) -> (k-1,1)`.
    Rotate,
    /// `(k-1,1) -> (1,k-1)`; the other `k-2` cells go to the rest of the
    /// diagonal by a Fisher-Yates shuffle keyed on `(seed, x, k)`. See
    /// [`seeded_positions`].
    Seeded(u64),
}

impl PermutationScheme {
    pub fn scheme_permutation(&self, x: u64, k: u32) -> Result<AdmissiblePermutation> {
        let diagonal = Diagonal::new(k)?;
        let last = diagonal.len() - 1;
        let images: Vec<usize> = match *self {
            Self::Swap => {
                let mut v: Vec<usize> = (0..=last).collect();
                v.swap(0, last);
                v
            }
            // Position a goes to a+1 except the bottom, which wraps to 0.
            Self::Rotate => (0..=last)
                .map(|a| if a == last { 0 } else { a + 1 })
                .collect(),
            Self::Seeded(seed) => seeded_positions(seed, x, k),
        };
        let perm = DiagonalPermutation::from_positions(k, images)?;
        Ok(AdmissiblePermutation::try_from(perm).expect("built-in schemes are admissible"))
    }
}

impl DiagonalRule for PermutationScheme {
    fn permutation(&self, x: u64, k: u32) -> DiagonalPermutation {
        self.scheme_permutation(x, k)
            .expect("diagonal index is at least 2")
            .into_permutation()
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PermutationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Swap => f.pad("swap"),
            Self::Rotate => f.pad("rotate"),
            Self::Seeded(seed) => f.pad(&format!("seeded:{seed}")),
        }
    }
}

impl FromStr for PermutationScheme {
    type Err = Error;

    /// `swap`, `rotate` or `seeded:<u64>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        match s.trim() {
            "swap" => Ok(Self::Swap),
            "rotate" => Ok(Self::Rotate),
            other => {
                let seed = other
                    .strip_prefix("seeded:")
                    .ok_or_else(|| bad("expected swap, rotate or seeded:<u64>"))?;
                seed.parse()
                    .map(Self::Seeded)
                    .map_err(|_| bad("seed must be an unsigned 64-bit integer"))
            }
        }
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One SplitMix64 step: advance `state` by the golden-ratio increment and
/// return the mixed output.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform integer in `0..bound` by rejection (no modulo bias).
fn below(state: &mut u64, bound: u64) -> u64 {
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let r = splitmix64(state);
        if r >= threshold {
            return r % bound;
        }
    }
}

/// Position images for the seeded scheme on `D(k)`.
///
/// Generator: SplitMix64. Keying: starting from `state = seed`, take one
/// output and xor in `x`, use that as the new state, take one output and xor
/// in `k`; the result is the state of the stream used for shuffling.
///
/// Shuffle: the targets are positions `1..k-1` (every cell except the top)
/// in ascending order. For `t` from `len-1` down to `1`, swap entry `t` with
/// entry `below(t+1)`. The sources are positions `0..k-2` (every cell except
/// the bottom) in ascending order, paired with the shuffled targets in
/// order; the bottom maps to position 0.
pub fn seeded_positions(seed: u64, x: u64, k: u32) -> Vec<usize> {
    let len = (k.max(2) - 1) as usize;
    let mut state = seed;
    state = splitmix64(&mut state) ^ x;
    state = splitmix64(&mut state) ^ u64::from(k);

    let mut targets: Vec<usize> = (1..len).collect();
    for t in (1..targets.len()).rev() {
        let s = below(&mut state, t as u64 + 1) as usize;
        targets.swap(t, s);
    }
    let mut images = targets;
    images.push(0);
    images
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

fn transport<R: DiagonalRule + ?Sized>(
    p: &Partition,
    d: u64,
    rule: &R,
    direction: Direction,
) -> Result<Partition> {
    check_modulus(d)?;
    let family = encode(p, d)?;
    let mut cache: HashMap<(u64, u32), DiagonalPermutation> = HashMap::new();
    let moved = family.relocated(|x, cell| {
        let k = cell.diagonal();
        let perm = cache.entry((x, k)).or_insert_with(|| {
            let perm = rule.permutation(x, k);
            assert_eq!(
                perm.diagonal().index(),
                k,
                "rule returned a permutation of the wrong diagonal"
            );
            match direction {
                Direction::Forward => perm,
                Direction::Inverse => perm.inverse(),
            }
        });
        perm.apply(cell)
    });
    Ok(decode(&moved))
}

/// Encodes `p`, moves every digit along its diagonal by `rule`, decodes.
///
/// Weight is preserved. With an admissible rule, partitions with a part
/// divisible by `d` land on partitions with a part repeated `d` or more
/// times, and d-nondivisible partitions land on their merge-map image.
pub fn apply_forward<R: DiagonalRule + ?Sized>(
    p: &Partition,
    d: u64,
    rule: &R,
) -> Result<Partition> {
    transport(p, d, rule, Direction::Forward)
}

/// Same pipeline with every diagonal permutation inverted.
pub fn apply_inverse<R: DiagonalRule + ?Sized>(
    p: &Partition,
    d: u64,
    rule: &R,
) -> Result<Partition> {
    transport(p, d, rule, Direction::Inverse)
}
