//! Weaving diagrams and the moves between them.
//!
//! A diagram of an `m x n` weave is its crossing matrix: entry `(i, j)` is 1
//! when warp `i` passes above weft `j` and 0 when it passes below. Two kinds
//! of moves preserve the isotopy class of the weave: torus translations,
//! which cyclically shift warps and wefts, and interchanges of two
//! cyclically adjacent components whose crossing functions are comparable.
//!
//! Rows are bit-packed into `u64` words with column 0 in the most
//! significant used bit, so comparing row words numerically is the same as
//! comparing the row strings lexicographically.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WeaveError};

/// Largest number of warps or wefts a diagram may have.
pub const MAX_DIM: usize = 64;

/// Mask of the low `n` bits.
#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Two crossing vectors are comparable when one dominates the other
/// pointwise.
#[inline]
pub fn comparable_bits(u: u64, v: u64) -> bool {
    u & !v == 0 || v & !u == 0
}

/// Pointwise comparability of two 0/1 vectors.
pub fn comparable(u: &[u8], v: &[u8]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(WeaveError::LengthMismatch(u.len(), v.len()));
    }
    let le = u.iter().zip(v).all(|(a, b)| a <= b);
    let ge = u.iter().zip(v).all(|(a, b)| a >= b);
    Ok(le || ge)
}

/// Warp or weft.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Warp,
    Weft,
}

impl Kind {
    pub fn other(self) -> Kind {
        match self {
            Kind::Warp => Kind::Weft,
            Kind::Weft => Kind::Warp,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Warp => f.write_str("warp"),
            Kind::Weft => f.write_str("weft"),
        }
    }
}

/// A component of a weave. `index` is 0-based; it displays 1-based.
///
/// Ordering puts every warp before every weft, then orders by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId {
    pub kind: Kind,
    pub index: usize,
}

impl ComponentId {
    pub fn warp(index: usize) -> Self {
        ComponentId {
            kind: Kind::Warp,
            index,
        }
    }

    pub fn weft(index: usize) -> Self {
        ComponentId {
            kind: Kind::Weft,
            index,
        }
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.index + 1)
    }
}

/// A diagram move. Positions are 0-based.
///
/// * `Translate { a, b }` maps `c` to `c'(i, j) = c(i + a mod m, j + b mod n)`.
/// * `SwapWarps(i)` exchanges rows `i` and `i + 1 mod m`.
/// * `SwapWefts(j)` exchanges columns `j` and `j + 1 mod n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MoveRepr", try_from = "MoveRepr")]
pub enum Move {
    Translate { a: usize, b: usize },
    SwapWarps(usize),
    SwapWefts(usize),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Translate { a, b } => write!(f, "translate({a},{b})"),
            Move::SwapWarps(i) => write!(f, "swap-warps({})", i + 1),
            Move::SwapWefts(j) => write!(f, "swap-wefts({})", j + 1),
        }
    }
}

/// External (1-based) encoding of a move.
#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum MoveRepr {
    Translate { a: usize, b: usize },
    SwapWarps { i: usize },
    SwapWefts { j: usize },
}

impl From<Move> for MoveRepr {
    fn from(mv: Move) -> Self {
        match mv {
            Move::Translate { a, b } => MoveRepr::Translate { a, b },
            Move::SwapWarps(i) => MoveRepr::SwapWarps { i: i + 1 },
            Move::SwapWefts(j) => MoveRepr::SwapWefts { j: j + 1 },
        }
    }
}

impl TryFrom<MoveRepr> for Move {
    type Error = String;

    fn try_from(repr: MoveRepr) -> std::result::Result<Self, String> {
        match repr {
            MoveRepr::Translate { a, b } => Ok(Move::Translate { a, b }),
            MoveRepr::SwapWarps { i } if i >= 1 => Ok(Move::SwapWarps(i - 1)),
            MoveRepr::SwapWefts { j } if j >= 1 => Ok(Move::SwapWefts(j - 1)),
            _ => Err("swap positions are 1-based".to_string()),
        }
    }
}

/// An ordered list of moves, each legal in the state left by the previous
/// ones.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveSequence(pub Vec<Move>);

impl MoveSequence {
    pub fn new() -> Self {
        MoveSequence(Vec::new())
    }

    pub fn push(&mut self, mv: Move) {
        self.0.push(mv);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Move> {
        self.0.iter()
    }

    /// Applies every move in order, failing on the first illegal one.
    pub fn replay(&self, start: &CrossingMatrix) -> Result<CrossingMatrix> {
        self.0
            .iter()
            .try_fold(start.clone(), |state, mv| state.apply(*mv))
    }
}

impl FromIterator<Move> for MoveSequence {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        MoveSequence(iter.into_iter().collect())
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Move::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Move-invariant summary of a diagram, used to reject non-isotopic pairs
/// without exploring orbits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub ones: usize,
    /// Row sums, sorted ascending.
    pub row_sums: Vec<usize>,
    /// Column sums, sorted ascending.
    pub col_sums: Vec<usize>,
    /// Number of unordered row pairs that are comparable.
    pub comparable_row_pairs: usize,
    /// Number of unordered column pairs that are comparable.
    pub comparable_col_pairs: usize,
}

/// The crossing matrix of an `m x n` weave.
///
/// The derived ordering compares shape first and then the row-major bit
/// string, which is the lexicographic order of the text serialization for
/// diagrams of equal shape.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingMatrix {
    m: usize,
    n: usize,
    rows: Vec<u64>,
}

impl CrossingMatrix {
    /// Validates a rectangular array of 0/1 entries.
    ///
    /// An empty slice is the `0 x 0` diagram; empty rows give `m x 0`.
    pub fn new<T: AsRef<[i64]>>(raw: &[T]) -> Result<Self> {
        let m = raw.len();
        let n = raw.first().map_or(0, |r| r.as_ref().len());
        check_dims(m, n)?;
        let mut rows = Vec::with_capacity(m);
        for (i, row) in raw.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(WeaveError::Ragged {
                    row: i + 1,
                    found: row.len(),
                    expected: n,
                });
            }
            let mut word = 0u64;
            for (j, &value) in row.iter().enumerate() {
                let bit = match value {
                    0 => 0,
                    1 => 1,
                    _ => {
                        return Err(WeaveError::NonBinary {
                            row: i + 1,
                            col: j + 1,
                            value,
                        })
                    }
                };
                word = (word << 1) | bit;
            }
            rows.push(word);
        }
        Ok(CrossingMatrix { m, n, rows })
    }

    /// Builds a diagram from packed row words (column 0 in bit `n - 1`).
    pub fn from_row_words(n: usize, rows: Vec<u64>) -> Result<Self> {
        check_dims(rows.len(), n)?;
        let mask = low_mask(n);
        if let Some(i) = rows.iter().position(|&r| r & !mask != 0) {
            return Err(WeaveError::Ragged {
                row: i + 1,
                found: 64 - rows[i].leading_zeros() as usize,
                expected: n,
            });
        }
        Ok(CrossingMatrix {
            m: rows.len(),
            n,
            rows,
        })
    }

    /// The all-zero diagram.
    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        check_dims(m, n)?;
        Ok(CrossingMatrix {
            m,
            n,
            rows: vec![0; m],
        })
    }

    /// Decodes the `index`-th diagram in enumeration order: the row-major
    /// bit string read as a binary number, entry `(0, 0)` most significant.
    pub fn from_index(m: usize, n: usize, index: u128) -> Self {
        debug_assert!(m * n <= 128);
        let mask = low_mask(n);
        let rows = (0..m)
            .map(|i| {
                let shift = (m - 1 - i) * n;
                ((index >> shift) as u64) & mask
            })
            .collect();
        CrossingMatrix { m, n, rows }
    }

    /// Inverse of [`CrossingMatrix::from_index`].
    pub fn index(&self) -> u128 {
        self.rows
            .iter()
            .fold(0u128, |acc, &r| (acc << self.n) | r as u128)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> (self.n - 1 - j)) & 1 == 1
    }

    /// Packed crossing function of warp `i`.
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn row_words(&self) -> &[u64] {
        &self.rows
    }

    /// Packed crossing function of weft `j`, row 0 in bit `m - 1`.
    pub fn column(&self, j: usize) -> u64 {
        let shift = self.n - 1 - j;
        self.rows
            .iter()
            .fold(0u64, |acc, &r| (acc << 1) | ((r >> shift) & 1))
    }

    pub fn columns(&self) -> Vec<u64> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    /// Crossing function of a component as a packed word.
    pub fn crossing_function(&self, c: ComponentId) -> u64 {
        match c.kind {
            Kind::Warp => self.row(c.index),
            Kind::Weft => self.column(c.index),
        }
    }

    /// Entries as nested vectors.
    pub fn to_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.m)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_degenerate(&self) -> bool {
        self.m == 0 || self.n == 0
    }

    /// Length of the warp or weft axis.
    pub fn len_of(&self, kind: Kind) -> usize {
        match kind {
            Kind::Warp => self.m,
            Kind::Weft => self.n,
        }
    }

    fn check_position(&self, mv: Move) -> Result<()> {
        let ok = match mv {
            Move::Translate { .. } => true,
            Move::SwapWarps(i) => i < self.m,
            Move::SwapWefts(j) => j < self.n,
        };
        if ok {
            Ok(())
        } else {
            Err(WeaveError::MoveOutOfRange {
                mv,
                m: self.m,
                n: self.n,
            })
        }
    }

    /// Whether `mv` is legal here. Translations always are; a swap needs its
    /// two cyclically adjacent components to be comparable.
    pub fn can_apply(&self, mv: Move) -> Result<bool> {
        self.check_position(mv)?;
        Ok(match mv {
            Move::Translate { .. } => true,
            Move::SwapWarps(i) => comparable_bits(self.rows[i], self.rows[(i + 1) % self.m]),
            Move::SwapWefts(j) => {
                comparable_bits(self.column(j), self.column((j + 1) % self.n))
            }
        })
    }

    pub fn apply(&self, mv: Move) -> Result<CrossingMatrix> {
        if !self.can_apply(mv)? {
            return Err(WeaveError::IllegalMove(mv));
        }
        Ok(match mv {
            Move::Translate { a, b } => self.translate(a, b),
            Move::SwapWarps(i) => self.swap_rows_unchecked(i, (i + 1) % self.m),
            Move::SwapWefts(j) => self.swap_columns_unchecked(j, (j + 1) % self.n),
        })
    }

    /// `c'(i, j) = c(i + a mod m, j + b mod n)`.
    pub fn translate(&self, a: usize, b: usize) -> CrossingMatrix {
        if self.m == 0 {
            return self.clone();
        }
        let a = a % self.m;
        let b = if self.n == 0 { 0 } else { b % self.n };
        let rows = (0..self.m)
            .map(|i| rotate_left(self.rows[(i + a) % self.m], b, self.n))
            .collect();
        CrossingMatrix {
            m: self.m,
            n: self.n,
            rows,
        }
    }

    pub(crate) fn swap_rows_unchecked(&self, i: usize, k: usize) -> CrossingMatrix {
        let mut out = self.clone();
        out.rows.swap(i, k);
        out
    }

    pub(crate) fn swap_columns_unchecked(&self, j: usize, k: usize) -> CrossingMatrix {
        let (sj, sk) = (self.n - 1 - j, self.n - 1 - k);
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let x = ((r >> sj) ^ (r >> sk)) & 1;
                r ^ (x << sj) ^ (x << sk)
            })
            .collect();
        CrossingMatrix {
            m: self.m,
            n: self.n,
            rows,
        }
    }

    /// Exchanges the roles of warps and wefts: an `n x m` diagram with
    /// `c'(j, i) = 1 - c(i, j)`.
    pub fn transpose_dual(&self) -> CrossingMatrix {
        let mask = low_mask(self.m);
        let rows = (0..self.n).map(|j| !self.column(j) & mask).collect();
        CrossingMatrix {
            m: self.n,
            n: self.m,
            rows,
        }
    }

    /// `c'(i, j) = c(m - 1 - i, j)`.
    pub fn reflect_warps(&self) -> CrossingMatrix {
        let mut out = self.clone();
        out.rows.reverse();
        out
    }

    /// `c'(i, j) = c(i, n - 1 - j)`.
    pub fn reflect_wefts(&self) -> CrossingMatrix {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                if self.n == 0 {
                    0
                } else {
                    r.reverse_bits() >> (64 - self.n)
                }
            })
            .collect();
        CrossingMatrix {
            m: self.m,
            n: self.n,
            rows,
        }
    }

    /// Depth flip: every crossing changes.
    pub fn complement(&self) -> CrossingMatrix {
        let mask = low_mask(self.n);
        CrossingMatrix {
            m: self.m,
            n: self.n,
            rows: self.rows.iter().map(|&r| !r & mask).collect(),
        }
    }

    /// Restriction to the given warps and wefts, keeping their relative
    /// order.
    pub fn submatrix(&self, warps: &[usize], wefts: &[usize]) -> CrossingMatrix {
        let rows = warps
            .iter()
            .map(|&i| {
                wefts
                    .iter()
                    .fold(0u64, |acc, &j| (acc << 1) | self.get(i, j) as u64)
            })
            .collect();
        CrossingMatrix {
            m: warps.len(),
            n: wefts.len(),
            rows,
        }
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut row_sums: Vec<usize> = self.rows.iter().map(|r| r.count_ones() as usize).collect();
        let cols = self.columns();
        let mut col_sums: Vec<usize> = cols.iter().map(|c| c.count_ones() as usize).collect();
        row_sums.sort_unstable();
        col_sums.sort_unstable();
        Fingerprint {
            ones: self.count_ones(),
            row_sums,
            col_sums,
            comparable_row_pairs: count_comparable_pairs(&self.rows),
            comparable_col_pairs: count_comparable_pairs(&cols),
        }
    }
}

impl fmt::Display for CrossingMatrix {
    /// Rows of '0'/'1' joined by '/'.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            if i > 0 {
                f.write_str("/")?;
            }
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

fn check_dims(m: usize, n: usize) -> Result<()> {
    if m > MAX_DIM {
        return Err(WeaveError::TooLarge {
            axis: "warp",
            count: m,
            max: MAX_DIM,
        });
    }
    if n > MAX_DIM {
        return Err(WeaveError::TooLarge {
            axis: "weft",
            count: n,
            max: MAX_DIM,
        });
    }
    Ok(())
}

/// Cyclic left rotation of the low `width` bits by `by`; with column 0 in
/// the top bit this moves column `j + by` to column `j`.
#[inline]
fn rotate_left(x: u64, by: usize, width: usize) -> u64 {
    if by == 0 || width == 0 {
        return x;
    }
    ((x << by) | (x >> (width - by))) & low_mask(width)
}

fn count_comparable_pairs(words: &[u64]) -> usize {
    let mut count = 0;
    for (k, &u) in words.iter().enumerate() {
        count += words[k + 1..]
            .iter()
            .filter(|&&v| comparable_bits(u, v))
            .count();
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(s: &[&[i64]]) -> CrossingMatrix {
        CrossingMatrix::new(s).unwrap()
    }

    #[test]
    fn validate_accepts_and_rejects() {
        let m = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.shape(), (2, 2));
        assert!(matches!(
            CrossingMatrix::new(&[vec![0i64, 2]]),
            Err(WeaveError::NonBinary { row: 1, col: 2, value: 2 })
        ));
        assert!(matches!(
            CrossingMatrix::new(&[vec![0i64, 1], vec![1]]),
            Err(WeaveError::Ragged { row: 2, .. })
        ));
        assert!(matches!(
            CrossingMatrix::zeros(65, 1),
            Err(WeaveError::TooLarge { .. })
        ));
    }

    #[test]
    fn comparable_vectors() {
        assert!(comparable(&[0, 1, 0], &[1, 1, 0]).unwrap());
        assert!(!comparable(&[0, 1], &[1, 0]).unwrap());
        assert!(comparable(&[1, 0, 1], &[1, 0, 1]).unwrap());
        assert_eq!(
            comparable(&[0], &[0, 1]),
            Err(WeaveError::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn can_apply_examples() {
        let checker = mat(&[&[0, 1], &[1, 0]]);
        assert!(!checker.can_apply(Move::SwapWarps(0)).unwrap());
        assert!(mat(&[&[0, 1], &[1, 1]]).can_apply(Move::SwapWarps(0)).unwrap());
        assert!(checker.can_apply(Move::Translate { a: 5, b: 3 }).unwrap());
        assert!(matches!(
            checker.can_apply(Move::SwapWefts(2)),
            Err(WeaveError::MoveOutOfRange { .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let checker = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            checker.apply(Move::Translate { a: 1, b: 0 }).unwrap(),
            mat(&[&[1, 0], &[0, 1]])
        );
        assert_eq!(
            mat(&[&[0, 1], &[1, 1]]).apply(Move::SwapWarps(0)).unwrap(),
            mat(&[&[1, 1], &[0, 1]])
        );
        assert_eq!(
            checker.apply(Move::SwapWarps(0)),
            Err(WeaveError::IllegalMove(Move::SwapWarps(0)))
        );
    }

    #[test]
    fn translate_matches_definition() {
        let m = mat(&[&[1, 0, 0], &[0, 1, 1]]);
        for a in 0..2 {
            for b in 0..3 {
                let t = m.translate(a, b);
                for i in 0..2 {
                    for j in 0..3 {
                        assert_eq!(t.get(i, j), m.get((i + a) % 2, (j + b) % 3));
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_generators() {
        assert_eq!(
            mat(&[&[0, 1], &[1, 0]]).complement(),
            mat(&[&[1, 0], &[0, 1]])
        );
        let wide = mat(&[&[0, 1]]);
        assert_eq!(wide.transpose_dual(), mat(&[&[1], &[0]]));
        let m = mat(&[&[1, 1, 0], &[0, 1, 0]]);
        assert_eq!(m.reflect_warps().reflect_warps(), m);
        assert_eq!(m.reflect_wefts(), mat(&[&[0, 1, 1], &[0, 1, 0]]));
        assert_eq!(m.transpose_dual().transpose_dual(), m);
        assert_eq!(m.complement().complement(), m);
    }

    #[test]
    fn fingerprint_examples() {
        let f = mat(&[&[0, 1], &[1, 0]]).fingerprint();
        assert_eq!(f.ones, 2);
        assert_eq!(f.row_sums, vec![1, 1]);
        assert_eq!(f.col_sums, vec![1, 1]);
        assert_eq!(f.comparable_row_pairs, 0);
        assert_eq!(f.comparable_col_pairs, 0);

        let g = mat(&[&[1, 1], &[0, 0]]).fingerprint();
        assert_eq!(g.row_sums, vec![0, 2]);
        assert_eq!(g.comparable_row_pairs, 1);
    }

    #[test]
    fn index_round_trip() {
        for idx in 0u128..64 {
            let m = CrossingMatrix::from_index(2, 3, idx);
            assert_eq!(m.index(), idx);
        }
        assert_eq!(CrossingMatrix::from_index(2, 2, 0b0110).to_string(), "01/10");
    }

    #[test]
    fn degenerate_shapes() {
        let z = CrossingMatrix::zeros(3, 0).unwrap();
        assert!(z.is_degenerate());
        assert_eq!(z.translate(1, 7), z);
        assert_eq!(z.transpose_dual().shape(), (0, 3));
        assert_eq!(z.reflect_wefts(), z);
    }

    #[test]
    fn move_serde_is_one_based() {
        let json = serde_json::to_string(&Move::SwapWarps(0)).unwrap();
        assert_eq!(json, r#"{"op":"swap_warps","i":1}"#);
        let back: Move = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Move::SwapWarps(0));
        assert!(serde_json::from_str::<Move>(r#"{"op":"swap_wefts","j":0}"#).is_err());
    }
}
