//! Three interchangeable encodings of a vertex location.
//!
//! * [`PathWord`]: the L/R moves from the root down to the vertex.
//! * [`Position`]: `(row, index)` with row 0 holding the root and a 1-based
//!   index counted from the left.
//! * [`BinaryCode`]: breadth-first numbering written in binary; a leading 1
//!   followed by one bit per move (0 = L, 1 = R).
//!
//! A `PathWord` is stored in root-to-vertex order. The matrix form of the same
//! vertex is the operator word read the other way: its leftmost letter is the
//! last move taken. [`PathWord::operator_runs`] gives that view.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::UVParams;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Move {
    L,
    R,
}

impl Move {
    pub fn flip(self) -> Move {
        match self {
            Move::L => Move::R,
            Move::R => Move::L,
        }
    }

    fn bit(self) -> bool {
        self == Move::R
    }

    fn from_bit(bit: bool) -> Move {
        if bit {
            Move::R
        } else {
            Move::L
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::L => "L",
            Move::R => "R",
        })
    }
}

/// Moves from a root to a vertex, run-length encoded.
///
/// Adjacent runs always carry different letters and every run is nonempty.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PathWord {
    runs: Vec<(Move, u64)>,
}

impl PathWord {
    pub fn new() -> Self {
        PathWord::default()
    }

    pub fn from_moves<I: IntoIterator<Item = Move>>(moves: I) -> Self {
        let mut w = PathWord::new();
        for m in moves {
            w.push(m);
        }
        w
    }

    /// Builds a word from root-to-vertex runs; zero-length runs are skipped.
    pub fn from_runs<I: IntoIterator<Item = (Move, u64)>>(runs: I) -> Self {
        let mut w = PathWord::new();
        for (m, k) in runs {
            w.push_run(m, k);
        }
        w
    }

    pub fn push(&mut self, m: Move) {
        self.push_run(m, 1);
    }

    pub fn push_run(&mut self, m: Move, k: u64) {
        if k == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((last, n)) if *last == m => *n += k,
            _ => self.runs.push((m, k)),
        }
    }

    /// Number of moves, i.e. the depth of the vertex below the root.
    pub fn len(&self) -> u64 {
        self.runs.iter().map(|&(_, k)| k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Root-to-vertex runs.
    pub fn runs(&self) -> &[(Move, u64)] {
        &self.runs
    }

    /// Root-to-vertex moves.
    pub fn moves(&self) -> impl DoubleEndedIterator<Item = Move> + '_ {
        self.runs.iter().flat_map(|&(m, k)| std::iter::repeat_n(m, k as usize))
    }

    /// Runs of the operator word, leftmost (last applied) first.
    pub fn operator_runs(&self) -> impl Iterator<Item = (Move, u64)> + '_ {
        self.runs.iter().rev().copied()
    }

    /// Same path with L and R exchanged.
    pub fn swap_letters(&self) -> PathWord {
        PathWord {
            runs: self.runs.iter().map(|&(m, k)| (m.flip(), k)).collect(),
        }
    }

    pub fn concat(&self, tail: &PathWord) -> PathWord {
        let mut w = self.clone();
        for &(m, k) in &tail.runs {
            w.push_run(m, k);
        }
        w
    }

    /// Operator notation such as `R_v L_u R_v^2`, with the given letter names.
    pub fn operator_string(&self, left: &str, right: &str) -> String {
        if self.is_empty() {
            return "I".to_string();
        }
        self.operator_runs()
            .map(|(m, k)| {
                let letter = if m == Move::L { left } else { right };
                if k == 1 {
                    letter.to_string()
                } else {
                    format!("{letter}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for PathWord {
    /// Root-to-vertex letters, e.g. `RLL`; the empty word prints as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        for m in self.moves() {
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PathWord({self})")
    }
}

impl FromStr for PathWord {
    type Err = Error;

    /// Parses root-to-vertex letters (`L`/`R`, case-insensitive); `-` or
    /// an empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(PathWord::new());
        }
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'L' | 'l' => Ok(Move::L),
                'R' | 'r' => Ok(Move::R),
                _ => Err(Error::MalformedWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(PathWord::from_moves)
    }
}

impl Serialize for PathWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `c(n, i)`: row `n` (root row is 0), index `i` in `1..=2^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    row: u64,
    index: BigUint,
}

impl Position {
    pub fn new(row: u64, index: impl Into<BigUint>) -> Result<Self> {
        let index = index.into();
        if index.is_zero() || index > (BigUint::one() << row) {
            return Err(Error::InvalidPosition {
                row,
                index: index.to_string(),
            });
        }
        Ok(Position { row, index })
    }

    pub fn root() -> Self {
        Position {
            row: 0,
            index: BigUint::one(),
        }
    }

    pub fn row(&self) -> u64 {
        self.row
    }

    pub fn index(&self) -> &BigUint {
        &self.index
    }

    pub fn row_len(&self) -> BigUint {
        BigUint::one() << self.row
    }

    /// The position `2^n + 1 - i` on the other side of the row.
    pub fn mirror(&self) -> Position {
        Position {
            row: self.row,
            index: self.row_len() + 1u32 - &self.index,
        }
    }

    pub fn is_last_in_row(&self) -> bool {
        self.index == self.row_len()
    }

    /// `(n, i+1)`, if it exists.
    pub fn next_in_row(&self) -> Option<Position> {
        (!self.is_last_in_row()).then(|| Position {
            row: self.row,
            index: &self.index + 1u32,
        })
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.index)
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Position", 2)?;
        st.serialize_field("n", &self.row)?;
        st.serialize_field("i", &self.index.to_string())?;
        st.end()
    }
}

/// Writes `2^n + (i-1)` in binary, drops the leading 1, and reads the
/// remaining bits as root-to-vertex moves (0 = L, 1 = R).
pub fn index_to_word(pos: &Position) -> PathWord {
    let offset = &pos.index - 1u32;
    PathWord::from_moves((0..pos.row).rev().map(|b| Move::from_bit(offset.bit(b))))
}

pub fn word_to_index(word: &PathWord) -> Position {
    let mut offset = BigUint::zero();
    for m in word.moves() {
        offset <<= 1u32;
        if m.bit() {
            offset += 1u32;
        }
    }
    Position {
        row: word.len(),
        index: offset + 1u32,
    }
}

/// Breadth-first position in binary, leading 1 included.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    bits: Vec<bool>,
}

impl BinaryCode {
    /// The root's code `1`.
    pub fn root() -> Self {
        BinaryCode { bits: vec![true] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        if bits.first() != Some(&true) {
            let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
            return Err(Error::MalformedCode(s));
        }
        Ok(BinaryCode { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Moves in the classical tree, i.e. the bits after the leading 1.
    pub fn to_word(&self) -> PathWord {
        PathWord::from_moves(self.bits[1..].iter().map(|&b| Move::from_bit(b)))
    }

    /// Code of the vertex reached by `word` from the classical root.
    pub fn from_word(word: &PathWord) -> Self {
        BinaryCode::root().append_moves(word)
    }

    pub fn to_position(&self) -> Position {
        word_to_index(&self.to_word())
    }

    pub fn from_position(pos: &Position) -> Self {
        BinaryCode::from_word(&index_to_word(pos))
    }

    fn append_moves(mut self, word: &PathWord) -> Self {
        self.bits.extend(word.moves().map(Move::bit));
        self
    }

    /// Length of the trailing run of `bit`, not counting the leading 1.
    fn trailing_run(&self, bit: bool) -> usize {
        self.bits[1..].iter().rev().take_while(|&&b| b == bit).count()
    }

    fn truncated(&self, k: usize) -> BinaryCode {
        BinaryCode {
            bits: self.bits[..self.bits.len() - k].to_vec(),
        }
    }

    /// Human-readable form with a `_2` suffix, e.g. `1100_2`.
    pub fn human(&self) -> String {
        format!("{self}_2")
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.human())
    }
}

impl FromStr for BinaryCode {
    type Err = Error;

    /// Accepts an optional `0b` prefix or `_2` suffix.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix("0b").unwrap_or(t);
        let t = t.strip_suffix("_2").unwrap_or(t);
        let bits = t
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::MalformedCode(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.first() != Some(&true) {
            return Err(Error::MalformedCode(s.to_string()));
        }
        Ok(BinaryCode { bits })
    }
}

impl Serialize for BinaryCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parent of a coded vertex in the `(u, v)` forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParentCode {
    LeftChildOf(BinaryCode),
    RightChildOf(BinaryCode),
    Orphan,
}

/// Appends `u` zeros per L and `v` ones per R to `root`.
pub fn encode_uv_code(word: &PathWord, root: &BinaryCode, params: UVParams) -> BinaryCode {
    let mut bits = root.bits.clone();
    for (m, k) in word.runs() {
        let per = if *m == Move::L { params.u() } else { params.v() };
        bits.extend(std::iter::repeat_n(m.bit(), (per * k) as usize));
    }
    BinaryCode { bits }
}

/// Classifies a code by its trailing run: at least `u` zeros makes it a left
/// child, at least `v` ones a right child, anything shorter an orphan.
pub fn decode_uv_code(code: &BinaryCode, params: UVParams) -> ParentCode {
    let u = params.u() as usize;
    let v = params.v() as usize;
    match code.bits[1..].last() {
        Some(false) if code.trailing_run(false) >= u => ParentCode::LeftChildOf(code.truncated(u)),
        Some(true) if code.trailing_run(true) >= v => ParentCode::RightChildOf(code.truncated(v)),
        _ => ParentCode::Orphan,
    }
}

/// Repeatedly decodes until an orphan is reached. Returns the orphan's code
/// and the path word from it down to `code`.
pub fn uv_code_root(code: &BinaryCode, params: UVParams) -> (BinaryCode, PathWord) {
    let mut cur = code.clone();
    let mut undone = Vec::new();
    loop {
        match decode_uv_code(&cur, params) {
            ParentCode::LeftChildOf(p) => {
                undone.push(Move::L);
                cur = p;
            }
            ParentCode::RightChildOf(p) => {
                undone.push(Move::R);
                cur = p;
            }
            ParentCode::Orphan => break,
        }
    }
    (cur, PathWord::from_moves(undone.into_iter().rev()))
}
