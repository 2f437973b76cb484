//! Trees `T^(u,v)(z)`: rows, positions, parents and the successor formula.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

use crate::arith::{apply_left, apply_right, UVParams};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::{index_to_word, Move, Position};

/// Largest row materialized unless overridden.
pub const DEFAULT_MAX_ROW: u64 = 24;

/// `(left, right)` children of `w`.
pub fn children(w: &Rational, params: UVParams) -> (Rational, Rational) {
    (apply_left(w, params), apply_right(w, params))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParentResult {
    LeftChildOf(Rational),
    RightChildOf(Rational),
    Orphan,
}

impl ParentResult {
    pub fn parent(&self) -> Option<&Rational> {
        match self {
            ParentResult::LeftChildOf(p) | ParentResult::RightChildOf(p) => Some(p),
            ParentResult::Orphan => None,
        }
    }
}

/// Inverts the child maps. Values below `1/u` are left children, values
/// above `v` right children, and everything in `[1/u, v]` is an orphan.
pub fn parent(w: &Rational, params: UVParams) -> ParentResult {
    let (a, b) = (w.numer(), w.denom());
    let ua = params.u_big() * a;
    let vb = params.v_big() * b;
    if &ua < b {
        // w < 1/u: parent is w/(1-uw) = a/(b-ua)
        ParentResult::LeftChildOf(Rational::new(a.clone(), b - ua).expect("b > ua"))
    } else if a > &vb {
        ParentResult::RightChildOf(Rational::new(a - vb, b.clone()).expect("b > 0"))
    } else {
        ParentResult::Orphan
    }
}

/// A tree rooted at a positive rational, with a cap on materialized rows.
#[derive(Clone, Debug)]
pub struct Tree {
    root: Rational,
    params: UVParams,
    max_row: u64,
}

impl Tree {
    pub fn new(root: Rational, params: UVParams) -> Result<Self> {
        root.require_positive()?;
        Ok(Tree {
            root,
            params,
            max_row: DEFAULT_MAX_ROW,
        })
    }

    pub fn with_max_row(mut self, max_row: u64) -> Self {
        self.max_row = max_row;
        self
    }

    pub fn root(&self) -> &Rational {
        &self.root
    }

    pub fn params(&self) -> UVParams {
        self.params
    }

    pub fn max_row(&self) -> u64 {
        self.max_row
    }

    pub fn check_row(&self, n: u64) -> Result<()> {
        if n > self.max_row {
            return Err(Error::RowLimit {
                requested: n,
                limit: self.max_row,
            });
        }
        Ok(())
    }

    /// Streams rows 0, 1, 2, ... up to the row cap.
    pub fn rows(&self) -> Rows {
        Rows {
            current: None,
            params: self.params,
            root: self.root.clone(),
            next_row: 0,
            max_row: self.max_row,
        }
    }

    /// Row `n`, left to right.
    pub fn row(&self, n: u64) -> Result<Vec<Rational>> {
        self.check_row(n)?;
        let mut row = vec![self.root.clone()];
        for _ in 0..n {
            row = next_row(&row, self.params);
        }
        Ok(row)
    }

    /// Follows the path of `pos` from the root without building the row.
    pub fn vertex_at(&self, pos: &Position) -> Rational {
        let word = index_to_word(pos);
        let mut w = self.root.clone();
        for m in word.moves() {
            w = match m {
                Move::L => apply_left(&w, self.params),
                Move::R => apply_right(&w, self.params),
            };
        }
        w
    }

    /// Graphviz rendering of the first `depth` rows below the root. Nodes are
    /// labelled `a/b`, edges `L` or `R`.
    pub fn to_dot(&self, depth: u64) -> Result<String> {
        self.check_row(depth)?;
        let mut out = String::new();
        writeln!(out, "digraph cw {{").unwrap();
        writeln!(out, "  // T^({},{})({})", self.params.u(), self.params.v(), self.root).unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        let mut id = 1u64;
        for (n, row) in self.rows().take(depth as usize + 1).enumerate() {
            for w in &row {
                writeln!(out, "  n{id} [label=\"{w}\"];").unwrap();
                if n > 0 {
                    let (parent, mv) = (id / 2, if id.is_multiple_of(2) { "L" } else { "R" });
                    writeln!(out, "  n{parent} -> n{id} [label=\"{mv}\"];").unwrap();
                }
                id += 1;
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Breadth-first rows, holding only the current one.
pub struct Rows {
    current: Option<Vec<Rational>>,
    params: UVParams,
    root: Rational,
    next_row: u64,
    max_row: u64,
}

impl Iterator for Rows {
    type Item = Vec<Rational>;

    fn next(&mut self) -> Option<Vec<Rational>> {
        if self.next_row > self.max_row {
            return None;
        }
        let row = match self.current.take() {
            None => vec![self.root.clone()],
            Some(prev) => next_row(&prev, self.params),
        };
        self.next_row += 1;
        self.current = Some(row.clone());
        Some(row)
    }
}

fn next_row(prev: &[Rational], params: UVParams) -> Vec<Rational> {
    let mut row = Vec::with_capacity(prev.len() * 2);
    for w in prev {
        row.push(apply_left(w, params));
        row.push(apply_right(w, params));
    }
    row
}

/// Next element of a row via the closed-form successor formula.
///
/// The formula only describes interior row elements: their integer part is a
/// multiple of `v` and their fractional part lies strictly between 0 and
/// `1/u`. Anything else is rejected.
///
/// In a tree rooted at an orphan the last element of every row fails these
/// checks. With a non-orphan root it may pass them (1/5 + 2n under u = 2),
/// and the value returned is then not a vertex of that row.
pub fn successor(alpha: &Rational, params: UVParams) -> Result<Rational> {
    alpha.require_positive()?;
    let floor = alpha.floor();
    let frac = alpha.fract();
    let one = Rational::one();
    let u = Rational::from(params.u());
    let v = Rational::from(params.v());
    let reject = || Error::NotInteriorElement {
        value: alpha.to_string(),
        u: params.u(),
        v: params.v(),
    };
    if frac.is_zero() || !floor.is_multiple_of(&params.v_big()) {
        return Err(reject());
    }
    // 1 - u{a} must be positive
    let gap = one
        .checked_sub(&(&u * &frac))
        .filter(Rational::is_positive)
        .ok_or_else(reject)?;
    let v_gap = &v * &gap;
    let num = &(&v * &frac) + &(&v * &v_gap);
    let fl = Rational::from_integer(floor);
    let den = &(&(&u * &fl) * &(&frac + &v_gap)) + &v_gap;
    Ok(&num / &den)
}

/// Newman's successor `1/(2[x] + 1 - x)` for the classical tree. Also maps
/// the last element of a row to the first of the next.
pub fn newman_successor(x: &Rational) -> Result<Rational> {
    x.require_positive()?;
    // 2[x] + 1 - x = [x] + 1 - {x} > 0
    let shifted = Rational::from_integer(x.floor() + 1u32)
        .checked_sub(&x.fract())
        .expect("fractional part is below 1");
    shifted.recip()
}

/// Common ancestor of `c(n, i)` and `c(n, i+1)`, with `k` such that the
/// pair is `R^k L (w)` and `L^k R (w)`.
pub fn adjacent_lca(pos: &Position) -> Result<(Position, u64)> {
    if pos.is_last_in_row() {
        return Err(Error::NoSuccessorPosition(pos.to_string(), pos.row()));
    }
    let offset = pos.index() - 1u32;
    let k = offset.trailing_ones();
    let prefix: BigUint = offset >> (k + 1);
    let ancestor = Position::new(pos.row() - k - 1, prefix + 1u32)?;
    Ok((ancestor, k))
}

/// Both sides of `v d_i + (1 - uv) w' = n_{i+1}`, where `d_i` is the
/// denominator of `c(n, i)`, `n_{i+1}` the numerator of `c(n, i+1)` and `w'`
/// the numerator of their common ancestor.
pub fn dn_relation(tree: &Tree, pos: &Position) -> Result<(BigInt, BigInt)> {
    let (anc, _) = adjacent_lca(pos)?;
    let next = pos.next_in_row().expect("checked by adjacent_lca");
    let d_i = BigInt::from(tree.vertex_at(pos).denom().clone());
    let n_next = BigInt::from(tree.vertex_at(&next).numer().clone());
    let w_num = BigInt::from(tree.vertex_at(&anc).numer().clone());
    let p = tree.params();
    let (u, v) = (BigInt::from(p.u()), BigInt::from(p.v()));
    let lhs = &v * d_i + (BigInt::from(1) - &u * &v) * w_num;
    Ok((lhs, n_next))
}
