//! Orphans, ancestor chains and the continued-fraction descendant test.
//!
//! Every positive rational lies in exactly one tree of the `(u, v)` forest,
//! rooted at an orphan in `[1/u, v]`. Parents are found by undoing one child
//! step on the continued fraction:
//!
//! * a right child `[q0, q1, ..]` with value above `v` has parent `[q0 - v, q1, ..]`;
//! * a left child `[0, q1, q2, ..]` with value below `1/u` has parent
//!   `[0, q1 - u, q2, ..]`, or `[q2, ..]` when `q1 = u`.
//!
//! Descendants are recognized directly from the two expansions, and the
//! coefficient differences spell out the path between them.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::UVParams;
use crate::contfrac::ContinuedFraction;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tree::{parent, ParentResult};
use crate::word::{Move, PathWord};

/// `1/u <= w <= v`.
pub fn is_orphan(w: &Rational, params: UVParams) -> bool {
    let (a, b) = (w.numer(), w.denom());
    params.u_big() * a >= *b && *a <= params.v_big() * b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AncestorStep {
    pub value: Rational,
    pub cf: ContinuedFraction,
    /// Move undone to reach this ancestor from the previous entry.
    pub undid: Move,
}

/// The ancestors of a vertex, nearest first, ending at its orphan root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AncestorTrace {
    pub query: Rational,
    pub query_cf: ContinuedFraction,
    pub steps: Vec<AncestorStep>,
}

impl AncestorTrace {
    pub fn orphan(&self) -> &Rational {
        self.steps.last().map_or(&self.query, |s| &s.value)
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Root-to-query moves.
    pub fn path(&self) -> PathWord {
        PathWord::from_moves(self.steps.iter().rev().map(|s| s.undid))
    }

    /// One line per ancestor, e.g. `287/620 = [0,2,6,4,5,2] (undid R)`. The
    /// orphan's line is marked `(orphan)`; an orphan query prints itself.
    pub fn lines(&self) -> Vec<String> {
        if self.steps.is_empty() {
            return vec![format!("{} = {} (orphan)", self.query, self.query_cf)];
        }
        let last = self.steps.len() - 1;
        self.steps
            .iter()
            .enumerate()
            .map(|(k, s)| {
                if k == last {
                    format!("{} = {} (orphan)", s.value, s.cf)
                } else {
                    format!("{} = {} (undid {})", s.value, s.cf, s.undid)
                }
            })
            .collect()
    }
}

impl fmt::Display for AncestorTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// One parent step on a canonical expansion, or `None` for an orphan.
fn cf_parent(cf: &ContinuedFraction, params: UVParams) -> Option<(ContinuedFraction, Move)> {
    let q = cf.coeffs();
    let r = q.len() - 1;
    let u = params.u_big();
    let v = params.v_big();
    if q[0] > v || (q[0] == v && r >= 1) {
        let mut p = q.to_vec();
        p[0] -= &v;
        return Some((ContinuedFraction::normalize(p).expect("positive value"), Move::R));
    }
    if q[0].is_zero() {
        if q[1] > u {
            let mut p = q.to_vec();
            p[1] -= &u;
            return Some((ContinuedFraction::normalize(p).expect("positive value"), Move::L));
        }
        if q[1] == u && r >= 2 {
            let p = q[2..].to_vec();
            return Some((ContinuedFraction::normalize(p).expect("positive value"), Move::L));
        }
    }
    None
}

/// The orphan whose tree contains `w`, with the full ancestor chain.
///
/// Terminates because each step lowers the numerator or the denominator.
pub fn orphan_ancestor(w: &Rational, params: UVParams) -> Result<(Rational, AncestorTrace)> {
    w.require_positive()?;
    let query_cf = ContinuedFraction::of(w)?;
    let mut steps = Vec::new();
    let mut value = w.clone();
    let mut cf = query_cf.clone();
    while !is_orphan(&value, params) {
        let (next_cf, undid) = cf_parent(&cf, params).expect("non-orphans have a parent");
        value = match (parent(&value, params), undid) {
            (ParentResult::LeftChildOf(p), Move::L) | (ParentResult::RightChildOf(p), Move::R) => p,
            (other, m) => unreachable!("expansion step {m} disagrees with {other:?}"),
        };
        debug_assert_eq!(next_cf.value(), value);
        cf = next_cf;
        steps.push(AncestorStep {
            value: value.clone(),
            cf: cf.clone(),
            undid,
        });
    }
    let trace = AncestorTrace {
        query: w.clone(),
        query_cf,
        steps,
    };
    Ok((value, trace))
}

/// Coefficient conditions for `[p0..ps]` to descend from `[q0..qr]`.
fn descendant_conditions(p: &[BigUint], q: &[BigUint], params: UVParams) -> bool {
    let (s, r) = (p.len() - 1, q.len() - 1);
    if s < r || (s - r) % 2 != 0 {
        return false;
    }
    let off = s - r;
    let u = params.u_big();
    let v = params.v_big();
    let prefix_ok = p[..off]
        .iter()
        .enumerate()
        .all(|(j, pj)| pj.is_multiple_of(if j % 2 == 0 { &v } else { &u }));
    if !prefix_ok {
        return false;
    }
    if (2..=r).any(|i| p[off + i] != q[i]) {
        return false;
    }
    if !q[0].is_zero() {
        p[off] >= q[0] && (&p[off] - &q[0]).is_multiple_of(&v) && (r == 0 || p[off + 1] == q[1])
    } else {
        p[off].is_multiple_of(&v) && p[off + 1] >= q[1] && (&p[off + 1] - &q[1]).is_multiple_of(&u)
    }
}

/// The expansion of `p` that lines up with `q`, if `p` descends from `q`.
///
/// Below the root 1 = `[1]`, a left move produces `[0, u, 1]`, canonically
/// `[0, u+1]`; those descendants only line up in their long form ending in 1.
pub(crate) fn align(p: &ContinuedFraction, q: &ContinuedFraction, params: UVParams) -> Option<Vec<BigUint>> {
    if descendant_conditions(p.coeffs(), q.coeffs(), params) {
        return Some(p.coeffs().to_vec());
    }
    if q.coeffs().len() == 1 && q.coeffs()[0] == BigUint::from(1u32) {
        let long = p.long_form();
        if descendant_conditions(&long, q.coeffs(), params) {
            return Some(long);
        }
    }
    None
}

fn aligned_expansion(
    descendant: &Rational,
    ancestor: &Rational,
    params: UVParams,
) -> Result<Option<(Vec<BigUint>, ContinuedFraction)>> {
    let p = ContinuedFraction::of(descendant)?;
    let q = ContinuedFraction::of(ancestor)?;
    Ok(align(&p, &q, params).map(|aligned| (aligned, q)))
}

fn not_descendant(descendant: &Rational, ancestor: &Rational, params: UVParams) -> Error {
    Error::NotDescendant {
        descendant: descendant.to_string(),
        ancestor: ancestor.to_string(),
        u: params.u(),
        v: params.v(),
    }
}

/// Whether `descendant` lies in the tree rooted at `ancestor`. A vertex is a
/// descendant of itself.
pub fn is_descendant(descendant: &Rational, ancestor: &Rational, params: UVParams) -> Result<bool> {
    Ok(aligned_expansion(descendant, ancestor, params)?.is_some())
}

pub fn is_strict_descendant(descendant: &Rational, ancestor: &Rational, params: UVParams) -> Result<bool> {
    Ok(descendant != ancestor && is_descendant(descendant, ancestor, params)?)
}

/// Depth of `descendant` below `ancestor`, from the coefficient sums: the
/// even-indexed excess divided by `v` plus the odd-indexed excess divided by `u`.
pub fn depth_of(descendant: &Rational, ancestor: &Rational, params: UVParams) -> Result<BigUint> {
    let (p, q) =
        aligned_expansion(descendant, ancestor, params)?.ok_or_else(|| not_descendant(descendant, ancestor, params))?;
    let q = q.coeffs();
    let off = p.len() - q.len();
    let mut even = BigUint::zero();
    let mut odd = BigUint::zero();
    for (j, pj) in p[..off].iter().enumerate() {
        if j % 2 == 0 {
            even += pj;
        } else {
            odd += pj;
        }
    }
    for (i, qi) in q.iter().enumerate() {
        let diff = &p[off + i] - qi;
        if i % 2 == 0 {
            even += diff;
        } else {
            odd += diff;
        }
    }
    Ok(even / params.v_big() + odd / params.u_big())
}

/// Run lengths `[e0, e1, ..]` of the operator word `R^e0 L^e1 R^e2 ..` that
/// carries an ancestor to a descendant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentVector {
    entries: Vec<BigUint>,
}

impl ExponentVector {
    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub fn total(&self) -> BigUint {
        self.entries.iter().sum()
    }

    /// Root-to-descendant path spelled by the entries.
    pub fn to_word(&self) -> Result<PathWord> {
        let runs = self
            .entries
            .iter()
            .enumerate()
            .rev()
            .map(|(j, e)| {
                let m = if j % 2 == 0 { Move::R } else { Move::L };
                e.to_u64()
                    .map(|k| (m, k))
                    .ok_or_else(|| Error::RunTooLong(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PathWord::from_runs(runs))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn exponent_vector_slices(p: &[BigUint], q: &[BigUint], params: UVParams) -> Result<ExponentVector> {
    let invalid = || Error::NotDescendant {
        descendant: crate::contfrac::evaluate(p).to_string(),
        ancestor: crate::contfrac::evaluate(q).to_string(),
        u: params.u(),
        v: params.v(),
    };
    if q.len() > p.len() {
        return Err(invalid());
    }
    let off = p.len() - q.len();
    let u = params.u_big();
    let v = params.v_big();
    let zero = BigUint::zero();
    p.iter()
        .enumerate()
        .map(|(j, pj)| {
            let qj = if j < off { &zero } else { &q[j - off] };
            if pj < qj {
                return Err(invalid());
            }
            let (e, rem) = (pj - qj).div_rem(if j % 2 == 0 { &v } else { &u });
            if rem.is_zero() {
                Ok(e)
            } else {
                Err(invalid())
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(|entries| ExponentVector { entries })
}

/// Pads the ancestor's expansion with leading zeros, subtracts it from the
/// descendant's, and divides even-indexed entries by `v`, odd ones by `u`.
pub fn exponent_vector_raw(
    descendant: &ContinuedFraction,
    ancestor: &ContinuedFraction,
    params: UVParams,
) -> Result<ExponentVector> {
    exponent_vector_slices(descendant.coeffs(), ancestor.coeffs(), params)
}

/// Path from `ancestor` down to `descendant` and its exponent vector.
pub fn path_between(
    descendant: &Rational,
    ancestor: &Rational,
    params: UVParams,
) -> Result<(PathWord, ExponentVector)> {
    let (p, q) =
        aligned_expansion(descendant, ancestor, params)?.ok_or_else(|| not_descendant(descendant, ancestor, params))?;
    let exps = exponent_vector_slices(&p, q.coeffs(), params)?;
    Ok((exps.to_word()?, exps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{word_to_matrix, Mat2};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    fn p(u: u64, v: u64) -> UVParams {
        UVParams::new(u, v).unwrap()
    }

    fn big(n: u32) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn orphan_examples() {
        assert!(is_orphan(&r("5/2"), p(2, 3)));
        assert!(is_orphan(&r("1"), p(1, 1)));
        assert!(!is_orphan(&r("2"), p(1, 1)));
        assert!(!is_orphan(&r("2147/620"), p(2, 3)));
        assert!(is_orphan(&r("1/2"), p(2, 3)));
        assert!(is_orphan(&r("3"), p(2, 3)));
    }

    #[test]
    fn chain_of_2147_620() {
        let (root, trace) = orphan_ancestor(&r("2147/620"), p(2, 3)).unwrap();
        assert_eq!(root, r("5/2"));
        let got: Vec<String> = trace.lines();
        assert_eq!(
            got,
            vec![
                "287/620 = [0,2,6,4,5,2] (undid R)",
                "287/46 = [6,4,5,2] (undid L)",
                "149/46 = [3,4,5,2] (undid R)",
                "11/46 = [0,4,5,2] (undid R)",
                "11/24 = [0,2,5,2] (undid L)",
                "11/2 = [5,2] (undid L)",
                "5/2 = [2,2] (orphan)",
            ]
        );
        assert_eq!(trace.path().to_string(), "RLLRRLR");
    }

    #[test]
    fn orphans_are_their_own_root() {
        let (root, trace) = orphan_ancestor(&r("5/2"), p(2, 3)).unwrap();
        assert_eq!(root, r("5/2"));
        assert!(trace.steps.is_empty());
        assert_eq!(trace.lines(), vec!["5/2 = [2,2] (orphan)"]);
    }

    #[test]
    fn classical_chain_of_four_thirds() {
        let (root, trace) = orphan_ancestor(&r("4/3"), p(1, 1)).unwrap();
        assert_eq!(root, r("1"));
        let values: Vec<Rational> = trace.steps.iter().map(|s| s.value.clone()).collect();
        assert_eq!(values, vec![r("1/3"), r("1/2"), r("1")]);
    }

    #[test]
    fn left_step_can_collapse_to_one() {
        // 1/3 under u = 2 has parent 1, where [0,1] folds to [1]
        let (root, trace) = orphan_ancestor(&r("1/3"), p(2, 2)).unwrap();
        assert_eq!(root, r("1"));
        assert_eq!(trace.steps[0].cf, cf("[1]"));
    }

    #[test]
    fn descendant_examples() {
        let q = p(2, 3);
        assert!(is_descendant(&r("2147/620"), &r("5/2"), q).unwrap());
        assert!(is_descendant(&r("2147/620"), &r("11/24"), q).unwrap());
        assert!(!is_descendant(&r("5/32"), &r("11/2"), q).unwrap());
        assert!(is_descendant(&r("5/2"), &r("5/2"), q).unwrap());
        assert!(!is_strict_descendant(&r("5/2"), &r("5/2"), q).unwrap());
    }

    #[test]
    fn descendants_of_one() {
        let c = p(1, 1);
        for s in ["1/2", "2", "1/3", "3/2", "2/3", "4/3", "5/2", "2/5"] {
            assert!(is_descendant(&r(s), &Rational::one(), c).unwrap(), "{s}");
        }
        assert_eq!(depth_of(&r("2/5"), &Rational::one(), c).unwrap(), big(3));
        assert_eq!(depth_of(&r("4"), &Rational::one(), c).unwrap(), big(3));
        // (2,2): 1/3 = L(1) but 1/2 is not reachable
        let q = p(2, 2);
        assert!(is_descendant(&r("1/3"), &Rational::one(), q).unwrap());
        assert!(!is_descendant(&r("1/2"), &Rational::one(), q).unwrap());
    }

    #[test]
    fn depth_examples() {
        let q = p(2, 3);
        assert_eq!(depth_of(&r("2147/620"), &r("5/2"), q).unwrap(), big(7));
        assert_eq!(depth_of(&r("5/2"), &r("5/2"), q).unwrap(), big(0));
        assert!(matches!(
            depth_of(&r("5/32"), &r("11/2"), q),
            Err(Error::NotDescendant { .. })
        ));
    }

    #[test]
    fn raw_exponent_vectors() {
        let q = p(2, 3);
        let e = exponent_vector_raw(&cf("[3,2,6,4,5,2]"), &cf("[2,2]"), q).unwrap();
        assert_eq!(e.to_string(), "[1,1,2,2,1,0]");
        assert_eq!(e.total(), big(7));
        let e = exponent_vector_raw(&cf("[2,2]"), &cf("[2,2]"), q).unwrap();
        assert_eq!(e.to_string(), "[0,0]");
        let e = exponent_vector_raw(&cf("[0,4,2,2]"), &cf("[2,2]"), q).unwrap();
        assert_eq!(e.to_string(), "[0,2,0,0]");
        assert!(exponent_vector_raw(&cf("[0,3,2,2]"), &cf("[2,2]"), q).is_err());
        assert!(exponent_vector_raw(&cf("[2]"), &cf("[2,2]"), q).is_err());
    }

    #[test]
    fn path_examples() {
        let q = p(2, 3);
        let (word, exps) = path_between(&r("2147/620"), &r("5/2"), q).unwrap();
        assert_eq!(word.operator_string("L_u", "R_v"), "R_v L_u R_v^2 L_u^2 R_v");
        assert_eq!(exps.to_string(), "[1,1,2,2,1,0]");
        assert_eq!(
            word_to_matrix(&word, q),
            Mat2::new(187u32, 606u32, 54u32, 175u32).unwrap()
        );

        let (word, exps) = path_between(&r("5/2"), &r("5/2"), q).unwrap();
        assert!(word.is_empty());
        assert!(exps.entries().iter().all(Zero::is_zero));

        let (word, _) = path_between(&r("11/24"), &r("5/2"), q).unwrap();
        assert_eq!(word.operator_string("L_u", "R_v"), "L_u R_v");
        assert_eq!(word_to_matrix(&word, q).apply(&r("5/2")), r("11/24"));

        let (word, _) = path_between(&r("5/22"), &r("5/2"), q).unwrap();
        assert_eq!(word.to_string(), "LL");
    }
}
