//! The `(u, v)` forest: orphans, the partition of the positive rationals into
//! orphan-rooted trees, and the containment and intersection relations
//! between trees with different parameters.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::ancestry::{align, depth_of, is_descendant, is_orphan, orphan_ancestor};
use crate::arith::UVParams;
use crate::contfrac::ContinuedFraction;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tree::{parent, Tree};

/// Largest box side accepted by [`verify_partition`].
pub const MAX_BOUND: u64 = 1000;

/// Reduced `a/b` with `1 <= a, b <= bound`.
pub fn reduced_fractions(bound: u64) -> impl Iterator<Item = Rational> {
    (1..=bound).flat_map(move |a| {
        (1..=bound)
            .filter(move |b| a.gcd(b) == 1)
            .map(move |b| Rational::new(a, b).expect("b >= 1"))
    })
}

/// Orphans `a/b` with `a, b <= bound`, ascending.
pub fn orphans_in_box(params: UVParams, bound: u64) -> Vec<Rational> {
    let mut out: Vec<Rational> = reduced_fractions(bound).filter(|w| is_orphan(w, params)).collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub orphan: Rational,
    pub depth: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub value: Rational,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestReport {
    pub u: u64,
    pub v: u64,
    pub bound: u64,
    pub orphan_count: usize,
    pub assignments: BTreeMap<Rational, Placement>,
    pub violations: Vec<Violation>,
}

impl ForestReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Places every reduced fraction of the box in its orphan's tree and cross
/// checks the placement:
///
/// * the expansion-driven ancestor chain ends at an orphan;
/// * plain parent iteration reaches the same orphan in the same number of steps;
/// * the descendant conditions accept the pair and the depth formula agrees;
/// * no other orphan of the box claims the fraction.
///
/// An orphan root never has a larger numerator or denominator than its
/// descendants, so every root lies in the box.
pub fn verify_partition(params: UVParams, bound: u64) -> Result<ForestReport> {
    if bound > MAX_BOUND {
        return Err(Error::BoundLimit {
            requested: bound,
            limit: MAX_BOUND,
        });
    }
    let orphans = orphans_in_box(params, bound);
    let orphan_cfs: Vec<ContinuedFraction> = orphans.iter().map(ContinuedFraction::of).collect::<Result<_>>()?;
    let fractions: Vec<Rational> = reduced_fractions(bound).collect();

    let results: Vec<std::result::Result<(Rational, Placement), Violation>> = fractions
        .into_par_iter()
        .map(|w| {
            place(&w, params, &orphans, &orphan_cfs)
                .map(|p| (w.clone(), p))
                .map_err(|reason| Violation { value: w, reason })
        })
        .collect();

    let mut assignments = BTreeMap::new();
    let mut violations = Vec::new();
    for r in results {
        match r {
            Ok((w, p)) => {
                assignments.insert(w, p);
            }
            Err(v) => violations.push(v),
        }
    }
    Ok(ForestReport {
        u: params.u(),
        v: params.v(),
        bound,
        orphan_count: orphans.len(),
        assignments,
        violations,
    })
}

fn place(
    w: &Rational,
    params: UVParams,
    orphans: &[Rational],
    orphan_cfs: &[ContinuedFraction],
) -> std::result::Result<Placement, String> {
    let err = |e: Error| e.to_string();
    let (root, trace) = orphan_ancestor(w, params).map_err(err)?;
    if !is_orphan(&root, params) {
        return Err(format!("ancestor chain ended at non-orphan {root}"));
    }

    let mut cur = w.clone();
    let mut steps = 0usize;
    while let Some(p) = parent(&cur, params).parent().cloned() {
        cur = p;
        steps += 1;
    }
    if cur != root || steps != trace.depth() {
        return Err(format!(
            "parent iteration reached {cur} in {steps} steps, expansion chain reached {root} in {}",
            trace.depth()
        ));
    }

    if !is_descendant(w, &root, params).map_err(err)? {
        return Err(format!("descendant conditions reject root {root}"));
    }
    let depth = depth_of(w, &root, params).map_err(err)?;
    if depth != BigUint::from(steps) {
        return Err(format!("depth formula gives {depth}, chain has {steps} steps"));
    }

    let cf = ContinuedFraction::of(w).map_err(err)?;
    let claims: Vec<&Rational> = orphans
        .iter()
        .zip(orphan_cfs)
        .filter(|(_, q)| align(&cf, q, params).is_some())
        .map(|(o, _)| o)
        .collect();
    if claims.len() != 1 || claims[0] != &root {
        let list: Vec<String> = claims.iter().map(ToString::to_string).collect();
        return Err(format!(
            "claimed by orphans [{}], expected only {root}",
            list.join(", ")
        ));
    }

    Ok(Placement {
        orphan: root,
        depth: steps as u64,
    })
}

/// Vertex sets of the trees rooted at `roots`, down to `depth`. Returns the
/// first vertex shared by two trees, with both roots.
pub fn first_shared_vertex(
    roots: &[Rational],
    params: UVParams,
    depth: u64,
) -> Result<Option<(Rational, Rational, Rational)>> {
    let mut owner: HashMap<Rational, Rational> = HashMap::new();
    for root in roots {
        let tree = Tree::new(root.clone(), params)?;
        tree.check_row(depth)?;
        for row in tree.rows().take(depth as usize + 1) {
            for w in row {
                if let Some(prev) = owner.insert(w.clone(), root.clone()) {
                    if &prev != root {
                        return Ok(Some((w, prev, root.clone())));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn vertices_to_depth(tree: &Tree, depth: u64) -> Result<Vec<Rational>> {
    tree.check_row(depth)?;
    Ok(tree.rows().take(depth as usize + 1).flatten().collect())
}

/// Outcome of comparing one tree's vertices against another tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetReport {
    /// Every enumerated vertex of the first tree lies in the second.
    pub enumerated: bool,
    /// `z` lies in the second tree, `u' | u` and `v' | v`.
    pub criterion: bool,
    pub vertices_checked: usize,
}

impl SubsetReport {
    pub fn agrees(&self) -> bool {
        self.enumerated == self.criterion
    }
}

/// Whether the vertices of `T^(u,v)(z)` down to `depth` all belong to
/// `T^(u',v')(z')`, next to the divisibility criterion that predicts it.
/// The two agree once `depth >= 1`.
pub fn subtree_subset_check(
    z: &Rational,
    inner: UVParams,
    z_outer: &Rational,
    outer: UVParams,
    depth: u64,
) -> Result<SubsetReport> {
    let tree = Tree::new(z.clone(), inner)?;
    let vertices = vertices_to_depth(&tree, depth)?;
    let mut enumerated = true;
    for w in &vertices {
        if !is_descendant(w, z_outer, outer)? {
            enumerated = false;
            break;
        }
    }
    let criterion =
        is_descendant(z, z_outer, outer)? && inner.u().is_multiple_of(outer.u()) && inner.v().is_multiple_of(outer.v());
    Ok(SubsetReport {
        enumerated,
        criterion,
        vertices_checked: vertices.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub lcm_u: u64,
    pub lcm_v: u64,
    /// Every vertex of the lcm tree down to `depth` is in every factor tree.
    pub forward: bool,
    /// Every candidate lying in all factor trees is in the lcm tree.
    pub converse: bool,
    pub candidates_checked: usize,
}

impl IntersectionReport {
    pub fn holds(&self) -> bool {
        self.forward && self.converse
    }
}

/// Compares `T^(lcm U, lcm V)(z)` with the intersection of the trees
/// `T^(u',v')(z)` over `U x V`, on vertices down to `depth`.
///
/// Candidates for the converse are the vertices of the factor tree with the
/// largest parameters, which is the sparsest one; membership in every other
/// tree is decided by the descendant conditions, so no other tree has to be
/// enumerated.
pub fn intersection_check(us: &[u64], vs: &[u64], z: &Rational, depth: u64) -> Result<IntersectionReport> {
    if us.is_empty() || vs.is_empty() || us.contains(&0) || vs.contains(&0) {
        return Err(Error::InvalidParams {
            u: us.iter().copied().min().unwrap_or(0),
            v: vs.iter().copied().min().unwrap_or(0),
        });
    }
    let lcm_u = us.iter().fold(1u64, |acc, &x| acc.lcm(&x));
    let lcm_v = vs.iter().fold(1u64, |acc, &x| acc.lcm(&x));
    let lcm_params = UVParams::new(lcm_u, lcm_v)?;
    let factors: Vec<UVParams> = us
        .iter()
        .flat_map(|&u| vs.iter().map(move |&v| UVParams::new(u, v)))
        .collect::<Result<_>>()?;
    let in_all = |w: &Rational| -> Result<bool> {
        for f in &factors {
            if !is_descendant(w, z, *f)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let mut forward = true;
    for w in vertices_to_depth(&Tree::new(z.clone(), lcm_params)?, depth)? {
        if !in_all(&w)? {
            forward = false;
            break;
        }
    }

    let sparsest = UVParams::new(*us.iter().max().unwrap(), *vs.iter().max().unwrap())?;
    let candidates = vertices_to_depth(&Tree::new(z.clone(), sparsest)?, depth)?;
    let mut converse = true;
    for w in &candidates {
        if in_all(w)? && !is_descendant(w, z, lcm_params)? {
            converse = false;
            break;
        }
    }
    Ok(IntersectionReport {
        lcm_u,
        lcm_v,
        forward,
        converse,
        candidates_checked: candidates.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(u: u64, v: u64) -> UVParams {
        UVParams::new(u, v).unwrap()
    }

    #[test]
    fn orphan_box_examples() {
        assert_eq!(orphans_in_box(p(1, 1), 10), vec![r("1")]);
        assert_eq!(orphans_in_box(p(2, 3), 2), vec![r("1/2"), r("1"), r("2")]);
        let small = orphans_in_box(p(2, 3), 5).len();
        let large = orphans_in_box(p(2, 3), 20).len();
        assert!(large > small);
    }

    #[test]
    fn partition_small_boxes() {
        let report = verify_partition(p(1, 1), 20).unwrap();
        assert!(report.is_clean(), "{:?}", report.violations);
        assert!(report.assignments.values().all(|pl| pl.orphan == r("1")));
        let report = verify_partition(p(2, 3), 20).unwrap();
        assert!(report.is_clean(), "{:?}", report.violations);
        assert_eq!(report.assignments[&r("5/12")].orphan, r("5/2"));
        assert!(!report.assignments.contains_key(&r("2147/620")));
        assert!(verify_partition(p(3, 2), 20).unwrap().is_clean());
        assert!(verify_partition(p(1, 1), MAX_BOUND + 1).is_err());
    }

    #[test]
    fn distinct_orphans_do_not_share_vertices() {
        let roots = orphans_in_box(p(2, 3), 5);
        assert_eq!(first_shared_vertex(&roots, p(2, 3), 4).unwrap(), None);
        // the same root twice is not a collision
        assert_eq!(first_shared_vertex(&[r("1"), r("1")], p(1, 1), 3).unwrap(), None);
        // 2 lies in T(1), so the trees overlap
        assert!(first_shared_vertex(&[r("1"), r("2")], p(1, 1), 2).unwrap().is_some());
    }

    #[test]
    fn subset_examples() {
        let z = r("5/7");
        let rep = subtree_subset_check(&z, p(2, 3), &z, p(1, 1), 5).unwrap();
        assert!(rep.enumerated && rep.criterion);
        let rep = subtree_subset_check(&r("1"), p(2, 2), &r("1"), p(2, 3), 3).unwrap();
        assert!(!rep.enumerated && !rep.criterion);
        let rep = subtree_subset_check(&z, p(2, 3), &z, p(2, 3), 4).unwrap();
        assert!(rep.enumerated && rep.criterion);
    }

    #[test]
    fn intersection_examples() {
        assert!(intersection_check(&[1], &[1], &r("1"), 3).unwrap().holds());
        let rep = intersection_check(&[2, 3], &[1], &r("1"), 3).unwrap();
        assert_eq!((rep.lcm_u, rep.lcm_v), (6, 1));
        assert!(rep.holds());
        assert!(intersection_check(&[2], &[3], &r("5/2"), 3).unwrap().holds());
        assert!(intersection_check(&[], &[1], &r("1"), 3).is_err());
    }
}
