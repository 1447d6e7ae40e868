//! θ-stability of subquivers through successor-closed vertex sets, maximal
//! unstable / non-stable subquivers, tightness and tightening, and stable
//! spanning trees.
//!
//! A subquiver is identified by the arrow subset it keeps; its vertex set is
//! always the full vertex set of the parent. A vertex set `V` is closed for
//! the subquiver when no kept arrow leaves it. The subquiver is θ-stable
//! (semistable) when `θ(V) > 0` (`>= 0`) for every closed `V` other than the
//! empty set and the whole vertex set.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{Arrow, ArrowSubset, Flow, ToricQuiver, Weight};

/// Vertex counts up to this bound are handled with `u64` vertex masks.
pub const MAX_VERTICES: usize = 63;
/// Arrow subsets are tracked as `u64` masks.
pub const MAX_ARROWS: usize = 63;

/// A subquiver `Q^I` seen through its parent.
#[derive(Debug, Clone, Copy)]
pub struct Subquiver<'a> {
    pub quiver: &'a ToricQuiver,
    pub arrows: &'a ArrowSubset,
}

impl<'a> Subquiver<'a> {
    pub fn new(quiver: &'a ToricQuiver, arrows: &'a ArrowSubset) -> Result<Self> {
        arrows.validate(quiver.arrow_count())?;
        Ok(Self { quiver, arrows })
    }

    /// True iff no arrow of the subquiver has its tail in `vertices` and its
    /// head outside.
    pub fn is_closed_under_arrows(&self, vertices: &[usize]) -> Result<bool> {
        let n = self.quiver.vertex_count();
        let mut inside = vec![false; n];
        for &v in vertices {
            if v >= n {
                return Err(Error::IndexOutOfRange {
                    what: "vertex",
                    index: v,
                    limit: n,
                });
            }
            inside[v] = true;
        }
        Ok(self.arrows.indices().iter().all(|&j| {
            let a = self.quiver.arrow(j);
            !inside[a.tail] || inside[a.head]
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub semistable: bool,
    /// A closed proper non-empty vertex set with negative θ-mass (zero mass
    /// when the subquiver is semistable but not stable), present exactly
    /// when the subquiver is not stable.
    pub witness: Option<Vec<usize>>,
}

fn check_size(q: &ToricQuiver) -> Result<()> {
    if q.vertex_count() > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            count: q.vertex_count(),
            cap: MAX_VERTICES,
        });
    }
    if q.arrow_count() > MAX_ARROWS {
        return Err(Error::TooManyArrows {
            count: q.arrow_count(),
            cap: MAX_ARROWS,
        });
    }
    Ok(())
}

/// Reachability masks (each vertex reaches itself) for the arrows in `mask`.
fn reach(n: usize, arrows: &[Arrow], mask: u64, reverse: bool) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    for (j, a) in arrows.iter().enumerate() {
        if mask >> j & 1 == 1 {
            if reverse {
                adj[a.head] |= 1 << a.tail;
            } else {
                adj[a.tail] |= 1 << a.head;
            }
        }
    }
    (0..n)
        .map(|v| {
            let mut seen = 1u64 << v;
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let u = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= adj[u];
                }
                frontier = next & !seen;
                seen |= next;
            }
            seen
        })
        .collect()
}

/// Smallest closed, non-empty, proper vertex set of the subquiver with
/// arrow mask `mask` whose θ-mass is as low as possible: negative if any
/// closed set is negative, otherwise zero if any is zero. Ties go to fewer
/// vertices, then the smaller bitmask. Closed sets are enumerated directly:
/// including a vertex forces its descendants in, excluding it forces its
/// ancestors out.
fn min_closed_mass(q: &ToricQuiver, mask: u64, theta: &Weight) -> Option<(i64, u64)> {
    let n = q.vertex_count();
    if n < 2 {
        return None;
    }
    let desc = reach(n, q.arrows(), mask, false);
    let anc = reach(n, q.arrows(), mask, true);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let key = |m: i64, set: u64| (m.signum(), set.count_ones(), set);
    let mut best: Option<(i64, u64)> = None;
    let mut stack = vec![(0u64, 0u64)];
    while let Some((inc, exc)) = stack.pop() {
        let undecided = full & !(inc | exc);
        if undecided == 0 {
            if inc != 0 && inc != full {
                let m = theta.mass(inc);
                if best.is_none_or(|(bm, bs)| key(m, inc) < key(bm, bs)) {
                    best = Some((m, inc));
                }
            }
            continue;
        }
        let v = undecided.trailing_zeros() as usize;
        stack.push((inc, exc | anc[v]));
        stack.push((inc | desc[v], exc));
    }
    best
}

fn mask_to_vertices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub(crate) fn verdict_for_mask(q: &ToricQuiver, mask: u64, theta: &Weight) -> StabilityVerdict {
    match min_closed_mass(q, mask, theta) {
        Some((m, set)) if m <= 0 => StabilityVerdict {
            stable: false,
            semistable: m == 0,
            witness: Some(mask_to_vertices(set)),
        },
        _ => StabilityVerdict {
            stable: true,
            semistable: true,
            witness: None,
        },
    }
}

/// Stability verdict of the subquiver on `subset` for the weight `theta`.
pub fn stability(q: &ToricQuiver, subset: &ArrowSubset, theta: &Weight) -> Result<StabilityVerdict> {
    check_size(q)?;
    q.check_weight(theta)?;
    subset.validate(q.arrow_count())?;
    Ok(verdict_for_mask(q, subset.mask(), theta))
}

pub fn is_stable(q: &ToricQuiver, subset: &ArrowSubset, theta: &Weight) -> Result<bool> {
    Ok(stability(q, subset, theta)?.stable)
}

pub fn is_semistable(q: &ToricQuiver, subset: &ArrowSubset, theta: &Weight) -> Result<bool> {
    Ok(stability(q, subset, theta)?.semistable)
}

/// Maximal failing subquivers. `non_singletons` holds the maximal failing
/// arrow sets whose subquiver meets every vertex; `singletons` lists the
/// failing vertices (θ < 0, or θ <= 0 for non-stability) that none of them
/// meets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalSubquivers {
    #[serde(rename = "nonSingletons")]
    pub non_singletons: Vec<ArrowSubset>,
    pub singletons: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Failure {
    Unstable,
    NotStable,
}

impl Failure {
    fn fails(self, v: &StabilityVerdict) -> bool {
        match self {
            Failure::Unstable => !v.semistable,
            Failure::NotStable => !v.stable,
        }
    }
}

pub fn maximal_unstable_subquivers(q: &ToricQuiver, theta: &Weight) -> Result<MaximalSubquivers> {
    maximal_failing(q, theta, Failure::Unstable)
}

pub fn maximal_nonstable_subquivers(q: &ToricQuiver, theta: &Weight) -> Result<MaximalSubquivers> {
    maximal_failing(q, theta, Failure::NotStable)
}

/// Failing is inherited by subsets, so the passing sets form an up-set.
/// Walk down from the full arrow set one level at a time; a set is examined
/// only once all of its one-larger supersets are known to pass, and then it
/// is either maximal failing or passes itself.
fn maximal_failing(q: &ToricQuiver, theta: &Weight, failure: Failure) -> Result<MaximalSubquivers> {
    check_size(q)?;
    q.check_weight(theta)?;
    let m = q.arrow_count();
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let fails = |mask: u64| failure.fails(&verdict_for_mask(q, mask, theta));

    let mut maximal: Vec<u64> = Vec::new();
    if fails(full) {
        maximal.push(full);
    } else {
        let mut passing: HashSet<u64> = HashSet::from([full]);
        while !passing.is_empty() {
            let mut candidates: Vec<u64> = passing
                .iter()
                .flat_map(|&s| mask_bits(s).map(move |i| s & !(1 << i)))
                .collect::<HashSet<_>>()
                .into_iter()
                .filter(|&c| mask_bits(full & !c).all(|j| passing.contains(&(c | 1 << j))))
                .collect();
            candidates.sort_unstable();
            let mut next = HashSet::new();
            for c in candidates {
                if fails(c) {
                    maximal.push(c);
                } else {
                    next.insert(c);
                }
            }
            passing = next;
        }
    }

    // Only subquivers meeting every vertex are reported as arrow sets; the
    // remaining failing vertices show up as singletons.
    let mut touched_by_reported = 0u64;
    let mut non_singletons: Vec<ArrowSubset> = Vec::new();
    for &s in &maximal {
        let touched = touched_vertices(q, s);
        if touched.count_ones() as usize == q.vertex_count() {
            touched_by_reported |= touched;
            non_singletons.push(ArrowSubset::from_mask(s));
        }
    }
    non_singletons.sort();
    let singletons = (0..q.vertex_count())
        .filter(|&v| touched_by_reported >> v & 1 == 0)
        .filter(|&v| match failure {
            Failure::Unstable => theta.0[v] < 0,
            Failure::NotStable => theta.0[v] <= 0,
        })
        .collect();
    Ok(MaximalSubquivers {
        non_singletons,
        singletons,
    })
}

fn touched_vertices(q: &ToricQuiver, mask: u64) -> u64 {
    mask_bits(mask).fold(0, |acc, j| {
        let a = q.arrow(j);
        acc | 1 << a.tail | 1 << a.head
    })
}

fn mask_bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Every single-arrow deletion leaves a θ-stable subquiver. `theta`
/// defaults to the quiver's own weight.
pub fn is_tight(q: &ToricQuiver, theta: Option<&Weight>) -> Result<bool> {
    Ok(first_loose_arrow(q, theta.unwrap_or(q.weight()))?.is_none())
}

/// Smallest arrow whose deletion is not θ-stable.
fn first_loose_arrow(q: &ToricQuiver, theta: &Weight) -> Result<Option<usize>> {
    check_size(q)?;
    q.check_weight(theta)?;
    let full = if q.arrow_count() == 64 {
        u64::MAX
    } else {
        (1u64 << q.arrow_count()) - 1
    };
    Ok((0..q.arrow_count()).find(|&j| !verdict_for_mask(q, full & !(1 << j), theta).stable))
}

/// Result of [`make_tight`]: the contracted quiver, whose flow is
/// `inc_inverse(weight)` and whose weight is the contracted weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tightened {
    pub quiver: ToricQuiver,
    pub weight: Weight,
    /// Arrow indices of the input that were contracted, in order of
    /// contraction (indices refer to the quiver current at that step).
    pub contracted: Vec<usize>,
}

/// Contracts loose arrows until the weight is tight. The flow polytope is
/// unchanged up to lattice isomorphism at every step.
pub fn make_tight(theta: &Weight, q: &ToricQuiver) -> Result<Tightened> {
    check_size(q)?;
    q.check_weight(theta)?;
    q.require_connected()?;
    if !has_regular_tree_flow(q, theta)? {
        return Err(Error::WeightNotInCone);
    }
    let mut quiver = q.clone();
    let mut weight = theta.clone();
    let mut contracted = Vec::new();
    let limit = q.arrow_count();
    while let Some(j) = first_loose_arrow(&quiver, &weight)? {
        if contracted.len() == limit {
            return Err(Error::NonConvergence(limit));
        }
        let (next, next_weight) = contract(&quiver, &weight, j);
        contracted.push(j);
        quiver = next;
        weight = next_weight;
    }
    if !contracted.is_empty() {
        let flow = quiver.inc_inverse(&weight, None)?;
        quiver = quiver.with_flow(flow)?;
    }
    Ok(Tightened {
        quiver,
        weight,
        contracted,
    })
}

/// Identifies the endpoints of arrow `j` into the smaller label, deletes the
/// arrow and any loops this creates, and closes the vertex gap.
fn contract(q: &ToricQuiver, theta: &Weight, j: usize) -> (ToricQuiver, Weight) {
    let a = q.arrow(j);
    let keep = a.tail.min(a.head);
    let gone = a.tail.max(a.head);
    let relabel = |v: usize| {
        let v = if v == gone { keep } else { v };
        if v > gone {
            v - 1
        } else {
            v
        }
    };
    let mut arrows = Vec::new();
    let mut flow = Vec::new();
    for (i, b) in q.arrows().iter().enumerate() {
        let (t, h) = (relabel(b.tail), relabel(b.head));
        if i == j || t == h {
            continue;
        }
        arrows.push(Arrow::new(t, h));
        flow.push(q.flow().0[i]);
    }
    let mut w: Vec<i64> = Vec::with_capacity(q.vertex_count() - 1);
    for v in 0..q.vertex_count() {
        if v == gone {
            continue;
        }
        w.push(if v == keep {
            theta.0[keep] + theta.0[gone]
        } else {
            theta.0[v]
        });
    }
    (
        ToricQuiver::from_parts(q.vertex_count() - 1, arrows, Flow(flow)),
        Weight(w),
    )
}

/// The unique flow supported on the spanning tree `tree` realising `theta`.
pub fn tree_flow(q: &ToricQuiver, theta: &Weight, tree: &ArrowSubset) -> Result<Flow> {
    q.check_weight(theta)?;
    if !q.is_spanning_tree(tree) {
        return Err(Error::NotSpanningTree(tree.indices().to_vec()));
    }
    Ok(q.solve_on_forest(theta, tree.indices())
        .expect("spanning tree solves every balanced weight"))
}

/// Regular tree-supported flows exist iff the flow polytope is non-empty.
pub(crate) fn has_regular_tree_flow(q: &ToricQuiver, theta: &Weight) -> Result<bool> {
    for t in q.spanning_trees()? {
        let f = q.solve_on_forest(theta, t.indices()).expect("tree solve");
        if f.is_regular() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Spanning trees whose supported flow is regular and whose subquiver is
/// θ-stable, in lexicographic order.
pub fn stable_trees(theta: &Weight, q: &ToricQuiver) -> Result<Vec<ArrowSubset>> {
    Ok(stable_trees_with_flows(theta, q)?.into_iter().map(|(t, _)| t).collect())
}

pub fn stable_trees_with_flows(theta: &Weight, q: &ToricQuiver) -> Result<Vec<(ArrowSubset, Flow)>> {
    check_size(q)?;
    q.check_weight(theta)?;
    let mut out = Vec::new();
    for t in q.spanning_trees()? {
        let f = q.solve_on_forest(theta, t.indices()).expect("tree solve");
        if f.is_regular() && verdict_for_mask(q, t.mask(), theta).stable {
            out.push((t, f));
        }
    }
    Ok(out)
}

/// Stability verdict of every arrow subset, keyed by mask. Used to compare
/// weights by the (semi)stable sets they induce.
pub(crate) fn all_verdicts(q: &ToricQuiver, theta: &Weight) -> Result<HashMap<u64, (bool, bool)>> {
    check_size(q)?;
    q.check_weight(theta)?;
    if q.arrow_count() > 24 {
        return Err(Error::TooManyArrows {
            count: q.arrow_count(),
            cap: 24,
        });
    }
    Ok((0..1u64 << q.arrow_count())
        .map(|m| {
            let v = verdict_for_mask(q, m, theta);
            (m, (v.semistable, v.stable))
        })
        .collect())
}
