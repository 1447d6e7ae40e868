//! The flow polytope Δ(θ) of nonnegative flows with a given weight, its
//! vertices, cycle bases of the circulation lattice and coordinates in them.

use std::collections::VecDeque;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::linalg::{rat, Rat, RatVec};
use crate::geometry::Polytope;
use crate::quiver::{ArrowSubset, Flow, ToricQuiver, Weight};

/// Lattice basis of the circulations of a quiver attached to a spanning
/// tree: one column per non-tree arrow, in increasing arrow order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleBasis {
    pub tree: ArrowSubset,
    pub non_tree: Vec<usize>,
    pub columns: Vec<Vec<i64>>,
}

impl CycleBasis {
    /// The basis as a `|Q1| x r` matrix, row by row.
    pub fn matrix(&self, arrow_count: usize) -> Vec<Vec<i64>> {
        (0..arrow_count)
            .map(|i| self.columns.iter().map(|c| c[i]).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }
}

/// Cycle basis for `tree`, or for the lexicographically smallest spanning
/// tree when none is given. The column of a non-tree arrow `a` is `-1` at
/// `a` plus the tree path from the tail of `a` to its head, with `+1` on
/// arrows traversed forward and `-1` on arrows traversed backward.
pub fn basis_for_flow_polytope(tree: Option<&ArrowSubset>, q: &ToricQuiver) -> Result<CycleBasis> {
    let tree = match tree {
        Some(t) => {
            t.validate(q.arrow_count())?;
            if !q.is_spanning_tree(t) {
                return Err(Error::NotSpanningTree(t.indices().to_vec()));
            }
            t.clone()
        }
        None => default_tree(q)?,
    };
    let non_tree: Vec<usize> = (0..q.arrow_count()).filter(|&j| !tree.contains(j)).collect();
    let columns = non_tree
        .iter()
        .map(|&a| {
            let mut col = vec![0i64; q.arrow_count()];
            col[a] = -1;
            let arrow = q.arrow(a);
            for (j, sign) in tree_path(q, &tree, arrow.tail, arrow.head) {
                col[j] += sign;
            }
            col
        })
        .collect();
    Ok(CycleBasis {
        tree,
        non_tree,
        columns,
    })
}

fn default_tree(q: &ToricQuiver) -> Result<ArrowSubset> {
    q.require_connected()?;
    let forest = q.greedy_forest(&(0..q.arrow_count()).collect::<Vec<_>>());
    Ok(ArrowSubset::new(forest))
}

/// Arrows on the tree path from `from` to `to`, each with `+1` when walked
/// from tail to head and `-1` otherwise.
fn tree_path(q: &ToricQuiver, tree: &ArrowSubset, from: usize, to: usize) -> Vec<(usize, i64)> {
    let n = q.vertex_count();
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    for &j in tree.indices() {
        let a = q.arrow(j);
        adj[a.tail].push((a.head, j, 1));
        adj[a.head].push((a.tail, j, -1));
    }
    let mut prev: Vec<Option<(usize, usize, i64)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &(v, j, s) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                prev[v] = Some((u, j, s));
                queue.push_back(v);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let (u, j, s) = prev[v].expect("spanning tree connects every vertex");
        path.push((j, s));
        v = u;
    }
    path.reverse();
    path
}

/// Vertices of Δ(θ) as flows: the regular tree-supported flows, deduplicated
/// and sorted. Empty when Δ(θ) is empty.
pub fn flow_polytope_vertices(theta: &Weight, q: &ToricQuiver) -> Result<Vec<Flow>> {
    q.check_weight(theta)?;
    q.require_connected()?;
    let mut out = Vec::new();
    for t in q.spanning_trees()? {
        let f = q.solve_on_forest(theta, t.indices()).expect("tree solve");
        if f.is_regular() {
            out.push(f);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Vertices of Δ(θ) in the coordinates of [`basis_for_flow_polytope`]. The
/// origin is the stored flow when it realises θ, and the smallest vertex
/// otherwise.
pub fn flow_polytope_in_tree_basis(
    theta: &Weight,
    q: &ToricQuiver,
    tree: Option<&ArrowSubset>,
) -> Result<Vec<Vec<i64>>> {
    let basis = basis_for_flow_polytope(tree, q)?;
    let vertices = flow_polytope_vertices(theta, q)?;
    if vertices.is_empty() {
        return Err(Error::WeightNotInCone);
    }
    let base = if q.weight() == theta {
        q.flow().clone()
    } else {
        vertices[0].clone()
    };
    Ok(vertices
        .iter()
        .map(|v| basis.non_tree.iter().map(|&a| base.0[a] - v.0[a]).collect())
        .collect())
}

/// Δ(θ) as a polytope in tree-basis coordinates.
pub fn flow_polytope(theta: &Weight, q: &ToricQuiver, tree: Option<&ArrowSubset>) -> Result<Polytope> {
    let points = flow_polytope_in_tree_basis(theta, q, tree)?;
    if points[0].is_empty() {
        return Err(Error::ZeroAmbientDim);
    }
    let pts: Vec<RatVec> = points.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect();
    Polytope::convex_hull(&pts)
}

/// Whether Δ(θ), moved so that its only interior lattice point is the
/// origin, is reflexive.
pub fn is_flow_polytope_reflexive(theta: &Weight, q: &ToricQuiver) -> Result<bool> {
    let p = flow_polytope(theta, q, None)?;
    let interior: Vec<_> = p
        .lattice_points()?
        .into_iter()
        .filter(|x| {
            let r: RatVec = x.iter().map(|c| Rat::from_integer(c.clone())).collect();
            p.contains(&r, true)
        })
        .collect();
    if interior.len() != 1 {
        return Err(Error::NoUniqueInteriorPoint(interior.len()));
    }
    let shift: RatVec = interior[0].iter().map(|c| -Rat::from_integer(c.clone())).collect();
    let moved = if shift.iter().all(Zero::is_zero) {
        p
    } else {
        p.translate(&shift)?
    };
    moved.is_reflexive()
}
