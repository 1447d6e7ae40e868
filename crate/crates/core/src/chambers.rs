//! Weight space geometry: the cone of weights C(Q), walls, the chamber
//! system cut out by the spanning-tree cones, and chamber equality.

use std::collections::BTreeSet;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::linalg::{dot, int_vec, primitive, sign_normalize, IntVec};
use crate::geometry::Cone;
use crate::quiver::{ArrowSubset, Dsu, ToricQuiver, Weight};
use crate::stability::{all_verdicts, stable_trees};

pub const DEFAULT_WALL_VERTEX_CAP: usize = 20;
pub const DEFAULT_TREE_CAP: usize = 10_000;

/// Arrows `a` with no directed path from the tail of `a` to its head once
/// `a` itself is removed. Parallel copies of `a` do not count as such a
/// path, since they have the same column; otherwise a doubled arrow would
/// drop out of C(Q) altogether.
pub fn primitive_arrows(q: &ToricQuiver) -> Result<ArrowSubset> {
    q.require_connected()?;
    let n = q.vertex_count();
    let keep = (0..q.arrow_count())
        .filter(|&a| {
            let this = q.arrow(a);
            let target = this.head;
            let mut seen = vec![false; n];
            let mut stack = vec![q.arrow(a).tail];
            seen[stack[0]] = true;
            while let Some(u) = stack.pop() {
                for b in q.arrows() {
                    if *b != this && b.tail == u && !seen[b.head] {
                        seen[b.head] = true;
                        stack.push(b.head);
                    }
                }
            }
            !seen[target]
        })
        .collect();
    Ok(ArrowSubset::new(keep))
}

fn columns_cone(q: &ToricQuiver, arrows: &[usize]) -> Result<Cone> {
    let rays: Vec<IntVec> = arrows.iter().map(|&j| int_vec(&q.incidence_column(j))).collect();
    Cone::from_rays(q.vertex_count(), &rays)
}

/// C(Q): the cone spanned by the incidence columns of the primitive arrows.
pub fn cone_of_weights(q: &ToricQuiver) -> Result<Cone> {
    let prim = primitive_arrows(q)?;
    columns_cone(q, prim.indices())
}

/// Cone spanned by all incidence columns; equal to [`cone_of_weights`].
pub fn cone_of_all_columns(q: &ToricQuiver) -> Result<Cone> {
    q.require_connected()?;
    columns_cone(q, &(0..q.arrow_count()).collect::<Vec<_>>())
}

/// The cone `C_T` spanned by the incidence columns of a spanning tree.
pub fn tree_chamber(tree: &ArrowSubset, q: &ToricQuiver) -> Result<Cone> {
    if !q.is_spanning_tree(tree) {
        return Err(Error::NotSpanningTree(tree.indices().to_vec()));
    }
    columns_cone(q, tree.indices())
}

/// The hyperplane `θ(Q0+) = 0` separating a bipartition of the vertices
/// into two connected pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    #[serde(rename = "qplus")]
    pub q_plus: Vec<usize>,
    /// Arrows from `Q0+` to `Q0-`, and from `Q0-` to `Q0+`.
    #[serde(rename = "type")]
    pub wall_type: (usize, usize),
}

impl Wall {
    pub fn is_outer(&self) -> bool {
        self.wall_type.0 == 0 || self.wall_type.1 == 0
    }

    /// Indicator vector of `Q0+`.
    pub fn normal(&self, vertex_count: usize) -> Vec<i64> {
        let mut v = vec![0; vertex_count];
        for &i in &self.q_plus {
            v[i] = 1;
        }
        v
    }
}

fn induced_connected(q: &ToricQuiver, mask: u64) -> bool {
    let mut dsu = Dsu::new(q.vertex_count());
    let mut components = mask.count_ones();
    for a in q.arrows() {
        if mask >> a.tail & 1 == 1 && mask >> a.head & 1 == 1 && dsu.union(a.tail, a.head) {
            components -= 1;
        }
    }
    components == 1
}

/// All bipartitions with both induced subquivers connected. `q_plus` is the
/// side without vertex 0; walls are sorted by size of `q_plus`, then
/// lexicographically.
pub fn potential_walls(q: &ToricQuiver) -> Result<Vec<Wall>> {
    potential_walls_capped(q, DEFAULT_WALL_VERTEX_CAP)
}

pub fn potential_walls_capped(q: &ToricQuiver, cap: usize) -> Result<Vec<Wall>> {
    let n = q.vertex_count();
    if n > cap || n > 63 {
        return Err(Error::TooManyVertices {
            count: n,
            cap: cap.min(63),
        });
    }
    let full = (1u64 << n) - 1;
    let mut walls = Vec::new();
    for plus in (1..=full).filter(|m| m & 1 == 0) {
        let minus = full & !plus;
        if !induced_connected(q, plus) || !induced_connected(q, minus) {
            continue;
        }
        let mut t = (0, 0);
        for a in q.arrows() {
            match (plus >> a.tail & 1 == 1, plus >> a.head & 1 == 1) {
                (true, false) => t.0 += 1,
                (false, true) => t.1 += 1,
                _ => {}
            }
        }
        walls.push(Wall {
            q_plus: (0..n).filter(|&i| plus >> i & 1 == 1).collect(),
            wall_type: t,
        });
    }
    walls.sort_by(|a, b| (a.q_plus.len(), &a.q_plus).cmp(&(b.q_plus.len(), &b.q_plus)));
    Ok(walls)
}

/// Chambers of C(Q): the maximal regions on which the set of spanning-tree
/// cones containing a weight is constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberSystem {
    pub ambient: Cone,
    pub trees: Vec<ArrowSubset>,
    pub chambers: Vec<Cone>,
    /// For each chamber, the indices into `trees` of the cones containing it.
    pub tree_sets: Vec<Vec<usize>>,
}

impl ChamberSystem {
    /// Index of the chamber whose interior contains `theta`, if any.
    pub fn locate(&self, theta: &Weight) -> Option<usize> {
        let p = int_vec(&theta.0);
        self.chambers.iter().position(|c| c.contains(&p, true))
    }
}

pub fn cone_system(q: &ToricQuiver) -> Result<ChamberSystem> {
    cone_system_capped(q, DEFAULT_TREE_CAP)
}

/// Cuts C(Q) by every facet hyperplane of every `C_T`, then merges the cells
/// by the set of tree cones containing them. Each merged region is the
/// intersection of its tree cones.
pub fn cone_system_capped(q: &ToricQuiver, tree_cap: usize) -> Result<ChamberSystem> {
    q.require_connected()?;
    let ambient = cone_of_weights(q)?;
    let trees = q.spanning_trees_capped(tree_cap)?;
    let tree_cones = trees.iter().map(|t| tree_chamber(t, q)).collect::<Result<Vec<_>>>()?;

    let mut hyperplanes: Vec<IntVec> = tree_cones
        .iter()
        .flat_map(|c| c.facets().iter().cloned())
        .map(sign_normalize)
        .collect();
    hyperplanes.sort();
    hyperplanes.dedup();

    let full_dim = ambient.dim();
    let mut cells = vec![ambient.clone()];
    for h in &hyperplanes {
        let neg: IntVec = h.iter().map(|x| -x).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            let values: Vec<_> = cell.rays().iter().map(|r| dot(h, r)).collect();
            let cuts = values.iter().any(Signed::is_positive) && values.iter().any(Signed::is_negative);
            if !cuts {
                next.push(cell);
                continue;
            }
            for side in [h, &neg] {
                let piece = cell.with_halfspace(side)?;
                if piece.dim() == full_dim {
                    next.push(piece);
                }
            }
        }
        cells = next;
    }

    let mut groups: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cell in &cells {
        let p = cell.interior_ray();
        let set: Vec<usize> = (0..trees.len()).filter(|&i| tree_cones[i].contains(&p, true)).collect();
        groups.insert(set);
    }

    let mut chambers: Vec<(Cone, Vec<usize>)> = Vec::new();
    for set in groups {
        let mut c = ambient.clone();
        for &i in &set {
            c = c.intersect(&tree_cones[i])?;
        }
        chambers.push((c, set));
    }
    chambers.sort_by(|a, b| a.0.rays().cmp(b.0.rays()));
    let (chambers, tree_sets) = chambers.into_iter().unzip();
    Ok(ChamberSystem {
        ambient,
        trees,
        chambers,
        tree_sets,
    })
}

/// One weight strictly inside each chamber: the primitive sum of its rays.
pub fn reference_thetas(cs: &ChamberSystem) -> Vec<Weight> {
    cs.chambers
        .iter()
        .map(|c| {
            let r = primitive(c.interior_ray());
            Weight(
                r.iter()
                    .map(|x| i64::try_from(x).expect("reference weight fits in i64"))
                    .collect(),
            )
        })
        .collect()
}

/// Whether two weights define the same semistable and stable subquivers.
/// Undecided when either weight has no stable spanning tree.
pub fn same_chamber(theta1: &Weight, theta2: &Weight, q: &ToricQuiver) -> Result<bool> {
    q.check_weight(theta1)?;
    q.check_weight(theta2)?;
    if stable_trees(theta1, q)?.is_empty() || stable_trees(theta2, q)?.is_empty() {
        return Err(Error::Indeterminate);
    }
    Ok(all_verdicts(q, theta1)? == all_verdicts(q, theta2)?)
}
