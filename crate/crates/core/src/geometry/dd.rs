//! Incremental double description: turns a system `A x >= 0` into generators
//! (a lineality basis plus extreme rays) of the cone it defines.
//!
//! Constraints are inserted in the order given. While the current cone still
//! has lineality that the new constraint does not vanish on, the lineality is
//! tilted onto the hyperplane and the freed direction becomes a new ray.
//! Otherwise rays are split by sign and every adjacent positive/negative pair
//! contributes the ray on the hyperplane through both. Adjacency is the exact
//! algebraic test: the constraints tight at both rays must have rank
//! `dim - lineality - 2`.

use num_traits::{Signed, Zero};

use super::linalg::{dot, is_zero_vec, primitive, rank_of, Int, IntVec};

#[derive(Debug, Clone, Default)]
pub struct Generators {
    pub lineality: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

pub fn generators(dim: usize, constraints: &[IntVec]) -> Generators {
    let mut lineality: Vec<IntVec> = (0..dim)
        .map(|i| (0..dim).map(|j| Int::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<IntVec> = Vec::new();
    let mut processed: Vec<&IntVec> = Vec::new();

    for a in constraints.iter().filter(|a| !is_zero_vec(a)) {
        debug_assert_eq!(a.len(), dim);
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.remove(pos);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l = l.into_iter().map(|x| -x).collect();
                al = -al;
            }
            for other in lineality.iter_mut() {
                let ao = dot(a, other);
                if !ao.is_zero() {
                    *other = primitive(combine(&al, other, &ao, &l));
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, r);
                if !ar.is_zero() {
                    *r = primitive(combine(&al, r, &ar, &l));
                }
            }
            rays.push(primitive(l));
            processed.push(a);
            continue;
        }

        let values: Vec<Int> = rays.iter().map(|r| dot(a, r)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            processed.push(a);
            continue;
        }
        let pointed_dim = dim - lineality.len();
        let zero_sets: Vec<Vec<bool>> = rays
            .iter()
            .map(|r| processed.iter().map(|c| dot(c, r).is_zero()).collect())
            .collect();

        let mut next: Vec<IntVec> = Vec::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<&IntVec> = zero_sets[p]
                    .iter()
                    .zip(&zero_sets[n])
                    .enumerate()
                    .filter(|(_, (x, y))| **x && **y)
                    .map(|(i, _)| processed[i])
                    .collect();
                if pointed_dim < 2 || common.len() + 2 < pointed_dim {
                    continue;
                }
                if rank_of(dim, &common) != pointed_dim - 2 {
                    continue;
                }
                // (a.p) n - (a.n) p, both coefficients positive
                let r = combine(&values[p], &rays[n], &values[n], &rays[p]);
                next.push(primitive(r));
            }
        }
        let mut kept: Vec<IntVec> = rays
            .iter()
            .zip(&values)
            .filter(|(_, v)| !v.is_negative())
            .map(|(r, _)| r.clone())
            .collect();
        kept.extend(next);
        rays = kept;
        processed.push(a);
    }

    rays.sort();
    rays.dedup();
    Generators { lineality, rays }
}

/// `s * x - t * y`
fn combine(s: &Int, x: &IntVec, t: &Int, y: &IntVec) -> IntVec {
    x.iter().zip(y).map(|(xi, yi)| s * xi - t * yi).collect()
}
