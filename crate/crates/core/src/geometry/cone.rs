use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::dd;
use super::linalg::{
    canonical_span_basis, dot, dot_rat, orthogonal_complement, primitive, primitive_from_rat, project_onto_span,
    rank_of, to_rat_vec, Int, IntVec, Rat,
};
use crate::error::{Error, Result};

/// Polyhedral cone `{x : <a, x> >= 0 for every facet a, <e, x> = 0 for every
/// equation e}` = `cone(rays) + span(lineality)`, both descriptions kept.
///
/// Canonical form: lineality and equations are RREF-derived primitive bases;
/// rays are projected onto the orthogonal complement of the lineality space,
/// facet normals onto the linear span of the cone; all vectors primitive and
/// sorted. Structural equality is therefore geometric equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
}

impl Cone {
    pub fn from_rays(ambient_dim: usize, rays: &[IntVec]) -> Result<Self> {
        Self::from_generators(ambient_dim, rays, &[])
    }

    pub fn from_generators(ambient_dim: usize, rays: &[IntVec], lineality: &[IntVec]) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::ZeroAmbientDim);
        }
        check_dims(ambient_dim, rays)?;
        check_dims(ambient_dim, lineality)?;

        let mut dual_constraints: Vec<IntVec> = rays.to_vec();
        for l in lineality {
            dual_constraints.push(l.clone());
            dual_constraints.push(l.iter().map(|x| -x).collect());
        }
        let dual = dd::generators(ambient_dim, &dual_constraints);
        let equations = canonical_span_basis(ambient_dim, &dual.lineality);
        let span = orthogonal_complement(ambient_dim, &equations);
        let mut facets: Vec<IntVec> = dual
            .rays
            .iter()
            .map(|f| primitive_from_rat(&project_onto_span(&to_rat_vec(f), &span)))
            .filter(|f| !f.iter().all(Zero::is_zero))
            .collect();
        facets.sort();
        facets.dedup();

        // Re-derive the primal generators so redundant input rays disappear.
        Ok(Self::from_canonical_h(ambient_dim, facets, equations))
    }

    /// Cone `{x : <a, x> >= 0, <e, x> = 0}`. Redundant inequalities are
    /// removed in the canonical form.
    pub fn from_inequalities(ambient_dim: usize, inequalities: &[IntVec], equations: &[IntVec]) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::ZeroAmbientDim);
        }
        check_dims(ambient_dim, inequalities)?;
        check_dims(ambient_dim, equations)?;
        let mut cons: Vec<IntVec> = inequalities.to_vec();
        for e in equations {
            cons.push(e.clone());
            cons.push(e.iter().map(|x| -x).collect());
        }
        let g = dd::generators(ambient_dim, &cons);
        Self::from_generators(ambient_dim, &g.rays, &g.lineality)
    }

    fn from_canonical_h(ambient_dim: usize, facets: Vec<IntVec>, equations: Vec<IntVec>) -> Self {
        let mut cons = facets.clone();
        for e in &equations {
            cons.push(e.clone());
            cons.push(e.iter().map(|x| -x).collect());
        }
        let g = dd::generators(ambient_dim, &cons);
        let lineality = canonical_span_basis(ambient_dim, &g.lineality);
        let complement = orthogonal_complement(ambient_dim, &lineality);
        let mut rays: Vec<IntVec> = g
            .rays
            .iter()
            .map(|r| {
                if lineality.is_empty() {
                    primitive(r.clone())
                } else {
                    primitive_from_rat(&project_onto_span(&to_rat_vec(r), &complement))
                }
            })
            .filter(|r| !r.iter().all(Zero::is_zero))
            .collect();
        rays.sort();
        rays.dedup();
        Self {
            ambient_dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    /// Basis of the orthogonal complement of the linear span.
    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Membership; with `strictly` the point must lie in the relative
    /// interior (inside the linear span, every facet inequality strict).
    pub fn contains(&self, point: &[Int], strictly: bool) -> bool {
        assert_eq!(point.len(), self.ambient_dim, "point dimension");
        if self.equations.iter().any(|e| !dot(e, point).is_zero()) {
            return false;
        }
        self.facets.iter().all(|a| {
            let v = dot(a, point);
            if strictly {
                v.is_positive()
            } else {
                !v.is_negative()
            }
        })
    }

    pub fn contains_rat(&self, point: &[Rat], strictly: bool) -> bool {
        assert_eq!(point.len(), self.ambient_dim, "point dimension");
        if self.equations.iter().any(|e| !dot_rat(e, point).is_zero()) {
            return false;
        }
        self.facets.iter().all(|a| {
            let v = dot_rat(a, point);
            if strictly {
                v.is_positive()
            } else {
                !v.is_negative()
            }
        })
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                actual: other.ambient_dim,
            });
        }
        let ineqs: Vec<IntVec> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<IntVec> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_inequalities(self.ambient_dim, &ineqs, &eqs)
    }

    /// Intersection with the half-space `<h, x> >= 0`.
    pub fn with_halfspace(&self, h: &IntVec) -> Result<Cone> {
        let mut ineqs = self.facets.clone();
        ineqs.push(h.clone());
        Cone::from_inequalities(self.ambient_dim, &ineqs, &self.equations)
    }

    /// Sum of the ray generators, made primitive. For a pointed cone this
    /// lies in the relative interior.
    pub fn interior_ray(&self) -> IntVec {
        let mut s = vec![Int::zero(); self.ambient_dim];
        for r in &self.rays {
            for (x, y) in s.iter_mut().zip(r) {
                *x += y;
            }
        }
        primitive(s)
    }

    pub fn generator_rank(&self) -> usize {
        let all: Vec<&IntVec> = self.rays.iter().chain(&self.lineality).collect();
        rank_of(self.ambient_dim, &all)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambientDim": self.ambient_dim,
            "rays": self.rays.iter().map(|v| int_json(v)).collect::<Vec<_>>(),
            "facets": self.facets.iter().map(|v| int_json(v)).collect::<Vec<_>>(),
            "lineality": self.lineality.iter().map(|v| int_json(v)).collect::<Vec<_>>(),
            "equations": self.equations.iter().map(|v| int_json(v)).collect::<Vec<_>>(),
        })
    }
}

fn check_dims(dim: usize, vs: &[IntVec]) -> Result<()> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: dim,
            actual: v.len(),
        }),
        None => Ok(()),
    }
}

/// Integer vector as a JSON array of numbers; entries outside `i64` fall back
/// to decimal strings.
pub fn int_json(v: &[Int]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| match i64::try_from(x) {
                Ok(n) => json!(n),
                Err(_) => json!(x.to_string()),
            })
            .collect(),
    )
}
