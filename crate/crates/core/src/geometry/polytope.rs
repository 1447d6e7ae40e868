use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::cone::{int_json, Cone};
use super::linalg::{
    dot_rat, primitive, primitive_from_rat, rank_of, to_rat_vec, Int, IntVec, Rat, RatVec, RationalMatrix,
};
use crate::error::{Error, Result};

/// Default cap on bounding-box candidates visited by [`Polytope::lattice_data`].
pub const DEFAULT_LATTICE_CAP: u128 = 10_000_000;

/// `a · x <= b` (or `= b` for equations) with `a` primitive integral.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: IntVec,
    pub rhs: Rat,
}

impl Halfspace {
    fn eval(&self, x: &[Rat]) -> Rat {
        dot_rat(&self.normal, x)
    }
}

/// Bounded polyhedron with both vertex and facet descriptions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<RatVec>,
    inequalities: Vec<Halfspace>,
    equations: Vec<Halfspace>,
    dim: isize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeData {
    pub dim: isize,
    pub vertex_count: usize,
    pub lattice_point_count: u64,
    pub interior_lattice_point_count: u64,
}

impl Polytope {
    /// Convex hull of a non-empty finite point set. The points are lifted to
    /// `(1, p)` and the resulting cone dualised; facets of the cone other
    /// than the apex correspond to facets of the polytope.
    pub fn convex_hull(points: &[RatVec]) -> Result<Self> {
        let first = points.first().ok_or(Error::Parse("convex hull of no points".into()))?;
        let d = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: p.len(),
            });
        }
        let lifted: Vec<IntVec> = points
            .iter()
            .map(|p| {
                let mut h = vec![Rat::one()];
                h.extend(p.iter().cloned());
                primitive_from_rat(&h)
            })
            .collect();
        let cone = Cone::from_rays(d + 1, &lifted)?;
        let dim = cone.dim() as isize - 1;

        let mut vertices: Vec<RatVec> = cone
            .rays()
            .iter()
            .map(|r| {
                let h = Rat::from_integer(r[0].clone());
                r[1..].iter().map(|x| Rat::from_integer(x.clone()) / &h).collect()
            })
            .collect();
        vertices.sort();

        let inequalities = if dim <= 0 {
            Vec::new()
        } else {
            let mut hs: Vec<Halfspace> = cone.facets().iter().filter_map(lifted_to_halfspace).collect();
            hs.sort_by(|x, y| (&x.normal, &x.rhs).cmp(&(&y.normal, &y.rhs)));
            hs
        };
        let equations = cone.equations().iter().filter_map(lifted_to_halfspace).collect();

        Ok(Self {
            ambient_dim: d,
            vertices,
            inequalities,
            equations,
            dim,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim as isize
    }

    pub fn contains(&self, x: &[Rat], strictly: bool) -> bool {
        if self.equations.iter().any(|e| e.eval(x) != e.rhs) {
            return false;
        }
        self.inequalities.iter().all(|h| {
            let v = h.eval(x);
            if strictly {
                v < h.rhs
            } else {
                v <= h.rhs
            }
        })
    }

    fn tight(&self, x: &[Rat]) -> Vec<usize> {
        (0..self.inequalities.len())
            .filter(|&i| self.inequalities[i].eval(x) == self.inequalities[i].rhs)
            .collect()
    }

    /// Pairs of vertex indices spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if self.dim < 1 {
            return Vec::new();
        }
        let tight: Vec<Vec<usize>> = self.vertices.iter().map(|v| self.tight(v)).collect();
        let eq_normals: Vec<&IntVec> = self.equations.iter().map(|e| &e.normal).collect();
        let target = self.ambient_dim - 1;
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                let mut normals = eq_normals.clone();
                normals.extend(
                    tight[i]
                        .iter()
                        .filter(|k| tight[j].contains(k))
                        .map(|&k| &self.inequalities[k].normal),
                );
                if rank_of(self.ambient_dim, &normals) == target {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Lattice-point fingerprint: affine dimension, number of vertices,
    /// number of lattice points and of relative-interior lattice points.
    pub fn lattice_data(&self) -> Result<LatticeData> {
        self.lattice_data_with_cap(DEFAULT_LATTICE_CAP)
    }

    pub fn lattice_data_with_cap(&self, cap: u128) -> Result<LatticeData> {
        let points = self.lattice_points_with_cap(cap)?;
        let interior = points.iter().filter(|p| self.contains(&to_rat_vec(p), true)).count();
        Ok(LatticeData {
            dim: self.dim,
            vertex_count: self.vertices.len(),
            lattice_point_count: points.len() as u64,
            interior_lattice_point_count: interior as u64,
        })
    }

    pub fn lattice_points(&self) -> Result<Vec<IntVec>> {
        self.lattice_points_with_cap(DEFAULT_LATTICE_CAP)
    }

    /// All integer points, by bounding-box enumeration filtered through the
    /// facet and equation descriptions.
    pub fn lattice_points_with_cap(&self, cap: u128) -> Result<Vec<IntVec>> {
        let d = self.ambient_dim;
        let mut lo = vec![Int::zero(); d];
        let mut hi = vec![Int::zero(); d];
        for k in 0..d {
            let min = self.vertices.iter().map(|v| &v[k]).min().expect("non-empty");
            let max = self.vertices.iter().map(|v| &v[k]).max().expect("non-empty");
            lo[k] = min.ceil().to_integer();
            hi[k] = max.floor().to_integer();
            if lo[k] > hi[k] {
                return Ok(Vec::new());
            }
        }
        let mut candidates: u128 = 1;
        for k in 0..d {
            let width = u128::try_from(&hi[k] - &lo[k] + Int::one()).unwrap_or(u128::MAX);
            candidates = candidates.saturating_mul(width);
        }
        if candidates > cap {
            return Err(Error::TooLarge { candidates, cap });
        }
        // integer bounds: a·x <= floor(b); equations need b integral
        let ineq: Vec<(&IntVec, Int)> = self
            .inequalities
            .iter()
            .map(|h| (&h.normal, h.rhs.floor().to_integer()))
            .collect();
        let mut eqs: Vec<(&IntVec, Int)> = Vec::new();
        for e in &self.equations {
            if !e.rhs.is_integer() {
                return Ok(Vec::new());
            }
            eqs.push((&e.normal, e.rhs.to_integer()));
        }

        let mut out = Vec::new();
        if d == 0 {
            out.push(Vec::new());
            return Ok(out);
        }
        let mut x = lo.clone();
        loop {
            let ok = eqs.iter().all(|(a, b)| &super::linalg::dot(a, &x) == b)
                && ineq.iter().all(|(a, b)| &super::linalg::dot(a, &x) <= b);
            if ok {
                out.push(x.clone());
            }
            let mut k = d;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                if x[k] < hi[k] {
                    x[k] += 1;
                    x[k + 1..d].clone_from_slice(&lo[k + 1..d]);
                    break;
                }
            }
        }
    }

    /// Reflexivity in the sense of facet right-hand sides: full-dimensional,
    /// origin strictly inside, and every primitive facet normal has rhs 1.
    pub fn is_reflexive(&self) -> Result<bool> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dim,
                ambient: self.ambient_dim,
            });
        }
        let origin = vec![Rat::zero(); self.ambient_dim];
        if !self.contains(&origin, true) {
            return Err(Error::OriginNotInterior);
        }
        Ok(self.inequalities.iter().all(|h| h.rhs.is_one()))
    }

    pub fn translate(&self, shift: &[Rat]) -> Result<Polytope> {
        let pts: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        Polytope::convex_hull(&pts)
    }

    /// Normalised volume (`dim! · vol`) of a full-dimensional polytope, via a
    /// pulling triangulation from the first vertex.
    pub fn normalized_volume(&self) -> Result<Rat> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dim,
                ambient: self.ambient_dim,
            });
        }
        let mut total = Rat::zero();
        for simplex in pulling_triangulation(&self.vertices)? {
            let apex = &simplex[0];
            let rows: Vec<RatVec> = simplex[1..]
                .iter()
                .map(|p| p.iter().zip(apex).map(|(a, b)| a - b).collect())
                .collect();
            let m = RationalMatrix::from_rows(self.ambient_dim, &rows)?;
            total += m.determinant().abs();
        }
        Ok(total)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambientDim": self.ambient_dim,
            "dim": self.dim,
            "vertices": self.vertices.iter().map(|v| rat_json(v)).collect::<Vec<_>>(),
            "inequalities": self.inequalities.iter().map(|h| json!({"a": int_json(&h.normal), "b": h.rhs.to_string()})).collect::<Vec<_>>(),
            "equations": self.equations.iter().map(|h| json!({"a": int_json(&h.normal), "b": h.rhs.to_string()})).collect::<Vec<_>>(),
        })
    }
}

/// Simplices (as vertex lists, each of size `dim + 1`) triangulating the
/// convex hull of `points`, which must span their affine hull.
fn pulling_triangulation(points: &[RatVec]) -> Result<Vec<Vec<RatVec>>> {
    let hull = Polytope::convex_hull(points)?;
    let verts = hull.vertices.clone();
    if hull.dim <= 0 {
        return Ok(vec![verts]);
    }
    let apex = verts[0].clone();
    let mut out = Vec::new();
    for h in &hull.inequalities {
        if h.eval(&apex) == h.rhs {
            continue;
        }
        let face: Vec<RatVec> = verts.iter().filter(|v| h.eval(v) == h.rhs).cloned().collect();
        for mut simplex in pulling_triangulation(&face)? {
            simplex.insert(0, apex.clone());
            out.push(simplex);
        }
    }
    Ok(out)
}

/// Homogenised facet `c0 + c·x >= 0` becomes `(-c)·x <= c0`, rescaled so the
/// normal is primitive.
fn lifted_to_halfspace(c: &IntVec) -> Option<Halfspace> {
    let normal: IntVec = c[1..].iter().map(|x| -x).collect();
    if normal.iter().all(Zero::is_zero) {
        return None;
    }
    let g = normal.iter().fold(Int::zero(), |g, x| g.gcd(x));
    let normal = primitive(normal);
    Some(Halfspace {
        normal,
        rhs: Rat::new(c[0].clone(), g),
    })
}

pub fn rat_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| json!(x.to_string())).collect())
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl LatticeData {
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "vertexCount": self.vertex_count,
            "latticePointCount": self.lattice_point_count,
            "interiorLatticePointCount": self.interior_lattice_point_count,
        })
    }
}
