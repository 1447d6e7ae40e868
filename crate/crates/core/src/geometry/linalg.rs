//! Dense exact linear algebra over `BigRational`, plus the handful of integer
//! vector helpers the cone and polytope code leans on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVec = Vec<BigInt>;
pub type RatVec = Vec<BigRational>;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat_vec(v: &[i64]) -> RatVec {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn to_rat_vec(v: &[Int]) -> RatVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| y * x).fold(Rat::zero(), |acc, t| acc + t)
}

pub fn dot_rr(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |acc, t| acc + t)
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Divides an integer vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn primitive(mut v: IntVec) -> IntVec {
    let g = v.iter().fold(Int::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// Smallest positive rescaling of a rational vector that is integral and
/// primitive. Direction (sign) is preserved.
pub fn primitive_from_rat(v: &[Rat]) -> IntVec {
    let lcm = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: IntVec = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(scaled)
}

/// Flips the sign so that the first non-zero entry is positive.
pub fn sign_normalize(mut v: IntVec) -> IntVec {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
    v
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: &[RatVec]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_int_rows(cols: usize, rows: &[IntVec]) -> Result<Self> {
        let rows: Vec<RatVec> = rows.iter().map(|r| to_rat_vec(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let rows: Vec<RatVec> = rows.iter().map(|r| rat_vec(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<RatVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot_rr(self.row(r), v)).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead >= self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, p);
            let inv = self.get(lead, c).recip();
            for k in c..self.cols {
                let v = self.get(lead, k) * &inv;
                self.set(lead, k, v);
            }
            for r in 0..self.rows {
                if r == lead || self.get(r, c).is_zero() {
                    continue;
                }
                let f = self.get(r, c).clone();
                for k in c..self.cols {
                    let v = self.get(r, k) - &f * self.get(lead, k);
                    self.set(r, k, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : M x = 0}`, one vector per free
    /// column, in the usual RREF parametrisation.
    pub fn nullspace(&self) -> Vec<RatVec> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<RatVec> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant of a square matrix by fraction-free elimination over the
    /// rationals.
    pub fn determinant(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for r in c + 1..n {
                if m.get(r, c).is_zero() {
                    continue;
                }
                let f = m.get(r, c) / &pivot;
                for k in c..n {
                    let v = m.get(r, k) - &f * m.get(c, k);
                    m.set(r, k, v);
                }
            }
        }
        det
    }
}

/// Rank of a family of integer vectors of length `dim`.
pub fn rank_of(dim: usize, vectors: &[&IntVec]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<RatVec> = vectors.iter().map(|v| to_rat_vec(v)).collect();
    RationalMatrix::from_rows(dim, &rows)
        .expect("vectors share the ambient dimension")
        .rank()
}

/// Canonical integral basis of the span of `vectors`: the non-zero RREF rows,
/// each scaled to a primitive integer vector.
pub fn canonical_span_basis(dim: usize, vectors: &[IntVec]) -> Vec<IntVec> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_int_rows(dim, vectors).expect("consistent dimensions");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| primitive_from_rat(r.row(i))).collect()
}

/// Canonical integral basis of the orthogonal complement of `span(vectors)`.
pub fn orthogonal_complement(dim: usize, vectors: &[IntVec]) -> Vec<IntVec> {
    let null: Vec<IntVec> = if vectors.is_empty() {
        (0..dim)
            .map(|i| (0..dim).map(|j| int((i == j) as i64)).collect())
            .collect()
    } else {
        let m = RationalMatrix::from_int_rows(dim, vectors).expect("consistent dimensions");
        m.nullspace().iter().map(|v| primitive_from_rat(v)).collect()
    };
    canonical_span_basis(dim, &null)
}

/// Orthogonal projection of `v` onto `span(basis)`; `basis` must be linearly
/// independent.
pub fn project_onto_span(v: &[Rat], basis: &[IntVec]) -> RatVec {
    let dim = v.len();
    if basis.is_empty() {
        return vec![Rat::zero(); dim];
    }
    let k = basis.len();
    let b: Vec<RatVec> = basis.iter().map(|x| to_rat_vec(x)).collect();
    let mut gram = RationalMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, dot_rr(&b[i], &b[j]));
        }
    }
    let rhs: RatVec = b.iter().map(|bi| dot_rr(bi, v)).collect();
    let coeffs = gram.solve(&rhs).expect("basis vectors are independent");
    let mut out = vec![Rat::zero(); dim];
    for (c, bi) in coeffs.iter().zip(&b) {
        for (o, x) in out.iter_mut().zip(bi) {
            *o += c * x;
        }
    }
    out
}

/// Lexicographic comparison of rational vectors.
pub fn cmp_rat_vec(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    a.iter().cmp(b.iter())
}
