//! Integer kernels via unimodular column reduction.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::linalg::{primitive, Int, IntVec, RationalMatrix};

/// Lattice basis of `ker(M) ∩ Z^cols`.
///
/// Rows of `M` are first scaled to integers. Column operations are then
/// applied simultaneously to `M` and to an identity matrix `U`, bringing `M`
/// to column echelon form (Hermite style, via extended gcd steps). The columns
/// of `U` that end up opposite zero columns of `M·U` form a basis of the
/// integer kernel.
pub fn kernel_lattice_basis(m: &RationalMatrix) -> Vec<IntVec> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<IntVec> = (0..rows)
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(Int::from(1), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    // u[c] is column c of the unimodular transform.
    let mut u: Vec<IntVec> = (0..cols)
        .map(|c| (0..cols).map(|r| Int::from((r == c) as i64)).collect())
        .collect();

    let mut pivot_col = 0;
    for r in 0..rows {
        if pivot_col >= cols {
            break;
        }
        // Euclid across the columns pivot_col.. of row r.
        loop {
            let nonzero: Vec<usize> = (pivot_col..cols).filter(|&c| !a[r][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero
                .iter()
                .min_by(|&&x, &&y| a[r][x].abs().cmp(&a[r][y].abs()))
                .expect("non-empty");
            swap_cols(&mut a, &mut u, pivot_col, best);
            let mut done = true;
            for c in pivot_col + 1..cols {
                if a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].div_floor(&a[r][pivot_col]);
                sub_col_multiple(&mut a, &mut u, c, pivot_col, &q);
                if !a[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[r][pivot_col].is_zero() {
            pivot_col += 1;
        }
    }

    (pivot_col..cols).map(|c| primitive(u[c].clone())).collect()
}

fn swap_cols(a: &mut [IntVec], u: &mut [IntVec], x: usize, y: usize) {
    if x == y {
        return;
    }
    for row in a.iter_mut() {
        row.swap(x, y);
    }
    u.swap(x, y);
}

/// column `target` -= q * column `source`
fn sub_col_multiple(a: &mut [IntVec], u: &mut [IntVec], target: usize, source: usize, q: &Int) {
    for row in a.iter_mut() {
        let s = &row[source] * q;
        row[target] -= s;
    }
    let src = u[source].clone();
    for (t, s) in u[target].iter_mut().zip(src) {
        *t -= s * q;
    }
}
