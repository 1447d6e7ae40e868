//! Random instances and independent oracles shared by the property suite and
//! the acceptance run. Oracles here avoid the library's own solvers: flows
//! are enumerated directly, tree counts come from the Laplacian determinant
//! and polytope membership is checked against the defining inequalities.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use num_traits::Zero;
use tsq_core::chambers::{cone_of_weights, potential_walls};
use tsq_core::flow_polytope::{basis_for_flow_polytope, flow_polytope_in_tree_basis, flow_polytope_vertices};
use tsq_core::geometry::linalg::{
    int_vec, orthogonal_complement, primitive, primitive_from_rat, project_onto_span, to_rat_vec,
};
use tsq_core::geometry::{kernel_lattice_basis, Polytope, Rat, RatVec, RationalMatrix};
use tsq_core::quiver::{ArrowSubset, FlowSpec, ToricQuiver, Weight};
use tsq_core::stability::stability;

pub const CASES: u32 = 256;

pub type Ops = Vec<(Index, Index, i64)>;

/// Connected acyclic quiver with 2..=5 vertices and at most 8 arrows,
/// arrows oriented from the smaller label to the larger, in random order.
pub fn quiver() -> impl Strategy<Value = ToricQuiver> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let parents = proptest::collection::vec(any::<Index>(), n - 1);
            let extra = proptest::collection::vec((any::<Index>(), any::<Index>()), 0..=(8 - (n - 1)));
            (Just(n), parents, extra)
        })
        .prop_flat_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1].index(v), v)).collect();
            for (a, b) in extra {
                let (a, b) = (a.index(n), b.index(n));
                if a != b {
                    edges.push((a.min(b), a.max(b)));
                }
            }
            Just(edges).prop_shuffle()
        })
        .prop_map(|edges| ToricQuiver::build(&edges, FlowSpec::Ones).expect("valid random quiver"))
}

/// Balanced weight made of a few unit transfers between random vertices,
/// so that roughly half the samples lie outside the cone of weights.
pub fn weight(n: usize) -> impl Strategy<Value = Weight> {
    proptest::collection::vec((any::<Index>(), any::<Index>()), 0..=4).prop_map(move |moves| {
        let mut w = vec![0i64; n];
        for (i, j) in moves {
            w[i.index(n)] -= 1;
            w[j.index(n)] += 1;
        }
        Weight(w)
    })
}

pub fn quiver_and_weight() -> impl Strategy<Value = (ToricQuiver, Weight)> {
    quiver().prop_flat_map(|q| {
        let n = q.vertex_count();
        (Just(q), weight(n))
    })
}

/// Runs `check` on `CASES` random inputs; the error carries the shrunk
/// counterexample.
pub fn run<S: Strategy>(strategy: S, check: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

pub fn inc(q: &ToricQuiver, flow: &[i64]) -> Vec<i64> {
    let mut w = vec![0i64; q.vertex_count()];
    for (a, &f) in q.arrows().iter().zip(flow) {
        w[a.head] += f;
        w[a.tail] -= f;
    }
    w
}

/// Spanning trees counted by the determinant of the reduced Laplacian.
pub fn matrix_tree_count(q: &ToricQuiver) -> i128 {
    let n = q.vertex_count();
    let mut l = vec![vec![0i128; n]; n];
    for a in q.arrows() {
        l[a.tail][a.tail] += 1;
        l[a.head][a.head] += 1;
        l[a.tail][a.head] -= 1;
        l[a.head][a.tail] -= 1;
    }
    let m: Vec<Vec<i128>> = l[1..].iter().map(|row| row[1..].to_vec()).collect();
    bareiss_det(m)
}

fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..k {
        if m[i][i] == 0 {
            match (i + 1..k).find(|&r| m[r][i] != 0) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
            }
        }
        prev = m[i][i];
    }
    sign * m[k - 1][k - 1]
}

/// Flow on a spanning tree given the values on all other arrows, by peeling
/// leaves. Written independently of the library's solver.
fn complete_on_tree(q: &ToricQuiver, tree: &[usize], flow: &mut [i64], theta: &[i64]) {
    let n = q.vertex_count();
    let mut residual: Vec<i64> = theta.to_vec();
    for (j, a) in q.arrows().iter().enumerate() {
        if !tree.contains(&j) {
            residual[a.head] -= flow[j];
            residual[a.tail] += flow[j];
        }
    }
    let mut remaining: Vec<usize> = tree.to_vec();
    while !remaining.is_empty() {
        let mut degree = vec![0; n];
        for &j in &remaining {
            degree[q.arrow(j).tail] += 1;
            degree[q.arrow(j).head] += 1;
        }
        let pos = remaining
            .iter()
            .position(|&j| degree[q.arrow(j).tail] == 1 || degree[q.arrow(j).head] == 1)
            .expect("a tree has a leaf");
        let j = remaining.swap_remove(pos);
        let a = q.arrow(j);
        let f = if degree[a.head] == 1 {
            residual[a.head]
        } else {
            -residual[a.tail]
        };
        flow[j] = f;
        residual[a.head] -= f;
        residual[a.tail] += f;
    }
}

/// Every nonnegative integer flow with weight `theta`. Arrows off a fixed
/// spanning tree range over `0..=supply`, where `supply` is the total
/// positive mass, which bounds every arrow of a nonnegative flow on an
/// acyclic quiver; tree arrows are then forced.
pub fn lattice_flows(q: &ToricQuiver, theta: &[i64]) -> Vec<Vec<i64>> {
    let tree = first_tree(q);
    let free: Vec<usize> = (0..q.arrow_count()).filter(|j| !tree.contains(j)).collect();
    let supply: i64 = theta.iter().filter(|&&x| x > 0).sum();
    let mut out = Vec::new();
    let mut flow = vec![0i64; q.arrow_count()];
    let mut counter = vec![0i64; free.len()];
    loop {
        for (k, &j) in free.iter().enumerate() {
            flow[j] = counter[k];
        }
        complete_on_tree(q, &tree, &mut flow, theta);
        if flow.iter().all(|&x| x >= 0) {
            out.push(flow.clone());
        }
        let mut k = 0;
        loop {
            if k == free.len() {
                out.sort();
                return out;
            }
            if counter[k] < supply {
                counter[k] += 1;
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

/// Lexicographically first spanning tree found by a plain union-find pass.
pub fn first_tree(q: &ToricQuiver) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..q.vertex_count()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut tree = Vec::new();
    for (j, a) in q.arrows().iter().enumerate() {
        let (x, y) = (find(&mut parent, a.tail), find(&mut parent, a.head));
        if x != y {
            parent[x] = y;
            tree.push(j);
        }
    }
    tree
}

fn rats(v: &[i64]) -> RatVec {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($msg)+)));
        }
    };
}

// ---- the property checks ----

/// `0 -> Cir(Q) -> Z^Q1 -> Z^Q0 -> Z` ranks: inc has rank |Q0|-1, its
/// integer kernel and every cycle basis have rank |Q1|-|Q0|+1, and the
/// cycle basis generates the whole kernel lattice.
pub fn exact_sequence(q: ToricQuiver) -> Result<(), TestCaseError> {
    let n = q.vertex_count();
    let m = q.arrow_count();
    let matrix = RationalMatrix::from_i64_rows(&q.incidence_matrix()).unwrap();
    ensure!(matrix.rank() == n - 1, "rank of inc is {}", matrix.rank());
    let kernel = kernel_lattice_basis(&matrix);
    ensure!(kernel.len() == m + 1 - n, "kernel rank {}", kernel.len());
    let basis = basis_for_flow_polytope(None, &q).unwrap();
    ensure!(basis.rank() == m + 1 - n, "basis rank {}", basis.rank());
    for c in &basis.columns {
        ensure!(inc(&q, c).iter().all(|&x| x == 0), "column {c:?} is not a circulation");
    }
    // the rows of the non-tree arrows form -I, so each kernel vector must be
    // recovered with integer coefficients -k[a]
    for k in &kernel {
        let k: Vec<i64> = k.iter().map(|x| i64::try_from(x).unwrap()).collect();
        let mut sum = vec![0i64; m];
        for (c, &a) in basis.columns.iter().zip(&basis.non_tree) {
            for i in 0..m {
                sum[i] -= k[a] * c[i];
            }
        }
        ensure!(sum == k, "kernel vector {k:?} is not in the span of the cycle basis");
    }
    Ok(())
}

pub fn inc_inverse_roundtrip((q, theta): (ToricQuiver, Weight)) -> Result<(), TestCaseError> {
    let f = q.inc_inverse(&theta, None).unwrap();
    ensure!(
        inc(&q, &f.0) == theta.0,
        "inc(incInverse({theta:?})) = {:?}",
        inc(&q, &f.0)
    );
    Ok(())
}

pub fn monotonicity((q, theta, mask): (ToricQuiver, Weight, u64)) -> Result<(), TestCaseError> {
    let j_set = ArrowSubset::from_mask(mask & ((1 << q.arrow_count()) - 1));
    let vj = stability(&q, &j_set, &theta).unwrap();
    for &drop in j_set.indices() {
        let i_set = ArrowSubset::new(j_set.indices().iter().copied().filter(|&x| x != drop).collect());
        let vi = stability(&q, &i_set, &theta).unwrap();
        ensure!(
            vj.semistable || !vi.semistable,
            "{j_set} unstable but {i_set} semistable"
        );
        ensure!(vj.stable || !vi.stable, "{j_set} not stable but {i_set} stable");
    }
    Ok(())
}

pub fn scale_invariance((q, theta, mask, t): (ToricQuiver, Weight, u64, i64)) -> Result<(), TestCaseError> {
    let s = ArrowSubset::from_mask(mask & ((1 << q.arrow_count()) - 1));
    let a = stability(&q, &s, &theta).unwrap();
    let b = stability(&q, &s, &theta.scaled(t)).unwrap();
    ensure!(
        a.stable == b.stable && a.semistable == b.semistable,
        "{s} changes verdict under scaling by {t}"
    );
    Ok(())
}

/// Δ(θ) has a lattice point (equivalently, is non-empty) exactly when θ lies
/// in the cone of weights and exactly when the library lists vertices.
pub fn nonempty_iff_in_cone((q, theta): (ToricQuiver, Weight)) -> Result<(), TestCaseError> {
    let oracle = !lattice_flows(&q, &theta.0).is_empty();
    let in_cone = cone_of_weights(&q).unwrap().contains(&int_vec(&theta.0), false);
    let listed = !flow_polytope_vertices(&theta, &q).unwrap().is_empty();
    ensure!(
        oracle == in_cone,
        "oracle {oracle}, cone membership {in_cone} for {theta:?}"
    );
    ensure!(
        oracle == listed,
        "oracle {oracle}, vertex list non-empty {listed} for {theta:?}"
    );
    Ok(())
}

/// The hull of the listed vertices agrees with the defining description of
/// Δ(θ): every enumerated lattice flow is inside, every listed vertex is a
/// lattice flow, and nudging a flow off the fibre or below zero leaves it.
pub fn hull_membership((q, theta): (ToricQuiver, Weight)) -> Result<(), TestCaseError> {
    let flows = lattice_flows(&q, &theta.0);
    let vertices = flow_polytope_vertices(&theta, &q).unwrap();
    if flows.is_empty() {
        ensure!(vertices.is_empty(), "vertices listed for an empty polytope");
        return Ok(());
    }
    let pts: Vec<RatVec> = vertices.iter().map(|v| rats(&v.0)).collect();
    let hull = Polytope::convex_hull(&pts).unwrap();
    ensure!(
        hull.vertices().len() == vertices.len(),
        "a listed flow is not a vertex of the hull"
    );
    for v in &vertices {
        ensure!(
            flows.contains(&v.0),
            "listed vertex {:?} is not a nonnegative flow of weight θ",
            v.0
        );
    }
    let basis = basis_for_flow_polytope(None, &q).unwrap();
    for f in &flows {
        ensure!(hull.contains(&rats(f), false), "lattice flow {f:?} outside the hull");
        for j in 0..q.arrow_count() {
            let mut g = f.clone();
            g[j] += 1;
            ensure!(
                !hull.contains(&rats(&g), false),
                "{g:?} has the wrong weight but is inside"
            );
        }
        for c in &basis.columns {
            for step in [-1i64, 1] {
                let g: Vec<i64> = f.iter().zip(c).map(|(x, y)| x + step * y).collect();
                let inside = hull.contains(&rats(&g), false);
                let definition = g.iter().all(|&x| x >= 0);
                ensure!(
                    inside == definition,
                    "{g:?}: hull says {inside}, definition says {definition}"
                );
            }
        }
    }
    Ok(())
}

/// Random unimodular map: a few elementary row operations and swaps.
pub fn unimodular(d: usize, ops: &[(Index, Index, i64)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
    for (a, b, k) in ops {
        let (a, b) = (a.index(d), b.index(d));
        if a == b {
            u.swap(0, a);
        } else {
            let row = u[b].clone();
            for (x, y) in u[a].iter_mut().zip(row) {
                *x += k * y;
            }
        }
    }
    u
}

pub fn lattice_data_invariance(
    (q, flow, ops, shift): (ToricQuiver, Vec<i64>, Ops, Vec<i64>),
) -> Result<(), TestCaseError> {
    let theta = Weight(inc(&q, &flow));
    let points = flow_polytope_in_tree_basis(&theta, &q, None).unwrap();
    let d = points[0].len();
    prop_assume!(d > 0);
    let base = Polytope::convex_hull(&points.iter().map(|p| rats(p)).collect::<Vec<_>>()).unwrap();
    let data = base.lattice_data_with_cap(200_000);
    prop_assume!(data.is_ok());
    let data = data.unwrap();
    let u = unimodular(d, &ops);
    let moved: Vec<RatVec> = points
        .iter()
        .map(|p| {
            let img: Vec<i64> = (0..d)
                .map(|r| (0..d).map(|c| u[r][c] * p[c]).sum::<i64>() + shift[r % shift.len()])
                .collect();
            rats(&img)
        })
        .collect();
    let image = Polytope::convex_hull(&moved).unwrap().lattice_data_with_cap(2_000_000);
    prop_assume!(image.is_ok());
    let image = image.unwrap();
    ensure!(
        image == data,
        "lattice data {data:?} became {image:?} under a unimodular map"
    );
    // a different spanning tree is another lattice basis of the same fibre
    let trees = q.spanning_trees().unwrap();
    let last = trees.last().unwrap();
    let other = flow_polytope_in_tree_basis(&theta, &q, Some(last)).unwrap();
    let other_data = Polytope::convex_hull(&other.iter().map(|p| rats(p)).collect::<Vec<_>>())
        .unwrap()
        .lattice_data_with_cap(2_000_000);
    prop_assume!(other_data.is_ok());
    ensure!(other_data.unwrap() == data, "tree {last} gives different lattice data");
    Ok(())
}

/// Every facet of C(Q) is `θ(Q0+) >= 0` (or `<= 0`) for an outer wall.
pub fn facets_are_outer_walls(q: ToricQuiver) -> Result<(), TestCaseError> {
    let n = q.vertex_count();
    let cone = cone_of_weights(&q).unwrap();
    let walls = potential_walls(&q).unwrap();
    let span = orthogonal_complement(n, cone.equations());
    for f in cone.facets() {
        let found = walls.iter().filter(|w| w.is_outer()).any(|w| {
            let normal = primitive_from_rat(&project_onto_span(&to_rat_vec(&int_vec(&w.normal(n))), &span));
            let signed: Vec<_> = if w.wall_type.0 == 0 {
                normal
            } else {
                normal.iter().map(|x| -x).collect()
            };
            &primitive(signed) == f
        });
        ensure!(found, "facet {f:?} of C(Q) is not an outer wall");
    }
    ensure!(!cone.facets().iter().any(|f| f.iter().all(Zero::is_zero)), "zero facet");
    Ok(())
}

pub fn tree_count_matches_matrix_tree(q: ToricQuiver) -> Result<(), TestCaseError> {
    let listed = q.spanning_trees().unwrap().len() as i128;
    let det = matrix_tree_count(&q);
    ensure!(listed == det, "{listed} trees listed, Laplacian determinant {det}");
    Ok(())
}

pub fn flow_strategy() -> impl Strategy<Value = (ToricQuiver, Vec<i64>, Ops, Vec<i64>)> {
    quiver().prop_flat_map(|q| {
        let m = q.arrow_count();
        (
            Just(q),
            proptest::collection::vec(0i64..=2, m),
            proptest::collection::vec((any::<Index>(), any::<Index>(), -1i64..=1), 0..=3),
            proptest::collection::vec(-3i64..=3, 1..=4),
        )
    })
}

pub fn subset_strategy() -> impl Strategy<Value = (ToricQuiver, Weight, u64)> {
    quiver_and_weight().prop_flat_map(|(q, w)| (Just(q), Just(w), any::<u64>()))
}

pub fn scale_strategy() -> impl Strategy<Value = (ToricQuiver, Weight, u64, i64)> {
    subset_strategy().prop_flat_map(|(q, w, m)| (Just(q), Just(w), Just(m), 1i64..=7))
}
