//! End-to-end acceptance run. Every criterion prints one line; the test fails
//! at the end if any of them did. Run with `--nocapture` to see the report.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use tsq_core::chambers::{cone_of_all_columns, cone_of_weights, cone_system, potential_walls, same_chamber};
use tsq_core::flow_polytope::{
    basis_for_flow_polytope, flow_polytope, flow_polytope_in_tree_basis, flow_polytope_vertices,
    is_flow_polytope_reflexive,
};
use tsq_core::geometry::linalg::{int_vec, rat, rat_vec};
use tsq_core::geometry::Polytope;
use tsq_core::quiver::{Arrow, ArrowSubset, Flow, ToricQuiver, Weight};
use tsq_core::stability::{is_tight, make_tight, maximal_unstable_subquivers, stable_trees_with_flows, Subquiver};
use tsq_core::Error;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! require {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn b23() -> ToricQuiver {
    ToricQuiver::bipartite(2, 3).unwrap()
}

fn k4() -> ToricQuiver {
    ToricQuiver::complete_graph(4).unwrap()
}

fn set_of(sets: &[&[usize]]) -> BTreeSet<Vec<usize>> {
    sets.iter().map(|s| s.to_vec()).collect()
}

fn subsets(sets: &[ArrowSubset]) -> BTreeSet<Vec<usize>> {
    sets.iter().map(|s| s.indices().to_vec()).collect()
}

fn flows(sets: &[&[i64]]) -> BTreeSet<Vec<i64>> {
    sets.iter().map(|s| s.to_vec()).collect()
}

fn incidence_matrix() -> Outcome {
    let expected = vec![
        vec![-1, -1, -1, 0, 0, 0],
        vec![0, 0, 0, -1, -1, -1],
        vec![1, 0, 0, 1, 0, 0],
        vec![0, 1, 0, 0, 1, 0],
        vec![0, 0, 1, 0, 0, 1],
    ];
    let got = b23().incidence_matrix();
    require!(got == expected, "got {got:?}");
    Ok(())
}

fn closed_under_arrows() -> Outcome {
    let q = b23();
    let view = q
        .zeroed_view(&ArrowSubset::new(vec![0, 1, 2, 4]))
        .map_err(|e| e.to_string())?;
    let support = ArrowSubset::new((0..view.arrow_count()).filter(|&j| view.flow().0[j] != 0).collect());
    require!(support.indices() == [0, 1, 2, 4], "view keeps flow on {support}");
    let p = Subquiver::new(&view, &support).map_err(|e| e.to_string())?;
    let a = p.is_closed_under_arrows(&[0, 3]).map_err(|e| e.to_string())?;
    let b = p.is_closed_under_arrows(&[1, 3]).map_err(|e| e.to_string())?;
    require!(!a && b, "V={{0,3}} gave {a}, V={{1,3}} gave {b}");
    Ok(())
}

fn maximal_unstable_canonical() -> Outcome {
    let q = b23();
    let m = maximal_unstable_subquivers(&q, q.weight()).map_err(|e| e.to_string())?;
    let expected = set_of(&[
        &[0, 1, 2, 3],
        &[0, 1, 2, 4],
        &[0, 1, 2, 5],
        &[0, 3, 4, 5],
        &[1, 3, 4, 5],
        &[2, 3, 4, 5],
    ]);
    require!(subsets(&m.non_singletons) == expected, "got {:?}", m.non_singletons);
    require!(m.singletons.is_empty(), "unexpected singletons {:?}", m.singletons);
    Ok(())
}

fn maximal_unstable_other_weight() -> Outcome {
    let m = maximal_unstable_subquivers(&b23(), &Weight(vec![-5, -1, 2, 2, 2])).map_err(|e| e.to_string())?;
    let expected = set_of(&[&[0, 1, 3, 4, 5], &[0, 2, 3, 4, 5], &[1, 2, 3, 4, 5]]);
    require!(subsets(&m.non_singletons) == expected, "got {:?}", m.non_singletons);
    require!(m.singletons.is_empty(), "unexpected singletons {:?}", m.singletons);
    Ok(())
}

fn k4_flow_not_tight() -> Outcome {
    let q = k4()
        .with_flow(Flow(vec![1, -2, 3, 0, 0, 0]))
        .map_err(|e| e.to_string())?;
    let tight = is_tight(&q, None).map_err(|e| e.to_string())?;
    require!(!tight, "reported tight");
    Ok(())
}

fn make_tight_k4() -> Outcome {
    let q = k4();
    let theta = Weight(vec![-2, 1, -2, 3]);
    let t = make_tight(&theta, &q).map_err(|e| e.to_string())?;
    require!(t.quiver.vertex_count() == 2, "{} vertices", t.quiver.vertex_count());
    require!(
        t.quiver.arrows() == [Arrow::new(0, 1); 4],
        "arrows {:?}",
        t.quiver.arrows()
    );
    let before = flow_polytope(&theta, &q, None)
        .and_then(|p| p.lattice_data())
        .map_err(|e| e.to_string())?;
    let after = flow_polytope(&t.weight, &t.quiver, None)
        .and_then(|p| p.lattice_data())
        .map_err(|e| e.to_string())?;
    require!(before == after, "lattice data {before:?} became {after:?}");
    Ok(())
}

fn cone_of_weights_k4() -> Outcome {
    let q = k4();
    let c = cone_of_weights(&q).map_err(|e| e.to_string())?;
    require!(
        c.contains(&int_vec(&[-3, -1, 2, 2]), true),
        "(-3,-1,2,2) not strictly inside"
    );
    let all = cone_of_all_columns(&q).map_err(|e| e.to_string())?;
    require!(c == all, "primitive-arrow cone {c:?} differs from {all:?}");
    Ok(())
}

fn stable_trees_k4() -> Outcome {
    let st = stable_trees_with_flows(&Weight(vec![-2, 1, -1, 2]), &k4()).map_err(|e| e.to_string())?;
    let trees: BTreeSet<Vec<usize>> = st.iter().map(|(t, _)| t.indices().to_vec()).collect();
    require!(
        trees == set_of(&[&[0, 1, 5], &[0, 2, 5], &[0, 3, 5], &[0, 4, 5]]),
        "trees {trees:?}"
    );
    let got: BTreeSet<Vec<i64>> = st.iter().map(|(_, f)| f.0.clone()).collect();
    let expected = flows(&[
        &[2, 0, 0, 0, 1, 1],
        &[2, 0, 0, 1, 0, 2],
        &[1, 1, 0, 0, 0, 2],
        &[1, 0, 1, 0, 0, 1],
    ]);
    require!(got == expected, "flows {got:?}");
    Ok(())
}

fn walls_k4() -> Outcome {
    let walls = potential_walls(&k4()).map_err(|e| e.to_string())?;
    require!(
        walls.iter().any(|w| w.q_plus == [1, 2, 3] && w.wall_type == (0, 3)),
        "no wall {{1,2,3}} of type (0,3) in {walls:?}"
    );
    Ok(())
}

fn chambers_k4() -> Outcome {
    let cs = cone_system(&k4()).map_err(|e| e.to_string())?;
    require!(cs.chambers.len() == 7, "{} chambers", cs.chambers.len());
    let reference = [
        [-1, -1, -1, 3],
        [-2, 1, -1, 2],
        [-3, 1, 1, 1],
        [-2, -2, 1, 3],
        [-3, -1, 2, 2],
        [-1, -3, 2, 2],
        [-2, -2, 3, 1],
    ];
    let mut hit = BTreeSet::new();
    for w in reference {
        match cs.locate(&Weight(w.to_vec())) {
            Some(i) => {
                hit.insert(i);
            }
            None => return Err(format!("{w:?} is not interior to any chamber")),
        }
    }
    require!(hit.len() == 7, "reference weights meet only {} chambers", hit.len());
    Ok(())
}

fn chambers_b23() -> Outcome {
    let cs = cone_system(&b23()).map_err(|e| e.to_string())?;
    require!(cs.chambers.len() == 18, "{} chambers", cs.chambers.len());
    Ok(())
}

fn same_chamber_k4() -> Outcome {
    let q = k4();
    let same = same_chamber(&Weight(vec![-3, 2, -1, 2]), &Weight(vec![-2, 1, -2, 3]), &q).map_err(|e| e.to_string())?;
    require!(same, "first pair reported in different chambers");
    match same_chamber(&Weight(vec![2, -1, 1, -2]), &Weight(vec![3, -1, -1, -1]), &q) {
        Err(e @ Error::Indeterminate) => {
            require!(
                e.to_string() == "cannot be determined. stableTrees are empty",
                "message {:?}",
                e.to_string()
            );
        }
        other => return Err(format!("second pair gave {other:?}")),
    }
    Ok(())
}

fn hexagon() -> Outcome {
    let q = b23();
    let v = flow_polytope_vertices(&Weight(vec![-3, -3, 2, 2, 2]), &q).map_err(|e| e.to_string())?;
    let got: BTreeSet<Vec<i64>> = v.iter().map(|f| f.0.clone()).collect();
    let expected = flows(&[
        &[2, 0, 1, 0, 2, 1],
        &[2, 1, 0, 0, 1, 2],
        &[0, 2, 1, 2, 0, 1],
        &[1, 2, 0, 1, 0, 2],
        &[0, 1, 2, 2, 1, 0],
        &[1, 0, 2, 1, 2, 0],
    ]);
    require!(got == expected, "ambient vertices {got:?}");
    let pts = flow_polytope_in_tree_basis(q.weight(), &q, Some(&ArrowSubset::new(vec![0, 1, 4, 5])))
        .map_err(|e| e.to_string())?;
    let got: BTreeSet<Vec<i64>> = pts.into_iter().collect();
    let expected = flows(&[&[0, 1], &[1, 1], &[0, -1], &[1, 0], &[-1, -1], &[-1, 0]]);
    require!(got == expected, "tree-basis vertices {got:?}");
    Ok(())
}

fn basis_b23() -> Outcome {
    let q = b23();
    let b = basis_for_flow_polytope(Some(&ArrowSubset::new(vec![0, 1, 4, 5])), &q).map_err(|e| e.to_string())?;
    let expected = vec![
        vec![0, 1],
        vec![1, -1],
        vec![-1, 0],
        vec![0, -1],
        vec![-1, 1],
        vec![1, 0],
    ];
    let got = b.matrix(q.arrow_count());
    require!(got == expected, "matrix {got:?}");
    Ok(())
}

fn k4_simplex() -> Outcome {
    let theta = Weight(vec![-2, 1, -1, 2]);
    let q = k4();
    let pts = flow_polytope_in_tree_basis(&theta, &q, None).map_err(|e| e.to_string())?;
    require!(pts.len() == 4, "{} points", pts.len());
    let p = flow_polytope(&theta, &q, None).map_err(|e| e.to_string())?;
    let data = p.lattice_data().map_err(|e| e.to_string())?;
    let summary = (
        data.dim,
        data.vertex_count,
        data.lattice_point_count,
        data.interior_lattice_point_count,
    );
    require!(summary == (3, 4, 4, 0), "lattice data {data:?}");
    let vol = p.normalized_volume().map_err(|e| e.to_string())?;
    require!(vol == rat(1), "normalized volume {vol}");
    let reference = Polytope::convex_hull(&[
        rat_vec(&[0, 0, 0]),
        rat_vec(&[0, 0, -1]),
        rat_vec(&[-1, 0, 0]),
        rat_vec(&[-1, 1, 0]),
    ])
    .map_err(|e| e.to_string())?;
    let reference_data = reference.lattice_data().map_err(|e| e.to_string())?;
    require!(reference_data == data, "reference simplex has {reference_data:?}");
    require!(
        reference.normalized_volume().map_err(|e| e.to_string())? == vol,
        "volumes differ"
    );
    Ok(())
}

fn reflexive() -> Outcome {
    let a = is_flow_polytope_reflexive(&Weight(vec![-3, -1, 1, 3]), &k4()).map_err(|e| e.to_string())?;
    let q = b23();
    let b = is_flow_polytope_reflexive(q.weight(), &q).map_err(|e| e.to_string())?;
    require!(a && b, "K4 {a}, bipartite(2,3) {b}");
    Ok(())
}

fn property_suite() -> Outcome {
    use common::*;
    let checks: [(&str, Outcome); 8] = [
        ("exact sequence ranks", run(quiver(), exact_sequence)),
        ("inc after incInverse", run(quiver_and_weight(), inc_inverse_roundtrip)),
        ("monotonicity", run(subset_strategy(), monotonicity)),
        ("scale invariance", run(scale_strategy(), scale_invariance)),
        ("non-empty iff in cone", run(quiver_and_weight(), nonempty_iff_in_cone)),
        ("hull membership", run(quiver_and_weight(), hull_membership)),
        ("lattice data invariance", run(flow_strategy(), lattice_data_invariance)),
        ("facets are outer walls", run(quiver(), facets_are_outer_walls)),
    ];
    let failed: Vec<String> = checks
        .into_iter()
        .filter_map(|(name, r)| r.err().map(|e| format!("{name}: {e}")))
        .collect();
    require!(failed.is_empty(), "{}", failed.join("; "));
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 17] = [
        ("incidence matrix of bipartite(2,3)", incidence_matrix),
        ("closed-under-arrows on a zeroed view", closed_under_arrows),
        (
            "maximal unstable subquivers, canonical weight",
            maximal_unstable_canonical,
        ),
        (
            "maximal unstable subquivers, (-5,-1,2,2,2)",
            maximal_unstable_other_weight,
        ),
        ("K4 with flow (1,-2,3,0,0,0) is not tight", k4_flow_not_tight),
        ("makeTight on K4 keeps lattice data", make_tight_k4),
        ("cone of weights of K4", cone_of_weights_k4),
        ("stable trees of K4 and their flows", stable_trees_k4),
        ("wall {1,2,3} of type (0,3) on K4", walls_k4),
        ("7 chambers of K4", chambers_k4),
        ("18 chambers of bipartite(2,3)", chambers_b23),
        ("sameChamber on K4", same_chamber_k4),
        ("hexagon flow polytope", hexagon),
        ("cycle basis of bipartite(2,3)", basis_b23),
        ("unimodular simplex of K4", k4_simplex),
        ("reflexivity of canonical polytopes", reflexive),
        ("property suite", property_suite),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: pass  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
