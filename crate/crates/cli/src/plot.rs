//! Point and edge lists for drawing cones, chambers and polytopes. Weights
//! live in the hyperplane where the entries sum to zero, so dropping the
//! first coordinate loses nothing; polytopes are drawn in their own
//! coordinates.

use num_traits::Zero;
use serde_json::{json, Value};
use tsq_core::chambers::ChamberSystem;
use tsq_core::geometry::cone::int_json;
use tsq_core::geometry::linalg::{dot, rank_of};
use tsq_core::geometry::{Cone, IntVec, Polytope, Rat};
use tsq_core::Error;

const MAX_PLOT_DIM: usize = 3;

fn project(v: &IntVec) -> Value {
    int_json(&v[1..])
}

/// Pairs of rays spanning a 2-face of a pointed cone.
fn cone_edges(c: &Cone) -> Vec<[usize; 2]> {
    let d = c.dim();
    if d < 2 {
        return Vec::new();
    }
    let tight: Vec<Vec<&IntVec>> = c
        .rays()
        .iter()
        .map(|r| c.facets().iter().filter(|f| dot(f, r).is_zero()).collect())
        .collect();
    let mut out = Vec::new();
    for i in 0..c.rays().len() {
        for j in i + 1..c.rays().len() {
            let mut common: Vec<&IntVec> = tight[i].iter().filter(|f| tight[j].contains(f)).copied().collect();
            common.extend(c.equations());
            if rank_of(c.ambient_dim(), &common) == c.ambient_dim() - 2 {
                out.push([i, j]);
            }
        }
    }
    out
}

fn check_dim(d: usize) -> Result<(), Error> {
    if d > MAX_PLOT_DIM {
        Err(Error::DimensionTooHigh(d))
    } else {
        Ok(())
    }
}

fn cone_json(c: &Cone) -> Value {
    json!({
        "rays": c.rays().iter().map(project).collect::<Vec<_>>(),
        "edges": cone_edges(c),
    })
}

pub fn cone(c: &Cone) -> Result<Value, Error> {
    check_dim(c.ambient_dim() - 1)?;
    Ok(json!({"dim": c.ambient_dim() - 1, "cone": cone_json(c)}))
}

pub fn chambers(cs: &ChamberSystem) -> Result<Value, Error> {
    let d = cs.ambient.ambient_dim() - 1;
    check_dim(d)?;
    Ok(json!({
        "dim": d,
        "cells": cs.chambers.iter().map(cone_json).collect::<Vec<_>>(),
    }))
}

fn rat_value(x: &Rat) -> Value {
    match i64::try_from(x.to_integer()) {
        Ok(n) if x.is_integer() => json!(n),
        _ => json!(x.to_string()),
    }
}

pub fn polytope(p: &Polytope) -> Result<Value, Error> {
    check_dim(p.ambient_dim())?;
    Ok(json!({
        "dim": p.ambient_dim(),
        "vertices": p
            .vertices()
            .iter()
            .map(|v| v.iter().map(rat_value).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "edges": p.edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
    }))
}
