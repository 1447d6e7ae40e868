//! `tsq`: command-line access to toric quiver computations. Every command
//! prints one JSON object, `{"status":"ok","payload":...}` or
//! `{"status":"error","errorKind":...,"message":...}`.

mod args;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, FlowFormat, Indices, Ints, PlotKind, QuiverArgs, TightAction};
use tsq_core::chambers::{
    cone_of_weights, cone_system, potential_walls, primitive_arrows, reference_thetas, same_chamber,
};
use tsq_core::flow_polytope::{
    basis_for_flow_polytope, flow_polytope, flow_polytope_in_tree_basis, flow_polytope_vertices,
    is_flow_polytope_reflexive,
};
use tsq_core::quiver::{ArrowSubset, Flow, FlowSpec, ToricQuiver, Weight};
use tsq_core::stability::{
    is_tight, make_tight, maximal_nonstable_subquivers, maximal_unstable_subquivers, stability,
    stable_trees_with_flows, Subquiver,
};
use tsq_core::Error;

/// Arrow-subset listings refuse quivers beyond this many arrows.
const SUBQUIVER_LISTING_CAP: usize = 20;

enum Failure {
    Usage(String),
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return report(Failure::Usage(e.to_string()));
        }
    };
    match run(cli.command) {
        Ok(payload) => {
            println!("{}", json!({"status": "ok", "payload": payload}));
            ExitCode::SUCCESS
        }
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    let (kind, message, code) = match f {
        Failure::Usage(m) => ("UsageError".to_string(), m.trim_end().to_string(), 2),
        Failure::Module(e) => (e.kind().to_string(), e.to_string(), 1),
    };
    println!("{}", json!({"status": "error", "errorKind": kind, "message": message}));
    ExitCode::from(code)
}

fn load(q: &QuiverArgs) -> Result<ToricQuiver, Failure> {
    let flow_spec = || match (&q.flow, q.random) {
        (Some(f), _) => Some(FlowSpec::Explicit(f.0.clone())),
        (None, true) => Some(FlowSpec::Random(q.seed)),
        (None, false) => None,
    };
    let quiver = match (&q.quiver, &q.family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            ToricQuiver::from_json_str(&text)?
        }
        (None, Some(fam)) => fam.build()?,
        (Some(_), Some(_)) => return Err(Failure::Usage("use either --quiver or --family, not both".into())),
        (None, None) => {
            return Err(Failure::Usage(
                "a quiver is required: --quiver <file> or --family <name:args>".into(),
            ))
        }
    };
    Ok(match flow_spec() {
        Some(FlowSpec::Explicit(f)) => quiver.with_flow(Flow(f))?,
        Some(spec) => {
            let edges: Vec<(usize, usize)> = quiver.arrows().iter().map(|a| (a.tail, a.head)).collect();
            let rebuilt = ToricQuiver::build(&edges, spec)?;
            quiver.with_flow(rebuilt.flow().clone())?
        }
        None => quiver,
    })
}

fn theta_or_default(q: &ToricQuiver, theta: &Option<Ints>) -> Weight {
    match theta {
        Some(t) => Weight(t.0.clone()),
        None => q.weight().clone(),
    }
}

fn to_subset(indices: Option<Indices>) -> Option<ArrowSubset> {
    indices.map(|i| ArrowSubset::new(i.0))
}

fn quiver_json(q: &ToricQuiver) -> Value {
    json!({
        "vertices": q.vertex_count(),
        "arrows": q.arrows().iter().map(|a| [a.tail, a.head]).collect::<Vec<_>>(),
        "flow": q.flow().0,
        "weight": q.weight().0,
    })
}

/// Writes the quiver file when asked to and echoes the quiver.
fn save(q: ToricQuiver, out: Option<PathBuf>) -> Result<Value, Failure> {
    if let Some(path) = out {
        std::fs::write(&path, q.to_json_string())
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(quiver_json(&q))
}

fn subsets_json(sets: &[ArrowSubset]) -> Value {
    json!(sets.iter().map(|s| s.indices().to_vec()).collect::<Vec<_>>())
}

fn run(cmd: Command) -> Result<Value, Failure> {
    Ok(match cmd {
        Command::Family { quiver, out } => save(load(&quiver)?, out)?,
        Command::Build {
            arrows,
            flow,
            random,
            seed,
            out,
        } => {
            let spec = match (flow, random) {
                (Some(f), _) => FlowSpec::Explicit(f.0),
                (None, true) => FlowSpec::Random(seed),
                (None, false) => FlowSpec::Ones,
            };
            save(ToricQuiver::build(&arrows.0, spec)?, out)?
        }
        Command::Inc { quiver, matrix } => {
            let q = load(&quiver)?;
            if matrix {
                json!(q.incidence_matrix())
            } else {
                json!(q.weight().0)
            }
        }
        Command::IncInverse { quiver, theta, support } => {
            let q = load(&quiver)?;
            let support = to_subset(support);
            json!(q.inc_inverse(&theta_or_default(&q, &theta), support.as_ref())?.0)
        }
        Command::SpanningTrees { quiver } => subsets_json(&load(&quiver)?.spanning_trees()?),
        Command::Subquivers { quiver } => {
            let q = load(&quiver)?;
            if q.arrow_count() > SUBQUIVER_LISTING_CAP {
                return Err(Error::TooManyArrows {
                    count: q.arrow_count(),
                    cap: SUBQUIVER_LISTING_CAP,
                }
                .into());
            }
            json!(q.subquivers().collect::<Vec<_>>())
        }
        Command::ClosedUnderArrows {
            quiver,
            subset,
            vertices,
        } => {
            let q = load(&quiver)?;
            let subset = to_subset(subset).unwrap_or_else(|| ArrowSubset::full(q.arrow_count()));
            json!(Subquiver::new(&q, &subset)?.is_closed_under_arrows(&vertices.0)?)
        }
        Command::Stable { quiver, subset, theta } | Command::Semistable { quiver, subset, theta } => {
            let q = load(&quiver)?;
            let subset = to_subset(subset).unwrap_or_else(|| ArrowSubset::full(q.arrow_count()));
            json!(stability(&q, &subset, &theta_or_default(&q, &theta))?)
        }
        Command::MaxUnstable { quiver, theta } => {
            let q = load(&quiver)?;
            json!(maximal_unstable_subquivers(&q, &theta_or_default(&q, &theta))?)
        }
        Command::MaxNonstable { quiver, theta } => {
            let q = load(&quiver)?;
            json!(maximal_nonstable_subquivers(&q, &theta_or_default(&q, &theta))?)
        }
        Command::Tight { action } => match action {
            TightAction::Check { quiver, theta } => {
                let q = load(&quiver)?;
                json!(is_tight(&q, Some(&theta_or_default(&q, &theta)))?)
            }
            TightAction::Make { quiver, theta } => {
                let q = load(&quiver)?;
                let t = make_tight(&theta_or_default(&q, &theta), &q)?;
                json!({
                    "quiver": quiver_json(&t.quiver),
                    "weight": t.weight.0,
                    "contracted": t.contracted,
                })
            }
        },
        Command::StableTrees { quiver, theta } => {
            let q = load(&quiver)?;
            let st = stable_trees_with_flows(&theta_or_default(&q, &theta), &q)?;
            json!(st
                .iter()
                .map(|(t, f)| json!({"tree": t.indices(), "flow": f.0}))
                .collect::<Vec<_>>())
        }
        Command::Cone { quiver } => {
            let q = load(&quiver)?;
            let mut c = cone_of_weights(&q)?.to_json();
            c["primitiveArrows"] = json!(primitive_arrows(&q)?.indices());
            c
        }
        Command::Walls { quiver } => json!(potential_walls(&load(&quiver)?)?),
        Command::Chambers { quiver } => {
            let cs = cone_system(&load(&quiver)?)?;
            let chambers: Vec<Value> = cs
                .chambers
                .iter()
                .zip(&cs.tree_sets)
                .map(|(c, set)| {
                    let mut v = c.to_json();
                    v["trees"] = json!(set.iter().map(|&i| cs.trees[i].indices()).collect::<Vec<_>>());
                    v
                })
                .collect();
            json!({"count": chambers.len(), "chambers": chambers})
        }
        Command::ReferenceThetas { quiver } => {
            let cs = cone_system(&load(&quiver)?)?;
            json!(reference_thetas(&cs).iter().map(|w| &w.0).collect::<Vec<_>>())
        }
        Command::SameChamber { quiver, theta, theta2 } => {
            let q = load(&quiver)?;
            json!(same_chamber(&Weight(theta.0), &Weight(theta2.0), &q)?)
        }
        Command::FlowPolytope { quiver, theta, format } => {
            let q = load(&quiver)?;
            let theta = theta_or_default(&q, &theta);
            match format {
                FlowFormat::Ambient => json!(flow_polytope_vertices(&theta, &q)?
                    .iter()
                    .map(|f| &f.0)
                    .collect::<Vec<_>>()),
                FlowFormat::Tree(tree) => {
                    let tree = tree.map(ArrowSubset::new);
                    let basis = basis_for_flow_polytope(tree.as_ref(), &q)?;
                    let points = flow_polytope_in_tree_basis(&theta, &q, Some(&basis.tree))?;
                    let lattice = flow_polytope(&theta, &q, Some(&basis.tree))?.lattice_data()?;
                    json!({
                        "tree": basis.tree.indices(),
                        "vertices": points,
                        "latticeData": lattice.to_json(),
                    })
                }
            }
        }
        Command::Basis { quiver, tree } => {
            let q = load(&quiver)?;
            let tree = to_subset(tree);
            let b = basis_for_flow_polytope(tree.as_ref(), &q)?;
            json!({
                "tree": b.tree.indices(),
                "nonTree": b.non_tree,
                "matrix": b.matrix(q.arrow_count()),
            })
        }
        Command::Reflexive { quiver, theta } => {
            let q = load(&quiver)?;
            json!(is_flow_polytope_reflexive(&theta_or_default(&q, &theta), &q)?)
        }
        Command::Dot { quiver } => json!(load(&quiver)?.to_dot()),
        Command::PlotData { kind } => match kind {
            PlotKind::Cone { quiver } => plot::cone(&cone_of_weights(&load(&quiver)?)?)?,
            PlotKind::Chambers { quiver } => plot::chambers(&cone_system(&load(&quiver)?)?)?,
            PlotKind::Polytope { quiver, theta, tree } => {
                let q = load(&quiver)?;
                let tree = to_subset(tree);
                plot::polytope(&flow_polytope(&theta_or_default(&q, &theta), &q, tree.as_ref())?)?
            }
        },
    })
}
