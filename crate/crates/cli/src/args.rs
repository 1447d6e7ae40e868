use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use tsq_core::quiver::ToricQuiver;
use tsq_core::Result;

#[derive(Debug, Parser)]
#[command(
    name = "tsq",
    version,
    about = "Toric quivers: stability, chambers and flow polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

// Where the quiver comes from, plus an optional flow override.
#[derive(Debug, Args)]
pub struct QuiverArgs {
    /// Quiver file: {"vertices": n, "arrows": [[t,h],...], "flow": [...]}
    #[arg(long, value_name = "FILE")]
    pub quiver: Option<PathBuf>,
    /// Built-in family: bipartite:r,n | three-vertex:a,b,c | chain:m1,m2,... | complete:n
    #[arg(long, value_name = "NAME:ARGS", value_parser = parse_family)]
    pub family: Option<Family>,
    /// Replace the flow, e.g. "1,-2,3"
    #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
    pub flow: Option<Ints>,
    /// Replace the flow by random integers in [0, 100)
    #[arg(long)]
    pub random: bool,
    /// Seed for --random (default 0)
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a quiver from a family
    Family {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Also save the quiver file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a quiver from an arrow list such as "0-1,0-2,1-2"
    Build {
        #[arg(long, value_parser = parse_arrows)]
        arrows: ArrowList,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        flow: Option<Ints>,
        #[arg(long)]
        random: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight of the flow, or the incidence matrix with --matrix
    Inc {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long)]
        matrix: bool,
    },
    /// A flow realising the weight, supported on a forest
    IncInverse {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
        /// Restrict the support to these arrows
        #[arg(long, value_parser = parse_indices)]
        support: Option<Indices>,
    },
    /// All spanning trees as arrow index sets
    SpanningTrees {
        #[command(flatten)]
        quiver: QuiverArgs,
    },
    /// Every arrow subset, in lexicographic order
    Subquivers {
        #[command(flatten)]
        quiver: QuiverArgs,
    },
    /// Whether a vertex set is closed under the arrows of a subquiver
    ClosedUnderArrows {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Arrows of the subquiver (default: all)
        #[arg(long, value_parser = parse_indices)]
        subset: Option<Indices>,
        #[arg(long, value_parser = parse_indices)]
        vertices: Indices,
    },
    /// Stability verdict for a subquiver, with a witness when not stable
    Stable {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, value_parser = parse_indices)]
        subset: Option<Indices>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
    },
    /// Same verdict as `stable`
    Semistable {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, value_parser = parse_indices)]
        subset: Option<Indices>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
    },
    /// Maximal unstable subquivers
    MaxUnstable {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
    },
    /// Maximal non-stable subquivers
    MaxNonstable {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
    },
    /// Check or enforce tightness
    Tight {
        #[command(subcommand)]
        action: TightAction,
    },
    /// Spanning trees whose supported flow is regular and stable
    StableTrees {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
    },
    /// The cone of weights
    Cone {
        #[command(flatten)]
        quiver: QuiverArgs,
    },
    /// Potential walls with their types
    Walls {
        #[command(flatten)]
        quiver: QuiverArgs,
    },
    /// The chamber system inside the cone of weights
    Chambers {
        #[command(flatten)]
        quiver: QuiverArgs,
    },
    /// One interior weight per chamber
    ReferenceThetas {
        #[command(flatten)]
        quiver: QuiverArgs,
    },
    /// Whether two weights lie in the same chamber
    SameChamber {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Ints,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta2: Ints,
    },
    /// Vertices of the flow polytope
    FlowPolytope {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
        /// "ambient", "tree" or "tree:<arrow indices>"
        #[arg(long, default_value = "ambient", value_parser = parse_format)]
        format: FlowFormat,
    },
    /// Cycle basis attached to a spanning tree
    Basis {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, value_parser = parse_indices)]
        tree: Option<Indices>,
    },
    /// Whether the flow polytope is reflexive
    Reflexive {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
    },
    /// Graphviz source
    Dot {
        #[command(flatten)]
        quiver: QuiverArgs,
    },
    /// Points and edges for 2D/3D figures
    PlotData {
        #[command(subcommand)]
        kind: PlotKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum TightAction {
    /// Whether the quiver is tight for the weight
    Check {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
    },
    /// Contract arrows until the quiver is tight
    Make {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PlotKind {
    /// Rays and 2-faces of the cone of weights
    Cone {
        #[command(flatten)]
        quiver: QuiverArgs,
    },
    /// Vertices and edges of the flow polytope in a tree basis
    Polytope {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        theta: Option<Ints>,
        #[arg(long, value_parser = parse_indices)]
        tree: Option<Indices>,
    },
    /// Rays of every chamber
    Chambers {
        #[command(flatten)]
        quiver: QuiverArgs,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Bipartite(i64, i64),
    ThreeVertex(i64, i64, i64),
    Chain(Vec<i64>),
    Complete(usize),
}

impl Family {
    pub fn build(&self) -> Result<ToricQuiver> {
        match self {
            Family::Bipartite(r, n) => ToricQuiver::bipartite(*r, *n),
            Family::ThreeVertex(a, b, c) => ToricQuiver::three_vertex(*a, *b, *c),
            Family::Chain(m) => ToricQuiver::chain(m),
            Family::Complete(n) => ToricQuiver::complete_graph(*n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowFormat {
    Ambient,
    Tree(Option<Vec<usize>>),
}

/// Comma-separated integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ints(pub Vec<i64>);

/// Comma-separated indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indices(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowList(pub Vec<(usize, usize)>);

fn parse_ints(s: &str) -> Result<Ints, String> {
    parse_i64_list(s).map(Ints)
}

fn parse_indices(s: &str) -> Result<Indices, String> {
    parse_usize_list(s).map(Indices)
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| format!("not an integer: {x:?}")))
        .collect()
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("not an index: {x:?}")))
        .collect()
}

fn parse_family(s: &str) -> Result<Family, String> {
    let (name, args) = s.split_once(':').ok_or("expected <name>:<args>")?;
    let nums = parse_i64_list(args)?;
    let arity = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(format!("family {name} takes {k} arguments, got {}", nums.len()))
        }
    };
    match name {
        "bipartite" => arity(2).map(|_| Family::Bipartite(nums[0], nums[1])),
        "three-vertex" => arity(3).map(|_| Family::ThreeVertex(nums[0], nums[1], nums[2])),
        "chain" => Ok(Family::Chain(nums)),
        "complete" => {
            arity(1)?;
            usize::try_from(nums[0])
                .map(Family::Complete)
                .map_err(|_| format!("complete:n needs n >= 0, got {}", nums[0]))
        }
        _ => Err(format!(
            "unknown family {name:?}; expected bipartite, three-vertex, chain or complete"
        )),
    }
}

fn parse_arrows(s: &str) -> Result<ArrowList, String> {
    s.split(',')
        .map(|pair| {
            let (t, h) = pair
                .trim()
                .split_once('-')
                .ok_or_else(|| format!("expected <tail>-<head>, got {pair:?}"))?;
            let t = t.trim().parse().map_err(|_| format!("bad tail in {pair:?}"))?;
            let h = h.trim().parse().map_err(|_| format!("bad head in {pair:?}"))?;
            Ok((t, h))
        })
        .collect::<Result<_, String>>()
        .map(ArrowList)
}

fn parse_format(s: &str) -> Result<FlowFormat, String> {
    match s {
        "ambient" => Ok(FlowFormat::Ambient),
        "tree" => Ok(FlowFormat::Tree(None)),
        _ => match s.strip_prefix("tree:") {
            Some(rest) => Ok(FlowFormat::Tree(Some(parse_usize_list(rest)?))),
            None => Err(format!("expected ambient, tree or tree:<indices>, got {s:?}")),
        },
    }
}
