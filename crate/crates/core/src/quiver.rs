//! The toric quiver data model: arrows with an integral flow and the weight
//! the flow induces through the incidence map.

use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

impl Arrow {
    pub fn new(tail: usize, head: usize) -> Self {
        Self { tail, head }
    }
}

/// Integer weight on vertices. Weights handed to stability and geometry
/// routines must be balanced (sum zero); see [`Weight::check_balanced`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn check_balanced(&self) -> Result<()> {
        match self.sum() {
            0 => Ok(()),
            sum => Err(Error::WeightNotBalanced { sum }),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, t: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * t).collect())
    }

    /// Sum of the entries on a vertex set given as a bitmask.
    pub fn mass(&self, vertices: u64) -> i64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| vertices >> i & 1 == 1)
            .map(|(_, x)| x)
            .sum()
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

/// Integer value per arrow. Regular when every entry is non-negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Flow(pub Vec<i64>);

impl Flow {
    pub fn ones(n: usize) -> Self {
        Flow(vec![1; n])
    }

    pub fn zeros(n: usize) -> Self {
        Flow(vec![0; n])
    }

    pub fn is_regular(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<i64>> for Flow {
    fn from(v: Vec<i64>) -> Self {
        Flow(v)
    }
}

/// Strictly increasing list of arrow indices into some parent quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArrowSubset(Vec<usize>);

impl ArrowSubset {
    /// Sorts and deduplicates.
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self(indices)
    }

    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn validate(&self, arrow_count: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i >= arrow_count) {
            Some(&index) => Err(Error::IndexOutOfRange {
                what: "arrow",
                index,
                limit: arrow_count,
            }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for ArrowSubset {
    fn from(v: Vec<usize>) -> Self {
        ArrowSubset::new(v)
    }
}

impl fmt::Display for ArrowSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// How the flow of a freshly built quiver is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowSpec {
    Ones,
    /// Independent uniform integers in `[0, 100)`; `None` uses seed 0.
    Random(Option<u64>),
    Explicit(Vec<i64>),
}

pub const DEFAULT_RANDOM_SEED: u64 = 0;

/// Acyclic (by construction for the built-in families) quiver with ordered
/// arrows and an integral flow. The weight is always `inc(flow)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ToricQuiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    flow: Flow,
    weight: Weight,
}

/// On-disk form: `{"vertices": n, "arrows": [[t,h],...], "flow": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
    pub flow: Vec<i64>,
}

impl ToricQuiver {
    /// Builds a quiver from `(tail, head)` pairs; vertex labels must be
    /// exactly `0..n`.
    pub fn build(edges: &[(usize, usize)], flow: FlowSpec) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        let n = edges.iter().map(|&(t, h)| t.max(h)).max().expect("non-empty") + 1;
        let mut used = vec![false; n];
        for (arrow, &(t, h)) in edges.iter().enumerate() {
            if t == h {
                return Err(Error::SelfLoop { arrow, vertex: t });
            }
            used[t] = true;
            used[h] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(Error::VertexGap { expected: n, missing });
        }
        let arrows: Vec<Arrow> = edges.iter().map(|&(t, h)| Arrow::new(t, h)).collect();
        let flow = match flow {
            FlowSpec::Ones => Flow::ones(arrows.len()),
            FlowSpec::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(DEFAULT_RANDOM_SEED));
                Flow((0..arrows.len()).map(|_| rng.gen_range(0..100)).collect())
            }
            FlowSpec::Explicit(v) => {
                if v.len() != arrows.len() {
                    return Err(Error::LengthMismatch {
                        expected: arrows.len(),
                        actual: v.len(),
                    });
                }
                Flow(v)
            }
        };
        Ok(Self::from_parts(n, arrows, flow))
    }

    /// Unchecked constructor used by derived quivers (merges, views,
    /// contractions). Vertex count may exceed the largest label.
    pub(crate) fn from_parts(vertex_count: usize, arrows: Vec<Arrow>, flow: Flow) -> Self {
        let weight = inc_raw(vertex_count, &arrows, &flow.0);
        Self {
            vertex_count,
            arrows,
            flow,
            weight,
        }
    }

    /// Orients every edge `{i, j}` from the smaller label to the larger one.
    pub fn from_undirected(edges: &[(usize, usize)], flow: FlowSpec) -> Result<Self> {
        let oriented: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(i, j)| if i <= j { (i, j) } else { (j, i) })
            .collect();
        Self::build(&oriented, flow)
    }

    pub fn complete_graph(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NonPositiveArgument {
                name: "n - 1",
                value: n as i64 - 1,
            });
        }
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::from_undirected(&edges, FlowSpec::Ones)
    }

    pub fn bipartite(r: i64, n: i64) -> Result<Self> {
        positive("r", r)?;
        positive("n", n)?;
        let (r, n) = (r as usize, n as usize);
        let edges: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..n).map(move |j| (i, r + j))).collect();
        Self::build(&edges, FlowSpec::Ones)
    }

    /// `a` arrows 0→1, then `c` arrows 1→2, then `b` arrows 0→2.
    pub fn three_vertex(a: i64, b: i64, c: i64) -> Result<Self> {
        positive("a", a)?;
        positive("b", b)?;
        positive("c", c)?;
        let mut edges = Vec::new();
        edges.extend(std::iter::repeat_n((0, 1), a as usize));
        edges.extend(std::iter::repeat_n((1, 2), c as usize));
        edges.extend(std::iter::repeat_n((0, 2), b as usize));
        Self::build(&edges, FlowSpec::Ones)
    }

    pub fn chain(multiplicities: &[i64]) -> Result<Self> {
        if multiplicities.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        let mut edges = Vec::new();
        for (i, &m) in multiplicities.iter().enumerate() {
            positive("multiplicity", m)?;
            edges.extend(std::iter::repeat_n((i, i + 1), m as usize));
        }
        Self::build(&edges, FlowSpec::Ones)
    }

    /// Same vertices and arrows with a new flow; the weight is recomputed.
    pub fn with_flow(&self, flow: Flow) -> Result<Self> {
        if flow.len() != self.arrows.len() {
            return Err(Error::LengthMismatch {
                expected: self.arrows.len(),
                actual: flow.len(),
            });
        }
        Ok(Self::from_parts(self.vertex_count, self.arrows.clone(), flow))
    }

    /// Disjoint union with `v2` glued onto `v1`. Surviving vertices of `q2`
    /// are appended in increasing order of their original label.
    pub fn merge_on_vertex(q1: &Self, v1: usize, q2: &Self, v2: usize) -> Result<Self> {
        check_vertex(v1, q1.vertex_count)?;
        check_vertex(v2, q2.vertex_count)?;
        let map = |v: usize| -> usize {
            match v.cmp(&v2) {
                std::cmp::Ordering::Equal => v1,
                std::cmp::Ordering::Less => q1.vertex_count + v,
                std::cmp::Ordering::Greater => q1.vertex_count + v - 1,
            }
        };
        let mut arrows = q1.arrows.clone();
        arrows.extend(q2.arrows.iter().map(|a| Arrow::new(map(a.tail), map(a.head))));
        let mut flow = q1.flow.0.clone();
        flow.extend(&q2.flow.0);
        Ok(Self::from_parts(
            q1.vertex_count + q2.vertex_count - 1,
            arrows,
            Flow(flow),
        ))
    }

    /// Glues arrow `a2` of `q2` onto arrow `a1` of `q1` (tails together,
    /// heads together) and keeps only `q1`'s copy of the fused arrow.
    pub fn merge_on_arrow(q1: &Self, a1: usize, q2: &Self, a2: usize) -> Result<Self> {
        check_arrow(a1, q1.arrows.len())?;
        check_arrow(a2, q2.arrows.len())?;
        let x = q1.arrows[a1];
        let y = q2.arrows[a2];
        let mut map = vec![usize::MAX; q2.vertex_count];
        map[y.tail] = x.tail;
        map[y.head] = x.head;
        let mut next = q1.vertex_count;
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        let mut arrows = q1.arrows.clone();
        let mut flow = q1.flow.0.clone();
        for (i, a) in q2.arrows.iter().enumerate() {
            if i == a2 {
                continue;
            }
            arrows.push(Arrow::new(map[a.tail], map[a.head]));
            flow.push(q2.flow.0[i]);
        }
        Ok(Self::from_parts(next, arrows, Flow(flow)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> Arrow {
        self.arrows[i]
    }

    pub fn flow(&self) -> &Flow {
        &self.flow
    }

    /// `inc(flow)`, the weight the quiver carries.
    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// `|Q0| x |Q1|` matrix with +1 at (head, arrow), -1 at (tail, arrow).
    pub fn incidence_matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.arrows.len()]; self.vertex_count];
        for (j, a) in self.arrows.iter().enumerate() {
            m[a.head][j] += 1;
            m[a.tail][j] -= 1;
        }
        m
    }

    /// Column `j` of the incidence matrix.
    pub fn incidence_column(&self, j: usize) -> Vec<i64> {
        let mut c = vec![0; self.vertex_count];
        c[self.arrows[j].head] += 1;
        c[self.arrows[j].tail] -= 1;
        c
    }

    /// Inflow minus outflow at every vertex.
    pub fn inc(&self, flow: &Flow) -> Result<Weight> {
        if flow.len() != self.arrows.len() {
            return Err(Error::LengthMismatch {
                expected: self.arrows.len(),
                actual: flow.len(),
            });
        }
        Ok(inc_raw(self.vertex_count, &self.arrows, &flow.0))
    }

    /// `inc(1)`.
    pub fn canonical_weight(&self) -> Weight {
        inc_raw(self.vertex_count, &self.arrows, &vec![1; self.arrows.len()])
    }

    pub fn check_weight(&self, theta: &Weight) -> Result<()> {
        if theta.len() != self.vertex_count {
            return Err(Error::LengthMismatch {
                expected: self.vertex_count,
                actual: theta.len(),
            });
        }
        theta.check_balanced()
    }

    /// A flow with `inc(flow) = theta`, supported on the lexicographically
    /// smallest spanning forest of `support` (all arrows when `None`).
    /// Tree-supported solutions are unique, so the result is integral.
    pub fn inc_inverse(&self, theta: &Weight, support: Option<&ArrowSubset>) -> Result<Flow> {
        self.check_weight(theta)?;
        let support = match support {
            Some(s) => {
                s.validate(self.arrows.len())?;
                s.clone()
            }
            None => ArrowSubset::full(self.arrows.len()),
        };
        let forest = self.greedy_forest(support.indices());
        self.solve_on_forest(theta, &forest).ok_or(Error::Infeasible)
    }

    /// Arrows chosen greedily in index order, skipping any that would close
    /// an undirected cycle. Yields the lexicographically smallest spanning
    /// forest of the arrows offered.
    pub(crate) fn greedy_forest(&self, candidates: &[usize]) -> Vec<usize> {
        let mut dsu = Dsu::new(self.vertex_count);
        candidates
            .iter()
            .copied()
            .filter(|&j| dsu.union(self.arrows[j].tail, self.arrows[j].head))
            .collect()
    }

    /// Unique flow supported on the forest with `inc = theta`, by peeling
    /// leaves. `None` when some component carries non-zero total demand.
    pub(crate) fn solve_on_forest(&self, theta: &Weight, forest: &[usize]) -> Option<Flow> {
        let n = self.vertex_count;
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &j in forest {
            incident[self.arrows[j].tail].push(j);
            incident[self.arrows[j].head].push(j);
        }
        let mut degree: Vec<usize> = incident.iter().map(Vec::len).collect();
        let mut used = vec![false; self.arrows.len()];
        let mut demand = theta.0.clone();
        let mut flow = vec![0i64; self.arrows.len()];
        let mut leaves: VecDeque<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        while let Some(v) = leaves.pop_front() {
            if degree[v] != 1 {
                continue;
            }
            let j = *incident[v].iter().find(|&&j| !used[j]).expect("leaf has an arrow");
            used[j] = true;
            let a = self.arrows[j];
            let other = if a.head == v { a.tail } else { a.head };
            // inflow at the head, outflow at the tail
            let value = if a.head == v { demand[v] } else { -demand[v] };
            flow[j] = value;
            demand[v] = 0;
            if a.head == v {
                demand[other] += value;
            } else {
                demand[other] -= value;
            }
            degree[v] = 0;
            degree[other] -= 1;
            if degree[other] == 1 {
                leaves.push_back(other);
            }
        }
        if demand.iter().any(|&d| d != 0) {
            return None;
        }
        Some(Flow(flow))
    }

    /// Kahn's algorithm.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.vertex_count];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for a in &self.arrows {
            indeg[a.head] += 1;
            out[a.tail].push(a.head);
        }
        let mut queue: Vec<usize> = (0..self.vertex_count).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        seen == self.vertex_count
    }

    /// Connectivity of the underlying undirected multigraph on all vertices.
    pub fn is_connected(&self) -> bool {
        self.is_connected_on(|_| true)
    }

    /// Connectivity using only the arrows selected by `keep`.
    pub(crate) fn is_connected_on(&self, keep: impl Fn(usize) -> bool) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut dsu = Dsu::new(self.vertex_count);
        let mut components = self.vertex_count;
        for (j, a) in self.arrows.iter().enumerate() {
            if keep(j) && dsu.union(a.tail, a.head) {
                components -= 1;
            }
        }
        components == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn is_spanning_tree(&self, subset: &ArrowSubset) -> bool {
        subset.validate(self.arrows.len()).is_ok()
            && subset.len() + 1 == self.vertex_count
            && self.greedy_forest(subset.indices()).len() == subset.len()
    }

    /// Every spanning tree as a sorted arrow subset, in lexicographic order.
    pub fn spanning_trees(&self) -> Result<Vec<ArrowSubset>> {
        self.require_connected()?;
        let k = self.vertex_count.saturating_sub(1);
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(k);
        let mut dsu = Dsu::new(self.vertex_count);
        self.extend_trees(0, k, &mut chosen, &mut dsu, &mut out, usize::MAX)?;
        Ok(out)
    }

    /// As [`Self::spanning_trees`] but fails with `TooManyTrees` beyond `cap`.
    pub fn spanning_trees_capped(&self, cap: usize) -> Result<Vec<ArrowSubset>> {
        self.require_connected()?;
        let k = self.vertex_count.saturating_sub(1);
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(k);
        let mut dsu = Dsu::new(self.vertex_count);
        self.extend_trees(0, k, &mut chosen, &mut dsu, &mut out, cap)?;
        Ok(out)
    }

    fn extend_trees(
        &self,
        start: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        dsu: &mut Dsu,
        out: &mut Vec<ArrowSubset>,
        cap: usize,
    ) -> Result<()> {
        if chosen.len() == k {
            if out.len() == cap {
                return Err(Error::TooManyTrees { count: cap + 1, cap });
            }
            out.push(ArrowSubset(chosen.clone()));
            return Ok(());
        }
        let remaining = k - chosen.len();
        for j in start..self.arrows.len() {
            if self.arrows.len() - j < remaining {
                break;
            }
            let a = self.arrows[j];
            let snapshot = dsu.clone();
            if dsu.union(a.tail, a.head) {
                chosen.push(j);
                self.extend_trees(j + 1, k, chosen, dsu, out, cap)?;
                chosen.pop();
                *dsu = snapshot;
            }
        }
        Ok(())
    }

    /// Lazily enumerates all `2^|Q1|` arrow subsets in lexicographic order
    /// of their sorted index lists.
    pub fn subquivers(&self) -> Subsets {
        Subsets::new(self.arrows.len())
    }

    /// The subquiver `Q^I`: every vertex and arrow kept, flow zeroed off `I`.
    pub fn zeroed_view(&self, subset: &ArrowSubset) -> Result<ToricQuiver> {
        subset.validate(self.arrows.len())?;
        let flow: Vec<i64> = (0..self.arrows.len())
            .map(|j| if subset.contains(j) { self.flow.0[j] } else { 0 })
            .collect();
        Ok(Self::from_parts(self.vertex_count, self.arrows.clone(), Flow(flow)))
    }

    /// The subquiver `Q_I` standing on its own: only the arrows of `I` and
    /// the vertices they touch, relabelled in increasing order. Returns the
    /// quiver and the original label of every new vertex.
    pub fn restricted_view(&self, subset: &ArrowSubset) -> Result<(ToricQuiver, Vec<usize>)> {
        subset.validate(self.arrows.len())?;
        let mut touched: Vec<usize> = subset
            .indices()
            .iter()
            .flat_map(|&j| [self.arrows[j].tail, self.arrows[j].head])
            .collect();
        touched.sort_unstable();
        touched.dedup();
        let relabel = |v: usize| touched.binary_search(&v).expect("touched vertex");
        let arrows: Vec<Arrow> = subset
            .indices()
            .iter()
            .map(|&j| Arrow::new(relabel(self.arrows[j].tail), relabel(self.arrows[j].head)))
            .collect();
        let flow: Vec<i64> = subset.indices().iter().map(|&j| self.flow.0[j]).collect();
        Ok((Self::from_parts(touched.len(), arrows, Flow(flow)), touched))
    }

    pub fn to_file(&self) -> QuiverFile {
        QuiverFile {
            vertices: self.vertex_count,
            arrows: self.arrows.iter().map(|a| [a.tail, a.head]).collect(),
            flow: self.flow.0.clone(),
        }
    }

    pub fn from_file(file: &QuiverFile) -> Result<Self> {
        if file.flow.len() != file.arrows.len() {
            return Err(Error::LengthMismatch {
                expected: file.arrows.len(),
                actual: file.flow.len(),
            });
        }
        for (arrow, &[t, h]) in file.arrows.iter().enumerate() {
            check_vertex(t, file.vertices)?;
            check_vertex(h, file.vertices)?;
            if t == h {
                return Err(Error::SelfLoop { arrow, vertex: t });
            }
        }
        let arrows = file.arrows.iter().map(|&[t, h]| Arrow::new(t, h)).collect();
        Ok(Self::from_parts(file.vertices, arrows, Flow(file.flow.clone())))
    }

    /// Canonical compact JSON (fixed key order, no whitespace).
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("plain data serialises")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: QuiverFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    /// Graphviz digraph, arrows labelled by their flow.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Q {\n");
        for v in 0..self.vertex_count {
            s.push_str(&format!("  {v};\n"));
        }
        for (j, a) in self.arrows.iter().enumerate() {
            s.push_str(&format!("  {} -> {} [label=\"{}\"];\n", a.tail, a.head, self.flow.0[j]));
        }
        s.push_str("}\n");
        s
    }
}

fn inc_raw(n: usize, arrows: &[Arrow], flow: &[i64]) -> Weight {
    let mut w = vec![0i64; n];
    for (a, &f) in arrows.iter().zip(flow) {
        w[a.head] += f;
        w[a.tail] -= f;
    }
    Weight(w)
}

fn positive(name: &'static str, value: i64) -> Result<()> {
    if value >= 1 {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument { name, value })
    }
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            what: "vertex",
            index: v,
            limit: n,
        })
    }
}

fn check_arrow(a: usize, n: usize) -> Result<()> {
    if a < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            what: "arrow",
            index: a,
            limit: n,
        })
    }
}

/// Iterator over all subsets of `0..n` in lexicographic order of their
/// sorted index lists: `{}`, `{0}`, `{0,1}`, ..., `{n-1}`.
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            n,
            current: Some(Vec::new()),
        }
    }
}

impl Iterator for Subsets {
    type Item = ArrowSubset;

    fn next(&mut self) -> Option<ArrowSubset> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let advanced = match next.last().copied() {
            None => {
                next.push(0);
                self.n > 0
            }
            Some(last) if last + 1 < self.n => {
                next.push(last + 1);
                true
            }
            Some(_) => {
                next.pop();
                match next.last_mut() {
                    Some(prev) => {
                        *prev += 1;
                        true
                    }
                    None => false,
                }
            }
        };
        if advanced {
            self.current = Some(next);
        }
        Some(ArrowSubset(cur))
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
