//! Exhaustive search for extremal rainbow-`P_ell`-free properly colored graphs.
//!
//! The search space is the set of pairs (graph on `n` labeled vertices,
//! partition of its edges into matchings), taken up to vertex relabeling.
//! Working with partitions instead of colorings removes color-name symmetry:
//! an extension either reuses a color class or opens exactly one new class.
//!
//! Both properness and rainbow-`P_ell`-freeness are inherited by subgraphs, so
//! every feasible graph is reachable from the empty graph by adding feasible
//! edges one at a time. The search is a DFS over such extensions; a child is
//! expanded only the first time its canonical form is seen.
//!
//! A node is cut when an upper bound over all of its feasible supergraphs is
//! strictly below the incumbent. Strict comparison means every optimum is
//! still visited, which makes the reported witness (the optimum with the
//! smallest canonical key) independent of visiting order and thread count.
//! Bounds, where `R` is the number of vertex pairs that can still receive an
//! edge (this set only shrinks as edges are added):
//!
//! * edges: `m + R`;
//! * rainbow cycles: current count plus, for each addable pair, a cap on the
//!   cycles through that pair. The cap is the number of ordered inner vertex
//!   sequences, tightened by the `(k-1)!/(k-ell)!` per-edge bound for `k`
//!   colors. With `degree_cap` on, a pair with an endpoint already at degree
//!   `2 ell - 3` contributes nothing (such a vertex cannot lie on a rainbow
//!   `ell`-cycle once it gains another edge) and the cap is further limited to
//!   `(2 ell - 3)^(ell - 2)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use dashmap::DashSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colored_graph::{canonical_order, CanonicalKey, EdgeColoredGraph};
use crate::error::{Error, Result};
use crate::format::write_graph_file;
use crate::rainbow::{count_rainbow_cycles, has_rainbow_path};

/// Largest `n` the exhaustive search accepts.
pub const MAX_N: usize = 10;
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

const NO_EDGE: u16 = u16::MAX;
const PARALLEL_DEPTH: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MaxEdges,
    MaxRainbowCycles,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pruning {
    /// Deduplicate by canonical form; when off, only identical labeled
    /// partitions are merged.
    pub isomorph_rejection: bool,
    pub capacity_bound: bool,
    pub degree_cap: bool,
}

impl Pruning {
    pub const ALL: Pruning = Pruning {
        isomorph_rejection: true,
        capacity_bound: true,
        degree_cap: true,
    };
    pub const NONE: Pruning = Pruning {
        isomorph_rejection: false,
        capacity_bound: false,
        degree_cap: false,
    };
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning::ALL
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchProblem {
    pub n: usize,
    pub ell: usize,
    pub objective: Objective,
    /// Only graphs using exactly this many colors count.
    pub colors: Option<usize>,
    pub all_optima: bool,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
    pub pruning: Pruning,
}

impl SearchProblem {
    pub fn new(n: usize, ell: usize, objective: Objective) -> Self {
        SearchProblem {
            n,
            ell,
            objective,
            colors: None,
            all_optima: false,
            threads: None,
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget: None,
            pruning: Pruning::ALL,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 || self.n > MAX_N {
            return Err(Error::ParameterOutOfRange {
                name: "n",
                value: self.n,
                min: 2,
                max: MAX_N,
            });
        }
        let min_ell = match self.objective {
            Objective::MaxEdges => 1,
            Objective::MaxRainbowCycles => 3,
        };
        if self.ell < min_ell || self.ell > crate::rainbow::MAX_LENGTH {
            return Err(Error::LengthOutOfRange {
                length: self.ell,
                min: min_ell,
                max: crate::rainbow::MAX_LENGTH,
            });
        }
        if let Some(k) = self.colors {
            let max = self.n * (self.n - 1) / 2;
            if k == 0 || k > max {
                return Err(Error::ParameterOutOfRange {
                    name: "colors",
                    value: k,
                    min: 1,
                    max,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_visited: u64,
    pub isomorph_rejections: u64,
    pub infeasible_extensions: u64,
    pub pruned_by_bound: u64,
    pub wall_time_ms: u64,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub ell: usize,
    pub objective: Objective,
    pub colors: Option<usize>,
    pub value: u64,
    /// An optimum with the smallest canonical key, canonically labeled.
    /// `None` only when no graph satisfies an exact color count.
    pub witness: Option<EdgeColoredGraph>,
    pub witness_key: Option<CanonicalKey>,
    /// Every optimum (canonically labeled, sorted by key) when requested.
    pub optima: Vec<EdgeColoredGraph>,
    pub exhaustive: bool,
    pub stats: SearchStats,
}

impl ExtremalResult {
    /// Full JSON document including run statistics.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }

    /// JSON without `stats`; identical for identical inputs regardless of
    /// thread count.
    pub fn outcome_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("result serializes");
        v.as_object_mut().expect("object").remove("stats");
        v.to_string()
    }

    pub fn witness_text(&self) -> Option<String> {
        self.witness.as_ref().map(write_graph_file)
    }
}

/// Dense search node: color matrix plus per-vertex color masks.
#[derive(Clone, Debug)]
struct Node {
    n: usize,
    matrix: Vec<u16>,
    at: Vec<u64>,
    degree: Vec<usize>,
    colors: usize,
    edges: usize,
    cycles: u64,
}

impl Node {
    fn empty(n: usize) -> Self {
        Node {
            n,
            matrix: vec![NO_EDGE; n * n],
            at: vec![0; n],
            degree: vec![0; n],
            colors: 0,
            edges: 0,
            cycles: 0,
        }
    }

    fn color(&self, u: usize, v: usize) -> Option<usize> {
        let c = self.matrix[u * self.n + v];
        (c != NO_EDGE).then_some(c as usize)
    }

    fn add(&mut self, u: usize, v: usize, c: usize) {
        self.matrix[u * self.n + v] = c as u16;
        self.matrix[v * self.n + u] = c as u16;
        self.at[u] |= 1 << c;
        self.at[v] |= 1 << c;
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.edges += 1;
        if c == self.colors {
            self.colors += 1;
        }
    }

    /// Is there a rainbow path with `ell` edges through the edge `u -- v`
    /// of color `c`? The edge must already be present.
    fn path_through(&self, u: usize, v: usize, c: usize, ell: usize) -> bool {
        self.left_arm(u, v, ell - 1, (1 << u) | (1 << v), 1 << c)
    }

    fn left_arm(&self, tip: usize, v: usize, rem: usize, seen: u64, used: u64) -> bool {
        if self.right_arm(v, rem, seen, used) {
            return true;
        }
        if rem == 0 {
            return false;
        }
        (0..self.n).any(|w| {
            seen & (1 << w) == 0
                && self.color(tip, w).is_some_and(|c| {
                    used & (1 << c) == 0
                        && self.left_arm(w, v, rem - 1, seen | (1 << w), used | (1 << c))
                })
        })
    }

    fn right_arm(&self, tip: usize, rem: usize, seen: u64, used: u64) -> bool {
        if rem == 0 {
            return true;
        }
        (0..self.n).any(|w| {
            seen & (1 << w) == 0
                && self.color(tip, w).is_some_and(|c| {
                    used & (1 << c) == 0
                        && self.right_arm(w, rem - 1, seen | (1 << w), used | (1 << c))
                })
        })
    }

    /// Rainbow paths `from -> to` with exactly `rem` edges avoiding `used`.
    fn count_paths(&self, from: usize, to: usize, rem: usize, seen: u64, used: u64) -> u64 {
        if rem == 1 {
            return self
                .color(from, to)
                .map_or(0, |c| (used & (1 << c) == 0) as u64);
        }
        (0..self.n)
            .filter(|&w| w != to && seen & (1 << w) == 0)
            .filter_map(|w| self.color(from, w).map(|c| (w, c)))
            .filter(|&(_, c)| used & (1 << c) == 0)
            .map(|(w, c)| self.count_paths(w, to, rem - 1, seen | (1 << w), used | (1 << c)))
            .sum()
    }

    fn cycles_through(&self, u: usize, v: usize, c: usize, ell: usize) -> u64 {
        self.count_paths(u, v, ell - 1, (1 << u) | (1 << v), 1 << c)
    }

    fn canonical_key(&self) -> Vec<u16> {
        canonical_order(self.n, &self.matrix).0 .0
    }

    /// Labeled form with colors renamed by first appearance.
    fn labeled_key(&self) -> Vec<u16> {
        let mut rename = vec![NO_EDGE; self.colors];
        let mut next = 0;
        let mut key = vec![self.n as u16];
        for j in 1..self.n {
            for i in 0..j {
                key.push(match self.color(i, j) {
                    None => 0,
                    Some(c) => {
                        if rename[c] == NO_EDGE {
                            rename[c] = next;
                            next += 1;
                        }
                        rename[c] + 1
                    }
                });
            }
        }
        key
    }

    fn to_graph(&self) -> EdgeColoredGraph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if let Some(c) = self.color(u, v) {
                    edges.push((u, v, c));
                }
            }
        }
        EdgeColoredGraph::build(self.n, edges).expect("search nodes are valid graphs")
    }
}

fn falling(top: u64, terms: u64) -> u64 {
    if terms > top {
        return 0;
    }
    (0..terms).fold(1u64, |acc, i| acc.saturating_mul(top - i))
}

struct Incumbent {
    value: i64,
    key: Option<Vec<u16>>,
    node: Option<Node>,
    optima: BTreeMap<Vec<u16>, Node>,
}

struct Searcher<'p> {
    p: &'p SearchProblem,
    seen: DashSet<Vec<u16>>,
    incumbent: AtomicI64,
    best: Mutex<Incumbent>,
    nodes: AtomicU64,
    rejections: AtomicU64,
    infeasible: AtomicU64,
    pruned: AtomicU64,
    truncated: AtomicBool,
    started: Instant,
}

impl Searcher<'_> {
    fn key(&self, node: &Node) -> Vec<u16> {
        if self.p.pruning.isomorph_rejection {
            node.canonical_key()
        } else {
            node.labeled_key()
        }
    }

    fn value(&self, node: &Node) -> Option<u64> {
        if self.p.colors.is_some_and(|k| k != node.colors) {
            return None;
        }
        Some(match self.p.objective {
            Objective::MaxEdges => node.edges as u64,
            Objective::MaxRainbowCycles => node.cycles,
        })
    }

    fn record(&self, node: &Node) {
        let Some(value) = self.value(node) else {
            return;
        };
        let value = value as i64;
        if value < self.incumbent.load(Ordering::Acquire) {
            return;
        }
        let key = node.canonical_key();
        let mut best = self.best.lock().expect("incumbent lock");
        if value > best.value {
            best.value = value;
            best.key = Some(key.clone());
            best.node = Some(node.clone());
            best.optima.clear();
        } else if value == best.value && best.key.as_ref().is_none_or(|k| key < *k) {
            best.key = Some(key.clone());
            best.node = Some(node.clone());
        }
        if value == best.value && self.p.all_optima {
            best.optima.entry(key).or_insert_with(|| node.clone());
        }
        self.incumbent.fetch_max(value, Ordering::AcqRel);
    }

    fn out_of_budget(&self) -> bool {
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over = visited > self.p.node_budget
            || self
                .p
                .time_budget
                .is_some_and(|t| self.started.elapsed() > t);
        if over {
            self.truncated.store(true, Ordering::Relaxed);
        }
        over
    }

    /// All feasible one-edge extensions.
    fn children(&self, node: &Node) -> Vec<(usize, usize, Node)> {
        let ell = self.p.ell;
        let palette = match self.p.colors {
            Some(k) => (node.colors + 1).min(k),
            None => node.colors + 1,
        };
        let mut out = Vec::new();
        for u in 0..node.n {
            for v in u + 1..node.n {
                if node.color(u, v).is_some() {
                    continue;
                }
                for c in 0..palette {
                    if (node.at[u] | node.at[v]) & (1 << c) != 0 {
                        continue;
                    }
                    let mut child = node.clone();
                    child.add(u, v, c);
                    if ell < node.n && child.path_through(u, v, c, ell) {
                        self.infeasible.fetch_add(1, Ordering::Relaxed);
                        continue;
                    }
                    if self.p.objective == Objective::MaxRainbowCycles {
                        child.cycles += child.cycles_through(u, v, c, ell);
                    }
                    out.push((u, v, child));
                }
            }
        }
        out
    }

    fn upper_bound(&self, node: &Node, pairs: &BTreeSet<(usize, usize)>) -> Option<i64> {
        let addable = pairs.len();
        if self.p.colors.is_some_and(|k| node.colors + addable < k) {
            return Some(-1);
        }
        if !self.p.pruning.capacity_bound {
            return None;
        }
        match self.p.objective {
            Objective::MaxEdges => Some((node.edges + addable) as i64),
            Objective::MaxRainbowCycles => {
                let ell = self.p.ell as u64;
                let n = node.n as u64;
                let k_max = self.p.colors.unwrap_or(node.colors + addable) as u64;
                let mut cap = falling(n.saturating_sub(2), ell - 2);
                cap = if k_max >= ell {
                    cap.min(falling(k_max - 1, ell - 1))
                } else {
                    0
                };
                let degree_limit = 2 * self.p.ell - 3;
                if self.p.pruning.degree_cap {
                    cap = cap.min((2 * ell - 3).saturating_pow(ell as u32 - 2));
                }
                let extra: u64 = pairs
                    .iter()
                    .filter(|&&(u, v)| {
                        !self.p.pruning.degree_cap
                            || (node.degree[u] < degree_limit && node.degree[v] < degree_limit)
                    })
                    .map(|_| cap)
                    .fold(0u64, u64::saturating_add);
                Some(node.cycles.saturating_add(extra).min(i64::MAX as u64) as i64)
            }
        }
    }

    fn visit(&self, node: Node, depth: usize) {
        if self.truncated.load(Ordering::Relaxed) || self.out_of_budget() {
            return;
        }
        self.record(&node);

        let children = self.children(&node);
        let pairs: BTreeSet<(usize, usize)> = children.iter().map(|&(u, v, _)| (u, v)).collect();
        if let Some(ub) = self.upper_bound(&node, &pairs) {
            if ub < self.incumbent.load(Ordering::Acquire) {
                self.pruned.fetch_add(1, Ordering::Relaxed);
                return;
            }
        }

        let fresh: Vec<Node> = children
            .into_iter()
            .filter_map(|(_, _, child)| {
                if self.seen.insert(self.key(&child)) {
                    Some(child)
                } else {
                    self.rejections.fetch_add(1, Ordering::Relaxed);
                    None
                }
            })
            .collect();

        if depth < PARALLEL_DEPTH {
            fresh.into_par_iter().for_each(|c| self.visit(c, depth + 1));
        } else {
            for c in fresh {
                self.visit(c, depth + 1);
            }
        }
    }
}

/// Runs the exhaustive search. The returned witness is re-verified through
/// the enumeration API, independently of the incremental search state.
pub fn solve(p: &SearchProblem) -> Result<ExtremalResult> {
    p.validate()?;
    match p.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .expect("thread pool");
            pool.install(|| run(p, t.max(1)))
        }
        None => run(p, rayon::current_num_threads()),
    }
}

fn run(p: &SearchProblem, threads: usize) -> Result<ExtremalResult> {
    let searcher = Searcher {
        p,
        seen: DashSet::new(),
        incumbent: AtomicI64::new(-1),
        best: Mutex::new(Incumbent {
            value: -1,
            key: None,
            node: None,
            optima: BTreeMap::new(),
        }),
        nodes: AtomicU64::new(0),
        rejections: AtomicU64::new(0),
        infeasible: AtomicU64::new(0),
        pruned: AtomicU64::new(0),
        truncated: AtomicBool::new(false),
        started: Instant::now(),
    };
    let root = Node::empty(p.n);
    searcher.seen.insert(searcher.key(&root));
    searcher.visit(root, 0);

    let stats = SearchStats {
        nodes_visited: searcher.nodes.load(Ordering::Relaxed).min(p.node_budget),
        isomorph_rejections: searcher.rejections.load(Ordering::Relaxed),
        infeasible_extensions: searcher.infeasible.load(Ordering::Relaxed),
        pruned_by_bound: searcher.pruned.load(Ordering::Relaxed),
        wall_time_ms: searcher.started.elapsed().as_millis() as u64,
        threads,
    };
    let exhaustive = !searcher.truncated.load(Ordering::Relaxed);
    let best = searcher.best.into_inner().expect("incumbent lock");

    let (witness, witness_key) = match &best.node {
        Some(node) => {
            let (key, graph) = node.to_graph().canonical_form()?;
            verify_witness(p, &graph, best.value as u64)?;
            (Some(graph), Some(key))
        }
        None => (None, None),
    };
    let optima = best
        .optima
        .values()
        .map(|node| {
            let graph = node.to_graph().canonical_form()?.1;
            verify_witness(p, &graph, best.value as u64)?;
            Ok(graph)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ExtremalResult {
        n: p.n,
        ell: p.ell,
        objective: p.objective,
        colors: p.colors,
        value: best.value.max(0) as u64,
        witness,
        witness_key,
        optima,
        exhaustive,
        stats,
    })
}

fn verify_witness(p: &SearchProblem, g: &EdgeColoredGraph, value: u64) -> Result<()> {
    if !g.is_properly_colored() {
        return Err(Error::WitnessRejected("coloring is not proper".into()));
    }
    if has_rainbow_path(g, p.ell)? {
        return Err(Error::WitnessRejected(format!(
            "contains a rainbow path with {} edges",
            p.ell
        )));
    }
    if p.colors.is_some_and(|k| k != g.color_count()) {
        return Err(Error::WitnessRejected("wrong number of colors".into()));
    }
    let actual = match p.objective {
        Objective::MaxEdges => g.edge_count() as u64,
        Objective::MaxRainbowCycles => count_rainbow_cycles(g, p.ell)?,
    };
    if actual != value {
        return Err(Error::WitnessRejected(format!(
            "objective is {actual}, search reported {value}"
        )));
    }
    Ok(())
}

/// Whether the witness (and every stored optimum) is `d`-regular.
pub fn verify_extremal_regularity(r: &ExtremalResult, d: usize) -> Result<bool> {
    if !r.exhaustive {
        return Err(Error::NotExhaustive);
    }
    let Some(w) = &r.witness else {
        return Ok(false);
    };
    Ok(w.is_regular(d) && r.optima.iter().all(|g| g.is_regular(d)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorProbeRow {
    pub colors: usize,
    /// Best rainbow cycle count over graphs with exactly `colors` colors;
    /// `None` if no rainbow-`P_ell`-free graph uses that many.
    pub max_cycles: Option<u64>,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorProbe {
    pub n: usize,
    pub ell: usize,
    pub rows: Vec<ColorProbeRow>,
    /// False when any row was cut short by a budget.
    pub complete: bool,
}

/// Maximum rainbow `ell`-cycle count per exact number of colors `k`,
/// for `k = 1..=n(n-1)/2`. `base` supplies budgets, threads and pruning.
pub fn probe_color_count(n: usize, ell: usize, base: &SearchProblem) -> Result<ColorProbe> {
    let mut rows = Vec::new();
    for k in 1..=n * (n - 1) / 2 {
        let p = SearchProblem {
            n,
            ell,
            objective: Objective::MaxRainbowCycles,
            colors: Some(k),
            all_optima: false,
            ..base.clone()
        };
        let r = solve(&p)?;
        rows.push(ColorProbeRow {
            colors: k,
            max_cycles: r.witness.is_some().then_some(r.value),
            exhaustive: r.exhaustive,
        });
    }
    let complete = rows.iter().all(|r| r.exhaustive);
    Ok(ColorProbe {
        n,
        ell,
        rows,
        complete,
    })
}
