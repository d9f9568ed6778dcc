//! Brute-force reference implementations. They share no code with the
//! library beyond the graph container: every vertex sequence is tried and
//! filtered, and the reference search visits every labeled graph with every
//! matching partition.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rainbow_core::rainbow::{RainbowWitness, WitnessKind};
use rainbow_core::EdgeColoredGraph;

fn color_map(g: &EdgeColoredGraph) -> HashMap<(usize, usize), usize> {
    g.edges().iter().map(|e| ((e.u, e.v), e.color)).collect()
}

fn col(map: &HashMap<(usize, usize), usize>, a: usize, b: usize) -> Option<usize> {
    map.get(&(a.min(b), a.max(b))).copied()
}

/// Every sequence of `k` distinct vertices.
fn sequences(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn all_distinct(xs: &[usize]) -> bool {
    let set: BTreeSet<_> = xs.iter().collect();
    set.len() == xs.len()
}

/// Colors along `vs`, closing the loop when `closed`; `None` if a hop is missing.
fn walk_colors(
    map: &HashMap<(usize, usize), usize>,
    vs: &[usize],
    closed: bool,
) -> Option<Vec<usize>> {
    let hops = if closed { vs.len() } else { vs.len() - 1 };
    (0..hops)
        .map(|i| col(map, vs[i], vs[(i + 1) % vs.len()]))
        .collect()
}

pub fn naive_paths(g: &EdgeColoredGraph, len: usize) -> BTreeSet<RainbowWitness> {
    let map = color_map(g);
    let mut out = BTreeSet::new();
    for mut vs in sequences(g.n(), len + 1) {
        let Some(mut cs) = walk_colors(&map, &vs, false) else {
            continue;
        };
        if !all_distinct(&cs) {
            continue;
        }
        if vs[0] > vs[len] {
            vs.reverse();
            cs.reverse();
        }
        out.insert(RainbowWitness {
            kind: WitnessKind::Path,
            vertices: vs,
            colors: cs,
        });
    }
    out
}

pub fn naive_cycles(g: &EdgeColoredGraph, len: usize) -> BTreeSet<RainbowWitness> {
    let map = color_map(g);
    let mut out = BTreeSet::new();
    for vs in sequences(g.n(), len) {
        let Some(cs) = walk_colors(&map, &vs, true) else {
            continue;
        };
        if !all_distinct(&cs) {
            continue;
        }
        // Rotate the minimum vertex to the front, then pick the direction
        // whose second vertex is smaller than the last.
        let m = (0..len).min_by_key(|&i| vs[i]).unwrap();
        let mut r: Vec<usize> = (0..len).map(|i| vs[(m + i) % len]).collect();
        if r[1] > r[len - 1] {
            r[1..].reverse();
        }
        let cs = walk_colors(&map, &r, true).unwrap();
        out.insert(RainbowWitness {
            kind: WitnessKind::Cycle,
            vertices: r,
            colors: cs,
        });
    }
    out
}

pub fn naive_has_path(g: &EdgeColoredGraph, len: usize) -> bool {
    let map = color_map(g);
    sequences(g.n(), len + 1)
        .iter()
        .any(|vs| walk_colors(&map, vs, false).is_some_and(|cs| all_distinct(&cs)))
}

pub fn naive_cycle_count(g: &EdgeColoredGraph, len: usize) -> u64 {
    naive_cycles(g, len).len() as u64
}

/// Exact optima over every labeled graph on `n` vertices and every partition
/// of its edges into matchings.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Reference {
    pub max_edges: u64,
    pub max_cycles: u64,
    /// Best cycle count per exact number of colors; absent if infeasible.
    pub max_cycles_by_colors: BTreeMap<usize, u64>,
    /// Canonical keys of all max-edge optima.
    pub edge_optima: BTreeSet<String>,
    pub cycle_optima: BTreeSet<String>,
}

pub fn reference_search(n: usize, ell: usize) -> Reference {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut best = Reference::default();
    let mut edge_opt: Vec<EdgeColoredGraph> = Vec::new();
    let mut cycle_opt: Vec<EdgeColoredGraph> = Vec::new();

    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        for classes in matching_partitions(&edges) {
            let g = EdgeColoredGraph::build(
                n,
                edges.iter().zip(&classes).map(|(&(u, v), &c)| (u, v, c)),
            )
            .unwrap();
            if naive_has_path(&g, ell) {
                continue;
            }
            let m = edges.len() as u64;
            if m > best.max_edges {
                best.max_edges = m;
                edge_opt.clear();
            }
            if m == best.max_edges {
                edge_opt.push(g.clone());
            }
            if ell >= 3 {
                let c = naive_cycle_count(&g, ell);
                if c > best.max_cycles {
                    best.max_cycles = c;
                    cycle_opt.clear();
                }
                if c == best.max_cycles {
                    cycle_opt.push(g.clone());
                }
                let k = g.color_count();
                if k > 0 {
                    let e = best.max_cycles_by_colors.entry(k).or_insert(0);
                    *e = (*e).max(c);
                }
            }
        }
    }
    let keys = |gs: &[EdgeColoredGraph]| {
        gs.iter()
            .map(|g| g.canonical_key().unwrap().to_string())
            .collect()
    };
    best.edge_optima = keys(&edge_opt);
    best.cycle_optima = keys(&cycle_opt);
    best
}

/// Restricted growth strings over `edges` whose classes are matchings:
/// each proper coloring up to color renaming, exactly once.
pub fn matching_partitions(edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn rec(
        edges: &[(usize, usize)],
        cur: &mut Vec<usize>,
        classes: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = cur.len();
        if i == edges.len() {
            out.push(cur.clone());
            return;
        }
        let (u, v) = edges[i];
        for c in 0..=classes {
            let clash = (0..i).any(|j| {
                cur[j] == c && {
                    let (a, b) = edges[j];
                    a == u || a == v || b == u || b == v
                }
            });
            if !clash {
                cur.push(c);
                rec(edges, cur, classes.max(c + 1), out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(edges, &mut Vec::new(), 0, &mut out);
    out
}
