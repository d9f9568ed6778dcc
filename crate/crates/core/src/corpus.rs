//! Seeded random corpora of properly colored graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colored_graph::EdgeColoredGraph;
use crate::rainbow::has_rainbow_path;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph with edge density `p`, colored greedily in random edge order
/// with a random free color out of `0..palette`. Edges with no free color
/// are dropped, so the result is always proper.
pub fn random_proper_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    p: f64,
    palette: usize,
) -> EdgeColoredGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    pairs.shuffle(rng);
    let mut used = vec![vec![false; palette]; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        let free: Vec<usize> = (0..palette)
            .filter(|&c| !used[u][c] && !used[v][c])
            .collect();
        if let Some(&c) = free.choose(rng) {
            used[u][c] = true;
            used[v][c] = true;
            edges.push((u, v, c));
        }
    }
    EdgeColoredGraph::build(n, edges).expect("generated edges are valid")
}

/// Random maximal rainbow-`P_ell`-free graph: tries every vertex pair in
/// random order, each with colors from `0..palette` in random order, keeping
/// the first extension that stays proper and rainbow-`P_ell`-free.
pub fn random_rainbow_path_free<R: Rng>(
    rng: &mut R,
    n: usize,
    ell: usize,
    palette: usize,
) -> EdgeColoredGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let mut g = EdgeColoredGraph::empty(n);
    let mut used = vec![vec![false; palette]; n];
    // Colors keep their ids: build() renumbers, so track the raw triples.
    let mut raw: Vec<(usize, usize, usize)> = Vec::new();
    for (u, v) in pairs {
        let mut colors: Vec<usize> = (0..palette)
            .filter(|&c| !used[u][c] && !used[v][c])
            .collect();
        colors.shuffle(rng);
        for c in colors {
            raw.push((u, v, c));
            let candidate = EdgeColoredGraph::build(n, raw.iter().copied()).expect("valid");
            if has_rainbow_path(&candidate, ell).expect("palette within limits") {
                raw.pop();
            } else {
                used[u][c] = true;
                used[v][c] = true;
                g = candidate;
                break;
            }
        }
    }
    g
}

/// `count` random proper graphs with `n` drawn from `n_range`.
pub fn proper_corpus(
    seed: u64,
    count: usize,
    n_range: std::ops::RangeInclusive<usize>,
) -> Vec<EdgeColoredGraph> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(n_range.clone());
            let p = rng.gen_range(0.2..0.8);
            let palette = rng.gen_range(2..=n.max(3) + 2);
            random_proper_graph(&mut rng, n, p, palette)
        })
        .collect()
}

/// `count` random maximal rainbow-`P_ell`-free graphs.
pub fn path_free_corpus(
    seed: u64,
    count: usize,
    ell: usize,
    n_range: std::ops::RangeInclusive<usize>,
) -> Vec<EdgeColoredGraph> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(n_range.clone());
            let palette = rng.gen_range(ell..=ell + 3);
            random_rainbow_path_free(&mut rng, n, ell, palette)
        })
        .collect()
}
