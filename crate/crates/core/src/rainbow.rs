//! Rainbow paths and cycles: enumeration, existence and per-edge counts.
//!
//! Enumeration is a DFS over simple paths carrying a bitmask of used colors,
//! so graphs are limited to [`MAX_COLORS`] colors. Every subgraph copy is
//! reported once, in canonical orientation:
//!
//! * paths start at the smaller endpoint;
//! * cycles start at their minimum vertex and take the direction whose second
//!   vertex is smaller.
//!
//! Work is split across root vertices with rayon; results are sorted, so the
//! output does not depend on the worker count.
//!
//! None of these functions require a proper coloring.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colored_graph::{Color, EdgeColoredGraph, Vertex};
use crate::error::{Error, Result};

/// Largest number of distinct colors an enumeration accepts.
pub const MAX_COLORS: usize = 62;
/// Largest path or cycle length (in edges).
pub const MAX_LENGTH: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Path,
    Cycle,
}

/// A concrete rainbow path or cycle. For a cycle, `colors[i]` is the color of
/// `vertices[i] -- vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RainbowWitness {
    pub kind: WitnessKind,
    pub vertices: Vec<Vertex>,
    pub colors: Vec<Color>,
}

impl RainbowWitness {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Normalized `(u, v)` pairs of the edges, in traversal order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let k = self.vertices.len();
        (0..self.colors.len())
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges().contains(&e)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Re-checks the witness against `g`: adjacency, stated colors,
    /// distinct vertices and colors, and canonical orientation.
    pub fn verify(&self, g: &EdgeColoredGraph) -> bool {
        let vs = &self.vertices;
        let shape_ok = match self.kind {
            WitnessKind::Path => vs.len() >= 2 && self.colors.len() == vs.len() - 1,
            WitnessKind::Cycle => vs.len() >= 3 && self.colors.len() == vs.len(),
        };
        if !shape_ok || vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut vmask = vs.clone();
        vmask.sort_unstable();
        vmask.dedup();
        let mut cmask = self.colors.clone();
        cmask.sort_unstable();
        cmask.dedup();
        if vmask.len() != vs.len() || cmask.len() != self.colors.len() {
            return false;
        }
        for (i, &c) in self.colors.iter().enumerate() {
            if g.color_of(vs[i], vs[(i + 1) % vs.len()]) != Some(c) {
                return false;
            }
        }
        match self.kind {
            WitnessKind::Path => vs[0] < vs[vs.len() - 1],
            WitnessKind::Cycle => vs.iter().all(|&v| v >= vs[0]) && vs[1] < vs[vs.len() - 1],
        }
    }

    fn path_from(g: &EdgeColoredGraph, mut vertices: Vec<Vertex>) -> Self {
        if vertices[0] > vertices[vertices.len() - 1] {
            vertices.reverse();
        }
        let colors = vertices
            .windows(2)
            .map(|w| g.color_of(w[0], w[1]).expect("walked edge"))
            .collect();
        RainbowWitness {
            kind: WitnessKind::Path,
            vertices,
            colors,
        }
    }

    fn cycle_from(g: &EdgeColoredGraph, vertices: Vec<Vertex>) -> Self {
        let k = vertices.len();
        let colors = (0..k)
            .map(|i| {
                g.color_of(vertices[i], vertices[(i + 1) % k])
                    .expect("walked edge")
            })
            .collect();
        RainbowWitness {
            kind: WitnessKind::Cycle,
            vertices,
            colors,
        }
    }
}

/// `kind v0 v1 ... : c0 c1 ...`
impl fmt::Display for RainbowWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            WitnessKind::Path => "path",
            WitnessKind::Cycle => "cycle",
        };
        f.write_str(kind)?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        f.write_str(" :")?;
        for c in &self.colors {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

impl FromStr for RainbowWitness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: &str| Error::Parse {
            line: 1,
            message: message.to_string(),
        };
        let (left, right) = s.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let mut words = left.split_whitespace();
        let kind = match words.next() {
            Some("path") => WitnessKind::Path,
            Some("cycle") => WitnessKind::Cycle,
            _ => return Err(bad("kind must be `path` or `cycle`")),
        };
        let nums = |it: std::str::SplitWhitespace<'_>| -> Result<Vec<usize>> {
            it.map(|t| t.parse().map_err(|_| bad("expected integers")))
                .collect()
        };
        let vertices = nums(words)?;
        let colors = nums(right.split_whitespace())?;
        let expected = match kind {
            WitnessKind::Path => vertices.len().saturating_sub(1),
            WitnessKind::Cycle => vertices.len(),
        };
        if colors.len() != expected || vertices.len() < 2 {
            return Err(bad("color count does not match vertex count"));
        }
        Ok(RainbowWitness {
            kind,
            vertices,
            colors,
        })
    }
}

/// A set of color ids below [`MAX_COLORS`]; larger ids are ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ColorSet(u64);

impl ColorSet {
    pub fn new() -> Self {
        Self(0)
    }

    pub fn insert(&mut self, c: Color) {
        if c < 64 {
            self.0 |= 1 << c;
        }
    }

    pub fn contains(&self, c: Color) -> bool {
        c < 64 && self.0 & (1 << c) != 0
    }

    pub fn bits(&self) -> u64 {
        self.0
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::new();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

fn check_colors(g: &EdgeColoredGraph) -> Result<()> {
    if g.color_count() > MAX_COLORS {
        return Err(Error::TooManyColors {
            colors: g.color_count(),
            max: MAX_COLORS,
        });
    }
    Ok(())
}

fn check_length(length: usize, min: usize) -> Result<()> {
    if length < min || length > MAX_LENGTH {
        return Err(Error::LengthOutOfRange {
            length,
            min,
            max: MAX_LENGTH,
        });
    }
    Ok(())
}

/// DFS state for growing one simple rainbow path.
struct Walk<'a> {
    g: &'a EdgeColoredGraph,
    on_path: Vec<bool>,
    path: Vec<Vertex>,
    used: u64,
}

impl<'a> Walk<'a> {
    fn new(g: &'a EdgeColoredGraph, start: Vertex, used: u64) -> Self {
        let mut on_path = vec![false; g.n()];
        on_path[start] = true;
        Walk {
            g,
            on_path,
            path: vec![start],
            used,
        }
    }

    /// Extends the path by `remaining` more edges through vertices accepted
    /// by `allow`, calling `emit` on each completed path. Stops early when
    /// `emit` returns `false`; the return value reports whether to continue.
    fn grow<A, E>(&mut self, remaining: usize, allow: &A, emit: &mut E) -> bool
    where
        A: Fn(Vertex) -> bool,
        E: FnMut(&[Vertex], u64) -> bool,
    {
        if remaining == 0 {
            return emit(&self.path, self.used);
        }
        let tip = *self.path.last().expect("nonempty");
        for &(w, c) in self.g.neighbors(tip) {
            let bit = 1u64 << c;
            if self.on_path[w] || self.used & bit != 0 || !allow(w) {
                continue;
            }
            self.on_path[w] = true;
            self.used |= bit;
            self.path.push(w);
            let go_on = self.grow(remaining - 1, allow, emit);
            self.path.pop();
            self.used &= !bit;
            self.on_path[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// All rainbow paths with exactly `length` edges.
pub fn enumerate_rainbow_paths(g: &EdgeColoredGraph, length: usize) -> Result<Vec<RainbowWitness>> {
    check_length(length, 1)?;
    check_colors(g)?;
    let mut out: Vec<RainbowWitness> = (0..g.n())
        .into_par_iter()
        .flat_map_iter(|s| {
            let mut found = Vec::new();
            Walk::new(g, s, 0).grow(length, &|_| true, &mut |p: &[Vertex], _| {
                if p[0] < p[p.len() - 1] {
                    found.push(RainbowWitness::path_from(g, p.to_vec()));
                }
                true
            });
            found
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Whether `g` contains a rainbow path with exactly `length` edges.
pub fn has_rainbow_path(g: &EdgeColoredGraph, length: usize) -> Result<bool> {
    check_length(length, 1)?;
    check_colors(g)?;
    if length >= g.n() {
        return Ok(false);
    }
    Ok((0..g.n()).into_par_iter().any(|s| {
        let mut hit = false;
        Walk::new(g, s, 0).grow(length, &|_| true, &mut |_, _| {
            hit = true;
            false
        });
        hit
    }))
}

/// Some rainbow path with exactly `length` edges, if one exists.
pub fn find_rainbow_path(g: &EdgeColoredGraph, length: usize) -> Result<Option<RainbowWitness>> {
    check_length(length, 1)?;
    check_colors(g)?;
    for s in 0..g.n() {
        let mut hit = None;
        Walk::new(g, s, 0).grow(length, &|_| true, &mut |p: &[Vertex], _| {
            hit = Some(RainbowWitness::path_from(g, p.to_vec()));
            false
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn cycles_rooted_at(
    g: &EdgeColoredGraph,
    s: Vertex,
    length: usize,
    mut emit: impl FnMut(&[Vertex]),
) {
    Walk::new(g, s, 0).grow(length - 1, &|w| w > s, &mut |p: &[Vertex], used| {
        let last = p[p.len() - 1];
        if p[1] < last {
            if let Some(c) = g.color_of(last, s) {
                if used & (1u64 << c) == 0 {
                    emit(p);
                }
            }
        }
        true
    });
}

/// All rainbow cycles with exactly `length` edges, each copy once.
pub fn enumerate_rainbow_cycles(
    g: &EdgeColoredGraph,
    length: usize,
) -> Result<Vec<RainbowWitness>> {
    check_length(length, 3)?;
    check_colors(g)?;
    let mut out: Vec<RainbowWitness> = (0..g.n())
        .into_par_iter()
        .flat_map_iter(|s| {
            let mut found = Vec::new();
            cycles_rooted_at(g, s, length, |p| {
                found.push(RainbowWitness::cycle_from(g, p.to_vec()))
            });
            found
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Number of rainbow cycles with exactly `length` edges.
pub fn count_rainbow_cycles(g: &EdgeColoredGraph, length: usize) -> Result<u64> {
    check_length(length, 3)?;
    check_colors(g)?;
    Ok((0..g.n())
        .into_par_iter()
        .map(|s| {
            let mut k = 0u64;
            cycles_rooted_at(g, s, length, |_| k += 1);
            k
        })
        .sum())
}

/// `f(e)`: for each edge (indexed as in [`EdgeColoredGraph::edges`]) the
/// number of rainbow `length`-cycles containing it.
pub fn count_per_edge(g: &EdgeColoredGraph, length: usize) -> Result<Vec<u64>> {
    let mut f = vec![0u64; g.edge_count()];
    for w in enumerate_rainbow_cycles(g, length)? {
        for (u, v) in w.edges() {
            f[g.edge_index(u, v).expect("cycle edge")] += 1;
        }
    }
    Ok(f)
}

/// For each vertex, the number of rainbow `length`-cycles through it.
pub fn count_per_vertex(g: &EdgeColoredGraph, length: usize) -> Result<Vec<u64>> {
    let mut f = vec![0u64; g.n()];
    for w in enumerate_rainbow_cycles(g, length)? {
        for v in w.vertices {
            f[v] += 1;
        }
    }
    Ok(f)
}

/// Rainbow paths from `x` to `y` with exactly `length` edges avoiding every
/// color in `forbidden`. Empty when `x == y`.
pub fn rainbow_paths_between(
    g: &EdgeColoredGraph,
    x: Vertex,
    y: Vertex,
    length: usize,
    forbidden: ColorSet,
) -> Result<Vec<RainbowWitness>> {
    check_length(length, 1)?;
    check_colors(g)?;
    for v in [x, y] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
    }
    let mut out = Vec::new();
    if x == y {
        return Ok(out);
    }
    // `y` may only be entered on the last hop.
    let mut walk = Walk::new(g, x, forbidden.bits());
    walk.on_path[y] = true;
    walk.grow(length - 1, &|_| true, &mut |p: &[Vertex], used| {
        let tip = p[p.len() - 1];
        if let Some(c) = g.color_of(tip, y) {
            if used & (1u64 << c) == 0 {
                let mut vs = p.to_vec();
                vs.push(y);
                out.push(RainbowWitness::path_from(g, vs));
            }
        }
        true
    });
    out.sort_unstable();
    Ok(out)
}

/// `V'`: vertices lying on at least one rainbow `length`-cycle, ascending.
pub fn vertices_on_rainbow_cycles(g: &EdgeColoredGraph, length: usize) -> Result<Vec<Vertex>> {
    let per_vertex = count_per_vertex(g, length)?;
    Ok((0..g.n()).filter(|&v| per_vertex[v] > 0).collect())
}
