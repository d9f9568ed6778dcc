//! Edge-colored simple graphs.
//!
//! Vertices are dense ids `0..n`. Edges are stored normalized (`u < v`) and
//! sorted; color ids are renumbered into a gapless range `0..k` on build, so
//! two graphs that differ only by color names compare equal.
//!
//! Properness is validated on demand rather than enforced by [`EdgeColoredGraph::build`]:
//! the enumeration code is well defined on any coloring, and only the checkers
//! insist on a proper one.

mod canon;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use canon::canonical_order;

pub type Vertex = usize;
pub type Color = usize;

/// A single colored edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

impl Edge {
    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn touches(&self, w: Vertex) -> bool {
        self.u == w || self.v == w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoredGraph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(Vertex, Color)>>,
    colors: usize,
}

impl EdgeColoredGraph {
    /// Builds a normalized graph from `(u, v, color)` triples.
    ///
    /// Colors are renumbered to `0..k` preserving their relative order, so
    /// `(0,1,5),(1,2,9)` becomes colors `0` and `1`.
    pub fn build<I>(n: usize, edge_list: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Color)>,
    {
        let mut seen = HashSet::new();
        let mut edges = Vec::new();
        for (a, b, c) in edge_list {
            for w in [a, b] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if a == b {
                return Err(Error::Loop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(Error::DuplicatePair(u, v));
            }
            edges.push(Edge { u, v, color: c });
        }

        let mut palette: Vec<Color> = edges.iter().map(|e| e.color).collect();
        palette.sort_unstable();
        palette.dedup();
        let rename: BTreeMap<Color, Color> =
            palette.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        for e in &mut edges {
            e.color = rename[&e.color];
        }
        edges.sort_unstable();

        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            adjacency[e.u].push((e.v, e.color));
            adjacency[e.v].push((e.u, e.color));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok(Self {
            n,
            edges,
            adjacency,
            colors: palette.len(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            colors: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(u, v)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of distinct colors in use (`k`).
    pub fn color_count(&self) -> usize {
        self.colors
    }

    /// `(neighbor, color)` pairs sorted by neighbor.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, Color)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.adjacency
            .get(v)
            .map(Vec::len)
            .ok_or(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adjacency.iter().all(|a| a.len() == d)
    }

    pub fn color_of(&self, u: Vertex, v: Vertex) -> Option<Color> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.color_of(u, v).is_some()
    }

    /// Position of edge `{u, v}` in [`Self::edges`].
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .ok()
    }

    pub fn is_properly_colored(&self) -> bool {
        self.check_proper().is_ok()
    }

    /// Like [`Self::is_properly_colored`] but names a conflicting pair.
    pub fn check_proper(&self) -> Result<()> {
        for (w, list) in self.adjacency.iter().enumerate() {
            let mut by_color: BTreeMap<Color, Vertex> = BTreeMap::new();
            for &(x, c) in list {
                if let Some(&y) = by_color.get(&c) {
                    let norm = |a: Vertex, b: Vertex| if a < b { (a, b) } else { (b, a) };
                    return Err(Error::Improper {
                        first: norm(w, y),
                        second: norm(w, x),
                        color: c,
                    });
                }
                by_color.insert(c, x);
            }
        }
        Ok(())
    }

    /// Splits the edges into one class per color. Fails on an improper
    /// coloring, since the classes would not be matchings.
    pub fn color_partition(&self) -> Result<ColorPartition> {
        self.check_proper()?;
        let mut classes = vec![Vec::new(); self.colors];
        for e in &self.edges {
            classes[e.color].push((e.u, e.v));
        }
        Ok(ColorPartition { classes })
    }

    /// Key that is equal for two graphs exactly when one maps onto the other
    /// by a vertex bijection combined with a color bijection.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        self.check_proper()?;
        Ok(canon::canonical_order(self.n, &self.color_matrix()).0)
    }

    /// Canonical key together with the canonically relabeled graph.
    pub fn canonical_form(&self) -> Result<(CanonicalKey, EdgeColoredGraph)> {
        self.check_proper()?;
        let (key, order) = canon::canonical_order(self.n, &self.color_matrix());
        Ok((key, self.relabel_by_order(&order)))
    }

    /// Renames vertex `order[i]` to `i`, then renumbers colors by first
    /// appearance in column-major upper-triangle order.
    pub(crate) fn relabel_by_order(&self, order: &[Vertex]) -> EdgeColoredGraph {
        let mut color_name: Vec<Option<Color>> = vec![None; self.colors];
        let mut next = 0;
        let mut out = Vec::with_capacity(self.edges.len());
        for j in 1..self.n {
            for i in 0..j {
                if let Some(c) = self.color_of(order[i], order[j]) {
                    let name = *color_name[c].get_or_insert_with(|| {
                        next += 1;
                        next - 1
                    });
                    out.push((i, j, name));
                }
            }
        }
        EdgeColoredGraph::build(self.n, out).expect("relabeling preserves validity")
    }

    /// Applies a vertex permutation `v -> perm[v]`, keeping colors.
    pub fn permute_vertices(&self, perm: &[Vertex]) -> Result<EdgeColoredGraph> {
        EdgeColoredGraph::build(
            self.n,
            self.edges.iter().map(|e| (perm[e.u], perm[e.v], e.color)),
        )
    }

    /// Applies a color mapping `c -> map[c]`.
    pub fn recolor(&self, map: &[Color]) -> Result<EdgeColoredGraph> {
        EdgeColoredGraph::build(self.n, self.edges.iter().map(|e| (e.u, e.v, map[e.color])))
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, u: Vertex, v: Vertex, color: Color) -> Result<EdgeColoredGraph> {
        EdgeColoredGraph::build(self.n, self.triples().chain(std::iter::once((u, v, color))))
    }

    pub fn triples(&self) -> impl Iterator<Item = (Vertex, Vertex, Color)> + '_ {
        self.edges.iter().map(|e| (e.u, e.v, e.color))
    }

    /// Dense `n * n` matrix of color ids, `canon::NO_EDGE` where absent.
    pub(crate) fn color_matrix(&self) -> Vec<u16> {
        let mut m = vec![canon::NO_EDGE; self.n * self.n];
        for e in &self.edges {
            m[e.u * self.n + e.v] = e.color as u16;
            m[e.v * self.n + e.u] = e.color as u16;
        }
        m
    }
}

/// Serialized as `{"n": n, "edges": [[u, v, c], ...]}`.
impl Serialize for EdgeColoredGraph {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let triples: Vec<[usize; 3]> = self.edges.iter().map(|e| [e.u, e.v, e.color]).collect();
        let mut st = serializer.serialize_struct("EdgeColoredGraph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &triples)?;
        st.end()
    }
}

impl fmt::Display for EdgeColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_graph_file(self))
    }
}

/// Edges grouped by color. In a proper coloring each class is a matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorPartition {
    pub classes: Vec<Vec<(Vertex, Vertex)>>,
}

impl ColorPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_is_matching(class: &[(Vertex, Vertex)]) -> bool {
        let mut hit = HashSet::new();
        class.iter().all(|&(u, v)| hit.insert(u) && hit.insert(v))
    }

    pub fn all_matchings(&self) -> bool {
        self.classes.iter().all(|c| Self::class_is_matching(c))
    }
}

/// Opaque canonical form: equal keys mean isomorphic up to vertex and color
/// renaming. Ordered so ties can be broken reproducibly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey(pub(crate) Vec<u16>);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
