//! Hypercube-based constructions.
//!
//! Vertex `x` of the `d`-cube is the integer whose bit `i` (little-endian) is
//! the `i`-th coordinate. The cube edge flipping bit `i` has color `i`; the
//! diagonal `x -- !x` of the augmented graph has color `d`.

use serde::{Deserialize, Serialize};

use crate::colored_graph::EdgeColoredGraph;
use crate::error::{Error, Result};

pub const MAX_CUBE_DIMENSION: usize = 20;
pub const MIN_ELL: usize = 3;
pub const MAX_ELL: usize = 12;

pub fn hypercube(d: usize) -> Result<EdgeColoredGraph> {
    range("d", d, 1, MAX_CUBE_DIMENSION)?;
    EdgeColoredGraph::build(1 << d, cube_edges(d))
}

fn cube_edges(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..1usize << d).flat_map(move |x| {
        (0..d).filter_map(move |i| {
            let y = x ^ (1 << i);
            (x < y).then_some((x, y, i))
        })
    })
}

/// The `ell - 1`-cube plus all antipodal diagonals in one fresh color:
/// `ell`-regular on `2^(ell-1)` vertices with `ell * 2^(ell-2)` edges and no
/// rainbow path of length `ell`.
pub fn d_star(ell: usize) -> Result<EdgeColoredGraph> {
    range("ell", ell, MIN_ELL, MAX_ELL)?;
    let d = ell - 1;
    let full = (1usize << d) - 1;
    let diagonals = (0..1usize << d)
        .filter(move |&x| x < x ^ full)
        .map(move |x| (x, x ^ full, d));
    EdgeColoredGraph::build(1 << d, cube_edges(d).chain(diagonals))
}

/// Parameters of a block construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub ell: usize,
    pub copies: usize,
    pub pad: usize,
}

impl ConstructionSpec {
    pub fn vertex_count(&self) -> usize {
        self.copies * (1 << (self.ell - 1)) + self.pad
    }

    pub fn build(&self) -> Result<EdgeColoredGraph> {
        if self.copies == 0 {
            return Err(Error::ParameterOutOfRange {
                name: "copies",
                value: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        let block = d_star(self.ell)?;
        let mut g = disjoint_union(&vec![block; self.copies]);
        if self.pad > 0 {
            g = disjoint_union(&[g, EdgeColoredGraph::empty(self.pad)]);
        }
        Ok(g)
    }
}

/// `floor(n / 2^(ell-1))` disjoint copies of [`d_star`] padded with isolated
/// vertices to exactly `n` vertices.
pub fn lower_bound_graph(n: usize, ell: usize) -> Result<EdgeColoredGraph> {
    range("ell", ell, MIN_ELL, MAX_ELL)?;
    let block = 1usize << (ell - 1);
    if n < block {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: n,
            min: block,
            max: usize::MAX,
        });
    }
    ConstructionSpec {
        ell,
        copies: n / block,
        pad: n % block,
    }
    .build()
}

/// Rainbow `ell`-cycles in one [`d_star`] block: `(ell-1)! * 2^(ell-2)`.
pub fn d_star_cycle_count(ell: usize) -> u64 {
    (1..ell as u64).product::<u64>() << (ell - 2)
}

/// Vertex-disjoint union; vertex ids are shifted per block and color ids are
/// kept, so blocks may share colors.
pub fn disjoint_union(gs: &[EdgeColoredGraph]) -> EdgeColoredGraph {
    let mut offset = 0;
    let mut edges = Vec::new();
    for g in gs {
        edges.extend(g.triples().map(|(u, v, c)| (u + offset, v + offset, c)));
        offset += g.n();
    }
    EdgeColoredGraph::build(offset, edges).expect("blocks are disjoint")
}

fn range(name: &'static str, value: usize, min: usize, max: usize) -> Result<()> {
    if value < min || value > max {
        return Err(Error::ParameterOutOfRange {
            name,
            value,
            min,
            max,
        });
    }
    Ok(())
}
