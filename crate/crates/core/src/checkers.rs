//! Bound checkers for properly edge-colored graphs.
//!
//! Each checker measures one quantity on a host graph, compares it with a
//! closed-form bound and returns a [`CheckReport`] carrying the witnesses that
//! attain the observed maximum. A graph that violates a checker's hypothesis
//! (improper coloring, a rainbow path of the forbidden length, too few
//! colors, ...) yields a *skipped* report, never a failing one.
//!
//! Reports are self-certifying: [`CheckReport::recheck`] re-derives every
//! witness from the host graph through the enumeration API.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::colored_graph::{EdgeColoredGraph, Vertex};
use crate::constructions::{d_star, d_star_cycle_count};
use crate::error::{Error, Result};
use crate::rainbow::{
    count_per_edge, enumerate_rainbow_cycles, find_rainbow_path, rainbow_paths_between,
    vertices_on_rainbow_cycles, ColorSet, RainbowWitness, WitnessKind,
};

pub const K_COLOR_EDGE_BOUND: &str = "k_color_edge_bound";
pub const DEGREE_LEMMA: &str = "degree_lemma";
pub const GENERAL_UPPER_PER_EDGE: &str = "general_upper_per_edge";
pub const P5_EDGE_BOUND: &str = "p5_edge_bound";
pub const AVG_DEGREE_ON_V_PRIME: &str = "avg_degree_on_v_prime";
pub const P5_MAX_DEGREE: &str = "p5_max_degree";
pub const CONSTRUCTION: &str = "construction";

/// Evidence attached to a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// Edge `{u, v}` lies on `count` rainbow cycles.
    Edge {
        u: Vertex,
        v: Vertex,
        count: u64,
    },
    /// Vertex `v` of degree `degree`, with a rainbow cycle through it.
    Vertex {
        v: Vertex,
        degree: usize,
        cycle: RainbowWitness,
    },
    Cycle {
        cycle: RainbowWitness,
    },
    /// A forbidden rainbow path; explains a skipped report.
    Path {
        path: RainbowWitness,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub ell: usize,
    pub holds: bool,
    pub bound: Ratio<u64>,
    pub observed_max: Ratio<u64>,
    pub witnesses: Vec<Witness>,
    pub skipped: bool,
    pub skip_reason: Option<String>,
    /// Auxiliary counts (vertex set sizes, totals); empty for most checks.
    pub metrics: BTreeMap<String, u64>,
}

impl CheckReport {
    fn new(name: &str, ell: usize, bound: u64) -> Self {
        CheckReport {
            check_name: name.to_string(),
            ell,
            holds: true,
            bound: Ratio::from_integer(bound),
            observed_max: Ratio::from_integer(0),
            witnesses: Vec::new(),
            skipped: false,
            skip_reason: None,
            metrics: BTreeMap::new(),
        }
    }

    fn skip(mut self, reason: impl Into<String>) -> Self {
        self.skipped = true;
        self.skip_reason = Some(reason.into());
        self
    }

    fn settle(mut self, observed: Ratio<u64>) -> Self {
        self.observed_max = observed;
        self.holds = observed <= self.bound;
        self
    }

    /// A report that neither holds nor was skipped.
    pub fn failed(&self) -> bool {
        !self.holds && !self.skipped
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Recomputes `holds` from the bound and re-verifies each witness against
    /// `g`.
    pub fn recheck(&self, g: &EdgeColoredGraph) -> bool {
        if self.skipped {
            return self.holds
                && self.witnesses.iter().all(|w| match w {
                    Witness::Path { path } => path.verify(g) && path.len() == self.ell,
                    _ => false,
                });
        }
        if self.holds != (self.observed_max <= self.bound) {
            return false;
        }
        let ell = self.ell;
        let witnesses_ok = self.witnesses.iter().all(|w| match w {
            Witness::Edge { u, v, count } => {
                let Some(c) = g.color_of(*u, *v) else {
                    return false;
                };
                let again = rainbow_paths_between(g, *u, *v, ell - 1, ColorSet::from_iter([c]))
                    .map(|p| p.len() as u64);
                again == Ok(*count) && Ratio::from_integer(*count) == self.observed_max
            }
            Witness::Vertex { v, degree, cycle } => {
                g.degree(*v).ok() == Some(*degree)
                    && cycle.kind == WitnessKind::Cycle
                    && cycle.len() == ell
                    && cycle.contains_vertex(*v)
                    && cycle.verify(g)
            }
            Witness::Cycle { cycle } => cycle.verify(g) && cycle.len() == ell,
            Witness::Path { .. } => false,
        });
        if !witnesses_ok {
            return false;
        }
        let degrees = || {
            self.witnesses.iter().filter_map(|w| match w {
                Witness::Vertex { degree, .. } => Some(*degree as u64),
                _ => None,
            })
        };
        match self.check_name.as_str() {
            DEGREE_LEMMA | P5_MAX_DEGREE => {
                degrees().all(|d| Ratio::from_integer(d) == self.observed_max)
            }
            AVG_DEGREE_ON_V_PRIME => {
                let count = self.witnesses.len() as u64;
                count > 0 && Ratio::new(degrees().sum::<u64>(), count) == self.observed_max
            }
            _ => true,
        }
    }
}

fn falling_factorial(top: u64, terms: u64) -> u64 {
    (0..terms).fold(1u64, |acc, i| acc.saturating_mul(top - i))
}

fn check_ell(ell: usize) -> Result<()> {
    if ell < 3 {
        return Err(Error::LengthOutOfRange {
            length: ell,
            min: 3,
            max: crate::rainbow::MAX_LENGTH,
        });
    }
    Ok(())
}

/// Skipped report when `g` is improperly colored or contains a rainbow
/// `ell`-path.
fn hypothesis(
    g: &EdgeColoredGraph,
    report: CheckReport,
) -> Result<std::result::Result<CheckReport, CheckReport>> {
    if let Err(e) = g.check_proper() {
        return Ok(Err(report.skip(format!("coloring is not proper: {e}"))));
    }
    if let Some(path) = find_rainbow_path(g, report.ell)? {
        let ell = report.ell;
        let mut r = report.skip(format!("graph contains a rainbow path with {ell} edges"));
        r.witnesses.push(Witness::Path { path });
        return Ok(Err(r));
    }
    Ok(Ok(report))
}

/// Maximum of `f(e)` with every edge attaining it.
fn per_edge_max(g: &EdgeColoredGraph, ell: usize, report: CheckReport) -> Result<CheckReport> {
    let f = count_per_edge(g, ell)?;
    let max = f.iter().copied().max().unwrap_or(0);
    let mut report = report;
    if max > 0 {
        report.witnesses = g
            .edges()
            .iter()
            .zip(&f)
            .filter(|(_, &fe)| fe == max)
            .map(|(e, _)| Witness::Edge {
                u: e.u,
                v: e.v,
                count: max,
            })
            .collect();
    }
    Ok(report.settle(Ratio::from_integer(max)))
}

/// Every edge lies on at most `(k-1)!/(k-ell)!` rainbow `ell`-cycles in a
/// proper `k`-coloring.
pub fn check_k_color_edge_bound(g: &EdgeColoredGraph, ell: usize) -> Result<CheckReport> {
    check_ell(ell)?;
    let k = g.color_count();
    let bound = if k >= ell {
        falling_factorial(k as u64 - 1, ell as u64 - 1)
    } else {
        0
    };
    let report = CheckReport::new(K_COLOR_EDGE_BOUND, ell, bound);
    if let Err(e) = g.check_proper() {
        return Ok(report.skip(format!("coloring is not proper: {e}")));
    }
    if k < ell {
        return Ok(report.skip(format!("only {k} colors, fewer than {ell}")));
    }
    let mut report = per_edge_max(g, ell, report)?;
    report.metrics.insert("colors".into(), k as u64);
    Ok(report)
}

/// Vertices with maximum degree over `V'`, each with a cycle through it.
fn degree_witnesses(
    g: &EdgeColoredGraph,
    ell: usize,
) -> Result<(Vec<Vertex>, Vec<Witness>, usize)> {
    let cycles = enumerate_rainbow_cycles(g, ell)?;
    let v_prime = vertices_on_rainbow_cycles(g, ell)?;
    let degrees = g.degrees();
    let max = v_prime.iter().map(|&v| degrees[v]).max().unwrap_or(0);
    let witnesses = v_prime
        .iter()
        .filter(|&&v| degrees[v] == max)
        .map(|&v| Witness::Vertex {
            v,
            degree: max,
            cycle: cycles
                .iter()
                .find(|c| c.contains_vertex(v))
                .expect("vertex of V' lies on a cycle")
                .clone(),
        })
        .collect();
    Ok((v_prime, witnesses, max))
}

/// In a rainbow-`P_ell`-free graph every vertex on a rainbow `ell`-cycle has
/// degree at most `2 ell - 3`.
pub fn check_degree_lemma(g: &EdgeColoredGraph, ell: usize) -> Result<CheckReport> {
    check_ell(ell)?;
    max_degree_check(g, ell, DEGREE_LEMMA, 2 * ell as u64 - 3)
}

fn max_degree_check(
    g: &EdgeColoredGraph,
    ell: usize,
    name: &str,
    bound: u64,
) -> Result<CheckReport> {
    let mut report = match hypothesis(g, CheckReport::new(name, ell, bound))? {
        Ok(r) => r,
        Err(skipped) => return Ok(skipped),
    };
    let (v_prime, witnesses, max) = degree_witnesses(g, ell)?;
    report.witnesses = witnesses;
    report
        .metrics
        .insert("v_prime".into(), v_prime.len() as u64);
    Ok(report.settle(Ratio::from_integer(max as u64)))
}

/// Per-edge cycle count against `(2 ell - 3)^(ell - 2)` on rainbow-`P_ell`-free
/// graphs.
pub fn check_general_upper_per_edge(g: &EdgeColoredGraph, ell: usize) -> Result<CheckReport> {
    check_ell(ell)?;
    let bound = (2 * ell as u64 - 3).saturating_pow(ell as u32 - 2);
    match hypothesis(g, CheckReport::new(GENERAL_UPPER_PER_EDGE, ell, bound))? {
        Ok(r) => per_edge_max(g, ell, r),
        Err(skipped) => Ok(skipped),
    }
}

/// At most `4! = 24` rainbow 5-cycles per edge in a rainbow-`P_5`-free graph.
pub fn check_p5_edge_bound(g: &EdgeColoredGraph) -> Result<CheckReport> {
    match hypothesis(g, CheckReport::new(P5_EDGE_BOUND, 5, 24))? {
        Ok(r) => per_edge_max(g, 5, r),
        Err(skipped) => Ok(skipped),
    }
}

/// Average degree over `V'` (vertices on rainbow 5-cycles) is at most 5, in
/// exact rational arithmetic.
pub fn check_avg_degree_on_v_prime(g: &EdgeColoredGraph) -> Result<CheckReport> {
    let mut report = match hypothesis(g, CheckReport::new(AVG_DEGREE_ON_V_PRIME, 5, 5))? {
        Ok(r) => r,
        Err(skipped) => return Ok(skipped),
    };
    let cycles = enumerate_rainbow_cycles(g, 5)?;
    let v_prime = vertices_on_rainbow_cycles(g, 5)?;
    if v_prime.is_empty() {
        return Ok(report.skip("no vertex lies on a rainbow 5-cycle"));
    }
    let degrees = g.degrees();
    let total: u64 = v_prime.iter().map(|&v| degrees[v] as u64).sum();
    report.witnesses = v_prime
        .iter()
        .map(|&v| Witness::Vertex {
            v,
            degree: degrees[v],
            cycle: cycles
                .iter()
                .find(|c| c.contains_vertex(v))
                .expect("vertex of V' lies on a cycle")
                .clone(),
        })
        .collect();
    report
        .metrics
        .insert("v_prime".into(), v_prime.len() as u64);
    report.metrics.insert("degree_sum".into(), total);
    Ok(report.settle(Ratio::new(total, v_prime.len() as u64)))
}

/// Maximum degree over `V'` is at most 7 in a rainbow-`P_5`-free graph.
pub fn check_p5_max_degree(g: &EdgeColoredGraph) -> Result<CheckReport> {
    let report = max_degree_check(g, 5, P5_MAX_DEGREE, 7)?;
    if !report.skipped && report.metrics["v_prime"] == 0 {
        return Ok(report.skip("no vertex lies on a rainbow 5-cycle"));
    }
    Ok(report)
}

/// Full audit of [`d_star`]: properness, no rainbow `ell`-path, edge count
/// `ell * 2^(ell-2)`, cycle count `(ell-1)! * 2^(ell-2)`, and exactly one
/// diagonal per rainbow cycle. `observed_max` counts failed items (bound 0).
pub fn verify_construction(ell: usize) -> Result<CheckReport> {
    if !(3..=7).contains(&ell) {
        return Err(Error::ParameterOutOfRange {
            name: "ell",
            value: ell,
            min: 3,
            max: 7,
        });
    }
    let g = d_star(ell)?;
    let cycles = enumerate_rainbow_cycles(&g, ell)?;
    let expected_edges = (ell as u64) << (ell - 2);
    let expected_cycles = d_star_cycle_count(ell);
    let diagonal = ell - 1;

    let proper = g.is_properly_colored();
    let path = find_rainbow_path(&g, ell)?;
    let one_diagonal = cycles
        .iter()
        .all(|c| c.colors.iter().filter(|&&x| x == diagonal).count() == 1);
    let items = [
        proper,
        path.is_none(),
        g.edge_count() as u64 == expected_edges,
        cycles.len() as u64 == expected_cycles,
        one_diagonal,
    ];
    let failures = items.iter().filter(|ok| !**ok).count() as u64;

    let mut report = CheckReport::new(CONSTRUCTION, ell, 0);
    report.metrics = BTreeMap::from([
        ("edges".to_string(), g.edge_count() as u64),
        ("expected_edges".to_string(), expected_edges),
        ("cycles".to_string(), cycles.len() as u64),
        ("expected_cycles".to_string(), expected_cycles),
        ("proper".to_string(), proper as u64),
        ("rainbow_path_free".to_string(), path.is_none() as u64),
        ("one_diagonal_per_cycle".to_string(), one_diagonal as u64),
    ]);
    if let Some(c) = cycles.first() {
        report.witnesses.push(Witness::Cycle { cycle: c.clone() });
    }
    Ok(report.settle(Ratio::from_integer(failures)))
}

/// Named groups of checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// The three general checks at one cycle length.
    General(usize),
    /// The general checks at length 5 plus the length-5 specific ones.
    P5,
}

pub fn run_suite(g: &EdgeColoredGraph, suite: Suite) -> Result<Vec<CheckReport>> {
    let ell = match suite {
        Suite::General(ell) => ell,
        Suite::P5 => 5,
    };
    let mut reports = vec![
        check_k_color_edge_bound(g, ell)?,
        check_degree_lemma(g, ell)?,
        check_general_upper_per_edge(g, ell)?,
    ];
    if suite == Suite::P5 {
        reports.push(check_p5_edge_bound(g)?);
        reports.push(check_avg_degree_on_v_prime(g)?);
        reports.push(check_p5_max_degree(g)?);
    }
    Ok(reports)
}

/// Runs a suite over a corpus in parallel. Output is ordered by graph index,
/// then by check order within the suite.
pub fn run_corpus(graphs: &[EdgeColoredGraph], suite: Suite) -> Result<Vec<(usize, CheckReport)>> {
    let per_graph: Vec<Result<Vec<CheckReport>>> =
        graphs.par_iter().map(|g| run_suite(g, suite)).collect();
    let mut out = Vec::new();
    for (i, reports) in per_graph.into_iter().enumerate() {
        out.extend(reports?.into_iter().map(|r| (i, r)));
    }
    Ok(out)
}
