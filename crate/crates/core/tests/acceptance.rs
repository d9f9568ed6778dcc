//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rainbow_core::checkers::{
    check_avg_degree_on_v_prime, check_degree_lemma, check_k_color_edge_bound, check_p5_edge_bound,
    verify_construction,
};
use rainbow_core::constructions::{d_star, d_star_cycle_count, lower_bound_graph};
use rainbow_core::corpus::{self, random_proper_graph};
use rainbow_core::rainbow::{
    count_rainbow_cycles, enumerate_rainbow_cycles, enumerate_rainbow_paths,
};
use rainbow_core::search::{
    solve, verify_extremal_regularity, ExtremalResult, Objective, SearchProblem,
};
use rainbow_core::EdgeColoredGraph;
use rand::Rng;

use common::{naive_cycles, naive_paths, reference_search};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(problems: Vec<String>, summary: String) -> Outcome {
    if problems.is_empty() {
        Outcome {
            pass: true,
            detail: summary,
        }
    } else {
        let shown: Vec<_> = problems.iter().take(5).cloned().collect();
        Outcome {
            pass: false,
            detail: format!(
                "{summary}; {} problem(s): {}",
                problems.len(),
                shown.join("; ")
            ),
        }
    }
}

fn search(
    n: usize,
    ell: usize,
    objective: Objective,
    all_optima: bool,
    threads: Option<usize>,
) -> ExtremalResult {
    let mut p = SearchProblem::new(n, ell, objective);
    p.all_optima = all_optima;
    p.threads = threads;
    solve(&p).expect("valid problem")
}

fn criterion_1() -> Outcome {
    let mut problems = Vec::new();
    let expected = [(3, 4u64), (4, 24), (5, 192), (6, 1920)];
    for (ell, cycles) in expected {
        let r = verify_construction(ell).unwrap();
        if !r.holds || r.skipped {
            problems.push(format!("ell={ell}: {}", r.to_json()));
        }
        let g = d_star(ell).unwrap();
        let edges = ell << (ell - 2);
        if g.edge_count() != edges {
            problems.push(format!(
                "ell={ell}: {} edges, expected {edges}",
                g.edge_count()
            ));
        }
        let counted = count_rainbow_cycles(&g, ell).unwrap();
        if counted != cycles || d_star_cycle_count(ell) != cycles {
            problems.push(format!("ell={ell}: {counted} cycles, expected {cycles}"));
        }
    }
    outcome(
        problems,
        "d_star(3..=6) proper, rainbow-path-free, 4/24/192/1920 cycles".into(),
    )
}

fn criterion_2() -> Outcome {
    let mut problems = Vec::new();
    for (objective, expected) in [(Objective::MaxEdges, 6), (Objective::MaxRainbowCycles, 4)] {
        let r = search(4, 3, objective, true, None);
        if r.value != expected || !r.exhaustive {
            problems.push(format!(
                "{objective:?}: value {} exhaustive {}",
                r.value, r.exhaustive
            ));
        }
        if !verify_extremal_regularity(&r, 3).unwrap() {
            problems.push(format!("{objective:?}: an optimum is not 3-regular"));
        }
    }
    outcome(
        problems,
        "n=4 ell=3: 6 edges, 4 triangles, exhaustive, 3-regular optima".into(),
    )
}

/// Not reproducible by exhaustive search at n=16. The 8-vertex case turns out
/// to be in reach and is run; the 16-vertex case is covered by the
/// construction count and the bound suites.
fn criterion_3() -> Outcome {
    let mut problems = Vec::new();
    for (n, ell, per_vertex) in [(8usize, 4usize, 3u64), (16, 5, 12)] {
        let g = lower_bound_graph(n, ell).unwrap();
        let c = count_rainbow_cycles(&g, ell).unwrap();
        if c != per_vertex * n as u64 {
            problems.push(format!("lower-bound graph n={n} ell={ell}: {c} cycles"));
        }
    }
    for (objective, expected) in [(Objective::MaxEdges, 16), (Objective::MaxRainbowCycles, 24)] {
        let r = search(8, 4, objective, true, None);
        if r.value != expected || !r.exhaustive || !verify_extremal_regularity(&r, 4).unwrap() {
            problems.push(format!(
                "n=8 ell=4 {objective:?}: value {} exhaustive {} optima {}",
                r.value,
                r.exhaustive,
                r.optima.len()
            ));
        }
    }
    outcome(
        problems,
        "declared: n=16 ell=5 out of exhaustive reach; construction gives 3n at n=8 and 12n at n=16; \
         n=8 ell=4 solved exhaustively (16 edges, 24 cycles, 4-regular optimum)"
            .into(),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = corpus::rng(SEED);
    let mut problems = Vec::new();
    let (mut graphs, mut checks) = (0, 0);
    while graphs < 1200 {
        let n = rng.gen_range(3..=10);
        let p = rng.gen_range(0.3..=1.0);
        let palette = rng.gen_range(3..=12);
        let g = random_proper_graph(&mut rng, n, p, palette);
        graphs += 1;
        let k = g.color_count();
        for ell in 3..=k.min(n) {
            let r = check_k_color_edge_bound(&g, ell).unwrap();
            checks += 1;
            if !r.holds || r.skipped || !r.recheck(&g) {
                problems.push(format!(
                    "seed {SEED} graph {graphs} ell={ell}: {}",
                    r.to_json()
                ));
            }
        }
    }
    outcome(
        problems,
        format!("{graphs} graphs, {checks} (k, ell) checks, seed {SEED}"),
    )
}

/// Rainbow-`P_ell`-free instances for `ell` in 3..=5: seeded random maximal
/// graphs plus every optimum from the exhaustive search archive.
fn path_free_corpus() -> Vec<(usize, EdgeColoredGraph)> {
    let mut out = Vec::new();
    for ell in 3..=5 {
        for g in corpus::path_free_corpus(SEED + ell as u64, 200, ell, 3..=10) {
            out.push((ell, g));
        }
        let max_n = if ell == 5 { 7 } else { 8 };
        for n in 2..=max_n {
            for objective in [Objective::MaxEdges, Objective::MaxRainbowCycles] {
                out.extend(
                    search(n, ell, objective, true, None)
                        .optima
                        .into_iter()
                        .map(|g| (ell, g)),
                );
            }
        }
    }
    out
}

fn criterion_5(corpus: &[(usize, EdgeColoredGraph)]) -> Outcome {
    let mut problems = Vec::new();
    for (i, (ell, g)) in corpus.iter().enumerate() {
        let r = check_degree_lemma(g, *ell).unwrap();
        if !r.holds || r.skipped || !r.recheck(g) {
            problems.push(format!("instance {i}: {}", r.to_json()));
        }
    }
    let with_cycles = corpus
        .iter()
        .filter(|(ell, g)| count_rainbow_cycles(g, *ell).unwrap() > 0)
        .count();
    outcome(
        problems,
        format!(
            "{} rainbow-path-free instances ({with_cycles} with rainbow cycles)",
            corpus.len()
        ),
    )
}

fn criterion_6(corpus: &[(usize, EdgeColoredGraph)]) -> Outcome {
    let mut problems = Vec::new();
    let tight = check_p5_edge_bound(&d_star(5).unwrap()).unwrap();
    if tight.observed_max != Ratio::from_integer(24) || !tight.holds {
        problems.push(format!("d_star(5): {}", tight.observed_max));
    }
    let mut checked = 0;
    for (i, (_, g)) in corpus.iter().enumerate().filter(|(_, (ell, _))| *ell == 5) {
        let r = check_p5_edge_bound(g).unwrap();
        checked += 1;
        if !r.holds || r.skipped || !r.recheck(g) {
            problems.push(format!("instance {i}: {}", r.to_json()));
        }
    }
    outcome(
        problems,
        format!("d_star(5) per-edge maximum 24; {checked} length-5 instances hold"),
    )
}

fn criterion_7(corpus: &[(usize, EdgeColoredGraph)]) -> Outcome {
    let mut problems = Vec::new();
    let tight = check_avg_degree_on_v_prime(&d_star(5).unwrap()).unwrap();
    if tight.observed_max != Ratio::from_integer(5) || !tight.holds {
        problems.push(format!("d_star(5): {}", tight.observed_max));
    }
    let mut nonempty = 0;
    for (i, (_, g)) in corpus.iter().enumerate().filter(|(_, (ell, _))| *ell == 5) {
        let r = check_avg_degree_on_v_prime(g).unwrap();
        if r.skipped {
            continue;
        }
        nonempty += 1;
        if !r.holds || !r.recheck(g) {
            problems.push(format!("instance {i}: {}", r.to_json()));
        }
    }
    outcome(
        problems,
        format!("d_star(5) average 5; {nonempty} instances with nonempty V' hold"),
    )
}

fn oracle_corpus() -> Vec<EdgeColoredGraph> {
    let mut rng = corpus::rng(SEED ^ 0xA5);
    (0..400)
        .map(|_| {
            let n = rng.gen_range(2..=6);
            let p = rng.gen_range(0.2..=1.0);
            let palette = rng.gen_range(2..=7);
            random_proper_graph(&mut rng, n, p, palette)
        })
        .collect()
}

/// Serialized enumeration output over the oracle corpus.
fn enumeration_transcript(graphs: &[EdgeColoredGraph]) -> String {
    let mut out = String::new();
    for g in graphs {
        for len in 1..=5 {
            out += &serde_json::to_string(&enumerate_rainbow_paths(g, len).unwrap()).unwrap();
        }
        for len in 3..=6 {
            out += &serde_json::to_string(&enumerate_rainbow_cycles(g, len).unwrap()).unwrap();
        }
        out.push('\n');
    }
    out
}

const ORACLE_SEARCHES: [(usize, usize); 8] = [
    (2, 3),
    (3, 3),
    (4, 3),
    (5, 3),
    (2, 4),
    (3, 4),
    (4, 4),
    (5, 4),
];

fn criterion_8(graphs: &[EdgeColoredGraph]) -> Outcome {
    let mut problems = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        for len in 1..=5 {
            let fast: BTreeSet<_> = enumerate_rainbow_paths(g, len)
                .unwrap()
                .into_iter()
                .collect();
            if fast != naive_paths(g, len) {
                problems.push(format!("graph {i} paths of length {len}"));
            }
        }
        for len in 3..=6 {
            let fast: BTreeSet<_> = enumerate_rainbow_cycles(g, len)
                .unwrap()
                .into_iter()
                .collect();
            if fast != naive_cycles(g, len) {
                problems.push(format!("graph {i} cycles of length {len}"));
            }
        }
    }
    for (n, ell) in ORACLE_SEARCHES {
        let reference = reference_search(n, ell);
        for (objective, value, keys) in [
            (
                Objective::MaxEdges,
                reference.max_edges,
                &reference.edge_optima,
            ),
            (
                Objective::MaxRainbowCycles,
                reference.max_cycles,
                &reference.cycle_optima,
            ),
        ] {
            let r = search(n, ell, objective, true, None);
            let found: BTreeSet<String> = r
                .optima
                .iter()
                .map(|g| g.canonical_key().unwrap().to_string())
                .collect();
            if r.value != value || &found != keys || !r.exhaustive {
                problems.push(format!(
                    "n={n} ell={ell} {objective:?}: search {} vs reference {value}",
                    r.value
                ));
            }
        }
    }
    outcome(
        problems,
        format!(
            "{} graphs on <= 6 vertices, {} search instances, witness sets equal",
            graphs.len(),
            ORACLE_SEARCHES.len() * 2
        ),
    )
}

fn search_transcript(threads: usize) -> String {
    let mut out = String::new();
    let mut problems: Vec<(usize, usize)> = vec![(4, 3)];
    problems.extend(ORACLE_SEARCHES);
    for (n, ell) in problems {
        for objective in [Objective::MaxEdges, Objective::MaxRainbowCycles] {
            for all in [false, true] {
                out += &search(n, ell, objective, all, Some(threads)).outcome_json();
                out.push('\n');
            }
        }
    }
    out
}

fn criterion_9(graphs: &[EdgeColoredGraph]) -> Outcome {
    let mut problems = Vec::new();
    let runs: Vec<(usize, String, String)> = [1usize, 2, 8]
        .into_iter()
        .map(|t| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap();
            let enumeration = pool.install(|| enumeration_transcript(graphs));
            (t, search_transcript(t), enumeration)
        })
        .collect();
    for (t, s, e) in &runs[1..] {
        if *s != runs[0].1 {
            problems.push(format!("search output differs between 1 and {t} threads"));
        }
        if *e != runs[0].2 {
            problems.push(format!(
                "enumeration output differs between 1 and {t} threads"
            ));
        }
    }
    outcome(
        problems,
        format!(
            "search {} bytes and enumeration {} bytes identical at 1, 2, 8 threads",
            runs[0].1.len(),
            runs[0].2.len()
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Outcome + 'a>);

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f();
    (o, start.elapsed())
}

fn main() -> ExitCode {
    let corpus = path_free_corpus();
    let graphs = oracle_corpus();

    let criteria: Vec<Criterion> = vec![
        ("construction suite", Box::new(criterion_1)),
        ("exact values at n=4, ell=3", Box::new(criterion_2)),
        ("values beyond desk scale", Box::new(criterion_3)),
        ("k-color per-edge bound", Box::new(criterion_4)),
        (
            "degree bound on cycle vertices",
            Box::new(|| criterion_5(&corpus)),
        ),
        ("length-5 per-edge bound", Box::new(|| criterion_6(&corpus))),
        ("average degree on V'", Box::new(|| criterion_7(&corpus))),
        ("oracle equivalence", Box::new(|| criterion_8(&graphs))),
        (
            "determinism across thread counts",
            Box::new(|| criterion_9(&graphs)),
        ),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let (o, took) = timed(run);
        let status = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!(
            "criterion {}: {status} {name} ({:.2}s) {}",
            i + 1,
            took.as_secs_f64(),
            o.detail
        );
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
