//! The acceptance checks, runnable from tests and from the command line.
//! Every check compares library output against an independent oracle
//! ([`crate::verify`], exact factor search, brute force).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::partition_2connected_traced;
use crate::generators::{random_2connected, random_tree, spider, subdivided_k4, theta, two_connected_classes};
use crate::graph::{SimpleGraph, Vertex};
use crate::io::emit_graph6;
use crate::labels::{Label, TreeSetId};
use crate::tree_partition::partition_tree;
use crate::verify::{brute_force_partition, has_kr_factor, verify_partition, PartMode};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "seconds")]
    pub elapsed: Duration,
}

fn seconds<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {} ({}): {} [{:.2}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

struct Check {
    failures: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(self, id: u8, name: &'static str, start: Instant, limit: Duration, summary: String) -> CriterionReport {
        let elapsed = start.elapsed();
        let mut failures = self.failures;
        if elapsed > limit {
            failures.push(format!("took {:.1}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()));
        }
        let detail = if failures.is_empty() {
            summary
        } else {
            let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
            format!("{summary}; {} failure(s): {}", failures.len(), shown.join(" | "))
        };
        CriterionReport { id, name, passed: failures.is_empty(), detail, elapsed }
    }
}

/// The graphs of the main corpus: every 2-connected class on 4 and 8
/// vertices and 1000 distinct random 2-connected graphs on 12 vertices.
pub fn main_corpus() -> Vec<SimpleGraph> {
    let mut graphs = two_connected_classes(4).expect("in range");
    graphs.extend(two_connected_classes(8).expect("in range"));
    let mut seen = BTreeSet::new();
    let mut seed = 0;
    while seen.len() < 1000 {
        let g = random_2connected(12, seed).expect("in range");
        if seen.insert(emit_graph6(&g)) {
            graphs.push(g);
        }
        seed += 1;
    }
    graphs
}

fn is_clique_in_power(dist: &[Vec<Option<usize>>], part: &[Vertex], k: usize) -> bool {
    part.iter().all(|&u| part.iter().all(|&v| dist[u][v].is_some_and(|d| d <= k)))
}

fn all_distances(g: &SimpleGraph) -> Vec<Vec<Option<usize>>> {
    (0..g.n()).map(|v| g.distances_from(v)).collect()
}

/// Criteria 1 and 2: the engine on the main corpus, with verification and
/// trace replay.
pub fn corpus_criteria() -> (CriterionReport, CriterionReport) {
    let start = Instant::now();
    let corpus = main_corpus();
    let counts = [4, 8, 12].map(|n| corpus.iter().filter(|g| g.n() == n).count());
    let mut main = Check::new();
    let mut replay = Check::new();
    let mut fallbacks = 0;
    let mut steps = 0;
    for g in &corpus {
        let name = emit_graph6(g);
        let result = match partition_2connected_traced(g) {
            Ok(r) => r,
            Err(e) => {
                main.expect(false, || format!("{name}: {e}"));
                continue;
            }
        };
        fallbacks += result.fallbacks.len();
        let raw: Vec<Vec<Vertex>> = result.parts.iter().map(|p| p.vertices.clone()).collect();
        main.expect(verify_partition(g, &raw, None).is_ok(), || format!("{name}: partition rejected"));
        let mut edges = g.edge_count();
        for step in &result.trace {
            steps += 1;
            replay.expect((step.weight + step.n) % 4 == 0, || format!("{name}: {step}"));
            replay.expect(step.block_ok, || format!("{name}: {step}"));
            replay.expect(step.case == "base" || step.m < edges, || format!("{name}: no progress at {step}"));
            edges = step.m;
        }
        replay.expect(result.trace.last().is_some_and(|s| s.case == "base"), || {
            format!("{name}: trace has no base step")
        });
    }
    let first = main.report(
        1,
        "partition of every corpus graph verifies",
        start,
        Duration::from_secs(300),
        format!(
            "{} graphs ({} on 4, {} on 8, {} on 12 vertices), {fallbacks} table fallbacks",
            corpus.len(),
            counts[0],
            counts[1],
            counts[2]
        ),
    );
    let second = replay.report(
        2,
        "mod-4 and block invariants after every step",
        start,
        Duration::from_secs(300),
        format!("{steps} reduction steps replayed"),
    );
    (first, second)
}

/// Criterion 3: the 2-connected extremal examples.
pub fn criterion_3() -> CriterionReport {
    let start = Instant::now();
    let mut c = Check::new();
    let g = subdivided_k4(4).expect("in range");
    c.expect(g.n() == 24, || format!("subdivided K4 has {} vertices", g.n()));
    c.expect(has_kr_factor(&g.power(3), 4).is_none(), || "cube of subdivided K4 has a K4-factor".into());
    match partition_2connected_traced(&g) {
        Ok(r) => {
            let dist = all_distances(&g);
            let raw: Vec<Vec<Vertex>> = r.parts.iter().map(|p| p.vertices.clone()).collect();
            c.expect(verify_partition(&g, &raw, None).is_ok(), || "partition rejected".into());
            c.expect(raw.iter().all(|p| is_clique_in_power(&dist, p, 4)), || "a part is not a clique of G^4".into());
        }
        Err(e) => c.expect(false, || format!("engine: {e}")),
    }
    let t = theta(4).expect("in range");
    c.expect(t.n() == 20, || format!("theta has {} vertices", t.n()));
    c.expect(has_kr_factor(&t.power(3), 4).is_none(), || "cube of theta has a K4-factor".into());
    c.report(
        3,
        "extremal 2-connected graphs",
        start,
        Duration::from_secs(60),
        "subdivided K4 (24 vertices) and theta (20 vertices) have no K4-factor in the cube; the engine gives one in the 4th power".into(),
    )
}

/// Criterion 4: the tree lower bound and the tree partitioner on spiders.
pub fn criterion_4() -> CriterionReport {
    let start = Instant::now();
    let mut c = Check::new();
    let t = spider(4).expect("in range");
    c.expect(t.n() == 16, || format!("spider(4) has {} vertices", t.n()));
    c.expect(has_kr_factor(&t.power(5), 4).is_none(), || "T^5 has a K4-factor".into());
    match partition_tree(&t, &[4, 4, 4, 4]) {
        Ok(parts) => {
            let dist = all_distances(&t);
            for p in &parts {
                let w = p.witness.clone().unwrap_or_default();
                c.expect(w.len() <= 7 && t.induces_connected(&w), || format!("bad witness {w:?}"));
                c.expect(p.vertices.iter().all(|v| w.contains(v)), || format!("witness misses {:?}", p.vertices));
                c.expect(is_clique_in_power(&dist, &p.vertices, 6), || format!("{:?} not a clique of T^6", p.vertices));
            }
            let raw: Vec<Vec<Vertex>> = parts.iter().map(|p| p.vertices.clone()).collect();
            c.expect(covers(&raw, 16, &[4, 4, 4, 4]), || "parts do not partition the tree".into());
        }
        Err(e) => c.expect(false, || format!("tree partition: {e}")),
    }
    let s = spider(3).expect("in range");
    c.expect(s.n() == 9, || format!("spider(3) has {} vertices", s.n()));
    c.expect(has_kr_factor(&s.power(3), 3).is_none(), || "T^3 has a K3-factor".into());
    c.expect(has_kr_factor(&s.power(4), 3).is_some(), || "T^4 has no K3-factor".into());
    c.report(
        4,
        "tree lower bound",
        start,
        Duration::from_secs(10),
        "spider(4): no K4-factor in T^5, peeled parts give one in T^6; spider(3): none in T^3, one in T^4".into(),
    )
}

/// The `<=` order written out pair by pair.
fn order_oracle(a: TreeSetId, b: TreeSetId) -> bool {
    use TreeSetId::*;
    a == b || matches!((a, b), (S1, S1p) | (S2m, S2) | (S2, S2p) | (S2m, S2p) | (S3m, S3) | (S3, S3p) | (S3m, S3p))
}

/// Criterion 5: label algebra over the whole catalog.
pub fn criterion_5() -> CriterionReport {
    let start = Instant::now();
    let mut c = Check::new();
    let mut checked = 0;
    for l in Label::ALL {
        let f = l.involution();
        c.expect(f.involution() == l, || format!("f(f({l})) != {l}"));
        let digits: Vec<usize> = l.name()[1..].chars().map(|ch| ch.to_digit(10).unwrap() as usize).collect();
        c.expect(digits[0] == l.weight(), || format!("{l} has weight {}", l.weight()));
        for p in TreeSetId::ALL {
            for q in TreeSetId::ALL {
                checked += 1;
                c.expect(l.contains(p, q) == f.contains(q, p), || format!("{l} ({p},{q}) vs {f} ({q},{p})"));
                let brute = l.pairs().iter().copied().filter(|&(a, b)| order_oracle(a, p) && order_oracle(b, q)).min();
                c.expect(l.admits(p, q) == brute, || format!("admits({l},{p},{q})"));
            }
        }
    }
    c.report(5, "label algebra", start, Duration::from_secs(5), format!("{checked} (label, P, Q) triples"))
}

/// Criterion 6: brute force against the engine on random graphs.
pub fn criterion_6() -> CriterionReport {
    let start = Instant::now();
    let mut c = Check::new();
    let mut count = 0;
    for (i, n) in [8, 12].into_iter().enumerate() {
        for seed in 0..250u64 {
            let g = random_2connected(n, 10_000 * (i as u64 + 1) + seed).expect("in range");
            let name = emit_graph6(&g);
            count += 1;
            let sizes = vec![4; n / 4];
            match brute_force_partition(&g, &sizes, PartMode::NearlyConnected) {
                Ok(Some(parts)) => {
                    c.expect(verify_partition(&g, &parts, None).is_ok(), || format!("{name}: oracle output rejected"))
                }
                Ok(None) => c.expect(false, || format!("{name}: oracle finds no partition")),
                Err(e) => c.expect(false, || format!("{name}: {e}")),
            }
            c.expect(partition_2connected_traced(&g).is_ok(), || format!("{name}: engine failed"));
        }
    }
    c.report(
        6,
        "brute-force differential",
        start,
        Duration::from_secs(600),
        format!("{count} random graphs, n in {{8, 12}}"),
    )
}

/// A random composition of `n` into positive parts.
fn composition(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(8));
        sizes.push(s);
        left -= s;
    }
    sizes
}

/// Criterion 7: the tree partitioner on random trees.
pub fn criterion_7() -> CriterionReport {
    let start = Instant::now();
    let mut c = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..200u64 {
        let n = rng.gen_range(2..=30);
        let t = random_tree(n, seed).expect("in range");
        let sizes = composition(n, &mut rng);
        let parts = match partition_tree(&t, &sizes) {
            Ok(p) => p,
            Err(e) => {
                c.expect(false, || format!("tree {seed}: {e}"));
                continue;
            }
        };
        let raw: Vec<Vec<Vertex>> = parts.iter().map(|p| p.vertices.clone()).collect();
        c.expect(covers(&raw, n, &sizes), || format!("tree {seed}: not a partition"));
        for (p, &s) in parts.iter().zip(&sizes) {
            let w = p.witness.clone().unwrap_or_default();
            c.expect(p.vertices.len() == s, || format!("tree {seed}: part size"));
            c.expect(w.len() < 2 * s && t.induces_connected(&w), || format!("tree {seed}: witness {w:?} for size {s}"));
            c.expect(p.vertices.iter().all(|v| w.contains(v)), || format!("tree {seed}: witness misses a vertex"));
        }
    }
    c.report(
        7,
        "tree partition witnesses",
        start,
        Duration::from_secs(60),
        "200 random trees with random size compositions".into(),
    )
}

fn covers(parts: &[Vec<Vertex>], n: usize, sizes: &[usize]) -> bool {
    let mut all: Vec<Vertex> = parts.concat();
    all.sort_unstable();
    all == (0..n).collect::<Vec<_>>() && parts.iter().map(Vec::len).eq(sizes.iter().copied())
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ExploreReport {
    pub graphs: usize,
    /// graph6 strings of graphs with no partition of the requested sizes.
    pub failures: Vec<String>,
}

/// Brute-force search, on every graph, for a partition into nearly
/// connected parts of the given sizes. Graphs are checked on all available
/// threads; the report lists failures in input order.
pub fn explore(graphs: &[SimpleGraph], sizes: &[usize]) -> Result<ExploreReport, crate::verify::OracleError> {
    let workers = std::thread::available_parallelism().map_or(1, usize::from).min(graphs.len().max(1));
    let chunk = graphs.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<String>, crate::verify::OracleError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = graphs
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut failures = Vec::new();
                    for g in part {
                        if brute_force_partition(g, sizes, PartMode::NearlyConnected)?.is_none() {
                            failures.push(emit_graph6(g));
                        }
                    }
                    Ok(failures)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("explore worker panicked")).collect()
    });
    let mut report = ExploreReport { graphs: graphs.len(), failures: Vec::new() };
    for r in results {
        report.failures.extend(r?);
    }
    Ok(report)
}

/// Criterion 8: sizes 3 and 5 on every 2-connected graph with 8 vertices.
pub fn criterion_8() -> CriterionReport {
    let start = Instant::now();
    let mut c = Check::new();
    let graphs = two_connected_classes(8).expect("in range");
    let summary = match explore(&graphs, &[3, 5]) {
        Ok(report) => {
            let found = report.failures.len();
            c.expect(found == 0, || format!("no partition for {}", report.failures.join(", ")));
            format!("{} graphs on 8 vertices, {found} without a (3, 5) partition", report.graphs)
        }
        Err(e) => {
            c.expect(false, || e.to_string());
            String::new()
        }
    };
    c.report(8, "sizes (3, 5) exploration", start, Duration::from_secs(300), summary)
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionReport> {
    let (first, second) = corpus_criteria();
    vec![first, second, criterion_3(), criterion_4(), criterion_5(), criterion_6(), criterion_7(), criterion_8()]
}
