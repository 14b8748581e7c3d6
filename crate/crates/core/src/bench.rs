//! Random query, Dijkstra rank and verification harnesses.

use std::io::Write;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ch::{ChQuery, ContractionHierarchy};
use crate::dijkstra::{dijkstra_rank_set, dijkstra_rank_targets_with, BidirectionalDijkstra, Dijkstra, Direction};
use crate::eh::{compute_min_vertices, unpack_path, EdgeHierarchy, EhQuery, StallPolicy};
use crate::graph::{Distance, Graph, VertexId, INFINITY};
use crate::stats::QueryStats;

/// Name of the generator behind every seeded sample.
pub const RNG_NAME: &str = "ChaCha8Rng";

/// Environment variable holding the number of verification workers.
pub const WORKERS_ENV: &str = "EH_WORKERS";

pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or(1)
}

/// `count` source/target pairs drawn uniformly with replacement.
pub fn random_pairs(vertex_count: usize, count: usize, seed: u64) -> Vec<(VertexId, VertexId)> {
    if vertex_count == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let s = rng.gen_range(0..vertex_count) as VertexId;
            let t = rng.gen_range(0..vertex_count) as VertexId;
            (s, t)
        })
        .collect()
}

fn random_sources(vertex_count: usize, count: usize, seed: u64) -> Vec<VertexId> {
    if vertex_count == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(0..vertex_count) as VertexId).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Eh,
    Ch,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::Eh => "EH",
            Algorithm::Ch => "CH",
        })
    }
}

/// What a benchmark runs on.
#[derive(Clone, Copy)]
pub struct BenchInput<'a> {
    pub instance: &'a str,
    pub graph: &'a Graph,
    pub eh: Option<&'a EdgeHierarchy>,
    pub eh_preprocessing: Option<Duration>,
    pub ch: Option<&'a ContractionHierarchy>,
    pub ch_preprocessing: Option<Duration>,
}

impl<'a> BenchInput<'a> {
    pub fn new(instance: &'a str, graph: &'a Graph) -> Self {
        BenchInput {
            instance,
            graph,
            eh: None,
            eh_preprocessing: None,
            ch: None,
            ch_preprocessing: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RandomQueryConfig {
    pub queries: usize,
    pub seed: u64,
    /// Policies for the EH runs. CH always runs with and without stalling.
    pub policies: Vec<StallPolicy>,
    /// Also count vertices settled at their true distance (two extra
    /// Dijkstra runs per pair).
    pub min_vertices: bool,
}

impl Default for RandomQueryConfig {
    fn default() -> Self {
        RandomQueryConfig {
            queries: 10_000,
            seed: 1,
            policies: StallPolicy::benchmark_grid(),
            min_vertices: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub algorithm: Algorithm,
    pub policy: String,
    pub queries: usize,
    pub mean_time_us: f64,
    pub mean_settled: f64,
    pub mean_relaxed: f64,
    pub mean_stall_checks: f64,
    pub mean_stalled: f64,
    pub mean_min_vertices: Option<f64>,
    pub preprocessing_seconds: Option<f64>,
    pub hierarchy_edges: usize,
    pub unreachable: usize,
    /// Sum of all finite distances; equal across rows of a correct run.
    pub distance_sum: u128,
    /// Fastest configuration of its algorithm.
    pub best: bool,
    /// Exact counter totals, for determinism checks.
    pub totals: [u64; 5],
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub instance: String,
    pub seed: u64,
    pub queries: usize,
    pub rows: Vec<BenchRow>,
}

#[derive(Default)]
struct Accumulator {
    stats: QueryStats,
    unreachable: usize,
    distance_sum: u128,
}

impl Accumulator {
    fn add(&mut self, distance: Distance, stats: QueryStats) {
        self.stats += stats;
        if distance == INFINITY {
            self.unreachable += 1;
        } else {
            self.distance_sum += distance as u128;
        }
    }
}

/// Runs every configuration on the same seeded pair sequence.
pub fn run_random_queries(input: &BenchInput<'_>, config: &RandomQueryConfig) -> BenchmarkReport {
    let pairs = random_pairs(input.graph.vertex_count(), config.queries, config.seed);
    let n = pairs.len();
    let ch_policies = [StallPolicy::None, StallPolicy::OnDemand];
    let eh_policies: &[StallPolicy] = if input.eh.is_some() { &config.policies } else { &[] };
    let ch_policies: &[StallPolicy] = if input.ch.is_some() { &ch_policies } else { &[] };
    let mut eh_acc: Vec<Accumulator> = eh_policies.iter().map(|_| Accumulator::default()).collect();
    let mut ch_acc: Vec<Accumulator> = ch_policies.iter().map(|_| Accumulator::default()).collect();
    let mut eh_query = input.eh.map(EhQuery::new);
    let mut ch_query = input.ch.map(ChQuery::new);
    if let Some(q) = &mut eh_query {
        q.enable_trace(config.min_vertices);
    }
    if let Some(q) = &mut ch_query {
        q.enable_trace(config.min_vertices);
    }
    let mut search = Dijkstra::new(input.graph.vertex_count());
    let (mut fwd, mut bwd) = (Vec::new(), Vec::new());
    // pair-major order keeps exact distances for one pair in memory at a time
    for &(s, t) in &pairs {
        if config.min_vertices {
            fwd = search.run(input.graph, s, Direction::Forward).dist;
            bwd = search.run(input.graph, t, Direction::Backward).dist;
        }
        if let Some(q) = &mut eh_query {
            for (acc, &policy) in eh_acc.iter_mut().zip(eh_policies) {
                let mut r = q.query(s, t, policy);
                if config.min_vertices {
                    let trace = q.trace().iter().map(|e| (e.direction, e.vertex, e.distance));
                    r.stats.min_vertices = compute_min_vertices(trace, &fwd, &bwd);
                }
                acc.add(r.distance, r.stats);
            }
        }
        if let Some(q) = &mut ch_query {
            for (acc, &policy) in ch_acc.iter_mut().zip(ch_policies) {
                let (d, mut stats) = q.query(s, t, policy == StallPolicy::OnDemand);
                if config.min_vertices {
                    stats.min_vertices = compute_min_vertices(q.trace().iter().copied(), &fwd, &bwd);
                }
                acc.add(d, stats);
            }
        }
    }

    let mut rows = Vec::new();
    let mut finish = |algorithm, policy: &StallPolicy, acc: Accumulator, pre: Option<Duration>, edges| {
        let q = n.max(1) as f64;
        let s = &acc.stats;
        rows.push(BenchRow {
            instance: input.instance.to_string(),
            algorithm,
            policy: policy.to_string(),
            queries: n,
            mean_time_us: s.elapsed.as_secs_f64() * 1e6 / q,
            mean_settled: s.settled as f64 / q,
            mean_relaxed: s.relaxed as f64 / q,
            mean_stall_checks: s.stall_checks as f64 / q,
            mean_stalled: s.stalled as f64 / q,
            mean_min_vertices: config.min_vertices.then(|| s.min_vertices as f64 / q),
            preprocessing_seconds: pre.map(|d| d.as_secs_f64()),
            hierarchy_edges: edges,
            unreachable: acc.unreachable,
            distance_sum: acc.distance_sum,
            best: false,
            totals: s.counts(),
        });
    };
    if n > 0 {
        for (acc, policy) in eh_acc.into_iter().zip(eh_policies) {
            let edges = input.eh.map_or(0, |e| e.edge_count());
            finish(Algorithm::Eh, policy, acc, input.eh_preprocessing, edges);
        }
        for (acc, policy) in ch_acc.into_iter().zip(ch_policies) {
            let edges = input.ch.map_or(0, |c| c.edge_count());
            finish(Algorithm::Ch, policy, acc, input.ch_preprocessing, edges);
        }
    }
    for algorithm in [Algorithm::Eh, Algorithm::Ch] {
        let best = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.algorithm == algorithm)
            .min_by(|a, b| a.1.mean_time_us.total_cmp(&b.1.mean_time_us))
            .map(|(i, _)| i);
        if let Some(i) = best {
            rows[i].best = true;
        }
    }
    BenchmarkReport {
        instance: input.instance.to_string(),
        seed: config.seed,
        queries: n,
        rows,
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.3}")).unwrap_or_default()
}

impl BenchmarkReport {
    pub const HEADER: [&'static str; 15] = [
        "instance",
        "algorithm",
        "policy",
        "queries",
        "mean_time_us",
        "mean_settled",
        "mean_relaxed",
        "mean_stall_checks",
        "mean_stalled",
        "mean_min_vertices",
        "preprocessing_s",
        "hierarchy_edges",
        "unreachable",
        "distance_sum",
        "best",
    ];

    pub fn write_csv<W: Write>(&self, mut out: W) -> csv::Result<()> {
        writeln!(out, "# rng={RNG_NAME} seed={} queries={}", self.seed, self.queries)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.instance.clone(),
                r.algorithm.to_string(),
                r.policy.clone(),
                r.queries.to_string(),
                format!("{:.3}", r.mean_time_us),
                format!("{:.3}", r.mean_settled),
                format!("{:.3}", r.mean_relaxed),
                format!("{:.3}", r.mean_stall_checks),
                format!("{:.3}", r.mean_stalled),
                opt(r.mean_min_vertices),
                opt(r.preprocessing_seconds),
                r.hierarchy_edges.to_string(),
                r.unreachable.to_string(),
                r.distance_sum.to_string(),
                (r.best as u8).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quartiles {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
}

impl Quartiles {
    /// Linear interpolation between closest ranks. `None` for no samples.
    pub fn of(samples: &mut [f64]) -> Option<Quartiles> {
        if samples.is_empty() {
            return None;
        }
        samples.sort_by(f64::total_cmp);
        let at = |p: f64| {
            let pos = p * (samples.len() - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            samples[lo] + (samples[hi] - samples[lo]) * (pos - lo as f64)
        };
        Some(Quartiles {
            q1: at(0.25),
            median: at(0.5),
            q3: at(0.75),
        })
    }
}

#[derive(Debug, Clone)]
pub struct RankConfig {
    pub sources: usize,
    pub seed: u64,
    pub policy: StallPolicy,
    /// Share of queries re-checked with an independent bidirectional search.
    pub recheck_fraction: f64,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            sources: 1000,
            seed: 1,
            policy: StallPolicy::OnDemand,
            recheck_fraction: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankRow {
    pub instance: String,
    pub algorithm: Algorithm,
    pub policy: String,
    pub rank: usize,
    pub samples: usize,
    pub time_us: Option<Quartiles>,
    pub settled: Option<Quartiles>,
    pub relaxed: Option<Quartiles>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub source: VertexId,
    pub target: VertexId,
    pub algorithm: Algorithm,
    pub policy: String,
    pub expected: Distance,
    pub got: Distance,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |d: Distance| {
            if d == INFINITY {
                "inf".to_string()
            } else {
                d.to_string()
            }
        };
        write!(
            f,
            "{} {} {} -> {}: expected {}, got {}",
            self.algorithm,
            self.policy,
            self.source,
            self.target,
            show(self.expected),
            show(self.got)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub instance: String,
    pub seed: u64,
    pub ranks: Vec<usize>,
    pub sources: Vec<VertexId>,
    pub rows: Vec<RankRow>,
    /// Sources from which some requested rank was unreachable, with the
    /// missing ranks.
    pub short_sources: Vec<(VertexId, Vec<usize>)>,
    pub queries: usize,
    pub rechecked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl RankReport {
    /// Whether the median settled count never drops as the rank grows.
    pub fn median_settled_monotone(&self, algorithm: Algorithm) -> bool {
        let medians: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.algorithm == algorithm)
            .filter_map(|r| r.settled.map(|q| q.median))
            .collect();
        medians.windows(2).all(|w| w[0] <= w[1])
    }

    pub const HEADER: [&'static str; 14] = [
        "instance",
        "algorithm",
        "policy",
        "rank",
        "samples",
        "time_us_q1",
        "time_us_median",
        "time_us_q3",
        "settled_q1",
        "settled_median",
        "settled_q3",
        "relaxed_q1",
        "relaxed_median",
        "relaxed_q3",
    ];

    pub fn write_csv<W: Write>(&self, mut out: W) -> csv::Result<()> {
        writeln!(
            out,
            "# rng={RNG_NAME} seed={} sources={} queries={} rechecked={} mismatches={} short_sources={}",
            self.seed,
            self.sources.len(),
            self.queries,
            self.rechecked,
            self.mismatches.len(),
            self.short_sources.len()
        )?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::HEADER)?;
        let q = |x: Option<Quartiles>, f: fn(&Quartiles) -> f64| x.map(|v| format!("{:.3}", f(&v))).unwrap_or_default();
        for r in &self.rows {
            let mut rec = vec![
                r.instance.clone(),
                r.algorithm.to_string(),
                r.policy.clone(),
                r.rank.to_string(),
                r.samples.to_string(),
            ];
            for stat in [r.time_us, r.settled, r.relaxed] {
                rec.push(q(stat, |v| v.q1));
                rec.push(q(stat, |v| v.median));
                rec.push(q(stat, |v| v.q3));
            }
            w.write_record(rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

#[derive(Default)]
struct RankSamples {
    time: Vec<f64>,
    settled: Vec<f64>,
    relaxed: Vec<f64>,
}

impl RankSamples {
    fn push(&mut self, stats: &QueryStats) {
        self.time.push(stats.elapsed.as_secs_f64() * 1e6);
        self.settled.push(stats.settled as f64);
        self.relaxed.push(stats.relaxed as f64);
    }
}

/// One query per source and achievable rank target.
pub fn run_dijkstra_rank_bench(input: &BenchInput<'_>, config: &RankConfig) -> RankReport {
    let graph = input.graph;
    let n = graph.vertex_count();
    let ranks = dijkstra_rank_set(n);
    let sources = random_sources(n, config.sources, config.seed);
    let mut eh_samples: Vec<RankSamples> = ranks.iter().map(|_| RankSamples::default()).collect();
    let mut ch_samples: Vec<RankSamples> = ranks.iter().map(|_| RankSamples::default()).collect();
    let mut short_sources = Vec::new();
    let mut mismatches = Vec::new();
    let mut search = Dijkstra::new(n);
    let mut bidir = BidirectionalDijkstra::new(n);
    let mut eh_query = input.eh.map(EhQuery::new);
    let mut ch_query = input.ch.map(ChQuery::new);
    // independent sampling stream for the re-check
    let mut recheck_rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed_cafe);
    let mut queries = 0;
    let mut rechecked = 0;
    for &s in &sources {
        let targets = dijkstra_rank_targets_with(&mut search, graph, s, &ranks);
        if !targets.skipped.is_empty() {
            short_sources.push((s, targets.skipped.clone()));
        }
        for (&(rank, t), &expected) in targets.targets.iter().zip(&targets.distances) {
            let slot = ranks.binary_search(&rank).expect("requested rank");
            queries += 1;
            let recheck = recheck_rng.gen_bool(config.recheck_fraction.clamp(0.0, 1.0));
            if recheck {
                rechecked += 1;
                let independent = bidir.distance(graph, s, t);
                if independent != expected {
                    mismatches.push(Mismatch {
                        source: s,
                        target: t,
                        algorithm: Algorithm::Eh,
                        policy: "dijkstra".into(),
                        expected,
                        got: independent,
                    });
                }
            }
            if let Some(q) = &mut eh_query {
                let r = q.query(s, t, config.policy);
                if r.distance != expected {
                    mismatches.push(Mismatch {
                        source: s,
                        target: t,
                        algorithm: Algorithm::Eh,
                        policy: config.policy.to_string(),
                        expected,
                        got: r.distance,
                    });
                }
                eh_samples[slot].push(&r.stats);
            }
            if let Some(q) = &mut ch_query {
                let (d, stats) = q.query(s, t, true);
                if d != expected {
                    mismatches.push(Mismatch {
                        source: s,
                        target: t,
                        algorithm: Algorithm::Ch,
                        policy: StallPolicy::OnDemand.to_string(),
                        expected,
                        got: d,
                    });
                }
                ch_samples[slot].push(&stats);
            }
        }
    }
    let mut rows = Vec::new();
    let mut emit = |algorithm, policy: String, samples: Vec<RankSamples>| {
        for (&rank, mut s) in ranks.iter().zip(samples) {
            rows.push(RankRow {
                instance: input.instance.to_string(),
                algorithm,
                policy: policy.clone(),
                rank,
                samples: s.settled.len(),
                time_us: Quartiles::of(&mut s.time),
                settled: Quartiles::of(&mut s.settled),
                relaxed: Quartiles::of(&mut s.relaxed),
            });
        }
    };
    if input.eh.is_some() {
        emit(Algorithm::Eh, config.policy.to_string(), eh_samples);
    }
    if input.ch.is_some() {
        emit(Algorithm::Ch, StallPolicy::OnDemand.to_string(), ch_samples);
    }
    RankReport {
        instance: input.instance.to_string(),
        seed: config.seed,
        ranks,
        sources,
        rows,
        short_sources,
        queries,
        rechecked,
        mismatches,
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub pairs: usize,
    pub seed: u64,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnpackFailure {
    pub source: VertexId,
    pub target: VertexId,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub pairs: usize,
    pub mismatches: Vec<Mismatch>,
    pub unpack_failures: Vec<UnpackFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.unpack_failures.is_empty()
    }
}

/// Policies every verified pair is queried with.
pub const VERIFY_POLICIES: [StallPolicy; 5] = [
    StallPolicy::None,
    StallPolicy::OnDemand,
    StallPolicy::InAdvance,
    StallPolicy::Partial(0.5),
    StallPolicy::Partial(1.0),
];

fn verify_chunk(input: &BenchInput<'_>, pairs: &[(VertexId, VertexId)]) -> VerifyReport {
    let graph = input.graph;
    let mut report = VerifyReport {
        pairs: pairs.len(),
        ..VerifyReport::default()
    };
    let mut bidir = BidirectionalDijkstra::new(graph.vertex_count());
    let mut eh_query = input.eh.map(EhQuery::new);
    let mut ch_query = input.ch.map(ChQuery::new);
    for &(s, t) in pairs {
        let expected = bidir.distance(graph, s, t);
        if let Some(q) = &mut eh_query {
            for policy in VERIFY_POLICIES {
                let r = q.query(s, t, policy);
                if r.distance != expected {
                    report.mismatches.push(Mismatch {
                        source: s,
                        target: t,
                        algorithm: Algorithm::Eh,
                        policy: policy.to_string(),
                        expected,
                        got: r.distance,
                    });
                    continue;
                }
                if policy != StallPolicy::OnDemand || expected == INFINITY {
                    continue;
                }
                if let Err(reason) = check_unpacked(q.hierarchy(), graph, s, t, &r.path, expected) {
                    report.unpack_failures.push(UnpackFailure {
                        source: s,
                        target: t,
                        reason,
                    });
                }
            }
        }
        if let Some(q) = &mut ch_query {
            for stall in [false, true] {
                let (d, _) = q.query(s, t, stall);
                if d != expected {
                    report.mismatches.push(Mismatch {
                        source: s,
                        target: t,
                        algorithm: Algorithm::Ch,
                        policy: if stall {
                            StallPolicy::OnDemand
                        } else {
                            StallPolicy::None
                        }
                        .to_string(),
                        expected,
                        got: d,
                    });
                }
            }
        }
    }
    report
}

fn check_unpacked(
    eh: &EdgeHierarchy,
    graph: &Graph,
    s: VertexId,
    t: VertexId,
    packed: &[crate::graph::EdgeId],
    expected: Distance,
) -> Result<(), String> {
    let edges = unpack_path(eh, packed).map_err(|e| e.to_string())?;
    if s == t {
        return if edges.is_empty() {
            Ok(())
        } else {
            Err("non-empty path between equal endpoints".into())
        };
    }
    if edges.first().map(|e| e.tail) != Some(s) || edges.last().map(|e| e.head) != Some(t) {
        return Err("path does not connect the endpoints".into());
    }
    if edges.windows(2).any(|w| w[0].head != w[1].tail) {
        return Err("path is not contiguous".into());
    }
    for e in &edges {
        match graph.find_edge(e.tail, e.head) {
            Some(id) if graph.weight(id) == e.weight => {}
            _ => return Err(format!("({}, {}) is not an input edge", e.tail, e.head)),
        }
    }
    let sum: Distance = edges.iter().map(|e| e.weight as Distance).sum();
    if sum != expected {
        return Err(format!("unpacked length {sum} differs from {expected}"));
    }
    Ok(())
}

/// Compares every hierarchy query on seeded pairs with bidirectional
/// Dijkstra on the input graph. Pairs are split across `workers` threads;
/// the report lists findings in pair order.
pub fn verify_against_oracle(input: &BenchInput<'_>, config: &VerifyConfig) -> VerifyReport {
    let pairs = random_pairs(input.graph.vertex_count(), config.pairs, config.seed);
    let workers = config.workers.max(1).min(pairs.len().max(1));
    let chunk = pairs.len().div_ceil(workers).max(1);
    let parts: Vec<VerifyReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = pairs
            .chunks(chunk)
            .map(|part| scope.spawn(move || verify_chunk(input, part)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verify worker panicked"))
            .collect()
    });
    let mut report = VerifyReport::default();
    for part in parts {
        report.pairs += part.pairs;
        report.mismatches.extend(part.mismatches);
        report.unpack_failures.extend(part.unpack_failures);
    }
    report
}
