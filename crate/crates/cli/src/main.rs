use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use eh_core::bench::{
    run_dijkstra_rank_bench, run_random_queries, verify_against_oracle, worker_count, BenchInput, RandomQueryConfig,
    RankConfig, VerifyConfig, RNG_NAME, WORKERS_ENV,
};
use eh_core::ch::build_contraction_hierarchy;
use eh_core::dimacs::{read_dimacs_file, write_dimacs};
use eh_core::eh::{build_edge_hierarchy_observed, unpack_path, RoundLog};
use eh_core::io::{read_contraction_hierarchy, read_edge_hierarchy, write_contraction_hierarchy, write_edge_hierarchy};
use eh_core::turns::{turn_expand, TurnCosts};
use eh_core::{ContractionHierarchy, EdgeHierarchy, EhQuery, Graph, OracleKind, StallPolicy, INFINITY};

/// Edge hierarchies: preprocessing, queries and benchmarks on DIMACS graphs.
///
/// Vertex ids on the command line and in printed paths are 1-based, as in
/// `.gr` files.
#[derive(Parser)]
#[command(name = "eh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an edge hierarchy.
    BuildEh {
        graph: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Exact distance oracle used during construction.
        #[arg(long, default_value = "ch")]
        oracle: OracleKind,
        /// Write per-round progress as CSV.
        #[arg(long)]
        log_rounds: Option<PathBuf>,
    },
    /// Build a contraction hierarchy.
    BuildCh {
        graph: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Expand a graph so that turn costs become edge weights.
    TurnExpand {
        input: PathBuf,
        #[arg(long)]
        uturn_cost: u32,
        #[arg(long)]
        turn_cost: u32,
        #[arg(short, long)]
        output: PathBuf,
        /// Write the vertex mapping between both graphs.
        #[arg(long)]
        mapping: Option<PathBuf>,
    },
    /// Answer one shortest path query on an edge hierarchy.
    Query {
        hierarchy: PathBuf,
        #[arg(short)]
        s: u32,
        #[arg(short)]
        t: u32,
        /// none, on-demand, in-advance or partial:<fraction>
        #[arg(long, default_value = "on-demand")]
        stall: StallPolicy,
        /// Print the path as original edges.
        #[arg(long)]
        unpack: bool,
    },
    /// Average search statistics over random queries for every stall policy.
    BenchRandom {
        graph: PathBuf,
        #[command(flatten)]
        hierarchies: Hierarchies,
        #[arg(short = 'n', long, default_value_t = 10_000)]
        queries: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also count vertices settled at their true distance.
        #[arg(long)]
        min_vertices: bool,
        /// Comma separated policies; defaults to none, on-demand, in-advance
        /// and partial:0.0 to partial:1.0 in steps of 0.1.
        #[arg(long, value_delimiter = ',')]
        policies: Option<Vec<StallPolicy>>,
        #[command(flatten)]
        out: Output,
    },
    /// Query statistics by Dijkstra rank of the target.
    BenchRank {
        graph: PathBuf,
        #[command(flatten)]
        hierarchies: Hierarchies,
        #[arg(long, default_value_t = 1000)]
        sources: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "on-demand")]
        stall: StallPolicy,
        /// Share of queries re-checked with bidirectional Dijkstra.
        #[arg(long, default_value_t = 0.01)]
        recheck: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Compare hierarchy queries with bidirectional Dijkstra.
    Verify {
        graph: PathBuf,
        #[command(flatten)]
        hierarchies: Hierarchies,
        #[arg(short = 'n', long, default_value_t = 10_000)]
        pairs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct Hierarchies {
    /// Edge hierarchy file; built in memory when missing.
    #[arg(long)]
    eh: Option<PathBuf>,
    /// Contraction hierarchy file; built in memory when missing.
    #[arg(long)]
    ch: Option<PathBuf>,
    #[arg(long)]
    skip_eh: bool,
    #[arg(long)]
    skip_ch: bool,
    /// Instance name for report rows; defaults to the graph file stem.
    #[arg(long)]
    instance: Option<String>,
}

#[derive(Args)]
struct Output {
    /// CSV destination; stdout when missing.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl Output {
    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        })
    }
}

struct Loaded {
    instance: String,
    graph: Graph,
    eh: Option<(EdgeHierarchy, Option<std::time::Duration>)>,
    ch: Option<(ContractionHierarchy, Option<std::time::Duration>)>,
}

impl Loaded {
    fn input(&self) -> BenchInput<'_> {
        BenchInput {
            instance: &self.instance,
            graph: &self.graph,
            eh: self.eh.as_ref().map(|x| &x.0),
            eh_preprocessing: self.eh.as_ref().and_then(|x| x.1),
            ch: self.ch.as_ref().map(|x| &x.0),
            ch_preprocessing: self.ch.as_ref().and_then(|x| x.1),
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    read_dimacs_file(path).with_context(|| format!("reading {}", path.display()))
}

fn load(graph_path: &Path, h: &Hierarchies) -> Result<Loaded> {
    let graph = load_graph(graph_path)?;
    let instance = h.instance.clone().unwrap_or_else(|| {
        graph_path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    let eh = if h.skip_eh {
        None
    } else if let Some(p) = &h.eh {
        let eh = read_edge_hierarchy(p).with_context(|| format!("reading {}", p.display()))?;
        if eh.vertex_count() != graph.vertex_count() {
            bail!("{} does not belong to {}", p.display(), graph_path.display());
        }
        Some((eh, None))
    } else {
        let start = Instant::now();
        let eh = build_edge_hierarchy_observed(&graph, OracleKind::Ch, &mut |_| {});
        Some((eh, Some(start.elapsed())))
    };
    let ch = if h.skip_ch {
        None
    } else if let Some(p) = &h.ch {
        let ch = read_contraction_hierarchy(p).with_context(|| format!("reading {}", p.display()))?;
        if ch.vertex_count() != graph.vertex_count() {
            bail!("{} does not belong to {}", p.display(), graph_path.display());
        }
        Some((ch, None))
    } else {
        let start = Instant::now();
        let ch = build_contraction_hierarchy(&graph);
        Some((ch, Some(start.elapsed())))
    };
    Ok(Loaded {
        instance,
        graph,
        eh,
        ch,
    })
}

fn write_round_log(path: &Path, rounds: &[RoundLog]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "round,selected,inserted,reused,unranked_after,simulated,elapsed_ms")?;
    for r in rounds {
        writeln!(
            w,
            "{},{},{},{},{},{},{:.3}",
            r.round,
            r.selected,
            r.inserted,
            r.reused,
            r.unranked_after,
            r.simulated,
            r.elapsed.as_secs_f64() * 1e3
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Converts a 1-based command line id.
fn vertex(id: u32, n: usize, flag: &str) -> Result<u32> {
    if id == 0 || id as usize > n {
        bail!("-{flag} {id} is outside 1..={n}");
    }
    Ok(id - 1)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::BuildEh {
            graph,
            output,
            oracle,
            log_rounds,
        } => {
            let g = load_graph(&graph)?;
            let start = Instant::now();
            let mut rounds = Vec::new();
            let eh = build_edge_hierarchy_observed(&g, oracle, &mut |r| rounds.push(r.clone()));
            let elapsed = start.elapsed();
            write_edge_hierarchy(&eh, &output).with_context(|| format!("writing {}", output.display()))?;
            if let Some(p) = log_rounds {
                write_round_log(&p, &rounds).with_context(|| format!("writing {}", p.display()))?;
            }
            eprintln!(
                "{} vertices, {} input edges, {} hierarchy edges ({} shortcuts), {} rounds, {:.2} s",
                g.vertex_count(),
                g.edge_count(),
                eh.edge_count(),
                eh.shortcut_count(),
                rounds.len(),
                elapsed.as_secs_f64()
            );
        }
        Command::BuildCh { graph, output } => {
            let g = load_graph(&graph)?;
            let start = Instant::now();
            let ch = build_contraction_hierarchy(&g);
            let elapsed = start.elapsed();
            write_contraction_hierarchy(&ch, &output).with_context(|| format!("writing {}", output.display()))?;
            eprintln!(
                "{} vertices, {} hierarchy edges ({} shortcuts), {:.2} s",
                ch.vertex_count(),
                ch.edge_count(),
                ch.shortcut_count(),
                elapsed.as_secs_f64()
            );
        }
        Command::TurnExpand {
            input,
            uturn_cost,
            turn_cost,
            output,
            mapping,
        } => {
            let g = load_graph(&input)?;
            let (expanded, map) = turn_expand(
                &g,
                TurnCosts {
                    uturn: uturn_cost,
                    turn: turn_cost,
                },
            )?;
            let mut w =
                BufWriter::new(File::create(&output).with_context(|| format!("creating {}", output.display()))?);
            write_dimacs(&expanded, &mut w)?;
            w.flush()?;
            if let Some(p) = mapping {
                std::fs::write(&p, map.to_text(&g)).with_context(|| format!("writing {}", p.display()))?;
            }
            eprintln!("{} vertices, {} edges", expanded.vertex_count(), expanded.edge_count());
        }
        Command::Query {
            hierarchy,
            s,
            t,
            stall,
            unpack,
        } => {
            let eh = read_edge_hierarchy(&hierarchy).with_context(|| format!("reading {}", hierarchy.display()))?;
            let n = eh.vertex_count();
            let (s, t) = (vertex(s, n, "s")?, vertex(t, n, "t")?);
            let mut q = EhQuery::new(&eh);
            let r = q.query(s, t, stall);
            let mut out = io::stdout().lock();
            if r.distance == INFINITY {
                writeln!(out, "distance inf")?;
            } else {
                writeln!(out, "distance {}", r.distance)?;
            }
            if let Some(m) = r.meeting {
                writeln!(out, "meeting {}", m + 1)?;
            }
            let st = &r.stats;
            writeln!(
                out,
                "settled {} relaxed {} stall_checks {} stalled {} time_us {:.1}",
                st.settled,
                st.relaxed,
                st.stall_checks,
                st.stalled,
                st.elapsed.as_secs_f64() * 1e6
            )?;
            writeln!(out, "packed_edges {}", r.path.len())?;
            if unpack && r.distance != INFINITY {
                let edges = unpack_path(&eh, &r.path)?;
                let mut path = vec![s + 1];
                path.extend(edges.iter().map(|e| e.head + 1));
                let text: Vec<String> = path.iter().map(|v| v.to_string()).collect();
                writeln!(out, "path {}", text.join(" "))?;
            }
        }
        Command::BenchRandom {
            graph,
            hierarchies,
            queries,
            seed,
            min_vertices,
            policies,
            out,
        } => {
            let loaded = load(&graph, &hierarchies)?;
            let config = RandomQueryConfig {
                queries,
                seed,
                policies: policies.unwrap_or_else(StallPolicy::benchmark_grid),
                min_vertices,
            };
            let report = run_random_queries(&loaded.input(), &config);
            report.write_csv(out.writer()?)?;
        }
        Command::BenchRank {
            graph,
            hierarchies,
            sources,
            seed,
            stall,
            recheck,
            out,
        } => {
            let loaded = load(&graph, &hierarchies)?;
            let config = RankConfig {
                sources,
                seed,
                policy: stall,
                recheck_fraction: recheck,
            };
            let report = run_dijkstra_rank_bench(&loaded.input(), &config);
            report.write_csv(out.writer()?)?;
            for m in &report.mismatches {
                eprintln!("mismatch: {m}");
            }
            if !report.mismatches.is_empty() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Verify {
            graph,
            hierarchies,
            pairs,
            seed,
        } => {
            let loaded = load(&graph, &hierarchies)?;
            let workers = worker_count();
            let report = verify_against_oracle(&loaded.input(), &VerifyConfig { pairs, seed, workers });
            println!(
                "rng {RNG_NAME} seed {seed} pairs {} workers {workers} ({WORKERS_ENV})",
                report.pairs
            );
            for m in &report.mismatches {
                println!(
                    "mismatch {} {} {} -> {}: expected {}, got {}",
                    m.algorithm,
                    m.policy,
                    m.source + 1,
                    m.target + 1,
                    show(m.expected),
                    show(m.got)
                );
            }
            for f in &report.unpack_failures {
                println!("unpack {} -> {}: {}", f.source + 1, f.target + 1, f.reason);
            }
            if report.passed() {
                println!("ok");
            } else {
                println!(
                    "FAILED: {} mismatches, {} unpack failures",
                    report.mismatches.len(),
                    report.unpack_failures.len()
                );
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn show(d: u64) -> String {
    if d == INFINITY {
        "inf".into()
    } else {
        d.to_string()
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
