//! Command-line front end: `color` runs the certifying solver, `hom`
//! the decomposition-based homomorphism route with obstruction
//! extraction, `search` the minimal-obstruction catalog, and `verify`
//! re-validates any emitted certificate.
//!
//! Machine output (JSON, one line per input graph) goes to stdout;
//! human-readable notes go to stderr. Exit codes: 0 success/feasible,
//! 1 infeasible with certificate, 2 error.

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cycol::certificate::{
    color_outcome_json, hom_outcome_json, verify_color_outcome, verify_hom_outcome, ColorOutcome,
    HomOutcome,
};
use cycol::cycle::{color_or_witness, minimize_witness, Certificate, SolveOptions, SolveResult};
use cycol::enumerate::{
    find_minimal_obstructions, ClassSpec, MinimalityMode, DEFAULT_ENUM_CAP,
};
use cycol::format::{parse_graph, Format, ParseMode};
use cycol::graph::Graph;
use cycol::hom::{find_hom, parse_lists, ListAssignment, TargetGraph};
use cycol::td::{clique_precheck, dfs_decomposition, dp_hom, minimal_obstruction_extract, DpError, DEFAULT_WIDTH_CAP};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "cycol", version, about = "Certifying coloring into cycle targets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Graph6,
    Dimacs,
    Edgelist,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Graph6 => Format::Graph6,
            FormatArg::Dimacs => Format::Dimacs,
            FormatArg::Edgelist => Format::EdgeList,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Induced,
    Subgraph,
}

#[derive(Subcommand)]
enum Command {
    /// Color each input graph into the cycle on k-2 vertices or emit a
    /// non-colorable witness.
    Color {
        /// Path parameter; must be greater than 4.
        #[arg(long)]
        k: usize,
        /// Input format. graph6 files may hold one graph per line.
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatArg,
        /// Reject inputs with loops or parallel edges.
        #[arg(long)]
        strict: bool,
        /// Check the no-long-induced-path contract before solving.
        #[arg(long)]
        verify_input: bool,
        /// Shrink every witness to an inclusion-minimal one.
        #[arg(long)]
        minimize_witness: bool,
        /// Node budget for the exact fallback search.
        #[arg(long)]
        fallback_budget: Option<u64>,
        /// Worker threads across input graphs.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write JSON lines here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Input files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Decide H-(list-)homomorphism via tree-decomposition DP; emit a
    /// mapping or a minimal obstruction.
    Hom {
        /// Target graph, graph6.
        #[arg(long)]
        target: PathBuf,
        /// Optional lists file: `v: c1 c2 ...` per line.
        #[arg(long)]
        lists: Option<PathBuf>,
        /// Re-run the backtracking oracle and compare decisions.
        #[arg(long)]
        cross_check: bool,
        /// Dump the tree decomposition of the first input here.
        #[arg(long)]
        dump_td: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Catalog minimal non-colorable members of a path-free class.
    Search {
        /// Forbidden induced path length.
        #[arg(long)]
        k: usize,
        /// Forbidden induced biclique side size.
        #[arg(long)]
        t: Option<usize>,
        /// Target graph, graph6.
        #[arg(long)]
        target: PathBuf,
        /// Largest vertex count to enumerate.
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "induced")]
        mode: ModeArg,
        /// Write `catalog.g6` and `catalog.json` into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-validate a result JSON against the original graph.
    Verify {
        /// The original graph.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatArg,
        /// Result JSON from `color` or `hom` (one object).
        result: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Color {
            k,
            format,
            strict,
            verify_input,
            minimize_witness: minimize,
            fallback_budget,
            jobs,
            output,
            inputs,
        } => cmd_color(
            k,
            format.into(),
            strict,
            verify_input,
            minimize,
            fallback_budget,
            jobs.max(1),
            output,
            &inputs,
        ),
        Command::Hom {
            target,
            lists,
            cross_check,
            dump_td,
            format,
            output,
            inputs,
        } => cmd_hom(&target, lists.as_deref(), cross_check, dump_td.as_deref(), format.into(), output, &inputs),
        Command::Search {
            k,
            t,
            target,
            max_n,
            mode,
            out,
        } => cmd_search(k, t, &target, max_n, mode, out.as_deref()),
        Command::Verify { graph, format, result } => cmd_verify(&graph, format.into(), &result),
    }
}

/// Loads every graph from the input files: graph6 files may hold one
/// graph per line; the other formats hold a single graph per file.
fn load_graphs(inputs: &[PathBuf], format: Format, mode: ParseMode) -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for path in inputs {
        let data = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        match format {
            Format::Graph6 => {
                for (i, line) in data.split(|&b| b == b'\n').enumerate() {
                    let line: Vec<u8> = line.strip_suffix(b"\r").unwrap_or(line).to_vec();
                    if line.is_empty() {
                        continue;
                    }
                    let parsed = parse_graph(&line, format, mode)
                        .with_context(|| format!("{}:{}", path.display(), i + 1))?;
                    for w in &parsed.warnings {
                        eprintln!("{}:{}: {w}", path.display(), i + 1);
                    }
                    out.push((format!("{}:{}", path.display(), i + 1), parsed.graph));
                }
            }
            _ => {
                let parsed = parse_graph(&data, format, mode)
                    .with_context(|| path.display().to_string())?;
                for w in &parsed.warnings {
                    eprintln!("{}: {w}", path.display());
                }
                out.push((path.display().to_string(), parsed.graph));
            }
        }
    }
    Ok(out)
}

fn emit(output: &Option<PathBuf>, lines: &[String]) -> Result<()> {
    match output {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            for l in lines {
                writeln!(f, "{l}")?;
            }
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for l in lines {
                writeln!(lock, "{l}")?;
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_color(
    k: usize,
    format: Format,
    strict: bool,
    verify_input: bool,
    minimize: bool,
    fallback_budget: Option<u64>,
    jobs: usize,
    output: Option<PathBuf>,
    inputs: &[PathBuf],
) -> Result<i32> {
    if k <= 4 {
        return Err(anyhow!("--k must be greater than 4, got {k}"));
    }
    let mode = if strict { ParseMode::Strict } else { ParseMode::Lenient };
    let graphs = load_graphs(inputs, format, mode)?;
    let mut opts = SolveOptions {
        strict,
        verify_input,
        ..SolveOptions::default()
    };
    if fallback_budget.is_some() {
        opts.fallback_budget = fallback_budget;
    }

    let solve_one = |g: &Graph| -> ColorOutcome {
        match color_or_witness(g, k, &opts) {
            Ok(mut result) => {
                if minimize {
                    if let Certificate::Witness(w) = &result.certificate {
                        let out = minimize_witness(g, k, w, opts.fallback_budget);
                        if out.budget_exhausted {
                            result.flags.push("minimize_budget_exhausted".to_string());
                        } else if out.witness.vertices.len() < w.vertices.len() {
                            result.flags.push("minimized".to_string());
                        }
                        result = SolveResult {
                            certificate: Certificate::Witness(out.witness),
                            flags: result.flags,
                        };
                    }
                }
                ColorOutcome::from_result(k, &result)
            }
            Err(e) => ColorOutcome::error(k, &e.to_string()),
        }
    };

    let outcomes: Vec<ColorOutcome> = if jobs <= 1 || graphs.len() <= 1 {
        graphs.iter().map(|(_, g)| solve_one(g)).collect()
    } else {
        // Fixed-stride sharding keeps the output order independent of
        // scheduling.
        let mut slots: Vec<Option<ColorOutcome>> = vec![None; graphs.len()];
        std::thread::scope(|scope| {
            let chunks: Vec<Vec<usize>> = (0..jobs)
                .map(|j| (j..graphs.len()).step_by(jobs).collect())
                .collect();
            let mut handles = Vec::new();
            for chunk in chunks {
                let graphs = &graphs;
                let solve_one = &solve_one;
                handles.push(scope.spawn(move || {
                    chunk
                        .into_iter()
                        .map(|i| (i, solve_one(&graphs[i].1)))
                        .collect::<Vec<_>>()
                }));
            }
            for h in handles {
                for (i, o) in h.join().expect("worker panicked") {
                    slots[i] = Some(o);
                }
            }
        });
        slots.into_iter().map(|s| s.expect("all slots filled")).collect()
    };

    let mut code = 0;
    let mut lines = Vec::new();
    for ((name, _), outcome) in graphs.iter().zip(&outcomes) {
        eprintln!("{name}: {}", outcome.status);
        code = code.max(outcome.exit_code());
        lines.push(color_outcome_json(outcome));
    }
    emit(&output, &lines)?;
    Ok(code)
}

fn load_target(path: &Path) -> Result<TargetGraph> {
    let data = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_graph(&data, Format::Graph6, ParseMode::Strict)
        .with_context(|| format!("target {}", path.display()))?;
    Ok(TargetGraph::from_graph(parsed.graph))
}

fn cmd_hom(
    target_path: &Path,
    lists_path: Option<&Path>,
    cross_check: bool,
    dump_td: Option<&Path>,
    format: Format,
    output: Option<PathBuf>,
    inputs: &[PathBuf],
) -> Result<i32> {
    let target = load_target(target_path)?;
    let graphs = load_graphs(inputs, format, ParseMode::Lenient)?;
    let lists_src = match lists_path {
        Some(p) => Some(std::fs::read_to_string(p).with_context(|| p.display().to_string())?),
        None => None,
    };

    let mut code = 0;
    let mut lines = Vec::new();
    for (idx, (name, g)) in graphs.iter().enumerate() {
        let lists: Option<ListAssignment> = match &lists_src {
            Some(src) => Some(parse_lists(src, g.n(), target.size()).map_err(|e| anyhow!("{e}"))?),
            None => None,
        };
        let td = dfs_decomposition(g);
        if idx == 0 {
            if let Some(path) = dump_td {
                std::fs::write(path, td.render())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        let mut outcome = solve_hom(g, &target, lists.as_ref(), &td)?;
        if cross_check {
            let oracle = find_hom(g, &target, lists.as_ref());
            let agree = oracle.is_some() == (outcome.status == "feasible");
            if !agree {
                return Err(anyhow!("{name}: DP and oracle disagree"));
            }
            outcome.flags.push("cross_checked".to_string());
        }
        eprintln!("{name}: {}", outcome.status);
        code = code.max(outcome.exit_code());
        lines.push(hom_outcome_json(&outcome));
    }
    emit(&output, &lines)?;
    Ok(code)
}

fn solve_hom(
    g: &Graph,
    target: &TargetGraph,
    lists: Option<&ListAssignment>,
    td: &cycol::td::TreeDecomposition,
) -> Result<HomOutcome> {
    // Clique evidence short-circuits: a clique one larger than the
    // target's clique number is already a minimal obstruction when
    // lists play no role.
    if lists.is_none() {
        if let Some(clique) = clique_precheck(g, target) {
            return Ok(HomOutcome::infeasible(target, lists, clique));
        }
    }
    let decision = match dp_hom(g, target, lists, td, DEFAULT_WIDTH_CAP) {
        Ok(d) => d,
        Err(DpError::WidthExceeded { .. }) => {
            // Beyond the DP cap the oracle decides directly.
            find_hom(g, target, lists)
        }
    };
    Ok(match decision {
        Some(mapping) => HomOutcome::feasible(target, lists, mapping),
        None => {
            let obstruction = minimal_obstruction_extract(g, target, lists);
            HomOutcome::infeasible(target, lists, obstruction)
        }
    })
}

fn cmd_search(
    k: usize,
    t: Option<usize>,
    target_path: &Path,
    max_n: usize,
    mode: ModeArg,
    out_dir: Option<&Path>,
) -> Result<i32> {
    let cap = std::env::var("CYCOL_MAX_ENUM_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP);
    let target = load_target(target_path)?;
    let mode = match mode {
        ModeArg::Induced => MinimalityMode::Induced,
        ModeArg::Subgraph => MinimalityMode::Subgraph,
    };
    let spec = ClassSpec::new(k, t, target, mode);
    let catalog = find_minimal_obstructions(&spec, max_n, cap).map_err(|e| anyhow!("{e}"))?;
    eprintln!(
        "{} minimal obstruction(s) up to {max_n} vertices",
        catalog.entries.len()
    );
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join("catalog.g6"), catalog.graph6_lines())?;
            std::fs::write(dir.join("catalog.json"), catalog.metadata_json())?;
        }
        None => {
            print!("{}", catalog.graph6_lines());
        }
    }
    Ok(0)
}

fn cmd_verify(graph_path: &Path, format: Format, result_path: &Path) -> Result<i32> {
    let data = std::fs::read(graph_path).with_context(|| graph_path.display().to_string())?;
    let g = parse_graph(&data, format, ParseMode::Lenient)
        .with_context(|| graph_path.display().to_string())?
        .graph;
    let text = std::fs::read_to_string(result_path)
        .with_context(|| result_path.display().to_string())?;
    let line = text.lines().next().unwrap_or_default();
    let value: serde_json::Value = serde_json::from_str(line).context("result is not JSON")?;
    let verdict = if value.get("target").is_some() {
        let outcome: HomOutcome = serde_json::from_value(value).context("bad hom result")?;
        verify_hom_outcome(&g, &outcome).map_err(|e| anyhow!("{e}"))
    } else {
        let outcome: ColorOutcome = serde_json::from_value(value).context("bad color result")?;
        verify_color_outcome(&g, &outcome).map_err(|e| anyhow!("{e}"))
    };
    match verdict {
        Ok(()) => {
            eprintln!("certificate valid");
            Ok(0)
        }
        Err(e) => {
            eprintln!("certificate INVALID: {e:#}");
            Ok(1)
        }
    }
}

