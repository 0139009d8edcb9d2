use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use groupsparse::convex::{
    count_hierarchy_violations, hierarchical_group_lasso, latent_group_lasso, refit_support, support_of,
};
use groupsparse::exact::{brute_force_wmc, greedy_wmc, solve_gwmc_dp, solve_hierarchical_dp};
use groupsparse::relax::{
    hierarchical_frontier, hierarchical_lambda_sweep, lambda_sweep, pareto_frontier, solve_regularized,
    FrontierSolver, ParetoFrontier,
};
use groupsparse::signals::{
    approximate_from_cover, find_stand_in, gen_piecewise_constant, haar_forward, haar_inverse, hierarchy_groups,
    parent_child_groups,
    read_signal, signal_to_csv, squared_error, threshold, write_haar_csv, HaarCoefficients,
};
use groupsparse::structure::file::{read_structure, structure_to_json};
use groupsparse::structure::{classify, tu_certificate, StructureTag, Witness};
use groupsparse::{fixtures, Error, GroupStructure, Selection, TreeModel, WeightVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "groupsparse", version, about = "Group-sparse model selection experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the structure class and which unimodularity certificate applies.
    Classify {
        #[arg(long)]
        structure: PathBuf,
    },
    /// Select groups covering as much signal energy as the budgets allow.
    Solve(SolveArgs),
    /// Frontier of best covered energy per group budget, with a λ sweep.
    Pareto(ParetoArgs),
    /// Compare the tree DP with both convex baselines on a Haar stand-in signal.
    HaarExperiment(HaarArgs),
    /// Write a random piecewise-constant signal.
    GenSignal(GenSignalArgs),
    /// Write a group structure file.
    GenStructure(GenStructureArgs),
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Inputs {
    #[arg(long)]
    structure: PathBuf,
    #[arg(long)]
    signal: PathBuf,
    /// Magnitudes at or below this are treated as zero.
    #[arg(long, default_value_t = 0.0)]
    threshold: f64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    inputs: Inputs,
    /// Group budget G.
    #[arg(long)]
    groups: Option<usize>,
    /// Element budget K.
    #[arg(long)]
    sparsity: Option<usize>,
    /// One of dp, greedy, oracle or lp:<λ>.
    #[arg(long, default_value = "dp")]
    method: String,
    /// Shorthand for `--method lp:<λ>`.
    #[arg(long)]
    lambda: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ParetoArgs {
    #[command(flatten)]
    inputs: Inputs,
    /// Comma-separated λ values; derived from the frontier slopes when absent.
    #[arg(long, value_delimiter = ',')]
    lambda_grid: Option<Vec<f64>>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct HaarArgs {
    /// First generator seed to try.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    length: usize,
    /// Number of nonzero Haar coefficients required of the stand-in.
    #[arg(long, default_value_t = 25)]
    sparsity: usize,
    /// λ values for both convex methods; a geometric grid when absent.
    #[arg(long, value_delimiter = ',')]
    lambda_grid: Option<Vec<f64>>,
    /// Also write the stand-in signal here.
    #[arg(long)]
    signal_out: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GenSignalArgs {
    #[arg(long, default_value_t = 64)]
    length: usize,
    #[arg(long, default_value_t = 4)]
    pieces: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Search seeds from `--seed` for a signal with exactly this many
    /// rooted-connected nonzero Haar coefficients (ignores `--pieces`).
    #[arg(long)]
    sparsity: Option<usize>,
    /// Also write the Haar coefficient table here.
    #[arg(long)]
    haar_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureKind {
    /// Random loopless pairwise overlapping groups.
    Loopless,
    /// Consecutive windows overlapping in one element.
    Path,
    /// Heap-ordered binary group graph.
    Binary,
    /// Root paths of a random tree.
    Hierarchy,
    /// Three overlapping blocks over eleven elements.
    CaseStudy,
    /// Six groups whose group graph has a loop.
    Looped,
}

#[derive(Args)]
struct GenStructureArgs {
    #[arg(long, value_enum)]
    kind: StructureKind,
    /// Number of groups (nodes for `hierarchy`).
    #[arg(long, default_value_t = 8)]
    groups: usize,
    /// Window width for `path`.
    #[arg(long, default_value_t = 3)]
    width: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit codes: 2 bad input, 3 method does not fit the structure, 4 numerical failure.
fn exit_code(err: &anyhow::Error) -> u8 {
    let core = err.chain().find_map(|e| e.downcast_ref::<Error>());
    match core {
        Some(Error::NotLooplessPairwise | Error::InstanceTooLarge { .. } | Error::FractionalSolution(_)) => 3,
        Some(Error::NumericalFailure(_) | Error::NonConvergence { .. }) => 4,
        Some(_) => 2,
        None => err.downcast_ref::<Mismatch>().map_or(2, |_| 3),
    }
}

#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { structure } => cmd_classify(&structure),
        Command::Solve(args) => cmd_solve(args),
        Command::Pareto(args) => cmd_pareto(args),
        Command::HaarExperiment(args) => cmd_haar(args),
        Command::GenSignal(args) => cmd_gen_signal(args),
        Command::GenStructure(args) => cmd_gen_structure(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn one_based(indices: &[usize]) -> String {
    indices.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(";")
}

/// Serializes rows as CSV with a header, or as a JSON array.
fn emit<T: Serialize>(rows: &[T], output: &Output) -> anyhow::Result<()> {
    let mut out = sink(output.out.as_deref())?;
    match output.format {
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(&mut out);
            for row in rows {
                wtr.serialize(row)?;
            }
            wtr.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn load(inputs: &Inputs) -> anyhow::Result<(GroupStructure, Vec<f64>, WeightVector)> {
    let s = read_structure(&inputs.structure)?;
    let x = threshold(&read_signal(&inputs.signal)?, inputs.threshold);
    if x.len() != s.ground_size() {
        return Err(Error::DimensionMismatch {
            expected: s.ground_size(),
            actual: x.len(),
        })
        .context("signal length must match the structure's ground size");
    }
    let w = WeightVector::from_signal(&x);
    Ok((s, x, w))
}

fn cmd_classify(path: &Path) -> anyhow::Result<()> {
    let s = read_structure(path)?;
    println!("{}, {}", classify(&s), tu_certificate(&s).name());
    Ok(())
}

/// For structures classified hierarchical: the witness tree carrying the
/// element weights, and the group index of each node's root path.
fn hierarchy_witness(s: &GroupStructure, w: &WeightVector) -> anyhow::Result<Option<(TreeModel, Vec<usize>)>> {
    match classify(s).witness {
        Witness::Hierarchy { tree, group_of_node } => {
            Ok(Some((TreeModel::new(tree, w.as_slice().to_vec())?, group_of_node)))
        }
        _ => Ok(None),
    }
}

/// Re-expresses a node selection over the structure's own group indices.
fn nodes_to_groups(s: &GroupStructure, w: &WeightVector, nodes: &[usize], group_of_node: &[usize]) -> Selection {
    let groups: Vec<usize> = nodes.iter().map(|&v| group_of_node[v]).collect();
    Selection::from_parts(s.num_groups(), &groups, nodes, w)
}

#[derive(Serialize)]
struct SolveRow {
    method: String,
    groups: String,
    elements: String,
    num_groups: usize,
    num_elements: usize,
    objective: f64,
    error: f64,
}

fn cmd_solve(args: SolveArgs) -> anyhow::Result<()> {
    let (s, x, w) = load(&args.inputs)?;
    let method = match args.lambda {
        Some(l) => format!("lp:{l}"),
        None => args.method.clone(),
    };
    let need_groups = || args.groups.ok_or_else(|| anyhow!("--groups is required for method {method}"));
    let sel = match method.as_str() {
        "dp" => {
            let g = need_groups()?;
            let k = args.sparsity.unwrap_or(s.ground_size());
            match classify(&s).tag {
                StructureTag::LooplessPairwise => solve_gwmc_dp(&s, &w, g, k)?,
                StructureTag::Hierarchical => {
                    let (t, group_of_node) = hierarchy_witness(&s, &w)?.expect("hierarchical witness");
                    let nodes = solve_hierarchical_dp(&t, g.min(k).max(1))?.nodes;
                    nodes_to_groups(&s, &w, &nodes, &group_of_node)
                }
                StructureTag::General => {
                    return Err(Mismatch(format!(
                        "dp needs a loopless pairwise or hierarchical structure; this one is {}",
                        classify(&s)
                    ))
                    .into())
                }
            }
        }
        "greedy" => {
            if args.sparsity.is_some() {
                bail!("greedy does not take --sparsity");
            }
            greedy_wmc(&s, &w, need_groups()?)
        }
        "oracle" => brute_force_wmc(&s, &w, need_groups()?, args.sparsity)?,
        other => {
            let lambda: f64 = other
                .strip_prefix("lp:")
                .and_then(|l| l.parse().ok())
                .ok_or_else(|| anyhow!("unknown method {other:?}; expected dp, greedy, oracle or lp:<λ>"))?;
            solve_regularized(&s, &w, lambda)?
        }
    };
    let xhat = approximate_from_cover(&x, &sel)?;
    let row = SolveRow {
        method,
        groups: one_based(&sel.groups()),
        elements: one_based(&sel.elements()),
        num_groups: sel.num_groups(),
        num_elements: sel.num_elements(),
        objective: sel.objective,
        error: squared_error(&x, &xhat),
    };
    emit(&[row], &args.output)
}

fn cmd_pareto(args: ParetoArgs) -> anyhow::Result<()> {
    let (s, _, w) = load(&args.inputs)?;
    let mut frontier: ParetoFrontier;
    if let Some((t, group_of_node)) = hierarchy_witness(&s, &w)? {
        frontier = hierarchical_frontier(&t)?;
        let grid = args.lambda_grid.clone().unwrap_or_else(|| frontier.lambda_grid());
        if !grid.is_empty() {
            frontier.attach_sweep(&hierarchical_lambda_sweep(&t, &grid)?);
        }
        for sel in &mut frontier.selections {
            *sel = nodes_to_groups(&s, &w, &sel.elements(), &group_of_node);
        }
    } else {
        frontier = pareto_frontier(&s, &w, FrontierSolver::Auto)?;
        let grid = args.lambda_grid.clone().unwrap_or_else(|| frontier.lambda_grid());
        if !grid.is_empty() {
            frontier.attach_sweep(&lambda_sweep(&s, &w, &grid)?);
        }
    }
    match args.output.format {
        Format::Csv => frontier.write_csv(sink(args.output.out.as_deref())?)?,
        Format::Json => emit(&frontier.records(), &args.output)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct HaarRow {
    method: &'static str,
    lambda: Option<f64>,
    #[serde(rename = "K")]
    k: usize,
    error: f64,
    violations: usize,
}

fn cmd_haar(args: HaarArgs) -> anyhow::Result<()> {
    let si = find_stand_in(args.length, args.sparsity, args.seed, 10_000)?;
    if let Some(path) = &args.signal_out {
        std::fs::write(path, signal_to_csv(&si.signal))?;
    }
    let c = &si.coefficients;
    let t = &c.tree;
    let x = &si.signal;
    let refit_error = |support: &[usize]| -> anyhow::Result<f64> {
        let refit = HaarCoefficients::new(refit_support(&c.values, support))?;
        Ok(squared_error(x, &haar_inverse(&refit)?))
    };
    let grid = args.lambda_grid.clone().unwrap_or_else(|| {
        let top = c.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let (hi, lo) = (1.5 * top, 0.5);
        (0..50).map(|i| hi * (lo / hi).powf(i as f64 / 49.0)).collect()
    });

    let mut rows = Vec::new();
    let frontier = hierarchical_frontier(t)?;
    let total: f64 = x.iter().map(|v| v * v).sum();
    for &(k, f) in &frontier.points {
        rows.push(HaarRow {
            method: "dp",
            lambda: None,
            k,
            error: (total - f).max(0.0),
            violations: 0,
        });
    }
    for &lambda in &grid {
        let support = hierarchical_group_lasso(t, &c.values, lambda)?.strong_support;
        rows.push(HaarRow {
            method: "hierarchical-group-lasso",
            lambda: Some(lambda),
            k: support.len(),
            error: refit_error(&support)?,
            violations: count_hierarchy_violations(t, &support),
        });
    }
    let s = parent_child_groups(t);
    let d = vec![1.0; s.num_groups()];
    for &lambda in &grid {
        let r = latent_group_lasso(&s, &c.values, lambda, &d)?;
        let support = support_of(&r.approximation, 1e-6);
        rows.push(HaarRow {
            method: "latent-group-lasso",
            lambda: Some(lambda),
            k: support.len(),
            error: refit_error(&support)?,
            violations: count_hierarchy_violations(t, &support),
        });
    }
    eprintln!("stand-in: seed {}, {} pieces", si.seed, si.pieces);
    emit(&rows, &args.output)
}

fn cmd_gen_signal(args: GenSignalArgs) -> anyhow::Result<()> {
    let x = match args.sparsity {
        Some(k) => {
            let si = find_stand_in(args.length, k, args.seed, 10_000)?;
            eprintln!("seed {}, {} pieces", si.seed, si.pieces);
            si.signal
        }
        None => gen_piecewise_constant(args.length, args.pieces, args.seed)?,
    };
    sink(args.out.as_deref())?.write_all(signal_to_csv(&x).as_bytes())?;
    if let Some(path) = &args.haar_out {
        write_haar_csv(&haar_forward(&x)?, File::create(path)?)?;
    }
    Ok(())
}

fn cmd_gen_structure(args: GenStructureArgs) -> anyhow::Result<()> {
    if args.groups == 0 {
        bail!("--groups must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let s = match args.kind {
        StructureKind::Loopless => fixtures::random_loopless_pairwise(&mut rng, args.groups, 2),
        StructureKind::Path => fixtures::path_groups(args.groups, args.width.max(2)),
        StructureKind::Binary => fixtures::complete_binary_groups(args.groups),
        StructureKind::Hierarchy => {
            hierarchy_groups(&fixtures::random_tree(&mut rng, args.groups))
        }
        StructureKind::CaseStudy => fixtures::case_study(),
        StructureKind::Looped => fixtures::g1(),
    };
    writeln!(sink(args.out.as_deref())?, "{}", structure_to_json(&s))?;
    Ok(())
}
