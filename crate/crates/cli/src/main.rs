use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use bootperc::constructions::Family;
use bootperc::formulas::{consistency_report, FormulaReport, ReportBudget};
use bootperc::graph::{make_cycle, make_grid, make_hypercube, make_path, make_random_graph, make_torus, Graph};
use bootperc::hyperperc::{graph_to_hypergraph, hyper_closure, Hypergraph};
use bootperc::oracle::{self, SearchOptions};
use bootperc::percolation::{bond_closure, neighbour_closure};
use bootperc::witness::{check_proper, dim_w, greedy_colouring, EdgeColouring};

#[derive(Parser)]
#[command(name = "bootperc", version, about = "Bootstrap percolation: simulation, constructions, lower bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph as JSON
    Gen(GenArgs),
    /// Run a process to its closure
    Sim(SimArgs),
    /// Build the recursive percolating edge set of a family
    Construct(ConstructArgs),
    /// Witness-space dimension (a lower bound on m_e) under a colouring
    Dim(DimArgs),
    /// Exact minimum percolating set by exhaustive search
    Brute(BruteArgs),
    /// Formula consistency table over a range of instances
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Path,
    Cycle,
    Grid,
    Torus,
    Hypercube,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Grid,
    Torus,
    Hypercube,
}

#[derive(Clone, Copy, ValueEnum)]
enum Process {
    Bond,
    Vertex,
    Hyper,
}

impl Process {
    fn name(self) -> &'static str {
        match self {
            Process::Bond => "bond",
            Process::Vertex => "vertex",
            Process::Hyper => "hyper",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    /// Comma-separated factor sizes (one value for path/cycle)
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability as "a/b" or a decimal
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long = "family", value_enum)]
    family: Option<FamilyKind>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args)]
struct SimArgs {
    /// Graph JSON, or hypergraph JSON for --process hyper
    #[arg(long)]
    graph: PathBuf,
    /// JSON file with an index list, or an inline list such as "0,3,5"
    #[arg(long = "seed-set", default_value = "")]
    seed_set: String,
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum, default_value = "bond")]
    process: Process,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: FamilyKind,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    r: usize,
}

#[derive(Args)]
struct DimArgs {
    /// Graph JSON; optional with `--colouring product`
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    r: usize,
    /// greedy, product, or a JSON file with one colour per edge
    #[arg(long, default_value = "greedy")]
    colouring: String,
    #[command(flatten)]
    family: FamilyArgs,
}

#[derive(Args)]
struct BruteArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum, default_value = "bond")]
    process: Process,
    /// Maximum number of closure evaluations
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Also start the bond search at the dimension under this colouring
    /// (product or a JSON file); the greedy bound is always used
    #[arg(long = "floor-colouring")]
    floor_colouring: Option<String>,
    #[command(flatten)]
    family: FamilyArgs,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Comma-separated instances. Grid/torus: factor lists such as 3x3 or
    /// 3..4x3; hypercube: d or a..b.
    #[arg(long = "dims-range")]
    dims_range: String,
    /// r values: "2", "1..3" or "0,2,4"
    #[arg(long = "r-range")]
    r_range: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Skip the oracle above this many edges
    #[arg(long, default_value_t = 24)]
    oracle_max_edges: usize,
}

/// A bad flag combination; exits with status 2 like parse errors.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::from_json(&read(path)?).with_context(|| format!("{} is not a graph", path.display()))
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))?;
    if value.get("hyperedges").is_some() {
        Ok(Hypergraph::from_json(&text)?)
    } else {
        Ok(graph_to_hypergraph(&Graph::from_json(&text)?))
    }
}

fn parse_index_list(text: &str) -> Result<Vec<usize>> {
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| anyhow!("bad index {s:?}")))
        .collect()
}

fn load_seed(arg: &str) -> Result<Vec<usize>> {
    let path = Path::new(arg);
    if !arg.is_empty() && path.is_file() {
        let list: Vec<usize> = serde_json::from_str(&read(path)?).context("seed file must hold a JSON index list")?;
        Ok(list)
    } else {
        parse_index_list(arg)
    }
}

fn parse_probability(s: &str) -> Result<Ratio<u32>> {
    let bad = || anyhow!("bad probability {s:?}");
    if let Some((int, frac)) = s.split_once('.') {
        let den = 10u32.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let int: u32 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u32 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
        Ok(Ratio::new(num, den))
    } else {
        let p: Ratio<u32> = s.parse().map_err(|_| bad())?;
        Ok(p)
    }
}

fn family_of(kind: FamilyKind, dims: Option<Vec<usize>>, d: Option<usize>) -> Result<Family> {
    match (kind, dims, d) {
        (FamilyKind::Hypercube, None, Some(d)) => Ok(Family::Hypercube { d }),
        (FamilyKind::Hypercube, _, _) => bail!("hypercube needs --d and no --dims"),
        (FamilyKind::Grid, Some(dims), None) => Ok(Family::Grid { dims }),
        (FamilyKind::Torus, Some(dims), None) => Ok(Family::Torus { dims }),
        (_, _, _) => bail!("grid and torus need --dims and no --d"),
    }
}

fn family_from_args(args: FamilyArgs) -> Result<Family> {
    let kind = args.family.ok_or_else(|| anyhow!("--family is required for the product colouring"))?;
    family_of(kind, args.dims, args.d)
}

/// Resolves a colouring spec for `g` (which may be absent for `product`).
fn resolve_colouring(spec: &str, g: Option<Graph>, family: FamilyArgs) -> Result<(Graph, EdgeColouring)> {
    match spec {
        "greedy" => {
            let g = g.ok_or_else(|| anyhow!("--graph is required"))?;
            let c = greedy_colouring(&g);
            Ok((g, c))
        }
        "product" => {
            let (pg, c) = family_from_args(family)?.product_colouring()?;
            if let Some(g) = g {
                if g != pg {
                    bail!("graph does not match the product family");
                }
            }
            Ok((pg, c))
        }
        file => {
            let g = g.ok_or_else(|| anyhow!("--graph is required"))?;
            let c: EdgeColouring = serde_json::from_str(&read(Path::new(file))?)
                .context("colouring file must hold a JSON list of integers")?;
            if !check_proper(&g, &c)? {
                bail!("colouring is not proper");
            }
            Ok((g, c))
        }
    }
}

fn gen(args: GenArgs) -> Result<Value> {
    let out = args.out.clone();
    let g = gen_graph(args).map_err(|e| Usage(format!("{e:#}")))?;
    let value: Value = serde_json::from_str(&g.to_json())?;
    if let Some(out) = out {
        fs::write(&out, g.to_json() + "\n").with_context(|| format!("cannot write {}", out.display()))?;
        return Ok(Value::Null);
    }
    Ok(value)
}

fn gen_graph(args: GenArgs) -> Result<Graph> {
    let single = |dims: &Option<Vec<usize>>| match dims.as_deref() {
        Some([k]) => Ok(*k),
        _ => Err(anyhow!("--dims must be a single length for this kind")),
    };
    let only = |ok: [bool; 5]| -> Result<()> {
        let given = [args.dims.is_some(), args.d.is_some(), args.n.is_some(), args.p.is_some(), args.seed.is_some()];
        let names = ["--dims", "--d", "--n", "--p", "--seed"];
        match (0..5).find(|&i| given[i] && !ok[i]) {
            Some(i) => bail!("{} does not apply to this kind", names[i]),
            None => Ok(()),
        }
    };
    let g = match args.kind {
        GenKind::Path => {
            only([true, false, false, false, false])?;
            make_path(single(&args.dims)?)?
        }
        GenKind::Cycle => {
            only([true, false, false, false, false])?;
            make_cycle(single(&args.dims)?)?
        }
        GenKind::Grid | GenKind::Torus => {
            only([true, false, false, false, false])?;
            let dims = args.dims.as_deref().ok_or_else(|| anyhow!("--dims is required"))?;
            if matches!(args.kind, GenKind::Grid) {
                make_grid(dims)?
            } else {
                make_torus(dims)?
            }
        }
        GenKind::Hypercube => {
            only([false, true, false, false, false])?;
            make_hypercube(args.d.ok_or_else(|| anyhow!("--d is required"))?)
        }
        GenKind::Random => {
            only([false, false, true, true, true])?;
            let n = args.n.ok_or_else(|| anyhow!("--n is required"))?;
            let p = parse_probability(args.p.as_deref().ok_or_else(|| anyhow!("--p is required"))?)?;
            make_random_graph(n, p, args.seed.unwrap_or(0))?
        }
    };
    Ok(g)
}

fn sim(args: SimArgs) -> Result<Value> {
    let seed = load_seed(&args.seed_set)?;
    let state = match args.process {
        Process::Bond => bond_closure(&load_graph(&args.graph)?, &seed, args.r)?,
        Process::Vertex => neighbour_closure(&load_graph(&args.graph)?, &seed, args.r)?,
        Process::Hyper => hyper_closure(&load_hypergraph(&args.graph)?, &seed, args.r)?,
    };
    let report = state.report();
    Ok(json!({
        "process": args.process.name(),
        "r": args.r,
        "percolated": report.percolated,
        "closure_size": report.closure_size,
        "closure": state.infected(),
        "generations": report.generations,
    }))
}

fn construct(args: ConstructArgs) -> Result<Value> {
    let family = family_of(args.kind, args.dims, args.d)?;
    let g = family.graph()?;
    let set = family.construct(args.r)?;
    let endpoints: Vec<[usize; 2]> = set.iter().map(|&e| g.edge(e).into()).collect();
    Ok(json!({
        "instance": family.label(),
        "r": args.r,
        "size": set.len(),
        "edges": set,
        "endpoints": endpoints,
        "percolates": bootperc::percolation::percolates_bond(&g, &set, args.r)?,
    }))
}

fn dim(args: DimArgs) -> Result<Value> {
    let g = args.graph.as_deref().map(load_graph).transpose()?;
    let (g, c) = resolve_colouring(&args.colouring, g, args.family)?;
    Ok(json!({
        "r": args.r,
        "dim": dim_w(&g, &c, args.r)?,
        "colouring": c,
    }))
}

fn brute(args: BruteArgs) -> Result<Value> {
    let res = match args.process {
        Process::Bond => {
            let g = load_graph(&args.graph)?;
            let extra = match args.floor_colouring.as_deref() {
                None => None,
                Some(spec) => {
                    let (g, c) = resolve_colouring(spec, Some(g.clone()), args.family)?;
                    Some(dim_w(&g, &c, args.r)?)
                }
            };
            let opts = SearchOptions { known_lower_bound: extra, ..SearchOptions::with_budget(args.budget) };
            oracle::min_percolating_bond_with(&g, args.r, &opts)
        }
        Process::Vertex => {
            if args.floor_colouring.is_some() {
                bail!("--floor-colouring applies to the bond process only");
            }
            oracle::min_percolating_vertex(&load_graph(&args.graph)?, args.r, args.budget)
        }
        Process::Hyper => {
            if args.floor_colouring.is_some() {
                bail!("--floor-colouring applies to the bond process only");
            }
            oracle::min_percolating_hyper(&load_hypergraph(&args.graph)?, args.r, args.budget)
        }
    };
    Ok(serde_json::to_value(res)?)
}

/// "a..b" (inclusive) or a single number.
fn parse_span(s: &str) -> Result<Vec<usize>> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| anyhow!("bad number {x:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                bail!("empty range {s:?}");
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(s)?]),
    }
}

fn parse_instances(kind: FamilyKind, spec: &str) -> Result<Vec<Family>> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let FamilyKind::Hypercube = kind {
            out.extend(parse_span(item)?.into_iter().map(|d| Family::Hypercube { d }));
            continue;
        }
        let mut all: Vec<Vec<usize>> = vec![Vec::new()];
        for factor in item.split('x') {
            let sizes = parse_span(factor)?;
            all = all
                .into_iter()
                .flat_map(|prefix| {
                    sizes.iter().map(move |&a| {
                        let mut p = prefix.clone();
                        p.push(a);
                        p
                    })
                })
                .collect();
        }
        out.extend(all.into_iter().map(|dims| match kind {
            FamilyKind::Grid => Family::Grid { dims },
            _ => Family::Torus { dims },
        }));
    }
    if out.is_empty() {
        bail!("no instances in --dims-range");
    }
    Ok(out)
}

fn table(args: TableArgs) -> Result<String> {
    let families = parse_instances(args.family, &args.dims_range)?;
    let mut rs = Vec::new();
    for item in args.r_range.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        rs.extend(parse_span(item)?);
    }
    let budget = ReportBudget { oracle_max_edges: args.oracle_max_edges, ..ReportBudget::default() };
    let mut rows: Vec<FormulaReport> = Vec::new();
    for family in &families {
        for &r in &rs {
            rows.push(consistency_report(family, r, &budget)?);
        }
    }
    Ok(match args.format {
        Format::Csv => {
            let mut text = String::from(FormulaReport::CSV_HEADER);
            for row in &rows {
                text.push('\n');
                text.push_str(&row.csv_row());
            }
            text
        }
        Format::Json => serde_json::to_string_pretty(&rows)?,
    })
}

fn run(cli: Cli) -> Result<Option<String>> {
    let value = match cli.command {
        Command::Gen(a) => gen(a)?,
        Command::Sim(a) => sim(a)?,
        Command::Construct(a) => construct(a)?,
        Command::Dim(a) => dim(a)?,
        Command::Brute(a) => brute(a)?,
        Command::Table(a) => return table(a).map(Some),
    };
    Ok((!value.is_null()).then(|| value.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("usage error"));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(Some(out)) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
