use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use radiolab::bounds::{center_case_groups, lower_bound_closed, lower_bound_generic};
use radiolab::sweep::to_csv;
use radiolab::{
    bound_report, build_spire, classify, construct, edge_usage_caps, rn_exact,
    rn_exact_with_symmetry, rn_formula, sweep, verify, Graph, GraphJson, RadioLabeling,
    SolveOptions, SpireSpec, Variant, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "radiolab",
    version,
    about = "Radio labelings of graphs of order n and diameter n-2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a family member as JSON or DOT.
    Construct {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Optimal labeling of a family member.
    Label {
        #[command(flatten)]
        spec: SpecArgs,
        /// Write the labeling here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the ordering plan (order, gaps, base).
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Check a labeling; violations are printed as TSV and exit with 1.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
    },
    /// Radio number of a family member, or of any graph with `--graph`.
    Rn {
        #[arg(long, value_parser = parse_family, required_unless_present = "graph")]
        family: Option<Variant>,
        #[arg(long, required_unless_present = "graph")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "graph")]
        s: Option<usize>,
        /// Graph JSON; implies `--method exact`.
        #[arg(long, conflicts_with_all = ["family", "n", "s"])]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Include the exact solver in `--method all`.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// CSV of bounds for every family member in an order range.
    ///
    /// Columns: family,n,s,formula,lb_generic,lb_closed,ub_constructive,exact,consistent.
    /// `exact` is empty without `--exact`. Exits with 1 if any row is inconsistent.
    Sweep {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Identify a graph as a family member; exits with 1 if it is not one.
    Classify {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// spire, s1, s2 or s12.
    #[arg(long, value_parser = parse_family)]
    family: Variant,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
}

impl SpecArgs {
    fn spec(&self) -> Result<SpireSpec> {
        Ok(SpireSpec::new(self.family, self.n, self.s)?)
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Search node limit.
    #[arg(long, env = "RADIOLAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Stop at the first labeling with at most this span.
    #[arg(long)]
    target: Option<u32>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl SolverArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            budget: self.budget,
            target: self.target,
            threads: self.threads.max(1),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Bounds,
    Construct,
    Exact,
    All,
}

fn parse_family(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    let raw: GraphJson = read_json(path)?;
    Graph::try_from(raw).with_context(|| format!("building graph from {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `Ok(false)` means a check failed (exit 1); errors are usage or input
/// problems (exit 2).
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Construct { spec, format } => {
            let g = build_spire(&spec.spec()?)?;
            let text = match format {
                GraphFormat::Json => to_json(&g.to_json())?,
                GraphFormat::Dot => g.to_dot(),
            };
            emit(None, &text)?;
            Ok(true)
        }
        Command::Label { spec, out, plan } => {
            let spec = spec.spec()?;
            let built = construct(&spec)?;
            let labeling = built.plan.labeling();
            let formula = rn_formula(&spec)?;
            if built.plan.span() as u64 != formula {
                eprintln!(
                    "note: span {} differs from the closed form {formula}",
                    built.plan.span()
                );
            }
            emit(out.as_deref(), &to_json(&labeling)?)?;
            if let Some(path) = plan {
                emit(Some(&path), &to_json(&built.plan)?)?;
            }
            eprintln!("{spec}: span {}", built.plan.span());
            Ok(true)
        }
        Command::Verify { graph, labeling } => {
            let g = read_graph(&graph)?;
            let c: RadioLabeling = read_json(&labeling)?;
            let violations = match verify(&g, &c) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("invalid labeling: {e}");
                    return Ok(false);
                }
            };
            if violations.is_empty() {
                eprintln!("ok: radio labeling with span {}", c.span());
                return Ok(true);
            }
            let mut tsv = String::from("u\tv\tdeficit\n");
            for x in &violations {
                tsv.push_str(&format!("{}\t{}\t{}\n", x.u, x.v, x.deficit));
            }
            emit(None, &tsv)?;
            eprintln!("{} violating pairs", violations.len());
            Ok(false)
        }
        Command::Rn {
            family,
            n,
            s,
            graph,
            method,
            exact,
            solver,
        } => {
            let opts = solver.options();
            if let Some(path) = graph {
                let g = read_graph(&path)?;
                let r = rn_exact(&g, &opts)?;
                emit(None, &to_json(&r)?)?;
                return Ok(true);
            }
            let (Some(family), Some(n), Some(s)) = (family, n, s) else {
                bail!("--family, --n and --s are required without --graph");
            };
            let spec = SpireSpec::new(family, n, s)?.normalize()?;
            rn_spec(&spec, method, exact, &opts)
        }
        Command::Sweep {
            n_min,
            n_max,
            exact,
            out,
            solver,
        } => {
            if n_min > n_max {
                bail!("--n-min {n_min} is above --n-max {n_max}");
            }
            let opts = solver.options();
            let rows = sweep(n_min, n_max, exact.then_some(&opts))?;
            emit(out.as_deref(), &to_csv(&rows))?;
            let bad = rows.iter().filter(|r| !r.consistent).count();
            if bad > 0 {
                eprintln!("{bad} of {} rows are inconsistent", rows.len());
            }
            Ok(bad == 0)
        }
        Command::Classify { graph } => {
            let g = read_graph(&graph)?;
            match classify(&g) {
                Some(spec) => {
                    emit(None, &to_json(&spec)?)?;
                    Ok(true)
                }
                None => {
                    emit(None, "null\n")?;
                    eprintln!("not a member of the family");
                    Ok(false)
                }
            }
        }
    }
}

fn rn_spec(spec: &SpireSpec, method: Method, exact: bool, opts: &SolveOptions) -> Result<bool> {
    match method {
        Method::Formula => {
            emit(
                None,
                &to_json(&json!({ "spec": spec, "formula": rn_formula(spec)? }))?,
            )?;
            Ok(true)
        }
        Method::Bounds => {
            let g = build_spire(spec)?;
            let groups = center_case_groups(spec).unwrap_or_default();
            let caps = edge_usage_caps(&g, &groups)?;
            let value = json!({
                "spec": spec,
                "lb_generic": lower_bound_generic(spec)?,
                "lb_closed": lower_bound_closed(spec)?,
                "edge_usage": caps,
            });
            emit(None, &to_json(&value)?)?;
            Ok(true)
        }
        Method::Construct => {
            let built = construct(spec)?;
            let value = json!({
                "spec": spec,
                "source": built.source,
                "induced": built.induced,
                "span": built.plan.span(),
                "plan": built.plan,
                "labeling": built.plan.labeling(),
            });
            emit(None, &to_json(&value)?)?;
            Ok(true)
        }
        Method::Exact => {
            let g = build_spire(spec)?;
            let r = match spec.mirror_automorphism() {
                Some(m) => rn_exact_with_symmetry(&g, &[m], opts)?,
                None => rn_exact(&g, opts)?,
            };
            emit(None, &to_json(&r)?)?;
            Ok(true)
        }
        Method::All => {
            let report = bound_report(spec, exact.then_some(opts))?;
            emit(None, &to_json(&report)?)?;
            if !report.consistent {
                eprintln!("bounds are inconsistent for {spec}");
            }
            Ok(report.consistent)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
