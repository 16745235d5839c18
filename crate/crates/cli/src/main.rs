//! `tanglekh`: Khovanov homology of planar tangle diagrams.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use tangle_kh::complex::{BigradedComplex, ComplexError};
use tangle_kh::diagram::TangleDiagram;
use tangle_kh::homology::{betti, graded_euler_state_sum, jones_specialization, poincare_polynomial, BettiTable};
use tangle_kh::linalg::Field;
use tangle_kh::reduction::{generator_expansion, poincare_by_components, simple_poincare, ComponentRoute, ReductionError};
use tangle_kh::tables::{verify_tables, RowStatus, Table};

const INPUT_ERROR: u8 = 1;
const CAP_ERROR: u8 = 2;
const VERIFY_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "tanglekh", version, about = "Khovanov homology of planar tangle diagrams")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "TANGLEKH_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    All,
}

#[derive(clap::Args)]
struct ComputeOpts {
    /// Coefficient field: Q or GF2.
    #[arg(long, default_value = "Q")]
    field: Field,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Refuse diagrams with more crossings than this.
    #[arg(long, default_value_t = tangle_kh::complex::DEFAULT_CROSSING_CAP)]
    max_crossings: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Betti table and Poincaré polynomial of each diagram file.
    Compute {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// Poincaré polynomial by arc reduction, brute-forcing components that are not simple.
    Reduce {
        path: PathBuf,
        /// Print every removed arc.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// Check the built-in diagrams against the golden tables.
    VerifyTables {
        #[arg(long, value_enum, default_value = "all")]
        table: TableArg,
        #[arg(long, default_value = "Q")]
        field: Field,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare P(x = -1) with the graded Euler characteristic of the cube.
    EulerCheck {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// Closed form and generator multiset of a simple tangle.
    Expand {
        arcs: usize,
        n_plus: usize,
        n_minus: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Generators and differentials of the chain complex, as JSON.
    DumpComplex {
        path: PathBuf,
        #[command(flatten)]
        opts: ComputeOpts,
    },
}

/// Buffered output of one task.
#[derive(Default)]
struct Outcome {
    out: String,
    err: String,
    code: u8,
}

impl Outcome {
    fn fail(code: u8, message: String) -> Outcome {
        Outcome { out: String::new(), err: format!("error: {message}\n"), code }
    }
}

fn load(path: &Path) -> Result<TangleDiagram, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(INPUT_ERROR, format!("{}: {e}", path.display())))?;
    TangleDiagram::parse(&text).map_err(|e| Outcome::fail(INPUT_ERROR, format!("{}: {e}", path.display())))
}

fn complex_error(path: &Path, e: ComplexError) -> Outcome {
    let code = match e {
        ComplexError::CrossingCap { .. } => CAP_ERROR,
        _ => INPUT_ERROR,
    };
    Outcome::fail(code, format!("{}: {e}", path.display()))
}

fn build(path: &Path, opts: &ComputeOpts) -> Result<(TangleDiagram, BigradedComplex), Outcome> {
    let d = load(path)?;
    let c = BigradedComplex::build_capped(&d, opts.field, opts.max_crossings).map_err(|e| complex_error(path, e))?;
    Ok((d, c))
}

fn betti_json(b: &BettiTable) -> Value {
    b.dims.iter().map(|(&(k, q), &dim)| json!({ "k": k, "q": q, "dim": dim })).collect()
}

/// Grid with `q` descending down the rows and `k` ascending across.
fn betti_grid(b: &BettiTable) -> String {
    if b.dims.is_empty() {
        return "(zero)\n".to_owned();
    }
    let ks: Vec<i32> = {
        let (lo, hi) = (b.dims.keys().map(|kq| kq.0).min().unwrap(), b.dims.keys().map(|kq| kq.0).max().unwrap());
        (lo..=hi).collect()
    };
    let (qlo, qhi) = (b.dims.keys().map(|kq| kq.1).min().unwrap(), b.dims.keys().map(|kq| kq.1).max().unwrap());
    let mut s = String::new();
    let _ = write!(s, "{:>6} |", "q\\k");
    for k in &ks {
        let _ = write!(s, "{k:>4}");
    }
    s.push('\n');
    let _ = writeln!(s, "{}", "-".repeat(8 + 4 * ks.len()));
    for q in (qlo..=qhi).rev() {
        if ks.iter().all(|&k| b.get(k, q) == 0) {
            continue;
        }
        let _ = write!(s, "{q:>6} |");
        for &k in &ks {
            match b.get(k, q) {
                0 => s.push_str("   ."),
                n => {
                    let _ = write!(s, "{n:>4}");
                }
            }
        }
        s.push('\n');
    }
    s
}

fn compute_one(path: &Path, opts: &ComputeOpts, header: bool) -> Outcome {
    let (d, c) = match build(path, opts) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let b = betti(&c);
    let p = poincare_polynomial(&b);
    let mut out = String::new();
    match opts.format {
        Format::Json => {
            let v = json!({
                "file": path.display().to_string(),
                "field": opts.field.name(),
                "crossings": d.crossing_count(),
                "n_plus": b.n_plus,
                "n_minus": b.n_minus,
                "betti": betti_json(&b),
                "poincare": p.to_string(),
            });
            let _ = writeln!(out, "{v}");
        }
        Format::Text => {
            if header {
                let _ = writeln!(out, "== {}", path.display());
            }
            let _ = writeln!(
                out,
                "field {}, {} crossings (n+ = {}, n- = {})",
                opts.field.name(),
                d.crossing_count(),
                b.n_plus,
                b.n_minus
            );
            out.push_str(&betti_grid(&b));
            let _ = writeln!(out, "P = {p}");
        }
    }
    Outcome { out, ..Outcome::default() }
}

fn reduce_one(path: &Path, trace: bool, opts: &ComputeOpts) -> Outcome {
    let d = match load(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    if d.crossing_count() > opts.max_crossings {
        return complex_error(path, ComplexError::CrossingCap { count: d.crossing_count(), cap: opts.max_crossings });
    }
    let (routes, p) = match poincare_by_components(&d, opts.field) {
        Ok(x) => x,
        Err(ReductionError::Complex(e)) => return complex_error(path, e),
        Err(e) => return Outcome::fail(INPUT_ERROR, format!("{}: {e}", path.display())),
    };
    let mut out = String::new();
    match opts.format {
        Format::Json => {
            let components: Vec<Value> = routes
                .iter()
                .map(|(part, route)| match route {
                    ComponentRoute::Reduced(t) => json!({
                        "crossings": part.crossing_count(),
                        "route": "reduced",
                        "steps": t.steps.iter().map(|s| json!({ "arc": s.arc.to_string(), "kind": s.kind.name() })).collect::<Vec<_>>(),
                    }),
                    ComponentRoute::BruteForce => json!({ "crossings": part.crossing_count(), "route": "brute-force" }),
                })
                .collect();
            let _ = writeln!(out, "{}", json!({ "file": path.display().to_string(), "components": components, "poincare": p.to_string() }));
        }
        Format::Text => {
            if trace {
                for (i, (part, route)) in routes.iter().enumerate() {
                    match route {
                        ComponentRoute::Reduced(t) => {
                            let _ = writeln!(out, "component {i}: simple, {} arcs", t.steps.len());
                            out.push_str(&t.to_string());
                        }
                        ComponentRoute::BruteForce => {
                            let _ = writeln!(out, "component {i}: brute force ({} crossings)", part.crossing_count());
                        }
                    }
                }
            }
            let _ = writeln!(out, "P = {p}");
        }
    }
    Outcome { out, ..Outcome::default() }
}

fn euler_one(path: &Path, opts: &ComputeOpts) -> Outcome {
    let (d, c) = match build(path, opts) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let specialized = jones_specialization(&poincare_polynomial(&betti(&c)));
    let state_sum = graded_euler_state_sum(&d);
    let ok = specialized == state_sum;
    let mut out = String::new();
    match opts.format {
        Format::Json => {
            let v = json!({
                "file": path.display().to_string(),
                "pass": ok,
                "specialization": specialized.to_string(),
                "state_sum": state_sum.to_string(),
            });
            let _ = writeln!(out, "{v}");
        }
        Format::Text => {
            let _ = writeln!(
                out,
                "{} {}: P(-1, y) = {specialized}, state sum = {state_sum}",
                if ok { "PASS" } else { "FAIL" },
                path.display()
            );
        }
    }
    Outcome { out, code: if ok { 0 } else { VERIFY_FAILED }, ..Outcome::default() }
}

/// Runs tasks in parallel, then emits their output in input order.
fn run_batch(paths: &[PathBuf], task: impl Fn(&Path) -> Outcome + Sync) -> u8 {
    let outcomes: Vec<Outcome> = paths.par_iter().map(|p| task(p)).collect();
    let mut code = 0;
    for o in outcomes {
        print!("{}", o.out);
        eprint!("{}", o.err);
        code = code.max(o.code);
    }
    code
}

fn verify(table: TableArg, field: Field, format: Format) -> u8 {
    let which = match table {
        TableArg::One => Some(Table::One),
        TableArg::Two => Some(Table::Two),
        TableArg::All => None,
    };
    let reports = match verify_tables(which, field) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return CAP_ERROR;
        }
    };
    let count = |s: RowStatus| reports.iter().filter(|r| r.status == s).count();
    let (pass, discrepancy, fail) = (count(RowStatus::Pass), count(RowStatus::Discrepancy), count(RowStatus::Fail));
    match format {
        Format::Json => {
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "table": r.entry.table.number(),
                        "type": r.entry.tangle_type,
                        "signs": r.entry.sign_label(),
                        "status": r.status.label(),
                        "printed": r.entry.printed_poly().to_string(),
                        "computed": r.computed.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            println!("{}", json!({ "field": field.name(), "rows": rows, "pass": pass, "discrepancy": discrepancy, "fail": fail }));
        }
        Format::Text => {
            for r in reports.iter().filter(|r| r.status != RowStatus::Discrepancy) {
                println!("{r}");
            }
            if discrepancy > 0 {
                println!("\nrows that differ from the printed table:");
                for r in reports.iter().filter(|r| r.status == RowStatus::Discrepancy) {
                    println!("{r}");
                }
            }
            println!("\n{pass} pass, {discrepancy} discrepancy, {fail} fail (field {})", field.name());
        }
    }
    if fail > 0 {
        VERIFY_FAILED
    } else {
        0
    }
}

fn expand(arcs: usize, n_plus: usize, n_minus: usize, format: Format) -> u8 {
    let (p, m) = match (simple_poincare(arcs, n_plus, n_minus), generator_expansion(arcs, n_plus, n_minus)) {
        (Ok(p), Ok(m)) => (p, m),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {e}");
            return INPUT_ERROR;
        }
    };
    match format {
        Format::Json => {
            let generators: Vec<Value> =
                m.counts.iter().map(|(&(k, q), &n)| json!({ "k": k, "q": q, "count": n })).collect();
            println!("{}", json!({ "arcs": arcs, "n_plus": n_plus, "n_minus": n_minus, "poincare": p.to_string(), "generators": generators, "total": m.total() }));
        }
        Format::Text => {
            println!("P = {p}");
            println!("generators = {m}");
            println!("total = {}", m.total());
        }
    }
    0
}

fn dump(path: &Path, opts: &ComputeOpts) -> u8 {
    match build(path, opts) {
        Ok((_, c)) => {
            println!("{}", c.dump_json());
            0
        }
        Err(o) => {
            eprint!("{}", o.err);
            o.code
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    }
    let code = match cli.command {
        Command::Compute { paths, opts } => run_batch(&paths, |p| compute_one(p, &opts, paths.len() > 1)),
        Command::Reduce { path, trace, opts } => run_batch(&[path], |p| reduce_one(p, trace, &opts)),
        Command::VerifyTables { table, field, format } => verify(table, field, format),
        Command::EulerCheck { paths, opts } => run_batch(&paths, |p| euler_one(p, &opts)),
        Command::Expand { arcs, n_plus, n_minus, format } => expand(arcs, n_plus, n_minus, format),
        Command::DumpComplex { path, opts } => dump(&path, &opts),
    };
    ExitCode::from(code)
}
