//! Command-line front end.
//!
//! Exit codes: 0 success, 1 unreadable or invalid input, 2 usage error,
//! 3 oracle disagreement or a reordering that changed a function.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bdd::{BddManager, NodeRef, VarId, MAX_TRUTH_VECTOR_VARS};
use crate::io::report::{CompareRow, CompareTable, Format, MeasureTable, ReorderReport};
use crate::io::{load_circuit, Circuit};
use crate::measures::{self, VarProbabilities};
use crate::oracle::{self, MAX_ORDER_SEARCH_VARS};
use crate::par::{self, Execution};
use crate::reorder::{self, Method, ReorderError};

/// Agreement tolerance for `oracle-check`.
const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "infobdd",
    version,
    about = "Information measures and variable reordering on BDDs"
)]
struct Cli {
    /// Abort a build once more than this many nodes are allocated.
    #[arg(long, global = true, value_name = "N")]
    node_limit: Option<usize>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print only results and errors.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Output entropy and per-input conditional entropy of every output.
    Measures(MeasuresArgs),
    /// Reorder the variables with one method and report the result.
    Reorder(ReorderArgs),
    /// Shared size and time of several reordering methods from the same start.
    Compare(CompareArgs),
    /// Check BDD measures and reorderings against truth-table enumeration.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
struct MeasuresArgs {
    file: PathBuf,
    /// Outputs to report (default: all).
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    outputs: Vec<String>,
    /// Inputs to condition on one at a time (default: all).
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    vars: Vec<String>,
    /// Also report the entropy given this set of inputs jointly.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    given: Vec<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct ReorderArgs {
    file: PathBuf,
    /// none, info, sift or window.
    #[arg(long, default_value = "info")]
    method: Method,
    /// Window size for the window method.
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u8).range(2..=4))]
    window: Option<u8>,
    /// Show the per-level choices of the info method.
    #[arg(long)]
    trace: bool,
    /// Include wall time in the output.
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct CompareArgs {
    file: PathBuf,
    #[arg(
        long,
        value_delimiter = ',',
        value_name = "LIST",
        default_value = "none,info,sift,window"
    )]
    methods: Vec<Method>,
    /// Window size for the window method.
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u8).range(2..=4))]
    window: Option<u8>,
    /// Include wall times in machine formats.
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct OracleArgs {
    file: PathBuf,
    /// Refuse circuits with more inputs than this.
    #[arg(long, default_value_t = 16, value_name = "N")]
    max_n: usize,
}

/// A failed command and its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<ReorderError> for Failure {
    fn from(e: ReorderError) -> Self {
        match e {
            ReorderError::EquivalenceViolation(_) => Failure::mismatch(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(format!("write failed: {e}"))
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs one command line, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Measures(a) => measures_cmd(&cli, a, out),
        Command::Reorder(a) => reorder_cmd(&cli, a, out),
        Command::Compare(a) => compare_cmd(&cli, a, out),
        Command::OracleCheck(a) => oracle_cmd(&cli, a, out),
    };
    match result.and_then(|()| out.flush().map_err(Failure::from)) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &Path) -> Result<Circuit, Failure> {
    load_circuit(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn build(cli: &Cli, circuit: &Circuit) -> Result<(BddManager, Vec<NodeRef>), Failure> {
    circuit
        .build(cli.node_limit)
        .map_err(|e| Failure::input(format!("{}: {e}", circuit.name)))
}

fn lookup_vars(circuit: &Circuit, names: &[String]) -> Result<Vec<VarId>, Failure> {
    names
        .iter()
        .map(|n| {
            circuit
                .input_var(n)
                .ok_or_else(|| Failure::input(format!("no input named `{n}`")))
        })
        .collect()
}

fn with_window(method: Method, window: Option<u8>) -> Method {
    match (method, window) {
        (Method::Window(_), Some(k)) => Method::Window(k.into()),
        (m, _) => m,
    }
}

fn measures_cmd(cli: &Cli, a: &MeasuresArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let circuit = load(&a.file)?;
    let (mut mgr, roots) = build(cli, &circuit)?;
    let vars = if a.vars.is_empty() {
        (0..circuit.inputs.len()).map(VarId::from).collect()
    } else {
        lookup_vars(&circuit, &a.vars)?
    };
    let given = if a.given.is_empty() {
        None
    } else {
        Some(lookup_vars(&circuit, &a.given)?)
    };
    let selected: Vec<usize> = if a.outputs.is_empty() {
        (0..circuit.outputs.len()).collect()
    } else {
        a.outputs
            .iter()
            .map(|o| {
                circuit
                    .outputs
                    .iter()
                    .position(|x| x == o)
                    .ok_or_else(|| Failure::input(format!("no output named `{o}`")))
            })
            .collect::<Result<_, _>>()?
    };
    let w = VarProbabilities::uniform(circuit.inputs.len());
    let mut outputs = Vec::with_capacity(selected.len());
    for i in selected {
        let report = measures::measure_report(&mut mgr, roots[i], &w, given.as_deref())
            .map_err(|e| Failure::input(e.to_string()))?;
        outputs.push((circuit.outputs[i].clone(), report));
    }
    let table = MeasureTable {
        circuit: circuit.name.clone(),
        nodes: mgr.shared_size(),
        input_names: circuit.inputs.clone(),
        vars,
        outputs,
    };
    out.write_all(table.render(a.format).as_bytes())?;
    Ok(())
}

fn reorder_cmd(cli: &Cli, a: &ReorderArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let circuit = load(&a.file)?;
    let (mut mgr, _) = build(cli, &circuit)?;
    let trace = reorder::reorder(&mut mgr, with_window(a.method, a.window))?;
    let report = ReorderReport {
        circuit: circuit.name.clone(),
        input_names: circuit.inputs.clone(),
        trace,
        show_trace: a.trace,
        timing: a.timing,
    };
    out.write_all(report.render(a.format).as_bytes())?;
    Ok(())
}

fn compare_cmd(cli: &Cli, a: &CompareArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let circuit = load(&a.file)?;
    let (mgr, _) = build(cli, &circuit)?;
    let methods: Vec<Method> = a.methods.iter().map(|&m| with_window(m, a.window)).collect();
    // Every method starts from its own copy of the same initial manager.
    let traces = par::map(Execution::Parallel, &methods, |&m| {
        let mut copy = mgr.clone();
        reorder::reorder(&mut copy, m)
    });
    let rows = traces
        .into_iter()
        .map(|t| {
            t.map(|t| CompareRow {
                method: t.method.to_string(),
                size: t.final_size,
                elapsed: t.elapsed,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let table = CompareTable {
        circuit: circuit.name.clone(),
        rows,
        timing: a.timing,
    };
    out.write_all(table.render(a.format).as_bytes())?;
    Ok(())
}

/// Random non-uniform input distribution, bounded away from 0 and 1.
fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> VarProbabilities {
    let pairs = (0..n)
        .map(|_| {
            let p1: f64 = rng.gen_range(0.1..0.9);
            (1.0 - p1, p1)
        })
        .collect();
    VarProbabilities::from_pairs(pairs).expect("pairs sum to one")
}

/// Random non-empty subset of the inputs, sorted.
fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<VarId> {
    let mut vars: Vec<VarId> = (0..n).map(VarId::from).collect();
    vars.shuffle(rng);
    let k = rng.gen_range(1..=n);
    let mut set = vars[..k].to_vec();
    set.sort();
    set
}

fn oracle_cmd(cli: &Cli, a: &OracleArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let circuit = load(&a.file)?;
    let n = circuit.inputs.len();
    let limit = a.max_n.min(MAX_TRUTH_VECTOR_VARS);
    if n > limit {
        return Err(Failure::input(format!(
            "{}: {n} inputs exceed --max-n {limit}",
            circuit.name
        )));
    }
    let tables = circuit.truth_tables().map_err(|e| Failure::input(e.to_string()))?;
    let (mut mgr, roots) = build(cli, &circuit)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut failures: Vec<String> = Vec::new();
    let mut checks = 0usize;
    let note = |out: &mut dyn Write, line: String| -> std::io::Result<()> {
        if !cli.quiet {
            writeln!(out, "{line}")?;
        }
        Ok(())
    };

    // Measures under uniform and under one random distribution.
    let uniform = VarProbabilities::uniform(n);
    let skewed = random_weights(&mut rng, n);
    for (i, (&root, table)) in roots.iter().zip(&tables).enumerate() {
        let name = &circuit.outputs[i];
        checks += 1;
        if oracle::enumerate(&mgr, root).map_err(|e| Failure::input(e.to_string()))? != *table {
            failures.push(format!("{name}: BDD differs from netlist simulation"));
            continue;
        }
        for (label, w) in [("uniform", &uniform), ("random", &skewed)] {
            let set = (n > 0).then(|| random_subset(&mut rng, n));
            let bdd = measures::measure_report(&mut mgr, root, w, set.as_deref())
                .map_err(|e| Failure::input(e.to_string()))?;
            let exact = oracle::exact_measures(table, w, set.as_deref());
            checks += 1;
            let bad = oracle::compare_reports(&bdd, &exact, ORACLE_TOLERANCE);
            failures.extend(bad.iter().map(|m| format!("{name} ({label} weights): {m}")));
        }
    }
    note(
        out,
        format!("measures: {} outputs checked against enumeration", roots.len()),
    )?;

    // Reorderings: equivalence, measure invariance and the exhaustive bound.
    let optimum = if n <= MAX_ORDER_SEARCH_VARS {
        Some(
            oracle::best_order_exhaustive_multi(&tables, Execution::Parallel)
                .map_err(|e| Failure::input(e.to_string()))?
                .1,
        )
    } else {
        None
    };
    let before: Vec<Vec<f64>> = roots
        .iter()
        .map(|&r| entropy_profile(&mgr, r, &uniform))
        .collect::<Result<_, _>>()?;
    for method in [Method::Info, Method::Sift, Method::Window(3)] {
        let mut copy = mgr.clone();
        let trace = match reorder::reorder(&mut copy, method) {
            Ok(t) => t,
            Err(ReorderError::EquivalenceViolation(i)) => {
                failures.push(format!("{method}: output {} changed", circuit.outputs[i]));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        for (i, (&root, table)) in roots.iter().zip(&tables).enumerate() {
            checks += 2;
            let name = &circuit.outputs[i];
            if oracle::enumerate(&copy, root).map_err(|e| Failure::input(e.to_string()))? != *table {
                failures.push(format!("{method}: output {name} changed"));
            }
            let after = entropy_profile(&copy, root, &uniform)?;
            if after
                .iter()
                .zip(&before[i])
                .any(|(x, y)| (x - y).abs() > ORACLE_TOLERANCE)
            {
                failures.push(format!("{method}: measures of {name} changed"));
            }
        }
        if let Some(best) = optimum {
            checks += 1;
            if trace.final_size < best {
                failures.push(format!(
                    "{method}: size {} below the exhaustive optimum {best}",
                    trace.final_size
                ));
            }
        }
        let bound = optimum.map_or(String::new(), |b| format!(", optimum {b}"));
        note(
            out,
            format!("{method}: size {} -> {}{bound}", trace.initial_size, trace.final_size),
        )?;
    }

    if failures.is_empty() {
        writeln!(out, "oracle-check {}: {checks} checks passed", circuit.name)?;
        Ok(())
    } else {
        for f in &failures {
            writeln!(out, "MISMATCH {f}")?;
        }
        Err(Failure::mismatch(format!(
            "{} of {checks} checks failed",
            failures.len()
        )))
    }
}

/// `H(f)` followed by `H(f|x)` for every input.
fn entropy_profile(mgr: &BddManager, root: NodeRef, w: &VarProbabilities) -> Result<Vec<f64>, Failure> {
    let h = measures::entropy(mgr, root, w).map_err(|e| Failure::input(e.to_string()))?;
    let mut v = vec![h];
    v.extend(measures::conditional_entropies(mgr, root, w).map_err(|e| Failure::input(e.to_string()))?);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("infobdd").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["measures"]).0, 2);
        assert_eq!(run_str(&["reorder", "x.blif", "--method", "genetic"]).0, 2);
        assert_eq!(run_str(&["reorder", "x.blif", "--window", "7"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("oracle-check"));
    }

    #[test]
    fn missing_file_exits_1() {
        let (code, _, err) = run_str(&["measures", "/nonexistent/file.blif"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: "));
    }

    #[test]
    fn changed_functions_exit_3() {
        assert_eq!(Failure::from(ReorderError::EquivalenceViolation(0)).code, 3);
        assert_eq!(Failure::from(ReorderError::BadWindow(9)).code, 1);
    }

    #[test]
    fn window_flag_overrides_size() {
        assert_eq!(with_window(Method::Window(3), Some(2)), Method::Window(2));
        assert_eq!(with_window(Method::Sift, Some(2)), Method::Sift);
    }
}
