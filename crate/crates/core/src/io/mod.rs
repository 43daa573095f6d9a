//! Circuit ingestion and report formatting.

mod blif;
mod netlist;
mod pla;
pub mod report;

use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

use crate::bdd::{BddError, BddManager, NodeRef, VarId, MAX_TRUTH_VECTOR_VARS};
use crate::oracle::{OracleError, TruthTable};

pub use blif::parse_blif;
pub use netlist::{Gate, Latch, Lit, Netlist};
pub use pla::parse_pla;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetlistError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: row has {found} columns, expected {expected}")]
    Arity { line: usize, expected: usize, found: usize },
    #[error("{directive} lists {found} names, expected {expected}")]
    NameCount {
        directive: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("missing header: {0}")]
    MissingHeader(&'static str),
    #[error("signal `{0}` is used but never defined")]
    Undefined(String),
    #[error("signal `{0}` is defined more than once")]
    Duplicate(String),
    #[error("combinational cycle through {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("node limit {limit} exceeded while building gate `{gate}`")]
    NodeLimit { gate: String, limit: usize },
    #[error("{inputs} inputs exceed the truth-table limit of {max}")]
    TooManyInputs { inputs: usize, max: usize },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Bdd(#[from] BddError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug, PartialEq)]
enum Source {
    Netlist(Netlist),
    Tables(Vec<TruthTable>),
}

/// A combinational circuit from any supported input format.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub name: String,
    /// Input names; position `i` is `VarId(i)`.
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    source: Source,
}

impl Circuit {
    pub fn from_netlist(netlist: Netlist) -> Self {
        Circuit {
            name: netlist.name.clone(),
            inputs: netlist.combinational_inputs(),
            outputs: netlist.combinational_outputs(),
            source: Source::Netlist(netlist),
        }
    }

    /// Circuit with one output per table, inputs `x1..xn`, outputs `f1..fm`
    /// unless `output_names` is given.
    pub fn from_tables(
        name: &str,
        tables: Vec<TruthTable>,
        output_names: Option<Vec<String>>,
    ) -> Result<Self, NetlistError> {
        let n = tables.first().map_or(0, TruthTable::num_vars);
        if tables.iter().any(|t| t.num_vars() != n) {
            return Err(NetlistError::Oracle(OracleError::Mismatched));
        }
        let outputs = output_names.unwrap_or_else(|| (1..=tables.len()).map(|k| format!("f{k}")).collect());
        Ok(Circuit {
            name: name.to_string(),
            inputs: (1..=n).map(|k| format!("x{k}")).collect(),
            outputs,
            source: Source::Tables(tables),
        })
    }

    pub fn netlist(&self) -> Option<&Netlist> {
        match &self.source {
            Source::Netlist(n) => Some(n),
            Source::Tables(_) => None,
        }
    }

    /// Builds every output in a fresh manager with the declaration order of
    /// the inputs. Outputs are registered as roots.
    pub fn build(&self, node_limit: Option<usize>) -> Result<(BddManager, Vec<NodeRef>), NetlistError> {
        let mut mgr = BddManager::new(self.inputs.len());
        let roots = match &self.source {
            Source::Netlist(n) => build_circuit_bdds(n, &mut mgr, node_limit)?,
            Source::Tables(tables) => {
                let roots = tables
                    .iter()
                    .map(|t| mgr.build_from_truth_vector(t.bits()))
                    .collect::<Result<Vec<_>, _>>()?;
                for &r in &roots {
                    mgr.register_root(r)?;
                }
                roots
            }
        };
        Ok((mgr, roots))
    }

    /// Truth table of every output, computed without BDDs.
    pub fn truth_tables(&self) -> Result<Vec<TruthTable>, NetlistError> {
        match &self.source {
            Source::Tables(t) => Ok(t.clone()),
            Source::Netlist(netlist) => {
                let n = self.inputs.len();
                if n > MAX_TRUTH_VECTOR_VARS {
                    return Err(NetlistError::TooManyInputs {
                        inputs: n,
                        max: MAX_TRUTH_VECTOR_VARS,
                    });
                }
                let mut columns = vec![Vec::with_capacity(1 << n); self.outputs.len()];
                let mut assignment = vec![false; n];
                for i in 0..1usize << n {
                    for (x, a) in assignment.iter_mut().enumerate() {
                        *a = i >> (n - 1 - x) & 1 == 1;
                    }
                    for (col, v) in columns.iter_mut().zip(netlist.simulate(&assignment)) {
                        col.push(v);
                    }
                }
                columns
                    .into_iter()
                    .map(|bits| TruthTable::new(n, bits).map_err(NetlistError::from))
                    .collect()
            }
        }
    }

    /// Position of `name` among the inputs.
    pub fn input_var(&self, name: &str) -> Option<VarId> {
        self.inputs.iter().position(|i| i == name).map(VarId::from)
    }
}

/// Composes every gate with `apply` in topological order and returns one
/// root per combinational output, all registered in `mgr`. `mgr` must have
/// one variable per combinational input. When `node_limit` is set and the
/// allocated node count exceeds it even after collecting dead signals, the
/// build stops with an error naming the gate being built.
pub fn build_circuit_bdds(
    netlist: &Netlist,
    mgr: &mut BddManager,
    node_limit: Option<usize>,
) -> Result<Vec<NodeRef>, NetlistError> {
    let inputs = netlist.combinational_inputs();
    let outputs = netlist.combinational_outputs();
    assert_eq!(mgr.num_vars(), inputs.len(), "one variable per combinational input");

    // Index of the last gate reading each signal; outputs live forever.
    let mut last_use: HashMap<&str, usize> = HashMap::new();
    for (i, g) in netlist.gates.iter().enumerate() {
        for s in &g.inputs {
            last_use.insert(s, i);
        }
    }
    for o in &outputs {
        last_use.insert(o, usize::MAX);
    }

    let mut signals: HashMap<String, NodeRef> = HashMap::new();
    for (i, name) in inputs.iter().enumerate() {
        let v = mgr.var(VarId::from(i))?;
        signals.insert(name.clone(), v);
    }
    for (i, gate) in netlist.gates.iter().enumerate() {
        let args: Vec<NodeRef> = gate.inputs.iter().map(|s| signals[s]).collect();
        let mut acc = mgr.zero();
        for row in &gate.rows {
            let mut cube = mgr.one();
            for (lit, &x) in row.iter().zip(&args) {
                cube = match lit {
                    Lit::One => mgr.and(cube, x)?,
                    Lit::Zero => {
                        let nx = mgr.negate(x)?;
                        mgr.and(cube, nx)?
                    }
                    Lit::DontCare => cube,
                };
            }
            acc = mgr.or(acc, cube)?;
        }
        if !gate.onset {
            acc = mgr.negate(acc)?;
        }
        signals.insert(gate.output.clone(), acc);

        if let Some(limit) = node_limit {
            if mgr.allocated_nodes() > limit {
                signals.retain(|name, _| last_use.get(name.as_str()).is_some_and(|&u| u > i));
                let live: Vec<NodeRef> = signals.values().copied().collect();
                mgr.collect_garbage(&live);
                if mgr.allocated_nodes() > limit {
                    return Err(NetlistError::NodeLimit {
                        gate: gate.output.clone(),
                        limit,
                    });
                }
            }
        }
    }
    let roots: Vec<NodeRef> = outputs.iter().map(|o| signals[o]).collect();
    for &r in &roots {
        mgr.register_root(r)?;
    }
    Ok(roots)
}

/// Raw truth-vector file: one output per line, either `bits` or `name bits`,
/// `#` comments. Bit `i` is the value on the assignment whose binary digits
/// are `(x1, …, xn)`, `x1` most significant.
pub fn parse_truth_vectors(text: &str) -> Result<(Vec<Option<String>>, Vec<TruthTable>), NetlistError> {
    let mut names = Vec::new();
    let mut tables = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let (name, bits) = match tokens.as_slice() {
            [bits] => (None, *bits),
            [name, bits] => (Some(name.to_string()), *bits),
            _ => {
                return Err(NetlistError::Syntax {
                    line: i + 1,
                    message: "expected `bits` or `name bits`".into(),
                })
            }
        };
        let table = TruthTable::parse(bits).map_err(|e| NetlistError::Syntax {
            line: i + 1,
            message: e.to_string(),
        })?;
        names.push(name);
        tables.push(table);
    }
    if tables.is_empty() {
        return Err(NetlistError::MissingHeader("at least one truth vector"));
    }
    Ok((names, tables))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Blif,
    Pla,
    TruthVector,
}

impl InputFormat {
    /// By extension, falling back to the first directive in the text.
    pub fn detect(path: &Path, text: &str) -> InputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("blif") => return InputFormat::Blif,
            Some("pla") => return InputFormat::Pla,
            Some("tt") | Some("tv") => return InputFormat::TruthVector,
            _ => {}
        }
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .unwrap_or("");
        if first.starts_with(".model") || first.starts_with(".inputs") {
            InputFormat::Blif
        } else if first.starts_with('.') {
            InputFormat::Pla
        } else {
            InputFormat::TruthVector
        }
    }
}

pub fn parse_circuit(name: &str, text: &str, format: InputFormat) -> Result<Circuit, NetlistError> {
    match format {
        InputFormat::Blif => parse_blif(text).map(Circuit::from_netlist),
        InputFormat::Pla => {
            let mut netlist = parse_pla(text)?;
            netlist.name = name.to_string();
            Ok(Circuit::from_netlist(netlist))
        }
        InputFormat::TruthVector => {
            let (names, tables) = parse_truth_vectors(text)?;
            let names = if names.iter().all(Option::is_some) {
                Some(names.into_iter().flatten().collect())
            } else {
                None
            };
            Circuit::from_tables(name, tables, names)
        }
    }
}

/// Reads and parses a circuit file; the circuit name defaults to the file stem.
pub fn load_circuit(path: &Path) -> Result<Circuit, NetlistError> {
    let text = std::fs::read_to_string(path).map_err(|e| NetlistError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("circuit");
    parse_circuit(stem, &text, InputFormat::detect(path, &text))
}
