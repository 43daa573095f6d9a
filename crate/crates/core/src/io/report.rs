//! Report rendering: aligned text tables, CSV and JSON.
//!
//! Machine formats print bits and probabilities as 6-decimal fixed point so
//! that repeated runs are byte-identical. Wall times appear there only when
//! requested.

use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::bdd::VarId;
use crate::measures::MeasureReport;
use crate::reorder::{Method, ReorderTrace};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// 6-decimal fixed point; negative zero prints as zero.
pub fn fixed6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn fixed4(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

fn millis(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1e3)
}

/// JSON number carrying `text` verbatim.
fn number(text: &str) -> Value {
    Value::Number(text.parse::<Number>().expect("formatted number"))
}

fn opt_str(s: &Option<String>) -> Value {
    s.as_ref().map_or(Value::Null, |s| Value::String(s.clone()))
}

/// Left-aligned columns separated by two spaces.
fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn csv_string<T: Serialize>(rows: &[T], header: &[&str]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

fn json_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// One long-format measure value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureRow {
    pub circuit: String,
    pub output: Option<String>,
    pub variable: Option<String>,
    pub measure: String,
    /// Already formatted.
    pub value: String,
}

/// Per-output entropy and per-variable conditional entropy of a circuit.
#[derive(Clone, Debug)]
pub struct MeasureTable {
    pub circuit: String,
    /// Shared node count of all outputs under the declaration order.
    pub nodes: usize,
    /// Name of each input, indexed by variable.
    pub input_names: Vec<String>,
    /// Variables shown, in display order.
    pub vars: Vec<VarId>,
    pub outputs: Vec<(String, MeasureReport)>,
}

impl MeasureTable {
    fn set_label(&self, vars: &[VarId]) -> String {
        vars.iter()
            .map(|v| self.input_names[v.index()].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn rows(&self) -> Vec<MeasureRow> {
        let row = |output: Option<&str>, variable: Option<String>, measure: &str, value: String| MeasureRow {
            circuit: self.circuit.clone(),
            output: output.map(str::to_string),
            variable,
            measure: measure.to_string(),
            value,
        };
        let mut rows = Vec::new();
        for (name, r) in &self.outputs {
            rows.push(row(Some(name), None, "p", fixed6(r.sat)));
            rows.push(row(Some(name), None, "H", fixed6(r.entropy)));
            for &v in &self.vars {
                let var = Some(self.input_names[v.index()].clone());
                rows.push(row(Some(name), var, "H_cond", fixed6(r.var(v).cond_entropy)));
            }
            if let Some(set) = &r.set_entropy {
                rows.push(row(
                    Some(name),
                    Some(self.set_label(&set.vars)),
                    "H_set",
                    fixed6(set.bits),
                ));
            }
        }
        rows.push(row(None, None, "nodes", self.nodes.to_string()));
        rows
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.table(),
            Format::Csv => csv_string(&self.rows(), &["circuit", "output", "variable", "measure", "value"]),
            Format::Json => {
                let rows = self
                    .rows()
                    .into_iter()
                    .map(|r| {
                        let mut m = Map::new();
                        m.insert("circuit".into(), Value::String(r.circuit));
                        m.insert("output".into(), opt_str(&r.output));
                        m.insert("variable".into(), opt_str(&r.variable));
                        m.insert("measure".into(), Value::String(r.measure));
                        m.insert("value".into(), number(&r.value));
                        Value::Object(m)
                    })
                    .collect();
                json_string(&Value::Array(rows))
            }
        }
    }

    fn table(&self) -> String {
        let mut out = format!(
            "circuit {}: inputs {}, outputs {}, nodes {}\n",
            self.circuit,
            self.input_names.len(),
            self.outputs.len(),
            self.nodes
        );
        let mut header = vec!["output".to_string(), "p(f=1)".into(), "H(f)".into()];
        header.extend(
            self.vars
                .iter()
                .map(|v| format!("H(f|{})", self.input_names[v.index()])),
        );
        let set = self.outputs.first().and_then(|(_, r)| r.set_entropy.as_ref());
        if let Some(set) = set {
            header.push(format!("H(f|{})", self.set_label(&set.vars)));
        }
        let mut rows = vec![header];
        for (name, r) in &self.outputs {
            let mut row = vec![name.clone(), fixed4(r.sat), fixed4(r.entropy)];
            row.extend(self.vars.iter().map(|&v| fixed4(r.var(v).cond_entropy)));
            if let Some(set) = &r.set_entropy {
                row.push(fixed4(set.bits));
            }
            rows.push(row);
        }
        out.push_str(&align(&rows));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub method: String,
    pub size: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Shared size and wall time per reordering method.
#[derive(Clone, Debug)]
pub struct CompareTable {
    pub circuit: String,
    pub rows: Vec<CompareRow>,
    /// Include wall times in machine formats.
    pub timing: bool,
}

impl CompareTable {
    pub fn render(&self, format: Format) -> String {
        let ms = |r: &CompareRow| self.timing.then(|| millis(r.elapsed));
        match format {
            Format::Table => {
                let mut rows = vec![vec!["method".to_string(), "size".into(), "ms".into()]];
                rows.extend(
                    self.rows
                        .iter()
                        .map(|r| vec![r.method.clone(), r.size.to_string(), millis(r.elapsed)]),
                );
                format!("circuit {}\n{}", self.circuit, align(&rows))
            }
            Format::Csv => {
                #[derive(Serialize)]
                struct Line<'a> {
                    circuit: &'a str,
                    method: &'a str,
                    size: usize,
                    millis: Option<String>,
                }
                let lines: Vec<Line> = self
                    .rows
                    .iter()
                    .map(|r| Line {
                        circuit: &self.circuit,
                        method: &r.method,
                        size: r.size,
                        millis: ms(r),
                    })
                    .collect();
                csv_string(&lines, &["circuit", "method", "size", "millis"])
            }
            Format::Json => {
                let rows = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut m = Map::new();
                        m.insert("circuit".into(), Value::String(self.circuit.clone()));
                        m.insert("method".into(), Value::String(r.method.clone()));
                        m.insert("size".into(), Value::from(r.size));
                        m.insert("millis".into(), ms(r).map_or(Value::Null, |t| number(&t)));
                        Value::Object(m)
                    })
                    .collect();
                json_string(&Value::Array(rows))
            }
        }
    }
}

/// Outcome of one reordering run.
#[derive(Clone, Debug)]
pub struct ReorderReport {
    pub circuit: String,
    pub input_names: Vec<String>,
    pub trace: ReorderTrace,
    /// Include the per-level choices.
    pub show_trace: bool,
    pub timing: bool,
}

#[derive(Serialize)]
struct ReorderLine {
    circuit: String,
    method: String,
    level: Option<usize>,
    variable: Option<String>,
    measure: &'static str,
    value: String,
}

impl ReorderReport {
    fn name(&self, v: VarId) -> &str {
        &self.input_names[v.index()]
    }

    /// Comma-separated variable names, top level first.
    pub fn order_label(&self, order: &[VarId]) -> String {
        order.iter().map(|&v| self.name(v)).collect::<Vec<_>>().join(",")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.table(),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn table(&self) -> String {
        let t = &self.trace;
        let mut out = format!("circuit {}\nmethod {}\n", self.circuit, t.method);
        out.push_str(&format!("size {} -> {}\n", t.initial_size, t.final_size));
        out.push_str(&format!("initial order {}\n", self.order_label(&t.initial_order)));
        out.push_str(&format!("order {}\n", self.order_label(&t.final_order)));
        if self.timing {
            out.push_str(&format!("time {} ms ({} swaps)\n", millis(t.elapsed), t.swaps));
        }
        if self.show_trace {
            if t.method != Method::Info {
                out.push_str("trace: only the info method records per-level choices\n");
            }
            let mut rows = Vec::new();
            for l in &t.levels {
                let scores = l
                    .candidates
                    .iter()
                    .map(|&(v, h)| format!("{}={}", self.name(v), fixed4(h)))
                    .collect::<Vec<_>>()
                    .join(" ");
                rows.push(vec![
                    format!("level {}", l.level),
                    self.name(l.chosen).to_string(),
                    if l.tie { "tie".into() } else { String::new() },
                    format!("size {}", l.size_after),
                    scores,
                ]);
            }
            out.push_str(&align(&rows));
        }
        out
    }

    fn lines(&self) -> Vec<ReorderLine> {
        let t = &self.trace;
        let line = |level: Option<usize>, variable: Option<VarId>, measure: &'static str, value: String| ReorderLine {
            circuit: self.circuit.clone(),
            method: t.method.to_string(),
            level,
            variable: variable.map(|v| self.name(v).to_string()),
            measure,
            value,
        };
        let mut lines = vec![
            line(None, None, "initial_size", t.initial_size.to_string()),
            line(None, None, "final_size", t.final_size.to_string()),
        ];
        for (l, &v) in t.final_order.iter().enumerate() {
            lines.push(line(Some(l), Some(v), "level", l.to_string()));
        }
        if self.show_trace {
            for lc in &t.levels {
                for &(v, h) in &lc.candidates {
                    lines.push(line(Some(lc.level), Some(v), "score", fixed6(h)));
                }
                lines.push(line(
                    Some(lc.level),
                    Some(lc.chosen),
                    "size_after",
                    lc.size_after.to_string(),
                ));
            }
        }
        if self.timing {
            lines.push(line(None, None, "millis", millis(t.elapsed)));
        }
        lines
    }

    fn csv(&self) -> String {
        csv_string(
            &self.lines(),
            &["circuit", "method", "level", "variable", "measure", "value"],
        )
    }

    fn json(&self) -> String {
        let t = &self.trace;
        let names = |order: &[VarId]| Value::Array(order.iter().map(|&v| Value::String(self.name(v).into())).collect());
        let mut m = Map::new();
        m.insert("circuit".into(), Value::String(self.circuit.clone()));
        m.insert("method".into(), Value::String(t.method.to_string()));
        m.insert("initial_size".into(), Value::from(t.initial_size));
        m.insert("final_size".into(), Value::from(t.final_size));
        m.insert("initial_order".into(), names(&t.initial_order));
        m.insert("final_order".into(), names(&t.final_order));
        m.insert(
            "millis".into(),
            if self.timing {
                number(&millis(t.elapsed))
            } else {
                Value::Null
            },
        );
        if self.show_trace {
            let levels = t
                .levels
                .iter()
                .map(|l| {
                    let mut lm = Map::new();
                    lm.insert("level".into(), Value::from(l.level));
                    lm.insert("chosen".into(), Value::String(self.name(l.chosen).into()));
                    lm.insert("tie".into(), Value::Bool(l.tie));
                    lm.insert("size_after".into(), Value::from(l.size_after));
                    let scores = l
                        .candidates
                        .iter()
                        .map(|&(v, h)| {
                            let mut sm = Map::new();
                            sm.insert("variable".into(), Value::String(self.name(v).into()));
                            sm.insert("value".into(), number(&fixed6(h)));
                            Value::Object(sm)
                        })
                        .collect();
                    lm.insert("scores".into(), Value::Array(scores));
                    Value::Object(lm)
                })
                .collect();
            m.insert("trace".into(), Value::Array(levels));
        }
        json_string(&Value::Object(m))
    }
}
