//! Gate-level netlists with single-output cover gates.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use super::NetlistError;

/// One input column of a cover row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lit {
    Zero,
    One,
    DontCare,
}

impl Lit {
    pub fn from_char(c: char) -> Option<Lit> {
        match c {
            '0' => Some(Lit::Zero),
            '1' => Some(Lit::One),
            '-' => Some(Lit::DontCare),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Lit::Zero => '0',
            Lit::One => '1',
            Lit::DontCare => '-',
        }
    }

    pub fn matches(self, value: bool) -> bool {
        match self {
            Lit::Zero => !value,
            Lit::One => value,
            Lit::DontCare => true,
        }
    }
}

/// A gate computing `output` from `inputs` as a sum of cubes. When `onset`
/// is false the rows describe where the output is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub output: String,
    pub inputs: Vec<String>,
    pub rows: Vec<Vec<Lit>>,
    pub onset: bool,
}

impl Gate {
    pub fn eval(&self, values: &[bool]) -> bool {
        let hit = self
            .rows
            .iter()
            .any(|row| row.iter().zip(values).all(|(lit, &v)| lit.matches(v)));
        hit == self.onset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Latch {
    pub input: String,
    pub output: String,
    /// Trailing tokens (type, control, initial value), kept verbatim.
    pub extra: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Netlist {
    pub name: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// Topologically ordered: every gate comes after the gates driving it.
    pub gates: Vec<Gate>,
    pub latches: Vec<Latch>,
}

impl Netlist {
    /// Primary inputs followed by latch outputs.
    pub fn combinational_inputs(&self) -> Vec<String> {
        self.inputs
            .iter()
            .cloned()
            .chain(self.latches.iter().map(|l| l.output.clone()))
            .collect()
    }

    /// Primary outputs followed by latch inputs.
    pub fn combinational_outputs(&self) -> Vec<String> {
        self.outputs
            .iter()
            .cloned()
            .chain(self.latches.iter().map(|l| l.input.clone()))
            .collect()
    }

    /// Checks that every signal is defined exactly once and sorts the gates
    /// topologically. The relative file order of independent gates is kept.
    pub fn finalize(mut self) -> Result<Self, NetlistError> {
        let mut defined: HashSet<&str> = HashSet::new();
        for name in self.inputs.iter().chain(self.latches.iter().map(|l| &l.output)) {
            if !defined.insert(name) {
                return Err(NetlistError::Duplicate(name.clone()));
            }
        }
        let mut driver: HashMap<&str, usize> = HashMap::new();
        for (i, g) in self.gates.iter().enumerate() {
            if !defined.insert(&g.output) {
                return Err(NetlistError::Duplicate(g.output.clone()));
            }
            driver.insert(&g.output, i);
        }
        let used = self
            .gates
            .iter()
            .flat_map(|g| g.inputs.iter())
            .chain(&self.outputs)
            .chain(self.latches.iter().map(|l| &l.input));
        for name in used {
            if !defined.contains(name.as_str()) {
                return Err(NetlistError::Undefined(name.clone()));
            }
        }

        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let mut marks = vec![Mark::New; self.gates.len()];
        let mut order = Vec::with_capacity(self.gates.len());
        for start in 0..self.gates.len() {
            if marks[start] != Mark::New {
                continue;
            }
            // Iterative DFS; the stack holds (gate, next input to visit).
            let mut stack = vec![(start, 0usize)];
            marks[start] = Mark::Active;
            while let Some(top) = stack.last_mut() {
                let (g, next) = *top;
                let gate = &self.gates[g];
                if next < gate.inputs.len() {
                    top.1 += 1;
                    let input = gate.inputs[next].as_str();
                    if let Some(&d) = driver.get(input) {
                        match marks[d] {
                            Mark::New => {
                                marks[d] = Mark::Active;
                                stack.push((d, 0));
                            }
                            Mark::Active => {
                                let from = stack.iter().position(|&(s, _)| s == d).unwrap();
                                let signals = stack[from..]
                                    .iter()
                                    .map(|&(s, _)| self.gates[s].output.clone())
                                    .collect();
                                return Err(NetlistError::Cycle(signals));
                            }
                            Mark::Done => {}
                        }
                    }
                } else {
                    marks[g] = Mark::Done;
                    order.push(g);
                    stack.pop();
                }
            }
        }
        let mut slots: Vec<Option<Gate>> = self.gates.into_iter().map(Some).collect();
        self.gates = order.into_iter().map(|i| slots[i].take().unwrap()).collect();
        Ok(self)
    }

    /// Values of the combinational outputs for one assignment of the
    /// combinational inputs.
    pub fn simulate(&self, assignment: &[bool]) -> Vec<bool> {
        let mut values: HashMap<&str, bool> = self
            .inputs
            .iter()
            .chain(self.latches.iter().map(|l| &l.output))
            .zip(assignment)
            .map(|(name, &v)| (name.as_str(), v))
            .collect();
        let mut scratch = Vec::new();
        for g in &self.gates {
            scratch.clear();
            scratch.extend(g.inputs.iter().map(|i| values[i.as_str()]));
            values.insert(&g.output, g.eval(&scratch));
        }
        self.outputs
            .iter()
            .chain(self.latches.iter().map(|l| &l.input))
            .map(|o| values[o.as_str()])
            .collect()
    }

    /// BLIF text for this netlist. Parsed netlists print back identically.
    pub fn to_blif(&self) -> String {
        let mut out = String::new();
        writeln!(out, ".model {}", self.name).unwrap();
        if !self.inputs.is_empty() {
            writeln!(out, ".inputs {}", self.inputs.join(" ")).unwrap();
        }
        if !self.outputs.is_empty() {
            writeln!(out, ".outputs {}", self.outputs.join(" ")).unwrap();
        }
        for l in &self.latches {
            write!(out, ".latch {} {}", l.input, l.output).unwrap();
            for t in &l.extra {
                write!(out, " {t}").unwrap();
            }
            out.push('\n');
        }
        for g in &self.gates {
            out.push_str(".names");
            for i in g.inputs.iter().chain(std::iter::once(&g.output)) {
                write!(out, " {i}").unwrap();
            }
            out.push('\n');
            if g.rows.is_empty() && !g.onset {
                // Empty off-set: constant one, which BLIF spells as a full cube.
                let cube = "-".repeat(g.inputs.len());
                writeln!(out, "{cube} 1").unwrap();
                continue;
            }
            let bit = if g.onset { '1' } else { '0' };
            for row in &g.rows {
                let cube: String = row.iter().map(|l| l.to_char()).collect();
                if cube.is_empty() {
                    writeln!(out, "{bit}").unwrap();
                } else {
                    writeln!(out, "{cube} {bit}").unwrap();
                }
            }
        }
        out.push_str(".end\n");
        out
    }
}
