//! BLIF subset: `.model`, `.inputs`, `.outputs`, `.names`, `.latch`, `.end`.
//!
//! Latches are cut: each latch output becomes a pseudo-input and each latch
//! input a pseudo-output of the combinational core.

use super::netlist::{Gate, Latch, Lit, Netlist};
use super::NetlistError;

/// Logical lines after comment stripping and `\` continuation, with the
/// 1-based number of the physical line each one starts on.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut pending: Option<(usize, String)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let (body, continued) = match line.trim_end().strip_suffix('\\') {
            Some(body) => (body, true),
            None => (line, false),
        };
        let entry = pending.get_or_insert_with(|| (i + 1, String::new()));
        entry.1.push(' ');
        entry.1.push_str(body);
        if !continued {
            let (n, s) = pending.take().unwrap();
            if !s.trim().is_empty() {
                out.push((n, s));
            }
        }
    }
    if let Some((n, s)) = pending {
        if !s.trim().is_empty() {
            out.push((n, s));
        }
    }
    out
}

pub fn parse_blif(text: &str) -> Result<Netlist, NetlistError> {
    let syntax = |line: usize, message: String| NetlistError::Syntax { line, message };
    let mut name: Option<String> = None;
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    let mut gates: Vec<Gate> = Vec::new();
    let mut latches = Vec::new();
    // Whether the last directive was `.names`, so cover rows may follow.
    let mut in_cover = false;
    let mut cover_bit: Option<bool> = None;
    let mut ended = false;

    for (line, text) in logical_lines(text) {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if ended {
            return Err(syntax(line, "content after .end".into()));
        }
        let head = tokens[0];
        if !head.starts_with('.') {
            if !in_cover {
                return Err(syntax(line, format!("unexpected `{head}` outside a .names cover")));
            }
            let gate = gates.last_mut().unwrap();
            let (cube, bit) = match (gate.inputs.len(), tokens.as_slice()) {
                (0, [bit]) => ("", *bit),
                (_, [cube, bit]) => (*cube, *bit),
                _ => return Err(syntax(line, "malformed cover row".into())),
            };
            let row = cube
                .chars()
                .map(Lit::from_char)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| syntax(line, format!("invalid cube `{cube}`")))?;
            if row.len() != gate.inputs.len() {
                return Err(syntax(
                    line,
                    format!("cube has {} columns, gate has {} inputs", row.len(), gate.inputs.len()),
                ));
            }
            let bit = match bit {
                "1" => true,
                "0" => false,
                other => return Err(syntax(line, format!("invalid output value `{other}`"))),
            };
            if cover_bit.is_some_and(|b| b != bit) {
                return Err(syntax(line, "cover mixes on-set and off-set rows".into()));
            }
            cover_bit = Some(bit);
            gate.onset = bit;
            gate.rows.push(row);
            continue;
        }
        in_cover = false;
        match head {
            ".model" => {
                if name.is_some() {
                    return Err(syntax(line, "only one .model is supported".into()));
                }
                name = Some(tokens.get(1).unwrap_or(&"unnamed").to_string());
            }
            ".inputs" => inputs.extend(tokens[1..].iter().map(|s| s.to_string())),
            ".outputs" => outputs.extend(tokens[1..].iter().map(|s| s.to_string())),
            ".names" => {
                let Some((out, ins)) = tokens[1..].split_last() else {
                    return Err(syntax(line, ".names needs an output signal".into()));
                };
                gates.push(Gate {
                    output: out.to_string(),
                    inputs: ins.iter().map(|s| s.to_string()).collect(),
                    rows: Vec::new(),
                    onset: true,
                });
                in_cover = true;
                cover_bit = None;
            }
            ".latch" => {
                if tokens.len() < 3 {
                    return Err(syntax(line, ".latch needs input and output".into()));
                }
                latches.push(Latch {
                    input: tokens[1].to_string(),
                    output: tokens[2].to_string(),
                    extra: tokens[3..].iter().map(|s| s.to_string()).collect(),
                });
            }
            ".end" => ended = true,
            other => return Err(syntax(line, format!("unsupported directive `{other}`"))),
        }
    }

    Netlist {
        name: name.unwrap_or_else(|| "unnamed".into()),
        inputs,
        outputs,
        gates,
        latches,
    }
    .finalize()
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
# f = !x3 !x2 + x1
.model example1
.inputs x1 x2 \\
  x3
.outputs f
.names x2 x3 t
00 1
.names t x1 f
1- 1
-1 1
.end
";

    #[test]
    fn parses_example() {
        let n = parse_blif(EXAMPLE).unwrap();
        assert_eq!(n.name, "example1");
        assert_eq!(n.inputs, ["x1", "x2", "x3"]);
        assert_eq!(n.gates.len(), 2);
        let tt: String = (0..8)
            .map(|i| {
                let a: Vec<bool> = (0..3).map(|x| i >> (2 - x) & 1 == 1).collect();
                if n.simulate(&a)[0] {
                    '1'
                } else {
                    '0'
                }
            })
            .collect();
        assert_eq!(tt, "10001111");
    }

    #[test]
    fn wire_through() {
        let n = parse_blif(".model id\n.inputs a\n.outputs a\n.end\n").unwrap();
        assert!(n.gates.is_empty());
        assert_eq!(n.simulate(&[true]), [true]);
        assert_eq!(n.simulate(&[false]), [false]);
    }

    #[test]
    fn constants() {
        let n =
            parse_blif(".model c\n.outputs one zero inv\n.names one\n1\n.names zero\n.names inv\n0\n.end\n").unwrap();
        assert_eq!(n.simulate(&[]), [true, false, false]);
    }

    #[test]
    fn offset_cover() {
        let n = parse_blif(".model n\n.inputs a b\n.outputs y\n.names a b y\n11 0\n.end\n").unwrap();
        assert_eq!(n.simulate(&[true, true]), [false]);
        assert_eq!(n.simulate(&[true, false]), [true]);
    }

    #[test]
    fn gates_are_sorted_topologically() {
        let n = parse_blif(".model t\n.inputs a\n.outputs y\n.names b y\n1 1\n.names a b\n0 1\n.end\n").unwrap();
        assert_eq!(n.gates[0].output, "b");
        assert_eq!(n.simulate(&[false]), [true]);
    }

    #[test]
    fn cycle_is_reported() {
        let err =
            parse_blif(".model c\n.inputs a\n.outputs y\n.names a z y\n11 1\n.names y z\n1 1\n.end\n").unwrap_err();
        match err {
            NetlistError::Cycle(signals) => {
                assert!(signals.contains(&"y".to_string()));
                assert!(signals.contains(&"z".to_string()));
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn undefined_signal() {
        let err = parse_blif(".model u\n.inputs a\n.outputs y\n.names a q y\n11 1\n.end\n").unwrap_err();
        assert_eq!(err, NetlistError::Undefined("q".into()));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_blif(".model s\n.inputs a\n.outputs y\n.names a y\n2 1\n").unwrap_err();
        assert!(matches!(err, NetlistError::Syntax { line: 5, .. }));
        let err = parse_blif(".model s\n.inputs a\n.frobnicate\n").unwrap_err();
        assert!(matches!(err, NetlistError::Syntax { line: 3, .. }));
        let err = parse_blif(".model s\n.inputs a b\n.outputs y\n.names a b y\n1 1\n").unwrap_err();
        assert!(matches!(err, NetlistError::Syntax { line: 5, .. }));
    }

    #[test]
    fn latches_are_cut() {
        let text =
            ".model seq\n.inputs a\n.outputs y\n.latch d q re clk 0\n.names a q d\n11 1\n.names q y\n1 1\n.end\n";
        let n = parse_blif(text).unwrap();
        assert_eq!(n.combinational_inputs(), ["a", "q"]);
        assert_eq!(n.combinational_outputs(), ["y", "d"]);
        assert_eq!(n.simulate(&[true, true]), [true, true]);
        assert_eq!(n.latches[0].extra, ["re", "clk", "0"]);
    }

    #[test]
    fn round_trip() {
        let n = parse_blif(EXAMPLE).unwrap();
        assert_eq!(parse_blif(&n.to_blif()).unwrap(), n);
    }
}
