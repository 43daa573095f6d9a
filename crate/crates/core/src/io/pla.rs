//! Espresso PLA: `.i`, `.o`, `.p`, `.ilb`, `.ob`, `.type`, `.e`/`.end`.
//!
//! Each output becomes one sum-of-cubes gate over all inputs. Only `1` in an
//! output column puts the cube in that output's on-set; `0`, `~` and `-` leave
//! it out.

use super::netlist::{Gate, Lit, Netlist};
use super::NetlistError;

pub fn parse_pla(text: &str) -> Result<Netlist, NetlistError> {
    let syntax = |line: usize, message: String| NetlistError::Syntax { line, message };
    let mut num_inputs: Option<usize> = None;
    let mut num_outputs: Option<usize> = None;
    let mut input_names: Option<Vec<String>> = None;
    let mut output_names: Option<Vec<String>> = None;
    let mut cubes: Vec<(Vec<Lit>, Vec<bool>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let number = |tokens: &[&str]| -> Result<usize, NetlistError> {
            tokens
                .get(1)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| syntax(line, format!("{} needs a count", tokens[0])))
        };
        match tokens[0] {
            ".i" => num_inputs = Some(number(&tokens)?),
            ".o" => num_outputs = Some(number(&tokens)?),
            ".p" => {
                number(&tokens)?;
            }
            ".ilb" => input_names = Some(tokens[1..].iter().map(|s| s.to_string()).collect()),
            ".ob" => output_names = Some(tokens[1..].iter().map(|s| s.to_string()).collect()),
            ".type" => match tokens.get(1) {
                Some(&"f") | Some(&"fd") => {}
                Some(t) => return Err(syntax(line, format!("unsupported PLA type `{t}`"))),
                None => return Err(syntax(line, ".type needs a value".into())),
            },
            ".e" | ".end" => break,
            d if d.starts_with('.') => return Err(syntax(line, format!("unsupported directive `{d}`"))),
            _ => {
                let (Some(ni), Some(no)) = (num_inputs, num_outputs) else {
                    return Err(NetlistError::MissingHeader(".i and .o must precede cubes"));
                };
                let joined: String = tokens.concat();
                if joined.chars().count() != ni + no {
                    return Err(NetlistError::Arity {
                        line,
                        expected: ni + no,
                        found: joined.chars().count(),
                    });
                }
                let (ins, outs) = joined.split_at(ni);
                let row = ins
                    .chars()
                    .map(Lit::from_char)
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| syntax(line, format!("invalid input part `{ins}`")))?;
                let out = outs
                    .chars()
                    .map(|c| match c {
                        '1' => Ok(true),
                        '0' | '~' | '-' => Ok(false),
                        c => Err(syntax(line, format!("invalid output character `{c}`"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                cubes.push((row, out));
            }
        }
    }

    let ni = num_inputs.ok_or(NetlistError::MissingHeader(".i"))?;
    let no = num_outputs.ok_or(NetlistError::MissingHeader(".o"))?;
    let inputs = match input_names {
        Some(names) if names.len() == ni => names,
        Some(names) => {
            return Err(NetlistError::NameCount {
                directive: ".ilb",
                expected: ni,
                found: names.len(),
            })
        }
        None => (1..=ni).map(|k| format!("x{k}")).collect(),
    };
    let outputs = match output_names {
        Some(names) if names.len() == no => names,
        Some(names) => {
            return Err(NetlistError::NameCount {
                directive: ".ob",
                expected: no,
                found: names.len(),
            })
        }
        None => (1..=no).map(|k| format!("f{k}")).collect(),
    };
    let gates = outputs
        .iter()
        .enumerate()
        .map(|(j, name)| Gate {
            output: name.clone(),
            inputs: inputs.clone(),
            rows: cubes
                .iter()
                .filter(|(_, out)| out[j])
                .map(|(row, _)| row.clone())
                .collect(),
            onset: true,
        })
        .collect();
    Netlist {
        name: "pla".into(),
        inputs: inputs.clone(),
        outputs: outputs.clone(),
        gates,
        latches: Vec::new(),
    }
    .finalize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: &Netlist, out: usize) -> String {
        let k = n.inputs.len();
        (0..1usize << k)
            .map(|i| {
                let a: Vec<bool> = (0..k).map(|x| i >> (k - 1 - x) & 1 == 1).collect();
                if n.simulate(&a)[out] {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    #[test]
    fn example_cover() {
        let n = parse_pla(".i 3\n.o 1\n.p 2\n1-- 1\n-00 1\n.e\n").unwrap();
        assert_eq!(n.inputs, ["x1", "x2", "x3"]);
        assert_eq!(table(&n, 0), "10001111");
    }

    #[test]
    fn empty_cover_is_zero() {
        let n = parse_pla(".i 2\n.o 2\n.p 0\n.e\n").unwrap();
        assert_eq!(table(&n, 0), "0000");
        assert_eq!(table(&n, 1), "0000");
    }

    #[test]
    fn overlapping_cubes_or_together() {
        let n = parse_pla(".i 2\n.o 2\n.ilb a b\n.ob y z\n1- 10\n-1 11\n11 01\n.e\n").unwrap();
        assert_eq!(n.outputs, ["y", "z"]);
        assert_eq!(table(&n, 0), "0111");
        assert_eq!(table(&n, 1), "0101");
    }

    #[test]
    fn concatenated_rows() {
        let n = parse_pla(".i 2\n.o 1\n111\n.e\n").unwrap();
        assert_eq!(table(&n, 0), "0001");
    }

    #[test]
    fn arity_and_header_errors() {
        assert_eq!(
            parse_pla(".i 2\n.o 1\n1 1\n").unwrap_err(),
            NetlistError::Arity {
                line: 3,
                expected: 3,
                found: 2
            }
        );
        assert!(matches!(parse_pla("10 1\n"), Err(NetlistError::MissingHeader(_))));
        assert!(matches!(parse_pla(".i 2\n"), Err(NetlistError::MissingHeader(".o"))));
    }
}
