//! Line-oriented circuit text format and OpenQASM 2.0 export.
//!
//! One gate per line, keywords case-insensitive, `#` starts a comment:
//!
//! ```text
//! RZ 0 0.25        # rotation: axis, qubit, angle in radians
//! CNOT 1 0         # control, target
//! SWAP
//! U3 1 re00 im00 re01 im01 re10 im10 re11 im11
//! ```
//!
//! Angles may also be written as multiples of `pi`, e.g. `-pi/2` or `3*pi/4`.

use std::fmt::{self, Write as _};

use super::{euler_decompose, Axis, Circuit, Gate};
use crate::numerics::{Mat2, C64};
use crate::{Error, Result};

pub fn parse_circuit(src: &str) -> Result<Circuit> {
    let mut gates = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let op = tokens.next().expect("non-empty line").to_ascii_uppercase();
        let args: Vec<&str> = tokens.collect();
        let gate = parse_gate(&op, &args, line)?;
        gate.validate().map_err(|e| Error::parse(line, e.to_string()))?;
        gates.push(gate);
    }
    Ok(Circuit { gates })
}

fn parse_gate(op: &str, args: &[&str], line: usize) -> Result<Gate> {
    let arity = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::parse(line, format!("{op} takes {n} argument(s), found {}", args.len())))
        }
    };
    match op {
        "RX" | "RY" | "RZ" => {
            arity(2)?;
            let axis = match op {
                "RX" => Axis::X,
                "RY" => Axis::Y,
                _ => Axis::Z,
            };
            Ok(Gate::rot(axis, parse_qubit(args[0], line)?, parse_angle(args[1], line)?))
        }
        "CNOT" | "CX" => {
            arity(2)?;
            Ok(Gate::cnot(parse_qubit(args[0], line)?, parse_qubit(args[1], line)?))
        }
        "SWAP" => {
            arity(0)?;
            Ok(Gate::Swap)
        }
        "U3" | "U" => {
            arity(9)?;
            let q = parse_qubit(args[0], line)?;
            let mut x = [0.0; 8];
            for (slot, tok) in x.iter_mut().zip(&args[1..]) {
                *slot = parse_float(tok, line)?;
            }
            let m = Mat2::from_fn(|i, j| C64::new(x[4 * i + 2 * j], x[4 * i + 2 * j + 1]));
            Gate::generic(q, m).map_err(|e| Error::parse(line, e.to_string()))
        }
        _ => Err(Error::parse(line, format!("unknown gate `{op}`"))),
    }
}

fn parse_qubit(tok: &str, line: usize) -> Result<u8> {
    match tok {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(Error::parse(line, format!("qubit must be 0 or 1, found `{tok}`"))),
    }
}

fn parse_float(tok: &str, line: usize) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid number `{tok}`")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("non-finite number `{tok}`")));
    }
    Ok(v)
}

/// Plain float, or `[-][k*]pi[/d]`.
fn parse_angle(tok: &str, line: usize) -> Result<f64> {
    let lower = tok.to_ascii_lowercase();
    if !lower.contains("pi") {
        return parse_float(tok, line);
    }
    let bad = || Error::parse(line, format!("invalid angle `{tok}`"));
    let (neg, rest) = match lower.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, lower.as_str()),
    };
    let (factor, rest) = match rest.split_once('*') {
        Some((k, r)) => (k.parse::<f64>().map_err(|_| bad())?, r),
        None => (1.0, rest),
    };
    let rest = rest.strip_prefix("pi").ok_or_else(bad)?;
    let divisor = match rest.strip_prefix('/') {
        Some(d) => d.parse::<f64>().map_err(|_| bad())?,
        None if rest.is_empty() => 1.0,
        None => return Err(bad()),
    };
    let v = factor * std::f64::consts::PI / divisor;
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(if neg { -v } else { v })
}

impl fmt::Display for Circuit {
    /// Writes the text format; floats use the shortest round-trip form so
    /// parsing the output reproduces the circuit exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            match *g {
                Gate::Rotation { axis, qubit, angle } => writeln!(f, "R{} {qubit} {angle:?}", axis.letter())?,
                Gate::Cnot { control, target } => writeln!(f, "CNOT {control} {target}")?,
                Gate::Swap => writeln!(f, "SWAP")?,
                Gate::Generic1Q { qubit, matrix } => {
                    write!(f, "U3 {qubit}")?;
                    for row in matrix.0 {
                        for z in row {
                            write!(f, " {:?} {:?}", z.re, z.im)?;
                        }
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}

impl Circuit {
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// OpenQASM 2.0 program on `qreg q[2]`; generic gates become `u3`.
    pub fn to_qasm(&self) -> String {
        let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n");
        for g in &self.gates {
            match *g {
                Gate::Rotation { axis, qubit, angle } => {
                    let name = axis.letter().to_ascii_lowercase();
                    let _ = writeln!(out, "r{name}({angle:?}) q[{qubit}];");
                }
                Gate::Cnot { control, target } => {
                    let _ = writeln!(out, "cx q[{control}],q[{target}];");
                }
                Gate::Swap => out.push_str("swap q[0],q[1];\n"),
                Gate::Generic1Q { qubit, matrix } => {
                    // u3(θ, φ, λ) = Rz(φ) Ry(θ) Rz(λ) up to phase
                    let e = euler_decompose(&matrix, Axis::Z, Axis::Y).expect("stored gate is unitary");
                    let _ = writeln!(out, "u3({:?},{:?},{:?}) q[{qubit}];", e.phi, e.theta, e.psi);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haar::{haar_su2, seeded_rng};
    use std::f64::consts::PI;

    #[test]
    fn parses_all_gate_kinds() {
        let src = "# header\n\nrz 0 0.25\nCNOT 1 0  # trailing\nSwap\nRY 1 -pi/2\nRX 0 3*pi/4\nU3 1 1 0 0 0 0 0 1 0\n";
        let c = parse_circuit(src).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.gates()[0], Gate::rz(0, 0.25));
        assert_eq!(c.gates()[1], Gate::cnot(1, 0));
        assert_eq!(c.gates()[2], Gate::Swap);
        assert_eq!(c.gates()[3], Gate::ry(1, -PI / 2.0));
        assert_eq!(c.gates()[4], Gate::rx(0, 3.0 * PI / 4.0));
        assert!(matches!(c.gates()[5], Gate::Generic1Q { qubit: 1, .. }));
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_circuit("RZ 0 1\n\nCNOT 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        for bad in ["FOO 0", "RZ 2 0.1", "RZ 0", "RZ 0 nan", "RZ 0 inf", "U3 0 1 0 0 0 0 0 0 0", "SWAP 1", "RZ 0 pi/x"] {
            assert!(matches!(parse_circuit(bad), Err(Error::Parse { line: 1, .. })), "{bad}");
        }
    }

    #[test]
    fn text_round_trip_is_exact() {
        let mut rng = seeded_rng(5);
        let c = Circuit::new(vec![
            Gate::rz(0, 0.1 + 0.2),
            Gate::cnot(0, 1),
            Gate::generic(1, haar_su2(&mut rng)).unwrap(),
            Gate::Swap,
            Gate::rx(1, -1e-300),
        ])
        .unwrap();
        let back = parse_circuit(&c.to_text()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn qasm_shape() {
        let c = Circuit::new(vec![Gate::rx(0, 0.5), Gate::cnot(1, 0), Gate::Swap, Gate::h(1)]).unwrap();
        let q = c.to_qasm();
        assert!(q.starts_with("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n"));
        assert!(q.contains("rx(0.5) q[0];"));
        assert!(q.contains("cx q[1],q[0];"));
        assert!(q.contains("swap q[0],q[1];"));
        assert!(q.contains("u3("));
    }
}
