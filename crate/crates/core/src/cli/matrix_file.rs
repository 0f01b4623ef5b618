//! Matrix input: a text file of four rows, or a named gate.
//!
//! A matrix file has four non-comment lines with eight floats each, the
//! real and imaginary parts of one row:
//!
//! ```text
//! # CNOT, control on qubit 0
//! 1 0  0 0  0 0  0 0
//! 0 0  1 0  0 0  0 0
//! 0 0  0 0  0 0  1 0
//! 0 0  0 0  1 0  0 0
//! ```

use std::fmt::Write as _;

use clap::ValueEnum;

use crate::circuit::Gate;
use crate::haar::{haar_unitary4, seeded_rng};
use crate::invariants::magic_basis;
use crate::numerics::{Mat4, C64, I};
use crate::{Error, Result};

/// Parses a matrix file and checks `‖M†M − I‖_F ≤ unitary_tol`.
pub fn parse_matrix(src: &str, unitary_tol: f64) -> Result<Mat4> {
    let mut rows: Vec<[C64; 4]> = Vec::with_capacity(4);
    let mut last_line = 0;
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if rows.len() == 4 {
            return Err(Error::parse(line, "more than four matrix rows"));
        }
        let values = body
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::parse(line, format!("`{t}` is not a finite number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != 8 {
            return Err(Error::parse(line, format!("expected 8 numbers, found {}", values.len())));
        }
        rows.push(std::array::from_fn(|k| C64::new(values[2 * k], values[2 * k + 1])));
    }
    if rows.len() != 4 {
        return Err(Error::parse(last_line.max(1), format!("expected 4 matrix rows, found {}", rows.len())));
    }
    let m = Mat4::from_fn(|i, j| rows[i][j]);
    let deviation = m.unitarity_defect();
    if deviation > unitary_tol {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(m)
}

/// Writes `m` in the matrix file format with round-trip float formatting.
pub fn format_matrix(m: &Mat4) -> String {
    let mut out = String::new();
    for row in &m.0 {
        let cells: Vec<String> = row.iter().map(|z| format!("{:?} {:?}", z.re, z.im)).collect();
        let _ = writeln!(out, "{}", cells.join("  "));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NamedGate {
    Identity,
    /// Control on qubit 0.
    Cnot,
    Cz,
    Swap,
    /// `F[j][k] = i^{jk}/2`.
    Qft2,
    /// The magic basis change `E`.
    Magic,
    /// Haar-random `U(4)` from the given seed.
    Random,
}

impl NamedGate {
    pub fn matrix(self, seed: u64) -> Mat4 {
        match self {
            NamedGate::Identity => Mat4::identity(),
            NamedGate::Cnot => Gate::cnot(0, 1).matrix(),
            NamedGate::Cz => Mat4::diag([C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]),
            NamedGate::Swap => Gate::Swap.matrix(),
            NamedGate::Qft2 => qft2(),
            NamedGate::Magic => magic_basis(),
            NamedGate::Random => haar_unitary4(&mut seeded_rng(seed)),
        }
    }
}

/// Two-qubit discrete Fourier transform.
pub fn qft2() -> Mat4 {
    Mat4::from_fn(|j, k| I.powu((j * k) as u32) * 0.5)
}
