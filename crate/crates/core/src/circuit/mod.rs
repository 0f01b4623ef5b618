//! Two-wire gate model, simulator and one-qubit factorizations.

mod euler;
mod text;

use std::f64::consts::PI;
use std::fmt;

use crate::numerics::{hadamard, kron, principal_arg, sigma_x, sigma_y, sigma_z, Mat2, Mat4, C64, I, ONE};
use crate::{tol, Error, Result};

pub use euler::{euler_decompose, EulerAngles};
pub use text::parse_circuit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn pauli(self) -> Mat2 {
        match self {
            Axis::X => sigma_x(),
            Axis::Y => sigma_y(),
            Axis::Z => sigma_z(),
        }
    }

    /// `self × other` as a signed axis; `None` for parallel axes.
    pub fn cross(self, other: Axis) -> Option<(Axis, f64)> {
        use Axis::*;
        match (self, other) {
            (X, Y) => Some((Z, 1.0)),
            (Y, Z) => Some((X, 1.0)),
            (Z, X) => Some((Y, 1.0)),
            (Y, X) => Some((Z, -1.0)),
            (Z, Y) => Some((X, -1.0)),
            (X, Z) => Some((Y, -1.0)),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

/// `R_n(θ) = exp(−i θ σ_n / 2)`.
pub fn rotation(axis: Axis, angle: f64) -> Mat2 {
    let (s, c) = (angle / 2.0).sin_cos();
    Mat2::identity().scale(C64::new(c, 0.0)) - axis.pauli().scale(C64::new(0.0, s))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Rotation { axis: Axis, qubit: u8, angle: f64 },
    Cnot { control: u8, target: u8 },
    /// Arbitrary one-qubit gate, stored special-unitary.
    Generic1Q { qubit: u8, matrix: Mat2 },
    Swap,
}

impl Gate {
    pub fn rot(axis: Axis, qubit: u8, angle: f64) -> Gate {
        Gate::Rotation { axis, qubit, angle }
    }

    pub fn rx(qubit: u8, angle: f64) -> Gate {
        Gate::rot(Axis::X, qubit, angle)
    }

    pub fn ry(qubit: u8, angle: f64) -> Gate {
        Gate::rot(Axis::Y, qubit, angle)
    }

    pub fn rz(qubit: u8, angle: f64) -> Gate {
        Gate::rot(Axis::Z, qubit, angle)
    }

    pub fn cnot(control: u8, target: u8) -> Gate {
        Gate::Cnot { control, target }
    }

    /// One-qubit gate from any unitary; the stored matrix is rescaled into `SU(2)`.
    pub fn generic(qubit: u8, matrix: Mat2) -> Result<Gate> {
        let deviation = matrix.unitarity_defect();
        if !matrix.is_finite() || deviation > tol::UNITARY {
            return Err(Error::NotUnitary { deviation });
        }
        let matrix = matrix.scale(C64::from_polar(1.0, -principal_arg(matrix.det()) / 2.0));
        let g = Gate::Generic1Q { qubit, matrix };
        g.validate()?;
        Ok(g)
    }

    /// `σ_n` up to phase, i.e. `R_n(π)`.
    pub fn pauli(axis: Axis, qubit: u8) -> Gate {
        Gate::rot(axis, qubit, PI)
    }

    /// `S_n = R_n(π/2)`.
    pub fn s(axis: Axis, qubit: u8) -> Gate {
        Gate::rot(axis, qubit, PI / 2.0)
    }

    /// `T_z = R_z(π/4)`.
    pub fn t(qubit: u8) -> Gate {
        Gate::rz(qubit, PI / 4.0)
    }

    pub fn h(qubit: u8) -> Gate {
        Gate::Generic1Q {
            qubit,
            matrix: hadamard().scale(-I),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Gate::Rotation { qubit, angle, .. } => {
                check_qubit(qubit)?;
                if !angle.is_finite() {
                    return Err(Error::InvalidGate(format!("non-finite rotation angle {angle}")));
                }
            }
            Gate::Cnot { control, target } => {
                check_qubit(control)?;
                check_qubit(target)?;
                if control == target {
                    return Err(Error::InvalidGate("CNOT control equals target".into()));
                }
            }
            Gate::Generic1Q { qubit, matrix } => {
                check_qubit(qubit)?;
                if !matrix.is_special_unitary(tol::UNITARY) {
                    return Err(Error::InvalidGate("one-qubit matrix is not special unitary".into()));
                }
            }
            Gate::Swap => {}
        }
        Ok(())
    }

    /// Bitmask of the wires the gate touches.
    pub fn wires(&self) -> u8 {
        match *self {
            Gate::Rotation { qubit, .. } | Gate::Generic1Q { qubit, .. } => 1 << qubit,
            Gate::Cnot { .. } | Gate::Swap => 0b11,
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cnot { .. } | Gate::Swap)
    }

    /// The wire and 2×2 matrix of a one-qubit gate.
    pub fn one_qubit(&self) -> Option<(u8, Mat2)> {
        match *self {
            Gate::Rotation { axis, qubit, angle } => Some((qubit, rotation(axis, angle))),
            Gate::Generic1Q { qubit, matrix } => Some((qubit, matrix)),
            _ => None,
        }
    }

    /// 4×4 operator; CNOT and SWAP are plain permutation matrices.
    pub fn matrix(&self) -> Mat4 {
        match *self {
            Gate::Cnot { control: 0, .. } => Mat4::permutation([0, 1, 3, 2]),
            Gate::Cnot { .. } => Mat4::permutation([0, 3, 2, 1]),
            Gate::Swap => Mat4::permutation([0, 2, 1, 3]),
            _ => {
                let (q, m) = self.one_qubit().expect("one-qubit gate");
                on_qubit(q, &m)
            }
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Rotation { axis, qubit, angle } => Gate::rot(axis, qubit, -angle),
            Gate::Generic1Q { qubit, matrix } => Gate::Generic1Q {
                qubit,
                matrix: matrix.adjoint(),
            },
            g => g,
        }
    }

    /// Same gate with wires 0 and 1 exchanged.
    pub fn mirrored(&self) -> Gate {
        match *self {
            Gate::Rotation { axis, qubit, angle } => Gate::rot(axis, 1 - qubit, angle),
            Gate::Cnot { control, target } => Gate::cnot(target, control),
            Gate::Generic1Q { qubit, matrix } => Gate::Generic1Q { qubit: 1 - qubit, matrix },
            Gate::Swap => Gate::Swap,
        }
    }
}

fn check_qubit(q: u8) -> Result<()> {
    if q > 1 {
        return Err(Error::InvalidGate(format!("qubit index {q} out of range")));
    }
    Ok(())
}

/// Embeds a one-qubit operator on wire `q` (0 = left tensor factor).
pub fn on_qubit(q: u8, m: &Mat2) -> Mat4 {
    if q == 0 {
        kron(m, &Mat2::identity())
    } else {
        kron(&Mat2::identity(), m)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Rotation { axis, qubit, angle } => write!(f, "R{}({angle})@q{qubit}", axis.letter()),
            Gate::Cnot { control, target } => write!(f, "CNOT{control}{target}"),
            Gate::Generic1Q { qubit, .. } => write!(f, "U@q{qubit}"),
            Gate::Swap => write!(f, "SWAP"),
        }
    }
}

/// Ordered gate list; index 0 acts first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate()?;
        }
        Ok(Circuit { gates })
    }

    pub fn empty() -> Self {
        Circuit::default()
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        g.validate()?;
        self.gates.push(g);
        Ok(())
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Operator of the circuit: later gates multiply on the left.
    pub fn matrix(&self) -> Mat4 {
        self.gates.iter().fold(Mat4::identity(), |acc, g| g.matrix() * acc)
    }

    pub fn then(&self, other: &Circuit) -> Circuit {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Circuit { gates }
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cnot { .. })).count()
    }

    pub fn one_param_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Rotation { .. })).count()
    }

    /// CNOTs plus one-qubit gates after fusing every run of one-qubit gates
    /// on a wire that is not interrupted by a two-qubit gate. Runs equal to
    /// the identity up to phase cost nothing; a SWAP costs three CNOTs.
    pub fn basic_count(&self) -> usize {
        let mut pending: [Option<Mat2>; 2] = [None, None];
        let mut count = 0;
        let flush = |slot: &mut Option<Mat2>, count: &mut usize| {
            if let Some(m) = slot.take() {
                if m.phase_distance(&Mat2::identity()) > 1e-10 {
                    *count += 1;
                }
            }
        };
        for g in &self.gates {
            match g.one_qubit() {
                Some((q, m)) => {
                    let slot = &mut pending[q as usize];
                    *slot = Some(m * slot.unwrap_or_else(Mat2::identity));
                }
                None => {
                    let [p0, p1] = &mut pending;
                    flush(p0, &mut count);
                    flush(p1, &mut count);
                    count += if matches!(g, Gate::Swap) { 3 } else { 1 };
                }
            }
        }
        let [p0, p1] = &mut pending;
        flush(p0, &mut count);
        flush(p1, &mut count);
        count
    }

    /// Merges same-axis rotations that are adjacent on their wire, wraps
    /// angles into `(−π, π]` and drops rotations with negligible angle. The
    /// result equals the input up to global phase.
    pub fn merge_rotations(&self) -> Circuit {
        let mut out: Vec<Gate> = Vec::with_capacity(self.gates.len());
        for &g in &self.gates {
            if let Gate::Rotation { axis, qubit, angle } = g {
                let last_on_wire = out.iter().rposition(|h| h.wires() & (1 << qubit) != 0);
                if let Some(k) = last_on_wire {
                    if let Gate::Rotation { axis: a2, angle: prev, .. } = out[k] {
                        if a2 == axis {
                            out[k] = Gate::rot(axis, qubit, prev + angle);
                            continue;
                        }
                    }
                }
            }
            out.push(g);
        }
        let gates = out
            .into_iter()
            .filter_map(|g| match g {
                Gate::Rotation { axis, qubit, angle } => {
                    let a = crate::numerics::wrap_angle(angle);
                    (a.abs() > tol::ANGLE).then_some(Gate::rot(axis, qubit, a))
                }
                other => Some(other),
            })
            .collect();
        Circuit { gates }
    }
}

impl FromIterator<Gate> for Circuit {
    fn from_iter<T: IntoIterator<Item = Gate>>(iter: T) -> Self {
        Circuit {
            gates: iter.into_iter().collect(),
        }
    }
}

pub fn gate_matrix(g: &Gate) -> Mat4 {
    g.matrix()
}

pub fn simulate(c: &Circuit) -> Mat4 {
    c.matrix()
}

/// Rescales a unitary into `SU(4)`: returns `(v, φ)` with `u = e^{iφ} v`,
/// `φ = arg(det u)/4` on the principal branch.
pub fn su4_normalize(u: &Mat4) -> Result<(Mat4, f64)> {
    let deviation = u.unitarity_defect();
    if !u.is_finite() || deviation > tol::UNITARY {
        return Err(Error::NotUnitary { deviation });
    }
    let phase = principal_arg(u.det()) / 4.0;
    Ok((u.scale(C64::from_polar(1.0, -phase)), phase))
}

const FACTOR_TOL: f64 = 1e-9;

/// Splits a local operator into `a ⊗ b` with `a, b ∈ SU(2)`.
///
/// The 2×2 block with the largest norm fixes `b` up to scale, the remaining
/// blocks give the entries of `a`, and the leftover phase is split so that
/// both determinants are 1. Fails with `NotLocal` when the product misses
/// `g` by more than `1e-9` up to phase.
pub fn tensor_factor(g: &Mat4) -> Result<(Mat2, Mat2)> {
    let deviation = g.unitarity_defect();
    if !g.is_finite() || deviation > tol::UNITARY {
        return Err(Error::NotUnitary { deviation });
    }
    let block = |i: usize, j: usize| Mat2::from_fn(|r, c| g.0[2 * i + r][2 * j + c]);
    let (bi, bj) = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .max_by(|&(a, b), &(c, d)| block(a, b).norm_sqr().total_cmp(&block(c, d).norm_sqr()))
        .expect("four blocks");
    let pivot = block(bi, bj);
    let pivot_norm = pivot.norm_sqr();
    let a = Mat2::from_fn(|i, j| {
        let blk = block(i, j);
        let inner: C64 = (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .map(|(r, c)| pivot.0[r][c].conj() * blk.0[r][c])
            .sum();
        inner / pivot_norm
    });
    let b = pivot;
    // a ⊗ b reproduces g; now move both factors into SU(2)
    let sb = b.det().sqrt();
    let sa = a.det().sqrt();
    if sb.norm() == 0.0 || sa.norm() == 0.0 {
        return Err(Error::NotLocal { residual: f64::INFINITY });
    }
    let b = b.scale(ONE / sb);
    let a = a.scale(ONE / sa);
    let residual = kron(&a, &b).phase_distance(g);
    if residual > FACTOR_TOL {
        return Err(Error::NotLocal { residual });
    }
    Ok((a, b))
}
