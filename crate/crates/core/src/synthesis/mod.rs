//! Universal three-CNOT synthesis for the CYZ, CXY, CXZ and basic-gate
//! libraries.

mod core_params;
mod matching;

use std::fmt;
use std::str::FromStr;

use crate::circuit::{euler_decompose, su4_normalize, Axis, Circuit, Gate};
use crate::numerics::{hadamard, kron, wrap_angle, Mat2, Mat4};
use crate::{tol, Error, Result};

pub use core_params::{
    core_params_cxz, core_params_cxz_variant, core_params_cyz, cxz_core, cxz_variants, cyz_core, role_assignments,
    solve_psi, CoreParams, CxzVariant, RoleAssignment,
};
pub use matching::{match_local_factors, LocalFactors};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateLibrary {
    Cyz,
    Cxy,
    Cxz,
    Basic,
}

impl GateLibrary {
    pub const ALL: [GateLibrary; 4] = [GateLibrary::Cyz, GateLibrary::Cxy, GateLibrary::Cxz, GateLibrary::Basic];

    pub fn name(self) -> &'static str {
        match self {
            GateLibrary::Cyz => "cyz",
            GateLibrary::Cxy => "cxy",
            GateLibrary::Cxz => "cxz",
            GateLibrary::Basic => "basic",
        }
    }

    /// Rotation axes allowed in the library; `None` for arbitrary one-qubit gates.
    pub fn axes(self) -> Option<[Axis; 2]> {
        match self {
            GateLibrary::Cyz => Some([Axis::Y, Axis::Z]),
            GateLibrary::Cxy => Some([Axis::X, Axis::Y]),
            GateLibrary::Cxz => Some([Axis::X, Axis::Z]),
            GateLibrary::Basic => None,
        }
    }

    /// Whether every gate of `c` belongs to the library.
    pub fn admits(self, c: &Circuit) -> bool {
        c.gates().iter().all(|g| match (g, self.axes()) {
            (Gate::Cnot { .. }, _) => true,
            (Gate::Rotation { axis, .. }, Some(axes)) => axes.contains(axis),
            (Gate::Rotation { .. } | Gate::Generic1Q { .. }, None) => true,
            _ => false,
        })
    }
}

impl fmt::Display for GateLibrary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateLibrary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cyz" => Ok(GateLibrary::Cyz),
            "cxy" => Ok(GateLibrary::Cxy),
            "cxz" => Ok(GateLibrary::Cxz),
            "basic" => Ok(GateLibrary::Basic),
            other => Err(Error::InvalidArgument(format!("unknown gate library `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthesisResult {
    pub library: GateLibrary,
    pub circuit: Circuit,
    /// `phase_distance(simulate(circuit), input)`.
    pub residual: f64,
    pub cnot_count: usize,
    pub one_param_count: usize,
    pub basic_count: usize,
    /// Index of the eigenvalue role assignment (or CXZ variant) that produced the circuit.
    pub eigen_order: usize,
    pub params: CoreParams,
}

/// Synthesizes `u` with the default verification tolerance `1e−8`.
pub fn synthesize(u: &Mat4, lib: GateLibrary) -> Result<SynthesisResult> {
    synthesize_with_tolerance(u, lib, tol::VERIFY)
}

/// Tries every eigenvalue assignment in order and returns the first circuit
/// whose residual is within `tolerance`.
pub fn synthesize_with_tolerance(u: &Mat4, lib: GateLibrary, tolerance: f64) -> Result<SynthesisResult> {
    su4_normalize(u)?;
    let mut best = f64::INFINITY;
    for idx in 0..candidate_count(lib) {
        match attempt(u, lib, idx) {
            Ok(r) if r.residual <= tolerance => return Ok(r),
            Ok(r) => best = best.min(r.residual),
            Err(_) => {}
        }
    }
    Err(Error::VerificationFailed {
        residual: best,
        tolerance,
    })
}

/// Up to `limit` verified circuits with pairwise distinct core parameters.
pub fn enumerate_circuits(u: &Mat4, lib: GateLibrary, limit: usize) -> Result<Vec<SynthesisResult>> {
    if limit == 0 {
        return Err(Error::InvalidArgument("limit must be at least 1".into()));
    }
    su4_normalize(u)?;
    let mut out: Vec<SynthesisResult> = Vec::new();
    let mut keys: Vec<Vec<i64>> = Vec::new();
    let mut best = f64::INFINITY;
    for idx in 0..candidate_count(lib) {
        let Ok(r) = attempt(u, lib, idx) else { continue };
        if r.residual > tol::VERIFY {
            best = best.min(r.residual);
            continue;
        }
        let key = param_key(&r.params);
        if keys.contains(&key) {
            continue;
        }
        keys.push(key);
        out.push(r);
        if out.len() == limit {
            break;
        }
    }
    if out.is_empty() {
        return Err(Error::VerificationFailed {
            residual: best,
            tolerance: tol::VERIFY,
        });
    }
    Ok(out)
}

fn param_key(p: &CoreParams) -> Vec<i64> {
    p.angles().iter().map(|a| (wrap_angle(*a) * 1e9).round() as i64).collect()
}

fn candidate_count(lib: GateLibrary) -> usize {
    match lib {
        GateLibrary::Cxz => cxz_variants().len(),
        _ => role_assignments().len(),
    }
}

fn attempt(u: &Mat4, lib: GateLibrary, idx: usize) -> Result<SynthesisResult> {
    let (circuit, params) = match lib {
        GateLibrary::Cyz => cyz_circuit(u, idx, false)?,
        GateLibrary::Basic => cyz_circuit(u, idx, true)?,
        GateLibrary::Cxy => {
            let h = kron(&hadamard(), &hadamard());
            let (c, p) = cyz_circuit(&(h * *u * h), idx, false)?;
            (hadamard_conjugate(&c), p)
        }
        GateLibrary::Cxz => cxz_circuit(u, idx)?,
    };
    let residual = circuit.matrix().phase_distance(u);
    Ok(SynthesisResult {
        library: lib,
        cnot_count: circuit.cnot_count(),
        one_param_count: circuit.one_param_count(),
        basic_count: circuit.basic_count(),
        residual,
        eigen_order: idx,
        params,
        circuit,
    })
}

fn euler_gates(m: &Mat2, qubit: u8, outer: Axis, inner: Axis) -> Result<Vec<Gate>> {
    Ok(euler_decompose(m, outer, inner)?.gates(qubit))
}

fn cyz_circuit(u: &Mat4, idx: usize, basic: bool) -> Result<(Circuit, CoreParams)> {
    let order = role_assignments()[idx];
    let params = core_params_cyz(u, order)?;
    let CoreParams::Cyz { alpha, beta, delta } = params else { unreachable!() };
    let core = cyz_core(alpha, beta, delta);
    let f = match_local_factors(u, &core.matrix())?;
    let local = |m: &Mat2, q: u8| -> Result<Vec<Gate>> {
        if basic {
            Ok(vec![Gate::generic(q, *m)?])
        } else {
            euler_gates(m, q, Axis::Z, Axis::Y)
        }
    };
    let mut gates = local(&f.c, 0)?;
    gates.extend(local(&f.d, 1)?);
    gates.extend_from_slice(core.gates());
    gates.extend(local(&f.a, 0)?);
    gates.extend(local(&f.b, 1)?);
    let circuit = Circuit::new(gates)?;
    let circuit = if basic { drop_identities(&circuit.merge_rotations()) } else { circuit.merge_rotations() };
    Ok((circuit, params))
}

fn cxz_circuit(u: &Mat4, idx: usize) -> Result<(Circuit, CoreParams)> {
    let params = core_params_cxz_variant(u, cxz_variants()[idx])?;
    let CoreParams::Cxz { psi, theta, phi, .. } = params else { unreachable!() };
    let core = cxz_core(theta, phi);
    let target = core_params::cxz_target(u, psi)?;
    let f = match_local_factors(&target, &core.matrix())?;
    let mut gates = vec![Gate::rz(1, -psi), Gate::cnot(0, 1)];
    gates.extend(euler_gates(&f.c, 0, Axis::X, Axis::Z)?);
    gates.extend(euler_gates(&f.d, 1, Axis::Z, Axis::X)?);
    gates.extend_from_slice(core.gates());
    gates.extend(euler_gates(&f.a, 0, Axis::X, Axis::Z)?);
    gates.extend(euler_gates(&f.b, 1, Axis::Z, Axis::X)?);
    Ok((Circuit::new(gates)?.merge_rotations(), params))
}

/// Drops generic one-qubit gates equal to the identity up to phase.
fn drop_identities(c: &Circuit) -> Circuit {
    c.gates()
        .iter()
        .copied()
        .filter(|g| match g {
            Gate::Generic1Q { matrix, .. } => matrix.phase_distance(&Mat2::identity()) > 1e-12,
            _ => true,
        })
        .collect()
}

/// The circuit for `(H⊗H)·U·(H⊗H)` given one for `U`: CNOTs flip, `Rz ↔ Rx`,
/// and `Ry(θ) ↦ Ry(−θ)`.
pub fn hadamard_conjugate(c: &Circuit) -> Circuit {
    c.gates()
        .iter()
        .map(|g| match *g {
            Gate::Rotation { axis, qubit, angle } => match axis {
                Axis::X => Gate::rz(qubit, angle),
                Axis::Z => Gate::rx(qubit, angle),
                Axis::Y => Gate::ry(qubit, -angle),
            },
            Gate::Cnot { control, target } => Gate::cnot(target, control),
            Gate::Generic1Q { qubit, matrix } => {
                let h = hadamard();
                Gate::Generic1Q {
                    qubit,
                    matrix: h * matrix * h,
                }
            }
            Gate::Swap => Gate::Swap,
        })
        .collect()
}
