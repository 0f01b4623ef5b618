use std::f64::consts::PI;

use super::{rotation, Axis, Gate};
use crate::numerics::{principal_arg, wrap_angle, Mat2, C64};
use crate::{tol, Error, Result};

/// `u = e^{i·phase} R_outer(θ) R_inner(φ) R_outer(ψ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerAngles {
    pub outer: Axis,
    pub inner: Axis,
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
    pub phase: f64,
}

impl EulerAngles {
    pub fn matrix(&self) -> Mat2 {
        (rotation(self.outer, self.theta) * rotation(self.inner, self.phi) * rotation(self.outer, self.psi))
            .scale(C64::from_polar(1.0, self.phase))
    }

    /// Gates in application order, skipping negligible angles.
    pub fn gates(&self, qubit: u8) -> Vec<Gate> {
        [(self.outer, self.psi), (self.inner, self.phi), (self.outer, self.theta)]
            .into_iter()
            .filter(|(_, a)| a.abs() > tol::ANGLE)
            .map(|(axis, a)| Gate::rot(axis, qubit, a))
            .collect()
    }

    /// All three rotations, including zero angles.
    pub fn gates_full(&self, qubit: u8) -> [Gate; 3] {
        [
            Gate::rot(self.outer, qubit, self.psi),
            Gate::rot(self.inner, qubit, self.phi),
            Gate::rot(self.outer, qubit, self.theta),
        ]
    }
}

/// Frame `W` with `W σ_z W† = σ_outer` and `W σ_y W† = s·σ_inner`.
fn frame(outer: Axis, inner: Axis) -> Result<(Mat2, f64)> {
    use Axis::*;
    let h = PI / 2.0;
    let w = match (outer, inner) {
        (Z, Y) => (Mat2::identity(), 1.0),
        (Z, X) => (rotation(Z, h), -1.0),
        (X, Y) => (rotation(Y, h), 1.0),
        (X, Z) => (rotation(X, h) * rotation(Y, h), 1.0),
        (Y, Z) => (rotation(X, -h), -1.0),
        (Y, X) => (rotation(Y, h) * rotation(X, -h), -1.0),
        _ => return Err(Error::InvalidArgument(format!("Euler axes {outer:?}/{inner:?} must differ"))),
    };
    Ok(w)
}

/// Euler decomposition of a 2×2 unitary about `outer`/`inner` axes.
///
/// `θ` and `ψ` land in `(−π, π]`, `φ` in `[−π, π]`; the global phase
/// absorbs the sign flips caused by wrapping.
pub fn euler_decompose(u: &Mat2, outer: Axis, inner: Axis) -> Result<EulerAngles> {
    let deviation = u.unitarity_defect();
    if !u.is_finite() || deviation > tol::UNITARY {
        return Err(Error::NotUnitary { deviation });
    }
    let (w, s) = frame(outer, inner)?;
    let v = w.adjoint() * *u * w;
    let v = v.scale(C64::from_polar(1.0, -principal_arg(v.det()) / 2.0));
    let (a, b) = (v.0[0][0], v.0[1][0]);
    let phi = 2.0 * b.norm().atan2(a.norm());
    let (theta, psi) = if b.norm() < 1e-14 {
        (-2.0 * a.arg(), 0.0)
    } else if a.norm() < 1e-14 {
        (2.0 * b.arg(), 0.0)
    } else {
        let sum = -2.0 * a.arg();
        let diff = 2.0 * b.arg();
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };
    let mut e = EulerAngles {
        outer,
        inner,
        theta: wrap_angle(theta),
        phi: wrap_angle(s * phi),
        psi: wrap_angle(psi),
        phase: 0.0,
    };
    let r = e.matrix();
    let overlap: C64 = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| r.0[i][j].conj() * u.0[i][j]).sum();
    e.phase = principal_arg(overlap);
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haar::{haar_unitary, seeded_rng};

    #[test]
    fn frames_map_axes() {
        for outer in Axis::ALL {
            for inner in Axis::ALL {
                if outer == inner {
                    assert!(frame(outer, inner).is_err());
                    continue;
                }
                let (w, s) = frame(outer, inner).unwrap();
                let z = w * Axis::Z.pauli() * w.adjoint();
                let y = w * Axis::Y.pauli() * w.adjoint();
                assert!((z - outer.pauli()).norm() < 1e-14);
                assert!((y - inner.pauli().scale(C64::new(s, 0.0))).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn reconstructs_random_unitaries() {
        let mut rng = seeded_rng(3);
        for _ in 0..300 {
            let u = haar_unitary::<2, _>(&mut rng);
            for outer in Axis::ALL {
                for inner in Axis::ALL {
                    if outer == inner {
                        continue;
                    }
                    let e = euler_decompose(&u, outer, inner).unwrap();
                    assert!((e.matrix() - u).norm() < 1e-12);
                    for a in [e.theta, e.psi, e.phi] {
                        assert!(a > -PI - 1e-15 && a <= PI);
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        for u in [Mat2::identity(), rotation(Axis::Z, 0.7), rotation(Axis::Y, PI), crate::numerics::sigma_x()] {
            let e = euler_decompose(&u, Axis::Z, Axis::Y).unwrap();
            assert!((e.matrix() - u).norm() < 1e-13);
        }
        let e = euler_decompose(&Mat2::identity(), Axis::Z, Axis::Y).unwrap();
        assert!(e.gates(0).is_empty());
    }
}
