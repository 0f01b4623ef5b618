use std::f64::consts::FRAC_PI_2;

use crate::circuit::{on_qubit, rotation, su4_normalize, Axis, Circuit, Gate};
use crate::invariants::{gamma_unchecked, invariant_data};
use crate::numerics::{principal_arg, Mat4, C64};
use crate::{tol, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoreParams {
    /// Core `C10 · (Rz(δ)⊗Ry(β)) · C01 · (I⊗Ry(α)) · C10` in application order.
    Cyz { alpha: f64, beta: f64, delta: f64 },
    /// Prefix `Rz(−ψ)` on qubit 1 and `C01`, then the core
    /// `C01 · (Rx(θ)⊗Rz(φ)) · C01`, in application order.
    Cxz { psi: f64, theta: f64, phi: f64, degenerate: bool },
}

impl CoreParams {
    /// Angle tuple used to tell enumerated circuits apart.
    pub fn angles(&self) -> Vec<f64> {
        match *self {
            CoreParams::Cyz { alpha, beta, delta } => vec![alpha, beta, delta],
            CoreParams::Cxz { psi, theta, phi, .. } => vec![psi, theta, phi],
        }
    }
}

/// Which three eigenvalues of `γ(u)` play the roles `x, y, z`, and which
/// of the two `±π/2` shifts relates the normalized core to the raw one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoleAssignment {
    pub roles: [usize; 3],
    pub upper_branch: bool,
}

/// All 48 assignments in a fixed order.
pub fn role_assignments() -> Vec<RoleAssignment> {
    let mut out = Vec::with_capacity(48);
    for upper_branch in [true, false] {
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    if x != y && y != z && x != z {
                        out.push(RoleAssignment {
                            roles: [x, y, z],
                            upper_branch,
                        });
                    }
                }
            }
        }
    }
    out
}

/// The raw (unnormalized, det −1) CYZ core.
pub fn cyz_core(alpha: f64, beta: f64, delta: f64) -> Circuit {
    Circuit::from_iter([
        Gate::cnot(1, 0),
        Gate::rz(0, delta),
        Gate::ry(1, beta),
        Gate::cnot(0, 1),
        Gate::ry(1, alpha),
        Gate::cnot(1, 0),
    ])
}

/// `C01 · (Rx(θ)⊗Rz(φ)) · C01`.
pub fn cxz_core(theta: f64, phi: f64) -> Circuit {
    Circuit::from_iter([Gate::cnot(0, 1), Gate::rx(0, theta), Gate::rz(1, phi), Gate::cnot(0, 1)])
}

/// Core angles whose circuit shares `χ[γ]` with `u` (up to the sign of `γ`).
///
/// With eigen-angles `x, y, z` of `γ(u)` shifted by `∓π/2` (the raw core
/// has determinant −1), `α = (x+y)/2`, `β = (x+z)/2`, `δ = (y+z)/2`.
pub fn core_params_cyz(u: &Mat4, order: RoleAssignment) -> Result<CoreParams> {
    let spectrum = invariant_data(u)?.spectrum;
    let shift = if order.upper_branch { FRAC_PI_2 } else { -FRAC_PI_2 };
    let [x, y, z] = order.roles.map(|k| principal_arg(spectrum[k]) + shift);
    Ok(CoreParams::Cyz {
        alpha: (x + y) / 2.0,
        beta: (x + z) / 2.0,
        delta: (y + z) / 2.0,
    })
}

/// Which of the equivalent `(ψ, θ, φ)` choices to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CxzVariant {
    /// Use `ψ + π` instead of `ψ`.
    pub shifted_psi: bool,
    /// Read the spectrum of `−γ` instead of `γ`.
    pub negated: bool,
    pub neg_r: bool,
    pub neg_s: bool,
    pub swap_rs: bool,
}

/// All 32 variants; the first one is the default choice.
pub fn cxz_variants() -> Vec<CxzVariant> {
    (0..32u8)
        .map(|bits| CxzVariant {
            shifted_psi: bits & 16 != 0,
            negated: bits & 8 != 0,
            neg_r: bits & 4 != 0,
            neg_s: bits & 2 != 0,
            swap_rs: bits & 1 != 0,
        })
        .collect()
}

/// `U = su4(u'·C01)`, the operator whose invariants fix the CXZ parameters.
fn cxz_base(u_prime: &Mat4) -> Result<Mat4> {
    Ok(su4_normalize(&(*u_prime * Gate::cnot(0, 1).matrix()))?.0)
}

/// `Δ(ψ) = C01·(I⊗Rz(ψ))·C01`, diagonal.
fn delta(psi: f64) -> Mat4 {
    let c = Gate::cnot(0, 1).matrix();
    c * on_qubit(1, &rotation(Axis::Z, psi)) * c
}

/// `ψ` making `tr γ(U·Δ(ψ))` real, for `U = su4(u'·C01)`.
///
/// `γ(Δ) = Δ² = diag(e^{−iψ}, e^{iψ}, e^{iψ}, e^{−iψ})`, so the trace is
/// `(t₁+t₄)e^{−iψ} + (t₂+t₃)e^{iψ}` with `t` the diagonal of `γ(Uᵀ)ᵀ`, and
/// `tan ψ = Im(t₁+t₂+t₃+t₄) / Re(t₁−t₂−t₃+t₄)`. Returns `(ψ, degenerate)`;
/// when numerator and denominator both vanish, `ψ = 0`.
pub fn solve_psi(u_prime: &Mat4) -> Result<(f64, bool)> {
    let big_u = cxz_base(u_prime)?;
    let t = gamma_unchecked(&big_u.transpose()).transpose().diagonal();
    let a = t[0] + t[3];
    let b = t[1] + t[2];
    let num = (a + b).im;
    let den = (a - b).re;
    if num.hypot(den) <= tol::CLASSIFY {
        return Ok((0.0, true));
    }
    Ok((num.atan2(den), false))
}

/// `U·Δ(ψ)`; equal to `u'·(I⊗Rz(ψ))·C01` up to phase.
pub(crate) fn cxz_target(u_prime: &Mat4, psi: f64) -> Result<Mat4> {
    Ok(cxz_base(u_prime)? * delta(psi))
}

/// Default `(ψ, θ, φ)` for `u'`; see [`core_params_cxz_variant`].
pub fn core_params_cxz(u_prime: &Mat4) -> Result<CoreParams> {
    core_params_cxz_variant(u_prime, cxz_variants()[0])
}

/// Solves `ψ`, then reads the conjugate-pair spectrum `{e^{±ir}, e^{±is}}`
/// of `γ(u'·(I⊗Rz(ψ))·C01)` and sets `θ = (r+s)/2`, `φ = (r−s)/2`.
pub fn core_params_cxz_variant(u_prime: &Mat4, variant: CxzVariant) -> Result<CoreParams> {
    let (psi0, degenerate) = solve_psi(u_prime)?;
    let psi = if variant.shifted_psi { psi0 + std::f64::consts::PI } else { psi0 };
    let mut spectrum = invariant_data(&cxz_target(u_prime, psi)?)?.spectrum;
    if variant.negated {
        spectrum = spectrum.map(|z| -z);
    }
    let (mut r, mut s) = conjugate_pairs(&spectrum);
    if variant.neg_r {
        r = -r;
    }
    if variant.neg_s {
        s = -s;
    }
    if variant.swap_rs {
        std::mem::swap(&mut r, &mut s);
    }
    Ok(CoreParams::Cxz {
        psi,
        theta: (r + s) / 2.0,
        phi: (r - s) / 2.0,
        degenerate,
    })
}

/// Splits a (numerically) conjugate-symmetric spectrum into two pair angles.
fn conjugate_pairs(spectrum: &[C64; 4]) -> (f64, f64) {
    let args = spectrum.map(principal_arg);
    let top = (0..4).max_by(|&i, &j| args[i].total_cmp(&args[j])).expect("four");
    let r = args[top];
    let target = C64::from_polar(1.0, -r);
    let partner = (0..4)
        .filter(|&k| k != top)
        .min_by(|&i, &j| (spectrum[i] - target).norm().total_cmp(&(spectrum[j] - target).norm()))
        .expect("three left");
    let rest = (0..4).find(|&k| k != top && k != partner).expect("two left");
    (r, args[rest])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haar::{haar_su4, seeded_rng};
    use crate::invariants::{chi_distance, invariant_data};
    use crate::numerics::charpoly4;

    fn chi_of(m: &Mat4) -> crate::numerics::CharPoly4 {
        invariant_data(m).unwrap().chi
    }

    #[test]
    fn cyz_identity_gives_local_core() {
        // the zero-angle core is a SWAP, so the identity needs α = β = δ = π/2
        assert_eq!(cyz_core(0.0, 0.0, 0.0).matrix(), Gate::Swap.matrix());
        for o in role_assignments() {
            let CoreParams::Cyz { alpha, beta, delta } = core_params_cyz(&Mat4::identity(), o).unwrap() else {
                unreachable!()
            };
            let core = su4_normalize(&cyz_core(alpha, beta, delta).matrix()).unwrap().0;
            assert!(gamma_unchecked(&core).sign_distance(&Mat4::identity()) < 1e-12);
        }
    }

    #[test]
    fn cyz_core_matches_chi_for_every_order() {
        let mut rng = seeded_rng(5);
        let cnot = Gate::cnot(0, 1).matrix();
        for u in [cnot, haar_su4(&mut rng), haar_su4(&mut rng)] {
            let target = chi_of(&u);
            for o in role_assignments() {
                let CoreParams::Cyz { alpha, beta, delta } = core_params_cyz(&u, o).unwrap() else {
                    unreachable!()
                };
                let core = cyz_core(alpha, beta, delta).matrix();
                assert!(chi_distance(&chi_of(&core), &target) < 1e-9, "{o:?}");
            }
        }
    }

    #[test]
    fn psi_makes_trace_real() {
        let mut rng = seeded_rng(6);
        for _ in 0..100 {
            let u = haar_su4(&mut rng);
            let (psi, degenerate) = solve_psi(&u).unwrap();
            assert!(!degenerate);
            for p in [psi, psi + std::f64::consts::PI] {
                let t = invariant_data(&cxz_target(&u, p).unwrap()).unwrap().trace;
                assert!(t.im.abs() < 1e-9, "{}", t.im);
            }
        }
    }

    #[test]
    fn cxz_core_matches_chi() {
        let mut rng = seeded_rng(7);
        for _ in 0..30 {
            let u = haar_su4(&mut rng);
            for v in cxz_variants() {
                let CoreParams::Cxz { psi, theta, phi, .. } = core_params_cxz_variant(&u, v).unwrap() else {
                    unreachable!()
                };
                let core = cxz_core(theta, phi).matrix();
                let target = chi_of(&cxz_target(&u, psi).unwrap());
                assert!(chi_distance(&chi_of(&core), &target) < 1e-9);
            }
        }
    }

    #[test]
    fn cxz_local_target_gives_zero_angles() {
        // u' = C01 makes the matched operator local for ψ = 0
        let u = Gate::cnot(0, 1).matrix();
        let CoreParams::Cxz { theta, phi, .. } = core_params_cxz(&u).unwrap() else { unreachable!() };
        let g = gamma_unchecked(&su4_normalize(&cxz_core(theta, phi).matrix()).unwrap().0);
        assert!(charpoly4(&g).distance(&charpoly4(&Mat4::identity())) < 1e-9 || g.sign_distance(&Mat4::identity()) < 1e-9);
    }
}
