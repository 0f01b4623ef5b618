//! Local-equivalence invariants of two-qubit operators.
//!
//! `γ(u) = u (σ_y⊗σ_y) uᵀ (σ_y⊗σ_y)` is constant on left cosets `u·K` of the
//! local group `K = SU(2)⊗SU(2)`, and its characteristic polynomial is
//! constant on double cosets `K·u·K`. An `SU(4)` representative is only
//! fixed up to a fourth root of unity, which flips `γ` by a sign, so the
//! phase-quotient comparisons below accept `±γ`.

use crate::circuit::su4_normalize;
use crate::numerics::{charpoly4, diagonalize_symmetric_unitary, kron, sigma_y, CharPoly4, Mat4, C64, I, ONE, ZERO};
use crate::{tol, Error, Result};

/// `E = (1/√2)[[1, i, 0, 0], [0, 0, i, 1], [0, 0, i, −1], [1, −i, 0, 0]]`.
///
/// Conjugation by `E` maps `SU(2)⊗SU(2)` onto `SO(4)`; `E Eᵀ = −σ_y⊗σ_y`.
pub fn magic_basis() -> Mat4 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let rows = [[ONE, I, ZERO, ZERO], [ZERO, ZERO, I, ONE], [ZERO, ZERO, I, -ONE], [ONE, -I, ZERO, ZERO]];
    Mat4::from_fn(|i, j| rows[i][j] * h)
}

/// `σ_y ⊗ σ_y`.
pub fn sigma_yy() -> Mat4 {
    kron(&sigma_y(), &sigma_y())
}

fn require_unitary(u: &Mat4) -> Result<()> {
    let deviation = u.unitarity_defect();
    if !u.is_finite() || deviation > tol::UNITARY {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

/// `γ(u)` without any phase normalization.
pub fn gamma(u: &Mat4) -> Result<Mat4> {
    require_unitary(u)?;
    Ok(gamma_unchecked(u))
}

pub(crate) fn gamma_unchecked(u: &Mat4) -> Mat4 {
    let s = sigma_yy();
    *u * s * u.transpose() * s
}

#[derive(Clone, Copy, Debug)]
pub struct InvariantData {
    pub gamma: Mat4,
    pub chi: CharPoly4,
    pub trace: C64,
    /// Eigenvalues of `γ`, ascending by principal argument.
    pub spectrum: [C64; 4],
}

/// Invariants of the `SU(4)` representative `u·e^{−i arg(det u)/4}`.
pub fn invariant_data(u: &Mat4) -> Result<InvariantData> {
    let (v, _) = su4_normalize(u)?;
    let gamma = gamma_unchecked(&v);
    let e = magic_basis();
    let vt = e.adjoint() * v * e;
    let sd = diagonalize_symmetric_unitary(&(vt * vt.transpose()), tol::CLUSTER)?;
    Ok(InvariantData {
        gamma,
        chi: charpoly4(&gamma),
        trace: gamma.trace(),
        spectrum: sd.eigenvalues,
    })
}

fn normalized_gamma(u: &Mat4) -> Result<Mat4> {
    let (v, _) = su4_normalize(u)?;
    Ok(gamma_unchecked(&v))
}

/// `uK = vK` for the physical operators, i.e. `γ(u) = ±γ(v)` after
/// normalizing both into `SU(4)`.
pub fn same_left_coset(u: &Mat4, v: &Mat4) -> Result<bool> {
    let (gu, gv) = (normalized_gamma(u)?, normalized_gamma(v)?);
    Ok(gu.sign_distance(&gv) <= tol::CLASSIFY)
}

/// Exact comparison `γ(u) = γ(v)` without the sign quotient; meaningful for
/// fixed `SU(4)` representatives.
pub fn same_left_coset_strict(u: &Mat4, v: &Mat4) -> Result<bool> {
    let (gu, gv) = (gamma(u)?, gamma(v)?);
    Ok((gu - gv).norm() <= tol::CLASSIFY)
}

/// `KuK = KvK`, via `χ[γ(u)] = χ[±γ(v)]`.
pub fn same_double_coset(u: &Mat4, v: &Mat4) -> Result<bool> {
    let cu = charpoly4(&normalized_gamma(u)?);
    let cv = charpoly4(&normalized_gamma(v)?);
    Ok(chi_distance(&cu, &cv) <= tol::CLASSIFY)
}

/// Distance between characteristic polynomials modulo `γ ↦ −γ`.
pub fn chi_distance(a: &CharPoly4, b: &CharPoly4) -> f64 {
    a.distance(b).min(a.distance(&b.negated()))
}

/// `χ[γ(CNOT)] = (X² + 1)²`.
pub fn cnot_chi() -> CharPoly4 {
    CharPoly4 {
        coeffs: [ONE, ZERO, C64::new(2.0, 0.0), ZERO, ONE],
    }
}

/// Minimal number of CNOTs needed for `u` (0 to 3).
///
/// 0 when `γ = ±I`; 1 when `χ[γ]` is that of the CNOT; 2 when `tr γ` is
/// real; 3 otherwise.
pub fn cnot_cost(u: &Mat4) -> Result<u8> {
    let g = normalized_gamma(u)?;
    if g.sign_distance(&Mat4::identity()) <= tol::CLASSIFY {
        return Ok(0);
    }
    if chi_distance(&charpoly4(&g), &cnot_chi()) <= tol::CLASSIFY {
        return Ok(1);
    }
    if g.trace().im.abs() <= tol::CLASSIFY {
        return Ok(2);
    }
    Ok(3)
}

/// `⌈(4ⁿ − 3n − 1)/4⌉`, the number of CNOTs below which some `n`-qubit
/// operator cannot be built.
pub fn cnot_lower_bound(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("qubit count must be at least 1".into()));
    }
    let pow = 4u64.checked_pow(n).ok_or(Error::Overflow(n))?;
    let sub = 3u64 * n as u64 + 1;
    // 4ⁿ ≥ 3n + 1 for every n ≥ 1
    let num = pow - sub;
    Ok(num.div_ceil(4))
}
