use crate::circuit::{su4_normalize, tensor_factor};
use crate::invariants::magic_basis;
use crate::numerics::{diagonalize_symmetric_unitary, kron, Mat2, Mat4, RealMat, I};
use crate::{tol, Error, Result};

/// Spectra closer than this (max entrywise) are considered aligned.
const ALIGN_TOL: f64 = 1e-6;

/// One-qubit factors with `u ≃ (a⊗b)·v·(c⊗d)` up to global phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalFactors {
    pub a: Mat2,
    pub b: Mat2,
    pub c: Mat2,
    pub d: Mat2,
}

impl LocalFactors {
    pub fn left(&self) -> Mat4 {
        kron(&self.a, &self.b)
    }

    pub fn right(&self) -> Mat4 {
        kron(&self.c, &self.d)
    }

    /// `phase_distance((a⊗b)·v·(c⊗d), u)`.
    pub fn residual(&self, u: &Mat4, v: &Mat4) -> f64 {
        (self.left() * *v * self.right()).phase_distance(u)
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|k| p.contains(&k)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Finds local `a, b, c, d ∈ SU(2)` with `(a⊗b)·v·(c⊗d) = u` up to phase.
///
/// In the magic basis `ũ = E†uE`, the symmetric unitaries `ũũᵀ` and `ṽṽᵀ`
/// are diagonalized by real rotations `q_u`, `q_v`. Once their spectra are
/// aligned (rows of `q_v` permuted, and `v` replaced by `iv` if the spectra
/// only agree up to sign), `O = q_uᵀq_v` and `K = ṽ⁻¹Oᵀũ` are in `SO(4)`,
/// and `u = (E O E†)·v·(E K E†)` splits into the two local factors.
pub fn match_local_factors(u: &Mat4, v: &Mat4) -> Result<LocalFactors> {
    let (u, _) = su4_normalize(u)?;
    let (v, _) = su4_normalize(v)?;
    let e = magic_basis();
    let ut = e.adjoint() * u * e;
    let vt0 = e.adjoint() * v * e;

    let du = diagonalize_symmetric_unitary(&(ut * ut.transpose()), tol::CLUSTER)?;
    let dv = diagonalize_symmetric_unitary(&(vt0 * vt0.transpose()), tol::CLUSTER)?;

    let mut best: Option<(f64, [usize; 4], bool)> = None;
    for negate in [false, true] {
        let sign = if negate { -1.0 } else { 1.0 };
        for p in permutations4() {
            let mismatch = (0..4)
                .map(|k| (du.eigenvalues[k] - dv.eigenvalues[p[k]] * sign).norm())
                .fold(0.0, f64::max);
            if best.is_none_or(|(m, _, _)| mismatch < m) {
                best = Some((mismatch, p, negate));
            }
        }
    }
    let (mismatch, perm, negate) = best.expect("24 permutations");
    if mismatch > ALIGN_TOL {
        return Err(Error::CosetMismatch { mismatch });
    }

    // (iṽ)(iṽ)ᵀ = −ṽṽᵀ
    let vt = if negate { vt0.scale(I) } else { vt0 };
    let qv_re = dv.q.re();
    let mut rows: RealMat<4> = std::array::from_fn(|k| qv_re[perm[k]]);
    if Mat4::from_real(rows).det().re < 0.0 {
        for x in rows[0].iter_mut() {
            *x = -*x;
        }
    }
    let qv = Mat4::from_real(rows);
    let qu = du.q;

    let o = qu.transpose() * qv;
    let k = vt.adjoint() * qv.transpose() * qu * ut;
    let k = Mat4::from_real(k.re());

    let left = e * o * e.adjoint();
    let right = e * k * e.adjoint();
    let (a, b) = tensor_factor(&left)?;
    let (c, d) = tensor_factor(&right)?;
    Ok(LocalFactors { a, b, c, d })
}
