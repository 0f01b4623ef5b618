use super::{jacobi_eigen, principal_arg, Mat4, RealMat, C64};
use crate::{tol, Error, Result};

/// Real orthogonal `q` (det +1) with `q·P·qᵀ = diag(eigenvalues)`.
///
/// Rows of `q` are the shared real eigenvectors; eigenvalues are sorted by
/// ascending principal argument, ties kept in index order.
#[derive(Clone, Copy, Debug)]
pub struct SymmetricDiagonalization {
    pub q: Mat4,
    pub eigenvalues: [C64; 4],
}

impl SymmetricDiagonalization {
    /// `‖q P qᵀ − diag(eigenvalues)‖_F`.
    pub fn residual(&self, p: &Mat4) -> f64 {
        (self.q * *p * self.q.transpose() - Mat4::diag(self.eigenvalues)).norm()
    }
}

// Above this off-diagonal residual the plain Re/Im split is retried on
// mixtures Re + t·Im, which break accidental degeneracies of Re(P).
const RETRY_RESIDUAL: f64 = 1e-12;
const MIXES: [f64; 4] = [0.577_215_664_901_532_9, -1.324_717_957_244_746, 2.236_067_977_499_79, -0.414_213_562_373_095];

/// Simultaneously diagonalizes `Re(P)` and `Im(P)` of a symmetric unitary `P`.
///
/// `Re(P)` is Jacobi-diagonalized first; inside every cluster of its
/// eigenvalues (relative width `cluster_tol`) the restriction of `Im(P)` is
/// diagonalized as well.
pub fn diagonalize_symmetric_unitary(p: &Mat4, cluster_tol: f64) -> Result<SymmetricDiagonalization> {
    let asymmetry = p.asymmetry();
    let deviation = p.unitarity_defect();
    if !p.is_finite() || asymmetry > tol::UNITARY || deviation > tol::UNITARY {
        return Err(Error::NotSymmetricUnitary {
            asymmetry,
            deviation,
        });
    }

    let re = p.re();
    let im = p.im();
    let mut best = split_diagonalize(&re, &im, 0.0, cluster_tol);
    let mut best_res = off_diagonal(&best, p);
    if best_res > RETRY_RESIDUAL {
        for mix in MIXES {
            let rows = split_diagonalize(&re, &im, mix, cluster_tol);
            let res = off_diagonal(&rows, p);
            if res < best_res {
                best = rows;
                best_res = res;
            }
            if best_res <= RETRY_RESIDUAL {
                break;
            }
        }
    }

    let q = Mat4::from_real(best);
    let d = q * *p * q.transpose();
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&a, &b| principal_arg(d.0[a][a]).total_cmp(&principal_arg(d.0[b][b])));
    let mut rows: RealMat<4> = std::array::from_fn(|k| best[order[k]]);
    if real_det(&rows) < 0.0 {
        for x in rows[0].iter_mut() {
            *x = -*x;
        }
    }
    let q = Mat4::from_real(rows);
    let eigenvalues = std::array::from_fn(|k| d.0[order[k]][order[k]]);
    Ok(SymmetricDiagonalization { q, eigenvalues })
}

/// Returns the eigenvector rows for `A = Re + mix·Im`, refined by `Im` on
/// the clusters of `A`.
fn split_diagonalize(re: &RealMat<4>, im: &RealMat<4>, mix: f64, cluster_tol: f64) -> RealMat<4> {
    let a: RealMat<4> = std::array::from_fn(|i| std::array::from_fn(|j| re[i][j] + mix * im[i][j]));
    let (eig, v) = jacobi_eigen(&a, 4);

    let mut idx = [0usize, 1, 2, 3];
    idx.sort_by(|&x, &y| eig[x].total_cmp(&eig[y]));
    // columns of `cols` are eigenvectors, in ascending eigenvalue order
    let mut cols: [[f64; 4]; 4] = std::array::from_fn(|k| std::array::from_fn(|r| v[r][idx[k]]));
    let sorted: [f64; 4] = std::array::from_fn(|k| eig[idx[k]]);

    let scale = sorted.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && sorted[end] - sorted[end - 1] <= cluster_tol * scale {
            end += 1;
        }
        if end - start > 1 {
            refine_cluster(&mut cols[start..end], im);
        }
        start = end;
    }
    cols
}

fn refine_cluster(cols: &mut [[f64; 4]], im: &RealMat<4>) {
    let k = cols.len();
    let mut b = [[0.0; 4]; 4];
    for i in 0..k {
        for j in 0..k {
            b[i][j] = (0..4)
                .map(|r| cols[i][r] * (0..4).map(|s| im[r][s] * cols[j][s]).sum::<f64>())
                .sum();
        }
    }
    // symmetrize against rounding
    for i in 0..k {
        for j in i + 1..k {
            let m = 0.5 * (b[i][j] + b[j][i]);
            b[i][j] = m;
            b[j][i] = m;
        }
    }
    let (_, w) = jacobi_eigen(&b, k);
    let old: Vec<[f64; 4]> = cols.to_vec();
    for (j, col) in cols.iter_mut().enumerate() {
        for r in 0..4 {
            col[r] = (0..k).map(|i| old[i][r] * w[i][j]).sum();
        }
    }
}

fn off_diagonal(rows: &RealMat<4>, p: &Mat4) -> f64 {
    let q = Mat4::from_real(*rows);
    let d = q * *p * q.transpose();
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += d.0[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn real_det(m: &RealMat<4>) -> f64 {
    Mat4::from_real(*m).det().re
}
