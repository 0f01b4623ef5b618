//! Seeded Haar-random unitaries and random test circuits.
//!
//! A complex Ginibre matrix (i.i.d. `(N(0,1) + i N(0,1))/√2` entries) is
//! orthonormalized column by column; this is its QR factorization with a
//! positive real `R` diagonal, which makes `Q` Haar-distributed. The same
//! seed always yields bitwise-identical matrices.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

use crate::circuit::{Circuit, Gate};
use crate::numerics::{principal_arg, Matrix, Mat2, Mat4, C64};

/// The generator used by every seeded entry point of the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn haar_unitary<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> Matrix<N> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = Matrix::<N>::from_fn(|_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    });
    orthonormalize_columns(&z)
}

pub fn haar_unitary4<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    haar_unitary::<4, R>(rng)
}

/// Haar-random element of `SU(4)`.
pub fn haar_su4<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    let u = haar_unitary4(rng);
    u.scale(C64::from_polar(1.0, -principal_arg(u.det()) / 4.0))
}

/// Haar-random element of `SU(2)`.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let u = haar_unitary::<2, R>(rng);
    u.scale(C64::from_polar(1.0, -principal_arg(u.det()) / 2.0))
}

/// Random circuit of up to `max_len` gates over rotations, CNOTs, SWAP and
/// generic one-qubit gates. Half of the angles come from a small set with
/// multiples of `π/2`, so that cancellations and merges actually occur.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Circuit {
    let len = rng.random_range(0..=max_len);
    let angles = [0.3, -1.2, std::f64::consts::PI, std::f64::consts::FRAC_PI_2];
    (0..len)
        .map(|_| {
            let q = rng.random_range(0..2u8);
            let angle = if rng.random_bool(0.5) {
                angles[rng.random_range(0..angles.len())]
            } else {
                rng.random_range(-3.0..3.0)
            };
            match rng.random_range(0..7) {
                0 => Gate::rx(q, angle),
                1 => Gate::ry(q, angle),
                2 => Gate::rz(q, angle),
                3 | 4 => Gate::cnot(q, 1 - q),
                5 => Gate::Swap,
                _ => Gate::Generic1Q {
                    qubit: q,
                    matrix: haar_su2(rng),
                },
            }
        })
        .collect()
}

/// Modified Gram–Schmidt with one re-orthogonalization pass. For a full-rank
/// input this is `Q` of the QR factorization with `R_kk > 0`.
fn orthonormalize_columns<const N: usize>(z: &Matrix<N>) -> Matrix<N> {
    let mut cols: [[C64; N]; N] = std::array::from_fn(|j| std::array::from_fn(|i| z.0[i][j]));
    for j in 0..N {
        for _pass in 0..2 {
            for k in 0..j {
                let proj: C64 = (0..N).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                let basis = cols[k];
                for (c, v) in cols[j].iter_mut().zip(basis) {
                    *c -= proj * v;
                }
            }
        }
        let norm = cols[j].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in cols[j].iter_mut() {
            *c /= norm;
        }
    }
    Matrix::from_fn(|i, j| cols[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_unitary() {
        let mut rng = seeded_rng(1);
        for _ in 0..100 {
            assert!(haar_unitary4(&mut rng).is_unitary(1e-13));
            assert!(haar_su4(&mut rng).is_special_unitary(1e-12));
            assert!(haar_su2(&mut rng).is_special_unitary(1e-13));
        }
    }

    #[test]
    fn seed_determines_matrix_bitwise() {
        let a = haar_unitary4(&mut seeded_rng(42));
        let b = haar_unitary4(&mut seeded_rng(42));
        let c = haar_unitary4(&mut seeded_rng(43));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn r_diagonal_is_positive() {
        // Q†Z is upper triangular with a positive diagonal.
        let mut rng = seeded_rng(8);
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        let z = Mat4::from_fn(|_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re * scale, im * scale)
        });
        let q = orthonormalize_columns(&z);
        let r = q.adjoint() * z;
        for i in 0..4 {
            assert!(r.0[i][i].re > 0.0 && r.0[i][i].im.abs() < 1e-12);
            for j in 0..i {
                assert!(r.0[i][j].norm() < 1e-12);
            }
        }
    }
}
