//! Fixed-size dense complex matrices (2×2 and 4×4) and the handful of
//! factorizations the rest of the crate needs.

#![allow(clippy::needless_range_loop)]

mod jacobi;
mod symmetric;

use std::f64::consts::PI;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;

pub use jacobi::{jacobi_eigen, RealMat};
pub use symmetric::{diagonalize_symmetric_unitary, SymmetricDiagonalization};

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Square complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<const N: usize>(pub [[C64; N]; N]);

pub type Mat2 = Matrix<2>;
pub type Mat4 = Matrix<4>;

impl<const N: usize> Default for Matrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Matrix<N> {
    pub fn zeros() -> Self {
        Matrix([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(|i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diag(d: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = d[i];
        }
        m
    }

    /// Permutation matrix sending basis state `j` to `perm[j]`.
    pub fn permutation(perm: [usize; N]) -> Self {
        let mut m = Self::zeros();
        for (j, &i) in perm.iter().enumerate() {
            m.0[i][j] = ONE;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn diagonal(&self) -> [C64; N] {
        std::array::from_fn(|i| self.0[i][i])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn re(&self) -> RealMat<N> {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].re))
    }

    pub fn im(&self) -> RealMat<N> {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].im))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> C64 {
        let mut a = self.0;
        let mut det = ONE;
        for col in 0..N {
            let pivot = (col..N)
                .max_by(|&r, &s| a[r][col].norm_sqr().total_cmp(&a[s][col].norm_sqr()))
                .unwrap_or(col);
            if a[pivot][col].norm_sqr() == 0.0 {
                return ZERO;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col];
            det *= p;
            for r in col + 1..N {
                let f = a[r][col] / p;
                if f != ZERO {
                    for c in col..N {
                        let v = a[col][c];
                        a[r][c] -= f * v;
                    }
                }
            }
        }
        det
    }

    /// `‖M†M − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Self::identity()).norm()
    }

    /// `‖M − Mᵀ‖_F`.
    pub fn asymmetry(&self) -> f64 {
        (*self - self.transpose()).norm()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_finite() && self.unitarity_defect() <= tol
    }

    pub fn is_special_unitary(&self, tol: f64) -> bool {
        self.is_unitary(tol) && (self.det() - ONE).norm() <= tol
    }

    /// `min_φ ‖e^{iφ} self − other‖_F`, attained at `φ = −arg tr(other† self)`.
    pub fn phase_distance(&self, other: &Self) -> f64 {
        let overlap: C64 = (0..N)
            .flat_map(|i| (0..N).map(move |j| (i, j)))
            .map(|(i, j)| other.0[i][j].conj() * self.0[i][j])
            .sum();
        let phase = if overlap.norm() > 0.0 {
            C64::from_polar(1.0, -overlap.arg())
        } else {
            ONE
        };
        (self.scale(phase) - *other).norm()
    }

    /// Distance to `other` allowing only a global sign.
    pub fn sign_distance(&self, other: &Self) -> f64 {
        (*self - *other).norm().min((*self + *other).norm())
    }
}

impl<const N: usize> Index<(usize, usize)> for Matrix<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Matrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Mul<C64> for Matrix<N> {
    type Output = Self;
    fn mul(self, rhs: C64) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl<const N: usize> Neg for Matrix<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.0[i][j])
    }
}

/// Kronecker product; `a` acts on qubit 0 (the left factor).
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|i, j| a.0[i / 2][j / 2] * b.0[i % 2][j % 2])
}

/// Monic characteristic polynomial `det(X·I − M) = Σ coeffs[k] X^k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharPoly4 {
    pub coeffs: [C64; 5],
}

impl CharPoly4 {
    /// Coefficient of `X^k`.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs[k]
    }

    /// Polynomial of `−M` given that of `M`.
    pub fn negated(&self) -> Self {
        let mut coeffs = self.coeffs;
        for (k, c) in coeffs.iter_mut().enumerate() {
            if k % 2 == 1 {
                *c = -*c;
            }
        }
        CharPoly4 { coeffs }
    }

    /// Euclidean distance between coefficient vectors.
    pub fn distance(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Expansion of `Π (X − λ_k)`.
    pub fn from_roots(roots: &[C64; 4]) -> Self {
        let mut c = [ZERO; 5];
        c[0] = ONE;
        for (deg, &r) in roots.iter().enumerate() {
            for k in (0..=deg + 1).rev() {
                let shifted = if k > 0 { c[k - 1] } else { ZERO };
                c[k] = shifted - r * c[k];
            }
        }
        CharPoly4 { coeffs: c }
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }
}

/// Faddeev–LeVerrier recurrence.
pub fn charpoly4(m: &Mat4) -> CharPoly4 {
    let mut coeffs = [ZERO; 5];
    coeffs[4] = ONE;
    let mut mk = Mat4::zeros();
    for k in 1..=4 {
        let mut next = *m * mk;
        for i in 0..4 {
            next.0[i][i] += coeffs[4 - k + 1];
        }
        mk = next;
        coeffs[4 - k] = -(*m * mk).trace() / k as f64;
    }
    CharPoly4 { coeffs }
}

/// Argument in `(−π, π]`.
pub fn principal_arg(z: C64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Reduces an angle to `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta % two_pi;
    if t <= -PI {
        t += two_pi;
    } else if t > PI {
        t -= two_pi;
    }
    t
}

pub fn sigma_x() -> Mat2 {
    Mat2::from_real([[0.0, 1.0], [1.0, 0.0]])
}

pub fn sigma_y() -> Mat2 {
    Matrix([[ZERO, -I], [I, ZERO]])
}

pub fn sigma_z() -> Mat2 {
    Mat2::from_real([[1.0, 0.0], [0.0, -1.0]])
}

pub fn hadamard() -> Mat2 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Mat2::from_real([[h, h], [h, -h]])
}
