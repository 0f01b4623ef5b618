/// Real square matrix, row-major.
pub type RealMat<const N: usize> = [[f64; N]; N];

const MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi eigen-decomposition of the leading `n × n` block of a real
/// symmetric matrix.
///
/// Returns `(λ, V)` with `A = V diag(λ) Vᵀ` on that block; the columns of `V`
/// are the eigenvectors. Entries outside the block are left as identity.
pub fn jacobi_eigen<const N: usize>(a: &RealMat<N>, n: usize) -> ([f64; N], RealMat<N>) {
    assert!(n <= N);
    let mut a = *a;
    let mut v = [[0.0; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let total: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a[i][j] * a[i][j])
        .sum();
    let threshold = f64::EPSILON * f64::EPSILON * total.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, n, p, q, c, s);
            }
        }
    }

    let mut eig = [0.0; N];
    for (i, e) in eig.iter_mut().enumerate().take(n) {
        *e = a[i][i];
    }
    (eig, v)
}

fn rotate<const N: usize>(
    a: &mut RealMat<N>,
    v: &mut RealMat<N>,
    n: usize,
    p: usize,
    q: usize,
    c: f64,
    s: f64,
) {
    // A ← Jᵀ A J with J = [[c, s], [−s, c]] in the (p, q) plane.
    for row in a.iter_mut().take(n) {
        let (akp, akq) = (row[p], row[q]);
        row[p] = c * akp - s * akq;
        row[q] = s * akp + c * akq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[p][k], a[q][k]);
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for row in v.iter_mut().take(n) {
        let (vkp, vkq) = (row[p], row[q]);
        row[p] = c * vkp - s * vkq;
        row[q] = s * vkp + c * vkq;
    }
}
