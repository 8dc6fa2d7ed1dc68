//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot element with a
//! diagonal unitary, then applies the real symmetric Schur rotation that
//! annihilates it. Sweeps repeat until the off-diagonal Frobenius mass falls
//! below `f64::EPSILON` relative to the full norm.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with the matching unitary eigenvector
/// matrix (column `k` belongs to `values[k]`).
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `U diag(values) U†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&self.values).conjugate_by(&self.vectors)
    }

    /// Largest minus smallest eigenvalue.
    pub fn spread(&self) -> f64 {
        match (self.values.first(), self.values.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }

    /// `U† m U`, i.e. `m` expressed in the eigenbasis.
    pub fn to_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let u = &self.vectors;
        &(&u.adjoint() * m) * u
    }

    /// `U m U†`, the inverse of [`EigenSystem::to_eigenbasis`].
    pub fn from_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        m.conjugate_by(&self.vectors)
    }
}

fn off_diagonal_norm_sqr(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// Diagonalizes a Hermitian matrix.
///
/// Eigenvalues come back ascending. Each eigenvector is rephased so that its
/// largest-magnitude component (first one on ties) is real and positive.
pub fn eig_hermitian(h: &HermitianMatrix) -> Result<EigenSystem> {
    let n = h.dim();
    let mut a = h.as_matrix().clone();
    let mut v = ComplexMatrix::identity(n);

    let total = a.frobenius_norm_sqr();
    let threshold = (f64::EPSILON * f64::EPSILON) * total;

    let mut converged = n == 1 || total == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenNoConvergence { dim: n, sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm_sqr(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag = a.diagonal_real();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        let mut best = 0;
        let mut best_mag = -1.0;
        for row in 0..n {
            let mag = v[(row, src)].norm();
            if mag > best_mag * (1.0 + 1e-12) {
                best = row;
                best_mag = mag;
            }
        }
        let pivot = v[(best, src)];
        let phase = if best_mag > 0.0 {
            (pivot / best_mag).conj()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)] * phase;
        }
        vectors[(best, col)] = Complex64::new(vectors[(best, col)].norm(), 0.0);
    }

    Ok(EigenSystem { values, vectors })
}

/// One Jacobi rotation annihilating `a[(p, q)]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Negligible against both diagonal entries: zero it outright.
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }

    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // e^{-i phi} with a_pq = |a_pq| e^{i phi}
    let phase = (apq / mag).conj();

    // G = diag(1, phase) * [[c, s], [-s, c]]
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    let n = a.dim();
    // A <- A G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // A <- G† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitize;

    fn herm(rows: &[Vec<f64>]) -> HermitianMatrix {
        HermitianMatrix::try_new(ComplexMatrix::from_real_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn diagonal_sorted() {
        let h =
            HermitianMatrix::try_new(ComplexMatrix::from_diagonal(&[4.0, 1.0, 3.0, 2.0])).unwrap();
        let es = eig_hermitian(&h).unwrap();
        assert_eq!(es.values, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn pauli_x() {
        let es = eig_hermitian(&herm(&[vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap();
        assert!((es.values[0] + 1.0).abs() < 1e-15);
        assert!((es.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn phase_convention_positive_real_pivot() {
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.3, -0.7)],
            vec![Complex64::new(0.3, 0.7), Complex64::new(-0.5, 0.0)],
        ])
        .unwrap();
        let es = eig_hermitian(&hermitize(&m)).unwrap();
        for col in 0..2 {
            let (best, _) =
                (0..2)
                    .map(|r| (r, es.vectors[(r, col)].norm()))
                    .fold(
                        (0, -1.0),
                        |acc, x| if x.1 > acc.1 * (1.0 + 1e-12) { x } else { acc },
                    );
            let z = es.vectors[(best, col)];
            assert!(z.im == 0.0 && z.re > 0.0);
        }
    }

    #[test]
    fn one_by_one() {
        let es = eig_hermitian(&herm(&[vec![7.0]])).unwrap();
        assert_eq!(es.values, vec![7.0]);
        assert_eq!(es.vectors[(0, 0)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn zero_matrix() {
        let es = eig_hermitian(&herm(&[vec![0.0, 0.0], vec![0.0, 0.0]])).unwrap();
        assert_eq!(es.values, vec![0.0, 0.0]);
    }
}
