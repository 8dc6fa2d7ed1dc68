#![allow(dead_code)]

use cpbox::linalg::{hermitize, Basis, ComplexMatrix, DensityMatrix, HermitianMatrix};
use num_complex::Complex64;
use proptest::prelude::*;

pub fn entries(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
}

pub fn matrix_from(e: &[(f64, f64)]) -> ComplexMatrix {
    ComplexMatrix::from_row_major(e.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
        .unwrap()
}

pub fn hermitian(max_dim: usize) -> impl Strategy<Value = HermitianMatrix> {
    (1..=max_dim).prop_flat_map(|n| entries(n).prop_map(move |e| hermitize(&matrix_from(&e))))
}

/// `A A^dagger / tr`, a generic full-rank state.
pub fn density_from(e: &[(f64, f64)], basis: Basis) -> DensityMatrix {
    let a = matrix_from(e);
    let m = &a * &a.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(hermitize(&m.scale_real(1.0 / tr)).into_matrix(), basis).unwrap()
}

pub fn joint_state() -> impl Strategy<Value = DensityMatrix> {
    entries(4).prop_map(|e| density_from(&e, Basis::Joint4))
}

pub fn qubit_state() -> impl Strategy<Value = DensityMatrix> {
    entries(2).prop_map(|e| density_from(&e, Basis::QubitA))
}

/// Gram-Schmidt on the columns of a random matrix.
pub fn unitary_from(n: usize, e: &[(f64, f64)]) -> ComplexMatrix {
    let a = matrix_from(e);
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|i| a[(i, j)]).collect();
        // fall back to a basis vector for degenerate draws
        if v.iter().map(|z| z.norm_sqr()).sum::<f64>() < 1e-6 {
            v = (0..n)
                .map(|i| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect();
        }
        for _ in 0..2 {
            for c in &cols {
                let dot: Complex64 = c.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= dot * ci;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return ComplexMatrix::identity(n);
        }
        cols.push(v.iter().map(|z| z / norm).collect());
    }
    let mut u = ComplexMatrix::zeros(n);
    for (j, c) in cols.iter().enumerate() {
        for (i, z) in c.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

pub fn unitary(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    entries(n).prop_map(move |e| unitary_from(n, &e))
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
