//! Joint eigenvalues of an evolved state from the block closed form next to
//! the general eigensolver.
//!
//!     cargo run --example closed_form_entropy

use cpbox::dynamics::{make_initial_state, InitialStateSpec, Propagator};
use cpbox::entropy::closed_form_joint_eigenvalues;
use cpbox::linalg::DensityMatrix;
use cpbox::model::{build_four_level_hamiltonian, QubitEnergies, B_EG, B_GE};
use num_complex::Complex64;

fn main() -> cpbox::Result<()> {
    // A block-structured state: populations plus one central coherence.
    let mut m = cpbox::linalg::ComplexMatrix::from_diagonal(&[0.1, 0.3, 0.4, 0.2]);
    m[(B_GE, B_EG)] = Complex64::new(0.1, 0.2);
    m[(B_EG, B_GE)] = Complex64::new(0.1, -0.2);
    let rho = DensityMatrix::new(m, cpbox::linalg::Basis::Joint4)?;
    let mut closed = closed_form_joint_eigenvalues(&rho)?.to_vec();
    closed.sort_by(f64::total_cmp);
    println!("closed form: {closed:.12?}");
    println!("eigensolver: {:.12?}", rho.spectrum());

    // Evolved states of the coupled boxes mix all four levels, so the
    // closed form refuses them.
    let p = QubitEnergies::at_degeneracy(100.0, 100.0, 5.0, 30.0, 30.0)?;
    let h = build_four_level_hamiltonian(&p);
    let rho0 = make_initial_state(InitialStateSpec::new(1.0)?)?;
    let evolved = Propagator::new(&h, 0.1)?.evolve(&rho0, 0.3)?;
    match closed_form_joint_eigenvalues(&evolved) {
        Ok(l) => println!("evolved state: {l:?}"),
        Err(e) => println!("evolved state: {e}"),
    }
    Ok(())
}
