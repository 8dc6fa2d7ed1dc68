//! Exact eigenbasis propagation against fixed-step RK4 for a few step
//! sizes. Errors shrink about 16x per halving until rounding takes over.
//!
//!     cargo run --release --example rk4_convergence

use cpbox::dynamics::{evolve_rk4, make_initial_state, InitialStateSpec, Propagator};
use cpbox::model::{build_four_level_hamiltonian, QubitEnergies};

fn main() -> cpbox::Result<()> {
    let p = QubitEnergies::at_degeneracy(100.0, 100.0, 5.0, 30.0, 30.0)?;
    let h = build_four_level_hamiltonian(&p);
    let rho0 = make_initial_state(InitialStateSpec::new(std::f64::consts::FRAC_PI_2)?)?;
    let t = 1.0;

    for gamma in [0.0, 0.01] {
        let exact = Propagator::new(&h, gamma)?.evolve(&rho0, t)?;
        println!("gamma = {gamma}");
        let mut prev: Option<f64> = None;
        for step in [4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4] {
            let rk = evolve_rk4(&h, gamma, &rho0, t, step)?;
            let err = rk.matrix().max_abs_diff(exact.matrix());
            match prev {
                Some(e) => println!(
                    "  h = {step:<8} max |d rho| = {err:.3e}  ratio {:.1}",
                    e / err
                ),
                None => println!("  h = {step:<8} max |d rho| = {err:.3e}"),
            }
            prev = Some(err);
        }
    }
    Ok(())
}
