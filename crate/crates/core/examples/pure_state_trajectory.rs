//! Unitary evolution from the pure state |e1e2>: the two reduced entropies
//! stay equal and the mutual entropy is twice either of them.
//!
//!     cargo run --example pure_state_trajectory

use cpbox::dynamics::{make_initial_state, InitialStateSpec, Propagator};
use cpbox::entropy::{observe, reduced_entropies};
use cpbox::model::{build_four_level_hamiltonian, QubitEnergies};

fn main() -> cpbox::Result<()> {
    let p = QubitEnergies::at_degeneracy(100.0, 100.0, 5.0, 30.0, 30.0)?;
    let h = build_four_level_hamiltonian(&p);
    let prop = Propagator::new(&h, 0.0)?;
    let rho0 = make_initial_state(InitialStateSpec::new(0.0)?)?;

    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>12}",
        "t", "S_A", "S_B", "I", "I - 2 S_A"
    );
    for k in 0..=20 {
        let t = 0.05 * k as f64;
        let rho = prop.evolve(&rho0, t)?;
        let rec = observe(&h, &rho, t)?;
        let r = reduced_entropies(&rho)?;
        println!(
            "{t:>6.2} {:>10.6} {:>10.6} {:>10.6} {:>12.2e}",
            r.s_a,
            r.s_b,
            rec.mutual,
            rec.mutual - 2.0 * r.s_a
        );
    }
    Ok(())
}
