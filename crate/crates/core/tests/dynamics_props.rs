mod common;

use std::f64::consts::PI;

use common::*;
use cpbox::dynamics::{evolve_rk4, make_initial_state, InitialStateSpec, Propagator};
use cpbox::entropy::{mutual_entropy, observe};
use cpbox::linalg::{purity, Basis, DensityMatrix};
use cpbox::model::{
    band_energies, build_four_level_hamiltonian, build_lattice_hamiltonian, ChargeWindow,
    QubitEnergies,
};
use proptest::prelude::*;

fn energies() -> impl Strategy<Value = QubitEnergies> {
    (
        20.0f64..200.0,
        20.0f64..200.0,
        -10.0f64..10.0,
        0.0f64..40.0,
        0.0f64..40.0,
        0.0f64..1.0,
        0.0f64..1.0,
    )
        .prop_map(|(e_c1, e_c2, e_m, e_j1, e_j2, n_g1, n_g2)| {
            QubitEnergies::new(e_c1, e_c2, e_m, e_j1, e_j2, n_g1, n_g2).unwrap()
        })
}

fn initial(xi: f64) -> DensityMatrix {
    make_initial_state(InitialStateSpec::new(xi).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn evolution_keeps_valid_state_and_energy(
        p in energies(), gamma in 0.0f64..1.0, rho0 in joint_state(), t in 0.0f64..20.0,
    ) {
        let h = build_four_level_hamiltonian(&p);
        let prop = Propagator::new(&h, gamma).unwrap();
        let rho = prop.evolve(&rho0, t).unwrap();
        let d = rho.diagnostics();
        prop_assert!(d.trace_error <= 1e-10);
        prop_assert!(d.min_eigenvalue >= -1e-10);
        let e0 = observe(&h, &rho0, 0.0).unwrap().energy;
        let e1 = observe(&h, &rho, t).unwrap().energy;
        prop_assert!((e1 - e0).abs() <= 1e-9);
    }

    #[test]
    fn purity_never_increases(
        p in energies(), gamma in 0.001f64..1.0, rho0 in joint_state(), t1 in 0.0f64..10.0, dt in 0.0f64..10.0,
    ) {
        let prop = Propagator::new(&build_four_level_hamiltonian(&p), gamma).unwrap();
        let a = purity(&prop.evolve(&rho0, t1).unwrap());
        let b = purity(&prop.evolve(&rho0, t1 + dt).unwrap());
        prop_assert!(b <= a + 1e-12);
    }

    #[test]
    fn semigroup(p in energies(), gamma in 0.0f64..1.0, rho0 in joint_state(), s in 0.0f64..5.0, t in 0.0f64..5.0) {
        let prop = Propagator::new(&build_four_level_hamiltonian(&p), gamma).unwrap();
        let two_step = prop.evolve(&prop.evolve(&rho0, s).unwrap(), t).unwrap();
        let one_step = prop.evolve(&rho0, s + t).unwrap();
        prop_assert!(two_step.matrix().max_abs_diff(one_step.matrix()) <= 1e-10);
    }

    #[test]
    fn unitary_evolution_keeps_spectrum(p in energies(), rho0 in joint_state(), t in 0.0f64..20.0) {
        let prop = Propagator::new(&build_four_level_hamiltonian(&p), 0.0).unwrap();
        let rho = prop.evolve(&rho0, t).unwrap();
        for (a, b) in rho.spectrum().iter().zip(rho0.spectrum()) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    // Small energies keep the RK4 truncation error far below the tolerance.
    #[test]
    fn matches_rk4_oracle(
        e_c in 1.0f64..10.0, e_m in -1.0f64..1.0, e_j1 in 0.0f64..5.0, e_j2 in 0.0f64..5.0,
        gamma in 0.0f64..0.5, rho0 in joint_state(), t in 0.0f64..1.0,
    ) {
        let p = QubitEnergies::at_degeneracy(e_c, e_c, e_m, e_j1, e_j2).unwrap();
        let h = build_four_level_hamiltonian(&p);
        let exact = Propagator::new(&h, gamma).unwrap().evolve(&rho0, t).unwrap();
        let rk = evolve_rk4(&h, gamma, &rho0, t, 1e-3).unwrap();
        prop_assert!(rk.matrix().max_abs_diff(exact.matrix()) <= 1e-8);
    }

    #[test]
    fn qubit_exchange_symmetry(p in energies(), gamma in 0.0f64..1.0, xi in 0.0f64..PI, t in 0.0f64..20.0) {
        let rho0 = initial(xi);
        let a = Propagator::new(&build_four_level_hamiltonian(&p), gamma).unwrap().evolve(&rho0, t).unwrap();
        let b = Propagator::new(&build_four_level_hamiltonian(&p.swapped()), gamma).unwrap().evolve(&rho0, t).unwrap();
        prop_assert!((mutual_entropy(&a).unwrap() - mutual_entropy(&b).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn decoupled_product_states_stay_uncorrelated(
        e_c1 in 20.0f64..200.0, e_c2 in 20.0f64..200.0, e_j1 in 0.0f64..40.0, e_j2 in 0.0f64..40.0,
        pi_end in proptest::bool::ANY, t in 0.0f64..20.0,
    ) {
        let p = QubitEnergies::at_degeneracy(e_c1, e_c2, 0.0, e_j1, e_j2).unwrap();
        let rho0 = initial(if pi_end { PI } else { 0.0 });
        let rho = Propagator::new(&build_four_level_hamiltonian(&p), 0.0).unwrap().evolve(&rho0, t).unwrap();
        prop_assert!(mutual_entropy(&rho).unwrap() <= 1e-10);
    }

    #[test]
    fn four_level_is_lattice_sub_block(p in energies(), n_max in 1usize..4) {
        let four = build_four_level_hamiltonian(&p);
        let lattice = build_lattice_hamiltonian(&p, n_max).unwrap();
        let w = ChargeWindow::new(n_max).unwrap();
        let charge = [(0, 0), (0, 1), (1, 0), (1, 1)];
        for (a, &(n1, n2)) in charge.iter().enumerate() {
            for (b, &(m1, m2)) in charge.iter().enumerate() {
                let (i, j) = (w.index(n1, n2).unwrap(), w.index(m1, m2).unwrap());
                prop_assert!((four[(a, b)] - lattice[(i, j)]).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn bands_are_charge_periodic(
        e_c in 50.0f64..150.0, e_m in -5.0f64..5.0, e_j in 0.0f64..10.0, ng in -0.5f64..0.5,
    ) {
        let p = QubitEnergies::at_degeneracy(e_c, e_c, e_m, e_j, e_j).unwrap();
        let b = band_energies(&p, &[ng, ng + 1.0], 4, 4).unwrap();
        for k in 0..4 {
            prop_assert!((b.bands[0][k] - b.bands[1][k]).abs() <= 1e-6);
        }
    }
}

#[test]
fn settles_to_dephased_limit() {
    for gamma in [0.01, 0.1, 0.5] {
        for xi in [0.3, PI / 2.0] {
            let p = QubitEnergies::at_degeneracy(100.0, 100.0, 5.0, 30.0, 20.0).unwrap();
            let prop = Propagator::new(&build_four_level_hamiltonian(&p), gamma).unwrap();
            let w = prop.min_gap().unwrap();
            let t = 40.0 / (gamma * w * w);
            let rho0 = initial(xi);
            let late = prop.evolve(&rho0, t).unwrap();
            let limit = prop.dephased_limit(&rho0).unwrap();
            assert!(late.matrix().max_abs_diff(limit.matrix()) <= 1e-8);
            assert!(
                (mutual_entropy(&late).unwrap() - mutual_entropy(&limit).unwrap()).abs() <= 1e-6
            );
        }
    }
}

#[test]
fn dephased_limit_keeps_degenerate_coherence() {
    // E_J = 0 with E_m = 0 and n_g = 0.5 makes all four charge states degenerate.
    let p = QubitEnergies::at_degeneracy(100.0, 100.0, 0.0, 0.0, 0.0).unwrap();
    let prop = Propagator::new(&build_four_level_hamiltonian(&p), 0.3).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = DensityMatrix::pure(&[c(s), c(0.0), c(0.0), c(s)], Basis::Joint4).unwrap();
    let limit = prop.dephased_limit(&bell).unwrap();
    assert!(limit.matrix().max_abs_diff(bell.matrix()) <= 1e-12);
}

#[test]
fn dephased_limit_needs_decoherence() {
    let p = QubitEnergies::at_degeneracy(100.0, 100.0, 1.0, 30.0, 30.0).unwrap();
    let prop = Propagator::new(&build_four_level_hamiltonian(&p), 0.0).unwrap();
    assert!(prop.dephased_limit(&initial(0.0)).is_err());
}
