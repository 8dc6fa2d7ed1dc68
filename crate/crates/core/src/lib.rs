//! Two capacitively coupled Cooper-pair-box charge qubits under intrinsic
//! (Milburn) phase decoherence.
//!
//! The crate builds the four-level charge Hamiltonian (or its full charge
//! lattice), propagates density matrices exactly in the energy eigenbasis,
//! and tracks the quantum mutual entropy `I = S_A + S_B - S_AB` between the
//! two boxes. Parameter sweeps write CSV tables and SVG figures.
//!
//! ```
//! use cpbox::dynamics::{make_initial_state, InitialStateSpec, Propagator};
//! use cpbox::entropy::mutual_entropy;
//! use cpbox::model::{build_four_level_hamiltonian, QubitEnergies};
//!
//! let p = QubitEnergies::at_degeneracy(100.0, 100.0, 5.0, 30.0, 30.0).unwrap();
//! let h = build_four_level_hamiltonian(&p);
//! let prop = Propagator::new(&h, 0.1).unwrap();
//! let rho0 = make_initial_state(InitialStateSpec::new(std::f64::consts::FRAC_PI_2).unwrap()).unwrap();
//! let rho = prop.evolve(&rho0, 2.0).unwrap();
//! assert!(mutual_entropy(&rho).unwrap() >= 0.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail range checks

pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod model;
pub mod plot;
pub mod sweep;

pub use error::{Error, Result};
