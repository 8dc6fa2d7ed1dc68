//! Four-level truncation against the full charge lattice, for weak and
//! strong Josephson coupling.
//!
//!     cargo run --example four_level_vs_lattice

use cpbox::model::{compare_with_lattice, QubitEnergies};

fn main() -> cpbox::Result<()> {
    for e_j in [1.0, 10.0, 30.0] {
        let p = QubitEnergies::at_degeneracy(100.0, 100.0, 1.0, e_j, e_j)?;
        let cmp = compare_with_lattice(&p, 4)?;
        println!("E_J = {e_j}");
        for (k, (a, b)) in cmp.four_level.iter().zip(&cmp.lattice).enumerate() {
            println!("  E_{k}: four-level {a:>12.6}  lattice {b:>12.6}");
        }
        println!(
            "  deviation / spread = {:.3e}",
            cmp.max_relative_deviation()
        );
    }
    Ok(())
}
