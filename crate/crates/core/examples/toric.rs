//! Toric (last-constituent) polynomials of the full positive systems.
//!
//! cargo run --release --example toric

use std::sync::Arc;

use quasichar::{build_positive_system, chi_quasi_ideal, Ideal, Lattice, RootType};

fn main() -> quasichar::Result<()> {
    for t in RootType::ALL {
        for l in t.min_rank()..=5 {
            let full = Ideal::full(Arc::new(build_positive_system(t, l)?));
            for lattice in [Lattice::Integer, Lattice::Root] {
                let qp = chi_quasi_ideal(&full, lattice, false)?;
                println!(
                    "{t}{l} {lattice}  char {:<32} toric {}",
                    qp.characteristic_polynomial().factored(),
                    qp.toric_polynomial().factored()
                );
            }
        }
    }
    Ok(())
}
