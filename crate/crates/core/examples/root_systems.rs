//! Positive systems, heights, and the two coefficient matrices of a root list.
//!
//! cargo run --example root_systems

use quasichar::{basis_change_matrix, build_positive_system, coefficient_matrix, Basis, RootType};

fn main() -> quasichar::Result<()> {
    for t in RootType::ALL {
        let l = t.min_rank().max(3);
        let sys = build_positive_system(t, l)?;
        println!("{t}{l}: {} positive roots, base {:?}", sys.len(), sys.simple_roots());
    }

    let b3 = build_positive_system(RootType::B, 3)?;
    println!("\nB3 by height:");
    for r in b3.roots() {
        println!("  {:<6} ht {}  simple {:?}", r.kind.to_string(), r.height, r.simple_coords);
    }

    // T = P S for any list of roots
    let s = coefficient_matrix(b3.roots(), Basis::Simple)?;
    let t = coefficient_matrix(b3.roots(), Basis::Orthonormal)?;
    let p = basis_change_matrix(RootType::B, 3)?;
    println!("\nP(B3) =\n{p}");
    assert_eq!(p.mul(&s)?, t);
    println!("T = P S holds for all of B3");

    let c5 = build_positive_system(RootType::C, 5)?;
    let long3 = c5.root(c5.parse_root("2e3")?);
    println!("\nC5: 2e3 has height {}", long3.height);
    Ok(())
}
