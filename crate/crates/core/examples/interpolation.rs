//! Recovering a quasi-polynomial from counts, and the lattice data that bounds its period.
//!
//! cargo run --release --example interpolation

use std::sync::Arc;

use quasichar::{
    build_positive_system, count_complement, factor_integer_roots, interpolate_quasi, lcm_period,
    smith_normal_form, Ideal, Lattice, RootType,
};

fn main() -> quasichar::Result<()> {
    for t in [RootType::B, RootType::C, RootType::D] {
        let l = t.min_rank();
        let full = Ideal::full(Arc::new(build_positive_system(t, l)?));
        for lattice in [Lattice::Integer, Lattice::Root] {
            let m = full.lattice_matrix(lattice);
            let qp = interpolate_quasi(|q| count_complement(&m, q), l, &[1, 2])?;
            let period = lcm_period(&m, m.cols())?;
            println!("{t}{l} {lattice}: period {} (LCM-period {})", qp.period(), period.value);
            for (k, c) in qp.constituents().iter().enumerate() {
                println!("  f^{} = {}", k + 1, c.factored());
            }
        }
    }

    let c2 = Ideal::full(Arc::new(build_positive_system(RootType::C, 2)?));
    let snf = smith_normal_form(&c2.lattice_matrix(Lattice::Root));
    println!("\nSmith form of S(C2): {:?}, free rank {}", snf.invariant_factors, snf.free_rank);

    let d5 = Ideal::height_cut(Arc::new(build_positive_system(RootType::D, 5)?), 6);
    let m = d5.lattice_matrix(Lattice::Root);
    let qp = interpolate_quasi(|q| count_complement(&m, q), 5, &[1, 2])?;
    let (roots, rest) = factor_integer_roots(qp.toric_polynomial());
    println!("\nD5 ht<=6, S-lattice, even constituent: integer roots {roots:?}, residual {rest}");
    Ok(())
}
