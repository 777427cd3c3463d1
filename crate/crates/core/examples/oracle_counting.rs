//! Brute-force point counts on (Z/qZ)^l, the shifted count F, and contraction.
//!
//! cargo run --release --example oracle_counting

use std::sync::Arc;

use quasichar::{
    build_positive_system, contraction, count_complement, count_shifted, Ideal, IntegerMatrix,
    Lattice, Oracle, RootType,
};

fn main() -> quasichar::Result<()> {
    let b5 = Arc::new(build_positive_system(RootType::B, 5)?);
    let cut = Ideal::height_cut(b5, 7);
    let t = cut.lattice_matrix(Lattice::Integer);
    println!("B5 ht<=7, T-lattice:");
    for q in [7, 8, 9, 10] {
        println!("  q = {q:>2}: {}", count_complement(&t, q)?);
    }

    // F: offsets from the last row of S
    let c5 = Arc::new(build_positive_system(RootType::C, 5)?);
    let i = Ideal::parse_spec(c5, "gen:e1-e5,e2+e3")?;
    let f = count_shifted(&i.lattice_matrix(Lattice::Integer), &i.last_simple_row(), 8)?;
    println!("\nC5 table ideal, F at q = 8: {f}");

    // deletion-contraction along e1 in B2: count(L) = count(L + e1) + count(L / e1)
    let with = IntegerMatrix::from_columns(2, &[vec![1, -1], vec![1, 0]])?;
    let without = IntegerMatrix::from_columns(2, &[vec![1, -1]])?;
    let contracted = contraction(&with, 1)?;
    for q in 2..=6 {
        let (a, b, c) = (
            count_complement(&without, q)?,
            count_complement(&with, q)?,
            count_complement(&contracted, q)?,
        );
        println!("  q = {q}: {a} = {b} + {c}");
        assert_eq!(a, b + c);
    }

    let small = Oracle::with_budget(10_000);
    match small.count(&t, 30) {
        Err(e) => println!("\nwith a 10^4 budget: {e}"),
        Ok(n) => println!("\nunexpectedly counted {n}"),
    }
    Ok(())
}
