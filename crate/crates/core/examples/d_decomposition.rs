//! Splitting a D-ideal into B-ideals K and U_1, ..., U_l by deletion-contraction.
//!
//! cargo run --release --example d_decomposition

use std::sync::Arc;

use quasichar::closed::d_even_summands;
use quasichar::verify::d_split_counts;
use quasichar::{build_positive_system, Ideal, Oracle, RootType};

fn main() -> quasichar::Result<()> {
    let d5 = Arc::new(build_positive_system(RootType::D, 5)?);
    let i = Ideal::height_cut(d5, 6);
    let derived = i.derived_ideals_d()?;
    let summands = d_even_summands(&i)?;
    println!("D5 ht<=6, s = {}", derived.s);
    println!("ideal\tSG\tchi_T at even q");
    println!("K\t{:?}\t{}", derived.k.signed_graph()?.p, summands.k.factored());
    for (k, (u, chi)) in derived.u.iter().zip(&summands.u).enumerate() {
        println!("U{}\t{:?}\t{}", k + 1, u.signed_graph()?.p, chi.factored());
    }
    println!("sum\t\t{}", summands.total());

    let oracle = Oracle::default();
    for q in 1..=8 {
        let (lhs, rhs) = d_split_counts(&i, q, &oracle)?;
        println!("q = {q}: count(T_I) = {lhs}, sum over K and contractions = {rhs}");
    }
    Ok(())
}
