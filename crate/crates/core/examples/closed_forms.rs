//! The closed forms for B, C and D ideals at even q, checked against the oracle.
//!
//! cargo run --release --example closed_forms

use std::sync::Arc;

use quasichar::closed::{chi_b, chi_c, chi_d, f_c_even};
use quasichar::{build_positive_system, chi_quasi_ideal, Ideal, Lattice, Parity, RootType};

fn main() -> quasichar::Result<()> {
    let b5 = Arc::new(build_positive_system(RootType::B, 5)?);
    let i = Ideal::height_cut(b5, 7);
    println!("B5 ht<=7");
    println!("  odd  q: {}", chi_b(&i, Parity::Odd)?.factored());
    println!("  even q: {}", chi_b(&i, Parity::Even)?.factored());

    let c5 = Arc::new(build_positive_system(RootType::C, 5)?);
    let i = Ideal::parse_spec(c5, "gen:e1-e5,e2+e3")?;
    println!("\nC5 {i}");
    println!("  T, even q: {}", chi_c(&i, Parity::Even, Lattice::Integer)?.factored());
    println!("  F, even q: {}", f_c_even(&i)?.factored());
    println!("  S, even q: {}", chi_c(&i, Parity::Even, Lattice::Root)?.factored());

    let d5 = Arc::new(build_positive_system(RootType::D, 5)?);
    let i = Ideal::height_cut(d5, 6);
    println!("\nD5 ht<=6");
    println!("  S, even q: {}", chi_d(&i, Parity::Even, Lattice::Root)?.factored());

    // the dispatcher assembles both parities and, with verify on, compares with the oracle
    let qp = chi_quasi_ideal(&i, Lattice::Root, true)?;
    println!("  verified against point counts: period {}", qp.period());
    Ok(())
}
