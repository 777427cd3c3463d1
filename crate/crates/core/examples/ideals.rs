//! Ideals of the root poset: enumeration, dual partition, signed graph,
//! B-partition and the reductions that feed the closed forms.
//!
//! cargo run --example ideals

use std::sync::Arc;

use quasichar::{build_positive_system, collect_ideals, Ideal, RootType};

fn main() -> quasichar::Result<()> {
    for (t, l) in [(RootType::A, 4), (RootType::B, 4), (RootType::C, 4), (RootType::D, 4)] {
        let sys = Arc::new(build_positive_system(t, l)?);
        println!("{t}{l}: {} ideals", collect_ideals(&sys)?.len());
    }

    let b5 = Arc::new(build_positive_system(RootType::B, 5)?);
    let cut = Ideal::height_cut(b5, 7);
    println!("\nB5, ht <= 7: {} roots", cut.len());
    println!("  height distribution {:?}", cut.height_distribution());
    println!("  dual partition      {:?}", cut.dual_partition().parts());
    let bp = cut.b_partition()?;
    println!(
        "  loops {}, negative {}, positive {}",
        bp.loops.len(),
        bp.negative.len(),
        bp.positive.len()
    );
    let j = cut.strip_loops()?;
    println!("  without loops, in D5: dual partition {:?}", j.dual_partition().parts());

    let c5 = Arc::new(build_positive_system(RootType::C, 5)?);
    let i = Ideal::parse_spec(c5, "gen:e1-e5,e2+e3")?;
    let red = i.reduction()?;
    println!(
        "\nC5 ideal {i}\n  s = {}, stripped rows {:?}, left with {}{} (all of it: {})",
        red.parameter,
        red.prefix,
        red.reduced.rs_type(),
        red.reduced.rank(),
        red.reduced.len() == red.reduced.system().len()
    );

    let d5 = Arc::new(build_positive_system(RootType::D, 5)?);
    let a = Ideal::parse_spec(d5.clone(), "gen:e4-e5")?;
    let b = Ideal::parse_spec(d5, "gen:e4+e5")?;
    println!(
        "\nD5: {a} and {b} differ but share SG {:?}",
        a.signed_graph()?.p
    );
    Ok(())
}
