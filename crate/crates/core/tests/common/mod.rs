#![allow(dead_code)]

use std::sync::Arc;

use quasichar::{build_positive_system, Ideal, IntegerMatrix, PositiveSystem, RootType};
use rand::Rng;

pub fn sys(t: RootType, l: usize) -> Arc<PositiveSystem> {
    Arc::new(build_positive_system(t, l).unwrap())
}

/// Direct point count: every z in (Z/qZ)^rows, every column, full dot product.
/// Shares no code with the library kernel.
pub fn naive_count(m: &IntegerMatrix, offsets: &[i64], q: u64) -> u64 {
    let (l, n) = (m.rows(), m.cols());
    let q = q as i64;
    let mut z = vec![0i64; l];
    let mut count = 0;
    loop {
        let ok = (0..n).all(|j| {
            let dot: i64 = (0..l).map(|i| z[i] * m.get(i, j)).sum::<i64>() + offsets[j];
            dot.rem_euclid(q) != 0
        });
        count += u64::from(ok);
        let mut d = 0;
        loop {
            if d == l {
                return count;
            }
            z[d] += 1;
            if z[d] < q {
                break;
            }
            z[d] = 0;
            d += 1;
        }
    }
}

pub fn naive_plain(m: &IntegerMatrix, q: u64) -> u64 {
    naive_count(m, &vec![0; m.cols()], q)
}

/// The ideal generated by up to three random roots.
pub fn random_ideal<R: Rng>(rng: &mut R, system: &Arc<PositiveSystem>) -> Ideal {
    let k = rng.gen_range(0..=3);
    let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..system.len())).collect();
    Ideal::generated_by(system.clone(), &gens)
}
