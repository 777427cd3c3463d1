//! Counting-level identities and the per-ideal check suite behind `verify`.

use crate::closed::{closed_form, dual_partition_product, oracle_quasi, Parity};
use crate::counting::Oracle;
use crate::error::{Error, Result};
use crate::ideal::{contraction_list, Ideal, Lattice};
use crate::quasipoly::QuasiPolynomial;
use crate::roots::{RootKind, RootType};

/// Both sides of the deletion-contraction split of a D-ideal at `q`:
/// `(count(T_I), sum_k count(A_k) + count(T_K))`.
pub fn d_split_counts(ideal: &Ideal, q: u64, oracle: &Oracle) -> Result<(u64, u64)> {
    let derived = ideal.derived_ideals_d()?;
    let lhs = oracle.count(&ideal.lattice_matrix(Lattice::Integer), q)?;
    let mut rhs = oracle.count(&derived.k.lattice_matrix(Lattice::Integer), q)?;
    for k in 1..=ideal.rank() {
        rhs += oracle.count(&contraction_list(ideal, k)?, q)?;
    }
    Ok((lhs, rhs))
}

/// `(count(T_I, q), count(T_J, q - 1))` for a B-ideal containing `e_1`,
/// where `J` is the ideal with its loops removed, read in `D_l`.
pub fn b_shift_counts(ideal: &Ideal, q: u64, oracle: &Oracle) -> Result<(u64, u64)> {
    if q < 2 {
        return Err(Error::Domain("the shifted count needs q >= 2".into()));
    }
    let j = ideal.strip_loops()?;
    Ok((
        oracle.count(&ideal.lattice_matrix(Lattice::Integer), q)?,
        oracle.count(&j.lattice_matrix(Lattice::Integer), q - 1)?,
    ))
}

/// Outcome of [`check_ideal`].
#[derive(Debug, Clone)]
pub struct IdealReport {
    pub ideal: Ideal,
    /// Interpolated quasi-polynomials for `T` and `S`.
    pub quasi: Vec<(Lattice, QuasiPolynomial)>,
    pub failures: Vec<String>,
}

impl IdealReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Interpolates both lattices from the oracle and checks the period bound,
/// the split of the first constituent over the dual partition, agreement
/// with the closed forms, and (where they apply) the D split identity for
/// `q <= 10` and the B-to-D shift for even `q <= 12`.
///
/// Capacity errors propagate; every mathematical disagreement is collected.
pub fn check_ideal(ideal: &Ideal, oracle: &Oracle) -> Result<IdealReport> {
    let mut failures = Vec::new();
    let mut quasi = Vec::new();
    let max_period = if ideal.rs_type() == RootType::A { 1 } else { 2 };
    let dp = dual_partition_product(ideal);
    for lattice in [Lattice::Integer, Lattice::Root] {
        let qp = match oracle_quasi(ideal, lattice, oracle) {
            Ok(qp) => qp,
            Err(Error::PeriodExhausted(c)) => {
                failures.push(format!("{lattice}: no period in {c:?}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        if qp.period() > max_period {
            failures.push(format!("{lattice}: period {} > {max_period}", qp.period()));
        }
        if qp.characteristic_polynomial() != &dp {
            failures.push(format!(
                "{lattice}: f1 = {} but the dual partition gives {}",
                qp.characteristic_polynomial().factored(),
                dp.factored()
            ));
        }
        let closed = closed_form(ideal, lattice, Parity::Odd).and_then(|odd| {
            QuasiPolynomial::from_parity(odd, closed_form(ideal, lattice, Parity::Even)?)
        });
        match closed {
            Ok(c) if c == qp => {}
            Ok(c) => failures.push(format!("{lattice}: closed form {c} vs oracle {qp}")),
            Err(e) => failures.push(format!("{lattice}: closed form failed: {e}")),
        }
        quasi.push((lattice, qp));
    }
    let l = ideal.rank();
    if ideal.rs_type() == RootType::D
        && ideal.contains_kind(RootKind::Sum(1, l))
        && ideal.contains_kind(RootKind::Diff(1, l))
    {
        for q in 1..=10 {
            let (lhs, rhs) = d_split_counts(ideal, q, oracle)?;
            if lhs != rhs {
                failures.push(format!("split identity at q={q}: {lhs} != {rhs}"));
            }
        }
    }
    if ideal.rs_type() == RootType::B && ideal.contains_kind(RootKind::Short(1)) {
        for q in (2..=12).step_by(2) {
            let (lhs, rhs) = b_shift_counts(ideal, q, oracle)?;
            if lhs != rhs {
                failures.push(format!("B-to-D shift at q={q}: {lhs} != {rhs}"));
            }
        }
    }
    Ok(IdealReport {
        ideal: ideal.clone(),
        quasi,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::enumerate_ideals;
    use crate::roots::build_positive_system;
    use std::sync::Arc;

    fn sys(t: RootType, l: usize) -> Arc<crate::roots::PositiveSystem> {
        Arc::new(build_positive_system(t, l).unwrap())
    }

    #[test]
    fn d_split_on_full_d4() {
        let i = Ideal::full(sys(RootType::D, 4));
        for q in 1..=8 {
            let (a, b) = d_split_counts(&i, q, &Oracle::default()).unwrap();
            assert_eq!(a, b, "q={q}");
        }
    }

    #[test]
    fn b_shift_on_full_b3() {
        let i = Ideal::full(sys(RootType::B, 3));
        for q in [2, 4, 6] {
            let (a, b) = b_shift_counts(&i, q, &Oracle::default()).unwrap();
            assert_eq!(a, b);
        }
        assert!(b_shift_counts(&i, 1, &Oracle::default()).is_err());
    }

    #[test]
    fn check_suite_passes_on_rank_three() {
        for t in [RootType::A, RootType::B, RootType::C, RootType::D] {
            for i in enumerate_ideals(&sys(t, 3)) {
                let r = check_ideal(&i, &Oracle::default()).unwrap();
                assert!(r.passed(), "{i:?}: {:?}", r.failures);
                assert_eq!(r.quasi.len(), 2);
            }
        }
    }
}
