//! Closed forms for the characteristic quasi-polynomial of an ideal, by type,
//! lattice and parity of `q`.
//!
//! Odd `q` is always the product over the dual partition. Even `q` reduces the
//! ideal first; B then passes to a D-ideal at `q - 1`, C is a half-sum over the
//! full system left after reduction, and D splits into B-ideals by
//! deletion-contraction along the short roots.

use crate::counting::Oracle;
use crate::error::{Error, Result};
use crate::ideal::{Ideal, Lattice};
use crate::poly::IntegerPolynomial;
use crate::quasipoly::{interpolate_quasi, QuasiPolynomial, DEFAULT_PERIODS};
use crate::roots::RootType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(q: u64) -> Parity {
        if q.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

fn linear_product<'a>(values: impl IntoIterator<Item = &'a usize>) -> IntegerPolynomial {
    IntegerPolynomial::from_roots(values.into_iter().map(|&d| d as i128))
}

/// `prod (q - d_i)` over the dual partition.
pub fn dual_partition_product(ideal: &Ideal) -> IntegerPolynomial {
    linear_product(ideal.dual_partition().parts())
}

fn is_type_a_case(ideal: &Ideal) -> Result<bool> {
    match ideal.reduction() {
        Ok(_) => Ok(false),
        Err(Error::TypeACase) => Ok(true),
        Err(e) => Err(e),
    }
}

fn expect_type(ideal: &Ideal, t: RootType, op: &str) -> Result<()> {
    if ideal.rs_type() == t {
        Ok(())
    } else {
        Err(Error::WrongDispatch(format!(
            "{op} called on a type {} ideal",
            ideal.rs_type()
        )))
    }
}

/// `(t + f) / 2`, refusing to round.
fn half_sum(t: &IntegerPolynomial, f: &IntegerPolynomial) -> Result<IntegerPolynomial> {
    (t + f).div_exact(2).map_err(|_| {
        Error::Mismatch(format!(
            "half-sum is not integral: T = {}, F = {}",
            t.factored(),
            f.factored()
        ))
    })
}

/// The period-1 case: no sum root (type C: no long root), every type A
/// ideal, and D-ideals without `e_{l-1} - e_l`.
pub fn chi_type_a(ideal: &Ideal) -> Result<QuasiPolynomial> {
    if !is_type_a_case(ideal)? {
        return Err(Error::WrongDispatch(format!(
            "{ideal} in {}{} needs the reduction route",
            ideal.rs_type(),
            ideal.rank()
        )));
    }
    QuasiPolynomial::polynomial(dual_partition_product(ideal))
}

/// Type B, either lattice (the basis change is unimodular).
pub fn chi_b(ideal: &Ideal, parity: Parity) -> Result<IntegerPolynomial> {
    expect_type(ideal, RootType::B, "chi_b")?;
    if parity == Parity::Odd {
        return Ok(dual_partition_product(ideal));
    }
    let red = match ideal.reduction() {
        Err(Error::TypeACase) => return Ok(dual_partition_product(ideal)),
        r => r?,
    };
    // e_1 lies in the reduced ideal; drop the loops and shift q by one
    let j = red.reduced.strip_loops()?;
    let tail = IntegerPolynomial::from_roots(j.dual_partition().parts().iter().map(|&p| p as i128 + 1));
    Ok(&linear_product(&red.prefix) * &tail)
}

/// Type C, even `q`, the shifted count `F`.
pub fn f_c_even(ideal: &Ideal) -> Result<IntegerPolynomial> {
    expect_type(ideal, RootType::C, "f_c_even")?;
    let red = match ideal.reduction() {
        Err(Error::TypeACase) => return Ok(dual_partition_product(ideal)),
        r => r?,
    };
    let m = full_c_rank(&red.reduced)?;
    Ok(&linear_product(&red.prefix) * &IntegerPolynomial::from_roots((0..m).map(|i| 2 * i as i128)))
}

fn full_c_rank(reduced: &Ideal) -> Result<usize> {
    if reduced.len() != reduced.system().len() {
        return Err(Error::Mismatch(format!(
            "reduced C-ideal {reduced} is not the whole positive system"
        )));
    }
    Ok(reduced.rank())
}

fn chi_c_even_t(ideal: &Ideal) -> Result<IntegerPolynomial> {
    let red = match ideal.reduction() {
        Err(Error::TypeACase) => return Ok(dual_partition_product(ideal)),
        r => r?,
    };
    let m = full_c_rank(&red.reduced)?;
    Ok(&linear_product(&red.prefix) * &IntegerPolynomial::from_roots((1..=m).map(|i| 2 * i as i128)))
}

pub fn chi_c(ideal: &Ideal, parity: Parity, lattice: Lattice) -> Result<IntegerPolynomial> {
    expect_type(ideal, RootType::C, "chi_c")?;
    match (parity, lattice) {
        (Parity::Odd, _) => Ok(dual_partition_product(ideal)),
        (Parity::Even, Lattice::Integer) => chi_c_even_t(ideal),
        (Parity::Even, Lattice::Root) => half_sum(&chi_c_even_t(ideal)?, &f_c_even(ideal)?),
    }
}

/// Type D, even `q`, the shifted count `F = prod (q - p_i)` over the signed graph.
pub fn f_d_even(ideal: &Ideal) -> Result<IntegerPolynomial> {
    expect_type(ideal, RootType::D, "f_d_even")?;
    if is_type_a_case(ideal)? {
        return Ok(dual_partition_product(ideal));
    }
    Ok(linear_product(&ideal.signed_graph()?.p))
}

/// Even-`q` T-lattice summands of a D-ideal containing `e_1 +- e_l`.
#[derive(Debug, Clone)]
pub struct DEvenSummands {
    pub k: IntegerPolynomial,
    pub u: Vec<IntegerPolynomial>,
}

impl DEvenSummands {
    pub fn total(&self) -> IntegerPolynomial {
        self.u.iter().chain(std::iter::once(&self.k)).cloned().sum()
    }
}

/// `chi_B(K, even)` and `chi_B(U_k, even)` for a D-ideal with `r = 1`.
pub fn d_even_summands(ideal: &Ideal) -> Result<DEvenSummands> {
    expect_type(ideal, RootType::D, "d_even_summands")?;
    let derived = ideal.derived_ideals_d()?;
    Ok(DEvenSummands {
        k: chi_b(&derived.k, Parity::Even)?,
        u: derived
            .u
            .iter()
            .map(|u| chi_b(u, Parity::Even))
            .collect::<Result<_>>()?,
    })
}

fn chi_d_even_t(ideal: &Ideal) -> Result<IntegerPolynomial> {
    let red = match ideal.reduction() {
        Err(Error::TypeACase) => return Ok(dual_partition_product(ideal)),
        r => r?,
    };
    Ok(&linear_product(&red.prefix) * &d_even_summands(&red.reduced)?.total())
}

pub fn chi_d(ideal: &Ideal, parity: Parity, lattice: Lattice) -> Result<IntegerPolynomial> {
    expect_type(ideal, RootType::D, "chi_d")?;
    match (parity, lattice) {
        (Parity::Odd, _) => Ok(dual_partition_product(ideal)),
        (Parity::Even, Lattice::Integer) => chi_d_even_t(ideal),
        (Parity::Even, Lattice::Root) => half_sum(&chi_d_even_t(ideal)?, &f_d_even(ideal)?),
    }
}

/// The constituent for `q` of the given parity, dispatched on type.
pub fn closed_form(ideal: &Ideal, lattice: Lattice, parity: Parity) -> Result<IntegerPolynomial> {
    match ideal.rs_type() {
        RootType::A => Ok(dual_partition_product(ideal)),
        RootType::B => chi_b(ideal, parity),
        RootType::C => chi_c(ideal, parity, lattice),
        RootType::D => chi_d(ideal, parity, lattice),
    }
}

/// Quasi-polynomial by interpolating oracle counts of the lattice matrix.
pub fn oracle_quasi(ideal: &Ideal, lattice: Lattice, oracle: &Oracle) -> Result<QuasiPolynomial> {
    let m = ideal.lattice_matrix(lattice);
    interpolate_quasi(|q| oracle.count(&m, q), ideal.rank(), &DEFAULT_PERIODS)
}

/// Closed-form quasi-polynomial; with `verify`, also compares it with [`oracle_quasi`].
pub fn chi_quasi_ideal(ideal: &Ideal, lattice: Lattice, verify: bool) -> Result<QuasiPolynomial> {
    let qp = QuasiPolynomial::from_parity(
        closed_form(ideal, lattice, Parity::Odd)?,
        closed_form(ideal, lattice, Parity::Even)?,
    )?;
    if verify {
        let oracle = oracle_quasi(ideal, lattice, &Oracle::default())?;
        if oracle != qp {
            return Err(Error::Mismatch(format!(
                "closed form {qp} disagrees with oracle {oracle} for {ideal} ({lattice})"
            )));
        }
    }
    Ok(qp)
}
