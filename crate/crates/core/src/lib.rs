//! Characteristic quasi-polynomials of ideals of the classical root systems
//! A, B, C and D, computed two ways: by counting points of `(Z/qZ)^l` off the
//! q-reduced hyperplanes and interpolating, and by closed forms built from the
//! dual partition and signed graph of the ideal.
//!
//! ```
//! use std::sync::Arc;
//! use quasichar::{build_positive_system, chi_quasi_ideal, Ideal, Lattice, RootType};
//!
//! let b2 = Arc::new(build_positive_system(RootType::B, 2).unwrap());
//! let qp = chi_quasi_ideal(&Ideal::full(b2), Lattice::Integer, true).unwrap();
//! assert_eq!(qp.period(), 2);
//! assert_eq!(qp.toric_polynomial().factored(), "(q-2)^2");
//! ```

pub mod cli;
pub mod closed;
pub mod counting;
pub mod error;
pub mod ideal;
pub mod matrix;
pub mod poly;
pub mod quasipoly;
pub mod roots;
pub mod smith;
pub mod verify;

pub use closed::{chi_quasi_ideal, closed_form, oracle_quasi, Parity};
pub use counting::{contraction, count_complement, count_shifted, Oracle};
pub use error::{Error, Result};
pub use ideal::{collect_ideals, enumerate_ideals, is_ideal, DualPartition, Ideal, Lattice};
pub use matrix::IntegerMatrix;
pub use poly::{factor_integer_roots, IntegerPolynomial};
pub use quasipoly::{interpolate_quasi, QuasiPolynomial};
pub use roots::{
    basis_change_matrix, build_positive_system, coefficient_matrix, Basis, PositiveSystem, Root,
    RootKind, RootType,
};
pub use smith::{lcm_period, smith_normal_form, LcmPeriod, SmithForm};
