use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// A polynomial in `q` with exact integer coefficients, stored low to high
/// with no trailing zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<i128>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    /// `prod (q - r)` over the given roots.
    pub fn from_roots<I>(roots: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<i128>,
    {
        roots.into_iter().fold(Self::one(), |acc, r| {
            &acc * &Self::new(vec![-r.into(), 1])
        })
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Coefficients padded with zeros to `degree + 1` entries.
    pub fn coeffs_padded(&self, degree: usize) -> Vec<i128> {
        let mut c = self.coeffs.clone();
        c.resize(c.len().max(degree + 1), 0);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Horner evaluation; panics on i128 overflow.
    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| {
            acc.checked_mul(x)
                .and_then(|v| v.checked_add(c))
                .expect("polynomial evaluation overflowed i128")
        })
    }

    /// Divides every coefficient by `k`, failing unless all are divisible.
    pub fn div_exact(&self, k: i128) -> Result<Self> {
        if k == 0 || self.coeffs.iter().any(|c| c % k != 0) {
            return Err(Error::Domain(format!("{self} is not divisible by {k}")));
        }
        Ok(Self::new(self.coeffs.iter().map(|c| c / k).collect()))
    }

    /// Quotient by `(q - root)` when the division is exact.
    pub fn divide_by_linear(&self, root: i128) -> Option<Self> {
        if self.coeffs.len() < 2 {
            return None;
        }
        // synthetic division from the top
        let n = self.coeffs.len() - 1;
        let mut quot = vec![0i128; n];
        let mut carry = 0i128;
        for k in (1..=n).rev() {
            carry = self.coeffs[k].checked_add(carry.checked_mul(root)?)?;
            quot[k - 1] = carry;
        }
        let rem = self.coeffs[0].checked_add(carry.checked_mul(root)?)?;
        (rem == 0).then(|| Self::new(quot))
    }

    /// Renders as a product of integer-root factors and the residual.
    pub fn factored(&self) -> String {
        let (roots, residual) = factor_integer_roots(self);
        let mut counts: Vec<(i128, usize)> = Vec::new();
        for r in roots.iter().rev() {
            match counts.last_mut() {
                Some((v, c)) if v == r => *c += 1,
                _ => counts.push((*r, 1)),
            }
        }
        let mut out = String::new();
        for (r, c) in counts {
            let f = match r {
                0 => "q".to_string(),
                r if r > 0 => format!("(q-{r})"),
                r => format!("(q+{})", -r),
            };
            out.push_str(&f);
            if c > 1 {
                out.push_str(&format!("^{c}"));
            }
        }
        if residual != Self::one() || out.is_empty() {
            out.push_str(&format!("({residual})"));
        }
        out
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn add(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntegerPolynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(0) + rhs.coeffs.get(k).copied().unwrap_or(0)
                })
                .collect(),
        )
    }
}

impl Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn sub(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntegerPolynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(0) - rhs.coeffs.get(k).copied().unwrap_or(0)
                })
                .collect(),
        )
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn mul(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut c = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(c)
    }
}

impl std::iter::Sum for IntegerPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for IntegerPolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| &a * &b)
    }
}

/// Splits off every integer root (with multiplicity) by testing the divisors of
/// the constant term. Returns the roots in ascending order and the residual.
pub fn factor_integer_roots(poly: &IntegerPolynomial) -> (Vec<i128>, IntegerPolynomial) {
    let mut roots = Vec::new();
    let mut rest = poly.clone();
    'outer: while rest.degree().is_some_and(|d| d >= 1) {
        let c0 = rest.coeffs[0];
        if c0 == 0 {
            rest = rest.divide_by_linear(0).expect("q divides");
            roots.push(0);
            continue;
        }
        for d in divisors(c0.unsigned_abs()) {
            let d = d as i128;
            for r in [d, -d] {
                if let Some(quot) = rest.divide_by_linear(r) {
                    roots.push(r);
                    rest = quot;
                    continue 'outer;
                }
            }
        }
        break;
    }
    roots.sort_unstable();
    (roots, rest)
}

fn divisors(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i128]) -> IntegerPolynomial {
        IntegerPolynomial::new(c.to_vec())
    }

    #[test]
    fn from_roots_and_eval() {
        let f = IntegerPolynomial::from_roots([1, 3]);
        assert_eq!(f, p(&[3, -4, 1]));
        assert_eq!(f.eval(5), 8);
        assert!(f.is_monic());
        assert_eq!(f.degree(), Some(2));
    }

    #[test]
    fn factor_example_3_1() {
        let f = IntegerPolynomial::from_roots([2, 4, 5, 6, 6]);
        let (roots, res) = factor_integer_roots(&f);
        assert_eq!(roots, vec![2, 4, 5, 6, 6]);
        assert_eq!(res, IntegerPolynomial::one());
    }

    #[test]
    fn irreducible_cubic_has_no_integer_roots() {
        let f = p(&[-51, 51, -13, 1]);
        // rational-root candidates are the divisors of 51
        for r in [1, 3, 17, 51] {
            assert_ne!(f.eval(r), 0);
            assert_ne!(f.eval(-r), 0);
        }
        let (roots, res) = factor_integer_roots(&f);
        assert!(roots.is_empty());
        assert_eq!(res, f);
    }

    #[test]
    fn power_of_q() {
        let f = p(&[0, 0, 0, 0, 1]);
        let (roots, res) = factor_integer_roots(&f);
        assert_eq!(roots, vec![0; 4]);
        assert_eq!(res, IntegerPolynomial::one());
    }

    #[test]
    fn mixed_factorization() {
        let cubic = p(&[-51, 51, -13, 1]);
        let f = &IntegerPolynomial::from_roots([2, 4]) * &cubic;
        let (roots, res) = factor_integer_roots(&f);
        assert_eq!(roots, vec![2, 4]);
        assert_eq!(res, cubic);
        assert_eq!(f.factored(), "(q-4)(q-2)(q^3 - 13q^2 + 51q - 51)");
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-51, 51, -13, 1]).to_string(), "q^3 - 13q^2 + 51q - 51");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
        assert_eq!(IntegerPolynomial::zero().to_string(), "0");
        assert_eq!(IntegerPolynomial::from_roots([6, 6, 4]).factored(), "(q-6)^2(q-4)");
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[2, 4]).div_exact(2).unwrap(), p(&[1, 2]));
        assert!(p(&[1, 2]).div_exact(2).is_err());
        assert_eq!(p(&[-6, 1]).divide_by_linear(6), Some(IntegerPolynomial::one()));
        assert_eq!(p(&[-6, 1]).divide_by_linear(5), None);
    }
}
