//! Integer polynomials evaluated over Z/p^K.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicInt};

/// A polynomial with integer coefficients, `coeffs[i]` multiplying `x^i`.
///
/// Coefficients stay as plain integers so one polynomial can be evaluated
/// under any context; reduction mod `p^K` happens at evaluation time. The
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Coefficients reduced into `ctx`.
    pub fn reduce(&self, ctx: &PadicContext) -> Vec<PadicInt> {
        self.coeffs.iter().map(|c| ctx.from_integer(c)).collect()
    }

    /// True when every coefficient is divisible by `m`.
    pub fn vanishes_mod(&self, m: &BigInt) -> bool {
        self.coeffs.iter().all(|c| (c % m).is_zero())
    }

    /// Horner evaluation mod `p^K`.
    pub fn eval(&self, x: &PadicInt) -> Result<PadicInt> {
        if self.is_zero() {
            return Err(Error::EmptyPolynomial);
        }
        let ctx = x.context();
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(&ctx.from_integer(c))?;
        }
        Ok(acc)
    }

    /// Exact evaluation over the integers.
    pub fn eval_integer(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients of `f(a + y)` as a polynomial in `y`.
    ///
    /// Repeated synthetic division by `(x - a)`: the remainder of the j-th
    /// division is `f^(j)(a) / j!`, obtained without dividing by `j!`, so the
    /// result is exact even when `p <= deg f`.
    pub fn taylor_coeffs(&self, a: &PadicInt) -> Result<TaylorCoeffs> {
        if self.is_zero() {
            return Err(Error::EmptyPolynomial);
        }
        let mut b = self.reduce(a.context());
        let q = b.len() - 1;
        for i in 0..q {
            for j in (i..q).rev() {
                let carry = b[j + 1].mul(a)?;
                b[j] = b[j].add(&carry)?;
            }
        }
        Ok(TaylorCoeffs {
            center: a.clone(),
            coeffs: b,
        })
    }
}

/// `f(a + y) = sum_j coeffs[j] * y^j`, with `coeffs[j] = f^(j)(a) / j!`.
#[derive(Clone, Debug)]
pub struct TaylorCoeffs {
    center: PadicInt,
    coeffs: Vec<PadicInt>,
}

impl TaylorCoeffs {
    pub fn center(&self) -> &PadicInt {
        &self.center
    }

    pub fn coeffs(&self) -> &[PadicInt] {
        &self.coeffs
    }

    /// `f^(j)(a) / j!`, zero past the degree.
    pub fn coeff(&self, j: usize) -> PadicInt {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| self.center.context().zero())
    }

    /// `f(a)`.
    pub fn value(&self) -> PadicInt {
        self.coeff(0)
    }

    /// `f'(a)`.
    pub fn first_derivative(&self) -> PadicInt {
        self.coeff(1)
    }

    /// `f''(a) / 2`.
    pub fn half_second_derivative(&self) -> PadicInt {
        self.coeff(2)
    }

    /// `f''(a)`.
    pub fn second_derivative(&self) -> PadicInt {
        let c2 = self.coeff(2);
        c2.add(&c2).expect("same context")
    }

    /// `sum_{j<k} coeffs[j] * y^j`; the full expansion when `k > deg f`.
    pub fn partial_sum(&self, y: &PadicInt, k: usize) -> Result<PadicInt> {
        let ctx = self.center.context();
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().take(k).rev() {
            acc = acc.mul(y)?.add(c)?;
        }
        Ok(acc)
    }

    /// The shifted polynomial `y -> f(a + y)` with residues lifted to integers.
    pub fn to_poly(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| c.value().clone().into())
                .collect(),
        )
    }
}

impl fmt::Display for Poly {
    /// Renders highest degree first, e.g. `x^3 - 2x + 1`. The output parses
    /// back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = mag == BigInt::from(1);
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
