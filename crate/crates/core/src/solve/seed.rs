use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::reduce_signed;
use crate::poly::Poly;
use crate::prime::is_prime;

/// Primes at or above this are not enumerated by [`find_seeds`].
pub const ENUMERATION_BOUND: u64 = 1 << 20;

/// A residue `x0 mod p` with `f(x0) = 0` and `f'(x0) != 0 (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Seed {
    pub x0: BigUint,
    pub f_mod_p: BigUint,
    pub fprime_mod_p: BigUint,
}

impl Seed {
    /// Validates a user-supplied starting point against Hensel's criterion.
    /// `x0` is reduced mod `p`.
    pub fn check(f: &Poly, p: &BigUint, x0: &BigInt) -> Result<Seed> {
        if f.is_zero() {
            return Err(Error::EmptyPolynomial);
        }
        let x0 = reduce_signed(x0, p);
        let x = BigInt::from(x0.clone());
        let f_mod_p = reduce_signed(&f.eval_integer(&x), p);
        let fprime_mod_p = reduce_signed(&f.derivative().eval_integer(&x), p);
        if !f_mod_p.is_zero() {
            return Err(Error::InvalidSeed {
                x0,
                detail: "f(x0) is not divisible by p",
            });
        }
        if fprime_mod_p.is_zero() {
            return Err(Error::InvalidSeed {
                x0,
                detail: "f'(x0) is divisible by p",
            });
        }
        Ok(Seed {
            x0,
            f_mod_p,
            fprime_mod_p,
        })
    }
}

/// Outcome of scanning all residues mod `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeedSet {
    /// Simple roots mod `p`, ascending.
    pub simple: Vec<Seed>,
    /// Residues where both `f` and `f'` vanish mod `p`; Hensel lifting does not apply.
    pub singular: Vec<BigUint>,
}

/// All roots of `f` mod `p`, split into simple seeds and singular residues.
pub fn find_seeds(f: &Poly, p: &BigUint) -> Result<SeedSet> {
    if f.is_zero() {
        return Err(Error::EmptyPolynomial);
    }
    let small = p
        .to_u64()
        .filter(|&p| p < ENUMERATION_BOUND)
        .ok_or_else(|| Error::PrimeTooLargeForEnumeration(p.clone()))?;
    if !is_prime(p) {
        return Err(Error::NonPrime(p.clone()));
    }
    let reduce = |poly: &Poly| -> Vec<u64> {
        poly.coeffs()
            .iter()
            .map(|c| reduce_signed(c, p).to_u64().expect("reduced below p"))
            .collect()
    };
    let fc = reduce(f);
    if fc.iter().all(|&c| c == 0) {
        return Err(Error::ZeroPolynomialModP(p.clone()));
    }
    let dc = reduce(&f.derivative());
    let horner = |cs: &[u64], x: u64| {
        cs.iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x % small + c) % small)
    };

    let mut out = SeedSet::default();
    for x in 0..small {
        if horner(&fc, x) != 0 {
            continue;
        }
        let d = horner(&dc, x);
        if d == 0 {
            out.singular.push(BigUint::from(x));
        } else {
            out.simple.push(Seed {
                x0: BigUint::from(x),
                f_mod_p: BigUint::zero(),
                fprime_mod_p: BigUint::from(d),
            });
        }
    }
    Ok(out)
}
