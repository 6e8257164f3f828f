//! Brute-force ground truth for root finding.
//!
//! Two independent oracles: exhaustive search over all residues mod `p^m`,
//! and digit-at-a-time Hensel lifting over exact integers. Neither shares
//! code with the iteration steps in [`crate::solve`].

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::padic::{reduce_signed, PadicContext, PadicInt, Valuation};
use crate::poly::Poly;
use crate::solve::Seed;

/// Default cap on the number of residues [`brute_force_roots`] evaluates.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub p: BigUint,
    pub m: u32,
    /// All `r` in `[0, p^m)` with `f(r) = 0 mod p^m`, ascending.
    pub roots: Vec<BigUint>,
    /// `v_p(f(r))` over the integers, per root.
    pub valuations: Vec<Valuation>,
    pub elapsed: Duration,
}

impl OracleReport {
    fn new(f: &Poly, p: &BigUint, m: u32, roots: Vec<BigUint>, elapsed: Duration) -> Self {
        let modulus = BigInt::from(num_traits::pow(p.clone(), m as usize));
        let p_int = BigInt::from(p.clone());
        let valuations = roots
            .iter()
            .map(|r| {
                let value = f.eval_integer(&BigInt::from(r.clone()));
                assert!(
                    (&value % &modulus).is_zero(),
                    "oracle produced a non-root {r} mod {p}^{m}"
                );
                integer_valuation(&value, &p_int)
            })
            .collect();
        OracleReport {
            p: p.clone(),
            m,
            roots,
            valuations,
            elapsed,
        }
    }

    /// Roots congruent to `x0` mod `p`.
    pub fn roots_above(&self, x0: &BigUint) -> Vec<&BigUint> {
        let x0 = x0 % &self.p;
        self.roots.iter().filter(|r| *r % &self.p == x0).collect()
    }
}

fn integer_valuation(n: &BigInt, p: &BigInt) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        rest = q;
        v += 1;
    }
}

/// Every root of `f` mod `p^m`, by evaluating all `p^m` residues.
pub fn brute_force_roots(f: &Poly, p: &BigUint, m: u32, budget: u64) -> Result<OracleReport> {
    if f.is_zero() {
        return Err(Error::EmptyPolynomial);
    }
    let candidates = num_traits::pow(p.clone(), m as usize);
    let modulus = candidates
        .to_u64()
        .filter(|&c| c <= budget)
        .ok_or_else(|| Error::BudgetExceeded {
            candidates: candidates.clone(),
            budget,
        })?;
    let start = Instant::now();
    let coeffs: Vec<u128> = f
        .coeffs()
        .iter()
        .map(|c| {
            u128::from(
                reduce_signed(c, &candidates)
                    .to_u64()
                    .expect("below modulus"),
            )
        })
        .collect();
    let roots: Vec<BigUint> = if modulus <= u64::from(u32::MAX) {
        // acc * x + c < 2^64 when every operand is below 2^32.
        let small: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
        (0..modulus)
            .into_par_iter()
            .filter(|&x| {
                small
                    .iter()
                    .rev()
                    .fold(0u64, |acc, c| (acc * x + c) % modulus)
                    == 0
            })
            .map(BigUint::from)
            .collect()
    } else {
        let wide = u128::from(modulus);
        (0..modulus)
            .into_par_iter()
            .filter(|&x| {
                let x = u128::from(x);
                coeffs
                    .iter()
                    .rev()
                    .fold(0u128, |acc, c| (acc * x + c) % wide)
                    == 0
            })
            .map(BigUint::from)
            .collect()
    };
    Ok(OracleReport::new(f, p, m, roots, start.elapsed()))
}

/// The unique root mod `p^m` above a simple seed, built one digit at a time.
///
/// With `x` a root mod `p^i`, the next digit `d` solves the linear
/// congruence `f(x)/p^i + d f'(x0) = 0 (mod p)`.
pub fn lift_digit_by_digit(f: &Poly, seed: &Seed, ctx: &PadicContext, m: u32) -> Result<BigUint> {
    let k = ctx.working_precision();
    if m > k {
        return Err(Error::PrecisionExceeded {
            requested: m,
            available: k,
        });
    }
    if m == 0 {
        return Ok(BigUint::zero());
    }
    let p = ctx.prime();
    let p_int = BigInt::from(p.clone());
    let x0 = BigInt::from(&seed.x0 % p);
    if !(f.eval_integer(&x0) % &p_int).is_zero() {
        return Err(Error::SingularSeed);
    }
    let d0 = reduce_signed(&f.derivative().eval_integer(&x0), p);
    let d0_inv = d0.modinv(p).ok_or(Error::SingularSeed)?;
    let d0_inv = BigInt::from(d0_inv);

    let mut x = x0;
    let mut p_i = p_int.clone();
    for _ in 1..m {
        let (quot, rem) = f.eval_integer(&x).div_rem(&p_i);
        debug_assert!(rem.is_zero());
        let digit = (-(quot * &d0_inv)).mod_floor(&p_int);
        x += digit * &p_i;
        p_i *= &p_int;
    }
    Ok(x.to_biguint().expect("digits are nonnegative"))
}

/// Outcome of checking a solver root against both oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub m: u32,
    /// The solver root mod `p^m`.
    pub root: BigUint,
    /// Exhaustive-search roots congruent to the seed mod `p`.
    pub brute_force: Vec<BigUint>,
    pub lifted: BigUint,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.brute_force.len() == 1 && self.brute_force[0] == self.root && self.lifted == self.root
    }
}

/// Checks that `root mod p^m` is the unique oracle root above `seed`.
pub fn verify_root(
    f: &Poly,
    seed: &Seed,
    root: &PadicInt,
    m: u32,
    budget: u64,
) -> Result<Verification> {
    let ctx = root.context();
    let report = brute_force_roots(f, ctx.prime(), m, budget)?;
    let lifted = lift_digit_by_digit(f, seed, ctx, m)?;
    Ok(Verification {
        m,
        root: root.truncate(m),
        brute_force: report.roots_above(&seed.x0).into_iter().cloned().collect(),
        lifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(f: &[i64], p: u32, m: u32) -> Vec<u64> {
        brute_force_roots(&Poly::from_i64s(f), &BigUint::from(p), m, DEFAULT_BUDGET)
            .unwrap()
            .roots
            .iter()
            .map(|r| r.to_u64().unwrap())
            .collect()
    }

    fn seed(f: &Poly, p: u32, x0: i64) -> Seed {
        Seed::check(f, &BigUint::from(p), &BigInt::from(x0)).unwrap()
    }

    #[test]
    fn exhaustive_examples() {
        assert_eq!(roots(&[2, 1, 1], 2, 4), vec![5, 10]);
        assert_eq!(roots(&[-2, 0, 1], 7, 3), vec![108, 235]);
        assert_eq!(roots(&[0, 1], 5, 3), vec![0]);
        assert_eq!(roots(&[0, 1], 2, 6), vec![0]);
    }

    #[test]
    fn report_valuations_are_exact() {
        let r =
            brute_force_roots(&Poly::from_i64s(&[2, 1, 1]), &BigUint::from(2u32), 4, 100).unwrap();
        // f(5) = 32, f(10) = 112
        assert_eq!(
            r.valuations,
            vec![Valuation::Finite(5), Valuation::Finite(4)]
        );
        let r = brute_force_roots(&Poly::from_i64s(&[0, 1]), &BigUint::from(3u32), 2, 100).unwrap();
        assert_eq!(r.valuations, vec![Valuation::Infinite]);
    }

    #[test]
    fn budget_is_enforced() {
        let f = Poly::from_i64s(&[-2, 0, 1]);
        assert!(matches!(
            brute_force_roots(&f, &BigUint::from(7u32), 9, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(brute_force_roots(&f, &BigUint::from(7u32), 3, 343).is_ok());
        assert!(brute_force_roots(&f, &BigUint::from(7u32), 3, 342).is_err());
    }

    #[test]
    fn lifting_examples() {
        let ctx = PadicContext::new(7u32, 9, 0).unwrap();
        let f = Poly::from_i64s(&[-2, 0, 1]);
        assert_eq!(
            lift_digit_by_digit(&f, &seed(&f, 7, 3), &ctx, 3).unwrap(),
            BigUint::from(108u32)
        );

        let ctx = PadicContext::new(5u32, 6, 0).unwrap();
        let lin = Poly::from_i64s(&[-1234, 1]);
        assert_eq!(
            lift_digit_by_digit(&lin, &seed(&lin, 5, 1234), &ctx, 4).unwrap(),
            BigUint::from(1234u32 % 625)
        );

        let ctx = PadicContext::new(2u32, 8, 0).unwrap();
        let g = Poly::from_i64s(&[2, 1, 1]);
        assert_eq!(
            lift_digit_by_digit(&g, &seed(&g, 2, 0), &ctx, 4).unwrap(),
            BigUint::from(10u32)
        );
        assert!(matches!(
            lift_digit_by_digit(&g, &seed(&g, 2, 0), &ctx, 9),
            Err(Error::PrecisionExceeded { .. })
        ));
    }

    #[test]
    fn lifting_rejects_singular_seeds() {
        let ctx = PadicContext::new(5u32, 4, 0).unwrap();
        let f = Poly::from_i64s(&[0, 0, 1]);
        let bad = Seed {
            x0: BigUint::zero(),
            f_mod_p: BigUint::zero(),
            fprime_mod_p: BigUint::zero(),
        };
        assert!(matches!(
            lift_digit_by_digit(&f, &bad, &ctx, 2),
            Err(Error::SingularSeed)
        ));
    }

    #[test]
    fn verification_flags_wrong_roots() {
        let ctx = PadicContext::new(7u32, 5, 0).unwrap();
        let f = Poly::from_i64s(&[-2, 0, 1]);
        let s = seed(&f, 7, 3);
        let good = verify_root(&f, &s, &ctx.from_i64(108), 3, DEFAULT_BUDGET).unwrap();
        assert!(good.ok());
        let bad = verify_root(&f, &s, &ctx.from_i64(108 + 49), 3, DEFAULT_BUDGET).unwrap();
        assert!(!bad.ok());
    }
}
