//! Primality testing for the modulus prime.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

const SMALL_PRIMES: [u32; 64] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311,
];

/// Bases 2..=41 make Miller-Rabin deterministic below this bound
/// (3 317 044 064 679 887 385 961 981).
fn deterministic_bound() -> BigUint {
    BigUint::parse_bytes(b"3317044064679887385961981", 10).expect("literal")
}

/// Returns true iff `n` is prime.
///
/// Deterministic below ~3.3e24 (Miller-Rabin with the first 13 prime bases).
/// Above that bound all 64 bases in [`SMALL_PRIMES`] are used, which is
/// probabilistic with error below 4^-64.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &sp in SMALL_PRIMES.iter() {
        let sp = BigUint::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let bases: &[u32] = if *n < deterministic_bound() {
        &SMALL_PRIMES[..13]
    } else {
        &SMALL_PRIMES[..]
    };
    miller_rabin(n, bases)
}

/// Deterministic for all `u64` with the first 12 prime bases.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &sp in SMALL_PRIMES[..12].iter() {
        let sp = u64::from(sp);
        if n == sp {
            return true;
        }
        if n.is_multiple_of(sp) {
            return false;
        }
    }
    let mul = |a: u64, b: u64| (u128::from(a) * u128::from(b) % u128::from(n)) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &b in SMALL_PRIMES[..12].iter() {
        let mut x = pow(u64::from(b), d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin(n: &BigUint, bases: &[u32]) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;

    'witness: for &b in bases {
        let a = BigUint::from(b) % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(limit: usize) -> Vec<bool> {
        let mut is = vec![true; limit + 1];
        is[0] = false;
        is[1] = false;
        let mut i = 2;
        while i * i <= limit {
            if is[i] {
                let mut j = i * i;
                while j <= limit {
                    is[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is
    }

    #[test]
    fn agrees_with_sieve_below_100k() {
        let table = sieve(100_000);
        for (n, &expected) in table.iter().enumerate() {
            assert_eq!(is_prime(&BigUint::from(n)), expected, "n = {n}");
        }
    }

    #[test]
    fn u64_path_agrees_with_bignum_path() {
        let mut n = (1u64 << 62) - 5000;
        while n < (1u64 << 62) {
            assert_eq!(
                is_prime_u64(n),
                miller_rabin(&BigUint::from(n), &SMALL_PRIMES[..13]),
                "{n}"
            );
            n += 1;
        }
        assert!(is_prime_u64(u64::MAX - 58));
        assert!(!is_prime_u64(u64::MAX));
    }

    #[test]
    fn strong_pseudoprimes_are_rejected() {
        // Strong pseudoprimes to several small bases.
        for n in [
            2047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            2_152_302_898_747,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_prime(&BigUint::from(n)), "{n}");
        }
        // psi_12: strong pseudoprime to all bases up to 37.
        let psi12 = BigUint::parse_bytes(b"318665857834031151167461", 10).unwrap();
        assert!(!is_prime(&psi12));
    }

    #[test]
    fn large_known_primes() {
        let m61 = (BigUint::one() << 61) - 1u32;
        let m89 = (BigUint::one() << 89) - 1u32;
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_prime(&m61));
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 + 2u32)));
    }
}
