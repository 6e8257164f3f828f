//! Truncated p-adic integers: exact arithmetic in Z/p^K.
//!
//! A [`PadicInt`] is a canonical residue in `[0, p^K)` together with the
//! [`PadicContext`] that fixes `p` and the working precision `K = N + G`
//! (target digits plus guard digits). Every value also carries an absolute
//! precision: the number of low digits that agree with the exact p-adic
//! quantity it approximates. Ring operations keep it at `K`; dividing by a
//! non-unit lowers it.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::prime::is_prime;

#[derive(Debug)]
struct ContextInner {
    p: BigUint,
    target: u32,
    guard: u32,
    modulus: BigUint,
}

/// Prime and precision shared by a family of [`PadicInt`] values.
///
/// Cloning is cheap; clones compare equal and interoperate.
#[derive(Clone, Debug)]
pub struct PadicContext(Arc<ContextInner>);

impl PadicContext {
    /// Builds a context for prime `p` with `target` requested digits and
    /// `guard` extra working digits.
    pub fn new(p: impl Into<BigUint>, target: u32, guard: u32) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::NonPrime(p));
        }
        if target < 1 {
            return Err(Error::InvalidPrecision(target));
        }
        let working = target
            .checked_add(guard)
            .ok_or(Error::InvalidPrecision(target))?;
        let modulus = num_traits::pow(p.clone(), working as usize);
        Ok(PadicContext(Arc::new(ContextInner {
            p,
            target,
            guard,
            modulus,
        })))
    }

    pub fn prime(&self) -> &BigUint {
        &self.0.p
    }

    /// Requested digits `N`.
    pub fn target_precision(&self) -> u32 {
        self.0.target
    }

    pub fn guard_digits(&self) -> u32 {
        self.0.guard
    }

    /// Working precision `K = N + G`.
    pub fn working_precision(&self) -> u32 {
        self.0.target + self.0.guard
    }

    /// `p^K`.
    pub fn modulus(&self) -> &BigUint {
        &self.0.modulus
    }

    pub fn is_two(&self) -> bool {
        self.0.p == BigUint::from(2u32)
    }

    /// `p^k` as an integer.
    pub fn prime_power(&self, k: u32) -> BigUint {
        num_traits::pow(self.0.p.clone(), k as usize)
    }

    pub fn zero(&self) -> PadicInt {
        PadicInt::exact(BigUint::zero(), self)
    }

    pub fn one(&self) -> PadicInt {
        PadicInt::exact(BigUint::one(), self)
    }

    /// Embeds a (possibly negative) integer as its canonical residue.
    pub fn from_integer(&self, n: &BigInt) -> PadicInt {
        PadicInt::exact(reduce_signed(n, self.modulus()), self)
    }

    pub fn from_i64(&self, n: i64) -> PadicInt {
        self.from_integer(&BigInt::from(n))
    }

    pub fn from_biguint(&self, n: &BigUint) -> PadicInt {
        PadicInt::exact(n % self.modulus(), self)
    }
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.target == other.0.target
                && self.0.guard == other.0.guard)
    }
}

impl Eq for PadicContext {}

/// Canonical representative of `n mod m` in `[0, m)`.
pub(crate) fn reduce_signed(n: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, m.clone());
    n.mod_floor(&m)
        .to_biguint()
        .expect("mod_floor by a positive modulus is nonnegative")
}

/// p-adic valuation of a truncated residue.
///
/// `Infinite` stands for the zero residue, whose true valuation is only
/// known to be at least `K`. It orders above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// `self >= m`, with `Infinite` at least anything.
    pub fn at_least(self, m: u32) -> bool {
        match self {
            Valuation::Finite(v) => v >= m,
            Valuation::Infinite => true,
        }
    }

    /// Finite value, or `cap` for the zero residue.
    pub fn or_cap(self, cap: u32) -> u32 {
        self.finite().map_or(cap, |v| v.min(cap))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Exact p-adic norm `p^-v` of a residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Norm {
    pub value: BigRational,
    /// Set for the zero residue: the true norm is only known to be `<= p^-K`.
    pub floor: bool,
}

/// An element of Z/p^K, the truncation of a p-adic integer to `K` digits.
#[derive(Clone, Debug)]
pub struct PadicInt {
    value: BigUint,
    precision: u32,
    ctx: PadicContext,
}

impl PartialEq for PadicInt {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.value == other.value
    }
}

impl Eq for PadicInt {}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (mod {}^{})",
            self.value,
            self.ctx.prime(),
            self.ctx.working_precision()
        )
    }
}

impl PadicInt {
    fn exact(value: BigUint, ctx: &PadicContext) -> Self {
        debug_assert!(value < *ctx.modulus());
        PadicInt {
            value,
            precision: ctx.working_precision(),
            ctx: ctx.clone(),
        }
    }

    fn with_precision(value: BigUint, precision: u32, ctx: &PadicContext) -> Self {
        PadicInt {
            value,
            precision: precision.min(ctx.working_precision()),
            ctx: ctx.clone(),
        }
    }

    /// The canonical representative in `[0, p^K)`.
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    /// Number of low digits known to be exact.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The same residue, treated as an exact integer (precision `K`).
    pub fn as_exact(&self) -> PadicInt {
        PadicInt::exact(self.value.clone(), &self.ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Signed representative in `(-p^K/2, p^K/2]`.
    pub fn to_signed(&self) -> BigInt {
        let v = BigInt::from_biguint(Sign::Plus, self.value.clone());
        let m = BigInt::from_biguint(Sign::Plus, self.ctx.modulus().clone());
        if &v * 2 > m {
            v - m
        } else {
            v
        }
    }

    fn check(&self, other: &PadicInt) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Valuation clamped to this value's precision; used for precision bookkeeping.
    fn effective_valuation(&self) -> u32 {
        self.valuation().or_cap(self.precision)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, rhs: &PadicInt) -> Result<PadicInt> {
        self.check(rhs)?;
        let mut v = &self.value + &rhs.value;
        if v >= *self.ctx.modulus() {
            v -= self.ctx.modulus();
        }
        Ok(PadicInt::with_precision(
            v,
            self.precision.min(rhs.precision),
            &self.ctx,
        ))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, rhs: &PadicInt) -> Result<PadicInt> {
        self.check(rhs)?;
        let v = if self.value >= rhs.value {
            &self.value - &rhs.value
        } else {
            self.ctx.modulus() - &rhs.value + &self.value
        };
        Ok(PadicInt::with_precision(
            v,
            self.precision.min(rhs.precision),
            &self.ctx,
        ))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, rhs: &PadicInt) -> Result<PadicInt> {
        self.check(rhs)?;
        let v = (&self.value * &rhs.value) % self.ctx.modulus();
        let precision = (self.precision.saturating_add(rhs.effective_valuation()))
            .min(rhs.precision.saturating_add(self.effective_valuation()));
        Ok(PadicInt::with_precision(v, precision, &self.ctx))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> PadicInt {
        let v = if self.value.is_zero() {
            BigUint::zero()
        } else {
            self.ctx.modulus() - &self.value
        };
        PadicInt::with_precision(v, self.precision, &self.ctx)
    }

    pub fn pow(&self, e: u32) -> PadicInt {
        let mut acc = self.ctx.one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same context");
        }
        acc
    }

    /// Largest `v` with `p^v | value`; `Infinite` for the zero residue.
    pub fn valuation(&self) -> Valuation {
        if self.value.is_zero() {
            return Valuation::Infinite;
        }
        let p = self.ctx.prime();
        let mut v = 0;
        let mut rest = self.value.clone();
        loop {
            let (q, r) = rest.div_rem(p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            v += 1;
        }
        Valuation::Finite(v)
    }

    /// `p^-v` as an exact rational.
    pub fn norm(&self) -> Norm {
        match self.valuation() {
            Valuation::Finite(v) => Norm {
                value: BigRational::new(BigInt::one(), BigInt::from(self.ctx.prime_power(v))),
                floor: false,
            },
            Valuation::Infinite => Norm {
                value: BigRational::zero(),
                floor: true,
            },
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    /// Inverse of a unit modulo `p^K`.
    pub fn invert_unit(&self) -> Result<PadicInt> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let inv = self
            .value
            .modinv(self.ctx.modulus())
            .ok_or(Error::NotAUnit)?;
        Ok(PadicInt::with_precision(inv, self.precision, &self.ctx))
    }

    /// Exact quotient `num / den` in Z_p.
    ///
    /// The result is `p^(vn-vd) * (num/p^vn) * (den/p^vd)^-1`. Dividing by
    /// `p^vd` costs `vd` digits, which is reflected in the result's precision.
    pub fn exact_div(&self, den: &PadicInt) -> Result<PadicInt> {
        self.check(den)?;
        let vd = den
            .valuation()
            .finite()
            .ok_or(Error::DivisionByZeroResidue)?;
        let p = self.ctx.prime();
        let m = self.ctx.modulus();

        let precision_loss = |vn: u32| {
            let from_num = self.precision.saturating_sub(vd);
            let from_den = (den.precision + vn).saturating_sub(2 * vd);
            from_num.min(from_den)
        };

        let vn = match self.valuation() {
            Valuation::Infinite => {
                let vn = self.precision;
                return Ok(PadicInt::with_precision(
                    BigUint::zero(),
                    precision_loss(vn),
                    &self.ctx,
                ));
            }
            Valuation::Finite(vn) => vn,
        };
        if vn < vd {
            return Err(Error::ValuationUnderflow { num: vn, den: vd });
        }
        let num_unit = &self.value / self.ctx.prime_power(vn);
        let den_unit = &den.value / self.ctx.prime_power(vd);
        let den_inv = den_unit.modinv(m).ok_or(Error::NotAUnit)?;
        let shift = num_traits::pow(p.clone(), (vn - vd) as usize);
        let q = (shift * num_unit % m) * den_inv % m;
        Ok(PadicInt::with_precision(q, precision_loss(vn), &self.ctx))
    }

    /// First `count` canonical digits, least significant first.
    pub fn digits(&self, count: u32) -> Result<Vec<BigUint>> {
        let k = self.ctx.working_precision();
        if count > k {
            return Err(Error::PrecisionExceeded {
                requested: count,
                available: k,
            });
        }
        let p = self.ctx.prime();
        let mut rest = self.value.clone();
        let mut out = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let (q, r) = rest.div_rem(p);
            out.push(r);
            rest = q;
        }
        Ok(out)
    }

    /// `p^m | (self - other)`, equivalently `|self - other|_p <= p^-m`.
    pub fn congruent(&self, other: &PadicInt, m: u32) -> Result<bool> {
        let k = self.ctx.working_precision();
        if m > k {
            return Err(Error::PrecisionExceeded {
                requested: m,
                available: k,
            });
        }
        Ok(self.sub(other)?.valuation().at_least(m))
    }

    /// Residue modulo `p^m` for `m <= K`.
    pub fn truncate(&self, m: u32) -> BigUint {
        &self.value % self.ctx.prime_power(m.min(self.ctx.working_precision()))
    }
}

impl PartialOrd for Norm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.value.cmp(&other.value))
    }
}

/// Integer from little-endian base-`p` digits.
pub fn from_digits(digits: &[BigUint], p: &BigUint) -> BigUint {
    digits
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, d| acc * p + d)
}
