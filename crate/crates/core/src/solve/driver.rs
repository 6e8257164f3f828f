use num_bigint::BigUint;
use rayon::prelude::*;

use super::{Method, Seed};
use crate::error::{Error, Result, StopReason};
use crate::padic::{PadicContext, PadicInt, Valuation};
use crate::poly::Poly;

/// One iterate of a solve run.
#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub n: u32,
    pub x: PadicInt,
    /// `v_p(f(x_n))`.
    pub fval_valuation: Valuation,
    /// `v_p(x_{n+1} - x_n)`; `None` on the final iterate.
    pub step_valuation: Option<Valuation>,
    /// Reliable digits of `x_{n+1}` as produced by the step.
    pub step_precision: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct SolveTrace {
    pub method: Method,
    pub context: PadicContext,
    pub entries: Vec<TraceEntry>,
}

impl SolveTrace {
    pub fn valuations(&self) -> Vec<Valuation> {
        self.entries.iter().map(|e| e.fval_valuation).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct RootResult {
    pub root: PadicInt,
    /// First `N` digits of the root, least significant first.
    pub digits: Vec<BigUint>,
    pub achieved_valuation: Valuation,
    /// Number of steps applied.
    pub iterations: u32,
    pub trace: SolveTrace,
    pub seed: Seed,
}

/// Step budget for reaching `N` digits.
///
/// `ceil(log_b N) + 2` with `b = 3` for Halley and for Olver at odd `p`,
/// `b = 4` for Olver at `p = 2`, and `b = 2` for Newton and Steffensen.
pub fn iteration_cap(target: u32, p: &BigUint, method: Method) -> u32 {
    let base: u64 = match method {
        Method::Olver if *p == BigUint::from(2u32) => 4,
        Method::Olver | Method::Halley => 3,
        Method::Newton | Method::Steffensen => 2,
    };
    let mut k = 0;
    let mut reach = 1u64;
    while reach < u64::from(target) {
        reach *= base;
        k += 1;
    }
    k + 2
}

/// Iterates `method` from the seed until `v_p(f(x_n)) >= N`.
///
/// At least one step is always taken. Every iterate is reduced mod `p^K`
/// and re-evaluated exactly; a step whose result has fewer than `N`
/// reliable digits stops the run with [`StopReason::PrecisionExhausted`].
pub fn solve(f: &Poly, seed: &Seed, ctx: &PadicContext, method: Method) -> Result<RootResult> {
    let cap = iteration_cap(ctx.target_precision(), ctx.prime(), method);
    solve_with_cap(f, seed, ctx, method, cap)
}

pub(crate) fn solve_with_cap(
    f: &Poly,
    seed: &Seed,
    ctx: &PadicContext,
    method: Method,
    cap: u32,
) -> Result<RootResult> {
    let seed = Seed::check(f, ctx.prime(), &seed.x0.clone().into())?;
    let target = ctx.target_precision();

    let mut trace = SolveTrace {
        method,
        context: ctx.clone(),
        entries: Vec::new(),
    };
    let mut x = ctx.from_biguint(&seed.x0);
    let mut n = 0u32;
    loop {
        let fval_valuation = f.eval(&x)?.valuation();
        trace.entries.push(TraceEntry {
            n,
            x: x.clone(),
            fval_valuation,
            step_valuation: None,
            step_precision: None,
        });
        if n >= 1 && fval_valuation.at_least(target) {
            let digits = x.digits(target)?;
            return Ok(RootResult {
                root: x,
                digits,
                achieved_valuation: fval_valuation,
                iterations: n,
                trace,
                seed,
            });
        }
        if n == cap {
            return Err(not_converged(method, StopReason::IterationCap, trace));
        }

        let next = method.step(f, &x)?;
        let entry = trace.entries.last_mut().expect("pushed above");
        entry.step_valuation = Some(next.sub(&x)?.valuation());
        entry.step_precision = Some(next.precision());
        if next.precision() < target {
            return Err(not_converged(method, StopReason::PrecisionExhausted, trace));
        }
        x = next.as_exact();
        n += 1;
    }
}

fn not_converged(method: Method, reason: StopReason, trace: SolveTrace) -> Error {
    Error::NotConverged {
        method: method.name(),
        reason,
        trace: Box::new(trace),
    }
}

/// Solves every seed in parallel; results keep the order of `seeds`.
pub fn solve_seeds(
    f: &Poly,
    seeds: &[Seed],
    ctx: &PadicContext,
    method: Method,
) -> Vec<Result<RootResult>> {
    seeds
        .par_iter()
        .map(|seed| solve(f, seed, ctx, method))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::find_seeds;
    use num_bigint::BigInt;

    fn digits_u64(r: &RootResult) -> Vec<u64> {
        r.digits
            .iter()
            .map(|d| u64::try_from(d.clone()).unwrap())
            .collect()
    }

    #[test]
    fn caps() {
        let seven = BigUint::from(7u32);
        let two = BigUint::from(2u32);
        assert_eq!(iteration_cap(27, &seven, Method::Olver), 5);
        assert_eq!(iteration_cap(16, &two, Method::Olver), 4);
        assert_eq!(iteration_cap(16, &two, Method::Halley), 5);
        assert_eq!(iteration_cap(9, &seven, Method::Newton), 6);
        for m in Method::ALL {
            assert_eq!(iteration_cap(1, &seven, m), 2);
            assert_eq!(iteration_cap(1, &two, m), 2);
        }
    }

    #[test]
    fn sqrt2_in_z7() {
        let f = Poly::from_i64s(&[-2, 0, 1]);
        let ctx = PadicContext::new(7u32, 9, 2).unwrap();
        let seed = Seed::check(&f, ctx.prime(), &BigInt::from(3)).unwrap();
        let r = solve(&f, &seed, &ctx, Method::Olver).unwrap();
        assert_eq!(digits_u64(&r), vec![3, 1, 2, 6, 1, 2, 1, 2, 4]);
        assert_eq!(r.iterations, 2);
        assert!(r.achieved_valuation.at_least(9));
    }

    #[test]
    fn linear_polynomials_take_one_step() {
        let ctx = PadicContext::new(3u32, 4, 2).unwrap();
        for c in [0i64, 2, 10, -17] {
            let f = Poly::from_i64s(&[-c, 1]);
            let seed = &find_seeds(&f, ctx.prime()).unwrap().simple[0];
            for m in Method::ALL {
                let r = solve(&f, seed, &ctx, m).unwrap();
                assert_eq!(r.iterations, 1, "{m} c={c}");
                assert_eq!(r.root, ctx.from_i64(c));
            }
        }
        let r = solve(
            &Poly::from_i64s(&[0, 1]),
            &Seed::check(&Poly::from_i64s(&[0, 1]), ctx.prime(), &BigInt::from(0)).unwrap(),
            &ctx,
            Method::Olver,
        )
        .unwrap();
        assert_eq!(digits_u64(&r), vec![0, 0, 0, 0]);
    }

    #[test]
    fn two_adic_example_trace() {
        let f = Poly::from_i64s(&[2, 1, 1]);
        let ctx = PadicContext::new(2u32, 16, 2).unwrap();
        let seed = Seed::check(&f, ctx.prime(), &BigInt::from(0)).unwrap();
        let r = solve(&f, &seed, &ctx, Method::Olver).unwrap();
        let v = r.trace.valuations();
        assert!(v[0].at_least(1) && v[1].at_least(4) && v[2].at_least(16));
        assert!(f.eval(&r.root).unwrap().valuation().at_least(16));
    }

    #[test]
    fn invalid_seed_is_rejected() {
        let f = Poly::from_i64s(&[-2, 0, 1]);
        let ctx = PadicContext::new(7u32, 5, 2).unwrap();
        let bogus = Seed {
            x0: BigUint::from(2u32),
            f_mod_p: BigUint::from(0u32),
            fprime_mod_p: BigUint::from(4u32),
        };
        assert!(matches!(
            solve(&f, &bogus, &ctx, Method::Olver),
            Err(Error::InvalidSeed { .. })
        ));
    }

    #[test]
    fn iteration_cap_is_enforced() {
        let f = Poly::from_i64s(&[-2, 0, 1]);
        let ctx = PadicContext::new(7u32, 81, 2).unwrap();
        let seed = Seed::check(&f, ctx.prime(), &BigInt::from(3)).unwrap();
        let ok = solve(&f, &seed, &ctx, Method::Newton).unwrap();
        assert_eq!(ok.iterations, 7);

        // Newton needs 7 steps for 81 digits; 3 is not enough.
        match solve_with_cap(&f, &seed, &ctx, Method::Newton, 3) {
            Err(Error::NotConverged { reason, trace, .. }) => {
                assert_eq!(reason, StopReason::IterationCap);
                assert_eq!(trace.len(), 4);
                let v: Vec<_> = trace
                    .valuations()
                    .iter()
                    .map(|v| v.finite().unwrap())
                    .collect();
                assert_eq!(v, vec![1, 2, 4, 8]);
            }
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let f = Poly::from_i64s(&[-1, 0, 0, 0, 1]);
        let ctx = PadicContext::new(13u32, 40, 2).unwrap();
        let seeds = find_seeds(&f, ctx.prime()).unwrap().simple;
        assert_eq!(seeds.len(), 4);
        let par = solve_seeds(&f, &seeds, &ctx, Method::Olver);
        for (seed, r) in seeds.iter().zip(par) {
            let r = r.unwrap();
            let s = solve(&f, seed, &ctx, Method::Olver).unwrap();
            assert_eq!(r.root, s.root);
            assert_eq!(r.seed, *seed);
        }
    }
}
