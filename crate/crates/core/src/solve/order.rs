use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::SolveTrace;
use crate::error::{Error, Result};
use crate::padic::Valuation;

/// Measured growth rate of `v_p(f(x_n))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderEstimate {
    /// Least-squares slope of `v_{n+1}` against `v_n`.
    pub order: BigRational,
    /// The `(v_n, v_{n+1})` pairs that entered the fit.
    pub pairs: Vec<(u32, u32)>,
}

impl OrderEstimate {
    pub fn as_f64(&self) -> f64 {
        self.order.to_f64().unwrap_or(f64::NAN)
    }
}

/// Convergence order of a solve run, read off its valuation sequence.
pub fn convergence_order(trace: &SolveTrace) -> Result<OrderEstimate> {
    order_from_valuations(&trace.valuations(), trace.context.working_precision())
}

/// Fits `v_{n+1} = q v_n + c` by ordinary least squares over consecutive
/// valuations and returns `q`.
///
/// An order-`q` method satisfies `v_{n+1} >= q v_n`, usually with a
/// constant offset, so the slope recovers `q` while the intercept absorbs
/// the offset. Saturated entries (`Infinite`, or `>= working_precision`)
/// are dropped; the remaining valuations must be strictly increasing and
/// there must be at least three of them.
pub fn order_from_valuations(
    valuations: &[Valuation],
    working_precision: u32,
) -> Result<OrderEstimate> {
    let usable: Vec<u32> = valuations
        .iter()
        .filter_map(|v| v.finite())
        .filter(|&v| v < working_precision)
        .collect();
    let increasing = usable.windows(2).all(|w| w[0] < w[1]);
    if usable.len() < 3 || !increasing {
        return Err(Error::InsufficientTrace {
            usable: usable.len(),
        });
    }
    let pairs: Vec<(u32, u32)> = usable.windows(2).map(|w| (w[0], w[1])).collect();

    let n = BigInt::from(pairs.len());
    let (mut sx, mut sy, mut sxx, mut sxy) = (
        BigInt::default(),
        BigInt::default(),
        BigInt::default(),
        BigInt::default(),
    );
    for &(a, b) in &pairs {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        sxx += &a * &a;
        sxy += &a * &b;
        sx += a;
        sy += b;
    }
    let num = &n * sxy - &sx * &sy;
    let den = &n * sxx - &sx * &sx;
    Ok(OrderEstimate {
        order: BigRational::new(num, den),
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finite(vs: &[u32]) -> Vec<Valuation> {
        vs.iter().map(|&v| Valuation::Finite(v)).collect()
    }

    #[test]
    fn exact_geometric_sequences() {
        let o = order_from_valuations(&finite(&[1, 3, 9, 27]), 100).unwrap();
        assert_eq!(o.order, BigRational::from_integer(3.into()));
        assert_eq!(o.pairs, vec![(1, 3), (3, 9), (9, 27)]);
        let o = order_from_valuations(&finite(&[1, 4, 16]), 100).unwrap();
        assert_eq!(o.order, BigRational::from_integer(4.into()));
        let o = order_from_valuations(&finite(&[1, 2, 4, 8]), 100).unwrap();
        assert_eq!(o.as_f64(), 2.0);
    }

    #[test]
    fn offsets_do_not_bias_the_slope() {
        // v -> 2v + 1
        let o = order_from_valuations(&finite(&[1, 3, 7, 15, 31]), 100).unwrap();
        assert_eq!(o.as_f64(), 2.0);
    }

    #[test]
    fn saturated_entries_are_dropped() {
        let mut v = finite(&[1, 3, 9, 27]);
        v.push(Valuation::Infinite);
        let o = order_from_valuations(&v, 30).unwrap();
        assert_eq!(o.pairs.len(), 3);
        // 81 >= K is saturated
        let o = order_from_valuations(&finite(&[1, 3, 9, 27, 81]), 81).unwrap();
        assert_eq!(o.pairs.len(), 3);
    }

    #[test]
    fn insufficient_traces() {
        assert!(matches!(
            order_from_valuations(&finite(&[1, 3]), 100),
            Err(Error::InsufficientTrace { usable: 2 })
        ));
        assert!(matches!(
            order_from_valuations(
                &[
                    Valuation::Finite(1),
                    Valuation::Infinite,
                    Valuation::Infinite
                ],
                10
            ),
            Err(Error::InsufficientTrace { usable: 1 })
        ));
        assert!(matches!(
            order_from_valuations(&finite(&[2, 2, 2]), 10),
            Err(Error::InsufficientTrace { .. })
        ));
    }
}
