//! Fixed-precision p-adic integers and polynomial root finding over Z_p.
//!
//! The library computes roots of integer polynomials in the p-adic integers
//! to a requested number of digits. Starting from a simple root modulo `p`
//! (a Hensel seed), it iterates Olver's third-order scheme
//!
//! ```text
//! x_{n+1} = x_n - f(x_n)/f'(x_n) - (1/2) f(x_n)^2 f''(x_n) / f'(x_n)^3
//! ```
//!
//! in Z/p^K. Newton, Halley and Steffensen steps are available for
//! comparison, and [`oracle`] provides brute-force ground truth.
//!
//! ```
//! use padic::{find_seeds, solve, Method, PadicContext, parse_poly};
//!
//! let f = parse_poly("x^2 - 2").unwrap();
//! let ctx = PadicContext::new(7u32, 9, 2).unwrap();
//! let seeds = find_seeds(&f, ctx.prime()).unwrap();
//! let root = solve(&f, &seeds.simple[0], &ctx, Method::Olver).unwrap();
//! let digits: Vec<u32> = root.digits.iter().map(|d| d.try_into().unwrap()).collect();
//! assert_eq!(digits, [3, 1, 2, 6, 1, 2, 1, 2, 4]);
//! ```

pub mod error;
pub mod oracle;
pub mod padic;
pub mod parse;
pub mod poly;
pub mod prime;
pub mod solve;

pub use error::{Error, Result, StopReason};
pub use padic::{from_digits, Norm, PadicContext, PadicInt, Valuation};
pub use parse::{parse_poly, parse_source, render_digits, DigitStyle, ParseError, PolySource};
pub use poly::{Poly, TaylorCoeffs};
pub use solve::{
    convergence_order, find_seeds, iteration_cap, order_from_valuations, solve, solve_seeds,
    Method, OrderEstimate, RootResult, Seed, SeedSet, SolveTrace, TraceEntry,
};
