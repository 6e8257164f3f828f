//! Root finding over Z_p: Hensel seeds, iteration steps and solve drivers.

mod driver;
mod order;
mod seed;
mod step;

use std::fmt;
use std::str::FromStr;

pub use driver::{iteration_cap, solve, solve_seeds, RootResult, SolveTrace, TraceEntry};
pub use order::{convergence_order, order_from_valuations, OrderEstimate};
pub use seed::{find_seeds, Seed, SeedSet, ENUMERATION_BOUND};
pub use step::{halley_step, newton_step, olver_step, steffensen_step};

use crate::error::Result;
use crate::padic::PadicInt;
use crate::poly::Poly;

/// Iteration scheme used by [`solve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Halley,
    Newton,
    Olver,
    Steffensen,
}

impl Method {
    /// All methods, sorted by name.
    pub const ALL: [Method; 4] = [
        Method::Halley,
        Method::Newton,
        Method::Olver,
        Method::Steffensen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Halley => "halley",
            Method::Newton => "newton",
            Method::Olver => "olver",
            Method::Steffensen => "steffensen",
        }
    }

    /// Applies one step of the method at `x`.
    pub fn step(self, f: &Poly, x: &PadicInt) -> Result<PadicInt> {
        match self {
            Method::Halley => halley_step(f, x),
            Method::Newton => newton_step(f, x),
            Method::Olver => olver_step(f, x),
            Method::Steffensen => steffensen_step(f, x),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}
