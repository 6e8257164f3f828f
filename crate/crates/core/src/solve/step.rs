//! Single iteration steps.
//!
//! Every step reads `f(x)`, `f'(x)` and `f''(x)/2` from one Taylor shift at
//! `x` (Steffensen only needs values of `f`). The second-order terms are
//! written with `f''/2` so that no step divides by 2: all denominators are
//! units whenever `f'(x)` is a unit and `f(x) = 0 mod p`.

use crate::error::{Error, Result};
use crate::padic::PadicInt;
use crate::poly::Poly;

struct Local {
    f: PadicInt,
    d1: PadicInt,
    half_d2: PadicInt,
}

fn local(f: &Poly, x: &PadicInt) -> Result<Local> {
    let t = f.taylor_coeffs(x)?;
    let d1 = t.first_derivative();
    if !d1.is_unit() {
        return Err(Error::SingularPoint);
    }
    Ok(Local {
        f: t.value(),
        d1,
        half_d2: t.half_second_derivative(),
    })
}

/// `x - f/f' - (1/2) f^2 f'' / f'^3`.
pub fn olver_step(f: &Poly, x: &PadicInt) -> Result<PadicInt> {
    let Local { f: fx, d1, half_d2 } = local(f, x)?;
    let newton = fx.exact_div(&d1)?;
    let d1_cubed = d1.mul(&d1)?.mul(&d1)?;
    let curvature = fx.mul(&fx)?.mul(&half_d2)?.exact_div(&d1_cubed)?;
    x.sub(&newton)?.sub(&curvature)
}

/// `x - f/f'`.
pub fn newton_step(f: &Poly, x: &PadicInt) -> Result<PadicInt> {
    let Local { f: fx, d1, .. } = local(f, x)?;
    x.sub(&fx.exact_div(&d1)?)
}

/// `x - 2 f f' / (2 f'^2 - f f'')`, evaluated as `x - f f' / (f'^2 - f f''/2)`.
pub fn halley_step(f: &Poly, x: &PadicInt) -> Result<PadicInt> {
    let Local { f: fx, d1, half_d2 } = local(f, x)?;
    let den = d1.mul(&d1)?.sub(&fx.mul(&half_d2)?)?;
    if !den.is_unit() {
        return Err(Error::SingularPoint);
    }
    x.sub(&fx.mul(&d1)?.exact_div(&den)?)
}

/// Derivative-free step `x - f(x)^2 / (f(x + f(x)) - f(x))`.
///
/// The divided difference `g = (f(x + f(x)) - f(x)) / f(x)` loses `v(f(x))`
/// digits, which the final `f(x) / g` recovers.
pub fn steffensen_step(f: &Poly, x: &PadicInt) -> Result<PadicInt> {
    let fx = f.eval(x)?;
    if fx.is_zero() {
        return Ok(x.clone());
    }
    let shifted = f.eval(&x.add(&fx)?)?;
    let g = shifted.sub(&fx)?.exact_div(&fx)?;
    if !g.is_unit() {
        return Err(Error::SingularPoint);
    }
    x.sub(&fx.exact_div(&g)?)
}
