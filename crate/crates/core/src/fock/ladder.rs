//! Ladder coefficients and the action of the ladder operators on the
//! weighted polynomial family `P(t) * (cos delta phi)^{s_max}`,
//! `t = tan(delta phi) / delta`.
//!
//! In the phase representation `x = i d/dphi` and `Delta I^{-1} = i t`, and
//! on the family `d/dphi (P w) = (P' (1 + delta^2 t^2) - t P) w`. Writing
//! `A(s) = omega * a_s` and `A^dagger(s) = omega * c_s` with
//! `omega = -i/sqrt(2)`:
//!
//! ```text
//! a_s(P) = delta^2 s t P - (1 + delta^2 t^2) P'
//! c_s(P) = (2 - delta^2 s) t P - (1 + delta^2 t^2) P'
//! ```
//!
//! `c_s` is exactly the deformed Hermite recurrence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{rat, Poly, SqrtRational};
use crate::params::DeformationParam;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderCoefficients {
    pub alpha: SqrtRational,
    pub beta: SqrtRational,
}

/// `alpha(s)^2 = s - (delta^2/2) s (s-1)`; also equals `alpha(s) beta(s-1)`.
pub fn alpha_sq(params: &DeformationParam, s: i64) -> BigRational {
    let s_r = BigRational::from_integer(BigInt::from(s));
    &s_r - params.delta_sq() * rat(1, 2) * BigInt::from(s) * BigInt::from(s - 1)
}

/// `beta(s)^2 = s + 1 - (delta^2/2) s (s+1)`.
pub fn beta_sq(params: &DeformationParam, s: i64) -> BigRational {
    alpha_sq(params, s + 1)
}

pub(crate) fn check_state_index(params: &DeformationParam, s: i64) -> Result<()> {
    let max = params.s_max() as i64;
    if !(0..=max).contains(&s) {
        return Err(Error::IndexOutOfRange { index: s, min: 0, max });
    }
    Ok(())
}

pub fn ladder_coefficients(params: &DeformationParam, s: i64) -> Result<LadderCoefficients> {
    check_state_index(params, s)?;
    let alpha = SqrtRational::new(alpha_sq(params, s)).ok_or(Error::IndexOutOfRange {
        index: s,
        min: 0,
        max: params.s_max() as i64,
    })?;
    let beta = SqrtRational::new(beta_sq(params, s)).ok_or(Error::IndexOutOfRange {
        index: s,
        min: 0,
        max: params.s_max() as i64,
    })?;
    Ok(LadderCoefficients { alpha, beta })
}

/// `1 + delta^2 t^2`, the multiplier of `I^{-2}` (`sec^2`) on the family.
pub fn sec_sq(params: &DeformationParam) -> Poly {
    Poly::from_coeffs(vec![BigRational::one(), BigRational::zero(), params.delta_sq().clone()])
}

fn t_times(p: &Poly, c: &BigRational) -> Poly {
    p.shift(1).scale(c)
}

pub fn annihilation_poly(params: &DeformationParam, s: i64, p: &Poly) -> Poly {
    let c = params.delta_sq() * BigInt::from(s);
    &t_times(p, &c) - &(&sec_sq(params) * &p.derivative())
}

pub fn creation_poly(params: &DeformationParam, s: i64, p: &Poly) -> Poly {
    let c = BigRational::from_integer(2.into()) - params.delta_sq() * BigInt::from(s);
    &t_times(p, &c) - &(&sec_sq(params) * &p.derivative())
}

/// `x / sqrt(2)` on the family, derived directly from `x = i d/dphi`:
/// `omega * (t P - (1 + delta^2 t^2) P')`; returns the polynomial part.
pub fn scaled_position_poly(params: &DeformationParam, p: &Poly) -> Poly {
    &p.shift(1) - &(&sec_sq(params) * &p.derivative())
}
