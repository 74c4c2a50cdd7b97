use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ladder::{annihilation_poly, check_state_index, creation_poly, ladder_coefficients};
use crate::error::{Error, Result};
use crate::numerics::{rat, rational_to_f64, Poly, SqrtRational};
use crate::params::DeformationParam;

/// A vector of the deformed Fock space in the phase representation:
///
/// ```text
/// pi^{-1/4} * (-i)^phase_power * coefficient * P(t) * (cos delta phi)^weight_exponent
/// ```
///
/// with `t = tan(delta phi) / delta`. The coefficient is kept as an exact
/// square root so that normalizations involving `sqrt(2)` and `beta(s)` stay
/// exact. States are never normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockState {
    index: i64,
    poly: Poly,
    weight_exponent: u32,
    phase_power: u8,
    coefficient: SqrtRational,
}

impl FockState {
    pub fn new(index: i64, poly: Poly, weight_exponent: u32, phase_power: u8, coefficient: SqrtRational) -> Self {
        FockState { index, poly, weight_exponent, phase_power: phase_power % 4, coefficient }
    }

    /// Nominal occupation label. After a ladder step it tracks the target
    /// label regardless of whether the step matched the state.
    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn weight_exponent(&self) -> u32 {
        self.weight_exponent
    }

    pub fn phase_power(&self) -> u8 {
        self.phase_power
    }

    pub fn coefficient(&self) -> &SqrtRational {
        &self.coefficient
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() || self.coefficient.is_zero()
    }

    pub fn scaled(&self, c: &SqrtRational) -> FockState {
        FockState { coefficient: self.coefficient.mul(c), ..self.clone() }
    }

    /// Divides the prefactor by `c`; `None` if `c` is zero.
    pub fn scaled_inv(&self, c: &SqrtRational) -> Option<FockState> {
        Some(FockState { coefficient: self.coefficient.div(c)?, ..self.clone() })
    }

    pub fn scale_rational(&self, q: &BigRational) -> FockState {
        FockState { poly: self.poly.scale(q), ..self.clone() }
    }

    /// The polynomial `Q` with `self = reference_prefactor * Q(t) * w`, where
    /// the reference prefactor is `(-i)^k c` of `reference`. Fails when the
    /// ratio of prefactors is not a real rational number.
    pub fn relative_to(&self, reference: &FockState) -> Result<Poly> {
        if self.weight_exponent != reference.weight_exponent {
            return Err(Error::WeightMismatch { expected: reference.weight_exponent, found: self.weight_exponent });
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let turn = (4 + self.phase_power - reference.phase_power) % 4;
        if turn % 2 == 1 || reference.coefficient.is_zero() {
            return Err(Error::IncommensurablePrefactor);
        }
        let ratio = self
            .coefficient
            .div(&reference.coefficient)
            .and_then(|r| r.to_rational())
            .ok_or(Error::IncommensurablePrefactor)?;
        let signed = if turn == 2 { -ratio } else { ratio };
        Ok(self.poly.scale(&signed))
    }

    /// `self - other`, written in the prefactor of `other`.
    pub fn residual_against(&self, other: &FockState) -> Result<Poly> {
        Ok(&self.relative_to(other)? - &other.poly)
    }

    /// `a * self + b * other` in the prefactor of `self`.
    pub fn combine(&self, a: &BigRational, other: &FockState, b: &BigRational) -> Result<FockState> {
        let q = other.relative_to(self)?;
        let poly = &self.poly.scale(a) + &q.scale(b);
        Ok(FockState { poly, ..self.clone() })
    }

    /// Real amplitude `pi^{-1/4} c P(t) (cos delta phi)^n` at a phase, without
    /// the `(-i)^k` phase. Uses `t^k cos^n = delta^{-k} sin^k cos^{n-k}` for
    /// `k <= n` so that the value stays finite up to the edges of the period.
    pub fn amplitude(&self, params: &DeformationParam, phi: f64) -> f64 {
        let delta = params.delta_f64();
        let (sin, cos) = (delta * phi).sin_cos();
        let n = self.weight_exponent as i32;
        let sum: f64 = self
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let k = k as i32;
                let trig = if k <= n { sin.powi(k) * cos.powi(n - k) } else { (sin / cos).powi(k) * cos.powi(n) };
                rational_to_f64(c) * delta.powi(-k) * trig
            })
            .sum();
        std::f64::consts::PI.powf(-0.25) * self.coefficient.to_f64() * sum
    }

    /// Complex value including the `(-i)^k` phase.
    pub fn value(&self, params: &DeformationParam, phi: f64) -> Complex64 {
        let unit = match self.phase_power {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
        unit * self.amplitude(params, phi)
    }

    /// The state `d/dphi` applied to `self`; exact, same prefactor.
    pub fn phase_derivative(&self, params: &DeformationParam) -> FockState {
        let g = super::ladder::sec_sq(params);
        let poly = &(&self.poly.derivative() * &g) - &self.poly.shift(1);
        FockState { poly, ..self.clone() }
    }
}

fn sqrt_half() -> SqrtRational {
    SqrtRational::new(rat(1, 2)).expect("positive")
}

fn check_family(params: &DeformationParam, state: &FockState) -> Result<()> {
    if state.weight_exponent != params.s_max() {
        return Err(Error::WeightMismatch { expected: params.s_max(), found: state.weight_exponent });
    }
    Ok(())
}

/// `|0> = pi^{-1/4} (cos delta phi)^{s_max}`.
pub fn vacuum_state(params: &DeformationParam) -> FockState {
    FockState::new(0, Poly::one(), params.s_max(), 0, SqrtRational::one())
}

/// `A(s)` applied to `state`. The operator itself is defined for every `s`
/// in `0..=s_max`; only its action on the matching state is a ladder step.
pub fn apply_annihilation(params: &DeformationParam, s: i64, state: &FockState) -> Result<FockState> {
    check_state_index(params, s)?;
    check_family(params, state)?;
    Ok(FockState::new(
        state.index - 1,
        annihilation_poly(params, s, &state.poly),
        state.weight_exponent,
        state.phase_power + 1,
        state.coefficient.mul(&sqrt_half()),
    ))
}

pub fn apply_creation(params: &DeformationParam, s: i64, state: &FockState) -> Result<FockState> {
    check_state_index(params, s)?;
    check_family(params, state)?;
    Ok(FockState::new(
        state.index + 1,
        creation_poly(params, s, &state.poly),
        state.weight_exponent,
        state.phase_power + 1,
        state.coefficient.mul(&sqrt_half()),
    ))
}

/// `|0>, ..., |s_max>` built by `|s+1> = A^dagger(s)|s> / beta(s)`.
pub fn build_states(params: &DeformationParam) -> Result<Vec<FockState>> {
    let mut states = vec![vacuum_state(params)];
    for s in 0..params.s_max() as i64 {
        let beta = ladder_coefficients(params, s)?.beta;
        let raised = apply_creation(params, s, &states[s as usize])?;
        states.push(raised.scaled_inv(&beta).ok_or(Error::IncommensurablePrefactor)?);
    }
    Ok(states)
}

/// `|s_max + 1>` formally, from one more creation step with
/// `beta(s_max) = sqrt((s_max + 1)/2)`.
pub fn state_past_truncation(params: &DeformationParam, states: &[FockState]) -> Result<FockState> {
    let top = states.last().ok_or(Error::IndexOutOfRange { index: 0, min: 0, max: 0 })?;
    let s_max = params.s_max() as i64;
    let beta = SqrtRational::new(rat(s_max + 1, 2)).expect("positive");
    let raised = apply_creation(params, s_max, top)?;
    raised.scaled_inv(&beta).ok_or(Error::IncommensurablePrefactor)
}

/// The exact normalization product `(1/sqrt 2)^s prod_{s' < s} 1/beta(s')`,
/// as a square-root radicand.
pub fn expected_coefficient(params: &DeformationParam, s: i64) -> Result<SqrtRational> {
    check_state_index(params, s)?;
    let mut radicand = BigRational::one();
    for sp in 0..s {
        let beta_sq = super::ladder::beta_sq(params, sp);
        radicand /= beta_sq * BigInt::from(2);
    }
    Ok(SqrtRational::new(radicand).expect("positive"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::hermite_delta_rec;

    fn p(s_max: u32) -> DeformationParam {
        DeformationParam::new(s_max).unwrap()
    }

    #[test]
    fn states_carry_deformed_hermite_polynomials() {
        for s_max in 1..=10 {
            let params = p(s_max);
            let states = build_states(&params).unwrap();
            assert_eq!(states.len(), s_max as usize + 1);
            for (s, st) in states.iter().enumerate() {
                assert_eq!(st.index(), s as i64);
                assert_eq!(st.poly(), &hermite_delta_rec(&params, s as i64).unwrap());
                assert_eq!(st.phase_power(), (s % 4) as u8);
                assert_eq!(st.coefficient(), &expected_coefficient(&params, s as i64).unwrap());
            }
        }
    }

    #[test]
    fn vacuum_is_annihilated() {
        for s_max in 1..6 {
            let params = p(s_max);
            let out = apply_annihilation(&params, 0, &vacuum_state(&params)).unwrap();
            assert!(out.is_zero());
        }
    }

    #[test]
    fn first_state_example() {
        let params = p(3);
        let one = apply_creation(&params, 0, &vacuum_state(&params)).unwrap();
        assert_eq!(one.poly(), &Poly::from_ints(&[0, 2]));
        assert_eq!(one.coefficient().radicand(), &rat(1, 2));
        assert_eq!(one.phase_power(), 1);
    }

    #[test]
    fn rejects_out_of_range_and_foreign_states() {
        let params = p(3);
        let vac = vacuum_state(&params);
        assert!(apply_creation(&params, 4, &vac).is_err());
        assert!(apply_annihilation(&params, -1, &vac).is_err());
        let foreign = vacuum_state(&p(4));
        assert!(matches!(apply_creation(&params, 0, &foreign), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn relative_to_handles_phase_and_radicals() {
        let base = FockState::new(0, Poly::from_ints(&[1, 1]), 2, 1, SqrtRational::new(rat(1, 2)).unwrap());
        let other = FockState::new(0, Poly::from_ints(&[3]), 2, 3, SqrtRational::new(rat(9, 2)).unwrap());
        // (-i)^2 * 3 * 3 relative
        assert_eq!(other.relative_to(&base).unwrap(), Poly::from_ints(&[-9]));
        let odd = FockState::new(0, Poly::one(), 2, 0, SqrtRational::one());
        assert!(odd.relative_to(&base).is_err());
        let irrational = FockState::new(0, Poly::one(), 2, 1, SqrtRational::one());
        assert!(irrational.relative_to(&base).is_err());
    }

    #[test]
    fn amplitude_matches_tangent_form() {
        let params = p(3);
        let states = build_states(&params).unwrap();
        let delta = params.delta_f64();
        for st in &states {
            for phi in [-2.0, -0.3, 0.0, 0.9, 2.5] {
                let t = (delta * phi).tan() / delta;
                let direct = std::f64::consts::PI.powf(-0.25)
                    * st.coefficient().to_f64()
                    * st.poly().eval_f64(t)
                    * (delta * phi).cos().powi(3);
                assert!((st.amplitude(&params, phi) - direct).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn derivative_against_finite_difference() {
        let params = p(4);
        let st = &build_states(&params).unwrap()[3];
        let d = st.phase_derivative(&params);
        let h = 1e-6;
        for phi in [-1.0, 0.4, 2.2] {
            let fd = (st.amplitude(&params, phi + h) - st.amplitude(&params, phi - h)) / (2.0 * h);
            assert!((fd - d.amplitude(&params, phi)).abs() < 1e-6);
        }
    }
}
