use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::algebra::reindex_coefficients;
use super::gram::inner_product;
use super::ladder::{alpha_sq, annihilation_poly, creation_poly, ladder_coefficients, scaled_position_poly};
use super::state::{apply_annihilation, apply_creation, build_states, state_past_truncation, FockState};
use crate::error::{Error, Result};
use crate::hermite::hermite_delta_rec;
use crate::numerics::{int, Poly, SqrtRational};
use crate::params::DeformationParam;

/// The three pieces of the state-level Casimir check on `|s>`, each written
/// in the prefactor of `|s>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirResidual {
    /// `A(s+1) A^dagger(s)|s> - (A^dagger(s-1) A(s)|s>) - (1 - delta^2 s)|s>`.
    pub total: Poly,
    /// `A(s+1) A^dagger(s)|s> - beta(s) alpha(s+1)|s>`.
    pub raise_then_lower: Poly,
    /// `A^dagger(s-1) A(s)|s> - alpha(s) beta(s-1)|s>`.
    pub lower_then_raise: Poly,
}

impl CasimirResidual {
    pub fn is_zero(&self) -> bool {
        self.total.is_zero() && self.raise_then_lower.is_zero() && self.lower_then_raise.is_zero()
    }
}

pub fn casimir_fock_residual(params: &DeformationParam, s: i64) -> Result<CasimirResidual> {
    let n = params.s_max() as i64;
    if !(1..n).contains(&s) {
        return Err(Error::IndexOutOfRange { index: s, min: 1, max: n - 1 });
    }
    let states = build_states(params)?;
    let psi = &states[s as usize];
    let up_down = apply_annihilation(params, s + 1, &apply_creation(params, s, psi)?)?.relative_to(psi)?;
    let down_up = apply_creation(params, s - 1, &apply_annihilation(params, s, psi)?)?.relative_to(psi)?;
    let base = psi.poly();
    Ok(CasimirResidual {
        total: &(&up_down - &down_up) - &base.scale(&params.ladder_factor(s)),
        // beta(s) alpha(s+1) = alpha(s+1)^2 and alpha(s) beta(s-1) = alpha(s)^2
        raise_then_lower: &up_down - &base.scale(&alpha_sq(params, s + 1)),
        lower_then_raise: &down_up - &base.scale(&alpha_sq(params, s)),
    })
}

/// One ladder step on a built state compared with its expected image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderActionResidual {
    pub s: i64,
    pub raising: bool,
    pub residual: Poly,
}

/// `A(s)|s> - alpha(s)|s-1>` for every `s` (with `A(0)|0> = 0`) and
/// `A^dagger(s)|s> - beta(s)|s+1>` for `s < s_max`.
pub fn ladder_action_residuals(params: &DeformationParam) -> Result<Vec<LadderActionResidual>> {
    let states = build_states(params)?;
    let mut out = Vec::new();
    for (s, psi) in states.iter().enumerate() {
        let si = s as i64;
        let coeffs = ladder_coefficients(params, si)?;
        let lowered = apply_annihilation(params, si, psi)?;
        let residual = if s == 0 {
            lowered.poly().clone()
        } else {
            let target = states[s - 1].scaled(&coeffs.alpha);
            lowered.residual_against(&target)?
        };
        out.push(LadderActionResidual { s: si, raising: false, residual });
        if s + 1 < states.len() {
            let raised = apply_creation(params, si, psi)?;
            let target = states[s + 1].scaled(&coeffs.beta);
            out.push(LadderActionResidual { s: si, raising: true, residual: raised.residual_against(&target)? });
        }
    }
    Ok(out)
}

/// `A(s') state` computed as `(1 - lam) A(s) state + lam A^dagger(s) state`.
pub fn reindex_ladder(params: &DeformationParam, s: i64, s_prime: i64, state: &FockState) -> Result<FockState> {
    let (keep, lam) = reindex_coefficients(params, s, s_prime)?;
    let lowered = apply_annihilation(params, s, state)?;
    let raised = apply_creation(params, s, state)?;
    lowered.combine(&keep, &raised, &lam)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    /// `A(s_max)` and `A^dagger(s_max)` agree on `1, t, ..., t^{s_max+1}`.
    pub ladder_maps_coincide: bool,
    /// Both agree with `x / sqrt(2)` on the same monomials.
    pub position_matches: bool,
    /// `|s_max+1> - |s_max-1>` in the prefactor of `|s_max-1>`.
    pub state_residual: Poly,
    /// Degree of the recurrence polynomial one step past `s_max`.
    pub collapsed_degree: Option<usize>,
    /// `c` with `H_{s_max+1} = c H_{s_max-1}`, when proportional.
    pub collapse_ratio: Option<BigRational>,
}

impl TruncationReport {
    pub fn holds(&self, params: &DeformationParam) -> bool {
        self.ladder_maps_coincide
            && self.position_matches
            && self.state_residual.is_zero()
            && self.collapsed_degree == Some(params.s_max() as usize - 1)
            && self.collapse_ratio == Some(-int(params.s_max() as i64 + 1))
    }
}

pub fn truncation_check(params: &DeformationParam) -> Result<TruncationReport> {
    let n = params.s_max() as i64;
    let basis: Vec<Poly> = (0..=n as usize + 1).map(|m| Poly::monomial(int(1), m)).collect();
    let ladder_maps_coincide = basis.iter().all(|p| annihilation_poly(params, n, p) == creation_poly(params, n, p));
    let position_matches = basis.iter().all(|p| annihilation_poly(params, n, p) == scaled_position_poly(params, p));

    let states = build_states(params)?;
    let past = state_past_truncation(params, &states)?;
    let below = &states[n as usize - 1];
    let state_residual = past.residual_against(below)?;

    let top = hermite_delta_rec(params, n + 1)?;
    let lower = hermite_delta_rec(params, n - 1)?;
    Ok(TruncationReport {
        ladder_maps_coincide,
        position_matches,
        state_residual,
        collapsed_degree: top.degree(),
        collapse_ratio: top.proportionality_to(&lower),
    })
}

/// Smallest `|cos(delta phi)|` accepted as a sample point.
pub const MIN_COS: f64 = 0.1;

/// Max absolute residual of the two first-order relations
///
/// ```text
/// [d/dphi + (1 - delta^2 s) tan(delta phi)/delta] f_s = -i sqrt(2) alpha(s) f_{s-1}
/// [d/dphi - (1 - delta^2 s) tan(delta phi)/delta] f_s = -i sqrt(2) beta(s) f_{s+1}
/// ```
///
/// on floats of the exact states, for `0 <= s <= s_max`. At `s = 0` the
/// right-hand side of the first relation is zero; at `s = s_max` the second
/// uses the state one step past truncation.
pub fn factorization_residual(params: &DeformationParam, s: i64, sample_points: &[f64]) -> Result<f64> {
    let n = params.s_max() as i64;
    if !(0..=n).contains(&s) {
        return Err(Error::IndexOutOfRange { index: s, min: 0, max: n });
    }
    let delta = params.delta_f64();
    for &phi in sample_points {
        if (delta * phi).cos().abs() < MIN_COS {
            return Err(Error::SampleNearPole(phi));
        }
    }
    let states = build_states(params)?;
    let past = state_past_truncation(params, &states)?;
    let coeffs = ladder_coefficients(params, s)?;
    let k_factor = 1.0 - s as f64 / n as f64;
    let f = &states[s as usize];
    let df = f.phase_derivative(params);
    let next = if s == n { &past } else { &states[s as usize + 1] };
    let minus_i_sqrt2 = Complex64::new(0.0, -std::f64::consts::SQRT_2);

    let mut worst: f64 = 0.0;
    for &phi in sample_points {
        let k = k_factor * (delta * phi).tan() / delta;
        let value = f.value(params, phi);
        let deriv = df.value(params, phi);
        let lower_rhs = if s == 0 {
            Complex64::zero()
        } else {
            minus_i_sqrt2 * coeffs.alpha.to_f64() * states[s as usize - 1].value(params, phi)
        };
        let upper_rhs = minus_i_sqrt2 * coeffs.beta.to_f64() * next.value(params, phi);
        worst = worst.max((deriv + value * k - lower_rhs).norm());
        worst = worst.max((deriv - value * k - upper_rhs).norm());
    }
    Ok(worst)
}

/// `mu(s) nu(s-1) = -a^2 s(s-1) + 2 b s + lambda` at `a = delta`, `b = 1`,
/// `lambda = 0`, with `mu = sqrt(2) alpha` and `nu = sqrt(2) beta`. Exact.
pub fn factorization_product_holds(params: &DeformationParam) -> Result<bool> {
    let two = SqrtRational::new(int(2)).expect("positive");
    for s in 1..=params.s_max() as i64 {
        let mu = ladder_coefficients(params, s)?.alpha.mul(&two);
        let nu = ladder_coefficients(params, s - 1)?.beta.mul(&two);
        let rhs = -params.delta_sq() * BigInt::from(s * (s - 1)) + int(2 * s);
        if mu.mul(&nu) != SqrtRational::from_rational(&rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Max deviation between `(1 - delta^2 s) tan(delta phi)/delta` and the
/// general solution `a s cot(a x + theta) - (b/a) cot(a x + theta) + c / sin(a x + theta)`
/// at `a = delta, b = 1, c = 0, theta = pi/2`.
pub fn infeld_hull_deviation(params: &DeformationParam, s: i64, sample_points: &[f64]) -> f64 {
    let a = params.delta_f64();
    let theta = std::f64::consts::FRAC_PI_2;
    sample_points
        .iter()
        .map(|&x| {
            let arg = a * x + theta;
            let cot = arg.cos() / arg.sin();
            let general = a * cot * s as f64 - cot / a;
            let ours = (1.0 - s as f64 / params.s_max() as f64) * (a * x).tan() / a;
            (general - ours).abs()
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HermiticityReport {
    pub checked: usize,
    /// Pairs whose integrand degree leaves the closed moment family.
    pub skipped: usize,
    /// `(s, a, b)` where `<a|A^dagger(s) b> != <A(s) a|b>`.
    pub failures: Vec<(i64, usize, usize)>,
}

/// `<a|A^dagger(s) b> = <A(s) a|b>` over built states `a, b` and all `s`.
pub fn hermiticity_check(params: &DeformationParam) -> Result<HermiticityReport> {
    let states = build_states(params)?;
    let limit = 2 * params.s_max() as usize;
    let mut report = HermiticityReport::default();
    for s in 0..=params.s_max() as i64 {
        for (ia, a) in states.iter().enumerate() {
            let lowered = apply_annihilation(params, s, a)?;
            for (ib, b) in states.iter().enumerate() {
                if ia + ib + 1 > limit {
                    report.skipped += 1;
                    continue;
                }
                let raised = apply_creation(params, s, b)?;
                let left = inner_product(params, a, &raised)?;
                let right = inner_product(params, &lowered, b)?;
                report.checked += 1;
                if left != right {
                    report.failures.push((s, ia, ib));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s_max: u32) -> DeformationParam {
        DeformationParam::new(s_max).unwrap()
    }

    #[test]
    fn casimir_on_states() {
        assert!(casimir_fock_residual(&p(2), 1).unwrap().is_zero());
        for s_max in 2..=8 {
            for s in 1..s_max as i64 {
                assert!(casimir_fock_residual(&p(s_max), s).unwrap().is_zero());
            }
        }
        assert!(casimir_fock_residual(&p(3), 0).is_err());
        assert!(casimir_fock_residual(&p(3), 3).is_err());
    }

    #[test]
    fn ladder_actions() {
        for s_max in 1..=8 {
            for r in ladder_action_residuals(&p(s_max)).unwrap() {
                assert!(r.residual.is_zero(), "s_max={s_max} s={} raising={}", r.s, r.raising);
            }
        }
    }

    #[test]
    fn reindex_matches_direct_action() {
        for s_max in 2..=6 {
            let params = p(s_max);
            let states = build_states(&params).unwrap();
            for s in 0..s_max as i64 {
                for sp in 0..=s_max as i64 {
                    for st in &states {
                        let via = reindex_ladder(&params, s, sp, st).unwrap();
                        let direct = apply_annihilation(&params, sp, st).unwrap();
                        assert!(via.residual_against(&direct).unwrap().is_zero());
                    }
                }
            }
        }
        assert_eq!(reindex_ladder(&p(2), 2, 0, &build_states(&p(2)).unwrap()[1]), Err(Error::ReindexAtTruncation));
    }

    #[test]
    fn truncation() {
        for s_max in 1..=8 {
            let params = p(s_max);
            let report = truncation_check(&params).unwrap();
            assert!(report.holds(&params), "{report:?}");
        }
        let r = truncation_check(&p(2)).unwrap();
        assert_eq!(r.collapsed_degree, Some(1));
        assert_eq!(r.collapse_ratio, Some(int(-3)));
    }

    #[test]
    fn factorization() {
        let params = p(2);
        assert!(factorization_residual(&params, 1, &[0.0, 0.5, -0.5]).unwrap() <= 1e-12);
        assert!(factorization_residual(&params, 0, &[0.0, 1.0]).unwrap() <= 1e-12);
        for s_max in [3, 6] {
            let params = p(s_max);
            let pts = [-2.0, -0.7, 0.0, 0.3, 1.9];
            for s in 0..=s_max as i64 {
                assert!(factorization_residual(&params, s, &pts).unwrap() < 1e-9);
                assert!(infeld_hull_deviation(&params, s, &pts) < 1e-9);
            }
        }
        let near_pole = std::f64::consts::FRAC_PI_2 * 2f64.sqrt() - 1e-3;
        assert!(matches!(factorization_residual(&params, 1, &[near_pole]), Err(Error::SampleNearPole(_))));
        for s_max in 1..=20 {
            assert!(factorization_product_holds(&p(s_max)).unwrap());
        }
    }

    #[test]
    fn adjointness() {
        for s_max in 1..=5 {
            let r = hermiticity_check(&p(s_max)).unwrap();
            assert!(r.failures.is_empty());
            assert!(r.checked > 0);
        }
    }
}
