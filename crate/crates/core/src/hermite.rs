//! Deformed Hermite polynomials.
//!
//! `H_0 = 1`, `H_{s+1} = (2 - d s) x H_s - (1 + d x^2) H_s'` with `d = delta^2`.
//! Three independent constructions are provided: the recurrence, the explicit
//! sum over `j <= s/2`, and the recurrence run with coefficients that are
//! themselves polynomials in `d`. At `d = 0` all reduce to the physicists'
//! Hermite polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{rational_to_f64, Poly};
use crate::params::DeformationParam;

fn check_range(s: i64, max: i64) -> Result<usize> {
    if s < 0 || s > max {
        return Err(Error::IndexOutOfRange { index: s, min: 0, max });
    }
    Ok(s as usize)
}

fn recurrence(delta_sq: &BigRational, s: usize) -> Poly {
    // 1 + d x^2
    let sec_sq = Poly::from_coeffs(vec![BigRational::one(), BigRational::zero(), delta_sq.clone()]);
    let mut h = Poly::one();
    for k in 0..s {
        let factor = BigRational::from_integer(2.into()) - delta_sq * BigInt::from(k);
        h = &h.shift(1).scale(&factor) - &(&sec_sq * &h.derivative());
    }
    h
}

fn closed_form(delta_sq: &BigRational, s: usize) -> Poly {
    let fact = |n: usize| (1..=n).fold(BigInt::one(), |acc, k| acc * k);
    let mut coeffs = vec![BigRational::zero(); s + 1];
    for j in 0..=s / 2 {
        let power = s - 2 * j;
        let comb = BigRational::new(fact(s), fact(j) * fact(power));
        let mut c = comb * BigInt::from(2).pow(power as u32);
        for sp in 0..(s - j) {
            c *= BigRational::one() - delta_sq * BigInt::from(sp);
        }
        if j % 2 == 1 {
            c = -c;
        }
        coeffs[power] = c;
    }
    Poly::from_coeffs(coeffs)
}

/// `H_s` by iterating the recurrence. Accepts `s = s_max + 1`, one step past
/// the state range, so the truncation collapse can be observed.
pub fn hermite_delta_rec(params: &DeformationParam, s: i64) -> Result<Poly> {
    let s = check_range(s, params.s_max() as i64 + 1)?;
    Ok(recurrence(params.delta_sq(), s))
}

/// `H_s` from the explicit sum. Defined for `0 <= s <= s_max`.
pub fn hermite_delta_closed(params: &DeformationParam, s: i64) -> Result<Poly> {
    let s = check_range(s, params.s_max() as i64)?;
    Ok(closed_form(params.delta_sq(), s))
}

/// Physicists' Hermite polynomial (the explicit sum at zero spacing).
pub fn hermite_classical(s: u32) -> Poly {
    closed_form(&BigRational::zero(), s as usize)
}

/// `H_s` with each coefficient of `x^k` returned as a polynomial in `d = delta^2`.
pub fn hermite_delta_symbolic(s: u32) -> Vec<Poly> {
    let d = Poly::x();
    let mut h: Vec<Poly> = vec![Poly::one()];
    for k in 0..s {
        // (2 - d k)
        let lead = Poly::from_coeffs(vec![
            BigRational::from_integer(2.into()),
            BigRational::from_integer(BigInt::from(-(k as i64))),
        ]);
        let mut next = vec![Poly::zero(); h.len() + 1];
        for (m, next_m) in next.iter_mut().enumerate() {
            let mut c = Poly::zero();
            if m >= 1 {
                if let Some(prev) = h.get(m - 1) {
                    // (2 - d k) x H  and  - d x^2 H'  both land on x^m from x^{m-1}
                    let m1 = BigRational::from_integer(BigInt::from(m as i64 - 1));
                    c = &(&lead * prev) - &(&d * prev).scale(&m1);
                }
            }
            if let Some(up) = h.get(m + 1) {
                // - H' from x^{m+1}
                c = &c - &up.scale(&BigRational::from_integer(BigInt::from(m as i64 + 1)));
            }
            *next_m = c;
        }
        while next.last().is_some_and(Poly::is_zero) {
            next.pop();
        }
        h = next;
    }
    h
}

/// Evaluates a symbolic coefficient list at a concrete `delta^2`.
pub fn instantiate_symbolic(coeffs: &[Poly], delta_sq: &BigRational) -> Poly {
    Poly::from_coeffs(coeffs.iter().map(|c| c.eval(delta_sq)).collect())
}

/// Largest `|c_deformed - c_classical| / |c_classical|` over the nonzero
/// classical coefficients. Parity zeros are skipped.
pub fn relative_coefficient_error(deformed: &Poly, classical: &Poly) -> BigRational {
    classical
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| ((deformed.coeff(i) - c) / c).abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermiteLimitRow {
    pub s_max: u32,
    pub error: BigRational,
}

impl HermiteLimitRow {
    pub fn error_f64(&self) -> f64 {
        rational_to_f64(&self.error)
    }
}

/// Relative coefficient error of `H_s` against the classical polynomial for
/// each `s_max`, computed exactly.
pub fn hermite_limit_table(s: u32, s_max_list: &[u32]) -> Result<Vec<HermiteLimitRow>> {
    let classical = hermite_classical(s);
    s_max_list
        .iter()
        .map(|&s_max| {
            let params = DeformationParam::new(s_max)?;
            let deformed = hermite_delta_closed(&params, s as i64)?;
            Ok(HermiteLimitRow { s_max, error: relative_coefficient_error(&deformed, &classical) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    fn p(s_max: u32) -> DeformationParam {
        DeformationParam::new(s_max).unwrap()
    }

    #[test]
    fn base_cases() {
        for s_max in 1..6 {
            assert_eq!(hermite_delta_rec(&p(s_max), 0).unwrap(), Poly::one());
            assert_eq!(hermite_delta_rec(&p(s_max), 1).unwrap(), Poly::from_ints(&[0, 2]));
        }
    }

    #[test]
    fn second_polynomial_at_half() {
        let h2 = hermite_delta_rec(&p(2), 2).unwrap();
        assert_eq!(h2, Poly::from_ints(&[-2, 0, 2]));
        assert_eq!(h2.eval(&int(1)), int(0));
    }

    #[test]
    fn closed_form_coefficients() {
        for s_max in 3..8 {
            let params = p(s_max);
            let d = params.delta_sq().clone();
            let one = int(1);
            let h3 = hermite_delta_closed(&params, 3).unwrap();
            assert_eq!(h3.coeff(3), int(8) * (&one - &d) * (&one - &d * int(2)));
            assert_eq!(h3.coeff(1), int(-12) * (&one - &d));
        }
        let h4 = hermite_delta_closed(&p(4), 4).unwrap();
        assert_eq!(h4.coeff(4), rat(3, 2));
    }

    #[test]
    fn classical_examples() {
        assert_eq!(hermite_classical(0), Poly::one());
        assert_eq!(hermite_classical(2), Poly::from_ints(&[-2, 0, 4]));
        assert_eq!(hermite_classical(4), Poly::from_ints(&[12, 0, -48, 0, 16]));
    }

    #[test]
    fn range_checks() {
        let params = p(3);
        assert!(hermite_delta_rec(&params, 4).is_ok());
        assert!(matches!(hermite_delta_rec(&params, 5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(hermite_delta_rec(&params, -1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(hermite_delta_closed(&params, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn routes_agree() {
        for s_max in 1..=20 {
            let params = p(s_max);
            for s in 0..=s_max as i64 {
                assert_eq!(
                    hermite_delta_rec(&params, s).unwrap(),
                    hermite_delta_closed(&params, s).unwrap(),
                    "s_max={s_max} s={s}"
                );
            }
        }
    }

    #[test]
    fn parity_degree_and_leading_coefficient() {
        for s_max in 1..=12 {
            let params = p(s_max);
            for s in 0..=s_max as usize {
                let h = hermite_delta_rec(&params, s as i64).unwrap();
                assert_eq!(h.degree(), Some(s));
                for k in 0..=s {
                    if (s - k) % 2 == 1 {
                        assert!(h.coeff(k).is_zero());
                    }
                }
                let mut lead = BigRational::from_integer(BigInt::from(2).pow(s as u32));
                for sp in 0..s {
                    lead *= params.ladder_factor(sp as i64);
                }
                assert_eq!(h.leading_coeff(), Some(&lead));
            }
        }
    }

    #[test]
    fn symbolic_matches_printed_forms() {
        // coefficient polynomials in d, ascending powers of d
        let h4 = hermite_delta_symbolic(4);
        // 16(1-d)(1-2d)(1-3d) = 16 - 96d + 176d^2 - 96d^3
        assert_eq!(h4[4], Poly::from_ints(&[16, -96, 176, -96]));
        // -48(1-d)(1-2d) = -48 + 144d - 96d^2
        assert_eq!(h4[2], Poly::from_ints(&[-48, 144, -96]));
        assert_eq!(h4[0], Poly::from_ints(&[12, -12]));
        assert!(h4[1].is_zero() && h4[3].is_zero());
        for s_max in 4..10 {
            let params = p(s_max);
            assert_eq!(instantiate_symbolic(&h4, params.delta_sq()), hermite_delta_rec(&params, 4).unwrap());
        }
    }

    #[test]
    fn limit_table_examples() {
        assert!(hermite_limit_table(1, &[2, 5, 9]).unwrap().iter().all(|r| r.error.is_zero()));
        assert!(hermite_limit_table(0, &[1, 3]).unwrap().iter().all(|r| r.error.is_zero()));
        assert!(hermite_limit_table(2, &[]).unwrap().is_empty());
        let t = hermite_limit_table(4, &[100, 400]).unwrap();
        let ratio = t[0].error_f64() / t[1].error_f64();
        assert!((ratio - 4.0).abs() < 0.3 * 4.0, "ratio {ratio}");
    }

    #[test]
    fn limit_table_requires_s_in_range() {
        assert!(hermite_limit_table(5, &[10, 4]).is_err());
    }

    #[test]
    fn contraction_is_monotone_with_ratio_near_four() {
        for s in 1..=4u32 {
            let base = 16 * s * s;
            let list: Vec<u32> = (0..4).map(|k| base * 4u32.pow(k)).collect();
            let t = hermite_limit_table(s, &list).unwrap();
            for w in t.windows(2) {
                if s == 1 {
                    assert!(w[0].error.is_zero() && w[1].error.is_zero());
                    continue;
                }
                assert!(w[1].error < w[0].error);
                let ratio = w[0].error_f64() / w[1].error_f64();
                assert!((3.0..=5.0).contains(&ratio), "s={s} ratio={ratio}");
            }
        }
    }
}
