use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numerics::{rational_sqrt_exact, rational_to_f64};
use crate::params::DeformationParam;

/// `rational + delta_coeff * delta`, an element of `Q(delta)` with
/// `delta^2 = 1/s_max`.
///
/// When `s_max` is a perfect square `delta` is itself rational and the
/// `delta_coeff` part is folded into `rational`, so the representation is
/// unique and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DeltaNumber {
    pub rational: BigRational,
    pub delta_coeff: BigRational,
}

impl DeltaNumber {
    pub fn zero() -> Self {
        DeltaNumber::default()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.delta_coeff.is_zero()
    }
}

/// Arithmetic context for [`DeltaNumber`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaRing {
    delta_sq: BigRational,
    rational_delta: Option<BigRational>,
}

impl DeltaRing {
    pub fn new(params: &DeformationParam) -> Self {
        DeltaRing { delta_sq: params.delta_sq().clone(), rational_delta: rational_sqrt_exact(params.delta_sq()) }
    }

    fn canonical(&self, rational: BigRational, delta_coeff: BigRational) -> DeltaNumber {
        match &self.rational_delta {
            Some(d) if !delta_coeff.is_zero() => {
                DeltaNumber { rational: rational + delta_coeff * d, delta_coeff: BigRational::zero() }
            }
            _ => DeltaNumber { rational, delta_coeff },
        }
    }

    pub fn from_rational(&self, q: BigRational) -> DeltaNumber {
        self.canonical(q, BigRational::zero())
    }

    pub fn one(&self) -> DeltaNumber {
        self.from_rational(BigRational::one())
    }

    /// `q * delta^n` for any integer `n`.
    pub fn delta_power(&self, q: BigRational, n: i32) -> DeltaNumber {
        let half = n.div_euclid(2);
        let odd = n.rem_euclid(2) == 1;
        let mut scale = q;
        if half >= 0 {
            for _ in 0..half {
                scale *= &self.delta_sq;
            }
        } else {
            for _ in 0..(-half) {
                scale /= &self.delta_sq;
            }
        }
        if odd {
            self.canonical(BigRational::zero(), scale)
        } else {
            self.canonical(scale, BigRational::zero())
        }
    }

    pub fn add(&self, a: &DeltaNumber, b: &DeltaNumber) -> DeltaNumber {
        self.canonical(&a.rational + &b.rational, &a.delta_coeff + &b.delta_coeff)
    }

    pub fn sub(&self, a: &DeltaNumber, b: &DeltaNumber) -> DeltaNumber {
        self.canonical(&a.rational - &b.rational, &a.delta_coeff - &b.delta_coeff)
    }

    pub fn neg(&self, a: &DeltaNumber) -> DeltaNumber {
        DeltaNumber { rational: -&a.rational, delta_coeff: -&a.delta_coeff }
    }

    pub fn mul(&self, a: &DeltaNumber, b: &DeltaNumber) -> DeltaNumber {
        if a.is_zero() || b.is_zero() {
            return DeltaNumber::zero();
        }
        let rational = &a.rational * &b.rational + &a.delta_coeff * &b.delta_coeff * &self.delta_sq;
        let delta_coeff = &a.rational * &b.delta_coeff + &a.delta_coeff * &b.rational;
        self.canonical(rational, delta_coeff)
    }

    pub fn scale_int(&self, a: &DeltaNumber, k: i64) -> DeltaNumber {
        let k = BigInt::from(k);
        DeltaNumber { rational: &a.rational * &k, delta_coeff: &a.delta_coeff * &k }
    }

    pub fn to_f64(&self, a: &DeltaNumber) -> f64 {
        rational_to_f64(&a.rational) + rational_to_f64(&a.delta_coeff) * rational_to_f64(&self.delta_sq).sqrt()
    }
}

impl fmt::Display for DeltaNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.delta_coeff.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}*delta", self.delta_coeff),
            (false, false) => write!(f, "{} + {}*delta", self.rational, self.delta_coeff),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    fn ring(s_max: u32) -> DeltaRing {
        DeltaRing::new(&DeformationParam::new(s_max).unwrap())
    }

    #[test]
    fn delta_squared_is_rational() {
        let r = ring(3);
        let d = r.delta_power(int(1), 1);
        assert_eq!(r.mul(&d, &d), r.from_rational(rat(1, 3)));
    }

    #[test]
    fn inverse_delta() {
        let r = ring(2);
        let d = r.delta_power(int(1), 1);
        let inv = r.delta_power(int(1), -1);
        assert_eq!(r.mul(&d, &inv), r.one());
        assert_eq!(inv.delta_coeff, int(2));
    }

    #[test]
    fn perfect_square_folds() {
        let r = ring(4);
        let d = r.delta_power(int(3), 1);
        assert_eq!(d, DeltaNumber { rational: rat(3, 2), delta_coeff: int(0) });
        assert_eq!(r.delta_power(int(1), -3), r.from_rational(int(8)));
    }

    #[test]
    fn float_value() {
        let r = ring(2);
        let x = r.add(&r.one(), &r.delta_power(int(2), 1));
        assert!((r.to_f64(&x) - (1.0 + 2.0 / 2f64.sqrt())).abs() < 1e-15);
    }
}
