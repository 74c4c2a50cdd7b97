use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// The deformation knob. Positivity of the ladder norms forces the spacing
/// to satisfy `delta^2 = 1 / s_max`, so `s_max` is the only free parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeformationParam {
    s_max: u32,
    delta_sq: BigRational,
}

impl DeformationParam {
    pub fn new(s_max: u32) -> Result<Self> {
        if s_max == 0 {
            return Err(Error::InvalidDeformation(0));
        }
        Ok(DeformationParam { s_max, delta_sq: BigRational::new(BigInt::from(1), BigInt::from(s_max)) })
    }

    pub fn s_max(&self) -> u32 {
        self.s_max
    }

    pub fn delta_sq(&self) -> &BigRational {
        &self.delta_sq
    }

    pub fn delta_f64(&self) -> f64 {
        (self.s_max as f64).sqrt().recip()
    }

    /// Half-width `pi / delta` of the fundamental phase interval.
    pub fn phase_half_period(&self) -> f64 {
        std::f64::consts::PI * (self.s_max as f64).sqrt()
    }

    /// `1 - delta^2 s`, the factor multiplying the difference term in the
    /// ladder operators. Vanishes exactly at `s = s_max`.
    pub fn ladder_factor(&self, s: i64) -> BigRational {
        BigRational::from_integer(1.into()) - &self.delta_sq * BigInt::from(s)
    }
}
