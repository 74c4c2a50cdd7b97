//! Floating-point convergence studies as `s_max` grows and the spacing
//! `delta = 1/sqrt(s_max)` shrinks.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fock::vacuum_norm_closed;
use crate::hermite::hermite_limit_table;
use crate::lattice::continuum_limit_study;
use crate::numerics::rational_to_f64;
use crate::params::DeformationParam;

/// Grid points used on `|phi| <= 2` for the Gaussian comparison.
pub const GAUSSIAN_GRID: usize = 4001;

/// `max |(cos delta phi)^{s_max} - exp(-phi^2/2)|` over a uniform grid on `[-2, 2]`.
pub fn gaussian_deviation(params: &DeformationParam) -> f64 {
    let delta = params.delta_f64();
    let n = params.s_max() as i32;
    (0..GAUSSIAN_GRID)
        .map(|i| -2.0 + 4.0 * i as f64 / (GAUSSIAN_GRID - 1) as f64)
        .map(|phi| ((delta * phi).cos().powi(n) - (-phi * phi / 2.0).exp()).abs())
        .fold(0.0, f64::max)
}

/// `pi * <0|0>`, from the exact product form of the vacuum norm.
pub fn pi_vacuum_norm(params: &DeformationParam) -> f64 {
    let coeff = vacuum_norm_closed(params);
    rational_to_f64(coeff.rational()) * (params.s_max() as f64 * PI).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitQuantity {
    /// Relative coefficient error of `H_s` against the classical polynomial.
    Hermite {
        s: u32,
    },
    Kernel,
    VacuumNorm,
    Gaussian,
}

impl LimitQuantity {
    pub fn name(&self) -> &'static str {
        match self {
            LimitQuantity::Hermite { .. } => "hermite",
            LimitQuantity::Kernel => "kernel",
            LimitQuantity::VacuumNorm => "vacuum_norm",
            LimitQuantity::Gaussian => "gaussian",
        }
    }

    pub fn columns(&self) -> &'static [&'static str] {
        match self {
            LimitQuantity::Hermite { .. } => &["max_rel_error"],
            LimitQuantity::Kernel => &["diagonal", "off_diagonal_unit_separation"],
            LimitQuantity::VacuumNorm => &["pi_vacuum_norm", "abs_deviation_times_s_max"],
            LimitQuantity::Gaussian => &["max_deviation"],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitTable {
    pub quantity: LimitQuantity,
    pub rows: Vec<(u32, Vec<f64>)>,
}

impl LimitTable {
    /// The `index`-th value column across all rows.
    pub fn column(&self, index: usize) -> Vec<f64> {
        self.rows.iter().map(|(_, v)| v[index]).collect()
    }
}

pub fn limit_table(quantity: LimitQuantity, s_max_list: &[u32]) -> Result<LimitTable> {
    if s_max_list.is_empty() {
        return Err(Error::EmptyParameterList);
    }
    let mut rows = Vec::with_capacity(s_max_list.len());
    match quantity {
        LimitQuantity::Hermite { s } => {
            for r in hermite_limit_table(s, s_max_list)? {
                rows.push((r.s_max, vec![r.error_f64()]));
            }
        }
        LimitQuantity::Kernel => {
            let study = continuum_limit_study(&[(0.0, 0.0), (1.0, 0.0)], s_max_list)?;
            for pair in study.chunks(2) {
                rows.push((pair[0].s_max, vec![pair[0].value, pair[1].value]));
            }
        }
        LimitQuantity::VacuumNorm => {
            for &s_max in s_max_list {
                let v = pi_vacuum_norm(&DeformationParam::new(s_max)?);
                rows.push((s_max, vec![v, (v - 1.0).abs() * s_max as f64]));
            }
        }
        LimitQuantity::Gaussian => {
            for &s_max in s_max_list {
                rows.push((s_max, vec![gaussian_deviation(&DeformationParam::new(s_max)?)]));
            }
        }
    }
    Ok(LimitTable { quantity, rows })
}

/// `values[i] / values[i+1]`.
pub fn consecutive_ratios(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| w[0] / w[1]).collect()
}
