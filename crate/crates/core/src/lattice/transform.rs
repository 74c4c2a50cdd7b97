//! Passage between the lattice representation `f(j delta)` and the periodic
//! phase representation `f(phi)`, `phi` in `[-pi/delta, pi/delta]`.
//!
//! Forward: `f(phi) = sum_j delta * exp(-i j delta phi) * f(j delta)`.
//! Inverse: `f(j delta) = (1/2pi) * int exp(i j delta phi) f(phi) dphi`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use num_rational::BigRational;

use crate::numerics::SqrtRational;
use crate::params::DeformationParam;

/// Values of a finitely supported lattice function on `j_min, j_min+1, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeFunction {
    pub j_min: i64,
    pub values: Vec<Complex64>,
}

impl LatticeFunction {
    pub fn new(j_min: i64, values: Vec<Complex64>) -> Self {
        LatticeFunction { j_min, values }
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.values.len() as i64).map(move |k| self.j_min + k)
    }

    /// `sum_j delta |f(j delta)|^2`.
    pub fn norm_sq(&self, params: &DeformationParam) -> f64 {
        params.delta_f64() * self.values.iter().map(Complex64::norm_sqr).sum::<f64>()
    }

    pub fn max_abs_diff(&self, other: &LatticeFunction) -> f64 {
        assert_eq!(self.j_min, other.j_min);
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiValue {
    pub value: Complex64,
    /// Set when the requested phase lay outside the fundamental interval and
    /// was folded back by periodicity.
    pub folded: bool,
}

/// Folds `phi` into `[-pi/delta, pi/delta)`.
pub fn fold_phase(phi: f64, params: &DeformationParam) -> (f64, bool) {
    let half = params.phase_half_period();
    if (-half..=half).contains(&phi) {
        return (phi, false);
    }
    ((phi + half).rem_euclid(2.0 * half) - half, true)
}

pub fn lattice_to_phi(f: &LatticeFunction, phi: f64, params: &DeformationParam) -> PhiValue {
    let (phi, folded) = fold_phase(phi, params);
    let delta = params.delta_f64();
    let value =
        f.labels().zip(&f.values).map(|(j, v)| Complex64::from_polar(delta, -(j as f64) * delta * phi) * v).sum();
    PhiValue { value, folded }
}

/// Uniform trapezoid nodes over one period, starting at `-pi/delta`.
pub fn phase_nodes(params: &DeformationParam, count: usize) -> Vec<f64> {
    let half = params.phase_half_period();
    (0..count).map(|m| -half + 2.0 * half * m as f64 / count as f64).collect()
}

/// Recovers `f` on `j_min..j_min+len` from its phase samples by the
/// trapezoid rule with `nodes` points. Exact for trigonometric polynomials
/// whose frequency spread is below the node count.
pub fn phi_to_lattice(
    f: &LatticeFunction,
    j_min: i64,
    len: usize,
    nodes: usize,
    params: &DeformationParam,
) -> LatticeFunction {
    let delta = params.delta_f64();
    let grid = phase_nodes(params, nodes);
    let samples: Vec<Complex64> = grid.iter().map(|&phi| lattice_to_phi(f, phi, params).value).collect();
    let values = (0..len as i64)
        .map(|k| {
            let j = (j_min + k) as f64;
            let sum: Complex64 =
                grid.iter().zip(&samples).map(|(&phi, s)| Complex64::from_polar(1.0, j * delta * phi) * s).sum();
            sum / (delta * nodes as f64)
        })
        .collect();
    LatticeFunction::new(j_min, values)
}

/// `(1/2pi) int |f(phi)|^2 dphi` by the trapezoid rule.
pub fn phi_norm_sq(f: &LatticeFunction, nodes: usize, params: &DeformationParam) -> f64 {
    let delta = params.delta_f64();
    phase_nodes(params, nodes).iter().map(|&phi| lattice_to_phi(f, phi, params).value.norm_sqr()).sum::<f64>()
        / (delta * nodes as f64)
}

/// `<j delta | j' delta> = delta_{jj'} / delta`, exactly.
pub fn overlap_kernel(j: i64, j_prime: i64, params: &DeformationParam) -> SqrtRational {
    if j == j_prime {
        SqrtRational::new(BigRational::from_integer(params.s_max().into())).expect("positive")
    } else {
        SqrtRational::zero()
    }
}

/// `sin(pi n) / (pi n delta)` at a real index separation `n = (x - x')/delta`.
pub fn kernel_at_separation(n: f64, params: &DeformationParam) -> f64 {
    let delta = params.delta_f64();
    if n == 0.0 {
        return delta.recip();
    }
    if n.fract() == 0.0 {
        return 0.0;
    }
    (PI * n).sin() / (PI * n * delta)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuumRow {
    pub s_max: u32,
    pub x: f64,
    pub x_prime: f64,
    /// Both points are lattice sites `j delta` at this spacing.
    pub on_lattice: bool,
    pub value: f64,
}

fn lattice_index(x: f64, params: &DeformationParam) -> Option<i64> {
    let j = x / params.delta_f64();
    ((j - j.round()).abs() < 1e-9).then(|| j.round() as i64)
}

/// Kernel values at fixed physical points `x, x'` as the spacing shrinks.
pub fn continuum_limit_study(positions: &[(f64, f64)], s_max_list: &[u32]) -> Result<Vec<ContinuumRow>> {
    let mut rows = Vec::new();
    for &s_max in s_max_list {
        let params = DeformationParam::new(s_max)?;
        for &(x, x_prime) in positions {
            let (j, jp) = (lattice_index(x, &params), lattice_index(x_prime, &params));
            let (on_lattice, value) = match (j, jp) {
                (Some(j), Some(jp)) => (true, overlap_kernel(j, jp, &params).to_f64()),
                _ => (false, kernel_at_separation((x - x_prime) / params.delta_f64(), &params)),
            };
            rows.push(ContinuumRow { s_max, x, x_prime, on_lattice, value });
        }
    }
    Ok(rows)
}
