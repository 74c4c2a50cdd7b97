//! Inner products of the deformed number states.
//!
//! Two independent routes produce the Gram matrix. The exact route expands
//! the product of the two state polynomials and integrates each monomial
//! against `(cos delta phi)^{2 s_max}` with closed-form trigonometric
//! moments. The recurrence route never integrates anything beyond the
//! vacuum norm: it fills the diagonal from the squared-norm recursion and
//! propagates the off-diagonal entries through the ladder relations.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ladder::{alpha_sq, beta_sq};
use super::state::{build_states, FockState};
use crate::error::{Error, Result};
use crate::numerics::{int, rat, wallis_moment, ScaledRational, SqrtRational};
use crate::params::DeformationParam;

/// `<a|b>` in units of `sqrt(s_max/pi)`.
///
/// Uses `t^k (cos delta phi)^{2n} = n^{k/2} sin^k cos^{2n-k}`, valid while
/// `k <= 2n`; odd `k` averages to zero over the period.
pub fn inner_product(params: &DeformationParam, a: &FockState, b: &FockState) -> Result<ScaledRational> {
    let n = params.s_max();
    for st in [a, b] {
        if st.weight_exponent() != n {
            return Err(Error::WeightMismatch { expected: n, found: st.weight_exponent() });
        }
    }
    let product = a.poly() * b.poly();
    let limit = 2 * n as usize;
    if let Some(deg) = product.degree() {
        if deg > limit {
            return Err(Error::DegreeOutOfFamily { degree: deg, limit });
        }
    }
    let s_max = BigInt::from(n);
    let mut avg = BigRational::zero();
    for (k, c) in product.coeffs().iter().enumerate() {
        if k % 2 == 1 || c.is_zero() {
            continue;
        }
        let h = (k / 2) as u32;
        avg += c * BigRational::from_integer(s_max.pow(h)) * wallis_moment(h, n - h);
    }
    // conj((-i)^{k_a}) (-i)^{k_b} = (-i)^{k_b - k_a}
    let turn = (4 + b.phase_power() - a.phase_power()) % 4;
    if turn % 2 == 1 {
        if avg.is_zero() {
            return Ok(ScaledRational::zero(n));
        }
        return Err(Error::ImaginaryInnerProduct);
    }
    if turn == 2 {
        avg = -avg;
    }
    Ok(ScaledRational::with_radical(n, avg, &a.coefficient().mul(b.coefficient())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramMethod {
    Exact,
    Recurrence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    s_max: u32,
    method: GramMethod,
    entries: Vec<ScaledRational>,
}

impl GramMatrix {
    pub fn s_max(&self) -> u32 {
        self.s_max
    }

    pub fn method(&self) -> GramMethod {
        self.method
    }

    pub fn dim(&self) -> usize {
        self.s_max as usize + 1
    }

    pub fn get(&self, s: usize, s_prime: usize) -> &ScaledRational {
        &self.entries[s * self.dim() + s_prime]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ScaledRational)> {
        let d = self.dim();
        self.entries.iter().enumerate().map(move |(i, e)| (i / d, i % d, e))
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries().all(|(s, sp, e)| e == self.get(sp, s))
    }

    pub fn parity_zeros_hold(&self) -> bool {
        self.entries().filter(|(s, sp, _)| (s + sp) % 2 == 1).all(|(_, _, e)| e.is_zero())
    }

    pub fn adjacent_zeros_hold(&self) -> bool {
        (0..self.s_max as usize).all(|s| self.get(s, s + 1).is_zero() && self.get(s + 1, s).is_zero())
    }

    pub fn diagonal_positive(&self) -> bool {
        (0..self.dim()).all(|s| self.get(s, s).is_positive())
    }

    /// The diagonal as rational multiples of `sqrt(s_max/pi)`.
    pub fn diagonal(&self) -> Vec<BigRational> {
        (0..self.dim()).map(|s| self.get(s, s).as_rational().expect("diagonal entries are rational")).collect()
    }

    /// First entry where the two matrices differ, if any.
    pub fn first_mismatch(&self, other: &GramMatrix) -> Option<(usize, usize)> {
        if self.s_max != other.s_max {
            return Some((0, 0));
        }
        self.entries().find(|(s, sp, e)| *e != other.get(*s, *sp)).map(|(s, sp, _)| (s, sp))
    }
}

pub fn gram_exact(params: &DeformationParam) -> Result<GramMatrix> {
    let states = build_states(params)?;
    let mut entries = Vec::with_capacity(states.len() * states.len());
    for a in &states {
        for b in &states {
            entries.push(inner_product(params, a, b)?);
        }
    }
    Ok(GramMatrix { s_max: params.s_max(), method: GramMethod::Exact, entries })
}

/// `<0|0> = prod_{k=1}^{s_max} (2k-1)/(2k)` in units of `sqrt(s_max/pi)`.
pub fn vacuum_norm_closed(params: &DeformationParam) -> ScaledRational {
    let mut q = BigRational::one();
    for k in 1..=params.s_max() as i64 {
        q *= rat(2 * k - 1, 2 * k);
    }
    ScaledRational::new(params.s_max(), q)
}

fn r(n: i64) -> BigRational {
    int(n)
}

/// Diagonal `<s|s>` from `<0|0>` via the two-branch squared-norm formula.
pub fn gram_diagonal(params: &DeformationParam, vacuum: &BigRational) -> Vec<BigRational> {
    let d = params.delta_sq();
    let mut diag = vec![vacuum.clone()];
    if params.s_max() >= 1 {
        diag.push(vacuum * r(2) / (r(2) - d));
    }
    for s in 2..=params.s_max() as i64 {
        let p = alpha_sq(params, s);
        let lead = (r(2) * (d * r(s) - r(1)) - d) * &p;
        let sum: BigRational = (0..=s - 2).map(|sp| (d * r(sp) - r(1)) * &diag[sp as usize]).sum();
        let mix = r(1) + d * (d * r(s - 1) - r(1)) / &lead;
        let next = d / &lead * sum + mix * &diag[s as usize - 1];
        diag.push(next);
    }
    diag
}

/// Residual of the three-term squared-norm recursion linking
/// `<s-1|s-1>`, `<s|s>` and `<s+1|s+1>`.
pub fn norm_recursion_residual(params: &DeformationParam, diag: &[BigRational], s: usize) -> BigRational {
    let d = params.delta_sq();
    let si = s as i64;
    let f = d * r(si) - r(1);
    let a = r(2) * &f * (r(2 * si + 1) - d * r(si * si));
    let b = (d - r(2) * &f) * alpha_sq(params, si);
    let c = (d + r(2) * &f) * beta_sq(params, si);
    a * &diag[s] + b * &diag[s - 1] - c * &diag[s + 1]
}

type Key = (usize, usize);

fn key(s: usize, sp: usize) -> Key {
    (s.min(sp), s.max(sp))
}

/// One linear relation `sum coeff * K(key) = 0` between reduced entries.
struct Relation {
    at: Key,
    terms: Vec<(Key, BigRational)>,
}

impl Relation {
    /// Merges repeated keys and drops vanishing coefficients.
    fn new(at: Key, raw: Vec<(Key, BigRational)>) -> Self {
        let mut terms: Vec<(Key, BigRational)> = Vec::new();
        for (k, c) in raw {
            match terms.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, acc)) => *acc += c,
                None => terms.push((k, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Relation { at, terms }
    }
}

/// Reduced entries `K(s,s') = <s|s'> / (N_s N_{s'})`, with `N_s` the
/// normalization product of `|s>`, satisfy rational relations:
///
/// ```text
/// K(s,s') = (1 - lam) alpha(s')^2 K(s-1,s'-1) + lam K(s-1,s'+1)
/// lam     = delta^2 (s' - s + 1) / (2 (delta^2 s' - 1))
/// K(0,c+1) = (delta^2 c / 2) K(1,c)
/// ```
///
/// the last one following from the adjoint of the reindexing relation at
/// `s = 0`.
fn relations(params: &DeformationParam) -> Vec<Relation> {
    let d = params.delta_sq();
    let n = params.s_max() as usize;
    let mut out = Vec::new();
    for s in 1..=n {
        for sp in 0..n {
            let si = s as i64;
            let spi = sp as i64;
            let lam = d * r(spi - si + 1) / (r(2) * (d * r(spi) - r(1)));
            let mut terms = vec![(key(s, sp), BigRational::one())];
            if sp >= 1 {
                terms.push((key(s - 1, sp - 1), -(r(1) - &lam) * alpha_sq(params, spi)));
            }
            terms.push((key(s - 1, sp + 1), -lam));
            out.push(Relation::new((s, sp), terms));
        }
    }
    for c in 0..n {
        let coeff = d * r(c as i64) / r(2);
        out.push(Relation::new((0, c + 1), vec![(key(0, c + 1), BigRational::one()), (key(1, c), -coeff)]));
    }
    out
}

pub fn gram_recurrence(params: &DeformationParam, vacuum_norm: &ScaledRational) -> Result<GramMatrix> {
    let n = params.s_max() as usize;
    if vacuum_norm.s_max() != params.s_max() {
        return Err(Error::ParamMismatch { left: params.s_max(), right: vacuum_norm.s_max() });
    }
    let vac = vacuum_norm.as_rational().filter(|q| q > &BigRational::zero()).ok_or(Error::NonPositiveNorm)?;
    let diag = gram_diagonal(params, &vac);

    let mut known: HashMap<Key, BigRational> = HashMap::new();
    let mut norm_radicand = BigRational::one();
    for (s, value) in diag.iter().enumerate() {
        // K(s,s) = <s|s> prod_{s'<s} beta(s')^2
        known.insert((s, s), value / &norm_radicand);
        norm_radicand /= beta_sq(params, s as i64);
    }

    let rels = relations(params);
    loop {
        let mut progressed = false;
        for rel in &rels {
            let unknown: Vec<&(Key, BigRational)> = rel.terms.iter().filter(|(k, _)| !known.contains_key(k)).collect();
            if unknown.len() != 1 {
                continue;
            }
            let (k, c) = unknown[0];
            let rest: BigRational = rel.terms.iter().filter(|(kk, _)| kk != k).map(|(kk, cc)| cc * &known[kk]).sum();
            known.insert(*k, -rest / c);
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    for s in 0..=n {
        for sp in s..=n {
            if !known.contains_key(&(s, sp)) {
                return Err(Error::UnderdeterminedGram { s, s_prime: sp });
            }
        }
    }
    for rel in &rels {
        let total: BigRational = rel.terms.iter().map(|(k, c)| c * &known[k]).sum();
        if !total.is_zero() {
            return Err(Error::InconsistentGram { s: rel.at.0, s_prime: rel.at.1 });
        }
    }

    let mut norms = Vec::with_capacity(n + 1);
    let mut radicand = BigRational::one();
    for s in 0..=n as i64 {
        norms.push(SqrtRational::new(radicand.clone()).expect("positive"));
        radicand /= beta_sq(params, s);
    }
    let mut entries = Vec::with_capacity((n + 1) * (n + 1));
    for s in 0..=n {
        for sp in 0..=n {
            let k = known[&key(s, sp)].clone();
            entries.push(ScaledRational::with_radical(params.s_max(), k, &norms[s].mul(&norms[sp])));
        }
    }
    Ok(GramMatrix { s_max: params.s_max(), method: GramMethod::Recurrence, entries })
}
