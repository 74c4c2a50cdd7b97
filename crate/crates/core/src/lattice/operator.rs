use num_rational::BigRational;

use super::ring::{DeltaNumber, DeltaRing};
use crate::error::{Error, Result};
use crate::numerics::{int, rat};
use crate::params::DeformationParam;

const MIN_WINDOW: usize = 5;

/// The sites `j_min..=j_max` of the lattice `x = j * delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeWindow {
    j_min: i64,
    j_max: i64,
    params: DeformationParam,
    ring: DeltaRing,
}

impl LatticeWindow {
    pub fn new(j_min: i64, j_max: i64, params: &DeformationParam) -> Result<Self> {
        if j_min >= j_max || ((j_max - j_min + 1) as usize) < MIN_WINDOW {
            return Err(Error::InvalidWindow { j_min, j_max });
        }
        Ok(LatticeWindow { j_min, j_max, params: params.clone(), ring: DeltaRing::new(params) })
    }

    /// `len` consecutive sites whose first label is `start`. Labels must be
    /// integers: the half-integer spectrum is not built.
    pub fn from_labels(start: &BigRational, len: usize, params: &DeformationParam) -> Result<Self> {
        if !start.is_integer() {
            return Err(Error::HalfIntegerBranch(start.to_string()));
        }
        let j_min: i64 = start.to_integer().try_into().map_err(|_| Error::HalfIntegerBranch(start.to_string()))?;
        Self::new(j_min, j_min + len as i64 - 1, params)
    }

    /// Symmetric window `[-half_width, half_width]`.
    pub fn symmetric(half_width: i64, params: &DeformationParam) -> Result<Self> {
        Self::new(-half_width, half_width, params)
    }

    pub fn j_min(&self) -> i64 {
        self.j_min
    }

    pub fn j_max(&self) -> i64 {
        self.j_max
    }

    pub fn size(&self) -> usize {
        (self.j_max - self.j_min + 1) as usize
    }

    pub fn params(&self) -> &DeformationParam {
        &self.params
    }

    pub fn ring(&self) -> &DeltaRing {
        &self.ring
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> {
        self.j_min..=self.j_max
    }

    pub fn position_of(&self, j: i64) -> Option<usize> {
        (self.j_min..=self.j_max).contains(&j).then(|| (j - self.j_min) as usize)
    }

    pub fn is_symmetric(&self) -> bool {
        self.j_min == -self.j_max
    }
}

/// A square matrix over `Q(delta)` acting on lattice functions
/// `f(j delta)`, `(A f)(j) = sum_k A[j][k] f(k)`.
///
/// Truncating an infinite banded operator to a window corrupts the rows
/// within `margin` sites of either edge; identities are asserted only on
/// the interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeOperator {
    window: LatticeWindow,
    entries: Vec<DeltaNumber>,
    margin: usize,
}

impl LatticeOperator {
    pub fn zero(window: &LatticeWindow) -> Self {
        let n = window.size();
        LatticeOperator { window: window.clone(), entries: vec![DeltaNumber::zero(); n * n], margin: 0 }
    }

    pub fn identity(window: &LatticeWindow) -> Self {
        let mut op = Self::zero(window);
        for i in 0..window.size() {
            op.set(i, i, window.ring().one());
        }
        op
    }

    pub fn window(&self) -> &LatticeWindow {
        &self.window
    }

    pub fn dim(&self) -> usize {
        self.window.size()
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn with_margin(mut self, margin: usize) -> Self {
        self.margin = margin;
        self
    }

    /// Entry at matrix positions `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> &DeltaNumber {
        &self.entries[row * self.dim() + col]
    }

    /// Entry addressed by lattice labels.
    pub fn at(&self, j_row: i64, j_col: i64) -> Option<&DeltaNumber> {
        Some(self.entry(self.window.position_of(j_row)?, self.window.position_of(j_col)?))
    }

    fn set(&mut self, row: usize, col: usize, v: DeltaNumber) {
        let n = self.dim();
        self.entries[row * n + col] = v;
    }

    fn check_compatible(&self, other: &LatticeOperator) -> Result<()> {
        if self.window != other.window {
            return Err(Error::WindowMismatch);
        }
        Ok(())
    }

    fn zip_with(&self, other: &LatticeOperator, f: impl Fn(&DeltaNumber, &DeltaNumber) -> DeltaNumber) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(LatticeOperator {
            window: self.window.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
            margin: self.margin.max(other.margin),
        })
    }

    pub fn add(&self, other: &LatticeOperator) -> Result<Self> {
        let ring = self.window.ring().clone();
        self.zip_with(other, |a, b| ring.add(a, b))
    }

    pub fn sub(&self, other: &LatticeOperator) -> Result<Self> {
        let ring = self.window.ring().clone();
        self.zip_with(other, |a, b| ring.sub(a, b))
    }

    pub fn scale(&self, c: &DeltaNumber) -> Self {
        let ring = self.window.ring();
        LatticeOperator {
            window: self.window.clone(),
            entries: self.entries.iter().map(|a| ring.mul(a, c)).collect(),
            margin: self.margin,
        }
    }

    /// Matrix product; the margin of the product is the sum of margins.
    pub fn matmul(&self, other: &LatticeOperator) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.dim();
        let ring = self.window.ring();
        let row_support: Vec<Vec<usize>> =
            (0..n).map(|k| (0..n).filter(|&j| !other.entry(k, j).is_zero()).collect()).collect();
        let mut out = LatticeOperator::zero(&self.window);
        for i in 0..n {
            for (k, support) in row_support.iter().enumerate() {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in support {
                    let prod = ring.mul(a, other.entry(k, j));
                    let acc = ring.add(out.entry(i, j), &prod);
                    out.set(i, j, acc);
                }
            }
        }
        out.margin = self.margin + other.margin;
        Ok(out)
    }

    pub fn commutator(&self, other: &LatticeOperator) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// Transpose. All entries are real, so this is the adjoint.
    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        let mut out = LatticeOperator::zero(&self.window);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.entry(i, j).clone());
            }
        }
        out.margin = self.margin;
        out
    }

    /// Action on a lattice function given by its values on the window.
    pub fn apply(&self, values: &[DeltaNumber]) -> Vec<DeltaNumber> {
        let ring = self.window.ring();
        (0..self.dim())
            .map(|i| {
                values.iter().enumerate().fold(DeltaNumber::zero(), |acc, (k, v)| {
                    let a = self.entry(i, k);
                    if a.is_zero() || v.is_zero() {
                        acc
                    } else {
                        ring.add(&acc, &ring.mul(a, v))
                    }
                })
            })
            .collect()
    }

    /// Restriction to rows and columns at distance `>= margin` from the edges.
    pub fn interior(&self, margin: usize) -> Result<InteriorBlock> {
        let n = self.dim();
        if 2 * margin >= n {
            return Err(Error::WindowTooSmall { size: n, margin });
        }
        let range = margin..n - margin;
        let entries = range
            .clone()
            .flat_map(|i| range.clone().map(move |j| (i, j)))
            .map(|(i, j)| self.entry(i, j).clone())
            .collect();
        Ok(InteriorBlock { first: margin, size: range.len(), margin, entries })
    }
}

/// Interior block of a residual matrix; boundary rows are excluded, not asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorBlock {
    pub first: usize,
    pub size: usize,
    pub margin: usize,
    pub entries: Vec<DeltaNumber>,
}

impl InteriorBlock {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(DeltaNumber::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    /// Whether a matrix position was excluded as a boundary row or column.
    pub fn excludes(&self, row: usize, col: usize) -> bool {
        let r = self.first..self.first + self.size;
        !(r.contains(&row) && r.contains(&col))
    }
}

/// Diagonal `x = j delta`.
pub fn build_position(w: &LatticeWindow) -> LatticeOperator {
    let mut op = LatticeOperator::zero(w);
    for (i, j) in w.labels().enumerate() {
        op.set(i, i, w.ring().delta_power(int(j), 1));
    }
    op
}

/// `(f((j+1)delta) - f((j-1)delta)) / (2 delta)`.
pub fn build_central_difference(w: &LatticeWindow) -> LatticeOperator {
    let ring = w.ring();
    let plus = ring.delta_power(rat(1, 2), -1);
    let minus = ring.neg(&plus);
    let mut op = LatticeOperator::zero(w);
    for i in 0..w.size() {
        if i + 1 < w.size() {
            op.set(i, i + 1, plus.clone());
        }
        if i > 0 {
            op.set(i, i - 1, minus.clone());
        }
    }
    op.with_margin(1)
}

/// `(f((j+1)delta) + f((j-1)delta)) / 2`.
pub fn build_average(w: &LatticeWindow) -> LatticeOperator {
    let half = w.ring().from_rational(rat(1, 2));
    let mut op = LatticeOperator::zero(w);
    for i in 0..w.size() {
        if i + 1 < w.size() {
            op.set(i, i + 1, half.clone());
        }
        if i > 0 {
            op.set(i, i - 1, half.clone());
        }
    }
    op.with_margin(1)
}

/// The unitary shift and its adjoint.
#[derive(Clone, Debug)]
pub struct ShiftPair {
    /// Raises a site indicator at `j` to `j + 1`: `(U f)(j) = f(j - 1)`.
    pub forward: LatticeOperator,
    pub backward: LatticeOperator,
}

pub fn build_shift(w: &LatticeWindow) -> ShiftPair {
    let mut u = LatticeOperator::zero(w);
    for i in 1..w.size() {
        u.set(i, i - 1, w.ring().one());
    }
    let u = u.with_margin(1);
    ShiftPair { backward: u.adjoint(), forward: u }
}

/// Site reflection `j -> -j` on a symmetric window. Its own inverse.
pub fn build_parity(w: &LatticeWindow) -> Result<LatticeOperator> {
    if !w.is_symmetric() {
        return Err(Error::AsymmetricWindow { j_min: w.j_min(), j_max: w.j_max() });
    }
    let n = w.size();
    let mut p = LatticeOperator::zero(w);
    for i in 0..n {
        p.set(i, n - 1 - i, w.ring().one());
    }
    Ok(p)
}

/// `[A, B] - expected` on the block at distance `>= margin(A) + margin(B)`
/// (or the margin of `expected`, if larger) from the edges.
pub fn interior_commutator_residual(
    a: &LatticeOperator,
    b: &LatticeOperator,
    expected: &LatticeOperator,
) -> Result<InteriorBlock> {
    let margin = (a.margin() + b.margin()).max(expected.margin());
    let size = a.dim();
    if 2 * margin >= size {
        return Err(Error::WindowTooSmall { size, margin });
    }
    a.commutator(b)?.sub(expected)?.interior(margin)
}

/// `I^2 - delta^2 Delta^2 - 1` on the interior.
pub fn casimir_residual_lattice(w: &LatticeWindow) -> Result<InteriorBlock> {
    if w.size() < 7 {
        return Err(Error::WindowTooSmall { size: w.size(), margin: 2 });
    }
    let ring = w.ring();
    let avg = build_average(w);
    let diff = build_central_difference(w);
    let delta_sq = ring.from_rational(w.params().delta_sq().clone());
    let casimir = avg.matmul(&avg)?.sub(&diff.matmul(&diff)?.scale(&delta_sq))?;
    let margin = casimir.margin();
    casimir.sub(&LatticeOperator::identity(w))?.interior(margin)
}

/// Residuals of `P x P^-1 + x` and `P U P^-1 - U^dagger` on the interior.
pub fn parity_conjugation_check(w: &LatticeWindow) -> Result<(InteriorBlock, InteriorBlock)> {
    let p = build_parity(w)?;
    let x = build_position(w);
    let shift = build_shift(w);
    let px = p.matmul(&x)?.matmul(&p)?.add(&x)?;
    let pu = p.matmul(&shift.forward)?.matmul(&p)?.sub(&shift.backward)?;
    Ok((px.interior(0)?, pu.interior(1)?))
}

/// `[x, U] - c * delta * U` on the interior; the lattice form of the deformed
/// `e(2)` relation has `c = 1`.
pub fn shift_commutator_residual(w: &LatticeWindow, sign: i64) -> Result<InteriorBlock> {
    let x = build_position(w);
    let u = build_shift(w).forward;
    let expected = u.scale(&w.ring().delta_power(int(sign), 1));
    interior_commutator_residual(&x, &u, &expected)
}

/// The three defining commutators `[Delta, x] - I`, `[I, x] - delta^2 Delta`,
/// `[I, Delta]`, in that order.
pub fn heisenberg_residuals(w: &LatticeWindow) -> Result<[InteriorBlock; 3]> {
    let ring = w.ring();
    let x = build_position(w);
    let diff = build_central_difference(w);
    let avg = build_average(w);
    let delta_sq = ring.from_rational(w.params().delta_sq().clone());
    Ok([
        interior_commutator_residual(&diff, &x, &avg)?,
        interior_commutator_residual(&avg, &x, &diff.scale(&delta_sq))?,
        interior_commutator_residual(&avg, &diff, &LatticeOperator::zero(w))?,
    ])
}

/// Diagonal of the position operator (its spectrum on the window).
pub fn position_spectrum(w: &LatticeWindow) -> Vec<DeltaNumber> {
    let x = build_position(w);
    (0..w.size()).map(|i| x.entry(i, i).clone()).collect()
}

/// Whether `entries` is zero outside the listed diagonal offsets.
pub fn is_banded(op: &LatticeOperator, offsets: &[i64]) -> bool {
    let n = op.dim();
    (0..n).all(|i| (0..n).all(|j| offsets.contains(&(j as i64 - i as i64)) || op.entry(i, j).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s_max: u32) -> DeformationParam {
        DeformationParam::new(s_max).unwrap()
    }

    fn window(j_min: i64, j_max: i64, s_max: u32) -> LatticeWindow {
        LatticeWindow::new(j_min, j_max, &params(s_max)).unwrap()
    }

    fn lattice_values(w: &LatticeWindow, f: impl Fn(i64) -> DeltaNumber) -> Vec<DeltaNumber> {
        w.labels().map(f).collect()
    }

    #[test]
    fn window_validation() {
        let p = params(2);
        assert!(LatticeWindow::new(0, 3, &p).is_err());
        assert!(LatticeWindow::new(3, 3, &p).is_err());
        assert!(LatticeWindow::new(0, 4, &p).is_ok());
        assert!(matches!(LatticeWindow::from_labels(&rat(1, 2), 7, &p), Err(Error::HalfIntegerBranch(_))));
        assert_eq!(LatticeWindow::from_labels(&int(-3), 7, &p).unwrap().j_max(), 3);
    }

    #[test]
    fn position_entries() {
        let w = window(-2, 2, 3);
        let x = build_position(&w);
        assert!(x.at(0, 0).unwrap().is_zero());
        assert_eq!(x.at(2, 2).unwrap(), &w.ring().delta_power(int(2), 1));
        assert!(x.at(1, 2).unwrap().is_zero());
        assert!(is_banded(&x, &[0]));
    }

    #[test]
    fn difference_and_average_actions() {
        let w = window(-4, 4, 2);
        let ring = w.ring();
        let diff = build_central_difference(&w);
        let avg = build_average(&w);
        let constant = lattice_values(&w, |_| ring.one());
        let linear = lattice_values(&w, |j| ring.delta_power(int(j), 1));
        let square = lattice_values(&w, |j| ring.delta_power(int(j * j), 2));
        let interior = 1..w.size() - 1;

        let d0 = diff.apply(&constant);
        let d1 = diff.apply(&linear);
        let d2 = diff.apply(&square);
        let a0 = avg.apply(&constant);
        let a1 = avg.apply(&linear);
        let a2 = avg.apply(&square);
        let delta_sq = ring.from_rational(w.params().delta_sq().clone());
        for i in interior {
            assert!(d0[i].is_zero());
            assert_eq!(d1[i], ring.one());
            assert_eq!(d2[i], ring.scale_int(&linear[i], 2));
            assert_eq!(a0[i], ring.one());
            assert_eq!(a1[i], linear[i]);
            assert_eq!(a2[i], ring.add(&square[i], &delta_sq));
        }
    }

    #[test]
    fn shift_moves_indicators_up() {
        let w = window(-3, 3, 5);
        let u = build_shift(&w);
        let mut e = vec![DeltaNumber::zero(); w.size()];
        e[w.position_of(0).unwrap()] = w.ring().one();
        let ue = u.forward.apply(&e);
        assert_eq!(ue[w.position_of(1).unwrap()], w.ring().one());
        assert_eq!(ue.iter().filter(|v| !v.is_zero()).count(), 1);
    }

    #[test]
    fn shift_reconstructs_average_and_difference() {
        for s_max in [1, 2, 3, 9] {
            let w = window(-5, 6, s_max);
            let ring = w.ring();
            let u = build_shift(&w);
            let avg = u.forward.add(&u.backward).unwrap().scale(&ring.from_rational(rat(1, 2)));
            let diff = u.forward.sub(&u.backward).unwrap().scale(&ring.delta_power(rat(-1, 2), -1));
            let a = avg.sub(&build_average(&w)).unwrap().interior(1).unwrap();
            let d = diff.sub(&build_central_difference(&w)).unwrap().interior(1).unwrap();
            assert!(a.is_zero() && d.is_zero());
            let unit = u.backward.matmul(&u.forward).unwrap().sub(&LatticeOperator::identity(&w)).unwrap();
            assert!(unit.interior(1).unwrap().is_zero());
        }
    }

    #[test]
    fn heisenberg_relations_vanish_on_interior() {
        for s_max in [1, 2, 4, 7] {
            let w = window(-6, 4, s_max);
            for r in heisenberg_residuals(&w).unwrap() {
                assert!(r.is_zero());
            }
        }
    }

    #[test]
    fn boundary_rows_are_corrupted_and_excluded() {
        // difference and average commute, but truncation spoils the corner rows
        let w = window(-3, 3, 2);
        let diff = build_central_difference(&w);
        let avg = build_average(&w);
        let full = diff.commutator(&avg).unwrap();
        assert!(full.interior(0).unwrap().nonzero_count() > 0);
        let inner = interior_commutator_residual(&diff, &avg, &LatticeOperator::zero(&w)).unwrap();
        assert!(inner.is_zero());
        assert!(inner.excludes(0, 3));
    }

    #[test]
    fn casimir_examples() {
        let w = window(-5, 5, 3);
        let r = casimir_residual_lattice(&w).unwrap();
        assert!(r.is_zero());
        assert!(r.excludes(1, 5));
        assert!(casimir_residual_lattice(&window(0, 5, 3)).is_err());

        let ring = w.ring();
        let avg = build_average(&w);
        let diff = build_central_difference(&w);
        let delta_sq = ring.from_rational(w.params().delta_sq().clone());
        let cas = avg.matmul(&avg).unwrap().sub(&diff.matmul(&diff).unwrap().scale(&delta_sq)).unwrap();
        let linear = lattice_values(&w, |j| ring.delta_power(int(j), 1));
        let out = cas.apply(&linear);
        for i in 2..w.size() - 2 {
            assert_eq!(out[i], linear[i]);
        }
    }

    #[test]
    fn window_too_small_for_margin() {
        let w = window(0, 4, 2);
        let x = build_position(&w);
        let avg = build_average(&w).with_margin(3);
        assert!(matches!(interior_commutator_residual(&avg, &x, &avg), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn shift_commutator_sign() {
        for s_max in [1, 2, 4, 9] {
            let w = window(-4, 5, s_max);
            assert!(shift_commutator_residual(&w, 1).unwrap().is_zero());
            assert!(!shift_commutator_residual(&w, -1).unwrap().is_zero());
        }
    }

    #[test]
    fn parity_examples() {
        let w = window(-4, 4, 3);
        let (px, pu) = parity_conjugation_check(&w).unwrap();
        assert!(px.is_zero() && pu.is_zero());
        let p = build_parity(&w).unwrap();
        assert_eq!(p.matmul(&p).unwrap().with_margin(0), LatticeOperator::identity(&w));
        let spectrum = position_spectrum(&w);
        let ring = w.ring();
        for (a, b) in spectrum.iter().zip(spectrum.iter().rev()) {
            assert_eq!(*a, ring.neg(b));
        }
        assert!(matches!(parity_conjugation_check(&window(-3, 4, 3)), Err(Error::AsymmetricWindow { .. })));
    }

    #[test]
    fn mismatched_windows_rejected() {
        let a = build_position(&window(-3, 3, 2));
        let b = build_position(&window(-3, 3, 3));
        assert_eq!(a.matmul(&b), Err(Error::WindowMismatch));
    }
}
