use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar. Reduced with a positive denominator by construction.
pub type RationalScalar = BigRational;

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact integer square root if `n` is a perfect square.
pub fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact rational square root if both numerator and denominator are squares.
pub fn rational_sqrt_exact(q: &BigRational) -> Option<BigRational> {
    let n = integer_sqrt_exact(q.numer())?;
    let d = integer_sqrt_exact(q.denom())?;
    Some(BigRational::new(n, d))
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // ratio of huge integers: scale both down by a common power of two
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `sqrt(radicand)` with a non-negative rational radicand.
///
/// `sqrt` is injective on the non-negative rationals, so two values are equal
/// exactly when their radicands are; no simplification is needed for that.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    radicand: BigRational,
}

impl SqrtRational {
    /// Returns `None` for a negative radicand.
    pub fn new(radicand: BigRational) -> Option<Self> {
        (!radicand.is_negative()).then_some(SqrtRational { radicand })
    }

    pub fn zero() -> Self {
        SqrtRational { radicand: BigRational::zero() }
    }

    pub fn one() -> Self {
        SqrtRational { radicand: BigRational::one() }
    }

    /// `|q|` written as a square root.
    pub fn from_rational(q: &BigRational) -> Self {
        SqrtRational { radicand: q * q }
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.radicand.is_zero()
    }

    /// The exact rational value, when the radicand is a perfect square.
    pub fn to_rational(&self) -> Option<BigRational> {
        rational_sqrt_exact(&self.radicand)
    }

    pub fn mul(&self, other: &SqrtRational) -> SqrtRational {
        SqrtRational { radicand: &self.radicand * &other.radicand }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &SqrtRational) -> Option<SqrtRational> {
        (!other.is_zero()).then(|| SqrtRational { radicand: &self.radicand / &other.radicand })
    }

    pub fn recip(&self) -> Option<SqrtRational> {
        SqrtRational::one().div(self)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.radicand).sqrt()
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "sqrt({})", self.radicand),
        }
    }
}

/// `rational * sqrt(radicand) * sqrt(s_max / pi)`: the form taken by every
/// inner product of deformed number states.
///
/// Diagonal Gram entries always have a square radicand, so they reduce to a
/// plain rational multiple of the unit. Off-diagonal entries keep a radical
/// coming from the normalization products of the states.
#[derive(Clone, Debug)]
pub struct ScaledRational {
    s_max: u32,
    rational: BigRational,
    radicand: BigRational,
}

impl ScaledRational {
    pub fn new(s_max: u32, rational: BigRational) -> Self {
        Self::with_radical(s_max, rational, &SqrtRational::one())
    }

    pub fn zero(s_max: u32) -> Self {
        Self::new(s_max, BigRational::zero())
    }

    pub fn with_radical(s_max: u32, rational: BigRational, radical: &SqrtRational) -> Self {
        let mut v = ScaledRational { s_max, rational, radicand: radical.radicand().clone() };
        v.canonicalize();
        v
    }

    fn canonicalize(&mut self) {
        if self.rational.is_zero() || self.radicand.is_zero() {
            self.rational = BigRational::zero();
            self.radicand = BigRational::one();
            return;
        }
        // sqrt(a/b) = sqrt(a*b) / b
        let den = self.radicand.denom().clone();
        let mut n = self.radicand.numer() * &den;
        self.rational /= BigRational::from_integer(den);
        let mut outside = BigInt::one();
        if let Some(r) = integer_sqrt_exact(&n) {
            outside = r;
            n = BigInt::one();
        } else {
            for p in small_primes() {
                let p = BigInt::from(p);
                let p2 = &p * &p;
                while (&n % &p2).is_zero() {
                    n /= &p2;
                    outside *= &p;
                }
            }
        }
        self.rational *= BigRational::from_integer(outside);
        self.radicand = BigRational::from_integer(n);
    }

    pub fn s_max(&self) -> u32 {
        self.s_max
    }

    /// Rational part of the coefficient of `sqrt(s_max/pi)`.
    pub fn rational(&self) -> &BigRational {
        &self.rational
    }

    /// Remaining radicand after extracting square factors.
    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    /// The coefficient of `sqrt(s_max/pi)` when it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        rational_sqrt_exact(&self.radicand).map(|r| &self.rational * r)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.rational.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.rational.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Square of the coefficient of `sqrt(s_max/pi)`; exact.
    pub fn coefficient_squared(&self) -> BigRational {
        &self.rational * &self.rational * &self.radicand
    }

    pub fn scale(&self, q: &BigRational) -> ScaledRational {
        let mut v = self.clone();
        v.rational *= q;
        v.canonicalize();
        v
    }

    /// Coefficient of `sqrt(s_max/pi)` as a float.
    pub fn coefficient_f64(&self) -> f64 {
        rational_to_f64(&self.rational) * rational_to_f64(&self.radicand).sqrt()
    }

    pub fn to_f64(&self) -> f64 {
        self.coefficient_f64() * (self.s_max as f64 / std::f64::consts::PI).sqrt()
    }
}

impl PartialEq for ScaledRational {
    fn eq(&self, other: &Self) -> bool {
        self.s_max == other.s_max
            && self.signum() == other.signum()
            && self.coefficient_squared() == other.coefficient_squared()
    }
}

impl Eq for ScaledRational {}

impl fmt::Display for ScaledRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{} * sqrt({}/pi)", self.rational, self.s_max)
        } else {
            write!(f, "{} * sqrt({}) * sqrt({}/pi)", self.rational, self.radicand, self.s_max)
        }
    }
}

fn small_primes() -> impl Iterator<Item = u32> {
    (2u32..1000).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_rational_exact_roots() {
        let s = SqrtRational::new(rat(9, 4)).unwrap();
        assert_eq!(s.to_rational(), Some(rat(3, 2)));
        assert_eq!(SqrtRational::new(rat(3, 2)).unwrap().to_rational(), None);
        assert!(SqrtRational::new(rat(-1, 2)).is_none());
    }

    #[test]
    fn sqrt_rational_products() {
        let a = SqrtRational::new(rat(3, 2)).unwrap();
        let b = SqrtRational::new(rat(2, 3)).unwrap();
        assert_eq!(a.mul(&b).to_rational(), Some(int(1)));
        assert_eq!(a.div(&a).unwrap(), SqrtRational::one());
        assert!(a.div(&SqrtRational::zero()).is_none());
    }

    #[test]
    fn scaled_rational_canonical_form() {
        // 1/3 * sqrt(8/3) = 2/9 * sqrt(6)
        let v = ScaledRational::with_radical(2, rat(1, 3), &SqrtRational::new(rat(8, 3)).unwrap());
        assert_eq!(v.rational(), &rat(2, 9));
        assert_eq!(v.radicand(), &int(6));
        let w = ScaledRational::with_radical(2, rat(2, 9), &SqrtRational::new(int(6)).unwrap());
        assert_eq!(v, w);
        assert_ne!(v, w.scale(&int(-1)));
    }

    #[test]
    fn scaled_rational_folds_squares() {
        let v = ScaledRational::with_radical(5, rat(1, 2), &SqrtRational::new(rat(4, 9)).unwrap());
        assert_eq!(v.as_rational(), Some(rat(1, 3)));
        assert_eq!(v, ScaledRational::new(5, rat(1, 3)));
    }

    #[test]
    fn zero_is_canonical() {
        let z = ScaledRational::with_radical(3, int(0), &SqrtRational::new(int(7)).unwrap());
        assert!(z.is_zero());
        assert_eq!(z, ScaledRational::zero(3));
    }

    #[test]
    fn huge_rational_to_float() {
        let big = BigInt::from(10).pow(400);
        let q = BigRational::new(&big * BigInt::from(3), &big * BigInt::from(2));
        assert_eq!(rational_to_f64(&q), 1.5);
        let q = BigRational::new(BigInt::from(1), BigInt::from(10).pow(400) + 1);
        assert!(rational_to_f64(&q) < 1e-300);
    }
}
