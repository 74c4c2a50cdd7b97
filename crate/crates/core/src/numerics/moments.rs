use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Full-period average `(1/2pi) * int_0^{2pi} sin^{2a} cos^{2b}`, i.e.
/// `(2a)! (2b)! / (4^{a+b} a! b! (a+b)!)`.
///
/// Odd powers average to zero; callers handle them before reaching here.
pub fn wallis_moment(a: u32, b: u32) -> BigRational {
    let num = factorial(2 * a) * factorial(2 * b);
    let den = (BigUint::one() << (2 * (a + b)) as usize) * factorial(a) * factorial(b) * factorial(a + b);
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::{int, rat, rational_to_f64};
    use std::f64::consts::PI;

    fn trapezoid_average(a: u32, b: u32, nodes: usize) -> f64 {
        (0..nodes)
            .map(|k| {
                let th = 2.0 * PI * k as f64 / nodes as f64;
                th.sin().powi(2 * a as i32) * th.cos().powi(2 * b as i32)
            })
            .sum::<f64>()
            / nodes as f64
    }

    #[test]
    fn small_moments() {
        assert_eq!(wallis_moment(0, 0), int(1));
        assert_eq!(wallis_moment(1, 0), rat(1, 2));
        assert_eq!(wallis_moment(0, 2), rat(3, 8));
    }

    #[test]
    fn sin2_cos2_against_fine_quadrature() {
        // oracle: midpoint rule with a million panels, non-aliased node count
        let n = 1_000_003;
        let h = 2.0 * PI / n as f64;
        let avg: f64 = (0..n)
            .map(|k| {
                let th = (k as f64 + 0.5) * h;
                (th.sin() * th.cos()).powi(2)
            })
            .sum::<f64>()
            / n as f64;
        assert!((avg - 0.125).abs() < 1e-12);
        assert_eq!(wallis_moment(1, 1), rat(1, 8));
    }

    #[test]
    fn symmetric_in_arguments() {
        for a in 0..=12 {
            for b in 0..=12 {
                assert_eq!(wallis_moment(a, b), wallis_moment(b, a));
            }
        }
    }

    #[test]
    fn matches_trapezoid_rule() {
        for a in 0..=8 {
            for b in 0..=8 {
                let nodes = (4 * (a + b) + 8) as usize;
                let exact = rational_to_f64(&wallis_moment(a, b));
                let approx = trapezoid_average(a, b, nodes);
                assert!((exact - approx).abs() < 1e-13, "a={a} b={b}: {exact} vs {approx}");
            }
        }
    }
}
