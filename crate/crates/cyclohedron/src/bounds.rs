//! Distance lower bounds and the asymptotic parameter choice.
//!
//! # Example
//!
//! ```
//! use cyclohedron::bounds::{choose_a, chosen_a_lower_bound, diameter_lower_bound};
//! use num_rational::Ratio;
//!
//! # fn main() -> cyclohedron::Result<()> {
//! let a = choose_a(100)?;
//! assert_eq!(a, 4);
//! assert_eq!(chosen_a_lower_bound(100, a as u16), Ratio::new(421, 2));
//! assert!(diameter_lower_bound(100) < 210.5);
//! # Ok(())
//! # }
//! ```

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact lower bound on the flip distance of the `(a, b, c, d)` pair:
/// `3d - (b/2 + (2c - b)/a + 3a + 5)`.
pub fn pair_lower_bound(a: u16, b: u16, c: u16, d: u16) -> Ratio<i64> {
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    Ratio::from_integer(3 * d)
        - (Ratio::new(b, 2) + Ratio::new(2 * c - b, a) + Ratio::from_integer(3 * a + 5))
}

/// Lower bound obtained from the pair family `b = d - a`, `c = d - a + 1`
/// with a pure zigzag: `(5/2)(d - a) - (d + 2)/a - 4`, exact.
pub fn chosen_a_lower_bound(d: u16, a: u16) -> Ratio<i64> {
    let (d, a) = (d as i64, a as i64);
    Ratio::new(5 * (d - a), 2) - Ratio::new(d + 2, a) - Ratio::from_integer(4)
}

/// The dimension-only lower bound `5d/2 - 4*sqrt(d) - 4` on the flip graph
/// diameter.
pub fn diameter_lower_bound(d: u16) -> f64 {
    2.5 * d as f64 - 4.0 * (d as f64).sqrt() - 4.0
}

/// Does `a` satisfy every requirement of [`choose_a`] for this `d`?
///
/// The requirements: the exact inequality `(5/2)a + (d + 2)/a <= 4*sqrt(d)`
/// (tested in integers as `(5a^2 + 2d + 4)^2 <= 64 a^2 d`), and the pair
/// `b = d - a`, `c = d - a + 1` with an all-2 staircase admissible, which
/// reduces to `a + ceil((d - a)/2) + 1 < d` and `2a <= d - 1`.
pub fn choice_is_valid(d: u32, a: u32) -> bool {
    if a == 0 || d < 6 || 2 * a > d - 1 {
        return false;
    }
    let (du, au) = (d as u128, a as u128);
    let lhs = 5 * au * au + 2 * du + 4;
    if lhs * lhs > 64 * au * au * du {
        return false;
    }
    let b = d - a;
    a + b.div_ceil(2) + 1 < d
}

/// Smallest `a` making the chosen-`a` bound both true and realizable for
/// dimension `d >= 6`.
pub fn choose_a(d: u32) -> Result<u32> {
    if d < 6 {
        return Err(Error::DimensionTooSmall {
            min: 6,
            got: d.min(u16::MAX as u32) as u16,
        });
    }
    (1..=d / 2)
        .find(|&a| choice_is_valid(d, a))
        .ok_or(Error::ConstraintViolation {
            inequality: "(5/2)a + (d + 2)/a <= 4*sqrt(d)",
            detail: format!("no valid a exists for d = {d}"),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn pair_bound_examples() {
        assert_eq!(pair_lower_bound(1, 3, 4, 4), Ratio::new(-5, 2));
        assert_eq!(pair_lower_bound(3, 7, 8, 9), Ratio::new(13, 2));
        assert_eq!(pair_lower_bound(2, 4, 5, 6), Ratio::from_integer(2));
    }

    #[test]
    fn chosen_a_bound_example() {
        assert_eq!(chosen_a_lower_bound(6, 2), Ratio::from_integer(2));
    }

    #[test]
    fn chosen_a_bound_dominates_dimension_bound() {
        // The chosen-a bound is at least the closed-form sqrt bound.
        for d in 6..=200u16 {
            let a = choose_a(d as u32).unwrap() as u16;
            let exact = chosen_a_lower_bound(d, a).to_f64().unwrap();
            assert!(
                exact >= diameter_lower_bound(d) - 1e-9,
                "d = {d}, a = {a}: {exact} < {}",
                diameter_lower_bound(d)
            );
        }
    }

    #[test]
    fn dimension_bound_values() {
        assert_eq!(diameter_lower_bound(4), -2.0);
        assert_eq!(diameter_lower_bound(100), 206.0);
        assert!((diameter_lower_bound(1) - (-5.5)).abs() < 1e-12);
    }

    #[test]
    fn choose_a_examples() {
        assert_eq!(choose_a(6).unwrap(), 2);
        assert_eq!(choose_a(100).unwrap(), 4);
        assert!(choose_a(5).is_err());
    }

    #[test]
    fn choose_a_is_minimal() {
        for d in 6..=500 {
            let a = choose_a(d).unwrap();
            assert!(choice_is_valid(d, a));
            for smaller in 1..a {
                assert!(!choice_is_valid(d, smaller), "d = {d}: {smaller} < {a}");
            }
        }
    }
}
