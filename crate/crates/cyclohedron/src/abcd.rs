//! The `(a, b, c, d)` distant pairs.
//!
//! For parameters `b < c <= d` and a staircase of tooth counts, two
//! triangulations are built whose flip distance provably exceeds
//! `3d - (b/2 + (2c - b)/a + 3a + 5)`:
//!
//! * `t_minus`: diagonal `{0, 0̄}`; in the upper half a comb at `0` spanning
//!   `c..=d`, a comb at `1` spanning `b..=c`, and a zigzag filling the
//!   polygon on `1..=b`; mirrored below.
//! * `t_plus`: an ear at `0` (its only interior edge through `1` is
//!   `{1, d̄}`), a staircase of combs hanging from `d̄, d̄ - 1, ..., c̄` whose
//!   consecutive combs share a tooth endpoint, and a central zigzag joining
//!   the last tooth `{l, c̄}` to its mirror; mirrored throughout.
//!
//! The parameter `a` is derived from the interior tooth counts:
//! `a = (τ⁻ + τ⁺)/2 + 1` where `τ⁻/2 = d - b - 1` and `τ⁺/2` is the number
//! of staircase teeth beyond two per comb. Admission additionally requires
//! `d <= a + b` and the strict gate `a + ceil(b/2) + 1 < d`, which keeps the
//! zigzag start `l` left of the comb pocket at `1`.
//!
//! # Example
//!
//! ```
//! use cyclohedron::abcd::build_abcd_pair;
//! use num_rational::Ratio;
//!
//! # fn main() -> cyclohedron::Result<()> {
//! let pair = build_abcd_pair(4, 5, 6, None)?;
//! assert_eq!(pair.params.a, 2);
//! assert_eq!(pair.params.staircase, [2, 2]);
//! assert_eq!(pair.params.lower_bound(), Ratio::from_integer(2));
//! # Ok(())
//! # }
//! ```

use num_rational::Ratio;

use crate::bounds::pair_lower_bound;
use crate::error::{Error, Result};
use crate::polygon::{Edge, PolygonDim, Vertex};
use crate::triangulation::CsTriangulation;

/// Validated parameters of a distant pair, including derived quantities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbcdParams {
    pub a: u16,
    pub b: u16,
    pub c: u16,
    pub d: u16,
    /// Tooth counts of the `t_plus` combs at `d̄, d̄ - 1, ..., c̄`, each at
    /// least 2; length `d - c + 1`.
    pub staircase: Vec<u16>,
    /// `l`: the shared endpoint of the last staircase tooth `{l, c̄}`, where
    /// the central zigzag begins. Equals `sum(staircase) - (d - c)`.
    pub zigzag_start: u16,
    /// `τ⁻ = 2(d - b - 1)`: interior teeth of `t_minus` (both halves).
    pub teeth_minus: u16,
    /// `τ⁺`: staircase teeth of `t_plus` beyond two per comb (both halves).
    pub teeth_plus: u16,
}

impl AbcdParams {
    /// `k = floor(b/2) + 1`, the tooth count of the comb at `1` in
    /// `t_minus`. The admission gate is equivalent to `a + b - d + 2 < k`.
    pub fn k(&self) -> u16 {
        self.b / 2 + 1
    }

    /// The proven flip distance lower bound for this pair, exact.
    pub fn lower_bound(&self) -> Ratio<i64> {
        pair_lower_bound(self.a, self.b, self.c, self.d)
    }
}

/// A distant pair: parameters plus the two triangulations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbcdPair {
    pub params: AbcdParams,
    pub t_minus: CsTriangulation,
    pub t_plus: CsTriangulation,
}

/// Builds the distant pair for `(b, c, d)` and the given staircase (default:
/// two teeth per comb). Fails with [`Error::ConstraintViolation`] naming the
/// first violated inequality if the parameters are out of range, do not
/// admit the construction geometrically, or fail the admission gate.
pub fn build_abcd_pair(b: u16, c: u16, d: u16, staircase: Option<&[u16]>) -> Result<AbcdPair> {
    let default_stairs;
    let stairs = match staircase {
        Some(s) => s,
        None => {
            let len = check_bcd(b, c, d)?;
            default_stairs = vec![2u16; len as usize];
            &default_stairs
        }
    };
    let pair = construct(b, c, d, stairs)?;
    let p = &pair.params;
    if (p.d as u32) > (p.a as u32) + (p.b as u32) {
        return Err(Error::ConstraintViolation {
            inequality: "d <= a + b",
            detail: format!("a = {}, b = {}, d = {}", p.a, p.b, p.d),
        });
    }
    if (p.a as u32) + (p.b as u32).div_ceil(2) + 1 >= p.d as u32 {
        return Err(Error::ConstraintViolation {
            inequality: "a + ceil(b/2) + 1 < d",
            detail: format!(
                "a = {}, b = {}, d = {}; the zigzag start would collide with the comb at 1",
                p.a, p.b, p.d
            ),
        });
    }
    Ok(pair)
}

/// Like [`build_abcd_pair`] but skips the two distance-related admission
/// inequalities, building any geometrically realizable pair. Useful for
/// inspecting rejected parameter sets.
pub fn build_abcd_unchecked(b: u16, c: u16, d: u16, staircase: &[u16]) -> Result<AbcdPair> {
    construct(b, c, d, staircase)
}

fn check_bcd(b: u16, c: u16, d: u16) -> Result<u16> {
    if b < 3 {
        return Err(Error::ConstraintViolation {
            inequality: "b >= 3",
            detail: format!("b = {b}"),
        });
    }
    if !(b < c && c <= d) {
        return Err(Error::ConstraintViolation {
            inequality: "b < c <= d",
            detail: format!("b = {b}, c = {c}, d = {d}"),
        });
    }
    Ok(d - c + 1)
}

fn construct(b: u16, c: u16, d: u16, staircase: &[u16]) -> Result<AbcdPair> {
    let combs = check_bcd(b, c, d)?;
    if staircase.len() != combs as usize {
        return Err(Error::InvalidStaircase(format!(
            "need {combs} combs for c = {c}, d = {d}, got {}",
            staircase.len()
        )));
    }
    if let Some(&t) = staircase.iter().find(|&&t| t < 2) {
        return Err(Error::InvalidStaircase(format!(
            "every comb needs at least 2 teeth, got {t}"
        )));
    }
    let sum: u32 = staircase.iter().map(|&t| t as u32).sum();
    let l = sum - (d - c) as u32;
    if l + 1 > c as u32 {
        return Err(Error::ConstraintViolation {
            inequality: "l <= c - 1",
            detail: format!("zigzag start l = {l} reaches past vertex c - 1 = {}", c - 1),
        });
    }
    let l = l as u16;

    let teeth_minus = 2 * (d - b - 1);
    let teeth_plus = 2 * (sum as u16 - 2 * combs);
    let a = (teeth_minus + teeth_plus) / 2 + 1;

    let dim = PolygonDim::new(d)?;
    let t_minus = build_t_minus(dim, b, c);
    let t_plus = build_t_plus(dim, c, staircase, l);
    t_minus.validate().into_result()?;
    t_plus.validate().into_result()?;

    Ok(AbcdPair {
        params: AbcdParams {
            a,
            b,
            c,
            d,
            staircase: staircase.to_vec(),
            zigzag_start: l,
            teeth_minus,
            teeth_plus,
        },
        t_minus,
        t_plus,
    })
}

fn build_t_minus(dim: PolygonDim, b: u16, c: u16) -> CsTriangulation {
    let d = dim.d();
    let mut edges = vec![Edge::new(Vertex(0), dim.opposite(Vertex(0)))];
    let mut add = |e: Edge| {
        edges.push(e);
        edges.push(dim.mirror(e));
    };
    for y in c..=d {
        add(Edge::new(0u16, y));
    }
    for y in b..=c {
        add(Edge::new(1u16, y));
    }
    // Zigzag on the polygon 1..=b: alternately {m + 1, b + 1 - m} and
    // {m + 1, b - m}, exactly b - 3 chords.
    for k in 1..=b.saturating_sub(3) {
        let m = k.div_ceil(2);
        let e = if k % 2 == 1 {
            Edge::new(m + 1, b + 1 - m)
        } else {
            Edge::new(m + 1, b - m)
        };
        add(e);
    }
    CsTriangulation::new(dim, edges)
}

fn build_t_plus(dim: PolygonDim, c: u16, staircase: &[u16], l: u16) -> CsTriangulation {
    let d = dim.d();
    let mut edges = Vec::new();
    let mut add = |e: Edge| {
        edges.push(e);
        edges.push(dim.mirror(e));
    };
    let mut u = 1u16;
    for (i, &t) in staircase.iter().enumerate() {
        let vbar = dim.opposite(Vertex(d - i as u16));
        for j in 0..t {
            add(Edge::new(Vertex(u + j), vbar));
        }
        u += t - 1;
    }
    debug_assert_eq!(u, l, "staircase must end at the zigzag start");
    // Central zigzag between {l, c̄} and its mirror {c, l̄}: a monotone
    // alternating chord path, symmetric under mirroring, containing exactly
    // one diagonal.
    let s = c - l;
    for t in 0..s {
        add(Edge::new(Vertex(l + t), dim.opposite(Vertex(c - 1 - t))));
    }
    for t in 0..s.saturating_sub(1) {
        add(Edge::new(
            Vertex(l + t + 1),
            dim.opposite(Vertex(c - 1 - t)),
        ));
    }
    CsTriangulation::new(dim, edges)
}

/// Every admissible pair for dimension `d`: all `(b, c)` with
/// `3 <= b < c <= d` and all staircases accepted by [`build_abcd_pair`].
/// Staircase sums are bounded by `l <= c - 1`, so the search is finite.
pub fn enumerate_pairs(d: u16) -> Vec<AbcdPair> {
    let mut out = Vec::new();
    for b in 3..d {
        for c in (b + 1)..=d {
            let combs = (d - c + 1) as usize;
            let max_sum = (c - 1 + d - c) as u32; // from l <= c - 1
            let mut stairs = vec![2u16; combs];
            loop {
                if stairs.iter().map(|&t| t as u32).sum::<u32>() <= max_sum {
                    if let Ok(pair) = build_abcd_pair(b, c, d, Some(&stairs)) {
                        out.push(pair);
                    }
                }
                if !next_staircase(&mut stairs, max_sum) {
                    break;
                }
            }
        }
    }
    out
}

/// Advances `stairs` through all tooth vectors with entries `>= 2` and sum
/// `<= max_sum`, odometer style. Returns false once exhausted.
fn next_staircase(stairs: &mut [u16], max_sum: u32) -> bool {
    for i in 0..stairs.len() {
        stairs[i] += 1;
        let sum: u32 = stairs.iter().map(|&t| t as u32).sum();
        if sum <= max_sum {
            return true;
        }
        stairs[i] = 2;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::triangulation;

    fn edges(t: &CsTriangulation) -> Vec<(u16, u16)> {
        t.interior().iter().map(|e| (e.lo().0, e.hi().0)).collect()
    }

    #[test]
    fn small_parameters_fail_the_gate_but_build_unchecked() {
        match build_abcd_pair(3, 4, 4, Some(&[2])) {
            Err(Error::ConstraintViolation { inequality, .. }) => {
                assert_eq!(inequality, "a + ceil(b/2) + 1 < d");
            }
            other => panic!("expected gate rejection, got {other:?}"),
        }
        let pair = build_abcd_unchecked(3, 4, 4, &[2]).unwrap();
        assert_eq!(pair.params.a, 1);
        assert_eq!(pair.params.zigzag_start, 2);
        assert_eq!(pair.params.k(), 2);
        let dim = PolygonDim::new(4).unwrap();
        assert_eq!(
            pair.t_minus,
            triangulation(
                dim,
                &[(0, 5), (0, 4), (1, 4), (1, 3), (6, 9), (6, 8), (5, 9)]
            )
        );
        assert_eq!(
            pair.t_plus,
            triangulation(
                dim,
                &[(1, 9), (2, 9), (2, 8), (3, 8), (3, 7), (4, 7), (4, 6)]
            )
        );
    }

    #[test]
    fn six_dimensional_example() {
        let pair = build_abcd_pair(4, 5, 6, Some(&[2, 2])).unwrap();
        assert_eq!(pair.params.a, 2);
        assert_eq!(pair.params.zigzag_start, 3);
        assert_eq!(pair.params.teeth_minus, 2);
        assert_eq!(pair.params.teeth_plus, 0);
        let dim = PolygonDim::new(6).unwrap();
        assert_eq!(
            pair.t_minus,
            triangulation(
                dim,
                &[
                    (0, 7),
                    (0, 5),
                    (0, 6),
                    (1, 4),
                    (1, 5),
                    (2, 4),
                    (7, 12),
                    (7, 13),
                    (8, 11),
                    (8, 12),
                    (9, 11)
                ]
            )
        );
        assert_eq!(
            pair.t_plus,
            triangulation(
                dim,
                &[
                    (1, 13),
                    (2, 13),
                    (2, 12),
                    (3, 12),
                    (3, 11),
                    (4, 11),
                    (4, 10),
                    (5, 10),
                    (5, 9),
                    (6, 9),
                    (6, 8)
                ]
            )
        );
        assert_eq!(pair.params.lower_bound(), Ratio::from_integer(2));
    }

    #[test]
    fn plus_side_is_a_single_zigzag_path_for_pure_staircases() {
        // Every vertex of t_plus meets at most two interior edges and the
        // edges chain up into one path: degree-1 endpoints exactly twice.
        let pair = build_abcd_pair(4, 5, 6, Some(&[2, 2])).unwrap();
        let mut degree = vec![0u32; 14];
        for (u, v) in edges(&pair.t_plus) {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        assert_eq!(degree.iter().filter(|&&d| d == 1).count(), 2);
        assert!(degree.iter().all(|&d| d <= 2));
    }

    #[test]
    fn default_staircase_is_two_teeth_per_comb() {
        let explicit = build_abcd_pair(4, 5, 6, Some(&[2, 2])).unwrap();
        let implicit = build_abcd_pair(4, 5, 6, None).unwrap();
        assert_eq!(explicit, implicit);
    }

    #[test]
    fn staircase_shape_is_checked() {
        assert!(matches!(
            build_abcd_pair(4, 5, 6, Some(&[2])),
            Err(Error::InvalidStaircase(_))
        ));
        assert!(matches!(
            build_abcd_pair(4, 5, 6, Some(&[2, 1])),
            Err(Error::InvalidStaircase(_))
        ));
    }

    #[test]
    fn parameter_order_is_checked() {
        assert!(matches!(
            build_abcd_pair(5, 5, 6, None),
            Err(Error::ConstraintViolation {
                inequality: "b < c <= d",
                ..
            })
        ));
        assert!(matches!(
            build_abcd_pair(2, 5, 6, None),
            Err(Error::ConstraintViolation {
                inequality: "b >= 3",
                ..
            })
        ));
    }

    #[test]
    fn zigzag_start_overflow_is_rejected() {
        // (5, 4, 5, 9): passes the order checks and the admission
        // arithmetic, but the staircase pushes l past c - 1.
        let staircase = [2u16; 5];
        match build_abcd_unchecked(4, 5, 9, &staircase) {
            Err(Error::ConstraintViolation { inequality, .. }) => {
                assert_eq!(inequality, "l <= c - 1")
            }
            other => panic!("expected geometric rejection, got {other:?}"),
        }
    }

    #[test]
    fn both_sides_validate_and_share_no_interior_edge() {
        for d in 4..=8 {
            for pair in enumerate_pairs(d) {
                assert!(pair.t_minus.is_valid());
                assert!(pair.t_plus.is_valid());
                for e in pair.t_minus.interior() {
                    assert!(
                        !pair.t_plus.contains(*e),
                        "shared edge {e} at b = {}, c = {}, d = {d}",
                        pair.params.b,
                        pair.params.c
                    );
                }
                assert!(pair.params.a > pair.params.teeth_minus / 2);
            }
        }
    }

    #[test]
    fn enumerated_pairs_include_the_known_examples() {
        let pairs = enumerate_pairs(6);
        assert!(pairs
            .iter()
            .any(|p| (p.params.a, p.params.b, p.params.c) == (2, 4, 5)));
        assert!(!enumerate_pairs(4)
            .iter()
            .any(|p| (p.params.b, p.params.c) == (3, 4)));
    }
}
