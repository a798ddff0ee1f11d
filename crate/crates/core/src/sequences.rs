//! Closed forms for the four packing families: circle counts, container
//! dimensions, densities, their limits and signed residuals.
//!
//! All lengths are in units of the packed radius `r` and all areas in units
//! of `r²`, so `r` never appears explicitly.

use std::fmt;
use std::str::FromStr;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, rat, PiScaled, Root3Scalar};

/// Indices above this bound are rejected so that counts fit in a `u64`.
pub const MAX_INDEX: u64 = 1_000_000_000;

/// The four configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PackingCase {
    /// Triangular arrangement inside a concentric circle.
    A,
    /// Triangular arrangement inside an equilateral triangle.
    B,
    /// Hexagonal arrangement inside a concentric circle.
    C,
    /// Hexagonal arrangement inside a regular hexagon.
    D,
}

impl PackingCase {
    pub const ALL: [PackingCase; 4] = [Self::A, Self::B, Self::C, Self::D];

    /// Arrangement of circle centers is a triangle (A, B) rather than a
    /// hexagon (C, D).
    pub fn is_triangular(self) -> bool {
        matches!(self, Self::A | Self::B)
    }

    /// Container is a circle (A, C) rather than a polygon (B, D).
    pub fn circle_bounded(self) -> bool {
        matches!(self, Self::A | Self::C)
    }

    /// Smallest valid index under `domain`.
    pub fn min_index(self, domain: Domain) -> u64 {
        match (self, domain) {
            (Self::A, _) => 1,
            (Self::B, Domain::Table) => 2,
            (Self::B, Domain::Extended) => 1,
            (Self::C, _) => 0,
            (Self::D, Domain::Table) => 1,
            (Self::D, Domain::Extended) => 0,
        }
    }

    pub fn check_index(self, i: u64, domain: Domain) -> Result<()> {
        let min = self.min_index(domain);
        if i < min || i > MAX_INDEX {
            Err(Error::IndexOutOfDomain {
                case: self,
                index: i,
                min,
            })
        } else {
            Ok(())
        }
    }

    pub fn letter(self) -> char {
        match self {
            Self::A => 'a',
            Self::B => 'b',
            Self::C => 'c',
            Self::D => 'd',
        }
    }
}

impl fmt::Display for PackingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for PackingCase {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Self::A),
            "b" => Ok(Self::B),
            "c" => Ok(Self::C),
            "d" => Ok(Self::D),
            other => Err(format!("unknown case `{other}` (expected a, b, c or d)")),
        }
    }
}

/// Which outer triangle side to use for case B.
///
/// `PaperFormula` is `(2i − 1 + 2√3)`, the side every published table value
/// is computed from. `TangentOffset` is `(2i − 2 + 2√3)`, the triangle
/// whose sides touch the outer rows of circles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideMode {
    #[default]
    #[serde(rename = "paper")]
    PaperFormula,
    #[serde(rename = "tangent")]
    TangentOffset,
}

impl fmt::Display for SideMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PaperFormula => "paper",
            Self::TangentOffset => "tangent",
        })
    }
}

impl FromStr for SideMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "paper" => Ok(Self::PaperFormula),
            "tangent" => Ok(Self::TangentOffset),
            other => Err(format!("unknown mode `{other}` (expected paper or tangent)")),
        }
    }
}

/// Index domain policy.
///
/// `Table` matches the published tables, which leave case B at `i = 1` and
/// case D at `i = 0` blank. `Extended` admits those indices as well; the
/// formulas evaluate there without trouble.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Domain {
    #[default]
    Table,
    Extended,
}

fn i_r3(i: u64) -> Root3Scalar {
    Root3Scalar::from_int(i as i64)
}

/// Number of packed circles `N_i`.
///
/// Triangular numbers `i(i+1)/2` for A and B, centered hexagonal numbers
/// `3i² + 3i + 1` for C and D.
pub fn count(case: PackingCase, i: u64) -> Result<u64> {
    count_in(case, i, Domain::Table)
}

pub fn count_in(case: PackingCase, i: u64, domain: Domain) -> Result<u64> {
    case.check_index(i, domain)?;
    Ok(count_formula(case, i))
}

fn count_formula(case: PackingCase, i: u64) -> u64 {
    if case.is_triangular() {
        i * (i + 1) / 2
    } else {
        3 * i * i + 3 * i + 1
    }
}

/// Side of the polygon through the outermost circle centers.
pub fn inner_side(case: PackingCase, i: u64) -> Result<Root3Scalar> {
    inner_side_in(case, i, Domain::Table)
}

pub fn inner_side_in(case: PackingCase, i: u64, domain: Domain) -> Result<Root3Scalar> {
    case.check_index(i, domain)?;
    Ok(if case.is_triangular() {
        Root3Scalar::from_int(2 * (i as i64 - 1))
    } else {
        Root3Scalar::from_int(2 * i as i64)
    })
}

/// `R_i / r` for the circle-bounded cases.
///
/// A: `1 + 2(i−1)/√3`; C: `2i + 1`.
pub fn radius_ratio(case: PackingCase, i: u64) -> Result<Root3Scalar> {
    match case {
        PackingCase::A | PackingCase::C => {
            case.check_index(i, Domain::Table)?;
            Ok(radius_formula(case, i))
        }
        _ => Err(Error::WrongCase {
            op: "radius_ratio",
            case,
        }),
    }
}

fn radius_formula(case: PackingCase, i: u64) -> Root3Scalar {
    if case == PackingCase::A {
        // 2(i−1)/√3 = (2(i−1)/3)·√3
        Root3Scalar::new(int(1), rat(2 * (i as i64 - 1), 3))
    } else {
        Root3Scalar::from_int(2 * i as i64 + 1)
    }
}

/// Side of the bounding polygon for B and D. `mode` is ignored for D.
pub fn outer_side(case: PackingCase, i: u64, mode: SideMode) -> Result<Root3Scalar> {
    outer_side_in(case, i, mode, Domain::Table)
}

pub fn outer_side_in(
    case: PackingCase,
    i: u64,
    mode: SideMode,
    domain: Domain,
) -> Result<Root3Scalar> {
    match case {
        PackingCase::B | PackingCase::D => {
            case.check_index(i, domain)?;
            Ok(side_formula(case, i, mode))
        }
        _ => Err(Error::WrongCase {
            op: "outer_side",
            case,
        }),
    }
}

fn side_formula(case: PackingCase, i: u64, mode: SideMode) -> Root3Scalar {
    let i = i as i64;
    match (case, mode) {
        (PackingCase::B, SideMode::PaperFormula) => {
            Root3Scalar::new(int(2 * i - 1), int(2))
        }
        (PackingCase::B, SideMode::TangentOffset) => {
            Root3Scalar::new(int(2 * i - 2), int(2))
        }
        // 2i + 2/√3
        _ => Root3Scalar::new(int(2 * i), rat(2, 3)),
    }
}

/// Area of the bounding polygon: `(√3/4)·s²` for B, `(3√3/2)·s²` for D.
pub fn boundary_area(case: PackingCase, i: u64, mode: SideMode) -> Result<Root3Scalar> {
    boundary_area_in(case, i, mode, Domain::Table)
}

pub fn boundary_area_in(
    case: PackingCase,
    i: u64,
    mode: SideMode,
    domain: Domain,
) -> Result<Root3Scalar> {
    let s = outer_side_in(case, i, mode, domain)?;
    let factor = if case == PackingCase::B {
        Root3Scalar::new(int(0), rat(1, 4))
    } else {
        Root3Scalar::new(int(0), rat(3, 2))
    };
    Ok(factor * s.square())
}

/// Packing density as an exact π-scaled value.
///
/// For A and C the π factors cancel; for B and D the density is
/// `π·N_i / A_i`.
pub fn density(case: PackingCase, i: u64, mode: SideMode) -> Result<PiScaled> {
    density_in(case, i, mode, Domain::Table)
}

pub fn density_in(case: PackingCase, i: u64, mode: SideMode, domain: Domain) -> Result<PiScaled> {
    case.check_index(i, domain)?;
    let n = Root3Scalar::from_int(count_formula(case, i) as i64);
    Ok(if case.circle_bounded() {
        PiScaled::plain(n / radius_formula(case, i).square())
    } else {
        let area = boundary_area_in(case, i, mode, domain)?;
        PiScaled::times_pi(n / area)
    })
}

/// Density evaluated through the published partial-fraction forms, i.e. the
/// limit plus a rational remainder. Case B uses the `PaperFormula` side.
pub fn density_decomposed(case: PackingCase, i: u64) -> Result<PiScaled> {
    density_decomposed_in(case, i, Domain::Table)
}

pub fn density_decomposed_in(case: PackingCase, i: u64, domain: Domain) -> Result<PiScaled> {
    case.check_index(i, domain)?;
    let x = i_r3(i);
    let c = |an: i64, ad: i64, bn: i64, bd: i64| Root3Scalar::from_fractions(an, ad, bn, bd);
    let limit = density_limit(case).into_coeff();
    let remainder = match case {
        // [(9 − 3√3)i − (21/4 − 3√3)] / [8i² + (8√3 − 16)i + (14 − 8√3)]
        PackingCase::A => {
            let num = c(9, 1, -3, 1) * &x - c(21, 4, -3, 1);
            let den = c(8, 1, 0, 1) * x.square() + c(-16, 1, 8, 1) * &x + c(14, 1, -8, 1);
            num / den
        }
        // [(2/√3 − 2)i − 13/(4√3) + 1] / [2i² − (2 − 4√3)i + (13/2 − 2√3)]
        PackingCase::B => {
            let num = c(-2, 1, 2, 3) * &x - c(0, 1, 13, 12) + c(1, 1, 0, 1);
            let den = c(2, 1, 0, 1) * x.square() - c(2, 1, -4, 1) * &x + c(13, 2, -2, 1);
            num / den
        }
        // 1 / (16i² + 16i + 4)
        PackingCase::C => {
            let den = c(16, 1, 0, 1) * x.square() + c(16, 1, 0, 1) * &x + c(4, 1, 0, 1);
            Root3Scalar::one() / den
        }
        // (1 − 2/√3)i / (2√3 i² + 4i + 2/√3)
        PackingCase::D => {
            let num = c(1, 1, -2, 3) * &x;
            let den = c(0, 1, 2, 1) * x.square() + c(4, 1, 0, 1) * &x + c(0, 1, 2, 3);
            num / den
        }
    };
    let coeff = limit + remainder;
    Ok(if case.circle_bounded() {
        PiScaled::plain(coeff)
    } else {
        PiScaled::times_pi(coeff)
    })
}

/// Limit of the density as `i → ∞`: 3/8 (A), 3/4 (C) and `π/(2√3) = π·√3/6`
/// (B, D).
pub fn density_limit(case: PackingCase) -> PiScaled {
    match case {
        PackingCase::A => PiScaled::plain(Root3Scalar::from_fractions(3, 8, 0, 1)),
        PackingCase::C => PiScaled::plain(Root3Scalar::from_fractions(3, 4, 0, 1)),
        PackingCase::B | PackingCase::D => {
            PiScaled::times_pi(Root3Scalar::from_fractions(0, 1, 1, 6))
        }
    }
}

/// Signed `density − limit`. Positive for the circle-bounded cases, negative
/// for the polygon-bounded ones.
pub fn residual(case: PackingCase, i: u64, mode: SideMode) -> Result<PiScaled> {
    residual_in(case, i, mode, Domain::Table)
}

pub fn residual_in(case: PackingCase, i: u64, mode: SideMode, domain: Domain) -> Result<PiScaled> {
    density_in(case, i, mode, domain)?.checked_sub(&density_limit(case))
}

/// Smallest index in the table domain whose count is at least `n`.
///
/// Inverts the count quadratic with an integer square root, then corrects
/// by at most one step for the floor.
pub fn index_for_count(case: PackingCase, n: u64) -> u64 {
    let n = n.max(1);
    let guess = if case.is_triangular() {
        // i(i+1)/2 ≥ n  ⇔  i ≥ (√(8n+1) − 1)/2
        let s = (8 * n as u128 + 1).sqrt();
        ((s - 1) / 2) as u64
    } else {
        // 3i² + 3i + 1 ≥ n  ⇔  i ≥ (√(12n − 3) − 3)/6
        let s = (12 * n as u128 - 3).sqrt();
        (s.saturating_sub(3) / 6) as u64
    };
    let mut i = guess;
    while count_formula(case, i) < n {
        i += 1;
    }
    i.max(case.min_index(Domain::Table))
}

/// One row of a summary table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRow {
    pub case: PackingCase,
    pub i: u64,
    pub count: u64,
    /// `R_i/r` for A and C, outer side `a_out/r` for B and D.
    pub dimension_ratio: Root3Scalar,
    /// `A_i/r²` for B and D.
    pub area: Option<Root3Scalar>,
    pub density: PiScaled,
    pub residual: PiScaled,
}

impl SequenceRow {
    pub fn new(case: PackingCase, i: u64, mode: SideMode) -> Result<Self> {
        Self::new_in(case, i, mode, Domain::Table)
    }

    pub fn new_in(case: PackingCase, i: u64, mode: SideMode, domain: Domain) -> Result<Self> {
        let count = count_in(case, i, domain)?;
        let (dimension_ratio, area) = if case.circle_bounded() {
            (radius_formula(case, i), None)
        } else {
            (
                outer_side_in(case, i, mode, domain)?,
                Some(boundary_area_in(case, i, mode, domain)?),
            )
        };
        Ok(Self {
            case,
            i,
            count,
            dimension_ratio,
            area,
            density: density_in(case, i, mode, domain)?,
            residual: residual_in(case, i, mode, domain)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::decimal_string;
    use std::cmp::Ordering;
    use PackingCase::*;

    const P: SideMode = SideMode::PaperFormula;
    const T: SideMode = SideMode::TangentOffset;

    fn r3(an: i64, ad: i64, bn: i64, bd: i64) -> Root3Scalar {
        Root3Scalar::from_fractions(an, ad, bn, bd)
    }

    #[test]
    fn counts() {
        assert_eq!(count(A, 25).unwrap(), 325);
        assert_eq!(count(C, 24).unwrap(), 1801);
        assert_eq!(count(C, 0).unwrap(), 1);
        assert_eq!(count(A, 1).unwrap(), 1);
    }

    #[test]
    fn domains_follow_the_tables() {
        assert!(matches!(count(B, 1), Err(Error::IndexOutOfDomain { min: 2, .. })));
        assert!(matches!(density(D, 0, P), Err(Error::IndexOutOfDomain { min: 1, .. })));
        assert!(count(A, 0).is_err());
        assert!(count(C, MAX_INDEX + 1).is_err());
        assert_eq!(count_in(B, 1, Domain::Extended).unwrap(), 1);
        // inscribed circle of a hexagon: exactly the lattice limit
        assert_eq!(density_in(D, 0, P, Domain::Extended).unwrap(), density_limit(D));
    }

    #[test]
    fn inner_sides() {
        assert_eq!(inner_side(A, 5).unwrap(), Root3Scalar::from_int(8));
        assert_eq!(inner_side(C, 2).unwrap(), Root3Scalar::from_int(4));
        assert_eq!(inner_side(A, 1).unwrap(), Root3Scalar::zero());
    }

    #[test]
    fn radius_ratios() {
        let r = radius_ratio(A, 2).unwrap();
        assert_eq!(r, r3(2, 1, 0, 1) / Root3Scalar::sqrt3() + Root3Scalar::one());
        assert_eq!(crate::exact::decimal_root3(&r, 6).unwrap(), "2.154701");
        assert_eq!(radius_ratio(C, 5).unwrap(), Root3Scalar::from_int(11));
        assert_eq!(radius_ratio(A, 1).unwrap(), Root3Scalar::one());
        assert!(matches!(radius_ratio(B, 3), Err(Error::WrongCase { .. })));
    }

    #[test]
    fn outer_sides_and_areas() {
        assert_eq!(outer_side(B, 2, P).unwrap(), r3(3, 1, 2, 1));
        assert_eq!(outer_side(B, 2, T).unwrap(), r3(2, 1, 2, 1));
        let d1 = outer_side(D, 1, T).unwrap();
        assert_eq!(d1, r3(2, 1, 2, 3));
        assert_eq!(crate::exact::decimal_root3(&d1, 6).unwrap(), "3.154701");
        assert!(outer_side(C, 2, P).is_err());

        assert_eq!(boundary_area(B, 2, P).unwrap(), r3(36, 4, 21, 4));
        assert_eq!(boundary_area(D, 1, P).unwrap(), r3(12, 1, 8, 1));
        assert_eq!(boundary_area(B, 2, T).unwrap(), r3(6, 1, 4, 1));
    }

    #[test]
    fn densities() {
        let a2 = density(A, 2, P).unwrap();
        assert_eq!(a2, PiScaled::plain(r3(63, 1, -36, 1)));
        assert_eq!(decimal_string(&a2, 6).unwrap(), "0.646171");

        let c3 = density(C, 3, P).unwrap();
        assert_eq!(c3, PiScaled::plain(r3(37, 49, 0, 1)));
        assert_eq!(decimal_string(&c3, 6).unwrap(), "0.755102");

        assert_eq!(decimal_string(&density(B, 5, P).unwrap(), 9).unwrap(), "0.700516766");
        assert_eq!(decimal_string(&density(B, 2, P).unwrap(), 9).unwrap(), "0.520899741");

        let d1 = density(D, 1, P).unwrap();
        assert_eq!(d1, PiScaled::times_pi(Root3Scalar::from_int(7) / r3(12, 1, 8, 1)));
        assert_eq!(decimal_string(&d1, 6).unwrap(), "0.850511");
    }

    #[test]
    fn decomposed_examples() {
        assert_eq!(density_decomposed(C, 3).unwrap(), PiScaled::plain(r3(37, 49, 0, 1)));
        assert_eq!(density_decomposed(A, 1).unwrap(), PiScaled::plain(Root3Scalar::one()));
        assert_eq!(density_decomposed(D, 10).unwrap(), density(D, 10, P).unwrap());
        assert_eq!(density_decomposed(B, 7).unwrap(), density(B, 7, P).unwrap());
    }

    #[test]
    fn limits() {
        assert_eq!(density_limit(A), PiScaled::plain(r3(3, 8, 0, 1)));
        assert_eq!(density_limit(C), PiScaled::plain(r3(3, 4, 0, 1)));
        assert_eq!(density_limit(B), density_limit(D));
        let expected = PiScaled::times_pi(Root3Scalar::one() / r3(0, 1, 2, 1));
        assert!(density_limit(B).checked_sub(&expected).unwrap().is_zero());
    }

    #[test]
    fn residuals() {
        assert_eq!(residual(C, 1, P).unwrap(), PiScaled::plain(r3(1, 36, 0, 1)));
        assert_eq!(residual(A, 1, P).unwrap(), PiScaled::plain(r3(5, 8, 0, 1)));
        let d1 = residual(D, 1, P).unwrap();
        assert_eq!(d1.sign(), Ordering::Less);
        assert_eq!(decimal_string(&d1, 6).unwrap(), "-0.056389");
        assert_eq!(residual(C, 24, P).unwrap(), PiScaled::plain(r3(1, 9604, 0, 1)));
    }

    /// Linear scan, independent of the square-root inverse.
    fn index_for_count_scan(case: PackingCase, n: u64) -> u64 {
        (case.min_index(Domain::Table)..)
            .find(|&i| count(case, i).unwrap() >= n)
            .unwrap()
    }

    #[test]
    fn inverse_counts() {
        assert_eq!(index_for_count(A, 300), 24);
        assert_eq!(index_for_count(C, 8), 2);
        assert_eq!(index_for_count(A, 1), 1);
        assert_eq!(index_for_count(B, 1), 2);
        assert_eq!(index_for_count(D, 1), 1);
        assert_eq!(index_for_count(C, 1), 0);
        for case in PackingCase::ALL {
            for n in 1..3000 {
                assert_eq!(index_for_count(case, n), index_for_count_scan(case, n), "{case} {n}");
            }
        }
    }

    #[test]
    fn increments() {
        for i in 2..200 {
            assert_eq!(count(A, i).unwrap() - count(A, i - 1).unwrap(), i);
        }
        for i in 1..200 {
            assert_eq!(count(C, i).unwrap() - count(C, i - 1).unwrap(), 6 * i);
        }
    }

    #[test]
    fn tangent_triangle_is_denser() {
        for i in 2..200 {
            assert!(density(B, i, T).unwrap().cmp_exact(&density(B, i, P).unwrap()) == Some(Ordering::Greater));
        }
    }

    #[test]
    fn row_fields() {
        let row = SequenceRow::new(D, 1, P).unwrap();
        assert_eq!(row.count, 7);
        assert_eq!(row.area, Some(r3(12, 1, 8, 1)));
        let row = SequenceRow::new(A, 3, P).unwrap();
        assert!(row.area.is_none());
        assert_eq!(row.dimension_ratio, radius_ratio(A, 3).unwrap());
    }

    #[test]
    fn parse_case_and_mode() {
        assert_eq!("D".parse::<PackingCase>().unwrap(), D);
        assert!("e".parse::<PackingCase>().is_err());
        assert_eq!("tangent".parse::<SideMode>().unwrap(), T);
        assert!("x".parse::<SideMode>().is_err());
    }
}
