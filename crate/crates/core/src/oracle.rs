//! Brute-force cross-checks of the closed forms.
//!
//! [`lattice_fit_count`] enumerates every point of the hexagonal lattice
//! near the container and keeps those whose unit circle fits, using the
//! same exact predicates as [`crate::layout`]. Candidates are produced from
//! the lattice basis alone; the canonical arrangement is only consulted
//! afterwards, to report which fitting points it leaves out.
//!
//! A point that fits but lies outside the canonical arrangement is an
//! *extra*. Extras do not contradict the closed-form counts, which count
//! the prescribed arrangement rather than the largest lattice subset. For
//! the polygon containers no extras appear. For the circle containers they
//! first appear at `i = 4` in case A (three points, one beyond each side of
//! the triangle on its axis of symmetry, each tangent to the circle) and at
//! `i = 7` in case C (eighteen points of ring 8: each edge midpoint and its
//! two neighbours, the latter tangent to the circle).

use std::collections::HashSet;

use crate::error::Result;
use crate::exact::{decimal_string, int, rat, Root3Scalar};
use crate::layout::{self, circle_fits, Layout, Point};
use crate::sequences::{self, Domain, PackingCase, SideMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: PackingCase,
    pub i: u64,
    pub mode: SideMode,
    pub count_ok: bool,
    pub containment_ok: bool,
    pub separation_ok: bool,
    pub boundary_tangent_count: usize,
    pub mutual_tangent_pairs: usize,
    pub lattice_fit_count: usize,
    /// Fitting lattice points outside the canonical arrangement, sorted by
    /// `(y, x)`.
    pub extra_points: Vec<Point>,
}

impl VerificationReport {
    /// The canonical arrangement has the right size, fits and does not
    /// overlap.
    pub fn passed(&self) -> bool {
        self.count_ok && self.containment_ok && self.separation_ok
    }
}

/// Lattice anchor: the first center of the canonical arrangement, derived
/// here from the geometry rather than taken from the generated list.
fn anchor(case: PackingCase, i: u64) -> Point {
    if case.is_triangular() {
        Point::new(Root3Scalar::zero(), Root3Scalar::new(int(0), rat(2 * (i as i64 - 1), 3)))
    } else {
        Point::origin()
    }
}

/// All lattice points whose unit circle fits in `shape`, sorted by `(y, x)`.
pub fn fitting_lattice_points(anchor: &Point, shape: &layout::BoundingShape) -> Vec<Point> {
    let reach = shape.circumradius_squared().to_f64().sqrt().ceil() + 2.0;
    let (ax, ay) = anchor.to_f64();
    let sqrt3 = 3f64.sqrt();
    let v_lo = ((-reach - ay) / sqrt3).floor() as i64 - 1;
    let v_hi = ((reach - ay) / sqrt3).ceil() as i64 + 1;
    let mut found = Vec::new();
    for v in v_lo..=v_hi {
        let u_lo = ((-reach - ax - v as f64) / 2.0).floor() as i64 - 1;
        let u_hi = ((reach - ax - v as f64) / 2.0).ceil() as i64 + 1;
        for u in u_lo..=u_hi {
            let p = anchor.translate(
                &Root3Scalar::from_int(2 * u + v),
                &Root3Scalar::new(int(0), int(v)),
            );
            if circle_fits(shape, &p) {
                found.push(p);
            }
        }
    }
    found.sort_by(|p, q| p.y.cmp(&q.y).then_with(|| p.x.cmp(&q.x)));
    found
}

/// Number of lattice circles that fit the container of `(case, i, mode)`,
/// and those among them that are not part of the canonical arrangement.
pub fn lattice_fit_count(
    case: PackingCase,
    i: u64,
    mode: SideMode,
) -> Result<(usize, Vec<Point>)> {
    lattice_fit_count_in(case, i, mode, Domain::Table)
}

pub fn lattice_fit_count_in(
    case: PackingCase,
    i: u64,
    mode: SideMode,
    domain: Domain,
) -> Result<(usize, Vec<Point>)> {
    let shape = layout::boundary_in(case, i, mode, domain)?;
    let fitting = fitting_lattice_points(&anchor(case, i), &shape);
    let canonical: HashSet<Point> = layout::generate_centers_in(case, i, domain)?
        .into_iter()
        .collect();
    let total = fitting.len();
    let extras = fitting
        .into_iter()
        .filter(|p| !canonical.contains(p))
        .collect();
    Ok((total, extras))
}

/// Runs every check on one configuration. Failed checks are reported as
/// `false` fields, not as errors.
pub fn verify(case: PackingCase, i: u64, mode: SideMode) -> Result<VerificationReport> {
    verify_in(case, i, mode, Domain::Table)
}

pub fn verify_in(
    case: PackingCase,
    i: u64,
    mode: SideMode,
    domain: Domain,
) -> Result<VerificationReport> {
    let layout = Layout::new_in(case, i, mode, domain)?;
    let expected = sequences::count_in(case, i, domain)? as usize;
    let cert = layout::tangency_certificate(&layout);
    let (lattice_fit_count, extra_points) = lattice_fit_count_in(case, i, mode, domain)?;
    Ok(VerificationReport {
        case,
        i,
        mode,
        count_ok: layout.centers.len() == expected,
        containment_ok: layout.all_fit(),
        separation_ok: layout::separation_ok(&layout.centers),
        boundary_tangent_count: cert.boundary_tangent_count,
        mutual_tangent_pairs: cert.mutual_tangent_pairs,
        lattice_fit_count,
        extra_points,
    })
}

/// Largest difference allowed between the floating-point and the exact
/// density.
pub const CROSSCHECK_TOLERANCE: f64 = 1e-9;

/// Recomputes `count·π / area` in `f64` from the container geometry and
/// compares it with the exact density rendered to 12 digits.
pub fn numeric_density_crosscheck(case: PackingCase, i: u64, mode: SideMode) -> Result<bool> {
    Ok(numeric_density_gap(case, i, mode)? < CROSSCHECK_TOLERANCE)
}

/// Absolute gap behind [`numeric_density_crosscheck`].
pub fn numeric_density_gap(case: PackingCase, i: u64, mode: SideMode) -> Result<f64> {
    let layout = Layout::new(case, i, mode)?;
    let float = layout.centers.len() as f64 * std::f64::consts::PI / layout.boundary.area_f64();
    let exact = decimal_string(&sequences::density(case, i, mode)?, 12)?;
    let exact: f64 = exact.parse().expect("decimal_string emits a valid number");
    Ok((float - exact).abs())
}

/// Smallest `i ≤ i_max` whose container admits an extra lattice circle.
pub fn extras_threshold(case: PackingCase, mode: SideMode, i_max: u64) -> Result<Option<u64>> {
    for i in case.min_index(Domain::Table)..=i_max {
        if !lattice_fit_count(case, i, mode)?.1.is_empty() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
