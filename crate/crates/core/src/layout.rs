//! Circle centers and bounding shapes for the four configurations, with
//! exact containment, separation and tangency predicates.
//!
//! Coordinates are in units of `r`, so every packed circle is a unit circle.
//! Triangular arrangements point apex up with a horizontal bottom row and
//! are centered on the centroid of their three corner circles. Hexagonal
//! arrangements are centered on the origin with corners on the x-axis.

use std::cmp::Ordering;

use crate::error::Result;
use crate::exact::{int, rat, Root3Scalar};
use crate::sequences::{self, Domain, PackingCase, SideMode};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Root3Scalar,
    pub y: Root3Scalar,
}

impl Point {
    pub fn new(x: Root3Scalar, y: Root3Scalar) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(Root3Scalar::zero(), Root3Scalar::zero())
    }

    /// `(x, y·√3)` with integer `x` and `y`, the usual way lattice points
    /// are written.
    pub fn lattice(x: i64, y_root3: i64) -> Self {
        Self::new(
            Root3Scalar::from_int(x),
            Root3Scalar::new(int(0), int(y_root3)),
        )
    }

    pub fn norm_squared(&self) -> Root3Scalar {
        self.x.square() + self.y.square()
    }

    pub fn distance_squared(&self, other: &Point) -> Root3Scalar {
        (&self.x - &other.x).square() + (&self.y - &other.y).square()
    }

    pub fn translate(&self, dx: &Root3Scalar, dy: &Root3Scalar) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

/// Returns whether `p` is a point of the hexagonal lattice spanned by
/// `(2, 0)` and `(1, √3)` from `anchor`.
pub fn on_lattice(anchor: &Point, p: &Point) -> bool {
    let dx = &p.x - &anchor.x;
    let dy = &p.y - &anchor.y;
    let integral = |q: &crate::exact::Rational| q.is_integer();
    if !(dx.is_rational() && integral(dx.a()) && dy.a() == &int(0) && integral(dy.b())) {
        return false;
    }
    let sum = dx.a().numer() + dy.b().numer();
    sum % 2 == num_bigint::BigInt::from(0)
}

/// `{p : normal·p ≤ offset}` together with the exact length of `normal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    normal: (Root3Scalar, Root3Scalar),
    offset: Root3Scalar,
    normal_length: Root3Scalar,
}

impl HalfPlane {
    /// `None` unless `normal_length² = normal·normal` and the length is
    /// positive.
    pub fn new(
        normal: (Root3Scalar, Root3Scalar),
        offset: Root3Scalar,
        normal_length: Root3Scalar,
    ) -> Option<Self> {
        let n2 = normal.0.square() + normal.1.square();
        (normal_length.is_positive() && normal_length.square() == n2).then_some(Self {
            normal,
            offset,
            normal_length,
        })
    }

    pub fn normal(&self) -> &(Root3Scalar, Root3Scalar) {
        &self.normal
    }

    pub fn offset(&self) -> &Root3Scalar {
        &self.offset
    }

    pub fn normal_length(&self) -> &Root3Scalar {
        &self.normal_length
    }

    pub fn dot(&self, p: &Point) -> Root3Scalar {
        &self.normal.0 * &p.x + &self.normal.1 * &p.y
    }

    /// `offset − normal·p − |normal|`: non-negative iff the unit circle at
    /// `p` lies on the inner side, zero iff it touches the line.
    pub fn unit_circle_slack(&self, p: &Point) -> Root3Scalar {
        &self.offset - self.dot(p) - &self.normal_length
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.dot(p) <= self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundingShape {
    /// Circle centered at the origin.
    Circle { radius: Root3Scalar },
    ConvexPolygon {
        halfplanes: Vec<HalfPlane>,
        vertices: Vec<Point>,
    },
}

impl BoundingShape {
    /// `"circle"`, `"triangle"` or `"hexagon"`.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Circle { .. } => "circle",
            Self::ConvexPolygon { vertices, .. } if vertices.len() == 3 => "triangle",
            Self::ConvexPolygon { vertices, .. } if vertices.len() == 6 => "hexagon",
            Self::ConvexPolygon { .. } => "polygon",
        }
    }

    /// Radius for a circle, side length for a regular polygon.
    pub fn radius_or_side(&self) -> Root3Scalar {
        match self {
            Self::Circle { radius } => radius.clone(),
            Self::ConvexPolygon { vertices, .. } => {
                // sides of the regular polygons used here are either
                // horizontal or a multiple of 60 degrees, so the side length
                // is recovered from the vertical span of an edge
                let (p, q) = (&vertices[0], &vertices[1]);
                let dx = (&p.x - &q.x).abs();
                let dy = (&p.y - &q.y).abs();
                if dy.is_zero() {
                    dx
                } else {
                    // |edge| = |dy| / sin 60° = 2|dy|/√3
                    dy * Root3Scalar::new(int(0), rat(2, 3))
                }
            }
        }
    }

    /// Squared distance from the origin to the farthest boundary point.
    pub fn circumradius_squared(&self) -> Root3Scalar {
        match self {
            Self::Circle { radius } => radius.square(),
            Self::ConvexPolygon { vertices, .. } => vertices
                .iter()
                .map(Point::norm_squared)
                .max()
                .unwrap_or_default(),
        }
    }

    /// Area in floating point, computed from the geometry.
    pub fn area_f64(&self) -> f64 {
        match self {
            Self::Circle { radius } => std::f64::consts::PI * radius.to_f64().powi(2),
            Self::ConvexPolygon { vertices, .. } => {
                let pts: Vec<_> = vertices.iter().map(Point::to_f64).collect();
                let twice: f64 = (0..pts.len())
                    .map(|k| {
                        let (x0, y0) = pts[k];
                        let (x1, y1) = pts[(k + 1) % pts.len()];
                        x0 * y1 - x1 * y0
                    })
                    .sum();
                twice.abs() / 2.0
            }
        }
    }

    /// Axis-aligned bounding box `(min_x, min_y, max_x, max_y)`.
    pub fn bbox_f64(&self) -> (f64, f64, f64, f64) {
        match self {
            Self::Circle { radius } => {
                let r = radius.to_f64();
                (-r, -r, r, r)
            }
            Self::ConvexPolygon { vertices, .. } => vertices.iter().map(Point::to_f64).fold(
                (f64::MAX, f64::MAX, f64::MIN, f64::MIN),
                |(a, b, c, d), (x, y)| (a.min(x), b.min(y), c.max(x), d.max(y)),
            ),
        }
    }

    fn contact(&self, center: &Point) -> Ordering {
        match self {
            Self::Circle { radius } => {
                let reach = radius - Root3Scalar::one();
                if reach.is_negative() {
                    return Ordering::Less;
                }
                reach.square().cmp(&center.norm_squared())
            }
            Self::ConvexPolygon { halfplanes, .. } => halfplanes
                .iter()
                .map(|h| h.unit_circle_slack(center).sign())
                .min()
                .unwrap_or(Ordering::Greater),
        }
    }

    /// Unit circle at `center` fits inside (tangency included) and touches
    /// the boundary.
    pub fn is_tangent(&self, center: &Point) -> bool {
        self.contact(center) == Ordering::Equal
    }

    /// For each polygon side, how many of `centers` touch it. Empty for a
    /// circle.
    pub fn side_contacts(&self, centers: &[Point]) -> Vec<usize> {
        match self {
            Self::Circle { .. } => Vec::new(),
            Self::ConvexPolygon { halfplanes, .. } => halfplanes
                .iter()
                .map(|h| {
                    centers
                        .iter()
                        .filter(|c| h.unit_circle_slack(c).is_zero())
                        .count()
                })
                .collect(),
        }
    }
}

/// Closed containment of the unit circle at `center` in `shape`.
///
/// Circle: `|center|² ≤ (radius − 1)²` with `radius ≥ 1`. Polygon:
/// `normal·center + |normal| ≤ offset` for every side. Both compared
/// exactly; touching the boundary counts as fitting.
pub fn circle_fits(shape: &BoundingShape, center: &Point) -> bool {
    shape.contact(center) != Ordering::Less
}

/// Index pairs whose centers might be within distance 2, found by a sweep
/// over floating-point x coordinates. The margin far exceeds the rounding
/// error of the coordinates, so every pair at exact distance ≤ 2 is
/// reported; the caller decides exactly.
fn candidate_pairs(centers: &[Point]) -> Vec<(usize, usize)> {
    const REACH: f64 = 2.0 + 1e-6;
    let approx: Vec<(f64, f64)> = centers.iter().map(Point::to_f64).collect();
    let mut order: Vec<usize> = (0..centers.len()).collect();
    order.sort_by(|&p, &q| approx[p].0.total_cmp(&approx[q].0));
    let mut pairs = Vec::new();
    for (k, &p) in order.iter().enumerate() {
        for &q in &order[k + 1..] {
            if approx[q].0 - approx[p].0 > REACH {
                break;
            }
            if (approx[q].1 - approx[p].1).abs() <= REACH {
                pairs.push((p.min(q), p.max(q)));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

/// Every pair of centers is at squared distance ≥ 4, exactly.
pub fn separation_ok(centers: &[Point]) -> bool {
    let four = Root3Scalar::from_int(4);
    candidate_pairs(centers)
        .into_iter()
        .all(|(p, q)| centers[p].distance_squared(&centers[q]) >= four)
}

/// Number of center pairs at exact distance 2.
pub fn mutual_tangent_pairs(centers: &[Point]) -> usize {
    let four = Root3Scalar::from_int(4);
    candidate_pairs(centers)
        .into_iter()
        .filter(|&(p, q)| centers[p].distance_squared(&centers[q]) == four)
        .count()
}

/// Centers in generation order: rows from the apex down for triangles,
/// rings outward and counterclockwise from the positive x-axis for
/// hexagons.
pub fn generate_centers(case: PackingCase, i: u64) -> Result<Vec<Point>> {
    generate_centers_in(case, i, Domain::Table)
}

pub fn generate_centers_in(case: PackingCase, i: u64, domain: Domain) -> Result<Vec<Point>> {
    case.check_index(i, domain)?;
    Ok(if case.is_triangular() {
        triangle_centers(i)
    } else {
        hexagon_centers(i)
    })
}

fn triangle_centers(i: u64) -> Vec<Point> {
    let rows = i as i64;
    // apex height above the centroid of the corner centers: 2(i−1)√3/3
    let apex_y = Root3Scalar::new(int(0), rat(2 * (rows - 1), 3));
    let mut out = Vec::with_capacity((i * (i + 1) / 2) as usize);
    for k in 0..rows {
        let y = &apex_y - Root3Scalar::new(int(0), int(k));
        for m in 0..=k {
            out.push(Point::new(Root3Scalar::from_int(2 * m - k), y.clone()));
        }
    }
    out
}

fn hexagon_centers(i: u64) -> Vec<Point> {
    const STEPS: [(i64, i64); 6] = [(-1, 1), (-2, 0), (-1, -1), (1, -1), (2, 0), (1, 1)];
    const CORNERS: [(i64, i64); 6] = [(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)];
    let mut out = vec![Point::origin()];
    for j in 1..=i as i64 {
        for (&(cx, cy), &(sx, sy)) in CORNERS.iter().zip(STEPS.iter()) {
            for s in 0..j {
                out.push(Point::lattice(cx * j + sx * s, cy * j + sy * s));
            }
        }
    }
    out
}

/// Bounding shape of a configuration.
///
/// A and C use the concentric circle of the closed-form radius. B uses an
/// apex-up equilateral triangle centered on the arrangement; its inradius
/// is `side·√3/6`, which in tangent mode puts every side at distance 1 from
/// the nearest row of centers. D uses the regular hexagon with apothem
/// `i√3 + 1`.
pub fn boundary(case: PackingCase, i: u64, mode: SideMode) -> Result<BoundingShape> {
    boundary_in(case, i, mode, Domain::Table)
}

pub fn boundary_in(
    case: PackingCase,
    i: u64,
    mode: SideMode,
    domain: Domain,
) -> Result<BoundingShape> {
    case.check_index(i, domain)?;
    let r3 = |an: i64, ad: i64, bn: i64, bd: i64| Root3Scalar::from_fractions(an, ad, bn, bd);
    let shape = match case {
        PackingCase::A => BoundingShape::Circle {
            radius: Root3Scalar::new(int(1), rat(2 * (i as i64 - 1), 3)),
        },
        PackingCase::C => BoundingShape::Circle {
            radius: Root3Scalar::from_int(2 * i as i64 + 1),
        },
        PackingCase::B => {
            let side = sequences::outer_side_in(case, i, mode, domain)?;
            let h = side * r3(0, 1, 1, 6);
            let two_h = &h * Root3Scalar::from_int(2);
            let halfplanes = vec![
                plane(r3(0, 1, 0, 1), r3(-1, 1, 0, 1), h.clone(), 1),
                plane(r3(0, 1, 1, 1), r3(1, 1, 0, 1), two_h.clone(), 2),
                plane(r3(0, 1, -1, 1), r3(1, 1, 0, 1), two_h.clone(), 2),
            ];
            let half_base = Root3Scalar::sqrt3() * &h;
            let vertices = vec![
                Point::new(Root3Scalar::zero(), two_h),
                Point::new(-&half_base, -&h),
                Point::new(half_base, -&h),
            ];
            BoundingShape::ConvexPolygon {
                halfplanes,
                vertices,
            }
        }
        PackingCase::D => {
            let side = sequences::outer_side_in(case, i, mode, domain)?;
            let apothem = &side * r3(0, 1, 1, 2);
            let twice = &apothem * Root3Scalar::from_int(2);
            let halfplanes = vec![
                plane(r3(0, 1, 1, 1), r3(1, 1, 0, 1), twice.clone(), 2),
                plane(r3(0, 1, 0, 1), r3(1, 1, 0, 1), apothem.clone(), 1),
                plane(r3(0, 1, -1, 1), r3(1, 1, 0, 1), twice.clone(), 2),
                plane(r3(0, 1, -1, 1), r3(-1, 1, 0, 1), twice.clone(), 2),
                plane(r3(0, 1, 0, 1), r3(-1, 1, 0, 1), apothem.clone(), 1),
                plane(r3(0, 1, 1, 1), r3(-1, 1, 0, 1), twice, 2),
            ];
            let half = &side * r3(1, 2, 0, 1);
            let vertices = vec![
                Point::new(side.clone(), Root3Scalar::zero()),
                Point::new(half.clone(), apothem.clone()),
                Point::new(-&half, apothem.clone()),
                Point::new(-&side, Root3Scalar::zero()),
                Point::new(-&half, -&apothem),
                Point::new(half, -&apothem),
            ];
            BoundingShape::ConvexPolygon {
                halfplanes,
                vertices,
            }
        }
    };
    Ok(shape)
}

fn plane(nx: Root3Scalar, ny: Root3Scalar, offset: Root3Scalar, length: i64) -> HalfPlane {
    HalfPlane::new((nx, ny), offset, Root3Scalar::from_int(length))
        .expect("side normals have length 1 or 2")
}

/// A fully constructed configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub case: PackingCase,
    pub i: u64,
    pub mode: SideMode,
    pub centers: Vec<Point>,
    pub boundary: BoundingShape,
}

impl Layout {
    pub fn new(case: PackingCase, i: u64, mode: SideMode) -> Result<Self> {
        Self::new_in(case, i, mode, Domain::Table)
    }

    pub fn new_in(case: PackingCase, i: u64, mode: SideMode, domain: Domain) -> Result<Self> {
        Ok(Self {
            case,
            i,
            mode,
            centers: generate_centers_in(case, i, domain)?,
            boundary: boundary_in(case, i, mode, domain)?,
        })
    }

    pub fn all_fit(&self) -> bool {
        self.centers.iter().all(|c| circle_fits(&self.boundary, c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TangencyCertificate {
    pub boundary_tangent_count: usize,
    pub mutual_tangent_pairs: usize,
}

/// Counts circles touching the boundary and pairs of circles touching each
/// other, both decided exactly.
pub fn tangency_certificate(layout: &Layout) -> TangencyCertificate {
    TangencyCertificate {
        boundary_tangent_count: layout
            .centers
            .iter()
            .filter(|c| layout.boundary.is_tangent(c))
            .count(),
        mutual_tangent_pairs: mutual_tangent_pairs(&layout.centers),
    }
}
