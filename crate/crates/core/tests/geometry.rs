use hexpack::exact::Root3Scalar;
use hexpack::layout::{
    self, circle_fits, on_lattice, separation_ok, tangency_certificate, BoundingShape, Layout,
};
use hexpack::sequences::{self, Domain, PackingCase, SideMode};

use PackingCase::*;

const MODES: [SideMode; 2] = [SideMode::PaperFormula, SideMode::TangentOffset];

fn configurations(i_max: u64) -> impl Iterator<Item = (PackingCase, u64, SideMode)> {
    PackingCase::ALL.into_iter().flat_map(move |case| {
        let modes: &[SideMode] = if case == B { &MODES } else { &MODES[..1] };
        modes.iter().flat_map(move |&mode| {
            (case.min_index(Domain::Table)..=i_max).map(move |i| (case, i, mode))
        })
    })
}

#[test]
fn center_counts_match_closed_forms() {
    for case in PackingCase::ALL {
        for i in case.min_index(Domain::Table)..=100 {
            let n = layout::generate_centers(case, i).unwrap().len() as u64;
            assert_eq!(n, sequences::count(case, i).unwrap(), "{case} {i}");
        }
    }
}

#[test]
fn centers_lie_on_one_lattice() {
    for (case, i, _) in configurations(40) {
        let centers = layout::generate_centers(case, i).unwrap();
        let anchor = &centers[0];
        assert!(centers.iter().all(|p| on_lattice(anchor, p)), "{case} {i}");
    }
}

#[test]
fn every_layout_fits_and_separates() {
    for (case, i, mode) in configurations(50) {
        let l = Layout::new(case, i, mode).unwrap();
        assert!(l.centers.iter().all(|c| circle_fits(&l.boundary, c)), "{case} {i} {mode}");
        assert!(separation_ok(&l.centers), "{case} {i} {mode}");
    }
}

#[test]
fn case_a_touches_at_the_three_corners() {
    for i in 2..=50 {
        let l = Layout::new(A, i, SideMode::PaperFormula).unwrap();
        let BoundingShape::Circle { radius } = &l.boundary else {
            panic!()
        };
        // farthest center plus one radius reaches the boundary exactly
        let reach = radius - Root3Scalar::one();
        let far = l.centers.iter().map(|c| c.norm_squared()).max().unwrap();
        assert_eq!(far, reach.square());
        let touching: Vec<_> = l.centers.iter().filter(|c| l.boundary.is_tangent(c)).collect();
        let n = l.centers.len();
        assert_eq!(touching, vec![&l.centers[0], &l.centers[n - i as usize], &l.centers[n - 1]]);
    }
}

#[test]
fn case_c_touches_at_six_ring_corners() {
    for i in 1..=50 {
        let cert = tangency_certificate(&Layout::new(C, i, SideMode::PaperFormula).unwrap());
        assert_eq!(cert.boundary_tangent_count, 6, "{i}");
    }
}

#[test]
fn polygon_sides_are_touched() {
    for i in 2..=30 {
        let l = Layout::new(B, i, SideMode::TangentOffset).unwrap();
        let contacts = l.boundary.side_contacts(&l.centers);
        assert!(contacts.iter().all(|&k| k >= 1), "{i}: {contacts:?}");
        // each side runs along a full row of i circles
        assert_eq!(contacts, vec![i as usize; 3]);

        let l = Layout::new(B, i, SideMode::PaperFormula).unwrap();
        assert_eq!(l.boundary.side_contacts(&l.centers), vec![0; 3]);
    }
    for i in 1..=30 {
        let l = Layout::new(D, i, SideMode::PaperFormula).unwrap();
        assert_eq!(l.boundary.side_contacts(&l.centers), vec![i as usize + 1; 6], "{i}");
    }
}

#[test]
fn mutual_tangencies_are_lattice_edges() {
    // a triangular patch of T(i) points has 3·T(i−1) unit edges; a hexagon
    // of 3i²+3i+1 points has 9i²+3i
    for i in 1..=20u64 {
        let tri = tangency_certificate(&Layout::new(A, i, SideMode::PaperFormula).unwrap());
        assert_eq!(tri.mutual_tangent_pairs as u64, 3 * (i - 1) * i / 2);
        let hex = tangency_certificate(&Layout::new(C, i, SideMode::PaperFormula).unwrap());
        assert_eq!(hex.mutual_tangent_pairs as u64, 9 * i * i + 3 * i);
    }
}

#[test]
fn boundary_dimensions_agree_with_sequences() {
    for i in 2..=30 {
        for mode in MODES {
            let shape = layout::boundary(B, i, mode).unwrap();
            assert_eq!(shape.radius_or_side(), sequences::outer_side(B, i, mode).unwrap());
        }
        let shape = layout::boundary(D, i, SideMode::PaperFormula).unwrap();
        assert_eq!(
            shape.radius_or_side(),
            sequences::outer_side(D, i, SideMode::PaperFormula).unwrap()
        );
        let shape = layout::boundary(A, i, SideMode::PaperFormula).unwrap();
        assert_eq!(shape.radius_or_side(), sequences::radius_ratio(A, i).unwrap());
    }
}

#[test]
fn tangent_mode_gap_is_one_radius() {
    // the bottom side sits exactly 1 below the bottom row
    for i in 2..=20 {
        let l = Layout::new(B, i, SideMode::TangentOffset).unwrap();
        let BoundingShape::ConvexPolygon { vertices, .. } = &l.boundary else {
            panic!()
        };
        let bottom_row_y = &l.centers.last().unwrap().y;
        assert_eq!(&(bottom_row_y - Root3Scalar::one()), &vertices[1].y);
    }
}
