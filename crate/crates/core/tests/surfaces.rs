use normsurf::angles::{find_angle_structure, surface_area};
use normsurf::boundary::{word_from_ids, CurveWord, Slope, SlopeFrame};
use normsurf::discs::enumerate_disc_types;
use normsurf::fixtures;
use normsurf::matching::{build_system, fundamental_solutions_with, MatchingSystem};
use normsurf::surfaces::*;
use normsurf::tri::IdealTriangulation;
use num::{BigRational, Zero};

fn census(b: u32, cap: u32) -> (IdealTriangulation, MatchingSystem) {
    let tri = fixtures::figure_eight();
    let en = enumerate_disc_types(b, cap);
    let sys = build_system(&tri, &en.discs);
    (tri, sys)
}

/// Corner-arc counts of a curve given as exit sides.
fn corners_of(s: &normsurf::boundary::SurfaceComplex, w: &CurveWord, out: &mut [[u64; 3]]) {
    let n = w.sides.len();
    for i in 0..n {
        let exit = w.sides[i];
        let entry = s.partner(w.sides[(i + n - 1) % n]);
        assert_eq!(entry.tri, exit.tri);
        out[exit.tri][(3 - exit.side - entry.side) as usize] += 1;
    }
}

#[test]
fn link_torus_is_closed_with_zero_euler_characteristic() {
    let (tri, sys) = census(0, 1);
    let link = sys.link_vector().unwrap();
    let s = assemble(&tri, &sys, &link).unwrap().unwrap();
    assert!(s.closed);
    assert_eq!(s.euler, 0);
    assert!(is_boundary_parallel_torus(&s));
    assert_eq!(s.tags, vec!["normal".to_string()]);
    let angles = find_angle_structure(&tri, false, 0).unwrap();
    assert!(surface_area(&angles, &sys, &link).unwrap().is_zero());
}

#[test]
fn euler_characteristic_is_additive() {
    let (tri, sys) = census(0, 2);
    let basis = fundamental_solutions_with(&sys, Some(20), Some(0)).unwrap();
    let chi = |v: &[u64]| euler_characteristic(&tri, &sys, v).unwrap();
    for a in basis.elements.iter().take(12) {
        for b in basis.elements.iter().take(12) {
            let va: Vec<u64> = a.iter().map(|&x| x as u64).collect();
            let vb: Vec<u64> = b.iter().map(|&x| x as u64).collect();
            let sum: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
            assert_eq!(chi(&sum), chi(&va) + chi(&vb));
        }
    }
}

#[test]
fn area_is_minus_twice_euler_characteristic_on_basis() {
    let (tri, sys) = census(0, 2);
    let angles = find_angle_structure(&tri, false, 0).unwrap();
    let basis = fundamental_solutions_with(&sys, Some(20), Some(0)).unwrap();
    for e in &basis.elements {
        let v: Vec<u64> = e.iter().map(|&x| x as u64).collect();
        let chi = euler_characteristic(&tri, &sys, &v).unwrap();
        assert_eq!(
            surface_area(&angles, &sys, &v).unwrap(),
            BigRational::from_integer((-2 * chi).into())
        );
    }
}

#[test]
fn link_torus_addition_keeps_degree_and_area() {
    let (tri, sys) = census(0, 2);
    let angles = find_angle_structure(&tri, false, 0).unwrap();
    let basis = fundamental_solutions_with(&sys, Some(20), Some(0)).unwrap();
    let v: Vec<u64> = basis
        .elements
        .last()
        .unwrap()
        .iter()
        .map(|&x| x as u64)
        .collect();
    assert_eq!(add_link_torus(&sys, &v, 0).unwrap(), v);
    let w = add_link_torus(&sys, &v, 3).unwrap();
    assert_eq!(
        sys.boundary_degree(&w).unwrap(),
        sys.boundary_degree(&v).unwrap()
    );
    assert_eq!(
        surface_area(&angles, &sys, &w).unwrap(),
        surface_area(&angles, &sys, &v).unwrap()
    );
    assert_eq!(
        euler_characteristic(&tri, &sys, &w).unwrap(),
        euler_characteristic(&tri, &sys, &v).unwrap()
    );
    assert!(add_link_torus(&sys, &v, -1).is_err());
}

#[test]
fn caps_follow_degree_and_euler_characteristic() {
    let p = CandidateParameters { n: 1, b: 12 };
    let c = caps_from_invariants(vec![4, 0, 0, 0], vec![-1, 0, -2, 2], p);
    assert_eq!(c.caps[0], 3);
    assert_eq!(c.kinds[0], CapKind::Boundary);
    assert_eq!((c.caps[1], c.kinds[1]), (52, CapKind::Torus));
    // three copies of the boundary element reach chi = -3
    assert_eq!(c.chi_excess, 3);
    assert_eq!((c.caps[2], c.kinds[2]), (4, CapKind::Closed));
    assert_eq!((c.caps[3], c.kinds[3]), (0, CapKind::Sphere));

    let zero = caps_from_invariants(
        vec![2, 6, 0],
        vec![1, -3, 0],
        CandidateParameters { n: 0, b: 0 },
    );
    assert_eq!(zero.caps, vec![0, 0, 4]);
}

#[test]
fn excess_takes_the_largest_magnitude() {
    // degree budget 6: two of the chi = +1 pieces, or one chi = -5 piece
    let c = caps_from_invariants(vec![3, 6], vec![1, -5], CandidateParameters { n: 0, b: 6 });
    assert_eq!(c.chi_excess, 5);
}

#[test]
fn coefficient_caps_rejects_truncated_basis() {
    let (tri, sys) = census(0, 1);
    let p = CandidateParameters { n: 0, b: 0 };
    assert!(coefficient_caps(&tri, &sys, &[], true, p, &[]).is_err());
}

#[test]
fn candidates_at_zero_budget_are_link_multiples() {
    let (tri, sys) = census(0, 2);
    let basis = fundamental_solutions_with(&sys, Some(20), Some(0)).unwrap();
    let links = boundary_parallel_elements(&tri, &sys, &basis.elements).unwrap();
    let p = CandidateParameters { n: 0, b: 0 };
    let caps = coefficient_caps(&tri, &sys, &basis.elements, basis.truncated, p, &links).unwrap();
    let out = candidate_vectors(&tri, &sys, &basis.elements, &caps, p).unwrap();
    let link = sys.link_vector().unwrap();
    assert!(!out.is_empty() && out.len() <= 4);
    for (k, c) in out.iter().enumerate() {
        let want: Vec<u64> = link.iter().map(|&x| x * (k as u64 + 1)).collect();
        assert_eq!(c.vector, want);
    }
    assert!(candidate_vectors(&tri, &sys, &[], &caps, p)
        .unwrap()
        .is_empty());
}

#[test]
fn traced_meridian_has_slope_one_zero() {
    let tri = fixtures::figure_eight();
    let s = tri.boundary_surface().unwrap();
    let m = word_from_ids(&s, &fixtures::figure_eight_meridian()).unwrap();
    let frame = SlopeFrame::new(&s, &m).unwrap();
    for copies in 1..=2 {
        let mut corners = vec![[0u64; 3]; s.triangle_count()];
        for _ in 0..copies {
            corners_of(&s, &m, &mut corners);
        }
        let curves = trace_curves(&s, &corners).unwrap();
        assert_eq!(curves.len(), copies);
        for c in &curves {
            c.check(&s).unwrap();
            assert_eq!(c.len(), m.len());
            assert_eq!(frame.slope(&s, c), Slope { p: 1, q: 0 });
        }
    }
}

#[test]
fn mismatched_corners_are_rejected() {
    let tri = fixtures::figure_eight();
    let s = tri.boundary_surface().unwrap();
    let mut corners = vec![[0u64; 3]; s.triangle_count()];
    corners[0][0] = 1;
    assert!(trace_curves(&s, &corners).is_err());
}

#[test]
fn closed_surfaces_need_no_meridian() {
    let (tri, sys) = census(0, 1);
    let s = assemble(&tri, &sys, &sys.link_vector().unwrap())
        .unwrap()
        .unwrap();
    let complex = tri.boundary_surface().unwrap();
    assert!(boundary_curves(&complex, &s, None).unwrap().is_empty());
}
