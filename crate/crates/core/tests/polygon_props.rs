mod common;

use common::{apply2, check, gcd, unimodular2, v};
use proptest::prelude::*;
use toric_gtc::assembly::identify_toric_surface;
use toric_gtc::generators::{
    check_translation_invariance, count_triangle_types, lower_hull, tetragon_data, triangle_normal_form, triangle_type_values, PeriodicConvexFunction,
};
use toric_gtc::lattice::{IntMatrix, IntVector};
use toric_gtc::monoid::Cone;
use toric_gtc::polygon::convex_hull;
use toric_gtc::polytope::LatticePolytope;

fn lifted(p: [i64; 2]) -> IntVector {
    v(&[p[0], p[1], 1])
}

fn transforms() -> impl Strategy<Value = Vec<([[i64; 2]; 2], [i64; 2])>> {
    proptest::collection::vec((unimodular2(), [-4i64..=4, -4i64..=4]), 1..=20)
}

#[test]
fn triangle_normal_form_is_invariant() {
    let triangle =
        ([-3i64..=3, -3i64..=3], [-3i64..=3, -3i64..=3], [-3i64..=3, -3i64..=3]).prop_filter("primitive first edge, not collinear", |(p, q, r)| {
            let d = [q[0] - p[0], q[1] - p[1]];
            let e = [r[0] - p[0], r[1] - p[1]];
            gcd(d[0], d[1]) == 1 && d[0] * e[1] - d[1] * e[0] != 0
        });
    check(300, (triangle, transforms()), |((p, q, r), ts)| {
        let t0 = triangle_normal_form(&lifted(p), &lifted(q), &lifted(r)).unwrap();
        let det = ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])).abs();
        prop_assert_eq!(t0.b, det);
        prop_assert!(0 <= t0.a && t0.a < t0.b);
        let (mut p, mut q, mut r) = (p, q, r);
        for (m, t) in &ts {
            p = apply2(m, p, *t);
            q = apply2(m, q, *t);
            r = apply2(m, r, *t);
            prop_assert_eq!(triangle_normal_form(&lifted(p), &lifted(q), &lifted(r)).unwrap(), t0);
        }
        Ok(())
    });
}

#[test]
fn surface_label_is_invariant() {
    let polygon = proptest::collection::vec([-3i64..=3, -3i64..=3], 3..=6).prop_filter("two-dimensional", |pts| convex_hull(pts).len() >= 3);
    check(200, (polygon, transforms()), |(pts, ts)| {
        let poly = |pts: &[[i64; 2]]| LatticePolytope::new(2, &pts.iter().map(|p| v(p)).collect::<Vec<_>>()).unwrap();
        let label = identify_toric_surface(&poly(&pts));
        let mut cur = poly(&pts);
        for (m, t) in &ts {
            let a = IntMatrix::from_i64(&[&m[0], &m[1]]);
            cur = cur.transform(&a, &v(t));
            prop_assert_eq!(identify_toric_surface(&cur), label.clone());
        }
        Ok(())
    });
}

#[test]
fn triangle_count_matches_enumeration() {
    for b in (1u64..=199).step_by(2) {
        let brute = (0..b as i64).filter(|&a| gcd(a, b as i64) == 1 && gcd(a - 1, b as i64) == 1).count() as u64;
        assert_eq!(count_triangle_types(b).unwrap(), brute, "b = {b}");
        assert_eq!(triangle_type_values(b).unwrap().len() as u64, brute);
    }
}

#[test]
fn r2_iff_primitive_edges() {
    let quad = proptest::collection::vec([-3i64..=3, -3i64..=3], 4).prop_filter_map("convex quadrilateral", |pts| {
        let h = convex_hull(&pts);
        (h.len() == 4).then_some(h)
    });
    check(300, quad, |h| {
        let cone = Cone::new(3, &h.iter().map(|&p| lifted(p)).collect::<Vec<_>>()).unwrap();
        let primitive = (0..4).all(|i| gcd(h[(i + 1) % 4][0] - h[i][0], h[(i + 1) % 4][1] - h[i][1]) == 1);
        prop_assert_eq!(cone.is_r2(), primitive);
        prop_assert_eq!(cone.gorenstein_element(), Some(v(&[0, 0, 1])));
        Ok(())
    });
}

#[test]
fn tetragon_data_is_gorenstein_and_r2() {
    check(300, (0i64..6, 1i64..6, -5i64..6, 1i64..6), |(a, b, c, d)| {
        let Ok(t) = tetragon_data(a, b, c, d) else { return Ok(()) };
        prop_assert_eq!(t.rho.clone(), Some(v(&[0, 0, 1])));
        prop_assert!(t.r2);
        prop_assert!(t.consistent());
        Ok(())
    });
}

#[test]
fn lower_hull_is_translation_invariant_and_margin_independent() {
    let mut fs: Vec<PeriodicConvexFunction> = (1..=3).map(|m| PeriodicConvexFunction::parabola(m).unwrap()).collect();
    fs.push(PeriodicConvexFunction::square_grid());
    fs.push(PeriodicConvexFunction::hexagonal());
    for f in &fs {
        let a = lower_hull(f, 2).unwrap();
        let b = lower_hull(f, 3).unwrap();
        assert!(check_translation_invariance(f, &a).passed());
        assert!(check_translation_invariance(f, &b).passed());
        assert_eq!(a.orbit_poset(), b.orbit_poset());
        assert_eq!(a.orbit_keys.len(), b.orbit_keys.len());
    }
}
