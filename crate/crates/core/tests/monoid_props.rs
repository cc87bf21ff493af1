mod common;

use common::checks::{box_points, dot, in_p, rays};
use common::{check, checks, monoid, v};
use proptest::prelude::*;
use toric_gtc::lattice::{solve_left, IntVector};
use toric_gtc::monoid::rational_rank;

#[test]
fn cone_biduality() {
    checks::cone_biduality(150);
}

#[test]
fn hilbert_basis_is_complete_and_minimal() {
    checks::hilbert_basis_is_complete_and_minimal(60);
}

#[test]
fn ideal_quotient_universal_property() {
    checks::ideal_quotient_universal_property(60);
}

#[test]
fn faces_match_primes() {
    check(60, monoid(), |p| {
        let n = p.lattice_rank();
        let faces = p.faces();
        let k = p.inequality_rays().len();
        prop_assert_eq!(faces.len(), if n == 2 { k + 2 } else { 2 * k + 2 });
        let pts: Vec<IntVector> = box_points(n, 2).iter().map(|x| v(x)).filter(|m| p.contains(m)).collect();
        for f in &faces {
            for a in &pts {
                for b in &pts {
                    let both = p.face_contains(f, a) && p.face_contains(f, b);
                    prop_assert_eq!(p.face_contains(f, &a.add(b)), both);
                }
            }
            let in_face: Vec<IntVector> = p.hilbert_basis().unwrap().iter().filter(|h| p.face_contains(f, h)).cloned().collect();
            prop_assert_eq!(rational_rank(&in_face), n - f.dim);
        }
        Ok(())
    });
}

#[test]
fn localization_is_functorial() {
    check(60, monoid(), |p| {
        let faces = p.faces();
        let locs: Vec<_> = faces.iter().map(|f| p.localize(f).unwrap()).collect();
        let hb = p.hilbert_basis().unwrap().to_vec();
        for (f, l) in faces.iter().zip(&locs) {
            prop_assert_eq!(l.monoid.lattice_rank(), f.dim);
            for h in &hb {
                let image = l.map.apply(h);
                prop_assert!(l.monoid.contains(&image));
                prop_assert_eq!(image.is_zero(), p.face_contains(f, h));
            }
        }
        for (f1, l1) in faces.iter().zip(&locs) {
            for (f2, l2) in faces.iter().zip(&locs) {
                if !f1.ray_subset.is_subset(&f2.ray_subset) {
                    continue;
                }
                let x = solve_left(&l2.map, &l1.map);
                prop_assert!(x.is_some(), "no factorization {:?} -> {:?}", f2.ray_subset, f1.ray_subset);
                let x = x.unwrap();
                for h in l2.monoid.hilbert_basis().unwrap() {
                    prop_assert!(l1.monoid.contains(&x.apply(h)));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn gorenstein_element_is_consistent() {
    check(100, monoid(), |p| {
        let n = p.lattice_rank();
        let rs = rays(&p);
        match p.gorenstein_element() {
            Some(rho) => {
                let r = rho.to_i64().unwrap();
                prop_assert!(rs.iter().all(|x| dot(x, &r) == 1));
                prop_assert!(p.stanley_check(&rho, 3));
                for m in box_points(n, 3).into_iter().filter(|m| in_p(&rs, m)) {
                    let interior = rs.iter().all(|x| dot(x, &m) >= 1);
                    let shifted: Vec<i64> = m.iter().zip(&r).map(|(a, b)| a - b).collect();
                    prop_assert_eq!(interior, in_p(&rs, &shifted));
                }
            }
            None => {
                for m in box_points(n, 4) {
                    prop_assert!(!rs.iter().all(|x| dot(x, &m) == 1), "missed {:?}", m);
                }
            }
        }
        Ok(())
    });
}
