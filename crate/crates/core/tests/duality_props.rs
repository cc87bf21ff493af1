mod common;

use common::reflexive_polygons;
use rayon::prelude::*;
use toric_gtc::assembly::{assemble_datum, chart, gluing_functoriality};
use toric_gtc::duality::{cone_identification, datum_isomorphism, mirror, single_field_mutations, validate_duality, DualityDatum};
use toric_gtc::generators::{abelian_datum, batyrev_datum, batyrev_dual, batyrev_mirror_map, PeriodicConvexFunction};
use toric_gtc::json::{canonical, DatumJson};
use toric_gtc::polytope::{polar_lattice, LatticePolytope};

fn boundary_points(p: &LatticePolytope) -> usize {
    p.lattice_points().len() - p.interior_lattice_points().len()
}

fn text(d: &DualityDatum) -> String {
    canonical(&DatumJson::from_datum(d).unwrap())
}

fn batyrev_data() -> Vec<DualityDatum> {
    reflexive_polygons().iter().map(|p| batyrev_datum(p).unwrap().datum).collect()
}

fn abelian_data() -> Vec<DualityDatum> {
    let mut fs: Vec<PeriodicConvexFunction> = (1..=3).map(|m| PeriodicConvexFunction::parabola(m).unwrap()).collect();
    fs.push(PeriodicConvexFunction::square_grid());
    fs.push(PeriodicConvexFunction::hexagonal());
    fs.par_iter().map(|f| abelian_datum(f, 2).unwrap().datum).collect()
}

#[test]
fn sixteen_classes_with_polar_pairing() {
    let polys = reflexive_polygons();
    assert_eq!(polys.len(), 16);
    let mut counts: Vec<usize> = polys.iter().map(boundary_points).collect();
    counts.sort();
    assert_eq!(counts, vec![3, 4, 4, 4, 5, 5, 6, 6, 6, 6, 7, 7, 8, 8, 8, 9]);
    for p in &polys {
        let q = polar_lattice(p).unwrap();
        assert_eq!(boundary_points(p) + boundary_points(&q), 12);
        let back = polar_lattice(&q).unwrap();
        let mut a = p.vertices().to_vec();
        let mut b = back.vertices().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}

#[test]
fn mirror_is_a_valid_involution() {
    batyrev_data().into_par_iter().chain(abelian_data()).for_each(|d| {
        assert!(validate_duality(&d).passed());
        let m = mirror(&d).unwrap();
        assert!(validate_duality(&m).passed());
        assert_eq!(text(&mirror(&m).unwrap()), text(&d));
    });
}

#[test]
fn mirror_is_the_batyrev_datum_of_the_polar() {
    reflexive_polygons().par_iter().for_each(|p| {
        let a = batyrev_datum(p).unwrap();
        let b = batyrev_dual(&a).unwrap();
        let map = batyrev_mirror_map(&a, &b).unwrap();
        datum_isomorphism(&mirror(&a.datum).unwrap(), &b.datum, &map).unwrap();
    });
}

#[test]
fn cone_identification_at_every_incident_pair() {
    batyrev_data().into_par_iter().chain(abelian_data()).for_each(|d| {
        for (x, y) in d.incident_pairs() {
            let c = cone_identification(&d, x, y).unwrap();
            assert!(c.holds(), "{} {}: {:?}", d.f_side.label(x), d.f_side.label(y), c);
        }
    });
}

#[test]
fn every_single_field_mutation_is_detected() {
    batyrev_data().into_par_iter().for_each(|d| {
        let ms = single_field_mutations(&d);
        assert!(!ms.is_empty());
        for (what, m) in ms {
            if let Ok(m) = m {
                assert!(!validate_duality(&m).passed(), "undetected: {what}");
            }
        }
    });
}

#[test]
fn generization_is_functorial_on_both_sides() {
    batyrev_data().into_par_iter().chain(abelian_data()).for_each(|d| {
        for side in [&d.f_side, &d.q_side] {
            let (_, failures) = side.base.functoriality_failures();
            assert!(failures.is_empty(), "{failures:?}");
        }
    });
}

#[test]
fn components_glue_functorially() {
    batyrev_data().into_par_iter().chain(abelian_data()).for_each(|d| {
        let s = assemble_datum(&d).unwrap();
        let f = &d.f_side;
        assert!(gluing_functoriality(f, &s).is_empty());
        for c in &s.components {
            let rho = &f.rho[c.point];
            for v in &c.polytope.vertices {
                assert_eq!(v.dot(rho), 1.into());
                assert!(c.polytope.lattice_points.contains(v));
            }
            assert!(c.polytope.lattice_points.iter().all(|m| m.dot(rho) == 1.into()));
        }
    });
}

#[test]
fn charts_cover_every_closed_point() {
    batyrev_data().into_par_iter().chain(abelian_data()).for_each(|d| {
        let f = &d.f_side;
        let mut covered = std::collections::BTreeSet::new();
        for y in f.generic_points() {
            let Ok(c) = chart(&d, y) else { continue };
            let below: Vec<usize> = f.closed_points().into_iter().filter(|&x| f.poset().leq(x, y)).collect();
            let pieces: Vec<usize> = c.pieces.iter().map(|(x, _)| *x).collect();
            assert_eq!(pieces, below);
            assert_eq!(c.dual_rays.len(), below.len());
            covered.extend(below);
        }
        for x in f.closed_points() {
            assert!(covered.contains(&x) || f.base.frontier.contains(&x), "{} uncovered", f.label(x));
        }
    });
}
