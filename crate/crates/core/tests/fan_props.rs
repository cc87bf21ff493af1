mod common;

use common::{check, monoid, polygon_cone};
use proptest::prelude::*;
use toric_gtc::fan::{dual_space, gtc_fan_from_cone, spec_duality, spec_fan, validate_gtc};
use toric_gtc::monoid::spec;

#[test]
fn spec_fan_generization_is_functorial() {
    check(80, monoid(), |p| {
        let f = spec_fan(&p).unwrap();
        prop_assert!(f.validate().passed());
        let (count, failures) = f.functoriality_failures();
        prop_assert!(count > 0 || f.len() <= 2);
        prop_assert!(failures.is_empty(), "{:?}", failures);
        prop_assert_eq!(f.closed_points().len(), 1);
        prop_assert_eq!(f.generic_points().len(), 1);
        Ok(())
    });
}

#[test]
fn dual_space_is_an_involution() {
    check(80, monoid(), |p| {
        let f = spec_fan(&p).unwrap();
        let d = dual_space(&f);
        prop_assert!(d.reversed().same_as(&f.poset));
        prop_assert_eq!(d.closed_points(), f.poset.generic_points());
        for x in 0..f.len() {
            for y in 0..f.len() {
                prop_assert_eq!(d.leq(x, y), f.poset.leq(y, x));
            }
        }
        Ok(())
    });
}

#[test]
fn spec_of_dual_reverses_faces() {
    check(80, monoid(), |p| {
        let map = spec_duality(&p).unwrap();
        let back = spec_duality(&p.dual().unwrap()).unwrap();
        for (i, &j) in map.iter().enumerate() {
            prop_assert_eq!(back[j], i);
        }
        let sp = spec(&p);
        let sd = spec(&p.dual().unwrap());
        prop_assert!(sp.poset.reversed().is_isomorphism(&sd.poset, &map));
        Ok(())
    });
}

#[test]
fn boundary_fan_of_a_gorenstein_cone() {
    check(80, polygon_cone(), |c| {
        let g = gtc_fan_from_cone(&c).unwrap();
        prop_assert!(validate_gtc(&g).passed());
        prop_assert_eq!(g.generic_points().len(), c.rays().len());
        // local: the maximal ideal is the only closed point
        prop_assert_eq!(g.closed_points().len(), 1);
        prop_assert_eq!(g.len(), 2 * c.rays().len() + 1);
        let (_, failures) = g.base.functoriality_failures();
        prop_assert!(failures.is_empty());
        Ok(())
    });
}
