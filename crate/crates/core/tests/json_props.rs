mod common;

use common::{check, monoid, polygon_cone};
use proptest::prelude::*;
use toric_gtc::fan::gtc_fan_from_cone;
use toric_gtc::json::{canonical, parse, GtcFanJson, MonoidJson};

#[test]
fn monoid_json_round_trips() {
    check(100, monoid(), |p| {
        let text = canonical(&MonoidJson::from_monoid(&p).unwrap());
        let back = parse::<MonoidJson>(&text).unwrap().to_monoid().unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(canonical(&MonoidJson::from_monoid(&back).unwrap()), text);
        Ok(())
    });
}

#[test]
fn fan_json_round_trips() {
    check(60, polygon_cone(), |c| {
        let g = gtc_fan_from_cone(&c).unwrap();
        let text = canonical(&GtcFanJson::from_fan(&g).unwrap());
        let back = parse::<GtcFanJson>(&text).unwrap().to_fan().unwrap();
        prop_assert!(back.poset().same_as(g.poset()));
        prop_assert_eq!(&back.gtc_stalks, &g.gtc_stalks);
        prop_assert_eq!(&back.rho, &g.rho);
        prop_assert_eq!(&back.base.generization, &g.base.generization);
        prop_assert_eq!(canonical(&GtcFanJson::from_fan(&back).unwrap()), text);
        Ok(())
    });
}
