mod common;

use std::sync::OnceLock;

use common::{class, Torus3};
use proptest::prelude::*;
use ttd_core::abelian::Int;
use ttd_core::gysin::{pushforward, BundleData, FluxElement};
use ttd_core::pairs::{flux_of, gauge_act, pair_class, t_dual, t_quotient, PairClass};

fn torus() -> &'static Torus3 {
    static T: OnceLock<Torus3> = OnceLock::new();
    T.get_or_init(Torus3::new)
}

fn small(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn t_dual_is_an_involution(c in small(3), d in small(3), w in -5i64..=5) {
        let t = torus();
        let p = PairClass::new(t.x.clone(), class(&t.x, 2, &c), class(&t.x, 2, &d), &[Int::from(w)]).unwrap();
        let q = t_dual(&p);
        prop_assert_eq!(t_dual(&q), p.clone());
        prop_assert_eq!(q.c(), p.d());
        prop_assert_eq!(q.t(), p.t());
        let (cd, dc) = (t_quotient(&t.x, p.c(), p.d()).unwrap(), t_quotient(&t.x, p.d(), p.c()).unwrap());
        prop_assert_eq!(cd.relations(), dc.relations());
    }

    #[test]
    fn classes_survive_the_flux_round_trip(c in small(3), d in small(3), w in -5i64..=5) {
        let t = torus();
        let p = PairClass::new(t.x.clone(), class(&t.x, 2, &c), class(&t.x, 2, &d), &[Int::from(w)]).unwrap();
        let h = flux_of(&p).unwrap();
        prop_assert_eq!(pushforward(&h).unwrap(), p.d().clone());
        prop_assert_eq!(pair_class(&h).unwrap(), p);
    }

    #[test]
    fn gauge_moves_stay_in_the_class(c in small(3), d in small(3), w in -5i64..=5, a in small(3), b in small(3)) {
        let t = torus();
        let bundle = BundleData::new(t.x.clone(), class(&t.x, 2, &c)).unwrap();
        let h = FluxElement::from_parts(bundle, &class(&t.x, 2, &d), &class(&t.x, 3, &[w])).unwrap();
        let (a, b) = (class(&t.x, 1, &a), class(&t.x, 1, &b));
        let ha = gauge_act(&h, &a).unwrap();
        prop_assert_eq!(gauge_act(&ha, &b).unwrap(), gauge_act(&h, &a.add(&b).unwrap()).unwrap());
        prop_assert_eq!(gauge_act(&ha, &a.neg()).unwrap(), h.clone());
        prop_assert_eq!(pair_class(&ha).unwrap(), pair_class(&h).unwrap());
    }
}
