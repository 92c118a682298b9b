//! Property tests for the arithmetic substrate: ring axioms, order axioms,
//! and parse/format round-trips on randomized polynomials.

use proptest::prelude::*;
use trefoil_core::*;

const NVARS: usize = 3;

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..4, NVARS).prop_map(|e| Monomial::from_exps(&e))
}

fn arb_poly(field: FieldSpec) -> impl Strategy<Value = Polynomial> {
    let ring = PolyRing::grevlex(&["x", "y", "z"], field).unwrap();
    prop::collection::vec((any::<i64>(), arb_monomial()), 0..6).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .map(|(c, mon)| Term {
                coeff: ring.field().from_i64(c % 1000),
                mon,
            })
            .collect();
        Polynomial::from_terms(&ring, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_gf(f in arb_poly(FieldSpec::Prime(DEFAULT_PRIME)),
                      g in arb_poly(FieldSpec::Prime(DEFAULT_PRIME)),
                      h in arb_poly(FieldSpec::Prime(DEFAULT_PRIME))) {
        let assoc_l = f.add(&g).unwrap().add(&h).unwrap();
        let assoc_r = f.add(&g.add(&h).unwrap()).unwrap();
        prop_assert_eq!(&assoc_l, &assoc_r);

        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());

        let dist_l = f.mul(&g.add(&h).unwrap()).unwrap();
        let dist_r = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(&dist_l, &dist_r);

        let massoc_l = f.mul(&g).unwrap().mul(&h).unwrap();
        let massoc_r = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(&massoc_l, &massoc_r);

        prop_assert!(f.add(&f.neg()).unwrap().is_zero());
    }

    #[test]
    fn ring_axioms_rationals(f in arb_poly(FieldSpec::Rationals),
                             g in arb_poly(FieldSpec::Rationals)) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn orders_are_total_and_multiplicative(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        use std::cmp::Ordering;
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::Block { split: 1 }] {
            // Antisymmetry.
            prop_assert_eq!(order.compare(&a, &b).unwrap(), order.compare(&b, &a).unwrap().reverse());
            prop_assert_eq!(order.compare(&a, &b).unwrap() == Ordering::Equal, a == b);
            // Transitivity.
            if order.compare(&a, &b).unwrap() != Ordering::Greater
                && order.compare(&b, &c).unwrap() != Ordering::Greater
            {
                prop_assert_ne!(order.compare(&a, &c).unwrap(), Ordering::Greater);
            }
            // Multiplicativity: a > b implies ac > bc.
            let ac = a.mul(&c);
            let bc = b.mul(&c);
            prop_assert_eq!(order.compare(&ac, &bc).unwrap(), order.compare(&a, &b).unwrap());
            // The identity monomial is minimal.
            let one = Monomial::one(NVARS);
            prop_assert_ne!(order.compare(&one, &a).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn grevlex_is_degree_compatible(a in arb_monomial(), b in arb_monomial()) {
        if a.degree() > b.degree() {
            prop_assert_eq!(
                MonomialOrder::GrevLex.compare(&a, &b).unwrap(),
                std::cmp::Ordering::Greater
            );
        }
    }

    #[test]
    fn format_parse_roundtrip_gf(f in arb_poly(FieldSpec::Prime(DEFAULT_PRIME))) {
        let text = format(&f);
        let back = parse(&text, f.ring()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn format_parse_roundtrip_rationals(f in arb_poly(FieldSpec::Rationals)) {
        let text = format(&f);
        let back = parse(&text, f.ring()).unwrap();
        prop_assert_eq!(back, f);
    }
}
