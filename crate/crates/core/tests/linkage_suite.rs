//! Linkage behaviour: forming links, verifying the linkage laws, witness
//! search, and the pd inequalities used throughout the case analysis.

mod common;

use common::*;
use trefoil_core::*;

fn witness(r: &PolyRing, gens: &[&str]) -> CompleteIntersectionWitness {
    CompleteIntersectionWitness {
        gens: gens.iter().map(|s| poly(r, s)).collect(),
        verified: false,
    }
}

#[test]
fn intro_link_additivity() {
    let r = ring(&["x", "y", "a", "b", "c"]);
    let i = ideal(&r, &["x^3", "y^3", "x^2*a+x*y*b+y^2*c"]);
    let rec = link(&witness(&r, &["x^3", "y^3"]), &i).unwrap();
    assert!(!rec.degenerate);
    let e_i = rec.source.multiplicity().unwrap();
    let e_l = rec.link.multiplicity().unwrap();
    assert_eq!(e_i + e_l, 9);
    let report = verify_link_properties(&rec, None, 5).unwrap();
    assert!(report.all_pass(), "{:?}", report.checks);
}

#[test]
fn degenerate_link_is_flagged() {
    let r = ring(&["x", "y"]);
    let c = ideal(&r, &["x^2", "y^2"]);
    let rec = link(&witness(&r, &["x^2", "y^2"]), &c).unwrap();
    assert!(rec.degenerate);
    assert!(rec.link.is_unit_ideal().unwrap());
    let report = verify_link_properties(&rec, None, 0).unwrap();
    assert!(report.all_pass());
}

#[test]
fn link_preconditions_name_the_failure() {
    let r = ring(&["x", "y", "z"]);
    let j = ideal(&r, &["x", "y"]);
    // Not contained in J.
    let err = link(&witness(&r, &["z^2", "x"]), &j).unwrap_err();
    assert!(err.to_string().contains("not contained"));
    // Contained but wrong height (not a regular sequence).
    let i2 = ideal(&r, &["x^2", "x*y"]);
    let err = link(&witness(&r, &["x^2", "x*y"]), &i2).unwrap_err();
    assert!(err.to_string().contains("complete intersection") || err.to_string().contains("height"));
}

#[test]
fn squarefree_three_prime_link() {
    // K = (x,y) cap (z,w) cap (u,v) linked by (xzv, ywu) lands on
    // C + (xyzw, xyuv, zwuv), a pd-3 ideal.
    let r = ring(&["x", "y", "z", "w", "u", "v"]);
    let k = ideal(&r, &["x", "y"])
        .intersect(&ideal(&r, &["z", "w"]))
        .unwrap()
        .intersect(&ideal(&r, &["u", "v"]))
        .unwrap();
    let rec = link(&witness(&r, &["x*z*v", "y*w*u"]), &k).unwrap();
    let expect = ideal(&r, &["x*z*v", "y*w*u", "x*y*z*w", "x*y*u*v", "z*w*u*v"]);
    assert!(rec.link.equal(&expect).unwrap());
    assert_eq!(rec.link.pd().unwrap(), 3);
    assert_eq!(k.multiplicity().unwrap(), 3);
    assert_eq!(rec.link.multiplicity().unwrap(), 6);
}

#[test]
fn pinched_pencil_link_matches_displayed_generators() {
    // [(x,y)^2 + (ax+by)](u,v) linked by (x^2 u, y^2 v).
    let r = ring(&["x", "y", "u", "v", "a", "b"]);
    let h = ideal(&r, &["x", "y"])
        .power(2)
        .unwrap()
        .sum(&ideal(&r, &["a*x+b*y"]))
        .unwrap();
    let iun = h.product(&ideal(&r, &["u", "v"])).unwrap();
    let rec = link(&witness(&r, &["x^2*u", "y^2*v"]), &iun).unwrap();
    let expect = ideal(
        &r,
        &["x^2*u", "y^2*v", "x*y*u*v", "a*x*u*v-b*y*u*v", "x^2*y^2"],
    );
    assert!(rec.link.equal(&expect).unwrap());
    assert_eq!(rec.link.pd().unwrap(), 3);
    let report = verify_link_properties(&rec, None, 17).unwrap();
    assert!(report.all_pass(), "{:?}", report.checks);
}

#[test]
fn double_link_round_trip() {
    // An unmixed J comes back as C : (C : J), and a double link with the
    // same witness degrees preserves the Hilbert series and pd.
    let r = ring(&["x", "y", "z", "w", "u", "v"]);
    let j = ideal(&r, &["x", "y"])
        .intersect(&ideal(&r, &["z", "w"]))
        .unwrap()
        .intersect(&ideal(&r, &["u", "v"]))
        .unwrap();
    let c = witness(&r, &["x*z*v", "y*w*u"]);
    let rec = link(&c, &j).unwrap();
    let back = link(&find_ci(&rec.link, &[3, 3], 2).unwrap(), &rec.link).unwrap();
    let report = verify_link_properties(&rec, Some(&back), 3).unwrap();
    assert!(report.all_pass(), "{:?}", report.checks);
    // J is unmixed, so linking back with the same witness recovers J itself.
    let same = link(&c, &rec.link).unwrap();
    assert!(same.link.equal(&j).unwrap());
}

#[test]
fn find_ci_examples() {
    let r = ring(&["x", "y", "z", "w", "u", "v"]);
    let k = ideal(&r, &["x", "y"])
        .intersect(&ideal(&r, &["z", "w"]))
        .unwrap()
        .intersect(&ideal(&r, &["u", "v"]))
        .unwrap();
    let w33 = find_ci(&k, &[3, 3], 1).unwrap();
    assert!(w33.verified);
    assert_eq!(w33.degrees(), vec![3, 3]);
    let c = Ideal::new(&r, w33.gens.clone()).unwrap();
    assert_eq!(c.height().unwrap(), 2);
    assert!(k.contains(&c).unwrap());

    let r2 = ring(&["x", "y"]);
    let m = ideal(&r2, &["x", "y"]);
    let w11 = find_ci(&m, &[1, 1], 0).unwrap();
    assert_eq!(w11.degrees(), vec![1, 1]);

    let principal = ideal(&r2, &["x"]);
    assert!(find_ci(&principal, &[1, 1], 0).is_err());
}

#[test]
fn pd_drop_bound_on_random_links() {
    // pd(R/I) <= pd(R/L) + 1 whenever L = C : I for a full-height CI C in I.
    let mut rng = seeded(31);
    let r = ring(&["x", "y", "z", "w"]);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 6 && attempts < 60 {
        attempts += 1;
        let i = random_ideal(&r, &mut rng, 3, 3);
        let Ok(ht) = i.height() else { continue };
        if ht == 0 || ht > 3 || i.is_unit_ideal().unwrap() {
            continue;
        }
        let Ok(w) = find_ci(&i, &vec![3; ht], attempts as u64) else {
            continue;
        };
        let Ok(rec) = link(&w, &i) else { continue };
        if rec.degenerate {
            continue;
        }
        let pd_i = i.pd().unwrap();
        let pd_l = rec.link.pd().unwrap();
        assert!(pd_i <= pd_l + 1, "pd {pd_i} > pd {pd_l} + 1 for {i}");
        checked += 1;
    }
    assert!(checked >= 3, "too few usable random links ({checked})");
}

#[test]
fn depth_lemma_inequalities_on_random_ideals() {
    // pd(R/J) <= max(pd(R/(J:h)), pd(R/(J+(h)))), and the two-ideal variant
    // pd(R/(J1 cap J2)) <= max(pd J1, pd J2, pd(J1+J2) - 1).
    let mut rng = seeded(57);
    let r = ring(&["x", "y", "z", "w"]);
    for _ in 0..6 {
        let j = random_ideal(&r, &mut rng, 2, 2);
        let h = random_form(&r, &mut rng, 2, 2);
        if h.is_zero() {
            continue;
        }
        let colon = j.colon_elem(&h).unwrap();
        let sum = j.sum(&Ideal::new(&r, vec![h.clone()]).unwrap()).unwrap();
        let pd_colon = pd_or_zero(&colon);
        let pd_sum = pd_or_zero(&sum);
        let pd_j = pd_or_zero(&j);
        assert!(pd_j <= pd_colon.max(pd_sum), "ses bound failed for {j}, h = {}", trefoil_core::format(&h));

        let j2 = random_ideal(&r, &mut rng, 2, 2);
        let meet = j.intersect(&j2).unwrap();
        let union = j.sum(&j2).unwrap();
        let bound = pd_or_zero(&j)
            .max(pd_or_zero(&j2))
            .max(pd_or_zero(&union).saturating_sub(1));
        assert!(pd_or_zero(&meet) <= bound, "intersection bound failed");
    }
}

fn pd_or_zero(i: &Ideal) -> usize {
    if i.is_unit_ideal().unwrap() {
        0
    } else {
        i.pd().unwrap()
    }
}
