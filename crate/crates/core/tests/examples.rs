use ternary_core::{fixtures, induced_from_binary, is_bialgebra_equivalence, iso_search, Engine, FieldSpec, Variant};

#[test]
fn et1_is_total_but_not_partial() {
    let a = fixtures::et1();
    let total = a.check(Variant::Total);
    assert!(total.verdict);
    assert_eq!(total.checked, 32);
    assert!(a.check(Variant::Weak).verdict);

    // μ(e1,e1,e1) = e1, so every nesting at the all-e1 tuple is e1 and the
    // partial sum is 3 e1
    let w = a.check(Variant::Partial).witness.unwrap();
    assert_eq!(w.index, vec![0; 6]);
    assert!(w.to_string().contains("sum = 3"));
    assert_eq!(a.check_oracle(Variant::Partial).witness.unwrap().index, vec![0; 6]);
}

#[test]
fn ep1_is_partial_and_total() {
    // every composite vanishes: μ(e1,e1,e1) = e2 and e2 annihilates everything
    let a = fixtures::ep1();
    for v in Variant::ALL {
        assert!(a.check(v).verdict, "{v}");
    }
}

#[test]
fn induced_tables_match_the_printed_ones() {
    for i in 1..=7 {
        let bin = fixtures::binary(i);
        assert!(bin.check_associative().verdict, "A{i}");
        let (t, report) = induced_from_binary(&bin);
        assert!(report.verdict);
        assert_eq!(t, fixtures::induced_printed(i), "A{i}");
        assert!(t.check(Variant::Total).verdict, "A{i}");
    }
}

#[test]
fn printed_duals() {
    assert_eq!(ternary_core::dualize_algebra(&fixtures::et1()), fixtures::et1_dual());
    assert_eq!(ternary_core::dualize_algebra(&fixtures::ep1()), fixtures::ep1_dual());
    assert_eq!(fixtures::ep2().dual(), fixtures::ep2_dual());
    assert_eq!(fixtures::et2().dual(), fixtures::et2());
    assert!(fixtures::ep1_dual().check(Variant::Partial).verdict);
    assert!(fixtures::et1_dual().check(Variant::Total).verdict);
}

#[test]
fn ep2_and_its_signs() {
    for b in fixtures::ep2().sign_variants() {
        let r = b.check_bialgebra();
        assert!(r.verdict, "{r}");
        assert!(r.disagreements.is_empty());
    }
    assert!(fixtures::ep2_dual().check_bialgebra().verdict);
}

#[test]
fn et2_fails_compatibility_at_the_all_e1_instance() {
    let b = fixtures::et2();
    assert!(b.algebra.check(Variant::Total).verdict);
    assert!(b.coalgebra.check(Variant::Total).verdict);
    let reports: Vec<_> = Engine::ALL.iter().map(|&e| b.compatibility_engine(e)).collect();
    for r in &reports {
        let w = r.witness.as_ref().expect("fails");
        assert_eq!(w.index, vec![0; 6], "{}", r.name);
    }
    let r = b.check_compatibility();
    assert!(r.disagreements.is_empty());
    let text = r.witness.unwrap().to_string();
    assert!(text.contains("lhs = 1") && text.contains("rhs = 3"), "{text}");
    for s in b.sign_variants() {
        assert!(!s.check_bialgebra().verdict);
    }
}

#[test]
fn swap_equivalence_and_iso_over_f3() {
    let (b1, b2) = fixtures::swap_pair();
    let f = fixtures::swap_map();
    assert!(is_bialgebra_equivalence(&f, &b1, &b2).unwrap().verdict);
    assert!(!is_bialgebra_equivalence(&ternary_core::LinearMap::identity(FieldSpec::Rational, 2), &b1, &b2)
        .unwrap()
        .verdict);

    let f3 = FieldSpec::prime(3).unwrap();
    let (a1, a2) = (b1.algebra.over(f3).unwrap(), b2.algebra.over(f3).unwrap());
    let g = iso_search(&a1, &a2).unwrap().expect("isomorphic");
    assert!(g.is_invertible());
    assert!(ternary_core::is_algebra_morphism(&g, &a1, &a2).unwrap().verdict);
}

#[test]
fn weak_not_total_fixture() {
    let a = fixtures::weak_not_total_f2();
    assert!(a.check(Variant::Weak).verdict);
    assert!(!a.check(Variant::Total).verdict);
}
