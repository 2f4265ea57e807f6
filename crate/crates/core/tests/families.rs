use modlie::algebra::{involution_sigma, verify_isomorphism};
use modlie::cochain::is_cocycle;
use modlie::contact::{build_l, correspondence};
use modlie::family::{
    build_o51_p2, build_o5_p3, family_prop1, family_prop2, family_thm1, family_thm3, load_cochain, prop2_parameter_map,
};
use modlie::golden::GoldenStore;
use modlie::report::{
    compare_printed_constants, degree_from_name, prop1_isomorphic, prop2_isomorphic, prop2_with_squared_c0,
    sample_prop2_tuples, swap_xy,
};
use modlie::{Cochain, Field, LieAlgebra, Module, Monomial};

fn mono(e: &[u16]) -> Monomial {
    Monomial::from_exponents(e).unwrap()
}

fn labelled(l: &LieAlgebra<Field>, terms: &[(&str, [&str; 2], i64)]) -> Cochain {
    let f = l.field();
    Cochain::from_terms(
        f,
        10,
        2,
        Module::Adjoint,
        terms
            .iter()
            .map(|(k, idx, c)| (l.index_of(k).unwrap(), idx.iter().map(|i| l.index_of(i).unwrap()).collect(), f.from_int(*c))),
    )
    .unwrap()
}

#[test]
fn thm1_family_is_a_lie_bracket() {
    let fam = family_thm1().unwrap();
    let report = fam.check_jacobi();
    assert_eq!(report.triples_checked, 120);
    assert!(report.is_empty());
    assert!(fam.poly_algebra().check_alternating());
    for (m, c) in fam.linear_terms() {
        assert!(is_cocycle(fam.base(), c), "{m:?}");
    }
    assert_eq!(fam.linear_terms().count(), 5);
}

#[test]
fn thm1_table_entries() {
    let fam = family_thm1().unwrap();
    let l = fam.base();
    assert_eq!(fam.coefficient(&mono(&[1, 0, 0, 1, 0])).unwrap(), &labelled(l, &[("x1", ["y3", "y4"], 1)]));
    assert_eq!(fam.coefficient(&mono(&[1, 0, 1, 0, 0])).unwrap(), &labelled(l, &[("y1", ["y2", "y4"], 1)]));
    assert_eq!(fam.terms().len(), 13);
    let zero = fam.specialize(l.field(), &[l.field().zero(); 5]).unwrap();
    assert_eq!(zero.entries(), build_o5_p3().unwrap().entries());
}

#[test]
fn thm1_terms_have_their_indexed_degree() {
    let store = GoldenStore::embedded().unwrap();
    let l = build_o5_p3().unwrap();
    let g = l.grading().unwrap();
    for name in store.cochain_names("o5-p3") {
        let Some(deg) = degree_from_name(&name) else { continue };
        let c = load_cochain(&store, "o5-p3", &name).unwrap();
        assert_eq!(c.homogeneous_degree(g), Some(deg), "{name}");
    }
    assert_eq!(degree_from_name("beta_m606"), Some(0));
    assert_eq!(degree_from_name("alpha_0m3"), Some(-3));
    assert_eq!(degree_from_name("c6"), Some(6));
}

#[test]
fn sigma_relates_opposite_cocycles() {
    let store = GoldenStore::embedded().unwrap();
    let l = build_o5_p3().unwrap();
    let sigma = involution_sigma(&l).unwrap();
    let get = |n| load_cochain(&store, "o5-p3", n).unwrap();
    assert_eq!(get("c6").transport(&sigma).unwrap(), get("c_m6"));
    assert_eq!(get("c3").transport(&sigma).unwrap(), get("c_m3").scale(l.field().from_int(2)));
}

#[test]
fn thm3_family_is_a_lie_bracket() {
    let fam = family_thm3().unwrap();
    assert!(fam.check_jacobi().is_empty());
    assert!(fam.poly_algebra().check_alternating());
    assert!(fam.linear_terms().all(|(_, c)| is_cocycle(fam.base(), c)));
}

#[test]
fn thm3_table_entries() {
    let fam = family_thm3().unwrap();
    let l = fam.base();
    let rho = fam.coefficient(&mono(&[0, 0, 3, 3])).unwrap();
    assert_eq!(rho.len(), 8);
    let first = labelled(l, &[("x1", ["x4", "y3"], 1)]);
    let (w, k, _) = first.terms().next().unwrap();
    assert_eq!(rho.coefficient(k, w), l.field().one());
    assert_eq!(fam.coefficient(&mono(&[1, 0, 1, 0])).unwrap(), &labelled(l, &[("y4", ["h2", "x4"], 1)]));
    let store = GoldenStore::embedded().unwrap();
    let c4 = load_cochain(&store, "o51-p2", "c4").unwrap();
    assert_eq!(swap_xy(l, &c4).unwrap(), load_cochain(&store, "o51-p2", "c_m4").unwrap());
    let gf2 = Field::prime(2).unwrap();
    let one = [gf2.one(), gf2.zero(), gf2.zero(), gf2.zero()];
    let special = fam.specialize(&gf2, &one).unwrap();
    assert!(special.check_jacobi().is_empty());
    assert_ne!(special.entries(), build_o51_p2().unwrap().entries());
}

#[test]
fn prop1_family() {
    let fam = family_prop1().unwrap();
    assert!(fam.check_jacobi().is_empty());
    let l = fam.base();
    let f = l.field();
    assert_eq!(fam.specialize(f, &[f.zero()]).unwrap().entries(), build_o5_p3().unwrap().entries());
    // −1 · 2 x4⊗(h2*∧x4*) from the printed c0
    let s = fam.coefficient(&Monomial::var(0)).unwrap();
    let probe = labelled(l, &[("x4", ["h2", "x4"], 1)]);
    let (w, k, _) = probe.terms().next().unwrap();
    assert_eq!(s.coefficient(k, w), f.from_int(-2));
    assert_eq!(
        fam.coefficient(&mono(&[2])).unwrap(),
        &labelled(l, &[("h1", ["x4", "y4"], 1)])
    );
}

#[test]
fn prop1_specializations_are_simple_and_match_the_contact_algebra() {
    let fam = family_prop1().unwrap();
    let gf9 = Field::with_order(9).unwrap();
    for eps in gf9.nonzero() {
        let s = gf9.add(gf9.one(), eps);
        let a = fam.specialize(&gf9, &[s]).unwrap();
        assert_eq!(a.dim(), 10);
        assert!(a.is_simple(), "epsilon = {}", gf9.format(eps));
        assert!(prop1_isomorphic(&fam, &gf9, eps).unwrap());
    }
    let gf3 = Field::prime(3).unwrap();
    let one = gf3.one();
    assert!(prop1_isomorphic(&fam, &gf3, one).unwrap());
    // dropping the h2 correction breaks the map at ε = 1
    let a = fam.specialize(&gf3, &[gf3.add(one, one)]).unwrap();
    let l = build_l(&gf3, one, gf3.zero(), gf3.zero()).unwrap();
    assert!(!verify_isomorphism(&correspondence(&gf3, one, false), &a, &l));
    let o5 = build_o5_p3().unwrap();
    assert!(verify_isomorphism(&modlie::LinearMap::identity(&gf3, 10), &o5, &o5));
}

#[test]
fn prop2_family_and_parameter_map() {
    let fam = family_prop2().unwrap();
    assert!(fam.check_jacobi().is_empty());
    assert!(fam.linear_terms().all(|(_, c)| is_cocycle(fam.base(), c)));
    let squared = prop2_with_squared_c0(&fam).unwrap();
    assert!(!squared.check_jacobi().is_empty());

    let gf9 = Field::with_order(9).unwrap();
    for t1 in gf9.elements() {
        let cp = prop2_parameter_map(&gf9, t1, gf9.zero(), gf9.zero());
        assert_eq!((cp.delta, cp.rho), (gf9.zero(), gf9.zero()));
        assert_eq!(cp.epsilon, gf9.sub(gf9.from_int(2), t1));
    }
}

#[test]
fn prop2_structure_constants_from_the_family() {
    let fam = family_prop2().unwrap();
    let ring = fam.poly_algebra().ring().clone();
    let l = fam.base();
    let at = |v: &[modlie::ParamPoly], label: &str| v[l.index_of(label).unwrap()].clone();
    let poly = |terms: &[([u16; 3], i64)]| ring.from_terms(terms.iter().map(|(e, c)| (mono(e), *c)));

    let yx2 = fam.bracket_by_label("y2", "x2").unwrap();
    assert_eq!(at(&yx2, "h2"), poly(&[([0, 0, 0], 2)]));
    assert_eq!(at(&yx2, "h1"), poly(&[([1, 0, 0], 2)]));
    assert!(at(&yx2, "x3").is_zero());

    let yx1 = fam.bracket_by_label("y2", "x1").unwrap();
    assert_eq!(at(&yx1, "x4"), poly(&[([1, 1, 0], 1), ([0, 1, 0], -1)]));

    let yy = fam.bracket_by_label("y4", "y3").unwrap();
    assert_eq!(at(&yy, "x1"), poly(&[([4, 0, 1], 1), ([0, 0, 1], -1)]));

    let cmp = compare_printed_constants(&fam).unwrap();
    assert_eq!(cmp.iter().map(|c| c.matches).collect::<Vec<_>>(), [false, true, false]);
}

#[test]
fn prop2_matches_the_contact_algebra_on_sampled_tuples() {
    let fam = family_prop2().unwrap();
    let gf9 = Field::with_order(9).unwrap();
    let tuples = sample_prop2_tuples(&gf9, 20, 0);
    assert_eq!(tuples.len(), 20);
    for t in tuples {
        assert_eq!(prop2_isomorphic(&fam, &gf9, t).unwrap(), Some(true));
    }
    let eps_zero = [gf9.from_int(2), gf9.one(), gf9.one()];
    assert_eq!(prop2_isomorphic(&fam, &gf9, eps_zero).unwrap(), None);
}

#[test]
fn specialization_checks_arity() {
    let fam = family_thm1().unwrap();
    let f = fam.base().field().clone();
    assert!(fam.specialize(&f, &[f.one()]).is_err());
    assert!(fam.specialize(&Field::prime(2).unwrap(), &[Field::prime(2).unwrap().one(); 5]).is_err());
}

#[test]
fn family_json_lists_every_term() {
    let fam = family_thm3().unwrap();
    let v = fam.to_json();
    assert_eq!(v["terms"].as_array().unwrap().len(), fam.terms().len());
    assert_eq!(v["params"].as_array().unwrap().len(), 4);
}
