mod common;

use modlie::cochain::{differential, Module};
use modlie::cohomology::CochainSpace;
use modlie::cyc::{build_aa, build_cyc, cyc_grading, deformed_bracket, verify_claim1, verify_claim2, CycError};
use modlie::{Fe, Field, LieAlgebra};

fn fields() -> Vec<Field> {
    [3, 9, 4, 2].iter().map(|&q| Field::with_order(q).unwrap()).collect()
}

fn scaled_unit(l: &LieAlgebra<Field>, i: usize, c: Fe) -> Vec<Fe> {
    l.unit(i).iter().map(|&x| l.field().mul(c, x)).collect()
}

/// Diagonal map with `f ↦ r f`, `e_i ↦ r^i e_i`, checked bracket by bracket.
fn diagonal_is_isomorphism(field: &Field, a: Fe, r: Fe) -> bool {
    let p = field.p() as usize;
    let (src, dst) = (deformed_bracket(field, a).unwrap(), build_cyc(field).unwrap());
    let scale = |i: usize| if i == p { r } else { field.pow(r, i as u64) };
    let image = |v: &[Fe]| v.iter().enumerate().map(|(i, &x)| field.mul(scale(i), x)).collect::<Vec<_>>();
    (0..=p).all(|i| {
        (0..=p).all(|j| {
            let lhs = dst.bracket(&scaled_unit(&dst, i, scale(i)), &scaled_unit(&dst, j, scale(j)));
            lhs == image(&src.bracket(&src.unit(i), &src.unit(j)))
        })
    })
}

#[test]
fn base_and_deformed_brackets() {
    let f = Field::prime(3).unwrap();
    let l = build_cyc(&f).unwrap();
    assert_eq!(l.dim(), 4);
    assert_eq!(l.basis(), ["e0", "e1", "e2", "f"]);
    assert_eq!(l.bracket(&l.unit(3), &l.unit(0)), l.unit(1));
    assert_eq!(l.bracket(&l.unit(3), &l.unit(2)), l.unit(0));
    assert_eq!(l.bracket(&l.unit(0), &l.unit(1)), vec![f.zero(); 4]);
    let d = deformed_bracket(&f, f.one()).unwrap();
    assert_eq!(d.bracket(&d.unit(3), &d.unit(2)), scaled_unit(&d, 0, f.from_int(2)));
    assert_eq!(deformed_bracket(&f, f.zero()).unwrap().entries(), l.entries());
    assert_eq!(cyc_grading(3), vec![0, 1, 2, 1]);
}

#[test]
fn deformed_brackets_satisfy_jacobi() {
    for f in fields() {
        for a in f.elements() {
            let l = deformed_bracket(&f, a).unwrap();
            assert!(l.check_jacobi().is_empty());
            assert_eq!(common::naive_jacobi_violations(&l), 0);
        }
    }
}

#[test]
fn rescaling_map_examples() {
    let f = Field::prime(3).unwrap();
    let id = build_aa(&f, f.zero()).unwrap();
    for i in 0..4 {
        assert_eq!(id.apply(&f, &f_unit(&f, i)), f_unit(&f, i));
    }
    let a1 = build_aa(&f, f.one()).unwrap();
    assert_eq!(a1.apply(&f, &f_unit(&f, 3)), scaled(&f, 3, f.from_int(2)));
    assert!(matches!(build_aa(&f, f.from_int(2)), Err(CycError::Singular)));

    let gf4 = Field::with_order(4).unwrap();
    let w = gf4.generator();
    let aw = build_aa(&gf4, w).unwrap();
    // (1 + w) = w², whose square root is w
    assert_eq!(aw.apply(&gf4, &f_unit(&gf4, 2)), scaled(&gf4, 2, w));
    assert!(diagonal_is_isomorphism(&gf4, w, w));
    assert!(!diagonal_is_isomorphism(&gf4, w, gf4.mul(w, w)));
}

fn f_unit(f: &Field, i: usize) -> Vec<Fe> {
    scaled(f, i, f.one())
}

fn scaled(f: &Field, i: usize, c: Fe) -> Vec<Fe> {
    let n = f.p() as usize + 1;
    let mut v = vec![f.zero(); n];
    v[i] = c;
    v
}

#[test]
fn claim1_holds_for_every_admissible_parameter() {
    for f in fields() {
        let mut admissible = 0;
        for a in f.elements() {
            if f.add(f.one(), a) == f.zero() {
                assert!(verify_claim1(&f, a).is_err());
                continue;
            }
            admissible += 1;
            assert!(verify_claim1(&f, a).unwrap(), "GF({}) a = {}", f.order(), f.format(a));
            let r = (f.elements()).find(|&r| f.pow(r, f.p() as u64) == f.add(f.one(), a)).unwrap();
            assert!(diagonal_is_isomorphism(&f, a, r));
        }
        assert_eq!(admissible, f.order() - 1);
    }
}

#[test]
fn claim2_certificates() {
    for (q, expected) in [(3, 2), (2, 1)] {
        let f = Field::prime(q).unwrap();
        let cert = verify_claim2(&f).unwrap();
        assert!(cert.verified());
        assert_eq!(cert.functional_on_z, f.from_int(expected));
        assert_eq!(cert.degree_zero_basis.len(), q as usize + 3);
        assert!(cert.z_closed && cert.z_degree_zero);
        assert!(cert.coboundaries.iter().all(|(_, _, v)| *v == f.zero()));
        let (_, dfpsi, _) = cert.coboundaries.iter().find(|(g, _, _)| g == "f⊗psi").unwrap();
        assert!(!dfpsi.is_zero());
        let (_, de1psi, _) = cert.coboundaries.iter().find(|(g, _, _)| g == "e1⊗psi").unwrap();
        assert!(de1psi.is_zero());
        let labels = build_cyc(&f).unwrap().basis().to_vec();
        assert_eq!(cert.to_json(&labels)["verified"], true);
    }
}

#[test]
fn z_is_not_a_coboundary_by_elimination() {
    for q in [2, 3] {
        let f = Field::prime(q).unwrap();
        let l = build_cyc(&f).unwrap();
        let n = l.dim();
        let c1 = CochainSpace::new(n, 1, Module::Adjoint);
        let c2 = CochainSpace::new(n, 2, Module::Adjoint);
        let mut images: Vec<Vec<Fe>> =
            (0..c1.len()).map(|i| c2.to_vector(&differential(&l, &c1.basis_element(&f, i)))).collect();
        let z = verify_claim2(&f).unwrap().z;
        assert!(differential(&l, &z).is_zero());
        let before = common::naive_rank(&f, &images);
        images.push(c2.to_vector(&z));
        assert_eq!(common::naive_rank(&f, &images), before + 1);
    }
}
