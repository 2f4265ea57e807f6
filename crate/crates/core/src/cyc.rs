//! The (p+1)-dimensional algebra with [f, e_i] = e_{i+1 mod p}: a nontrivial 2-cocycle
//! whose global deformation is nonetheless trivial.

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{verify_isomorphism, AlgebraError, LieAlgebra, LinearMap};
use crate::cochain::{differential, Cochain, CochainError, Module, Wedge};
use crate::cohomology::{CoboundarySolver, CochainSpace};
use crate::field::{Fe, Field};
use crate::linalg::{dot, LinearSystemCertificate, Matrix, Solution};

#[derive(Debug, Error)]
pub enum CycError {
    #[error("1 + a = 0 makes the rescaling map singular")]
    Singular,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// Basis e_0..e_{p−1}, f; f sits at index p.
pub fn basis_labels(p: usize) -> Vec<String> {
    (0..p).map(|i| format!("e{i}")).chain(std::iter::once("f".to_string())).collect()
}

/// [f, e_i] = e_{i+1}, except [f, e_{p−1}] = (1+a) e_0.
pub fn deformed_bracket(field: &Field, a: Fe) -> Result<LieAlgebra<Field>, CycError> {
    let p = field.p() as usize;
    let entries = (0..p).map(|i| {
        let c = if i + 1 == p { field.add(field.one(), a) } else { field.one() };
        // [e_i, f] = −[f, e_i]
        (i, p, vec![((i + 1) % p, field.neg(c))])
    });
    Ok(LieAlgebra::new(field.clone(), basis_labels(p), entries)?)
}

pub fn build_cyc(field: &Field) -> Result<LieAlgebra<Field>, CycError> {
    deformed_bracket(field, field.zero())
}

/// Degree modulo p of each basis vector: deg e_i = i, deg f = 1.
pub fn cyc_grading(p: usize) -> Vec<usize> {
    (0..p).chain(std::iter::once(1)).collect()
}

/// A_a f = r f, A_a e_i = r^i e_i with r^p = 1 + a.
pub fn build_aa(field: &Field, a: Fe) -> Result<LinearMap, CycError> {
    let p = field.p() as usize;
    let s = field.add(field.one(), a);
    if s == field.zero() {
        return Err(CycError::Singular);
    }
    let r = field.pth_root(s);
    let rows: Vec<Vec<Fe>> = (0..=p)
        .map(|i| {
            let mut row = vec![field.zero(); p + 1];
            row[i] = if i == p { r } else { field.pow(r, i as u64) };
            row
        })
        .collect();
    Ok(LinearMap::from_images(&rows))
}

/// [A x, A y] = A [x, y]_a on all basis pairs: A_a is an isomorphism from the deformed algebra to the original.
pub fn verify_claim1(field: &Field, a: Fe) -> Result<bool, CycError> {
    let map = build_aa(field, a)?;
    Ok(verify_isomorphism(&map, &deformed_bracket(field, a)?, &build_cyc(field)?))
}

/// Degree of a cochain term modulo p.
fn term_degree(p: usize, w: Wedge, k: usize, module: Module) -> usize {
    let g = cyc_grading(p);
    let base = if module == Module::Adjoint { g[k] as i64 } else { 0 };
    let sub: i64 = w.indices().iter().map(|&i| g[i] as i64).sum();
    (base - sub).rem_euclid(p as i64) as usize
}

#[derive(Clone, Debug)]
pub struct Claim2Certificate {
    pub p: usize,
    pub z: Cochain,
    pub z_closed: bool,
    pub z_degree_zero: bool,
    /// Mechanically computed degree-0 basis of C¹, by labels.
    pub degree_zero_basis: Vec<String>,
    /// The list the argument relies on.
    pub expected_degree_zero_basis: Vec<String>,
    /// (generator label, its coboundary, value of the functional on it)
    pub coboundaries: Vec<(String, Cochain, Fe)>,
    pub functional_on_z: Fe,
    /// Witness over the full C¹ → C² differential.
    pub full_certificate: LinearSystemCertificate,
    pub full_certificate_verified: bool,
    /// The functional itself, checked as a certificate against the full differential.
    pub functional_certificate: LinearSystemCertificate,
    pub functional_certificate_verified: bool,
    /// Independent solve restricted to the degree-0 columns.
    pub degree_zero_certificate: LinearSystemCertificate,
    pub degree_zero_certificate_verified: bool,
}

impl Claim2Certificate {
    pub fn verified(&self) -> bool {
        let f = self.z.field();
        self.z_closed
            && self.z_degree_zero
            && self.degree_zero_basis == self.expected_degree_zero_basis
            && self.coboundaries.iter().all(|(_, _, v)| *v == f.zero())
            && self.functional_on_z == f.neg(f.one())
            && !self.full_certificate.is_feasible()
            && self.full_certificate_verified
            && self.functional_certificate_verified
            && !self.degree_zero_certificate.is_feasible()
            && self.degree_zero_certificate_verified
    }

    pub fn to_json(&self, labels: &[String]) -> Value {
        let f = self.z.field();
        json!({
            "p": self.p,
            "z": self.z.format(labels),
            "z_closed": self.z_closed,
            "z_degree_zero": self.z_degree_zero,
            "degree_zero_basis": self.degree_zero_basis,
            "expected_degree_zero_basis": self.expected_degree_zero_basis,
            "coboundaries": self.coboundaries.iter().map(|(g, d, v)| json!({
                "generator": g, "coboundary": d.format(labels), "functional": f.to_json(*v),
            })).collect::<Vec<_>>(),
            "functional_on_z": f.to_json(self.functional_on_z),
            "full_certificate": self.full_certificate.to_json(f),
            "full_certificate_verified": self.full_certificate_verified,
            "functional_certificate_verified": self.functional_certificate_verified,
            "degree_zero_certificate": self.degree_zero_certificate.to_json(f),
            "degree_zero_certificate_verified": self.degree_zero_certificate_verified,
            "verified": self.verified(),
        })
    }
}

fn one_cochain_label(labels: &[String], w: Wedge, k: usize) -> String {
    let dual = |i: usize| if i + 1 == labels.len() { "psi".to_string() } else { format!("phi{i}") };
    format!("{}⊗{}", labels[k], w.indices().iter().map(|&i| dual(i)).collect::<Vec<_>>().join("∧"))
}

/// z = e_0 ⊗ ψ∧φ_{p−1} is a cocycle that is not a coboundary.
pub fn verify_claim2(field: &Field) -> Result<Claim2Certificate, CycError> {
    let f = field;
    let p = f.p() as usize;
    let g = build_cyc(f)?;
    let labels = g.basis().to_vec();
    let psi = p;
    let phi = |i: usize| i;
    let z = Cochain::from_terms(f, p + 1, 2, Module::Adjoint, [(0, vec![psi, phi(p - 1)], f.one())])?;
    let z_closed = differential(&g, &z).is_zero();
    let z_degree_zero = z.terms().all(|(w, k, _)| term_degree(p, w, k, Module::Adjoint) == 0);

    let c1 = CochainSpace::new(p + 1, 1, Module::Adjoint);
    let c2 = CochainSpace::new(p + 1, 2, Module::Adjoint);
    let degree_zero: Vec<usize> = (0..c1.len())
        .filter(|&i| {
            let b = c1.basis_element(f, i);
            let homogeneous = b.terms().all(|(w, k, _)| term_degree(p, w, k, Module::Adjoint) == 0);
            homogeneous
        })
        .collect();
    let label_of = |i: usize| {
        let b = c1.basis_element(f, i);
        let (w, k, _) = b.terms().next().expect("basis element");
        let label = one_cochain_label(&labels, w, k);
        label
    };
    let mut degree_zero_basis: Vec<String> = degree_zero.iter().map(|&i| label_of(i)).collect();
    degree_zero_basis.sort();
    let mut expected: Vec<String> = (0..p)
        .map(|i| format!("e{i}⊗phi{i}"))
        .chain(["e1⊗psi".to_string(), "f⊗phi1".to_string(), "f⊗psi".to_string()])
        .collect();
    expected.sort();

    // L(e_i ⊗ φ_j∧ψ) = δ_{i, j+1}, zero on every other basis element
    let mut functional = vec![f.zero(); c2.len()];
    for j in 0..p {
        let w = Wedge((1 << phi(j)) | (1 << psi));
        functional[c2.coordinate(w, (j + 1) % p)] = f.one();
    }
    let apply_l = |c: &Cochain| dot(f, &functional, &c2.to_vector(c));

    let generators: Vec<(String, Cochain)> = (0..p)
        .map(|i| (format!("e{i}⊗phi{i}"), vec![(i, vec![phi(i)], f.one())]))
        .chain([
            ("f⊗phi1".to_string(), vec![(p, vec![phi(1 % p)], f.one())]),
            ("f⊗psi".to_string(), vec![(p, vec![psi], f.one())]),
            ("e1⊗psi".to_string(), vec![(1 % p, vec![psi], f.one())]),
        ])
        .map(|(name, terms)| Ok((name, Cochain::from_terms(f, p + 1, 1, Module::Adjoint, terms)?)))
        .collect::<Result<_, CochainError>>()?;
    let coboundaries: Vec<(String, Cochain, Fe)> = generators
        .into_iter()
        .map(|(name, c)| {
            let d = differential(&g, &c);
            let v = apply_l(&d);
            (name, d, v)
        })
        .collect();
    let functional_on_z = apply_l(&z);

    let solver = CoboundarySolver::new(&g, 1, Module::Adjoint);
    let target = c2.to_vector(&z);
    let full_certificate = solver.certificate(&z).expect("degree-2 adjoint cochain");
    let full_certificate_verified = full_certificate.verify(f, solver.matrix(), &target);
    let functional_certificate = LinearSystemCertificate {
        rows: solver.matrix().rows(),
        cols: solver.matrix().cols(),
        rank: solver.rank(),
        outcome: Solution::Infeasible { witness: functional.clone(), pairing: functional_on_z },
    };
    let functional_certificate_verified = functional_certificate.verify(f, solver.matrix(), &target);

    let restricted = Matrix::from_columns(
        c2.len(),
        &degree_zero.iter().map(|&j| solver.matrix().column(j)).collect::<Vec<_>>(),
    );
    let degree_zero_certificate = LinearSystemCertificate::solve(f, &restricted, &target);
    let degree_zero_certificate_verified = degree_zero_certificate.verify(f, &restricted, &target);

    Ok(Claim2Certificate {
        p,
        z,
        z_closed,
        z_degree_zero,
        degree_zero_basis,
        expected_degree_zero_basis: expected,
        coboundaries,
        functional_on_z,
        full_certificate,
        full_certificate_verified,
        functional_certificate,
        functional_certificate_verified,
        degree_zero_certificate,
        degree_zero_certificate_verified,
    })
}
