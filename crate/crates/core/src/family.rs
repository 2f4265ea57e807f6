//! Multiparameter deformation families and the shipped base algebras.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, JacobiReport, LieAlgebra};
use crate::cochain::{Cochain, CochainError, Module};
use crate::field::{Fe, Field};
use crate::golden::{GoldenError, GoldenStore};
use crate::poly::{Monomial, ParamPoly, PolyError, PolyRing};
use crate::ring::Ring;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Golden(#[from] GoldenError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("family term for {0:?} must be an adjoint 2-cochain on the base algebra")]
    BadTerm(Monomial),
    #[error("malformed family JSON: {0}")]
    Json(String),
}

#[derive(Clone, Debug)]
pub struct DeformationFamily {
    name: String,
    base: LieAlgebra<Field>,
    params: Vec<String>,
    terms: BTreeMap<Monomial, Cochain>,
    poly: LieAlgebra<PolyRing>,
}

impl DeformationFamily {
    pub fn new(
        name: &str,
        base: LieAlgebra<Field>,
        params: Vec<String>,
        terms: BTreeMap<Monomial, Cochain>,
    ) -> Result<Self, FamilyError> {
        let f = base.field().clone();
        let ring = PolyRing::new(f.p(), params.len())?;
        for (m, c) in &terms {
            if m.is_one()
                || c.degree() != 2
                || c.module() != Module::Adjoint
                || c.dim() != base.dim()
                || c.field() != &f
                || m.exponents()[params.len()..].iter().any(|&e| e > 0)
            {
                return Err(FamilyError::BadTerm(*m));
            }
        }
        let n = base.dim();
        let mut entries: BTreeMap<(usize, usize), Vec<ParamPoly>> = BTreeMap::new();
        let zero_row = || vec![ring.zero(); n];
        for (i, j, v) in base.entries() {
            let row = entries.entry((i, j)).or_insert_with(zero_row);
            for (k, c) in v {
                row[*k] = ring.add(&row[*k], &ring.from_int(c.index() as i64));
            }
        }
        for (m, c) in &terms {
            for (w, k, x) in c.terms() {
                let idx = w.indices();
                let row = entries.entry((idx[0], idx[1])).or_insert_with(zero_row);
                row[k] = ring.add(&row[k], &ring.monomial(*m, x.index() as i64));
            }
        }
        let poly = LieAlgebra::new(
            ring.clone(),
            base.basis().to_vec(),
            entries.into_iter().map(|((i, j), row)| {
                (i, j, row.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            }),
        )?;
        let poly = match base.grading() {
            Some(g) => poly.with_grading(g.to_vec())?,
            None => poly,
        };
        Ok(DeformationFamily { name: name.to_string(), base, params, terms, poly })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &LieAlgebra<Field> {
        &self.base
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cochain> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Cochain> {
        self.terms.get(m)
    }

    /// The bracket as an algebra over GF(p)[t].
    pub fn poly_algebra(&self) -> &LieAlgebra<PolyRing> {
        &self.poly
    }

    pub fn check_jacobi(&self) -> JacobiReport<ParamPoly> {
        self.poly.check_jacobi()
    }

    /// [e_i, e_j]_t by basis labels.
    pub fn bracket_by_label(&self, a: &str, b: &str) -> Result<Vec<ParamPoly>, FamilyError> {
        let (i, j) = (self.base.index_of(a)?, self.base.index_of(b)?);
        let mut out = vec![self.poly.ring().zero(); self.base.dim()];
        for (k, c) in self.poly.bracket_basis(i, j) {
            out[*k] = c.clone();
        }
        Ok(out)
    }

    pub fn linear_terms(&self) -> impl Iterator<Item = (&Monomial, &Cochain)> {
        self.terms.iter().filter(|(m, _)| m.degree() == 1)
    }

    /// Concrete algebra at a parameter tuple over any field of the base characteristic.
    pub fn specialize(&self, field: &Field, t: &[Fe]) -> Result<LieAlgebra<Field>, FamilyError> {
        Ok(self.poly.specialize(field, t)?)
    }

    pub fn to_json(&self) -> Value {
        let n = self.params.len();
        json!({
            "name": self.name,
            "params": self.params,
            "terms": self.terms.iter().map(|(m, c)| json!([m.exponents_upto(n), c.to_json()])).collect::<Vec<_>>(),
        })
    }
}

/// The two shipped base algebras, by golden name.
pub fn base_algebra(store: &GoldenStore, name: &str) -> Result<LieAlgebra<Field>, FamilyError> {
    Ok(LieAlgebra::from_json(&store.json(&GoldenStore::algebra_path(name))?)?)
}

/// o(5) over GF(3) in the basis h1, h2, x1..x4, y1..y4.
pub fn build_o5_p3() -> Result<LieAlgebra<Field>, FamilyError> {
    base_algebra(&GoldenStore::embedded()?, "o5-p3")
}

/// The 10-dimensional derived algebra of o(5) over GF(2).
pub fn build_o51_p2() -> Result<LieAlgebra<Field>, FamilyError> {
    base_algebra(&GoldenStore::embedded()?, "o51-p2")
}

pub fn load_cochain(store: &GoldenStore, algebra: &str, name: &str) -> Result<Cochain, FamilyError> {
    let base = base_algebra(store, algebra)?;
    load_cochain_on(store, &base, algebra, name)
}

fn load_cochain_on(
    store: &GoldenStore,
    base: &LieAlgebra<Field>,
    algebra: &str,
    name: &str,
) -> Result<Cochain, FamilyError> {
    let v = store.json(&GoldenStore::cochain_path(algebra, name))?;
    Ok(Cochain::from_json(base.field(), base.dim(), &v)?)
}

/// A family file: `[exponents, cochain name, optional scalar]` entries over a named base.
pub fn load_family(store: &GoldenStore, name: &str) -> Result<DeformationFamily, FamilyError> {
    let v = store.json(&GoldenStore::family_path(name))?;
    let bad = |m: &str| FamilyError::Json(m.to_string());
    let algebra = v["algebra"].as_str().ok_or_else(|| bad("missing algebra"))?;
    let base = base_algebra(store, algebra)?;
    let params: Vec<String> = serde_json::from_value(v["params"].clone()).map_err(|e| bad(&e.to_string()))?;
    let mut terms: BTreeMap<Monomial, Cochain> = BTreeMap::new();
    for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
        let t = t.as_array().filter(|t| t.len() == 2 || t.len() == 3).ok_or_else(|| bad("term"))?;
        let exps: Vec<u16> = serde_json::from_value(t[0].clone()).map_err(|e| bad(&e.to_string()))?;
        if exps.len() != params.len() {
            return Err(bad("exponent vector length"));
        }
        let m = Monomial::from_exponents(&exps)?;
        let cname = t[1].as_str().ok_or_else(|| bad("cochain name"))?;
        let mut c = load_cochain_on(store, &base, algebra, cname)?;
        if let Some(s) = t.get(2) {
            c = c.scale(base.field().from_json(s).map_err(CochainError::from)?);
        }
        let entry = terms.remove(&m);
        let c = match entry {
            Some(prev) => prev.add(&c)?,
            None => c,
        };
        if !c.is_zero() {
            terms.insert(m, c);
        }
    }
    DeformationFamily::new(name, base, params, terms)
}

/// Five-parameter family of o(5) over GF(3).
pub fn family_thm1() -> Result<DeformationFamily, FamilyError> {
    load_family(&GoldenStore::embedded()?, "thm1")
}

/// Four-parameter family of the characteristic-2 algebra.
pub fn family_thm3() -> Result<DeformationFamily, FamilyError> {
    load_family(&GoldenStore::embedded()?, "thm3")
}

/// One-parameter family in s = 1 + ε: [,] − s c0 + s² α0.
pub fn family_prop1() -> Result<DeformationFamily, FamilyError> {
    load_family(&GoldenStore::embedded()?, "prop1")
}

/// Three-parameter family in (t1, t3, t4) realizing L(ε, δ, ρ).
pub fn family_prop2() -> Result<DeformationFamily, FamilyError> {
    load_family(&GoldenStore::embedded()?, "prop2")
}

/// (ε, δ, ρ) for a parameter tuple (t1, t3, t4) of the three-parameter family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContactParams {
    pub epsilon: Fe,
    pub delta: Fe,
    pub rho: Fe,
}

pub fn prop2_parameter_map(field: &Field, t1: Fe, t3: Fe, t4: Fe) -> ContactParams {
    let f = field;
    let two = f.from_int(2);
    let epsilon = f.sub(two, t1);
    let e_e2 = f.mul(epsilon, f.add(epsilon, two));
    let rho = f.mul(e_e2, t3);
    let quad = f.add(f.add(two, f.mul(two, epsilon)), f.mul(epsilon, epsilon));
    let delta = f.mul(f.mul(e_e2, quad), t4);
    ContactParams { epsilon, delta, rho }
}
