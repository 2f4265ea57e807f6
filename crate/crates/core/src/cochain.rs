//! Chevalley–Eilenberg cochains with adjoint or trivial coefficients.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{densify, LieAlgebra, LinearMap};
use crate::field::{Fe, Field, FieldError};
use crate::linalg::{Echelon, Matrix, Solution};

#[derive(Debug, Error)]
pub enum CochainError {
    #[error("cochain degree mismatch: {0} vs {1}")]
    Degree(usize, usize),
    #[error("cochains live on algebras of different dimension or module")]
    Shape,
    #[error("basis index {0} out of range")]
    BadIndex(usize),
    #[error("malformed cochain JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("map is not invertible")]
    Singular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Module {
    Adjoint,
    Trivial,
}

impl Module {
    pub fn name(self) -> &'static str {
        match self {
            Module::Adjoint => "adjoint",
            Module::Trivial => "trivial",
        }
    }
}

/// A wedge of dual basis covectors, indices increasing, stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Wedge(pub u32);

impl Wedge {
    /// Sorts the indices; returns the wedge and whether the reordering is odd, or `None` on a repeat.
    pub fn from_indices(idx: &[usize]) -> Option<(Wedge, bool)> {
        let mut mask = 0u32;
        let mut odd = false;
        for &i in idx {
            let bit = 1u32 << i;
            if mask & bit != 0 {
                return None;
            }
            // each already-placed larger index is one inversion
            odd ^= (mask >> i).count_ones() % 2 == 1;
            mask |= bit;
        }
        Some((Wedge(mask), odd))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// self ∧ other, with the sign of merging as a parity flag.
    pub fn wedge(self, other: Wedge) -> Option<(Wedge, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let odd = other
            .indices()
            .iter()
            .map(|&j| (self.0 >> j).count_ones())
            .sum::<u32>()
            % 2
            == 1;
        Some((Wedge(self.0 | other.0), odd))
    }

    /// All wedges of length q on `dim` generators, in increasing mask order.
    pub fn all(dim: usize, q: usize) -> Vec<Wedge> {
        (0u32..1 << dim).filter(|m| m.count_ones() as usize == q).map(Wedge).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    field: Field,
    dim: usize,
    q: usize,
    module: Module,
    terms: BTreeMap<(Wedge, usize), Fe>,
}

fn sign(field: &Field, odd: bool, c: Fe) -> Fe {
    if odd { field.neg(c) } else { c }
}

impl Cochain {
    pub fn zero(field: &Field, dim: usize, q: usize, module: Module) -> Self {
        Cochain { field: field.clone(), dim, q, module, terms: BTreeMap::new() }
    }

    /// `value ⊗ 1` in degree 0.
    pub fn from_vector(field: &Field, module: Module, v: &[Fe]) -> Self {
        let mut c = Cochain::zero(field, v.len(), 0, module);
        for (k, &x) in v.iter().enumerate() {
            c.add_term(k, Wedge(0), x);
        }
        c
    }

    /// Builds from printed terms `coeff * e_k ⊗ e_{i1}* ∧ ... ∧ e_{iq}*` in any index order.
    pub fn from_terms(
        field: &Field,
        dim: usize,
        q: usize,
        module: Module,
        terms: impl IntoIterator<Item = (usize, Vec<usize>, Fe)>,
    ) -> Result<Self, CochainError> {
        let mut c = Cochain::zero(field, dim, q, module);
        for (k, idx, coeff) in terms {
            if idx.len() != q {
                return Err(CochainError::Degree(idx.len(), q));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(CochainError::BadIndex(bad));
            }
            if k >= c.module_dim() {
                return Err(CochainError::BadIndex(k));
            }
            if let Some((w, odd)) = Wedge::from_indices(&idx) {
                c.add_term(k, w, sign(field, odd, coeff));
            }
        }
        Ok(c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn module(&self) -> Module {
        self.module
    }

    pub fn module_dim(&self) -> usize {
        match self.module {
            Module::Adjoint => self.dim,
            Module::Trivial => 1,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Wedge, usize, Fe)> + '_ {
        self.terms.iter().map(|(&(w, k), &c)| (w, k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: usize, w: Wedge) -> Fe {
        self.terms.get(&(w, k)).copied().unwrap_or_default()
    }

    pub fn add_term(&mut self, k: usize, w: Wedge, c: Fe) {
        if c == self.field.zero() {
            return;
        }
        let f = &self.field;
        let e = self.terms.entry((w, k)).or_insert(f.zero());
        *e = f.add(*e, c);
        if *e == f.zero() {
            self.terms.remove(&(w, k));
        }
    }

    fn same_shape(&self, other: &Cochain) -> Result<(), CochainError> {
        if self.q != other.q {
            return Err(CochainError::Degree(self.q, other.q));
        }
        if self.dim != other.dim || self.module != other.module || self.field != other.field {
            return Err(CochainError::Shape);
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (w, k, c) in other.terms() {
            out.add_term(k, w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cochain {
        self.scale(self.field.neg(self.field.one()))
    }

    pub fn scale(&self, s: Fe) -> Cochain {
        let mut out = Cochain::zero(&self.field, self.dim, self.q, self.module);
        for (w, k, c) in self.terms() {
            out.add_term(k, w, self.field.mul(s, c));
        }
        out
    }

    /// Module vector c(e_{i1}, ..., e_{iq}) for basis arguments in any order.
    pub fn eval_basis(&self, idx: &[usize]) -> Vec<Fe> {
        let mut out = vec![self.field.zero(); self.module_dim()];
        let Some((w, odd)) = Wedge::from_indices(idx) else {
            return out;
        };
        for (&(_, k), &c) in self.terms.range((w, 0)..(w, usize::MAX)) {
            out[k] = sign(&self.field, odd, c);
        }
        out
    }

    /// Module vector on arbitrary arguments (multilinear, alternating).
    pub fn eval(&self, args: &[Vec<Fe>]) -> Vec<Fe> {
        let f = &self.field;
        assert_eq!(args.len(), self.q);
        let mut out = vec![f.zero(); self.module_dim()];
        let mut by_wedge: BTreeMap<Wedge, Fe> = BTreeMap::new();
        for (w, _, _) in self.terms() {
            by_wedge.entry(w).or_insert_with(|| minor_det(f, args, &w.indices()));
        }
        for (w, k, c) in self.terms() {
            let d = by_wedge[&w];
            out[k] = f.add(out[k], f.mul(c, d));
        }
        out
    }

    /// Homogeneous degree under a grading of the basis (module part counts positively), if any.
    pub fn homogeneous_degree(&self, grading: &[i32]) -> Option<i32> {
        let mut degs = self.terms().map(|(w, k, _)| {
            let base = match self.module {
                Module::Adjoint => grading[k],
                Module::Trivial => 0,
            };
            base - w.indices().iter().map(|&i| grading[i]).sum::<i32>()
        });
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Transport along an automorphism: (φ·c)(u, ...) = φ(c(φ⁻¹u, ...)).
    pub fn transport(&self, map: &LinearMap) -> Result<Cochain, CochainError> {
        let f = &self.field;
        let n = self.dim;
        let inv = invert(f, &map.images).ok_or(CochainError::Singular)?;
        let mut out = Cochain::zero(f, n, self.q, self.module);
        for w in Wedge::all(n, self.q) {
            let args: Vec<Vec<Fe>> = w.indices().iter().map(|&i| inv.row(i).to_vec()).collect();
            let mut v = self.eval(&args);
            if self.module == Module::Adjoint {
                v = map.images.vec_mul(f, &v);
            }
            for (k, x) in v.into_iter().enumerate() {
                out.add_term(k, w, x);
            }
        }
        Ok(out)
    }

    /// Same cochain over an extension field of the same characteristic.
    pub fn extend_scalars(&self, field: &Field) -> Option<Cochain> {
        let mut out = Cochain::zero(field, self.dim, self.q, self.module);
        for (w, k, c) in self.terms() {
            out.add_term(k, w, field.embed_prime(&self.field, c)?);
        }
        Some(out)
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .map(|(w, k, c)| {
                let coeff = self.field.format(c);
                let lead = match self.module {
                    Module::Adjoint => names[k].clone(),
                    Module::Trivial => String::new(),
                };
                let duals: Vec<String> = w.indices().iter().map(|&i| format!("{}*", names[i])).collect();
                let wedge = duals.join("∧");
                let body = match (lead.is_empty(), wedge.is_empty()) {
                    (true, _) => wedge,
                    (false, true) => lead,
                    (false, false) => format!("{lead}⊗({wedge})"),
                };
                if coeff == "1" { body } else { format!("{coeff} {body}") }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(w, k, c)| json!([k, w.indices(), self.field.to_json(c)]))
            .collect();
        json!({ "q": self.q, "module": self.module.name(), "terms": terms })
    }

    pub fn from_json(field: &Field, dim: usize, v: &Value) -> Result<Cochain, CochainError> {
        let bad = |m: &str| CochainError::Json(m.to_string());
        let q = v["q"].as_u64().ok_or_else(|| bad("missing q"))? as usize;
        let module = match v["module"].as_str().unwrap_or("adjoint") {
            "adjoint" => Module::Adjoint,
            "trivial" => Module::Trivial,
            other => return Err(bad(other)),
        };
        let mut terms = Vec::new();
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("term"))?;
            let k = t[0].as_u64().ok_or_else(|| bad("term index"))? as usize;
            let idx = t[1]
                .as_array()
                .ok_or_else(|| bad("dual indices"))?
                .iter()
                .map(|i| i.as_u64().map(|i| i as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad("dual index"))?;
            terms.push((k, idx, field.from_json(&t[2])?));
        }
        Cochain::from_terms(field, dim, q, module, terms)
    }
}

/// det of the q×q minor of the argument vectors on the given coordinates.
fn minor_det(f: &Field, args: &[Vec<Fe>], cols: &[usize]) -> Fe {
    match cols.len() {
        0 => f.one(),
        1 => args[0][cols[0]],
        _ => {
            // Laplace expansion along the first argument
            let mut acc = f.zero();
            for (pos, &c) in cols.iter().enumerate() {
                let a = args[0][c];
                if a == f.zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, &c)| c).collect();
                let sub = minor_det(f, &args[1..], &rest);
                let term = f.mul(a, sub);
                acc = if pos % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
            }
            acc
        }
    }
}

pub fn invert(f: &Field, m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    let e = Echelon::new(f, m);
    if e.rank() != n {
        return None;
    }
    let cols: Vec<Vec<Fe>> = (0..n)
        .map(|j| {
            let mut unit = vec![f.zero(); n];
            unit[j] = f.one();
            match e.solve(&unit) {
                Solution::Solved(x) => x,
                Solution::Infeasible { .. } => unreachable!("full rank"),
            }
        })
        .collect();
    Some(Matrix::from_columns(n, &cols))
}

/// The differential; over characteristic 2 it is assembled by the Leibniz rule.
pub fn differential(l: &LieAlgebra<Field>, c: &Cochain) -> Cochain {
    if l.field().p() == 2 {
        differential_leibniz(l, c)
    } else {
        differential_explicit(l, c)
    }
}

pub fn is_cocycle(l: &LieAlgebra<Field>, c: &Cochain) -> bool {
    differential(l, c).is_zero()
}

/// dc(x_0..x_q) = Σ_{a<b} (−1)^{a+b+1} c([x_a,x_b], ..) + Σ_a (−1)^{a+1} [x_a, c(..)].
pub fn differential_explicit(l: &LieAlgebra<Field>, c: &Cochain) -> Cochain {
    let f = l.field();
    let n = l.dim();
    assert_eq!(c.dim, n, "cochain and algebra dimensions differ");
    let mut out = Cochain::zero(f, n, c.q + 1, c.module);
    for w in Wedge::all(n, c.q + 1) {
        let xs = w.indices();
        let mut val = vec![f.zero(); c.module_dim()];
        for a in 0..xs.len() {
            for b in a + 1..xs.len() {
                let rest: Vec<usize> = xs.iter().enumerate().filter(|&(i, _)| i != a && i != b).map(|(_, &x)| x).collect();
                let odd = (a + b + 1) % 2 == 1;
                for (m, coef) in l.bracket_basis(xs[a], xs[b]) {
                    let mut args = vec![*m];
                    args.extend(&rest);
                    let v = c.eval_basis(&args);
                    for (slot, x) in val.iter_mut().zip(v) {
                        *slot = f.add(*slot, sign(f, odd, f.mul(*coef, x)));
                    }
                }
            }
        }
        if c.module == Module::Adjoint {
            for a in 0..xs.len() {
                let rest: Vec<usize> = xs.iter().enumerate().filter(|&(i, _)| i != a).map(|(_, &x)| x).collect();
                let v = c.eval_basis(&rest);
                let odd = (a + 1) % 2 == 1;
                for (m, x) in v.iter().enumerate() {
                    if *x == f.zero() {
                        continue;
                    }
                    for (k, coef) in l.bracket_basis(xs[a], m) {
                        val[*k] = f.add(val[*k], sign(f, odd, f.mul(*x, *coef)));
                    }
                }
            }
        }
        for (k, x) in val.into_iter().enumerate() {
            out.add_term(k, w, x);
        }
    }
    out
}

/// d of a single wedge with trivial coefficients, via d(g_k*) = Σ_{i<j} c_ij^k g_i*∧g_j* and the graded Leibniz rule.
pub fn d_wedge(l: &LieAlgebra<Field>, w: Wedge) -> BTreeMap<Wedge, Fe> {
    let f = l.field();
    let mut out: BTreeMap<Wedge, Fe> = BTreeMap::new();
    let idx = w.indices();
    for (pos, &g) in idx.iter().enumerate() {
        // d(ω1 ∧ g* ∧ ω2) picks up (−1)^{pos} for the factors before g*
        let before = Wedge(idx[..pos].iter().fold(0, |m, &i| m | 1 << i));
        let after = Wedge(idx[pos + 1..].iter().fold(0, |m, &i| m | 1 << i));
        for (i, j, v) in l.entries() {
            let Some(c) = v.iter().find(|(k, _)| *k == g).map(|(_, c)| *c) else {
                continue;
            };
            let dg = Wedge((1 << i) | (1 << j));
            let Some((w1, odd1)) = before.wedge(dg) else { continue };
            let Some((w2, odd2)) = w1.wedge(after) else { continue };
            let odd = odd1 ^ odd2 ^ (pos % 2 == 1);
            let e = out.entry(w2).or_insert(f.zero());
            *e = f.add(*e, sign(f, odd, c));
        }
    }
    out.retain(|_, c| *c != f.zero());
    out
}

/// d(a⊗ω) = a⊗dω + da∧ω with da = Σ_i [a, g_i]⊗g_i*.
pub fn differential_leibniz(l: &LieAlgebra<Field>, c: &Cochain) -> Cochain {
    let f = l.field();
    let n = l.dim();
    let mut out = Cochain::zero(f, n, c.q + 1, c.module);
    for (w, k, coef) in c.terms() {
        for (dw, x) in d_wedge(l, w) {
            out.add_term(k, dw, f.mul(coef, x));
        }
        if c.module == Module::Adjoint {
            for i in 0..n {
                let Some((w2, odd)) = Wedge(1 << i).wedge(w) else { continue };
                for (m, b) in l.bracket_basis(k, i) {
                    out.add_term(*m, w2, sign(f, odd, f.mul(coef, *b)));
                }
            }
        }
    }
    out
}

/// Vector of a basis element in the adjoint module.
pub fn basis_vector(l: &LieAlgebra<Field>, v: &[(usize, Fe)]) -> Vec<Fe> {
    densify(l.field(), l.dim(), v)
}
