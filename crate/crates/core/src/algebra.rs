//! Lie algebras given by structure constants.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Fe, Field, FieldError};
use crate::linalg::{Echelon, Matrix};
use crate::poly::{PolyError, PolyRing};
use crate::ring::{vec_add_assign, vec_is_zero, vec_zero, Ring};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("bracket entry ({0}, {1}) must have i < j < dim")]
    BadEntry(usize, usize),
    #[error("basis index {0} out of range")]
    BadIndex(usize),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("grading/weights length does not match the dimension")]
    BadLength,
    #[error("malformed algebra JSON: {0}")]
    Json(String),
    #[error("algebra JSON declares characteristic {declared} but field {field:?}")]
    FieldMismatch { declared: u32, field: Field },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("internal consistency: {0}")]
    Inconsistent(String),
}

pub type Sparse<E> = Vec<(usize, E)>;

#[derive(Clone, Debug)]
pub struct LieAlgebra<R: Ring> {
    ring: R,
    basis: Vec<String>,
    // table[i * n + j] = [e_i, e_j], both orders stored
    table: Vec<Sparse<R::Elem>>,
    grading: Option<Vec<i32>>,
    weights: Option<Vec<[u32; 2]>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation<E> {
    pub triple: [usize; 3],
    pub residual: Vec<E>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport<E> {
    pub triples_checked: usize,
    pub violations: Vec<JacobiViolation<E>>,
}

impl<E> JacobiReport<E> {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<R: Ring> LieAlgebra<R> {
    /// Builds from the entries `[e_i, e_j] = sum c_k e_k` for i < j; the rest follows by antisymmetry.
    pub fn new(
        ring: R,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, Sparse<R::Elem>)>,
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        let mut table = vec![Vec::new(); n * n];
        for (i, j, v) in entries {
            if !(i < j && j < n) {
                return Err(AlgebraError::BadEntry(i, j));
            }
            let mut dense = vec_zero(&ring, n);
            for (k, c) in v {
                if k >= n {
                    return Err(AlgebraError::BadIndex(k));
                }
                ring.add_assign(&mut dense[k], &c);
            }
            let mut sum = densify(&ring, n, &table[i * n + j]);
            vec_add_assign(&ring, &mut sum, &dense);
            table[i * n + j] = sparsify(&ring, &sum);
            table[j * n + i] = sparsify(&ring, &sum.iter().map(|c| ring.neg(c)).collect::<Vec<_>>());
        }
        Ok(LieAlgebra { ring, basis, table, grading: None, weights: None })
    }

    pub fn with_grading(mut self, grading: Vec<i32>) -> Result<Self, AlgebraError> {
        if grading.len() != self.dim() {
            return Err(AlgebraError::BadLength);
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn with_weights(mut self, weights: Vec<[u32; 2]>) -> Result<Self, AlgebraError> {
        if weights.len() != self.dim() {
            return Err(AlgebraError::BadLength);
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn grading(&self) -> Option<&[i32]> {
        self.grading.as_deref()
    }

    pub fn weights(&self) -> Option<&[[u32; 2]]> {
        self.weights.as_deref()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, AlgebraError> {
        self.basis
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    }

    pub fn unit(&self, i: usize) -> Vec<R::Elem> {
        let mut v = vec_zero(&self.ring, self.dim());
        v[i] = self.ring.one();
        v
    }

    /// [e_i, e_j] as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, R::Elem)] {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, u: &[R::Elem], v: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let n = self.dim();
        let mut out = vec_zero(r, n);
        for (i, a) in u.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if r.is_zero(b) {
                    continue;
                }
                let ab = r.mul(a, b);
                for (k, c) in &self.table[i * n + j] {
                    r.add_mul_assign(&mut out[*k], &ab, c);
                }
            }
        }
        out
    }

    /// [v, e_j] with v sparse; used by the ad-matrix helpers.
    pub fn bracket_with_basis(&self, v: &[R::Elem], j: usize) -> Vec<R::Elem> {
        let r = &self.ring;
        let n = self.dim();
        let mut out = vec_zero(r, n);
        for (i, a) in v.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (k, c) in &self.table[i * n + j] {
                r.add_mul_assign(&mut out[*k], a, c);
            }
        }
        out
    }

    /// Exhaustive cyclic-sum check over all basis triples i < j < k.
    pub fn check_jacobi(&self) -> JacobiReport<R::Elem> {
        let n = self.dim();
        let mut violations = Vec::new();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    count += 1;
                    let residual = self.jacobiator(i, j, k);
                    if !vec_is_zero(&self.ring, &residual) {
                        violations.push(JacobiViolation { triple: [i, j, k], residual });
                    }
                }
            }
        }
        JacobiReport { triples_checked: count, violations }
    }

    /// [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<R::Elem> {
        let n = self.dim();
        let mut acc = vec_zero(&self.ring, n);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (l, coef) in &self.table[a * n + b] {
                for (m, d) in &self.table[l * n + c] {
                    self.ring.add_mul_assign(&mut acc[*m], coef, d);
                }
            }
        }
        acc
    }

    /// Diagonal vanishes and the stored table is antisymmetric, so [v,v] = 0 for every v.
    pub fn check_alternating(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| self.table[i * n + i].is_empty())
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    let a = densify(&self.ring, n, &self.table[i * n + j]);
                    let b = densify(&self.ring, n, &self.table[j * n + i]);
                    a.iter().zip(&b).all(|(x, y)| self.ring.is_zero(&self.ring.add(x, y)))
                })
            })
    }

    /// Every bracket of basis vectors lands in the summed degree.
    pub fn check_grading(&self) -> Option<bool> {
        let g = self.grading.as_ref()?;
        let n = self.dim();
        Some((0..n).all(|i| {
            (0..n).all(|j| self.table[i * n + j].iter().all(|(k, _)| g[*k] == g[i] + g[j]))
        }))
    }

    pub fn map_coefficients<S: Ring>(
        &self,
        target: S,
        mut f: impl FnMut(&R::Elem) -> Result<S::Elem, AlgebraError>,
    ) -> Result<LieAlgebra<S>, AlgebraError> {
        let n = self.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.table[i * n + j]
                    .iter()
                    .map(|(k, c)| Ok((*k, f(c)?)))
                    .collect::<Result<Vec<_>, AlgebraError>>()?;
                entries.push((i, j, v));
            }
        }
        let mut out = LieAlgebra::new(target, self.basis.clone(), entries)?;
        out.grading = self.grading.clone();
        out.weights = self.weights.clone();
        Ok(out)
    }

    /// Entries for i < j with nonzero bracket.
    pub fn entries(&self) -> Vec<(usize, usize, &[(usize, R::Elem)])> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.table[i * n + j];
                if !v.is_empty() {
                    out.push((i, j, v.as_slice()));
                }
            }
        }
        out
    }

    pub fn format_vector(&self, v: &[R::Elem]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(k, c)| {
                let s = self.ring.format(c);
                if s == "1" {
                    self.basis[k].clone()
                } else if s.contains(' ') || s.contains('+') {
                    format!("({s}) {}", self.basis[k])
                } else {
                    format!("{s} {}", self.basis[k])
                }
            })
            .collect();
        if parts.is_empty() { "0".into() } else { parts.join(" + ") }
    }
}

pub fn densify<R: Ring>(ring: &R, n: usize, s: &[(usize, R::Elem)]) -> Vec<R::Elem> {
    let mut v = vec_zero(ring, n);
    for (k, c) in s {
        ring.add_assign(&mut v[*k], c);
    }
    v
}

pub fn sparsify<R: Ring>(ring: &R, v: &[R::Elem]) -> Sparse<R::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !ring.is_zero(c))
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// Isomorphism-invariant summary of an algebra over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Fingerprint {
    pub dimension: usize,
    pub derived_series: Vec<usize>,
    pub center_dim: usize,
    pub killing_rank: usize,
    /// Sorted nilpotency indices of ad on basis vectors; `None` for non-nilpotent.
    pub ad_nilpotency: Vec<Option<usize>>,
    pub sandwich_count: Option<u64>,
}

const SANDWICH_LIMIT: u64 = 1 << 20;

impl LieAlgebra<Field> {
    pub fn field(&self) -> &Field {
        &self.ring
    }

    /// Matrix of ad v, column j = [v, e_j].
    pub fn ad_matrix(&self, v: &[Fe]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Fe>> = (0..n).map(|j| self.bracket_with_basis(v, j)).collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn span_rank(&self, vectors: &[Vec<Fe>]) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        Matrix::from_rows(vectors).rank(&self.ring)
    }

    /// Row-reduced basis of the span.
    fn span_basis(&self, vectors: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let e = Echelon::new(&self.ring, &Matrix::from_rows(vectors));
        (0..e.rank()).map(|r| e.reduced().row(r).to_vec()).collect()
    }

    /// Span of [a, b] for a in `a`, b in `b`.
    pub fn bracket_span(&self, a: &[Vec<Fe>], b: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
        let mut out = Vec::new();
        for u in a {
            for v in b {
                let w = self.bracket(u, v);
                if !vec_is_zero(&self.ring, &w) {
                    out.push(w);
                }
            }
        }
        self.span_basis(&out)
    }

    pub fn derived_series(&self) -> Vec<usize> {
        let mut cur: Vec<Vec<Fe>> = (0..self.dim()).map(|i| self.unit(i)).collect();
        let mut dims = vec![cur.len()];
        loop {
            let next = self.bracket_span(&cur, &cur);
            if next.len() == cur.len() || next.is_empty() {
                if next.len() != cur.len() {
                    dims.push(0);
                }
                return dims;
            }
            dims.push(next.len());
            cur = next;
        }
    }

    /// Ideal generated by `v`: repeated bracketing with the basis, accumulating rank.
    pub fn ideal_closure(&self, v: &[Fe]) -> Vec<Vec<Fe>> {
        let basis: Vec<Vec<Fe>> = (0..self.dim()).map(|i| self.unit(i)).collect();
        let mut span = self.span_basis(&[v.to_vec()]);
        loop {
            let mut gens = span.clone();
            gens.extend(
                span.iter()
                    .flat_map(|u| basis.iter().map(move |b| (u, b)))
                    .map(|(u, b)| self.bracket(u, b)),
            );
            let next = self.span_basis(&gens);
            if next.len() == span.len() {
                return span;
            }
            span = next;
        }
    }

    pub fn is_simple(&self) -> bool {
        let n = self.dim();
        let basis: Vec<Vec<Fe>> = (0..n).map(|i| self.unit(i)).collect();
        n > 1
            && self.bracket_span(&basis, &basis).len() == n
            && (0..n).all(|i| self.ideal_closure(&self.unit(i)).len() == n)
    }

    pub fn center_dim(&self) -> usize {
        let n = self.dim();
        // column i of M stacks [e_i, e_j] over all j
        let cols: Vec<Vec<Fe>> = (0..n)
            .map(|i| (0..n).flat_map(|j| densify(&self.ring, n, self.bracket_basis(i, j))).collect())
            .collect();
        n - Matrix::from_columns(n * n, &cols).rank(&self.ring)
    }

    pub fn killing_form(&self) -> Matrix {
        let f = &self.ring;
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_matrix(&self.unit(i))).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let prod = ads[i].mul(f, &ads[j]);
                let tr = (0..n).fold(f.zero(), |acc, d| f.add(acc, prod.get(d, d)));
                k.set(i, j, tr);
            }
        }
        k
    }

    pub fn nilpotency_index(&self, m: &Matrix) -> Option<usize> {
        let n = m.rows();
        let mut power = m.clone();
        for k in 1..=n + 1 {
            if power.is_zero() {
                return Some(k);
            }
            power = power.mul(&self.ring, m);
        }
        None
    }

    fn constants_in_prime_field(&self) -> bool {
        self.table.iter().flatten().all(|(_, c)| self.ring.in_prime_field(*c))
    }

    /// Nonzero v over the prime field with (ad v)^2 = 0, when enumeration is cheap.
    pub fn sandwich_count(&self) -> Option<u64> {
        let f = &self.ring;
        let n = self.dim() as u32;
        let p = f.p() as u64;
        if !self.constants_in_prime_field() || p.checked_pow(n).map_or(true, |t| t > SANDWICH_LIMIT) {
            return None;
        }
        let ads: Vec<Matrix> = (0..self.dim()).map(|i| self.ad_matrix(&self.unit(i))).collect();
        let dim = self.dim();
        let mut count = 0;
        let mut v = vec![f.zero(); dim];
        let total = p.pow(n);
        let mut ad = Matrix::zeros(dim, dim);
        for _ in 1..total {
            // next vector in base-p counting order
            let mut pos = 0;
            loop {
                let next = f.add(v[pos], f.one());
                v[pos] = next;
                if next != f.zero() {
                    break;
                }
                pos += 1;
            }
            for r in 0..dim {
                for c in 0..dim {
                    let mut s = f.zero();
                    for (i, &vi) in v.iter().enumerate() {
                        if vi != f.zero() {
                            s = f.add(s, f.mul(vi, ads[i].get(r, c)));
                        }
                    }
                    ad.set(r, c, s);
                }
            }
            if ad.mul(f, &ad).is_zero() {
                count += 1;
            }
        }
        Some(count)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let n = self.dim();
        let mut ad_nilpotency: Vec<Option<usize>> =
            (0..n).map(|i| self.nilpotency_index(&self.ad_matrix(&self.unit(i)))).collect();
        ad_nilpotency.sort();
        Fingerprint {
            dimension: n,
            derived_series: self.derived_series(),
            center_dim: self.center_dim(),
            killing_rank: self.killing_form().rank(&self.ring),
            ad_nilpotency,
            sandwich_count: self.sandwich_count(),
        }
    }

    /// Simultaneous eigenvalues of ad h1, ad h2 (basis positions 0 and 1) on each basis vector.
    pub fn torus_weights(&self) -> Option<Vec<[Fe; 2]>> {
        let n = self.dim();
        (0..n)
            .map(|b| {
                let mut w = [Fe::default(); 2];
                for (h, slot) in w.iter_mut().enumerate() {
                    let v = densify(&self.ring, n, self.bracket_basis(h, b));
                    if v.iter().enumerate().any(|(k, c)| k != b && *c != self.ring.zero()) {
                        return None;
                    }
                    *slot = v[b];
                }
                Some(w)
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let f = &self.ring;
        let sc: Vec<Value> = self
            .entries()
            .into_iter()
            .map(|(i, j, v)| {
                json!([i, j, v.iter().map(|(k, c)| json!([k, f.to_json(*c)])).collect::<Vec<_>>()])
            })
            .collect();
        let mut obj = json!({
            "p": f.p(),
            "field": { "p": f.p(), "k": f.degree() },
            "basis": self.basis,
            "sc": sc,
        });
        if let Some(g) = &self.grading {
            obj["grading"] = json!(g);
        }
        if let Some(w) = &self.weights {
            obj["weights"] = json!(w);
        }
        obj
    }

    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let bad = |m: &str| AlgebraError::Json(m.to_string());
        let p = v["p"].as_u64().ok_or_else(|| bad("missing p"))? as u32;
        let fp = v["field"]["p"].as_u64().unwrap_or(p as u64) as u32;
        let fk = v["field"]["k"].as_u64().unwrap_or(1) as u32;
        let field = Field::new(fp, fk)?;
        if field.p() != p {
            return Err(AlgebraError::FieldMismatch { declared: p, field });
        }
        let basis: Vec<String> = v["basis"]
            .as_array()
            .ok_or_else(|| bad("missing basis"))?
            .iter()
            .map(|b| b.as_str().map(String::from).ok_or_else(|| bad("basis label")))
            .collect::<Result<_, _>>()?;
        let mut entries = Vec::new();
        for e in v["sc"].as_array().ok_or_else(|| bad("missing sc"))? {
            let e = e.as_array().filter(|e| e.len() == 3).ok_or_else(|| bad("sc entry"))?;
            let i = e[0].as_u64().ok_or_else(|| bad("sc index"))? as usize;
            let j = e[1].as_u64().ok_or_else(|| bad("sc index"))? as usize;
            let mut vec = Vec::new();
            for t in e[2].as_array().ok_or_else(|| bad("sc terms"))? {
                let t = t.as_array().filter(|t| t.len() == 2).ok_or_else(|| bad("sc term"))?;
                let k = t[0].as_u64().ok_or_else(|| bad("sc term index"))? as usize;
                vec.push((k, field.from_json(&t[1])?));
            }
            entries.push((i, j, vec));
        }
        let mut alg = LieAlgebra::new(field, basis, entries)?;
        if let Some(g) = v.get("grading").filter(|g| !g.is_null()) {
            let g: Vec<i32> = serde_json::from_value(g.clone()).map_err(|e| bad(&e.to_string()))?;
            alg = alg.with_grading(g)?;
        }
        if let Some(w) = v.get("weights").filter(|w| !w.is_null()) {
            let w: Vec<[u32; 2]> = serde_json::from_value(w.clone()).map_err(|e| bad(&e.to_string()))?;
            alg = alg.with_weights(w)?;
        }
        Ok(alg)
    }
}

impl LieAlgebra<PolyRing> {
    /// Concrete algebra at a parameter tuple.
    pub fn specialize(&self, field: &Field, t: &[Fe]) -> Result<LieAlgebra<Field>, AlgebraError> {
        let ring = self.ring.clone();
        self.map_coefficients(field.clone(), |c| Ok(ring.specialize(c, field, t)?))
    }
}

/// A linear map given by the images of basis vectors (row i = image of e_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub images: Matrix,
}

impl LinearMap {
    pub fn identity(field: &Field, n: usize) -> Self {
        LinearMap { images: Matrix::identity(field, n) }
    }

    pub fn from_images(images: &[Vec<Fe>]) -> Self {
        LinearMap { images: Matrix::from_rows(images) }
    }

    pub fn apply(&self, field: &Field, v: &[Fe]) -> Vec<Fe> {
        self.images.vec_mul(field, v)
    }

    pub fn compose(&self, field: &Field, then: &LinearMap) -> LinearMap {
        LinearMap { images: self.images.mul(field, &then.images) }
    }

    pub fn is_invertible(&self, field: &Field) -> bool {
        self.images.rows() == self.images.cols() && self.images.rank(field) == self.images.rows()
    }
}

/// True iff `map` is invertible and map([a,b]_A) = [map a, map b]_B on all basis pairs.
pub fn verify_isomorphism(map: &LinearMap, a: &LieAlgebra<Field>, b: &LieAlgebra<Field>) -> bool {
    let f = a.field();
    if map.images.rows() != a.dim() || map.images.cols() != b.dim() || !map.is_invertible(f) {
        return false;
    }
    let n = a.dim();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let lhs = map.apply(f, &densify(f, n, a.bracket_basis(i, j)));
            let rhs = b.bracket(map.images.row(i), map.images.row(j));
            lhs == rhs
        })
    })
}

/// x_i <-> y_i, h_i -> -h_i on an algebra with labels h1,h2,x1..x4,y1..y4; checked to be an automorphism.
pub fn involution_sigma(l: &LieAlgebra<Field>) -> Result<LinearMap, AlgebraError> {
    let f = l.field();
    let n = l.dim();
    let mut rows = vec![vec![f.zero(); n]; n];
    for (i, label) in l.basis().iter().enumerate() {
        let (kind, idx) = label.split_at(1);
        let (target, coeff) = match kind {
            "h" => (label.clone(), f.neg(f.one())),
            "x" => (format!("y{idx}"), f.one()),
            "y" => (format!("x{idx}"), f.one()),
            _ => return Err(AlgebraError::UnknownLabel(label.clone())),
        };
        rows[i][l.index_of(&target)?] = coeff;
    }
    let sigma = LinearMap::from_images(&rows);
    if !verify_isomorphism(&sigma, l, l) {
        return Err(AlgebraError::Inconsistent("sigma is not an automorphism".into()));
    }
    Ok(sigma)
}

/// Counts of basis labels by name, for diagnostics.
pub fn label_index(basis: &[String]) -> BTreeMap<String, usize> {
    basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect()
}
