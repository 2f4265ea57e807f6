//! Sparse polynomials over GF(p) in the deformation parameters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::ring::Ring;

pub const MAX_PARAMS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("expected {expected} parameter values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("at most {MAX_PARAMS} parameters are supported, got {0}")]
    TooManyParams(usize),
    #[error("field of characteristic {field} cannot evaluate a polynomial over GF({poly})")]
    Characteristic { field: u32, poly: u32 },
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Exponent vector of a parameter monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; MAX_PARAMS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_PARAMS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u16]) -> Result<Self, PolyError> {
        if exps.len() > MAX_PARAMS {
            return Err(PolyError::TooManyParams(exps.len()));
        }
        let mut e = [0; MAX_PARAMS];
        e[..exps.len()].copy_from_slice(exps);
        Ok(Monomial(e))
    }

    pub fn exponents(&self) -> &[u16; MAX_PARAMS] {
        &self.0
    }

    pub fn exponents_upto(&self, n: usize) -> Vec<u16> {
        self.0[..n].to_vec()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(e))
    }

    /// Graded lexicographic comparison with t1 < t2 < ... .
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }

    /// All monomials in `nvars` variables of the given total degree, in grlex order.
    pub fn of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, pos: usize, left: u32, cur: &mut [u16; MAX_PARAMS], out: &mut Vec<Monomial>) {
            if pos + 1 == nvars {
                cur[pos] = left as u16;
                out.push(Monomial(*cur));
                cur[pos] = 0;
                return;
            }
            for e in 0..=left {
                cur[pos] = e as u16;
                rec(nvars, pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(nvars, 0, degree, &mut [0; MAX_PARAMS], &mut out);
        out.sort_by(|a, b| a.grlex_cmp(b));
        out
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let n = names.get(i).cloned().unwrap_or_else(|| format!("t{}", i + 1));
                if e == 1 { n } else { format!("{n}^{e}") }
            })
            .collect();
        if parts.is_empty() { "1".into() } else { parts.join(" ") }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grlex_cmp(other)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, u32>,
}

impl ParamPoly {
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &u32)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// GF(p)[t_1..t_n].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    p: u32,
    nvars: usize,
}

impl PolyRing {
    pub fn new(p: u32, nvars: usize) -> Result<Self, PolyError> {
        if nvars > MAX_PARAMS {
            return Err(PolyError::TooManyParams(nvars));
        }
        Ok(PolyRing { p, nvars })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn monomial(&self, m: Monomial, c: i64) -> ParamPoly {
        self.term(m, c.rem_euclid(self.p as i64) as u32)
    }

    fn term(&self, m: Monomial, c: u32) -> ParamPoly {
        let mut terms = BTreeMap::new();
        if c % self.p != 0 {
            terms.insert(m, c % self.p);
        }
        ParamPoly { terms }
    }

    pub fn var(&self, i: usize) -> ParamPoly {
        self.term(Monomial::var(i), 1)
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, i64)>) -> ParamPoly {
        let mut out = ParamPoly::default();
        for (m, c) in terms {
            let t = self.monomial(m, c);
            out = Ring::add(self, &out, &t);
        }
        out
    }

    /// Evaluation at a tuple over any field of the same characteristic.
    pub fn specialize(&self, f: &ParamPoly, field: &Field, t: &[Fe]) -> Result<Fe, PolyError> {
        if t.len() != self.nvars {
            return Err(PolyError::Arity { expected: self.nvars, got: t.len() });
        }
        if field.p() != self.p {
            return Err(PolyError::Characteristic { field: field.p(), poly: self.p });
        }
        let mut acc = field.zero();
        for (m, &c) in &f.terms {
            let mut v = field.from_int(c as i64);
            for (ti, &e) in t.iter().zip(m.exponents()) {
                if e > 0 {
                    v = field.mul(v, field.pow(*ti, e as u64));
                }
            }
            acc = field.add(acc, v);
        }
        Ok(acc)
    }

    pub fn to_json(&self, f: &ParamPoly) -> Value {
        Value::Array(
            f.terms
                .iter()
                .map(|(m, c)| Value::Array(vec![Value::from(m.exponents_upto(self.nvars)), Value::from(*c)]))
                .collect(),
        )
    }

    pub fn from_json(&self, v: &Value) -> Result<ParamPoly, PolyError> {
        let bad = || PolyError::Json(v.to_string());
        let arr = v.as_array().ok_or_else(bad)?;
        let mut terms = Vec::new();
        for t in arr {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let exps = pair[0]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|e| e.as_u64().map(|e| e as u16))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
            if exps.len() != self.nvars {
                return Err(bad());
            }
            let c = pair[1].as_i64().ok_or_else(bad)?;
            terms.push((Monomial::from_exponents(&exps)?, c));
        }
        Ok(self.from_terms(terms))
    }
}

impl Ring for PolyRing {
    type Elem = ParamPoly;

    fn zero(&self) -> ParamPoly {
        ParamPoly::default()
    }

    fn one(&self) -> ParamPoly {
        self.term(Monomial::one(), 1)
    }

    fn from_int(&self, n: i64) -> ParamPoly {
        self.monomial(Monomial::one(), n)
    }

    fn add(&self, a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            let e = out.terms.entry(*m).or_insert(0);
            *e = (*e + c) % self.p;
            if *e == 0 {
                out.terms.remove(m);
            }
        }
        out
    }

    fn neg(&self, a: &ParamPoly) -> ParamPoly {
        ParamPoly { terms: a.terms.iter().map(|(m, c)| (*m, self.p - c)).collect() }
    }

    fn mul(&self, a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
        let mut terms: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let e = terms.entry(ma.mul(mb)).or_insert(0);
                *e = (*e + ca * cb) % self.p;
            }
        }
        terms.retain(|_, c| *c != 0);
        ParamPoly { terms }
    }

    fn is_zero(&self, a: &ParamPoly) -> bool {
        a.terms.is_empty()
    }

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn format(&self, a: &ParamPoly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("t{i}")).collect();
        a.terms
            .iter()
            .map(|(m, c)| match (m.is_one(), c) {
                (true, c) => c.to_string(),
                (false, 1) => m.format(&names),
                (false, c) => format!("{c} {}", m.format(&names)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
