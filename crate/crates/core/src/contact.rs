//! Divided powers in x, y, t, the contact bracket, and the algebras L(ε, δ, ρ).

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, LieAlgebra, LinearMap};
use crate::field::{Fe, Field};
use crate::linalg::{Echelon, Matrix, Solution};

#[derive(Debug, Error)]
pub enum ContactError {
    #[error("epsilon must be nonzero")]
    ZeroEpsilon,
    #[error("the contact table is only defined in characteristic 3, got {0}")]
    Characteristic(u32),
    #[error("product exceeds the divided-power bounds at exponent {0:?}")]
    Overflow([u32; 3]),
    #[error("elements live in different divided-power algebras")]
    Mismatch,
    #[error("bracket of {0} and {1} leaves the span of the table")]
    NotClosed(String, String),
    #[error("malformed divided-power JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Exponent = [u32; 3];

const X: usize = 0;
const Y: usize = 1;
const T: usize = 2;

/// Truncated divided-power polynomial: basis x^(i) y^(j) t^(k) with i < p^N1 and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedPowerElement {
    field: Field,
    shear: [u32; 3],
    coeffs: BTreeMap<Exponent, Fe>,
}

impl DividedPowerElement {
    pub fn zero(field: &Field, shear: [u32; 3]) -> Self {
        DividedPowerElement { field: field.clone(), shear, coeffs: BTreeMap::new() }
    }

    pub fn monomial(field: &Field, shear: [u32; 3], e: Exponent, c: Fe) -> Result<Self, ContactError> {
        let mut out = Self::zero(field, shear);
        if !out.in_bounds(e) {
            return Err(ContactError::Overflow(e));
        }
        out.add_term(e, c);
        Ok(out)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shear(&self) -> [u32; 3] {
        self.shear
    }

    pub fn bounds(&self) -> [u32; 3] {
        self.shear.map(|n| self.field.p().pow(n))
    }

    fn in_bounds(&self, e: Exponent) -> bool {
        e.iter().zip(self.bounds()).all(|(&a, b)| a < b)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Fe)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Fe {
        self.coeffs.get(e).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, e: Exponent, c: Fe) {
        let f = &self.field;
        if c == f.zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert(f.zero());
        *slot = f.add(*slot, c);
        if *slot == f.zero() {
            self.coeffs.remove(&e);
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), ContactError> {
        if self.field != other.field || self.shear != other.shear {
            return Err(ContactError::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ContactError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, *c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: Fe) -> Self {
        let mut out = Self::zero(&self.field, self.shear);
        for (e, c) in &self.coeffs {
            out.add_term(*e, self.field.mul(s, *c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ContactError> {
        self.add(&other.scale(self.field.neg(self.field.one())))
    }

    /// w^(i) · w^(j) = binom(i+j, i) w^(i+j) per generator.
    pub fn dp_multiply(&self, other: &Self) -> Result<Self, ContactError> {
        self.compatible(other)?;
        let f = &self.field;
        let mut out = Self::zero(f, self.shear);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                let binom = (0..3).fold(f.one(), |acc, i| f.mul(acc, f.binom(e[i] as u64, a[i] as u64)));
                let c = f.mul(f.mul(*ca, *cb), binom);
                if c == f.zero() {
                    continue;
                }
                if !out.in_bounds(e) {
                    return Err(ContactError::Overflow(e));
                }
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.field, self.shear);
        for (e, c) in &self.coeffs {
            if e[var] > 0 {
                let mut d = *e;
                d[var] -= 1;
                out.add_term(d, *c);
            }
        }
        out
    }

    fn generator(&self, var: usize) -> Self {
        let mut e = [0; 3];
        e[var] = 1;
        let mut out = Self::zero(&self.field, self.shear);
        out.add_term(e, self.field.one());
        out
    }

    /// Δf = 2f − x ∂_x f − y ∂_y f
    pub fn delta(&self) -> Result<Self, ContactError> {
        let two = self.field.from_int(2);
        let xdx = self.generator(X).dp_multiply(&self.partial(X))?;
        let ydy = self.generator(Y).dp_multiply(&self.partial(Y))?;
        self.scale(two).sub(&xdx)?.sub(&ydy)
    }

    /// Degree with deg x = deg y = 1, deg t = 2, shifted by −2, if homogeneous.
    pub fn lie_degree(&self) -> Option<i32> {
        let mut degs = self.coeffs.keys().map(|e| e[X] as i32 + e[Y] as i32 + 2 * e[T] as i32 - 2);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "N": self.shear,
            "p": self.field.p(),
            "coeffs": self.coeffs.iter().map(|(e, c)| json!([e[0], e[1], e[2], self.field.to_json(*c)])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: &Field, v: &Value) -> Result<Self, ContactError> {
        let bad = |m: &str| ContactError::Json(m.to_string());
        let shear: [u32; 3] = serde_json::from_value(v["N"].clone()).map_err(|e| bad(&e.to_string()))?;
        if v["p"].as_u64() != Some(field.p() as u64) {
            return Err(bad("characteristic does not match the field"));
        }
        let mut out = Self::zero(field, shear);
        for t in v["coeffs"].as_array().ok_or_else(|| bad("missing coeffs"))? {
            let t = t.as_array().filter(|t| t.len() == 4).ok_or_else(|| bad("coefficient entry"))?;
            let mut e = [0u32; 3];
            for (slot, x) in e.iter_mut().zip(t) {
                *slot = x.as_u64().ok_or_else(|| bad("exponent"))? as u32;
            }
            if !out.in_bounds(e) {
                return Err(ContactError::Overflow(e));
            }
            let c = field.from_json(&t[3]).map_err(|e| bad(&e.to_string()))?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = ["x", "y", "t"]
                    .iter()
                    .zip(e)
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^({k})") })
                    .collect();
                let coeff = self.field.format(*c);
                match (vars.is_empty(), coeff.as_str()) {
                    (true, _) => coeff,
                    (false, "1") => vars.join(""),
                    _ => format!("{coeff} {}", vars.join("")),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// [f,g] = Δf·∂_t g − ∂_t f·Δg + ∂_x f·∂_y g − ∂_y f·∂_x g
pub fn contact_bracket(f: &DividedPowerElement, g: &DividedPowerElement) -> Result<DividedPowerElement, ContactError> {
    f.compatible(g)?;
    let a = f.delta()?.dp_multiply(&g.partial(T))?;
    let b = f.partial(T).dp_multiply(&g.delta()?)?;
    let c = f.partial(X).dp_multiply(&g.partial(Y))?;
    let d = f.partial(Y).dp_multiply(&g.partial(X))?;
    a.sub(&b)?.add(&c)?.sub(&d)
}

pub const SHEAR: [u32; 3] = [1, 1, 1];

/// Basis labels of L(ε, δ, ρ), ordered like h1, h2, x1..x4, y1..y4.
pub const E_BASIS: [&str; 10] = ["Hb", "Ha", "Eb", "Ea", "Eab", "E2ab", "E-b", "E-a", "E-ab", "E-2ab"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HAlphaVariant {
    /// 2εt + xy
    #[default]
    Table,
    /// t + xy
    Alternative,
}

/// Generating functions of the ten basis vectors; monomials read as divided powers.
pub fn contact_table(field: &Field, eps: Fe, variant: HAlphaVariant) -> Vec<DividedPowerElement> {
    let f = field;
    let term = |e: Exponent, c: Fe| {
        let mut el = DividedPowerElement::zero(f, SHEAR);
        el.add_term(e, c);
        el
    };
    let sum = |parts: &[(Exponent, Fe)]| {
        let mut el = DividedPowerElement::zero(f, SHEAR);
        for (e, c) in parts {
            el.add_term(*e, *c);
        }
        el
    };
    let one = f.one();
    let minus = f.neg(one);
    let two = f.from_int(2);
    let one_eps = f.add(one, eps);
    let h_alpha = match variant {
        HAlphaVariant::Table => sum(&[([0, 0, 1], f.mul(two, eps)), ([1, 1, 0], one)]),
        HAlphaVariant::Alternative => sum(&[([0, 0, 1], one), ([1, 1, 0], one)]),
    };
    vec![
        term([1, 1, 0], minus),                                                   // Hb = −xy
        h_alpha,                                                                  // Ha
        term([2, 0, 0], one),                                                     // Eb = x²
        sum(&[([1, 2, 0], f.neg(one_eps)), ([0, 1, 1], eps)]),                    // Ea
        sum(&[([2, 1, 0], one_eps), ([1, 0, 1], eps)]),                           // Eab
        sum(&[([2, 2, 0], f.mul(eps, one_eps)), ([0, 0, 2], f.mul(eps, eps))]),   // E2ab
        term([0, 2, 0], minus),                                                   // E-b = −y²
        term([1, 0, 0], one),                                                     // E-a = x
        term([0, 1, 0], one),                                                     // E-ab = y
        term([0, 0, 0], one),                                                     // E-2ab = 1
    ]
}

/// Stated degree of each table entry.
pub const TABLE_DEGREES: [i32; 10] = [0, 0, 0, 1, 1, 2, 0, -1, -1, -2];

/// One of the six parameter-dependent brackets: [a, b] = coeff * c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamBracket {
    pub left: usize,
    pub right: usize,
    pub target: usize,
    pub coeff: Fe,
    /// Contact-bracket value at this pair, in the table basis.
    pub contact_value: Vec<Fe>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MergeRule {
    /// The printed value replaces the contact bracket.
    #[default]
    Replace,
    /// The printed value is added to the contact bracket.
    Add,
}

#[derive(Clone, Debug)]
pub struct ContactBuild {
    pub algebra: LieAlgebra<Field>,
    pub table: Vec<DividedPowerElement>,
    pub parameter_brackets: Vec<ParamBracket>,
    pub rule: MergeRule,
}

fn idx(label: &str) -> usize {
    E_BASIS.iter().position(|b| *b == label).expect("known label")
}

/// The six parameter brackets with their printed coefficients.
pub fn parameter_brackets(field: &Field, eps: Fe, delta: Fe, rho: Fe) -> Result<Vec<(usize, usize, usize, Fe)>, ContactError> {
    let f = field;
    let inv_eps = f.inv(eps).ok_or(ContactError::ZeroEpsilon)?;
    Ok(vec![
        (idx("E-2ab"), idx("E-ab"), idx("Eb"), delta),
        (idx("E-2ab"), idx("E-a"), idx("E-b"), rho),
        (idx("E-2ab"), idx("E-b"), idx("Eab"), f.neg(delta)),
        (idx("E-2ab"), idx("Eb"), idx("Ea"), rho),
        (idx("E-ab"), idx("E-b"), idx("E2ab"), f.neg(f.mul(delta, inv_eps))),
        (idx("E-a"), idx("Eb"), idx("E2ab"), f.neg(f.mul(rho, inv_eps))),
    ])
}

/// Coordinates of a divided-power element in the span of `table`.
fn table_coordinates(echelon: &Echelon, g: &DividedPowerElement) -> Option<Vec<Fe>> {
    match echelon.solve(&dense(g)) {
        Solution::Solved(x) => Some(x),
        Solution::Infeasible { .. } => None,
    }
}

fn dense(g: &DividedPowerElement) -> Vec<Fe> {
    let b = g.bounds();
    let mut v = vec![g.field.zero(); (b[0] * b[1] * b[2]) as usize];
    for (e, c) in &g.coeffs {
        v[((e[0] * b[1] + e[1]) * b[2] + e[2]) as usize] = *c;
    }
    v
}

pub fn build_l_with(
    field: &Field,
    eps: Fe,
    delta: Fe,
    rho: Fe,
    variant: HAlphaVariant,
    rule: MergeRule,
) -> Result<ContactBuild, ContactError> {
    let f = field;
    if f.p() != 3 {
        return Err(ContactError::Characteristic(f.p()));
    }
    if eps == f.zero() {
        return Err(ContactError::ZeroEpsilon);
    }
    let table = contact_table(f, eps, variant);
    let n = table.len();
    let columns: Vec<Vec<Fe>> = table.iter().map(dense).collect();
    let echelon = Echelon::new(f, &Matrix::from_columns(columns[0].len(), &columns));
    let mut brackets: BTreeMap<(usize, usize), Vec<Fe>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let g = contact_bracket(&table[i], &table[j])?;
            let coords = table_coordinates(&echelon, &g)
                .ok_or_else(|| ContactError::NotClosed(E_BASIS[i].into(), E_BASIS[j].into()))?;
            brackets.insert((i, j), coords);
        }
    }
    let mut parameter = Vec::new();
    for (a, b, target, coeff) in parameter_brackets(f, eps, delta, rho)? {
        let (i, j, s) = if a < b { (a, b, coeff) } else { (b, a, f.neg(coeff)) };
        let slot = brackets.get_mut(&(i, j)).expect("all pairs computed");
        let contact_value = if a < b { slot.clone() } else { slot.iter().map(|&c| f.neg(c)).collect() };
        if rule == MergeRule::Replace {
            slot.iter_mut().for_each(|c| *c = f.zero());
        }
        slot[target] = f.add(slot[target], s);
        parameter.push(ParamBracket { left: a, right: b, target, coeff, contact_value });
    }
    let algebra = LieAlgebra::new(
        f.clone(),
        E_BASIS.iter().map(|s| s.to_string()).collect(),
        brackets.into_iter().map(|((i, j), v)| {
            (i, j, v.into_iter().enumerate().filter(|(_, c)| *c != f.zero()).collect())
        }),
    )?;
    Ok(ContactBuild { algebra, table, parameter_brackets: parameter, rule })
}

/// L(ε, δ, ρ) with the table's H_α and the parameter brackets replacing the contact values.
pub fn build_l(field: &Field, eps: Fe, delta: Fe, rho: Fe) -> Result<LieAlgebra<Field>, ContactError> {
    Ok(build_l_with(field, eps, delta, rho, HAlphaVariant::Table, MergeRule::Replace)?.algebra)
}

/// Which Cartan element pairs with which simple root in the relation check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CartanOrder {
    /// Rows of the Cartan matrix indexed (β, α).
    #[default]
    BetaAlpha,
    /// Rows indexed (α, β).
    AlphaBeta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

/// Chevalley relations for the Cartan matrix [[2, −1], [−2, 1−ε]] on L(ε, 0, 0).
pub fn chevalley_relations_check(
    field: &Field,
    eps: Fe,
    variant: HAlphaVariant,
    order: CartanOrder,
) -> Result<Vec<RelationCheck>, ContactError> {
    let f = field;
    let l = build_l_with(f, eps, f.zero(), f.zero(), variant, MergeRule::Replace)?.algebra;
    let (first, second) = match order {
        CartanOrder::BetaAlpha => (("Hb", "Eb", "E-b"), ("Ha", "Ea", "E-a")),
        CartanOrder::AlphaBeta => (("Ha", "Ea", "E-a"), ("Hb", "Eb", "E-b")),
    };
    let two = f.from_int(2);
    let cartan = [
        [two, f.neg(f.one())],
        [f.neg(two), f.sub(f.one(), eps)],
    ];
    let gens = [first, second];
    let mut out = Vec::new();
    for (r, (h, _, _)) in gens.iter().enumerate() {
        for (c, (_, e, _)) in gens.iter().enumerate() {
            let lhs = l.bracket(&l.unit(idx(h)), &l.unit(idx(e)));
            let rhs: Vec<Fe> = l.unit(idx(e)).iter().map(|&x| f.mul(cartan[r][c], x)).collect();
            out.push(RelationCheck {
                relation: format!("[{h}, {e}] = {} {e}", f.format(cartan[r][c])),
                holds: lhs == rhs,
            });
        }
    }
    for (h, e, fe) in gens {
        let lhs = l.bracket(&l.unit(idx(e)), &l.unit(idx(fe)));
        out.push(RelationCheck { relation: format!("[{e}, {fe}] = {h}"), holds: lhs == l.unit(idx(h)) });
    }
    Ok(out)
}

/// h1 ↦ Hb, h2 ↦ Ha − (2−ε) Hb, x_i ↦ E-root, y_i ↦ opposite root.
pub fn correspondence(field: &Field, eps: Fe, with_h2_correction: bool) -> LinearMap {
    let f = field;
    let mut rows: Vec<Vec<Fe>> = (0..10)
        .map(|i| {
            let mut r = vec![f.zero(); 10];
            r[i] = f.one();
            r
        })
        .collect();
    if with_h2_correction {
        rows[1][0] = f.neg(f.sub(f.from_int(2), eps));
    }
    LinearMap::from_images(&rows)
}
