//! Massey brackets of 2-cochains and the degree-by-degree Maurer–Cartan integrator.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::LieAlgebra;
use crate::cochain::{differential, Cochain, Module, Wedge};
use crate::cohomology::{CoboundarySolver, CohomologyError};
use crate::field::{Fe, Field};
use crate::linalg::LinearSystemCertificate;
use crate::poly::{Monomial, MAX_PARAMS};

#[derive(Debug, Error)]
pub enum MasseyError {
    #[error("Massey brackets take adjoint 2-cochains, got degree {0}")]
    Degree(usize),
    #[error("cochain {0} is not a cocycle")]
    NotCocycle(usize),
    #[error("at most {MAX_PARAMS} cocycles are supported, got {0}")]
    TooMany(usize),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

fn check_two_cochain(l: &LieAlgebra<Field>, c: &Cochain) -> Result<(), MasseyError> {
    if c.degree() != 2 || c.module() != Module::Adjoint || c.dim() != l.dim() {
        return Err(MasseyError::Degree(c.degree()));
    }
    Ok(())
}

/// Dense table of a 2-cochain on basis pairs.
fn pair_table(c: &Cochain) -> Vec<Vec<Fe>> {
    let n = c.dim();
    let f = c.field();
    let mut t = vec![vec![f.zero(); n]; n * n];
    for (w, k, x) in c.terms() {
        let idx = w.indices();
        let (i, j) = (idx[0], idx[1]);
        t[i * n + j][k] = x;
        t[j * n + i][k] = f.neg(x);
    }
    t
}

/// (a ∘ b)(x, y, z) = a(b(x,y), z) + a(b(y,z), x) + a(b(z,x), y).
pub fn compose(a: &Cochain, b: &Cochain) -> Cochain {
    let n = a.dim();
    let f = a.field();
    let (ta, tb) = (pair_table(a), pair_table(b));
    let mut out = Cochain::zero(f, n, 3, Module::Adjoint);
    if a.is_zero() || b.is_zero() {
        return out;
    }
    for w in Wedge::all(n, 3) {
        let idx = w.indices();
        let (x, y, z) = (idx[0], idx[1], idx[2]);
        let mut val = vec![f.zero(); n];
        for (u, v, last) in [(x, y, z), (y, z, x), (z, x, y)] {
            for (l, &c) in tb[u * n + v].iter().enumerate() {
                if c == f.zero() {
                    continue;
                }
                for (k, &d) in ta[l * n + last].iter().enumerate() {
                    if d != f.zero() {
                        val[k] = f.add(val[k], f.mul(c, d));
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

/// [[a, b]]; in characteristic 2 the square [[a, a]] is the single cyclic sum.
pub fn massey(l: &LieAlgebra<Field>, a: &Cochain, b: &Cochain) -> Result<Cochain, MasseyError> {
    check_two_cochain(l, a)?;
    check_two_cochain(l, b)?;
    if l.field().p() == 2 && a == b {
        return Ok(compose(a, a));
    }
    Ok(compose(a, b).add(&compose(b, a)).expect("same shape"))
}

/// Coefficient of `monomial` in the Jacobiator of [,] + Σ t^m c^m, over terms of positive degree.
pub fn mc_obstruction(l: &LieAlgebra<Field>, terms: &BTreeMap<Monomial, Cochain>, monomial: &Monomial) -> Cochain {
    let mut out = Cochain::zero(l.field(), l.dim(), 3, Module::Adjoint);
    for (m, cm) in terms {
        if m.is_one() {
            continue;
        }
        let Some(rest) = monomial.div(m) else { continue };
        if rest.is_one() {
            continue;
        }
        if let Some(cn) = terms.get(&rest) {
            out = out.add(&compose(cm, cn)).expect("same shape");
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ObstructionStep {
    pub monomial: Monomial,
    pub obstruction: Cochain,
    pub closed: bool,
    pub resolution: Resolution,
}

#[derive(Clone, Debug)]
pub enum Resolution {
    /// New family term solving dα = −obstruction.
    Term(Cochain),
    /// Beyond the degree bound: a nonzero obstruction that is left unsolved.
    Residual,
    Infeasible(LinearSystemCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum McStatus {
    /// Every obstruction up to twice the degree bound vanished: the truncated family is exact.
    Terminated { degree: u32 },
    /// Solvable up to the bound, but nonzero obstructions remain above it.
    NotTerminated { residual_monomials: Vec<Monomial> },
    Obstructed { monomial: Monomial },
}

#[derive(Clone, Debug)]
pub struct McOutcome {
    pub nparams: usize,
    pub terms: BTreeMap<Monomial, Cochain>,
    pub steps: Vec<ObstructionStep>,
    pub status: McStatus,
}

/// Greedy prolongation: monomials in graded-lex order, free variables zero.
pub fn mc_integrate(l: &LieAlgebra<Field>, cocycles: &[Cochain], max_degree: u32) -> Result<McOutcome, MasseyError> {
    let nparams = cocycles.len();
    if nparams > MAX_PARAMS {
        return Err(MasseyError::TooMany(nparams));
    }
    for (i, c) in cocycles.iter().enumerate() {
        check_two_cochain(l, c)?;
        if !differential(l, c).is_zero() {
            return Err(MasseyError::NotCocycle(i));
        }
    }
    let mut terms: BTreeMap<Monomial, Cochain> =
        cocycles.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())).collect();
    let solver = CoboundarySolver::new(l, 2, Module::Adjoint);
    let mut steps = Vec::new();
    let mut residual = Vec::new();
    for degree in 2..=2 * max_degree {
        for monomial in Monomial::of_degree(nparams, degree) {
            let obstruction = mc_obstruction(l, &terms, &monomial);
            if obstruction.is_zero() {
                continue;
            }
            let closed = differential(l, &obstruction).is_zero();
            if degree > max_degree {
                residual.push(monomial);
                steps.push(ObstructionStep { monomial, obstruction, closed, resolution: Resolution::Residual });
                continue;
            }
            match solver.solve(&obstruction.neg())? {
                Ok(alpha) => {
                    if !alpha.is_zero() {
                        terms.insert(monomial, alpha.clone());
                    }
                    steps.push(ObstructionStep { monomial, obstruction, closed, resolution: Resolution::Term(alpha) });
                }
                Err(cert) => {
                    steps.push(ObstructionStep {
                        monomial,
                        obstruction,
                        closed,
                        resolution: Resolution::Infeasible(cert),
                    });
                    return Ok(McOutcome { nparams, terms, steps, status: McStatus::Obstructed { monomial } });
                }
            }
        }
    }
    let status = if residual.is_empty() {
        McStatus::Terminated { degree: terms.keys().map(Monomial::degree).max().unwrap_or(0) }
    } else {
        McStatus::NotTerminated { residual_monomials: residual }
    };
    Ok(McOutcome { nparams, terms, steps, status })
}

impl ObstructionStep {
    pub fn to_json(&self, nparams: usize) -> Value {
        let f = self.obstruction.field();
        let (resolved, term, certificate) = match &self.resolution {
            Resolution::Term(c) => (true, c.to_json(), Value::Null),
            Resolution::Residual => (false, Value::Null, Value::Null),
            Resolution::Infeasible(cert) => (false, Value::Null, cert.to_json(f)),
        };
        json!({
            "monomial": self.monomial.exponents_upto(nparams),
            "obstruction": self.obstruction.to_json(),
            "closed": self.closed,
            "resolved": resolved,
            "term": term,
            "certificate": certificate,
        })
    }
}

impl McOutcome {
    pub fn to_json(&self) -> Value {
        let status = match &self.status {
            McStatus::Terminated { degree } => json!({ "kind": "terminated", "degree": degree }),
            McStatus::NotTerminated { residual_monomials } => json!({
                "kind": "not-terminated",
                "residual_monomials": residual_monomials.iter().map(|m| m.exponents_upto(self.nparams)).collect::<Vec<_>>(),
            }),
            McStatus::Obstructed { monomial } => {
                json!({ "kind": "obstructed", "monomial": monomial.exponents_upto(self.nparams) })
            }
        };
        json!({
            "status": status,
            "terms": self.terms.iter().map(|(m, c)| json!([m.exponents_upto(self.nparams), c.to_json()])).collect::<Vec<_>>(),
            "steps": self.steps.iter().map(|s| s.to_json(self.nparams)).collect::<Vec<_>>(),
        })
    }
}
