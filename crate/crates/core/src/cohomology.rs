//! Cochain spaces as coordinate vectors, cohomology dimensions and coboundary solving.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::LieAlgebra;
use crate::cochain::{differential, Cochain, Module, Wedge};
use crate::field::{Fe, Field};
use crate::linalg::{Echelon, LinearSystemCertificate, Matrix, Solution};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("input is not a cocycle")]
    NotCocycle,
    #[error("expected a cochain of degree {expected}, got {got}")]
    Degree { expected: usize, got: usize },
    #[error("cochain shape does not match the algebra")]
    Shape,
}

/// Coordinates on C^q: wedges in increasing mask order, module index inner.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    dim: usize,
    q: usize,
    module: Module,
    wedges: Vec<Wedge>,
    position: HashMap<Wedge, usize>,
}

impl CochainSpace {
    pub fn new(dim: usize, q: usize, module: Module) -> Self {
        let wedges = Wedge::all(dim, q);
        let position = wedges.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        CochainSpace { dim, q, module, wedges, position }
    }

    pub fn module_dim(&self) -> usize {
        match self.module {
            Module::Adjoint => self.dim,
            Module::Trivial => 1,
        }
    }

    pub fn len(&self) -> usize {
        self.wedges.len() * self.module_dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coordinate(&self, w: Wedge, k: usize) -> usize {
        self.position[&w] * self.module_dim() + k
    }

    pub fn basis_element(&self, field: &Field, idx: usize) -> Cochain {
        let m = self.module_dim();
        let mut c = Cochain::zero(field, self.dim, self.q, self.module);
        c.add_term(idx % m, self.wedges[idx / m], field.one());
        c
    }

    pub fn to_vector(&self, c: &Cochain) -> Vec<Fe> {
        let mut v = vec![c.field().zero(); self.len()];
        for (w, k, x) in c.terms() {
            v[self.coordinate(w, k)] = x;
        }
        v
    }

    pub fn from_vector(&self, field: &Field, v: &[Fe]) -> Cochain {
        let m = self.module_dim();
        let mut c = Cochain::zero(field, self.dim, self.q, self.module);
        for (i, &x) in v.iter().enumerate() {
            c.add_term(i % m, self.wedges[i / m], x);
        }
        c
    }
}

/// Matrix of d: C^q → C^{q+1}, one column per basis cochain.
pub fn differential_matrix(l: &LieAlgebra<Field>, q: usize, module: Module) -> Matrix {
    let f = l.field();
    let src = CochainSpace::new(l.dim(), q, module);
    let dst = CochainSpace::new(l.dim(), q + 1, module);
    let cols: Vec<Vec<Fe>> = (0..src.len())
        .map(|i| dst.to_vector(&differential(l, &src.basis_element(f, i))))
        .collect();
    Matrix::from_columns(dst.len(), &cols)
}

fn rank_of_d(l: &LieAlgebra<Field>, q: usize, module: Module) -> usize {
    let dst = CochainSpace::new(l.dim(), q + 1, module);
    if dst.is_empty() {
        return 0;
    }
    differential_matrix(l, q, module).rank(l.field())
}

/// dim H^q = dim ker d_q − rank d_{q−1}.
pub fn h_dim(l: &LieAlgebra<Field>, q: usize, module: Module) -> usize {
    let cq = CochainSpace::new(l.dim(), q, module).len();
    let below = if q == 0 { 0 } else { rank_of_d(l, q - 1, module) };
    cq - rank_of_d(l, q, module) - below
}

/// Solves dα = w for w of degree q+1, reusing one elimination of d_q.
pub struct CoboundarySolver<'a> {
    algebra: &'a LieAlgebra<Field>,
    source: CochainSpace,
    target: CochainSpace,
    matrix: Matrix,
    echelon: Echelon,
}

impl<'a> CoboundarySolver<'a> {
    /// Solver for coboundaries of degree `q + 1`.
    pub fn new(algebra: &'a LieAlgebra<Field>, q: usize, module: Module) -> Self {
        let matrix = differential_matrix(algebra, q, module);
        let echelon = Echelon::new(algebra.field(), &matrix);
        CoboundarySolver {
            algebra,
            source: CochainSpace::new(algebra.dim(), q, module),
            target: CochainSpace::new(algebra.dim(), q + 1, module),
            matrix,
            echelon,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn target_space(&self) -> &CochainSpace {
        &self.target
    }

    fn check(&self, w: &Cochain) -> Result<(), CohomologyError> {
        if w.degree() != self.target.q {
            return Err(CohomologyError::Degree { expected: self.target.q, got: w.degree() });
        }
        if w.dim() != self.algebra.dim() || w.module() != self.target.module {
            return Err(CohomologyError::Shape);
        }
        Ok(())
    }

    /// The full certificate for dα = w.
    pub fn certificate(&self, w: &Cochain) -> Result<LinearSystemCertificate, CohomologyError> {
        self.check(w)?;
        Ok(LinearSystemCertificate::from_echelon(&self.echelon, &self.target.to_vector(w)))
    }

    /// Some α with dα = w (free variables zero), or the infeasibility certificate.
    pub fn solve(&self, w: &Cochain) -> Result<Result<Cochain, LinearSystemCertificate>, CohomologyError> {
        let cert = self.certificate(w)?;
        Ok(match &cert.outcome {
            Solution::Solved(x) => Ok(self.source.from_vector(self.algebra.field(), x)),
            Solution::Infeasible { .. } => Err(cert),
        })
    }

    pub fn is_coboundary(&self, w: &Cochain) -> Result<bool, CohomologyError> {
        Ok(self.certificate(w)?.is_feasible())
    }

    /// Dimension of the span of `cocycles` in cohomology.
    pub fn class_rank(&self, cocycles: &[Cochain]) -> Result<usize, CohomologyError> {
        let f = self.algebra.field();
        let mut cols: Vec<Vec<Fe>> = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        for c in cocycles {
            self.check(c)?;
            if !differential(self.algebra, c).is_zero() {
                return Err(CohomologyError::NotCocycle);
            }
            cols.push(self.target.to_vector(c));
        }
        let all = Matrix::from_columns(self.target.len(), &cols).rank(f);
        Ok(all - self.rank())
    }
}

pub fn solve_coboundary(
    l: &LieAlgebra<Field>,
    w: &Cochain,
) -> Result<Result<Cochain, LinearSystemCertificate>, CohomologyError> {
    if w.degree() == 0 {
        return Err(CohomologyError::Degree { expected: 1, got: 0 });
    }
    CoboundarySolver::new(l, w.degree() - 1, w.module()).solve(w)
}

/// True iff c1 − c2 is a coboundary; both inputs must be cocycles.
pub fn cohomologous(l: &LieAlgebra<Field>, c1: &Cochain, c2: &Cochain) -> Result<bool, CohomologyError> {
    for c in [c1, c2] {
        if c.dim() != l.dim() {
            return Err(CohomologyError::Shape);
        }
        if !differential(l, c).is_zero() {
            return Err(CohomologyError::NotCocycle);
        }
    }
    let diff = c1.sub(c2).map_err(|_| CohomologyError::Shape)?;
    if diff.is_zero() {
        return Ok(true);
    }
    Ok(solve_coboundary(l, &diff)?.is_ok())
}
