//! Dense exact linear algebra over a finite field.

use serde_json::{json, Value};

use crate::field::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fe::default(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    pub fn from_columns(nrows: usize, cols: &[Vec<Fe>]) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "ragged columns");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// M x
    pub fn mul_vec(&self, field: &Field, x: &[Fe]) -> Vec<Fe> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(field, self.row(i), x))
            .collect()
    }

    /// y^T M
    pub fn vec_mul(&self, field: &Field, y: &[Fe]) -> Vec<Fe> {
        assert_eq!(y.len(), self.rows);
        let mut out = vec![field.zero(); self.cols];
        for (i, &yi) in y.iter().enumerate() {
            if yi == field.zero() {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o = field.add(*o, field.mul(yi, m));
            }
        }
        out
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = other.vec_mul(field, self.row(i));
            out.row_mut(i).copy_from_slice(&row);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == Fe::default())
    }

    pub fn rank(&self, field: &Field) -> usize {
        Echelon::new(field, self).rank()
    }

    pub fn to_json(&self, field: &Field) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(|&x| field.to_json(x)).collect()))
                .collect(),
        )
    }
}

pub fn dot(field: &Field, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

#[derive(Clone, Copy, Debug)]
enum RowOp {
    Swap(usize, usize),
    Scale(usize, Fe),
    /// row[dst] += factor * row[src]
    AddMul { src: usize, dst: usize, factor: Fe },
}

/// Reduced row echelon form with the sequence of row operations that produced it.
///
/// Pivoting is deterministic: columns left to right, first nonzero row at or below the
/// current rank.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    reduced: Matrix,
    pivots: Vec<usize>,
    ops: Vec<RowOp>,
}

impl Echelon {
    pub fn new(field: &Field, m: &Matrix) -> Self {
        let mut a = m.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut ops = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a.get(i, c) != field.zero()) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    a.data.swap(pr * cols + j, r * cols + j);
                }
                ops.push(RowOp::Swap(pr, r));
            }
            let lead = a.get(r, c);
            if lead != field.one() {
                let s = field.inv(lead).expect("nonzero pivot");
                for x in &mut a.row_mut(r)[c..] {
                    *x = field.mul(*x, s);
                }
                ops.push(RowOp::Scale(r, s));
            }
            let pivot_row: Vec<Fe> = a.row(r)[c..].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let v = a.get(i, c);
                if v == field.zero() {
                    continue;
                }
                let factor = field.neg(v);
                let row = &mut a.row_mut(i)[c..];
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    if pv != field.zero() {
                        *x = field.add(*x, field.mul(factor, pv));
                    }
                }
                ops.push(RowOp::AddMul { src: r, dst: i, factor });
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { field: field.clone(), reduced: a, pivots, ops }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduced(&self) -> &Matrix {
        &self.reduced
    }

    /// T w, where T is the accumulated row transform (T M = reduced).
    pub fn transform(&self, w: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut v = w.to_vec();
        for op in &self.ops {
            match *op {
                RowOp::Swap(a, b) => v.swap(a, b),
                RowOp::Scale(r, s) => v[r] = f.mul(v[r], s),
                RowOp::AddMul { src, dst, factor } => {
                    if v[src] != f.zero() {
                        v[dst] = f.add(v[dst], f.mul(factor, v[src]));
                    }
                }
            }
        }
        v
    }

    /// Row `r` of T, i.e. T^T e_r, by replaying transposed operations in reverse.
    pub fn transform_row(&self, r: usize) -> Vec<Fe> {
        let f = &self.field;
        let mut v = vec![f.zero(); self.reduced.rows];
        v[r] = f.one();
        for op in self.ops.iter().rev() {
            match *op {
                RowOp::Swap(a, b) => v.swap(a, b),
                RowOp::Scale(r, s) => v[r] = f.mul(v[r], s),
                RowOp::AddMul { src, dst, factor } => {
                    if v[dst] != f.zero() {
                        v[src] = f.add(v[src], f.mul(factor, v[dst]));
                    }
                }
            }
        }
        v
    }

    /// Solves M x = w; free variables are set to zero.
    pub fn solve(&self, w: &[Fe]) -> Solution {
        let f = &self.field;
        assert_eq!(w.len(), self.reduced.rows);
        let tw = self.transform(w);
        if let Some(r) = (self.rank()..tw.len()).find(|&r| tw[r] != f.zero()) {
            let witness = self.transform_row(r);
            let pairing = dot(f, &witness, w);
            return Solution::Infeasible { witness, pairing };
        }
        let mut x = vec![f.zero(); self.reduced.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            x[c] = tw[r];
        }
        Solution::Solved(x)
    }

    /// Basis of the right kernel {x : M x = 0}.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let cols = self.reduced.cols;
        let free: Vec<usize> = (0..cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![f.zero(); cols];
                x[fc] = f.one();
                for (r, &pc) in self.pivots.iter().enumerate() {
                    x[pc] = f.neg(self.reduced.get(r, fc));
                }
                x
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Solved(Vec<Fe>),
    /// `witness^T M = 0` and `witness . w = pairing != 0`.
    Infeasible { witness: Vec<Fe>, pairing: Fe },
}

/// Self-contained record of one linear solve, checkable against the original system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystemCertificate {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub outcome: Solution,
}

impl LinearSystemCertificate {
    pub fn solve(field: &Field, m: &Matrix, w: &[Fe]) -> Self {
        let e = Echelon::new(field, m);
        Self::from_echelon(&e, w)
    }

    pub fn from_echelon(e: &Echelon, w: &[Fe]) -> Self {
        LinearSystemCertificate {
            rows: e.reduced.rows,
            cols: e.reduced.cols,
            rank: e.rank(),
            outcome: e.solve(w),
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, Solution::Solved(_))
    }

    /// Independent check: either M x = w, or the witness kills every column and pairs nonzero with w.
    pub fn verify(&self, field: &Field, m: &Matrix, w: &[Fe]) -> bool {
        if m.rows() != self.rows || m.cols() != self.cols || w.len() != self.rows {
            return false;
        }
        match &self.outcome {
            Solution::Solved(x) => m.mul_vec(field, x) == w,
            Solution::Infeasible { witness, pairing } => {
                let killed = m.vec_mul(field, witness).iter().all(|&v| v == field.zero());
                let p = dot(field, witness, w);
                killed && p != field.zero() && p == *pairing
            }
        }
    }

    pub fn to_json(&self, field: &Field) -> Value {
        let vec_json = |v: &[Fe]| Value::Array(v.iter().map(|&x| field.to_json(x)).collect());
        let outcome = match &self.outcome {
            Solution::Solved(x) => json!({ "kind": "solution", "vector": vec_json(x) }),
            Solution::Infeasible { witness, pairing } => json!({
                "kind": "infeasible",
                "left_null_vector": vec_json(witness),
                "pairing_with_target": field.to_json(*pairing),
            }),
        };
        json!({ "rows": self.rows, "cols": self.cols, "rank": self.rank, "outcome": outcome })
    }
}
