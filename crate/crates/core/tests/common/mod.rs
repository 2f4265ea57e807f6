//! Independent oracles: matrix realizations, naive Gaussian elimination, Pascal binomials.
#![allow(dead_code)]

use modlie::{Cochain, Fe, Field, LieAlgebra};

pub type Mat = Vec<Vec<Fe>>;

pub fn zero_mat(f: &Field, n: usize) -> Mat {
    vec![vec![f.zero(); n]; n]
}

pub fn unit_mat(f: &Field, n: usize, i: usize, j: usize) -> Mat {
    let mut m = zero_mat(f, n);
    m[i][j] = f.one();
    m
}

pub fn mat_add(f: &Field, a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(&x, &y)| f.add(x, y)).collect()).collect()
}

pub fn mat_scale(f: &Field, c: Fe, a: &Mat) -> Mat {
    a.iter().map(|r| r.iter().map(|&x| f.mul(c, x)).collect()).collect()
}

pub fn mat_mul(f: &Field, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zero_mat(f, n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == f.zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = f.add(out[i][j], f.mul(a[i][k], b[k][j]));
            }
        }
    }
    out
}

pub fn commutator(f: &Field, a: &Mat, b: &Mat) -> Mat {
    let ab = mat_mul(f, a, b);
    let ba = mat_mul(f, b, a);
    mat_add(f, &ab, &mat_scale(f, f.neg(f.one()), &ba))
}

pub fn flatten(m: &Mat) -> Vec<Fe> {
    m.iter().flatten().copied().collect()
}

/// Row-reduces a copy and returns the rank.
pub fn naive_rank(f: &Field, rows: &[Vec<Fe>]) -> usize {
    let mut m: Vec<Vec<Fe>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != f.zero()) else { continue };
        m.swap(rank, p);
        let inv = f.inv(m[rank][c]).unwrap();
        let pivot: Vec<Fe> = m[rank].iter().map(|&x| f.mul(inv, x)).collect();
        for r in 0..m.len() {
            if r != rank && m[r][c] != f.zero() {
                let k = m[r][c];
                for j in 0..cols {
                    m[r][j] = f.sub(m[r][j], f.mul(k, pivot[j]));
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn naive_coordinates(f: &Field, basis: &[Vec<Fe>], v: &[Fe]) -> Option<Vec<Fe>> {
    let n = basis.len();
    let len = v.len();
    // augmented system: columns are basis vectors, last column the target
    let mut m: Vec<Vec<Fe>> = (0..len)
        .map(|i| basis.iter().map(|b| b[i]).chain(std::iter::once(v[i])).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..len).find(|&r| m[r][c] != f.zero()) else { continue };
        m.swap(rank, p);
        let inv = f.inv(m[rank][c]).unwrap();
        m[rank] = m[rank].iter().map(|&x| f.mul(inv, x)).collect();
        for r in 0..len {
            if r != rank && m[r][c] != f.zero() {
                let k = m[r][c];
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(k, *y));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if (rank..len).any(|r| m[r][n] != f.zero()) {
        return None;
    }
    let mut out = vec![f.zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = m[r][n];
    }
    Some(out)
}

pub fn pascal_mod(m: u64, n: u64, p: u64) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % p;
        }
        row = next;
    }
    if n > m { 0 } else { row[n as usize] }
}

/// Extends images of the generators to the whole basis along single-term brackets of `l`,
/// then checks that the result is a bijective homomorphism into the matrix algebra.
pub fn realize(l: &LieAlgebra<Field>, generators: &[usize], images: &[Mat]) -> Option<Vec<Mat>> {
    let f = l.field();
    let n = l.dim();
    let mut phi: Vec<Option<Mat>> = vec![None; n];
    for (&g, m) in generators.iter().zip(images) {
        phi[g] = Some(m.clone());
    }
    loop {
        let mut progressed = false;
        for i in 0..n {
            for j in 0..n {
                let (Some(a), Some(b)) = (&phi[i], &phi[j]) else { continue };
                if let [(k, c)] = l.bracket_basis(i, j) {
                    if phi[*k].is_none() {
                        let inv = f.inv(*c)?;
                        phi[*k] = Some(mat_scale(f, inv, &commutator(f, a, b)));
                        progressed = true;
                    }
                }
            }
        }
        if !progressed {
            break;
        }
    }
    let phi: Vec<Mat> = phi.into_iter().collect::<Option<_>>()?;
    if naive_rank(f, &phi.iter().map(flatten).collect::<Vec<_>>()) != n {
        return None;
    }
    for i in 0..n {
        for j in i + 1..n {
            let lhs = commutator(f, &phi[i], &phi[j]);
            let mut rhs = zero_mat(f, lhs.len());
            for (k, c) in l.bracket_basis(i, j) {
                rhs = mat_add(f, &rhs, &mat_scale(f, *c, &phi[*k]));
            }
            if lhs != rhs {
                return None;
            }
        }
    }
    Some(phi)
}

/// Tries every assignment of candidate matrices to the generators.
pub fn search_realization(l: &LieAlgebra<Field>, generators: &[usize], candidates: &[Mat]) -> Option<Vec<Mat>> {
    let k = generators.len();
    let total = candidates.len().pow(k as u32);
    (0..total).find_map(|mut code| {
        let images: Vec<Mat> = (0..k)
            .map(|_| {
                let m = candidates[code % candidates.len()].clone();
                code /= candidates.len();
                m
            })
            .collect();
        realize(l, generators, &images)
    })
}

/// Root vectors of sp(4) = {X : XᵀJ + JX = 0}, J = [[0, I], [−I, 0]], with all nonzero scalings.
pub fn sp4_candidates(f: &Field) -> Vec<Mat> {
    let e = |i, j| unit_mat(f, 4, i, j);
    let minus = f.neg(f.one());
    let roots = vec![
        // [[A, 0], [0, −Aᵀ]]
        mat_add(f, &e(0, 1), &mat_scale(f, minus, &e(3, 2))),
        mat_add(f, &e(1, 0), &mat_scale(f, minus, &e(2, 3))),
        // [[0, B], [0, 0]] and [[0, 0], [C, 0]] with B, C symmetric
        e(0, 2),
        e(1, 3),
        mat_add(f, &e(0, 3), &e(1, 2)),
        e(2, 0),
        e(3, 1),
        mat_add(f, &e(2, 1), &e(3, 0)),
    ];
    roots.iter().flat_map(|r| f.nonzero().map(move |c| mat_scale(f, c, r))).collect()
}

pub fn is_symplectic(f: &Field, x: &Mat) -> bool {
    let mut j = zero_mat(f, 4);
    for i in 0..2 {
        j[i][i + 2] = f.one();
        j[i + 2][i] = f.neg(f.one());
    }
    let xt: Mat = (0..4).map(|r| (0..4).map(|c| x[c][r]).collect()).collect();
    mat_add(f, &mat_mul(f, &xt, &j), &mat_mul(f, &j, x)) == zero_mat(f, 4)
}

/// Basis of o(5) over GF(2): X with B·X symmetric, B the 5×5 antidiagonal form.
pub fn o5_gf2_basis(f: &Field) -> Vec<Mat> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i..5 {
            // B·X = S with S = E_ij + E_ji (or E_ii); X = B·S since B² = 1
            let mut x = zero_mat(f, 5);
            x[4 - i][j] = f.one();
            x[4 - j][i] = f.one();
            out.push(x);
        }
    }
    out
}

/// Basis of the span of all commutators of `basis`.
pub fn derived_span(f: &Field, basis: &[Mat]) -> Vec<Mat> {
    let mut out: Vec<Mat> = Vec::new();
    for a in basis {
        for b in basis {
            let c = commutator(f, a, b);
            let mut trial: Vec<Vec<Fe>> = out.iter().map(flatten).collect();
            trial.push(flatten(&c));
            if naive_rank(f, &trial) > out.len() {
                out.push(c);
            }
        }
    }
    out
}

/// Matrices E_ij + E_{4−j,4−i} lying in the derived algebra of o(5) over GF(2).
pub fn o51_gf2_candidates(f: &Field) -> Vec<Mat> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            if i == j || i + j == 4 || (i, j) > (4 - j, 4 - i) {
                continue;
            }
            out.push(mat_add(f, &unit_mat(f, 5, i, j), &unit_mat(f, 5, 4 - j, 4 - i)));
        }
    }
    out
}

/// Direct cyclic sum [[a,b],c] + [[b,c],a] + [[c,a],b] on basis vectors, from the raw table.
pub fn naive_jacobi_violations(l: &LieAlgebra<Field>) -> usize {
    let f = l.field();
    let n = l.dim();
    let br = |u: &[Fe], k: usize| -> Vec<Fe> {
        let mut out = vec![f.zero(); n];
        for (i, &c) in u.iter().enumerate() {
            if c == f.zero() {
                continue;
            }
            for (m, d) in l.bracket_basis(i, k) {
                out[*m] = f.add(out[*m], f.mul(c, *d));
            }
        }
        out
    };
    let unit = |i: usize| {
        let mut v = vec![f.zero(); n];
        v[i] = f.one();
        v
    };
    let mut bad = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let terms = [br(&br(&unit(a), b), c), br(&br(&unit(b), c), a), br(&br(&unit(c), a), b)];
                let sum: Vec<Fe> = (0..n).map(|k| terms.iter().fold(f.zero(), |s, t| f.add(s, t[k]))).collect();
                if sum.iter().any(|&x| x != f.zero()) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// dc(x_0..x_q) by the alternating formula, evaluated entry by entry on basis tuples.
pub fn naive_differential_value(l: &LieAlgebra<Field>, c: &Cochain, args: &[usize]) -> Vec<Fe> {
    let f = l.field();
    let n = l.dim();
    let m = c.module_dim();
    let q = args.len() - 1;
    let sign = |e: usize| if e % 2 == 0 { f.one() } else { f.neg(f.one()) };
    let mut out = vec![f.zero(); m];
    for a in 0..=q {
        for b in a + 1..=q {
            let rest: Vec<usize> = (0..=q).filter(|&i| i != a && i != b).map(|i| args[i]).collect();
            for (k, coef) in l.bracket_basis(args[a], args[b]) {
                let mut tuple = vec![*k];
                tuple.extend(&rest);
                let v = c.eval_basis(&tuple);
                let s = f.mul(sign(a + b + 1), *coef);
                for (o, x) in out.iter_mut().zip(v) {
                    *o = f.add(*o, f.mul(s, x));
                }
            }
        }
    }
    if m == n {
        for a in 0..=q {
            let rest: Vec<usize> = (0..=q).filter(|&i| i != a).map(|i| args[i]).collect();
            let inner = c.eval_basis(&rest);
            let s = sign(a + 1);
            for (i, &x) in inner.iter().enumerate() {
                if x == f.zero() {
                    continue;
                }
                // [x_a, e_i]
                for (k, d) in l.bracket_basis(args[a], i) {
                    out[*k] = f.add(out[*k], f.mul(s, f.mul(x, *d)));
                }
            }
        }
    }
    out
}
