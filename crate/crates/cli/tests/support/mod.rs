//! A small rational linear algebra kit, written separately from the library,
//! used as an oracle for page dimensions and short exactness.

#![allow(dead_code)]

use num::rational::BigRational;
use num::traits::{One, Zero};
use wfilt_core::filtered::FilteredComplex;
use wfilt_core::Matrix;

pub type Q = BigRational;

pub fn columns(m: &Matrix) -> Vec<Vec<Q>> {
    (0..m.cols()).map(|c| (0..m.rows()).map(|r| m.row(r)[c].clone()).collect()).collect()
}

/// Row reduction of the matrix whose columns are `cols`; returns pivot columns and the reduced rows.
fn reduce(cols: &[Vec<Q>], len: usize) -> (Vec<usize>, Vec<Vec<Q>>) {
    let mut rows: Vec<Vec<Q>> = (0..len).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols.len() {
        let Some(p) = (r..len).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..len {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x = x.clone() - f.clone() * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == len {
            break;
        }
    }
    (pivots, rows)
}

pub fn rank(vs: &[Vec<Q>], len: usize) -> usize {
    reduce(vs, len).0.len()
}

/// Basis of `{c : Σ c_i cols_i = 0}`.
pub fn null_space(cols: &[Vec<Q>], len: usize) -> Vec<Vec<Q>> {
    let (pivots, rows) = reduce(cols, len);
    (0..cols.len())
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols.len()];
            v[free] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

fn apply(cols: &[Vec<Q>], coeffs: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (c, k) in cols.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(c) {
            *o = o.clone() + x.clone() * k.clone();
        }
    }
    out
}

fn mat_vec(m: &Matrix, v: &[Q]) -> Vec<Q> {
    (0..m.rows()).map(|r| m.row(r).iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a.clone() * b.clone())).collect()
}

/// `F^a Kⁿ = W_{−a} Kⁿ` as basis vectors.
fn f(fk: &FilteredComplex, a: i64, n: i64) -> Vec<Vec<Q>> {
    fk.w(-a, n).basis().to_vec()
}

/// `dim E_r^{a, n−a}` as the rank of `Hⁿ(F^a / F^{a+r}) → Hⁿ(F^{a−r+1} / F^{a+1})`.
pub fn page_dim(fk: &FilteredComplex, r: i64, a: i64, n: i64) -> usize {
    let k = fk.carrier();
    let len = k.dim(n);
    if len == 0 {
        return 0;
    }
    let d = k.d(n);
    let next = k.dim(n + 1);
    // Z = F^a ∩ d⁻¹ F^{a+r}.
    let fa = f(fk, a, n);
    let b = f(fk, a + r, n + 1);
    let images: Vec<Vec<Q>> = fa.iter().map(|v| mat_vec(&d, v)).chain(b.iter().cloned()).collect();
    let z: Vec<Vec<Q>> = null_space(&images, next).iter().map(|c| apply(&fa, &c[..fa.len()], len)).collect();
    let mut denom: Vec<Vec<Q>> = f(fk, a + 1, n);
    let dprev = k.d(n - 1);
    denom.extend(f(fk, a - r + 1, n - 1).iter().map(|v| mat_vec(&dprev, v)));
    let mut num = denom.clone();
    num.extend(z);
    rank(&num, len) - rank(&denom, len)
}

/// `0 → A → B → C → 0` exact for `α: A → B`, `β: B → C` given as matrices.
pub fn short_exact(alpha: &Matrix, beta: &Matrix) -> bool {
    let (a, b, c) = (alpha.cols(), alpha.rows(), beta.rows());
    let ra = rank(&columns(alpha), b);
    let rb = rank(&columns(beta), c);
    let comp_zero = (0..a).all(|j| {
        let col: Vec<Q> = (0..b).map(|i| alpha.row(i)[j].clone()).collect();
        mat_vec(beta, &col).iter().all(Zero::is_zero)
    });
    comp_zero && ra == a && rb == c && ra + rb == b
}
