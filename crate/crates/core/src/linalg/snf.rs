use num::traits::Zero;

use super::matrix::Matrix;
use super::ring::{Ring, Scalar};

/// Smith decomposition `U·M·V = S` with `U`, `V` invertible and `S` diagonal.
///
/// Over ℤ the diagonal is nonnegative and each entry divides the next; over a
/// field it consists of ones followed by zeros. `v_inv` is `V⁻¹`, kept so that
/// quotient coordinates can be lifted back without a separate inversion.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl SmithForm {
    /// Diagonal entries `S[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct Work {
    ring: Ring,
    a: Vec<Vec<Scalar>>,
    u: Vec<Vec<Scalar>>,
    v: Vec<Vec<Scalar>>,
    v_inv: Vec<Vec<Scalar>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i -= q·row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &Scalar) {
        let ring = self.ring;
        for m in [&mut self.a, &mut self.u] {
            let src = m[t].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x = ring.sub(x, &ring.mul(q, y));
                }
            }
        }
    }

    /// col_j -= q·col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &Scalar) {
        let ring = self.ring;
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                if !row[t].is_zero() {
                    row[j] = ring.sub(&row[j], &ring.mul(q, &row[t]));
                }
            }
        }
        let src = self.v_inv[j].clone();
        for (x, y) in self.v_inv[t].iter_mut().zip(&src) {
            if !y.is_zero() {
                *x = ring.add(x, &ring.mul(q, y));
            }
        }
    }

    fn scale_row(&mut self, t: usize, unit: &Scalar) {
        let ring = self.ring;
        for m in [&mut self.a, &mut self.u] {
            for x in m[t].iter_mut() {
                *x = ring.mul(x, unit);
            }
        }
    }
}

fn identity_rows(ring: Ring, n: usize) -> Vec<Vec<Scalar>> {
    Matrix::identity(ring, n).row_vecs()
}

pub fn smith_normal_form(m: &Matrix) -> SmithForm {
    let ring = m.ring();
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work {
        ring,
        a: m.row_vecs(),
        u: identity_rows(ring, r),
        v: identity_rows(ring, c),
        v_inv: identity_rows(ring, c),
    };
    'outer: for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if w.a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| ring.size(&w.a[i][j]) < ring.size(&w.a[bi][bj])) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'outer };
            if bi != t {
                w.swap_rows(t, bi);
            }
            if bj != t {
                w.swap_cols(t, bj);
            }
            let mut clean = true;
            for i in t + 1..r {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let (q, rem) = ring.quo_rem(&w.a[i][t], &w.a[t][t]);
                w.row_axpy(i, t, &q);
                clean &= rem.is_zero();
            }
            for j in t + 1..c {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let (q, rem) = ring.quo_rem(&w.a[t][j], &w.a[t][t]);
                w.col_axpy(j, t, &q);
                clean &= rem.is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = w.a[t][t].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !ring.quo_rem(&w.a[i][j], &pivot).1.is_zero()));
            match offender {
                Some(i) => {
                    // row_t += row_i brings a non-multiple into row t.
                    w.row_axpy(t, i, &ring.from_i64(-1));
                }
                None => break,
            }
        }
        let unit = ring.normalizing_unit(&w.a[t][t]);
        if unit != ring.one() {
            w.scale_row(t, &unit);
        }
    }
    SmithForm {
        s: Matrix::from_rows(ring, c, w.a),
        u: Matrix::from_rows(ring, r, w.u),
        v: Matrix::from_rows(ring, c, w.v),
        v_inv: Matrix::from_rows(ring, c, w.v_inv),
    }
}
