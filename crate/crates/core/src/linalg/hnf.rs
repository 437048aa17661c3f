//! Row-style Hermite normal form over ℤ and reduced row echelon form over fields.
//!
//! Only unimodular row operations are used, so over ℤ the row lattice is
//! preserved exactly and every intermediate value stays integral.

use num::traits::Zero;

use super::ring::{Ring, Scalar};

/// Echelonizes `rows` in place on the leading `limit` columns and returns the
/// pivot columns. Rows past the returned rank are zero on those columns; the
/// trailing columns are carried along (useful for tracking transforms).
///
/// Pivots are normalized (positive over ℤ, one over a field) and entries above
/// each pivot are reduced to the canonical residue range.
pub fn echelonize(ring: Ring, rows: &mut [Vec<Scalar>], limit: usize) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == n {
            break;
        }
        loop {
            let cand = (r..n).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| ring.size(&rows[i][c]));
            let Some(cand) = cand else { break };
            rows.swap(r, cand);
            let mut clean = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let (q, rem) = ring.quo_rem(&rows[i][c], &rows[r][c]);
                axpy(ring, rows, i, r, &q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if clean {
                let u = ring.normalizing_unit(&rows[r][c]);
                if u != ring.one() {
                    for x in rows[r].iter_mut() {
                        *x = ring.mul(x, &u);
                    }
                }
                for i in 0..r {
                    if rows[i][c].is_zero() {
                        continue;
                    }
                    let (q, _) = ring.quo_rem(&rows[i][c], &rows[r][c]);
                    axpy(ring, rows, i, r, &q);
                }
                pivots.push(c);
                r += 1;
                break;
            }
        }
    }
    pivots
}

/// `rows[target] -= q · rows[source]`.
fn axpy(ring: Ring, rows: &mut [Vec<Scalar>], target: usize, source: usize, q: &Scalar) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (a, b) = rows.split_at_mut(source);
        (&mut a[target], &b[0])
    } else {
        let (a, b) = rows.split_at_mut(target);
        (&mut b[0], &a[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x = ring.sub(x, &ring.mul(q, y));
        }
    }
}

/// Canonical echelon basis of the row span of `rows` (zero rows dropped).
pub fn canonical_rows(ring: Ring, mut rows: Vec<Vec<Scalar>>, width: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let pivots = echelonize(ring, &mut rows, width);
    rows.truncate(pivots.len());
    (rows, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(ring: Ring, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&v| ring.from_i64(v)).collect()).collect()
    }

    #[test]
    fn integer_hnf_is_canonical() {
        let z = Ring::Integers;
        let (a, _) = canonical_rows(z, ints(z, &[&[2, 4], &[6, 8]]), 2);
        assert_eq!(a, ints(z, &[&[2, 0], &[0, 4]]));
        // Different generators of the same lattice give the same form.
        let (b, _) = canonical_rows(z, ints(z, &[&[2, 4], &[4, 4], &[0, 4]]), 2);
        assert_eq!(a, b);
        let (c, _) = canonical_rows(z, ints(z, &[&[3, 5], &[0, 2]]), 2);
        assert_eq!(c, ints(z, &[&[3, 1], &[0, 2]]));
    }

    #[test]
    fn field_rref() {
        let q = Ring::Rationals;
        let (a, p) = canonical_rows(q, ints(q, &[&[2, 4, 1], &[1, 2, 0]]), 3);
        assert_eq!(p, vec![0, 2]);
        assert_eq!(a, ints(q, &[&[1, 2, 0], &[0, 0, 1]]));
    }
}
