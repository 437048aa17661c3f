//! Random filtered complexes and cubical diagrams for property tests.

use rand::Rng;

use crate::complex::{ChainMap, CochainComplex};
use crate::cubical::CubicalDiagram;
use crate::filtered::{FilteredComplex, FilteredMap};
use crate::linalg::{Matrix, Ring, Submodule};

/// Shape parameters for [`random_filtered`].
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub degrees: usize,
    pub max_dim: usize,
    pub levels: i64,
    pub max_coeff: i64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { degrees: 3, max_dim: 2, levels: 3, max_coeff: 3 }
    }
}

/// A unimodular matrix and its inverse, built from elementary operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, ring: Ring, n: usize) -> (Matrix, Matrix) {
    let mut g = Matrix::identity(ring, n);
    let mut h = Matrix::identity(ring, n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            let m = Matrix::from_i64(ring, &[vec![-1]]);
            return (m.clone(), m);
        }
        return (g, h);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-2i64..=2);
        let mut e = Matrix::identity(ring, n);
        e.set(i, j, ring.from_i64(c));
        let mut e_inv = Matrix::identity(ring, n);
        e_inv.set(i, j, ring.from_i64(-c));
        g = e.mul(&g).expect("square");
        h = h.mul(&e_inv).expect("square");
    }
    (g, h)
}

/// Elementary filtered pieces `x ↦ k·y` with `level(y) ≤ level(x)` plus free
/// singletons, mixed by a level-respecting automorphism.
fn random_aligned<R: Rng>(rng: &mut R, ring: Ring, shape: Shape) -> (CochainComplex, Vec<Vec<i64>>) {
    let nd = shape.degrees;
    let dims: Vec<usize> = (0..nd).map(|_| rng.gen_range(0..=shape.max_dim)).collect();
    let levels: Vec<Vec<i64>> =
        dims.iter().map(|&d| (0..d).map(|_| rng.gen_range(0..shape.levels)).collect()).collect();
    let mut diffs: Vec<Matrix> = (0..nd.saturating_sub(1)).map(|i| Matrix::zeros(ring, dims[i + 1], dims[i])).collect();
    // used[n][i]: basis vector already the source or target of a pair.
    let mut used: Vec<Vec<bool>> = dims.iter().map(|&d| vec![false; d]).collect();
    for n in 0..nd.saturating_sub(1) {
        for i in 0..dims[n] {
            if used[n][i] || rng.gen_bool(0.3) {
                continue;
            }
            let cands: Vec<usize> =
                (0..dims[n + 1]).filter(|&j| !used[n + 1][j] && levels[n + 1][j] <= levels[n][i]).collect();
            if cands.is_empty() {
                continue;
            }
            let j = cands[rng.gen_range(0..cands.len())];
            let k = rng.gen_range(1..=shape.max_coeff) * if rng.gen_bool(0.5) { -1 } else { 1 };
            let kk = ring.from_i64(k);
            if kk == ring.zero() {
                continue;
            }
            diffs[n].set(j, i, kk);
            used[n][i] = true;
            used[n + 1][j] = true;
        }
    }
    let k = CochainComplex::new(ring, 0, dims.clone(), diffs).expect("elementary pairs square to zero");
    // Conjugate by T_n = I + N with N[i][j] ≠ 0 only when level i ≤ level j.
    let ts: Vec<(Matrix, Matrix)> = (0..nd).map(|n| random_level_triangular(rng, ring, &levels[n])).collect();
    let conj = CochainComplex::from_fn(
        ring,
        0,
        nd as i64 - 1,
        |n| dims[n as usize],
        |n| {
            let n = n as usize;
            ts[n + 1].0.mul(&k.d(n as i64)).unwrap().mul(&ts[n].1).unwrap()
        },
    )
    .expect("conjugation keeps d² = 0");
    (conj, levels)
}

/// A filtered automorphism `T` of a basis-aligned filtration and `T⁻¹`.
fn random_level_triangular<R: Rng>(rng: &mut R, ring: Ring, levels: &[i64]) -> (Matrix, Matrix) {
    let n = levels.len();
    let mut t = Matrix::identity(ring, n);
    let mut t_inv = Matrix::identity(ring, n);
    for _ in 0..n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j || levels[i] > levels[j] {
            continue;
        }
        let c = rng.gen_range(-2i64..=2);
        let mut e = Matrix::identity(ring, n);
        e.set(i, j, ring.from_i64(c));
        let mut e_inv = Matrix::identity(ring, n);
        e_inv.set(i, j, ring.from_i64(-c));
        t = e.mul(&t).unwrap();
        t_inv = t_inv.mul(&e_inv).unwrap();
    }
    (t, t_inv)
}

/// `(G_n K, G_n W)` for random unimodular `G_n` per degree.
pub fn conjugate<R: Rng>(rng: &mut R, fk: &FilteredComplex) -> (FilteredComplex, Vec<(Matrix, Matrix)>) {
    let k = fk.carrier();
    let ring = fk.ring();
    let gs: Vec<(i64, (Matrix, Matrix))> = k.degrees().map(|n| (n, random_unimodular(rng, ring, k.dim(n)))).collect();
    let g = |n: i64| gs.iter().find(|(m, _)| *m == n).map(|(_, g)| g.clone());
    (transform(fk, &g), gs.into_iter().map(|(_, g)| g).collect())
}

fn transform(fk: &FilteredComplex, g: &dyn Fn(i64) -> Option<(Matrix, Matrix)>) -> FilteredComplex {
    let k = fk.carrier();
    let ring = fk.ring();
    let (lo, hi) = k.support().unwrap_or((0, -1));
    let carrier = CochainComplex::from_fn(
        ring,
        lo,
        hi,
        |n| k.dim(n),
        |n| {
            let (g1, _) = g(n + 1).expect("in range");
            let (_, h0) = g(n).expect("in range");
            g1.mul(&k.d(n)).unwrap().mul(&h0).unwrap()
        },
    )
    .expect("conjugation keeps d² = 0");
    let (pmin, pmax) = fk.bounds();
    FilteredComplex::from_fn(carrier, pmin, pmax, |p, n| fk.w(p, n).map(&g(n).expect("in range").0).unwrap())
        .expect("isomorphic filtration")
}

/// A random bounded filtered complex in degrees `0..shape.degrees` with a non-aligned basis.
pub fn random_filtered<R: Rng>(rng: &mut R, ring: Ring, shape: Shape) -> FilteredComplex {
    let (k, levels) = random_aligned(rng, ring, shape);
    let fk = FilteredComplex::from_basis_levels(&k, &levels).expect("levels respect d");
    conjugate(rng, &fk).0
}

/// A random 2-cube `K₀ → K₀₁ ← K₁` sharing a common summand `R`.
pub fn random_square<R: Rng>(rng: &mut R, ring: Ring, shape: Shape) -> CubicalDiagram {
    let r = random_filtered(rng, ring, shape);
    let c0 = random_filtered(rng, ring, shape);
    let c1 = random_filtered(rng, ring, shape);
    let c01 = random_filtered(rng, ring, shape);
    let k0 = direct_sum(&r, &c0);
    let k1 = direct_sum(&c1, &r);
    let k01 = direct_sum(&r, &c01);
    let s0 = rng.gen_range(1..=2) * if rng.gen_bool(0.5) { -1 } else { 1 };
    let s1 = rng.gen_range(1..=2) * if rng.gen_bool(0.5) { -1 } else { 1 };
    let f0 = block_map(&k0, &k01, |n| {
        let mut m = Matrix::zeros(ring, k01.carrier().dim(n), k0.carrier().dim(n));
        let d = r.carrier().dim(n);
        m.set_block(0, 0, &Matrix::identity(ring, d).scale(&ring.from_i64(s0)));
        m
    });
    let f1 = block_map(&k1, &k01, |n| {
        let mut m = Matrix::zeros(ring, k01.carrier().dim(n), k1.carrier().dim(n));
        let d = r.carrier().dim(n);
        let off = c1.carrier().dim(n);
        m.set_block(0, off, &Matrix::identity(ring, d).scale(&ring.from_i64(s1)));
        m
    });
    let d = CubicalDiagram::new(2, vec![(0b01, k0), (0b10, k1), (0b11, k01)], vec![(0b01, 1, f0), (0b10, 0, f1)])
        .expect("square commutes");
    conjugate_diagram(rng, &d)
}

fn block_map(src: &FilteredComplex, tgt: &FilteredComplex, f: impl Fn(i64) -> Matrix) -> FilteredMap {
    let cm = ChainMap::from_fn(src.carrier().clone(), tgt.carrier().clone(), f).expect("block chain map");
    FilteredMap::new(src.clone(), tgt.clone(), cm).expect("filtered block map")
}

/// Direct sum of filtered complexes supported in the same degrees.
pub fn direct_sum(a: &FilteredComplex, b: &FilteredComplex) -> FilteredComplex {
    let carrier = a.carrier().direct_sum(b.carrier()).expect("same ring");
    let (a0, a1) = a.bounds();
    let (b0, b1) = b.bounds();
    FilteredComplex::from_fn(carrier, a0.min(b0), a1.max(b1), |p, n| a.w(p, n).direct_sum(&b.w(p, n)))
        .expect("sum of filtrations")
}

/// Applies a random basis change at every vertex and transports the cofaces.
pub fn conjugate_diagram<R: Rng>(rng: &mut R, d: &CubicalDiagram) -> CubicalDiagram {
    let mut gs = std::collections::BTreeMap::new();
    let mut vertices = Vec::new();
    for (mask, fk) in d.vertices() {
        let (c, g) = conjugate(rng, fk);
        let start = fk.carrier().support().map_or(0, |s| s.0);
        gs.insert(mask, (start, g));
        vertices.push((mask, c));
    }
    let find = |mask: u32, n: i64| -> (Matrix, Matrix) {
        let (start, g) = &gs[&mask];
        g[(n - start) as usize].clone()
    };
    let new_vertex = |mask: u32| vertices.iter().find(|(m, _)| *m == mask).map(|(_, v)| v.clone()).unwrap();
    let mut cofaces = Vec::new();
    for (mask, j, f) in d.cofaces() {
        let tmask = mask | (1 << j);
        let src = new_vertex(mask);
        let tgt = new_vertex(tmask);
        let cm = ChainMap::from_fn(src.carrier().clone(), tgt.carrier().clone(), |n| {
            let g_t = find(tmask, n).0;
            let h_s = find(mask, n).1;
            g_t.mul(&f.carrier().f(n)).unwrap().mul(&h_s).unwrap()
        })
        .expect("conjugated chain map");
        cofaces.push((mask, j, FilteredMap::new(src, tgt, cm).expect("conjugated filtered map")));
    }
    CubicalDiagram::new(d.size(), vertices, cofaces).expect("conjugated diagram")
}

/// Filtration is unchanged when read on the same basis: sanity helper for tests.
pub fn is_basis_aligned(fk: &FilteredComplex) -> bool {
    let (pmin, pmax) = fk.bounds();
    fk.carrier().degrees().all(|n| {
        (pmin..pmax).all(|p| {
            let w = fk.w(p, n);
            let dim = fk.carrier().dim(n);
            let idx: Vec<usize> = (0..dim)
                .filter(|&i| {
                    let mut e = vec![fk.ring().zero(); dim];
                    e[i] = fk.ring().one();
                    w.contains(&e)
                })
                .collect();
            Submodule::coordinate(fk.ring(), dim, idx) == w
        })
    })
}
