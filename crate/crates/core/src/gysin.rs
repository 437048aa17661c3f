//! Gysin complexes of a smooth compactification with normal crossings boundary.
//!
//! Components of the boundary are numbered `0..N`; a stratum `D_I` is keyed by
//! the bitmask of `I`, with `D_∅ = X̄`. The row `q` complex lives in degrees
//! `p ∈ [−N, 0]` and has `⊕_{|I| = −p} H^{q + s·p}(D_I)` in degree `p`, where
//! `s = 2` for complex varieties and `s = 1` for real ones (mod 2 only).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{sign, ChainMap, CochainComplex};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GysinMode {
    Complex,
    Real,
}

impl GysinMode {
    /// Degree shift of a Gysin map across one codimension.
    pub fn shift(self) -> i64 {
        match self {
            GysinMode::Complex => 2,
            GysinMode::Real => 1,
        }
    }
}

/// Graded ranks `k ↦ rank H^k(D_I)` of a free cohomology ring.
pub type Ranks = BTreeMap<i64, usize>;

#[derive(Clone, Debug, PartialEq)]
pub struct GysinDatum {
    ring: Ring,
    mode: GysinMode,
    components: usize,
    strata: BTreeMap<u32, Ranks>,
    /// `(J, j)` ↦ `k ↦ (H^k(D_J) → H^{k+s}(D_{J∖j}))`.
    gysin: BTreeMap<(u32, usize), BTreeMap<i64, Matrix>>,
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

impl GysinDatum {
    pub fn new(
        ring: Ring,
        mode: GysinMode,
        components: usize,
        strata: BTreeMap<u32, Ranks>,
        gysin: BTreeMap<(u32, usize), BTreeMap<i64, Matrix>>,
    ) -> Result<GysinDatum> {
        if components > 16 {
            return Err(Error::InvalidGysin(format!("{components} boundary components is too many")));
        }
        if mode == GysinMode::Real && ring != Ring::PrimeField(2) {
            return Err(Error::InvalidGysin("real mode needs coefficients in Z/2".into()));
        }
        if !strata.contains_key(&0) {
            return Err(Error::InvalidGysin("the ambient stratum is missing".into()));
        }
        let full = (1u32 << components) - 1;
        for &mask in strata.keys() {
            if mask & !full != 0 {
                return Err(Error::InvalidGysin(format!("stratum {mask:#b} uses unknown components")));
            }
            for i in members(mask) {
                if !strata.contains_key(&(mask & !(1 << i))) {
                    return Err(Error::InvalidGysin(format!("stratum {mask:#b} lies in a missing stratum")));
                }
            }
        }
        let d = GysinDatum { ring, mode, components, strata, gysin };
        let s = mode.shift();
        for (&(jm, j), maps) in &d.gysin {
            if jm & (1 << j) == 0 || !d.strata.contains_key(&jm) {
                return Err(Error::InvalidGysin(format!("Gysin map ({jm:#b}, {j}) has no source stratum")));
            }
            for (&k, m) in maps {
                let (rows, cols) = (d.rank(jm & !(1 << j), k + s), d.rank(jm, k));
                if m.ring() != ring || m.rows() != rows || m.cols() != cols {
                    return Err(Error::InvalidGysin(format!(
                        "Gysin map ({jm:#b}, {j}) in degree {k} should be {rows}×{cols}"
                    )));
                }
            }
        }
        for q in d.rows() {
            CochainComplex::new(ring, -(components as i64), d.row_dims(q), d.row_diffs(q))
                .map_err(|e| Error::InvalidGysin(format!("row {q}: {e}")))?;
        }
        Ok(d)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn mode(&self) -> GysinMode {
        self.mode
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn strata(&self) -> &BTreeMap<u32, Ranks> {
        &self.strata
    }

    pub fn gysin_maps(&self) -> &BTreeMap<(u32, usize), BTreeMap<i64, Matrix>> {
        &self.gysin
    }

    pub fn rank(&self, mask: u32, k: i64) -> usize {
        self.strata.get(&mask).and_then(|r| r.get(&k)).copied().unwrap_or(0)
    }

    /// Rows that can be nonzero.
    #[allow(clippy::reversed_empty_ranges)]
    pub fn rows(&self) -> std::ops::RangeInclusive<i64> {
        let ks: Vec<i64> = self.strata.values().flat_map(|r| r.iter().filter(|e| *e.1 > 0).map(|e| *e.0)).collect();
        match (ks.iter().min(), ks.iter().max()) {
            (Some(&lo), Some(&hi)) => lo..=hi + self.mode.shift() * self.components as i64,
            _ => 0..=-1,
        }
    }

    /// Strata of codimension `c`, ascending by mask.
    pub fn strata_of_size(&self, c: usize) -> Vec<u32> {
        self.strata.keys().copied().filter(|m| m.count_ones() as usize == c).collect()
    }

    fn degree_of(&self, q: i64, p: i64) -> i64 {
        q + self.mode.shift() * p
    }

    /// `(mask, offset)` of every block in degree `p` of row `q`.
    pub fn blocks(&self, q: i64, p: i64) -> Vec<(u32, usize, usize)> {
        let k = self.degree_of(q, p);
        let mut off = 0;
        self.strata_of_size((-p) as usize)
            .into_iter()
            .map(|m| {
                let r = self.rank(m, k);
                let b = (m, off, r);
                off += r;
                b
            })
            .collect()
    }

    fn row_dims(&self, q: i64) -> Vec<usize> {
        (-(self.components as i64)..=0).map(|p| self.blocks(q, p).iter().map(|b| b.2).sum()).collect()
    }

    fn row_diffs(&self, q: i64) -> Vec<Matrix> {
        (-(self.components as i64)..0).map(|p| self.row_d(q, p)).collect()
    }

    fn row_d(&self, q: i64, p: i64) -> Matrix {
        let src = self.blocks(q, p);
        let tgt = self.blocks(q, p + 1);
        let k = self.degree_of(q, p);
        let rows = tgt.iter().map(|b| b.2).sum();
        let cols = src.iter().map(|b| b.2).sum();
        let mut m = Matrix::zeros(self.ring, rows, cols);
        for &(jm, c0, _) in &src {
            for (pos, j) in members(jm).enumerate() {
                let im = jm & !(1 << j);
                let Some(&(_, r0, _)) = tgt.iter().find(|b| b.0 == im) else { continue };
                if let Some(g) = self.gysin.get(&(jm, j)).and_then(|g| g.get(&k)) {
                    let g = if sign(pos as i64) < 0 { g.neg() } else { g.clone() };
                    m.set_block(r0, c0, &g);
                }
            }
        }
        m
    }

    /// Row `q` of the weight spectral sequence's first page.
    pub fn gysin_complex(&self, q: i64) -> CochainComplex {
        CochainComplex::new(self.ring, -(self.components as i64), self.row_dims(q), self.row_diffs(q))
            .expect("validated on construction")
    }
}

/// A map of pairs `(X̄', D') → (X̄, D)` with `f*D_i = Σ_j m_ij D'_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GysinMorphismDatum {
    /// Datum of the source pair `(X̄', D')`.
    pub source: GysinDatum,
    /// Datum of the target pair `(X̄, D)`.
    pub target: GysinDatum,
    /// `N × N'` multiplicities.
    pub multiplicity: Vec<Vec<i64>>,
    /// `(I, J)` ↦ `k ↦ (f*_{IJ}: H^k(D_I) → H^k(D'_J))`; missing entries are zero.
    pub pullbacks: BTreeMap<(u32, u32), BTreeMap<i64, Matrix>>,
}

impl GysinMorphismDatum {
    pub fn new(
        source: GysinDatum,
        target: GysinDatum,
        multiplicity: Vec<Vec<i64>>,
        pullbacks: BTreeMap<(u32, u32), BTreeMap<i64, Matrix>>,
    ) -> Result<GysinMorphismDatum> {
        if source.ring != target.ring || source.mode != target.mode {
            return Err(Error::InvalidGysin("source and target differ in ring or mode".into()));
        }
        if multiplicity.len() != target.components || multiplicity.iter().any(|r| r.len() != source.components) {
            return Err(Error::InvalidGysin(format!(
                "multiplicity matrix should be {}×{}",
                target.components, source.components
            )));
        }
        if multiplicity.iter().flatten().any(|&m| m < 0) {
            return Err(Error::InvalidGysin("negative multiplicity".into()));
        }
        for (&(i, j), maps) in &pullbacks {
            if i.count_ones() != j.count_ones() {
                return Err(Error::InvalidGysin(format!("pullback ({i:#b}, {j:#b}) changes codimension")));
            }
            for (&k, m) in maps {
                let (rows, cols) = (source.rank(j, k), target.rank(i, k));
                if m.rows() != rows || m.cols() != cols {
                    return Err(Error::InvalidGysin(format!(
                        "pullback ({i:#b}, {j:#b}) in degree {k} should be {rows}×{cols}"
                    )));
                }
            }
        }
        let f = GysinMorphismDatum { source, target, multiplicity, pullbacks };
        let lo = *f.target.rows().start().min(f.source.rows().start());
        let hi = *f.target.rows().end().max(f.source.rows().end());
        for q in lo..=hi {
            f.gysin_map(q)?;
        }
        Ok(f)
    }

    /// `det M_f[I, J]`, with `det(∅) = 1`.
    pub fn minor(&self, i: u32, j: u32) -> i64 {
        let rows: Vec<usize> = members(i).collect();
        let cols: Vec<usize> = members(j).collect();
        let m = Matrix::from_i64(
            Ring::Integers,
            &rows.iter().map(|&r| cols.iter().map(|&c| self.multiplicity[r][c]).collect()).collect::<Vec<_>>(),
        );
        if rows.is_empty() {
            return 1;
        }
        let d = m.determinant().expect("square minor");
        i64::try_from(d.to_integer()).expect("small multiplicities")
    }

    /// `G^q(X̄, D) → G^q(X̄', D')` with block `(J, I)` equal to `det M_f[I, J] · f*_{IJ}`.
    pub fn gysin_map(&self, q: i64) -> Result<ChainMap> {
        let ring = self.target.ring;
        let src = self.target.gysin_complex(q);
        let tgt = self.source.gysin_complex(q);
        let n = self.target.components.max(self.source.components) as i64;
        let src = src.widened(-n, 0);
        let tgt = tgt.widened(-n, 0);
        let maps = (-n..=0)
            .map(|p| {
                let k = self.target.degree_of(q, p);
                let sb = self.target.blocks(q, p);
                let tb = self.source.blocks(q, p);
                let mut m = Matrix::zeros(ring, tgt.dim(p), src.dim(p));
                for &(i, c0, _) in &sb {
                    for &(j, r0, _) in &tb {
                        let det = self.minor(i, j);
                        if det == 0 {
                            continue;
                        }
                        if let Some(f) = self.pullbacks.get(&(i, j)).and_then(|f| f.get(&k)) {
                            m.set_block(r0, c0, &f.scale(&ring.from_i64(det)));
                        }
                    }
                }
                m
            })
            .collect();
        ChainMap::new(src, tgt, maps).map_err(|e| Error::InvalidGysin(format!("row {q}: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ModulePresentation;

    fn ranks(v: &[(i64, usize)]) -> Ranks {
        v.iter().copied().collect()
    }

    fn m(ring: Ring, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64(ring, rows)
    }

    /// ℙ¹ × ℙ¹ with two lines of each ruling.
    pub(crate) fn p1p1_four_lines() -> GysinDatum {
        let z = Ring::Integers;
        let line = ranks(&[(0, 1), (2, 1)]);
        let mut strata = BTreeMap::new();
        strata.insert(0, ranks(&[(0, 1), (2, 2), (4, 1)]));
        for i in 0..4 {
            strata.insert(1 << i, line.clone());
        }
        for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            strata.insert((1 << a) | (1 << b), ranks(&[(0, 1)]));
        }
        let mut gysin = BTreeMap::new();
        for i in 0..4 {
            let class = if i < 2 { vec![vec![1], vec![0]] } else { vec![vec![0], vec![1]] };
            gysin.insert((1u32 << i, i), BTreeMap::from([(0, m(z, &class)), (2, m(z, &[vec![1]]))]));
        }
        for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            let mask = (1u32 << a) | (1 << b);
            gysin.insert((mask, a), BTreeMap::from([(0, m(z, &[vec![1]]))]));
            gysin.insert((mask, b), BTreeMap::from([(0, m(z, &[vec![1]]))]));
        }
        GysinDatum::new(z, GysinMode::Complex, 4, strata, gysin).unwrap()
    }

    #[test]
    fn four_lines_rows() {
        let g = p1p1_four_lines();
        let r2 = g.gysin_complex(2);
        assert_eq!(r2.dim(-1), 4);
        assert_eq!(r2.dim(0), 2);
        assert_eq!(r2.cohomology(-1), ModulePresentation::free(2));
        assert_eq!(r2.cohomology(0), ModulePresentation::zero());
        let r4 = g.gysin_complex(4);
        assert_eq!((r4.dim(-2), r4.dim(-1), r4.dim(0)), (4, 4, 1));
        assert_eq!(r4.cohomology(-2), ModulePresentation::free(1));
        assert_eq!(r4.cohomology(-1), ModulePresentation::zero());
        assert_eq!(r4.cohomology(0), ModulePresentation::zero());
        assert_eq!(g.gysin_complex(0).cohomology(0), ModulePresentation::free(1));
    }

    #[test]
    fn non_complex_rows_are_rejected() {
        let z = Ring::Integers;
        let strata = BTreeMap::from([
            (0, ranks(&[(4, 1)])),
            (1, ranks(&[(2, 1)])),
            (2, ranks(&[(2, 1)])),
            (3, ranks(&[(0, 1)])),
        ]);
        let one = || BTreeMap::from([(0, m(z, &[vec![1]]))]);
        let gysin = BTreeMap::from([
            ((1u32, 0), BTreeMap::from([(2, m(z, &[vec![1]]))])),
            ((2u32, 1), BTreeMap::from([(2, m(z, &[vec![2]]))])),
            ((3u32, 0), one()),
            ((3u32, 1), one()),
        ]);
        let r = GysinDatum::new(z, GysinMode::Complex, 2, strata, gysin);
        assert!(matches!(r, Err(Error::InvalidGysin(_))));
        assert!(
            GysinDatum::new(z, GysinMode::Real, 0, BTreeMap::from([(0, ranks(&[(0, 1)]))]), BTreeMap::new()).is_err()
        );
    }

    #[test]
    fn empty_boundary() {
        let z = Ring::Integers;
        let g =
            GysinDatum::new(z, GysinMode::Complex, 0, BTreeMap::from([(0, ranks(&[(0, 1), (2, 1)]))]), BTreeMap::new())
                .unwrap();
        assert_eq!(g.gysin_complex(2), CochainComplex::concentrated(z, 0, 1));
        assert_eq!(g.gysin_complex(1).dim(0), 0);
    }

    #[test]
    fn real_cylinder() {
        let f2 = Ring::prime_field(2).unwrap();
        let strata = BTreeMap::from([(0, ranks(&[(0, 1), (1, 2), (2, 1)])), (1, ranks(&[(0, 1), (1, 1)]))]);
        let gysin =
            BTreeMap::from([((1u32, 0), BTreeMap::from([(0, m(f2, &[vec![1], vec![0]])), (1, m(f2, &[vec![1]]))]))]);
        let g = GysinDatum::new(f2, GysinMode::Real, 1, strata, gysin).unwrap();
        let r1 = g.gysin_complex(1);
        assert_eq!(r1.cohomology(0), ModulePresentation::free(1));
        assert_eq!(r1.cohomology(-1), ModulePresentation::zero());
        let r2 = g.gysin_complex(2);
        assert_eq!(r2.cohomology(-1), ModulePresentation::zero());
        assert_eq!(r2.cohomology(0), ModulePresentation::zero());
    }

    #[test]
    fn identity_morphism_and_minors() {
        let g = p1p1_four_lines();
        let z = g.ring();
        let mut mult = vec![vec![0; 4]; 4];
        for (i, row) in mult.iter_mut().enumerate() {
            row[i] = 1;
        }
        let pullbacks = g
            .strata()
            .iter()
            .map(|(&mask, r)| {
                ((mask, mask), r.iter().map(|(&k, &n)| (k, Matrix::identity(z, n))).collect::<BTreeMap<_, _>>())
            })
            .collect();
        let f = GysinMorphismDatum::new(g.clone(), g.clone(), mult, pullbacks).unwrap();
        for q in g.rows() {
            assert_eq!(f.gysin_map(q).unwrap(), ChainMap::identity(&g.gysin_complex(q).widened(-4, 0)));
        }
        assert_eq!(f.minor(0b0101, 0b0101), 1);
        assert_eq!(f.minor(0b0101, 0b0011), 0);
        assert_eq!(f.minor(0, 0), 1);
    }

    #[test]
    fn multiplicities_scale_pullbacks() {
        // ℙ¹ with one point, pulled back along z ↦ z² so the point has multiplicity 2.
        let z = Ring::Integers;
        let strata = BTreeMap::from([(0, ranks(&[(0, 1), (2, 1)])), (1, ranks(&[(0, 1)]))]);
        let gysin = BTreeMap::from([((1u32, 0), BTreeMap::from([(0, m(z, &[vec![1]]))]))]);
        let g = GysinDatum::new(z, GysinMode::Complex, 1, strata, gysin).unwrap();
        let pullbacks = BTreeMap::from([
            ((0u32, 0u32), BTreeMap::from([(0, m(z, &[vec![1]])), (2, m(z, &[vec![2]]))])),
            ((1u32, 1u32), BTreeMap::from([(0, m(z, &[vec![1]]))])),
        ]);
        let f = GysinMorphismDatum::new(g.clone(), g.clone(), vec![vec![2]], pullbacks.clone()).unwrap();
        assert_eq!(f.gysin_map(2).unwrap().f(-1), m(z, &[vec![2]]));
        // Multiplicity 1 breaks commutativity with the degree 2 pullback.
        assert!(GysinMorphismDatum::new(g.clone(), g, vec![vec![1]], pullbacks).is_err());
    }
}
