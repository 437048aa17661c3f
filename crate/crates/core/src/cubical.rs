//! Cubical diagrams of filtered complexes, the simple functors `s` and `s^r`,
//! and augmented diagrams.
//!
//! Vertices are nonempty subsets `α ⊆ {0, …, size−1}` encoded as bitmasks. The
//! weight of `α` is `|α| − 1`.

use std::collections::BTreeMap;

use crate::complex::{hull, sign, ChainMap, CochainComplex};
use crate::error::{Error, Result};
use crate::filtered::{is_er_quasi_iso, FilteredComplex, FilteredMap};
use crate::linalg::{presented_cohomology, Matrix, ModulePresentation, Presented, Ring, Submodule};
use crate::spectral::{a_range, compute_page, page, page_map, SsPage};

pub fn weight(mask: u32) -> i64 {
    mask.count_ones() as i64 - 1
}

/// `(−1)^{#{i ∈ α : i < j}}` for the coface `α → α ∪ {j}`.
pub fn coface_sign(mask: u32, j: usize) -> i64 {
    sign((mask & ((1u32 << j) - 1)).count_ones() as i64)
}

#[derive(Clone, Debug)]
pub struct CubicalDiagram {
    size: usize,
    ring: Ring,
    vertices: BTreeMap<u32, FilteredComplex>,
    /// `(α, j)` ↦ coface `α → α ∪ {j}`.
    cofaces: BTreeMap<(u32, usize), FilteredMap>,
}

impl CubicalDiagram {
    /// Missing vertices are zero and missing cofaces are zero maps.
    pub fn new(
        size: usize,
        vertices: Vec<(u32, FilteredComplex)>,
        cofaces: Vec<(u32, usize, FilteredMap)>,
    ) -> Result<CubicalDiagram> {
        if size == 0 || size > 16 {
            return Err(Error::InvalidDiagram(format!("unsupported cube size {size}")));
        }
        let ring = vertices
            .first()
            .map(|v| v.1.ring())
            .ok_or_else(|| Error::InvalidDiagram("diagram without vertices".into()))?;
        let full = (1u32 << size) - 1;
        let mut vs = BTreeMap::new();
        for (mask, fk) in vertices {
            if mask == 0 || mask & !full != 0 {
                return Err(Error::InvalidDiagram(format!("vertex mask {mask:#b} outside the cube")));
            }
            if fk.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), fk.ring().to_string()));
            }
            if vs.insert(mask, fk).is_some() {
                return Err(Error::InvalidDiagram(format!("vertex {mask:#b} given twice")));
            }
        }
        let mut cs = BTreeMap::new();
        for (mask, j, f) in cofaces {
            if j >= size || mask & (1 << j) != 0 || mask == 0 {
                return Err(Error::InvalidDiagram(format!("no coface {mask:#b} + {j}")));
            }
            let (Some(src), Some(tgt)) = (vs.get(&mask), vs.get(&(mask | (1 << j)))) else {
                return Err(Error::InvalidDiagram(format!("coface {mask:#b} + {j} touches a missing vertex")));
            };
            if !f.source().same_as(src) || !f.target().same_as(tgt) {
                return Err(Error::InvalidDiagram(format!("coface {mask:#b} + {j} has the wrong endpoints")));
            }
            cs.insert((mask, j), f);
        }
        let d = CubicalDiagram { size, ring, vertices: vs, cofaces: cs };
        d.check_commutes()?;
        Ok(d)
    }

    /// Diagram of plain complexes, each with its trivial filtration.
    pub fn plain(
        size: usize,
        vertices: Vec<(u32, CochainComplex)>,
        cofaces: Vec<(u32, usize, ChainMap)>,
    ) -> Result<CubicalDiagram> {
        let vs: Vec<(u32, FilteredComplex)> =
            vertices.into_iter().map(|(m, k)| (m, FilteredComplex::trivial(&k))).collect();
        let find = |m: u32| vs.iter().find(|(x, _)| *x == m).map(|(_, v)| v.clone());
        let mut cs = Vec::new();
        for (mask, j, f) in cofaces {
            let (Some(s), Some(t)) = (find(mask), find(mask | (1 << j))) else {
                return Err(Error::InvalidDiagram(format!("coface {mask:#b} + {j} touches a missing vertex")));
            };
            cs.push((mask, j, FilteredMap::new(s, t, f)?));
        }
        CubicalDiagram::new(size, vs, cs)
    }

    fn check_commutes(&self) -> Result<()> {
        for &mask in self.vertices.keys() {
            for j in 0..self.size {
                for k in j + 1..self.size {
                    if mask & (1 << j) != 0 || mask & (1 << k) != 0 {
                        continue;
                    }
                    let top = mask | (1 << j) | (1 << k);
                    for n in self.vertex(mask).carrier().degrees() {
                        let a = self.coface_matrix(mask | (1 << j), k, n).mul(&self.coface_matrix(mask, j, n))?;
                        let b = self.coface_matrix(mask | (1 << k), j, n).mul(&self.coface_matrix(mask, k, n))?;
                        if a != b {
                            return Err(Error::InvalidDiagram(format!(
                                "square {mask:#b} → {top:#b} does not commute in degree {n}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn vertices(&self) -> impl Iterator<Item = (u32, &FilteredComplex)> {
        self.vertices.iter().map(|(&m, v)| (m, v))
    }

    pub fn cofaces(&self) -> impl Iterator<Item = (u32, usize, &FilteredMap)> {
        self.cofaces.iter().map(|(&(m, j), f)| (m, j, f))
    }

    /// The vertex at `mask`, the zero complex when absent.
    pub fn vertex(&self, mask: u32) -> FilteredComplex {
        self.vertices.get(&mask).cloned().unwrap_or_else(|| FilteredComplex::trivial(&CochainComplex::zero(self.ring)))
    }

    /// Coface matrix `α → α ∪ {j}` in degree `n` (zero when absent).
    pub fn coface_matrix(&self, mask: u32, j: usize, n: i64) -> Matrix {
        match self.cofaces.get(&(mask, j)) {
            Some(f) => f.carrier().f(n),
            None => Matrix::zeros(
                self.ring,
                self.vertex(mask | (1 << j)).carrier().dim(n),
                self.vertex(mask).carrier().dim(n),
            ),
        }
    }

    fn masks(&self) -> Vec<u32> {
        self.vertices.keys().copied().collect()
    }

    /// Degree interval of the simple complex.
    fn total_support(&self) -> (i64, i64) {
        self.vertices.iter().fold((0, -1), |acc, (&m, v)| {
            let s = v.carrier().support().map(|(a, b)| (a + weight(m), b + weight(m)));
            hull(if acc.1 < acc.0 { None } else { Some(acc) }, s)
        })
    }

    /// Offsets of each vertex summand inside `s(D)^m`, in ascending mask order.
    fn offsets(&self, m: i64) -> Vec<(u32, usize, usize)> {
        let mut off = 0;
        self.masks()
            .into_iter()
            .map(|mask| {
                let d = self.vertices[&mask].carrier().dim(m - weight(mask));
                let e = (mask, off, d);
                off += d;
                e
            })
            .collect()
    }

    fn simple_carrier(&self) -> CochainComplex {
        let ring = self.ring;
        let (lo, hi) = self.total_support();
        CochainComplex::from_fn(
            ring,
            lo,
            hi,
            |m| self.offsets(m).iter().map(|e| e.2).sum(),
            |m| {
                let src = self.offsets(m);
                let tgt = self.offsets(m + 1);
                let rows = tgt.iter().map(|e| e.2).sum();
                let cols = src.iter().map(|e| e.2).sum();
                let mut out = Matrix::zeros(ring, rows, cols);
                for &(mask, c0, _) in &src {
                    let w = weight(mask);
                    let k = self.vertices[&mask].carrier();
                    let (_, r0, _) = *tgt.iter().find(|e| e.0 == mask).expect("same masks");
                    out.set_block(r0, c0, &k.d(m - w).scale(&ring.from_i64(sign(w))));
                    for j in 0..self.size {
                        let beta = mask | (1 << j);
                        if beta == mask || !self.vertices.contains_key(&beta) {
                            continue;
                        }
                        let (_, r1, _) = *tgt.iter().find(|e| e.0 == beta).expect("same masks");
                        let f = self.coface_matrix(mask, j, m - w).scale(&ring.from_i64(coface_sign(mask, j)));
                        out.set_block(r1, c0, &f);
                    }
                }
                out
            },
        )
        .expect("simple differential squares to zero")
    }

    /// `s(D)`, forgetting filtrations.
    pub fn simple(&self) -> CochainComplex {
        self.simple_carrier()
    }

    /// `s^r(D)` with `W(r)_p = ⊕_α W_{p + r·w(α)} K^α`.
    pub fn simple_r(&self, r: i64) -> FilteredComplex {
        let ring = self.ring;
        let carrier = self.simple_carrier();
        let (pmin, pmax) = self.vertices.iter().fold((i64::MAX, i64::MIN), |(lo, hi), (&mask, v)| {
            let (a, b) = v.bounds();
            (lo.min(a - r * weight(mask)), hi.max(b - r * weight(mask)))
        });
        FilteredComplex::from_fn(carrier, pmin, pmax, |p, m| {
            let mut acc = Submodule::zero(ring, 0);
            for mask in self.masks() {
                let w = weight(mask);
                acc = acc.direct_sum(&self.vertices[&mask].w(p + r * w, m - w));
            }
            acc
        })
        .expect("s^r is a filtered complex")
    }

    /// Décalage at every vertex, cofaces unchanged.
    pub fn decalage(&self) -> CubicalDiagram {
        CubicalDiagram {
            size: self.size,
            ring: self.ring,
            vertices: self.vertices.iter().map(|(&m, v)| (m, v.decalage())).collect(),
            cofaces: self.cofaces.iter().map(|(&k, f)| (k, f.decalage())).collect(),
        }
    }
}

/// Cohomology of the total object `⊕_α E_r^{(a,q) − w(α)(r, 1−r)}(K^α)` with
/// differential `(−1)^w d_r + Σ ε·E_r(coface)`, at every position with a nonzero term.
pub fn page_simple_cohomology(d: &CubicalDiagram, r: usize) -> Result<BTreeMap<(i64, i64), ModulePresentation>> {
    let ring = d.ring;
    let ri = r as i64;
    let masks = d.masks();
    let pages: BTreeMap<u32, SsPage> = masks.iter().map(|&m| (m, page(&d.vertices[&m], r))).collect();
    let mut maps = BTreeMap::new();
    for (&(mask, j), f) in &d.cofaces {
        maps.insert((mask, j), page_map(f, r)?);
    }
    let local = |mask: u32, a: i64, q: i64| {
        let w = weight(mask);
        (a - ri * w, q - w * (1 - ri))
    };
    let presented = |mask: u32, (a, q): (i64, i64)| -> Presented {
        pages[&mask].quotient(a, q).map(|c| c.as_presented()).unwrap_or_else(|| Presented::zero(ring))
    };
    // Positions of the total object that can be nonzero.
    let mut positions = std::collections::BTreeSet::new();
    for (&mask, pg) in &pages {
        let w = weight(mask);
        for (a, q) in pg.summary().cells.keys().copied() {
            positions.insert((a + ri * w, q + w * (1 - ri)));
        }
    }
    let total = |pos: (i64, i64)| -> (Presented, Vec<(u32, usize, usize)>) {
        let mut acc = Presented::zero(ring);
        let mut offs = Vec::new();
        for &mask in &masks {
            let p = presented(mask, local(mask, pos.0, pos.1));
            offs.push((mask, acc.generators, p.generators));
            acc = acc.direct_sum(&p);
        }
        (acc, offs)
    };
    let diff = |pos: (i64, i64)| -> (Matrix, Presented, Presented) {
        let (src, so) = total(pos);
        let tpos = (pos.0 + ri, pos.1 + 1 - ri);
        let (tgt, to) = total(tpos);
        let mut out = Matrix::zeros(ring, tgt.generators, src.generators);
        for &(mask, c0, cn) in &so {
            if cn == 0 {
                continue;
            }
            let w = weight(mask);
            let (la, lq) = local(mask, pos.0, pos.1);
            let (_, r0, rn) = *to.iter().find(|e| e.0 == mask).expect("same masks");
            if rn > 0 {
                if let Some(m) = pages[&mask].differential(la, lq) {
                    out.set_block(r0, c0, &m.scale(&ring.from_i64(sign(w))));
                }
            }
            for j in 0..d.size {
                let beta = mask | (1 << j);
                if beta == mask || !d.vertices.contains_key(&beta) {
                    continue;
                }
                let (_, r1, rn1) = *to.iter().find(|e| e.0 == beta).expect("same masks");
                if rn1 == 0 {
                    continue;
                }
                if let Some((_, m, _)) = maps.get(&(mask, j)).and_then(|pm| pm.get(&(la, lq))) {
                    out.set_block(r1, c0, &m.scale(&ring.from_i64(coface_sign(mask, j))));
                }
            }
        }
        (out, src, tgt)
    };
    let mut out = BTreeMap::new();
    for &pos in &positions {
        let (dout, here, tgt) = diff(pos);
        let spos = (pos.0 - ri, pos.1 + ri - 1);
        let (din, src, _) = diff(spos);
        let h = presented_cohomology(Some((&src, &din)), &here, Some((&dout, &tgt)))?;
        out.insert(pos, h.presentation().clone());
    }
    Ok(out)
}

/// `E_{r+1}(s^r D)` cells at the given positions, for comparison with [`page_simple_cohomology`].
pub fn simple_page_cells(d: &CubicalDiagram, r: usize) -> BTreeMap<(i64, i64), ModulePresentation> {
    let s = d.simple_r(r as i64);
    let pg = compute_page(&s, r + 1, a_range(&s));
    pg.summary().cells
}

/// A diagram with maps from a base complex into each singleton vertex.
#[derive(Clone, Debug)]
pub struct AugmentedDiagram {
    base: FilteredComplex,
    diagram: CubicalDiagram,
    augmentations: BTreeMap<usize, FilteredMap>,
}

impl AugmentedDiagram {
    pub fn new(
        base: FilteredComplex,
        diagram: CubicalDiagram,
        augmentations: Vec<(usize, FilteredMap)>,
    ) -> Result<AugmentedDiagram> {
        if base.ring() != diagram.ring {
            return Err(Error::RingMismatch(base.ring().to_string(), diagram.ring.to_string()));
        }
        let mut augs = BTreeMap::new();
        for (j, f) in augmentations {
            if j >= diagram.size {
                return Err(Error::InvalidAugmentation(format!("no singleton {j}")));
            }
            if !f.source().same_as(&base) || !f.target().same_as(&diagram.vertex(1 << j)) {
                return Err(Error::InvalidAugmentation(format!("augmentation {j} has the wrong endpoints")));
            }
            augs.insert(j, f);
        }
        let a = AugmentedDiagram { base, diagram, augmentations: augs };
        for j in 0..a.diagram.size {
            for k in j + 1..a.diagram.size {
                for n in a.base.carrier().degrees() {
                    let x = a.diagram.coface_matrix(1 << j, k, n).mul(&a.aug_matrix(j, n))?;
                    let y = a.diagram.coface_matrix(1 << k, j, n).mul(&a.aug_matrix(k, n))?;
                    if x != y {
                        return Err(Error::InvalidAugmentation(format!(
                            "augmentations {j}, {k} disagree on vertex {:#b} in degree {n}",
                            (1 << j) | (1 << k)
                        )));
                    }
                }
            }
        }
        Ok(a)
    }

    /// Plain complexes, trivial filtrations everywhere.
    pub fn plain(base: CochainComplex, diagram: CubicalDiagram, augmentations: Vec<(usize, ChainMap)>) -> Result<Self> {
        let fb = FilteredComplex::trivial(&base);
        let augs = augmentations
            .into_iter()
            .map(|(j, f)| Ok((j, FilteredMap::new(fb.clone(), diagram.vertex(1 << j), f)?)))
            .collect::<Result<Vec<_>>>()?;
        AugmentedDiagram::new(fb, diagram, augs)
    }

    pub fn base(&self) -> &FilteredComplex {
        &self.base
    }

    pub fn diagram(&self) -> &CubicalDiagram {
        &self.diagram
    }

    fn aug_matrix(&self, j: usize, n: i64) -> Matrix {
        match self.augmentations.get(&j) {
            Some(f) => f.carrier().f(n),
            None => Matrix::zeros(
                self.base.ring(),
                self.diagram.vertex(1 << j).carrier().dim(n),
                self.base.carrier().dim(n),
            ),
        }
    }

    /// `x ↦ Σ_j aug_j(x)` into `s^r(D)`, as a filtered map.
    pub fn augmentation_map(&self, r: i64) -> Result<FilteredMap> {
        let target = self.diagram.simple_r(r);
        let ring = self.base.ring();
        let cm = ChainMap::from_fn(self.base.carrier().clone(), target.carrier().clone(), |n| {
            let offs = self.diagram.offsets(n);
            let rows = offs.iter().map(|e| e.2).sum();
            let mut m = Matrix::zeros(ring, rows, self.base.carrier().dim(n));
            for &(mask, r0, len) in &offs {
                if mask.count_ones() == 1 && len > 0 {
                    m.set_block(r0, 0, &self.aug_matrix(mask.trailing_zeros() as usize, n));
                }
            }
            m
        })?;
        FilteredMap::new(self.base.clone(), target, cm)
    }

    /// Whether `base → s^r(D)` is an `E_r`-quasi-isomorphism.
    pub fn is_descent_acyclic(&self, r: usize) -> Result<bool> {
        is_er_quasi_iso(&self.augmentation_map(r as i64)?, r)
    }

    /// The cone of the augmentation into the plain simple complex.
    pub fn cone(&self) -> Result<CochainComplex> {
        Ok(crate::complex::cone(self.augmentation_map(0)?.carrier()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtered::FilteredComplex;
    use crate::generate::{random_filtered, random_square, Shape};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z() -> Ring {
        Ring::Integers
    }

    #[test]
    fn coface_signs() {
        assert_eq!(coface_sign(0b001, 1), -1);
        assert_eq!(coface_sign(0b010, 0), 1);
        assert_eq!(coface_sign(0b011, 2), 1);
        assert_eq!(coface_sign(0b101, 1), -1);
    }

    #[test]
    fn single_vertex_is_unchanged() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fk = random_filtered(&mut rng, z(), Shape::default());
        let d = CubicalDiagram::new(1, vec![(1, fk.clone())], vec![]).unwrap();
        for r in 0..3 {
            assert!(d.simple_r(r).same_as(&fk));
        }
    }

    #[test]
    fn zero_diagram_is_zero() {
        let zc = CochainComplex::zero(z());
        let d = CubicalDiagram::plain(2, vec![(1, zc.clone()), (2, zc.clone()), (3, zc)], vec![]).unwrap();
        assert!(d.simple().is_zero());
    }

    #[test]
    fn edge_with_trivial_filtrations() {
        // K₀ → K₀₁ with both in degree 0; w(α) = 1 puts K₀₁ in total degree 1 entering at p = −1.
        let k = CochainComplex::concentrated(z(), 0, 1);
        let f = ChainMap::identity(&k);
        let d = CubicalDiagram::plain(2, vec![(1, k.clone()), (3, k)], vec![(1, 1, f)]).unwrap();
        let s1 = d.simple_r(1);
        assert!(s1.w(-1, 1).is_full());
        assert!(s1.w(-2, 1).is_zero());
        assert!(s1.w(0, 0).is_full());
        assert!(s1.w(-1, 0).is_zero());
        assert!(d.simple().is_acyclic());
    }

    #[test]
    fn dec_simple_exchange_on_random_squares() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let d = random_square(&mut rng, z(), Shape::default());
            let lhs = d.simple_r(2).decalage();
            let rhs = d.decalage().simple_r(1);
            assert!(lhs.same_as(&rhs));
        }
    }

    #[test]
    fn page_simple_exchange_on_random_squares() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let d = random_square(&mut rng, z(), Shape::default());
            for r in 0..2 {
                let lhs = page_simple_cohomology(&d, r).unwrap();
                let rhs = simple_page_cells(&d, r);
                let nonzero: BTreeMap<_, _> = lhs.into_iter().filter(|(_, m)| !m.is_zero()).collect();
                assert_eq!(nonzero, rhs, "r = {r}");
            }
        }
    }

    #[test]
    fn identity_augmentation_is_acyclic() {
        let k = CochainComplex::with_zero_differential(z(), 0, vec![1, 2]);
        let d = CubicalDiagram::plain(1, vec![(1, k.clone())], vec![]).unwrap();
        let a = AugmentedDiagram::plain(k.clone(), d, vec![(0, ChainMap::identity(&k))]).unwrap();
        for r in 0..3 {
            assert!(a.is_descent_acyclic(r).unwrap());
        }
        let fk = FilteredComplex::trivial(&k);
        assert!(a.base().same_as(&fk));
    }
}
