//! Bounded cochain complexes of based free modules and chain maps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{image, kernel, Matrix, ModulePresentation, Quotient, Ring, Submodule};

/// `K^start → K^{start+1} → …` with `dims[i] = rank K^{start+i}`.
///
/// `diffs[i]` is `d: K^{start+i} → K^{start+i+1}`; the last one always maps to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    ring: Ring,
    start: i64,
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
}

impl CochainComplex {
    /// Builds and validates a complex. `diffs` has one matrix per degree except the last.
    pub fn new(ring: Ring, start: i64, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<CochainComplex> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::InvalidComplex(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            let n = start + i as i64;
            if d.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), d.ring().to_string()));
            }
            if d.cols() != dims[i] || d.rows() != dims[i + 1] {
                return Err(Error::InvalidComplex(format!(
                    "d({n}) is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].mul(&diffs[i - 1])?.is_zero() {
                return Err(Error::InvalidComplex(format!("d∘d ≠ 0 at degree {}", start + i as i64 - 1)));
            }
        }
        Ok(CochainComplex { ring, start, dims, diffs })
    }

    pub fn zero(ring: Ring) -> CochainComplex {
        CochainComplex { ring, start: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    /// A single free module of rank `dim` in degree `n`.
    pub fn concentrated(ring: Ring, n: i64, dim: usize) -> CochainComplex {
        CochainComplex { ring, start: n, dims: vec![dim], diffs: Vec::new() }
    }

    /// Complex with the given ranks and all differentials zero.
    pub fn with_zero_differential(ring: Ring, start: i64, dims: Vec<usize>) -> CochainComplex {
        let diffs = dims.windows(2).map(|w| Matrix::zeros(ring, w[1], w[0])).collect();
        CochainComplex { ring, start, dims, diffs }
    }

    /// Builds a complex over `[lo, hi]` from callbacks for ranks and differentials.
    pub fn from_fn(
        ring: Ring,
        lo: i64,
        hi: i64,
        dim: impl Fn(i64) -> usize,
        d: impl Fn(i64) -> Matrix,
    ) -> Result<CochainComplex> {
        if hi < lo {
            return Ok(CochainComplex::zero(ring));
        }
        let dims: Vec<usize> = (lo..=hi).map(&dim).collect();
        let diffs = (lo..hi).map(&d).collect();
        CochainComplex::new(ring, lo, dims, diffs)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Degree interval `[n0, n1]` carrying the stored modules, `None` when empty.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.dims.is_empty() {
            None
        } else {
            Some((self.start, self.start + self.dims.len() as i64 - 1))
        }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        match self.support() {
            Some((a, b)) => a..=b,
            #[allow(clippy::reversed_empty_ranges)]
            None => 0..=-1,
        }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |i| self.dims[i])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn index(&self, n: i64) -> Option<usize> {
        let i = n - self.start;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    /// `d(n): K^n → K^{n+1}`, the zero matrix of the right shape outside the stored range.
    pub fn d(&self, n: i64) -> Matrix {
        match self.index(n) {
            Some(i) if i < self.diffs.len() => self.diffs[i].clone(),
            _ => Matrix::zeros(self.ring, self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Same complex stored over a larger interval (zero modules added).
    pub fn widened(&self, lo: i64, hi: i64) -> CochainComplex {
        let (lo, hi) = match self.support() {
            Some((a, b)) => (lo.min(a), hi.max(b)),
            None => (lo, hi),
        };
        CochainComplex::from_fn(self.ring, lo, hi, |n| self.dim(n), |n| self.d(n)).expect("widening keeps d² = 0")
    }

    pub fn cycles(&self, n: i64) -> Submodule {
        kernel(&self.d(n))
    }

    pub fn boundaries(&self, n: i64) -> Submodule {
        image(&self.d(n - 1))
    }

    pub fn cohomology_quotient(&self, n: i64) -> Quotient {
        Quotient::new(&self.cycles(n), &self.boundaries(n)).expect("boundaries are cycles")
    }

    pub fn cohomology(&self, n: i64) -> ModulePresentation {
        self.cohomology_quotient(n).presentation().clone()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|n| self.cohomology(n).is_zero())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| sign(n) * self.dim(n) as i64).sum()
    }

    /// `K[r]^n = K^{n+r}` with differential `(−1)^r d`.
    pub fn shift(&self, r: i64) -> CochainComplex {
        let s = self.ring.from_i64(sign(r));
        CochainComplex {
            ring: self.ring,
            start: self.start - r,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&s)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &CochainComplex) -> Result<CochainComplex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        let (lo, hi) = hull(self.support(), other.support());
        CochainComplex::from_fn(
            self.ring,
            lo,
            hi,
            |n| self.dim(n) + other.dim(n),
            |n| Matrix::block_diag(self.ring, &[self.d(n), other.d(n)]),
        )
    }

    pub fn change_ring(&self, ring: Ring) -> Result<CochainComplex> {
        let diffs = self.diffs.iter().map(|d| d.change_ring(ring)).collect();
        CochainComplex::new(ring, self.start, self.dims.clone(), diffs)
    }
}

pub(crate) fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn hull(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> (i64, i64) {
    match (a, b) {
        (Some((a0, a1)), Some((b0, b1))) => (a0.min(b0), a1.max(b1)),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => (0, -1),
    }
}

/// Degreewise matrices `f(n): K^n → L^n` commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    /// Indexed by source degree; missing degrees are zero.
    maps: Vec<Matrix>,
}

impl ChainMap {
    /// `maps[i]` is `f` in degree `source.start + i`, over the source support.
    pub fn new(source: CochainComplex, target: CochainComplex, maps: Vec<Matrix>) -> Result<ChainMap> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(source.ring.to_string(), target.ring.to_string()));
        }
        if maps.len() != source.dims.len() {
            return Err(Error::InvalidChainMap(format!(
                "{} matrices for {} source degrees",
                maps.len(),
                source.dims.len()
            )));
        }
        let f = ChainMap { source, target, maps };
        for n in f.source.degrees() {
            let m = &f.maps[(n - f.source.start) as usize];
            if m.ring() != f.source.ring {
                return Err(Error::RingMismatch(f.source.ring.to_string(), m.ring().to_string()));
            }
            if m.cols() != f.source.dim(n) || m.rows() != f.target.dim(n) {
                return Err(Error::InvalidChainMap(format!(
                    "f({n}) is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    f.target.dim(n),
                    f.source.dim(n)
                )));
            }
        }
        let (lo, hi) = hull(f.source.support(), f.target.support());
        for n in lo..=hi {
            let left = f.f(n + 1).mul(&f.source.d(n))?;
            let right = f.target.d(n).mul(&f.f(n))?;
            if left != right {
                return Err(Error::InvalidChainMap(format!("f∘d ≠ d∘f in degree {n}")));
            }
        }
        Ok(f)
    }

    pub fn from_fn(source: CochainComplex, target: CochainComplex, f: impl Fn(i64) -> Matrix) -> Result<ChainMap> {
        let maps = source.degrees().map(f).collect();
        ChainMap::new(source, target, maps)
    }

    pub fn identity(k: &CochainComplex) -> ChainMap {
        let maps = k.degrees().map(|n| Matrix::identity(k.ring, k.dim(n))).collect();
        ChainMap { source: k.clone(), target: k.clone(), maps }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> ChainMap {
        let maps = source.degrees().map(|n| Matrix::zeros(source.ring, target.dim(n), source.dim(n))).collect();
        ChainMap { source: source.clone(), target: target.clone(), maps }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn ring(&self) -> Ring {
        self.source.ring
    }

    pub fn f(&self, n: i64) -> Matrix {
        match self.source.index(n) {
            Some(i) => self.maps[i].clone(),
            None => Matrix::zeros(self.source.ring, self.target.dim(n), self.source.dim(n)),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.source {
            return Err(Error::InvalidChainMap("composition of non-composable maps".into()));
        }
        let maps = self.source.degrees().map(|n| other.f(n).mul(&self.f(n))).collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { source: self.source.clone(), target: other.target.clone(), maps })
    }

    pub fn scale(&self, k: i64) -> ChainMap {
        let s = self.ring().from_i64(k);
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|m| m.scale(&s)).collect(),
        }
    }

    /// Matrix of `Hⁿ(f)` in the canonical presentation coordinates.
    pub fn induced_on_cohomology(&self, n: i64) -> Result<Matrix> {
        let hs = self.source.cohomology_quotient(n);
        let ht = self.target.cohomology_quotient(n);
        induced_matrix(&hs, &self.f(n), &ht)
    }

    /// Whether `Hⁿ(f)` is an isomorphism in every degree, decided by acyclicity of the cone.
    pub fn is_quasi_iso(&self) -> bool {
        cone(self).is_acyclic()
    }
}

/// Matrix of the map `src → tgt` of subquotients induced by `f` on representatives.
pub fn induced_matrix(src: &Quotient, f: &Matrix, tgt: &Quotient) -> Result<Matrix> {
    let ring = f.ring();
    let k = src.presentation().generators();
    let cols = (0..k)
        .map(|i| {
            let x = src.generator(i);
            tgt.coordinates(&f.apply(&x)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(ring, tgt.presentation().generators(), cols))
}

/// Mapping cone: `cone(f)^n = K^{n+1} ⊕ L^n`, `d = [[−d_K, 0], [−f, d_L]]`.
pub fn cone(f: &ChainMap) -> CochainComplex {
    let (k, l) = (&f.source, &f.target);
    let ring = k.ring;
    let ks = k.support().map(|(a, b)| (a - 1, b - 1));
    let (lo, hi) = hull(ks, l.support());
    CochainComplex::from_fn(
        ring,
        lo,
        hi,
        |n| k.dim(n + 1) + l.dim(n),
        |n| {
            let (a, b) = (k.dim(n + 1), l.dim(n));
            let (a2, b2) = (k.dim(n + 2), l.dim(n + 1));
            let mut m = Matrix::zeros(ring, a2 + b2, a + b);
            m.set_block(0, 0, &k.d(n + 1).neg());
            m.set_block(a2, 0, &f.f(n + 1).neg());
            m.set_block(a2, a, &l.d(n));
            m
        },
    )
    .expect("cone differential squares to zero")
}

/// Serialized form: `{support, dims, differentials}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRepr {
    /// `[lo, hi]`; `[0, -1]` for the zero complex.
    pub support: [i64; 2],
    pub dims: Vec<usize>,
    #[serde(default)]
    pub differentials: Vec<crate::io::MatrixRepr>,
}

impl ComplexRepr {
    pub fn from_complex(k: &CochainComplex) -> ComplexRepr {
        let (lo, hi) = (k.start, k.start + k.dims.len() as i64 - 1);
        ComplexRepr {
            support: [lo, hi],
            dims: k.dims.clone(),
            differentials: k.diffs.iter().map(crate::io::MatrixRepr::from_matrix).collect(),
        }
    }

    /// An empty differential list means all differentials are zero.
    pub fn to_complex(&self, ring: Ring) -> Result<CochainComplex> {
        let [lo, hi] = self.support;
        if hi - lo + 1 != self.dims.len() as i64 {
            return Err(Error::InvalidComplex(format!(
                "support [{lo}, {hi}] does not match {} ranks",
                self.dims.len()
            )));
        }
        if self.differentials.is_empty() {
            return Ok(CochainComplex::with_zero_differential(ring, lo, self.dims.clone()));
        }
        let diffs = self.differentials.iter().map(|m| m.to_matrix(ring)).collect::<Result<Vec<_>>>()?;
        CochainComplex::new(ring, lo, self.dims.clone(), diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z() -> Ring {
        Ring::Integers
    }

    fn sphere() -> CochainComplex {
        // 3 vertices, 3 edges, 2 triangles glued along their boundary.
        let d0 = Matrix::from_i64(z(), &[vec![-1, 1, 0], vec![0, -1, 1], vec![-1, 0, 1]]);
        let d1 = Matrix::from_i64(z(), &[vec![1, 1, -1], vec![1, 1, -1]]);
        CochainComplex::new(z(), 0, vec![3, 3, 2], vec![d0, d1]).unwrap()
    }

    #[test]
    fn circle_cohomology() {
        let c = CochainComplex::with_zero_differential(z(), 0, vec![1, 1]);
        assert_eq!(c.cohomology(0), ModulePresentation::free(1));
        assert_eq!(c.cohomology(1), ModulePresentation::free(1));
    }

    #[test]
    fn sphere_cohomology() {
        let s = sphere();
        assert_eq!(s.cohomology(0), ModulePresentation::free(1));
        assert_eq!(s.cohomology(1), ModulePresentation::zero());
        assert_eq!(s.cohomology(2), ModulePresentation::free(1));
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn rejects_nonzero_square() {
        let d = Matrix::from_i64(z(), &[vec![1]]);
        assert!(CochainComplex::new(z(), 0, vec![1, 1, 1], vec![d.clone(), d]).is_err());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let s = sphere();
        let id = ChainMap::identity(&s);
        assert!(cone(&id).is_acyclic());
        assert!(id.is_quasi_iso());
    }

    #[test]
    fn cone_of_zero_map_to_zero_is_shift() {
        let s = sphere();
        let f = ChainMap::zero(&s, &CochainComplex::zero(z()));
        assert_eq!(cone(&f), s.shift(1));
    }

    #[test]
    fn multiplication_by_two() {
        for (ring, quasi) in [(Ring::Integers, false), (Ring::Rationals, true)] {
            let k = CochainComplex::concentrated(ring, 0, 1);
            let f = ChainMap::new(k.clone(), k.clone(), vec![Matrix::from_i64(ring, &[vec![2]])]).unwrap();
            assert_eq!(f.is_quasi_iso(), quasi);
            let h = cone(&f);
            if !quasi {
                assert_eq!(h.cohomology(0), ModulePresentation { free_rank: 0, torsion: vec![2.into()] });
            }
        }
    }

    #[test]
    fn induced_map_on_sphere() {
        let s = sphere();
        let f = ChainMap::identity(&s).scale(-1);
        let m = f.induced_on_cohomology(2).unwrap();
        assert_eq!(m, Matrix::from_i64(z(), &[vec![-1]]));
    }

    #[test]
    fn invalid_chain_map() {
        let s = sphere();
        let maps = s.degrees().map(|n| {
            let mut m = Matrix::identity(z(), s.dim(n));
            if n == 0 {
                m.set(0, 0, z().from_i64(2));
            }
            m
        });
        assert!(ChainMap::new(s.clone(), s.clone(), maps.collect()).is_err());
    }

    proptest! {
        #[test]
        fn euler_characteristic_matches_cohomology(
            a in proptest::collection::vec(-2i64..=2, 12),
            b in proptest::collection::vec(-2i64..=2, 9),
        ) {
            // K⁰ = Q³ → K¹ = Q⁴ → K² = Q³ with d1·d0 = 0 forced by composing through a kernel.
            let q = Ring::Rationals;
            let d0 = Matrix::from_scalars(q, 4, 3, a.iter().map(|&x| q.from_i64(x)).collect());
            let m = Matrix::from_scalars(q, 3, 3, b.iter().map(|&x| q.from_i64(x)).collect());
            // d1 = m · P where P kills im d0: rows of P are a basis of the left kernel of d0.
            let left = kernel(&d0.transpose());
            let p = if left.rank() == 0 {
                Matrix::zeros(q, 0, 4)
            } else {
                left.generators()
            };
            let mut d1 = Matrix::zeros(q, 3, 4);
            let mp = m.block(0, 0, 3, p.rows()).mul(&p).unwrap();
            d1.set_block(0, 0, &mp);
            let k = CochainComplex::new(q, 0, vec![3, 4, 3], vec![d0, d1]).unwrap();
            let total: i64 = k.degrees().map(|n| sign(n) * k.cohomology(n).free_rank as i64).sum();
            prop_assert_eq!(total, k.euler_characteristic());
        }
    }
}
