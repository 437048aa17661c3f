use std::fmt;

use num::traits::Zero;

use super::hnf::{canonical_rows, echelonize};
use super::matrix::Matrix;
use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

/// A submodule of the free module `Rⁿ`, stored by its canonical echelon basis.
///
/// Two submodules are equal iff their canonical bases are equal entry by entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    ring: Ring,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Submodule {
    pub fn new(ring: Ring, ambient: usize, generators: Vec<Vec<Scalar>>) -> Result<Submodule> {
        for g in &generators {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "generator of length {} in ambient rank {ambient}",
                    g.len()
                )));
            }
        }
        Ok(Self::from_rows_unchecked(ring, ambient, generators))
    }

    fn from_rows_unchecked(ring: Ring, ambient: usize, generators: Vec<Vec<Scalar>>) -> Submodule {
        let (basis, pivots) = canonical_rows(ring, generators, ambient);
        Submodule { ring, ambient, basis, pivots }
    }

    /// Row span of `m`.
    pub fn row_span(m: &Matrix) -> Submodule {
        Self::from_rows_unchecked(m.ring(), m.cols(), m.row_vecs())
    }

    pub fn zero(ring: Ring, ambient: usize) -> Submodule {
        Submodule { ring, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ring: Ring, ambient: usize) -> Submodule {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        Submodule { ring, ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ring: Ring, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Submodule {
        let gens = indices
            .into_iter()
            .map(|k| (0..ambient).map(|j| if j == k { ring.one() } else { ring.zero() }).collect())
            .collect();
        Self::from_rows_unchecked(ring, ambient, gens)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Submodule::full(self.ring, self.ambient)
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Canonical generator matrix, one generator per row.
    pub fn generators(&self) -> Matrix {
        Matrix::from_rows(self.ring, self.ambient, self.basis.clone())
    }

    /// Coefficients `c` with `Σ cᵢ·basisᵢ = v`, or `None` if `v ∉ self`.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient {
            return None;
        }
        let ring = self.ring;
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        let mut next = 0;
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if rest[next..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let c = ring.exact_div(&rest[p], &row[p])?;
            if !c.is_zero() {
                for (x, y) in rest.iter_mut().zip(row) {
                    *x = ring.sub(x, &ring.mul(&c, y));
                }
            }
            coords.push(c);
            next = p + 1;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `Σ cᵢ·basisᵢ`.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.basis.len());
        let ring = self.ring;
        let mut out = vec![Scalar::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(row) {
                *o = ring.add(o, &ring.mul(c, y));
            }
        }
        out
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    fn check_compatible(&self, other: &Submodule) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!("ambient ranks {} and {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Ok(Self::from_rows_unchecked(self.ring, self.ambient, gens))
    }

    /// Intersection, computed from the kernel of `(y₁, y₂) ↦ y₁·A − y₂·B`.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Submodule::zero(self.ring, self.ambient));
        }
        let ring = self.ring;
        let k1 = self.rank();
        let a_t = self.generators().transpose();
        let b_t = other.generators().transpose().neg();
        let stacked = a_t.hstack(&b_t)?;
        let ker = kernel(&stacked);
        let gens = ker.basis.iter().map(|y| self.combine(&y[..k1])).collect();
        Ok(Self::from_rows_unchecked(ring, self.ambient, gens))
    }

    /// Image of `self` under `m` (column convention, `m.cols() == ambient`).
    pub fn map(&self, m: &Matrix) -> Result<Submodule> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map with {} columns applied in ambient rank {}",
                m.cols(),
                self.ambient
            )));
        }
        let gens = self.basis.iter().map(|g| m.apply(g)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows_unchecked(self.ring, m.rows(), gens))
    }

    /// `{x : m·x ∈ target}`.
    pub fn preimage(m: &Matrix, target: &Submodule) -> Result<Submodule> {
        if m.rows() != target.ambient {
            return Err(Error::DimensionMismatch(format!(
                "preimage under a map with {} rows of a submodule of rank-{} ambient",
                m.rows(),
                target.ambient
            )));
        }
        if m.ring() != target.ring {
            return Err(Error::RingMismatch(m.ring().to_string(), target.ring.to_string()));
        }
        let c = m.cols();
        if target.is_zero() {
            return Ok(kernel(m));
        }
        let g_t = target.generators().transpose().neg();
        let stacked = m.hstack(&g_t)?;
        let ker = kernel(&stacked);
        let gens = ker.basis.iter().map(|v| v[..c].to_vec()).collect();
        Ok(Self::from_rows_unchecked(m.ring(), c, gens))
    }

    /// `self ⊕ other` inside `R^{a+b}`.
    pub fn direct_sum(&self, other: &Submodule) -> Submodule {
        let n = self.ambient + other.ambient;
        let mut gens = Vec::with_capacity(self.rank() + other.rank());
        for b in &self.basis {
            let mut v = b.clone();
            v.resize(n, Scalar::zero());
            gens.push(v);
        }
        for b in &other.basis {
            let mut v = vec![Scalar::zero(); self.ambient];
            v.extend(b.iter().cloned());
            gens.push(v);
        }
        Self::from_rows_unchecked(self.ring, n, gens)
    }

    /// Same submodule viewed in another coefficient ring (generators reduced).
    pub fn change_ring(&self, ring: Ring) -> Submodule {
        let gens = self.basis.iter().map(|r| r.iter().map(|x| ring.reduce(x.clone())).collect()).collect();
        Self::from_rows_unchecked(ring, self.ambient, gens)
    }
}

/// `{x : m·x = 0}` as a submodule of `R^{cols}`.
pub fn kernel(m: &Matrix) -> Submodule {
    let ring = m.ring();
    let (r, c) = (m.rows(), m.cols());
    let mut rows: Vec<Vec<Scalar>> = (0..c)
        .map(|j| {
            let mut v = m.column(j);
            v.extend((0..c).map(|k| if k == j { ring.one() } else { ring.zero() }));
            v
        })
        .collect();
    let pivots = echelonize(ring, &mut rows, r);
    let gens = rows[pivots.len()..].iter().map(|v| v[r..].to_vec()).collect();
    Submodule::from_rows_unchecked(ring, c, gens)
}

/// Column span of `m` as a submodule of `R^{rows}`.
pub fn image(m: &Matrix) -> Submodule {
    Submodule::row_span(&m.transpose())
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule<{}>(R^{}: ", self.ring, self.ambient)?;
        let rows: Vec<String> =
            self.basis.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}])", rows.join("; "))
    }
}
