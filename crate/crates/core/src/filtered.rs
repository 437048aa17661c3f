//! Increasing filtrations on cochain complexes and Deligne's décalage.

use crate::complex::{hull, ChainMap, CochainComplex};
use crate::error::{Error, Result};
use crate::linalg::{Ring, Submodule};

/// A bounded cochain complex with an exhaustive increasing filtration by submodules.
///
/// `W(p, n)` is stored for `pmin − 1 ≤ p ≤ pmax`; it is zero below that range
/// and all of `K^n` above it.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    carrier: CochainComplex,
    pmin: i64,
    pmax: i64,
    /// `levels[p − pmin + 1][n − n0]`.
    levels: Vec<Vec<Submodule>>,
}

impl FilteredComplex {
    /// Builds a filtered complex from `w(p, n)` for `p ∈ [pmin, pmax − 1]` and validates it.
    pub fn from_fn(
        carrier: CochainComplex,
        pmin: i64,
        pmax: i64,
        w: impl Fn(i64, i64) -> Submodule,
    ) -> Result<FilteredComplex> {
        let pmax = pmax.max(pmin);
        let ring = carrier.ring();
        let levels = (pmin - 1..=pmax)
            .map(|p| {
                carrier
                    .degrees()
                    .map(|n| {
                        if p < pmin {
                            Submodule::zero(ring, carrier.dim(n))
                        } else if p >= pmax {
                            Submodule::full(ring, carrier.dim(n))
                        } else {
                            w(p, n)
                        }
                    })
                    .collect()
            })
            .collect();
        let fk = FilteredComplex { carrier, pmin, pmax, levels };
        fk.validate()?;
        Ok(fk)
    }

    /// Single jump `0 = W₋₁ ⊂ W₀ = K`.
    pub fn trivial(k: &CochainComplex) -> FilteredComplex {
        FilteredComplex::from_fn(k.clone(), 0, 0, |_, _| unreachable!()).expect("trivial filtration is valid")
    }

    /// `τ_{≤p} K = ⋯ → K^{p−1} → ker d → 0`.
    pub fn canonical(k: &CochainComplex) -> FilteredComplex {
        let ring = k.ring();
        let (n0, n1) = k.support().unwrap_or((0, 0));
        FilteredComplex::from_fn(k.clone(), n0, n1, |p, n| {
            if n < p {
                Submodule::full(ring, k.dim(n))
            } else if n == p {
                k.cycles(n)
            } else {
                Submodule::zero(ring, k.dim(n))
            }
        })
        .expect("canonical filtration is valid")
    }

    /// Filtration where basis vector `i` of `K^n` enters at level `levels[n − n0][i]`.
    pub fn from_basis_levels(k: &CochainComplex, levels: &[Vec<i64>]) -> Result<FilteredComplex> {
        let ring = k.ring();
        let degs: Vec<i64> = k.degrees().collect();
        if levels.len() != degs.len() || degs.iter().zip(levels).any(|(&n, l)| l.len() != k.dim(n)) {
            return Err(Error::InvalidFiltration("basis levels do not match the complex".into()));
        }
        let all = levels.iter().flatten();
        let pmin = all.clone().copied().min().unwrap_or(0);
        let pmax = all.copied().max().unwrap_or(0);
        let n0 = k.support().map_or(0, |s| s.0);
        FilteredComplex::from_fn(k.clone(), pmin, pmax, |p, n| {
            let l = &levels[(n - n0) as usize];
            Submodule::coordinate(ring, k.dim(n), (0..l.len()).filter(|&i| l[i] <= p))
        })
    }

    pub fn carrier(&self) -> &CochainComplex {
        &self.carrier
    }

    pub fn ring(&self) -> Ring {
        self.carrier.ring()
    }

    /// Bounds `(pmin, pmax)`: `W(pmin − 1) = 0` and `W(pmax) = K`.
    pub fn bounds(&self) -> (i64, i64) {
        (self.pmin, self.pmax)
    }

    /// `W(p, n)` for any `p` and `n`.
    pub fn w(&self, p: i64, n: i64) -> Submodule {
        let ring = self.ring();
        let dim = self.carrier.dim(n);
        let Some((n0, n1)) = self.carrier.support() else {
            return Submodule::zero(ring, 0);
        };
        if n < n0 || n > n1 || p < self.pmin {
            return Submodule::zero(ring, dim);
        }
        if p >= self.pmax {
            return Submodule::full(ring, dim);
        }
        self.levels[(p - self.pmin + 1) as usize][(n - n0) as usize].clone()
    }

    /// The subcomplex `W(p, ·)` as a complex on its own canonical basis.
    pub fn step_complex(&self, p: i64) -> CochainComplex {
        let ring = self.ring();
        let (lo, hi) = self.carrier.support().unwrap_or((0, -1));
        CochainComplex::from_fn(
            ring,
            lo,
            hi,
            |n| self.w(p, n).rank(),
            |n| {
                let (src, tgt) = (self.w(p, n), self.w(p, n + 1));
                let d = self.carrier.d(n);
                let cols = src
                    .basis()
                    .iter()
                    .map(|b| tgt.coordinates(&d.apply(b).expect("shape")).expect("filtration is d-stable"))
                    .collect();
                crate::linalg::Matrix::from_columns(ring, tgt.rank(), cols)
            },
        )
        .expect("subcomplex differential squares to zero")
    }

    fn validate(&self) -> Result<()> {
        for p in self.pmin - 1..=self.pmax {
            for n in self.carrier.degrees() {
                let wp = self.w(p, n);
                if wp.ambient() != self.carrier.dim(n) {
                    return Err(Error::InvalidFiltration(format!("W({p},{n}) has the wrong ambient rank")));
                }
                if !wp.is_subset_of(&self.w(p + 1, n)) {
                    return Err(Error::InvalidFiltration(format!("W({p},{n}) ⊄ W({},{n})", p + 1)));
                }
                let image = wp.map(&self.carrier.d(n))?;
                if !image.is_subset_of(&self.w(p, n + 1)) {
                    return Err(Error::InvalidFiltration(format!("d W({p},{n}) ⊄ W({p},{})", n + 1)));
                }
            }
        }
        Ok(())
    }

    /// `(K[r], W(−r))`: `W'(p, n) = W(p − r, n + r)`.
    pub fn translate(&self, r: i64) -> FilteredComplex {
        let carrier = self.carrier.shift(r);
        FilteredComplex::from_fn(carrier, self.pmin + r, self.pmax + r, |p, n| self.w(p - r, n + r))
            .expect("translation preserves validity")
    }

    /// `(Dec W)(p, n) = W(p − n, n) ∩ d⁻¹ W(p − n − 1, n + 1)`.
    pub fn decalage(&self) -> FilteredComplex {
        let Some((n0, n1)) = self.carrier.support() else {
            return self.clone();
        };
        let k = &self.carrier;
        FilteredComplex::from_fn(k.clone(), self.pmin + n0, self.pmax + n1, |p, n| {
            let pre = Submodule::preimage(&k.d(n), &self.w(p - n - 1, n + 1)).expect("shapes agree");
            self.w(p - n, n).intersect(&pre).expect("shapes agree")
        })
        .expect("décalage is a filtration")
    }

    /// Smallest bounds with the same filtration.
    pub fn tightened(&self) -> FilteredComplex {
        let degs: Vec<i64> = self.carrier.degrees().collect();
        let full = |p: i64| degs.iter().all(|&n| self.w(p, n).is_full());
        let zero = |p: i64| degs.iter().all(|&n| self.w(p, n).is_zero());
        let mut lo = self.pmin;
        while lo < self.pmax && zero(lo) {
            lo += 1;
        }
        let mut hi = self.pmax;
        while hi > lo && full(hi - 1) {
            hi -= 1;
        }
        FilteredComplex::from_fn(self.carrier.clone(), lo, hi, |p, n| self.w(p, n)).expect("same filtration")
    }

    /// Equality of carriers and of every `W(p, n)` as canonical submodules.
    pub fn same_as(&self, other: &FilteredComplex) -> bool {
        let (lo, hi) = hull(self.carrier.support(), other.carrier.support());
        if (lo..=hi).any(|n| self.carrier.dim(n) != other.carrier.dim(n) || self.carrier.d(n) != other.carrier.d(n)) {
            return false;
        }
        let pl = self.pmin.min(other.pmin) - 1;
        let ph = self.pmax.max(other.pmax);
        (pl..=ph).all(|p| (lo..=hi).all(|n| self.w(p, n) == other.w(p, n)))
    }

    /// The jump levels that actually occur, `[first nonzero, first full]`.
    pub fn effective_bounds(&self) -> (i64, i64) {
        self.tightened().bounds()
    }
}

/// A chain map compatible with the filtrations.
#[derive(Clone, Debug)]
pub struct FilteredMap {
    source: FilteredComplex,
    target: FilteredComplex,
    carrier: ChainMap,
}

impl FilteredMap {
    pub fn new(source: FilteredComplex, target: FilteredComplex, carrier: ChainMap) -> Result<FilteredMap> {
        if carrier.source() != source.carrier() || carrier.target() != target.carrier() {
            return Err(Error::InvalidChainMap("carrier does not match the filtered complexes".into()));
        }
        let lo = source.pmin.min(target.pmin) - 1;
        let hi = source.pmax.max(target.pmax);
        for n in source.carrier.degrees() {
            let f = carrier.f(n);
            for p in lo..=hi {
                if !source.w(p, n).map(&f)?.is_subset_of(&target.w(p, n)) {
                    return Err(Error::InvalidChainMap(format!("f W({p},{n}) ⊄ W({p},{n})")));
                }
            }
        }
        Ok(FilteredMap { source, target, carrier })
    }

    pub fn identity(k: &FilteredComplex) -> FilteredMap {
        FilteredMap { source: k.clone(), target: k.clone(), carrier: ChainMap::identity(k.carrier()) }
    }

    pub fn source(&self) -> &FilteredComplex {
        &self.source
    }

    pub fn target(&self) -> &FilteredComplex {
        &self.target
    }

    pub fn carrier(&self) -> &ChainMap {
        &self.carrier
    }

    /// The same carrier map between the décalage filtrations.
    pub fn decalage(&self) -> FilteredMap {
        FilteredMap::new(self.source.decalage(), self.target.decalage(), self.carrier.clone())
            .expect("décalage is functorial")
    }
}

/// Whether `f` induces an isomorphism on `E_{r+1}`.
pub fn is_er_quasi_iso(f: &FilteredMap, r: usize) -> Result<bool> {
    crate::spectral::page_map_is_iso(f, r + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn z() -> Ring {
        Ring::Integers
    }

    #[test]
    fn decalage_of_trivial_with_zero_differential() {
        let k = CochainComplex::with_zero_differential(z(), 0, vec![1, 2, 1]);
        let dec = FilteredComplex::trivial(&k).decalage();
        for n in 0..=2 {
            for p in -2..=4 {
                let w = dec.w(p, n);
                if p >= n {
                    assert!(w.is_full(), "p={p} n={n}");
                } else {
                    assert!(w.is_zero(), "p={p} n={n}");
                }
            }
        }
    }

    #[test]
    fn decalage_in_degree_zero_is_identity() {
        let k = CochainComplex::concentrated(z(), 0, 2);
        let fk = FilteredComplex::from_basis_levels(&k, &[vec![0, 1]]).unwrap();
        assert!(fk.decalage().same_as(&fk));
    }

    #[test]
    fn canonical_filtration_of_zero_differential() {
        let k = CochainComplex::with_zero_differential(z(), 0, vec![1, 1]);
        let t = FilteredComplex::canonical(&k);
        for n in 0..=1 {
            for p in -1..=2 {
                assert_eq!(t.w(p, n).is_full(), n <= p);
                assert_eq!(t.w(p, n).is_zero(), n > p);
            }
        }
    }

    #[test]
    fn canonical_steps_truncate_cohomology() {
        let d0 = Matrix::from_i64(z(), &[vec![-1, 1, 0], vec![0, -1, 1], vec![-1, 0, 1]]);
        let d1 = Matrix::from_i64(z(), &[vec![1, 1, -1], vec![1, 1, -1]]);
        let s = CochainComplex::new(z(), 0, vec![3, 3, 2], vec![d0, d1]).unwrap();
        let t = FilteredComplex::canonical(&s);
        for p in 0..=2 {
            let sub = t.step_complex(p);
            for n in 0..=2 {
                let expect = if n <= p { s.cohomology(n) } else { Default::default() };
                assert_eq!(sub.cohomology(n), expect, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn translate_round_trip() {
        let k = CochainComplex::with_zero_differential(z(), 0, vec![2, 1]);
        let fk = FilteredComplex::from_basis_levels(&k, &[vec![0, 2], vec![1]]).unwrap();
        assert!(fk.translate(3).translate(-3).same_as(&fk));
    }

    #[test]
    fn translate_of_canonical() {
        // W'(p, n) = τ(p − 1, n + 1): full iff n + 1 ≤ p − 1.
        let k = CochainComplex::with_zero_differential(z(), 0, vec![1, 1]);
        let t = FilteredComplex::canonical(&k).translate(1);
        for n in -1..=0 {
            for p in -3..=3 {
                assert_eq!(t.w(p, n).is_full(), n <= p - 2);
            }
        }
    }

    #[test]
    fn trivial_of_zero_complex() {
        let t = FilteredComplex::trivial(&CochainComplex::zero(z()));
        assert!(t.carrier().is_zero());
        assert!(t.decalage().same_as(&t));
    }

    #[test]
    fn rejects_non_stable_filtration() {
        let d = Matrix::from_i64(z(), &[vec![1]]);
        let k = CochainComplex::new(z(), 0, vec![1, 1], vec![d]).unwrap();
        assert!(FilteredComplex::from_basis_levels(&k, &[vec![0], vec![1]]).is_err());
        assert!(FilteredComplex::from_basis_levels(&k, &[vec![1], vec![0]]).is_ok());
    }
}
