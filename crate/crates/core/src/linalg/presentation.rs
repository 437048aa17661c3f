use std::fmt;

use num::bigint::BigInt;
use num::traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::ring::{Ring, Scalar};
use super::snf::smith_normal_form;
use super::submodule::{image, Submodule};
use crate::error::{Error, Result};

/// Canonical (Smith) form of a finitely generated module:
/// `ℤ/d₁ ⊕ … ⊕ ℤ/d_k ⊕ R^{free_rank}` with `d₁ | d₂ | …` and every `dᵢ > 1`.
/// Over a field the torsion list is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ModulePresentation {
    pub free_rank: usize,
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl ModulePresentation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        ModulePresentation { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of generators in the canonical presentation.
    pub fn generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// The generator moduli: torsion orders first, then `0` for free generators.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = self.torsion.clone();
        m.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        m
    }

    /// The relation submodule of `R^{generators}` spanned by `dᵢ·eᵢ`.
    pub fn relations(&self, ring: Ring) -> Submodule {
        let n = self.generators();
        let gens = self
            .torsion
            .iter()
            .enumerate()
            .map(|(i, d)| (0..n).map(|j| if i == j { ring.from_int(d.clone()) } else { ring.zero() }).collect())
            .collect();
        Submodule::new(ring, n, gens).expect("relation generators have the right length")
    }

    pub fn as_presented(&self, ring: Ring) -> Presented {
        Presented { generators: self.generators(), relations: self.relations(ring) }
    }

    /// Canonical form of a direct sum.
    pub fn direct_sum(ring: Ring, parts: &[ModulePresentation]) -> ModulePresentation {
        let mut acc = Presented::zero(ring);
        for p in parts {
            acc = acc.direct_sum(&p.as_presented(ring));
        }
        acc.canonical()
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("R".into()),
            k => parts.push(format!("R^{k}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A module `R^{generators} / relations` in arbitrary (non-canonical) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presented {
    pub generators: usize,
    pub relations: Submodule,
}

impl Presented {
    pub fn zero(ring: Ring) -> Presented {
        Presented { generators: 0, relations: Submodule::zero(ring, 0) }
    }

    pub fn free(ring: Ring, rank: usize) -> Presented {
        Presented { generators: rank, relations: Submodule::zero(ring, rank) }
    }

    pub fn ring(&self) -> Ring {
        self.relations.ring()
    }

    pub fn direct_sum(&self, other: &Presented) -> Presented {
        Presented {
            generators: self.generators + other.generators,
            relations: self.relations.direct_sum(&other.relations),
        }
    }

    pub fn canonical(&self) -> ModulePresentation {
        let full = Submodule::full(self.ring(), self.generators);
        Quotient::new(&full, &self.relations).expect("relations live in the generator module").presentation().clone()
    }
}

/// Cohomology of `A --f--> B --g--> C` at `B`, for presented modules and
/// generator-level matrices `f`, `g` (column convention).
pub fn presented_cohomology(
    incoming: Option<(&Presented, &Matrix)>,
    here: &Presented,
    outgoing: Option<(&Matrix, &Presented)>,
) -> Result<Quotient> {
    let ring = here.ring();
    let n = here.generators;
    let cycles = match outgoing {
        Some((g, tgt)) => Submodule::preimage(g, &tgt.relations)?,
        None => Submodule::full(ring, n),
    };
    let boundaries = match incoming {
        Some((_, f)) => image(f).sum(&here.relations)?,
        None => here.relations.clone(),
    };
    Quotient::new(&cycles, &boundaries)
}

/// Whether the generator-level matrix `f: src → tgt` induces an isomorphism of presented modules.
pub fn presented_map_is_iso(src: &Presented, f: &Matrix, tgt: &Presented) -> Result<bool> {
    if f.cols() != src.generators || f.rows() != tgt.generators {
        return Err(Error::DimensionMismatch("presented map shape".into()));
    }
    let ring = src.ring();
    let onto = image(f).sum(&tgt.relations)?;
    if onto != Submodule::full(ring, tgt.generators) {
        return Ok(false);
    }
    Ok(Submodule::preimage(f, &tgt.relations)? == src.relations)
}

/// The subquotient `num / den` of a free module, with its canonical
/// presentation and the data needed to move between ambient vectors and
/// presentation coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    num: Submodule,
    presentation: ModulePresentation,
    /// Column change of basis on the coordinates of `num`.
    v: Matrix,
    v_inv: Matrix,
    /// Indices (in the transformed coordinates) that survive, with their moduli.
    kept: Vec<(usize, Scalar)>,
}

impl Quotient {
    pub fn new(num: &Submodule, den: &Submodule) -> Result<Quotient> {
        let ring = num.ring();
        if den.ring() != ring || den.ambient() != num.ambient() {
            return Err(Error::DimensionMismatch("quotient of incompatible submodules".into()));
        }
        let k = num.rank();
        let rel_rows =
            den.basis().iter().map(|g| num.coordinates(g).ok_or(Error::NotASubmodule)).collect::<Result<Vec<_>>>()?;
        let rel = Matrix::from_rows(ring, k, rel_rows);
        let snf = smith_normal_form(&rel);
        let diag = snf.diagonal();
        let mut kept = Vec::new();
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        for i in 0..k {
            let d = diag.get(i).cloned().unwrap_or_else(Scalar::zero);
            if d.is_zero() {
                free_rank += 1;
                kept.push((i, d));
            } else if ring.inv(&d).is_none() {
                torsion.push(d.numer().clone());
                kept.push((i, d));
            }
        }
        Ok(Quotient {
            num: num.clone(),
            presentation: ModulePresentation { free_rank, torsion },
            v: snf.v,
            v_inv: snf.v_inv,
            kept,
        })
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.presentation
    }

    pub fn numerator(&self) -> &Submodule {
        &self.num
    }

    pub fn ring(&self) -> Ring {
        self.num.ring()
    }

    /// Presentation coordinates of `x ∈ num` (torsion entries reduced).
    pub fn coordinates(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let ring = self.ring();
        let c = self.num.coordinates(x).ok_or(Error::NotAMember)?;
        // c' = c·V
        let vt = self.v.transpose();
        let cp = vt.apply(&c)?;
        Ok(self.kept.iter().map(|(i, d)| ring.reduce_mod(&cp[*i], d)).collect())
    }

    /// A representative in `num` of the class with the given coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let ring = self.ring();
        let k = self.num.rank();
        let mut cp = vec![ring.zero(); k];
        for ((i, _), c) in self.kept.iter().zip(coords) {
            cp[*i] = c.clone();
        }
        // c = c'·V⁻¹
        let c = self.v_inv.transpose().apply(&cp).expect("square change of basis");
        self.num.combine(&c)
    }

    /// Representative of the `i`-th generator.
    pub fn generator(&self, i: usize) -> Vec<Scalar> {
        let ring = self.ring();
        let coords: Vec<Scalar> = (0..self.kept.len()).map(|j| if i == j { ring.one() } else { ring.zero() }).collect();
        self.lift(&coords)
    }

    pub fn as_presented(&self) -> Presented {
        self.presentation.as_presented(self.ring())
    }
}

mod bigint_list {
    use num::bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::io::BigIntRepr;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(BigIntRepr::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<BigIntRepr>::deserialize(d)?;
        Ok(v.into_iter().map(|b| b.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(ring: Ring, n: usize, gens: &[&[i64]]) -> Submodule {
        Submodule::new(ring, n, gens.iter().map(|g| g.iter().map(|&x| ring.from_i64(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn cyclic_quotient_of_the_plane() {
        let z = Ring::Integers;
        let q = Quotient::new(&Submodule::full(z, 2), &span(z, 2, &[&[2, 0], &[0, 1]])).unwrap();
        assert_eq!(q.presentation(), &ModulePresentation { free_rank: 0, torsion: vec![2.into()] });
    }

    #[test]
    fn rational_quotient_is_free() {
        let r = Ring::Rationals;
        let q = Quotient::new(&Submodule::full(r, 3), &span(r, 3, &[&[1, 0, 0]])).unwrap();
        assert_eq!(q.presentation(), &ModulePresentation::free(2));
    }

    #[test]
    fn subquotient_by_coset_enumeration() {
        // span{(2,0),(0,3)} / span{(4,0),(0,3)}: the cosets are {0, (2,0)} → ℤ/2.
        let z = Ring::Integers;
        let num = span(z, 2, &[&[2, 0], &[0, 3]]);
        let den = span(z, 2, &[&[4, 0], &[0, 3]]);
        let q = Quotient::new(&num, &den).unwrap();
        assert_eq!(q.presentation().torsion, vec![BigInt::from(2)]);
        let g = q.generator(0);
        assert!(num.contains(&g) && !den.contains(&g));
        assert_eq!(q.coordinates(&g).unwrap(), vec![z.one()]);
        let twice: Vec<Scalar> = g.iter().map(|x| x * z.from_i64(2)).collect();
        assert_eq!(q.coordinates(&twice).unwrap(), vec![z.zero()]);
    }

    #[test]
    fn den_outside_num_is_rejected() {
        let z = Ring::Integers;
        let num = span(z, 2, &[&[2, 0]]);
        let den = span(z, 2, &[&[1, 0]]);
        assert_eq!(Quotient::new(&num, &den).unwrap_err(), Error::NotASubmodule);
    }

    #[test]
    fn direct_sum_merges_invariant_factors() {
        let z = Ring::Integers;
        let a = ModulePresentation { free_rank: 1, torsion: vec![2.into()] };
        let b = ModulePresentation { free_rank: 0, torsion: vec![3.into()] };
        let s = ModulePresentation::direct_sum(z, &[a, b]);
        assert_eq!(s, ModulePresentation { free_rank: 1, torsion: vec![6.into()] });
    }

    #[test]
    fn iso_detection() {
        let z = Ring::Integers;
        let p = Presented::free(z, 1);
        assert!(presented_map_is_iso(&p, &Matrix::from_i64(z, &[vec![-1]]), &p).unwrap());
        assert!(!presented_map_is_iso(&p, &Matrix::from_i64(z, &[vec![2]]), &p).unwrap());
        let t = ModulePresentation { free_rank: 0, torsion: vec![3.into()] }.as_presented(z);
        assert!(presented_map_is_iso(&t, &Matrix::from_i64(z, &[vec![2]]), &t).unwrap());
        assert!(!presented_map_is_iso(&t, &Matrix::from_i64(z, &[vec![3]]), &t).unwrap());
    }
}
