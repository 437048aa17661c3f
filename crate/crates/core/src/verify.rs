//! Structural checks shared by the command line and the test suites.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::induced_matrix;
use crate::cubical::{page_simple_cohomology, simple_page_cells, CubicalDiagram};
use crate::error::Result;
use crate::filtered::FilteredComplex;
use crate::linalg::{presented_map_is_iso, Matrix};
use crate::spectral::{cell, is_zero_mod, page};

/// Outcome of one structural check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl Verdict {
    pub fn new(check: &str, failures: Vec<String>) -> Verdict {
        Verdict { check: check.into(), passed: failures.is_empty(), failures }
    }
}

/// `E_r^{a, n−a}(Dec K) ≅ E_{r+1}^{a+n, −a}(K)` through the identity on
/// representatives, with the differentials intertwined.
pub fn decalage_shift(fk: &FilteredComplex, r: usize) -> Result<Verdict> {
    let dec = fk.decalage();
    let dpage = page(&dec, r);
    let ri = r as i64;
    let mut failures = Vec::new();
    let id = |n: i64| Matrix::identity(fk.ring(), fk.carrier().dim(n));
    // Comparison maps at every Dec cell, plus the cells they land in.
    let mut phis = BTreeMap::new();
    for (a, q) in dpage.positions() {
        let n = a + q;
        let src = dpage.quotient(a, q).expect("listed").clone();
        let tgt = cell(fk, ri + 1, a + n, n);
        if src.presentation() != tgt.presentation() {
            failures.push(format!(
                "({a},{q}): Dec gives {}, shifted page gives {}",
                src.presentation(),
                tgt.presentation()
            ));
            continue;
        }
        let phi = match induced_matrix(&src, &id(n), &tgt) {
            Ok(m) => m,
            Err(e) => {
                failures.push(format!("({a},{q}): comparison map undefined: {e}"));
                continue;
            }
        };
        if !presented_map_is_iso(&src.as_presented(), &phi, &tgt.as_presented())? {
            failures.push(format!("({a},{q}): comparison map is not an isomorphism"));
            continue;
        }
        phis.insert((a, q), (phi, src, tgt));
    }
    let kpage = page(fk, r + 1);
    for (&(a, q), (phi, src, tgt)) in &phis {
        let n = a + q;
        let (ta, tq) = dpage.target_of(a, q);
        let Some((phi_t, _, tgt_t)) = phis.get(&(ta, tq)) else { continue };
        let dd = match dpage.differential(a, q) {
            Some(m) => m.clone(),
            None => Matrix::zeros(fk.ring(), dpage.cell(ta, tq).generators(), src.presentation().generators()),
        };
        // d_{r+1} on K from (a+n, −a), recomputed against the comparison cells.
        let dk = induced_matrix(tgt, &fk.carrier().d(n), tgt_t)?;
        let lhs = phi_t.mul(&dd)?;
        let rhs = dk.mul(phi)?;
        if !is_zero_mod(&lhs.sub(&rhs)?, &tgt_t.presentation().moduli()) {
            failures.push(format!("({a},{q}): d_{r} does not match d_{} under the shift", r + 1));
        }
    }
    for (&(ka, kq), m) in &kpage.summary().cells {
        let (a, q) = (-kq, ka + 2 * kq);
        if !phis.contains_key(&(a, q)) && dpage.quotient(a, q).is_none() {
            failures.push(format!("E_{}^({ka},{kq}) = {m} has no Dec counterpart", r + 1));
        }
    }
    Ok(Verdict::new("decalage", failures))
}

/// `Dec(s^{r+1} D) = s^r(Dec D)` as filtered complexes.
pub fn dec_simple_exchange(d: &CubicalDiagram, r: i64) -> Verdict {
    let lhs = d.simple_r(r + 1).decalage();
    let rhs = d.decalage().simple_r(r);
    let failures = if lhs.same_as(&rhs) { vec![] } else { vec![format!("Dec s^{} ≠ s^{r} Dec", r + 1)] };
    Verdict::new("dec-simple", failures)
}

/// Cohomology of `s E_r(D)` equals `E_{r+1}(s^r D)` at every position.
pub fn page_simple_exchange(d: &CubicalDiagram, r: usize) -> Result<Verdict> {
    let lhs = page_simple_cohomology(d, r)?;
    let rhs = simple_page_cells(d, r);
    let mut failures = Vec::new();
    let keys: std::collections::BTreeSet<_> = lhs.keys().chain(rhs.keys()).copied().collect();
    for k in keys {
        let a = lhs.get(&k).cloned().unwrap_or_default();
        let b = rhs.get(&k).cloned().unwrap_or_default();
        if a != b {
            failures.push(format!("{k:?}: s E_{r} gives {a}, E_{} s^{r} gives {b}", r + 1));
        }
    }
    Ok(Verdict::new("simple-exchange", failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_filtered, Shape};
    use crate::linalg::Ring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn decalage_shift_on_random_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ring in [Ring::Integers, Ring::Rationals] {
            for _ in 0..10 {
                let fk = random_filtered(&mut rng, ring, Shape::default());
                for r in 1..=2 {
                    let v = decalage_shift(&fk, r).unwrap();
                    assert!(v.passed, "{:?}", v.failures);
                }
            }
        }
    }
}
