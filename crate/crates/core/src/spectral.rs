//! Spectral sequence pages of filtered complexes and filtrations on cohomology.
//!
//! Pages use the decreasing convention `F^a = W_{−a}`: the cell `E_r^{a,q}`
//! lives in total degree `n = a + q` and `d_r` has bidegree `(r, 1 − r)`.

use std::collections::BTreeMap;

use num::traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{induced_matrix, CochainComplex};
use crate::error::{Error, Result};
use crate::filtered::{FilteredComplex, FilteredMap};
use crate::io::MatrixRepr;
use crate::linalg::{
    presented_cohomology, presented_map_is_iso, Matrix, ModulePresentation, Quotient, Ring, Submodule,
};

/// `F^a K^n = W_{−a} K^n`.
fn f(fk: &FilteredComplex, a: i64, n: i64) -> Submodule {
    fk.w(-a, n)
}

/// `Z_s^a(n) = F^a K^n ∩ d⁻¹ F^{a+s} K^{n+1}`.
fn z(fk: &FilteredComplex, s: i64, a: i64, n: i64) -> Submodule {
    let d = fk.carrier().d(n);
    let pre = Submodule::preimage(&d, &f(fk, a + s, n + 1)).expect("shapes agree");
    f(fk, a, n).intersect(&pre).expect("shapes agree")
}

/// `E_r^{a, n−a} = Z_r^a / (Z_{r−1}^{a+1} + d Z_{r−1}^{a−r+1})`.
pub(crate) fn cell(fk: &FilteredComplex, r: i64, a: i64, n: i64) -> Quotient {
    let num = z(fk, r, a, n);
    let inner = z(fk, r - 1, a + 1, n);
    let prev = z(fk, r - 1, a - r + 1, n - 1);
    let bd = prev.map(&fk.carrier().d(n - 1)).expect("shapes agree");
    let den = inner.sum(&bd).expect("shapes agree");
    Quotient::new(&num, &den).expect("page denominators lie in the numerator")
}

/// Range of `a` with a possibly nonzero graded piece.
pub(crate) fn a_range(fk: &FilteredComplex) -> (i64, i64) {
    let (pmin, pmax) = fk.bounds();
    (-pmax, -pmin)
}

/// One page `E_r` with its differential.
#[derive(Clone, Debug)]
pub struct SsPage {
    r: usize,
    ring: Ring,
    cells: BTreeMap<(i64, i64), Quotient>,
    /// `d_r` from `(a, q)` in presentation coordinates.
    diffs: BTreeMap<(i64, i64), Matrix>,
}

impl SsPage {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// The presentation at `(a, q)`, zero outside the computed range.
    pub fn cell(&self, a: i64, q: i64) -> ModulePresentation {
        self.cells.get(&(a, q)).map(|c| c.presentation().clone()).unwrap_or_default()
    }

    pub fn quotient(&self, a: i64, q: i64) -> Option<&Quotient> {
        self.cells.get(&(a, q))
    }

    /// `d_r: E_r^{a,q} → E_r^{a+r, q−r+1}`.
    pub fn differential(&self, a: i64, q: i64) -> Option<&Matrix> {
        self.diffs.get(&(a, q))
    }

    pub fn target_of(&self, a: i64, q: i64) -> (i64, i64) {
        let r = self.r as i64;
        (a + r, q - r + 1)
    }

    pub fn positions(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.cells.keys().copied()
    }

    /// Nonzero cells.
    pub fn summary(&self) -> PageSummary {
        PageSummary {
            r: self.r,
            cells: self
                .cells
                .iter()
                .filter(|(_, c)| !c.presentation().is_zero())
                .map(|(&k, c)| (k, c.presentation().clone()))
                .collect(),
        }
    }

    /// Whether every differential vanishes (modulo the target relations).
    pub fn differentials_vanish(&self) -> bool {
        self.diffs.iter().all(|(&(a, q), m)| {
            let (ta, tq) = self.target_of(a, q);
            let moduli = self.cell(ta, tq).moduli();
            is_zero_mod(m, &moduli)
        })
    }

    /// `d_r ∘ d_r = 0` at every cell.
    pub fn check_square_zero(&self) -> bool {
        self.diffs.iter().all(|(&(a, q), m)| {
            let (ta, tq) = self.target_of(a, q);
            let Some(next) = self.diffs.get(&(ta, tq)) else { return true };
            let (ua, uq) = self.target_of(ta, tq);
            let moduli = self.cell(ua, uq).moduli();
            is_zero_mod(&next.mul(m).expect("composable"), &moduli)
        })
    }

    /// Cohomology of `(E_r, d_r)` at `(a, q)`, the next page's cell.
    pub fn cohomology_at(&self, a: i64, q: i64) -> Result<ModulePresentation> {
        let r = self.r as i64;
        let here = self.presented(a, q);
        let (sa, sq) = (a - r, q + r - 1);
        let (ta, tq) = self.target_of(a, q);
        let src = self.presented(sa, sq);
        let tgt = self.presented(ta, tq);
        let din = self.matrix_or_zero(sa, sq, &src, &here);
        let dout = self.matrix_or_zero(a, q, &here, &tgt);
        Ok(presented_cohomology(Some((&src, &din)), &here, Some((&dout, &tgt)))?.presentation().clone())
    }

    fn presented(&self, a: i64, q: i64) -> crate::linalg::Presented {
        match self.cells.get(&(a, q)) {
            Some(c) => c.as_presented(),
            None => crate::linalg::Presented::zero(self.ring),
        }
    }

    fn matrix_or_zero(&self, a: i64, q: i64, src: &crate::linalg::Presented, tgt: &crate::linalg::Presented) -> Matrix {
        self.diffs.get(&(a, q)).cloned().unwrap_or_else(|| Matrix::zeros(self.ring, tgt.generators, src.generators))
    }

    /// Machine-readable listing of cells and differentials.
    pub fn report(&self) -> PageReport {
        let cells = self
            .cells
            .iter()
            .filter(|(_, c)| !c.presentation().is_zero())
            .map(|(&(a, q), c)| {
                let (ta, tq) = self.target_of(a, q);
                let d = self
                    .diffs
                    .get(&(a, q))
                    .filter(|m| !self.cell(ta, tq).is_zero() && !m.is_zero())
                    .map(MatrixRepr::from_matrix);
                CellReport { p: a, q, module: c.presentation().clone(), d }
            })
            .collect();
        PageReport { r: self.r, cells }
    }
}

pub(crate) fn is_zero_mod(m: &Matrix, moduli: &[num::BigInt]) -> bool {
    (0..m.rows()).all(|i| {
        let md = &moduli[i];
        m.row(i).iter().all(|x| if md.is_zero() { x.is_zero() } else { (x.numer() % md).is_zero() })
    })
}

/// Nonzero cells of a page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageSummary {
    pub r: usize,
    pub cells: BTreeMap<(i64, i64), ModulePresentation>,
}

impl PageSummary {
    pub fn cell(&self, a: i64, q: i64) -> ModulePresentation {
        self.cells.get(&(a, q)).cloned().unwrap_or_default()
    }

    /// Same nonzero cells (ignores the page index).
    pub fn same_cells(&self, other: &PageSummary) -> bool {
        self.cells == other.cells
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub p: i64,
    pub q: i64,
    #[serde(flatten)]
    pub module: ModulePresentation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<MatrixRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageReport {
    pub r: usize,
    pub cells: Vec<CellReport>,
}

impl PageReport {
    pub fn from_summary(s: &PageSummary) -> PageReport {
        PageReport {
            r: s.r,
            cells: s.cells.iter().map(|(&(p, q), m)| CellReport { p, q, module: m.clone(), d: None }).collect(),
        }
    }
}

pub(crate) fn compute_page(fk: &FilteredComplex, r: usize, (alo, ahi): (i64, i64)) -> SsPage {
    let ring = fk.ring();
    let ri = r as i64;
    let positions: Vec<(i64, i64)> = fk.carrier().degrees().flat_map(|n| (alo..=ahi).map(move |a| (a, n))).collect();
    let cells: BTreeMap<(i64, i64), Quotient> =
        positions.par_iter().map(|&(a, n)| ((a, n - a), cell(fk, ri, a, n))).collect();
    let diffs = cells
        .par_iter()
        .filter_map(|(&(a, q), src)| {
            let n = a + q;
            let (ta, tq) = (a + ri, q - ri + 1);
            if src.presentation().is_zero() {
                return None;
            }
            let tgt_owned;
            let tgt = match cells.get(&(ta, tq)) {
                Some(t) => t,
                None => {
                    tgt_owned = cell(fk, ri, ta, n + 1);
                    &tgt_owned
                }
            };
            let m = induced_matrix(src, &fk.carrier().d(n), tgt).expect("d maps Z_r into Z_r");
            Some(((a, q), m))
        })
        .collect();
    SsPage { r, ring, cells, diffs }
}

/// `E_r` of a filtered complex, `r ≥ 0`.
pub fn page(fk: &FilteredComplex, r: usize) -> SsPage {
    compute_page(fk, r, a_range(fk))
}

/// `E_r(f)` per cell: source page module, matrix, target page module.
pub type PageMap = BTreeMap<(i64, i64), (Quotient, Matrix, Quotient)>;

/// The matrices of `E_r(f)` at every cell of the union of both ranges.
pub fn page_map(f: &FilteredMap, r: usize) -> Result<PageMap> {
    let (s0, s1) = a_range(f.source());
    let (t0, t1) = a_range(f.target());
    let range = (s0.min(t0), s1.max(t1));
    let src = compute_page(f.source(), r, range);
    let tgt = compute_page(f.target(), r, range);
    let (lo, hi) = crate::complex::hull(f.source().carrier().support(), f.target().carrier().support());
    let mut out = BTreeMap::new();
    for n in lo..=hi {
        for a in range.0..=range.1 {
            let q = n - a;
            let sc = src.cells.get(&(a, q)).cloned().unwrap_or_else(|| cell(f.source(), r as i64, a, n));
            let tc = tgt.cells.get(&(a, q)).cloned().unwrap_or_else(|| cell(f.target(), r as i64, a, n));
            let m = induced_matrix(&sc, &f.carrier().f(n), &tc)?;
            out.insert((a, q), (sc, m, tc));
        }
    }
    Ok(out)
}

/// Whether `E_r(f)` is an isomorphism at every cell.
pub fn page_map_is_iso(f: &FilteredMap, r: usize) -> Result<bool> {
    let maps = page_map(f, r)?;
    for (sc, m, tc) in maps.values() {
        if sc.presentation() != tc.presentation() {
            return Ok(false);
        }
        if !presented_map_is_iso(&sc.as_presented(), m, &tc.as_presented())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least `r ≥ r_min` from which every differential vanishes, with that page.
pub fn stabilize(fk: &FilteredComplex, r_min: usize) -> (usize, SsPage) {
    let (pmin, pmax) = fk.bounds();
    let last = r_min.max((pmax - pmin + 1).max(1) as usize);
    let pages: Vec<SsPage> = (r_min..=last).map(|r| page(fk, r)).collect();
    let mut stable = last;
    for pg in pages.iter().rev() {
        if pg.differentials_vanish() {
            stable = pg.r;
        } else {
            break;
        }
    }
    let pg = pages.into_iter().find(|p| p.r == stable).expect("computed");
    (stable, pg)
}

/// How reported filtration indices are shifted relative to the raw abutment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recentering {
    /// `L_p Hⁿ := L'_{p−n}`.
    L,
    /// `W_p Hⁿ := W'_{p−n}`.
    W,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationStep {
    pub p: i64,
    pub step: ModulePresentation,
    pub graded: ModulePresentation,
}

/// An increasing filtration on `Hⁿ`, listed from the last zero step to the first full one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationOnCohomology {
    pub n: i64,
    pub total: ModulePresentation,
    pub offset: i64,
    pub rule: Option<Recentering>,
    /// Steps are sums of graded pieces rather than computed subquotients.
    pub split_assumed: bool,
    pub steps: Vec<FiltrationStep>,
}

impl FiltrationOnCohomology {
    /// Filtration with the given graded pieces, steps taken as split sums.
    pub fn from_graded(ring: Ring, n: i64, pieces: &BTreeMap<i64, ModulePresentation>) -> FiltrationOnCohomology {
        let nonzero: Vec<(&i64, &ModulePresentation)> = pieces.iter().filter(|(_, m)| !m.is_zero()).collect();
        let (lo, hi) = match (nonzero.first(), nonzero.last()) {
            (Some(a), Some(b)) => (*a.0, *b.0),
            _ => (0, 0),
        };
        let mut steps = Vec::new();
        let mut acc: Vec<ModulePresentation> = Vec::new();
        for p in lo - 1..=hi {
            let g = pieces.get(&p).cloned().unwrap_or_default();
            if p >= lo {
                acc.push(g.clone());
            }
            steps.push(FiltrationStep { p, step: ModulePresentation::direct_sum(ring, &acc), graded: g });
        }
        let total = ModulePresentation::direct_sum(ring, &acc);
        FiltrationOnCohomology { n, total, offset: 0, rule: None, split_assumed: true, steps }
    }

    pub fn graded(&self, p: i64) -> ModulePresentation {
        self.steps.iter().find(|s| s.p == p).map(|s| s.graded.clone()).unwrap_or_default()
    }

    /// `W_p`, using zero below and the total above the listed range.
    pub fn step(&self, p: i64) -> ModulePresentation {
        match (self.steps.first(), self.steps.last()) {
            (Some(first), _) if p < first.p => ModulePresentation::zero(),
            (_, Some(last)) if p > last.p => self.total.clone(),
            _ => self.steps.iter().find(|s| s.p == p).map(|s| s.step.clone()).unwrap_or_default(),
        }
    }

    /// Indices with nonzero graded piece.
    pub fn jumps(&self) -> Vec<i64> {
        self.steps.iter().filter(|s| !s.graded.is_zero()).map(|s| s.p).collect()
    }

    /// `Some(p)` when all of `Hⁿ` sits in one graded piece `p` (or `Hⁿ = 0`, giving `None`).
    pub fn pure_weight(&self) -> Option<i64> {
        match self.jumps().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    /// Graded pieces as a map `p ↦ Gr_p`.
    pub fn graded_pieces(&self) -> BTreeMap<i64, ModulePresentation> {
        self.steps.iter().filter(|s| !s.graded.is_zero()).map(|s| (s.p, s.graded.clone())).collect()
    }

    /// Shifts every index by `+n` and records the rule.
    pub fn recenter(&self, rule: Recentering) -> FiltrationOnCohomology {
        let mut out = self.clone();
        for s in &mut out.steps {
            s.p += self.n;
        }
        out.offset = self.offset + self.n;
        out.rule = Some(rule);
        out
    }

    /// `0 = F_{lo−1}` and `F_hi = Hⁿ` with every graded piece inside `[lo, hi]`.
    pub fn within(&self, lo: i64, hi: i64) -> bool {
        self.jumps().iter().all(|&p| p >= lo && p <= hi)
    }
}

/// `W'_p Hⁿ = image(Hⁿ(W_p K) → Hⁿ(K))` with raw indices.
pub fn abutment_filtration(fk: &FilteredComplex, n: i64) -> FiltrationOnCohomology {
    let k = fk.carrier();
    let cycles = k.cycles(n);
    let bd = k.boundaries(n);
    let total = Quotient::new(&cycles, &bd).expect("boundaries are cycles").presentation().clone();
    let (pmin, pmax) = fk.bounds();
    let s = |p: i64| cycles.intersect(&fk.w(p, n)).and_then(|c| c.sum(&bd)).expect("shapes agree");
    let mut steps = Vec::new();
    let mut prev = s(pmin - 1);
    steps.push(FiltrationStep {
        p: pmin - 1,
        step: Quotient::new(&prev, &bd).expect("contains boundaries").presentation().clone(),
        graded: ModulePresentation::zero(),
    });
    for p in pmin..=pmax {
        let cur = s(p);
        let step = Quotient::new(&cur, &bd).expect("contains boundaries").presentation().clone();
        let graded = Quotient::new(&cur, &prev).expect("increasing").presentation().clone();
        steps.push(FiltrationStep { p, step, graded });
        prev = cur;
    }
    // Trim to the last zero step and the first full step.
    let first = steps.iter().rposition(|s| s.step.is_zero()).unwrap_or(0);
    let last = steps.iter().position(|s| s.step == total).unwrap_or(steps.len() - 1).max(first);
    let steps = steps[first..=last].to_vec();
    FiltrationOnCohomology { n, total, offset: 0, rule: None, split_assumed: false, steps }
}

/// Compares abutment graded pieces with `E_∞` cells on total degree `n`.
/// Returns the positions `(a, q)` where they differ.
pub fn abutment_discrepancies(fk: &FilteredComplex, einf: &SsPage, n: i64) -> Vec<(i64, i64)> {
    let filt = abutment_filtration(fk, n);
    let (pmin, pmax) = fk.bounds();
    (pmin..=pmax)
        .filter_map(|p| {
            let (a, q) = (-p, n + p);
            (filt.graded(p) != einf.cell(a, q)).then_some((a, q))
        })
        .collect()
}

/// Spectral sequence known only from `E_1` rows: `E_1^{a,q} = row_q^a`, `d_1` the row differential.
#[derive(Clone, Debug)]
pub struct RowPages {
    ring: Ring,
    rows: BTreeMap<i64, CochainComplex>,
}

impl RowPages {
    pub fn new(ring: Ring, rows: BTreeMap<i64, CochainComplex>) -> Result<RowPages> {
        if let Some(k) = rows.values().find(|k| k.ring() != ring) {
            return Err(Error::RingMismatch(ring.to_string(), k.ring().to_string()));
        }
        Ok(RowPages { ring, rows })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> &BTreeMap<i64, CochainComplex> {
        &self.rows
    }

    pub fn e1(&self) -> PageSummary {
        let mut cells = BTreeMap::new();
        for (&q, row) in &self.rows {
            for a in row.degrees() {
                if row.dim(a) > 0 {
                    cells.insert((a, q), ModulePresentation::free(row.dim(a)));
                }
            }
        }
        PageSummary { r: 1, cells }
    }

    pub fn e2(&self) -> PageSummary {
        let cells = self
            .rows
            .par_iter()
            .flat_map_iter(|(&q, row)| row.degrees().map(move |a| ((a, q), row.cohomology(a))))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        PageSummary { r: 2, cells }
    }

    /// Total degrees with a nonzero `E_2` cell.
    pub fn degrees(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.e2().cells.keys().map(|&(a, q)| a + q).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Filtration on `Hⁿ` read from `E_2`, assuming degeneration there. Raw indices: `W'_{q−n}`.
    pub fn filtration_from_e2(&self, n: i64) -> FiltrationOnCohomology {
        let e2 = self.e2();
        let pieces = e2.cells.iter().filter(|(&(a, q), _)| a + q == n).map(|(&(_, q), m)| (q - n, m.clone())).collect();
        FiltrationOnCohomology::from_graded(self.ring, n, &pieces)
    }
}

/// Row complexes of a page together with their cohomology, keyed by row.
pub fn ss_rows_from_page(pg: &SsPage) -> BTreeMap<i64, Vec<(i64, ModulePresentation)>> {
    let mut out: BTreeMap<i64, Vec<(i64, ModulePresentation)>> = BTreeMap::new();
    for (a, q) in pg.positions() {
        out.entry(q).or_default().push((a, pg.cell(a, q)));
    }
    out
}
