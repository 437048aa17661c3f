//! Singularity and weight spectral sequences assembled from resolution and
//! compactification data, the Mayer–Vietoris and blow-up oracles, and the
//! `E_2` comparison.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{ChainMap, CochainComplex};
use crate::cubical::{AugmentedDiagram, CubicalDiagram};
use crate::error::{Error, Result};
use crate::filtered::FilteredComplex;
use crate::gysin::{GysinDatum, GysinMorphismDatum, Ranks};
use crate::linalg::{image, kernel, Matrix, ModulePresentation, Quotient, Ring, Submodule};
use crate::spectral::{
    abutment_discrepancies, abutment_filtration, page, stabilize, CellReport, FiltrationOnCohomology, PageReport,
    PageSummary, Recentering, RowPages,
};
use crate::verify::Verdict;

/// Input of the singularity (or compact weight) spectral sequence.
#[derive(Clone, Debug)]
pub enum ResolutionDatum {
    /// Cube of cochain models `X_α`, optionally augmented over a model of `X`.
    Chain { diagram: CubicalDiagram, augmented: Option<Box<AugmentedDiagram>> },
    /// Only the `E_1` rows `q ↦ (⊕_{|α|=a+1} H^q(X_α), d_1)`.
    Page(RowPages),
}

impl ResolutionDatum {
    pub fn chain(diagram: CubicalDiagram) -> ResolutionDatum {
        ResolutionDatum::Chain { diagram, augmented: None }
    }

    pub fn augmented(a: AugmentedDiagram) -> ResolutionDatum {
        ResolutionDatum::Chain { diagram: a.diagram().clone(), augmented: Some(Box::new(a)) }
    }

    /// The augmentation, when one was given.
    pub fn augmentation(&self) -> Option<&AugmentedDiagram> {
        match self {
            ResolutionDatum::Chain { augmented, .. } => augmented.as_deref(),
            ResolutionDatum::Page(_) => None,
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            ResolutionDatum::Chain { diagram, .. } => diagram.ring(),
            ResolutionDatum::Page(rows) => rows.ring(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Assembly {
    Singularity,
    WeightCompact,
    WeightSmooth,
    WeightGeneral,
}

impl Assembly {
    pub fn rule(self) -> Recentering {
        match self {
            Assembly::Singularity => Recentering::L,
            _ => Recentering::W,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Assembly::Singularity => "L",
            _ => "W",
        }
    }
}

/// Pages and recentered filtrations produced by one assembly.
#[derive(Clone, Debug)]
pub struct SsOutput {
    pub assembly: Assembly,
    pub ring: Ring,
    /// Only `E_1` and `E_2` are known; filtrations are read from `E_2`.
    pub page_level: bool,
    pub pages: Vec<PageReport>,
    pub e2: PageSummary,
    /// First page from which all differentials vanish (chain level only).
    pub stable_page: Option<usize>,
    pub filtrations: BTreeMap<i64, FiltrationOnCohomology>,
    pub warnings: Vec<String>,
}

impl SsOutput {
    pub fn filtration(&self, n: i64) -> Option<&FiltrationOnCohomology> {
        self.filtrations.get(&n)
    }

    /// Graded ranks and torsion `p ↦ Gr_p Hⁿ`.
    pub fn graded(&self, n: i64) -> BTreeMap<i64, ModulePresentation> {
        self.filtrations.get(&n).map(|f| f.graded_pieces()).unwrap_or_default()
    }

    /// Violations of `0 = F_{−1} ⊆ … ⊆ F_top = Hⁿ` with `top = n` for `L` and `2n` for `W`.
    pub fn bound_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&n, f) in &self.filtrations {
            let top = if self.assembly == Assembly::Singularity { n } else { 2 * n };
            if !f.within(0, top) {
                out.push(format!("H^{n}: graded pieces at {:?} outside [0, {top}]", f.jumps()));
            }
        }
        out
    }
}

fn chain_output(assembly: Assembly, fk: &FilteredComplex) -> SsOutput {
    let rule = assembly.rule();
    let (stable, einf) = stabilize(fk, 1);
    let mut pages: Vec<PageReport> = (1..stable).map(|r| page(fk, r).report()).collect();
    pages.push(einf.report());
    let e2 = page(fk, 2).summary();
    let mut filtrations = BTreeMap::new();
    let mut warnings = Vec::new();
    for n in fk.carrier().degrees() {
        let f = abutment_filtration(fk, n);
        let bad = abutment_discrepancies(fk, &einf, n);
        if !bad.is_empty() {
            warnings.push(format!("H^{n}: abutment differs from E_{stable} at {bad:?}"));
        }
        if !f.total.is_zero() {
            filtrations.insert(n, f.recenter(rule));
        }
    }
    SsOutput {
        assembly,
        ring: fk.ring(),
        page_level: false,
        pages,
        e2,
        stable_page: Some(stable),
        filtrations,
        warnings,
    }
}

fn e1_report(rows: &RowPages) -> PageReport {
    let mut cells = Vec::new();
    for (&q, row) in rows.rows() {
        for a in row.degrees() {
            if row.dim(a) == 0 {
                continue;
            }
            let d = row.d(a);
            let d = (!d.is_zero()).then(|| crate::io::MatrixRepr::from_matrix(&d));
            cells.push(CellReport { p: a, q, module: ModulePresentation::free(row.dim(a)), d });
        }
    }
    cells.sort_by_key(|c| (c.q, c.p));
    PageReport { r: 1, cells }
}

fn page_output(assembly: Assembly, rows: &RowPages, expected: Option<&BTreeMap<i64, ModulePresentation>>) -> SsOutput {
    let rule = assembly.rule();
    let e2 = rows.e2();
    let mut filtrations = BTreeMap::new();
    for n in rows.degrees() {
        filtrations.insert(n, rows.filtration_from_e2(n).recenter(rule));
    }
    let mut warnings = Vec::new();
    if let Some(expected) = expected {
        let degrees: BTreeSet<i64> = expected.keys().chain(filtrations.keys()).copied().collect();
        for n in degrees {
            let got = filtrations.get(&n).map(|f| f.total.clone()).unwrap_or_default();
            let want = expected.get(&n).cloned().unwrap_or_default();
            if got != want {
                warnings.push(format!(
                    "H^{n}: E_2 total {got} differs from the supplied {want}; the sequence does not degenerate at E_2"
                ));
            }
        }
    }
    SsOutput {
        assembly,
        ring: rows.ring(),
        page_level: true,
        pages: vec![e1_report(rows), PageReport::from_summary(&e2)],
        e2,
        stable_page: None,
        filtrations,
        warnings,
    }
}

fn resolution_output(assembly: Assembly, r: &ResolutionDatum) -> SsOutput {
    match r {
        ResolutionDatum::Chain { diagram, .. } => chain_output(assembly, &diagram.simple_r(1)),
        ResolutionDatum::Page(rows) => page_output(assembly, rows, None),
    }
}

/// `s¹` of the cube with trivial filtrations; all pages, `L_p Hⁿ = L'_{p−n}`.
pub fn singularity_ss(r: &ResolutionDatum) -> SsOutput {
    resolution_output(Assembly::Singularity, r)
}

/// Same computation as [`singularity_ss`], reported as a weight filtration.
pub fn weight_compact(r: &ResolutionDatum) -> SsOutput {
    resolution_output(Assembly::WeightCompact, r)
}

/// Gysin rows as `E_1`, filtration read from `E_2`.
pub fn weight_smooth(g: &GysinDatum, expected: Option<&BTreeMap<i64, ModulePresentation>>) -> SsOutput {
    let rows = g.rows().map(|q| (q, g.gysin_complex(q))).collect();
    let rows = RowPages::new(g.ring(), rows).expect("one ring");
    page_output(Assembly::WeightSmooth, &rows, expected)
}

/// A cube of compactified pairs `(X̄_α, D_α)` with Gysin morphisms along the
/// cofaces, optionally augmented over a pair `(X̄, D)`.
#[derive(Clone, Debug)]
pub struct GeneralWeightDatum {
    size: usize,
    ring: Ring,
    vertices: BTreeMap<u32, GysinDatum>,
    edges: BTreeMap<(u32, usize), GysinMorphismDatum>,
    base: Option<(GysinDatum, BTreeMap<usize, GysinMorphismDatum>)>,
}

impl GeneralWeightDatum {
    pub fn new(
        size: usize,
        vertices: BTreeMap<u32, GysinDatum>,
        edges: BTreeMap<(u32, usize), GysinMorphismDatum>,
        base: Option<(GysinDatum, BTreeMap<usize, GysinMorphismDatum>)>,
    ) -> Result<GeneralWeightDatum> {
        let ring =
            vertices.values().next().map(|g| g.ring()).ok_or_else(|| Error::InvalidDatum("no vertices".into()))?;
        for (&(mask, j), e) in &edges {
            let (Some(t), Some(s)) = (vertices.get(&mask), vertices.get(&(mask | (1 << j)))) else {
                return Err(Error::InvalidDatum(format!("edge {mask:#b} + {j} touches a missing vertex")));
            };
            if &e.target != t || &e.source != s {
                return Err(Error::InvalidDatum(format!("edge {mask:#b} + {j} has the wrong endpoints")));
            }
        }
        if let Some((b, augs)) = &base {
            for (&j, e) in augs {
                if &e.target != b || Some(&e.source) != vertices.get(&(1 << j)) {
                    return Err(Error::InvalidDatum(format!("augmentation {j} has the wrong endpoints")));
                }
            }
        }
        let d = GeneralWeightDatum { size, ring, vertices, edges, base };
        for q in d.rows() {
            d.row_diagram(q)?;
            if d.base.is_some() {
                d.row_augmented(q)?;
            }
        }
        Ok(d)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn vertices(&self) -> &BTreeMap<u32, GysinDatum> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<(u32, usize), GysinMorphismDatum> {
        &self.edges
    }

    pub fn base(&self) -> Option<&(GysinDatum, BTreeMap<usize, GysinMorphismDatum>)> {
        self.base.as_ref()
    }

    fn all_data(&self) -> impl Iterator<Item = &GysinDatum> {
        self.vertices.values().chain(self.base.as_ref().map(|b| &b.0))
    }

    fn width(&self) -> i64 {
        self.all_data().map(|g| g.components() as i64).max().unwrap_or(0)
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<i64> {
        let lo = self.all_data().map(|g| *g.rows().start()).min().unwrap_or(0);
        let hi = self.all_data().map(|g| *g.rows().end()).max().unwrap_or(-1);
        lo..=hi
    }

    fn row(&self, g: &GysinDatum, q: i64) -> CochainComplex {
        g.gysin_complex(q).widened(-self.width(), 0)
    }

    fn row_map(&self, e: &GysinMorphismDatum, q: i64) -> Result<ChainMap> {
        let f = e.gysin_map(q)?;
        ChainMap::from_fn(self.row(&e.target, q), self.row(&e.source, q), |p| f.f(p))
    }

    /// Row `q` as a cube of Gysin complexes.
    pub fn row_diagram(&self, q: i64) -> Result<CubicalDiagram> {
        let vs = self.vertices.iter().map(|(&m, g)| (m, self.row(g, q))).collect();
        let es = self.edges.iter().map(|(&(m, j), e)| Ok((m, j, self.row_map(e, q)?))).collect::<Result<Vec<_>>>()?;
        CubicalDiagram::plain(self.size, vs, es)
    }

    fn row_augmented(&self, q: i64) -> Result<Option<AugmentedDiagram>> {
        let Some((b, augs)) = &self.base else { return Ok(None) };
        let augs = augs.iter().map(|(&j, e)| Ok((j, self.row_map(e, q)?))).collect::<Result<Vec<_>>>()?;
        AugmentedDiagram::plain(self.row(b, q), self.row_diagram(q)?, augs).map(Some)
    }

    /// `E_1` rows: row `q` is the simple complex of the cube of Gysin rows.
    pub fn row_pages(&self) -> RowPages {
        let rows = self.rows().map(|q| (q, self.row_diagram(q).expect("validated").simple())).collect();
        RowPages::new(self.ring, rows).expect("one ring")
    }

    /// Whether the augmentation is a quasi-isomorphism on every row.
    pub fn gysin_acyclic(&self) -> Result<Verdict> {
        if self.base.is_none() {
            return Err(Error::InvalidDatum("acyclicity needs an augmented datum".into()));
        }
        let mut failures = Vec::new();
        for q in self.rows() {
            let a = self.row_augmented(q)?.expect("augmented");
            let cone = a.cone()?;
            for n in cone.degrees() {
                let h = cone.cohomology(n);
                if !h.is_zero() {
                    failures.push(format!("row {q}: cone has H^{n} = {h}"));
                }
            }
        }
        Ok(Verdict::new("gysin-acyclic", failures))
    }
}

/// `E_1` = simple of the Gysin cube per row, filtration read from `E_2`.
pub fn weight_general(d: &GeneralWeightDatum, expected: Option<&BTreeMap<i64, ModulePresentation>>) -> SsOutput {
    page_output(Assembly::WeightGeneral, &d.row_pages(), expected)
}

/// Which pullback of an acyclic square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareMap {
    /// `f*: H(X) → H(X̃)`.
    F,
    /// `i*: H(X) → H(Y)`.
    I,
    /// `j*: H(X̃) → H(Ỹ)`.
    J,
    /// `g*: H(Y) → H(Ỹ)`.
    G,
}

/// Cohomology of an acyclic square `Ỹ → X̃`, `Ỹ → Y`, `X̃ → X`, `Y → X`.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareCohomologyDatum {
    ring: Ring,
    hx: Ranks,
    hxt: Ranks,
    hy: Ranks,
    hyt: Ranks,
    maps: BTreeMap<SquareMap, BTreeMap<i64, Matrix>>,
}

impl SquareCohomologyDatum {
    pub fn new(
        ring: Ring,
        [hx, hxt, hy, hyt]: [Ranks; 4],
        maps: BTreeMap<SquareMap, BTreeMap<i64, Matrix>>,
    ) -> Result<SquareCohomologyDatum> {
        let s = SquareCohomologyDatum { ring, hx, hxt, hy, hyt, maps };
        for (&which, ms) in &s.maps {
            let (src, tgt) = s.ends(which);
            for (&q, m) in ms {
                let (rows, cols) = (tgt.get(&q).copied().unwrap_or(0), src.get(&q).copied().unwrap_or(0));
                if m.ring() != ring || m.rows() != rows || m.cols() != cols {
                    return Err(Error::InvalidDatum(format!("{which:?} in degree {q} should be {rows}×{cols}")));
                }
            }
        }
        for q in s.degrees() {
            let a = s.map(SquareMap::J, q).mul(&s.map(SquareMap::F, q))?;
            let b = s.map(SquareMap::G, q).mul(&s.map(SquareMap::I, q))?;
            if a != b {
                return Err(Error::InvalidDatum(format!("square does not commute in degree {q}")));
            }
        }
        Ok(s)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Ranks of `H(X), H(X̃), H(Y), H(Ỹ)`.
    pub fn ranks(&self) -> [&Ranks; 4] {
        [&self.hx, &self.hxt, &self.hy, &self.hyt]
    }

    pub fn maps(&self) -> &BTreeMap<SquareMap, BTreeMap<i64, Matrix>> {
        &self.maps
    }

    fn ends(&self, which: SquareMap) -> (&Ranks, &Ranks) {
        match which {
            SquareMap::F => (&self.hx, &self.hxt),
            SquareMap::I => (&self.hx, &self.hy),
            SquareMap::J => (&self.hxt, &self.hyt),
            SquareMap::G => (&self.hy, &self.hyt),
        }
    }

    pub fn degrees(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.ranks().iter().flat_map(|r| r.keys().copied()).collect();
        set.into_iter().collect()
    }

    /// The pullback in degree `q`, zero when not given.
    pub fn map(&self, which: SquareMap, q: i64) -> Matrix {
        let (src, tgt) = self.ends(which);
        self.maps.get(&which).and_then(|m| m.get(&q)).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.ring, tgt.get(&q).copied().unwrap_or(0), src.get(&q).copied().unwrap_or(0))
        })
    }

    /// Replaces one pullback family.
    pub fn with_map(&self, which: SquareMap, maps: BTreeMap<i64, Matrix>) -> Result<SquareCohomologyDatum> {
        let mut all = self.maps.clone();
        all.insert(which, maps);
        SquareCohomologyDatum::new(
            self.ring,
            [self.hx.clone(), self.hxt.clone(), self.hy.clone(), self.hyt.clone()],
            all,
        )
    }

    /// The square as an augmented 2-cube of cohomology complexes with zero differential.
    pub fn to_augmented_diagram(&self) -> Result<AugmentedDiagram> {
        let qs = self.degrees();
        let (lo, hi) = match (qs.first(), qs.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (0, -1),
        };
        let cx = |r: &Ranks| {
            CochainComplex::with_zero_differential(
                self.ring,
                lo,
                (lo..=hi).map(|q| r.get(&q).copied().unwrap_or(0)).collect(),
            )
        };
        let (x, xt, y, yt) = (cx(&self.hx), cx(&self.hxt), cx(&self.hy), cx(&self.hyt));
        let cm = |s: &CochainComplex, t: &CochainComplex, w: SquareMap| {
            ChainMap::from_fn(s.clone(), t.clone(), |q| self.map(w, q))
        };
        let d = CubicalDiagram::plain(
            2,
            vec![(0b01, xt.clone()), (0b10, y.clone()), (0b11, yt.clone())],
            vec![(0b01, 1, cm(&xt, &yt, SquareMap::J)?), (0b10, 0, cm(&y, &yt, SquareMap::G)?)],
        )?;
        AugmentedDiagram::plain(x.clone(), d, vec![(0, cm(&x, &xt, SquareMap::F)?), (1, cm(&x, &y, SquareMap::I)?)])
    }
}

/// Exactness of `0 → H^q(X) → H^q(X̃) ⊕ H^q(Y) → H^q(Ỹ) → 0` at each spot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvDegree {
    pub q: i64,
    pub injective: bool,
    pub middle_exact: bool,
    pub surjective: bool,
}

impl MvDegree {
    pub fn exact(&self) -> bool {
        self.injective && self.middle_exact && self.surjective
    }
}

pub fn mayer_vietoris_check(s: &SquareCohomologyDatum) -> Vec<MvDegree> {
    s.degrees()
        .into_iter()
        .map(|q| {
            let a = s.map(SquareMap::F, q).vstack(&s.map(SquareMap::I, q).neg()).expect("same source");
            let b = s.map(SquareMap::J, q).hstack(&s.map(SquareMap::G, q)).expect("same target");
            MvDegree {
                q,
                injective: kernel(&a).is_zero(),
                middle_exact: kernel(&b) == image(&a),
                surjective: image(&b).is_full(),
            }
        })
        .collect()
}

pub fn mv_verdict(s: &SquareCohomologyDatum) -> Verdict {
    let failures = mayer_vietoris_check(s)
        .into_iter()
        .filter(|d| !d.exact())
        .map(|d| {
            format!(
                "q = {}: injective {}, middle exact {}, surjective {}",
                d.q, d.injective, d.middle_exact, d.surjective
            )
        })
        .collect();
    Verdict::new("mv", failures)
}

/// Cohomological input for the blow-up of `X` along a smooth center `Y` of codimension `m`.
#[derive(Clone, Debug)]
pub struct BlowupInput {
    pub ring: Ring,
    pub hx: Ranks,
    pub hy: Ranks,
    pub m: usize,
    /// `i*: H^k(X) → H^k(Y)`.
    pub restriction: BTreeMap<i64, Matrix>,
    /// `i_*: H^k(Y) → H^{k+2m}(X)`.
    pub pushforward: BTreeMap<i64, Matrix>,
    /// `c_1, …, c_{m−1}` of the normal bundle, `c_i: H^k(Y) → H^{k+2i}(Y)`; `c_m = i* i_*`.
    pub chern: Vec<BTreeMap<i64, Matrix>>,
}

impl BlowupInput {
    fn rank_y(&self, k: i64) -> usize {
        self.hy.get(&k).copied().unwrap_or(0)
    }

    fn rank_x(&self, k: i64) -> usize {
        self.hx.get(&k).copied().unwrap_or(0)
    }

    fn given(&self, m: Option<&BTreeMap<i64, Matrix>>, k: i64, rows: usize, cols: usize) -> Result<Matrix> {
        match m.and_then(|m| m.get(&k)) {
            Some(x) if x.rows() == rows && x.cols() == cols => Ok(x.clone()),
            Some(x) => {
                Err(Error::InvalidDatum(format!("degree {k} map is {}×{}, expected {rows}×{cols}", x.rows(), x.cols())))
            }
            None => Ok(Matrix::zeros(self.ring, rows, cols)),
        }
    }

    fn restriction(&self, k: i64) -> Result<Matrix> {
        self.given(Some(&self.restriction), k, self.rank_y(k), self.rank_x(k))
    }

    fn pushforward(&self, k: i64) -> Result<Matrix> {
        let s = 2 * self.m as i64;
        self.given(Some(&self.pushforward), k, self.rank_x(k + s), self.rank_y(k))
    }

    /// `c_i` on `H^k(Y)`, with `c_0 = 1` and `c_m = i* i_*`.
    fn chern(&self, i: usize, k: i64) -> Result<Matrix> {
        let (rows, cols) = (self.rank_y(k + 2 * i as i64), self.rank_y(k));
        if i == 0 {
            return Ok(Matrix::identity(self.ring, cols));
        }
        if i == self.m {
            return self.restriction(k + 2 * i as i64)?.mul(&self.pushforward(k)?);
        }
        self.given(self.chern.get(i - 1), k, rows, cols)
    }

    /// Blocks `(k, offset, rank)` of `H^q(Ỹ) = ⊕_k ξ^k H^{q−2k}(Y)`.
    fn yt_blocks(&self, q: i64) -> Vec<(usize, usize, usize)> {
        let mut off = 0;
        (0..self.m)
            .map(|k| {
                let r = self.rank_y(q - 2 * k as i64);
                let b = (k, off, r);
                off += r;
                b
            })
            .collect()
    }
}

/// Projective-bundle shape for `Ỹ` and the cokernel of
/// `H^{q−2m}(Y) → H^{q−2}(Ỹ) ⊕ H^q(X)` for `X̃`.
pub fn blowup_synthesize(b: &BlowupInput) -> Result<SquareCohomologyDatum> {
    if b.m == 0 {
        return Err(Error::InvalidDatum("codimension must be at least 1".into()));
    }
    if b.chern.len() >= b.m {
        return Err(Error::InvalidDatum(format!("{} Chern classes given for codimension {}", b.chern.len(), b.m)));
    }
    let ring = b.ring;
    let mi = b.m as i64;
    let ks: BTreeSet<i64> = b.hx.keys().chain(b.hy.keys()).copied().collect();
    let (lo, hi) = match (ks.first(), ks.last()) {
        (Some(&l), Some(&h)) => (l, h + 2 * mi),
        _ => (0, -1),
    };
    let mut hx = Ranks::new();
    let mut hxt = Ranks::new();
    let mut hy = Ranks::new();
    let mut hyt = Ranks::new();
    let mut maps: BTreeMap<SquareMap, BTreeMap<i64, Matrix>> = BTreeMap::new();
    for q in lo..=hi {
        let nx = b.rank_x(q);
        let ny = b.rank_y(q);
        let yt_q = b.yt_blocks(q);
        let nyt: usize = yt_q.iter().map(|x| x.2).sum();
        let yt_prev = b.yt_blocks(q - 2);
        let nprev: usize = yt_prev.iter().map(|x| x.2).sum();
        // φ: H^{q−2m}(Y) → H^{q−2}(Ỹ) ⊕ H^q(X).
        let src = b.rank_y(q - 2 * mi);
        let mut phi = Matrix::zeros(ring, nprev + nx, src);
        for &(k, off, _) in &yt_prev {
            phi.set_block(off, 0, &b.chern(b.m - 1 - k, q - 2 * mi)?);
        }
        phi.set_block(nprev, 0, &b.pushforward(q - 2 * mi)?.neg());
        let xt = Quotient::new(&Submodule::full(ring, nprev + nx), &image(&phi))?;
        let nxt = xt.presentation().generators();
        if !xt.presentation().torsion.is_empty() {
            return Err(Error::InvalidDatum(format!("H^{q} of the blow-up has torsion")));
        }
        // f*: x ↦ [0 ⊕ x].
        let mut f = Matrix::zeros(ring, nxt, nx);
        for c in 0..nx {
            let mut v = vec![ring.zero(); nprev + nx];
            v[nprev + c] = ring.one();
            let co = xt.coordinates(&v)?;
            for (r, x) in co.into_iter().enumerate() {
                f.set(r, c, x);
            }
        }
        // j*[z ⊕ x] = −ξ z + g* i* x, reducing ξ^m by the bundle relation.
        let i_star = b.restriction(q)?;
        let mut jmap = Matrix::zeros(ring, nyt, nprev + nx);
        for &(k, off, r) in &yt_q {
            if r == 0 {
                continue;
            }
            if k >= 1 {
                let (_, poff, pr) = yt_prev[k - 1];
                jmap.set_block(off, poff, &Matrix::identity(ring, pr).neg());
            }
            let (_, loff, _) = yt_prev[b.m - 1];
            jmap.set_block(off, loff, &b.chern(b.m - k, q - 2 * mi)?);
            if k == 0 {
                jmap.set_block(off, nprev, &i_star);
            }
        }
        let mut j = Matrix::zeros(ring, nyt, nxt);
        for c in 0..nxt {
            let v = jmap.apply(&xt.generator(c))?;
            for (r, x) in v.into_iter().enumerate() {
                j.set(r, c, x);
            }
        }
        let mut g = Matrix::zeros(ring, nyt, ny);
        g.set_block(0, 0, &Matrix::identity(ring, ny));
        for (h, n) in [(&mut hx, nx), (&mut hxt, nxt), (&mut hy, ny), (&mut hyt, nyt)] {
            if n > 0 {
                h.insert(q, n);
            }
        }
        for (w, m) in [(SquareMap::F, f), (SquareMap::I, i_star), (SquareMap::J, j), (SquareMap::G, g)] {
            if m.rows() > 0 && m.cols() > 0 {
                maps.entry(w).or_default().insert(q, m);
            }
        }
    }
    SquareCohomologyDatum::new(ring, [hx, hxt, hy, hyt], maps)
}

/// Equal `E_2` cells and equal recentered graded pieces in every degree.
pub fn e2_compare(a: &SsOutput, b: &SsOutput) -> Verdict {
    let mut failures = Vec::new();
    if a.ring != b.ring {
        failures.push(format!("rings differ: {} vs {}", a.ring, b.ring));
    }
    let keys: BTreeSet<(i64, i64)> = a.e2.cells.keys().chain(b.e2.cells.keys()).copied().collect();
    for (p, q) in keys {
        let (x, y) = (a.e2.cell(p, q), b.e2.cell(p, q));
        if x != y {
            failures.push(format!("E_2^({p},{q}): {x} vs {y}"));
        }
    }
    let degrees: BTreeSet<i64> = a.filtrations.keys().chain(b.filtrations.keys()).copied().collect();
    for n in degrees {
        let (x, y) = (a.graded(n), b.graded(n));
        if x != y {
            failures.push(format!("Gr H^{n}: {x:?} vs {y:?}"));
        }
    }
    Verdict::new("e2-independence", failures)
}
