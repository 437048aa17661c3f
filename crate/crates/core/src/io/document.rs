//! Versioned input documents: `{schema, kind, ring, options, payload}`.
//!
//! The payload is kept as a JSON value so that re-serializing a parsed
//! document is byte-stable: objects come out with sorted keys.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{MatrixRepr, ScalarRepr};
use crate::complex::{ChainMap, CochainComplex, ComplexRepr};
use crate::cubical::{AugmentedDiagram, CubicalDiagram};
use crate::descent::{BlowupInput, GeneralWeightDatum, ResolutionDatum, SquareCohomologyDatum, SquareMap};
use crate::error::{Error, Result};
use crate::filtered::{FilteredComplex, FilteredMap};
use crate::gysin::{GysinDatum, GysinMode, GysinMorphismDatum, Ranks};
use crate::linalg::{Matrix, ModulePresentation, Ring, Submodule};
use crate::spaces::{CellMap, DeltaModel};
use crate::spectral::RowPages;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    FilteredComplex,
    Cubical,
    Resolution,
    Gysin,
    GeneralWeight,
    Square,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<GysinMode>,
    /// Default page for `pages`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// Known cohomology of the open space, checked against `E_2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Vec<ExpectedRepr>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedRepr {
    pub n: i64,
    #[serde(flatten)]
    pub module: ModulePresentation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema: u32,
    pub kind: Kind,
    pub ring: Ring,
    #[serde(default)]
    pub options: Options,
    pub payload: Value,
}

/// A validated document.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub ring: Ring,
    pub options: Options,
    pub input: Input,
}

#[derive(Clone, Debug)]
pub enum Input {
    FilteredComplex(FilteredComplex),
    Cubical(CubicalDiagram),
    Resolution(ResolutionDatum),
    Gysin(GysinDatum),
    GeneralWeight(GeneralWeightDatum),
    Square(SquareCohomologyDatum),
}

impl Parsed {
    pub fn expected(&self) -> Option<BTreeMap<i64, ModulePresentation>> {
        self.options.expected.as_ref().map(|v| v.iter().map(|e| (e.n, e.module.clone())).collect())
    }
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

impl Document {
    pub fn new<P: Serialize>(kind: Kind, ring: Ring, options: Options, payload: &P) -> Document {
        Document { schema: SCHEMA, kind, ring, options, payload: serde_json::to_value(payload).expect("serializable") }
    }

    pub fn parse_str(s: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(s).map_err(parse_err)?;
        if doc.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {}", doc.schema)));
        }
        if doc.options.mode == Some(GysinMode::Real) && doc.ring != Ring::PrimeField(2) {
            return Err(Error::Parse("real mode needs ring Z/2".into()));
        }
        Ok(doc)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    fn payload<P: for<'de> Deserialize<'de>>(&self) -> Result<P> {
        serde_json::from_value(self.payload.clone()).map_err(|e| Error::Parse(format!("{:?} payload: {e}", self.kind)))
    }

    /// Validates the payload and builds the domain object.
    pub fn build(&self) -> Result<Parsed> {
        let ring = self.ring;
        let mode = self.options.mode.unwrap_or(GysinMode::Complex);
        let input = match self.kind {
            Kind::FilteredComplex => Input::FilteredComplex(self.payload::<FilteredComplexRepr>()?.build(ring)?),
            Kind::Cubical => Input::Cubical(self.payload::<CubicalRepr>()?.build(ring)?),
            Kind::Resolution => Input::Resolution(self.payload::<ResolutionRepr>()?.build(ring)?),
            Kind::Gysin => Input::Gysin(self.payload::<GysinRepr>()?.build(ring, mode)?),
            Kind::GeneralWeight => Input::GeneralWeight(self.payload::<GeneralWeightRepr>()?.build(ring, mode)?),
            Kind::Square => Input::Square(self.payload::<SquareRepr>()?.build(ring)?),
        };
        Ok(Parsed { ring, options: self.options.clone(), input })
    }
}

fn matrices(ms: &[MatrixRepr], ring: Ring) -> Result<Vec<Matrix>> {
    ms.iter().map(|m| m.to_matrix(ring)).collect()
}

fn chain_map(src: &CochainComplex, tgt: &CochainComplex, ms: &[MatrixRepr], ring: Ring) -> Result<ChainMap> {
    let ms = matrices(ms, ring)?;
    if ms.len() != src.dims().len() {
        return Err(Error::InvalidChainMap(format!("{} matrices for {} source degrees", ms.len(), src.dims().len())));
    }
    ChainMap::new(src.clone(), tgt.clone(), ms)
}

fn chain_map_repr(f: &ChainMap) -> Vec<MatrixRepr> {
    f.source().degrees().map(|n| MatrixRepr::from_matrix(&f.f(n))).collect()
}

// Filtered complexes.

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FiltrationRepr {
    Trivial,
    Canonical,
    /// Level of every basis vector, per degree.
    Levels {
        levels: Vec<Vec<i64>>,
    },
    /// `W(p, n)` by basis rows for `p ∈ [pmin, pmax)`.
    Submodules {
        pmin: i64,
        pmax: i64,
        steps: Vec<StepRepr>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRepr {
    pub p: i64,
    pub n: i64,
    pub basis: Vec<Vec<ScalarRepr>>,
}

impl FiltrationRepr {
    pub fn from_filtered(fk: &FilteredComplex) -> FiltrationRepr {
        let (pmin, pmax) = fk.bounds();
        let steps = (pmin..pmax)
            .flat_map(|p| fk.carrier().degrees().map(move |n| (p, n)))
            .map(|(p, n)| StepRepr {
                p,
                n,
                basis: fk.w(p, n).basis().iter().map(|v| v.iter().map(ScalarRepr::from_scalar).collect()).collect(),
            })
            .collect();
        FiltrationRepr::Submodules { pmin, pmax, steps }
    }

    pub fn build(&self, k: &CochainComplex) -> Result<FilteredComplex> {
        let ring = k.ring();
        match self {
            FiltrationRepr::Trivial => Ok(FilteredComplex::trivial(k)),
            FiltrationRepr::Canonical => Ok(FilteredComplex::canonical(k)),
            FiltrationRepr::Levels { levels } => FilteredComplex::from_basis_levels(k, levels),
            FiltrationRepr::Submodules { pmin, pmax, steps } => {
                let mut table = BTreeMap::new();
                for s in steps {
                    let rows = s
                        .basis
                        .iter()
                        .map(|v| v.iter().map(|x| x.to_scalar(ring)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    table.insert((s.p, s.n), Submodule::new(ring, k.dim(s.n), rows)?);
                }
                let missing =
                    (*pmin..*pmax).flat_map(|p| k.degrees().map(move |n| (p, n))).find(|key| !table.contains_key(key));
                if let Some((p, n)) = missing {
                    return Err(Error::InvalidFiltration(format!("no step W({p}, {n})")));
                }
                FilteredComplex::from_fn(k.clone(), *pmin, *pmax, |p, n| table[&(p, n)].clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilteredComplexRepr {
    pub complex: ComplexRepr,
    pub filtration: FiltrationRepr,
}

impl FilteredComplexRepr {
    pub fn from_filtered(fk: &FilteredComplex) -> FilteredComplexRepr {
        FilteredComplexRepr {
            complex: ComplexRepr::from_complex(fk.carrier()),
            filtration: FiltrationRepr::from_filtered(fk),
        }
    }

    pub fn build(&self, ring: Ring) -> Result<FilteredComplex> {
        self.filtration.build(&self.complex.to_complex(ring)?)
    }
}

// Cubical diagrams.

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicalVertexRepr {
    pub mask: u32,
    #[serde(flatten)]
    pub complex: FilteredComplexRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CofaceRepr {
    pub mask: u32,
    pub j: usize,
    /// One matrix per source degree.
    pub maps: Vec<MatrixRepr>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicalRepr {
    pub size: usize,
    pub vertices: Vec<CubicalVertexRepr>,
    pub cofaces: Vec<CofaceRepr>,
}

impl CubicalRepr {
    pub fn from_diagram(d: &CubicalDiagram) -> CubicalRepr {
        CubicalRepr {
            size: d.size(),
            vertices: d
                .vertices()
                .map(|(mask, fk)| CubicalVertexRepr { mask, complex: FilteredComplexRepr::from_filtered(fk) })
                .collect(),
            cofaces: d
                .cofaces()
                .map(|(mask, j, f)| CofaceRepr { mask, j, maps: chain_map_repr(f.carrier()) })
                .collect(),
        }
    }

    pub fn build(&self, ring: Ring) -> Result<CubicalDiagram> {
        let mut vs = BTreeMap::new();
        for v in &self.vertices {
            vs.insert(v.mask, v.complex.build(ring)?);
        }
        let mut cs = Vec::new();
        for c in &self.cofaces {
            let (Some(s), Some(t)) = (vs.get(&c.mask), vs.get(&(c.mask | (1 << c.j)))) else {
                return Err(Error::InvalidDiagram(format!("coface {:#b} + {} touches a missing vertex", c.mask, c.j)));
            };
            let cm = chain_map(s.carrier(), t.carrier(), &c.maps, ring)?;
            cs.push((c.mask, c.j, FilteredMap::new(s.clone(), t.clone(), cm)?));
        }
        CubicalDiagram::new(self.size, vs.into_iter().collect(), cs)
    }
}

// Resolutions.

/// A vertex space: explicit cochains or a Δ-complex model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceRepr {
    Complex(ComplexRepr),
    Model(DeltaModel),
}

impl SpaceRepr {
    fn cochains(&self, ring: Ring) -> Result<CochainComplex> {
        match self {
            SpaceRepr::Complex(c) => c.to_complex(ring),
            SpaceRepr::Model(m) => Ok(DeltaModel::new(m.cells.clone())?.cochains(ring)),
        }
    }
}

/// A pullback between vertex spaces: matrices per source degree, or a cell map
/// between models (given in the geometric direction, target space to source space).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PullbackRepr {
    Maps(Vec<MatrixRepr>),
    Cells(Vec<Vec<Option<usize>>>),
}

impl PullbackRepr {
    fn build(&self, from: &SpaceRepr, to: &SpaceRepr, ring: Ring) -> Result<ChainMap> {
        match self {
            PullbackRepr::Maps(ms) => chain_map(&from.cochains(ring)?, &to.cochains(ring)?, ms, ring),
            PullbackRepr::Cells(assign) => {
                let (SpaceRepr::Model(a), SpaceRepr::Model(b)) = (from, to) else {
                    return Err(Error::InvalidModel("cell maps need models at both ends".into()));
                };
                let f = CellMap::new(b.clone(), a.clone(), assign.clone())?;
                let cm = f.induced(ring)?;
                // The source may be wider than the model's own support.
                chain_map(&from.cochains(ring)?, &to.cochains(ring)?, &chain_map_repr(&cm), ring)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceVertexRepr {
    pub mask: u32,
    pub space: SpaceRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceCofaceRepr {
    pub mask: u32,
    pub j: usize,
    pub pullback: PullbackRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AugmentationRepr {
    pub j: usize,
    pub pullback: PullbackRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseRepr {
    pub space: SpaceRepr,
    pub augmentations: Vec<AugmentationRepr>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowRepr {
    pub q: i64,
    pub complex: ComplexRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "snake_case", deny_unknown_fields)]
pub enum ResolutionRepr {
    Chain {
        size: usize,
        vertices: Vec<SpaceVertexRepr>,
        cofaces: Vec<SpaceCofaceRepr>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<BaseRepr>,
    },
    Page {
        rows: Vec<RowRepr>,
    },
}

impl ResolutionRepr {
    pub fn build(&self, ring: Ring) -> Result<ResolutionDatum> {
        match self {
            ResolutionRepr::Page { rows } => {
                let rows = rows.iter().map(|r| Ok((r.q, r.complex.to_complex(ring)?))).collect::<Result<_>>()?;
                Ok(ResolutionDatum::Page(RowPages::new(ring, rows)?))
            }
            ResolutionRepr::Chain { size, vertices, cofaces, base } => {
                let spaces: BTreeMap<u32, &SpaceRepr> = vertices.iter().map(|v| (v.mask, &v.space)).collect();
                let vs = vertices.iter().map(|v| Ok((v.mask, v.space.cochains(ring)?))).collect::<Result<Vec<_>>>()?;
                let mut cs = Vec::new();
                for c in cofaces {
                    let (Some(s), Some(t)) = (spaces.get(&c.mask), spaces.get(&(c.mask | (1 << c.j)))) else {
                        return Err(Error::InvalidDiagram(format!(
                            "coface {:#b} + {} touches a missing vertex",
                            c.mask, c.j
                        )));
                    };
                    cs.push((c.mask, c.j, c.pullback.build(s, t, ring)?));
                }
                let d = CubicalDiagram::plain(*size, vs, cs)?;
                match base {
                    None => Ok(ResolutionDatum::chain(d)),
                    Some(b) => {
                        let mut augs = Vec::new();
                        for a in &b.augmentations {
                            let t = spaces
                                .get(&(1 << a.j))
                                .ok_or_else(|| Error::InvalidAugmentation(format!("no singleton {}", a.j)))?;
                            augs.push((a.j, a.pullback.build(&b.space, t, ring)?));
                        }
                        Ok(ResolutionDatum::augmented(AugmentedDiagram::plain(b.space.cochains(ring)?, d, augs)?))
                    }
                }
            }
        }
    }
}

// Gysin data.

fn ranks_repr(r: &Ranks) -> Vec<[i64; 2]> {
    r.iter().filter(|e| *e.1 > 0).map(|(&k, &n)| [k, n as i64]).collect()
}

fn ranks_from(v: &[[i64; 2]]) -> Result<Ranks> {
    let mut out = Ranks::new();
    for &[k, n] in v {
        if n < 0 || out.insert(k, n as usize).is_some() {
            return Err(Error::Parse(format!("bad rank entry [{k}, {n}]")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumRepr {
    pub mask: u32,
    /// `[degree, rank]` pairs.
    pub ranks: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GysinMapRepr {
    /// Source stratum `J`.
    pub stratum: u32,
    /// The component dropped from `J`.
    pub drop: usize,
    pub degree: i64,
    pub matrix: MatrixRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GysinRepr {
    pub components: usize,
    pub strata: Vec<StratumRepr>,
    pub gysin: Vec<GysinMapRepr>,
}

impl GysinRepr {
    pub fn from_datum(g: &GysinDatum) -> GysinRepr {
        GysinRepr {
            components: g.components(),
            strata: g.strata().iter().map(|(&mask, r)| StratumRepr { mask, ranks: ranks_repr(r) }).collect(),
            gysin: g
                .gysin_maps()
                .iter()
                .flat_map(|(&(stratum, drop), ms)| {
                    ms.iter().map(move |(&degree, m)| GysinMapRepr {
                        stratum,
                        drop,
                        degree,
                        matrix: MatrixRepr::from_matrix(m),
                    })
                })
                .collect(),
        }
    }

    pub fn build(&self, ring: Ring, mode: GysinMode) -> Result<GysinDatum> {
        let mut strata = BTreeMap::new();
        for s in &self.strata {
            if strata.insert(s.mask, ranks_from(&s.ranks)?).is_some() {
                return Err(Error::InvalidGysin(format!("stratum {:#b} given twice", s.mask)));
            }
        }
        let mut gysin: BTreeMap<(u32, usize), BTreeMap<i64, Matrix>> = BTreeMap::new();
        for g in &self.gysin {
            gysin.entry((g.stratum, g.drop)).or_default().insert(g.degree, g.matrix.to_matrix(ring)?);
        }
        GysinDatum::new(ring, mode, self.components, strata, gysin)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullbackMapRepr {
    /// Stratum `I` of the target pair.
    pub from: u32,
    /// Stratum `J` of the source pair.
    pub to: u32,
    pub degree: i64,
    pub matrix: MatrixRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismRepr {
    pub multiplicity: Vec<Vec<i64>>,
    pub pullbacks: Vec<PullbackMapRepr>,
}

impl MorphismRepr {
    pub fn from_datum(f: &GysinMorphismDatum) -> MorphismRepr {
        MorphismRepr {
            multiplicity: f.multiplicity.clone(),
            pullbacks: f
                .pullbacks
                .iter()
                .flat_map(|(&(from, to), ms)| {
                    ms.iter().map(move |(&degree, m)| PullbackMapRepr {
                        from,
                        to,
                        degree,
                        matrix: MatrixRepr::from_matrix(m),
                    })
                })
                .collect(),
        }
    }

    pub fn build(&self, source: &GysinDatum, target: &GysinDatum, ring: Ring) -> Result<GysinMorphismDatum> {
        let mut pb: BTreeMap<(u32, u32), BTreeMap<i64, Matrix>> = BTreeMap::new();
        for p in &self.pullbacks {
            pb.entry((p.from, p.to)).or_default().insert(p.degree, p.matrix.to_matrix(ring)?);
        }
        GysinMorphismDatum::new(source.clone(), target.clone(), self.multiplicity.clone(), pb)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairVertexRepr {
    pub mask: u32,
    pub datum: GysinRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRepr {
    pub mask: u32,
    pub j: usize,
    pub morphism: MorphismRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairAugmentationRepr {
    pub j: usize,
    pub morphism: MorphismRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairBaseRepr {
    pub datum: GysinRepr,
    pub augmentations: Vec<PairAugmentationRepr>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralWeightRepr {
    pub size: usize,
    pub vertices: Vec<PairVertexRepr>,
    pub edges: Vec<EdgeRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<PairBaseRepr>,
}

impl GeneralWeightRepr {
    pub fn from_datum(d: &GeneralWeightDatum) -> GeneralWeightRepr {
        GeneralWeightRepr {
            size: d.size(),
            vertices: d
                .vertices()
                .iter()
                .map(|(&mask, g)| PairVertexRepr { mask, datum: GysinRepr::from_datum(g) })
                .collect(),
            edges: d
                .edges()
                .iter()
                .map(|(&(mask, j), e)| EdgeRepr { mask, j, morphism: MorphismRepr::from_datum(e) })
                .collect(),
            base: d.base().map(|(b, augs)| PairBaseRepr {
                datum: GysinRepr::from_datum(b),
                augmentations: augs
                    .iter()
                    .map(|(&j, e)| PairAugmentationRepr { j, morphism: MorphismRepr::from_datum(e) })
                    .collect(),
            }),
        }
    }

    pub fn build(&self, ring: Ring, mode: GysinMode) -> Result<GeneralWeightDatum> {
        let mut vs = BTreeMap::new();
        for v in &self.vertices {
            vs.insert(v.mask, v.datum.build(ring, mode)?);
        }
        let mut es = BTreeMap::new();
        for e in &self.edges {
            let (Some(t), Some(s)) = (vs.get(&e.mask), vs.get(&(e.mask | (1 << e.j)))) else {
                return Err(Error::InvalidDatum(format!("edge {:#b} + {} touches a missing vertex", e.mask, e.j)));
            };
            es.insert((e.mask, e.j), e.morphism.build(s, t, ring)?);
        }
        let base = match &self.base {
            None => None,
            Some(b) => {
                let bd = b.datum.build(ring, mode)?;
                let mut augs = BTreeMap::new();
                for a in &b.augmentations {
                    let s = vs.get(&(1 << a.j)).ok_or_else(|| Error::InvalidDatum(format!("no singleton {}", a.j)))?;
                    augs.insert(a.j, a.morphism.build(s, &bd, ring)?);
                }
                Some((bd, augs))
            }
        };
        GeneralWeightDatum::new(self.size, vs, es, base)
    }
}

// Squares.

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeMatrixRepr {
    pub degree: i64,
    pub matrix: MatrixRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareMapRepr {
    pub map: SquareMap,
    pub degree: i64,
    pub matrix: MatrixRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SquareRepr {
    Explicit {
        hx: Vec<[i64; 2]>,
        hxt: Vec<[i64; 2]>,
        hy: Vec<[i64; 2]>,
        hyt: Vec<[i64; 2]>,
        maps: Vec<SquareMapRepr>,
    },
    Blowup {
        hx: Vec<[i64; 2]>,
        hy: Vec<[i64; 2]>,
        m: usize,
        restriction: Vec<DegreeMatrixRepr>,
        pushforward: Vec<DegreeMatrixRepr>,
        #[serde(default)]
        chern: Vec<Vec<DegreeMatrixRepr>>,
    },
}

fn degree_maps(v: &[DegreeMatrixRepr], ring: Ring) -> Result<BTreeMap<i64, Matrix>> {
    v.iter().map(|d| Ok((d.degree, d.matrix.to_matrix(ring)?))).collect()
}

impl SquareRepr {
    pub fn from_datum(s: &SquareCohomologyDatum) -> SquareRepr {
        let [hx, hxt, hy, hyt] = s.ranks();
        SquareRepr::Explicit {
            hx: ranks_repr(hx),
            hxt: ranks_repr(hxt),
            hy: ranks_repr(hy),
            hyt: ranks_repr(hyt),
            maps: s
                .maps()
                .iter()
                .flat_map(|(&map, ms)| {
                    ms.iter().map(move |(&degree, m)| SquareMapRepr { map, degree, matrix: MatrixRepr::from_matrix(m) })
                })
                .collect(),
        }
    }

    pub fn build(&self, ring: Ring) -> Result<SquareCohomologyDatum> {
        match self {
            SquareRepr::Explicit { hx, hxt, hy, hyt, maps } => {
                let mut ms: BTreeMap<SquareMap, BTreeMap<i64, Matrix>> = BTreeMap::new();
                for m in maps {
                    ms.entry(m.map).or_default().insert(m.degree, m.matrix.to_matrix(ring)?);
                }
                SquareCohomologyDatum::new(
                    ring,
                    [ranks_from(hx)?, ranks_from(hxt)?, ranks_from(hy)?, ranks_from(hyt)?],
                    ms,
                )
            }
            SquareRepr::Blowup { hx, hy, m, restriction, pushforward, chern } => {
                crate::descent::blowup_synthesize(&BlowupInput {
                    ring,
                    hx: ranks_from(hx)?,
                    hy: ranks_from(hy)?,
                    m: *m,
                    restriction: degree_maps(restriction, ring)?,
                    pushforward: degree_maps(pushforward, ring)?,
                    chern: chern.iter().map(|c| degree_maps(c, ring)).collect::<Result<_>>()?,
                })
            }
        }
    }
}
