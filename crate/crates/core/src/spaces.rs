//! Finite Δ-complex models and their cellular cochains.

use serde::{Deserialize, Serialize};

use crate::complex::{ChainMap, CochainComplex};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring};

/// Cells by dimension; a `k`-cell (`k ≥ 1`) lists its `k + 1` faces `d_0, …, d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaModel {
    pub cells: Vec<Vec<Vec<usize>>>,
}

impl DeltaModel {
    pub fn new(cells: Vec<Vec<Vec<usize>>>) -> Result<DeltaModel> {
        let m = DeltaModel { cells };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        for (k, layer) in self.cells.iter().enumerate() {
            for (idx, faces) in layer.iter().enumerate() {
                let expected = if k == 0 { 0 } else { k + 1 };
                if faces.len() != expected {
                    return Err(Error::InvalidModel(format!("{k}-cell {idx} has {} faces", faces.len())));
                }
                if k > 0 {
                    if let Some(&f) = faces.iter().find(|&&f| f >= self.cells[k - 1].len()) {
                        return Err(Error::InvalidModel(format!("{k}-cell {idx} has missing face {f}")));
                    }
                }
                // d_i d_j = d_{j−1} d_i for i < j.
                if k >= 2 {
                    for j in 0..=k {
                        for i in 0..j {
                            let a = self.cells[k - 1][faces[j]][i];
                            let b = self.cells[k - 1][faces[i]][j - 1];
                            if a != b {
                                return Err(Error::InvalidModel(format!(
                                    "{k}-cell {idx} violates the face identity for ({i},{j})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, Vec::len)
    }

    /// Cellular cochains in degrees `0..=dim`, `(δφ)(σ) = Σ (−1)^i φ(d_i σ)`.
    pub fn cochains(&self, ring: Ring) -> CochainComplex {
        if self.cells.is_empty() {
            return CochainComplex::zero(ring);
        }
        CochainComplex::from_fn(
            ring,
            0,
            self.dim() as i64,
            |k| self.count(k as usize),
            |k| {
                let k = k as usize;
                let mut m = Matrix::zeros(ring, self.count(k + 1), self.count(k));
                for (s, faces) in self.cells[k + 1].iter().enumerate() {
                    for (i, &f) in faces.iter().enumerate() {
                        let v = ring.add(m.get(s, f), &ring.from_i64(if i % 2 == 0 { 1 } else { -1 }));
                        m.set(s, f, v);
                    }
                }
                m
            },
        )
        .expect("face identities give δ² = 0")
    }

    pub fn disjoint_union(&self, other: &DeltaModel) -> DeltaModel {
        let n = self.cells.len().max(other.cells.len());
        let cells = (0..n)
            .map(|k| {
                let mut layer = self.cells.get(k).cloned().unwrap_or_default();
                let shift = if k == 0 { 0 } else { self.count(k - 1) };
                for faces in other.cells.get(k).into_iter().flatten() {
                    layer.push(faces.iter().map(|f| f + shift).collect());
                }
                layer
            })
            .collect();
        DeltaModel { cells }
    }
}

pub fn point() -> DeltaModel {
    points(1)
}

pub fn points(k: usize) -> DeltaModel {
    DeltaModel { cells: vec![vec![vec![]; k]] }
}

pub fn circle() -> DeltaModel {
    wedge_circles(1)
}

/// One vertex and `k` loops.
pub fn wedge_circles(k: usize) -> DeltaModel {
    DeltaModel { cells: vec![vec![vec![]], vec![vec![0, 0]; k]] }
}

/// Vertices a, b, c; edges ab, bc, ac; two triangles with the same boundary.
pub fn sphere2() -> DeltaModel {
    DeltaModel {
        cells: vec![vec![vec![]; 3], vec![vec![1, 0], vec![2, 1], vec![2, 0]], vec![vec![1, 2, 0], vec![1, 2, 0]]],
    }
}

/// One vertex, edges a, b, c and triangles L = (b, c, a), U = (a, c, b).
pub fn torus() -> DeltaModel {
    DeltaModel { cells: vec![vec![vec![]], vec![vec![0, 0]; 3], vec![vec![1, 2, 0], vec![0, 2, 1]]] }
}

/// Quotient model with vertex `w` glued onto vertex `v`.
pub fn identify_vertices(m: &DeltaModel, v: usize, w: usize) -> Result<DeltaModel> {
    let nv = m.count(0);
    if v >= nv || w >= nv || v == w {
        return Err(Error::InvalidModel(format!("cannot identify vertices {v} and {w} of {nv}")));
    }
    let relabel = |x: usize| {
        let x = if x == w { v } else { x };
        if x > w {
            x - 1
        } else {
            x
        }
    };
    let mut cells = m.cells.clone();
    cells[0].pop();
    if let Some(edges) = cells.get_mut(1) {
        for e in edges.iter_mut() {
            for f in e.iter_mut() {
                *f = relabel(*f);
            }
        }
    }
    DeltaModel::new(cells)
}

/// A cellular map given by the image of every cell; `None` marks a cell
/// collapsed onto a lower-dimensional one, which pulls back to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellMap {
    pub source: DeltaModel,
    pub target: DeltaModel,
    pub assign: Vec<Vec<Option<usize>>>,
}

impl CellMap {
    pub fn new(source: DeltaModel, target: DeltaModel, assign: Vec<Vec<Option<usize>>>) -> Result<CellMap> {
        for k in 0..source.cells.len() {
            let row = assign.get(k).ok_or_else(|| Error::InvalidModel(format!("no assignment in dimension {k}")))?;
            if row.len() != source.count(k) {
                return Err(Error::InvalidModel(format!("dimension {k} assigns {} cells", row.len())));
            }
            for (s, img) in row.iter().enumerate() {
                match img {
                    None if k == 0 => return Err(Error::InvalidModel(format!("vertex {s} is unassigned"))),
                    None => {}
                    Some(t) if *t >= target.count(k) => {
                        return Err(Error::InvalidModel(format!("{k}-cell {s} maps to missing cell {t}")))
                    }
                    Some(t) if k > 0 => {
                        for (i, &f) in source.cells[k][s].iter().enumerate() {
                            if assign[k - 1][f] != Some(target.cells[k][*t][i]) {
                                return Err(Error::InvalidModel(format!(
                                    "{k}-cell {s}: face {i} does not follow the map"
                                )));
                            }
                        }
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(CellMap { source, target, assign })
    }

    /// Constant map to vertex `v`.
    pub fn constant(source: DeltaModel, target: DeltaModel, v: usize) -> Result<CellMap> {
        let assign = source
            .cells
            .iter()
            .enumerate()
            .map(|(k, layer)| vec![if k == 0 { Some(v) } else { None }; layer.len()])
            .collect();
        CellMap::new(source, target, assign)
    }

    /// Pullback on cochains `f*: C*(target) → C*(source)`.
    pub fn induced(&self, ring: Ring) -> Result<ChainMap> {
        let src = self.target.cochains(ring);
        let tgt = self.source.cochains(ring);
        ChainMap::from_fn(src, tgt, |k| {
            let k = k as usize;
            let mut m = Matrix::zeros(ring, self.source.count(k), self.target.count(k));
            for (s, img) in self.assign.get(k).into_iter().flatten().enumerate() {
                if let Some(t) = img {
                    m.set(s, *t, ring.one());
                }
            }
            m
        })
        .map_err(|e| Error::InvalidModel(format!("cell map is not cellular: {e}")))
    }
}
