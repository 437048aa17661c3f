//! The shipped example documents, built in code so they can be regenerated
//! and checked byte for byte.

use std::collections::BTreeMap;

use num::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::ComplexRepr;
use crate::descent::{blowup_synthesize, BlowupInput, SquareMap};
use crate::generate::{random_filtered, random_square, Shape};
use crate::gysin::GysinMode;
use crate::io::document::*;
use crate::io::{BigIntRepr, MatrixRepr, ScalarRepr};
use crate::linalg::{Matrix, ModulePresentation, Ring};
use crate::spaces::{self, DeltaModel};

fn mat(rows: &[&[i64]]) -> MatrixRepr {
    let cols = rows.first().map_or(0, |r| r.len());
    mat_shape(rows.len(), cols, rows)
}

fn mat_shape(rows: usize, cols: usize, entries: &[&[i64]]) -> MatrixRepr {
    MatrixRepr {
        rows,
        cols,
        entries: entries.iter().map(|r| r.iter().map(|&v| ScalarRepr::Int(BigIntRepr(v.into()))).collect()).collect(),
    }
}

fn one() -> MatrixRepr {
    mat(&[&[1]])
}

fn col(v: &[i64]) -> MatrixRepr {
    let rows: Vec<&[i64]> = v.iter().map(std::slice::from_ref).collect();
    mat(&rows)
}

fn d0(dims: &[usize]) -> ComplexRepr {
    ComplexRepr { support: [0, dims.len() as i64 - 1], dims: dims.to_vec(), differentials: vec![] }
}

fn stratum(mask: u32, ranks: &[(i64, i64)]) -> StratumRepr {
    StratumRepr { mask, ranks: ranks.iter().map(|&(k, n)| [k, n]).collect() }
}

fn gmap(stratum: u32, drop: usize, degree: i64, matrix: MatrixRepr) -> GysinMapRepr {
    GysinMapRepr { stratum, drop, degree, matrix }
}

fn pull(from: u32, to: u32, degree: i64, matrix: MatrixRepr) -> PullbackMapRepr {
    PullbackMapRepr { from, to, degree, matrix }
}

fn smooth(ranks: &[(i64, i64)]) -> GysinRepr {
    GysinRepr { components: 0, strata: vec![stratum(0, ranks)], gysin: vec![] }
}

fn described(text: &str) -> Options {
    Options { description: Some(text.into()), ..Options::default() }
}

fn model(mask: u32, m: DeltaModel) -> SpaceVertexRepr {
    SpaceVertexRepr { mask, space: SpaceRepr::Model(m) }
}

fn inline(mask: u32, dims: &[usize]) -> SpaceVertexRepr {
    SpaceVertexRepr { mask, space: SpaceRepr::Complex(d0(dims)) }
}

fn cells(mask: u32, j: usize, assign: Vec<Vec<Option<usize>>>) -> SpaceCofaceRepr {
    SpaceCofaceRepr { mask, j, pullback: PullbackRepr::Cells(assign) }
}

fn maps(mask: u32, j: usize, ms: Vec<MatrixRepr>) -> SpaceCofaceRepr {
    SpaceCofaceRepr { mask, j, pullback: PullbackRepr::Maps(ms) }
}

fn vertices_to(targets: &[usize]) -> Vec<Vec<Option<usize>>> {
    vec![targets.iter().map(|&t| Some(t)).collect()]
}

pub fn empty() -> Document {
    let repr = FilteredComplexRepr {
        complex: ComplexRepr { support: [0, -1], dims: vec![], differentials: vec![] },
        filtration: FiltrationRepr::Trivial,
    };
    Document::new(Kind::FilteredComplex, Ring::Integers, described("the zero complex"), &repr)
}

pub fn filtered_random() -> Document {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fk = random_filtered(&mut rng, Ring::Integers, Shape::default());
    let mut opts = described("a random filtered complex over Z with a non-aligned basis");
    opts.r = Some(1);
    Document::new(Kind::FilteredComplex, Ring::Integers, opts, &FilteredComplexRepr::from_filtered(&fk))
}

pub fn square_random() -> Document {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let d = random_square(&mut rng, Ring::Rationals, Shape::default());
    Document::new(
        Kind::Cubical,
        Ring::Rationals,
        described("a random filtered 2-cube over Q"),
        &CubicalRepr::from_diagram(&d),
    )
}

/// Genus one minus two points with two further points glued: normalization a
/// wedge of three circles, singular point, and its two preimages.
pub fn nodal_punctured_torus(ring: Ring) -> Document {
    let repr = ResolutionRepr::Chain {
        size: 2,
        vertices: vec![
            model(0b01, spaces::wedge_circles(3)),
            model(0b10, spaces::point()),
            model(0b11, spaces::points(2)),
        ],
        cofaces: vec![cells(0b01, 1, vertices_to(&[0, 0])), cells(0b10, 0, vertices_to(&[0, 0]))],
        base: None,
    };
    Document::new(Kind::Resolution, ring, described("nodal punctured torus, minimal resolution"), &repr)
}

/// The same space with a smooth point added to the center, its square
/// produced by the blow-up synthesizer in codimension one.
pub fn nodal_punctured_torus_blown_up() -> Document {
    let q = Ring::Rationals;
    let s = blowup_synthesize(&BlowupInput {
        ring: q,
        hx: BTreeMap::from([(0, 1), (1, 3)]),
        hy: BTreeMap::from([(0, 1)]),
        m: 1,
        restriction: BTreeMap::from([(0, Matrix::identity(q, 1))]),
        pushforward: BTreeMap::new(),
        chern: vec![],
    })
    .expect("valid blow-up input");
    let [_, hxt, _, hyt] = s.ranks();
    let r = |h: &BTreeMap<i64, usize>, k: i64| h.get(&k).copied().unwrap_or(0);
    let xt = [r(hxt, 0), r(hxt, 1)];
    let e = r(hyt, 0);
    // j* on H⁰: the two node preimages, then the exceptional fibre.
    let j_e = s.map(SquareMap::J, 0);
    let mut j0 = vec![vec![1i64; xt[0]]; 2];
    for i in 0..e {
        j0.push((0..xt[0]).map(|c| j_e.get(i, c).to_integer().to_i64().expect("small")).collect());
    }
    let j0: Vec<&[i64]> = j0.iter().map(Vec::as_slice).collect();
    let mut g0 = vec![vec![1, 0], vec![1, 0]];
    g0.extend((0..e).map(|_| vec![0, 1]));
    let g0: Vec<&[i64]> = g0.iter().map(Vec::as_slice).collect();
    let repr = ResolutionRepr::Chain {
        size: 2,
        vertices: vec![inline(0b01, &xt), inline(0b10, &[2]), inline(0b11, &[2 + e])],
        cofaces: vec![maps(0b01, 1, vec![mat(&j0), mat_shape(0, xt[1], &[])]), maps(0b10, 0, vec![mat(&g0)])],
        base: None,
    };
    Document::new(Kind::Resolution, q, described("nodal punctured torus with one extra blown-up point"), &repr)
}

pub fn nodal_sphere() -> Document {
    let repr = ResolutionRepr::Chain {
        size: 2,
        vertices: vec![model(0b01, spaces::sphere2()), model(0b10, spaces::point()), model(0b11, spaces::points(2))],
        cofaces: vec![cells(0b01, 1, vertices_to(&[0, 1])), cells(0b10, 0, vertices_to(&[0, 0]))],
        base: None,
    };
    Document::new(Kind::Resolution, Ring::Integers, described("2-sphere with two points glued"), &repr)
}

/// Two spheres glued at two pairs of points.
pub fn two_p1_cycle() -> Document {
    let repr = ResolutionRepr::Chain {
        size: 2,
        vertices: vec![
            model(0b01, spaces::sphere2().disjoint_union(&spaces::sphere2())),
            model(0b10, spaces::points(2)),
            model(0b11, spaces::points(4)),
        ],
        cofaces: vec![cells(0b01, 1, vertices_to(&[0, 1, 3, 4])), cells(0b10, 0, vertices_to(&[0, 1, 0, 1]))],
        base: None,
    };
    Document::new(Kind::Resolution, Ring::Integers, described("cycle of two projective lines"), &repr)
}

pub fn torus() -> Document {
    let repr =
        ResolutionRepr::Chain { size: 1, vertices: vec![model(0b1, spaces::torus())], cofaces: vec![], base: None };
    Document::new(Kind::Resolution, Ring::Integers, described("smooth compact torus"), &repr)
}

pub fn projective_plane() -> Document {
    Document::new(
        Kind::Gysin,
        Ring::Integers,
        described("smooth compact projective plane"),
        &smooth(&[(0, 1), (2, 1), (4, 1)]),
    )
}

/// ℙ¹ × ℙ¹ with two fibres of each ruling removed.
pub fn cstar_cstar_p1xp1() -> Document {
    let line = [(0, 1), (2, 1)];
    let mut strata = vec![stratum(0, &[(0, 1), (2, 2), (4, 1)])];
    let mut gysin = vec![];
    for i in 0..4usize {
        strata.push(stratum(1 << i, &line));
        let class = if i < 2 { col(&[1, 0]) } else { col(&[0, 1]) };
        gysin.push(gmap(1 << i, i, 0, class));
        gysin.push(gmap(1 << i, i, 2, one()));
    }
    for (a, b) in [(0usize, 2usize), (0, 3), (1, 2), (1, 3)] {
        let mask = (1u32 << a) | (1 << b);
        strata.push(stratum(mask, &[(0, 1)]));
        gysin.push(gmap(mask, a, 0, one()));
        gysin.push(gmap(mask, b, 0, one()));
    }
    strata.sort_by_key(|s| s.mask);
    let mut opts = described("C* x C* compactified by P1 x P1");
    opts.expected = Some(
        [(0, 1), (1, 2), (2, 1)]
            .into_iter()
            .map(|(n, r)| ExpectedRepr { n, module: ModulePresentation::free(r) })
            .collect(),
    );
    Document::new(Kind::Gysin, Ring::Rationals, opts, &GysinRepr { components: 4, strata, gysin })
}

/// A ruled surface over an elliptic curve minus a section.
pub fn cstar_cstar_elliptic() -> Document {
    let repr = GysinRepr {
        components: 1,
        strata: vec![stratum(0, &[(0, 1), (1, 2), (2, 2), (3, 2), (4, 1)]), stratum(1, &[(0, 1), (1, 2), (2, 1)])],
        gysin: vec![gmap(1, 0, 0, col(&[1, 0])), gmap(1, 0, 1, mat(&[&[1, 0], &[0, 1]])), gmap(1, 0, 2, one())],
    };
    Document::new(
        Kind::Gysin,
        Ring::Rationals,
        described("C* x C* compactified by a ruled surface over an elliptic curve"),
        &repr,
    )
}

fn real(text: &str) -> Options {
    Options { mode: Some(GysinMode::Real), ..described(text) }
}

/// The Klein bottle (the plane blown up at the origin, projectively closed)
/// minus the exceptional circle and the line at infinity.
pub fn real_plane_minus_point() -> Document {
    let circle = [(0, 1), (1, 1)];
    let repr = GysinRepr {
        components: 2,
        strata: vec![stratum(0, &[(0, 1), (1, 2), (2, 1)]), stratum(1, &circle), stratum(2, &circle)],
        gysin: vec![
            gmap(1, 0, 0, col(&[1, 0])),
            gmap(1, 0, 1, one()),
            gmap(2, 1, 0, col(&[0, 1])),
            gmap(2, 1, 1, one()),
        ],
    };
    Document::new(Kind::Gysin, Ring::prime_field(2).expect("prime"), real("real plane minus a point"), &repr)
}

/// The torus minus one circle.
pub fn real_cylinder() -> Document {
    let repr = GysinRepr {
        components: 1,
        strata: vec![stratum(0, &[(0, 1), (1, 2), (2, 1)]), stratum(1, &[(0, 1), (1, 1)])],
        gysin: vec![gmap(1, 0, 0, col(&[1, 0])), gmap(1, 0, 1, one())],
    };
    Document::new(Kind::Gysin, Ring::prime_field(2).expect("prime"), real("open real cylinder"), &repr)
}

/// Node × ℂ*: ℙ¹ × ℙ¹ minus two fibres, the singular locus ℙ¹ minus two points,
/// and its preimage two copies of ℙ¹ minus two points each.
pub fn node_times_cstar() -> Document {
    let x0 = GysinRepr {
        components: 2,
        strata: vec![
            stratum(0, &[(0, 1), (2, 2), (4, 1)]),
            stratum(1, &[(0, 1), (2, 1)]),
            stratum(2, &[(0, 1), (2, 1)]),
        ],
        gysin: vec![
            gmap(1, 0, 0, col(&[0, 1])),
            gmap(1, 0, 2, one()),
            gmap(2, 1, 0, col(&[0, 1])),
            gmap(2, 1, 2, one()),
        ],
    };
    let x1 = GysinRepr {
        components: 2,
        strata: vec![stratum(0, &[(0, 1), (2, 1)]), stratum(1, &[(0, 1)]), stratum(2, &[(0, 1)])],
        gysin: vec![gmap(1, 0, 0, one()), gmap(2, 1, 0, one())],
    };
    let id2 = mat(&[&[1, 0], &[0, 1]]);
    let x01 = GysinRepr {
        components: 2,
        strata: vec![stratum(0, &[(0, 2), (2, 2)]), stratum(1, &[(0, 2)]), stratum(2, &[(0, 2)])],
        gysin: vec![gmap(1, 0, 0, id2.clone()), gmap(2, 1, 0, id2.clone())],
    };
    let eye = vec![vec![1, 0], vec![0, 1]];
    let e0 = MorphismRepr {
        multiplicity: eye.clone(),
        pullbacks: vec![
            pull(0, 0, 0, col(&[1, 1])),
            pull(0, 0, 2, mat(&[&[0, 1], &[0, 1]])),
            pull(1, 1, 0, col(&[1, 1])),
            pull(2, 2, 0, col(&[1, 1])),
        ],
    };
    let e1 = MorphismRepr {
        multiplicity: eye,
        pullbacks: vec![
            pull(0, 0, 0, col(&[1, 1])),
            pull(0, 0, 2, col(&[1, 1])),
            pull(1, 1, 0, col(&[1, 1])),
            pull(2, 2, 0, col(&[1, 1])),
        ],
    };
    let repr = GeneralWeightRepr {
        size: 2,
        vertices: vec![
            PairVertexRepr { mask: 0b01, datum: x0 },
            PairVertexRepr { mask: 0b10, datum: x1 },
            PairVertexRepr { mask: 0b11, datum: x01 },
        ],
        edges: vec![EdgeRepr { mask: 0b01, j: 1, morphism: e0 }, EdgeRepr { mask: 0b10, j: 0, morphism: e1 }],
        base: None,
    };
    Document::new(Kind::GeneralWeight, Ring::Rationals, described("rational node times C*"), &repr)
}

/// The same space for the singularity filtration: cohomology of ℙ¹ × ℂ*, ℂ*
/// and two copies of ℂ*, with zero differentials.
pub fn node_times_cstar_resolution() -> Document {
    let both = || vec![col(&[1, 1]), col(&[1, 1])];
    let mut j = both();
    j.push(mat_shape(0, 1, &[]));
    j.push(mat_shape(0, 1, &[]));
    let repr = ResolutionRepr::Chain {
        size: 2,
        vertices: vec![inline(0b01, &[1, 1, 1, 1]), inline(0b10, &[1, 1]), inline(0b11, &[2, 2])],
        cofaces: vec![maps(0b01, 1, j), maps(0b10, 0, both())],
        base: None,
    };
    Document::new(Kind::Resolution, Ring::Rationals, described("rational node times C*, resolution"), &repr)
}

fn blown_up_p2(components: usize) -> GysinRepr {
    let x = [(0, 1), (2, 2), (4, 1)];
    if components == 1 {
        return GysinRepr {
            components: 1,
            strata: vec![stratum(0, &x), stratum(1, &[(0, 1), (2, 1)])],
            gysin: vec![gmap(1, 0, 0, col(&[1, 0])), gmap(1, 0, 2, one())],
        };
    }
    // Strict transform of a line through the center, and the exceptional line.
    GysinRepr {
        components: 2,
        strata: vec![
            stratum(0, &x),
            stratum(1, &[(0, 1), (2, 1)]),
            stratum(2, &[(0, 1), (2, 1)]),
            stratum(3, &[(0, 1)]),
        ],
        gysin: vec![
            gmap(1, 0, 0, col(&[1, -1])),
            gmap(1, 0, 2, one()),
            gmap(2, 1, 0, col(&[0, 1])),
            gmap(2, 1, 2, one()),
            gmap(3, 0, 0, one()),
            gmap(3, 1, 0, one()),
        ],
    }
}

fn p2_with_line() -> GysinRepr {
    GysinRepr {
        components: 1,
        strata: vec![stratum(0, &[(0, 1), (2, 1), (4, 1)]), stratum(1, &[(0, 1), (2, 1)])],
        gysin: vec![gmap(1, 0, 0, one()), gmap(1, 0, 2, one())],
    }
}

/// Blow-up of ℙ² at a point off the line `L`, augmented over `(ℙ², L)`.
pub fn gysin_square_center_outside() -> Document {
    let f = MorphismRepr {
        multiplicity: vec![vec![1]],
        pullbacks: vec![
            pull(0, 0, 0, one()),
            pull(0, 0, 2, col(&[1, 0])),
            pull(0, 0, 4, one()),
            pull(1, 1, 0, one()),
            pull(1, 1, 2, one()),
        ],
    };
    let i = MorphismRepr { multiplicity: vec![vec![]], pullbacks: vec![pull(0, 0, 0, one())] };
    let j = MorphismRepr {
        multiplicity: vec![vec![]],
        pullbacks: vec![pull(0, 0, 0, one()), pull(0, 0, 2, mat(&[&[0, -1]]))],
    };
    let g = MorphismRepr { multiplicity: vec![], pullbacks: vec![pull(0, 0, 0, one())] };
    let repr = GeneralWeightRepr {
        size: 2,
        vertices: vec![
            PairVertexRepr { mask: 0b01, datum: blown_up_p2(1) },
            PairVertexRepr { mask: 0b10, datum: smooth(&[(0, 1)]) },
            PairVertexRepr { mask: 0b11, datum: smooth(&[(0, 1), (2, 1)]) },
        ],
        edges: vec![EdgeRepr { mask: 0b01, j: 1, morphism: j }, EdgeRepr { mask: 0b10, j: 0, morphism: g }],
        base: Some(PairBaseRepr {
            datum: p2_with_line(),
            augmentations: vec![PairAugmentationRepr { j: 0, morphism: f }, PairAugmentationRepr { j: 1, morphism: i }],
        }),
    };
    Document::new(
        Kind::GeneralWeight,
        Ring::Integers,
        described("elementary acyclic square, center off the divisor"),
        &repr,
    )
}

/// Blow-up of ℙ² at a point of the line `L`; the divisor pulls back to the
/// strict transform plus the exceptional line.
pub fn gysin_square_center_inside() -> Document {
    let f = MorphismRepr {
        multiplicity: vec![vec![1, 1]],
        pullbacks: vec![
            pull(0, 0, 0, one()),
            pull(0, 0, 2, col(&[1, 0])),
            pull(0, 0, 4, one()),
            pull(1, 1, 0, one()),
            pull(1, 1, 2, one()),
            pull(1, 2, 0, one()),
            pull(1, 2, 2, mat(&[&[0]])),
        ],
    };
    let repr = GeneralWeightRepr {
        size: 1,
        vertices: vec![PairVertexRepr { mask: 0b1, datum: blown_up_p2(2) }],
        edges: vec![],
        base: Some(PairBaseRepr {
            datum: p2_with_line(),
            augmentations: vec![PairAugmentationRepr { j: 0, morphism: f }],
        }),
    };
    Document::new(Kind::GeneralWeight, Ring::Integers, described("blow-up at a point of the divisor"), &repr)
}

pub fn blowup_p2_point() -> Document {
    let dm = |d: i64, m: MatrixRepr| DegreeMatrixRepr { degree: d, matrix: m };
    let repr = SquareRepr::Blowup {
        hx: vec![[0, 1], [2, 1], [4, 1]],
        hy: vec![[0, 1]],
        m: 2,
        restriction: vec![dm(0, one())],
        pushforward: vec![dm(0, one())],
        chern: vec![vec![]],
    };
    Document::new(Kind::Square, Ring::Integers, described("projective plane blown up at a point"), &repr)
}

/// Every shipped document with its file stem.
pub fn all() -> Vec<(&'static str, Document)> {
    vec![
        ("empty", empty()),
        ("filtered_random", filtered_random()),
        ("square_random", square_random()),
        ("nodal_punctured_torus", nodal_punctured_torus(Ring::Rationals)),
        ("nodal_punctured_torus_z", nodal_punctured_torus(Ring::Integers)),
        ("nodal_punctured_torus_blown_up", nodal_punctured_torus_blown_up()),
        ("nodal_sphere", nodal_sphere()),
        ("two_p1_cycle", two_p1_cycle()),
        ("torus", torus()),
        ("projective_plane", projective_plane()),
        ("cstar_cstar_p1xp1", cstar_cstar_p1xp1()),
        ("cstar_cstar_elliptic", cstar_cstar_elliptic()),
        ("real_plane_minus_point", real_plane_minus_point()),
        ("real_cylinder", real_cylinder()),
        ("node_times_cstar", node_times_cstar()),
        ("node_times_cstar_resolution", node_times_cstar_resolution()),
        ("gysin_square_center_outside", gysin_square_center_outside()),
        ("gysin_square_center_inside", gysin_square_center_inside()),
        ("blowup_p2_point", blowup_p2_point()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::{e2_compare, mv_verdict, singularity_ss, weight_compact, weight_general, weight_smooth};
    use crate::io::Input;

    fn free(n: usize) -> ModulePresentation {
        ModulePresentation::free(n)
    }

    fn parsed(doc: &Document) -> Input {
        let s = doc.to_canonical_string();
        let back = Document::parse_str(&s).unwrap();
        assert_eq!(back.to_canonical_string(), s);
        back.build().unwrap().input
    }

    #[test]
    fn every_document_builds() {
        for (name, doc) in all() {
            let s = doc.to_canonical_string();
            Document::parse_str(&s).and_then(|d| d.build()).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn node_times_cstar_weights() {
        let Input::GeneralWeight(d) = parsed(&node_times_cstar()) else { panic!() };
        let out = weight_general(&d, None);
        assert_eq!(out.graded(1), BTreeMap::from([(0, free(1)), (2, free(1))]));
        assert_eq!(out.graded(2), BTreeMap::from([(2, free(2))]));
        let Input::Resolution(r) = parsed(&node_times_cstar_resolution()) else { panic!() };
        let l = singularity_ss(&r);
        assert_eq!(l.graded(1), BTreeMap::from([(0, free(1)), (1, free(1))]));
        assert_eq!(l.graded(2), BTreeMap::from([(1, free(1)), (2, free(1))]));
    }

    #[test]
    fn gysin_squares_are_acyclic() {
        for doc in [gysin_square_center_outside(), gysin_square_center_inside()] {
            let Input::GeneralWeight(d) = parsed(&doc) else { panic!() };
            let v = d.gysin_acyclic().unwrap();
            assert!(v.passed, "{:?}", v.failures);
        }
    }

    #[test]
    fn compactification_dependence() {
        let Input::Gysin(g) = parsed(&cstar_cstar_elliptic()) else { panic!() };
        let out = weight_smooth(&g, None);
        assert_eq!(out.graded(1), BTreeMap::from([(1, free(2))]));
        assert_eq!(out.graded(2), BTreeMap::from([(2, free(1))]));
        let Input::Gysin(g) = parsed(&cstar_cstar_p1xp1()) else { panic!() };
        assert_eq!(weight_smooth(&g, None).graded(1), BTreeMap::from([(2, free(2))]));
    }

    #[test]
    fn real_examples() {
        let Input::Gysin(g) = parsed(&real_plane_minus_point()) else { panic!() };
        assert_eq!(weight_smooth(&g, None).graded(1), BTreeMap::from([(2, free(1))]));
        let Input::Gysin(g) = parsed(&real_cylinder()) else { panic!() };
        assert_eq!(weight_smooth(&g, None).graded(1), BTreeMap::from([(1, free(1))]));
    }

    #[test]
    fn resolutions_of_the_nodal_torus_agree() {
        let Input::Resolution(a) = parsed(&nodal_punctured_torus(Ring::Rationals)) else { panic!() };
        let Input::Resolution(b) = parsed(&nodal_punctured_torus_blown_up()) else { panic!() };
        let v = e2_compare(&singularity_ss(&a), &singularity_ss(&b));
        assert!(v.passed, "{:?}", v.failures);
    }

    #[test]
    fn compact_documents_coincide() {
        for doc in [nodal_sphere(), two_p1_cycle()] {
            let Input::Resolution(r) = parsed(&doc) else { panic!() };
            let v = e2_compare(&singularity_ss(&r), &weight_compact(&r));
            assert!(v.passed, "{:?}", v.failures);
        }
        let Input::Resolution(r) = parsed(&two_p1_cycle()) else { panic!() };
        assert_eq!(singularity_ss(&r).graded(1), BTreeMap::from([(0, free(1))]));
    }

    #[test]
    fn blowup_square_is_exact() {
        let Input::Square(s) = parsed(&blowup_p2_point()) else { panic!() };
        assert!(mv_verdict(&s).passed);
    }
}
