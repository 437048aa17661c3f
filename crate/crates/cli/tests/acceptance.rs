//! Acceptance criteria. Runs without the test harness so every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion does.

mod support;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wfilt_core::cubical::page_simple_cohomology;
use wfilt_core::descent::{
    blowup_synthesize, e2_compare, mayer_vietoris_check, singularity_ss, weight_compact, weight_general, weight_smooth,
    BlowupInput, SquareCohomologyDatum, SquareMap, SsOutput,
};
use wfilt_core::filtered::FilteredComplex;
use wfilt_core::generate::{random_filtered, random_square, Shape};
use wfilt_core::gysin::Ranks;
use wfilt_core::io::report::Report;
use wfilt_core::io::{Document, Input, Parsed};
use wfilt_core::spaces;
use wfilt_core::spectral::page;
use wfilt_core::verify::{decalage_shift, page_simple_exchange};
use wfilt_core::{Matrix, ModulePresentation, Ring};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn load(name: &str) -> Parsed {
    let text = std::fs::read_to_string(examples().join(format!("{name}.json"))).expect("example exists");
    Document::parse_str(&text).and_then(|d| d.build()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn free(n: usize) -> ModulePresentation {
    ModulePresentation::free(n)
}

fn graded(pairs: &[(i64, usize)]) -> BTreeMap<i64, ModulePresentation> {
    pairs.iter().map(|&(p, n)| (p, free(n))).collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn ensure(cond: bool, what: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn resolution(name: &str) -> wfilt_core::descent::ResolutionDatum {
    match load(name).input {
        Input::Resolution(r) => r,
        _ => panic!("{name} is not a resolution"),
    }
}

fn gysin_output(name: &str) -> SsOutput {
    let p = load(name);
    let expected = p.expected();
    match &p.input {
        Input::Gysin(g) => weight_smooth(g, expected.as_ref()),
        _ => panic!("{name} is not a Gysin datum"),
    }
}

fn general(name: &str) -> wfilt_core::descent::GeneralWeightDatum {
    match load(name).input {
        Input::GeneralWeight(d) => d,
        _ => panic!("{name} is not a general_weight datum"),
    }
}

/// Cohomology ranks of a Δ-model, the oracle for totals.
fn model_ranks(m: &spaces::DeltaModel, ring: Ring) -> BTreeMap<i64, ModulePresentation> {
    let c = m.cochains(ring);
    c.degrees().map(|n| (n, c.cohomology(n))).filter(|(_, h)| !h.is_zero()).collect()
}

fn totals(out: &SsOutput) -> BTreeMap<i64, ModulePresentation> {
    out.filtrations.iter().map(|(&n, f)| (n, f.total.clone())).filter(|(_, h)| !h.is_zero()).collect()
}

fn c1_nodal_punctured_torus() -> Outcome {
    for (name, ring) in [("nodal_punctured_torus", Ring::Rationals), ("nodal_punctured_torus_z", Ring::Integers)] {
        let out = singularity_ss(&resolution(name));
        expect(&format!("{name} Gr^L H^1"), out.graded(1), graded(&[(0, 1), (1, 3)]))?;
        expect(&format!("{name} totals"), totals(&out), model_ranks(&spaces::wedge_circles(4), ring))?;
    }
    // The same numbers through the binary.
    let out = Command::new(env!("CARGO_BIN_EXE_wfilt"))
        .args(["--format", "machine", "singularity"])
        .arg(examples().join("nodal_punctured_torus.json"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), "wfilt singularity failed")?;
    let rep: Report = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let h1 = rep.assemblies[0].filtrations.iter().find(|f| f.n == 1).ok_or("no H^1 in the report")?;
    expect("report Gr^L H^1", h1.graded_pieces(), graded(&[(0, 1), (1, 3)]))
}

fn c2_node_times_cstar() -> Outcome {
    let w = weight_general(&general("node_times_cstar"), None);
    expect("Gr^W H^1", w.graded(1), graded(&[(0, 1), (2, 1)]))?;
    expect("Gr^W H^2", w.graded(2), graded(&[(2, 2)]))?;
    let l = singularity_ss(&resolution("node_times_cstar_resolution"));
    expect("Gr^L H^1", l.graded(1), graded(&[(0, 1), (1, 1)]))?;
    expect("Gr^L H^2", l.graded(2), graded(&[(1, 1), (2, 1)]))?;
    // Künneth on models of the node and of ℂ* ≃ S¹.
    let node = model_ranks(&spaces::identify_vertices(&spaces::sphere2(), 0, 1).unwrap(), Ring::Rationals);
    let circle = model_ranks(&spaces::circle(), Ring::Rationals);
    let mut kunneth: BTreeMap<i64, ModulePresentation> = BTreeMap::new();
    for (&i, a) in &node {
        for (&j, b) in &circle {
            let e = kunneth.entry(i + j).or_default();
            *e = free(e.free_rank + a.free_rank * b.free_rank);
        }
    }
    expect("weight totals", totals(&w), kunneth.clone())?;
    expect("singularity totals", totals(&l), kunneth)
}

fn c3_serre() -> Outcome {
    let a = gysin_output("cstar_cstar_p1xp1");
    ensure(a.warnings.is_empty(), format!("{:?}", a.warnings))?;
    expect("P1 x P1: Gr^W H^1", a.graded(1), graded(&[(2, 2)]))?;
    let b = gysin_output("cstar_cstar_elliptic");
    ensure(b.warnings.is_empty(), format!("{:?}", b.warnings))?;
    expect("elliptic: Gr^W H^1", b.graded(1), graded(&[(1, 2)]))?;
    let torus = model_ranks(&spaces::torus(), Ring::Rationals);
    expect("P1 x P1 totals", totals(&a), torus.clone())?;
    expect("elliptic totals", totals(&b), torus)
}

fn c4_real() -> Outcome {
    let f2 = Ring::prime_field(2).unwrap();
    let a = gysin_output("real_plane_minus_point");
    expect("plane minus point: Gr^W H^1", a.graded(1), graded(&[(2, 1)]))?;
    let b = gysin_output("real_cylinder");
    expect("cylinder: Gr^W H^1", b.graded(1), graded(&[(1, 1)]))?;
    let circle = model_ranks(&spaces::circle(), f2);
    expect("plane minus point totals", totals(&a), circle.clone())?;
    expect("cylinder totals", totals(&b), circle)
}

fn shape<R: Rng>(rng: &mut R) -> Shape {
    Shape { degrees: 3, max_dim: rng.gen_range(1..=6), levels: 3, max_coeff: 3 }
}

fn a_span(fk: &FilteredComplex) -> std::ops::RangeInclusive<i64> {
    let (lo, hi) = fk.bounds();
    let m = lo.abs().max(hi.abs()) + 4;
    -m..=m
}

fn c5_decalage() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let mut count = 0;
    for i in 0..200 {
        let ring = if i % 2 == 0 { Ring::Rationals } else { Ring::Integers };
        let s = shape(&mut rng);
        let fk = random_filtered(&mut rng, ring, s);
        let dec = fk.decalage();
        for r in 1..=2usize {
            let v = decalage_shift(&fk, r).map_err(|e| e.to_string())?;
            ensure(v.passed, format!("instance {i}, r = {r}: {:?}", v.failures))?;
            if ring != Ring::Rationals {
                continue;
            }
            let ri = r as i64;
            let (dpage, kpage) = (page(&dec, r), page(&fk, r + 1));
            for n in fk.carrier().degrees() {
                for a in a_span(&dec) {
                    let lhs = support::page_dim(&dec, ri, a, n);
                    let rhs = support::page_dim(&fk, ri + 1, a + n, n);
                    ensure(lhs == rhs, format!("instance {i}: oracle E_{r}({a},{}) = {lhs} vs {rhs}", n - a))?;
                    ensure(
                        dpage.cell(a, n - a).free_rank == lhs && kpage.cell(a + n, -a).free_rank == rhs,
                        format!("instance {i}: library pages disagree with the oracle at ({a},{})", n - a),
                    )?;
                }
            }
        }
        count += 1;
    }
    ensure(count >= 200, "too few instances")
}

/// Canonical bases of every step over the union of both ranges, as JSON.
fn canonical(fk: &FilteredComplex, ps: std::ops::RangeInclusive<i64>) -> String {
    let mut out = String::new();
    for p in ps {
        for n in fk.carrier().degrees() {
            let rows: Vec<Vec<String>> =
                fk.w(p, n).basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
            out.push_str(&serde_json::to_string(&(p, n, rows)).unwrap());
        }
    }
    out
}

fn c6_dec_simple() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    for i in 0..100 {
        let ring = if i % 2 == 0 { Ring::Rationals } else { Ring::Integers };
        let s = Shape { max_dim: rng.gen_range(1..=3), ..Shape::default() };
        let d = random_square(&mut rng, ring, s);
        let lhs = d.simple_r(2).decalage();
        let rhs = d.decalage().simple_r(1);
        ensure(lhs.carrier() == rhs.carrier(), format!("instance {i}: carriers differ"))?;
        let (a, b) = (lhs.bounds(), rhs.bounds());
        let ps = a.0.min(b.0) - 1..=a.1.max(b.1);
        ensure(canonical(&lhs, ps.clone()) == canonical(&rhs, ps), format!("instance {i}: filtrations differ"))?;
    }
    Ok(())
}

fn c7_page_simple() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    for i in 0..100 {
        let ring = if i % 2 == 0 { Ring::Rationals } else { Ring::Integers };
        let s = Shape { max_dim: rng.gen_range(1..=3), ..Shape::default() };
        let d = random_square(&mut rng, ring, s);
        for r in 0..=1usize {
            let v = page_simple_exchange(&d, r).map_err(|e| e.to_string())?;
            ensure(v.passed, format!("instance {i}, r = {r}: {:?}", v.failures))?;
            if ring != Ring::Rationals {
                continue;
            }
            // Oracle side: E_{r+1} of s^r D from ranks of maps on quotient cohomology.
            let lhs = page_simple_cohomology(&d, r).map_err(|e| e.to_string())?;
            let s = d.simple_r(r as i64);
            for n in s.carrier().degrees() {
                for a in a_span(&s) {
                    let want = support::page_dim(&s, r as i64 + 1, a, n);
                    let got = lhs.get(&(a, n - a)).map_or(0, |m| m.free_rank);
                    ensure(
                        got == want,
                        format!("instance {i}, r = {r}: ({a},{}) s E_r gives {got}, oracle {want}", n - a),
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn ranks(v: &[(i64, usize)]) -> Ranks {
    v.iter().copied().collect()
}

fn point_blowup(hx: Ranks, top: i64, m: usize) -> BlowupInput {
    let z = Ring::Integers;
    let pushforward = if 2 * m as i64 == top { BTreeMap::from([(0, Matrix::identity(z, 1))]) } else { BTreeMap::new() };
    BlowupInput {
        ring: z,
        hx,
        hy: ranks(&[(0, 1)]),
        m,
        restriction: BTreeMap::from([(0, Matrix::identity(z, 1))]),
        pushforward,
        chern: vec![BTreeMap::new(); m - 1],
    }
}

fn c8_mv_and_gysin() -> Outcome {
    let models = [
        ("P2", ranks(&[(0, 1), (2, 1), (4, 1)]), 4),
        ("P1xP1", ranks(&[(0, 1), (2, 2), (4, 1)]), 4),
        ("S2", model_ranks(&spaces::sphere2(), Ring::Integers).iter().map(|(&k, h)| (k, h.free_rank)).collect(), 2),
    ];
    let mut inputs: Vec<(String, BlowupInput)> = vec![];
    for (name, hx, top) in &models {
        for m in 1..=3 {
            inputs.push((format!("{name}, m = {m}"), point_blowup(hx.clone(), *top, m)));
        }
    }
    let z = Ring::Integers;
    inputs.push((
        "P2 along a line".into(),
        BlowupInput {
            ring: z,
            hx: ranks(&[(0, 1), (2, 1), (4, 1)]),
            hy: ranks(&[(0, 1), (2, 1)]),
            m: 1,
            restriction: BTreeMap::from([(0, Matrix::identity(z, 1)), (2, Matrix::identity(z, 1))]),
            pushforward: BTreeMap::from([(0, Matrix::identity(z, 1)), (2, Matrix::identity(z, 1))]),
            chern: vec![],
        },
    ));
    for (name, b) in &inputs {
        let s = blowup_synthesize(b).map_err(|e| format!("{name}: {e}"))?;
        let mv = mayer_vietoris_check(&s);
        ensure(mv.iter().all(|d| d.exact()), format!("{name}: {mv:?}"))?;
        for q in s.degrees() {
            let alpha = s.map(SquareMap::F, q).vstack(&s.map(SquareMap::I, q).neg()).unwrap();
            let beta = s.map(SquareMap::J, q).hstack(&s.map(SquareMap::G, q)).unwrap();
            ensure(support::short_exact(&alpha, &beta), format!("{name}: oracle rejects degree {q}"))?;
        }
    }
    // Negative control: a commuting square of points over an empty corner is not exact.
    let pt = ranks(&[(0, 1)]);
    let id = || BTreeMap::from([(0, Matrix::identity(z, 1))]);
    let broken = SquareCohomologyDatum::new(
        z,
        [pt.clone(), pt.clone(), pt, Ranks::new()],
        BTreeMap::from([(SquareMap::F, id()), (SquareMap::I, id())]),
    )
    .map_err(|e| e.to_string())?;
    ensure(!mayer_vietoris_check(&broken).iter().all(|d| d.exact()), "a broken square passed")?;
    for name in ["gysin_square_center_outside", "gysin_square_center_inside"] {
        let v = general(name).gysin_acyclic().map_err(|e| e.to_string())?;
        ensure(v.passed, format!("{name}: {:?}", v.failures))?;
    }
    Ok(())
}

fn c9_e2_independence() -> Outcome {
    let a = singularity_ss(&resolution("nodal_punctured_torus"));
    let b = singularity_ss(&resolution("nodal_punctured_torus_blown_up"));
    let v = e2_compare(&a, &b);
    ensure(v.passed, format!("{:?}", v.failures))?;
    // The documents really are different resolutions.
    ensure(a.pages[0] != b.pages[0], "both documents have the same E_1")
}

fn c10_compact() -> Outcome {
    for name in ["nodal_sphere", "two_p1_cycle"] {
        let r = resolution(name);
        let (l, w) = (singularity_ss(&r), weight_compact(&r));
        let v = e2_compare(&l, &w);
        ensure(v.passed, format!("{name}: {:?}", v.failures))?;
        for n in l.filtrations.keys() {
            expect(&format!("{name} Gr H^{n}"), l.graded(*n), w.graded(*n))?;
        }
    }
    expect("two_p1_cycle Gr^L H^1", singularity_ss(&resolution("two_p1_cycle")).graded(1), graded(&[(0, 1)]))
}

fn c11_bounds() -> Outcome {
    let mut seen = 0;
    for entry in std::fs::read_dir(examples()).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let p = load(&name);
        let expected = p.expected();
        let outs = match &p.input {
            Input::Resolution(r) => vec![singularity_ss(r), weight_compact(r)],
            Input::Gysin(g) => vec![weight_smooth(g, expected.as_ref())],
            Input::GeneralWeight(d) => vec![weight_general(d, expected.as_ref())],
            _ => continue,
        };
        for out in &outs {
            let bad = out.bound_violations();
            ensure(bad.is_empty(), format!("{name}: {bad:?}"))?;
            for (&n, f) in &out.filtrations {
                ensure(f.step(-1).is_zero(), format!("{name}: F_-1 H^{n} is not zero"))?;
                let top = if out.assembly.label() == "L" { n } else { 2 * n };
                ensure(f.step(top) == f.total, format!("{name}: F_{top} H^{n} is not everything"))?;
            }
        }
        seen += 1;
    }
    ensure(seen >= 10, format!("only {seen} documents carry an assembly"))?;
    // Smooth inputs: trivial L, pure W.
    let l = singularity_ss(&resolution("torus"));
    for (&n, f) in &l.filtrations {
        expect(&format!("torus L on H^{n}"), f.pure_weight(), Some(n))?;
    }
    let w = gysin_output("projective_plane");
    for (&n, f) in &w.filtrations {
        if !f.total.is_zero() {
            expect(&format!("projective plane W on H^{n}"), f.pure_weight(), Some(n))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("nodal punctured torus: Gr^L H^1 = (1, 3) over Q and Z", c1_nodal_punctured_torus),
        ("node x C*: weight and singularity graded pieces", c2_node_times_cstar),
        ("C* x C*: weight 2 for P1 x P1, weight 1 for the elliptic compactification", c3_serre),
        ("real mode over Z/2: plane minus point weight 2, cylinder weight 1", c4_real),
        ("decalage shift on 200 random filtered complexes, r = 1, 2", c5_decalage),
        ("Dec s^2 = s^1 Dec on 100 random squares", c6_dec_simple),
        ("page/simple exchange on 100 random squares, r = 0, 1", c7_page_simple),
        ("Mayer-Vietoris on synthesized blow-ups; Gysin squares acyclic", c8_mv_and_gysin),
        ("E_2 independence of two nodal torus resolutions", c9_e2_independence),
        ("compact coincidence of L and W", c10_compact),
        ("structural bounds on every shipped document", c11_bounds),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS ({secs:.2}s) {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL ({secs:.2}s) {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
