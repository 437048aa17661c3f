use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use wfilt_core::descent::{
    e2_compare, mv_verdict, singularity_ss, weight_compact, weight_general, weight_smooth, ResolutionDatum, SsOutput,
};
use wfilt_core::filtered::FilteredComplex;
use wfilt_core::io::report::{AssemblyReport, Report};
use wfilt_core::io::{Document, Input, Kind, Parsed};
use wfilt_core::spectral::{abutment_filtration, page, stabilize};
use wfilt_core::verify::{dec_simple_exchange, decalage_shift, page_simple_exchange, Verdict};

use crate::Check;

struct Loaded {
    doc: Document,
    parsed: Parsed,
    path: String,
}

fn load(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = Document::parse_str(&text).with_context(|| format!("{}", path.display()))?;
    let parsed = doc.build().with_context(|| format!("{}", path.display()))?;
    Ok(Loaded { doc, parsed, path: path.display().to_string() })
}

impl Loaded {
    fn report(&self, command: &str) -> Report {
        Report::new(command, &self.path, self.doc.kind, self.doc.ring)
    }
}

fn kind_error(command: &str, kind: Kind, wanted: &str) -> anyhow::Error {
    anyhow!("{command} needs {wanted}, got a {kind:?} document")
}

/// All pages up to the stable one, with the raw abutment filtrations.
fn filtered_pages(fk: &FilteredComplex, r: Option<usize>) -> AssemblyReport {
    let (stable, einf) = stabilize(fk, 1);
    let pages = match r {
        Some(r) => vec![page(fk, r).report()],
        None => {
            let mut v: Vec<_> = (1..stable).map(|r| page(fk, r).report()).collect();
            v.push(einf.report());
            v
        }
    };
    let filtrations =
        fk.carrier().degrees().map(|n| abutment_filtration(fk, n)).filter(|f| !f.total.is_zero()).collect();
    AssemblyReport {
        assembly: None,
        page_level: false,
        stable_page: Some(stable),
        pages,
        filtrations,
        warnings: vec![],
    }
}

fn select_page(mut a: AssemblyReport, r: Option<usize>) -> Result<AssemblyReport> {
    if let Some(r) = r {
        a.pages.retain(|p| p.r == r);
        if a.pages.is_empty() {
            bail!("page E_{r} is not available; page-level data gives E_1 and E_2 only");
        }
    }
    Ok(a)
}

/// The assembly a document kind stands for.
fn default_output(p: &Parsed) -> Result<SsOutput> {
    let expected = p.expected();
    Ok(match &p.input {
        Input::Resolution(r) => singularity_ss(r),
        Input::Gysin(g) => weight_smooth(g, expected.as_ref()),
        Input::GeneralWeight(d) => weight_general(d, expected.as_ref()),
        _ => bail!("no spectral sequence assembly for this document kind"),
    })
}

pub fn pages(path: &Path, r: Option<usize>) -> Result<Report> {
    let l = load(path)?;
    let mut rep = l.report("pages");
    let r = r.or(l.parsed.options.r);
    let a = match &l.parsed.input {
        Input::FilteredComplex(fk) => filtered_pages(fk, r),
        Input::Cubical(d) => filtered_pages(&d.simple_r(1), r),
        Input::Resolution(ResolutionDatum::Chain { diagram, .. }) => filtered_pages(&diagram.simple_r(1), r),
        Input::Square(_) => {
            return Err(kind_error("pages", l.doc.kind, "a complex, diagram, resolution or Gysin datum"))
        }
        _ => select_page(AssemblyReport::from_output(&default_output(&l.parsed)?), r)?,
    };
    rep.assemblies.push(a);
    Ok(rep)
}

pub fn singularity(path: &Path) -> Result<Report> {
    let l = load(path)?;
    let Input::Resolution(r) = &l.parsed.input else {
        return Err(kind_error("singularity", l.doc.kind, "a resolution document"));
    };
    let mut rep = l.report("singularity");
    rep.push_output(&singularity_ss(r));
    Ok(rep)
}

pub fn weight(path: &Path) -> Result<Report> {
    let l = load(path)?;
    let expected = l.parsed.expected();
    let out = match &l.parsed.input {
        Input::Gysin(g) => weight_smooth(g, expected.as_ref()),
        Input::Resolution(r) => weight_compact(r),
        Input::GeneralWeight(d) => weight_general(d, expected.as_ref()),
        _ => return Err(kind_error("weight", l.doc.kind, "a gysin, resolution or general_weight document")),
    };
    let mut rep = l.report("weight");
    rep.push_output(&out);
    Ok(rep)
}

fn named(mut v: Verdict, name: String) -> Verdict {
    v.check = name;
    v
}

fn decalage_verdicts(fk: &FilteredComplex, r: Option<usize>) -> Result<Vec<Verdict>> {
    let rs = r.map_or(vec![1, 2], |r| vec![r]);
    let out: Vec<Result<Verdict>> = {
        use rayon::prelude::*;
        rs.par_iter().map(|&r| Ok(named(decalage_shift(fk, r)?, format!("decalage r={r}")))).collect()
    };
    out.into_iter().collect()
}

fn exchange_verdicts(d: &wfilt_core::cubical::CubicalDiagram, r: Option<usize>) -> Result<Vec<Verdict>> {
    let mut out = vec![];
    let dec_rs = r.map_or(vec![1], |r| vec![r]);
    for r in dec_rs {
        out.push(named(dec_simple_exchange(d, r as i64), format!("dec-simple r={r}")));
    }
    let page_rs = r.map_or(vec![0, 1], |r| vec![r]);
    for r in page_rs {
        out.push(named(page_simple_exchange(d, r)?, format!("simple-exchange r={r}")));
    }
    Ok(out)
}

fn descent_verdict(r: &ResolutionDatum) -> Result<Option<Verdict>> {
    let Some(a) = r.augmentation() else { return Ok(None) };
    let ok = a.is_descent_acyclic(1)?;
    let failures = if ok { vec![] } else { vec!["augmentation is not an E_1-quasi-isomorphism".into()] };
    Ok(Some(Verdict::new("descent-acyclic", failures)))
}

fn square_verdicts(s: &wfilt_core::descent::SquareCohomologyDatum) -> Result<Vec<Verdict>> {
    let ok = s.to_augmented_diagram()?.is_descent_acyclic(1)?;
    let failures = if ok { vec![] } else { vec!["square is not descent-acyclic".into()] };
    Ok(vec![mv_verdict(s), Verdict::new("descent-acyclic", failures)])
}

pub fn verify(path: &Path, check: Check, against: Option<&Path>, r: Option<usize>) -> Result<Report> {
    let l = load(path)?;
    let mut rep = l.report("verify");
    let kind = l.doc.kind;
    match (check, &l.parsed.input) {
        (Check::Decalage, Input::FilteredComplex(fk)) => rep.verdicts.extend(decalage_verdicts(fk, r)?),
        (Check::Decalage, _) => return Err(kind_error("decalage", kind, "a filtered_complex document")),
        (Check::SimpleExchange, Input::Cubical(d)) => rep.verdicts.extend(exchange_verdicts(d, r)?),
        (Check::SimpleExchange, _) => return Err(kind_error("simple-exchange", kind, "a cubical document")),
        (Check::Mv, Input::Square(s)) => rep.verdicts.extend(square_verdicts(s)?),
        (Check::Mv, _) => return Err(kind_error("mv", kind, "a square document")),
        (Check::GysinAcyclic, Input::GeneralWeight(d)) if d.base().is_some() => rep.verdicts.push(d.gysin_acyclic()?),
        (Check::GysinAcyclic, Input::Resolution(res)) if res.augmentation().is_some() => {
            rep.verdicts.extend(descent_verdict(res)?)
        }
        (Check::GysinAcyclic, _) => {
            return Err(kind_error("gysin-acyclic", kind, "an augmented general_weight or resolution document"))
        }
        (Check::E2Independence, _) => {
            let other = against.ok_or_else(|| anyhow!("e2-independence needs --against <file>"))?;
            let m = load(other)?;
            if m.doc.kind != kind {
                bail!("cannot compare a {kind:?} document with a {:?} document", m.doc.kind);
            }
            let (a, b) = rayon::join(|| default_output(&l.parsed), || default_output(&m.parsed));
            let (a, b) = (a?, b?);
            rep.verdicts.push(e2_compare(&a, &b));
            rep.assemblies.push(AssemblyReport::from_output(&a));
            rep.assemblies.push(AssemblyReport::from_output(&b));
        }
    }
    Ok(rep)
}

pub fn report(path: &Path) -> Result<Report> {
    let l = load(path)?;
    let mut rep = l.report("report");
    let expected = l.parsed.expected();
    match &l.parsed.input {
        Input::FilteredComplex(fk) => {
            rep.assemblies.push(filtered_pages(fk, None));
            rep.verdicts.extend(decalage_verdicts(fk, None)?);
        }
        Input::Cubical(d) => {
            rep.assemblies.push(filtered_pages(&d.simple_r(1), None));
            rep.verdicts.extend(exchange_verdicts(d, None)?);
        }
        Input::Resolution(r) => {
            let (l_out, w_out) = rayon::join(|| singularity_ss(r), || weight_compact(r));
            rep.push_output(&l_out);
            rep.push_output(&w_out);
            rep.verdicts.extend(descent_verdict(r)?);
        }
        Input::Gysin(g) => rep.push_output(&weight_smooth(g, expected.as_ref())),
        Input::GeneralWeight(d) => {
            rep.push_output(&weight_general(d, expected.as_ref()));
            if d.base().is_some() {
                rep.verdicts.push(d.gysin_acyclic()?);
            }
        }
        Input::Square(s) => rep.verdicts.extend(square_verdicts(s)?),
    }
    Ok(rep)
}
