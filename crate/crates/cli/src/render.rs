//! Plain-text rendering of reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use wfilt_core::io::report::{AssemblyReport, Report};
use wfilt_core::io::{MatrixRepr, ScalarRepr};
use wfilt_core::spectral::PageReport;
use wfilt_core::{ModulePresentation, Ring};

fn module(m: &ModulePresentation, ring: Ring) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let mut parts: Vec<String> = m.torsion.iter().map(|d| format!("Z/{d}")).collect();
    let base = match ring {
        Ring::PrimeField(p) => format!("(Z/{p})"),
        r => r.to_string(),
    };
    match m.free_rank {
        0 => {}
        1 => parts.push(base.trim_matches(|c| c == '(' || c == ')').to_string()),
        k => parts.push(format!("{base}^{k}")),
    }
    parts.join(" + ")
}

fn scalar(x: &ScalarRepr) -> String {
    match x {
        ScalarRepr::Int(v) => v.0.to_string(),
        ScalarRepr::Frac(n, d) => format!("{}/{}", n.0, d.0),
    }
}

fn matrix(m: &MatrixRepr) -> String {
    let rows: Vec<String> = m.entries.iter().map(|r| r.iter().map(scalar).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

fn page(out: &mut String, pg: &PageReport, ring: Ring) {
    let _ = writeln!(out, "E_{}", pg.r);
    if pg.cells.is_empty() {
        let _ = writeln!(out, "  (zero page)");
        return;
    }
    let grid: BTreeMap<(i64, i64), String> = pg.cells.iter().map(|c| ((c.p, c.q), module(&c.module, ring))).collect();
    let (plo, phi) = (grid.keys().map(|k| k.0).min().unwrap(), grid.keys().map(|k| k.0).max().unwrap());
    let (qlo, qhi) = (grid.keys().map(|k| k.1).min().unwrap(), grid.keys().map(|k| k.1).max().unwrap());
    let width = grid.values().map(String::len).max().unwrap_or(1).max(4);
    let _ = write!(out, "  {:>5} |", "q\\p");
    for p in plo..=phi {
        let _ = write!(out, " {p:>width$}");
    }
    out.push('\n');
    for q in (qlo..=qhi).rev() {
        let _ = write!(out, "  {q:>5} |");
        for p in plo..=phi {
            let s = grid.get(&(p, q)).map_or(".", String::as_str);
            let _ = write!(out, " {s:>width$}");
        }
        out.push('\n');
    }
    for c in &pg.cells {
        if let Some(d) = &c.d {
            let _ = writeln!(out, "  d_{} from ({},{}): {}", pg.r, c.p, c.q, matrix(d));
        }
    }
}

fn assembly(out: &mut String, a: &AssemblyReport, ring: Ring) {
    let name = match a.assembly {
        Some(x) => format!("{x:?}"),
        None => "filtered complex".into(),
    };
    let level = if a.page_level { "page level, read from E_2" } else { "chain level" };
    let _ = write!(out, "\n== {name} ({}, {level}", a.label());
    if let Some(s) = a.stable_page {
        let _ = write!(out, ", stable from E_{s}");
    }
    out.push_str(")\n");
    for pg in &a.pages {
        page(out, pg, ring);
    }
    let label = a.label();
    for f in &a.filtrations {
        let _ = writeln!(out, "H^{} = {}", f.n, module(&f.total, ring));
        for (p, g) in f.graded_pieces() {
            let _ = writeln!(out, "  Gr_{p}^{label} H^{} = {} (rank {})", f.n, module(&g, ring), g.free_rank);
        }
        if let Some(p) = f.pure_weight() {
            let _ = writeln!(out, "  pure of index {p}");
        }
    }
    for w in &a.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
}

pub fn text(rep: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} ({:?}, ring {})", rep.command, rep.input, rep.kind, rep.ring);
    for a in &rep.assemblies {
        assembly(&mut out, a, rep.ring);
    }
    if !rep.verdicts.is_empty() {
        out.push_str("\n== verdicts\n");
        for v in &rep.verdicts {
            let _ = writeln!(out, "{}: {}", v.check, if v.passed { "pass" } else { "FAIL" });
            for f in &v.failures {
                let _ = writeln!(out, "  {f}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_names() {
        let m = ModulePresentation { free_rank: 2, torsion: vec![2.into()] };
        assert_eq!(module(&m, Ring::Integers), "Z/2 + Z^2");
        assert_eq!(module(&ModulePresentation::free(1), Ring::Rationals), "Q");
        assert_eq!(module(&ModulePresentation::free(3), Ring::PrimeField(2)), "(Z/2)^3");
        assert_eq!(module(&ModulePresentation::free(1), Ring::PrimeField(2)), "Z/2");
        assert_eq!(module(&ModulePresentation::zero(), Ring::Integers), "0");
    }
}
