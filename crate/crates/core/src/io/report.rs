//! Machine-readable reports: one JSON object per invocation.

use serde::{Deserialize, Serialize};

use crate::descent::{Assembly, SsOutput};
use crate::io::Kind;
use crate::linalg::Ring;
use crate::spectral::{FiltrationOnCohomology, PageReport};
use crate::verify::Verdict;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblyReport {
    /// `None` for a bare filtered complex.
    pub assembly: Option<Assembly>,
    pub page_level: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_page: Option<usize>,
    pub pages: Vec<PageReport>,
    pub filtrations: Vec<FiltrationOnCohomology>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl AssemblyReport {
    pub fn from_output(out: &SsOutput) -> AssemblyReport {
        AssemblyReport {
            assembly: Some(out.assembly),
            page_level: out.page_level,
            stable_page: out.stable_page,
            pages: out.pages.clone(),
            filtrations: out.filtrations.values().cloned().collect(),
            warnings: out.warnings.clone(),
        }
    }

    /// `L` or `W`; `F` for a bare filtered complex.
    pub fn label(&self) -> &'static str {
        self.assembly.map_or("F", Assembly::label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input: String,
    pub kind: Kind,
    pub ring: Ring,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assemblies: Vec<AssemblyReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(command: &str, input: &str, kind: Kind, ring: Ring) -> Report {
        Report {
            schema: REPORT_SCHEMA,
            command: command.into(),
            input: input.into(),
            kind,
            ring,
            assemblies: vec![],
            verdicts: vec![],
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    /// Bounds check for an assembly output, recorded as a verdict.
    pub fn push_output(&mut self, out: &SsOutput) {
        let label = out.assembly.label();
        self.verdicts.push(Verdict::new(&format!("bounds-{label}"), out.bound_violations()));
        self.assemblies.push(AssemblyReport::from_output(out));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::descent::singularity_ss;
    use crate::io::Input;

    #[test]
    fn report_round_trips() {
        let doc = catalog::nodal_punctured_torus(Ring::Integers);
        let Input::Resolution(r) = doc.build().unwrap().input else { panic!() };
        let mut rep = Report::new("singularity", "x.json", doc.kind, doc.ring);
        rep.push_output(&singularity_ss(&r));
        let s = serde_json::to_string(&rep).unwrap();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
        assert!(back.passed());
    }
}
