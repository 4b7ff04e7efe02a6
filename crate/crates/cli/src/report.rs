//! Output documents. Every command produces one of these; `--json` prints it
//! with serde, otherwise it is rendered as a plain table.

use std::fmt::Write as _;

use lya::formats::{CochainFile, DeformationFile, GaugeFile, ReportFile};
use lya::scalar::{format_scalar, format_vector, parse_scalar};
use lya::Witness;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub tuple: Vec<usize>,
    pub defect: Vec<String>,
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        WitnessDoc { tuple: w.tuple.clone(), defect: w.defect.iter().map(format_scalar).collect() }
    }
}

impl WitnessDoc {
    pub fn describe(&self) -> String {
        let args: Vec<String> = self.tuple.iter().map(|i| format!("e{i}")).collect();
        let defect: Vec<_> = self.defect.iter().map(|s| parse_scalar(s).expect("formatted by us")).collect();
        format!("({}) defect {}", args.join(","), format_vector(&defect))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomDoc {
    pub number: usize,
    pub formula: String,
    pub passed: bool,
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub dim: usize,
    pub passed: bool,
    #[serde(rename = "passCount")]
    pub pass_count: usize,
    pub axioms: Vec<AxiomDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub relation: String,
    pub passed: bool,
    pub tuple: Option<Vec<usize>>,
    /// Nonzero defect matrix, as rows.
    pub defect: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepCheckDoc {
    pub representation: String,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    pub passed: bool,
    pub relations: Vec<RelationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyDoc {
    pub representation: String,
    pub levels: Vec<ReportFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub order: usize,
    pub family: String,
    pub passed: bool,
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformCheckDoc {
    pub order: usize,
    pub passed: bool,
    pub families: Vec<FamilyDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionDoc {
    pub order: usize,
    pub even: CochainFile,
    pub odd: CochainFile,
    #[serde(rename = "inZ45")]
    pub in_z45: bool,
    #[serde(rename = "inB45")]
    pub in_b45: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub order: usize,
    /// A family name, or `joint` when only the combined system is inconsistent.
    pub blocking: String,
    pub family: String,
    pub witness: WitnessDoc,
    pub obstruction: ObstructionDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegrateDoc {
    #[serde(rename = "targetOrder")]
    pub target_order: usize,
    /// Order reached; equals the target unless blocked.
    pub reached: usize,
    pub status: String,
    pub deformation: DeformationFile,
    pub blocked: Option<BlockDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrivializeDoc {
    pub order: usize,
    pub status: String,
    pub gauges: Vec<GaugeFile>,
    pub composed: GaugeFile,
    #[serde(rename = "obstructedAt")]
    pub obstructed_at: Option<usize>,
    pub class: Option<(CochainFile, CochainFile)>,
    pub coordinates: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyDoc {
    pub property: String,
    pub algebra: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelftestDoc {
    pub dim: usize,
    pub seed: u64,
    pub passed: bool,
    pub properties: Vec<PropertyDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Document {
    Check(CheckDoc),
    RepCheck(RepCheckDoc),
    Cohomology(CohomologyDoc),
    DeformCheck(DeformCheckDoc),
    DeformIntegrate(IntegrateDoc),
    DeformTrivialize(TrivializeDoc),
    Obstruction(ObstructionDoc),
    Selftest(SelftestDoc),
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl Document {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        match self {
            Document::Check(d) => {
                for a in &d.axioms {
                    let _ = write!(s, "axiom {}  {}  {}", a.number, mark(a.passed), a.formula);
                    if let Some(w) = &a.witness {
                        let _ = write!(s, "  at {}", w.describe());
                    }
                    s.push('\n');
                }
                let _ = writeln!(s, "{}/6 axioms {}", d.pass_count, mark(d.passed));
            }
            Document::RepCheck(d) => {
                let _ = writeln!(s, "representation {} (dim V = {})", d.representation, d.dim_v);
                for r in &d.relations {
                    let _ = write!(s, "{:<14} {}", r.relation, mark(r.passed));
                    if let Some(t) = &r.tuple {
                        let args: Vec<String> = t.iter().map(|i| format!("e{i}")).collect();
                        let _ = write!(s, "  at ({})", args.join(","));
                    }
                    s.push('\n');
                }
                let _ = writeln!(s, "relations {}", mark(d.passed));
            }
            Document::Cohomology(d) => {
                let _ = writeln!(s, "representation: {}", d.representation);
                let _ = writeln!(s, "{:<7} {:>8} {:>8} {:>6} {:>6}", "level", "Z", "Z(e,o)", "B", "H");
                for l in &d.levels {
                    let proj: Vec<String> = l.dim_z.iter().map(usize::to_string).collect();
                    let _ = writeln!(
                        s,
                        "{:<7} {:>8} {:>8} {:>6} {:>6}",
                        l.level,
                        l.dim_z_pair,
                        proj.join(","),
                        l.dim_b,
                        l.dim_h
                    );
                }
            }
            Document::DeformCheck(d) => {
                let _ = writeln!(s, "{:<6} {:<8} status", "order", "family");
                for f in &d.families {
                    let _ = write!(s, "{:<6} {:<8} {}", f.order, f.family, mark(f.passed));
                    if let Some(w) = &f.witness {
                        let _ = write!(s, "  at {}", w.describe());
                    }
                    s.push('\n');
                }
                let _ = writeln!(s, "deformation equations through order {} {}", d.order, mark(d.passed));
            }
            Document::DeformIntegrate(d) => match &d.blocked {
                None => {
                    let _ = writeln!(s, "integrated to order {}", d.reached);
                }
                Some(b) => {
                    let what = if b.blocking == "joint" {
                        format!("joint system inconsistent, first in the {} family", b.family)
                    } else {
                        format!("{} family inconsistent", b.family)
                    };
                    let _ = writeln!(s, "obstructed at order {}: {what} at {}", b.order, b.witness.describe());
                    let _ = writeln!(
                        s,
                        "obstruction pair: in Z4xZ5 {}, in B4xB5 {}",
                        b.obstruction.in_z45, b.obstruction.in_b45
                    );
                }
            },
            Document::DeformTrivialize(d) => {
                let _ = writeln!(s, "status: {}", d.status);
                let _ = writeln!(s, "gauges applied: {}", d.gauges.len());
                if let Some(r) = d.obstructed_at {
                    let coords = d.coordinates.clone().unwrap_or_default();
                    let _ = writeln!(s, "nontrivial class at order {r}, coordinates [{}]", coords.join(", "));
                }
            }
            Document::Obstruction(d) => {
                let _ = writeln!(s, "obstruction at order {}", d.order);
                let _ = writeln!(s, "nonzero entries: even {}, odd {}", d.even.entries.len(), d.odd.entries.len());
                let _ = writeln!(s, "in Z4xZ5: {}", d.in_z45);
                let _ = writeln!(s, "in B4xB5: {}", d.in_b45);
            }
            Document::Selftest(d) => {
                let _ = writeln!(s, "selftest dim {} seed {}", d.dim, d.seed);
                for p in &d.properties {
                    let _ = writeln!(s, "{} {:<22} {:<18} {}", mark(p.passed), p.property, p.algebra, p.detail);
                }
                let passed = d.properties.iter().filter(|p| p.passed).count();
                let _ = writeln!(s, "{passed}/{} properties {}", d.properties.len(), mark(d.passed));
            }
        }
        s
    }
}
