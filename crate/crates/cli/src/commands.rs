use std::path::Path;

use lya::cohomology::{self, CohomologyLevel};
use lya::deformation::{self, Blocking, IntegrationOutcome, TrivializeStatus, TruncatedDeformation};
use lya::formats::{self, CochainFile, DeformationFile, GaugeFile, ReportFile};
use lya::scalar::format_scalar;
use lya::selftest::{self, SelftestConfig};
use lya::{CochainPair, Error, LyaStructure, Representation, Result};
use serde_json::Value;

use crate::report::*;

/// A finished command: its document and whether every check passed.
pub struct Outcome {
    pub doc: Document,
    pub ok: bool,
}

fn done(doc: Document, ok: bool) -> Result<Outcome> {
    Ok(Outcome { doc, ok })
}

pub fn check(structure: &Path) -> Result<Outcome> {
    let t = formats::load_structure(structure)?;
    let report = t.check_axioms();
    let axioms = report
        .statuses
        .iter()
        .map(|s| AxiomDoc {
            number: s.axiom.number(),
            formula: s.axiom.formula().to_string(),
            passed: s.passed(),
            witness: s.witness.as_ref().map(WitnessDoc::from),
        })
        .collect();
    let doc = CheckDoc { dim: t.dim(), passed: report.passed(), pass_count: report.pass_count(), axioms };
    let ok = doc.passed;
    done(Document::Check(doc), ok)
}

fn load_rep(t: &LyaStructure, rep: Option<&Path>) -> Result<(Representation, String)> {
    match rep {
        Some(p) => Ok((formats::load_representation(p, t.dim())?, p.display().to_string())),
        None => Ok((Representation::regular_unchecked(t), "regular".to_string())),
    }
}

pub fn rep_check(structure: &Path, rep: Option<&Path>) -> Result<Outcome> {
    let t = formats::load_structure(structure)?;
    let (r, name) = load_rep(&t, rep)?;
    let report = r.check(&t)?;
    let relations = report
        .statuses
        .iter()
        .map(|s| RelationDoc {
            relation: s.relation.to_string(),
            passed: s.witness.is_none(),
            tuple: s.witness.as_ref().map(|w| w.tuple.clone()),
            defect: s
                .witness
                .as_ref()
                .map(|w| (0..w.defect.rows()).map(|i| w.defect.row(i).iter().map(format_scalar).collect()).collect()),
        })
        .collect();
    let doc = RepCheckDoc { representation: name, dim_v: r.dim_v(), passed: report.passed(), relations };
    let ok = doc.passed;
    done(Document::RepCheck(doc), ok)
}

/// Parses a comma-separated level list such as `1,2-3,4-5` or `2p:3`.
pub fn parse_levels(spec: &str, p_limit: usize) -> Result<Vec<CohomologyLevel>> {
    let mut levels = Vec::new();
    for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let level: CohomologyLevel = part.parse()?;
        if level.p() > p_limit {
            return Err(Error::Parse(format!("level {level} exceeds --p-limit {p_limit}")));
        }
        if !levels.contains(&level) {
            levels.push(level);
        }
    }
    if levels.is_empty() {
        return Err(Error::Parse("no cohomology levels given".into()));
    }
    Ok(levels)
}

pub fn default_levels(p_limit: usize) -> Vec<CohomologyLevel> {
    (0..=p_limit).map(CohomologyLevel::from_p).collect()
}

pub fn cohomology(structure: &Path, rep: Option<&Path>, levels: &[CohomologyLevel]) -> Result<Outcome> {
    let t = formats::load_structure(structure)?;
    t.validate()?;
    let (r, name) = load_rep(&t, rep)?;
    let reports = levels
        .iter()
        .map(|&l| cohomology::compute(&t, &r, l).map(|rep| ReportFile::from_report(&rep)))
        .collect::<Result<Vec<_>>>()?;
    done(Document::Cohomology(CohomologyDoc { representation: name, levels: reports }), true)
}

/// A deformation file, or a structure file plus `--from` naming a degree-2
/// cochain (`F_1`), a degree-3 cochain (`G_1`) or a deformation file.
pub fn load_deformation_input(path: &Path, from: Option<&Path>) -> Result<TruncatedDeformation> {
    let Some(from) = from else {
        return formats::load_deformation(path);
    };
    let base = formats::load_structure(path)?;
    let text = formats::read_file(from)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", from.display())))?;
    if value.get("base").is_some() {
        let d = formats::deformation_from_str(&text, from.parent())?;
        if d.base() != &base {
            return Err(Error::ShapeError(format!("{} is over a different base algebra", from.display())));
        }
        return Ok(d);
    }
    let c = formats::cochain_from_str(&text)?;
    let n = base.dim();
    let zero = CochainPair::zero(1, n, n);
    let term = match c.degree() {
        2 => CochainPair::new(1, c, zero.odd().clone())?,
        3 => CochainPair::new(1, zero.even().clone(), c)?,
        d => return Err(Error::ShapeError(format!("--from cochain has degree {d}; expected 2 or 3"))),
    };
    TruncatedDeformation::new(base, vec![term])
}

pub fn deform_check(d: &TruncatedDeformation) -> Result<Outcome> {
    let report = deformation::check_deformation(d);
    let families = report
        .statuses
        .iter()
        .map(|s| FamilyDoc {
            order: s.order,
            family: s.family.to_string(),
            passed: s.witness.is_none(),
            witness: s.witness.as_ref().map(WitnessDoc::from),
        })
        .collect();
    let doc = DeformCheckDoc { order: d.order(), passed: report.passed(), families };
    let ok = doc.passed;
    done(Document::DeformCheck(doc), ok)
}

fn obstruction_doc(o: &deformation::ObstructionPair) -> ObstructionDoc {
    ObstructionDoc {
        order: o.order,
        even: CochainFile::from_cochain(&o.even),
        odd: CochainFile::from_cochain(&o.odd),
        in_z45: o.in_z45,
        in_b45: o.in_b45,
    }
}

pub fn deform_integrate(d: TruncatedDeformation, target: usize) -> Result<Outcome> {
    let mut cur = d.truncate(target);
    while cur.order() < target {
        match deformation::integrate_step(&cur)? {
            IntegrationOutcome::Extended { extended, .. } => cur = extended,
            IntegrationOutcome::Obstructed { order, blocking, family, witness, obstruction } => {
                let blocking = match blocking {
                    Blocking::Family(f) => f.to_string(),
                    Blocking::Joint => "joint".to_string(),
                };
                let doc = IntegrateDoc {
                    target_order: target,
                    reached: cur.order(),
                    status: "obstructed".into(),
                    deformation: DeformationFile::from_deformation(&cur),
                    blocked: Some(BlockDoc {
                        order,
                        blocking,
                        family: family.to_string(),
                        witness: WitnessDoc::from(&witness),
                        obstruction: obstruction_doc(&obstruction),
                    }),
                };
                return done(Document::DeformIntegrate(doc), false);
            }
        }
    }
    let doc = IntegrateDoc {
        target_order: target,
        reached: cur.order(),
        status: "extended".into(),
        deformation: DeformationFile::from_deformation(&cur),
        blocked: None,
    };
    done(Document::DeformIntegrate(doc), true)
}

pub fn deform_trivialize(d: &TruncatedDeformation) -> Result<Outcome> {
    let tr = deformation::trivialize(d)?;
    let composed = tr.composed(d.dim(), d.order());
    let gauges: Vec<GaugeFile> = tr.gauges.iter().map(GaugeFile::from_gauge).collect();
    let (status, at, class, coordinates, ok) = match &tr.status {
        TrivializeStatus::Trivialized => ("trivialized", None, None, None, true),
        TrivializeStatus::Obstructed { order, class, coordinates } => (
            "obstructed",
            Some(*order),
            Some((CochainFile::from_cochain(class.even()), CochainFile::from_cochain(class.odd()))),
            Some(coordinates.iter().map(format_scalar).collect()),
            false,
        ),
    };
    let doc = TrivializeDoc {
        order: d.order(),
        status: status.into(),
        gauges,
        composed: GaugeFile::from_gauge(&composed),
        obstructed_at: at,
        class,
        coordinates,
    };
    done(Document::DeformTrivialize(doc), ok)
}

pub fn obstruction(d: &TruncatedDeformation, order: Option<usize>) -> Result<Outcome> {
    let n = order.unwrap_or(d.order() + 1);
    let o = deformation::obstruction(d, n)?;
    let ok = o.in_z45;
    done(Document::Obstruction(obstruction_doc(&o)), ok)
}

pub fn selftest(config: &SelftestConfig) -> Result<Outcome> {
    let report = selftest::run(config)?;
    let properties = report
        .outcomes
        .iter()
        .map(|o| PropertyDoc {
            property: o.property.to_string(),
            algebra: o.algebra.to_string(),
            passed: o.passed,
            detail: o.detail.clone(),
        })
        .collect();
    let doc = SelftestDoc { dim: report.dim, seed: report.seed, passed: report.passed(), properties };
    let ok = doc.passed;
    done(Document::Selftest(doc), ok)
}

/// Exit status for a library error: 2 for input problems, 1 for failed mathematics.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidAlgebra(_)
        | Error::InvalidRepresentation(_)
        | Error::EquationsViolated(_)
        | Error::NotEquivalent(_)
        | Error::Internal(_) => 1,
        _ => 2,
    }
}
