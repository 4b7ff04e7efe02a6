//! JSON file formats.
//!
//! Rationals are strings such as `"3"`, `"-1/2"` or `"4/1"`; indices are
//! 0-based. Unknown keys are rejected everywhere.
//!
//! * structure: `{"dim": n, "binary": [[i,j,k,"q"], …], "ternary": [[i,j,k,l,"q"], …]}`
//! * representation: `{"dimV": m, "rho": [[a, M], …], "D": [[a,b, M], …], "theta": [[a,b, M], …]}`
//!   where `M` is a list of rows (a flat row-major list is also accepted)
//! * cochain: `{"degree": d, "dimT": n, "dimV": m, "entries": [[i_1,…,i_d, j, "q"], …]}`
//! * deformation: `{"base": "<path>" | {structure}, "order": N, "terms": [{"i": 1, "F": {cochain}, "G": {cochain}}, …]}`
//! * gauge: `{"order": N, "phis": [M, …]}`
//! * cohomology report: `{"level": "2-3", "dimZ": [..], "dimZPair": z, "dimB": b, "dimH": h, "representatives": [..]}`

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{BinaryEntry, LyaStructure, TernaryEntry};
use crate::cochain::{Cochain, CochainPair, OneCochain};
use crate::cohomology::{CohomologyLevel, CohomologyReport, Representative};
use crate::deformation::{GaugeTransform, TruncatedDeformation};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::representation::Representation;
use crate::scalar::{format_scalar, parse_scalar};
use crate::tensor::all_tuples;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub dim: usize,
    #[serde(default)]
    pub binary: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    pub ternary: Vec<(usize, usize, usize, usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixFile {
    Rows(Vec<Vec<String>>),
    Flat(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    #[serde(default)]
    pub rho: Vec<(usize, MatrixFile)>,
    #[serde(rename = "D", default)]
    pub d: Vec<(usize, usize, MatrixFile)>,
    #[serde(default)]
    pub theta: Vec<(usize, usize, MatrixFile)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub degree: usize,
    #[serde(rename = "dimT")]
    pub dim_t: usize,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    pub entries: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Path(String),
    Inline(StructureFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub i: usize,
    #[serde(rename = "F")]
    pub f: CochainFile,
    #[serde(rename = "G")]
    pub g: CochainFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationFile {
    pub base: BaseRef,
    pub order: usize,
    #[serde(default)]
    pub terms: Vec<TermFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeFile {
    pub order: usize,
    pub phis: Vec<MatrixFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RepresentativeFile {
    Pair { even: CochainFile, odd: CochainFile },
    One(CochainFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub level: String,
    #[serde(rename = "dimZ")]
    pub dim_z: Vec<usize>,
    #[serde(rename = "dimZPair")]
    pub dim_z_pair: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    #[serde(rename = "dimH")]
    pub dim_h: usize,
    pub representatives: Vec<RepresentativeFile>,
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("file types serialize")
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

// ---- structures ----

impl StructureFile {
    pub fn from_structure(t: &LyaStructure) -> Self {
        StructureFile {
            dim: t.dim(),
            binary: t.binary_entries().into_iter().map(|e| (e.i, e.j, e.k, format_scalar(&e.value))).collect(),
            ternary: t.ternary_entries().into_iter().map(|e| (e.i, e.j, e.k, e.l, format_scalar(&e.value))).collect(),
        }
    }

    pub fn to_structure(&self) -> Result<LyaStructure> {
        let binary = self
            .binary
            .iter()
            .map(|(i, j, k, v)| Ok(BinaryEntry::new(*i, *j, *k, parse_scalar(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let ternary = self
            .ternary
            .iter()
            .map(|(i, j, k, l, v)| Ok(TernaryEntry::new(*i, *j, *k, *l, parse_scalar(v)?)))
            .collect::<Result<Vec<_>>>()?;
        LyaStructure::new(self.dim, &binary, &ternary)
    }
}

pub fn structure_from_str(text: &str) -> Result<LyaStructure> {
    parse_json::<StructureFile>(text, "structure file")?.to_structure()
}

pub fn structure_to_string(t: &LyaStructure) -> String {
    to_json(&StructureFile::from_structure(t))
}

pub fn load_structure(path: &Path) -> Result<LyaStructure> {
    structure_from_str(&read_file(path)?)
}

// ---- matrices ----

impl MatrixFile {
    pub fn from_matrix(m: &RationalMatrix) -> Self {
        MatrixFile::Rows((0..m.rows()).map(|r| m.row(r).iter().map(format_scalar).collect()).collect())
    }

    /// Parses an `n × n` matrix.
    pub fn to_square(&self, n: usize) -> Result<RationalMatrix> {
        let flat: Vec<&String> = match self {
            MatrixFile::Rows(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::ShapeError(format!("expected a {n}x{n} matrix")));
                }
                rows.iter().flatten().collect()
            }
            MatrixFile::Flat(v) => v.iter().collect(),
        };
        if flat.len() != n * n {
            return Err(Error::ShapeError(format!("expected {} matrix entries, found {}", n * n, flat.len())));
        }
        let data = flat.into_iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()?;
        RationalMatrix::from_vec(n, n, data)
    }

    fn dim(&self) -> usize {
        match self {
            MatrixFile::Rows(rows) => rows.len(),
            MatrixFile::Flat(v) => (v.len() as f64).sqrt().round() as usize,
        }
    }
}

// ---- representations ----

impl RepresentationFile {
    pub fn from_representation(r: &Representation) -> Self {
        let n = r.dim_t();
        let nonzero = |m: &RationalMatrix| !m.is_zero();
        RepresentationFile {
            dim_v: r.dim_v(),
            rho: (0..n).filter(|&a| nonzero(r.rho(a))).map(|a| (a, MatrixFile::from_matrix(r.rho(a)))).collect(),
            d: pairs(n)
                .filter(|&(a, b)| nonzero(r.d_map(a, b)))
                .map(|(a, b)| (a, b, MatrixFile::from_matrix(r.d_map(a, b))))
                .collect(),
            theta: pairs(n)
                .filter(|&(a, b)| nonzero(r.theta(a, b)))
                .map(|(a, b)| (a, b, MatrixFile::from_matrix(r.theta(a, b))))
                .collect(),
        }
    }

    pub fn to_representation(&self, dim_t: usize) -> Result<Representation> {
        let mut r = Representation::zero(dim_t, self.dim_v);
        if self.dim_v == 0 {
            return Err(Error::InvalidRepresentation("dimV must be positive".into()));
        }
        let check = |i: usize| {
            if i >= dim_t {
                Err(Error::IndexOutOfRange { index: i, dim: dim_t })
            } else {
                Ok(())
            }
        };
        let mut seen = BTreeSet::new();
        for (a, m) in &self.rho {
            check(*a)?;
            if !seen.insert(("rho", *a, 0)) {
                return Err(Error::DuplicateEntry(format!("rho[{a}]")));
            }
            *r.rho_mut(*a) = m.to_square(self.dim_v)?;
        }
        for (key, list) in [("D", &self.d), ("theta", &self.theta)] {
            for (a, b, m) in list {
                check(*a)?;
                check(*b)?;
                if !seen.insert((key, *a, *b)) {
                    return Err(Error::DuplicateEntry(format!("{key}[{a},{b}]")));
                }
                let target = if key == "D" { r.d_map_mut(*a, *b) } else { r.theta_mut(*a, *b) };
                *target = m.to_square(self.dim_v)?;
            }
        }
        Ok(r)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

pub fn representation_from_str(text: &str, dim_t: usize) -> Result<Representation> {
    parse_json::<RepresentationFile>(text, "representation file")?.to_representation(dim_t)
}

pub fn representation_to_string(r: &Representation) -> String {
    to_json(&RepresentationFile::from_representation(r))
}

pub fn load_representation(path: &Path, dim_t: usize) -> Result<Representation> {
    representation_from_str(&read_file(path)?, dim_t)
}

// ---- cochains ----

impl CochainFile {
    pub fn from_cochain(c: &Cochain) -> Self {
        let mut entries = Vec::new();
        for idx in all_tuples(c.dim_t(), c.degree()) {
            for (j, v) in c.at(&idx).iter().enumerate() {
                if !v.is_zero() {
                    let mut e: Vec<Value> = idx.iter().map(|&i| Value::from(i)).collect();
                    e.push(Value::from(j));
                    e.push(Value::from(format_scalar(v)));
                    entries.push(e);
                }
            }
        }
        CochainFile { degree: c.degree(), dim_t: c.dim_t(), dim_v: c.dim_v(), entries }
    }

    /// Builds the cochain; every designated argument pair must be antisymmetric.
    pub fn to_cochain(&self) -> Result<Cochain> {
        let mut c = Cochain::zero(self.degree, self.dim_t, self.dim_v);
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            if e.len() != self.degree + 2 {
                return Err(Error::Parse(format!("cochain entry {e:?} should have {} fields", self.degree + 2)));
            }
            let mut idx = Vec::with_capacity(self.degree + 1);
            for (slot, v) in e[..=self.degree].iter().enumerate() {
                let i =
                    v.as_u64().ok_or_else(|| Error::Parse(format!("cochain entry {e:?}: index expected")))? as usize;
                let bound = if slot == self.degree { self.dim_v } else { self.dim_t };
                if i >= bound {
                    return Err(Error::IndexOutOfRange { index: i, dim: bound });
                }
                idx.push(i);
            }
            let value = match &e[self.degree + 1] {
                Value::String(s) => parse_scalar(s)?,
                other => return Err(Error::Parse(format!("cochain entry value {other} must be a string"))),
            };
            if !seen.insert(idx.clone()) {
                return Err(Error::DuplicateEntry(format!("cochain entry {idx:?}")));
            }
            let j = idx.pop().expect("output index present");
            c.at_mut(&idx)[j] = value;
        }
        c.ensure_alternating("cochain file")?;
        Ok(c)
    }
}

pub fn cochain_from_str(text: &str) -> Result<Cochain> {
    parse_json::<CochainFile>(text, "cochain file")?.to_cochain()
}

pub fn cochain_to_string(c: &Cochain) -> String {
    to_json(&CochainFile::from_cochain(c))
}

pub fn load_cochain(path: &Path) -> Result<Cochain> {
    cochain_from_str(&read_file(path)?)
}

// ---- deformations and gauges ----

impl DeformationFile {
    /// Writes the base inline.
    pub fn from_deformation(d: &TruncatedDeformation) -> Self {
        let terms = (1..=d.order())
            .filter(|&i| !(d.f(i).is_zero() && d.g(i).is_zero()))
            .map(|i| TermFile { i, f: CochainFile::from_cochain(d.f(i)), g: CochainFile::from_cochain(d.g(i)) })
            .collect();
        DeformationFile { base: BaseRef::Inline(StructureFile::from_structure(d.base())), order: d.order(), terms }
    }

    /// `base_dir` resolves a relative base path; terms not listed are zero.
    pub fn to_deformation(&self, base_dir: Option<&Path>) -> Result<TruncatedDeformation> {
        let base = match &self.base {
            BaseRef::Inline(s) => s.to_structure()?,
            BaseRef::Path(p) => {
                let mut path = PathBuf::from(p);
                if path.is_relative() {
                    if let Some(dir) = base_dir {
                        path = dir.join(path);
                    }
                }
                load_structure(&path)?
            }
        };
        let n = base.dim();
        let mut terms: Vec<Option<CochainPair>> = vec![None; self.order];
        for t in &self.terms {
            if t.i == 0 || t.i > self.order {
                return Err(Error::IndexOutOfRange { index: t.i, dim: self.order + 1 });
            }
            if terms[t.i - 1].is_some() {
                return Err(Error::DuplicateEntry(format!("term {}", t.i)));
            }
            terms[t.i - 1] = Some(CochainPair::new(1, t.f.to_cochain()?, t.g.to_cochain()?)?);
        }
        let terms = terms.into_iter().map(|t| t.unwrap_or_else(|| CochainPair::zero(1, n, n))).collect();
        TruncatedDeformation::new(base, terms)
    }
}

pub fn deformation_from_str(text: &str, base_dir: Option<&Path>) -> Result<TruncatedDeformation> {
    parse_json::<DeformationFile>(text, "deformation file")?.to_deformation(base_dir)
}

pub fn deformation_to_string(d: &TruncatedDeformation) -> String {
    to_json(&DeformationFile::from_deformation(d))
}

pub fn load_deformation(path: &Path) -> Result<TruncatedDeformation> {
    deformation_from_str(&read_file(path)?, path.parent())
}

impl GaugeFile {
    pub fn from_gauge(g: &GaugeTransform) -> Self {
        GaugeFile { order: g.order(), phis: g.phis().iter().map(MatrixFile::from_matrix).collect() }
    }

    pub fn to_gauge(&self, dim: usize) -> Result<GaugeTransform> {
        if self.phis.len() != self.order {
            return Err(Error::ShapeError(format!(
                "order {} but {} coefficient matrices",
                self.order,
                self.phis.len()
            )));
        }
        let phis = self.phis.iter().map(|m| m.to_square(dim)).collect::<Result<Vec<_>>>()?;
        GaugeTransform::new(dim, phis)
    }

    /// Dimension read off the first coefficient, if any.
    pub fn dim_hint(&self) -> Option<usize> {
        self.phis.first().map(MatrixFile::dim)
    }
}

pub fn gauge_from_str(text: &str, dim: usize) -> Result<GaugeTransform> {
    parse_json::<GaugeFile>(text, "gauge file")?.to_gauge(dim)
}

pub fn gauge_to_string(g: &GaugeTransform) -> String {
    to_json(&GaugeFile::from_gauge(g))
}

// ---- cohomology reports ----

impl ReportFile {
    pub fn from_report(r: &CohomologyReport) -> Self {
        let representatives = r
            .representatives
            .iter()
            .map(|x| match x {
                Representative::One(f) => RepresentativeFile::One(CochainFile::from_cochain(&f.to_cochain())),
                Representative::Pair(p) => RepresentativeFile::Pair {
                    even: CochainFile::from_cochain(p.even()),
                    odd: CochainFile::from_cochain(p.odd()),
                },
            })
            .collect();
        ReportFile {
            level: r.level.to_string(),
            dim_z: r.dim_z.clone(),
            dim_z_pair: r.dim_z_pair,
            dim_b: r.dim_b,
            dim_h: r.dim_h,
            representatives,
        }
    }

    pub fn to_report(&self) -> Result<CohomologyReport> {
        let level: CohomologyLevel = self.level.parse()?;
        let representatives = self
            .representatives
            .iter()
            .map(|x| {
                Ok(match x {
                    RepresentativeFile::One(c) => Representative::One(OneCochain::from_cochain(&c.to_cochain()?)?),
                    RepresentativeFile::Pair { even, odd } => {
                        let even = even.to_cochain()?;
                        Representative::Pair(CochainPair::new(even.degree() / 2, even, odd.to_cochain()?)?)
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CohomologyReport {
            level,
            dim_z: self.dim_z.clone(),
            dim_z_pair: self.dim_z_pair,
            dim_b: self.dim_b,
            dim_h: self.dim_h,
            representatives,
        })
    }
}

pub fn report_from_str(text: &str) -> Result<CohomologyReport> {
    parse_json::<ReportFile>(text, "cohomology report")?.to_report()
}

pub fn report_to_string(r: &CohomologyReport) -> String {
    to_json(&ReportFile::from_report(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology;
    use crate::corpus;
    use crate::deformation::{apply_gauge, identity_on_pair};
    use crate::sample::Sampler;

    #[test]
    fn structure_round_trip() {
        for (_, t) in corpus::corpus(3).into_iter().chain(corpus::corpus(2)) {
            assert_eq!(structure_from_str(&structure_to_string(&t)).unwrap(), t);
        }
    }

    #[test]
    fn structure_rejects_unknown_keys_and_bad_values() {
        assert!(matches!(structure_from_str(r#"{"dim":2,"binary":[],"ternary":[],"x":1}"#), Err(Error::Parse(_))));
        assert!(matches!(
            structure_from_str(r#"{"dim":2,"binary":[[0,1,0,"1"]],"ternary":[]}"#),
            Err(Error::AlternationViolation(_))
        ));
        assert!(structure_from_str(r#"{"dim":2,"binary":[[0,1,0,"1/0"]],"ternary":[]}"#).is_err());
        let t = structure_from_str(r#"{"dim":2,"binary":[[0,1,0,"2/2"],[1,0,0,"-1"]],"ternary":[]}"#).unwrap();
        assert_eq!(t, corpus::solvable());
    }

    #[test]
    fn representation_round_trip() {
        let t = corpus::so3(true);
        let r = Representation::regular(&t).unwrap();
        let back = representation_from_str(&representation_to_string(&r), 3).unwrap();
        assert_eq!(back, r);
        let flat = r#"{"dimV":1,"rho":[[0,["1"]]]}"#;
        assert_eq!(representation_from_str(flat, 2).unwrap().rho(0)[(0, 0)], crate::scalar::int(1));
    }

    #[test]
    fn cochain_round_trip_and_alternation() {
        let g = identity_on_pair(2, 0, 1);
        assert_eq!(cochain_from_str(&cochain_to_string(&g)).unwrap(), g);
        let one_sided = r#"{"degree":3,"dimT":2,"dimV":2,"entries":[[0,1,0,0,"1"]]}"#;
        assert!(matches!(cochain_from_str(one_sided), Err(Error::AlternationViolation(_))));
    }

    #[test]
    fn deformation_and_gauge_round_trip() {
        let mut s = Sampler::new(3);
        let gauge = s.gauge(2, 2);
        assert_eq!(gauge_from_str(&gauge_to_string(&gauge), 2).unwrap(), gauge);
        let d = apply_gauge(&TruncatedDeformation::null(corpus::solvable(), 2), &gauge).unwrap();
        assert_eq!(deformation_from_str(&deformation_to_string(&d), None).unwrap(), d);
    }

    #[test]
    fn report_round_trip() {
        let t = corpus::solvable_induced();
        let r = Representation::regular(&t).unwrap();
        for level in [CohomologyLevel::H1, CohomologyLevel::H23, CohomologyLevel::H2p(2)] {
            let rep = cohomology::compute(&t, &r, level).unwrap();
            assert_eq!(report_from_str(&report_to_string(&rep)).unwrap(), rep);
        }
    }
}
