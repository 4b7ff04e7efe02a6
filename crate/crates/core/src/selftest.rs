//! Randomized checks of the identities the library relies on.
//!
//! Each algebra of the built-in corpus of the requested dimension is moved
//! to a random basis drawn from the seed, and every property is checked
//! exactly on that instance. The run is deterministic in `(dim, seed)`.

use std::fmt;

use crate::algebra::LyaStructure;
use crate::cochain::{self, cochain_space_dim};
use crate::cohomology::{delta1_matrix, delta_matrix, delta_star_matrix};
use crate::corpus;
use crate::deformation::{
    apply_gauge, check_deformation, infinitesimals_agree, obstruction, trivialize, TrivializeStatus,
    TruncatedDeformation,
};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::representation::Representation;
use crate::sample::Sampler;

pub const MAX_DIM: usize = 3;

/// Truncation order of the random deformations and gauges.
const ORDER: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestConfig {
    pub dim: usize,
    pub seed: u64,
    /// Negates the `δ_I` block of each coboundary matrix before composing,
    /// so that the `δ∘δ` property must fail.
    pub corrupt_delta: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub property: &'static str,
    pub algebra: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub dim: usize,
    pub seed: u64,
    pub outcomes: Vec<PropertyOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn first_failure(&self) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| !o.passed)
    }
}

impl fmt::Display for PropertyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} {:<22} {:<18} {}", self.property, self.algebra, self.detail)
    }
}

/// Flips the sign of the first `rows` rows.
fn negate_rows(m: &RationalMatrix, rows: usize) -> RationalMatrix {
    let data: Vec<_> = (0..m.rows())
        .flat_map(|r| {
            let neg = r < rows;
            m.row(r).iter().map(move |x| if neg { -x } else { x.clone() })
        })
        .collect();
    RationalMatrix::from_vec(m.rows(), m.cols(), data).expect("same shape")
}

struct Instance {
    t: LyaStructure,
    r: Representation,
}

fn outcome(property: &'static str, algebra: &'static str, result: Result<Option<String>>) -> PropertyOutcome {
    match result {
        Ok(None) => PropertyOutcome { property, algebra, passed: true, detail: String::new() },
        Ok(Some(why)) => PropertyOutcome { property, algebra, passed: false, detail: why },
        Err(e) => PropertyOutcome { property, algebra, passed: false, detail: format!("error: {e}") },
    }
}

fn fail_if(cond: bool, why: impl FnOnce() -> String) -> Result<Option<String>> {
    Ok(cond.then(why))
}

fn delta_squared(inst: &Instance, corrupt: bool) -> Result<Option<String>> {
    let (t, r) = (&inst.t, &inst.r);
    let (n, m) = (t.dim(), r.dim_v());
    let mut d1 = delta1_matrix(t, r)?;
    let mut m1 = delta_matrix(t, r, 1)?;
    let m2 = delta_matrix(t, r, 2)?;
    if corrupt {
        d1 = negate_rows(&d1, cochain_space_dim(n, m, 2));
        m1 = negate_rows(&m1, cochain_space_dim(n, m, 4));
    }
    if !m2.mul(&m1)?.is_zero() {
        return Ok(Some("δ∘δ ≠ 0 from C²×C³ to C⁶×C⁷".into()));
    }
    if !m1.mul(&d1)?.is_zero() {
        return Ok(Some("δ∘δ¹ ≠ 0 on C¹".into()));
    }
    let s = delta_star_matrix(t, r)?;
    fail_if(!s.mul(&d1)?.is_zero(), || "δ*∘δ¹ ≠ 0 on C¹".into())
}

fn alternation(inst: &Instance, s: &mut Sampler) -> Result<Option<String>> {
    let (n, m) = (inst.t.dim(), inst.r.dim_v());
    for level in 1..=2 {
        let pair = s.pair(level, n, m);
        match cochain::delta(&inst.t, &inst.r, &pair) {
            Ok(_) => {}
            Err(Error::AlternationViolation(w)) => return Ok(Some(format!("δ output at level {level}: {w}"))),
            Err(e) => return Err(e),
        }
    }
    match cochain::delta_star(&inst.t, &inst.r, &s.pair(1, n, m)) {
        Ok(_) => Ok(None),
        Err(Error::AlternationViolation(w)) => Ok(Some(format!("δ* output: {w}"))),
        Err(e) => Err(e),
    }
}

fn deformation_properties(inst: &Instance, s: &mut Sampler) -> Vec<(&'static str, Result<Option<String>>)> {
    let n = inst.t.dim();
    let psi = s.gauge(n, ORDER);
    let phi = s.gauge(n, ORDER);
    let mut out = Vec::new();
    let d = match apply_gauge(&TruncatedDeformation::null(inst.t.clone(), ORDER), &psi) {
        Ok(d) => d,
        Err(e) => return vec![("gauge-invariance", Err(e))],
    };
    let image = apply_gauge(&d, &phi);

    out.push((
        "gauge-invariance",
        image.as_ref().map_err(Clone::clone).and_then(|img| {
            let rep = check_deformation(img);
            fail_if(!(check_deformation(&d).passed() && rep.passed()), || match rep.first_failure() {
                Some(f) => format!("order {} {} family fails after gauging", f.order, f.family),
                None => "gauge of null violates the equations".into(),
            })
        }),
    ));
    out.push((
        "gauge-round-trip",
        image.as_ref().map_err(Clone::clone).and_then(|img| {
            let back = apply_gauge(img, &phi.invert())?;
            fail_if(back != d, || "Φ⁻¹ after Φ does not restore the deformation".into())
        }),
    ));
    out.push((
        "first-order-law",
        image.as_ref().map_err(Clone::clone).and_then(|img| {
            let diff = img.term(1)?.sub(&d.term(1)?)?;
            let expected = cochain::delta1(&inst.t, &inst.r, &crate::cochain::OneCochain(phi.coefficient(1)))?;
            fail_if(diff != expected, || "F'_1 − F_1 ≠ δ¹φ_1".into())
        }),
    ));
    out.push((
        "infinitesimals-agree",
        image.as_ref().map_err(Clone::clone).and_then(|img| {
            fail_if(!infinitesimals_agree(&d, img, &phi)?, || "infinitesimals not cohomologous".into())
        }),
    ));
    out.push((
        "obstruction-cocycle",
        (2..=ORDER + 1).map(|k| Ok((k, obstruction(&d, k)?.in_z45))).collect::<Result<Vec<_>>>().map(|v| {
            v.into_iter().find(|(_, ok)| !ok).map(|(k, _)| format!("obstruction at order {k} is not a cocycle"))
        }),
    ));
    out.push((
        "trivialize-round-trip",
        trivialize(&d).and_then(|tr| {
            if tr.status != TrivializeStatus::Trivialized {
                return Ok(Some("gauge of null reported obstructed".into()));
            }
            let restored = apply_gauge(&d, &tr.composed(n, ORDER))?;
            fail_if(!restored.is_null() || tr.gauges.len() > ORDER, || "composed gauges do not restore null".into())
        }),
    ));
    out
}

/// Runs every property on every corpus algebra of dimension `config.dim`.
pub fn run(config: &SelftestConfig) -> Result<SelftestReport> {
    if config.dim < 2 || config.dim > MAX_DIM {
        return Err(Error::DimensionMismatch { expected: MAX_DIM, found: config.dim });
    }
    let mut s = Sampler::new(config.seed);
    let mut outcomes = Vec::new();
    for (name, base) in corpus::corpus(config.dim) {
        let p = s.invertible(config.dim);
        let t = base.change_basis(&p)?;
        let r = Representation::regular(&t)?;
        let inst = Instance { t, r };
        outcomes.push(outcome("delta-squared", name, delta_squared(&inst, config.corrupt_delta)));
        outcomes.push(outcome("alternation", name, alternation(&inst, &mut s)));
        for (property, result) in deformation_properties(&inst, &mut s) {
            outcomes.push(outcome(property, name, result));
        }
    }
    Ok(SelftestReport { dim: config.dim, seed: config.seed, outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_two_passes_and_is_deterministic() {
        let cfg = SelftestConfig { dim: 2, seed: 42, corrupt_delta: false };
        let a = run(&cfg).unwrap();
        assert!(a.passed(), "{:?}", a.first_failure());
        assert_eq!(a, run(&cfg).unwrap());
    }

    #[test]
    fn corrupted_delta_is_caught() {
        let cfg = SelftestConfig { dim: 2, seed: 5, corrupt_delta: true };
        let report = run(&cfg).unwrap();
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.property, "delta-squared");
        assert!(fail.detail.contains("δ∘δ"));
    }

    #[test]
    fn dimension_cap() {
        assert!(run(&SelftestConfig { dim: 4, seed: 0, corrupt_delta: false }).is_err());
    }
}
