//! Cocycles, coboundaries and cohomology of a Lie-Yamaguti algebra with
//! coefficients in a representation.
//!
//! Each operator is assembled as a matrix whose `k`-th column is the image of
//! the `k`-th standard basis element of its domain, written in the coordinates
//! of [`crate::cochain`]. The cocycle space of a level is the kernel of the
//! stacked operator matrix, the coboundary space is the column space of the
//! operator one level below, and the cohomology is their quotient. All three
//! are spaces of *pairs* `(f, g)`, because the operators mix both components.
//!
//! | level | domain            | cocycles                    | coboundaries          |
//! |-------|-------------------|-----------------------------|-----------------------|
//! | `H¹`  | `C¹`              | `ker δ¹`                    | `0`                   |
//! | `H²×H³` | `C²×C³`         | `ker δ ∩ ker δ*`            | `δ¹(C¹)`              |
//! | `H^{2p}×H^{2p+1}` | `C^{2p}×C^{2p+1}` | `ker δ`       | `δ(C^{2p-2}×C^{2p-1})`|

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::LyaStructure;
use crate::cochain::{self, cochain_space_dim, delta1_even_at, delta1_odd_at, CochainPair, OneCochain};
use crate::error::{check_len, Error, Result};
use crate::linalg::RationalMatrix;
use crate::representation::Representation;
use crate::scalar::{axpy, is_zero_vector, Scalar, Vector};
use crate::tensor::all_tuples;

/// Which cohomology group to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CohomologyLevel {
    H1,
    H23,
    /// `H^{2p} × H^{2p+1}` for `p ≥ 2`.
    H2p(usize),
}

impl CohomologyLevel {
    /// Level of the pair `C^{2p}×C^{2p+1}` from its `p`; `p = 0` means `H¹`.
    pub fn from_p(p: usize) -> Self {
        match p {
            0 => CohomologyLevel::H1,
            1 => CohomologyLevel::H23,
            p => CohomologyLevel::H2p(p),
        }
    }

    pub fn p(self) -> usize {
        match self {
            CohomologyLevel::H1 => 0,
            CohomologyLevel::H23 => 1,
            CohomologyLevel::H2p(p) => p,
        }
    }
}

impl fmt::Display for CohomologyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyLevel::H1 => write!(f, "1"),
            CohomologyLevel::H23 => write!(f, "2-3"),
            CohomologyLevel::H2p(p) => write!(f, "{}-{}", 2 * p, 2 * p + 1),
        }
    }
}

/// Accepts `1`, `2-3`, `4-5`, … and `2p:<p>`.
impl FromStr for CohomologyLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown cohomology level {s:?} (expected 1, 2-3, 4-5, … or 2p:<p>)"));
        if s == "1" {
            return Ok(CohomologyLevel::H1);
        }
        if let Some(p) = s.strip_prefix("2p:") {
            let p: usize = p.parse().map_err(|_| bad())?;
            return if p == 0 { Err(bad()) } else { Ok(CohomologyLevel::from_p(p)) };
        }
        let (lo, hi) = s.split_once('-').ok_or_else(bad)?;
        let lo: usize = lo.parse().map_err(|_| bad())?;
        let hi: usize = hi.parse().map_err(|_| bad())?;
        if lo < 2 || !lo.is_multiple_of(2) || hi != lo + 1 {
            return Err(bad());
        }
        Ok(CohomologyLevel::from_p(lo / 2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representative {
    One(OneCochain),
    Pair(CochainPair),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub level: CohomologyLevel,
    /// Dimensions of the projections of the cocycle space onto the even and
    /// odd components; a single entry for `H¹`.
    pub dim_z: Vec<usize>,
    pub dim_z_pair: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    pub representatives: Vec<Representative>,
}

/// Outcome of [`classify_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClass {
    pub is_cocycle: bool,
    pub is_coboundary: bool,
    pub preimage: Option<OneCochain>,
}

fn ensure_rep(t: &LyaStructure, r: &Representation) -> Result<()> {
    check_len(t.dim(), r.dim_t())?;
    let report = r.check(t)?;
    let failed = report.failures().next().map(|s| s.relation);
    match failed {
        None => Ok(()),
        Some(rel) => Err(Error::InvalidRepresentation(format!("relation {rel} fails"))),
    }
}

fn unit(dim: usize, i: usize) -> Vector {
    crate::scalar::basis_vector(dim, i)
}

/// `δ¹` as a matrix from `C¹` (row-major coordinates) to `C²×C³`.
pub fn delta1_matrix(t: &LyaStructure, r: &Representation) -> Result<RationalMatrix> {
    check_len(t.dim(), r.dim_t())?;
    let (n, m) = (t.dim(), r.dim_v());
    let rows = CochainPair::space_dim(1, n, m);
    let columns: Vec<Vector> = (0..n * m)
        .into_par_iter()
        .map(|i| {
            let f = OneCochain::from_coordinates(n, m, &unit(n * m, i)).expect("coordinate length");
            let images: Vec<Vector> = (0..n).map(|k| f.image(k)).collect();
            let mut col = Vec::with_capacity(rows);
            for (degree, odd) in [(2, false), (3, true)] {
                let tuples = cochain::canonical_tuples(n, degree);
                let mut part = vec![Scalar::zero(); tuples.len() * m];
                for (k, x) in tuples.iter().enumerate() {
                    let v = if odd {
                        delta1_odd_at(t, r, f.matrix(), &images, x)
                    } else {
                        delta1_even_at(t, r, f.matrix(), &images, x)
                    };
                    for (target, val) in v.into_iter().enumerate() {
                        part[target * tuples.len() + k] = val;
                    }
                }
                col.extend(part);
            }
            col
        })
        .collect();
    RationalMatrix::from_columns(rows, &columns)
}

/// `δ` as a matrix from level `p` pairs to level `p + 1` pairs.
pub fn delta_matrix(t: &LyaStructure, r: &Representation, p: usize) -> Result<RationalMatrix> {
    check_len(t.dim(), r.dim_t())?;
    if p == 0 {
        return Err(Error::LevelError { expected: 1, found: 0 });
    }
    let (n, m) = (t.dim(), r.dim_v());
    let dim = CochainPair::space_dim(p, n, m);
    let columns: Vec<Vector> = (0..dim)
        .into_par_iter()
        .map(|i| {
            let pair = CochainPair::from_coordinates(p, n, m, &unit(dim, i)).expect("coordinate length");
            cochain::delta_coordinates(t, r, &pair)
        })
        .collect();
    RationalMatrix::from_columns(CochainPair::space_dim(p + 1, n, m), &columns)
}

/// `δ*` as a matrix from level-1 pairs to full tensor values of `C³ × C⁴`
/// (no alternation is assumed on the codomain).
pub fn delta_star_matrix(t: &LyaStructure, r: &Representation) -> Result<RationalMatrix> {
    check_len(t.dim(), r.dim_t())?;
    let (n, m) = (t.dim(), r.dim_v());
    let dim = CochainPair::space_dim(1, n, m);
    let columns: Vec<Vector> = (0..dim)
        .into_par_iter()
        .map(|i| {
            let pair = CochainPair::from_coordinates(1, n, m, &unit(dim, i)).expect("coordinate length");
            let mut col = Vec::with_capacity((n + 1) * n.pow(3) * m);
            for x in all_tuples(n, 3) {
                col.extend(cochain::delta_star_first_at(t, r, pair.even(), pair.odd(), &x));
            }
            for x in all_tuples(n, 4) {
                col.extend(cochain::delta_star_second_at(t, r, pair.even(), pair.odd(), &x));
            }
            col
        })
        .collect();
    RationalMatrix::from_columns((n + 1) * n.pow(3) * m, &columns)
}

fn stack(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let mut rows: Vec<Vector> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    rows.extend((0..b.rows()).map(|i| b.row(i).to_vec()));
    RationalMatrix::from_rows(a.cols(), rows).expect("equal widths")
}

/// `Z` and `B` of one level in pair coordinates, with the quotient basis.
#[derive(Debug, Clone)]
pub(crate) struct Quotient {
    pub cocycle_matrix: RationalMatrix,
    pub z_basis: Vec<Vector>,
    /// Reduced row echelon rows spanning `B`, with their pivots.
    pub b_rows: Vec<Vector>,
    pub b_pivots: Vec<usize>,
    /// Rows spanning a complement of `B` in `Z`, in reduced echelon form.
    pub h_rows: Vec<Vector>,
    pub h_pivots: Vec<usize>,
}

impl Quotient {
    fn build(cocycle_matrix: RationalMatrix, coboundary_gens: Option<&RationalMatrix>) -> Result<Self> {
        let z_basis = cocycle_matrix.kernel_basis();
        let (b_rows, b_pivots) = match coboundary_gens {
            Some(g) => {
                let rref = g.transpose().rref();
                (nonzero_rows(&rref.matrix, rref.rank), rref.pivots)
            }
            None => (Vec::new(), Vec::new()),
        };
        for b in &b_rows {
            if !is_zero_vector(&cocycle_matrix.mul_vec(b)) {
                return Err(Error::Internal("a coboundary is not a cocycle".into()));
            }
        }
        let reduced: Vec<Vector> = z_basis.iter().map(|z| reduce(z, &b_rows, &b_pivots)).collect();
        let (h_rows, h_pivots) = if reduced.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let rref = RationalMatrix::from_rows(cocycle_matrix.cols(), reduced)?.rref();
            (nonzero_rows(&rref.matrix, rref.rank), rref.pivots)
        };
        if h_rows.len() + b_rows.len() != z_basis.len() {
            return Err(Error::Internal(format!(
                "quotient dimension mismatch: dim Z = {}, dim B = {}, complement = {}",
                z_basis.len(),
                b_rows.len(),
                h_rows.len()
            )));
        }
        Ok(Quotient { cocycle_matrix, z_basis, b_rows, b_pivots, h_rows, h_pivots })
    }

    pub fn is_cocycle(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.cocycle_matrix.mul_vec(v))
    }

    /// Coordinates of the class of a cocycle in the basis `h_rows`.
    pub fn class_coordinates(&self, v: &[Scalar]) -> Result<Vector> {
        if !self.is_cocycle(v) {
            return Err(Error::Internal("class coordinates requested for a non-cocycle".into()));
        }
        let reduced = reduce(v, &self.b_rows, &self.b_pivots);
        let coords: Vector = self.h_pivots.iter().map(|&p| reduced[p].clone()).collect();
        let mut check = reduced;
        for (c, row) in coords.iter().zip(&self.h_rows) {
            axpy(&mut check, &-c, row);
        }
        if !is_zero_vector(&check) {
            return Err(Error::Internal("cocycle not spanned by B and the representatives".into()));
        }
        Ok(coords)
    }
}

fn nonzero_rows(m: &RationalMatrix, rank: usize) -> Vec<Vector> {
    (0..rank).map(|i| m.row(i).to_vec()).collect()
}

/// Subtracts the multiples of echelon rows that clear their pivot entries.
fn reduce(v: &[Scalar], rows: &[Vector], pivots: &[usize]) -> Vector {
    let mut out = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
        if !out[p].is_zero() {
            let c = -out[p].clone();
            axpy(&mut out, &c, row);
        }
    }
    out
}

pub(crate) fn level_quotient(t: &LyaStructure, r: &Representation, p: usize) -> Result<Quotient> {
    match p {
        0 => Quotient::build(delta1_matrix(t, r)?, None),
        1 => Quotient::build(stack(&delta_matrix(t, r, 1)?, &delta_star_matrix(t, r)?), Some(&delta1_matrix(t, r)?)),
        p => Quotient::build(delta_matrix(t, r, p)?, Some(&delta_matrix(t, r, p - 1)?)),
    }
}

fn projection_rank(basis: &[Vector], range: std::ops::Range<usize>) -> usize {
    if basis.is_empty() || range.is_empty() {
        return 0;
    }
    let rows: Vec<Vector> = basis.iter().map(|v| v[range.clone()].to_vec()).collect();
    RationalMatrix::from_rows(range.len(), rows).expect("equal widths").rank()
}

/// Cohomology at `level`.
pub fn compute(t: &LyaStructure, r: &Representation, level: CohomologyLevel) -> Result<CohomologyReport> {
    ensure_rep(t, r)?;
    let (n, m) = (t.dim(), r.dim_v());
    let p = level.p();
    let q = level_quotient(t, r, p)?;
    let dim_z = if p == 0 {
        vec![q.z_basis.len()]
    } else {
        let split = cochain_space_dim(n, m, 2 * p);
        let total = q.cocycle_matrix.cols();
        vec![projection_rank(&q.z_basis, 0..split), projection_rank(&q.z_basis, split..total)]
    };
    let representatives = q
        .h_rows
        .iter()
        .map(|v| {
            Ok(if p == 0 {
                Representative::One(OneCochain::from_coordinates(n, m, v)?)
            } else {
                Representative::Pair(CochainPair::from_coordinates(p, n, m, v)?)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyReport {
        level,
        dim_z,
        dim_z_pair: q.z_basis.len(),
        dim_b: q.b_rows.len(),
        dim_h: q.h_rows.len(),
        representatives,
    })
}

/// `H¹(T, V)`: the derivations when `V` is the regular representation.
pub fn h1(t: &LyaStructure, r: &Representation) -> Result<CohomologyReport> {
    compute(t, r, CohomologyLevel::H1)
}

pub fn h23(t: &LyaStructure, r: &Representation) -> Result<CohomologyReport> {
    compute(t, r, CohomologyLevel::H23)
}

pub fn h2p(t: &LyaStructure, r: &Representation, p: usize) -> Result<CohomologyReport> {
    if p < 2 {
        return Err(Error::LevelError { expected: 2, found: p });
    }
    compute(t, r, CohomologyLevel::H2p(p))
}

/// Decides whether a level-1 pair is a cocycle and whether it is `δ¹ f` for
/// some `f`, returning such an `f` (the reduced-echelon particular solution).
pub fn classify_pair(t: &LyaStructure, r: &Representation, pair: &CochainPair) -> Result<PairClass> {
    if pair.level() != 1 {
        return Err(Error::LevelError { expected: 1, found: pair.level() });
    }
    check_len(t.dim(), pair.dim_t())?;
    check_len(r.dim_v(), pair.dim_v())?;
    check_len(t.dim(), r.dim_t())?;
    let (first, second) = cochain::delta_star(t, r, pair)?;
    let is_cocycle = cochain::delta_unchecked(t, r, pair)?.is_zero() && first.is_zero() && second.is_zero();
    let m1 = delta1_matrix(t, r)?;
    let preimage = match m1.solve(&pair.coordinates())? {
        Some(x) => Some(OneCochain::from_coordinates(t.dim(), r.dim_v(), &x)?),
        None => None,
    };
    Ok(PairClass { is_cocycle, is_coboundary: preimage.is_some(), preimage })
}

/// Coordinates of the class of a level-`p` cocycle pair (`p ≥ 1`) in the
/// representative basis that [`compute`] reports for the same level.
pub fn class_coordinates(t: &LyaStructure, r: &Representation, pair: &CochainPair) -> Result<Vector> {
    let q = level_quotient(t, r, pair.level())?;
    q.class_coordinates(&pair.coordinates())
}
