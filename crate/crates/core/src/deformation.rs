//! Formal deformations `f_t = Σ tⁱ F_i`, `g_t = Σ tⁱ G_i` of a Lie-Yamaguti
//! algebra, truncated modulo `t^{N+1}`.
//!
//! `F_0` and `G_0` are the brackets of the base algebra; a
//! [`TruncatedDeformation`] stores the pairs `(F_i, G_i)` for `1 ≤ i ≤ N`.
//! At each order `n` the structure must satisfy four families of equations,
//! obtained by collecting `tⁿ` in the defining identities of `f_t, g_t`:
//!
//! ```text
//! cyclic    Σ_{i+j=n} ↻ F_i(F_j(a,b),c) + ↻ G_n(a,b,c)                         = 0
//! product   Σ_{i+j=n} ↻ G_i(F_j(a,b),c,d)                                    = 0
//! mixed     Σ_{i+j=n} G_i(a,b,F_j(c,d)) − F_i(G_j(a,b,c),d) − F_i(c,G_j(a,b,d)) = 0
//! ternary   Σ_{i+j=n} G_i(a,b,G_j(c,d,e)) − G_i(G_j(a,b,c),d,e)
//!                     − G_i(c,G_j(a,b,d),e) − G_i(c,d,G_j(a,b,e))             = 0
//! ```
//!
//! (`↻` sums over cyclic permutations of `a, b, c`.) The terms of the mixed
//! and ternary families with `0 < i < n` are the products `F_i ⋆ G_{n-i}` and
//! `G_i △ G_{n-i}`.

use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{LyaStructure, Witness};
use crate::cochain::{self, Cochain, CochainPair, OneCochain};
use crate::cohomology::{self, classify_pair};
use crate::error::{check_len, Error, Result};
use crate::linalg::{IncrementalSystem, RationalMatrix, RowStatus};
use crate::representation::Representation;
use crate::scalar::{add_assign, basis_vector, is_zero_vector, negated, sub_assign, zero_vector, Scalar, Vector};
use crate::tensor::all_tuples;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDeformation {
    base: LyaStructure,
    /// `(F_i, G_i)` for `i = 0..=order`; index 0 holds the base brackets.
    levels: Vec<(Cochain, Cochain)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTransform {
    dim: usize,
    /// `φ_1, …, φ_N`
    phis: Vec<RationalMatrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cyclic,
    Product,
    Mixed,
    Ternary,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Cyclic, Family::Product, Family::Mixed, Family::Ternary];

    pub fn arity(self) -> usize {
        match self {
            Family::Cyclic => 3,
            Family::Product | Family::Mixed => 4,
            Family::Ternary => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Product => "product",
            Family::Mixed => "mixed",
            Family::Ternary => "ternary",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyStatus {
    pub order: usize,
    pub family: Family,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationReport {
    pub statuses: Vec<FamilyStatus>,
}

impl DeformationReport {
    pub fn passed(&self) -> bool {
        self.statuses.iter().all(|s| s.witness.is_none())
    }

    pub fn first_failure(&self) -> Option<&FamilyStatus> {
        self.statuses.iter().find(|s| s.witness.is_some())
    }
}

fn base_levels(base: &LyaStructure) -> (Cochain, Cochain) {
    let n = base.dim();
    (
        Cochain::from_values(2, n, n, base.binary_tensor().to_vec()).expect("binary tensor shape"),
        Cochain::from_values(3, n, n, base.ternary_tensor().to_vec()).expect("ternary tensor shape"),
    )
}

impl TruncatedDeformation {
    /// `terms[i - 1] = (F_i, G_i)`. Each term must be an alternating level-1
    /// pair with values in the base.
    pub fn new(base: LyaStructure, terms: Vec<CochainPair>) -> Result<Self> {
        let n = base.dim();
        let mut levels = vec![base_levels(&base)];
        for (k, term) in terms.into_iter().enumerate() {
            if term.level() != 1 {
                return Err(Error::LevelError { expected: 1, found: term.level() });
            }
            check_len(n, term.dim_t())?;
            check_len(n, term.dim_v())?;
            if let Some(bad) = term.even().alternation_witness(1) {
                return Err(Error::ShapeError(format!("F_{} is not alternating at {bad:?}", k + 1)));
            }
            if let Some(bad) = term.odd().alternation_witness(1) {
                return Err(Error::ShapeError(format!("G_{} is not alternating at {bad:?}", k + 1)));
            }
            levels.push(term.into_parts());
        }
        Ok(TruncatedDeformation { base, levels })
    }

    /// All terms zero.
    pub fn null(base: LyaStructure, order: usize) -> Self {
        let n = base.dim();
        let mut levels = vec![base_levels(&base)];
        levels.extend((0..order).map(|_| (Cochain::zero(2, n, n), Cochain::zero(3, n, n))));
        TruncatedDeformation { base, levels }
    }

    pub fn base(&self) -> &LyaStructure {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn order(&self) -> usize {
        self.levels.len() - 1
    }

    /// `(F_i, G_i)` for `1 ≤ i ≤ order`.
    pub fn term(&self, i: usize) -> Result<CochainPair> {
        if i == 0 || i > self.order() {
            return Err(Error::IndexOutOfRange { index: i, dim: self.order() + 1 });
        }
        let (f, g) = &self.levels[i];
        CochainPair::new(1, f.clone(), g.clone())
    }

    pub fn terms(&self) -> Vec<CochainPair> {
        (1..=self.order()).map(|i| self.term(i).expect("index in range")).collect()
    }

    pub fn f(&self, i: usize) -> &Cochain {
        &self.levels[i].0
    }

    pub fn g(&self, i: usize) -> &Cochain {
        &self.levels[i].1
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        TruncatedDeformation { base: self.base.clone(), levels: self.levels[..keep].to_vec() }
    }

    /// Appends `(F_{N+1}, G_{N+1})`.
    pub fn extend(&self, term: CochainPair) -> Result<Self> {
        let mut terms = self.terms();
        terms.push(term);
        TruncatedDeformation::new(self.base.clone(), terms)
    }

    pub fn is_null(&self) -> bool {
        self.levels[1..].iter().all(|(f, g)| f.is_zero() && g.is_zero())
    }
}

/// Index pairs `(i, j)` contributing to a family, and whether `G_n` (for the
/// cyclic family) is included.
struct Selection {
    pairs: Vec<(usize, usize)>,
    with_g: Option<usize>,
}

impl Selection {
    fn full(n: usize) -> Self {
        Selection { pairs: (0..=n).map(|i| (i, n - i)).collect(), with_g: Some(n) }
    }

    /// Terms with `0 < i < n`: the convolution part not involving order `n`.
    fn inner(n: usize) -> Self {
        Selection { pairs: (1..n).map(|i| (i, n - i)).collect(), with_g: None }
    }

    /// Terms linear in `(F_n, G_n)`.
    fn linear(n: usize) -> Self {
        Selection { pairs: vec![(n, 0), (0, n)], with_g: Some(n) }
    }
}

fn family_at(family: Family, f: &[&Cochain], g: &[&Cochain], sel: &Selection, x: &[usize]) -> Vector {
    let m = f[0].dim_v();
    let mut acc = zero_vector(m);
    match family {
        Family::Cyclic => {
            let (a, b, c) = (x[0], x[1], x[2]);
            for &(i, j) in &sel.pairs {
                for (p, q, r) in [(a, b, c), (b, c, a), (c, a, b)] {
                    add_assign(&mut acc, &f[i].eval_slot(&[0, r], 0, f[j].at(&[p, q])));
                }
            }
            if let Some(k) = sel.with_g {
                for (p, q, r) in [(a, b, c), (b, c, a), (c, a, b)] {
                    add_assign(&mut acc, g[k].at(&[p, q, r]));
                }
            }
        }
        Family::Product => {
            let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
            for &(i, j) in &sel.pairs {
                for (p, q, r) in [(a, b, c), (b, c, a), (c, a, b)] {
                    add_assign(&mut acc, &g[i].eval_slot(&[0, r, d], 0, f[j].at(&[p, q])));
                }
            }
        }
        Family::Mixed => {
            for &(i, j) in &sel.pairs {
                add_assign(&mut acc, &star_at(f[i], g[i], f[j], g[j], x));
            }
        }
        Family::Ternary => {
            for &(i, j) in &sel.pairs {
                add_assign(&mut acc, &triangle_at(g[i], g[j], x));
            }
        }
    }
    acc
}

/// `(F_i ⋆ G_j)(a,b,c,d) = G_i(a,b,F_j(c,d)) − F_i(G_j(a,b,c),d) − F_i(c,G_j(a,b,d))`
fn star_at(fi: &Cochain, gi: &Cochain, fj: &Cochain, gj: &Cochain, x: &[usize]) -> Vector {
    let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
    let mut v = gi.eval_slot(&[a, b, 0], 2, fj.at(&[c, d]));
    sub_assign(&mut v, &fi.eval_slot(&[0, d], 0, gj.at(&[a, b, c])));
    sub_assign(&mut v, &fi.eval_slot(&[c, 0], 1, gj.at(&[a, b, d])));
    v
}

/// `(G_i △ G_j)(a,b,c,d,e) = G_i(a,b,G_j(c,d,e)) − G_i(G_j(a,b,c),d,e)
///                           − G_i(c,G_j(a,b,d),e) − G_i(c,d,G_j(a,b,e))`
fn triangle_at(gi: &Cochain, gj: &Cochain, x: &[usize]) -> Vector {
    let (a, b, c, d, e) = (x[0], x[1], x[2], x[3], x[4]);
    let mut v = gi.eval_slot(&[a, b, 0], 2, gj.at(&[c, d, e]));
    sub_assign(&mut v, &gi.eval_slot(&[0, d, e], 0, gj.at(&[a, b, c])));
    sub_assign(&mut v, &gi.eval_slot(&[c, 0, e], 1, gj.at(&[a, b, d])));
    sub_assign(&mut v, &gi.eval_slot(&[c, d, 0], 2, gj.at(&[a, b, e])));
    v
}

fn level_refs(d: &TruncatedDeformation) -> (Vec<&Cochain>, Vec<&Cochain>) {
    (d.levels.iter().map(|l| &l.0).collect(), d.levels.iter().map(|l| &l.1).collect())
}

fn first_violation(family: Family, f: &[&Cochain], g: &[&Cochain], sel: &Selection) -> Option<Witness> {
    let n = f[0].dim_t();
    all_tuples(n, family.arity()).into_par_iter().find_map_first(|tuple| {
        let defect = family_at(family, f, g, sel, &tuple);
        (!is_zero_vector(&defect)).then_some(Witness { tuple, defect })
    })
}

/// Evaluates the four families at every order `0..=order` on all basis tuples.
/// Order 0 restates the axioms of the base.
pub fn check_deformation(d: &TruncatedDeformation) -> DeformationReport {
    check_through(d, d.order())
}

/// [`check_deformation`] restricted to orders `0..=upto`.
pub fn check_through(d: &TruncatedDeformation, upto: usize) -> DeformationReport {
    let (f, g) = level_refs(d);
    let mut statuses = Vec::new();
    for n in 0..=upto.min(d.order()) {
        let sel = Selection::full(n);
        for family in Family::ALL {
            statuses.push(FamilyStatus { order: n, family, witness: first_violation(family, &f, &g, &sel) });
        }
    }
    DeformationReport { statuses }
}

fn require_equations(d: &TruncatedDeformation, upto: usize) -> Result<()> {
    match check_through(d, upto).first_failure() {
        None => Ok(()),
        Some(s) => Err(Error::EquationsViolated(format!(
            "order {} {} family {}",
            s.order,
            s.family,
            s.witness.as_ref().expect("failure has a witness")
        ))),
    }
}

impl GaugeTransform {
    pub fn new(dim: usize, phis: Vec<RationalMatrix>) -> Result<Self> {
        for p in &phis {
            crate::linalg::check_square(p, dim)?;
        }
        Ok(GaugeTransform { dim, phis })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        GaugeTransform { dim, phis: vec![RationalMatrix::zeros(dim, dim); order] }
    }

    /// `1 + t^r φ`
    pub fn monomial(dim: usize, order: usize, r: usize, phi: RationalMatrix) -> Result<Self> {
        if r == 0 || r > order {
            return Err(Error::IndexOutOfRange { index: r, dim: order + 1 });
        }
        let mut g = GaugeTransform::identity(dim, order);
        crate::linalg::check_square(&phi, dim)?;
        g.phis[r - 1] = phi;
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.phis.len()
    }

    pub fn phis(&self) -> &[RationalMatrix] {
        &self.phis
    }

    /// `φ_k`, with `φ_0 = 1`.
    pub fn coefficient(&self, k: usize) -> RationalMatrix {
        if k == 0 {
            RationalMatrix::identity(self.dim)
        } else {
            self.phis[k - 1].clone()
        }
    }

    fn series(&self) -> Vec<RationalMatrix> {
        (0..=self.order()).map(|k| self.coefficient(k)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.phis.iter().all(RationalMatrix::is_zero)
    }

    /// `Φ⁻¹` through the same order: `ψ_0 = 1`, `ψ_j = −Σ_{a=1}^{j} φ_a ψ_{j−a}`.
    pub fn invert(&self) -> GaugeTransform {
        let mut psi = vec![RationalMatrix::identity(self.dim)];
        for j in 1..=self.order() {
            let mut acc = RationalMatrix::zeros(self.dim, self.dim);
            for a in 1..=j {
                acc = acc.sub(&self.phis[a - 1].mul(&psi[j - a]).expect("square")).expect("square");
            }
            psi.push(acc);
        }
        GaugeTransform { dim: self.dim, phis: psi.split_off(1) }
    }

    /// The truncated product `Φ Ψ`. Gauging by `Φ` and then by `Ψ` equals
    /// gauging by `Φ Ψ`.
    pub fn compose(&self, other: &GaugeTransform) -> Result<GaugeTransform> {
        check_len(self.dim, other.dim)?;
        let order = self.order().min(other.order());
        let (a, b) = (self.series(), other.series());
        let phis = (1..=order)
            .map(|k| {
                (0..=k).fold(RationalMatrix::zeros(self.dim, self.dim), |acc, i| {
                    acc.add(&a[i].mul(&b[k - i]).expect("square")).expect("square")
                })
            })
            .collect();
        Ok(GaugeTransform { dim: self.dim, phis })
    }

    pub fn truncate(&self, order: usize) -> GaugeTransform {
        GaugeTransform { dim: self.dim, phis: self.phis[..order.min(self.order())].to_vec() }
    }
}

/// `S_s = Σ_{i + k_1 + … + k_d = s} H_i(φ_{k_1} ·, …, φ_{k_d} ·)` for `s = 0..=order`.
fn precomposed_sums(levels: &[&Cochain], phis: &[RationalMatrix], order: usize) -> Vec<Cochain> {
    let degree = levels[0].degree();
    // partial[s] after processing slots 0..k: Σ over indices of those slots summing to s
    let mut partial: Vec<Cochain> = (0..=order).map(|i| levels[i].clone()).collect();
    for slot in 0..degree {
        let prev = partial;
        partial = (0..=order)
            .into_par_iter()
            .map(|s| {
                let mut acc = prev[s].clone();
                for k in 1..=s {
                    if !phis[k].is_zero() && !prev[s - k].is_zero() {
                        acc = acc.add(&prev[s - k].precompose_slot(slot, &phis[k])).expect("same space");
                    }
                }
                acc
            })
            .collect();
    }
    partial
}

/// The gauge-equivalent deformation `f'_t = Φ_t⁻¹ f_t(Φ_t a, Φ_t b)`,
/// `g'_t = Φ_t⁻¹ g_t(Φ_t a, Φ_t b, Φ_t c)`, through the smaller of the two orders.
pub fn apply_gauge(d: &TruncatedDeformation, gauge: &GaugeTransform) -> Result<TruncatedDeformation> {
    check_len(d.dim(), gauge.dim)
        .map_err(|_| Error::ShapeError(format!("gauge on dimension {} applied to dimension {}", gauge.dim, d.dim())))?;
    let order = d.order().min(gauge.order());
    let phis = gauge.series();
    let psis = gauge.invert().series();
    let (f, g) = level_refs(d);
    let fs = precomposed_sums(&f, &phis, order);
    let gs = precomposed_sums(&g, &phis, order);
    let outer = |sums: &[Cochain], n: usize| -> Cochain {
        let mut acc = sums[n].clone();
        for a in 1..=n {
            if !psis[a].is_zero() {
                acc = acc.add(&sums[n - a].postcompose(&psis[a])).expect("same space");
            }
        }
        acc
    };
    let terms = (1..=order).map(|n| CochainPair::new(1, outer(&fs, n), outer(&gs, n))).collect::<Result<Vec<_>>>()?;
    TruncatedDeformation::new(d.base.clone(), terms)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infinitesimal {
    pub pair: CochainPair,
    pub is_cocycle: bool,
    pub is_coboundary: bool,
}

/// `(F_1, G_1)` with its cocycle and coboundary status in the regular representation.
pub fn infinitesimal(d: &TruncatedDeformation) -> Result<Infinitesimal> {
    if d.order() == 0 {
        return Err(Error::EquationsViolated("a deformation of order 0 has no infinitesimal".into()));
    }
    require_equations(d, 1)?;
    let r = Representation::regular(&d.base)?;
    let pair = d.term(1)?;
    let class = classify_pair(&d.base, &r, &pair)?;
    Ok(Infinitesimal { pair, is_cocycle: class.is_cocycle, is_coboundary: class.is_coboundary })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivializeStatus {
    Trivialized,
    /// `(F_r, G_r)` is a cocycle that is not a coboundary; `coordinates` give
    /// its class in the representative basis of `H²×H³`.
    Obstructed {
        order: usize,
        class: CochainPair,
        coordinates: Vector,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trivialization {
    /// Gauges in the order they were applied.
    pub gauges: Vec<GaugeTransform>,
    pub residual: TruncatedDeformation,
    pub status: TrivializeStatus,
}

impl Trivialization {
    /// Product of the applied gauges; gauging the input by it yields `residual`.
    pub fn composed(&self, dim: usize, order: usize) -> GaugeTransform {
        self.gauges.iter().fold(GaugeTransform::identity(dim, order), |acc, g| acc.compose(g).expect("same dimension"))
    }
}

/// Repeatedly removes the lowest nonzero order `r` by gauging with
/// `1 − t^r α`, where `δ¹α = (F_r, G_r)`, until the deformation is null or
/// some `(F_r, G_r)` is not a coboundary.
pub fn trivialize(d: &TruncatedDeformation) -> Result<Trivialization> {
    require_equations(d, d.order())?;
    let t = &d.base;
    let r = Representation::regular(t)?;
    let n = t.dim();
    let m1 = cohomology::delta1_matrix(t, &r)?;
    let mut cur = d.clone();
    let mut gauges = Vec::new();
    for _ in 0..=d.order() {
        let Some(ord) = (1..=cur.order()).find(|&i| !(cur.f(i).is_zero() && cur.g(i).is_zero())) else {
            return Ok(Trivialization { gauges, residual: cur, status: TrivializeStatus::Trivialized });
        };
        let pair = cur.term(ord)?;
        let class = classify_pair(t, &r, &pair)?;
        if !class.is_cocycle {
            return Err(Error::Internal(format!("lowest nonzero term (order {ord}) is not a cocycle")));
        }
        let Some(alpha) = m1.solve(&pair.coordinates())? else {
            let coordinates = cohomology::class_coordinates(t, &r, &pair)?;
            return Ok(Trivialization {
                gauges,
                residual: cur,
                status: TrivializeStatus::Obstructed { order: ord, class: pair, coordinates },
            });
        };
        let alpha = OneCochain::from_coordinates(n, n, &alpha)?;
        let gauge = GaugeTransform::monomial(n, d.order(), ord, alpha.matrix().scale(&-Scalar::one()))?;
        cur = apply_gauge(&cur, &gauge)?;
        gauges.push(gauge);
    }
    Err(Error::Internal("trivialization did not terminate within the truncation order".into()))
}

/// `F_i ⋆ G_j` for terms `(F_i, G_i)` and `(F_j, G_j)`.
pub fn star(fi: &Cochain, gi: &Cochain, fj: &Cochain, gj: &Cochain) -> Result<Cochain> {
    let n = fi.dim_t();
    for (c, deg) in [(fi, 2), (gi, 3), (fj, 2), (gj, 3)] {
        check_len(deg, c.degree())?;
        check_len(n, c.dim_t())?;
        check_len(n, c.dim_v())?;
    }
    let mut out = Cochain::zero(4, n, n);
    for x in all_tuples(n, 4) {
        out.at_mut(&x).clone_from_slice(&star_at(fi, gi, fj, gj, &x));
    }
    out.ensure_alternating("⋆ product")?;
    Ok(out)
}

/// `G_i △ G_j`.
pub fn triangle(gi: &Cochain, gj: &Cochain) -> Result<Cochain> {
    let n = gi.dim_t();
    for c in [gi, gj] {
        check_len(3, c.degree())?;
        check_len(n, c.dim_t())?;
        check_len(n, c.dim_v())?;
    }
    let mut out = Cochain::zero(5, n, n);
    for x in all_tuples(n, 5) {
        out.at_mut(&x).clone_from_slice(&triangle_at(gi, gj, &x));
    }
    out.ensure_alternating("△ product")?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionPair {
    pub order: usize,
    /// `Σ_{i=1}^{n-1} F_i ⋆ G_{n-i}`
    pub even: Cochain,
    /// `Σ_{i=1}^{n-1} G_i △ G_{n-i}`
    pub odd: Cochain,
    pub in_z45: bool,
    pub in_b45: bool,
}

impl ObstructionPair {
    pub fn pair(&self) -> CochainPair {
        CochainPair::new(2, self.even.clone(), self.odd.clone()).expect("degrees 4 and 5")
    }
}

/// The order-`n` obstruction of a deformation satisfying the equations
/// through order `n − 1`.
pub fn obstruction(d: &TruncatedDeformation, n: usize) -> Result<ObstructionPair> {
    if n == 0 || n > d.order() + 1 {
        return Err(Error::EquationsViolated(format!(
            "obstruction at order {n} needs terms 1..{} but the deformation has order {}",
            n.saturating_sub(1),
            d.order()
        )));
    }
    require_equations(d, n - 1)?;
    let dim = d.dim();
    let mut even = Cochain::zero(4, dim, dim);
    let mut odd = Cochain::zero(5, dim, dim);
    for i in 1..n {
        let j = n - i;
        even = even.add(&star(d.f(i), d.g(i), d.f(j), d.g(j))?)?;
        odd = odd.add(&triangle(d.g(i), d.g(j))?)?;
    }
    let pair = CochainPair::new(2, even, odd)?;
    let r = Representation::regular(&d.base)?;
    let in_z45 = cochain::delta_unchecked(&d.base, &r, &pair)?.is_zero();
    let in_b45 = cohomology::delta_matrix(&d.base, &r, 1)?.solve(&pair.coordinates())?.is_some();
    let (even, odd) = pair.into_parts();
    Ok(ObstructionPair { order: n, even, odd, in_z45, in_b45 })
}

/// Which part of the order-`n` system has no solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Blocking {
    Family(Family),
    /// Every family is solvable on its own but not simultaneously.
    Joint,
}

impl fmt::Display for Blocking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Blocking::Family(fam) => write!(f, "{fam} family"),
            Blocking::Joint => write!(f, "joint system"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegrationOutcome {
    Extended {
        term: CochainPair,
        extended: TruncatedDeformation,
    },
    Obstructed {
        order: usize,
        blocking: Blocking,
        family: Family,
        /// First basis tuple whose equations make the system inconsistent;
        /// the defect is the convolution sum there.
        witness: Witness,
        obstruction: ObstructionPair,
    },
}

/// Coefficient rows of `(F_n, G_n) ↦ family` on a basis tuple, one per output
/// coordinate, with the right-hand sides `−inner`.
struct FamilyRows {
    family: Family,
    tuples: Vec<Vec<usize>>,
    /// `columns[k][t]`: linear part at tuple `t` for unknown basis element `k`.
    columns: Vec<Vec<Vector>>,
    inner: Vec<Vector>,
}

fn family_rows(d: &TruncatedDeformation, n: usize, family: Family, basis: &[CochainPair]) -> FamilyRows {
    let dim = d.dim();
    let tuples = all_tuples(dim, family.arity());
    let (mut f, mut g) = level_refs(d);
    let inner_sel = Selection::inner(n);
    let zero_f = Cochain::zero(2, dim, dim);
    let zero_g = Cochain::zero(3, dim, dim);
    f.push(&zero_f);
    g.push(&zero_g);
    let inner = tuples.par_iter().map(|x| family_at(family, &f, &g, &inner_sel, x)).collect();
    let lin_sel = Selection::linear(n);
    let columns = basis
        .par_iter()
        .map(|b| {
            let (mut f, mut g) = level_refs(d);
            f.push(b.even());
            g.push(b.odd());
            tuples.iter().map(|x| family_at(family, &f, &g, &lin_sel, x)).collect()
        })
        .collect();
    FamilyRows { family, tuples, columns, inner }
}

impl FamilyRows {
    /// Pushes this family's rows; returns the first tuple that makes the system inconsistent.
    fn push_into(&self, sys: &mut IncrementalSystem) -> Result<Option<Witness>> {
        let m = self.inner.first().map_or(0, Vec::len);
        for (t, x) in self.tuples.iter().enumerate() {
            for o in 0..m {
                let coeffs: Vector = self.columns.iter().map(|col| col[t][o].clone()).collect();
                let rhs = -self.inner[t][o].clone();
                if sys.push(&coeffs, &rhs)? == RowStatus::Inconsistent {
                    return Ok(Some(Witness { tuple: x.clone(), defect: self.inner[t].clone() }));
                }
            }
        }
        Ok(None)
    }
}

/// Solves the order-`n` equations (`n = order + 1`) for `(F_n, G_n)`.
///
/// All four families are solved as one linear system in the coordinates of
/// `C²×C³`. When it is inconsistent, each family is first tried alone; the
/// first that fails on its own is reported, otherwise the joint system is.
pub fn integrate_step(d: &TruncatedDeformation) -> Result<IntegrationOutcome> {
    require_equations(d, d.order())?;
    let n = d.order() + 1;
    let dim = d.dim();
    let basis = cochain::pair_basis(1, dim, dim);
    let rows: Vec<FamilyRows> = Family::ALL.iter().map(|&fam| family_rows(d, n, fam, &basis)).collect();

    let mut joint = IncrementalSystem::new(basis.len());
    let mut joint_failure = None;
    for fr in &rows {
        if let Some(w) = fr.push_into(&mut joint)? {
            joint_failure = Some((fr.family, w));
            break;
        }
    }
    let Some((joint_family, joint_witness)) = joint_failure else {
        let x = joint.solution().ok_or_else(|| Error::Internal("consistent system without a solution".into()))?;
        let term = CochainPair::from_coordinates(1, dim, dim, &x)?;
        let extended = d.extend(term.clone())?;
        if let Some(s) = check_deformation(&extended).first_failure() {
            return Err(Error::Internal(format!(
                "integrated term violates the {} family at order {}",
                s.family, s.order
            )));
        }
        return Ok(IntegrationOutcome::Extended { term, extended });
    };

    let mut blocking = Blocking::Joint;
    let mut family = joint_family;
    let mut witness = joint_witness;
    for fr in &rows {
        let mut alone = IncrementalSystem::new(basis.len());
        if let Some(w) = fr.push_into(&mut alone)? {
            blocking = Blocking::Family(fr.family);
            family = fr.family;
            witness = w;
            break;
        }
    }
    let obstruction = obstruction(d, n)?;
    Ok(IntegrationOutcome::Obstructed { order: n, blocking, family, witness, obstruction })
}

/// Checks that gauge-equivalent deformations have cohomologous
/// infinitesimals: verifies `d2 = apply_gauge(d1, gauge)` and returns whether
/// `(F'_1 − F_1, G'_1 − G_1)` lies in `δ¹(C¹)`.
pub fn infinitesimals_agree(
    d1: &TruncatedDeformation,
    d2: &TruncatedDeformation,
    gauge: &GaugeTransform,
) -> Result<bool> {
    let order = d1.order().min(d2.order()).min(gauge.order());
    if order == 0 {
        return Err(Error::NotEquivalent("infinitesimals need order at least 1".into()));
    }
    if d1.base != d2.base {
        return Err(Error::NotEquivalent("deformations of different base algebras".into()));
    }
    let image = apply_gauge(&d1.truncate(order), gauge)?;
    if image != d2.truncate(order) {
        return Err(Error::NotEquivalent(format!(
            "second deformation is not the gauge image of the first through order {order}"
        )));
    }
    let diff = d2.term(1)?.sub(&d1.term(1)?)?;
    let r = Representation::regular(&d1.base)?;
    Ok(classify_pair(&d1.base, &r, &diff)?.is_coboundary)
}

/// `(g_1, g_2) ↦ G` with `G(e_a, e_b, x) = x` and `G(e_b, e_a, x) = −x`, zero elsewhere.
pub fn identity_on_pair(dim: usize, a: usize, b: usize) -> Cochain {
    let mut g = Cochain::zero(3, dim, dim);
    for k in 0..dim {
        g.at_mut(&[a, b, k]).clone_from_slice(&basis_vector(dim, k));
        g.at_mut(&[b, a, k]).clone_from_slice(&negated(&basis_vector(dim, k)));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BinaryEntry;
    use crate::scalar::int;
    use num_traits::Zero;

    fn b_algebra() -> LyaStructure {
        LyaStructure::from_lie_algebra(2, &[BinaryEntry::new(0, 1, 0, int(1))], false).unwrap()
    }

    fn abelian_obstructed() -> TruncatedDeformation {
        let t = LyaStructure::abelian(2).unwrap();
        let term = CochainPair::new(1, Cochain::zero(2, 2, 2), identity_on_pair(2, 0, 1)).unwrap();
        TruncatedDeformation::new(t, vec![term]).unwrap()
    }

    fn mat(rows: &[[i64; 2]; 2]) -> RationalMatrix {
        RationalMatrix::from_vec(2, 2, rows.iter().flatten().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn null_passes_every_order() {
        let d = TruncatedDeformation::null(b_algebra(), 3);
        assert!(check_deformation(&d).passed());
        assert_eq!(check_deformation(&d).statuses.len(), 16);
    }

    #[test]
    fn triangle_witness_value() {
        let g = identity_on_pair(2, 0, 1);
        let tri = triangle(&g, &g).unwrap();
        assert_eq!(tri.at(&[0, 1, 0, 1, 0]), &[int(-2), int(0)]);
        let zero = Cochain::zero(2, 2, 2);
        assert!(star(&zero, &g, &zero, &g).unwrap().is_zero());
    }

    #[test]
    fn abelian_order_two_fails_ternary_family() {
        let d = abelian_obstructed();
        assert!(check_deformation(&d).passed());
        let ext = d.extend(CochainPair::zero(1, 2, 2)).unwrap();
        let report = check_deformation(&ext);
        let fail = report.first_failure().unwrap();
        assert_eq!((fail.order, fail.family), (2, Family::Ternary));
        let w = fail.witness.as_ref().unwrap();
        assert_eq!(w.tuple, vec![0, 1, 0, 1, 0]);
        assert_eq!(w.defect, vec![int(-2), int(0)]);
    }

    #[test]
    fn integrate_reports_ternary_block() {
        match integrate_step(&abelian_obstructed()).unwrap() {
            IntegrationOutcome::Obstructed { order, blocking, witness, obstruction, .. } => {
                assert_eq!(order, 2);
                assert_eq!(blocking, Blocking::Family(Family::Ternary));
                assert_eq!(witness.tuple, vec![0, 1, 0, 1, 0]);
                assert_eq!(witness.defect, vec![int(-2), int(0)]);
                assert!(obstruction.in_z45);
                assert!(!obstruction.in_b45);
            }
            other => panic!("expected obstruction, got {other:?}"),
        }
    }

    #[test]
    fn integrate_null_gives_zero() {
        let d = TruncatedDeformation::null(b_algebra(), 1);
        match integrate_step(&d).unwrap() {
            IntegrationOutcome::Extended { term, extended } => {
                assert!(term.is_zero());
                assert_eq!(extended.order(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gauge_inverse_geometric_series() {
        let phi = mat(&[[1, 2], [0, 3]]);
        let g = GaugeTransform::new(2, vec![phi.clone(), RationalMatrix::zeros(2, 2), RationalMatrix::zeros(2, 2)])
            .unwrap();
        let inv = g.invert();
        let sq = phi.mul(&phi).unwrap();
        assert_eq!(inv.phis()[0], phi.scale(&int(-1)));
        assert_eq!(inv.phis()[1], sq);
        assert_eq!(inv.phis()[2], sq.mul(&phi).unwrap().scale(&int(-1)));
        assert!(g.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&g).unwrap().is_identity());
        assert!(GaugeTransform::identity(2, 3).invert().is_identity());
    }

    #[test]
    fn first_order_gauge_is_coboundary() {
        let t = b_algebra();
        let r = Representation::regular(&t).unwrap();
        let phi = mat(&[[2, -1], [3, 5]]);
        let gauge = GaugeTransform::new(2, vec![phi.clone()]).unwrap();
        let null = TruncatedDeformation::null(t.clone(), 1);
        let d = apply_gauge(&null, &gauge).unwrap();
        assert_eq!(d.term(1).unwrap(), cochain::delta1(&t, &r, &OneCochain(phi)).unwrap());
        assert!(infinitesimals_agree(&null, &d, &gauge).unwrap());
        let inf = infinitesimal(&d).unwrap();
        assert!(inf.is_cocycle && inf.is_coboundary);
    }

    #[test]
    fn abelian_gauge_of_null_is_null() {
        let t = LyaStructure::abelian(2).unwrap();
        let gauge = GaugeTransform::new(2, vec![mat(&[[1, 1], [0, 1]]), mat(&[[0, 2], [1, 0]])]).unwrap();
        assert!(apply_gauge(&TruncatedDeformation::null(t, 2), &gauge).unwrap().is_null());
    }

    #[test]
    fn trivialize_gauge_of_null() {
        let t = b_algebra();
        let gauge =
            GaugeTransform::new(2, vec![mat(&[[1, 2], [-1, 0]]), mat(&[[0, 1], [4, -3]]), mat(&[[2, 0], [1, 1]])])
                .unwrap();
        let d = apply_gauge(&TruncatedDeformation::null(t, 3), &gauge).unwrap();
        assert!(check_deformation(&d).passed());
        let out = trivialize(&d).unwrap();
        assert_eq!(out.status, TrivializeStatus::Trivialized);
        assert!(out.gauges.len() <= 3);
        assert!(out.residual.is_null());
        assert!(apply_gauge(&d, &out.composed(2, 3)).unwrap().is_null());
    }

    #[test]
    fn trivialize_abelian_is_obstructed() {
        let out = trivialize(&abelian_obstructed()).unwrap();
        match out.status {
            TrivializeStatus::Obstructed { order, class, coordinates } => {
                assert_eq!(order, 1);
                assert_eq!(class, abelian_obstructed().term(1).unwrap());
                assert!(coordinates.iter().any(|c| !c.is_zero()));
            }
            TrivializeStatus::Trivialized => panic!("abelian base has no coboundaries"),
        }
    }

    #[test]
    fn not_equivalent_detected() {
        let t = b_algebra();
        let null = TruncatedDeformation::null(t, 1);
        let gauge = GaugeTransform::new(2, vec![mat(&[[1, 0], [1, 0]])]).unwrap();
        let err = infinitesimals_agree(&null, &null, &gauge).unwrap_err();
        assert!(matches!(err, Error::NotEquivalent(_)));
    }

    #[test]
    fn obstruction_of_zero_terms() {
        let d = TruncatedDeformation::null(b_algebra(), 1);
        let ob = obstruction(&d, 2).unwrap();
        assert!(ob.even.is_zero() && ob.odd.is_zero() && ob.in_z45 && ob.in_b45);
        assert!(obstruction(&d, 3).is_err());
    }

    #[test]
    fn constructor_rejects_non_alternating_terms() {
        let t = b_algebra();
        let mut f = Cochain::zero(2, 2, 2);
        f.at_mut(&[0, 0])[0] = int(1);
        let term = CochainPair::new(1, f, Cochain::zero(3, 2, 2)).unwrap();
        assert!(matches!(TruncatedDeformation::new(t, vec![term]), Err(Error::ShapeError(_))));
    }
}
