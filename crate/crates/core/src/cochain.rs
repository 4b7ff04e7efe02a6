//! Cochains `C^d(T, V)` and the Yamaguti coboundary operators.
//!
//! A degree-`d` cochain is a `d`-linear map `T^d → V` that is antisymmetric in
//! each consecutive argument pair `(x_1,x_2), (x_3,x_4), …`; for odd `d` the
//! last argument is unconstrained. Cochains are stored as full dense tensors
//! over basis tuples; the compressed coordinates used for linear algebra are
//! the values at *canonical* tuples (each pair strictly increasing), listed
//! target-major:
//!
//! ```text
//! coordinate index = target * (number of canonical tuples) + tuple index
//! ```
//!
//! A level-`p` pair `(f, g)` lives in `C^{2p} × C^{2p+1}`. The coboundary
//! `δ = (δ_I, δ_II)` sends it to level `p + 1` (`δ_I` reads both `f` and `g`),
//! `δ¹` sends a linear map `f: T → V` to the level-1 pair `(δ_I f, δ_II f)`,
//! and `δ* = (δ*_I, δ*_II)` sends a level-1 pair to `C^3 × C^4`.

use num_traits::{One, Zero};

use crate::algebra::LyaStructure;
use crate::error::{check_len, Error, Result};
use crate::linalg::RationalMatrix;
use crate::representation::Representation;
use crate::scalar::{add_assign, axpy, is_zero_vector, sub_assign, zero_vector, Scalar, Vector};
use crate::tensor::{self, all_tuples};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    dim_t: usize,
    dim_v: usize,
    values: Vec<Scalar>,
}

/// A linear map `T → V`, stored as a `dim_v × dim_t` matrix whose column `i`
/// is the image of `e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCochain(pub RationalMatrix);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainPair {
    level: usize,
    even: Cochain,
    odd: Cochain,
}

/// `m · (n(n-1)/2)^p` for degree `2p`, `m · n · (n(n-1)/2)^p` for `2p + 1`.
pub fn cochain_space_dim(n: usize, m: usize, degree: usize) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    let base = m * pairs.pow((degree / 2) as u32);
    if degree % 2 == 1 {
        base * n
    } else {
        base
    }
}

/// Basis tuples with every designated pair strictly increasing, lexicographic.
pub fn canonical_tuples(n: usize, degree: usize) -> Vec<Vec<usize>> {
    all_tuples(n, degree).into_iter().filter(|t| (0..degree / 2).all(|i| t[2 * i] < t[2 * i + 1])).collect()
}

/// The standard basis of `C^degree(T, V)` in coordinate order. Element
/// `target * #tuples + k` takes the value `e_target` on the `k`-th canonical
/// tuple (and the values forced by alternation elsewhere).
pub fn standard_basis(n: usize, m: usize, degree: usize) -> Vec<Cochain> {
    let dim = cochain_space_dim(n, m, degree);
    (0..dim)
        .map(|i| {
            let mut coords = zero_vector(dim);
            coords[i] = Scalar::one();
            Cochain::from_coordinates(degree, n, m, &coords).expect("coordinate vector has the right length")
        })
        .collect()
}

impl Cochain {
    pub fn zero(degree: usize, dim_t: usize, dim_v: usize) -> Self {
        Cochain { degree, dim_t, dim_v, values: zero_vector(dim_t.pow(degree as u32) * dim_v) }
    }

    /// Wraps a dense tensor. No alternation is imposed; see [`Self::is_alternating`].
    pub fn from_values(degree: usize, dim_t: usize, dim_v: usize, values: Vec<Scalar>) -> Result<Self> {
        check_len(dim_t.pow(degree as u32) * dim_v, values.len())?;
        Ok(Cochain { degree, dim_t, dim_v, values })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim_t(&self) -> usize {
        self.dim_t
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Value on the basis tuple `idx`.
    pub fn at(&self, idx: &[usize]) -> &[Scalar] {
        let off = tensor::flat_index(self.dim_t, idx) * self.dim_v;
        &self.values[off..off + self.dim_v]
    }

    pub(crate) fn at_mut(&mut self, idx: &[usize]) -> &mut [Scalar] {
        let off = tensor::flat_index(self.dim_t, idx) * self.dim_v;
        &mut self.values[off..off + self.dim_v]
    }

    /// Value on the basis tuple `idx` with argument `slot` replaced by `v`.
    pub(crate) fn eval_slot(&self, idx: &[usize], slot: usize, v: &[Scalar]) -> Vector {
        let n = self.dim_t;
        let m = self.dim_v;
        let stride = n.pow((self.degree - 1 - slot) as u32) * m;
        let base = idx.iter().enumerate().fold(0, |acc, (s, &i)| acc * n + if s == slot { 0 } else { i }) * m;
        let mut out = zero_vector(m);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.values[base + k * stride..][..m]);
            }
        }
        out
    }

    /// Multilinear evaluation on arbitrary arguments.
    pub fn evaluate(&self, args: &[Vector]) -> Result<Vector> {
        check_len(self.degree, args.len())?;
        for a in args {
            check_len(self.dim_t, a.len())?;
        }
        let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
        Ok(tensor::contract(&self.values, self.dim_t, self.dim_v, &refs))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// First basis tuple on which antisymmetry fails in one of the first
    /// `pairs` argument pairs.
    pub fn alternation_witness(&self, pairs: usize) -> Option<Vec<usize>> {
        let pairs = pairs.min(self.degree / 2);
        all_tuples(self.dim_t, self.degree).into_iter().find(|t| {
            (0..pairs).any(|i| {
                let mut s = t.clone();
                s.swap(2 * i, 2 * i + 1);
                let mut sum = self.at(t).to_vec();
                add_assign(&mut sum, self.at(&s));
                !is_zero_vector(&sum)
            })
        })
    }

    /// Antisymmetric in every designated pair, i.e. an element of `C^degree`.
    pub fn is_alternating(&self) -> bool {
        self.alternation_witness(self.degree / 2).is_none()
    }

    pub fn ensure_alternating(&self, what: &str) -> Result<()> {
        match self.alternation_witness(self.degree / 2) {
            None => Ok(()),
            Some(t) => {
                Err(Error::AlternationViolation(format!("{what} (degree {}) at basis tuple {t:?}", self.degree)))
            }
        }
    }

    fn check_same_space(&self, other: &Cochain) -> Result<()> {
        check_len(self.degree, other.degree)?;
        check_len(self.dim_t, other.dim_t)?;
        check_len(self.dim_v, other.dim_v)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        add_assign(&mut out.values, &other.values);
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        sub_assign(&mut out.values, &other.values);
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain { values: self.values.iter().map(|x| c * x).collect(), ..self.clone() }
    }

    /// `(x_1, …, x_d) ↦ c(…, M x_slot, …)`
    pub(crate) fn precompose_slot(&self, slot: usize, mat: &RationalMatrix) -> Cochain {
        let n = self.dim_t;
        let inner = n.pow((self.degree - 1 - slot) as u32) * self.dim_v;
        let outer = n.pow(slot as u32);
        let mut out = Cochain::zero(self.degree, n, self.dim_v);
        for o in 0..outer {
            let block = o * n * inner;
            for x in 0..n {
                let dst = block + x * inner;
                for u in 0..n {
                    let c = &mat[(u, x)];
                    if c.is_zero() {
                        continue;
                    }
                    let src = block + u * inner;
                    for k in 0..inner {
                        let v = &self.values[src + k];
                        if !v.is_zero() {
                            out.values[dst + k] += c * v;
                        }
                    }
                }
            }
        }
        out
    }

    /// `(x_1, …, x_d) ↦ M c(x_1, …, x_d)`
    pub(crate) fn postcompose(&self, mat: &RationalMatrix) -> Cochain {
        let m = self.dim_v;
        let values = self.values.chunks(m.max(1)).flat_map(|v| mat.mul_vec(v)).collect();
        Cochain { degree: self.degree, dim_t: self.dim_t, dim_v: mat.rows(), values }
    }

    /// Values at canonical tuples, target-major. Lossless for alternating cochains.
    pub fn coordinates(&self) -> Vector {
        let tuples = canonical_tuples(self.dim_t, self.degree);
        let mut out = zero_vector(tuples.len() * self.dim_v);
        for (k, t) in tuples.iter().enumerate() {
            for (target, x) in self.at(t).iter().enumerate() {
                out[target * tuples.len() + k] = x.clone();
            }
        }
        out
    }

    /// Inverse of [`Self::coordinates`]; the result is alternating.
    pub fn from_coordinates(degree: usize, dim_t: usize, dim_v: usize, coords: &[Scalar]) -> Result<Cochain> {
        let tuples = canonical_tuples(dim_t, degree);
        check_len(tuples.len() * dim_v, coords.len())?;
        let mut c = Cochain::zero(degree, dim_t, dim_v);
        let pairs = degree / 2;
        for (k, t) in tuples.iter().enumerate() {
            for target in 0..dim_v {
                let x = &coords[target * tuples.len() + k];
                if x.is_zero() {
                    continue;
                }
                for flips in 0..(1usize << pairs) {
                    let mut s = t.clone();
                    for i in 0..pairs {
                        if flips >> i & 1 == 1 {
                            s.swap(2 * i, 2 * i + 1);
                        }
                    }
                    let value = if flips.count_ones() % 2 == 1 { -x } else { x.clone() };
                    c.at_mut(&s)[target] = value;
                }
            }
        }
        Ok(c)
    }
}

impl OneCochain {
    pub fn zero(dim_t: usize, dim_v: usize) -> Self {
        OneCochain(RationalMatrix::zeros(dim_v, dim_t))
    }

    pub fn dim_t(&self) -> usize {
        self.0.cols()
    }

    pub fn dim_v(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }

    /// `f(e_i)`
    pub fn image(&self, i: usize) -> Vector {
        self.0.column(i)
    }

    /// Row-major coordinates: index `target * dim_t + source`.
    pub fn coordinates(&self) -> Vector {
        self.0.data().to_vec()
    }

    pub fn from_coordinates(dim_t: usize, dim_v: usize, coords: &[Scalar]) -> Result<Self> {
        Ok(OneCochain(RationalMatrix::from_vec(dim_v, dim_t, coords.to_vec())?))
    }

    pub fn to_cochain(&self) -> Cochain {
        let (n, m) = (self.dim_t(), self.dim_v());
        let mut c = Cochain::zero(1, n, m);
        for i in 0..n {
            c.at_mut(&[i]).clone_from_slice(&self.image(i));
        }
        c
    }

    pub fn from_cochain(c: &Cochain) -> Result<Self> {
        if c.degree != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: c.degree });
        }
        let mut m = RationalMatrix::zeros(c.dim_v, c.dim_t);
        for i in 0..c.dim_t {
            for (j, x) in c.at(&[i]).iter().enumerate() {
                m[(j, i)] = x.clone();
            }
        }
        Ok(OneCochain(m))
    }
}

impl CochainPair {
    pub fn new(level: usize, even: Cochain, odd: Cochain) -> Result<Self> {
        if level == 0 {
            return Err(Error::LevelError { expected: 1, found: 0 });
        }
        check_len(2 * level, even.degree)?;
        check_len(2 * level + 1, odd.degree)?;
        check_len(even.dim_t, odd.dim_t)?;
        check_len(even.dim_v, odd.dim_v)?;
        Ok(CochainPair { level, even, odd })
    }

    pub fn zero(level: usize, dim_t: usize, dim_v: usize) -> Self {
        CochainPair {
            level,
            even: Cochain::zero(2 * level, dim_t, dim_v),
            odd: Cochain::zero(2 * level + 1, dim_t, dim_v),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn even(&self) -> &Cochain {
        &self.even
    }

    pub fn odd(&self) -> &Cochain {
        &self.odd
    }

    pub fn into_parts(self) -> (Cochain, Cochain) {
        (self.even, self.odd)
    }

    pub fn dim_t(&self) -> usize {
        self.even.dim_t
    }

    pub fn dim_v(&self) -> usize {
        self.even.dim_v
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn is_alternating(&self) -> bool {
        self.even.is_alternating() && self.odd.is_alternating()
    }

    pub fn add(&self, other: &CochainPair) -> Result<CochainPair> {
        CochainPair::new(self.level, self.even.add(&other.even)?, self.odd.add(&other.odd)?)
    }

    pub fn sub(&self, other: &CochainPair) -> Result<CochainPair> {
        CochainPair::new(self.level, self.even.sub(&other.even)?, self.odd.sub(&other.odd)?)
    }

    pub fn scale(&self, c: &Scalar) -> CochainPair {
        CochainPair { level: self.level, even: self.even.scale(c), odd: self.odd.scale(c) }
    }

    /// Even coordinates followed by odd coordinates.
    pub fn coordinates(&self) -> Vector {
        let mut v = self.even.coordinates();
        v.extend(self.odd.coordinates());
        v
    }

    pub fn from_coordinates(level: usize, dim_t: usize, dim_v: usize, coords: &[Scalar]) -> Result<Self> {
        let split = cochain_space_dim(dim_t, dim_v, 2 * level);
        check_len(split + cochain_space_dim(dim_t, dim_v, 2 * level + 1), coords.len())?;
        CochainPair::new(
            level,
            Cochain::from_coordinates(2 * level, dim_t, dim_v, &coords[..split])?,
            Cochain::from_coordinates(2 * level + 1, dim_t, dim_v, &coords[split..])?,
        )
    }

    /// Dimension of `C^{2p} × C^{2p+1}`.
    pub fn space_dim(level: usize, dim_t: usize, dim_v: usize) -> usize {
        cochain_space_dim(dim_t, dim_v, 2 * level) + cochain_space_dim(dim_t, dim_v, 2 * level + 1)
    }
}

fn check_context(t: &LyaStructure, r: &Representation) -> Result<()> {
    check_len(t.dim(), r.dim_t())
}

fn check_cochain(t: &LyaStructure, r: &Representation, c: &Cochain) -> Result<()> {
    check_len(t.dim(), c.dim_t)?;
    check_len(r.dim_v(), c.dim_v)
}

/// `(δ_I f, δ_II f)` for a linear map `f: T → V`:
///
/// ```text
/// δ_I f(a,b)    = ρ(a)f(b) − ρ(b)f(a) − f(ab)
/// δ_II f(a,b,c) = θ(b,c)f(a) − θ(a,c)f(b) + D(a,b)f(c) − f([a,b,c])
/// ```
pub fn delta1(t: &LyaStructure, r: &Representation, f: &OneCochain) -> Result<CochainPair> {
    check_context(t, r)?;
    check_len(t.dim(), f.dim_t())?;
    check_len(r.dim_v(), f.dim_v())?;
    let n = t.dim();
    let m = r.dim_v();
    let images: Vec<Vector> = (0..n).map(|i| f.image(i)).collect();
    let fm = f.matrix();

    let mut even = Cochain::zero(2, n, m);
    for x in all_tuples(n, 2) {
        let v = delta1_even_at(t, r, fm, &images, &x);
        even.at_mut(&x).clone_from_slice(&v);
    }
    let mut odd = Cochain::zero(3, n, m);
    for x in all_tuples(n, 3) {
        let v = delta1_odd_at(t, r, fm, &images, &x);
        odd.at_mut(&x).clone_from_slice(&v);
    }
    even.ensure_alternating("δ_I of a 1-cochain")?;
    odd.ensure_alternating("δ_II of a 1-cochain")?;
    CochainPair::new(1, even, odd)
}

pub(crate) fn delta1_even_at(
    t: &LyaStructure,
    r: &Representation,
    f: &RationalMatrix,
    images: &[Vector],
    x: &[usize],
) -> Vector {
    let (a, b) = (x[0], x[1]);
    let mut v = r.act_rho(a, &images[b]);
    sub_assign(&mut v, &r.act_rho(b, &images[a]));
    sub_assign(&mut v, &f.mul_vec(t.product_of_basis(a, b)));
    v
}

pub(crate) fn delta1_odd_at(
    t: &LyaStructure,
    r: &Representation,
    f: &RationalMatrix,
    images: &[Vector],
    x: &[usize],
) -> Vector {
    let (a, b, c) = (x[0], x[1], x[2]);
    let mut v = r.act_theta(b, c, &images[a]);
    sub_assign(&mut v, &r.act_theta(a, c, &images[b]));
    add_assign(&mut v, &r.act_d(a, b, &images[c]));
    sub_assign(&mut v, &f.mul_vec(t.triple_of_basis(a, b, c)));
    v
}

/// The sums shared by `δ_I` and `δ_II`:
///
/// ```text
///   Σ_{k=1}^{pairs} (−1)^{k+1} D(x_{2k−1}, x_{2k}) h(…x̂_{2k−1}, x̂_{2k}…)
/// + Σ_{k=1}^{pairs} Σ_{j>2k} (−1)^k h(…x̂_{2k−1}, x̂_{2k}…, [x_{2k−1}, x_{2k}, x_j], …)
/// ```
fn pair_sums(t: &LyaStructure, r: &Representation, h: &Cochain, pairs: usize, x: &[usize], acc: &mut Vector) {
    let mut rest = Vec::with_capacity(x.len() - 2);
    for k in 1..=pairs {
        let (a, b) = (2 * k - 2, 2 * k - 1);
        rest.clear();
        rest.extend(x.iter().enumerate().filter(|&(s, _)| s != a && s != b).map(|(_, &i)| i));
        let d_term = r.act_d(x[a], x[b], h.at(&rest));
        if k % 2 == 1 {
            add_assign(acc, &d_term);
        } else {
            sub_assign(acc, &d_term);
        }
        for j in 2 * k..x.len() {
            let bracket = t.triple_of_basis(x[a], x[b], x[j]);
            let term = h.eval_slot(&rest, j - 2, bracket);
            if k % 2 == 1 {
                sub_assign(acc, &term);
            } else {
                add_assign(acc, &term);
            }
        }
    }
}

/// `(δ_I f)(x_1, …, x_{2p+2})` for the level-`p` pair `(f, g)`.
pub(crate) fn delta_even_at(
    t: &LyaStructure,
    r: &Representation,
    f: &Cochain,
    g: &Cochain,
    p: usize,
    x: &[usize],
) -> Vector {
    let q = 2 * p;
    let mut idx: Vec<usize> = x[..=q].to_vec();
    idx[q] = x[q + 1];
    let mut block = r.act_rho(x[q], g.at(&idx));
    sub_assign(&mut block, &r.act_rho(x[q + 1], g.at(&x[..=q])));
    sub_assign(&mut block, &g.eval_slot(&idx, q, t.product_of_basis(x[q], x[q + 1])));
    let mut acc = if p.is_multiple_of(2) { block } else { block.iter().map(|v| -v).collect() };
    pair_sums(t, r, f, p, x, &mut acc);
    acc
}

/// `(δ_II g)(x_1, …, x_{2p+3})` for the level-`p` pair `(f, g)`.
pub(crate) fn delta_odd_at(t: &LyaStructure, r: &Representation, g: &Cochain, p: usize, x: &[usize]) -> Vector {
    let q = 2 * p;
    let mut block = r.act_theta(x[q + 1], x[q + 2], g.at(&x[..=q]));
    let mut idx: Vec<usize> = x[..=q].to_vec();
    idx[q] = x[q + 1];
    sub_assign(&mut block, &r.act_theta(x[q], x[q + 2], g.at(&idx)));
    let mut acc = if p.is_multiple_of(2) { block } else { block.iter().map(|v| -v).collect() };
    pair_sums(t, r, g, p + 1, x, &mut acc);
    acc
}

fn check_pair(t: &LyaStructure, r: &Representation, pair: &CochainPair) -> Result<()> {
    check_context(t, r)?;
    check_cochain(t, r, &pair.even)?;
    check_cochain(t, r, &pair.odd)
}

/// The coboundary of a level-`p` pair, a level-`p+1` pair. Returns
/// [`Error::AlternationViolation`] if an output component is not alternating.
pub fn delta(t: &LyaStructure, r: &Representation, pair: &CochainPair) -> Result<CochainPair> {
    let out = delta_unchecked(t, r, pair)?;
    out.even.ensure_alternating("δ_I output")?;
    out.odd.ensure_alternating("δ_II output")?;
    Ok(out)
}

/// [`delta`] without the alternation check on the output.
pub fn delta_unchecked(t: &LyaStructure, r: &Representation, pair: &CochainPair) -> Result<CochainPair> {
    check_pair(t, r, pair)?;
    let (n, m, p) = (t.dim(), r.dim_v(), pair.level);
    let mut even = Cochain::zero(2 * p + 2, n, m);
    for x in all_tuples(n, 2 * p + 2) {
        let v = delta_even_at(t, r, &pair.even, &pair.odd, p, &x);
        even.at_mut(&x).clone_from_slice(&v);
    }
    let mut odd = Cochain::zero(2 * p + 3, n, m);
    for x in all_tuples(n, 2 * p + 3) {
        let v = delta_odd_at(t, r, &pair.odd, p, &x);
        odd.at_mut(&x).clone_from_slice(&v);
    }
    CochainPair::new(p + 1, even, odd)
}

/// Coordinates of `δ(pair)` computed from the canonical output tuples only.
/// Valid because `δ` preserves alternation.
pub(crate) fn delta_coordinates(t: &LyaStructure, r: &Representation, pair: &CochainPair) -> Vector {
    let (n, m, p) = (t.dim(), r.dim_v(), pair.level);
    let mut out = Vec::new();
    for (degree, odd) in [(2 * p + 2, false), (2 * p + 3, true)] {
        let tuples = canonical_tuples(n, degree);
        let mut coords = zero_vector(tuples.len() * m);
        for (k, x) in tuples.iter().enumerate() {
            let v = if odd {
                delta_odd_at(t, r, &pair.odd, p, x)
            } else {
                delta_even_at(t, r, &pair.even, &pair.odd, p, x)
            };
            for (target, val) in v.into_iter().enumerate() {
                coords[target * tuples.len() + k] = val;
            }
        }
        out.extend(coords);
    }
    out
}

/// `(δ*_I, δ*_II)` of a level-1 pair `(f, g)`:
///
/// ```text
/// δ*_I(a,b,c)    = −ρ(a)f(b,c) − ρ(b)f(c,a) − ρ(c)f(a,b)
///                  + f(ab,c) + f(bc,a) + f(ca,b) + g(a,b,c) + g(b,c,a) + g(c,a,b)
/// δ*_II(a,b,c,d) = θ(a,d)f(b,c) + θ(b,d)f(c,a) + θ(c,d)f(a,b)
///                  + g(ab,c,d) + g(bc,a,d) + g(ca,b,d)
/// ```
///
/// The degree-3 part carries no alternation constraint. The degree-4 part is
/// checked for antisymmetry in its first argument pair only; it is in general
/// not antisymmetric in `(c, d)`.
pub fn delta_star(t: &LyaStructure, r: &Representation, pair: &CochainPair) -> Result<(Cochain, Cochain)> {
    if pair.level != 1 {
        return Err(Error::LevelError { expected: 1, found: pair.level });
    }
    check_pair(t, r, pair)?;
    let (n, m) = (t.dim(), r.dim_v());
    let mut first = Cochain::zero(3, n, m);
    for x in all_tuples(n, 3) {
        let v = delta_star_first_at(t, r, &pair.even, &pair.odd, &x);
        first.at_mut(&x).clone_from_slice(&v);
    }
    let mut second = Cochain::zero(4, n, m);
    for x in all_tuples(n, 4) {
        let v = delta_star_second_at(t, r, &pair.even, &pair.odd, &x);
        second.at_mut(&x).clone_from_slice(&v);
    }
    if let Some(bad) = second.alternation_witness(1) {
        return Err(Error::AlternationViolation(format!("δ*_II output at basis tuple {bad:?}")));
    }
    Ok((first, second))
}

pub(crate) fn delta_star_first_at(
    t: &LyaStructure,
    r: &Representation,
    f: &Cochain,
    g: &Cochain,
    x: &[usize],
) -> Vector {
    let mut v = zero_vector(r.dim_v());
    for (a, b, c) in [(x[0], x[1], x[2]), (x[1], x[2], x[0]), (x[2], x[0], x[1])] {
        sub_assign(&mut v, &r.act_rho(a, f.at(&[b, c])));
        add_assign(&mut v, &f.eval_slot(&[0, c], 0, t.product_of_basis(a, b)));
        add_assign(&mut v, g.at(&[a, b, c]));
    }
    v
}

pub(crate) fn delta_star_second_at(
    t: &LyaStructure,
    r: &Representation,
    f: &Cochain,
    g: &Cochain,
    x: &[usize],
) -> Vector {
    let d = x[3];
    let mut v = zero_vector(r.dim_v());
    for (a, b, c) in [(x[0], x[1], x[2]), (x[1], x[2], x[0]), (x[2], x[0], x[1])] {
        add_assign(&mut v, &r.act_theta(a, d, f.at(&[b, c])));
        add_assign(&mut v, &g.eval_slot(&[0, c, d], 0, t.product_of_basis(a, b)));
    }
    v
}

/// Standard basis of the level-`p` pair space: even basis elements (paired
/// with zero) followed by odd ones.
pub fn pair_basis(level: usize, dim_t: usize, dim_v: usize) -> Vec<CochainPair> {
    let dim = CochainPair::space_dim(level, dim_t, dim_v);
    (0..dim)
        .map(|i| {
            let mut coords = zero_vector(dim);
            coords[i] = Scalar::one();
            CochainPair::from_coordinates(level, dim_t, dim_v, &coords).expect("coordinate length")
        })
        .collect()
}
