//! A second, deliberately naive implementation of the operators, used as an
//! oracle. It shares nothing with the library beyond the structure constants
//! and the flat value layout of cochains.

#![allow(dead_code)]

use lya::{Cochain, CochainPair, LyaStructure, Scalar};
use num_traits::{One, Zero};

pub type Q = Scalar;
pub type V = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn zero(m: usize) -> V {
    vec![Q::zero(); m]
}

fn unit(n: usize, i: usize) -> V {
    let mut v = zero(n);
    v[i] = Q::one();
    v
}

fn add_into(acc: &mut V, c: &Q, v: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        *a += c * x;
    }
}

/// Structure constants, evaluated on arbitrary vectors.
pub struct Alg {
    pub n: usize,
    prod: Vec<V>,
    tri: Vec<V>,
}

impl Alg {
    pub fn new(t: &LyaStructure) -> Self {
        let n = t.dim();
        let mut prod = Vec::new();
        let mut tri = Vec::new();
        for i in 0..n {
            for j in 0..n {
                prod.push(t.product_of_basis(i, j).to_vec());
                for k in 0..n {
                    tri.push(t.triple_of_basis(i, j, k).to_vec());
                }
            }
        }
        Alg { n, prod, tri }
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> V {
        let n = self.n;
        let mut out = zero(n);
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                add_into(&mut out, &(xi * yj), &self.prod[i * n + j]);
            }
        }
        out
    }

    pub fn tri(&self, x: &[Q], y: &[Q], z: &[Q]) -> V {
        let n = self.n;
        let mut out = zero(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, zk) in z.iter().enumerate() {
                    add_into(&mut out, &(xi * yj * zk), &self.tri[(i * n + j) * n + k]);
                }
            }
        }
        out
    }

    // Regular representation, written out from its definition.
    pub fn rho(&self, a: &[Q], v: &[Q]) -> V {
        self.mul(a, v)
    }

    pub fn d(&self, a: &[Q], b: &[Q], v: &[Q]) -> V {
        self.tri(a, b, v)
    }

    pub fn theta(&self, a: &[Q], b: &[Q], v: &[Q]) -> V {
        self.tri(v, a, b)
    }
}

/// A multilinear map stored as all of its values on basis tuples, in the
/// layout `[i_1, …, i_d, out]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Multi {
    pub n: usize,
    pub deg: usize,
    pub data: Vec<V>,
}

pub fn tuples(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn flat(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

impl Multi {
    pub fn zero(n: usize, deg: usize) -> Self {
        Multi { n, deg, data: vec![zero(n); n.pow(deg as u32)] }
    }

    pub fn from_cochain(c: &Cochain) -> Self {
        let n = c.dim_t();
        assert_eq!(n, c.dim_v());
        let data = tuples(n, c.degree()).iter().map(|t| c.at(t).to_vec()).collect();
        Multi { n, deg: c.degree(), data }
    }

    pub fn to_cochain(&self) -> Cochain {
        let values = self.data.iter().flatten().cloned().collect();
        Cochain::from_values(self.deg, self.n, self.n, values).unwrap()
    }

    pub fn from_fn(n: usize, deg: usize, f: impl Fn(&[usize]) -> V) -> Self {
        Multi { n, deg, data: tuples(n, deg).iter().map(|t| f(t)).collect() }
    }

    pub fn at(&self, idx: &[usize]) -> &V {
        &self.data[flat(self.n, idx)]
    }

    pub fn eval(&self, args: &[V]) -> V {
        assert_eq!(args.len(), self.deg);
        let mut out = zero(self.n);
        let mut idx = Vec::with_capacity(self.deg);
        self.eval_rec(args, &mut idx, Q::one(), &mut out);
        out
    }

    fn eval_rec(&self, args: &[V], idx: &mut Vec<usize>, coeff: Q, out: &mut V) {
        let slot = idx.len();
        if slot == self.deg {
            add_into(out, &coeff, self.at(idx));
            return;
        }
        for i in 0..self.n {
            if args[slot][i].is_zero() {
                continue;
            }
            idx.push(i);
            self.eval_rec(args, idx, &coeff * &args[slot][i], out);
            idx.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn flat_values(&self) -> V {
        self.data.iter().flatten().cloned().collect()
    }

    pub fn axpy(&mut self, c: &Q, other: &Multi) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            add_into(a, c, b);
        }
    }
}

fn basis_args(n: usize, t: &[usize]) -> Vec<V> {
    t.iter().map(|&i| unit(n, i)).collect()
}

fn without(xs: &[V], a: usize, b: usize) -> Vec<V> {
    xs.iter().enumerate().filter(|(i, _)| *i != a && *i != b).map(|(_, v)| v.clone()).collect()
}

fn sign(k: usize) -> Q {
    if k.is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    }
}

pub fn delta1(alg: &Alg, f: &Multi) -> (Multi, Multi) {
    let n = alg.n;
    let di = Multi::from_fn(n, 2, |t| {
        let x = basis_args(n, t);
        let mut v = alg.rho(&x[0], &f.eval(std::slice::from_ref(&x[1])));
        add_into(&mut v, &q(-1), &alg.rho(&x[1], &f.eval(std::slice::from_ref(&x[0]))));
        add_into(&mut v, &q(-1), &f.eval(&[alg.mul(&x[0], &x[1])]));
        v
    });
    let dii = Multi::from_fn(n, 3, |t| {
        let x = basis_args(n, t);
        let (a, b, c) = (&x[0], &x[1], &x[2]);
        let mut v = alg.theta(b, c, &f.eval(std::slice::from_ref(a)));
        add_into(&mut v, &q(-1), &alg.theta(a, c, &f.eval(std::slice::from_ref(b))));
        add_into(&mut v, &q(1), &alg.d(a, b, &f.eval(std::slice::from_ref(c))));
        add_into(&mut v, &q(-1), &f.eval(&[alg.tri(a, b, c)]));
        v
    });
    (di, dii)
}

/// `Σ_k Σ_j (−1)^k h(…, x̂_{2k−1}, x̂_{2k}, …, [x_{2k−1}, x_{2k}, x_j], …)` plus
/// `Σ_k (−1)^{k+1} D(x_{2k−1}, x_{2k}) h(…, x̂_{2k−1}, x̂_{2k}, …)`, with `k ≤ blocks`.
fn d_sums(alg: &Alg, h: &Multi, x: &[V], blocks: usize, out: &mut V) {
    for k in 1..=blocks {
        let (a, b) = (2 * k - 2, 2 * k - 1);
        let rest = without(x, a, b);
        add_into(out, &sign(k + 1), &alg.d(&x[a], &x[b], &h.eval(&rest)));
        for j in (b + 1)..x.len() {
            let mut args = x.to_vec();
            args[j] = alg.tri(&x[a], &x[b], &x[j]);
            let args = without(&args, a, b);
            add_into(out, &sign(k), &h.eval(&args));
        }
    }
}

/// The general coboundary on a level-`p` pair.
pub fn delta(alg: &Alg, p: usize, f: &Multi, g: &Multi) -> (Multi, Multi) {
    let n = alg.n;
    assert_eq!((f.deg, g.deg), (2 * p, 2 * p + 1));
    let di = Multi::from_fn(n, 2 * p + 2, |t| {
        let x = basis_args(n, t);
        let head = &x[..2 * p];
        let (u, w) = (&x[2 * p], &x[2 * p + 1]);
        let mut v = zero(n);
        let mut a1 = head.to_vec();
        a1.push(w.clone());
        add_into(&mut v, &q(1), &alg.rho(u, &g.eval(&a1)));
        let mut a2 = head.to_vec();
        a2.push(u.clone());
        add_into(&mut v, &q(-1), &alg.rho(w, &g.eval(&a2)));
        let mut a3 = head.to_vec();
        a3.push(alg.mul(u, w));
        add_into(&mut v, &q(-1), &g.eval(&a3));
        let mut out = zero(n);
        add_into(&mut out, &sign(p), &v);
        d_sums(alg, f, &x, p, &mut out);
        out
    });
    let dii = Multi::from_fn(n, 2 * p + 3, |t| {
        let x = basis_args(n, t);
        let head = &x[..2 * p];
        let (u, w, z) = (&x[2 * p], &x[2 * p + 1], &x[2 * p + 2]);
        let mut v = zero(n);
        let mut a1 = head.to_vec();
        a1.push(u.clone());
        add_into(&mut v, &q(1), &alg.theta(w, z, &g.eval(&a1)));
        let mut a2 = head.to_vec();
        a2.push(w.clone());
        add_into(&mut v, &q(-1), &alg.theta(u, z, &g.eval(&a2)));
        let mut out = zero(n);
        add_into(&mut out, &sign(p), &v);
        d_sums(alg, g, &x, p + 1, &mut out);
        out
    });
    (di, dii)
}

pub fn delta_star(alg: &Alg, f: &Multi, g: &Multi) -> (Multi, Multi) {
    let n = alg.n;
    let si = Multi::from_fn(n, 3, |t| {
        let x = basis_args(n, t);
        let mut v = zero(n);
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let (a, b, c) = (&x[a], &x[b], &x[c]);
            add_into(&mut v, &q(-1), &alg.rho(a, &f.eval(&[b.clone(), c.clone()])));
            add_into(&mut v, &q(1), &f.eval(&[alg.mul(a, b), c.clone()]));
            add_into(&mut v, &q(1), &g.eval(&[a.clone(), b.clone(), c.clone()]));
        }
        v
    });
    let sii = Multi::from_fn(n, 4, |t| {
        let x = basis_args(n, t);
        let d = &x[3];
        let mut v = zero(n);
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let (a, b, c) = (&x[a], &x[b], &x[c]);
            add_into(&mut v, &q(1), &alg.theta(a, d, &f.eval(&[b.clone(), c.clone()])));
            add_into(&mut v, &q(1), &g.eval(&[alg.mul(a, b), c.clone(), d.clone()]));
        }
        v
    });
    (si, sii)
}

/// `F_i ⋆ G_j`.
pub fn star(fi: &Multi, gi: &Multi, fj: &Multi, gj: &Multi) -> Multi {
    let n = fi.n;
    Multi::from_fn(n, 4, |t| {
        let x = basis_args(n, t);
        let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
        let mut v = gi.eval(&[a.clone(), b.clone(), fj.eval(&[c.clone(), d.clone()])]);
        add_into(&mut v, &q(-1), &fi.eval(&[gj.eval(&[a.clone(), b.clone(), c.clone()]), d.clone()]));
        add_into(&mut v, &q(-1), &fi.eval(&[c.clone(), gj.eval(&[a.clone(), b.clone(), d.clone()])]));
        v
    })
}

/// `G_i △ G_j`.
pub fn triangle(gi: &Multi, gj: &Multi) -> Multi {
    let n = gi.n;
    Multi::from_fn(n, 5, |t| {
        let x = basis_args(n, t);
        let (a, b, c, d, e) = (&x[0], &x[1], &x[2], &x[3], &x[4]);
        let mut v = gi.eval(&[a.clone(), b.clone(), gj.eval(&[c.clone(), d.clone(), e.clone()])]);
        add_into(&mut v, &q(-1), &gi.eval(&[gj.eval(&[a.clone(), b.clone(), c.clone()]), d.clone(), e.clone()]));
        add_into(&mut v, &q(-1), &gi.eval(&[c.clone(), gj.eval(&[a.clone(), b.clone(), d.clone()]), e.clone()]));
        add_into(&mut v, &q(-1), &gi.eval(&[c.clone(), d.clone(), gj.eval(&[a.clone(), b.clone(), e.clone()])]));
        v
    })
}

/// A basis of the cochains of degree `deg` that vanish when any of the
/// leading `deg / 2` consecutive argument pairs coincide.
pub fn alternating_basis(n: usize, deg: usize) -> Vec<Multi> {
    let blocks = deg / 2;
    let mut out = Vec::new();
    for t in tuples(n, deg) {
        if (0..blocks).any(|k| t[2 * k] >= t[2 * k + 1]) {
            continue;
        }
        for target in 0..n {
            let mut m = Multi::zero(n, deg);
            for mask in 0..(1usize << blocks) {
                let mut s = t.clone();
                let mut sg = q(1);
                for k in 0..blocks {
                    if mask >> k & 1 == 1 {
                        s.swap(2 * k, 2 * k + 1);
                        sg = -sg;
                    }
                }
                let i = flat(n, &s);
                m.data[i][target] = sg;
            }
            out.push(m);
        }
    }
    out
}

/// Reduced row echelon form of a dense row list; returns pivot columns.
pub fn rref(rows: &mut Vec<V>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(columns: &[V]) -> usize {
    let mut rows: Vec<V> = columns.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    rref(&mut rows, cols).len()
}

/// Kernel of the matrix whose columns are given.
pub fn kernel(columns: &[V]) -> Vec<V> {
    let ncols = columns.len();
    if ncols == 0 {
        return vec![];
    }
    let nrows = columns[0].len();
    let mut rows: Vec<V> = (0..nrows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let pivots = rref(&mut rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = zero(ncols);
        v[free] = Q::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rows[r][free].clone();
        }
        out.push(v);
    }
    out
}

pub fn combine(basis: &[Multi], coeffs: &[Q]) -> Multi {
    let mut out = Multi::zero(basis[0].n, basis[0].deg);
    for (b, c) in basis.iter().zip(coeffs) {
        out.axpy(c, b);
    }
    out
}

/// Columns of the `δ¹` matrix on `f = (e_i ↦ e_j)`, rows the full values of
/// `(δ_I f, δ_II f)`.
pub fn delta1_columns(alg: &Alg) -> Vec<V> {
    let n = alg.n;
    let mut cols = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let f = elementary_map(n, i, j);
            let (a, b) = delta1(alg, &f);
            let mut col = a.flat_values();
            col.extend(b.flat_values());
            cols.push(col);
        }
    }
    cols
}

/// The one-cochain `e_i ↦ e_j`.
pub fn elementary_map(n: usize, i: usize, j: usize) -> Multi {
    let mut f = Multi::zero(n, 1);
    f.data[i][j] = Q::one();
    f
}

/// A basis of `Z² × Z³` as pairs, from the kernel of `(δ, δ*)` on the
/// alternating basis.
pub fn z23_basis(alg: &Alg) -> Vec<(Multi, Multi)> {
    let n = alg.n;
    let b2 = alternating_basis(n, 2);
    let b3 = alternating_basis(n, 3);
    let zero2 = Multi::zero(n, 2);
    let zero3 = Multi::zero(n, 3);
    let domain: Vec<(Multi, Multi)> =
        b2.iter().map(|f| (f.clone(), zero3.clone())).chain(b3.iter().map(|g| (zero2.clone(), g.clone()))).collect();
    let columns: Vec<V> = domain
        .iter()
        .map(|(f, g)| {
            let (a, b) = delta(alg, 1, f, g);
            let (c, d) = delta_star(alg, f, g);
            [a, b, c, d].iter().flat_map(Multi::flat_values).collect()
        })
        .collect();
    kernel(&columns)
        .into_iter()
        .map(|k| {
            let f = combine(&b2, &k[..b2.len()]);
            let g = combine(&b3, &k[b2.len()..]);
            (f, g)
        })
        .collect()
}

pub fn to_pair(level: usize, f: &Multi, g: &Multi) -> CochainPair {
    CochainPair::new(level, f.to_cochain(), g.to_cochain()).unwrap()
}
