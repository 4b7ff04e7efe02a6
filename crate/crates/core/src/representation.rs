//! Representations `(ρ, D, θ; V)` of a Lie-Yamaguti algebra.
//!
//! `ρ` is linear and `D`, `θ` bilinear in their algebra arguments, with
//! values in `End(V)`. They are stored on basis elements only and extended
//! multilinearly. The relations checked are
//!
//! ```text
//! R1  D(a,b) + θ(a,b) − θ(b,a) = [ρ(a),ρ(b)] − ρ(ab)
//! R2  θ(a,bc) − ρ(b)θ(a,c) + ρ(c)θ(a,b) = 0
//! R3  θ(ab,c) − θ(a,c)ρ(b) + θ(b,c)ρ(a) = 0
//! R4  θ(c,d)θ(a,b) − θ(b,d)θ(a,c) − θ(a,[b,c,d]) + D(b,c)θ(a,d) = 0
//! R5  [D(a,b),ρ(c)] = ρ([a,b,c])
//! R6  [D(a,b),θ(c,d)] = θ([a,b,c],d) + θ(c,[a,b,d])
//! ```
//!
//! together with the consequence `D(ab,c) + D(bc,a) + D(ca,b) = 0` of R1, R2,
//! R3 and R5.

use std::fmt;

use num_traits::Zero;

use crate::algebra::LyaStructure;
use crate::error::{check_len, Error, Result};
use crate::linalg::{check_square, RationalMatrix};
use crate::scalar::{Scalar, Vector};
use crate::tensor::all_tuples;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    dim_t: usize,
    dim_v: usize,
    rho: Vec<RationalMatrix>,
    d: Vec<RationalMatrix>,
    theta: Vec<RationalMatrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    /// `D(ab,c) + D(bc,a) + D(ca,b) = 0`
    DerivedCyclic,
}

impl Relation {
    pub const ALL: [Relation; 7] =
        [Relation::R1, Relation::R2, Relation::R3, Relation::R4, Relation::R5, Relation::R6, Relation::DerivedCyclic];

    pub fn arity(self) -> usize {
        match self {
            Relation::R1 => 2,
            Relation::R2 | Relation::R3 | Relation::R5 | Relation::DerivedCyclic => 3,
            Relation::R4 | Relation::R6 => 4,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::R1 => "R1 D(a,b)+θ(a,b)-θ(b,a) = [ρ(a),ρ(b)]-ρ(ab)",
            Relation::R2 => "R2 θ(a,bc)-ρ(b)θ(a,c)+ρ(c)θ(a,b) = 0",
            Relation::R3 => "R3 θ(ab,c)-θ(a,c)ρ(b)+θ(b,c)ρ(a) = 0",
            Relation::R4 => "R4 θ(c,d)θ(a,b)-θ(b,d)θ(a,c)-θ(a,[b,c,d])+D(b,c)θ(a,d) = 0",
            Relation::R5 => "R5 [D(a,b),ρ(c)] = ρ([a,b,c])",
            Relation::R6 => "R6 [D(a,b),θ(c,d)] = θ([a,b,c],d)+θ(c,[a,b,d])",
            Relation::DerivedCyclic => "derived D(ab,c)+D(bc,a)+D(ca,b) = 0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationWitness {
    pub tuple: Vec<usize>,
    /// Left side minus right side, as an endomorphism of `V`.
    pub defect: RationalMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationStatus {
    pub relation: Relation,
    pub witness: Option<RelationWitness>,
}

impl RelationStatus {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepReport {
    pub statuses: Vec<RelationStatus>,
}

impl RepReport {
    pub fn passed(&self) -> bool {
        self.statuses.iter().all(RelationStatus::passed)
    }

    pub fn status(&self, r: Relation) -> &RelationStatus {
        &self.statuses[r as usize]
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationStatus> {
        self.statuses.iter().filter(|s| !s.passed())
    }
}

impl Representation {
    /// `rho[a]`, `d[a*n+b]`, `theta[a*n+b]` are `dim_v × dim_v` matrices
    /// acting on column vectors.
    pub fn new(
        dim_t: usize,
        dim_v: usize,
        rho: Vec<RationalMatrix>,
        d: Vec<RationalMatrix>,
        theta: Vec<RationalMatrix>,
    ) -> Result<Self> {
        if dim_v == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        check_len(dim_t, rho.len())?;
        check_len(dim_t * dim_t, d.len())?;
        check_len(dim_t * dim_t, theta.len())?;
        for m in rho.iter().chain(&d).chain(&theta) {
            check_square(m, dim_v)?;
        }
        Ok(Representation { dim_t, dim_v, rho, d, theta })
    }

    pub fn zero(dim_t: usize, dim_v: usize) -> Self {
        let z = RationalMatrix::zeros(dim_v, dim_v);
        Representation {
            dim_t,
            dim_v,
            rho: vec![z.clone(); dim_t],
            d: vec![z.clone(); dim_t * dim_t],
            theta: vec![z; dim_t * dim_t],
        }
    }

    /// The regular representation on `V = T`: `ρ(a)b = ab`,
    /// `D(a,b)c = [a,b,c]`, `θ(a,b)c = [c,a,b]`.
    pub fn regular(t: &LyaStructure) -> Result<Self> {
        t.validate()?;
        Ok(Self::regular_unchecked(t))
    }

    /// As [`Self::regular`] without validating the axioms first.
    pub fn regular_unchecked(t: &LyaStructure) -> Self {
        let n = t.dim();
        let mut rho = Vec::with_capacity(n);
        for a in 0..n {
            let mut m = RationalMatrix::zeros(n, n);
            for b in 0..n {
                for (k, x) in t.product_of_basis(a, b).iter().enumerate() {
                    m[(k, b)] = x.clone();
                }
            }
            rho.push(m);
        }
        let mut d = Vec::with_capacity(n * n);
        let mut theta = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut dm = RationalMatrix::zeros(n, n);
                let mut tm = RationalMatrix::zeros(n, n);
                for c in 0..n {
                    for (l, x) in t.triple_of_basis(a, b, c).iter().enumerate() {
                        dm[(l, c)] = x.clone();
                    }
                    for (l, x) in t.triple_of_basis(c, a, b).iter().enumerate() {
                        tm[(l, c)] = x.clone();
                    }
                }
                d.push(dm);
                theta.push(tm);
            }
        }
        Representation { dim_t: n, dim_v: n, rho, d, theta }
    }

    pub fn dim_t(&self) -> usize {
        self.dim_t
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn rho(&self, a: usize) -> &RationalMatrix {
        &self.rho[a]
    }

    pub fn d_map(&self, a: usize, b: usize) -> &RationalMatrix {
        &self.d[a * self.dim_t + b]
    }

    pub fn theta(&self, a: usize, b: usize) -> &RationalMatrix {
        &self.theta[a * self.dim_t + b]
    }

    pub fn rho_mut(&mut self, a: usize) -> &mut RationalMatrix {
        &mut self.rho[a]
    }

    pub fn d_map_mut(&mut self, a: usize, b: usize) -> &mut RationalMatrix {
        &mut self.d[a * self.dim_t + b]
    }

    pub fn theta_mut(&mut self, a: usize, b: usize) -> &mut RationalMatrix {
        &mut self.theta[a * self.dim_t + b]
    }

    /// `ρ(x)` for an arbitrary element `x`.
    pub fn rho_of(&self, x: &[Scalar]) -> RationalMatrix {
        combine(self.dim_v, x.iter().enumerate().map(|(a, c)| (c.clone(), &self.rho[a])))
    }

    /// `θ(x, e_b)`
    pub fn theta_left(&self, x: &[Scalar], b: usize) -> RationalMatrix {
        combine(self.dim_v, x.iter().enumerate().map(|(a, c)| (c.clone(), self.theta(a, b))))
    }

    /// `θ(e_a, y)`
    pub fn theta_right(&self, a: usize, y: &[Scalar]) -> RationalMatrix {
        combine(self.dim_v, y.iter().enumerate().map(|(b, c)| (c.clone(), self.theta(a, b))))
    }

    /// `D(x, e_b)`
    pub fn d_left(&self, x: &[Scalar], b: usize) -> RationalMatrix {
        combine(self.dim_v, x.iter().enumerate().map(|(a, c)| (c.clone(), self.d_map(a, b))))
    }

    /// Evaluates the six relations and the derived identity on all basis tuples.
    pub fn check(&self, t: &LyaStructure) -> Result<RepReport> {
        check_len(t.dim(), self.dim_t)?;
        let n = self.dim_t;
        let statuses = Relation::ALL
            .iter()
            .map(|&relation| {
                let witness = all_tuples(n, relation.arity()).into_iter().find_map(|tuple| {
                    let defect = self.relation_defect(t, relation, &tuple);
                    (!defect.is_zero()).then_some(RelationWitness { tuple, defect })
                });
                RelationStatus { relation, witness }
            })
            .collect();
        Ok(RepReport { statuses })
    }

    fn relation_defect(&self, t: &LyaStructure, relation: Relation, x: &[usize]) -> RationalMatrix {
        let mm = |a: &RationalMatrix, b: &RationalMatrix| a.mul(b).expect("square matrices of equal size");
        let add = |a: &RationalMatrix, b: &RationalMatrix| a.add(b).expect("same shape");
        let sub = |a: &RationalMatrix, b: &RationalMatrix| a.sub(b).expect("same shape");
        match relation {
            Relation::R1 => {
                let (a, b) = (x[0], x[1]);
                let lhs = sub(&add(self.d_map(a, b), self.theta(a, b)), self.theta(b, a));
                let rhs =
                    sub(&self.rho(a).commutator(self.rho(b)).expect("square"), &self.rho_of(t.product_of_basis(a, b)));
                sub(&lhs, &rhs)
            }
            Relation::R2 => {
                let (a, b, c) = (x[0], x[1], x[2]);
                let s = sub(&self.theta_right(a, t.product_of_basis(b, c)), &mm(self.rho(b), self.theta(a, c)));
                add(&s, &mm(self.rho(c), self.theta(a, b)))
            }
            Relation::R3 => {
                let (a, b, c) = (x[0], x[1], x[2]);
                let s = sub(&self.theta_left(t.product_of_basis(a, b), c), &mm(self.theta(a, c), self.rho(b)));
                add(&s, &mm(self.theta(b, c), self.rho(a)))
            }
            Relation::R4 => {
                let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
                let s = sub(&mm(self.theta(c, d), self.theta(a, b)), &mm(self.theta(b, d), self.theta(a, c)));
                let s = sub(&s, &self.theta_right(a, t.triple_of_basis(b, c, d)));
                add(&s, &mm(self.d_map(b, c), self.theta(a, d)))
            }
            Relation::R5 => {
                let (a, b, c) = (x[0], x[1], x[2]);
                let lhs = self.d_map(a, b).commutator(self.rho(c)).expect("square");
                sub(&lhs, &self.rho_of(t.triple_of_basis(a, b, c)))
            }
            Relation::R6 => {
                let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
                let lhs = self.d_map(a, b).commutator(self.theta(c, d)).expect("square");
                let rhs = add(
                    &self.theta_left(t.triple_of_basis(a, b, c), d),
                    &self.theta_right(c, t.triple_of_basis(a, b, d)),
                );
                sub(&lhs, &rhs)
            }
            Relation::DerivedCyclic => {
                let (a, b, c) = (x[0], x[1], x[2]);
                let s = add(&self.d_left(t.product_of_basis(a, b), c), &self.d_left(t.product_of_basis(b, c), a));
                add(&s, &self.d_left(t.product_of_basis(c, a), b))
            }
        }
    }

    /// Applies `ρ(e_a)` to `v`.
    pub(crate) fn act_rho(&self, a: usize, v: &[Scalar]) -> Vector {
        self.rho[a].mul_vec(v)
    }

    pub(crate) fn act_d(&self, a: usize, b: usize, v: &[Scalar]) -> Vector {
        self.d_map(a, b).mul_vec(v)
    }

    pub(crate) fn act_theta(&self, a: usize, b: usize, v: &[Scalar]) -> Vector {
        self.theta(a, b).mul_vec(v)
    }
}

fn combine<'a>(m: usize, terms: impl Iterator<Item = (Scalar, &'a RationalMatrix)>) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(m, m);
    for (c, mat) in terms {
        if c.is_zero() {
            continue;
        }
        out = out.add(&mat.scale(&c)).expect("same shape");
    }
    out
}
