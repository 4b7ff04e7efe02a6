//! Finite-dimensional Lie-Yamaguti algebras given by structure constants.
//!
//! An algebra carries a bilinear product `ab` and a trilinear product
//! `[a, b, c]`, stored densely on a fixed basis `e_0, …, e_{n-1}`:
//!
//! ```text
//! e_i e_j       = Σ_k b[i][j][k] e_k
//! [e_i,e_j,e_k] = Σ_l t[i][j][k][l] e_l
//! ```
//!
//! The six defining identities are
//!
//! 1. `aa = 0`
//! 2. `[a, a, b] = 0`
//! 3. `[a,b,c] + [b,c,a] + [c,a,b] + (ab)c + (bc)a + (ca)b = 0`
//! 4. `[ab,c,d] + [bc,a,d] + [ca,b,d] = 0`
//! 5. `[a,b,cd] = [a,b,c]d + c[a,b,d]`
//! 6. `[a,b,[c,d,e]] = [[a,b,c],d,e] + [c,[a,b,d],e] + [c,d,[a,b,e]]`
//!
//! Identities 1 and 2 are enforced at construction (as antisymmetry in the
//! relevant pair of arguments); 3–6 are checked by [`LyaStructure::check_axioms`].

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{check_len, Error, Result};
use crate::linalg::{check_square, RationalMatrix};
use crate::scalar::{add_assign, format_vector, is_zero_vector, sub_assign, Scalar, Vector};
use crate::tensor::{self, all_tuples};

/// One sparse structure constant `b[i][j][k] = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Scalar,
}

/// One sparse structure constant `t[i][j][k][l] = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: Scalar,
}

impl BinaryEntry {
    pub fn new(i: usize, j: usize, k: usize, value: Scalar) -> Self {
        BinaryEntry { i, j, k, value }
    }
}

impl TernaryEntry {
    pub fn new(i: usize, j: usize, k: usize, l: usize, value: Scalar) -> Self {
        TernaryEntry { i, j, k, l, value }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LyaStructure {
    dim: usize,
    binary: Vec<Scalar>,
    ternary: Vec<Scalar>,
}

/// Which of the six defining identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    SquareZero,
    TernaryAlternating,
    CyclicSum,
    TernaryOfProducts,
    TernaryDerivesProduct,
    TernaryDerivesTernary,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::SquareZero,
        Axiom::TernaryAlternating,
        Axiom::CyclicSum,
        Axiom::TernaryOfProducts,
        Axiom::TernaryDerivesProduct,
        Axiom::TernaryDerivesTernary,
    ];

    /// 1-based number in the usual list of identities.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn formula(self) -> &'static str {
        match self {
            Axiom::SquareZero => "aa = 0",
            Axiom::TernaryAlternating => "[a,a,b] = 0",
            Axiom::CyclicSum => "[a,b,c]+[b,c,a]+[c,a,b]+(ab)c+(bc)a+(ca)b = 0",
            Axiom::TernaryOfProducts => "[ab,c,d]+[bc,a,d]+[ca,b,d] = 0",
            Axiom::TernaryDerivesProduct => "[a,b,cd] = [a,b,c]d + c[a,b,d]",
            Axiom::TernaryDerivesTernary => "[a,b,[c,d,e]] = [[a,b,c],d,e]+[c,[a,b,d],e]+[c,d,[a,b,e]]",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} ({})", self.number(), self.formula())
    }
}

/// A basis tuple on which an identity fails, with the nonzero defect
/// (left side minus right side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub defect: Vector,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.tuple.iter().map(|i| format!("e{i}")).collect();
        write!(f, "at ({}) defect {}", args.join(","), format_vector(&self.defect))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomStatus {
    pub axiom: Axiom,
    /// First failing basis tuple in lexicographic order, if any.
    pub witness: Option<Witness>,
}

impl AxiomStatus {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub statuses: Vec<AxiomStatus>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.statuses.iter().all(AxiomStatus::passed)
    }

    pub fn pass_count(&self) -> usize {
        self.statuses.iter().filter(|s| s.passed()).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomStatus> {
        self.statuses.iter().filter(|s| !s.passed())
    }

    pub fn status(&self, axiom: Axiom) -> &AxiomStatus {
        &self.statuses[axiom as usize]
    }
}

impl LyaStructure {
    /// Builds the dense tensors from sparse entries. Entries absent from the
    /// lists are zero; nothing is filled in, so an alternating product must list
    /// both `b[i][j][k]` and `b[j][i][k] = -b[i][j][k]`.
    pub fn new(dim: usize, binary: &[BinaryEntry], ternary: &[TernaryEntry]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let n = dim;
        let mut b = vec![Scalar::zero(); n * n * n];
        let mut seen = BTreeSet::new();
        for e in binary {
            for index in [e.i, e.j, e.k] {
                check_index(index, n)?;
            }
            if !seen.insert((e.i, e.j, e.k, 0)) {
                return Err(Error::DuplicateEntry(format!("binary [{}, {}, {}]", e.i, e.j, e.k)));
            }
            b[tensor::flat_index(n, &[e.i, e.j, e.k])] = e.value.clone();
        }
        let mut t = vec![Scalar::zero(); n * n * n * n];
        seen.clear();
        for e in ternary {
            for index in [e.i, e.j, e.k, e.l] {
                check_index(index, n)?;
            }
            if !seen.insert((e.i, e.j, e.k, e.l)) {
                return Err(Error::DuplicateEntry(format!("ternary [{}, {}, {}, {}]", e.i, e.j, e.k, e.l)));
            }
            t[tensor::flat_index(n, &[e.i, e.j, e.k, e.l])] = e.value.clone();
        }
        Self::from_dense(n, b, t)
    }

    pub(crate) fn from_dense(dim: usize, binary: Vec<Scalar>, ternary: Vec<Scalar>) -> Result<Self> {
        check_len(dim.pow(3), binary.len())?;
        check_len(dim.pow(4), ternary.len())?;
        let s = LyaStructure { dim, binary, ternary };
        if let Some(w) = s.binary_alternation_witness() {
            return Err(Error::AlternationViolation(format!("binary product, {w}")));
        }
        if let Some(w) = s.ternary_alternation_witness() {
            return Err(Error::AlternationViolation(format!("ternary product, {w}")));
        }
        Ok(s)
    }

    /// The `dim`-dimensional algebra with both products zero.
    pub fn abelian(dim: usize) -> Result<Self> {
        Self::new(dim, &[], &[])
    }

    /// A Lie algebra viewed as a Lie-Yamaguti algebra. With `induced_ternary`
    /// false the ternary product is zero; otherwise `[x,y,z] := (xy)z`.
    ///
    /// Each bracket entry may be given in one orientation only; the
    /// antisymmetric partner is filled in. Entries that contradict each other
    /// are rejected.
    pub fn from_lie_algebra(dim: usize, bracket: &[BinaryEntry], induced_ternary: bool) -> Result<Self> {
        let n = dim;
        let entries = complete_antisymmetric(n, bracket.iter().map(|e| ([e.i, e.j, e.k, 0], e.value.clone())))?;
        let mut b = vec![Scalar::zero(); n * n * n];
        for ([i, j, k, _], v) in entries {
            b[tensor::flat_index(n, &[i, j, k])] = v;
        }
        let mut t = vec![Scalar::zero(); n.pow(4)];
        if induced_ternary {
            for i in 0..n {
                for j in 0..n {
                    let ij = &b[tensor::flat_index(n, &[i, j, 0])..][..n];
                    for k in 0..n {
                        for (m, c) in ij.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mk = &b[tensor::flat_index(n, &[m, k, 0])..][..n];
                            for (l, x) in mk.iter().enumerate() {
                                if !x.is_zero() {
                                    t[tensor::flat_index(n, &[i, j, k, l])] += c * x;
                                }
                            }
                        }
                    }
                }
            }
        }
        Self::from_dense(n, b, t)
    }

    /// A Lie triple system (zero binary product). Entries may be given in
    /// one orientation of the first argument pair, as for [`Self::from_lie_algebra`].
    pub fn from_lie_triple_system(dim: usize, ternary: &[TernaryEntry]) -> Result<Self> {
        let n = dim;
        let entries = complete_antisymmetric(n, ternary.iter().map(|e| ([e.i, e.j, e.k, e.l], e.value.clone())))?;
        let mut t = vec![Scalar::zero(); n.pow(4)];
        for (idx, v) in entries {
            t[tensor::flat_index(n, &idx)] = v;
        }
        Self::from_dense(n, vec![Scalar::zero(); n.pow(3)], t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `e_i e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.binary[(i * n + j) * n..][..n]
    }

    /// Coordinates of `[e_i, e_j, e_k]`.
    pub fn triple_of_basis(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        let n = self.dim;
        &self.ternary[((i * n + j) * n + k) * n..][..n]
    }

    pub(crate) fn binary_tensor(&self) -> &[Scalar] {
        &self.binary
    }

    pub(crate) fn ternary_tensor(&self) -> &[Scalar] {
        &self.ternary
    }

    pub fn binary_product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        check_len(self.dim, x.len())?;
        check_len(self.dim, y.len())?;
        Ok(self.mul(x, y))
    }

    pub fn ternary_product(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vector> {
        check_len(self.dim, x.len())?;
        check_len(self.dim, y.len())?;
        check_len(self.dim, z.len())?;
        Ok(self.tri(x, y, z))
    }

    pub(crate) fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        tensor::contract(&self.binary, self.dim, self.dim, &[x, y])
    }

    pub(crate) fn tri(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        tensor::contract(&self.ternary, self.dim, self.dim, &[x, y, z])
    }

    /// True when the ternary product vanishes (a Lie algebra).
    pub fn is_binary_only(&self) -> bool {
        self.ternary.iter().all(Zero::is_zero)
    }

    /// Nonzero structure constants in lexicographic order.
    pub fn binary_entries(&self) -> Vec<BinaryEntry> {
        all_tuples(self.dim, 3)
            .into_iter()
            .filter_map(|t| {
                let v = &self.binary[tensor::flat_index(self.dim, &t)];
                (!v.is_zero()).then(|| BinaryEntry::new(t[0], t[1], t[2], v.clone()))
            })
            .collect()
    }

    pub fn ternary_entries(&self) -> Vec<TernaryEntry> {
        all_tuples(self.dim, 4)
            .into_iter()
            .filter_map(|t| {
                let v = &self.ternary[tensor::flat_index(self.dim, &t)];
                (!v.is_zero()).then(|| TernaryEntry::new(t[0], t[1], t[2], t[3], v.clone()))
            })
            .collect()
    }

    /// Re-expresses the algebra in the basis `e'_i = Σ_k p[k][i] e_k`
    /// (the columns of `p`). Fails when `p` is singular.
    pub fn change_basis(&self, p: &RationalMatrix) -> Result<Self> {
        let n = self.dim;
        check_square(p, n)?;
        let inv = p.inverse().ok_or_else(|| Error::InvalidAlgebra("basis change matrix is singular".into()))?;
        let cols: Vec<Vector> = (0..n).map(|i| p.column(i)).collect();
        let mut b = Vec::with_capacity(n.pow(3));
        for i in 0..n {
            for j in 0..n {
                b.extend(inv.mul_vec(&self.mul(&cols[i], &cols[j])));
            }
        }
        let mut t = Vec::with_capacity(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.extend(inv.mul_vec(&self.tri(&cols[i], &cols[j], &cols[k])));
                }
            }
        }
        Self::from_dense(n, b, t)
    }

    fn binary_alternation_witness(&self) -> Option<Witness> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                let mut defect = self.product_of_basis(i, j).to_vec();
                if i != j {
                    add_assign(&mut defect, self.product_of_basis(j, i));
                }
                if !is_zero_vector(&defect) {
                    return Some(Witness { tuple: vec![i, j], defect });
                }
            }
        }
        None
    }

    fn ternary_alternation_witness(&self) -> Option<Witness> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let mut defect = self.triple_of_basis(i, j, k).to_vec();
                    if i != j {
                        add_assign(&mut defect, self.triple_of_basis(j, i, k));
                    }
                    if !is_zero_vector(&defect) {
                        return Some(Witness { tuple: vec![i, j, k], defect });
                    }
                }
            }
        }
        None
    }

    /// Evaluates all six identities on every basis tuple and records the
    /// first failing tuple of each.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim;
        let e = |i: usize| crate::scalar::basis_vector(n, i);
        let first_failure = |arity: usize, defect: &dyn Fn(&[usize]) -> Vector| {
            all_tuples(n, arity).into_iter().find_map(|t| {
                let d = defect(&t);
                (!is_zero_vector(&d)).then_some(Witness { tuple: t, defect: d })
            })
        };

        let cyclic = |t: &[usize]| {
            let (a, b, c) = (t[0], t[1], t[2]);
            let mut s = self.triple_of_basis(a, b, c).to_vec();
            add_assign(&mut s, self.triple_of_basis(b, c, a));
            add_assign(&mut s, self.triple_of_basis(c, a, b));
            add_assign(&mut s, &self.mul(self.product_of_basis(a, b), &e(c)));
            add_assign(&mut s, &self.mul(self.product_of_basis(b, c), &e(a)));
            add_assign(&mut s, &self.mul(self.product_of_basis(c, a), &e(b)));
            s
        };
        let of_products = |t: &[usize]| {
            let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
            let mut s = self.tri(self.product_of_basis(a, b), &e(c), &e(d));
            add_assign(&mut s, &self.tri(self.product_of_basis(b, c), &e(a), &e(d)));
            add_assign(&mut s, &self.tri(self.product_of_basis(c, a), &e(b), &e(d)));
            s
        };
        let derives_product = |t: &[usize]| {
            let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
            let mut s = self.tri(&e(a), &e(b), self.product_of_basis(c, d));
            sub_assign(&mut s, &self.mul(self.triple_of_basis(a, b, c), &e(d)));
            sub_assign(&mut s, &self.mul(&e(c), self.triple_of_basis(a, b, d)));
            s
        };
        let derives_ternary = |t: &[usize]| {
            let (a, b, c, d, x) = (t[0], t[1], t[2], t[3], t[4]);
            let mut s = self.tri(&e(a), &e(b), self.triple_of_basis(c, d, x));
            sub_assign(&mut s, &self.tri(self.triple_of_basis(a, b, c), &e(d), &e(x)));
            sub_assign(&mut s, &self.tri(&e(c), self.triple_of_basis(a, b, d), &e(x)));
            sub_assign(&mut s, &self.tri(&e(c), &e(d), self.triple_of_basis(a, b, x)));
            s
        };

        let statuses = vec![
            AxiomStatus { axiom: Axiom::SquareZero, witness: self.binary_alternation_witness() },
            AxiomStatus { axiom: Axiom::TernaryAlternating, witness: self.ternary_alternation_witness() },
            AxiomStatus { axiom: Axiom::CyclicSum, witness: first_failure(3, &cyclic) },
            AxiomStatus { axiom: Axiom::TernaryOfProducts, witness: first_failure(4, &of_products) },
            AxiomStatus { axiom: Axiom::TernaryDerivesProduct, witness: first_failure(4, &derives_product) },
            AxiomStatus { axiom: Axiom::TernaryDerivesTernary, witness: first_failure(5, &derives_ternary) },
        ];
        AxiomReport { statuses }
    }

    /// Shorthand for `check_axioms().passed()` that returns an error naming
    /// the first failed identity.
    pub fn validate(&self) -> Result<()> {
        match self.check_axioms().failures().next() {
            None => Ok(()),
            Some(s) => Err(Error::InvalidAlgebra(format!(
                "{} fails {}",
                s.axiom,
                s.witness.as_ref().map(ToString::to_string).unwrap_or_default()
            ))),
        }
    }
}

fn check_index(index: usize, dim: usize) -> Result<()> {
    if index < dim {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, dim })
    }
}

/// Completes entries antisymmetric in the first two indices.
fn complete_antisymmetric(
    n: usize,
    entries: impl Iterator<Item = ([usize; 4], Scalar)>,
) -> Result<Vec<([usize; 4], Scalar)>> {
    use std::collections::BTreeMap;
    let mut given: BTreeMap<[usize; 4], Scalar> = BTreeMap::new();
    for (idx, v) in entries {
        for &i in &idx {
            check_index(i, n)?;
        }
        if given.insert(idx, v).is_some() {
            return Err(Error::DuplicateEntry(format!("{idx:?}")));
        }
    }
    let mut out: BTreeMap<[usize; 4], Scalar> = BTreeMap::new();
    for (idx, v) in &given {
        if v.is_zero() {
            continue;
        }
        if idx[0] == idx[1] {
            return Err(Error::AlternationViolation(format!("entry {idx:?} has equal leading indices")));
        }
        let partner = [idx[1], idx[0], idx[2], idx[3]];
        let expected = -v;
        if let Some(w) = given.get(&partner) {
            if *w != expected {
                return Err(Error::AlternationViolation(format!("entries {idx:?} and {partner:?} are not opposite")));
            }
        }
        out.insert(*idx, v.clone());
        out.insert(partner, expected);
    }
    Ok(out.into_iter().collect())
}
