//! Small named algebras used by the tests, the self-test and the sample data.

use crate::algebra::{BinaryEntry, LyaStructure, TernaryEntry};
use crate::scalar::int;

fn lie(dim: usize, bracket: &[(usize, usize, usize, i64)], induced: bool) -> LyaStructure {
    let entries: Vec<BinaryEntry> = bracket.iter().map(|&(i, j, k, v)| BinaryEntry::new(i, j, k, int(v))).collect();
    LyaStructure::from_lie_algebra(dim, &entries, induced).expect("corpus bracket is antisymmetric")
}

pub fn abelian(dim: usize) -> LyaStructure {
    LyaStructure::abelian(dim).expect("positive dimension")
}

/// The two-dimensional solvable algebra `e0 e1 = e0`, ternary product zero.
pub fn solvable() -> LyaStructure {
    lie(2, &[(0, 1, 0, 1)], false)
}

/// [`solvable`] with ternary product `[x,y,z] = (xy)z`.
pub fn solvable_induced() -> LyaStructure {
    lie(2, &[(0, 1, 0, 1)], true)
}

/// `so(3)` as the cross product: `e0 e1 = e2`, `e1 e2 = e0`, `e2 e0 = e1`.
pub fn so3(induced: bool) -> LyaStructure {
    lie(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)], induced)
}

/// `sl(2)` in the basis `e0 = e`, `e1 = f`, `e2 = h`:
/// `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2(induced: bool) -> LyaStructure {
    lie(3, &[(2, 0, 0, 2), (2, 1, 1, -2), (0, 1, 2, 1)], induced)
}

/// The Lie triple system `[x,y,z] = [[x,y],z]` of `sl(2)`, binary product zero.
pub fn sl2_triple_system() -> LyaStructure {
    let lie = sl2(true);
    let entries: Vec<TernaryEntry> = lie.ternary_entries().into_iter().filter(|e| e.i < e.j).collect();
    LyaStructure::from_lie_triple_system(3, &entries).expect("triple system entries are antisymmetric")
}

/// Heisenberg algebra `e0 e1 = e2`, ternary product zero.
pub fn heisenberg() -> LyaStructure {
    lie(3, &[(0, 1, 2, 1)], false)
}

/// `e0 e1 = e1`, `e1 e2 = e0`: antisymmetric, but the Jacobi identity fails,
/// so only the cyclic axiom is violated.
pub fn jacobi_violator() -> LyaStructure {
    lie(3, &[(0, 1, 1, 1), (1, 2, 0, 1)], false)
}

/// Valid algebras of the given dimension with their names.
pub fn corpus(dim: usize) -> Vec<(&'static str, LyaStructure)> {
    match dim {
        2 => vec![("abelian2", abelian(2)), ("solvable", solvable()), ("solvable-induced", solvable_induced())],
        3 => vec![
            ("abelian3", abelian(3)),
            ("so3", so3(false)),
            ("so3-induced", so3(true)),
            ("sl2", sl2(false)),
            ("sl2-induced", sl2(true)),
            ("sl2-lts", sl2_triple_system()),
            ("heisenberg", heisenberg()),
        ],
        n => vec![("abelian", abelian(n.max(1)))],
    }
}
