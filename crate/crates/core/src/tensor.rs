//! Dense multilinear tensors with `n`-dimensional inputs and `m`-dimensional output.
//!
//! Layout is row-major over `[i_1, …, i_d, out]`.

use num_traits::Zero;

use crate::scalar::{Scalar, Vector};

pub(crate) fn flat_index(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

/// All index tuples of length `degree` over `0..n`, lexicographic.
pub(crate) fn all_tuples(n: usize, degree: usize) -> Vec<Vec<usize>> {
    let total = n.pow(degree as u32);
    (0..total)
        .map(|mut code| {
            let mut t = vec![0; degree];
            for slot in (0..degree).rev() {
                t[slot] = code % n;
                code /= n;
            }
            t
        })
        .collect()
}

/// Multilinear contraction of `values` against `args`, skipping zero coordinates.
pub(crate) fn contract(values: &[Scalar], n: usize, m: usize, args: &[&[Scalar]]) -> Vector {
    let supports: Vec<Vec<(usize, &Scalar)>> =
        args.iter().map(|a| a.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()).collect();
    let mut out = vec![Scalar::zero(); m];
    if supports.iter().any(Vec::is_empty) {
        return out;
    }
    let d = args.len();
    let mut cursor = vec![0usize; d];
    loop {
        let mut offset = 0;
        let mut coeff: Option<Scalar> = None;
        for (slot, &c) in cursor.iter().enumerate() {
            let (i, x) = supports[slot][c];
            offset = offset * n + i;
            coeff = Some(match coeff {
                None => x.clone(),
                Some(acc) => acc * x,
            });
        }
        let base = offset * m;
        let coeff = coeff.unwrap_or_else(num_traits::One::one);
        for (o, v) in out.iter_mut().zip(&values[base..base + m]) {
            if !v.is_zero() {
                *o += &coeff * v;
            }
        }
        // advance odometer
        let mut slot = d;
        loop {
            if slot == 0 {
                return out;
            }
            slot -= 1;
            cursor[slot] += 1;
            if cursor[slot] < supports[slot].len() {
                break;
            }
            cursor[slot] = 0;
        }
    }
}
