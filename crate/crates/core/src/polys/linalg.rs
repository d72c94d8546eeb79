//! Dense exact linear algebra over a field.

use crate::fields::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows {
            if i == r || field.is_zero(&m[i][c]) {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..cols {
                let t = field.mul(&factor, &m[r][j]);
                m[i][j] = field.sub(&m[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace `{x : M x = 0}`, one vector per free column,
/// each with a one in its free position.
pub fn nullspace<F: Field>(field: &F, m: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let pivots = rref(field, &mut a);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&a[row][free]);
        }
        basis.push(v);
    }
    basis
}

/// One solution of `M x = b`, if any.
pub fn solve<F: Field>(field: &F, m: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<F::Elem>> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut a);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = a[row][ncols].clone();
    }
    Some(x)
}
