//! Small exact linear algebra over the scalar field: Gaussian elimination,
//! solving, null spaces, and invertible-matrix inverses. Matrices are dense
//! row-major `Vec<Vec<Scalar>>`; everything here is desk-scale.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{CycloField, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(field: &Arc<CycloField>, n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = Vec::with_capacity(rows);
    for ar in a {
        assert_eq!(ar.len(), inner);
        let mut row = Vec::with_capacity(cols);
        for j in 0..cols {
            let mut acc = ar[0].field().zero();
            for (k, av) in ar.iter().enumerate() {
                acc = &acc + &(av * &b[k][j]);
            }
            row.push(acc);
        }
        out.push(row);
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            let mut acc = v[0].field().zero();
            for (c, x) in row.iter().zip(v) {
                acc = &acc + &(c * x);
            }
            acc
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot column of each row.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot nonzero");
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let sub = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solve A x = b for square or rectangular A; returns one solution if the
/// system is consistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let field = Arc::clone(b.first().map(|s| s.field()).unwrap());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // inconsistent if a pivot lands in the augmented column
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Dimension of the null space of A.
pub fn nullity(a: &Matrix) -> usize {
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut m = a.clone();
    let pivots = rref(&mut m);
    cols - pivots.len()
}

/// Inverse of a square matrix, or SingularAffineMap if it has no inverse.
pub fn invert(a: &Matrix, field: &Arc<CycloField>) -> Result<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { field.one() } else { field.zero() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::SingularAffineMap);
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Incrementally grown subspace, used for dependence detection and module
/// spinning. Vectors are coordinate rows over the scalar field.
pub struct Span {
    field: Arc<CycloField>,
    dim_ambient: usize,
    rows: Matrix, // kept in reduced echelon form
}

impl Span {
    pub fn new(field: &Arc<CycloField>, dim_ambient: usize) -> Self {
        Span {
            field: Arc::clone(field),
            dim_ambient,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the span; returns the remainder.
    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for row in &self.rows {
            let lead = row.iter().position(|c| !c.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let factor = v[lead].clone();
                for (vc, rc) in v.iter_mut().zip(row) {
                    let sub = &factor * rc;
                    *vc = &*vc - &sub;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(|c| c.is_zero())
    }

    /// Insert v; returns true if it enlarged the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.dim_ambient);
        let mut r = self.reduce(v);
        let Some(lead) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = r[lead].inv().unwrap();
        for c in r.iter_mut() {
            *c = &*c * &inv;
        }
        // back-reduce existing rows, keep rows sorted by leading column
        for row in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let factor = row[lead].clone();
                for (rc, nc) in row.iter_mut().zip(&r) {
                    let sub = &factor * nc;
                    *rc = &*rc - &sub;
                }
            }
        }
        let pos = self
            .rows
            .iter()
            .position(|row| row.iter().position(|c| !c.is_zero()).unwrap() > lead)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, r);
        true
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Arc<CycloField> {
        CycloField::new(4)
    }

    #[test]
    fn solve_2x2() {
        let f = f();
        let a = vec![
            vec![f.from_int(1), f.from_int(2)],
            vec![f.from_int(3), f.from_int(5)],
        ];
        let b = vec![f.from_int(5), f.from_int(12)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(mat_vec(&a, &x), b);
    }

    #[test]
    fn invert_with_complex_entries() {
        let f = f();
        let i = f.zeta();
        let a = vec![
            vec![i.clone(), f.zero()],
            vec![f.from_int(1), f.from_int(2)],
        ];
        let inv = invert(&a, &f).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(&f, 2));
    }

    #[test]
    fn singular_matrix_rejected() {
        let f = f();
        let a = vec![
            vec![f.from_int(1), f.from_int(2)],
            vec![f.from_int(2), f.from_int(4)],
        ];
        assert!(invert(&a, &f).is_err());
        assert_eq!(nullity(&a), 1);
    }

    #[test]
    fn span_growth() {
        let f = f();
        let mut span = Span::new(&f, 3);
        assert!(span.insert(vec![f.from_int(1), f.from_int(1), f.zero()]));
        assert!(span.insert(vec![f.zero(), f.from_int(1), f.from_int(1)]));
        assert!(!span.insert(vec![f.from_int(1), f.from_int(2), f.from_int(1)]));
        assert_eq!(span.dim(), 2);
    }
}
