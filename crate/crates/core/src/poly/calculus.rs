use super::{PolyError, Polynomial, RingExt};
use crate::arith::Field;

/// Partial derivatives in ring-variable order.
pub fn jacobian<F: Field>(f: &Polynomial<F>) -> Vec<Polynomial<F>> {
    (0..f.ring().nvars()).map(|i| f.derivative(i)).collect()
}

/// Rectangular matrix of polynomials from one ring.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix<F: Field> {
    rows: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(rows: Vec<Vec<Polynomial<F>>>) -> Result<Self, PolyError> {
        if let Some(first) = rows.first() {
            let w = first.len();
            let ring = first.first().map(|p| p.ring().clone());
            for row in &rows {
                if row.len() != w {
                    return Err(PolyError::NotSquare);
                }
                if let Some(r) = &ring {
                    if row
                        .iter()
                        .any(|p| !std::sync::Arc::ptr_eq(p.ring(), r) && **p.ring() != **r)
                    {
                        return Err(PolyError::RingMismatch);
                    }
                }
            }
        }
        Ok(PolyMatrix { rows })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial<F>>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Polynomial<F>>> {
        self.rows
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant<F: Field>(m: &PolyMatrix<F>) -> Result<Polynomial<F>, PolyError> {
    if m.nrows() != m.ncols() {
        return Err(PolyError::NotSquare);
    }
    if m.nrows() == 0 {
        return Err(PolyError::NotSquare);
    }
    let idx: Vec<usize> = (0..m.nrows()).collect();
    Ok(cofactor(m, 0, &idx))
}

fn cofactor<F: Field>(m: &PolyMatrix<F>, row: usize, cols: &[usize]) -> Polynomial<F> {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let ring = m.get(0, 0).ring().clone();
    let mut acc = ring.zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
        let minor = cofactor(m, row + 1, &rest);
        let term = entry * &minor;
        acc = if k % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Determinant of the matrix of second partial derivatives.
pub fn hessian_det<F: Field>(f: &Polynomial<F>) -> Polynomial<F> {
    let grad = jacobian(f);
    let rows = grad.iter().map(jacobian).collect();
    let m = PolyMatrix::new(rows).expect("hessian is square");
    determinant(&m).expect("hessian is square")
}
