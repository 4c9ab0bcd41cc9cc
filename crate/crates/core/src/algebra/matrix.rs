//! Dense exact matrices over Q(ζ_n) and determinants of polynomial matrices.

use std::collections::HashMap;
use std::fmt;

use super::cyclo::{CycloField, CycloScalar};
use super::field::FieldOps;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Largest size accepted by [`poly_matrix_det`].
pub const MAX_DET_SIZE: usize = 6;

/// In-place Gauss-Jordan elimination to reduced row-echelon form.
///
/// Among the candidate rows for a pivot column the sparsest (then lightest)
/// is chosen, so wide rows are used last. Returns the pivot columns and the
/// determinant factor: the product of pivot values times the swap sign.
pub fn gauss_jordan<F: FieldOps>(f: &F, rows: &mut [Vec<F::Elem>], ncols: usize) -> (Vec<usize>, F::Elem) {
    let mut pivots = Vec::new();
    let mut det = f.one();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !f.is_zero(&rows[i][col]))
            .min_by_key(|&i| {
                let support = rows[i].iter().filter(|e| !f.is_zero(e)).count();
                (support, f.weight(&rows[i][col]), i)
            });
        let Some(best) = best else { continue };
        if best != r {
            rows.swap(best, r);
            det = f.neg(&det);
        }
        let pv = rows[r][col].clone();
        det = f.mul(&det, &pv);
        let inv = f.inv(&pv);
        for e in rows[r].iter_mut().skip(col) {
            if !f.is_zero(e) {
                *e = f.mul(e, &inv);
            }
        }
        let (before, rest) = rows.split_at_mut(r);
        let (prow, after) = rest.split_first_mut().expect("pivot row");
        for row in before.iter_mut().chain(after.iter_mut()) {
            let factor = row[col].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (e, pe) in row.iter_mut().zip(prow.iter()).skip(col) {
                if !f.is_zero(pe) {
                    *e = f.sub(e, &f.mul(&factor, pe));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if pivots.len() < rows.len().min(ncols) || rows.len() != ncols {
        det = f.zero();
    }
    (pivots, det)
}

/// Nullspace basis from a reduced row-echelon form: one vector per free
/// column, carrying 1 in that column.
pub fn nullspace_from_rref<F: FieldOps>(f: &F, rref: &[Vec<F::Elem>], pivots: &[usize], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); ncols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(&rref[i][free]);
            }
            v
        })
        .collect()
}

/// Dense row-major matrix of cyclotomic scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: &'static CycloField,
    rows: usize,
    cols: usize,
    data: Vec<CycloScalar>,
}

/// Reduced row-echelon form with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: &'static CycloField, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &'static CycloField, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from rows; all rows must have `cols` entries.
    pub fn from_rows(field: &'static CycloField, cols: usize, rows: Vec<Vec<CycloScalar>>) -> Result<ExactMatrix> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension(format!("row of length {} in a {}-column matrix", row.len(), cols)));
            }
            for e in &row {
                if e.conductor() != field.conductor() {
                    return Err(Error::ConductorMismatch(e.conductor(), field.conductor()));
                }
            }
            data.extend(row);
        }
        Ok(ExactMatrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycloScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn to_rows(&self) -> Vec<Vec<CycloScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.to_rows();
        let (pivots, _) = gauss_jordan(&self.field, &mut rows, self.cols);
        Rref {
            rank: pivots.len(),
            pivots,
            matrix: ExactMatrix::from_rows(self.field, self.cols, rows).expect("shape preserved"),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of {v : Mv = 0}, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<CycloScalar>> {
        let r = self.rref();
        let rows = r.matrix.to_rows();
        nullspace_from_rref(&self.field, &rows, &r.pivots, self.cols)
    }

    pub fn det(&self) -> Result<CycloScalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let mut rows = self.to_rows();
        Ok(gauss_jordan(&self.field, &mut rows, self.cols).1)
    }

    pub fn mul_vec(&self, v: &[CycloScalar]) -> Result<Vec<CycloScalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Determinant of a square matrix of polynomials by memoized cofactor
/// expansion, always along the column with the fewest terms.
pub fn poly_matrix_det(m: &[Vec<Poly>]) -> Result<Poly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("polynomial determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Err(Error::Dimension("empty polynomial matrix".into()));
    }
    if n > MAX_DET_SIZE {
        return Err(Error::Dimension(format!("polynomial determinant larger than {MAX_DET_SIZE}x{MAX_DET_SIZE}")));
    }
    let first = &m[0][0];
    for e in m.iter().flatten() {
        if e.nvars() != first.nvars() {
            return Err(Error::VariableMismatch(e.nvars(), first.nvars()));
        }
        if e.conductor() != first.conductor() {
            return Err(Error::ConductorMismatch(e.conductor(), first.conductor()));
        }
    }
    let full = (1u32 << n) - 1;
    let mut memo = HashMap::new();
    Ok(minor(m, full, full, &mut memo))
}

fn minor(m: &[Vec<Poly>], rows: u32, cols: u32, memo: &mut HashMap<(u32, u32), Poly>) -> Poly {
    if let Some(p) = memo.get(&(rows, cols)) {
        return p.clone();
    }
    let proto = &m[0][0];
    let ridx: Vec<usize> = (0..m.len()).filter(|i| rows >> i & 1 == 1).collect();
    let cidx: Vec<usize> = (0..m.len()).filter(|j| cols >> j & 1 == 1).collect();
    let result = if ridx.len() == 1 {
        m[ridx[0]][cidx[0]].clone()
    } else {
        let (cpos, &col) = cidx
            .iter()
            .enumerate()
            .min_by_key(|&(_, &j)| (ridx.iter().map(|&i| m[i][j].len()).sum::<usize>(), j))
            .expect("nonempty");
        let mut acc = Poly::zero(proto.nvars(), proto.field());
        for (rpos, &row) in ridx.iter().enumerate() {
            let entry = &m[row][col];
            if entry.is_zero() {
                continue;
            }
            let sub = minor(m, rows & !(1 << row), cols & !(1 << col), memo);
            if sub.is_zero() {
                continue;
            }
            let term = entry * &sub;
            acc = if (rpos + cpos) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    };
    memo.insert((rows, cols), result.clone());
    result
}
