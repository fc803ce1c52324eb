//! Dense matrices over a [`Field`]; the field is passed explicitly to every operation.

use serde::Serialize;

use crate::ffield::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(f: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = f.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_ints(f: &Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
                .collect(),
        )
    }

    /// Shift matrix of one Jordan block: `e_a -> e_{a-1}`, `e_1 -> 0`.
    pub fn shift(f: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for a in 1..n {
            m[(a - 1, a)] = f.one();
        }
        m
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(n, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn map(&self, g: impl Fn(FieldElement) -> FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| g(x)).collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: FieldElement) -> Matrix {
        self.map(|x| f.mul(c, x))
    }

    pub fn add(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, f: &Field, other: &Matrix) -> Matrix {
        self.add(f, &other.map(|x| f.neg(x)))
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = f.add(out[(i, j)], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, f: &Field, e: u32) -> Matrix {
        let mut out = Matrix::identity(f, self.rows);
        for _ in 0..e {
            out = out.mul(f, self);
        }
        out
    }

    pub fn apply(&self, f: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Bilinear pairing `v^T M w`.
    pub fn pair(&self, f: &Field, v: &[FieldElement], w: &[FieldElement]) -> FieldElement {
        dot(f, v, &self.apply(f, w))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m[(r, c)]).expect("nonzero pivot");
            for j in 0..m.cols {
                m[(r, j)] = f.mul(inv, m[(r, j)]);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)];
                    for j in 0..m.cols {
                        let t = f.mul(factor, m[(r, j)]);
                        m[(i, j)] = f.sub(m[(i, j)], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    pub fn det(&self, f: &Field) -> FieldElement {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return f.zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = f.neg(det);
            }
            let piv = m[(c, c)];
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let factor = f.mul(m[(i, c)], inv);
                    for j in c..n {
                        let t = f.mul(factor, m[(c, j)]);
                        m[(i, j)] = f.sub(m[(i, j)], t);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = f.one();
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)];
            }
        }
        Some(inv)
    }

    /// Basis of `{v : M v = 0}`, as rows.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r[(i, fc)]);
                }
                v
            })
            .collect()
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, f: &Field, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(i, self.cols)];
        }
        Some(x)
    }

    pub fn to_indices(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.index()).collect())
            .collect()
    }

    /// Row-major coefficient tuples, for JSON output.
    pub fn to_coeffs(&self, f: &Field) -> Vec<Vec<Vec<u32>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| f.coeffs(x)).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_indices().serialize(s)
    }
}

pub fn dot(f: &Field, v: &[FieldElement], w: &[FieldElement]) -> FieldElement {
    v.iter()
        .zip(w)
        .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

pub fn axpy(f: &Field, a: FieldElement, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
    x.iter().zip(y).map(|(&xi, &yi)| f.add(f.mul(a, xi), yi)).collect()
}

/// Canonical basis (nonzero rows of the RREF) of the span of `vectors`.
pub fn span_rref(f: &Field, dim: usize, vectors: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), dim);
    let (r, pivots) = m.rref(f);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn span_dim(f: &Field, vectors: &[Vec<FieldElement>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank(f)
}

/// Whether `v` lies in the span of the rows `basis`.
pub fn in_span(f: &Field, basis: &[Vec<FieldElement>], v: &[FieldElement]) -> bool {
    let mut rows = basis.to_vec();
    let before = span_dim(f, &rows);
    rows.push(v.to_vec());
    span_dim(f, &rows) == before
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_of_order;

    #[test]
    fn inverse_and_det() {
        let f = field_of_order(5).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.det(&f), f.from_int(-2));
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(&f, 2));
        let sing = Matrix::from_ints(&f, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse(&f).is_none());
        assert_eq!(sing.kernel(&f).len(), 1);
    }

    #[test]
    fn shift_is_nilpotent_of_full_index() {
        let f = field_of_order(3).unwrap();
        let x = Matrix::shift(&f, 4);
        assert_eq!(x.rank(&f), 3);
        assert!(!x.pow(&f, 3).is_zero());
        assert!(x.pow(&f, 4).is_zero());
    }

    #[test]
    fn solve_consistent_system() {
        let f = field_of_order(9).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = vec![f.one(), f.from_int(2)];
        let x = m.solve(&f, &b).unwrap();
        assert_eq!(m.apply(&f, &x), b);
    }
}
