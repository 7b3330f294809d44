//! Dense exact matrices over F_p, row-major.
//!
//! Everything downstream (Hom spaces, radicals, knitting) reduces to the
//! routines here: row echelon form with a fixed pivot strategy, nullspaces
//! with the canonical free-variable basis, and linear solves. All outputs
//! are deterministic functions of the input so that frozen regression
//! constants stay stable across runs.

use crate::field::Fp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub field: Fp,
    data: Vec<u64>,
}

impl Mat {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(field: Fp, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| v % field.p()));
        }
        Mat {
            rows: r,
            cols: c,
            field,
            data,
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, *b);
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a = f.sub(*a, *b);
        }
        m
    }

    pub fn scale(&self, c: u64) -> Mat {
        let f = self.field;
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = f.mul(*a, c);
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = self.field;
        let p = f.p();
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = (*d + a * b) % p;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p();
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a * b) % p)
            })
            .collect()
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut m = Mat::zeros(self.field, self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                m[(self.rows + i, j)] = other[(i, j)];
            }
        }
        m
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self[(r, c)]);
            for j in c..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i != r && self[(i, c)] != 0 {
                    let factor = self[(i, c)];
                    for j in c..self.cols {
                        let sub = f.mul(factor, self[(r, j)]);
                        self[(i, j)] = f.sub(self[(i, j)], sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of `{x : self * x = 0}` as matrix columns, one per free
    /// variable taken in increasing column order (canonical form).
    pub fn nullspace(&self) -> Mat {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !pivot_set[c]).collect();
        let mut basis = Mat::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis[(fc, k)] = 1;
            for (pi, &pc) in pivots.iter().enumerate() {
                basis[(pc, k)] = f.neg(m[(pi, fc)]);
            }
        }
        basis
    }

    /// One solution of `self * x = b`, or None if inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let bm = Mat::from_rows(f, b.iter().map(|&v| vec![v]).collect());
        let mut aug = self.hstack(&bm);
        let pivots = aug.rref();
        if pivots.last().is_some_and(|&c| c == self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(pi, self.cols)];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.hstack(&Mat::identity(self.field, n));
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).any(|&c| c >= n) {
            return None;
        }
        let mut inv = Mat::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)];
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)], self[(b, j)]);
            self[(a, j)] = y;
            self[(b, j)] = x;
        }
    }

    pub fn trace(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        (0..self.rows).fold(0, |acc, i| f.add(acc, self[(i, i)]))
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = u64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Row-span helper: echelonized basis of a list of vectors, with a membership
/// test. Used for image subspaces and quotient coordinates.
#[derive(Debug, Clone)]
pub struct RowSpace {
    pub field: Fp,
    pub dim_ambient: usize,
    /// RREF rows spanning the space.
    pub rows: Vec<Vec<u64>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: Fp, dim_ambient: usize) -> Self {
        RowSpace {
            field,
            dim_ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(field: Fp, dim_ambient: usize, vecs: &[Vec<u64>]) -> Self {
        let mut s = RowSpace::new(field, dim_ambient);
        for v in vecs {
            s.insert(v.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; returns the residue.
    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc] != 0 {
                let c = v[pc];
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns true if it enlarged the space.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // back-substitute into existing rows, keep RREF
        for row in self.rows.iter_mut() {
            if row[pc] != 0 {
                let c = row[pc];
                for (r, &x) in row.iter_mut().zip(&v) {
                    *r = f.sub(*r, f.mul(c, x));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.rows.insert(at, v);
        self.pivots.insert(at, pc);
        true
    }

    /// Ambient coordinates not used as pivots, in increasing order: a
    /// canonical complement of the space.
    pub fn complement_coords(&self) -> Vec<usize> {
        (0..self.dim_ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Fp {
        Fp::new(101).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let m = Mat::from_rows(f(), vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.cols, 1);
        assert!(m.mul(&ns).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::from_rows(f(), vec![vec![2, 1], vec![1, 1]]);
        let x = m.solve(&[5, 3]).unwrap();
        assert_eq!(m.apply(&x), vec![5, 3]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(f(), 2));
        let sing = Mat::from_rows(f(), vec![vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[1, 0]).is_none());
    }

    #[test]
    fn rowspace_membership() {
        let mut s = RowSpace::new(f(), 3);
        assert!(s.insert(vec![1, 1, 0]));
        assert!(s.insert(vec![0, 1, 1]));
        assert!(!s.insert(vec![1, 2, 1]));
        assert!(s.contains(&[1, 0, 100]));
        assert_eq!(s.complement_coords(), vec![2]);
    }
}
