//! Endomorphism algebras: multiplication table, Jacobson radical via the
//! trace bilinear form, and the semisimple quotient with enough structure
//! (center, Berlekamp subalgebra, minimal polynomials) to find idempotents.
//!
//! The trace-form radical equals the Jacobson radical whenever p exceeds the
//! dimension of End; smaller fields are rejected with FieldTooSmall rather
//! than silently switching algorithms.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::hom::HomBasis;
use crate::matrix::{Mat, RowSpace};
use crate::poly::Poly;
use crate::rep::{ModMap, Rep};
use crate::workbench::Workbench;
use std::sync::Arc;

/// Solves coordinates with respect to a fixed independent column family by
/// inverting a pivot-row submatrix once.
#[derive(Debug, Clone)]
pub struct CoordSolver {
    pivot_rows: Vec<usize>,
    inv: Mat,
}

impl CoordSolver {
    pub fn new(field: Fp, columns: &[Vec<u64>]) -> CoordSolver {
        let d = columns.len();
        if d == 0 {
            return CoordSolver {
                pivot_rows: vec![],
                inv: Mat::zeros(field, 0, 0),
            };
        }
        let ambient = columns[0].len();
        let mut bt = Mat::zeros(field, d, ambient);
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                bt[(j, i)] = x;
            }
        }
        let mut r = bt.clone();
        let pivot_rows = r.rref();
        assert_eq!(pivot_rows.len(), d, "columns must be independent");
        let mut sub = Mat::zeros(field, d, d);
        for (i, &pr) in pivot_rows.iter().enumerate() {
            for j in 0..d {
                sub[(i, j)] = bt[(j, pr)];
            }
        }
        // sub[i][j] = columns[j][pivot_rows[i]]
        let inv = sub.inverse().expect("pivot submatrix invertible");
        CoordSolver { pivot_rows, inv }
    }

    pub fn coords(&self, v: &[u64]) -> Vec<u64> {
        let picked: Vec<u64> = self.pivot_rows.iter().map(|&r| v[r]).collect();
        self.inv.apply(&picked)
    }
}

#[derive(Debug)]
pub struct EndData {
    pub hom: Arc<HomBasis>,
    /// Structure constants: coords of basis[i] ∘ basis[j].
    pub mult: Vec<Vec<Vec<u64>>>,
    /// Radical elements, as coordinate vectors in the End basis (RREF rows).
    pub radical: Vec<Vec<u64>>,
    pub residue_dim: usize,
    pub local: bool,
    /// Coordinates of the identity endomorphism.
    pub one: Vec<u64>,
    solver: CoordSolver,
    field: Fp,
}

impl EndData {
    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn compose_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let f = self.field;
        let d = self.dim();
        let mut out = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, o) in out.iter_mut().enumerate() {
                    *o = f.add(*o, f.mul(c, self.mult[i][j][k]));
                }
            }
        }
        out
    }

    pub fn element(&self, coords: &[u64]) -> ModMap {
        self.hom.element(coords)
    }

    pub fn coords_of(&self, map: &ModMap) -> Vec<u64> {
        self.solver.coords(&map.to_vec())
    }

    /// The semisimple quotient End/rad with its own structure constants.
    pub fn residue(&self) -> Semisimple {
        let f = self.field;
        let d = self.dim();
        let radspace = RowSpace::from_vectors(f, d, &self.radical);
        let complement = radspace.complement_coords();
        let sdim = complement.len();
        let project = |v: &[u64]| -> Vec<u64> {
            let r = radspace.reduce(v.to_vec());
            complement.iter().map(|&c| r[c]).collect()
        };
        let mut mult = vec![vec![vec![0u64; sdim]; sdim]; sdim];
        for (i, &ci) in complement.iter().enumerate() {
            for (j, &cj) in complement.iter().enumerate() {
                let mut ei = vec![0u64; d];
                ei[ci] = 1;
                let mut ej = vec![0u64; d];
                ej[cj] = 1;
                mult[i][j] = project(&self.compose_coords(&ei, &ej));
            }
        }
        let one = project(&self.one);
        Semisimple {
            field: f,
            dim: sdim,
            complement,
            radspace,
            mult,
            one,
        }
    }
}

/// End/rad as an abstract algebra in its own coordinates.
#[derive(Debug)]
pub struct Semisimple {
    pub field: Fp,
    pub dim: usize,
    pub complement: Vec<usize>,
    pub radspace: RowSpace,
    pub mult: Vec<Vec<Vec<u64>>>,
    pub one: Vec<u64>,
}

impl Semisimple {
    pub fn compose(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut out = vec![0u64; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, o) in out.iter_mut().enumerate() {
                    *o = f.add(*o, f.mul(c, self.mult[i][j][k]));
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.mult[i][j] != self.mult[j][i] {
                    return false;
                }
            }
        }
        true
    }

    /// Lift a residue element back to End coordinates (section through the
    /// complement coordinates).
    pub fn lift(&self, x: &[u64], end_dim: usize) -> Vec<u64> {
        let mut v = vec![0u64; end_dim];
        for (k, &c) in self.complement.iter().enumerate() {
            v[c] = x[k];
        }
        v
    }

    pub fn power(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one.clone();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(&acc, &base);
            }
            base = self.compose(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Minimal polynomial of x: first linear dependency among 1, x, x², …
    pub fn min_poly(&self, x: &[u64]) -> Poly {
        let f = self.field;
        let mut span = RowSpace::new(f, self.dim);
        let mut powers = vec![self.one.clone()];
        span.insert(self.one.clone());
        let mut cur = self.one.clone();
        loop {
            cur = self.compose(&cur, x);
            if !span.insert(cur.clone()) {
                // cur = sum of earlier powers: solve
                let k = powers.len();
                let mut cols = Mat::zeros(f, self.dim, k);
                for (j, p) in powers.iter().enumerate() {
                    for (i, &v) in p.iter().enumerate() {
                        cols[(i, j)] = v;
                    }
                }
                let sol = cols.solve(&cur).expect("dependency exists");
                let mut coeffs: Vec<u64> = sol.iter().map(|&c| f.neg(c)).collect();
                coeffs.push(1);
                return Poly::new(f, coeffs);
            }
            powers.push(cur.clone());
        }
    }

    /// Evaluate a polynomial at x inside the algebra.
    pub fn eval_poly(&self, poly: &Poly, x: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut acc = vec![0u64; self.dim];
        for &c in poly.coeffs.iter().rev() {
            acc = self.compose(&acc, x);
            for (a, &o) in acc.iter_mut().zip(&self.one) {
                *a = f.add(*a, f.mul(c, o));
            }
        }
        acc
    }

    /// Fixed points of Frobenius x -> x^p, as a subspace (commutative case:
    /// this is F_p^{number of simple blocks}).
    pub fn berlekamp_subalgebra(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut rows = Vec::new();
        for j in 0..self.dim {
            let mut e = vec![0u64; self.dim];
            e[j] = 1;
            let fr = self.power(&e, f.p());
            // column j of (Frob - id)
            rows.push(
                fr.iter()
                    .enumerate()
                    .map(|(i, &v)| f.sub(v, if i == j { 1 } else { 0 }))
                    .collect::<Vec<u64>>(),
            );
        }
        // rows currently hold columns; transpose into a matrix
        let mut m = Mat::zeros(f, self.dim, self.dim);
        for (j, col) in rows.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        let null = m.nullspace();
        (0..null.cols).map(|j| null.col_vec(j)).collect()
    }

    /// The center, as a basis of coordinate vectors.
    pub fn center(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for s in 0..self.dim {
            // equation: x * e_s - e_s * x = 0, one row per output coord
            for k in 0..self.dim {
                let mut row = vec![0u64; self.dim];
                for i in 0..self.dim {
                    let left = self.mult[i][s][k];
                    let right = self.mult[s][i][k];
                    row[i] = f.sub(left, right);
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            let eye = Mat::identity(f, self.dim);
            return (0..self.dim).map(|j| eye.col_vec(j)).collect();
        }
        let m = Mat::from_rows(f, rows);
        let null = m.nullspace();
        (0..null.cols).map(|j| null.col_vec(j)).collect()
    }
}

impl Workbench {
    /// End(M) with multiplication and radical. Errors with FieldTooSmall
    /// when p <= dim End (the trace-form radical is then unreliable).
    pub fn end_data(&self, m: &Rep) -> Result<Arc<EndData>> {
        let key = m.content_key();
        if let Some(e) = self.caches.lock().unwrap().end.get(&key) {
            return Ok(e.clone());
        }
        let e = Arc::new(self.compute_end(m)?);
        self.caches
            .lock()
            .unwrap()
            .end
            .entry(key)
            .or_insert_with(|| e.clone());
        Ok(e)
    }

    fn compute_end(&self, m: &Rep) -> Result<EndData> {
        let f = self.field();
        let hom = self.hom(m, m)?;
        let d = hom.dim();
        if m.is_zero() || d == 0 {
            return Err(Error::InvalidRep("End of the zero module".into()));
        }
        if f.p() <= d as u64 {
            return Err(Error::FieldTooSmall {
                p: f.p(),
                dim_end: d,
            });
        }
        let columns: Vec<Vec<u64>> = hom.basis.iter().map(ModMap::to_vec).collect();
        let solver = CoordSolver::new(f, &columns);
        let mut mult = vec![vec![vec![0u64; d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let prod = hom.basis[i].compose(&hom.basis[j]);
                mult[i][j] = solver.coords(&prod.to_vec());
            }
        }
        let one = solver.coords(&ModMap::identity(m).to_vec());
        // trace form G[i][j] = sum_v tr(f_i,v f_j,v)
        let mut g = Mat::zeros(f, d, d);
        for i in 0..d {
            for j in i..d {
                let mut t = 0u64;
                for v in 0..m.dims.len() {
                    let (a, b) = (&hom.basis[i].mats[v], &hom.basis[j].mats[v]);
                    for r in 0..a.rows {
                        for c in 0..a.cols {
                            t = f.add(t, f.mul(a[(r, c)], b[(c, r)]));
                        }
                    }
                }
                g[(i, j)] = t;
                g[(j, i)] = t;
            }
        }
        let null = g.nullspace();
        let radical: Vec<Vec<u64>> = (0..null.cols).map(|j| null.col_vec(j)).collect();
        let radical = RowSpace::from_vectors(f, d, &radical).rows;
        let residue_dim = d - radical.len();
        let data = EndData {
            hom,
            mult,
            radical,
            residue_dim,
            local: residue_dim == 1,
            one,
            solver,
            field: f,
        };
        data.verify_radical_nilpotent()?;
        Ok(data)
    }
}

impl EndData {
    /// The radical must span a nilpotent ideal; with p > dim End this is a
    /// theorem, so a failure here means an internal inconsistency.
    fn verify_radical_nilpotent(&self) -> Result<()> {
        let f = self.field;
        let d = self.dim();
        let mut current = RowSpace::from_vectors(f, d, &self.radical);
        for _ in 0..d + 1 {
            if current.dim() == 0 {
                return Ok(());
            }
            let mut next = RowSpace::new(f, d);
            for x in &current.rows {
                for y in &self.radical {
                    next.insert(self.compose_coords(x, y));
                }
            }
            if next.dim() >= current.dim() {
                // strictly decreasing for a nilpotent ideal's powers
                if next.rows == current.rows {
                    return Err(Error::DecompositionFailed(
                        "trace-form radical is not nilpotent".into(),
                    ));
                }
            }
            current = next;
        }
        if current.dim() == 0 {
            Ok(())
        } else {
            Err(Error::DecompositionFailed(
                "trace-form radical is not nilpotent".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::field::Fp;

    fn fp() -> Fp {
        Fp::new(101).unwrap()
    }

    #[test]
    fn end_of_simple_is_k() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let s = w.simple(0);
        let e = w.end_data(&s).unwrap();
        assert_eq!(e.dim(), 1);
        assert!(e.radical.is_empty());
        assert!(e.local);
    }

    #[test]
    fn end_of_decomposable_is_not_local() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let p = w.projective(0);
        let s = w.simple(0);
        let m = p.direct_sum(&s);
        let e = w.end_data(&m).unwrap();
        assert!(!e.local);
        assert!(e.residue_dim >= 2);
    }

    #[test]
    fn end_of_projective_over_local_t() {
        // End(P) = A^op for the regular module of k[x]/(x^3): dim 3, local
        let w = Workbench::new(families::local(3, fp()).unwrap());
        let p = w.projective(0);
        let e = w.end_data(&p).unwrap();
        assert_eq!(e.dim(), 3);
        assert_eq!(e.radical.len(), 2);
        assert!(e.local);
    }

    #[test]
    fn field_too_small_detected() {
        let w = Workbench::new(families::local(3, Fp::new(3).unwrap()).unwrap());
        let p = w.projective(0);
        match w.end_data(&p) {
            Err(Error::FieldTooSmall { p: 3, dim_end: 3 }) => {}
            other => panic!("expected FieldTooSmall, got {other:?}"),
        }
    }
}
