//! Hom spaces between representations, and their stable quotients.
//!
//! `Hom(M, N)` is the nullspace of the stacked intertwining equations
//! `phi_t(a) M_a = N_a phi_s(a)` under a fixed variable order (vertices in
//! order, matrices row-major), so the basis is deterministic. A map factors
//! through a projective iff it factors through the projective cover of its
//! target, which turns the stable quotient into one image computation.

use crate::error::Result;
use crate::matrix::{Mat, RowSpace};
use crate::rep::{ModMap, Rep};
use crate::workbench::Workbench;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct HomBasis {
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub basis: Vec<ModMap>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The element with the given coordinates.
    pub fn element(&self, coords: &[u64]) -> ModMap {
        assert_eq!(coords.len(), self.basis.len());
        let mut acc: Option<ModMap> = None;
        for (c, b) in coords.iter().zip(&self.basis) {
            let term = b.scale(*c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.expect("coords nonempty")
    }
}

/// A Hom space with its factor-through-projectives subspace.
#[derive(Debug, Clone)]
pub struct StableHom {
    pub full_dim: usize,
    pub proj_factor_dim: usize,
    pub stable_dim: usize,
    /// Basis of the full Hom space.
    pub hom: Arc<HomBasis>,
    /// RREF rows spanning the projectively-trivial subspace, in Hom
    /// coordinates.
    pub proj_space: RowSpace,
    /// Indices into a canonical complement: coset representatives are
    /// hom.basis[i] for i in stable_coords.
    pub stable_coords: Vec<usize>,
}

impl StableHom {
    /// Coordinates of a Hom element in the stable quotient: residue of its
    /// Hom coordinates restricted to the complement coordinates.
    pub fn stable_coordinates(&self, hom_coords: &[u64]) -> Vec<u64> {
        let r = self.proj_space.reduce(hom_coords.to_vec());
        self.stable_coords.iter().map(|&c| r[c]).collect()
    }

    pub fn is_stably_zero(&self, hom_coords: &[u64]) -> bool {
        self.stable_coordinates(hom_coords).iter().all(|&x| x == 0)
    }

    /// A Hom element representing the given stable coordinates.
    pub fn stable_rep(&self, stable_coords: &[u64]) -> ModMap {
        let mut coords = vec![0u64; self.full_dim];
        for (k, &c) in self.stable_coords.iter().enumerate() {
            coords[c] = stable_coords[k];
        }
        self.hom.element(&coords)
    }
}

impl Workbench {
    /// Basis of all module maps M -> N.
    pub fn hom(&self, m: &Rep, n: &Rep) -> Result<Arc<HomBasis>> {
        self.check_same_algebra(m, n)?;
        let key = (m.content_key(), n.content_key());
        if let Some(h) = self.caches.lock().unwrap().hom.get(&key) {
            return Ok(h.clone());
        }
        let h = Arc::new(hom_space(m, n));
        self.caches
            .lock()
            .unwrap()
            .hom
            .entry(key)
            .or_insert_with(|| h.clone());
        Ok(h)
    }

    pub fn hom_dim(&self, m: &Rep, n: &Rep) -> Result<usize> {
        Ok(self.hom(m, n)?.dim())
    }

    /// Express a module map in the coordinates of hom(m, n).
    pub fn hom_coordinates(&self, m: &Rep, n: &Rep, map: &ModMap) -> Result<Vec<u64>> {
        let h = self.hom(m, n)?;
        let f = self.field();
        let ambient: usize = m
            .dims
            .iter()
            .zip(&n.dims)
            .map(|(&a, &b)| a * b)
            .sum();
        let mut cols = Mat::zeros(f, ambient, h.dim());
        for (j, b) in h.basis.iter().enumerate() {
            for (i, &x) in b.to_vec().iter().enumerate() {
                cols[(i, j)] = x;
            }
        }
        cols.solve(&map.to_vec())
            .ok_or_else(|| crate::error::Error::InvalidRep("map is not a module map".into()))
    }

    /// The stable Hom space: Hom(M, N) modulo maps factoring through
    /// projectives.
    pub fn sthom(&self, m: &Rep, n: &Rep) -> Result<Arc<StableHom>> {
        self.check_same_algebra(m, n)?;
        let key = (m.content_key(), n.content_key());
        if let Some(h) = self.caches.lock().unwrap().sthom.get(&key) {
            return Ok(h.clone());
        }
        let hom = self.hom(m, n)?;
        let f = self.field();
        let full_dim = hom.dim();
        // maps factoring through a projective = image of Hom(M, P_N) under
        // composition with the projective cover P_N ->> N
        let (cover, cover_map) = self.projective_cover_of(n)?;
        let hom_mp = self.hom(m, &cover)?;
        let mut proj_space = RowSpace::new(f, full_dim);
        for g in &hom_mp.basis {
            let composite = cover_map.compose(g);
            let coords = self.hom_coordinates(m, n, &composite)?;
            proj_space.insert(coords);
        }
        let stable_coords = proj_space.complement_coords();
        let st = Arc::new(StableHom {
            full_dim,
            proj_factor_dim: proj_space.dim(),
            stable_dim: full_dim - proj_space.dim(),
            hom,
            proj_space,
            stable_coords,
        });
        self.caches
            .lock()
            .unwrap()
            .sthom
            .entry(key)
            .or_insert_with(|| st.clone());
        Ok(st)
    }

    pub fn sthom_dim(&self, m: &Rep, n: &Rep) -> Result<usize> {
        Ok(self.sthom(m, n)?.stable_dim)
    }
}

pub fn hom_space(m: &Rep, n: &Rep) -> HomBasis {
    let f = m.algebra.field;
    let q = &m.algebra.quiver;
    let nv = q.n_vertices();
    // variable layout: per vertex, row-major entries of phi_v
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (a, arrow) in q.arrows.iter().enumerate() {
        let (u, w) = (arrow.source, arrow.target);
        // phi_w * M_a - N_a * phi_u = 0, entry (i, j): i < n.dims[w], j < m.dims[u]
        for i in 0..n.dims[w] {
            for j in 0..m.dims[u] {
                let mut row = vec![0u64; unknowns];
                for k in 0..m.dims[w] {
                    let c = m.mats[a][(k, j)];
                    if c != 0 {
                        let var = offset[w] + i * m.dims[w] + k;
                        row[var] = f.add(row[var], c);
                    }
                }
                for l in 0..n.dims[u] {
                    let c = n.mats[a][(i, l)];
                    if c != 0 {
                        let var = offset[u] + l * m.dims[u] + j;
                        row[var] = f.sub(row[var], c);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if unknowns == 0 {
        Vec::new()
    } else if rows.is_empty() {
        let eye = Mat::identity(f, unknowns);
        (0..unknowns)
            .map(|j| ModMap::from_vec(m, n, &eye.col_vec(j)))
            .collect()
    } else {
        let system = Mat::from_rows(f, rows);
        let null = system.nullspace();
        (0..null.cols)
            .map(|j| ModMap::from_vec(m, n, &null.col_vec(j)))
            .collect()
    };
    debug_assert!(basis.iter().all(|b| b.intertwines(m, n)));
    HomBasis {
        source_dims: m.dims.clone(),
        target_dims: n.dims.clone(),
        basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::field::Fp;

    fn wb(alg: crate::algebra::AlgebraRef) -> Workbench {
        Workbench::new(alg)
    }

    #[test]
    fn hom_of_simples() {
        let w = wb(families::nakayama(2, 2, Fp::new(101).unwrap()).unwrap());
        let s1 = w.simple(0);
        let s2 = w.simple(1);
        assert_eq!(w.hom_dim(&s1, &s1).unwrap(), 1);
        assert_eq!(w.hom_dim(&s1, &s2).unwrap(), 0);
    }

    #[test]
    fn hom_p1_p1_in_a2_is_2() {
        // dim e1 A e1 = #{e1, full alpha cycle} = 2
        let w = wb(families::a_family(2, Fp::new(101).unwrap()).unwrap());
        let p1 = w.projective(0);
        assert_eq!(w.hom_dim(&p1, &p1).unwrap(), 2);
    }

    #[test]
    fn stable_hom_kills_projectives() {
        let w = wb(families::local(2, Fp::new(101).unwrap()).unwrap());
        let p = w.projective(0);
        let s = w.simple(0);
        assert_eq!(w.sthom_dim(&p, &s).unwrap(), 0);
        assert_eq!(w.sthom_dim(&p, &p).unwrap(), 0);
        assert_eq!(w.sthom_dim(&s, &s).unwrap(), 1);
    }

    #[test]
    fn hom_additive_in_first_argument() {
        let w = wb(families::nakayama(3, 2, Fp::new(101).unwrap()).unwrap());
        let s1 = w.simple(0);
        let s2 = w.simple(1);
        let p1 = w.projective(0);
        let sum = s1.direct_sum(&s2);
        assert_eq!(
            w.hom_dim(&sum, &p1).unwrap(),
            w.hom_dim(&s1, &p1).unwrap() + w.hom_dim(&s2, &p1).unwrap()
        );
    }
}
