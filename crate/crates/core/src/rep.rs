//! Modules as matrix representations over F_p.
//!
//! A `Rep` assigns a dimension to each vertex and a (dim target × dim source)
//! matrix to each arrow; a path acts by composing its arrow matrices in walk
//! order. Submodules are given by per-vertex column spans, quotients by the
//! canonical complement coordinates, and both carry their induced arrow
//! matrices. These constructions are the substrate for kernels, images,
//! radicals, socles, and everything the stable layer builds on top.

use crate::algebra::AlgebraRef;
use crate::error::{Error, Result};
use crate::matrix::{Mat, RowSpace};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct Rep {
    pub algebra: AlgebraRef,
    pub dims: Vec<usize>,
    pub mats: Vec<Mat>,
}

/// A module map: one matrix per vertex, target-dims × source-dims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMap {
    pub mats: Vec<Mat>,
}

impl ModMap {
    pub fn zero(source: &Rep, target: &Rep) -> Self {
        let f = source.algebra.field;
        ModMap {
            mats: (0..source.dims.len())
                .map(|v| Mat::zeros(f, target.dims[v], source.dims[v]))
                .collect(),
        }
    }

    pub fn identity(m: &Rep) -> Self {
        let f = m.algebra.field;
        ModMap {
            mats: m.dims.iter().map(|&d| Mat::identity(f, d)).collect(),
        }
    }

    /// self after other: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &ModMap) -> ModMap {
        ModMap {
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &ModMap) -> ModMap {
        ModMap {
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> ModMap {
        ModMap {
            mats: self.mats.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Mat::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.mats.iter().map(Mat::rank).sum()
    }

    pub fn is_injective(&self, source: &Rep) -> bool {
        self.rank() == source.dim()
    }

    pub fn is_surjective(&self, target: &Rep) -> bool {
        self.rank() == target.dim()
    }

    pub fn is_invertible(&self) -> bool {
        self.mats.iter().all(Mat::is_invertible)
    }

    /// Check the intertwining equations against the given source and target.
    pub fn intertwines(&self, source: &Rep, target: &Rep) -> bool {
        let q = &source.algebra.quiver;
        for (a, arrow) in q.arrows.iter().enumerate() {
            let lhs = self.mats[arrow.target].mul(&source.mats[a]);
            let rhs = target.mats[a].mul(&self.mats[arrow.source]);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// Flatten to one coordinate vector (vertex order, row-major per vertex).
    pub fn to_vec(&self) -> Vec<u64> {
        let mut v = Vec::new();
        for m in &self.mats {
            v.extend_from_slice(m.entries());
        }
        v
    }

    pub fn from_vec(source: &Rep, target: &Rep, flat: &[u64]) -> ModMap {
        let f = source.algebra.field;
        let mut mats = Vec::new();
        let mut at = 0;
        for v in 0..source.dims.len() {
            let (r, c) = (target.dims[v], source.dims[v]);
            let mut m = Mat::zeros(f, r, c);
            for i in 0..r {
                for j in 0..c {
                    m[(i, j)] = flat[at + i * c + j] % f.p();
                }
            }
            mats.push(m);
            at += r * c;
        }
        ModMap { mats }
    }
}

/// A submodule presented by per-vertex column bases, with its inclusion map.
pub struct SubRep {
    pub rep: Rep,
    pub inclusion: ModMap,
}

/// A quotient module with its projection map.
pub struct QuotRep {
    pub rep: Rep,
    pub projection: ModMap,
}

impl Rep {
    pub fn zero(algebra: &AlgebraRef) -> Rep {
        let f = algebra.field;
        let nv = algebra.quiver.n_vertices();
        Rep {
            algebra: algebra.clone(),
            dims: vec![0; nv],
            mats: algebra
                .quiver
                .arrows
                .iter()
                .map(|_| Mat::zeros(f, 0, 0))
                .collect(),
        }
    }

    pub fn simple(algebra: &AlgebraRef, v: usize) -> Rep {
        let f = algebra.field;
        let nv = algebra.quiver.n_vertices();
        let mut dims = vec![0; nv];
        dims[v] = 1;
        let mats = algebra
            .quiver
            .arrows
            .iter()
            .map(|a| Mat::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Rep {
            algebra: algebra.clone(),
            dims,
            mats,
        }
    }

    /// P(v) = e_v A on the basis paths starting at v.
    pub fn projective(algebra: &AlgebraRef, v: usize) -> Rep {
        let nv = algebra.quiver.n_vertices();
        let mut dims = vec![0; nv];
        for &i in &algebra.basis_from[v] {
            dims[algebra.basis[i].target] += 1;
        }
        let mats = (0..algebra.quiver.n_arrows())
            .map(|a| algebra.right_mult_on_projective(v, a))
            .collect();
        Rep {
            algebra: algebra.clone(),
            dims,
            mats,
        }
    }

    /// The algebra as a module over itself: ⊕_v P(v), with the summand
    /// inclusions.
    pub fn regular(algebra: &AlgebraRef) -> (Rep, Vec<ModMap>) {
        let projs: Vec<Rep> = (0..algebra.quiver.n_vertices())
            .map(|v| Rep::projective(algebra, v))
            .collect();
        Rep::direct_sum_many(algebra, &projs)
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn same_algebra(&self, other: &Rep) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            || (self.algebra.quiver == other.algebra.quiver
                && self.algebra.field == other.algebra.field
                && self.algebra.relations == other.algebra.relations)
    }

    /// Relations must evaluate to zero.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        let f = alg.field;
        if self.dims.len() != alg.quiver.n_vertices() || self.mats.len() != alg.quiver.n_arrows() {
            return Err(Error::InvalidRep("shape tables do not match quiver".into()));
        }
        for (a, arrow) in alg.quiver.arrows.iter().enumerate() {
            let m = &self.mats[a];
            if m.rows != self.dims[arrow.target] || m.cols != self.dims[arrow.source] {
                return Err(Error::InvalidRep(format!(
                    "matrix for arrow `{}` has shape {}x{}, expected {}x{}",
                    arrow.name, m.rows, m.cols, self.dims[arrow.target], self.dims[arrow.source]
                )));
            }
        }
        for mono in &alg.relations.monomials {
            let (s, _) = alg.quiver.word_endpoints(mono)?;
            if !self.act_word(mono, s).is_zero() {
                return Err(Error::InvalidRep(format!(
                    "monomial relation `{}` acts nonzero",
                    alg.quiver.word_name(mono)
                )));
            }
        }
        for (c1, p1, c2, p2) in &alg.relations.binomials {
            let (s, _) = alg.quiver.word_endpoints(p1)?;
            let val = self.act_word(p1, s).scale(*c1).add(&self.act_word(p2, s).scale(*c2));
            if !val.is_zero() {
                return Err(Error::InvalidRep(format!(
                    "binomial relation `{} , {}` acts nonzero",
                    alg.quiver.word_name(p1),
                    alg.quiver.word_name(p2)
                )));
            }
        }
        let _ = f;
        Ok(())
    }

    /// Matrix of the action of a path starting at `source` (empty word acts
    /// as the identity on the source slice).
    pub fn act_word(&self, word: &[usize], source: usize) -> Mat {
        let f = self.algebra.field;
        let mut m = Mat::identity(f, self.dims[source]);
        for &a in word {
            m = self.mats[a].mul(&m);
        }
        m
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let (sum, _) = Rep::direct_sum_many(&self.algebra, &[self.clone(), other.clone()]);
        sum
    }

    pub fn direct_sum_many(algebra: &AlgebraRef, parts: &[Rep]) -> (Rep, Vec<ModMap>) {
        let f = algebra.field;
        let nv = algebra.quiver.n_vertices();
        let mut dims = vec![0usize; nv];
        for p in parts {
            for v in 0..nv {
                dims[v] += p.dims[v];
            }
        }
        let mut mats = Vec::new();
        for (a, arrow) in algebra.quiver.arrows.iter().enumerate() {
            let mut m = Mat::zeros(f, dims[arrow.target], dims[arrow.source]);
            let mut ro = 0;
            let mut co = 0;
            for p in parts {
                let pm = &p.mats[a];
                for i in 0..pm.rows {
                    for j in 0..pm.cols {
                        m[(ro + i, co + j)] = pm[(i, j)];
                    }
                }
                ro += p.dims[arrow.target];
                co += p.dims[arrow.source];
            }
            mats.push(m);
        }
        let sum = Rep {
            algebra: algebra.clone(),
            dims,
            mats,
        };
        let mut inclusions = Vec::new();
        let mut offset = vec![0usize; nv];
        for p in parts {
            let mut incl = Vec::new();
            for v in 0..nv {
                let mut m = Mat::zeros(f, sum.dims[v], p.dims[v]);
                for j in 0..p.dims[v] {
                    m[(offset[v] + j, j)] = 1;
                }
                incl.push(m);
            }
            for v in 0..nv {
                offset[v] += p.dims[v];
            }
            inclusions.push(ModMap { mats: incl });
        }
        (sum, inclusions)
    }

    /// Submodule spanned by the given per-vertex column bases. The spans must
    /// already be arrow-stable; this is asserted by solving for the induced
    /// matrices.
    pub fn sub_rep(&self, spans: &[Mat]) -> SubRep {
        let alg = &self.algebra;
        let f = alg.field;
        let dims: Vec<usize> = spans.iter().map(|b| b.cols).collect();
        let mut mats = Vec::new();
        for (a, arrow) in alg.quiver.arrows.iter().enumerate() {
            let img = self.mats[a].mul(&spans[arrow.source]);
            let mut induced = Mat::zeros(f, dims[arrow.target], dims[arrow.source]);
            for j in 0..img.cols {
                let col = img.col_vec(j);
                let x = solve_in_span(&spans[arrow.target], &col)
                    .expect("span is not arrow-stable");
                for i in 0..dims[arrow.target] {
                    induced[(i, j)] = x[i];
                }
            }
            mats.push(induced);
        }
        SubRep {
            rep: Rep {
                algebra: alg.clone(),
                dims,
                mats,
            },
            inclusion: ModMap {
                mats: spans.to_vec(),
            },
        }
    }

    /// Quotient by the span of the given per-vertex column families.
    pub fn quotient_rep(&self, spans: &[Mat]) -> QuotRep {
        let alg = &self.algebra;
        let f = alg.field;
        let nv = alg.quiver.n_vertices();
        let mut rowspaces = Vec::with_capacity(nv);
        for v in 0..nv {
            let vecs: Vec<Vec<u64>> = (0..spans[v].cols).map(|j| spans[v].col_vec(j)).collect();
            rowspaces.push(RowSpace::from_vectors(f, self.dims[v], &vecs));
        }
        let complements: Vec<Vec<usize>> =
            rowspaces.iter().map(RowSpace::complement_coords).collect();
        let dims: Vec<usize> = complements.iter().map(Vec::len).collect();
        // projection: x |-> residue of x restricted to complement coords
        let mut projs = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut m = Mat::zeros(f, dims[v], self.dims[v]);
            for j in 0..self.dims[v] {
                let mut e = vec![0u64; self.dims[v]];
                e[j] = 1;
                let r = rowspaces[v].reduce(e);
                for (i, &c) in complements[v].iter().enumerate() {
                    m[(i, j)] = r[c];
                }
            }
            projs.push(m);
        }
        let mut mats = Vec::new();
        for (a, arrow) in alg.quiver.arrows.iter().enumerate() {
            // section of the projection: class of e_c maps to e_c
            let mut sec = Mat::zeros(f, self.dims[arrow.source], dims[arrow.source]);
            for (k, &c) in complements[arrow.source].iter().enumerate() {
                sec[(c, k)] = 1;
            }
            mats.push(projs[arrow.target].mul(&self.mats[a]).mul(&sec));
        }
        QuotRep {
            rep: Rep {
                algebra: alg.clone(),
                dims,
                mats,
            },
            projection: ModMap { mats: projs },
        }
    }

    /// rad M = sum of the images of all arrow matrices.
    pub fn radical_spans(&self) -> Vec<Mat> {
        let alg = &self.algebra;
        let f = alg.field;
        let nv = alg.quiver.n_vertices();
        let mut spaces: Vec<RowSpace> = (0..nv)
            .map(|v| RowSpace::new(f, self.dims[v]))
            .collect();
        for (a, arrow) in alg.quiver.arrows.iter().enumerate() {
            for j in 0..self.mats[a].cols {
                spaces[arrow.target].insert(self.mats[a].col_vec(j));
            }
        }
        spaces
            .iter()
            .map(|s| {
                let cols: Vec<Vec<u64>> = s.rows.clone();
                let mut m = Mat::zeros(f, s.dim_ambient, cols.len());
                for (j, c) in cols.iter().enumerate() {
                    for (i, &x) in c.iter().enumerate() {
                        m[(i, j)] = x;
                    }
                }
                m
            })
            .collect()
    }

    /// soc M = joint kernel of all arrows leaving each vertex.
    pub fn socle_spans(&self) -> Vec<Mat> {
        let alg = &self.algebra;
        let f = alg.field;
        let nv = alg.quiver.n_vertices();
        (0..nv)
            .map(|v| {
                let mut stacked: Option<Mat> = None;
                for a in alg.quiver.arrows_from(v) {
                    stacked = Some(match stacked {
                        None => self.mats[a].clone(),
                        Some(s) => s.vstack(&self.mats[a]),
                    });
                }
                match stacked {
                    None => Mat::identity(f, self.dims[v]),
                    Some(s) => s.nullspace(),
                }
            })
            .collect()
    }

    pub fn radical(&self) -> Rep {
        self.sub_rep(&self.radical_spans()).rep
    }

    pub fn socle(&self) -> Rep {
        self.sub_rep(&self.socle_spans()).rep
    }

    pub fn top(&self) -> Rep {
        self.quotient_rep(&self.radical_spans()).rep
    }

    /// (top, radical, socle).
    pub fn layers(&self) -> (Rep, Rep, Rep) {
        (self.top(), self.radical(), self.socle())
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.top().dims
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle().dims
    }

    /// Length of the radical filtration M ⊇ rad M ⊇ rad² M ⊇ …
    pub fn loewy_length(&self) -> usize {
        let mut m = self.clone();
        let mut n = 0;
        while !m.is_zero() {
            m = m.radical();
            n += 1;
            if n > self.dim() + 1 {
                break;
            }
        }
        n
    }

    /// Canonical content encoding, used as a cache key.
    pub fn content_key(&self) -> Vec<u64> {
        let mut key = vec![self.algebra.field.p(), self.dims.len() as u64];
        key.extend(self.dims.iter().map(|&d| d as u64));
        for m in &self.mats {
            key.push(u64::MAX); // separator
            key.extend_from_slice(m.entries());
        }
        key
    }

    /// Cheap isomorphism-invariant profile: dims, top, socle, Loewy length.
    pub fn fingerprint(&self) -> String {
        let fmt = |v: &[usize]| {
            v.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "d[{}]t[{}]s[{}]l{}",
            fmt(&self.dims),
            fmt(&self.top_dims()),
            fmt(&self.socle_dims()),
            self.loewy_length()
        )
    }

    pub fn kernel(&self, map: &ModMap, _target: &Rep) -> SubRep {
        let spans: Vec<Mat> = map.mats.iter().map(Mat::nullspace).collect();
        self.sub_rep(&spans)
    }

    pub fn image_in(&self, map: &ModMap, target: &Rep) -> SubRep {
        let f = self.algebra.field;
        let nv = self.algebra.quiver.n_vertices();
        let mut spans = Vec::with_capacity(nv);
        for v in 0..nv {
            let vecs: Vec<Vec<u64>> = (0..map.mats[v].cols)
                .map(|j| map.mats[v].col_vec(j))
                .collect();
            let rs = RowSpace::from_vectors(f, target.dims[v], &vecs);
            let mut m = Mat::zeros(f, target.dims[v], rs.dim());
            for (j, row) in rs.rows.iter().enumerate() {
                for (i, &x) in row.iter().enumerate() {
                    m[(i, j)] = x;
                }
            }
            spans.push(m);
        }
        target.sub_rep(&spans)
    }

    pub fn cokernel(&self, map: &ModMap, target: &Rep) -> QuotRep {
        let img = self.image_in(map, target);
        target.quotient_rep(&img.inclusion.mats)
    }

    // ---- JSON interchange (spec format) ----

    pub fn to_json(&self) -> serde_json::Value {
        let q = &self.algebra.quiver;
        let dims: BTreeMap<String, usize> = q
            .vertices
            .iter()
            .cloned()
            .zip(self.dims.iter().copied())
            .collect();
        let mats: BTreeMap<String, Vec<Vec<u64>>> = q
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| (arrow.name.clone(), self.mats[a].rows_vec()))
            .collect();
        serde_json::json!({
            "dims": dims,
            "mats": mats,
            "field": self.algebra.field.p(),
        })
    }

    pub fn from_json(algebra: &AlgebraRef, value: &serde_json::Value) -> Result<Rep> {
        #[derive(Deserialize)]
        struct RepJson {
            dims: BTreeMap<String, usize>,
            mats: BTreeMap<String, Vec<Vec<u64>>>,
            field: u64,
        }
        let parsed: RepJson = serde_json::from_value(value.clone())?;
        if parsed.field != algebra.field.p() {
            return Err(Error::InvalidRep(format!(
                "module field {} does not match algebra field {}",
                parsed.field,
                algebra.field.p()
            )));
        }
        let q = &algebra.quiver;
        let mut dims = vec![0usize; q.n_vertices()];
        for (name, d) in &parsed.dims {
            dims[q.vertex_index(name)?] = *d;
        }
        let f = algebra.field;
        let mut mats = Vec::with_capacity(q.n_arrows());
        for (a, arrow) in q.arrows.iter().enumerate() {
            let rows = parsed.mats.get(&arrow.name).cloned().unwrap_or_default();
            let m = if rows.is_empty() {
                Mat::zeros(f, dims[arrow.target], dims[arrow.source])
            } else {
                let m = Mat::from_rows(f, rows);
                if m.rows != dims[arrow.target] || m.cols != dims[arrow.source] {
                    return Err(Error::InvalidRep(format!(
                        "matrix shape mismatch for arrow `{}`",
                        arrow.name
                    )));
                }
                m
            };
            let _ = a;
            mats.push(m);
        }
        let rep = Rep {
            algebra: algebra.clone(),
            dims,
            mats,
        };
        rep.validate()?;
        Ok(rep)
    }
}

impl Serialize for Rep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn solve_in_span(span: &Mat, v: &[u64]) -> Option<Vec<u64>> {
    if span.cols == 0 {
        return v.iter().all(|&x| x == 0).then_some(vec![]);
    }
    span.solve(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn projective_dims_on_two_cycle() {
        let a = families::nakayama(2, 2, crate::field::Fp::new(101).unwrap()).unwrap();
        let p1 = Rep::projective(&a, 0);
        assert_eq!(p1.dim(), 2);
        assert_eq!(p1.dims, vec![1, 1]);
        let (top, rad, soc) = p1.layers();
        assert_eq!(top.dims, vec![1, 0]);
        assert_eq!(rad.dims, vec![0, 1]);
        assert_eq!(soc.dims, vec![0, 1]);
        p1.validate().unwrap();
    }

    #[test]
    fn regular_dim_equals_basis() {
        let a = families::local(2, crate::field::Fp::new(101).unwrap()).unwrap();
        let (reg, _) = Rep::regular(&a);
        assert_eq!(reg.dim(), a.dim());
    }

    #[test]
    fn rep_json_round_trip() {
        let a = families::nakayama(2, 2, crate::field::Fp::new(101).unwrap()).unwrap();
        let p = Rep::projective(&a, 0);
        let j = p.to_json();
        let back = Rep::from_json(&a, &j).unwrap();
        assert_eq!(back.dims, p.dims);
        assert_eq!(back.mats, p.mats);
    }
}
