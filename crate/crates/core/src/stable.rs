//! The stable category layer over a self-injective algebra: projective
//! covers and injective envelopes, syzygy and cosyzygy, the Nakayama
//! functor in both directions, the AR translate tau = nu Omega^2, Ext^1 via
//! stable Homs of syzygies, and semibrick verdicts.
//!
//! Covers are minimal by construction (generators lift a top basis, so
//! top(P) = top(M)); envelopes extend a socle isomorphism, which forces
//! injectivity since the socle is essential. Projective summands are
//! stripped through `decompose` after every (co)syzygy step.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rep::{ModMap, Rep};
use crate::workbench::Workbench;
use serde::Serialize;
use std::sync::Arc;

/// A projective cover or injective envelope with the induced kernel or
/// cokernel.
pub struct CoverData {
    pub module: Rep,
    pub cover: Rep,
    pub map: ModMap,
    pub kernel_or_cokernel: Rep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoverSide {
    Projective,
    Injective,
}

impl Workbench {
    /// The projective cover P ->> M built from a lifted top basis.
    pub fn projective_cover_of(&self, m: &Rep) -> Result<(Rep, ModMap)> {
        let f = self.field();
        let alg = &self.algebra;
        let nv = alg.quiver.n_vertices();
        let rad = m.radical_spans();
        // canonical top lifts: standard basis vectors at the complement
        // coordinates of rad_v
        let mut lifts: Vec<(usize, usize)> = Vec::new(); // (vertex, coordinate)
        for v in 0..nv {
            let vecs: Vec<Vec<u64>> = (0..rad[v].cols).map(|j| rad[v].col_vec(j)).collect();
            let rs = crate::matrix::RowSpace::from_vectors(f, m.dims[v], &vecs);
            for c in rs.complement_coords() {
                lifts.push((v, c));
            }
        }
        let parts: Vec<Rep> = lifts.iter().map(|&(v, _)| self.projective(v)).collect();
        if parts.is_empty() {
            let zero = Rep::zero(alg);
            let map = ModMap::zero(&zero, m);
            return Ok((zero, map));
        }
        let (cover, _) = Rep::direct_sum_many(alg, &parts);
        // assemble pi columnwise: within each part P(v), the basis at vertex
        // w is basis_between(v, w); column = (action of the word on e_c)
        let mut mats: Vec<Mat> = (0..nv)
            .map(|w| Mat::zeros(f, m.dims[w], cover.dims[w]))
            .collect();
        let mut offset = vec![0usize; nv];
        for &(v, c) in &lifts {
            for w in 0..nv {
                for (slot, &bi) in alg.basis_between(v, w).iter().enumerate() {
                    let act = m.act_word(&alg.basis[bi].word, v);
                    for i in 0..m.dims[w] {
                        mats[w][(i, offset[w] + slot)] = act[(i, c)];
                    }
                }
                offset[w] += alg.basis_between(v, w).len();
            }
        }
        let map = ModMap { mats };
        debug_assert!(map.intertwines(&cover, m));
        debug_assert!(map.is_surjective(m), "cover map must be onto");
        Ok((cover, map))
    }

    /// Projective cover or injective envelope as CoverData.
    pub fn cover(&self, m: &Rep, side: CoverSide) -> Result<CoverData> {
        match side {
            CoverSide::Projective => {
                let (cover, map) = self.projective_cover_of(m)?;
                let kernel = cover.kernel(&map, m).rep;
                Ok(CoverData {
                    module: m.clone(),
                    cover,
                    map,
                    kernel_or_cokernel: kernel,
                })
            }
            CoverSide::Injective => {
                let (env, map) = self.injective_envelope_of(m)?;
                let cokernel = m.cokernel(&map, &env).rep;
                Ok(CoverData {
                    module: m.clone(),
                    cover: env,
                    map,
                    kernel_or_cokernel: cokernel,
                })
            }
        }
    }

    /// The injective envelope M ↪ I, with I a sum of projectives P(w) whose
    /// socles match soc M vertexwise. Self-injective algebras only.
    pub fn injective_envelope_of(&self, m: &Rep) -> Result<(Rep, ModMap)> {
        let perm = self.require_self_injective()?.to_vec();
        let alg = self.algebra.clone();
        let f = self.field();
        let nv = alg.quiver.n_vertices();
        // perm[w] = socle vertex of P(w); we need P(w) with soc = S(v)
        let mut inv = vec![0usize; nv];
        for (w, &v) in perm.iter().enumerate() {
            inv[v] = w;
        }
        let soc = m.socle_spans();
        let mut copies: Vec<(usize, Vec<u64>)> = Vec::new(); // (cover vertex w, socle vector in M_v)
        for v in 0..nv {
            for j in 0..soc[v].cols {
                copies.push((inv[v], soc[v].col_vec(j)));
            }
        }
        if copies.is_empty() {
            let zero = Rep::zero(&alg);
            return Ok((zero.clone(), ModMap::zero(m, &zero)));
        }
        let parts: Vec<Rep> = copies.iter().map(|&(w, _)| self.projective(w)).collect();
        let (env, inclusions) = Rep::direct_sum_many(&alg, &parts);
        // constraint: iota(socle vector_j) = socle generator of copy j
        let hom = self.hom(m, &env)?;
        if hom.dim() == 0 {
            return Err(Error::InvalidRep(
                "no maps into the injective envelope candidate".into(),
            ));
        }
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut rhs: Vec<u64> = Vec::new();
        for (j, (w, socvec)) in copies.iter().enumerate() {
            let pw = self.projective(*w);
            let soc_p = pw.socle_spans();
            let v = perm[*w];
            assert_eq!(soc_p[v].cols, 1, "projective socle must be simple");
            let gen_local = soc_p[v].col_vec(0);
            let gen_in_env = inclusions[j].mats[v].apply(&gen_local);
            // rows: for each coordinate i of env_v: sum_k c_k (B_k socvec)_i = gen_i
            for i in 0..env.dims[v] {
                let mut row = vec![0u64; hom.dim()];
                for (k, b) in hom.basis.iter().enumerate() {
                    row[k] = b.mats[v].apply(socvec)[i];
                }
                rows.push(row);
                rhs.push(gen_in_env[i]);
            }
        }
        let system = Mat::from_rows(f, rows);
        let sol = system.solve(&rhs).ok_or_else(|| {
            Error::InvalidRep("socle extension system unsolvable; algebra not self-injective?".into())
        })?;
        let map = hom.element(&sol);
        if !map.is_injective(m) {
            return Err(Error::InvalidRep(
                "socle-extending map failed to be injective".into(),
            ));
        }
        Ok((env, map))
    }

    /// Omega^k (k > 0) or Omega^{-k} (k < 0), with projective summands
    /// stripped after every step.
    pub fn syzygy(&self, m: &Rep, k: i64) -> Result<Rep> {
        self.require_self_injective()?;
        if k == 0 {
            return self.strip_projectives(m);
        }
        let key = (m.content_key(), k);
        if let Some(r) = self.caches.lock().unwrap().syzygy.get(&key) {
            return Ok(r.clone());
        }
        let mut cur = self.strip_projectives(m)?;
        let step = if k > 0 { 1i64 } else { -1 };
        for _ in 0..k.abs() {
            if cur.is_zero() {
                break;
            }
            let skey = (cur.content_key(), step);
            let cached = self.caches.lock().unwrap().syzygy.get(&skey).cloned();
            let next = match cached {
                Some(r) => r,
                None => {
                    let side = if step > 0 {
                        CoverSide::Projective
                    } else {
                        CoverSide::Injective
                    };
                    let data = self.cover(&cur, side)?;
                    let stripped = self.strip_projectives(&data.kernel_or_cokernel)?;
                    self.caches
                        .lock()
                        .unwrap()
                        .syzygy
                        .insert(skey, stripped.clone());
                    stripped
                }
            };
            cur = next;
        }
        self.caches
            .lock()
            .unwrap()
            .syzygy
            .insert(key, cur.clone());
        Ok(cur)
    }

    /// nu(M) = D Hom(M, A), computed componentwise from Hom(M, P(v)) with
    /// the left multiplication action, then dualized.
    pub fn nakayama_functor(&self, m: &Rep) -> Result<Rep> {
        let key = (m.content_key(), true);
        if let Some(r) = self.caches.lock().unwrap().nakayama.get(&key) {
            return Ok(r.clone());
        }
        let alg = self.algebra.clone();
        let f = self.field();
        let nv = alg.quiver.n_vertices();
        let homs: Vec<_> = (0..nv)
            .map(|v| self.hom(m, &self.projective(v)))
            .collect::<Result<Vec<_>>>()?;
        let dims: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
        let solvers: Vec<Option<crate::endo::CoordSolver>> = (0..nv)
            .map(|v| {
                (dims[v] > 0).then(|| {
                    let cols: Vec<Vec<u64>> =
                        homs[v].basis.iter().map(ModMap::to_vec).collect();
                    crate::endo::CoordSolver::new(f, &cols)
                })
            })
            .collect();
        let mut mats = Vec::new();
        for (a, arrow) in alg.quiver.arrows.iter().enumerate() {
            let (u, v) = (arrow.source, arrow.target);
            // T_a: Hom(M, P(v)) -> Hom(M, P(u)), phi |-> L_a ∘ phi
            let la = self.left_mult_modmap(a);
            let mut t = Mat::zeros(f, dims[u], dims[v]);
            if dims[u] > 0 {
                for (j, phi) in homs[v].basis.iter().enumerate() {
                    let composed = la.compose(phi);
                    let coords = solvers[u].as_ref().unwrap().coords(&composed.to_vec());
                    for (i, &c) in coords.iter().enumerate() {
                        t[(i, j)] = c;
                    }
                }
            }
            // dualize: arrow acts nu(M)_u -> nu(M)_v as T_a transposed
            mats.push(t.transpose());
        }
        let rep = Rep {
            algebra: alg,
            dims,
            mats,
        };
        debug_assert!(rep.validate().is_ok());
        self.caches
            .lock()
            .unwrap()
            .nakayama
            .insert(key, rep.clone());
        Ok(rep)
    }

    /// L_a as a module map P(target a) -> P(source a).
    fn left_mult_modmap(&self, a: usize) -> ModMap {
        let alg = &self.algebra;
        let f = self.field();
        let arrow = &alg.quiver.arrows[a];
        let (u, v) = (arrow.source, arrow.target);
        let nv = alg.quiver.n_vertices();
        let mut mats = Vec::new();
        for w in 0..nv {
            let dom = alg.basis_between(v, w);
            let cod = alg.basis_between(u, w);
            let mut mat = Mat::zeros(f, cod.len(), dom.len());
            for (j, &bi) in dom.iter().enumerate() {
                let mut word = vec![a];
                word.extend_from_slice(&alg.basis[bi].word);
                if let crate::rewrite::Normal::Term(c, nf) = alg.rules.reduce_word(&word) {
                    let k = alg
                        .basis
                        .iter()
                        .position(|b| b.word == nf)
                        .expect("normal form in basis");
                    let i = cod.iter().position(|&x| x == k).expect("slice");
                    mat[(i, j)] = c;
                }
            }
            mats.push(mat);
        }
        ModMap { mats }
    }

    /// The coregular bimodule D(A) as a right module: component at w is
    /// (e_w A)^*, arrows act by transposed left multiplication.
    pub fn coregular_rep(&self) -> Rep {
        let alg = self.algebra.clone();
        let nv = alg.quiver.n_vertices();
        let dims: Vec<usize> = (0..nv).map(|w| alg.basis_from[w].len()).collect();
        let mats: Vec<Mat> = (0..alg.quiver.n_arrows())
            .map(|a| alg.left_mult_matrix(a).transpose())
            .collect();
        let rep = Rep {
            algebra: alg,
            dims,
            mats,
        };
        debug_assert!(rep.validate().is_ok());
        rep
    }

    /// nu^{-1}(N) = Hom(DA, N) with the right action through DA's left
    /// module structure.
    pub fn nakayama_inverse(&self, n: &Rep) -> Result<Rep> {
        let key = (n.content_key(), false);
        if let Some(r) = self.caches.lock().unwrap().nakayama.get(&key) {
            return Ok(r.clone());
        }
        let alg = self.algebra.clone();
        let f = self.field();
        let nv = alg.quiver.n_vertices();
        let da = self.coregular_rep();
        let hom = self.hom(&da, n)?;
        let d = hom.dim();
        let rep = if d == 0 {
            Rep::zero(&alg)
        } else {
            let cols: Vec<Vec<u64>> = hom.basis.iter().map(ModMap::to_vec).collect();
            let solver = crate::endo::CoordSolver::new(f, &cols);
            // left action of x in A on DA, componentwise at w: (R_x)^T
            let act_of = |word_mat: &dyn Fn(usize) -> Mat| -> ModMap {
                ModMap {
                    mats: (0..nv).map(|w| word_mat(w).transpose()).collect(),
                }
            };
            // endomorphism of the Hom space: f |-> f ∘ act
            let action_matrix = |act: &ModMap| -> Mat {
                let mut t = Mat::zeros(f, d, d);
                for (j, phi) in hom.basis.iter().enumerate() {
                    let composed = phi.compose(act);
                    let coords = solver.coords(&composed.to_vec());
                    for (i, &c) in coords.iter().enumerate() {
                        t[(i, j)] = c;
                    }
                }
                t
            };
            // idempotent components: right multiplication by e_v selects
            // basis words ending at v
            let proj_to = |v: usize| -> ModMap {
                act_of(&|w: usize| {
                    let words = &alg.basis_from[w];
                    let mut m = Mat::zeros(f, words.len(), words.len());
                    for (i, &bi) in words.iter().enumerate() {
                        if alg.basis[bi].target == v {
                            m[(i, i)] = 1;
                        }
                    }
                    m
                })
            };
            let e_mats: Vec<Mat> = (0..nv).map(|v| action_matrix(&proj_to(v))).collect();
            // bases of the graded pieces im(E_v)
            let mut piece_basis: Vec<Mat> = Vec::new();
            for e in &e_mats {
                let mut cols: Vec<Vec<u64>> = Vec::new();
                let mut span = crate::matrix::RowSpace::new(f, d);
                for j in 0..d {
                    let c = e.col_vec(j);
                    if span.insert(c.clone()) {
                        cols.push(c);
                    }
                }
                let mut m = Mat::zeros(f, d, cols.len());
                for (j, c) in cols.iter().enumerate() {
                    for (i, &x) in c.iter().enumerate() {
                        m[(i, j)] = x;
                    }
                }
                piece_basis.push(m);
            }
            let dims: Vec<usize> = piece_basis.iter().map(|b| b.cols).collect();
            let mut mats = Vec::new();
            for (a, arrow) in alg.quiver.arrows.iter().enumerate() {
                let (u, v) = (arrow.source, arrow.target);
                let act = act_of(&|w: usize| alg.right_mult_full(w, a));
                let t = action_matrix(&act);
                // restrict to im(E_u) -> im(E_v)
                let img = t.mul(&piece_basis[u]);
                let mut local = Mat::zeros(f, dims[v], dims[u]);
                for j in 0..img.cols {
                    let col = img.col_vec(j);
                    let x = if dims[v] == 0 {
                        debug_assert!(col.iter().all(|&c| c == 0));
                        vec![]
                    } else {
                        piece_basis[v]
                            .solve(&col)
                            .expect("arrow action respects the grading")
                    };
                    for (i, &c) in x.iter().enumerate() {
                        local[(i, j)] = c;
                    }
                }
                mats.push(local);
            }
            let rep = Rep {
                algebra: alg,
                dims,
                mats,
            };
            debug_assert!(rep.validate().is_ok());
            rep
        };
        self.caches
            .lock()
            .unwrap()
            .nakayama
            .insert(key, rep.clone());
        Ok(rep)
    }

    /// tau = nu Omega^2 and tau^{-1} = Omega^{-2} nu^{-1}.
    pub fn tau(&self, m: &Rep, sign: i64) -> Result<Rep> {
        self.require_self_injective()?;
        let stripped = self.strip_projectives(m)?;
        if stripped.is_zero() {
            return Err(Error::ProjectiveInput);
        }
        let key = (stripped.content_key(), sign.signum());
        if let Some(r) = self.caches.lock().unwrap().tau.get(&key) {
            return Ok(r.clone());
        }
        let out = if sign >= 0 {
            let om2 = self.syzygy(&stripped, 2)?;
            self.nakayama_functor(&om2)?
        } else {
            let nu_inv = self.nakayama_inverse(&stripped)?;
            self.syzygy(&nu_inv, -2)?
        };
        self.caches.lock().unwrap().tau.insert(key, out.clone());
        Ok(out)
    }
}

/// Ext^1(N, M) realized as the stable Hom from Omega N to M, with enough
/// data to materialize any class as a short exact sequence.
pub struct ExtSpace {
    /// The target of the classes: Ext^1(N, M).
    pub n: Rep,
    pub m: Rep,
    /// Projective cover P0 ->> N and its kernel (not stripped).
    pub cover: Rep,
    pub cover_map: ModMap,
    pub syz: Rep,
    pub syz_inclusion: ModMap,
    /// Stable Hom space sthom(syz, M); its stable coordinates index classes.
    pub classes: Arc<crate::hom::StableHom>,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.classes.stable_dim
    }
}

impl Workbench {
    pub fn ext1(&self, n: &Rep, m: &Rep) -> Result<ExtSpace> {
        self.require_self_injective()?;
        self.check_same_algebra(n, m)?;
        let (cover, cover_map) = self.projective_cover_of(n)?;
        let sub = cover.kernel(&cover_map, n);
        let syz = sub.rep;
        let syz_inclusion = sub.inclusion;
        let classes = self.sthom(&syz, m)?;
        Ok(ExtSpace {
            n: n.clone(),
            m: m.clone(),
            cover,
            cover_map,
            syz,
            syz_inclusion,
            classes,
        })
    }

    /// Materialize an extension class (given by a Hom element phi from the
    /// syzygy of N to M) as 0 -> M -> E -> N -> 0 with E the pushout
    /// (P0 ⊕ M)/graph(iota, -phi).
    pub fn materialize_extension(
        &self,
        ext: &ExtSpace,
        phi: &ModMap,
    ) -> Result<(Rep, ModMap, ModMap)> {
        let alg = &self.algebra;
        let f = self.field();
        let (ambient, incls) =
            Rep::direct_sum_many(alg, &[ext.cover.clone(), ext.m.clone()]);
        let (j_p, j_m) = (&incls[0], &incls[1]);
        let nv = alg.quiver.n_vertices();
        // graph spans: for each syzygy basis vector x: j_p(iota x) - j_m(phi x)
        let mut spans = Vec::with_capacity(nv);
        for v in 0..nv {
            let cols = ext.syz.dims[v];
            let mut span = Mat::zeros(f, ambient.dims[v], cols);
            for j in 0..cols {
                let mut x = vec![0u64; ext.syz.dims[v]];
                x[j] = 1;
                let up = j_p.mats[v].apply(&ext.syz_inclusion.mats[v].apply(&x));
                let down = j_m.mats[v].apply(&phi.mats[v].apply(&x));
                for i in 0..ambient.dims[v] {
                    span[(i, j)] = f.sub(up[i], down[i]);
                }
            }
            spans.push(span);
        }
        let quot = ambient.quotient_rep(&spans);
        let e = quot.rep;
        let incl_m = quot.projection.compose(j_m);
        // E -> N: [p, m] |-> cover_map(p); build through the canonical section
        let mut proj_mats = Vec::with_capacity(nv);
        for v in 0..nv {
            // section: complement coordinate classes map to unit vectors
            let mut sec = Mat::zeros(f, ambient.dims[v], e.dims[v]);
            // complement coords are where the projection has pivots; recover
            // them by applying the projection to unit vectors
            let mut k = 0;
            for c in 0..ambient.dims[v] {
                let mut unit = vec![0u64; ambient.dims[v]];
                unit[c] = 1;
                let img = quot.projection.mats[v].apply(&unit);
                let expected: Vec<u64> = (0..e.dims[v])
                    .map(|i| if i == k { 1 } else { 0 })
                    .collect();
                if k < e.dims[v] && img == expected {
                    sec[(c, k)] = 1;
                    k += 1;
                }
            }
            assert_eq!(k, e.dims[v], "section recovery must find all pivots");
            // (cover_map ⊕ 0): ambient -> N is cover_map ∘ (projection onto P0)
            let p_to_cover = j_p.mats[v].transpose();
            proj_mats.push(ext.cover_map.mats[v].mul(&p_to_cover).mul(&sec));
        }
        let proj_n = ModMap { mats: proj_mats };
        debug_assert!(incl_m.intertwines(&ext.m, &e));
        debug_assert!(proj_n.intertwines(&e, &ext.n));
        debug_assert_eq!(e.dim(), ext.m.dim() + ext.n.dim());
        debug_assert!(incl_m.is_injective(&ext.m));
        debug_assert!(proj_n.is_surjective(&ext.n));
        debug_assert!(proj_n.compose(&incl_m).is_zero());
        Ok((e, incl_m, proj_n))
    }

    /// Does the short exact sequence 0 -> M -> E -> N -> 0 split? Checked
    /// honestly: a section s with proj ∘ s = id exists iff it does.
    pub fn sequence_splits(&self, e: &Rep, proj: &ModMap, n: &Rep) -> Result<bool> {
        let hom = self.hom(n, e)?;
        if hom.dim() == 0 {
            return Ok(n.is_zero());
        }
        let f = self.field();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut rhs: Vec<u64> = Vec::new();
        let id = ModMap::identity(n);
        for v in 0..n.dims.len() {
            for i in 0..n.dims[v] {
                for j in 0..n.dims[v] {
                    let row: Vec<u64> = hom
                        .basis
                        .iter()
                        .map(|b| proj.mats[v].mul(&b.mats[v])[(i, j)])
                        .collect();
                    rows.push(row);
                    rhs.push(id.mats[v][(i, j)]);
                }
            }
        }
        if rows.is_empty() {
            return Ok(true);
        }
        let system = Mat::from_rows(f, rows);
        Ok(system.solve(&rhs).is_some())
    }
}

/// Verdict shared by semibrick and lemma reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail")]
pub enum Verdict {
    Pass,
    Fail(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SemibrickReport {
    /// stable_dim sthom(X_i, X_j) for all ordered pairs.
    pub pair_matrix: Vec<Vec<usize>>,
    pub verdict: Verdict,
}

impl Workbench {
    /// Pairwise-orthogonal stable bricks check. The matrix is reported even
    /// when the verdict is a failure or suspended on a non-split residue.
    pub fn semibrick_check(&self, set: &[Rep]) -> Result<SemibrickReport> {
        self.require_self_injective()?;
        let k = set.len();
        let mut matrix = vec![vec![0usize; k]; k];
        for (i, x) in set.iter().enumerate() {
            for (j, y) in set.iter().enumerate() {
                matrix[i][j] = self.sthom_dim(x, y)?;
            }
        }
        // preconditions: indecomposable and non-projective
        for (i, x) in set.iter().enumerate() {
            if self.is_projective(x)? {
                return Ok(SemibrickReport {
                    pair_matrix: matrix,
                    verdict: Verdict::Fail(format!("member {i} is projective")),
                });
            }
            match self.decompose(x) {
                Ok(d) if d.n_indecomposables() == 1 => {}
                Ok(_) => {
                    return Ok(SemibrickReport {
                        pair_matrix: matrix,
                        verdict: Verdict::Fail(format!("member {i} is decomposable")),
                    })
                }
                Err(Error::NonSplitResidue { residue_dim }) => {
                    return Ok(SemibrickReport {
                        pair_matrix: matrix,
                        verdict: Verdict::Inconclusive(format!(
                            "member {i} has End/rad of dimension {residue_dim}; brick verdicts suspended"
                        )),
                    })
                }
                Err(e) => return Err(e),
            }
            let end = self.end_data(x)?;
            if end.residue_dim != 1 {
                return Ok(SemibrickReport {
                    pair_matrix: matrix,
                    verdict: Verdict::Inconclusive(format!(
                        "member {i} has End/rad of dimension {}; brick verdicts suspended",
                        end.residue_dim
                    )),
                });
            }
        }
        for i in 0..k {
            for j in 0..k {
                let expect = usize::from(i == j);
                if matrix[i][j] != expect {
                    return Ok(SemibrickReport {
                        pair_matrix: matrix.clone(),
                        verdict: Verdict::Fail(format!(
                            "stable hom dimension at ({i},{j}) is {} (expected {expect})",
                            matrix[i][j]
                        )),
                    });
                }
            }
        }
        Ok(SemibrickReport {
            pair_matrix: matrix,
            verdict: Verdict::Pass,
        })
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
    fn syzygy_of_simple_over_dual_numbers() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let s = w.simple(0);
        let om = w.syzygy(&s, 1).unwrap();
        assert!(w.is_isomorphic(&om, &s).unwrap());
        let om_inv = w.syzygy(&s, -1).unwrap();
        assert!(w.is_isomorphic(&om_inv, &s).unwrap());
    }

    #[test]
    fn syzygy_period_two_on_two_cycle() {
        let w = Workbench::new(families::nakayama(2, 2, fp()).unwrap());
        let s1 = w.simple(0);
        let s2 = w.simple(1);
        let om = w.syzygy(&s1, 1).unwrap();
        assert!(w.is_isomorphic(&om, &s2).unwrap());
        let om2 = w.syzygy(&s1, 2).unwrap();
        assert!(w.is_isomorphic(&om2, &s1).unwrap());
    }

    #[test]
    fn omega_omega_inverse_is_identity() {
        let w = Workbench::new(families::a_family(2, fp()).unwrap());
        let s1 = w.simple(0);
        let om = w.syzygy(&s1, 1).unwrap();
        let back = w.syzygy(&om, -1).unwrap();
        assert!(w.is_isomorphic(&back, &s1).unwrap());
    }

    #[test]
    fn nakayama_on_symmetric_algebra_is_identity_like() {
        let w = Workbench::new(families::a_family(2, fp()).unwrap());
        assert!(w.is_symmetric());
        for v in 0..3 {
            let s = w.simple(v);
            let nu = w.nakayama_functor(&s).unwrap();
            assert!(w.is_isomorphic(&nu, &s).unwrap());
            let p = w.projective(v);
            let nup = w.nakayama_functor(&p).unwrap();
            assert!(w.is_isomorphic(&nup, &p).unwrap());
        }
    }

    #[test]
    fn nakayama_permutes_simples_on_serial_algebra() {
        // nakayama(3,2): soc P(v) = S(v+1), nu(S_v) = S(v-1+... ) checked
        // against the socle of the covering projective
        let w = Workbench::new(families::nakayama(3, 2, fp()).unwrap());
        let perm = w.require_self_injective().unwrap().to_vec();
        for v in 0..3 {
            let s = w.simple(v);
            let nu = w.nakayama_inverse(&s).unwrap();
            // nu^{-1}(S_v) should be the simple at the permuted vertex:
            // check nu(nu^{-1} S) = S
            let back = w.nakayama_functor(&nu).unwrap();
            assert!(w.is_isomorphic(&back, &s).unwrap());
        }
        let _ = perm;
    }

    #[test]
    fn coregular_is_projective_generator_for_self_injective() {
        let w = Workbench::new(families::nakayama(2, 2, fp()).unwrap());
        let da = w.coregular_rep();
        da.validate().unwrap();
        let (reg, _) = crate::rep::Rep::regular(&w.algebra);
        assert!(w.is_isomorphic(&da, &reg).unwrap());
    }

    #[test]
    fn tau_of_simple_over_dual_numbers_is_itself() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let s = w.simple(0);
        let t = w.tau(&s, 1).unwrap();
        assert!(w.is_isomorphic(&t, &s).unwrap());
        let ti = w.tau(&s, -1).unwrap();
        assert!(w.is_isomorphic(&ti, &s).unwrap());
    }

    #[test]
    fn tau_inverse_undoes_tau() {
        let w = Workbench::new(families::nakayama(3, 2, fp()).unwrap());
        for v in 0..3 {
            let s = w.simple(v);
            let t = w.tau(&s, 1).unwrap();
            let back = w.tau(&t, -1).unwrap();
            assert!(w.is_isomorphic(&back, &s).unwrap());
        }
    }

    #[test]
    fn ext1_of_simple_pairs() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let s = w.simple(0);
        let ext = w.ext1(&s, &s).unwrap();
        assert_eq!(ext.dim(), 1);
        // materialize the nonzero class: middle must be the projective
        let phi = ext.classes.stable_rep(&[1]);
        let (e, _, proj) = w.materialize_extension(&ext, &phi).unwrap();
        assert_eq!(e.dim(), 2);
        assert!(w.is_projective(&e).unwrap());
        assert!(!w.sequence_splits(&e, &proj, &s).unwrap());
        // and the zero class splits
        let zero = crate::rep::ModMap::zero(&ext.syz, &ext.m);
        let (e0, _, proj0) = w.materialize_extension(&ext, &zero).unwrap();
        assert!(w.sequence_splits(&e0, &proj0, &s).unwrap());
    }

    #[test]
    fn ext1_vanishes_where_it_should() {
        let w = Workbench::new(families::nakayama(2, 2, fp()).unwrap());
        let s1 = w.simple(0);
        // Omega S1 = S2, stHom(S2, S1) = 0
        let ext = w.ext1(&s1, &s1).unwrap();
        assert_eq!(ext.dim(), 0);
        let s2 = w.simple(1);
        let ext2 = w.ext1(&s1, &s2).unwrap();
        assert_eq!(ext2.dim(), 1);
    }

    #[test]
    fn simples_form_a_semibrick() {
        let w = Workbench::new(families::a_family(2, fp()).unwrap());
        let simples: Vec<_> = (0..3).map(|v| w.simple(v)).collect();
        let rep = w.semibrick_check(&simples).unwrap();
        assert!(rep.verdict.passed());
        assert_eq!(rep.pair_matrix[0][0], 1);
        assert_eq!(rep.pair_matrix[0][1], 0);
    }

    #[test]
    fn projective_member_fails_semibrick() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let p = w.projective(0);
        let rep = w.semibrick_check(&[p]).unwrap();
        assert!(matches!(rep.verdict, Verdict::Fail(_)));
    }
}
