//! Almost split sequences and component knitting.
//!
//! The sequence ending at an indecomposable non-projective N is materialized
//! from the socle of Ext^1(N, tau N) as a right End(N)-module: lift each
//! endomorphism through the projective cover, act on stable classes by
//! precomposition with the restricted lift, intersect the kernels of the
//! radical action, and demand a one-dimensional socle. Knitting expands
//! meshes breadth-first in both tau directions, deduplicating nodes by
//! fingerprint bucket plus an exact isomorphism test.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rep::{ModMap, Rep};
use crate::workbench::Workbench;
use std::collections::BTreeMap;

pub struct ArSequence {
    /// tau N.
    pub left: Rep,
    /// The materialized middle term (before decomposition).
    pub middle: Rep,
    /// Indecomposable middle summands with multiplicities and projectivity.
    pub middle_parts: Vec<(Rep, usize, bool)>,
    pub right: Rep,
    pub inclusion: ModMap,
    pub projection: ModMap,
}

impl ArSequence {
    pub fn mesh_additive(&self) -> bool {
        self.left.dim() + self.right.dim() == self.middle.dim()
    }

    pub fn stable_parts(&self) -> Vec<(Rep, usize)> {
        self.middle_parts
            .iter()
            .filter(|(_, _, proj)| !proj)
            .map(|(r, m, _)| (r.clone(), *m))
            .collect()
    }
}

impl Workbench {
    /// The almost split sequence 0 -> tau N -> E -> N -> 0.
    pub fn ar_sequence(&self, n: &Rep) -> Result<ArSequence> {
        self.require_self_injective()?;
        if self.is_projective(n)? {
            return Err(Error::ProjectiveInput);
        }
        let dec = self.decompose(n)?;
        if dec.n_indecomposables() != 1 {
            return Err(Error::InvalidRep(
                "almost split sequences end at indecomposable modules".into(),
            ));
        }
        let end = self.end_data(n)?;
        if end.residue_dim != 1 {
            return Err(Error::NonSplitResidue {
                residue_dim: end.residue_dim,
            });
        }
        let tau_n = self.tau(n, 1)?;
        let ext = self.ext1(n, &tau_n)?;
        let classes = ext.classes.clone();
        let sdim = classes.stable_dim;
        if sdim == 0 {
            return Err(Error::NotFound(
                "Ext^1(N, tau N) vanishes stably; no almost split sequence".into(),
            ));
        }
        // right End(N)-action on stable classes via syzygy lifts
        let socle_coords: Vec<u64> = if end.radical.is_empty() {
            if sdim != 1 {
                return Err(Error::SocleNotLine(sdim));
            }
            let mut v = vec![0u64; sdim];
            v[0] = 1;
            v
        } else {
            let f = self.field();
            let mut action_cols: Vec<Vec<u64>> = Vec::new();
            for rad in &end.radical {
                let g = end.element(rad);
                let omega_g = self.syzygy_lift(&ext, &g)?;
                // action matrix on stable coords: phi |-> phi ∘ omega_g
                for i in 0..sdim {
                    let phi = classes.stable_rep(&unit(sdim, i));
                    let acted = phi.compose(&omega_g);
                    let coords = self.hom_coordinates(&ext.syz, &tau_n, &acted)?;
                    action_cols.push(classes.stable_coordinates(&coords));
                }
            }
            // socle = joint kernel of all radical actions
            let n_blocks = action_cols.len() / sdim;
            let mut stacked = Mat::zeros(f, n_blocks * sdim, sdim);
            for (block, chunk) in action_cols.chunks(sdim).enumerate() {
                for (col, st) in chunk.iter().enumerate() {
                    for r in 0..sdim {
                        stacked[(block * sdim + r, col)] = st[r];
                    }
                }
            }
            let null = stacked.nullspace();
            if null.cols != 1 {
                return Err(Error::SocleNotLine(null.cols));
            }
            null.col_vec(0)
        };
        let phi = classes.stable_rep(&socle_coords);
        let (middle, inclusion, projection) = self.materialize_extension(&ext, &phi)?;
        let parts = self.decompose(&middle)?;
        let mut middle_parts = Vec::new();
        for (rep, mult) in &parts.summands {
            let proj = self.is_projective(rep)?;
            middle_parts.push((rep.clone(), *mult, proj));
        }
        let seq = ArSequence {
            left: tau_n,
            middle,
            middle_parts,
            right: n.clone(),
            inclusion,
            projection,
        };
        debug_assert!(seq.mesh_additive());
        Ok(seq)
    }

    /// Lift g: N -> N through the projective cover and restrict to the
    /// syzygy: returns Omega(g) as a map syz -> syz.
    fn syzygy_lift(&self, ext: &crate::stable::ExtSpace, g: &ModMap) -> Result<ModMap> {
        let f = self.field();
        let cover = &ext.cover;
        let n = &ext.n;
        // solve for g_hat in Hom(cover, cover) with cover_map ∘ g_hat = g ∘ cover_map
        let homs = self.hom(cover, cover)?;
        if homs.dim() == 0 {
            return Err(Error::InvalidRep("cover has no endomorphisms".into()));
        }
        let target = g.compose(&ext.cover_map);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut rhs: Vec<u64> = Vec::new();
        for v in 0..n.dims.len() {
            for i in 0..n.dims[v] {
                for j in 0..cover.dims[v] {
                    let row: Vec<u64> = homs
                        .basis
                        .iter()
                        .map(|h| ext.cover_map.mats[v].mul(&h.mats[v])[(i, j)])
                        .collect();
                    rows.push(row);
                    rhs.push(target.mats[v][(i, j)]);
                }
            }
        }
        let system = Mat::from_rows(f, rows);
        let sol = system
            .solve(&rhs)
            .ok_or_else(|| Error::InvalidRep("projective lifting failed".into()))?;
        let g_hat = homs.element(&sol);
        // restrict: solve inclusion ∘ omega_g = g_hat ∘ inclusion columnwise
        let mut mats = Vec::new();
        for v in 0..n.dims.len() {
            let rhs_m = g_hat.mats[v].mul(&ext.syz_inclusion.mats[v]);
            let d = ext.syz.dims[v];
            let mut local = Mat::zeros(f, d, d);
            for j in 0..d {
                let col = rhs_m.col_vec(j);
                let x = if d == 0 {
                    vec![]
                } else {
                    ext.syz_inclusion.mats[v]
                        .solve(&col)
                        .ok_or_else(|| Error::InvalidRep("lift does not preserve the syzygy".into()))?
                };
                for (i, &c) in x.iter().enumerate() {
                    local[(i, j)] = c;
                }
            }
            mats.push(local);
        }
        Ok(ModMap { mats })
    }

    /// The almost split lifting property of `seq` against a test module X:
    /// every non-isomorphism X -> N factors through the middle.
    pub fn lifting_property_holds(&self, seq: &ArSequence, x: &Rep) -> Result<bool> {
        let hom_xn = self.hom(x, &seq.right)?;
        if hom_xn.dim() == 0 {
            return Ok(true);
        }
        let f = self.field();
        let hom_xe = self.hom(x, &seq.middle)?;
        // image of composition with projection, in Hom(X, N) coordinates
        let mut image = crate::matrix::RowSpace::new(f, hom_xn.dim());
        let mut image_maps = Vec::new();
        for h in &hom_xe.basis {
            let c = seq.projection.compose(h);
            let coords = self.hom_coordinates(x, &seq.right, &c)?;
            if image.insert(coords) {
                image_maps.push(c);
            }
        }
        if self.is_isomorphic(x, &seq.right)? {
            // image must be exactly the non-isomorphisms: codimension one,
            // and no element of the image is invertible
            if image.dim() + 1 != hom_xn.dim() {
                return Ok(false);
            }
            Ok(image_maps.iter().all(|m| !m.is_invertible()))
        } else {
            Ok(image.dim() == hom_xn.dim())
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    v[i] = 1;
    v
}

/// One node of a knitted component.
#[derive(Debug, Clone)]
pub struct Node {
    pub rep: Rep,
    pub fingerprint: String,
    pub projective: bool,
}

/// Mesh data of the almost split sequence ending at a node.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub tau: usize,
    /// (node id, multiplicity, projective?)
    pub middle: Vec<(usize, usize, bool)>,
}

#[derive(Debug)]
pub struct Component {
    pub nodes: Vec<Node>,
    /// mesh ending at node id (non-projective expanded nodes only).
    pub meshes: BTreeMap<usize, Mesh>,
    /// irreducible-map multiplicities derived from meshes.
    pub arrows: BTreeMap<(usize, usize), usize>,
    /// nodes seen but not expanded (caps).
    pub frontier: Vec<usize>,
    pub seeds: Vec<usize>,
    /// true when expansion stopped because a cap was hit.
    pub capped: bool,
}

impl Component {
    pub fn stable_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| !self.nodes[i].projective)
            .collect()
    }

    pub fn find_node(&self, wb: &Workbench, rep: &Rep) -> Result<Option<usize>> {
        let fp = rep.fingerprint();
        for (i, node) in self.nodes.iter().enumerate() {
            if node.fingerprint == fp && wb.is_isomorphic(&node.rep, rep)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

pub struct KnitBounds {
    pub max_depth: usize,
    pub max_dim: usize,
    pub max_nodes: usize,
}

impl Default for KnitBounds {
    fn default() -> Self {
        KnitBounds {
            max_depth: 6,
            max_dim: 120,
            max_nodes: 160,
        }
    }
}

impl Workbench {
    /// Breadth-first mesh completion from the seeds, in both tau directions.
    pub fn knit(&self, seeds: &[Rep], bounds: &KnitBounds) -> Result<Component> {
        self.require_self_injective()?;
        let mut comp = Component {
            nodes: Vec::new(),
            meshes: BTreeMap::new(),
            arrows: BTreeMap::new(),
            frontier: Vec::new(),
            seeds: Vec::new(),
            capped: false,
        };
        let mut queue: std::collections::VecDeque<(usize, usize)> = Default::default();
        for seed in seeds {
            let s = self.strip_projectives(seed)?;
            if s.is_zero() {
                return Err(Error::ProjectiveInput);
            }
            let dec = self.decompose(&s)?;
            if dec.n_indecomposables() != 1 {
                return Err(Error::InvalidRep(
                    "knitting seeds must be indecomposable".into(),
                ));
            }
            let id = self.add_node(&mut comp, &s, false)?;
            comp.seeds.push(id);
            queue.push_back((id, 0));
        }
        let mut expanded = std::collections::BTreeSet::new();
        while let Some((id, depth)) = queue.pop_front() {
            if expanded.contains(&id) || comp.nodes[id].projective {
                continue;
            }
            if depth >= bounds.max_depth
                || comp.nodes[id].rep.dim() > bounds.max_dim
                || comp.nodes.len() > bounds.max_nodes
            {
                comp.capped = true;
                comp.frontier.push(id);
                continue;
            }
            expanded.insert(id);
            let rep = comp.nodes[id].rep.clone();
            let seq = self.ar_sequence(&rep)?;
            let tau_id = self.add_node(&mut comp, &seq.left, false)?;
            let mut middle = Vec::new();
            for (part, mult, proj) in &seq.middle_parts {
                let pid = self.add_node(&mut comp, part, *proj)?;
                middle.push((pid, *mult, *proj));
                insert_arrow(&mut comp.arrows, (pid, id), *mult);
                insert_arrow(&mut comp.arrows, (tau_id, pid), *mult);
                if !proj {
                    queue.push_back((pid, depth + 1));
                }
            }
            comp.meshes.insert(id, Mesh {
                tau: tau_id,
                middle,
            });
            queue.push_back((tau_id, depth + 1));
            // forward direction: tau^{-1}
            let forward = self.tau(&rep, -1)?;
            let fid = self.add_node(&mut comp, &forward, false)?;
            queue.push_back((fid, depth + 1));
        }
        comp.frontier.sort_unstable();
        comp.frontier.dedup();
        comp.frontier.retain(|id| !expanded.contains(id));
        Ok(comp)
    }

    fn add_node(&self, comp: &mut Component, rep: &Rep, projective: bool) -> Result<usize> {
        if let Some(i) = comp.find_node(self, rep)? {
            return Ok(i);
        }
        comp.nodes.push(Node {
            rep: rep.clone(),
            fingerprint: rep.fingerprint(),
            projective,
        });
        Ok(comp.nodes.len() - 1)
    }
}

fn insert_arrow(arrows: &mut BTreeMap<(usize, usize), usize>, key: (usize, usize), mult: usize) {
    let entry = arrows.entry(key).or_insert(mult);
    // the same arrow may be derived from the meshes on either side; the
    // multiplicities must agree
    debug_assert_eq!(*entry, mult, "inconsistent irreducible-map multiplicity");
    *entry = (*entry).max(mult);
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
    fn ar_sequence_over_dual_numbers() {
        // 0 -> S -> P -> S -> 0
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let s = w.simple(0);
        let seq = w.ar_sequence(&s).unwrap();
        assert!(w.is_isomorphic(&seq.left, &s).unwrap());
        assert_eq!(seq.middle.dim(), 2);
        assert!(seq.mesh_additive());
        assert_eq!(seq.middle_parts.len(), 1);
        assert!(seq.middle_parts[0].2, "middle must be projective");
        assert!(seq.stable_parts().is_empty());
        assert!(!w
            .sequence_splits(&seq.middle, &seq.projection, &seq.right)
            .unwrap());
    }

    #[test]
    fn ar_sequence_rejects_projectives() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let p = w.projective(0);
        assert!(matches!(w.ar_sequence(&p), Err(Error::ProjectiveInput)));
    }

    #[test]
    fn ar_sequence_on_serial_algebra() {
        // nakayama(3,2): 0 -> tau S1 -> M -> S1 -> 0 with M of length 2
        let w = Workbench::new(families::nakayama(3, 2, fp()).unwrap());
        let s1 = w.simple(0);
        let seq = w.ar_sequence(&s1).unwrap();
        assert!(seq.mesh_additive());
        // lifting property against every simple
        for v in 0..3 {
            let x = w.simple(v);
            assert!(w.lifting_property_holds(&seq, &x).unwrap());
        }
    }

    #[test]
    fn knit_local2_is_a_single_tau_loop() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let s = w.simple(0);
        let comp = w
            .knit(&[s.clone()], &KnitBounds {
                max_depth: 4,
                max_dim: 30,
                max_nodes: 30,
            })
            .unwrap();
        assert_eq!(comp.stable_nodes().len(), 1);
        let mesh = comp.meshes.get(&0).unwrap();
        assert_eq!(mesh.tau, 0, "tau loop");
        assert!(mesh.middle.iter().all(|(_, _, proj)| *proj));
    }
}
