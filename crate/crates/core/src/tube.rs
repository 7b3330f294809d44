//! Tube detection and coordinates on knitted components.
//!
//! The stable part of a component is matched against ZA_infinity / <tau^n>
//! up to the knitted depth: mouth nodes are the stable nodes whose mesh has
//! exactly one stable summand, the rank is the tau-period of the mouth
//! orbit, and quasi-length coordinates are assigned along the unique
//! sectional paths starting at the mouth. Indexing follows tau X_i =
//! X_{i-1}, with X_1 the lexicographically smallest mouth fingerprint.

use crate::arknit::Component;
use crate::error::{Error, Result};
use crate::rep::Rep;
use crate::workbench::Workbench;
use std::collections::BTreeMap;

#[derive(Debug)]
pub struct TubeInfo {
    pub component: Component,
    pub rank: usize,
    /// Node ids of the quasi-simples X_1 .. X_n with tau X_i = X_{i-1}.
    pub quasi_simples: Vec<usize>,
    /// node id -> (i, r) meaning X_i(r); 1-based i, r >= 1.
    pub coords: BTreeMap<usize, (usize, usize)>,
    pub verified_depth: usize,
}

/// A wing: the triangular coordinate region under X_j(l).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Wing {
    pub j: usize,
    pub l: usize,
    /// coordinate pairs (i, r), 1-based.
    pub members: Vec<(usize, usize)>,
}

impl TubeInfo {
    /// 1-based index arithmetic mod rank.
    pub fn wrap(&self, i: i64) -> usize {
        let n = self.rank as i64;
        (((i - 1) % n + n) % n + 1) as usize
    }

    pub fn node_at(&self, i: usize, r: usize) -> Option<usize> {
        self.coords
            .iter()
            .find(|(_, &(ci, cr))| ci == self.wrap(i as i64) && cr == r)
            .map(|(&id, _)| id)
    }

    /// X_i(r); fails with DepthExceeded beyond the verified depth.
    pub fn module_at(&self, i: usize, r: usize) -> Result<Rep> {
        if r == 0 {
            return Err(Error::BadParameter("quasi-length 0 is the zero module".into()));
        }
        match self.node_at(i, r) {
            Some(id) => Ok(self.component.nodes[id].rep.clone()),
            None => Err(Error::DepthExceeded(format!(
                "X_{i}({r}) lies beyond verified depth {}",
                self.verified_depth
            ))),
        }
    }

    /// [r]X_i = X_{i-r+1}(r): the sectional path ending at X_i.
    pub fn module_ending_at(&self, i: usize, r: usize) -> Result<Rep> {
        self.module_at(self.wrap(i as i64 - r as i64 + 1), r)
    }

    /// The wing of X_j(l): { X_{j+d}(h) : d >= 0, h >= 1, d + h <= l }.
    pub fn wing(&self, j: usize, l: usize) -> Wing {
        let mut members = Vec::new();
        for d in 0..l {
            for h in 1..=l.saturating_sub(d) {
                members.push((self.wrap(j as i64 + d as i64), h));
            }
        }
        Wing { j, l, members }
    }

    pub fn wing_contains(&self, wing: &Wing, i: usize, r: usize) -> bool {
        wing.members.contains(&(self.wrap(i as i64), r))
    }

    /// Quasi-length of a module in this tube, if present.
    pub fn coords_of(&self, wb: &Workbench, rep: &Rep) -> Result<Option<(usize, usize)>> {
        match self.component.find_node(wb, rep)? {
            Some(id) => Ok(self.coords.get(&id).copied()),
            None => Ok(None),
        }
    }
}

impl Workbench {
    /// Classify the stable part of a knitted component as a tube.
    pub fn tube_info(&self, component: Component) -> Result<TubeInfo> {
        let expanded: Vec<usize> = component.meshes.keys().copied().collect();
        if expanded.is_empty() {
            return Err(Error::NotQuasiSerial("no meshes knitted".into()));
        }
        // mouths: expanded stable nodes whose mesh has exactly one stable
        // middle summand, counted with multiplicity
        let mut mouths = Vec::new();
        for &id in &expanded {
            let mesh = &component.meshes[&id];
            let stable_count: usize = mesh
                .middle
                .iter()
                .filter(|(_, _, proj)| !proj)
                .map(|(_, m, _)| m)
                .sum();
            match stable_count {
                0 => {
                    return Err(Error::NotQuasiSerial(format!(
                        "node {id} has an empty stable mesh (finite component)"
                    )))
                }
                1 => mouths.push(id),
                2 => {}
                _ => {
                    return Err(Error::NotQuasiSerial(format!(
                        "node {id} has {stable_count} stable mesh summands"
                    )))
                }
            }
        }
        if mouths.is_empty() {
            return Err(Error::NotQuasiSerial(
                "no mouth found within the knitted depth".into(),
            ));
        }
        // X_1 = lexicographically smallest mouth fingerprint (ties broken by
        // content key for determinism)
        let mut mouth_sorted = mouths.clone();
        mouth_sorted.sort_by(|&a, &b| {
            component.nodes[a]
                .fingerprint
                .cmp(&component.nodes[b].fingerprint)
                .then_with(|| {
                    component.nodes[a]
                        .rep
                        .content_key()
                        .cmp(&component.nodes[b].rep.content_key())
                })
        });
        let x1 = mouth_sorted[0];
        // tau orbit of the mouth: X_1, tau X_1, tau^2 X_1, ...
        let mut orbit = vec![x1];
        let mut cur = x1;
        let rank = loop {
            let t = self.tau(&component.nodes[cur].rep, 1)?;
            let tid = component.find_node(self, &t)?.ok_or_else(|| {
                Error::NotQuasiSerial(
                    "mouth tau-orbit leaves the knitted region; increase the depth".into(),
                )
            })?;
            if tid == x1 {
                break orbit.len();
            }
            if orbit.contains(&tid) {
                return Err(Error::NotQuasiSerial(
                    "tau orbit of the mouth is not a simple cycle".into(),
                ));
            }
            orbit.push(tid);
            cur = tid;
            if orbit.len() > component.nodes.len() {
                return Err(Error::NotQuasiSerial("tau orbit does not close".into()));
            }
        };
        // verify every orbit member is itself a mouth
        for &id in &orbit {
            if !mouths.contains(&id) {
                return Err(Error::NotQuasiSerial(format!(
                    "tau-orbit node {id} of the mouth is not a mouth"
                )));
            }
        }
        // tau X_i = X_{i-1}: orbit[k] = tau^k X_1, so X_i = orbit[(n+1-i) mod n]
        let mut quasi_simples = vec![0usize; rank];
        quasi_simples[0] = x1;
        for i in 2..=rank {
            quasi_simples[i - 1] = orbit[(rank + 1 - i) % rank];
        }
        // coordinates along sectional paths: X_i(r+1) is the stable mesh
        // summand of X_{i+1}(r) other than X_{i+1}(r-1)
        let mut coords: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for (i, &id) in quasi_simples.iter().enumerate() {
            coords.insert(id, (i + 1, 1));
        }
        let mut level: Vec<usize> = quasi_simples.clone(); // X_i(r) by i
        let mut below: Vec<Option<usize>> = vec![None; rank]; // X_i(r-1)
        let mut verified_depth = 1;
        'grow: loop {
            let r = verified_depth;
            let mut next: Vec<usize> = Vec::with_capacity(rank);
            for i in 1..=rank {
                // use the mesh ending at X_{i+1}(r)
                let ip1 = if i == rank { 1 } else { i + 1 };
                let y = level[ip1 - 1];
                let Some(mesh) = component.meshes.get(&y) else {
                    break 'grow;
                };
                // expected tau: X_i(r)
                if mesh.tau != level[i - 1] {
                    return Err(Error::NotQuasiSerial(format!(
                        "tau of node {y} is {} but the tube pattern expects {}",
                        mesh.tau,
                        level[i - 1]
                    )));
                }
                let stable: Vec<(usize, usize)> = mesh
                    .middle
                    .iter()
                    .filter(|(_, _, proj)| !proj)
                    .map(|(n, m, _)| (*n, *m))
                    .collect();
                let expected_low = below[ip1 - 1];
                let candidates: Vec<usize> = stable
                    .iter()
                    .flat_map(|&(n, m)| std::iter::repeat(n).take(m))
                    .collect();
                let up = match (expected_low, candidates.as_slice()) {
                    (None, [one]) => *one,
                    (Some(low), [a, b]) => {
                        if *a == low {
                            *b
                        } else if *b == low {
                            *a
                        } else {
                            return Err(Error::NotQuasiSerial(format!(
                                "mesh at node {y} does not contain the expected lower summand"
                            )));
                        }
                    }
                    _ => {
                        return Err(Error::NotQuasiSerial(format!(
                            "mesh at node {y} has an unexpected stable shape"
                        )))
                    }
                };
                // up = X_i(r+1)
                if let Some(&(pi, pr)) = coords.get(&up) {
                    if (pi, pr) != (i, r + 1) {
                        return Err(Error::NotQuasiSerial(format!(
                            "node {up} would get coordinates ({i},{}) but already has ({pi},{pr})",
                            r + 1
                        )));
                    }
                }
                coords.insert(up, (i, r + 1));
                next.push(up);
            }
            below = level.iter().copied().map(Some).collect();
            level = next;
            verified_depth += 1;
        }
        Ok(TubeInfo {
            component,
            rank,
            quasi_simples,
            coords,
            verified_depth,
        })
    }

    /// Knit from a seed and classify; convenience wrapper.
    pub fn knit_tube(&self, seed: &Rep, bounds: &crate::arknit::KnitBounds) -> Result<TubeInfo> {
        let comp = self.knit(&[seed.clone()], bounds)?;
        self.tube_info(comp)
    }
}

/// Outcome of a sectional-triangle existence check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TriangleWitness {
    /// stable-Hom coordinates of the witnessing class.
    pub class: Vec<u64>,
    pub middle_dims: Vec<usize>,
    pub split: bool,
}

impl Workbench {
    /// Verify the sectional triangle: a short exact sequence
    ///   0 -> X_i(l) -> X_i(l+j) ⊕ P -> tau^{-l} X_i(j) -> 0,
    /// or, with `ses2_l = Some(l)` and quasi-length r = l' of the first
    /// argument, the two-summand variant
    ///   0 -> X_i(r) -> X_i(r+j) ⊕ tau^{-l} X_i(r-l) ⊕ P -> tau^{-l} X_i(r-l+j) -> 0.
    /// Searches Ext^1 classes and decomposes the materialized middles.
    pub fn sectional_triangle_check(
        &self,
        tube: &TubeInfo,
        i: usize,
        l: usize,
        j: usize,
        ses2_l: Option<usize>,
    ) -> Result<TriangleWitness> {
        let (sub, quot, expected): (Rep, Rep, Vec<Rep>) = match ses2_l {
            None => {
                let sub = tube.module_at(i, l)?;
                let quot = tube.module_at(tube.wrap(i as i64 + l as i64), j)?;
                let mid = tube.module_at(i, l + j)?;
                (sub, quot, vec![mid])
            }
            Some(cut) => {
                let r = l;
                if !(1..=r).contains(&cut) {
                    return Err(Error::BadParameter("need 1 <= l <= r".into()));
                }
                let sub = tube.module_at(i, r)?;
                let quot = tube.module_at(tube.wrap(i as i64 + cut as i64), r - cut + j)?;
                let mid1 = tube.module_at(i, r + j)?;
                if r == cut {
                    (sub, quot, vec![mid1])
                } else {
                    let mid2 = tube.module_at(tube.wrap(i as i64 + cut as i64), r - cut)?;
                    (sub, quot, vec![mid1, mid2])
                }
            }
        };
        let ext = self.ext1(&quot, &sub)?;
        let d = ext.dim();
        if d == 0 {
            return Err(Error::NotFound(
                "Ext^1 vanishes; no non-split sequence exists".into(),
            ));
        }
        let classes = sweep_classes(self.field().p(), d)?;
        for class in classes {
            let phi = ext.classes.stable_rep(&class);
            let (e, _, _) = self.materialize_extension(&ext, &phi)?;
            let stripped = self.strip_projectives(&e)?;
            let (want, _) = Rep::direct_sum_many(&self.algebra, &expected);
            if self.is_isomorphic(&stripped, &want)? {
                return Ok(TriangleWitness {
                    class,
                    middle_dims: e.dims.clone(),
                    split: false,
                });
            }
        }
        Err(Error::NotFound(
            "no extension class materializes the expected middle".into(),
        ))
    }
}

/// All nonzero stable classes up to scalar: one representative per
/// projective point, first nonzero coordinate normalized to 1.
pub fn sweep_classes(p: u64, dim: usize) -> Result<Vec<Vec<u64>>> {
    let count = p.checked_pow(dim as u32);
    if count.is_none() || count.unwrap() > 1_000_000 {
        return Err(Error::CapExceeded(format!(
            "stable-Hom dimension {dim} over F_{p} exceeds the sweep cap"
        )));
    }
    let mut out = Vec::new();
    for lead in 0..dim {
        // coordinates before `lead` are zero, coordinate `lead` is 1
        let free = dim - lead - 1;
        let total = p.pow(free as u32);
        for mut t in 0..total {
            let mut v = vec![0u64; dim];
            v[lead] = 1;
            for slot in 0..free {
                v[lead + 1 + slot] = t % p;
                t /= p;
            }
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arknit::KnitBounds;
    use crate::families;
    use crate::field::Fp;

    fn fp() -> Fp {
        Fp::new(101).unwrap()
    }

    #[test]
    fn local2_is_not_quasi_serial() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let comp = w
            .knit(&[w.simple(0)], &KnitBounds::default())
            .unwrap();
        assert!(matches!(
            w.tube_info(comp),
            Err(Error::NotQuasiSerial(_))
        ));
    }

    #[test]
    fn sweep_classes_counts() {
        let cls = sweep_classes(3, 2).unwrap();
        // (3^2 - 1) / (3 - 1) = 4 projective points
        assert_eq!(cls.len(), 4);
        assert!(sweep_classes(101, 4).is_err());
    }
}
