//! Divergence ladders and the machine-checkable obstruction certificates.
//!
//! Given a rank-n tube and a stable semibrick, the two ladder families are
//!   kind 1:  M_r = Omega(X_{i-r}(r+1)),            r >= 1,
//!   kind 2:  M_l = Omega(X_i(m n + j_t)),          l = (a+1) m + t,
//! where n = j_0 > j_1 > ... > j_a >= 1 is the descent recovered from the
//! semibrick. The certifier verifies, for every ladder index up to the
//! requested depth, that the member is isomorphic to no semibrick element
//! and that each nonvanishing stable Hom to the semibrick is one-dimensional
//! with cocone a strictly later ladder member. Replay re-verifies all of it
//! from the JSON payload alone, with no knitting.

use crate::dsl;
use crate::error::{Error, Result};
use crate::rep::{ModMap, Rep};
use crate::tube::TubeInfo;
use crate::workbench::Workbench;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LadderKind {
    Theorem1,
    Theorem2,
}

#[derive(Debug, Clone)]
pub struct StratLadder {
    pub kind: LadderKind,
    /// Base quasi-simple index i (1-based).
    pub base: usize,
    pub rank: usize,
    /// Theorem-2 descent j_0 > j_1 > ... > j_a, with j_0 = rank.
    pub descent: Vec<usize>,
}

impl StratLadder {
    pub fn theorem1(base: usize, rank: usize) -> Self {
        StratLadder {
            kind: LadderKind::Theorem1,
            base,
            rank,
            descent: vec![rank],
        }
    }

    pub fn theorem2(base: usize, rank: usize, descent: Vec<usize>) -> Self {
        assert!(descent.first() == Some(&rank));
        assert!(descent.windows(2).all(|w| w[0] > w[1]));
        StratLadder {
            kind: LadderKind::Theorem2,
            base,
            rank,
            descent,
        }
    }

    /// First ladder index: 1 for kind 1 (M_r, r >= 1), 0 for kind 2.
    pub fn start(&self) -> usize {
        match self.kind {
            LadderKind::Theorem1 => 1,
            LadderKind::Theorem2 => 0,
        }
    }

    /// Tube coordinates (i, quasi-length) of the module whose syzygy is the
    /// ladder member at `index`.
    pub fn member_coords(&self, index: usize) -> (i64, usize) {
        match self.kind {
            LadderKind::Theorem1 => {
                let r = index;
                (self.base as i64 - r as i64, r + 1)
            }
            LadderKind::Theorem2 => {
                let period = self.descent.len(); // a + 1
                let m = index / period;
                let t = index % period;
                (self.base as i64, m * self.rank + self.descent[t])
            }
        }
    }

    /// Quasi-length needed in the tube to build members up to `index`.
    pub fn needed_depth(&self, index: usize) -> usize {
        (self.start()..=index)
            .map(|l| self.member_coords(l).1)
            .max()
            .unwrap_or(1)
    }
}

impl Workbench {
    /// The ladder member M_index as a module.
    pub fn ladder_member(
        &self,
        tube: &TubeInfo,
        ladder: &StratLadder,
        index: usize,
    ) -> Result<Rep> {
        let (i, ql) = ladder.member_coords(index);
        let x = tube.module_at(tube.wrap(i), ql)?;
        self.syzygy(&x, 1)
    }

    /// Recover the theorem-2 descent j_1 > ... > j_a from the semibrick:
    /// j_t is the unique j < j_{t-1} with Omega(X_{i+j}(j_{t-1} - j))
    /// isomorphic to a member, scanned exactly as uniqueness prescribes.
    pub fn recover_descent(
        &self,
        tube: &TubeInfo,
        base: usize,
        set: &[Rep],
    ) -> Result<Vec<usize>> {
        let n = tube.rank;
        let mut descent = vec![n];
        loop {
            let j_prev = *descent.last().unwrap();
            let mut found = None;
            for j in 1..j_prev {
                let x = tube.module_at(tube.wrap(base as i64 + j as i64), j_prev - j)?;
                let candidate = self.syzygy(&x, 1)?;
                for s in set {
                    if self.is_isomorphic(&candidate, s)? {
                        found = Some(j);
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            match found {
                Some(j) => descent.push(j),
                None => return Ok(descent),
            }
        }
    }
}

// ---- certificates ----

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertTriangle {
    /// Index into `set` of the target T.
    pub target: usize,
    /// The witnessing stable map M_l -> T, one matrix (rows) per vertex in
    /// algebra vertex order.
    pub map: Vec<Vec<Vec<u64>>>,
    /// The cocone N of the triangle N -> M_l -> T.
    pub cocone: serde_json::Value,
    /// N must be isomorphic to the ladder member with this index.
    pub cocone_member: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertStep {
    pub index: usize,
    /// stable Hom dimensions from members[index] to each set element.
    pub sthom_dims: Vec<usize>,
    pub triangles: Vec<CertTriangle>,
}

/// A machine-checkable record that `set` cannot be a simple-minded system:
/// the listed modules form an infinite filtration ladder to the stated
/// depth. Every field is load-bearing for replay.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub algebra_dsl: String,
    /// The stable semibrick under test.
    pub set: Vec<serde_json::Value>,
    /// Ladder members M_start .. M_{depth+1}, indexed from `start`.
    pub start: usize,
    pub members: Vec<serde_json::Value>,
    pub depth: usize,
    pub steps: Vec<CertStep>,
    /// Provenance, not re-verified: ladder kind, base index, rank, descent.
    pub context: serde_json::Value,
}

pub const CERT_FORMAT: &str = "stmod-certificate-v1";

impl Workbench {
    /// Verify the two ladder conditions to `depth` and assemble the
    /// certificate.
    pub fn main_strat_certify(
        &self,
        tube: &TubeInfo,
        ladder: &StratLadder,
        set: &[Rep],
        depth: usize,
    ) -> Result<Certificate> {
        let start = ladder.start();
        let last = depth + 1;
        if ladder.needed_depth(last) > tube.verified_depth {
            return Err(Error::DepthExceeded(format!(
                "ladder needs quasi-length {} but the tube is verified to {}",
                ladder.needed_depth(last),
                tube.verified_depth
            )));
        }
        let semibrick = self.semibrick_check(set)?;
        if !semibrick.verdict.passed() {
            return Err(Error::HypothesisUnmet(format!(
                "the given set is not a stable semibrick: {:?}",
                semibrick.verdict
            )));
        }
        let members: Vec<Rep> = (start..=last)
            .map(|l| self.ladder_member(tube, ladder, l))
            .collect::<Result<Vec<_>>>()?;
        // ladder members must be pairwise non-isomorphic
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                if self.is_isomorphic(&members[a], &members[b])? {
                    return Err(Error::ConditionFailed {
                        index: start + b,
                        member: format!("M_{}", start + a),
                        detail: "ladder members must be pairwise non-isomorphic".into(),
                    });
                }
            }
        }
        let mut steps = Vec::new();
        for l in start..=depth {
            let m_l = &members[l - start];
            // condition (i)
            for (t, s) in set.iter().enumerate() {
                if self.is_isomorphic(m_l, s)? {
                    return Err(Error::ConditionFailed {
                        index: l,
                        member: format!("set[{t}]"),
                        detail: "ladder member lies in the set".into(),
                    });
                }
            }
            // condition (ii)
            let mut sthom_dims = Vec::new();
            let mut triangles = Vec::new();
            for (t, s) in set.iter().enumerate() {
                let st = self.sthom(m_l, s)?;
                sthom_dims.push(st.stable_dim);
                match st.stable_dim {
                    0 => {}
                    1 => {
                        let f = st.stable_rep(&[1]);
                        let (n, splits) = self.cocone(m_l, s, &f)?;
                        if splits {
                            return Err(Error::ConditionFailed {
                                index: l,
                                member: format!("set[{t}]"),
                                detail: "witness triangle unexpectedly splits".into(),
                            });
                        }
                        // every summand of N must be a later ladder member
                        let mut matched = None;
                        for (k, cand) in members.iter().enumerate() {
                            let idx = start + k;
                            if idx > l && self.is_isomorphic(&n, cand)? {
                                matched = Some(idx);
                                break;
                            }
                        }
                        let Some(idx) = matched else {
                            return Err(Error::ConditionFailed {
                                index: l,
                                member: format!("set[{t}]"),
                                detail: "cocone is not a later ladder member".into(),
                            });
                        };
                        triangles.push(CertTriangle {
                            target: t,
                            map: f.mats.iter().map(|m| m.rows_vec()).collect(),
                            cocone: n.to_json(),
                            cocone_member: idx,
                        });
                    }
                    d => {
                        return Err(Error::ConditionFailed {
                            index: l,
                            member: format!("set[{t}]"),
                            detail: format!("stable Hom has dimension {d} > 1"),
                        });
                    }
                }
            }
            steps.push(CertStep {
                index: l,
                sthom_dims,
                triangles,
            });
        }
        Ok(Certificate {
            format: CERT_FORMAT.into(),
            algebra_dsl: dsl::print_algebra(&self.algebra),
            set: set.iter().map(Rep::to_json).collect(),
            start,
            members: members.iter().map(Rep::to_json).collect(),
            depth,
            steps,
            context: serde_json::json!({
                "kind": match ladder.kind {
                    LadderKind::Theorem1 => "theorem1",
                    LadderKind::Theorem2 => "theorem2",
                },
                "base_index": ladder.base,
                "rank": ladder.rank,
                "descent": ladder.descent,
            }),
        })
    }
}

/// Re-verify a certificate from its JSON alone. No knitting: the checks are
/// exactly the filtration-ladder conditions on the embedded modules.
pub fn replay(json: &serde_json::Value) -> Result<()> {
    let cert: Certificate = serde_json::from_value(json.clone())
        .map_err(|e| Error::InvalidCertificate(format!("malformed certificate: {e}")))?;
    if cert.format != CERT_FORMAT {
        return Err(Error::InvalidCertificate(format!(
            "unknown format `{}`",
            cert.format
        )));
    }
    let algebra = dsl::parse_algebra(&cert.algebra_dsl)
        .map_err(|e| Error::InvalidCertificate(format!("embedded algebra invalid: {e}")))?;
    let wb = Workbench::new(algebra.clone());
    let fail = |msg: String| Error::InvalidCertificate(msg);
    let set: Vec<Rep> = cert
        .set
        .iter()
        .map(|j| Rep::from_json(&algebra, j))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| fail(format!("set module invalid: {e}")))?;
    let members: Vec<Rep> = cert
        .members
        .iter()
        .map(|j| Rep::from_json(&algebra, j))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| fail(format!("ladder member invalid: {e}")))?;
    if members.len() != cert.depth + 2 - cert.start {
        return Err(fail("member count does not match depth".into()));
    }
    if cert.steps.len() != cert.depth + 1 - cert.start {
        return Err(fail("step count does not match depth".into()));
    }
    // the set must be a stable semibrick
    let sb = wb.semibrick_check(&set)?;
    if !sb.verdict.passed() {
        return Err(fail(format!("set is not a stable semibrick: {:?}", sb.verdict)));
    }
    // members: indecomposable, non-projective, pairwise non-isomorphic
    for (k, m) in members.iter().enumerate() {
        if wb.is_projective(m)? {
            return Err(fail(format!("member {k} is projective")));
        }
        if wb.decompose(m)?.n_indecomposables() != 1 {
            return Err(fail(format!("member {k} is decomposable")));
        }
    }
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            if wb.is_isomorphic(&members[a], &members[b])? {
                return Err(fail(format!("members {a} and {b} are isomorphic")));
            }
        }
    }
    for (pos, step) in cert.steps.iter().enumerate() {
        if step.index != cert.start + pos {
            return Err(fail(format!("step {pos} has wrong index {}", step.index)));
        }
        let m_l = &members[pos];
        if step.sthom_dims.len() != set.len() {
            return Err(fail(format!("step {pos}: wrong number of dimensions")));
        }
        for (t, s) in set.iter().enumerate() {
            if wb.is_isomorphic(m_l, s)? {
                return Err(fail(format!(
                    "step {pos}: ladder member is isomorphic to set[{t}]"
                )));
            }
            let d = wb.sthom_dim(m_l, s)?;
            if d != step.sthom_dims[t] {
                return Err(fail(format!(
                    "step {pos}: stable Hom to set[{t}] has dimension {d}, certificate says {}",
                    step.sthom_dims[t]
                )));
            }
            if d > 1 {
                return Err(fail(format!(
                    "step {pos}: stable Hom to set[{t}] is {d}-dimensional"
                )));
            }
            let listed = step.triangles.iter().filter(|tr| tr.target == t).count();
            if (d == 1) != (listed == 1) {
                return Err(fail(format!(
                    "step {pos}: triangle coverage for set[{t}] does not match dimension {d}"
                )));
            }
        }
        for tri in &step.triangles {
            let t = tri.target;
            if t >= set.len() {
                return Err(fail(format!("step {pos}: triangle target out of range")));
            }
            let s = &set[t];
            // rebuild the map and verify it
            let mut mats = Vec::new();
            for (v, rows) in tri.map.iter().enumerate() {
                let rows_d = s.dims[v];
                let cols_d = m_l.dims[v];
                if rows.len() != rows_d || rows.iter().any(|r| r.len() != cols_d) {
                    return Err(fail(format!("step {pos}: witness map shape mismatch")));
                }
                let mut m = crate::matrix::Mat::zeros(wb.field(), rows_d, cols_d);
                for (i, row) in rows.iter().enumerate() {
                    for (j, &x) in row.iter().enumerate() {
                        m[(i, j)] = x % wb.field().p();
                    }
                }
                mats.push(m);
            }
            if tri.map.len() != m_l.dims.len() {
                return Err(fail(format!("step {pos}: witness map vertex count")));
            }
            let f = ModMap { mats };
            if !f.intertwines(m_l, s) {
                return Err(fail(format!("step {pos}: witness map is not a module map")));
            }
            let st = wb.sthom(m_l, s)?;
            let coords = wb.hom_coordinates(m_l, s, &f)?;
            if st.is_stably_zero(&coords) {
                return Err(fail(format!(
                    "step {pos}: witness map factors through a projective"
                )));
            }
            let (n, splits) = wb.cocone(m_l, s, &f)?;
            if splits {
                return Err(fail(format!("step {pos}: witness triangle splits")));
            }
            let stored = Rep::from_json(&algebra, &tri.cocone)
                .map_err(|e| fail(format!("step {pos}: stored cocone invalid: {e}")))?;
            if !wb.is_isomorphic(&n, &stored)? {
                return Err(fail(format!(
                    "step {pos}: stored cocone does not match the computed one"
                )));
            }
            if tri.cocone_member <= step.index {
                return Err(fail(format!(
                    "step {pos}: cocone member index must exceed the step index"
                )));
            }
            let idx = tri
                .cocone_member
                .checked_sub(cert.start)
                .filter(|&k| k < members.len())
                .ok_or_else(|| fail(format!("step {pos}: cocone member out of range")))?;
            if !wb.is_isomorphic(&n, &members[idx])? {
                return Err(fail(format!(
                    "step {pos}: cocone is not the claimed ladder member"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem1_member_coordinates() {
        let l = StratLadder::theorem1(1, 2);
        assert_eq!(l.member_coords(1), (0, 2)); // X_{i-1}(2)
        assert_eq!(l.member_coords(2), (-1, 3));
        assert_eq!(l.needed_depth(6), 7);
    }

    #[test]
    fn theorem2_member_coordinates() {
        // n = 3, descent 3 > 1: period 2
        let l = StratLadder::theorem2(2, 3, vec![3, 1]);
        assert_eq!(l.member_coords(0), (2, 3)); // m=0, t=0: X_i(3)
        assert_eq!(l.member_coords(1), (2, 1)); // m=0, t=1: X_i(1)
        assert_eq!(l.member_coords(2), (2, 6)); // m=1, t=0: X_i(3+3)
        assert_eq!(l.member_coords(3), (2, 4));
    }
}
