//! Classification of module systems (semibrick / wsms / sms / maximal
//! orthogonal) and exhaustive sms enumeration on representation-finite
//! algebras.
//!
//! The sms flag is only ever decided against a certified-complete universe:
//! knitting from all simples must saturate with an empty frontier.

use crate::arknit::KnitBounds;
use crate::error::{Error, Result};
use crate::rep::Rep;
use crate::sms::closure::sort_reps;
use crate::stable::Verdict;
use crate::workbench::Workbench;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct SystemReport {
    pub semibrick: Verdict,
    pub pair_matrix: Vec<Vec<usize>>,
    /// Some(..) only when a certified universe was available.
    pub wsms: Option<bool>,
    pub sms: Option<bool>,
    pub maximal_orthogonal: Option<bool>,
    pub notes: Vec<String>,
}

impl Workbench {
    /// All non-projective indecomposables when the algebra is certifiably
    /// representation-finite (knitting from every simple saturates), else
    /// None.
    pub fn knit_universe(&self, bounds: &KnitBounds) -> Result<Option<Vec<Rep>>> {
        self.require_self_injective()?;
        let seeds: Vec<Rep> = (0..self.algebra.quiver.n_vertices())
            .map(|v| self.simple(v))
            .collect();
        let comp = self.knit(&seeds, bounds)?;
        if comp.capped || !comp.frontier.is_empty() {
            return Ok(None);
        }
        let mut out: Vec<Rep> = comp
            .stable_nodes()
            .into_iter()
            .map(|i| comp.nodes[i].rep.clone())
            .collect();
        sort_reps(&mut out);
        Ok(Some(out))
    }

    /// Flags per the three definitions. `universe` should be the certified
    /// complete list of non-projective indecomposables when available.
    pub fn classify_system(
        &self,
        set: &[Rep],
        universe: Option<&[Rep]>,
        closure_cap: usize,
    ) -> Result<SystemReport> {
        let sb = self.semibrick_check(set)?;
        let mut notes = Vec::new();
        let is_semibrick = sb.verdict.passed();
        let (wsms, sms) = match universe {
            None => {
                notes.push(
                    "universe not certified representation-finite: wsms and sms flags refused"
                        .into(),
                );
                (None, None)
            }
            Some(u) => {
                // spans: every X in the universe admits a nonzero stable map
                // to some member (existential reading of the spanning
                // condition)
                let mut spans = true;
                for x in u {
                    let mut hit = false;
                    for t in set {
                        if self.sthom_dim(x, t)? > 0 {
                            hit = true;
                            break;
                        }
                    }
                    if !hit {
                        spans = false;
                        break;
                    }
                }
                let wsms = is_semibrick && spans;
                let sms = if is_semibrick {
                    let st = self.closure(set, closure_cap, Some(u))?;
                    let mut covered = true;
                    for x in u {
                        if st.contains(self, x)?.is_none() {
                            covered = false;
                            break;
                        }
                    }
                    if !st.saturated && !covered {
                        notes.push(format!(
                            "closure did not saturate within cap {closure_cap}; sms flag refused"
                        ));
                        None
                    } else {
                        Some(covered)
                    }
                } else {
                    Some(false)
                };
                (Some(wsms), sms)
            }
        };
        let maximal_orthogonal = match wsms {
            None => None,
            Some(false) => Some(false),
            Some(true) => {
                let mut ok = true;
                for t in set {
                    let tau_t = self.tau(t, 1)?;
                    if self.is_isomorphic(&tau_t, t)? {
                        ok = false;
                        notes.push("a member is tau-periodic of period 1".into());
                        break;
                    }
                }
                Some(ok)
            }
        };
        Ok(SystemReport {
            semibrick: sb.verdict,
            pair_matrix: sb.pair_matrix,
            wsms,
            sms,
            maximal_orthogonal,
            notes,
        })
    }

    /// All simple-minded systems over a certified-complete universe:
    /// enumerate stable bricks, build the orthogonality graph, walk the
    /// independent sets, and keep those whose closure covers the universe.
    pub fn enumerate_sms(&self, universe: &[Rep], closure_cap: usize) -> Result<Vec<Vec<Rep>>> {
        self.require_self_injective()?;
        if universe.is_empty() {
            return Err(Error::UniverseIncomplete("empty universe".into()));
        }
        let mut bricks = Vec::new();
        for x in universe {
            let end = self.end_data(x)?;
            if end.residue_dim != 1 {
                continue;
            }
            if self.sthom_dim(x, x)? == 1 {
                bricks.push(x.clone());
            }
        }
        sort_reps(&mut bricks);
        let k = bricks.len();
        let mut orth = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    orth[i][j] = self.sthom_dim(&bricks[i], &bricks[j])? == 0;
                }
            }
        }
        let compatible =
            |chosen: &[usize], c: usize| chosen.iter().all(|&i| orth[i][c] && orth[c][i]);
        let mut found: Vec<Vec<Rep>> = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
        while let Some((chosen, from)) = stack.pop() {
            if !chosen.is_empty() {
                let set: Vec<Rep> = chosen.iter().map(|&i| bricks[i].clone()).collect();
                let st = self.closure(&set, closure_cap, Some(universe))?;
                let mut covered = true;
                for x in universe {
                    if st.contains(self, x)?.is_none() {
                        covered = false;
                        break;
                    }
                }
                if covered && !st.saturated {
                    // covered within the cap is still a certificate
                }
                if covered {
                    found.push(set);
                }
            }
            for c in from..k {
                if compatible(&chosen, c) {
                    let mut next = chosen.clone();
                    next.push(c);
                    stack.push((next, c + 1));
                }
            }
        }
        // deterministic output order: by size then by member keys
        found.sort_by(|a, b| {
            a.len().cmp(&b.len()).then_with(|| {
                let ka: Vec<Vec<u64>> = a.iter().map(Rep::content_key).collect();
                let kb: Vec<Vec<u64>> = b.iter().map(Rep::content_key).collect();
                ka.cmp(&kb)
            })
        });
        Ok(found)
    }

    /// First universe member isomorphic to each of the given reps; errors if
    /// a rep is not in the universe.
    pub fn locate_in_universe(&self, universe: &[Rep], reps: &[Rep]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for r in reps {
            let mut hit = None;
            for (i, u) in universe.iter().enumerate() {
                if self.is_isomorphic(u, r)? {
                    hit = Some(i);
                    break;
                }
            }
            out.push(hit.ok_or_else(|| {
                Error::UniverseIncomplete("module not found in the universe".into())
            })?);
        }
        Ok(out)
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

    fn bounds() -> KnitBounds {
        KnitBounds {
            max_depth: 10,
            max_dim: 60,
            max_nodes: 60,
        }
    }

    #[test]
    fn universe_of_local2() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let u = w.knit_universe(&bounds()).unwrap().unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u[0].dim(), 1);
    }

    #[test]
    fn universe_of_nakayama_3_3() {
        // non-projective indecomposables: lengths 1 and 2 at each of the
        // three vertices
        let w = Workbench::new(families::nakayama(3, 3, fp()).unwrap());
        let u = w.knit_universe(&bounds()).unwrap().unwrap();
        assert_eq!(u.len(), 6);
    }

    #[test]
    fn representation_infinite_universe_refused() {
        let w = Workbench::new(families::a_family(2, fp()).unwrap());
        let u = w
            .knit_universe(&KnitBounds {
                max_depth: 5,
                max_dim: 40,
                max_nodes: 40,
            })
            .unwrap();
        assert!(u.is_none());
    }

    #[test]
    fn enumerate_sms_on_local2() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let u = w.knit_universe(&bounds()).unwrap().unwrap();
        let all = w.enumerate_sms(&u, 6).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].len(), 1);
        assert!(w.is_isomorphic(&all[0][0], &w.simple(0)).unwrap());
    }

    #[test]
    fn enumerate_sms_on_nakayama_2_2() {
        let w = Workbench::new(families::nakayama(2, 2, fp()).unwrap());
        let u = w.knit_universe(&bounds()).unwrap().unwrap();
        let all = w.enumerate_sms(&u, 6).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].len(), 2);
    }

    #[test]
    fn classify_simples_of_nakayama_3_2() {
        let w = Workbench::new(families::nakayama(3, 2, fp()).unwrap());
        let u = w.knit_universe(&bounds()).unwrap().unwrap();
        let simples: Vec<Rep> = (0..3).map(|v| w.simple(v)).collect();
        let rep = w.classify_system(&simples, Some(&u), 8).unwrap();
        assert!(rep.semibrick.passed());
        assert_eq!(rep.wsms, Some(true));
        assert_eq!(rep.sms, Some(true));
        assert_eq!(rep.maximal_orthogonal, Some(true));
    }

    #[test]
    fn local2_simple_is_sms_but_not_maximal_orthogonal() {
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let u = w.knit_universe(&bounds()).unwrap().unwrap();
        let rep = w.classify_system(&[w.simple(0)], Some(&u), 6).unwrap();
        assert!(rep.semibrick.passed());
        assert_eq!(rep.sms, Some(true));
        // tau S = S over the local Nakayama algebra
        assert_eq!(rep.maximal_orthogonal, Some(false));
    }
}
