//! Triangle middles and cocones in the stable category.
//!
//! A triangle X -> Y -> Z corresponds to a short exact sequence
//! 0 -> X -> Y ⊕ P -> Z -> 0 with P projective, so middles are materialized
//! extensions of Z by X (swept over all classes up to scalar) and the cocone
//! of a map f: Y -> Z is the kernel of (f, cover): Y ⊕ P(Z) ->> Z with
//! projective summands stripped.

use crate::error::Result;
use crate::rep::{ModMap, Rep};
use crate::tube::sweep_classes;
use crate::workbench::Workbench;

impl Workbench {
    /// Iso-class representatives of the middles Y of all triangles
    /// X -> Y -> Z, projectives stripped; always contains the split middle
    /// X ⊕ Z (stripped).
    pub fn cone_middles(&self, z: &Rep, x: &Rep) -> Result<Vec<Rep>> {
        self.require_self_injective()?;
        let mut out: Vec<Rep> = Vec::new();
        let mut push = |wb: &Workbench, rep: Rep| -> Result<()> {
            for seen in &out {
                if wb.is_isomorphic(seen, &rep)? {
                    return Ok(());
                }
            }
            out.push(rep);
            Ok(())
        };
        let split = self.strip_projectives(&x.direct_sum(z))?;
        push(self, split)?;
        let ext = self.ext1(z, x)?;
        let d = ext.dim();
        if d > 0 {
            for class in sweep_classes(self.field().p(), d)? {
                let phi = ext.classes.stable_rep(&class);
                let (e, _, _) = self.materialize_extension(&ext, &phi)?;
                let stripped = self.strip_projectives(&e)?;
                push(self, stripped)?;
            }
        }
        out.sort_by(|a, b| {
            a.dim()
                .cmp(&b.dim())
                .then_with(|| a.content_key().cmp(&b.content_key()))
        });
        Ok(out)
    }

    /// The cocone N of a stable map f: Y -> Z, i.e. the third term of the
    /// triangle N -> Y -> Z: kernel of (f, pi): Y ⊕ P(Z) ->> Z, projectives
    /// stripped. Also returns whether the sequence (hence the triangle)
    /// splits.
    pub fn cocone(&self, y: &Rep, z: &Rep, f: &ModMap) -> Result<(Rep, bool)> {
        self.require_self_injective()?;
        let (cover, cover_map) = self.projective_cover_of(z)?;
        let (ambient, incls) = Rep::direct_sum_many(&self.algebra, &[y.clone(), cover.clone()]);
        // q = [f, pi] via the projections off the direct sum
        let q = {
            let py = transpose_incl(&incls[0]);
            let pc = transpose_incl(&incls[1]);
            f.compose(&py).add(&cover_map.compose(&pc))
        };
        debug_assert!(q.intertwines(&ambient, z));
        debug_assert!(q.is_surjective(z));
        let kernel = ambient.kernel(&q, z).rep;
        let n = self.strip_projectives(&kernel)?;
        let splits = self.sequence_splits(&ambient, &q, z)?;
        Ok((n, splits))
    }
}

fn transpose_incl(incl: &ModMap) -> ModMap {
    ModMap {
        mats: incl.mats.iter().map(crate::matrix::Mat::transpose).collect(),
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
    fn cone_middles_over_dual_numbers() {
        // middles of S -> Y -> S: the split S ⊕ S and the projective (zero
        // after stripping)
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let s = w.simple(0);
        let mids = w.cone_middles(&s, &s).unwrap();
        assert_eq!(mids.len(), 2);
        assert!(mids[0].is_zero());
        assert_eq!(mids[1].dim(), 2);
    }

    #[test]
    fn cone_middles_on_two_cycle() {
        // X = S1, Z = S2 over nakayama(2,2): nonsplit extension is P(1),
        // stripped to zero
        let w = Workbench::new(families::nakayama(2, 2, fp()).unwrap());
        let s1 = w.simple(0);
        let s2 = w.simple(1);
        let mids = w.cone_middles(&s2, &s1).unwrap();
        assert_eq!(mids.len(), 2);
        assert!(mids[0].is_zero());
        assert_eq!(mids[1].dims, vec![1, 1]);
        // other direction: Ext^1(S1, S2)... = stHom(Omega S1, S2) = stHom(S2,S2) = k
        let mids = w.cone_middles(&s1, &s2).unwrap();
        assert_eq!(mids.len(), 2);
    }

    #[test]
    fn cocone_recovers_syzygy() {
        // triangle Omega Z -> 0 -> Z ... realized as N -> Y -> Z with Y = 0:
        // f = 0: N = Omega Z ⊕ ... here: cocone of identity-ish map instead:
        // for f: S -> S the identity over local(2), N must vanish stably
        let w = Workbench::new(families::local(2, fp()).unwrap());
        let s = w.simple(0);
        let id = ModMap::identity(&s);
        let (n, splits) = w.cocone(&s, &s, &id).unwrap();
        assert!(n.is_zero());
        // the sequence 0 -> P -> S ⊕ P -> S -> 0 with the identity splits
        assert!(splits);
        // f = 0: cocone = S ⊕ Omega S = S ⊕ S
        let zero = ModMap::zero(&s, &s);
        let (n0, splits0) = w.cocone(&s, &s, &zero).unwrap();
        assert_eq!(n0.dim(), 2);
        assert!(!splits0);
    }
}
