//! Shared computation context: one algebra plus insert-only memo caches for
//! Hom spaces, stable Homs, decompositions, isomorphism tests and functor
//! values. All cached operations are pure functions of module contents, so
//! the cache is semantically invisible; keys are canonical content
//! encodings, never addresses.

use crate::algebra::{AlgebraRef, SelfInjectivityReport};
use crate::error::{Error, Result};
use crate::rep::Rep;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

pub type Key = Vec<u64>;

#[derive(Default)]
pub(crate) struct Caches {
    pub hom: BTreeMap<(Key, Key), Arc<crate::hom::HomBasis>>,
    pub sthom: BTreeMap<(Key, Key), Arc<crate::hom::StableHom>>,
    pub end: BTreeMap<Key, Arc<crate::endo::EndData>>,
    pub decomp: BTreeMap<Key, Arc<crate::decomp::Decomposition>>,
    pub iso: BTreeMap<(Key, Key), bool>,
    pub syzygy: BTreeMap<(Key, i64), Rep>,
    pub nakayama: BTreeMap<(Key, bool), Rep>,
    pub tau: BTreeMap<(Key, i64), Rep>,
}

pub struct Workbench {
    pub algebra: AlgebraRef,
    pub projectives: Vec<Rep>,
    pub selfinj: SelfInjectivityReport,
    pub(crate) caches: Mutex<Caches>,
}

impl Workbench {
    pub fn new(algebra: AlgebraRef) -> Self {
        let projectives = (0..algebra.quiver.n_vertices())
            .map(|v| Rep::projective(&algebra, v))
            .collect();
        let selfinj = algebra.selfinjectivity_report();
        Workbench {
            algebra,
            projectives,
            selfinj,
            caches: Mutex::new(Caches::default()),
        }
    }

    pub fn field(&self) -> crate::field::Fp {
        self.algebra.field
    }

    pub fn require_self_injective(&self) -> Result<&[usize]> {
        match &self.selfinj.nakayama_perm {
            Some(p) if self.selfinj.is_self_injective => Ok(p),
            _ => Err(Error::NotSelfInjective),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.selfinj.symmetric_form.is_some()
    }

    pub fn check_same_algebra(&self, m: &Rep, n: &Rep) -> Result<()> {
        let ok = m.same_algebra(n)
            && (std::sync::Arc::ptr_eq(&m.algebra, &self.algebra)
                || (m.algebra.quiver == self.algebra.quiver
                    && m.algebra.field == self.algebra.field
                    && m.algebra.relations == self.algebra.relations));
        if ok {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn simple(&self, v: usize) -> Rep {
        Rep::simple(&self.algebra, v)
    }

    pub fn projective(&self, v: usize) -> Rep {
        self.projectives[v].clone()
    }
}
