//! Bound quiver algebras: a finite path basis in normal form, the
//! multiplication table, and self-injectivity data.
//!
//! The basis consists of the length-0 paths e_v followed by all irreducible
//! words of length below the nilpotency bound, sorted by (length, lex).
//! Multiplication is concatenation followed by reduction, so each product of
//! basis elements is zero or a scalar times a basis element.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::matrix::Mat;
use crate::quiver::{word_cmp, Quiver};
use crate::rewrite::{Normal, Rule, RewriteSystem};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSet {
    /// Paths set to zero, as arrow-index words.
    pub monomials: Vec<Vec<usize>>,
    /// c1 * p1 + c2 * p2 = 0 with p1, p2 parallel.
    pub binomials: Vec<(u64, Vec<usize>, u64, Vec<usize>)>,
}

impl RelationSet {
    pub fn validate(&self, quiver: &Quiver) -> Result<()> {
        for m in &self.monomials {
            if m.len() < 2 {
                return Err(Error::NonAdmissible(format!(
                    "monomial relation `{}` has length {} < 2",
                    quiver.word_name(m),
                    m.len()
                )));
            }
            quiver.word_endpoints(m)?;
        }
        for (c1, p1, c2, p2) in &self.binomials {
            if *c1 == 0 || *c2 == 0 {
                return Err(Error::BadParameter(
                    "binomial relation with zero coefficient".into(),
                ));
            }
            if p1.len() < 2 || p2.len() < 2 {
                return Err(Error::NonAdmissible(format!(
                    "binomial relation `{} + {}` has a side of length < 2",
                    quiver.word_name(p1),
                    quiver.word_name(p2)
                )));
            }
            let e1 = quiver.word_endpoints(p1)?;
            let e2 = quiver.word_endpoints(p2)?;
            if e1 != e2 {
                return Err(Error::NonComposable(format!(
                    "binomial sides `{}` and `{}` are not parallel",
                    quiver.word_name(p1),
                    quiver.word_name(p2)
                )));
            }
            if p1 == p2 {
                return Err(Error::BadParameter(
                    "binomial relation with equal paths".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn max_len(&self) -> usize {
        let m = self.monomials.iter().map(Vec::len).max().unwrap_or(0);
        let b = self
            .binomials
            .iter()
            .map(|(_, p1, _, p2)| p1.len().max(p2.len()))
            .max()
            .unwrap_or(0);
        m.max(b)
    }

    /// Canonical form: monomials sorted and deduplicated; binomials oriented
    /// with the larger path first and leading coefficient 1, then sorted.
    /// The pretty-printer relies on this for bit-exact round trips.
    pub fn canonicalize(&mut self, quiver: &Quiver, field: Fp) {
        let ranks = quiver.arrow_lex_ranks();
        self.monomials
            .sort_by(|a, b| word_cmp(&ranks, a, b));
        self.monomials.dedup();
        for rel in self.binomials.iter_mut() {
            let (c1, p1, c2, p2) = rel.clone();
            let (big, cb, small, cs) = match word_cmp(&ranks, &p1, &p2) {
                std::cmp::Ordering::Greater => (p1, c1, p2, c2),
                _ => (p2, c2, p1, c1),
            };
            *rel = (1, big, field.div(cs, cb), small);
        }
        self.binomials
            .sort_by(|a, b| word_cmp(&ranks, &a.1, &b.1).then_with(|| word_cmp(&ranks, &a.3, &b.3)));
        self.binomials.dedup();
    }
}

/// One basis element: the empty word at a vertex, or an irreducible path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisWord {
    pub word: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl BasisWord {
    pub fn is_idempotent(&self) -> bool {
        self.word.is_empty()
    }
}

/// Composition convention used by the DSL source of this algebra; internal
/// words are always left-to-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Composition {
    LeftToRight,
    RightToLeft,
}

#[derive(Debug)]
pub struct Algebra {
    pub name: String,
    pub quiver: Quiver,
    pub relations: RelationSet,
    pub field: Fp,
    pub nilpotency: usize,
    pub composition: Composition,
    pub rules: RewriteSystem,
    pub basis: Vec<BasisWord>,
    /// mult[i][j] = basis_i * basis_j as `Some((coef, k))` or `None` for 0.
    pub mult: Vec<Vec<Option<(u64, usize)>>>,
    /// Basis indices grouped by source vertex (includes e_v first).
    pub basis_from: Vec<Vec<usize>>,
}

pub type AlgebraRef = Arc<Algebra>;

impl Algebra {
    pub fn build(
        name: String,
        quiver: Quiver,
        mut relations: RelationSet,
        field: Fp,
        nilpotency: Option<usize>,
        composition: Composition,
    ) -> Result<AlgebraRef> {
        relations.validate(&quiver)?;
        relations.canonicalize(&quiver, field);
        match nilpotency {
            Some(n) => Self::build_at_bound(name, quiver, relations, field, n, composition),
            None => {
                let mut bound = 4;
                loop {
                    match Self::build_at_bound(
                        name.clone(),
                        quiver.clone(),
                        relations.clone(),
                        field,
                        bound,
                        composition,
                    ) {
                        Ok(a) => return Ok(a),
                        Err(Error::BoundExceeded(_)) if bound < 64 => bound *= 2,
                        Err(Error::BoundExceeded(_)) => {
                            return Err(Error::NonAdmissible(
                                "no nilpotency bound up to 64 kills all paths; \
                                 the ideal is probably not admissible"
                                    .into(),
                            ))
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }

    fn build_at_bound(
        name: String,
        quiver: Quiver,
        relations: RelationSet,
        field: Fp,
        nilpotency: usize,
        composition: Composition,
    ) -> Result<AlgebraRef> {
        if nilpotency < 2 {
            return Err(Error::BadParameter("nilpotency bound must be >= 2".into()));
        }
        let mut rules = Vec::new();
        let ranks = quiver.arrow_lex_ranks();
        for m in &relations.monomials {
            rules.push(Rule {
                lhs: m.clone(),
                rhs: None,
            });
        }
        for (c1, p1, c2, p2) in &relations.binomials {
            // c1*p1 + c2*p2 = 0, oriented from the larger path to the smaller
            let (big, cb, small, cs) = match word_cmp(&ranks, p1, p2) {
                std::cmp::Ordering::Greater => (p1, *c1, p2, *c2),
                _ => (p2, *c2, p1, *c1),
            };
            rules.push(Rule {
                lhs: big.clone(),
                rhs: Some((field.neg(field.div(cs, cb)), small.clone())),
            });
        }
        let max_word = nilpotency + relations.max_len().max(2);
        let rules = RewriteSystem::complete(&quiver, field, rules, max_word)?;

        // Admissibility: every composable word of length `nilpotency`
        // reduces to zero. DFS over normal forms, one arrow at a time.
        for v in 0..quiver.n_vertices() {
            check_nilpotent_from(&quiver, &rules, v, nilpotency)?;
        }

        // Basis: e_v for each vertex, then irreducible words by (len, lex).
        let mut basis: Vec<BasisWord> = (0..quiver.n_vertices())
            .map(|v| BasisWord {
                word: vec![],
                source: v,
                target: v,
            })
            .collect();
        let mut words = enumerate_irreducible(&quiver, &rules, nilpotency - 1);
        words.sort_by(|a, b| word_cmp(&ranks, a, b));
        for w in words {
            let (s, t) = quiver.word_endpoints(&w)?;
            basis.push(BasisWord {
                word: w,
                source: s,
                target: t,
            });
        }

        let lookup = |w: &[usize]| -> usize {
            basis
                .iter()
                .position(|b| b.word == w)
                .expect("normal form must be a basis word")
        };
        let d = basis.len();
        let mut mult = vec![vec![None; d]; d];
        for i in 0..d {
            for j in 0..d {
                let (bi, bj) = (&basis[i], &basis[j]);
                if bi.target != bj.source {
                    continue;
                }
                if bi.is_idempotent() {
                    mult[i][j] = Some((1, j));
                    continue;
                }
                if bj.is_idempotent() {
                    mult[i][j] = Some((1, i));
                    continue;
                }
                let mut w = bi.word.clone();
                w.extend_from_slice(&bj.word);
                mult[i][j] = match rules.reduce_word(&w) {
                    Normal::Zero => None,
                    Normal::Term(c, nf) => Some((c, lookup(&nf))),
                };
            }
        }

        let mut basis_from = vec![Vec::new(); quiver.n_vertices()];
        for (i, b) in basis.iter().enumerate() {
            basis_from[b.source].push(i);
        }

        let alg = Algebra {
            name,
            quiver,
            relations,
            field,
            nilpotency,
            composition,
            rules,
            basis,
            mult,
            basis_from,
        };
        alg.check_structure()?;
        Ok(Arc::new(alg))
    }

    /// Internal consistency: orthogonal idempotents summing to 1, and
    /// associativity on all basis triples (exhaustive at desk scale).
    fn check_structure(&self) -> Result<()> {
        let d = self.dim();
        for v in 0..self.quiver.n_vertices() {
            for w in 0..self.quiver.n_vertices() {
                let expect = if v == w { Some((1, v)) } else { None };
                if self.mult[v][w] != expect {
                    return Err(Error::NonConfluent(
                        "vertex idempotents are not orthogonal in the mult table".into(),
                    ));
                }
            }
        }
        if d <= 200 {
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let left = self.scale_prod(self.mult[i][j], k, true);
                        let right = self.scale_prod(self.mult[j][k], i, false);
                        if left != right {
                            return Err(Error::NonConfluent(format!(
                                "associativity fails on basis triple ({i},{j},{k})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn scale_prod(
        &self,
        ab: Option<(u64, usize)>,
        other: usize,
        other_right: bool,
    ) -> Option<(u64, usize)> {
        let (c, m) = ab?;
        let next = if other_right {
            self.mult[m][other]
        } else {
            self.mult[other][m]
        }?;
        Some((self.field.mul(c, next.0), next.1))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn idempotent_index(&self, v: usize) -> usize {
        v
    }

    /// Indices of basis words from `v` to `w`.
    pub fn basis_between(&self, v: usize, w: usize) -> Vec<usize> {
        self.basis_from[v]
            .iter()
            .copied()
            .filter(|&i| self.basis[i].target == w)
            .collect()
    }

    /// Matrix of right multiplication by arrow `a` on P(v) = e_v A, in the
    /// per-vertex bases of P(v): maps the slice at source(a) to the slice at
    /// target(a).
    pub fn right_mult_on_projective(&self, v: usize, a: usize) -> Mat {
        let arrow = &self.quiver.arrows[a];
        let dom = self.basis_between(v, arrow.source);
        let cod = self.basis_between(v, arrow.target);
        let mut m = Mat::zeros(self.field, cod.len(), dom.len());
        for (j, &bi) in dom.iter().enumerate() {
            let mut w = self.basis[bi].word.clone();
            w.push(a);
            if let Normal::Term(c, nf) = self.rules.reduce_word(&w) {
                let k = self
                    .basis
                    .iter()
                    .position(|b| b.word == nf)
                    .expect("normal form in basis");
                let i = cod.iter().position(|&x| x == k).expect("target slice");
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Matrix of left multiplication by arrow `a`: e_{target(a)} A -> e_{source(a)} A,
    /// in the source-grouped bases (block over all target vertices).
    pub fn left_mult_matrix(&self, a: usize) -> Mat {
        let arrow = &self.quiver.arrows[a];
        let dom = &self.basis_from[arrow.target];
        let cod = &self.basis_from[arrow.source];
        let mut m = Mat::zeros(self.field, cod.len(), dom.len());
        for (j, &bi) in dom.iter().enumerate() {
            let mut w = vec![a];
            w.extend_from_slice(&self.basis[bi].word);
            if let Normal::Term(c, nf) = self.rules.reduce_word(&w) {
                let k = self
                    .basis
                    .iter()
                    .position(|b| b.word == nf)
                    .expect("normal form in basis");
                let i = cod.iter().position(|&x| x == k).expect("source slice");
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Matrix of right multiplication by arrow `a` as an endomorphism of
    /// e_v A in the full P(v) basis ordering (all slices concatenated).
    pub fn right_mult_full(&self, v: usize, a: usize) -> Mat {
        let all = &self.basis_from[v];
        let n = all.len();
        let mut m = Mat::zeros(self.field, n, n);
        let arrow = &self.quiver.arrows[a];
        for (j, &bi) in all.iter().enumerate() {
            if self.basis[bi].target != arrow.source {
                continue;
            }
            let mut w = self.basis[bi].word.clone();
            w.push(a);
            if let Normal::Term(c, nf) = self.rules.reduce_word(&w) {
                let k = self
                    .basis
                    .iter()
                    .position(|b| b.word == nf)
                    .expect("normal form in basis");
                let i = all.iter().position(|&x| x == k).expect("same projective");
                m[(i, j)] = c;
            }
        }
        m
    }
}

fn check_nilpotent_from(
    quiver: &Quiver,
    rules: &RewriteSystem,
    v: usize,
    bound: usize,
) -> Result<()> {
    // stack of (endpoint, normal form value, depth)
    let mut stack: Vec<(usize, Normal, usize)> = vec![(v, Normal::Term(1, vec![]), 0)];
    while let Some((end, nf, depth)) = stack.pop() {
        if depth == bound {
            if let Normal::Term(_, w) = &nf {
                return Err(Error::BoundExceeded(format!(
                    "path of length {bound} from `{}` reduces to `{}`, not zero",
                    quiver.vertices[v],
                    quiver.word_name(w)
                )));
            }
            continue;
        }
        for a in quiver.arrows_from(end) {
            let Normal::Term(c, w) = &nf else { continue };
            let mut ext = w.clone();
            ext.push(a);
            match rules.reduce_value(Normal::Term(*c, ext)) {
                Normal::Zero => {}
                t => stack.push((quiver.arrows[a].target, t, depth + 1)),
            }
        }
    }
    Ok(())
}

fn enumerate_irreducible(quiver: &Quiver, rules: &RewriteSystem, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..quiver.n_arrows()).map(|a| vec![a]).collect();
    while let Some(w) = stack.pop() {
        if !rules.is_irreducible(&w) {
            continue;
        }
        if w.len() <= max_len {
            out.push(w.clone());
            if w.len() < max_len {
                let end = quiver.arrows[*w.last().unwrap()].target;
                for a in quiver.arrows_from(end) {
                    let mut ext = w.clone();
                    ext.push(a);
                    stack.push(ext);
                }
            }
        }
    }
    out
}

/// Self-injectivity data per the socle criterion: each P(v) must have a
/// simple socle and the socle vertices must form a permutation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelfInjectivityReport {
    pub is_self_injective: bool,
    /// nakayama_perm[v] = w means soc P(v) = S(w).
    pub nakayama_perm: Option<Vec<usize>>,
    /// Gram matrix of a nondegenerate associative symmetric form, if found.
    pub symmetric_form: Option<Vec<Vec<u64>>>,
    pub socle_dims: Vec<usize>,
    pub detail: String,
}

impl Algebra {
    pub fn selfinjectivity_report(self: &AlgebraRef) -> SelfInjectivityReport {
        let nv = self.quiver.n_vertices();
        let mut perm = vec![usize::MAX; nv];
        let mut socle_dims = vec![0usize; nv];
        let mut simple = true;
        let mut detail = String::new();
        for v in 0..nv {
            let p = crate::rep::Rep::projective(self, v);
            let soc = p.socle();
            let total: usize = soc.dims.iter().sum();
            socle_dims[v] = total;
            if total != 1 {
                simple = false;
                detail = format!(
                    "soc P({}) has dimension {total}",
                    self.quiver.vertices[v]
                );
                continue;
            }
            perm[v] = soc.dims.iter().position(|&d| d == 1).unwrap();
        }
        let bijective = simple && {
            let mut seen = vec![false; nv];
            perm.iter().all(|&w| {
                if w < nv && !seen[w] {
                    seen[w] = true;
                    true
                } else {
                    false
                }
            })
        };
        if simple && !bijective {
            detail = "socle vertices do not form a permutation".into();
        }
        let is_self_injective = simple && bijective;
        let symmetric_form = if is_self_injective {
            self.find_symmetric_form()
        } else {
            None
        };
        SelfInjectivityReport {
            is_self_injective,
            nakayama_perm: is_self_injective.then_some(perm),
            symmetric_form: symmetric_form.map(|g| g.rows_vec()),
            socle_dims,
            detail,
        }
    }

    /// Solve for a symmetric associative bilinear form with invertible Gram
    /// matrix; deterministic search through the solution space.
    fn find_symmetric_form(&self) -> Option<Mat> {
        let d = self.dim();
        let f = self.field;
        let idx = |i: usize, j: usize| i * d + j;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        // symmetry: G[i][j] - G[j][i] = 0
        for i in 0..d {
            for j in i + 1..d {
                let mut r = vec![0u64; d * d];
                r[idx(i, j)] = 1;
                r[idx(j, i)] = f.neg(1);
                rows.push(r);
            }
        }
        // associativity: <b_i b_j, b_k> = <b_i, b_j b_k>
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut r = vec![0u64; d * d];
                    if let Some((c, m)) = self.mult[i][j] {
                        r[idx(m, k)] = f.add(r[idx(m, k)], c);
                    }
                    if let Some((c, m)) = self.mult[j][k] {
                        r[idx(i, m)] = f.sub(r[idx(i, m)], c);
                    }
                    if r.iter().any(|&x| x != 0) {
                        rows.push(r);
                    }
                }
            }
        }
        let system = Mat::from_rows(f, rows);
        let null = system.nullspace();
        if null.cols == 0 {
            return None;
        }
        let gram_of = |coeffs: &[u64]| -> Mat {
            let mut g = Mat::zeros(f, d, d);
            for i in 0..d {
                for j in 0..d {
                    let mut acc = 0u64;
                    for (t, &c) in coeffs.iter().enumerate() {
                        acc = f.add(acc, f.mul(c, null[(idx(i, j), t)]));
                    }
                    g[(i, j)] = acc;
                }
            }
            g
        };
        // basis vectors first, then deterministic pseudo-random combinations
        for t in 0..null.cols {
            let mut coeffs = vec![0u64; null.cols];
            coeffs[t] = 1;
            let g = gram_of(&coeffs);
            if g.is_invertible() {
                return Some(g);
            }
        }
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5f03);
        for _ in 0..128 {
            let coeffs: Vec<u64> = (0..null.cols).map(|_| rng.gen_range(0..f.p())).collect();
            let g = gram_of(&coeffs);
            if g.is_invertible() {
                return Some(g);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    /// 2-cycle with rad^2 = 0: basis {e1, e2, a, b}.
    pub fn two_cycle_rad2() -> AlgebraRef {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
            ],
        )
        .unwrap();
        let rels = RelationSet {
            monomials: vec![vec![0, 1], vec![1, 0]],
            binomials: vec![],
        };
        Algebra::build(
            "twocycle".into(),
            q,
            rels,
            Fp::new(101).unwrap(),
            Some(2),
            Composition::LeftToRight,
        )
        .unwrap()
    }

    #[test]
    fn two_cycle_basis() {
        let a = two_cycle_rad2();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.mult[2][3], None); // a*b = 0
        assert_eq!(a.mult[0][2], Some((1, 2))); // e1 * a = a
    }

    #[test]
    fn nonadmissible_single_arrow_relation() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
        )
        .unwrap();
        let rels = RelationSet {
            monomials: vec![vec![0]],
            binomials: vec![],
        };
        let err = Algebra::build(
            "bad".into(),
            q,
            rels,
            Fp::new(101).unwrap(),
            Some(3),
            Composition::LeftToRight,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonAdmissible(_)));
    }

    #[test]
    fn unbounded_quiver_is_rejected() {
        let q = Quiver::new(
            vec!["1".into()],
            vec![("x".into(), "1".into(), "1".into())],
        )
        .unwrap();
        let rels = RelationSet {
            monomials: vec![],
            binomials: vec![],
        };
        let err = Algebra::build(
            "free".into(),
            q,
            rels,
            Fp::new(101).unwrap(),
            Some(8),
            Composition::LeftToRight,
        )
        .unwrap_err();
        assert!(matches!(err, Error::BoundExceeded(_)));
    }
}
