//! Path rewriting for admissible ideals: monomial and binomial rules only.
//!
//! A rule sends a single word to zero or to a scalar multiple of a smaller
//! word under the (length, lex) order, so normal forms of words are always
//! zero or a scalar times one irreducible word. Completion resolves every
//! critical overlap among rules whose overlap word is short enough to matter
//! for words below the nilpotency bound; the result is a confluent system on
//! that fragment, checked rather than assumed.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::quiver::{word_cmp, Quiver};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// `lhs -> coef * rhs`, or `lhs -> 0` when `rhs` is None.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<usize>,
    pub rhs: Option<(u64, Vec<usize>)>,
}

/// Value of a word after reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normal {
    Zero,
    Term(u64, Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub field: Fp,
    pub rules: Vec<Rule>,
    ranks: Vec<usize>,
    /// Rules indexed by first arrow of the lhs, for fast occurrence scans.
    by_head: BTreeMap<usize, Vec<usize>>,
}

const COMPLETION_ROUNDS_CAP: usize = 64;

impl RewriteSystem {
    /// Build a completed system from oriented input rules.
    ///
    /// `max_word` bounds the overlap words considered: every word of length
    /// `<= max_word` then has a unique normal form (Newman's lemma on the
    /// length-decreasing fragment).
    pub fn complete(
        quiver: &Quiver,
        field: Fp,
        input: Vec<Rule>,
        max_word: usize,
    ) -> Result<Self> {
        let ranks = quiver.arrow_lex_ranks();
        let mut sys = RewriteSystem {
            field,
            rules: Vec::new(),
            ranks,
            by_head: BTreeMap::new(),
        };
        for r in input {
            sys.add_rule(r)?;
        }
        for _round in 0..COMPLETION_ROUNDS_CAP {
            let mut fresh: Vec<Rule> = Vec::new();
            let n = sys.rules.len();
            for i in 0..n {
                for j in 0..n {
                    for word in overlap_words(&sys.rules[i].lhs, &sys.rules[j].lhs, max_word) {
                        let left = sys.reduce_once_with(&word, i);
                        let right = sys.reduce_once_with(&word, j);
                        let a = sys.reduce_value(left);
                        let b = sys.reduce_value(right);
                        if let Some(rule) = sys.rule_from_disagreement(a, b)? {
                            fresh.push(rule);
                        }
                    }
                }
            }
            if fresh.is_empty() {
                return Ok(sys);
            }
            let mut grew = false;
            for r in fresh {
                grew |= sys.add_rule_reduced(r)?;
            }
            if !grew {
                return Ok(sys);
            }
        }
        Err(Error::NonConfluent(format!(
            "completion did not settle within {COMPLETION_ROUNDS_CAP} rounds"
        )))
    }

    fn add_rule(&mut self, r: Rule) -> Result<()> {
        if r.lhs.len() < 2 {
            return Err(Error::NonAdmissible(format!(
                "derived rule with left side of length {} (< 2): the ideal is not in rad^2",
                r.lhs.len()
            )));
        }
        if let Some((c, w)) = &r.rhs {
            debug_assert!(*c != 0);
            debug_assert_eq!(word_cmp(&self.ranks, w, &r.lhs), Ordering::Less);
        }
        let idx = self.rules.len();
        self.by_head.entry(r.lhs[0]).or_default().push(idx);
        self.rules.push(r);
        Ok(())
    }

    /// Normalize both sides of a candidate rule against the current system
    /// before inserting; drops rules that became trivial.
    fn add_rule_reduced(&mut self, r: Rule) -> Result<bool> {
        let lhs_val = self.reduce_value(Normal::Term(1, r.lhs.clone()));
        let rhs_val = match r.rhs {
            None => Normal::Zero,
            Some((c, w)) => self.reduce_value(Normal::Term(c, w)),
        };
        match self.rule_from_disagreement(lhs_val, rhs_val)? {
            Some(rule) => {
                self.add_rule(rule)?;
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Turn two normal forms of the same word into a new oriented rule,
    /// or None when they already agree.
    fn rule_from_disagreement(&self, a: Normal, b: Normal) -> Result<Option<Rule>> {
        let f = self.field;
        match (a, b) {
            (Normal::Zero, Normal::Zero) => Ok(None),
            (Normal::Term(c, w), Normal::Zero) | (Normal::Zero, Normal::Term(c, w)) => {
                debug_assert!(c != 0);
                Ok(Some(Rule { lhs: w, rhs: None }))
            }
            (Normal::Term(c1, w1), Normal::Term(c2, w2)) => {
                if w1 == w2 {
                    if c1 == c2 {
                        Ok(None)
                    } else {
                        Ok(Some(Rule { lhs: w1, rhs: None }))
                    }
                } else {
                    match word_cmp(&self.ranks, &w1, &w2) {
                        Ordering::Greater => Ok(Some(Rule {
                            lhs: w1,
                            rhs: Some((f.div(c2, c1), w2)),
                        })),
                        Ordering::Less => Ok(Some(Rule {
                            lhs: w2,
                            rhs: Some((f.div(c1, c2), w1)),
                        })),
                        Ordering::Equal => unreachable!("distinct words cannot compare equal"),
                    }
                }
            }
        }
    }

    /// Apply rule `ri` at its leftmost occurrence in `word` (the caller
    /// guarantees one exists at position 0 for overlap words).
    fn reduce_once_with(&self, word: &[usize], ri: usize) -> Normal {
        let rule = &self.rules[ri];
        let pos = find_subword(word, &rule.lhs).expect("overlap construction guarantees a match");
        self.splice(word, pos, rule)
    }

    fn splice(&self, word: &[usize], pos: usize, rule: &Rule) -> Normal {
        match &rule.rhs {
            None => Normal::Zero,
            Some((c, repl)) => {
                let mut w = Vec::with_capacity(word.len() - rule.lhs.len() + repl.len());
                w.extend_from_slice(&word[..pos]);
                w.extend_from_slice(repl);
                w.extend_from_slice(&word[pos + rule.lhs.len()..]);
                Normal::Term(*c, w)
            }
        }
    }

    /// Full normal form of `coef * word`.
    pub fn reduce_value(&self, mut v: Normal) -> Normal {
        let f = self.field;
        loop {
            let Normal::Term(c, w) = &v else {
                return Normal::Zero;
            };
            match self.leftmost_redex(w) {
                None => return v.clone(),
                Some((pos, ri)) => {
                    let c0 = *c;
                    match self.splice(w, pos, &self.rules[ri]) {
                        Normal::Zero => return Normal::Zero,
                        Normal::Term(c1, w1) => v = Normal::Term(f.mul(c0, c1), w1),
                    }
                }
            }
        }
    }

    pub fn reduce_word(&self, word: &[usize]) -> Normal {
        self.reduce_value(Normal::Term(1, word.to_vec()))
    }

    pub fn is_irreducible(&self, word: &[usize]) -> bool {
        self.leftmost_redex(word).is_none()
    }

    fn leftmost_redex(&self, word: &[usize]) -> Option<(usize, usize)> {
        for pos in 0..word.len() {
            if let Some(rules) = self.by_head.get(&word[pos]) {
                for &ri in rules {
                    let lhs = &self.rules[ri].lhs;
                    if word.len() - pos >= lhs.len() && word[pos..pos + lhs.len()] == lhs[..] {
                        return Some((pos, ri));
                    }
                }
            }
        }
        None
    }
}

/// All overlap words of two rule left sides up to `max_len`:
/// proper suffix of `a` equals proper prefix of `b`, plus full inclusions
/// of `b` inside `a`.
fn overlap_words(a: &[usize], b: &[usize], max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..a.len().min(b.len()) {
        if a[a.len() - k..] == b[..k] {
            let mut w = a.to_vec();
            w.extend_from_slice(&b[k..]);
            if w.len() <= max_len {
                out.push(w);
            }
        }
    }
    if b.len() < a.len() && a.len() <= max_len {
        for pos in 0..=a.len() - b.len() {
            if &a[pos..pos + b.len()] == b {
                out.push(a.to_vec());
                break;
            }
        }
    }
    out
}

fn find_subword(word: &[usize], sub: &[usize]) -> Option<usize> {
    if sub.len() > word.len() {
        return None;
    }
    (0..=word.len() - sub.len()).find(|&pos| &word[pos..pos + sub.len()] == sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn two_cycle() -> Quiver {
        Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn monomial_reduction() {
        let q = two_cycle();
        let f = Fp::new(101).unwrap();
        let rules = vec![
            Rule {
                lhs: vec![0, 1],
                rhs: None,
            },
            Rule {
                lhs: vec![1, 0],
                rhs: None,
            },
        ];
        let sys = RewriteSystem::complete(&q, f, rules, 6).unwrap();
        assert_eq!(sys.reduce_word(&[0]), Normal::Term(1, vec![0]));
        assert_eq!(sys.reduce_word(&[0, 1]), Normal::Zero);
        assert_eq!(sys.reduce_word(&[0, 1, 0]), Normal::Zero);
    }

    /// The completion must derive the hidden consequences of a binomial:
    /// with a^3 = g^2-style identifications, words such as g^3 must die even
    /// though no input rule mentions them.
    #[test]
    fn completion_derives_consequences() {
        // 3-cycle a1: 1->2, a2: 2->3, a3: 3->1 plus g-arrows v: 2->3, u: 3->2
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a1".into(), "1".into(), "2".into()),
                ("a2".into(), "2".into(), "3".into()),
                ("a3".into(), "3".into(), "1".into()),
                ("v".into(), "2".into(), "3".into()),
                ("u".into(), "3".into(), "2".into()),
            ],
        )
        .unwrap();
        let f = Fp::new(101).unwrap();
        let (a1, a2, a3, v, u) = (0, 1, 2, 3, 4);
        let mono = |w: Vec<usize>| Rule { lhs: w, rhs: None };
        let rules = vec![
            mono(vec![a1, v]),
            mono(vec![a2, u]),
            mono(vec![u, a2]),
            mono(vec![v, a3]),
            Rule {
                lhs: vec![a2, a3, a1],
                rhs: Some((1, vec![v, u])),
            },
            Rule {
                lhs: vec![a3, a1, a2],
                rhs: Some((1, vec![u, v])),
            },
        ];
        let sys = RewriteSystem::complete(&q, f, rules, 10).unwrap();
        // g^3 at vertex 2 is (v u) v = a2 a3 a1 v = a2 a3 (a1 v) = 0
        assert_eq!(sys.reduce_word(&[v, u, v]), Normal::Zero);
        assert_eq!(sys.reduce_word(&[u, v, u]), Normal::Zero);
        // the socle path at vertex 2 reduces to the canonical g^2 form
        assert_eq!(sys.reduce_word(&[a2, a3, a1]), Normal::Term(1, vec![v, u]));
        // soc P(1): full alpha cycle stays irreducible
        assert_eq!(
            sys.reduce_word(&[a1, a2, a3]),
            Normal::Term(1, vec![a1, a2, a3])
        );
        // every length-4 word from vertex 1 dies
        assert_eq!(sys.reduce_word(&[a1, a2, a3, a1]), Normal::Zero);
    }
}
