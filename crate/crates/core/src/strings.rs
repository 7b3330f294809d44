//! String and band modules over special biserial algebras.
//!
//! A word is a walk through the quiver in letters that are arrows or formal
//! inverses; maximal same-direction runs must avoid every relation monomial
//! and every binomial constituent path. The module places one basis vector
//! per position (string) or one m-dimensional block per position (band,
//! with a Jordan block J_m(lambda) on the closing letter). Constructed
//! representations are re-validated against the relations, so the
//! combinatorial filter is never the last line of defense.

use crate::algebra::{Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rep::Rep;
use crate::rewrite::Normal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    fn start(&self, alg: &Algebra) -> usize {
        let a = &alg.quiver.arrows[self.arrow];
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    fn end(&self, alg: &Algebra) -> usize {
        let a = &alg.quiver.arrows[self.arrow];
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }
}

/// A reduced walk; empty walks carry their base vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringWord {
    pub letters: Vec<Letter>,
    pub base_vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandWord {
    pub letters: Vec<Letter>,
}

impl StringWord {
    pub fn empty(v: usize) -> Self {
        StringWord {
            letters: vec![],
            base_vertex: v,
        }
    }

    /// The formally inverted word.
    pub fn inverse(&self, alg: &Algebra) -> StringWord {
        let letters: Vec<Letter> = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter {
                arrow: l.arrow,
                inverse: !l.inverse,
            })
            .collect();
        let base = if letters.is_empty() {
            self.base_vertex
        } else {
            letters[0].start(alg)
        };
        StringWord {
            letters,
            base_vertex: base,
        }
    }
}

/// Word syntax: arrow ids joined by `*`, with `~` suffix for an inverse
/// letter, e.g. `a1*g1~`.
pub fn parse_letters(alg: &Algebra, text: &str) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    for piece in text.split('*') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(Error::InvalidWord("empty letter in word".into()));
        }
        let (name, inverse) = match piece.strip_suffix('~') {
            Some(n) => (n, true),
            None => (piece, false),
        };
        out.push(Letter {
            arrow: alg.quiver.arrow_index(name)?,
            inverse,
        });
    }
    Ok(out)
}

/// `<= 2` arrows in and out of each vertex, and each arrow has at most one
/// continuation and one predecessor that survive the relations.
pub fn check_special_biserial(alg: &Algebra) -> Result<()> {
    let q = &alg.quiver;
    for v in 0..q.n_vertices() {
        let out = q.arrows_from(v).count();
        let inn = q.arrows_into(v).count();
        if out > 2 || inn > 2 {
            return Err(Error::NotSpecialBiserial(format!(
                "vertex `{}` has {inn} arrows in and {out} out",
                q.vertices[v]
            )));
        }
    }
    for b in 0..q.n_arrows() {
        let tgt = q.arrows[b].target;
        let survivors = q
            .arrows_from(tgt)
            .filter(|&c| !matches!(alg.rules.reduce_word(&[b, c]), Normal::Zero))
            .count();
        if survivors > 1 {
            return Err(Error::NotSpecialBiserial(format!(
                "arrow `{}` has {survivors} surviving continuations",
                q.arrows[b].name
            )));
        }
        let src = q.arrows[b].source;
        let preds = q
            .arrows_into(src)
            .filter(|&a| !matches!(alg.rules.reduce_word(&[a, b]), Normal::Zero))
            .count();
        if preds > 1 {
            return Err(Error::NotSpecialBiserial(format!(
                "arrow `{}` has {preds} surviving predecessors",
                q.arrows[b].name
            )));
        }
    }
    Ok(())
}

/// Paths that may not occur inside a same-direction run: relation monomials
/// and both constituents of every binomial.
fn forbidden_paths(alg: &Algebra) -> Vec<Vec<usize>> {
    let mut out = alg.relations.monomials.clone();
    for (_, p1, _, p2) in &alg.relations.binomials {
        out.push(p1.clone());
        out.push(p2.clone());
    }
    out
}

fn contains_forbidden(run: &[usize], forbidden: &[Vec<usize>]) -> bool {
    forbidden.iter().any(|f| {
        f.len() <= run.len()
            && (0..=run.len() - f.len()).any(|at| &run[at..at + f.len()] == f.as_slice())
    })
}

/// Walk composability, reducedness, and run admissibility. `cyclic` also
/// checks the wrap-around pair and runs.
fn check_word(alg: &Algebra, letters: &[Letter], cyclic: bool) -> Result<()> {
    if letters.is_empty() {
        if cyclic {
            return Err(Error::InvalidWord("empty band".into()));
        }
        return Ok(());
    }
    let pairs: Vec<(usize, usize)> = {
        let mut p: Vec<(usize, usize)> = (0..letters.len() - 1).map(|i| (i, i + 1)).collect();
        if cyclic {
            p.push((letters.len() - 1, 0));
        }
        p
    };
    for (i, j) in &pairs {
        let (a, b) = (&letters[*i], &letters[*j]);
        if a.end(alg) != b.start(alg) {
            return Err(Error::InvalidWord(format!(
                "letters {i} and {j} do not compose"
            )));
        }
        if a.arrow == b.arrow && a.inverse != b.inverse {
            return Err(Error::InvalidWord(format!(
                "letter {j} cancels letter {i}"
            )));
        }
        // string-algebra condition: two consecutive direct (or inverse)
        // letters along the same arrow pair of a vertex are fine; what must
        // not happen is two distinct arrows with the same orientation
        // violating the relations -- covered by the run check below.
    }
    // same-direction runs must avoid forbidden paths
    let forbidden = forbidden_paths(alg);
    let idx = |i: usize| -> &Letter { &letters[i % letters.len()] };
    let total = if cyclic {
        letters.len() * 2
    } else {
        letters.len()
    };
    let mut run: Vec<usize> = Vec::new();
    let mut run_dir = false;
    for i in 0..total {
        let l = idx(i);
        if run.is_empty() || l.inverse != run_dir {
            run.clear();
            run_dir = l.inverse;
        }
        run.push(l.arrow);
        if run.len() > letters.len() {
            run.remove(0);
        }
        let direct: Vec<usize> = if run_dir {
            run.iter().rev().copied().collect()
        } else {
            run.clone()
        };
        if contains_forbidden(&direct, &forbidden) {
            return Err(Error::InvalidWord(format!(
                "run `{}` hits a relation",
                alg.quiver.word_name(&direct)
            )));
        }
    }
    Ok(())
}

/// The string module C(w): one basis vector per position.
pub fn string_module(alg: &AlgebraRef, word: &StringWord) -> Result<Rep> {
    check_special_biserial(alg)?;
    check_word(alg, &word.letters, false)?;
    let f = alg.field;
    let nv = alg.quiver.n_vertices();
    let n_pos = word.letters.len() + 1;
    let mut pos_vertex = Vec::with_capacity(n_pos);
    if word.letters.is_empty() {
        if word.base_vertex >= nv {
            return Err(Error::UnknownVertex(format!("#{}", word.base_vertex)));
        }
        pos_vertex.push(word.base_vertex);
    } else {
        pos_vertex.push(word.letters[0].start(alg));
        for l in &word.letters {
            pos_vertex.push(l.end(alg));
        }
    }
    let mut dims = vec![0usize; nv];
    let mut local = Vec::with_capacity(n_pos);
    for &v in &pos_vertex {
        local.push(dims[v]);
        dims[v] += 1;
    }
    let mut mats: Vec<Mat> = alg
        .quiver
        .arrows
        .iter()
        .map(|a| Mat::zeros(f, dims[a.target], dims[a.source]))
        .collect();
    for (i, l) in word.letters.iter().enumerate() {
        let (from, to) = if l.inverse { (i + 1, i) } else { (i, i + 1) };
        mats[l.arrow][(local[to], local[from])] = 1;
    }
    let rep = Rep {
        algebra: alg.clone(),
        dims,
        mats,
    };
    rep.validate()
        .map_err(|e| Error::InvalidWord(format!("string violates relations: {e}")))?;
    Ok(rep)
}

/// Canonical rotation: the lexicographically smallest under (arrow, inverse)
/// letter order, among all rotations.
fn canonical_rotation(letters: &[Letter]) -> Vec<Letter> {
    let key = |ls: &[Letter]| -> Vec<(usize, bool)> {
        ls.iter().map(|l| (l.arrow, l.inverse)).collect()
    };
    let mut best: Vec<Letter> = letters.to_vec();
    for r in 1..letters.len() {
        let mut rot = letters[r..].to_vec();
        rot.extend_from_slice(&letters[..r]);
        if key(&rot) < key(&best) {
            best = rot;
        }
    }
    best
}

fn is_proper_power(letters: &[Letter]) -> bool {
    let n = letters.len();
    for d in 1..n {
        if n % d == 0 && (0..n).all(|i| letters[i] == letters[i % d]) && d < n {
            return true;
        }
    }
    false
}

/// The band module B(w, lambda, m): m-dimensional block per position, with
/// J_m(lambda) on the last direct letter of the canonical rotation.
pub fn band_module(alg: &AlgebraRef, word: &BandWord, lambda: u64, mult: usize) -> Result<Rep> {
    check_special_biserial(alg)?;
    let f = alg.field;
    if lambda % f.p() == 0 {
        return Err(Error::ZeroParameter);
    }
    if mult == 0 {
        return Err(Error::BadParameter("band multiplicity must be >= 1".into()));
    }
    let letters = canonical_rotation(&word.letters);
    check_word(alg, &letters, true)?;
    if !letters.iter().any(|l| l.inverse) || !letters.iter().any(|l| !l.inverse) {
        return Err(Error::InvalidWord(
            "a band must contain both a direct and an inverse letter".into(),
        ));
    }
    if is_proper_power(&letters) {
        return Err(Error::InvalidWord("a band must not be a proper power".into()));
    }
    let closing = letters
        .iter()
        .rposition(|l| !l.inverse)
        .expect("checked above");
    let n_pos = letters.len();
    let nv = alg.quiver.n_vertices();
    let mut pos_vertex = Vec::with_capacity(n_pos);
    for l in &letters {
        pos_vertex.push(l.start(alg));
    }
    let mut dims = vec![0usize; nv];
    let mut local = Vec::with_capacity(n_pos);
    for &v in &pos_vertex {
        local.push(dims[v]);
        dims[v] += mult;
    }
    let mut mats: Vec<Mat> = alg
        .quiver
        .arrows
        .iter()
        .map(|a| Mat::zeros(f, dims[a.target] , dims[a.source]))
        .collect();
    let jordan = {
        let mut j = Mat::zeros(f, mult, mult);
        for i in 0..mult {
            j[(i, i)] = lambda % f.p();
            if i + 1 < mult {
                j[(i + 1, i)] = 1;
            }
        }
        j
    };
    let eye = Mat::identity(f, mult);
    for (i, l) in letters.iter().enumerate() {
        let next = (i + 1) % n_pos;
        let (from, to) = if l.inverse { (next, i) } else { (i, next) };
        let block = if i == closing { &jordan } else { &eye };
        for r in 0..mult {
            for c in 0..mult {
                let val = block[(r, c)];
                if val != 0 {
                    mats[l.arrow][(local[to] + r, local[from] + c)] = val;
                }
            }
        }
    }
    let rep = Rep {
        algebra: alg.clone(),
        dims,
        mats,
    };
    rep.validate()
        .map_err(|e| Error::InvalidWord(format!("band violates relations: {e}")))?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::field::Fp;
    use crate::workbench::Workbench;

    fn fp() -> Fp {
        Fp::new(101).unwrap()
    }

    #[test]
    fn empty_string_is_simple() {
        let a = families::a_family(2, fp()).unwrap();
        let s = string_module(&a, &StringWord::empty(0)).unwrap();
        assert_eq!(s.dims, vec![1, 0, 0]);
    }

    #[test]
    fn a2_m_module_top_and_socle() {
        // the length-2 module with top S3 and socle S2: the string "g2"
        let a = families::a_family(2, fp()).unwrap();
        let g2 = parse_letters(&a, "g2").unwrap();
        let m = string_module(
            &a,
            &StringWord {
                letters: g2,
                base_vertex: 0,
            },
        )
        .unwrap();
        assert_eq!(m.dims, vec![0, 1, 1]);
        let (top, _, soc) = m.layers();
        assert_eq!(top.dims, vec![0, 0, 1]);
        assert_eq!(soc.dims, vec![0, 1, 0]);
    }

    #[test]
    fn string_inverse_is_isomorphic() {
        let a = families::a_family(2, fp()).unwrap();
        let w = Workbench::new(a.clone());
        for text in ["a1", "a1*a2", "g1", "a2*g1~"] {
            let letters = parse_letters(&a, text).unwrap();
            let sw = StringWord {
                letters,
                base_vertex: 0,
            };
            let m1 = string_module(&a, &sw).unwrap();
            let m2 = string_module(&a, &sw.inverse(&a)).unwrap();
            assert!(w.is_isomorphic(&m1, &m2).unwrap(), "word {text}");
        }
    }

    #[test]
    fn invalid_words_rejected() {
        let a = families::a_family(2, fp()).unwrap();
        // a1 then g1: a1 ends at 2, g1 starts at 2, but a1*g1 is a relation
        let letters = parse_letters(&a, "a1*g1").unwrap();
        assert!(string_module(
            &a,
            &StringWord {
                letters,
                base_vertex: 0
            }
        )
        .is_err());
        // immediate backtrack
        let letters = parse_letters(&a, "a1*a1~").unwrap();
        assert!(string_module(
            &a,
            &StringWord {
                letters,
                base_vertex: 0
            }
        )
        .is_err());
    }

    #[test]
    fn kronecker_band_dimensions() {
        let a = families::kronecker_trivext(fp()).unwrap();
        let letters = parse_letters(&a, "a1*g1~").unwrap();
        let b = band_module(&a, &BandWord { letters }, 1, 1).unwrap();
        assert_eq!(b.dim(), 2);
        let b2 = band_module(
            &a,
            &BandWord {
                letters: parse_letters(&a, "a1*g1~").unwrap(),
            },
            1,
            2,
        )
        .unwrap();
        assert_eq!(b2.dim(), 4);
    }

    #[test]
    fn band_rejects_all_direct_or_power() {
        let a = families::kronecker_trivext(fp()).unwrap();
        let letters = parse_letters(&a, "a1*a2").unwrap();
        assert!(matches!(
            band_module(&a, &BandWord { letters }, 1, 1),
            Err(Error::InvalidWord(_))
        ));
        let letters = parse_letters(&a, "a1*g1~*a1*g1~").unwrap();
        assert!(matches!(
            band_module(&a, &BandWord { letters }, 1, 1),
            Err(Error::InvalidWord(_))
        ));
        let letters = parse_letters(&a, "a1*g1~").unwrap();
        assert!(matches!(
            band_module(&a, &BandWord { letters }, 0, 1),
            Err(Error::ZeroParameter)
        ));
    }

    #[test]
    fn a2_bands_with_distinct_parameters_not_isomorphic() {
        let a = families::a_family(2, fp()).unwrap();
        let w = Workbench::new(a.clone());
        let make = |lambda: u64| {
            band_module(
                &a,
                &BandWord {
                    letters: parse_letters(&a, "a2*g1~").unwrap(),
                },
                lambda,
                1,
            )
            .unwrap()
        };
        let (b1, b2, b3) = (make(1), make(2), make(3));
        assert_eq!(b1.dims, b2.dims);
        assert!(!w.is_isomorphic(&b1, &b2).unwrap());
        assert!(!w.is_isomorphic(&b1, &b3).unwrap());
        assert!(!w.is_isomorphic(&b2, &b3).unwrap());
        assert!(w.is_isomorphic(&b1, &make(1)).unwrap());
    }

    #[test]
    fn non_special_biserial_rejected() {
        // three arrows out of one vertex
        let src = "algebra fan { field 101; vertices 0 1 2 3;
            arrow a: 0 -> 1; arrow b: 0 -> 2; arrow c: 0 -> 3; nilpotency 2; }";
        let a = crate::dsl::parse_algebra(src).unwrap();
        assert!(matches!(
            check_special_biserial(&a),
            Err(Error::NotSpecialBiserial(_))
        ));
    }
}
