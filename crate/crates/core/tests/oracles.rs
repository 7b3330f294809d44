//! Independent cross-checks for values that the main code path computes via
//! the completed rewriting system.
//!
//! The dimension oracle here never looks at rewrite rules: it spans the
//! graded pieces of the ideal inside the free path space directly,
//!   dim A = #paths(< L)  -  dim span{ u*r*v } - #paths(N..L),
//! which is valid once rad^N = 0 (paths of length >= N are declared zero and
//! the window L = N + max relation length captures every product that can
//! leak below N through a binomial).

use stmod_core::algebra::AlgebraRef;
use stmod_core::families;
use stmod_core::field::Fp;
use stmod_core::matrix::RowSpace;
use stmod_core::rep::Rep;

fn fp() -> Fp {
    Fp::new(101).unwrap()
}

/// All composable words of length in [1, max_len], plus one empty word per
/// vertex encoded as None.
fn all_paths(alg: &AlgebraRef, max_len: usize) -> Vec<Vec<usize>> {
    let q = &alg.quiver;
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..q.n_arrows()).map(|a| vec![a]).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            out.push(w.clone());
            let end = q.arrows[*w.last().unwrap()].target;
            for a in q.arrows_from(end) {
                let mut ext = w.clone();
                ext.push(a);
                next.push(ext);
            }
        }
        frontier = next;
    }
    out
}

/// Dimension of kQ/I by direct linear algebra over the free path space.
fn dim_by_ideal_span(alg: &AlgebraRef) -> usize {
    let f = alg.field;
    let n_bound = alg.nilpotency;
    let window = n_bound + alg.relations.max_len().max(2);
    let paths = all_paths(alg, window);
    let index_of = |w: &[usize]| paths.iter().position(|p| p == w).expect("path in window");
    let n_idems = alg.quiver.n_vertices();
    let ambient = n_idems + paths.len();

    let mut span = RowSpace::new(f, ambient);
    // paths of length >= N are zero
    for (i, p) in paths.iter().enumerate() {
        if p.len() >= n_bound {
            let mut v = vec![0u64; ambient];
            v[n_idems + i] = 1;
            span.insert(v);
        }
    }
    // u * r * v over all composable sandwiches inside the window
    let mono_vec = |w: &[usize]| -> Option<Vec<u64>> {
        (w.len() <= window).then(|| {
            let mut v = vec![0u64; ambient];
            v[n_idems + index_of(w)] = 1;
            v
        })
    };
    let sandwiches = |p: &[usize]| -> Vec<(Vec<usize>, Vec<usize>)> {
        let q = &alg.quiver;
        let (src, tgt) = q.word_endpoints(p).unwrap();
        let mut lefts: Vec<Vec<usize>> = vec![vec![]];
        lefts.extend(
            paths
                .iter()
                .filter(|u| q.word_endpoints(u).unwrap().1 == src)
                .cloned(),
        );
        let mut rights: Vec<Vec<usize>> = vec![vec![]];
        rights.extend(
            paths
                .iter()
                .filter(|v| q.word_endpoints(v).unwrap().0 == tgt)
                .cloned(),
        );
        let mut out = Vec::new();
        for u in &lefts {
            for v in &rights {
                if u.len() + p.len() + v.len() <= window {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
        out
    };
    for m in &alg.relations.monomials {
        for (u, v) in sandwiches(m) {
            let mut w = u.clone();
            w.extend_from_slice(m);
            w.extend_from_slice(&v);
            if let Some(vec) = mono_vec(&w) {
                span.insert(vec);
            }
        }
    }
    for (c1, p1, c2, p2) in &alg.relations.binomials {
        for (u, v) in sandwiches(p1) {
            let mut w1 = u.clone();
            w1.extend_from_slice(p1);
            w1.extend_from_slice(&v);
            let mut w2 = u.clone();
            w2.extend_from_slice(p2);
            w2.extend_from_slice(&v);
            if w1.len() > window || w2.len() > window {
                continue;
            }
            let mut vec = vec![0u64; ambient];
            vec[n_idems + index_of(&w1)] = *c1;
            vec[n_idems + index_of(&w2)] = f.add(vec[n_idems + index_of(&w2)], *c2);
            span.insert(vec);
        }
    }
    ambient - span.dim()
}

#[test]
fn oracle_dim_a2_is_14() {
    let a = families::a_family(2, fp()).unwrap();
    assert_eq!(dim_by_ideal_span(&a), 14);
    assert_eq!(a.dim(), 14);
}

#[test]
fn oracle_dim_a3_is_22() {
    let a = families::a_family(3, fp()).unwrap();
    assert_eq!(dim_by_ideal_span(&a), 22);
    assert_eq!(a.dim(), 22);
}

#[test]
fn oracle_dim_b3_is_18() {
    let a = families::b_family(3, fp()).unwrap();
    assert_eq!(dim_by_ideal_span(&a), 18);
    assert_eq!(a.dim(), 18);
}

#[test]
fn oracle_dim_b4() {
    let a = families::b_family(4, fp()).unwrap();
    assert_eq!(dim_by_ideal_span(&a), a.dim());
}

#[test]
fn oracle_dim_kronecker_is_8() {
    let a = families::kronecker_trivext(fp()).unwrap();
    assert_eq!(dim_by_ideal_span(&a), 8);
    assert_eq!(a.dim(), 8);
}

/// Sum of projective dims equals dim A, and P(1) of A(2) has the dim vector
/// given by counting basis paths from vertex 1.
#[test]
fn oracle_projective_dims_a2() {
    let a = families::a_family(2, fp()).unwrap();
    let dims: Vec<usize> = (0..3).map(|v| Rep::projective(&a, v).dim()).collect();
    assert_eq!(dims.iter().sum::<usize>(), a.dim());
    assert_eq!(dims, vec![4, 5, 5]);
    assert_eq!(Rep::projective(&a, 0).dims, vec![2, 1, 1]);
}

/// Every declared relation annihilates every projective (the regular module
/// satisfies the relations).
#[test]
fn relations_annihilate_regular_module() {
    for alg in [
        families::a_family(2, fp()).unwrap(),
        families::a_family(3, fp()).unwrap(),
        families::b_family(3, fp()).unwrap(),
        families::kronecker_trivext(fp()).unwrap(),
        families::nakayama(3, 2, fp()).unwrap(),
        families::local(2, fp()).unwrap(),
    ] {
        let (reg, _) = Rep::regular(&alg);
        reg.validate().unwrap();
    }
}
