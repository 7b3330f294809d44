//! Generators for the example algebras, emitted as DSL text and parsed.
//!
//! `a_family(n)`: the symmetric special biserial algebra on the (n+1)-cycle
//! of alpha arrows with a two-cycle of gamma arrows between vertices n and
//! n+1; mixed products vanish and the two cycles at a shared vertex are
//! identified. Vertices on the alpha cycle only additionally kill the cycle
//! extended by one arrow, which is what makes the socles line up vertexwise.
//! `kronecker_trivext` is the n = 1 member. `b_family(n)` is the variant
//! with an alpha/beta chain, a gamma 3-cycle and a delta 2-cycle.

use crate::algebra::AlgebraRef;
use crate::dsl::parse_algebra;
use crate::error::{Error, Result};
use crate::field::Fp;

fn build(text: &str) -> Result<AlgebraRef> {
    parse_algebra(text)
}

/// DSL text of A(n) under the given name.
fn a_family_dsl(name: &str, n: usize, p: u64) -> String {
    let nv = n + 1;
    let mut s = format!("algebra {name} {{\n  field {p};\n  composition left_to_right;\n");
    let verts: Vec<String> = (1..=nv).map(|v| v.to_string()).collect();
    s.push_str(&format!("  vertices {};\n", verts.join(" ")));
    for i in 1..=nv {
        let t = if i == nv { 1 } else { i + 1 };
        s.push_str(&format!("  arrow a{i}: {i} -> {t};\n"));
    }
    s.push_str(&format!("  arrow g1: {n} -> {nv};\n"));
    s.push_str(&format!("  arrow g2: {nv} -> {n};\n"));
    // alpha arrow into v / out of v on the cycle 1 -> 2 -> ... -> nv -> 1
    let alpha_into = |v: usize| if v == 1 { nv } else { v - 1 };
    let alpha_path = |start: usize, len: usize| -> String {
        (0..len)
            .map(|k| format!("a{}", (start - 1 + k) % nv + 1))
            .collect::<Vec<_>>()
            .join("*")
    };
    // alpha-then-gamma and gamma-then-alpha products vanish
    s.push_str(&format!("  rel a{}*g1 = 0;\n", alpha_into(n)));
    s.push_str(&format!("  rel a{}*g2 = 0;\n", alpha_into(nv)));
    s.push_str(&format!("  rel g1*a{nv} = 0;\n"));
    s.push_str(&format!("  rel g2*a{n} = 0;\n"));
    // vertices only on the alpha cycle: the cycle extended by one arrow dies
    for v in 1..n {
        s.push_str(&format!("  rel {} = 0;\n", alpha_path(v, nv + 1)));
    }
    // full alpha cycle = gamma square at the two shared vertices
    let minus = p - 1;
    s.push_str(&format!(
        "  rel 1*{} + {minus}*g1*g2 = 0;\n",
        alpha_path(n, nv)
    ));
    s.push_str(&format!(
        "  rel 1*{} + {minus}*g2*g1 = 0;\n",
        alpha_path(nv, nv)
    ));
    s.push_str(&format!("  nilpotency {};\n}}\n", n + 2));
    s
}

pub fn a_family(n: usize, field: Fp) -> Result<AlgebraRef> {
    if n < 1 {
        return Err(Error::BadParameter("A(n) requires n >= 1".into()));
    }
    build(&a_family_dsl(&format!("A{n}"), n, field.p()))
}

/// Trivial extension of the Kronecker algebra: the n = 1 member of A(n).
pub fn kronecker_trivext(field: Fp) -> Result<AlgebraRef> {
    build(&a_family_dsl("kronecker_trivext", 1, field.p()))
}

fn b_family_dsl(n: usize, p: u64) -> String {
    let mut s = format!("algebra B{n} {{\n  field {p};\n  composition left_to_right;\n");
    let verts: Vec<String> = (1..=n + 1).map(|v| v.to_string()).collect();
    s.push_str(&format!("  vertices {};\n", verts.join(" ")));
    for i in 1..=n.saturating_sub(2) {
        s.push_str(&format!("  arrow al{i}: {i} -> {};\n", i + 1));
        s.push_str(&format!("  arrow be{i}: {} -> {i};\n", i + 1));
    }
    s.push_str(&format!("  arrow g1: {} -> {};\n", n - 1, n));
    s.push_str(&format!("  arrow g2: {} -> {};\n", n, n + 1));
    s.push_str(&format!("  arrow g3: {} -> {};\n", n + 1, n - 1));
    s.push_str(&format!("  arrow d1: {} -> {};\n", n, n + 1));
    s.push_str(&format!("  arrow d2: {} -> {};\n", n + 1, n));
    // alpha^2 and beta^2
    for i in 1..=n.saturating_sub(3) {
        s.push_str(&format!("  rel al{i}*al{} = 0;\n", i + 1));
        s.push_str(&format!("  rel be{}*be{i} = 0;\n", i + 1));
    }
    if n >= 3 {
        s.push_str(&format!("  rel al{}*g1 = 0;\n", n - 2));
        s.push_str(&format!("  rel g3*be{} = 0;\n", n - 2));
    }
    s.push_str("  rel d1*g3 = 0;\n");
    s.push_str("  rel d2*g2 = 0;\n");
    s.push_str("  rel g1*d1 = 0;\n");
    s.push_str("  rel g2*d2 = 0;\n");
    let minus = p - 1;
    // alpha beta = beta alpha at interior chain vertices
    for i in 2..=n.saturating_sub(2) {
        s.push_str(&format!(
            "  rel 1*al{i}*be{i} + {minus}*be{}*al{} = 0;\n",
            i - 1,
            i - 1
        ));
    }
    if n >= 3 {
        s.push_str(&format!(
            "  rel 1*be{}*al{} + {minus}*g1*g2*g3 = 0;\n",
            n - 2,
            n - 2
        ));
    }
    s.push_str(&format!("  rel 1*d1*d2 + {minus}*g2*g3*g1 = 0;\n"));
    s.push_str(&format!("  rel 1*d2*d1 + {minus}*g3*g1*g2 = 0;\n"));
    s.push_str("  nilpotency 4;\n}\n");
    s
}

pub fn b_family(n: usize, field: Fp) -> Result<AlgebraRef> {
    if n < 2 {
        return Err(Error::BadParameter(
            "B(n) requires n >= 2 (the chain and the gamma cycle must be disjoint)".into(),
        ));
    }
    build(&b_family_dsl(n, field.p()))
}

/// Self-injective Nakayama algebra: cyclic quiver on m vertices, rad^l = 0.
pub fn nakayama(m: usize, l: usize, field: Fp) -> Result<AlgebraRef> {
    if m < 1 || l < 1 {
        return Err(Error::BadParameter("nakayama(m, l) requires m, l >= 1".into()));
    }
    let p = field.p();
    let mut s = format!("algebra nakayama_{m}_{l} {{\n  field {p};\n  composition left_to_right;\n");
    let verts: Vec<String> = (1..=m).map(|v| v.to_string()).collect();
    s.push_str(&format!("  vertices {};\n", verts.join(" ")));
    if l >= 2 {
        for i in 1..=m {
            let t = if i == m { 1 } else { i + 1 };
            s.push_str(&format!("  arrow a{i}: {i} -> {t};\n"));
        }
        for start in 1..=m {
            let word: Vec<String> = (0..l).map(|k| format!("a{}", (start - 1 + k) % m + 1)).collect();
            s.push_str(&format!("  rel {} = 0;\n", word.join("*")));
        }
        s.push_str(&format!("  nilpotency {l};\n}}\n"));
    } else {
        // semisimple member: no arrows at all
        s.push_str("  nilpotency 2;\n}\n");
    }
    build(&s)
}

/// k[x]/(x^t) as a one-loop quiver algebra.
pub fn local(t: usize, field: Fp) -> Result<AlgebraRef> {
    if t < 2 {
        return Err(Error::BadParameter("local(t) requires t >= 2".into()));
    }
    let p = field.p();
    let word: Vec<&str> = std::iter::repeat("x").take(t).collect();
    let s = format!(
        "algebra local_{t} {{\n  field {p};\n  composition left_to_right;\n  vertices v;\n  arrow x: v -> v;\n  rel {} = 0;\n  nilpotency {t};\n}}\n",
        word.join("*")
    );
    build(&s)
}

/// DSL text of a family by name, for the `example` CLI subcommand.
pub fn family_dsl(spec: &str, p: u64) -> Result<String> {
    let (name, args) = split_spec(spec)?;
    match (name.as_str(), args.as_slice()) {
        ("A", [n]) => {
            if *n < 1 {
                return Err(Error::BadParameter("A(n) requires n >= 1".into()));
            }
            Ok(a_family_dsl(&format!("A{n}"), *n, p))
        }
        ("B", [n]) => {
            if *n < 2 {
                return Err(Error::BadParameter("B(n) requires n >= 2".into()));
            }
            Ok(b_family_dsl(*n, p))
        }
        ("kronecker_trivext", []) => Ok(a_family_dsl("kronecker_trivext", 1, p)),
        ("nakayama", [m, l]) => {
            let alg = nakayama(*m, *l, Fp::new(p)?)?;
            Ok(crate::dsl::print_algebra(&alg))
        }
        ("local", [t]) => {
            let alg = local(*t, Fp::new(p)?)?;
            Ok(crate::dsl::print_algebra(&alg))
        }
        _ => Err(Error::BadParameter(format!(
            "unknown family `{spec}`; expected A(n), B(n), kronecker_trivext, nakayama(m,l) or local(t)"
        ))),
    }
}

/// An algebra by family spec such as "A2", "A(2)", "nakayama(3,2)".
pub fn family(spec: &str, field: Fp) -> Result<AlgebraRef> {
    build(&family_dsl(spec, field.p())?)
}

fn split_spec(spec: &str) -> Result<(String, Vec<usize>)> {
    let spec = spec.trim();
    if let Some(open) = spec.find('(') {
        let name = spec[..open].trim().to_string();
        let inner = spec[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::BadParameter(format!("missing `)` in `{spec}`")))?;
        let args = inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::BadParameter(format!("bad parameter in `{spec}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok((name, args));
    }
    // compact forms: A2, B3, local_2, nakayama_3_2
    if let Some(rest) = spec.strip_prefix('A') {
        if let Ok(n) = rest.parse() {
            return Ok(("A".into(), vec![n]));
        }
    }
    if let Some(rest) = spec.strip_prefix('B') {
        if let Ok(n) = rest.parse() {
            return Ok(("B".into(), vec![n]));
        }
    }
    if spec == "kronecker_trivext" {
        return Ok(("kronecker_trivext".into(), vec![]));
    }
    let parts: Vec<&str> = spec.split('_').collect();
    match parts.as_slice() {
        ["local", t] => Ok(("local".into(), vec![t
            .parse()
            .map_err(|_| Error::BadParameter(format!("bad parameter in `{spec}`")))?])),
        ["nakayama", m, l] => {
            let m = m
                .parse()
                .map_err(|_| Error::BadParameter(format!("bad parameter in `{spec}`")))?;
            let l = l
                .parse()
                .map_err(|_| Error::BadParameter(format!("bad parameter in `{spec}`")))?;
            Ok(("nakayama".into(), vec![m, l]))
        }
        _ => Ok((spec.to_string(), vec![])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Fp {
        Fp::new(101).unwrap()
    }

    #[test]
    fn a2_has_expected_shape() {
        let a = a_family(2, fp()).unwrap();
        assert_eq!(a.quiver.n_vertices(), 3);
        assert_eq!(a.quiver.n_arrows(), 5);
        // mixed products vanish: 4 monomials from the paper's generators,
        // plus the socle relation at vertex 1; the cycle identity holds at
        // both shared vertices
        assert_eq!(a.relations.binomials.len(), 2);
        assert!(a.relations.monomials.len() >= 4);
    }

    #[test]
    fn kronecker_is_a1() {
        let a = kronecker_trivext(fp()).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(a.quiver.n_arrows(), 4);
    }

    #[test]
    fn local2_is_dual_numbers() {
        let a = local(2, fp()).unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn family_spec_forms() {
        assert!(family("A(2)", fp()).is_ok());
        assert!(family("A2", fp()).is_ok());
        assert!(family("nakayama(2,2)", fp()).is_ok());
        assert!(family("local_2", fp()).is_ok());
        assert!(family("C7", fp()).is_err());
        assert!(family("local(1)", fp()).is_err());
    }
}
