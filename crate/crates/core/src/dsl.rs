//! The quiver-with-relations source language.
//!
//! ```text
//! algebra <name> {
//!   field <p>;
//!   composition <left_to_right|right_to_left>;
//!   vertices v1 v2 ...;
//!   arrow <id>: <v> -> <v>;
//!   rel <path> = 0;
//!   rel <c>*<path> + <c>*<path> = 0;
//!   nilpotency <N>;
//! }
//! ```
//!
//! `<path>` is `id(*id)*` over arrow ids. Coefficients are integers mod p;
//! arrow ids must start with a letter or underscore so they never collide
//! with coefficients (vertex ids may be numeric). `field`, `composition`
//! and `nilpotency` are optional; statements may appear in any order as long
//! as vertices precede arrows and arrows precede relations. The printer
//! emits the canonical form, and `parse(print(A)) = A` bit-exactly.

use crate::algebra::{Algebra, AlgebraRef, Composition, RelationSet};
use crate::error::{Error, Result};
use crate::field::{Fp, DEFAULT_PRIME};
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBrace,
    RBrace,
    Semi,
    Colon,
    Arrow, // ->
    Star,
    Plus,
    Eq,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = *self.src.get(self.pos)?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<Spanned>> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
                self.bump();
            }
            if self.peek() == Some(b'#') {
                while !matches!(self.peek(), None | Some(b'\n')) {
                    self.bump();
                }
                continue;
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else { break };
            let tok = match c {
                b'{' => {
                    self.bump();
                    Tok::LBrace
                }
                b'}' => {
                    self.bump();
                    Tok::RBrace
                }
                b';' => {
                    self.bump();
                    Tok::Semi
                }
                b':' => {
                    self.bump();
                    Tok::Colon
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'+' => {
                    self.bump();
                    Tok::Plus
                }
                b'=' => {
                    self.bump();
                    Tok::Eq
                }
                b'-' => {
                    self.bump();
                    if self.peek() == Some(b'>') {
                        self.bump();
                        Tok::Arrow
                    } else if matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                        let n = self.read_number()?;
                        Tok::Int(-n)
                    } else {
                        return Err(Error::Syntax {
                            line,
                            col,
                            expected: "`->` or a number after `-`".into(),
                            found: "`-`".into(),
                        });
                    }
                }
                d if d.is_ascii_digit() => {
                    // a run of digits directly followed by an identifier
                    // character is an identifier (numeric vertex names)
                    let start = self.pos;
                    while matches!(self.peek(), Some(x) if x.is_ascii_alphanumeric() || x == b'_') {
                        self.bump();
                    }
                    let s = std::str::from_utf8(&self.src[start..self.pos])
                        .unwrap()
                        .to_string();
                    if s.bytes().all(|b| b.is_ascii_digit()) {
                        Tok::Int(s.parse().map_err(|_| Error::Syntax {
                            line,
                            col,
                            expected: "number".into(),
                            found: s.clone(),
                        })?)
                    } else {
                        Tok::Ident(s)
                    }
                }
                a if a.is_ascii_alphabetic() || a == b'_' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(x) if x.is_ascii_alphanumeric() || x == b'_') {
                        self.bump();
                    }
                    Tok::Ident(
                        std::str::from_utf8(&self.src[start..self.pos])
                            .unwrap()
                            .to_string(),
                    )
                }
                other => {
                    return Err(Error::Syntax {
                        line,
                        col,
                        expected: "token".into(),
                        found: format!("`{}`", other as char),
                    })
                }
            };
            out.push(Spanned { tok, line, col });
        }
        Ok(out)
    }

    fn read_number(&mut self) -> Result<i64> {
        let start = self.pos;
        while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            self.bump();
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Syntax {
                line: self.line,
                col: self.col,
                expected: "number".into(),
                found: "overflowing literal".into(),
            })
    }
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
}

impl Parser {
    fn err(&self, expected: &str) -> Error {
        let (line, col, found) = match self.toks.get(self.at) {
            Some(s) => (s.line, s.col, format!("{:?}", s.tok)),
            None => (
                self.toks.last().map_or(1, |s| s.line),
                self.toks.last().map_or(1, |s| s.col + 1),
                "end of input".into(),
            ),
        };
        Error::Syntax {
            line,
            col,
            expected: expected.into(),
            found,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|s| &s.tok)
    }

    fn next(&mut self, expected: &str) -> Result<Tok> {
        let t = self
            .toks
            .get(self.at)
            .map(|s| s.tok.clone())
            .ok_or_else(|| self.err(expected))?;
        self.at += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.next(what)? {
            Tok::Ident(s) => Ok(s),
            Tok::Int(n) => Ok(n.to_string()), // numeric vertex names
            _ => {
                self.at -= 1;
                Err(self.err(what))
            }
        }
    }

    fn int(&mut self, what: &str) -> Result<i64> {
        match self.next(what)? {
            Tok::Int(n) => Ok(n),
            _ => {
                self.at -= 1;
                Err(self.err(what))
            }
        }
    }
}

/// An arrow-id path, possibly with a leading coefficient.
type Term = (i64, Vec<String>);

pub fn parse_algebra(text: &str) -> Result<AlgebraRef> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, at: 0 };

    match p.next("`algebra`")? {
        Tok::Ident(k) if k == "algebra" => {}
        _ => {
            p.at -= 1;
            return Err(p.err("`algebra`"));
        }
    }
    let name = p.ident("algebra name")?;
    p.expect(Tok::LBrace, "`{`")?;

    let mut field: Option<u64> = None;
    let mut composition = Composition::LeftToRight;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut rels: Vec<(Term, Option<Term>)> = Vec::new();
    let mut nilpotency: Option<usize> = None;

    loop {
        match p.peek() {
            Some(Tok::RBrace) => {
                p.at += 1;
                break;
            }
            Some(Tok::Ident(k)) => {
                let k = k.clone();
                p.at += 1;
                match k.as_str() {
                    "field" => {
                        let v = p.int("prime")?;
                        if v < 2 {
                            return Err(Error::BadParameter(format!("field {v} is not prime")));
                        }
                        field = Some(v as u64);
                        p.expect(Tok::Semi, "`;`")?;
                    }
                    "composition" => {
                        let c = p.ident("`left_to_right` or `right_to_left`")?;
                        composition = match c.as_str() {
                            "left_to_right" => Composition::LeftToRight,
                            "right_to_left" => Composition::RightToLeft,
                            _ => return Err(p.err("`left_to_right` or `right_to_left`")),
                        };
                        p.expect(Tok::Semi, "`;`")?;
                    }
                    "vertices" => {
                        while p.peek() != Some(&Tok::Semi) {
                            vertices.push(p.ident("vertex id")?);
                        }
                        p.expect(Tok::Semi, "`;`")?;
                    }
                    "arrow" => {
                        let id = p.ident("arrow id")?;
                        if !id
                            .chars()
                            .next()
                            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                        {
                            return Err(Error::BadParameter(format!(
                                "arrow id `{id}` must start with a letter or `_`"
                            )));
                        }
                        p.expect(Tok::Colon, "`:`")?;
                        let s = p.ident("source vertex")?;
                        p.expect(Tok::Arrow, "`->`")?;
                        let t = p.ident("target vertex")?;
                        p.expect(Tok::Semi, "`;`")?;
                        arrows.push((id, s, t));
                    }
                    "rel" => {
                        let t1 = parse_term(&mut p)?;
                        let t2 = if p.peek() == Some(&Tok::Plus) {
                            p.at += 1;
                            Some(parse_term(&mut p)?)
                        } else {
                            None
                        };
                        p.expect(Tok::Eq, "`=`")?;
                        let z = p.int("`0`")?;
                        if z != 0 {
                            return Err(p.err("`0` on the right-hand side"));
                        }
                        p.expect(Tok::Semi, "`;`")?;
                        rels.push((t1, t2));
                    }
                    "nilpotency" => {
                        let n = p.int("bound")?;
                        if n < 2 {
                            return Err(Error::BadParameter(
                                "nilpotency bound must be >= 2".into(),
                            ));
                        }
                        nilpotency = Some(n as usize);
                        p.expect(Tok::Semi, "`;`")?;
                    }
                    _ => {
                        p.at -= 1;
                        return Err(p.err(
                            "`field`, `composition`, `vertices`, `arrow`, `rel` or `nilpotency`",
                        ));
                    }
                }
            }
            _ => return Err(p.err("statement or `}`")),
        }
    }

    if vertices.is_empty() {
        return Err(Error::BadParameter("no vertices declared".into()));
    }
    let fp = Fp::new(field.unwrap_or(DEFAULT_PRIME))?;
    let quiver = Quiver::new(vertices, arrows)?;

    let to_word = |path: &[String]| -> Result<Vec<usize>> {
        let mut w = Vec::with_capacity(path.len());
        for id in path {
            w.push(quiver.arrow_index(id)?);
        }
        if composition == Composition::RightToLeft {
            w.reverse();
        }
        Ok(w)
    };

    let mut relations = RelationSet {
        monomials: vec![],
        binomials: vec![],
    };
    for ((c1, p1), t2) in rels {
        match t2 {
            None => {
                if fp.reduce_i64(c1) == 0 {
                    return Err(Error::BadParameter(
                        "relation with zero coefficient".into(),
                    ));
                }
                relations.monomials.push(to_word(&p1)?);
            }
            Some((c2, p2)) => {
                relations.binomials.push((
                    fp.reduce_i64(c1),
                    to_word(&p1)?,
                    fp.reduce_i64(c2),
                    to_word(&p2)?,
                ));
            }
        }
    }

    Algebra::build(name, quiver, relations, fp, nilpotency, composition).map_err(|e| match e {
        // within parse, a blown bound means the declared presentation is bad
        Error::BoundExceeded(msg) => Error::NonAdmissible(msg),
        other => other,
    })
}

fn parse_term(p: &mut Parser) -> Result<Term> {
    let coef = if let Some(Tok::Int(n)) = p.peek() {
        let n = *n;
        p.at += 1;
        p.expect(Tok::Star, "`*` after coefficient")?;
        n
    } else {
        1
    };
    let mut path = vec![p.ident("arrow id")?];
    while p.peek() == Some(&Tok::Star) {
        p.at += 1;
        path.push(p.ident("arrow id")?);
    }
    Ok((coef, path))
}

/// Canonical DSL text for an algebra.
pub fn print_algebra(alg: &Algebra) -> String {
    let q = &alg.quiver;
    let word = |w: &[usize]| -> String {
        let mut ids: Vec<&str> = w.iter().map(|&a| q.arrows[a].name.as_str()).collect();
        if alg.composition == Composition::RightToLeft {
            ids.reverse();
        }
        ids.join("*")
    };
    let mut s = String::new();
    s.push_str(&format!("algebra {} {{\n", alg.name));
    s.push_str(&format!("  field {};\n", alg.field.p()));
    s.push_str(&format!(
        "  composition {};\n",
        match alg.composition {
            Composition::LeftToRight => "left_to_right",
            Composition::RightToLeft => "right_to_left",
        }
    ));
    s.push_str(&format!("  vertices {};\n", q.vertices.join(" ")));
    for a in &q.arrows {
        s.push_str(&format!(
            "  arrow {}: {} -> {};\n",
            a.name, q.vertices[a.source], q.vertices[a.target]
        ));
    }
    for m in &alg.relations.monomials {
        s.push_str(&format!("  rel {} = 0;\n", word(m)));
    }
    for (c1, p1, c2, p2) in &alg.relations.binomials {
        s.push_str(&format!(
            "  rel {}*{} + {}*{} = 0;\n",
            c1,
            word(p1),
            c2,
            word(p2)
        ));
    }
    s.push_str(&format!("  nilpotency {};\n", alg.nilpotency));
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_CYCLE: &str = "algebra twocycle {
  field 101;
  vertices 1 2;
  arrow a: 1 -> 2;
  arrow b: 2 -> 1;
  rel a*b = 0;
  rel b*a = 0;
  nilpotency 2;
}";

    #[test]
    fn parses_two_cycle() {
        let a = parse_algebra(TWO_CYCLE).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.name, "twocycle");
    }

    #[test]
    fn print_parse_is_bit_exact() {
        let a = parse_algebra(TWO_CYCLE).unwrap();
        let text = print_algebra(&a);
        let b = parse_algebra(&text).unwrap();
        assert_eq!(print_algebra(&b), text);
        assert_eq!(a.basis, b.basis);
        assert_eq!(a.mult, b.mult);
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_algebra("algebra x { vertices 1; arrow ; }").unwrap_err();
        match err {
            Error::Syntax { line, col, .. } => {
                assert_eq!(line, 1);
                assert!(col > 1);
            }
            other => panic!("expected syntax error, got {other}"),
        }
    }

    #[test]
    fn single_arrow_relation_is_nonadmissible() {
        let err = parse_algebra(
            "algebra x { vertices 1 2; arrow a: 1 -> 2; rel a = 0; nilpotency 2; }",
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonAdmissible(_)));
    }

    #[test]
    fn right_to_left_reverses_words() {
        // b*a in right-to-left means "a then b", i.e. the l2r word a*b
        let src = "algebra x {
  field 101;
  composition right_to_left;
  vertices 1 2;
  arrow a: 1 -> 2;
  arrow b: 2 -> 1;
  rel b*a = 0;
  rel a*b = 0;
  nilpotency 2;
}";
        let a = parse_algebra(src).unwrap();
        assert_eq!(a.dim(), 4);
        // round trip preserves the declared convention
        let text = print_algebra(&a);
        assert!(text.contains("right_to_left"));
        let b = parse_algebra(&text).unwrap();
        assert_eq!(print_algebra(&b), text);
    }

    #[test]
    fn mismatched_endpoints_rejected() {
        let err = parse_algebra(
            "algebra x { vertices 1 2; arrow a: 1 -> 2; rel a*a = 0; nilpotency 3; }",
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonComposable(_)));
    }
}
