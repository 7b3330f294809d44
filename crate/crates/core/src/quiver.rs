//! Quivers: named vertices and arrows, and composable words of arrows.
//!
//! Words compose left to right: `w = [a, b]` is the walk `a` then `b` and
//! requires `target(a) = source(b)`. Right-to-left input is normalized at
//! the DSL layer, so everything past the parser uses this one convention.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::BadParameter(format!("duplicate vertex id `{v}`")));
            }
        }
        let index = |name: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut named = std::collections::BTreeSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            if !named.insert(name.clone()) {
                return Err(Error::BadParameter(format!("duplicate arrow id `{name}`")));
            }
            out.push(Arrow {
                source: index(&s)?,
                target: index(&t)?,
                name,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    /// Rank of each arrow under lexicographic order of arrow id strings;
    /// the word order below ties on these ranks.
    pub fn arrow_lex_ranks(&self) -> Vec<usize> {
        let mut by_name: Vec<usize> = (0..self.arrows.len()).collect();
        by_name.sort_by(|&a, &b| self.arrows[a].name.cmp(&self.arrows[b].name));
        let mut rank = vec![0; self.arrows.len()];
        for (r, &i) in by_name.iter().enumerate() {
            rank[i] = r;
        }
        rank
    }

    /// Check that consecutive arrows compose; returns (source, target).
    pub fn word_endpoints(&self, word: &[usize]) -> Result<(usize, usize)> {
        assert!(!word.is_empty());
        for pair in word.windows(2) {
            let (a, b) = (&self.arrows[pair[0]], &self.arrows[pair[1]]);
            if a.target != b.source {
                return Err(Error::NonComposable(format!(
                    "`{}` ends at `{}` but `{}` starts at `{}`",
                    a.name, self.vertices[a.target], b.name, self.vertices[b.source]
                )));
            }
        }
        Ok((
            self.arrows[word[0]].source,
            self.arrows[*word.last().unwrap()].target,
        ))
    }

    pub fn word_name(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&i| self.arrows[i].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Total order on words: by length, then lexicographic on arrow-id ranks.
pub fn word_cmp(ranks: &[usize], a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().map(|&i| ranks[i]).cmp(b.iter().map(|&i| ranks[i])))
}
