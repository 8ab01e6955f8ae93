//! Quandle and group presentations, the n-quandle quotient scheme, and the
//! derivation of enveloping-group presentations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::words::{translate_word, GroupWord, QWord};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuandlePresentation {
    pub generators: Vec<String>,
    pub relations: Vec<(QWord, QWord)>,
}

impl QuandlePresentation {
    pub fn new(generators: Vec<String>, relations: Vec<(QWord, QWord)>) -> QuandlePresentation {
        let p = QuandlePresentation { generators, relations };
        for (u, v) in &p.relations {
            assert!(
                u.max_generator() < p.generators.len() && v.max_generator() < p.generators.len(),
                "relation mentions a generator out of range"
            );
        }
        p
    }

    pub fn free(generators: Vec<String>) -> QuandlePresentation {
        QuandlePresentation { generators, relations: Vec::new() }
    }

    /// Adds the n-quandle relations `x_i *^n x_j = x_i` for every ordered
    /// pair of distinct generators.
    pub fn n_quandle(&self, n: u64) -> QuandlePresentation {
        assert!(n >= 2);
        let mut relations = self.relations.clone();
        let s = self.generators.len();
        for i in 0..s {
            for j in 0..s {
                if i != j {
                    let lhs = QWord::new(i, std::iter::repeat((j, 1)).take(n as usize));
                    relations.push((lhs, QWord::generator(i)));
                }
            }
        }
        QuandlePresentation { generators: self.generators.clone(), relations }
    }

    /// Parses the text format: a `gens x y z` line followed by
    /// `rel WORD = WORD` lines.
    pub fn parse(text: &str) -> Result<QuandlePresentation, String> {
        let mut generators: Option<Vec<String>> = None;
        let mut relations = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens") {
                if generators.is_some() {
                    return Err(format!("line {}: duplicate gens line", lineno + 1));
                }
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(format!("line {}: gens line lists no generators", lineno + 1));
                }
                generators = Some(names);
            } else if let Some(rest) = line.strip_prefix("rel") {
                let names =
                    generators.as_ref().ok_or_else(|| format!("line {}: rel before gens", lineno + 1))?;
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| format!("line {}: rel line has no '='", lineno + 1))?;
                let u = QWord::parse(lhs, names).map_err(|e| format!("line {}: {e}", lineno + 1))?;
                let v = QWord::parse(rhs, names).map_err(|e| format!("line {}: {e}", lineno + 1))?;
                relations.push((u, v));
            } else {
                return Err(format!("line {}: expected 'gens' or 'rel'", lineno + 1));
            }
        }
        let generators = generators.ok_or("missing gens line")?;
        Ok(QuandlePresentation { generators, relations })
    }
}

impl fmt::Display for QuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        for (u, v) in &self.relations {
            writeln!(f, "rel {} = {}", u.display(&self.generators), v.display(&self.generators))?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<GroupWord>,
}

impl GroupPresentation {
    /// Parses a `gens ...` line followed by `relator g1^e1 g2^e2 ...` lines.
    pub fn parse(text: &str) -> Result<GroupPresentation, String> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens") {
                generators = Some(rest.split_whitespace().map(String::from).collect());
            } else if let Some(rest) = line.strip_prefix("relator") {
                let names = generators
                    .as_ref()
                    .ok_or_else(|| format!("line {}: relator before gens", lineno + 1))?;
                relators
                    .push(GroupWord::parse(rest, names).map_err(|e| format!("line {}: {e}", lineno + 1))?);
            } else {
                return Err(format!("line {}: expected 'gens' or 'relator'", lineno + 1));
            }
        }
        Ok(GroupPresentation { generators: generators.ok_or("missing gens line")?, relators })
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            writeln!(f, "relator {}", r.display(&self.generators))?;
        }
        Ok(())
    }
}

/// Enveloping-group presentation: one group generator per quandle generator;
/// each relation `u = v` becomes the relator `translate(u) translate(v)^{-1}`.
pub fn env_presentation(p: &QuandlePresentation) -> GroupPresentation {
    let relators = p
        .relations
        .iter()
        .map(|(u, v)| translate_word(u).mul(&translate_word(v).inverse()))
        .filter(|r| !r.is_empty())
        .collect();
    GroupPresentation { generators: p.generators.iter().map(|g| format!("e_{g}")).collect(), relators }
}

/// Enveloping presentation plus the order relators `e_i^n` per generator.
pub fn env_n_presentation(p: &QuandlePresentation, n: u64) -> GroupPresentation {
    let mut g = env_presentation(p);
    for i in 0..p.generators.len() {
        g.relators.push(GroupWord::from_syllables([(i, n as i64)]));
    }
    g
}
