//! Left-associated quandle words and reduced group words.
//!
//! A quandle word `x0 *^{e1} x1 *^{e2} ... *^{en} xn` is stored as a base
//! generator plus a tail of signed generator letters. Words are kept reduced:
//! adjacent letters on the same generator with opposite signs cancel.
//! Idempotent base absorption is an equational fact, not a word reduction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::quandle::FiniteQuandle;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct QWord {
    base: usize,
    tail: Vec<(usize, i8)>,
}

/// Cancels adjacent inverse pairs on equal generators.
fn reduce_tail(letters: impl IntoIterator<Item = (usize, i8)>) -> Vec<(usize, i8)> {
    let mut out: Vec<(usize, i8)> = Vec::new();
    for (g, s) in letters {
        debug_assert!(s == 1 || s == -1);
        if out.last() == Some(&(g, -s)) {
            out.pop();
        } else {
            out.push((g, s));
        }
    }
    out
}

fn inverted_reversed(tail: &[(usize, i8)]) -> impl Iterator<Item = (usize, i8)> + '_ {
    tail.iter().rev().map(|&(g, s)| (g, -s))
}

impl QWord {
    pub fn generator(base: usize) -> QWord {
        QWord { base, tail: Vec::new() }
    }

    /// Builds a reduced word from a base and tail letters.
    pub fn new(base: usize, tail: impl IntoIterator<Item = (usize, i8)>) -> QWord {
        QWord { base, tail: reduce_tail(tail) }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn tail(&self) -> &[(usize, i8)] {
        &self.tail
    }

    pub fn tail_len(&self) -> usize {
        self.tail.len()
    }

    /// Appends one signed generator letter, reducing.
    pub fn append(&self, gen: usize, sign: i8) -> QWord {
        QWord::new(self.base, self.tail.iter().copied().chain([(gen, sign)]))
    }

    /// The quandle operation `self *^{sign} other` on left-associated words:
    /// the tail grows by `other` conjugated in, and the result is reduced.
    pub fn op(&self, other: &QWord, sign: i8) -> QWord {
        let letters = self
            .tail
            .iter()
            .copied()
            .chain(inverted_reversed(&other.tail))
            .chain([(other.base, sign)])
            .chain(other.tail.iter().copied());
        QWord::new(self.base, letters)
    }

    /// Largest generator id mentioned, for range checks.
    pub fn max_generator(&self) -> usize {
        self.tail.iter().map(|&(g, _)| g).fold(self.base, usize::max)
    }

    /// Evaluates the word in a finite quandle under `images` per generator.
    pub fn eval(&self, q: &FiniteQuandle, images: &[usize]) -> usize {
        let mut v = images[self.base];
        for &(g, s) in &self.tail {
            v = q.op_signed(v, images[g], s);
        }
        v
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> QWordDisplay<'a> {
        QWordDisplay { word: self, names }
    }

    /// Parses `base (OP gen)*` with OP in `*`, `*-`, and the sugar `*^k gen`
    /// / `*^-k gen` for repeated letters.
    pub fn parse(text: &str, names: &[String]) -> Result<QWord, String> {
        let find = |name: &str| -> Result<usize, String> {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| format!("unknown generator '{name}'"))
        };
        let s: Vec<char> = text.chars().collect();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < s.len() && s[*i].is_whitespace() {
                *i += 1;
            }
        };
        let ident = |i: &mut usize| -> Result<String, String> {
            let start = *i;
            while *i < s.len() && (s[*i].is_alphanumeric() || s[*i] == '_') {
                *i += 1;
            }
            if *i == start {
                return Err(format!("expected generator name at position {start} in '{text}'"));
            }
            Ok(s[start..*i].iter().collect())
        };

        skip_ws(&mut i);
        let base = find(&ident(&mut i)?)?;
        let mut tail: Vec<(usize, i8)> = Vec::new();
        loop {
            skip_ws(&mut i);
            if i == s.len() {
                break;
            }
            if s[i] != '*' {
                return Err(format!("expected '*' at position {i} in '{text}'"));
            }
            i += 1;
            let mut sign: i8 = 1;
            let mut count: usize = 1;
            if i < s.len() && s[i] == '^' {
                i += 1;
                if i < s.len() && s[i] == '-' {
                    sign = -1;
                    i += 1;
                }
                let start = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                count = s[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| format!("bad exponent at position {start} in '{text}'"))?;
                skip_ws(&mut i);
            } else if i < s.len() && s[i] == '-' {
                sign = -1;
                i += 1;
            }
            skip_ws(&mut i);
            let g = find(&ident(&mut i)?)?;
            tail.extend(std::iter::repeat((g, sign)).take(count));
        }
        Ok(QWord::new(base, tail))
    }
}

pub struct QWordDisplay<'a> {
    word: &'a QWord,
    names: &'a [String],
}

impl fmt::Display for QWordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names[self.word.base])?;
        for &(g, s) in &self.word.tail {
            write!(f, "{}{}", if s > 0 { "*" } else { "*-" }, self.names[g])?;
        }
        Ok(())
    }
}

/// A freely reduced group word: syllables `(generator, exponent)` with
/// adjacent generators distinct and exponents nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct GroupWord {
    syllables: Vec<(usize, i64)>,
}

impl GroupWord {
    pub fn empty() -> GroupWord {
        GroupWord { syllables: Vec::new() }
    }

    pub fn generator(g: usize) -> GroupWord {
        GroupWord { syllables: vec![(g, 1)] }
    }

    pub fn from_syllables(syllables: impl IntoIterator<Item = (usize, i64)>) -> GroupWord {
        let mut out = GroupWord::empty();
        for (g, e) in syllables {
            out.push_syllable(g, e);
        }
        out
    }

    fn push_syllable(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        for &(g, e) in &other.syllables {
            out.push_syllable(g, e);
        }
        out
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Expands to single letters `(generator, ±1)`.
    pub fn letters(&self) -> Vec<(usize, i8)> {
        let mut out = Vec::new();
        for &(g, e) in &self.syllables {
            let s: i8 = if e > 0 { 1 } else { -1 };
            for _ in 0..e.unsigned_abs() {
                out.push((g, s));
            }
        }
        out
    }

    pub fn exponent_sum(&self) -> i64 {
        self.syllables.iter().map(|&(_, e)| e).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|&(g, _)| g).max()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> GroupWordDisplay<'a> {
        GroupWordDisplay { word: self, names }
    }

    /// Parses whitespace-separated syllables `name^exp` (`^1` may be omitted).
    pub fn parse(text: &str, names: &[String]) -> Result<GroupWord, String> {
        let mut out = GroupWord::empty();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    (n, e.parse::<i64>().map_err(|_| format!("bad exponent in '{tok}'"))?)
                }
                None => (tok, 1),
            };
            let g = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| format!("unknown generator '{name}'"))?;
            out.push_syllable(g, exp);
        }
        Ok(out)
    }
}

pub struct GroupWordDisplay<'a> {
    word: &'a GroupWord,
    names: &'a [String],
}

impl fmt::Display for GroupWordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}^{}", self.names[g], e)?;
        }
        Ok(())
    }
}

/// Image of a left-associated quandle word in the enveloping group:
/// `x0 *^{e1} x1 ... *^{en} xn` maps to `g^{-1} e_{x0} g` with
/// `g = e_{x1}^{e1} ... e_{xn}^{en}`.
pub fn translate_word(w: &QWord) -> GroupWord {
    let g = GroupWord::from_syllables(w.tail().iter().map(|&(x, s)| (x, s as i64)));
    g.inverse().mul(&GroupWord::generator(w.base())).mul(&g)
}

/// Total exponent sum of a group word modulo `n`, in `0..n`.
pub fn exponent_sum_mod(w: &GroupWord, n: u64) -> u64 {
    w.exponent_sum().rem_euclid(n as i64) as u64
}

/// Membership in `E_n^0`: total exponent sum zero mod `n`.
pub fn is_in_e0(w: &GroupWord, n: u64) -> bool {
    exponent_sum_mod(w, n) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn reduction_cancels_inverse_pairs() {
        let ns = names(&["x", "y", "z"]);
        let w = QWord::parse("x*y*-y", &ns).unwrap();
        assert_eq!(w, QWord::generator(0));
        let w = QWord::parse("x*y*z", &ns).unwrap();
        assert_eq!(w.tail(), &[(1, 1), (2, 1)]);
        let w = QWord::parse("x*y*-y*y", &ns).unwrap();
        assert_eq!(w, QWord::new(0, [(1, 1)]));
    }

    #[test]
    fn sugar_expands() {
        let ns = names(&["x", "y"]);
        assert_eq!(QWord::parse("x*^3y", &ns).unwrap(), QWord::new(0, [(1, 1), (1, 1), (1, 1)]));
        assert_eq!(QWord::parse("x*^-2 y", &ns).unwrap(), QWord::new(0, [(1, -1), (1, -1)]));
        assert_eq!(QWord::parse("x *- y", &ns).unwrap(), QWord::new(0, [(1, -1)]));
    }

    #[test]
    fn display_round_trips() {
        let ns = names(&["x", "y", "z"]);
        for text in ["x", "x*y", "x*-y*z", "x*y*y*-z"] {
            let w = QWord::parse(text, &ns).unwrap();
            assert_eq!(w.display(&ns).to_string(), *text);
        }
    }

    #[test]
    fn word_op_expansion() {
        let x = QWord::generator(0);
        let y = QWord::generator(1);
        // x * y
        let xy = x.op(&y, 1);
        assert_eq!(xy, QWord::new(0, [(1, 1)]));
        // (x*y) *^{-1} y = x
        assert_eq!(xy.op(&y, -1), x);
        // (x*y) * (x*y) collapses the conjugator: result is x*x*y as a word
        let sq = xy.op(&xy, 1);
        assert_eq!(sq, QWord::new(0, [(0, 1), (1, 1)]));
    }

    #[test]
    fn distributivity_is_a_word_identity() {
        // (u*v)*w and (u*w)*(v*w) reduce to the same left-associated word
        let ns = names(&["x", "y", "z"]);
        let u = QWord::parse("x*y", &ns).unwrap();
        let v = QWord::parse("y*-z", &ns).unwrap();
        let w = QWord::parse("z*x*y", &ns).unwrap();
        for (su, sv) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let lhs = u.op(&v, su).op(&w, sv);
            let rhs = u.op(&w, sv).op(&v.op(&w, sv), su);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn eval_in_dihedral() {
        let r3 = FiniteQuandle::dihedral(3);
        let ns = names(&["x", "y"]);
        let w = QWord::parse("x*y", &ns).unwrap();
        assert_eq!(w.eval(&r3, &[0, 1]), 2);
        let w2 = QWord::parse("x*y*-y", &ns).unwrap();
        assert_eq!(w2.eval(&r3, &[0, 1]), 0);
    }

    #[test]
    fn group_word_arithmetic() {
        let a = GroupWord::generator(0);
        let b = GroupWord::generator(1);
        let w = a.mul(&b).mul(&b.inverse()).mul(&a);
        assert_eq!(w.syllables(), &[(0, 2)]);
        assert_eq!(w.exponent_sum(), 2);
        assert_eq!(w.pow(-1), w.inverse());
        assert!(a.mul(&a.inverse()).is_empty());
        assert_eq!(a.mul(&b).letters(), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn translate_examples() {
        let ns = names(&["x", "y", "z"]);
        let w = QWord::parse("x", &ns).unwrap();
        assert_eq!(translate_word(&w), GroupWord::generator(0));
        // x*y -> y^-1 x y
        let w = QWord::parse("x*y", &ns).unwrap();
        assert_eq!(translate_word(&w), GroupWord::from_syllables([(1, -1), (0, 1), (1, 1)]));
        // x*-y*z -> z^-1 y x y^-1 z
        let w = QWord::parse("x*-y*z", &ns).unwrap();
        assert_eq!(
            translate_word(&w),
            GroupWord::from_syllables([(2, -1), (1, 1), (0, 1), (1, -1), (2, 1)])
        );
    }

    #[test]
    fn translate_length_and_center() {
        // pre-reduction length is 2|tail| + 1, and reducing the conjugator
        // halves never touches the central base letter: translating the
        // reduced word equals conjugating by the reduced tail
        let ns = names(&["x", "y", "z"]);
        let w = QWord::parse("x*y*z*-z*y", &ns).unwrap(); // reduces to x*y*y
        assert_eq!(w.tail_len(), 2);
        let t = translate_word(&w);
        let raw_len: usize = 2 * w.tail_len() + 1;
        let letter_count: usize = t.letters().len();
        assert_eq!(letter_count, raw_len);
        assert_eq!(t, GroupWord::from_syllables([(1, -2), (0, 1), (1, 2)]));
    }

    #[test]
    fn exponent_sums() {
        let w = GroupWord::from_syllables([(0, 1), (1, -1)]);
        assert_eq!(exponent_sum_mod(&w, 2), 0);
        assert!(is_in_e0(&w, 2));
        let w = GroupWord::generator(0);
        assert_eq!(exponent_sum_mod(&w, 5), 1);
        assert!(!is_in_e0(&w, 5));
    }

    #[test]
    fn group_word_parse_display() {
        let ns = names(&["a", "b"]);
        let w = GroupWord::parse("a^2 b^-1 a", &ns).unwrap();
        assert_eq!(w.syllables(), &[(0, 2), (1, -1), (0, 1)]);
        assert_eq!(w.display(&ns).to_string(), "a^2 b^-1 a^1");
        assert_eq!(GroupWord::parse("", &ns).unwrap(), GroupWord::empty());
    }
}
