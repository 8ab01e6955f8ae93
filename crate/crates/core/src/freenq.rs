//! Free n-quandles on a finite generating set, realized inside the free
//! product of cyclic groups of order n as the conjugates of the generators.
//!
//! An element is `g^{-1} s g` for a generator `s` and a reduced word `g` in
//! the free product. Since the centralizer of a generator is the cyclic
//! group it generates, stripping any leading `s`-syllable from `g` makes the
//! pair `(s, g)` a unique normal form, so equality is syllable-wise
//! comparison.

use std::fmt;

/// A reduced free-product word: syllables `(generator, exponent)` with
/// exponents in `1..n` and adjacent generators distinct.
pub type Syllables = Vec<(usize, u32)>;

fn push_syllable(n: u32, out: &mut Syllables, g: usize, e: u32) {
    let e = e % n;
    if e == 0 {
        return;
    }
    match out.last_mut() {
        Some((h, f)) if *h == g => {
            *f = (*f + e) % n;
            if *f == 0 {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

fn mul(n: u32, a: &Syllables, b: &Syllables) -> Syllables {
    let mut out = a.clone();
    for &(g, e) in b {
        push_syllable(n, &mut out, g, e);
    }
    out
}

fn inverse(n: u32, a: &Syllables) -> Syllables {
    a.iter().rev().map(|&(g, e)| (g, n - e)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeNQuandleElement {
    n: u32,
    gen: usize,
    conj: Syllables,
}

impl FreeNQuandleElement {
    /// The generator `s` itself.
    pub fn generator(n: u32, s: usize) -> FreeNQuandleElement {
        assert!(n >= 2);
        FreeNQuandleElement { n, gen: s, conj: Vec::new() }
    }

    /// Builds `g^{-1} s g` from any syllable list, normalizing.
    pub fn conjugate(n: u32, s: usize, conj: &Syllables) -> FreeNQuandleElement {
        assert!(n >= 2);
        let mut reduced = Vec::new();
        for &(g, e) in conj {
            push_syllable(n, &mut reduced, g, e);
        }
        let mut el = FreeNQuandleElement { n, gen: s, conj: reduced };
        el.normalize();
        el
    }

    fn normalize(&mut self) {
        // the centralizer of `s` is <s>: a leading s-syllable is absorbed
        if let Some(&(g, _)) = self.conj.first() {
            if g == self.gen {
                self.conj.remove(0);
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn generator_index(&self) -> usize {
        self.gen
    }

    pub fn conjugator(&self) -> &Syllables {
        &self.conj
    }

    /// `self *^{sign} other`: conjugation by `other` in the free product.
    pub fn op(&self, other: &FreeNQuandleElement, sign: i8) -> FreeNQuandleElement {
        assert_eq!(self.n, other.n, "mixed free n-quandles");
        let n = self.n;
        let t_exp = if sign >= 0 { 1 } else { n - 1 };
        // new conjugator: g . h^{-1} t^{±1} h
        let mut w = mul(n, &self.conj, &inverse(n, &other.conj));
        push_syllable(n, &mut w, other.gen, t_exp);
        let w = mul(n, &w, &other.conj);
        FreeNQuandleElement::conjugate(n, self.gen, &w)
    }

    /// Syllables of the underlying free-product element `g^{-1} s g`.
    pub fn group_word(&self) -> Syllables {
        let mut w = inverse(self.n, &self.conj);
        push_syllable(self.n, &mut w, self.gen, 1);
        mul(self.n, &w, &self.conj)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> FreeNQuandleDisplay<'a> {
        FreeNQuandleDisplay { el: self, names }
    }

    /// Parses `gen:NAME` optionally followed by conjugator syllables
    /// `n1^e1*n2^e2*...`.
    pub fn parse(n: u32, text: &str, names: &[String]) -> Result<FreeNQuandleElement, String> {
        let text = text.trim();
        let rest = text.strip_prefix("gen:").ok_or("element must start with 'gen:'")?;
        let (gen_name, conj_text) = match rest.split_once(char::is_whitespace) {
            Some((g, c)) => (g, c.trim()),
            None => (rest, ""),
        };
        let find = |name: &str| -> Result<usize, String> {
            names.iter().position(|x| x == name).ok_or_else(|| format!("unknown generator '{name}'"))
        };
        let gen = find(gen_name)?;
        let mut conj = Vec::new();
        if !conj_text.is_empty() {
            for syl in conj_text.split('*') {
                let (name, exp) = syl
                    .trim()
                    .split_once('^')
                    .ok_or_else(|| format!("syllable '{syl}' missing '^'"))?;
                let e: i64 = exp.parse().map_err(|_| format!("bad exponent in '{syl}'"))?;
                conj.push((find(name.trim())?, e.rem_euclid(n as i64) as u32));
            }
        }
        Ok(FreeNQuandleElement::conjugate(n, gen, &conj))
    }
}

pub struct FreeNQuandleDisplay<'a> {
    el: &'a FreeNQuandleElement,
    names: &'a [String],
}

impl fmt::Display for FreeNQuandleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gen:{}", self.names[self.el.gen])?;
        for (i, &(g, e)) in self.el.conj.iter().enumerate() {
            write!(f, "{}{}^{}", if i == 0 { " " } else { "*" }, self.names[g], e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn idempotent() {
        let a = FreeNQuandleElement::generator(3, 0);
        assert_eq!(a.op(&a, 1), a);
        assert_eq!(a.op(&a, -1), a);
        let ab = a.op(&FreeNQuandleElement::generator(3, 1), 1);
        assert_eq!(ab.op(&ab, 1), ab);
    }

    #[test]
    fn mod_two_conjugation() {
        // n = 2: a*b = b^{-1} a b = b a b, normal form (a; b^1)
        let a = FreeNQuandleElement::generator(2, 0);
        let b = FreeNQuandleElement::generator(2, 1);
        let ab = a.op(&b, 1);
        assert_eq!(ab.generator_index(), 0);
        assert_eq!(ab.conjugator(), &vec![(1, 1)]);
        // with n = 2, * and *^{-1} coincide
        assert_eq!(a.op(&b, -1), ab);
    }

    #[test]
    fn cancellation() {
        let a = FreeNQuandleElement::generator(4, 0);
        let b = FreeNQuandleElement::generator(4, 1);
        assert_eq!(a.op(&b, 1).op(&b, -1), a);
        assert_eq!(a.op(&b, -1).op(&b, 1), a);
    }

    #[test]
    fn normalization_strips_own_generator() {
        // a leading syllable on the element's own generator is absorbed
        let a = FreeNQuandleElement::generator(3, 0);
        let ab = a.op(&FreeNQuandleElement::generator(3, 1), 1);
        // (a*b) as conjugator for a: w = b^2 a b ... normal form strips nothing here
        let el = FreeNQuandleElement::conjugate(3, 0, &vec![(0, 2), (1, 1)]);
        assert_eq!(el.conjugator(), &vec![(1, 1)]);
        assert_eq!(el, ab);
    }

    #[test]
    fn group_word_of_element() {
        let el = FreeNQuandleElement::conjugate(3, 0, &vec![(1, 2)]);
        // (b^2)^{-1} a b^2 = b a b^2 with exponents mod 3
        assert_eq!(el.group_word(), vec![(1, 1), (0, 1), (1, 2)]);
    }

    #[test]
    fn parse_and_display() {
        let ns = names(&["a", "b", "c"]);
        let el = FreeNQuandleElement::parse(4, "gen:a b^1*c^2", &ns).unwrap();
        assert_eq!(el.generator_index(), 0);
        assert_eq!(el.conjugator(), &vec![(1, 1), (2, 2)]);
        assert_eq!(el.display(&ns).to_string(), "gen:a b^1*c^2");
        let plain = FreeNQuandleElement::parse(4, "gen:b", &ns).unwrap();
        assert_eq!(plain, FreeNQuandleElement::generator(4, 1));
        // a leading a-syllable normalizes away
        let el2 = FreeNQuandleElement::parse(4, "gen:a a^3*b^1", &ns).unwrap();
        assert_eq!(el2.conjugator(), &vec![(1, 1)]);
    }

    #[test]
    fn distributivity_spot_check() {
        let a = FreeNQuandleElement::generator(3, 0);
        let b = FreeNQuandleElement::generator(3, 1);
        let c = FreeNQuandleElement::generator(3, 2);
        for u in [&a, &b, &c] {
            for v in [&a, &b, &c] {
                for w in [&a, &b, &c] {
                    assert_eq!(u.op(v, 1).op(w, 1), u.op(w, 1).op(&v.op(w, 1), 1));
                }
            }
        }
    }
}
