//! Permutations of `0..n` as explicit image arrays.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im] = i;
        }
        Permutation { images: inv }
    }

    /// Apply `self` first, then `other`. Used as the group product wherever
    /// points are acted on from the right (`p . (ab) = (p . a) . b`).
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    /// Cycle lengths including fixed points, sorted ascending.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths().iter().fold(1u64, |acc, &l| lcm(acc, l as u64))
    }

    pub fn order_divides(&self, n: u64) -> bool {
        self.cycle_lengths().iter().all(|&l| n % (l as u64) == 0)
    }

    /// Nontrivial cycles, each rotated to start at its least point, ordered
    /// by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cyc.push(p);
                p = self.images[p];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_then_is_left_to_right() {
        let a = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let b = Permutation::from_images(vec![0, 2, 1]).unwrap();
        // p . (a then b): apply a, then b
        let ab = a.then(&b);
        assert_eq!(ab.apply(0), b.apply(a.apply(0)));
        assert_eq!(ab.apply(1), b.apply(a.apply(1)));
    }

    #[test]
    fn inverse_and_order() {
        let p = Permutation::from_images(vec![1, 2, 0, 4, 3]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.order(), 6);
        assert!(p.order_divides(6));
        assert!(p.order_divides(12));
        assert!(!p.order_divides(4));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_none());
        assert!(Permutation::from_images(vec![0, 3]).is_none());
    }

    #[test]
    fn cycle_display() {
        let p = Permutation::from_images(vec![0, 2, 1]).unwrap();
        assert_eq!(p.to_string(), "(1 2)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }
}
