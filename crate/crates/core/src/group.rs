//! Finite groups as validated multiplication tables, and their automorphisms.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("malformed multiplication table: {0}")]
    Malformed(String),
    #[error("multiplication not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("claimed identity {0} is not an identity")]
    BadIdentity(usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("map is not a group automorphism")]
    NotAutomorphism,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    size: usize,
    mul: Vec<usize>, // row-major
    id: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn validate(mul: &[Vec<usize>], id: usize) -> Result<FiniteGroup, GroupError> {
        let n = mul.len();
        if n == 0 {
            return Err(GroupError::Malformed("empty table".into()));
        }
        if id >= n {
            return Err(GroupError::Malformed(format!("identity index {id} out of range")));
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Malformed(format!("row {a} has wrong length")));
            }
            for &v in row {
                if v >= n {
                    return Err(GroupError::Malformed(format!("entry out of range in row {a}")));
                }
            }
        }
        for a in 0..n {
            if mul[a][id] != a || mul[id][a] != a {
                return Err(GroupError::BadIdentity(id));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a][b] == id && mul[b][a] == id {
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX {
                return Err(GroupError::NoInverse(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in mul {
            flat.extend_from_slice(row);
        }
        Ok(FiniteGroup { size: n, mul: flat, id, inv })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn conj(&self, x: usize, y: usize) -> usize {
        // y^{-1} x y
        self.mul(self.mul(self.inv(y), x), y)
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut out = self.id;
        for _ in 0..k.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    pub fn order_of(&self, a: usize) -> usize {
        let mut v = a;
        let mut k = 1;
        while v != self.id {
            v = self.mul(v, a);
            k += 1;
        }
        k
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|a| self.mul[a * self.size..(a + 1) * self.size].to_vec()).collect()
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::validate(&rows, 0).expect("cyclic group")
    }

    /// The symmetric group on `k` points, elements ordered lexicographically
    /// by image array. Product is diagrammatic: `a` then `b`.
    pub fn symmetric(k: usize) -> FiniteGroup {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        loop {
            perms.push(current.clone());
            if !next_permutation(&mut current) {
                break;
            }
        }
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let ab: Vec<usize> = a.iter().map(|&i| b[i]).collect();
                        index(&ab)
                    })
                    .collect()
            })
            .collect();
        let id = index(&(0..k).collect::<Vec<_>>());
        FiniteGroup::validate(&rows, id).expect("symmetric group")
    }

    /// Semidirect product `G x| Z_m` where the generator of `Z_m` acts by
    /// `alpha`. Elements are pairs `(g, k) -> g + k*|G|`; multiplication is
    /// `(g1,k1)(g2,k2) = (g1 alpha^{k1}(g2), k1+k2)`.
    pub fn semidirect_cyclic(&self, alpha: &GroupAut, m: usize) -> FiniteGroup {
        assert!(m >= 1);
        let n = self.size;
        // alpha^m must be the identity for the product to be a group
        let rows: Vec<Vec<usize>> = (0..n * m)
            .map(|x| {
                let (g1, k1) = (x % n, x / n);
                (0..n * m)
                    .map(|y| {
                        let (g2, k2) = (y % n, y / n);
                        let mut h = g2;
                        for _ in 0..k1 {
                            h = alpha.apply(h);
                        }
                        self.mul(g1, h) + ((k1 + k2) % m) * n
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::validate(&rows, self.id).expect("semidirect product")
    }

    /// Checks that `elements` (sorted, deduplicated) form a subgroup.
    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        if !elements.contains(&self.id) {
            return false;
        }
        elements.iter().all(|&a| {
            elements.contains(&self.inv(a))
                && elements.iter().all(|&b| elements.contains(&self.mul(a, b)))
        })
    }

    pub fn centralizes(&self, h: usize, x: usize) -> bool {
        self.mul(h, x) == self.mul(x, h)
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.size];
        let mut members = vec![self.id];
        in_set[self.id] = true;
        let mut frontier = 0;
        while frontier < members.len() {
            let a = members[frontier];
            frontier += 1;
            for &g in gens {
                for v in [self.mul(a, g), self.mul(a, self.inv(g))] {
                    if !in_set[v] {
                        in_set[v] = true;
                        members.push(v);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    size: usize,
    mul: Vec<Vec<usize>>,
    id: usize,
}

impl Serialize for FiniteGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupFile { size: self.size, mul: self.rows(), id: self.id }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = GroupFile::deserialize(deserializer)?;
        if file.size != file.mul.len() {
            return Err(D::Error::custom("size field does not match table"));
        }
        FiniteGroup::validate(&file.mul, file.id).map_err(D::Error::custom)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A validated group automorphism: a bijection with `a(gh) = a(g)a(h)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAut {
    images: Vec<usize>,
}

impl GroupAut {
    pub fn new(g: &FiniteGroup, images: Vec<usize>) -> Result<GroupAut, GroupError> {
        let perm = Permutation::from_images(images.clone()).ok_or(GroupError::NotAutomorphism)?;
        if perm.degree() != g.size() {
            return Err(GroupError::NotAutomorphism);
        }
        for a in 0..g.size() {
            for b in 0..g.size() {
                if images[g.mul(a, b)] != g.mul(images[a], images[b]) {
                    return Err(GroupError::NotAutomorphism);
                }
            }
        }
        Ok(GroupAut { images })
    }

    pub fn identity(g: &FiniteGroup) -> GroupAut {
        GroupAut { images: (0..g.size()).collect() }
    }

    /// Conjugation by `t`: `g -> t^{-1} g t`.
    pub fn inner(g: &FiniteGroup, t: usize) -> GroupAut {
        GroupAut { images: (0..g.size()).map(|x| g.conj(x, t)).collect() }
    }

    /// Inversion, an automorphism exactly when the group is abelian.
    pub fn inversion(g: &FiniteGroup) -> Result<GroupAut, GroupError> {
        GroupAut::new(g, (0..g.size()).map(|x| g.inv(x)).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Multiplicative order as a permutation.
    pub fn order(&self) -> u64 {
        Permutation::from_images(self.images.clone()).unwrap().order()
    }
}
