//! Finite quandles as validated operation tables.
//!
//! A quandle is a set with a binary operation `*` such that every element is
//! idempotent (`a*a = a`), every right translation `S_b : a -> a*b` is a
//! bijection, and the operation is right self-distributive
//! (`(a*b)*c = (a*c)*(b*c)`). Elements are `0..N-1` and the table is
//! row-major: `table[a][b] = a*b`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomWitness {
    /// `table[x][x] != x`.
    Idempotency { x: usize },
    /// Column `y` is not a bijection: `a != b` but `a*y == b*y`.
    RightTranslation { y: usize, a: usize, b: usize },
    /// `(x*y)*z != (x*z)*(y*z)`.
    Distributivity { x: usize, y: usize, z: usize },
}

impl AxiomWitness {
    /// Re-checks the witness against a raw table, independent of the
    /// validation pass that produced it.
    pub fn holds_in(&self, table: &[Vec<usize>]) -> bool {
        match *self {
            AxiomWitness::Idempotency { x } => table[x][x] != x,
            AxiomWitness::RightTranslation { y, a, b } => a != b && table[a][y] == table[b][y],
            AxiomWitness::Distributivity { x, y, z } => {
                table[table[x][y]][z] != table[table[x][z]][table[y][z]]
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum QuandleError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("{} quandle axiom violation(s), first: {:?}", .0.len(), .0.first())]
    AxiomViolation(Vec<AxiomWitness>),
    #[error("map is not a quandle automorphism")]
    NotAutomorphism,
    #[error("inner automorphism group closure exceeded cap {cap}")]
    InnTooLarge { cap: usize },
    #[error("element {0} out of range")]
    OutOfRange(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteQuandle {
    size: usize,
    table: Vec<usize>, // row-major, table[a*size + b] = a*b
    dual: Vec<usize>,  // dual[a*size + b] = a *^{-1} b
}

impl FiniteQuandle {
    /// Validates a raw table against the three quandle axioms. On failure the
    /// error lists every violated axiom instance.
    pub fn validate(table: &[Vec<usize>]) -> Result<FiniteQuandle, QuandleError> {
        let n = table.len();
        if n == 0 {
            return Err(QuandleError::MalformedTable("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(QuandleError::MalformedTable(format!(
                    "row {a} has length {} in a table of size {n}",
                    row.len()
                )));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(QuandleError::MalformedTable(format!(
                        "entry at ({a},{b}) is {v}, out of range 0..{n}"
                    )));
                }
            }
        }

        let mut witnesses = Vec::new();
        for x in 0..n {
            if table[x][x] != x {
                witnesses.push(AxiomWitness::Idempotency { x });
            }
        }
        for y in 0..n {
            // report each colliding pair once
            let mut first_with = vec![None; n];
            for a in 0..n {
                let v = table[a][y];
                match first_with[v] {
                    None => first_with[v] = Some(a),
                    Some(b) => witnesses.push(AxiomWitness::RightTranslation { y, a: b, b: a }),
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[table[x][z]][table[y][z]] {
                        witnesses.push(AxiomWitness::Distributivity { x, y, z });
                    }
                }
            }
        }
        if !witnesses.is_empty() {
            return Err(QuandleError::AxiomViolation(witnesses));
        }

        let mut flat = Vec::with_capacity(n * n);
        for row in table {
            flat.extend_from_slice(row);
        }
        let mut dual = vec![0; n * n];
        for b in 0..n {
            for a in 0..n {
                // a*b = c  <=>  a = c *^{-1} b
                let c = flat[a * n + b];
                dual[c * n + b] = a;
            }
        }
        Ok(FiniteQuandle { size: n, table: flat, dual })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn op_inv(&self, a: usize, b: usize) -> usize {
        self.dual[a * self.size + b]
    }

    pub fn op_signed(&self, a: usize, b: usize, sign: i8) -> usize {
        if sign >= 0 { self.op(a, b) } else { self.op_inv(a, b) }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|a| self.table[a * self.size..(a + 1) * self.size].to_vec()).collect()
    }

    /// The trivial quandle `T_n`: `a*b = a`.
    pub fn trivial(n: usize) -> FiniteQuandle {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| vec![a; n]).collect();
        FiniteQuandle::validate(&rows).expect("trivial quandle")
    }

    /// The dihedral quandle `R_n`: `a*b = 2b - a mod n`.
    pub fn dihedral(n: usize) -> FiniteQuandle {
        let rows: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| (2 * b + n - a % n) % n).collect()).collect();
        FiniteQuandle::validate(&rows).expect("dihedral quandle")
    }

    /// Right translation by `x`, the column of `x` read as a permutation.
    pub fn symmetry(&self, x: usize) -> Permutation {
        assert!(x < self.size, "element out of range");
        let images: Vec<usize> = (0..self.size).map(|a| self.op(a, x)).collect();
        Permutation::from_images(images).expect("columns of a valid quandle are bijections")
    }

    /// Orbits of the inner automorphism group, as sorted element lists
    /// ordered by least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut orbit = vec![start];
            comp[start] = id;
            let mut queue = vec![start];
            while let Some(a) = queue.pop() {
                for x in 0..n {
                    for b in [self.op(a, x), self.op_inv(a, x)] {
                        if comp[b] == usize::MAX {
                            comp[b] = id;
                            orbit.push(b);
                            queue.push(b);
                        }
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Component index of each element.
    pub fn component_of(&self) -> Vec<usize> {
        let comps = self.components();
        let mut of = vec![0; self.size];
        for (i, comp) in comps.iter().enumerate() {
            for &a in comp {
                of[a] = i;
            }
        }
        of
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// True iff the order of every right translation divides `n`.
    pub fn is_n_quandle(&self, n: u64) -> bool {
        (0..self.size).all(|x| self.symmetry(x).order_divides(n))
    }

    /// Smallest subset containing `seed` closed under both `*` and `*^{-1}`.
    pub fn subquandle_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.size];
        let mut members = Vec::new();
        for &s in seed {
            assert!(s < self.size, "seed element out of range");
            if !in_set[s] {
                in_set[s] = true;
                members.push(s);
            }
        }
        let mut frontier = 0;
        while frontier < members.len() {
            // pair the newest members against everything so far, both ways
            let a = members[frontier];
            frontier += 1;
            let mut add = Vec::new();
            for i in 0..members.len() {
                let b = members[i];
                for v in [self.op(a, b), self.op_inv(a, b), self.op(b, a), self.op_inv(b, a)] {
                    if !in_set[v] {
                        in_set[v] = true;
                        add.push(v);
                    }
                }
            }
            members.extend(add);
        }
        members.sort_unstable();
        members
    }

    pub fn is_automorphism(&self, alpha: &Permutation) -> bool {
        if alpha.degree() != self.size {
            return false;
        }
        for a in 0..self.size {
            for b in 0..self.size {
                if alpha.apply(self.op(a, b)) != self.op(alpha.apply(a), alpha.apply(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Fixed points of a quandle automorphism. The fixed set is closed under
    /// `*` and `*^{-1}`; it may be empty, in which case it is not a
    /// subquandle carrier (subquandles here are nonempty by convention).
    pub fn fix(&self, alpha: &Permutation) -> Result<FixedSet, QuandleError> {
        if !self.is_automorphism(alpha) {
            return Err(QuandleError::NotAutomorphism);
        }
        let elements: Vec<usize> = (0..self.size).filter(|&x| alpha.apply(x) == x).collect();
        let is_subquandle = !elements.is_empty();
        Ok(FixedSet { elements, is_subquandle })
    }

    /// Componentwise product quandle on pairs `(a1, a2) -> a1*q2.size + a2`.
    pub fn product(&self, other: &FiniteQuandle) -> FiniteQuandle {
        let (n1, n2) = (self.size, other.size);
        let n = n1 * n2;
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                let (a1, a2) = (a / n2, a % n2);
                (0..n)
                    .map(|b| {
                        let (b1, b2) = (b / n2, b % n2);
                        self.op(a1, b1) * n2 + other.op(a2, b2)
                    })
                    .collect()
            })
            .collect();
        FiniteQuandle::validate(&rows).expect("product of quandles is a quandle")
    }

    /// True iff `(x*y)*z = (x*z)*y` for all triples (equivalently, all right
    /// translations commute).
    pub fn is_abelian(&self) -> bool {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.op(self.op(x, y), z) != self.op(self.op(x, z), y) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Searches for a quandle isomorphism onto `other`. Returns the
    /// lexicographically least image sequence if any exists.
    pub fn isomorphism(&self, other: &FiniteQuandle) -> Option<Vec<usize>> {
        if self.size != other.size {
            return None;
        }
        let n = self.size;

        // invariant pruning: component size multisets and column cycle types
        let mut c1: Vec<usize> = self.components().iter().map(|c| c.len()).collect();
        let mut c2: Vec<usize> = other.components().iter().map(|c| c.len()).collect();
        c1.sort_unstable();
        c2.sort_unstable();
        if c1 != c2 {
            return None;
        }
        let ct1: Vec<Vec<usize>> = (0..n).map(|x| self.symmetry(x).cycle_lengths()).collect();
        let ct2: Vec<Vec<usize>> = (0..n).map(|x| other.symmetry(x).cycle_lengths()).collect();
        let mut m1 = ct1.clone();
        let mut m2 = ct2.clone();
        m1.sort();
        m2.sort();
        if m1 != m2 {
            return None;
        }

        let mut images = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.iso_search(other, &ct1, &ct2, &mut images, &mut used, 0) {
            Some(images)
        } else {
            None
        }
    }

    fn iso_search(
        &self,
        other: &FiniteQuandle,
        ct1: &[Vec<usize>],
        ct2: &[Vec<usize>],
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let n = self.size;
        if next == n {
            return true;
        }
        'cand: for t in 0..n {
            if used[t] || ct1[next] != ct2[t] {
                continue;
            }
            images[next] = t;
            used[t] = true;
            for a in 0..=next {
                for b in 0..=next {
                    let ab = self.op(a, b);
                    if ab <= next && images[ab] != other.op(images[a], images[b]) {
                        images[next] = usize::MAX;
                        used[t] = false;
                        continue 'cand;
                    }
                }
            }
            if self.iso_search(other, ct1, ct2, images, used, next + 1) {
                return true;
            }
            images[next] = usize::MAX;
            used[t] = false;
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSet {
    pub elements: Vec<usize>,
    pub is_subquandle: bool,
}

#[derive(Serialize, Deserialize)]
struct QuandleFile {
    size: usize,
    table: Vec<Vec<usize>>,
}

impl Serialize for FiniteQuandle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuandleFile { size: self.size, table: self.rows() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteQuandle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = QuandleFile::deserialize(deserializer)?;
        if file.size != file.table.len() {
            return Err(D::Error::custom("size field does not match table"));
        }
        FiniteQuandle::validate(&file.table).map_err(D::Error::custom)
    }
}

/// Parses the JSON quandle file format `{"size": N, "table": [[...], ...]}`.
/// With `raw` the table is returned unvalidated.
pub fn parse_quandle_json(s: &str) -> Result<Vec<Vec<usize>>, String> {
    let file: QuandleFile = serde_json::from_str(s).map_err(|e| e.to_string())?;
    if file.size != file.table.len() {
        return Err("size field does not match table".into());
    }
    Ok(file.table)
}

/// Parses the plain-text quandle format: first line `N`, then `N`
/// whitespace-separated rows.
pub fn parse_quandle_text(s: &str) -> Result<Vec<Vec<usize>>, String> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .ok_or("empty input")?
        .trim()
        .parse()
        .map_err(|e| format!("bad size line: {e}"))?;
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines.next().ok_or("fewer rows than declared size")?;
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        table.push(row.map_err(|e| format!("bad row entry: {e}"))?);
    }
    Ok(table)
}
