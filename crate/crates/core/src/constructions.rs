//! Quandles manufactured from finite groups and from other quandles:
//! conjugation, twisted conjugation, Alexander and word quandles, coset
//! quandles, twisted unions, and one-point extensions.
//!
//! Every constructor re-validates its output table; none can emit a
//! non-quandle.

use thiserror::Error;

use crate::group::{FiniteGroup, GroupAut};
use crate::perm::Permutation;
use crate::quandle::{FiniteQuandle, QuandleError};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("the given elements do not form a subgroup")]
    NotSubgroup,
    #[error("subgroup of block {0} does not centralize its distinguished element")]
    NotCentralizing(usize),
    #[error("{0} map is not an automorphism commuting with all inner symmetries")]
    NotCentralizingAutomorphism(&'static str),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

/// The conjugation quandle `Conj(G)`: `x*y = y^{-1} x y`.
pub fn conj(g: &FiniteGroup) -> FiniteQuandle {
    let rows: Vec<Vec<usize>> =
        (0..g.size()).map(|x| (0..g.size()).map(|y| g.conj(x, y)).collect()).collect();
    FiniteQuandle::validate(&rows).expect("conjugation quandle")
}

/// Conjugation on the carrier `{x in G | x^n = 1}`, an n-quandle. Returns the
/// quandle together with the carrier elements in ascending group order.
pub fn conj_n(g: &FiniteGroup, n: u64) -> (FiniteQuandle, Vec<usize>) {
    assert!(n >= 2);
    let carrier: Vec<usize> = (0..g.size()).filter(|&x| g.pow(x, n as i64) == g.id()).collect();
    let pos = |v: usize| carrier.iter().position(|&c| c == v).unwrap();
    let rows: Vec<Vec<usize>> = carrier
        .iter()
        .map(|&x| carrier.iter().map(|&y| pos(g.conj(x, y))).collect())
        .collect();
    (FiniteQuandle::validate(&rows).expect("conj_n quandle"), carrier)
}

/// The twisted conjugation quandle `Conj(G, alpha)`: `x*y = alpha(y^{-1} x) y`.
pub fn twisted_conj(g: &FiniteGroup, alpha: &GroupAut) -> FiniteQuandle {
    let rows: Vec<Vec<usize>> = (0..g.size())
        .map(|x| {
            (0..g.size())
                .map(|y| g.mul(alpha.apply(g.mul(g.inv(y), x)), y))
                .collect()
        })
        .collect();
    FiniteQuandle::validate(&rows).expect("twisted conjugation quandle")
}

/// The generalized Alexander quandle `Alex(G, alpha)`: `x*y = alpha(x y^{-1}) y`.
pub fn alexander(g: &FiniteGroup, alpha: &GroupAut) -> FiniteQuandle {
    let rows: Vec<Vec<usize>> = (0..g.size())
        .map(|x| {
            (0..g.size())
                .map(|y| g.mul(alpha.apply(g.mul(x, g.inv(y))), y))
                .collect()
        })
        .collect();
    FiniteQuandle::validate(&rows).expect("alexander quandle")
}

/// Words `w(x, y)` that define a quandle operation `g*h = w(g, h)` on every
/// group: the core word `y x^{-1} y` and the conjugation powers `y^{-n} x y^n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuandleWord {
    Core,
    ConjPower(i64),
}

pub fn word_quandle(g: &FiniteGroup, w: QuandleWord) -> FiniteQuandle {
    let rows: Vec<Vec<usize>> = (0..g.size())
        .map(|x| {
            (0..g.size())
                .map(|y| match w {
                    QuandleWord::Core => g.mul(g.mul(y, g.inv(x)), y),
                    QuandleWord::ConjPower(n) => {
                        g.mul(g.mul(g.pow(y, -n), x), g.pow(y, n))
                    }
                })
                .collect()
        })
        .collect();
    FiniteQuandle::validate(&rows).expect("word quandle")
}

/// The coset quandle `(G/H, x0)` on right cosets of `H`, with
/// `Hx * Hy = H x0^{-1} x y^{-1} x0 y`. Requires `H <= C_G(x0)`.
/// Coset representatives are least-index elements; returns the quandle and
/// the representative of each coset.
pub fn coset_quandle(
    g: &FiniteGroup,
    subgroup: &[usize],
    x0: usize,
) -> Result<(FiniteQuandle, Vec<usize>), ConstructionError> {
    let (q, reps) = union_coset_quandle(g, &[(subgroup.to_vec(), x0)]).map_err(|e| match e {
        ConstructionError::NotCentralizing(_) => ConstructionError::NotCentralizing(0),
        other => other,
    })?;
    Ok((q, reps))
}

/// Disjoint union of coset quandles `(G/H_i, x_i)` with the cross-block
/// operation `H_i x * H_j y = H_i x_i^{-1} x y^{-1} x_j y`.
pub fn union_coset_quandle(
    g: &FiniteGroup,
    blocks: &[(Vec<usize>, usize)],
) -> Result<(FiniteQuandle, Vec<usize>), ConstructionError> {
    struct Block {
        x: usize,
        coset_of: Vec<usize>,
        reps: Vec<usize>,
        offset: usize,
    }
    let mut data = Vec::new();
    let mut offset = 0;
    for (i, (h, x)) in blocks.iter().enumerate() {
        if !g.is_subgroup(h) {
            return Err(ConstructionError::NotSubgroup);
        }
        if !h.iter().all(|&e| g.centralizes(e, *x)) {
            return Err(ConstructionError::NotCentralizing(i));
        }
        let mut coset_of = vec![usize::MAX; g.size()];
        let mut reps = Vec::new();
        for v in 0..g.size() {
            if coset_of[v] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(v); // least element of the coset, met first
            for &e in h {
                coset_of[g.mul(e, v)] = id;
            }
        }
        let count = reps.len();
        data.push(Block { x: *x, coset_of, reps, offset });
        offset += count;
    }
    let total = offset;
    let mut rows = vec![vec![0usize; total]; total];
    let mut all_reps = Vec::with_capacity(total);
    for bi in &data {
        for &a in &bi.reps {
            all_reps.push(a);
        }
    }
    for bi in &data {
        for (ci, &a) in bi.reps.iter().enumerate() {
            for bj in &data {
                for (cj, &b) in bj.reps.iter().enumerate() {
                    // x_i^{-1} x y^{-1} x_j y
                    let w = g.mul(g.mul(g.mul(g.mul(g.inv(bi.x), a), g.inv(b)), bj.x), b);
                    rows[bi.offset + ci][bj.offset + cj] = bi.offset + bi.coset_of[w];
                }
            }
        }
    }
    Ok((FiniteQuandle::validate(&rows)?, all_reps))
}

/// Checks that `alpha` is a quandle automorphism commuting with every right
/// translation of `q`.
pub fn centralizes_inner(q: &FiniteQuandle, alpha: &Permutation) -> bool {
    if !q.is_automorphism(alpha) {
        return false;
    }
    (0..q.size()).all(|x| {
        let s = q.symmetry(x);
        alpha.then(&s) == s.then(alpha)
    })
}

/// Twisted union of `x1` and `x2`: within each side the original operation,
/// across sides `x*y = f(x)` (for `x` in the first side) or `g(x)`.
/// Both twists must be automorphisms commuting with all inner symmetries of
/// their side. Elements of `x2` are shifted by `x1.size()`.
pub fn twisted_union(
    x1: &FiniteQuandle,
    f: &Permutation,
    x2: &FiniteQuandle,
    g: &Permutation,
) -> Result<FiniteQuandle, ConstructionError> {
    if !centralizes_inner(x1, f) {
        return Err(ConstructionError::NotCentralizingAutomorphism("first"));
    }
    if !centralizes_inner(x2, g) {
        return Err(ConstructionError::NotCentralizingAutomorphism("second"));
    }
    let (n1, n2) = (x1.size(), x2.size());
    let n = n1 + n2;
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| match (a < n1, b < n1) {
                    (true, true) => x1.op(a, b),
                    (false, false) => n1 + x2.op(a - n1, b - n1),
                    (true, false) => f.apply(a),
                    (false, true) => n1 + g.apply(a - n1),
                })
                .collect()
        })
        .collect();
    Ok(FiniteQuandle::validate(&rows)?)
}

/// Extends `f` by a single new point `p` (index `f.size()`): on `F` the old
/// operation, `x * p = lambda(x)`, and `p * z = p` for all `z`. Requires
/// `lambda` to be an automorphism commuting with all inner symmetries of `f`.
/// The inclusion of `f` is then a quandle homomorphism.
pub fn one_point_extension(
    f: &FiniteQuandle,
    lambda: &Permutation,
) -> Result<FiniteQuandle, ConstructionError> {
    if !centralizes_inner(f, lambda) {
        return Err(ConstructionError::NotCentralizingAutomorphism("extension"));
    }
    let n = f.size();
    let rows: Vec<Vec<usize>> = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| {
                    if a == n {
                        n
                    } else if b == n {
                        lambda.apply(a)
                    } else {
                        f.op(a, b)
                    }
                })
                .collect()
        })
        .collect();
    Ok(FiniteQuandle::validate(&rows)?)
}
