//! Quandle homomorphism search: deterministic backtracking enumeration from
//! presented or tabulated sources into finite targets, and product
//! homomorphisms used for separating points from finite subquandles.

use crate::presentation::QuandlePresentation;
use crate::quandle::FiniteQuandle;

/// True iff the generator assignment satisfies every relation of `p` in `tgt`.
pub fn is_presented_hom(p: &QuandlePresentation, tgt: &FiniteQuandle, gen_images: &[usize]) -> bool {
    debug_assert_eq!(gen_images.len(), p.generators.len());
    p.relations.iter().all(|(u, v)| u.eval(tgt, gen_images) == v.eval(tgt, gen_images))
}

/// True iff `images` maps the whole table homomorphically.
pub fn is_table_hom(src: &FiniteQuandle, tgt: &FiniteQuandle, images: &[usize]) -> bool {
    debug_assert_eq!(images.len(), src.size());
    for a in 0..src.size() {
        for b in 0..src.size() {
            if images[src.op(a, b)] != tgt.op(images[a], images[b]) {
                return false;
            }
        }
    }
    true
}

/// Every homomorphism from the presented quandle into `tgt`, as generator
/// image vectors in lexicographic order. Generators are assigned in order
/// with relation pruning: a relation is checked as soon as all generators it
/// mentions are assigned.
pub fn presented_homs(p: &QuandlePresentation, tgt: &FiniteQuandle) -> Vec<Vec<usize>> {
    let s = p.generators.len();
    // relations become checkable once their largest mentioned generator is set
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); s];
    for (i, (u, v)) in p.relations.iter().enumerate() {
        if s > 0 {
            by_last[u.max_generator().max(v.max_generator())].push(i);
        }
    }
    let mut out = Vec::new();
    let mut images = vec![0usize; s];
    search_presented(p, tgt, &by_last, &mut images, 0, &mut out);
    out
}

fn search_presented(
    p: &QuandlePresentation,
    tgt: &FiniteQuandle,
    by_last: &[Vec<usize>],
    images: &mut Vec<usize>,
    next: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if next == p.generators.len() {
        out.push(images.clone());
        return;
    }
    'cand: for t in 0..tgt.size() {
        images[next] = t;
        for &ri in &by_last[next] {
            let (u, v) = &p.relations[ri];
            if u.eval(tgt, images) != v.eval(tgt, images) {
                continue 'cand;
            }
        }
        search_presented(p, tgt, by_last, images, next + 1, out);
    }
}

/// Every homomorphism between quandle tables, as full image vectors in
/// lexicographic order.
pub fn table_homs(src: &FiniteQuandle, tgt: &FiniteQuandle) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut images = vec![0usize; src.size()];
    search_table(src, tgt, &mut images, 0, &mut out);
    out
}

fn search_table(
    src: &FiniteQuandle,
    tgt: &FiniteQuandle,
    images: &mut Vec<usize>,
    next: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let n = src.size();
    if next == n {
        out.push(images.clone());
        return;
    }
    'cand: for t in 0..tgt.size() {
        images[next] = t;
        for a in 0..=next {
            for b in 0..=next {
                let ab = src.op(a, b);
                if ab <= next && images[ab] != tgt.op(images[a], images[b]) {
                    continue 'cand;
                }
            }
        }
        search_table(src, tgt, images, next + 1, out);
    }
}

/// The product of two homomorphisms with a common source: images land in
/// `t1.product(t2)` with the pairing `(a1, a2) -> a1 * t2.size() + a2`.
pub fn product_hom(
    images1: &[usize],
    t1: &FiniteQuandle,
    images2: &[usize],
    t2: &FiniteQuandle,
) -> (Vec<usize>, FiniteQuandle) {
    assert_eq!(images1.len(), images2.len());
    let product = t1.product(t2);
    let images = images1.iter().zip(images2).map(|(&a, &b)| a * t2.size() + b).collect();
    (images, product)
}
