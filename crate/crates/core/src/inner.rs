//! Inner automorphism groups of finite quandles and the homogeneous
//! representation: every quandle is a disjoint union of coset quandles of
//! its inner group over point stabilizers, via the orbit map.

use std::collections::HashMap;

use crate::perm::Permutation;
use crate::quandle::{FiniteQuandle, QuandleError};

/// Default cap on materialized inner-group closures.
pub const DEFAULT_INN_CAP: usize = 1_000_000;

/// The inner automorphism group, given by its generating right translations.
/// Orbits only need breadth-first search on points; the full closure is
/// materialized only for stabilizer and coset computations, under a cap.
pub struct InnerGroup {
    degree: usize,
    generators: Vec<(usize, Permutation)>,
}

impl InnerGroup {
    pub fn of(q: &FiniteQuandle) -> InnerGroup {
        InnerGroup {
            degree: q.size(),
            generators: (0..q.size()).map(|x| (x, q.symmetry(x))).collect(),
        }
    }

    pub fn generators(&self) -> &[(usize, Permutation)] {
        &self.generators
    }

    /// Materializes the full group by breadth-first closure under right
    /// multiplication. Element 0 is the identity; ordering is deterministic.
    pub fn closure(&self, cap: usize) -> Result<GroupClosure, QuandleError> {
        let mut elements = vec![Permutation::identity(self.degree)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for (_, s) in &self.generators {
                let next = current.then(s);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(QuandleError::InnTooLarge { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(GroupClosure { elements, index })
    }
}

/// A materialized finite permutation group. Multiplication is diagrammatic
/// (`a` then `b`), matching the right action of inner automorphisms.
pub struct GroupClosure {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Element ids stabilizing the point, ascending.
    pub fn stabilizer(&self, point: usize) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.elements[i].apply(point) == point).collect()
    }

    /// Right cosets of the subgroup given by `sub` element ids. Returns, per
    /// group element, its coset id, plus the canonical (least) element id of
    /// each coset; coset ids are ordered by canonical element.
    pub fn right_cosets(&self, sub: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let n = self.elements.len();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &h in sub {
                coset_of[self.mul(h, g)] = id;
            }
            debug_assert_eq!(coset_of[g], id);
        }
        (coset_of, reps)
    }
}

/// A quandle rebuilt as a disjoint union of inner-group coset quandles,
/// with the orbit-map isomorphism back onto the original.
pub struct HomogeneousRep {
    pub quandle: FiniteQuandle,
    /// element of the coset quandle -> element of the original
    pub iso_to_original: Vec<usize>,
    /// element of the coset quandle -> block (component) index
    pub block_of: Vec<usize>,
    /// component representatives, one per block
    pub representatives: Vec<usize>,
    pub inn_order: usize,
    pub stabilizer_orders: Vec<usize>,
}

/// Builds the coset quandle over Inn(X): one block per connected component
/// with representative `x_i`, stabilizer `H_i`, block element `S_{x_i}`, and
/// operation `H_i a * H_j b = H_i (S_{x_i}^{-1} a b^{-1} S_{x_j} b)`.
pub fn homogeneous_representation(
    q: &FiniteQuandle,
    cap: usize,
) -> Result<HomogeneousRep, QuandleError> {
    let inn = InnerGroup::of(q).closure(cap)?;
    let components = q.components();
    let reps: Vec<usize> = components.iter().map(|c| c[0]).collect();

    struct Block {
        rep: usize,
        sym_id: usize,
        coset_of: Vec<usize>,
        coset_reps: Vec<usize>,
        stab_order: usize,
        offset: usize,
    }

    let mut blocks = Vec::new();
    let mut offset = 0;
    for &x in &reps {
        let stab = inn.stabilizer(x);
        let sym = q.symmetry(x);
        let sym_id = inn.id_of(&sym).expect("generator lies in its own closure");
        // stabilizer elements centralize the representative's translation
        for &h in &stab {
            let hp = inn.element(h);
            if hp.then(&sym) != sym.then(hp) {
                return Err(QuandleError::NotAutomorphism);
            }
        }
        let (coset_of, coset_reps) = inn.right_cosets(&stab);
        let size = coset_reps.len();
        blocks.push(Block { rep: x, sym_id, coset_of, coset_reps, stab_order: stab.len(), offset });
        offset += size;
    }
    let total = offset;
    debug_assert_eq!(total, q.size());

    let mut rows = vec![vec![0usize; total]; total];
    let mut iso = vec![0usize; total];
    let mut block_of = vec![0usize; total];
    for (i, bi) in blocks.iter().enumerate() {
        for (ci, &a_id) in bi.coset_reps.iter().enumerate() {
            let e = bi.offset + ci;
            iso[e] = inn.element(a_id).apply(bi.rep);
            block_of[e] = i;
            for bj in blocks.iter() {
                for (cj, &b_id) in bj.coset_reps.iter().enumerate() {
                    let f = bj.offset + cj;
                    // S_{x_i}^{-1} a b^{-1} S_{x_j} b, multiplied left to right
                    let w = inn
                        .element(bi.sym_id)
                        .inverse()
                        .then(inn.element(a_id))
                        .then(&inn.element(b_id).inverse())
                        .then(inn.element(bj.sym_id))
                        .then(inn.element(b_id));
                    let w_id = inn.id_of(&w).expect("closure is a group");
                    rows[e][f] = bi.offset + bi.coset_of[w_id];
                }
            }
        }
    }

    let quandle = FiniteQuandle::validate(&rows)?;
    Ok(HomogeneousRep {
        quandle,
        iso_to_original: iso,
        block_of,
        representatives: reps,
        inn_order: inn.order(),
        stabilizer_orders: blocks.iter().map(|b| b.stab_order).collect(),
    })
}

#[derive(Debug)]
pub struct HomogeneousReport {
    pub pass: bool,
    pub witness: Option<String>,
}

/// Checks that the coset-quandle rebuild of `q` is isomorphic to `q` via the
/// returned orbit map, entry by entry.
pub fn verify_homogeneous_table(q: &FiniteQuandle, cap: usize) -> Result<HomogeneousReport, QuandleError> {
    let rep = homogeneous_representation(q, cap)?;
    if let Some(witness) = orbit_map_defect(q, &rep) {
        return Ok(HomogeneousReport { pass: false, witness: Some(witness) });
    }
    Ok(HomogeneousReport { pass: true, witness: None })
}

/// Returns a description of the first failure of the orbit map to be an
/// isomorphism onto `q`, if any.
pub fn orbit_map_defect(q: &FiniteQuandle, rep: &HomogeneousRep) -> Option<String> {
    let n = rep.quandle.size();
    if n != q.size() {
        return Some(format!("coset quandle has size {n}, original {}", q.size()));
    }
    let mut seen = vec![false; n];
    for &im in &rep.iso_to_original {
        if seen[im] {
            return Some(format!("orbit map repeats image {im}"));
        }
        seen[im] = true;
    }
    for a in 0..n {
        for b in 0..n {
            let lhs = rep.iso_to_original[rep.quandle.op(a, b)];
            let rhs = q.op(rep.iso_to_original[a], rep.iso_to_original[b]);
            if lhs != rhs {
                return Some(format!("orbit map not a homomorphism at ({a},{b}): {lhs} != {rhs}"));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_inner_group() {
        let r3 = FiniteQuandle::dihedral(3);
        let inn = InnerGroup::of(&r3).closure(DEFAULT_INN_CAP).unwrap();
        assert_eq!(inn.order(), 6);
        let stab = inn.stabilizer(0);
        assert_eq!(stab.len(), 2);
    }

    #[test]
    fn homogeneous_rep_of_dihedral() {
        let r3 = FiniteQuandle::dihedral(3);
        let rep = homogeneous_representation(&r3, DEFAULT_INN_CAP).unwrap();
        assert_eq!(rep.inn_order, 6);
        assert_eq!(rep.stabilizer_orders, vec![2]);
        assert_eq!(rep.quandle.size(), 3);
        assert!(orbit_map_defect(&r3, &rep).is_none());
    }

    #[test]
    fn homogeneous_rep_of_trivial() {
        let t2 = FiniteQuandle::trivial(2);
        let rep = homogeneous_representation(&t2, DEFAULT_INN_CAP).unwrap();
        assert_eq!(rep.inn_order, 1);
        assert_eq!(rep.quandle.size(), 2);
        assert_eq!(rep.representatives, vec![0, 1]);
        assert!(orbit_map_defect(&t2, &rep).is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let r5 = FiniteQuandle::dihedral(5);
        assert!(matches!(
            InnerGroup::of(&r5).closure(3),
            Err(QuandleError::InnTooLarge { cap: 3 })
        ));
    }

    #[test]
    fn conjugation_identity_for_translations() {
        // S_{x*y} = S_y^{-1} S_x S_y in diagrammatic order
        for q in [FiniteQuandle::dihedral(5), FiniteQuandle::dihedral(6), FiniteQuandle::trivial(3)] {
            for x in 0..q.size() {
                for y in 0..q.size() {
                    let lhs = q.symmetry(q.op(x, y));
                    let sy = q.symmetry(y);
                    let rhs = sy.inverse().then(&q.symmetry(x)).then(&sy);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
