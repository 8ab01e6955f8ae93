//! Finitely generated free abelian quandles: normal forms, the membership
//! decision, finite quotients `X_N`, and separation certificates; plus the
//! normalizer for two-generated abelian presentations.
//!
//! An element of the free abelian quandle on generators `x_1..x_r` has the
//! unique normal form `x_i *^{n_1} x_1 *^{n_2} x_2 ... *^{n_r} x_r` with
//! `n_i = 0`, written `(i; n_1, ..., n_r)`. The operation only bumps the
//! coordinate at the right operand's base:
//! `(i; m) * (j; n) = (i; m')` with `m'_j = m_j + 1` unless `j = i`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::QuandlePresentation;
use crate::quandle::FiniteQuandle;
use crate::words::QWord;

pub const DEFAULT_XN_CAP: usize = 8192;

#[derive(Debug, Error)]
pub enum FabError {
    #[error("elements have different ranks")]
    RankMismatch,
    #[error("table of size {size} exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("the queried element is a member; nothing to separate")]
    MembershipHolds,
    #[error("relation {0} is not of the orbit-normal form u *^k v = u")]
    UnsupportedRelationShape(usize),
}

/// Normal form `(i; n_1, ..., n_r)` with `n_i = 0`. The base is stored
/// 0-indexed; display is 1-indexed as customary.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FreeAbelianElement {
    base: usize,
    coords: Vec<i64>,
}

impl FreeAbelianElement {
    pub fn new(base: usize, coords: Vec<i64>) -> FreeAbelianElement {
        assert!(base < coords.len(), "base out of range");
        assert_eq!(coords[base], 0, "coordinate at the base must be zero");
        FreeAbelianElement { base, coords }
    }

    pub fn generator(rank: usize, i: usize) -> FreeAbelianElement {
        FreeAbelianElement::new(i, vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// `self *^{sign} other`: bump the coordinate at the other's base.
    pub fn op(&self, other: &FreeAbelianElement, sign: i8) -> Result<FreeAbelianElement, FabError> {
        if self.rank() != other.rank() {
            return Err(FabError::RankMismatch);
        }
        let mut out = self.clone();
        if other.base != self.base {
            out.coords[other.base] += sign as i64;
        }
        Ok(out)
    }

    /// Parses `(i; n1, n2, ..., nr)` with a 1-based base.
    pub fn parse(text: &str) -> Result<FreeAbelianElement, String> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or("element must be parenthesized")?;
        let (base_text, coords_text) =
            inner.split_once(';').ok_or("missing ';' after the base index")?;
        let base: usize = base_text.trim().parse().map_err(|_| "bad base index".to_string())?;
        if base == 0 {
            return Err("base index is 1-based".into());
        }
        let coords: Result<Vec<i64>, _> =
            coords_text.split(',').map(|c| c.trim().parse::<i64>()).collect();
        let coords = coords.map_err(|e| format!("bad coordinate: {e}"))?;
        if base > coords.len() {
            return Err(format!("base {base} exceeds rank {}", coords.len()));
        }
        if coords[base - 1] != 0 {
            return Err("coordinate at the base must be zero".into());
        }
        Ok(FreeAbelianElement::new(base - 1, coords))
    }
}

impl fmt::Display for FreeAbelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.base + 1)?;
        for (k, c) in self.coords.iter().enumerate() {
            write!(f, "{}{}", if k == 0 { "" } else { "," }, c)?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FabMembership {
    Member,
    NonMember(NonMemberData),
}

/// Why an element avoids the subquandle: its base is outside the generator
/// bases, or its free-coordinate tuple differs from every generator's.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum NonMemberData {
    BaseMiss {
        base: usize,
    },
    AvoidedTuples {
        /// positions outside the generator bases, ascending
        free_positions: Vec<usize>,
        /// the query's coordinates at those positions
        tuple: Vec<i64>,
        /// the tuples (at those positions) of generators sharing the base
        avoided: Vec<Vec<i64>>,
    },
}

/// Decides membership of `x` in the subquandle generated by `gens`: the base
/// must be a generator base, and the coordinates at positions outside the
/// generator bases must match some generator with the same base exactly.
pub fn fab_membership(
    gens: &[FreeAbelianElement],
    x: &FreeAbelianElement,
) -> Result<FabMembership, FabError> {
    assert!(!gens.is_empty(), "subquandle needs at least one generator");
    let rank = x.rank();
    if gens.iter().any(|g| g.rank() != rank) {
        return Err(FabError::RankMismatch);
    }
    let mut base_present = vec![false; rank];
    for g in gens {
        base_present[g.base()] = true;
    }
    if !base_present[x.base()] {
        return Ok(FabMembership::NonMember(NonMemberData::BaseMiss { base: x.base() }));
    }
    let free_positions: Vec<usize> = (0..rank).filter(|&j| !base_present[j]).collect();
    let tuple_of = |e: &FreeAbelianElement| -> Vec<i64> {
        free_positions.iter().map(|&j| e.coords()[j]).collect()
    };
    let x_tuple = tuple_of(x);
    let mut avoided = Vec::new();
    for g in gens {
        if g.base() == x.base() {
            let t = tuple_of(g);
            if t == x_tuple {
                return Ok(FabMembership::Member);
            }
            avoided.push(t);
        }
    }
    Ok(FabMembership::NonMember(NonMemberData::AvoidedTuples {
        free_positions,
        tuple: x_tuple,
        avoided,
    }))
}

/// The finite quotient `X_N`: all normal forms with coordinates mod `N`,
/// of size exactly `r * N^{r-1}`, with the operation taken mod `N`.
pub struct XnQuandle {
    pub quandle: FiniteQuandle,
    pub rank: usize,
    pub modulus: u64,
}

impl XnQuandle {
    pub fn build(rank: usize, modulus: u64, cap: usize) -> Result<XnQuandle, FabError> {
        assert!(rank >= 1 && modulus >= 2);
        let n = modulus as usize;
        let size = rank * n.pow(rank as u32 - 1);
        if size > cap {
            return Err(FabError::CapExceeded { size, cap });
        }
        let mut rows = vec![vec![0usize; size]; size];
        for a in 0..size {
            let ea = Self::decode(rank, n, a);
            for b in 0..size {
                let eb = Self::decode(rank, n, b);
                let mut out = ea.clone();
                if eb.base != ea.base {
                    out.coords[eb.base] = (out.coords[eb.base] + 1) % modulus as i64;
                }
                rows[a][b] = Self::encode_coords(rank, n, out.base, &out.coords);
            }
        }
        let quandle = FiniteQuandle::validate(&rows).expect("X_N is a quandle");
        Ok(XnQuandle { quandle, rank, modulus })
    }

    fn decode(rank: usize, n: usize, id: usize) -> FreeAbelianElement {
        let block = n.pow(rank as u32 - 1);
        let base = id / block;
        let mut rest = id % block;
        let mut coords = vec![0i64; rank];
        for j in (0..rank).filter(|&j| j != base).rev() {
            coords[j] = (rest % n) as i64;
            rest /= n;
        }
        FreeAbelianElement::new(base, coords)
    }

    fn encode_coords(rank: usize, n: usize, base: usize, coords: &[i64]) -> usize {
        let mut rest = 0;
        for j in (0..rank).filter(|&j| j != base) {
            rest = rest * n + coords[j].rem_euclid(n as i64) as usize;
        }
        base * n.pow(rank as u32 - 1) + rest
    }

    /// Element id of a free abelian element reduced mod `N`.
    pub fn index_of(&self, e: &FreeAbelianElement) -> usize {
        assert_eq!(e.rank(), self.rank);
        Self::encode_coords(self.rank, self.modulus as usize, e.base(), e.coords())
    }

    pub fn element_of(&self, id: usize) -> FreeAbelianElement {
        Self::decode(self.rank, self.modulus as usize, id)
    }
}

/// A finite-quotient certificate that `x` lies outside the subquandle
/// generated by `gens` in the free abelian quandle.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FabCertificate {
    /// `None` marks the two-element trivial target of the base-miss case;
    /// otherwise the modulus of the `X_N` target.
    pub modulus: Option<u64>,
    pub target: FiniteQuandle,
    /// image of each free-quandle generator
    pub gen_images: Vec<usize>,
    pub excluded_image: usize,
    pub subquandle_images: Vec<usize>,
}

impl FabCertificate {
    /// Re-derives every image from the generator images and checks the
    /// separation, independent of how the certificate was found.
    pub fn verify(&self, gens: &[FreeAbelianElement], x: &FreeAbelianElement) -> Result<(), String> {
        let rank = x.rank();
        if self.gen_images.len() != rank {
            return Err("wrong number of generator images".into());
        }
        if !self.target.is_abelian() {
            return Err("certificate target is not abelian".into());
        }
        // the target must kill enough torsion for the images to be
        // well-defined on normal forms
        let image_of = |e: &FreeAbelianElement| -> usize {
            let mut v = self.gen_images[e.base()];
            for j in 0..rank {
                let k = e.coords()[j];
                let g = self.gen_images[j];
                for _ in 0..k.unsigned_abs() {
                    v = self.target.op_signed(v, g, if k > 0 { 1 } else { -1 });
                }
            }
            v
        };
        if image_of(x) != self.excluded_image {
            return Err("excluded image does not match the query's image".into());
        }
        let gen_imgs: Vec<usize> = gens.iter().map(image_of).collect();
        let closure = self.target.subquandle_closure(&gen_imgs);
        let mut expected = self.subquandle_images.clone();
        expected.sort_unstable();
        expected.dedup();
        if closure != expected {
            return Err("subquandle image set does not match the closure".into());
        }
        if closure.contains(&self.excluded_image) {
            return Err("claimed excluded image lies in the subquandle image".into());
        }
        Ok(())
    }
}

/// Builds a separation certificate for a non-member: the base-miss case maps
/// onto a two-element trivial quandle; otherwise the minimal `N >= 2` whose
/// reduction keeps the query's free-coordinate tuple away from every
/// generator's gives an `X_N` certificate.
pub fn fab_separate(
    gens: &[FreeAbelianElement],
    x: &FreeAbelianElement,
    cap: usize,
) -> Result<FabCertificate, FabError> {
    let rank = x.rank();
    let data = match fab_membership(gens, x)? {
        FabMembership::Member => return Err(FabError::MembershipHolds),
        FabMembership::NonMember(data) => data,
    };
    let cert = match data {
        NonMemberData::BaseMiss { base } => {
            let target = FiniteQuandle::trivial(2);
            let gen_images: Vec<usize> = (0..rank).map(|i| usize::from(i == base)).collect();
            FabCertificate {
                modulus: None,
                target,
                gen_images,
                excluded_image: 1,
                subquandle_images: vec![0],
            }
        }
        NonMemberData::AvoidedTuples { free_positions, tuple, avoided } => {
            let mut modulus = 2u64;
            loop {
                let distinct = avoided.iter().all(|t| {
                    free_positions.iter().enumerate().any(|(k, _)| {
                        tuple[k].rem_euclid(modulus as i64) != t[k].rem_euclid(modulus as i64)
                    })
                });
                if distinct {
                    break;
                }
                modulus += 1;
            }
            let xn = XnQuandle::build(rank, modulus, cap)?;
            let gen_images: Vec<usize> =
                (0..rank).map(|i| xn.index_of(&FreeAbelianElement::generator(rank, i))).collect();
            let y_images: Vec<usize> = gens.iter().map(|g| xn.index_of(g)).collect();
            let subquandle_images = xn.quandle.subquandle_closure(&y_images);
            FabCertificate {
                modulus: Some(modulus),
                excluded_image: xn.index_of(x),
                target: xn.quandle,
                gen_images,
                subquandle_images,
            }
        }
    };
    cert.verify(gens, x).map_err(|e| {
        panic!("separation certificate failed its own verification: {e}");
    })?;
    Ok(cert)
}

/// Canonical form of a two-generated abelian presentation whose relations
/// are all orbit-normal (`u *^k v = u`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoGenNormal {
    /// No constraints: the free abelian quandle of rank 2.
    FreeAbelian,
    /// Only one orbit is constrained: single relation with the gcd exponent.
    SingleOrbit { base: usize, exponent: u64, presentation: QuandlePresentation },
    /// Both orbits constrained: the quandle is finite and built explicitly.
    Finite { quandle: FiniteQuandle, labels: Vec<String> },
}

/// Normalizes relations over a two-generator abelian quandle. Every relation
/// must have the shape `u *^k v = u` on the two generators.
pub fn two_gen_abelian_normalize(p: &QuandlePresentation) -> Result<TwoGenNormal, FabError> {
    assert_eq!(p.generators.len(), 2, "normalizer expects exactly two generators");
    let mut exponents: [Vec<u64>; 2] = [Vec::new(), Vec::new()];
    for (i, (u, v)) in p.relations.iter().enumerate() {
        let (long, short) = if v.tail_len() == 0 { (u, v) } else { (v, u) };
        if short.tail_len() != 0 || long.base() != short.base() {
            return Err(FabError::UnsupportedRelationShape(i));
        }
        let base = long.base();
        let other = 1 - base;
        let tail = long.tail();
        if tail.is_empty() {
            continue; // u = u, no constraint
        }
        let sign = tail[0].1;
        if tail.iter().any(|&(g, s)| g != other || s != sign) {
            return Err(FabError::UnsupportedRelationShape(i));
        }
        exponents[base].push(tail.len() as u64);
    }
    let gcd_of = |v: &[u64]| v.iter().copied().fold(0u64, gcd);
    let gx = gcd_of(&exponents[0]);
    let gy = gcd_of(&exponents[1]);
    match (gx, gy) {
        (0, 0) => Ok(TwoGenNormal::FreeAbelian),
        (g, 0) | (0, g) => {
            let base = if gx != 0 { 0 } else { 1 };
            let other = 1 - base;
            let lhs = QWord::new(base, std::iter::repeat((other, 1)).take(g as usize));
            let presentation = QuandlePresentation::new(
                p.generators.clone(),
                vec![(lhs, QWord::generator(base))],
            );
            Ok(TwoGenNormal::SingleOrbit { base, exponent: g, presentation })
        }
        (gx, gy) => {
            // both orbits periodic: elements x*^a y (a < gx), y*^b x (b < gy)
            let (nx, ny) = (gx as usize, gy as usize);
            let size = nx + ny;
            let mut rows = vec![vec![0usize; size]; size];
            for a in 0..size {
                for b in 0..size {
                    let (a_orbit_x, ai) = (a < nx, if a < nx { a } else { a - nx });
                    let b_orbit_x = b < nx;
                    rows[a][b] = if a_orbit_x == b_orbit_x {
                        a
                    } else if a_orbit_x {
                        (ai + 1) % nx
                    } else {
                        nx + (ai + 1) % ny
                    };
                }
            }
            let quandle = FiniteQuandle::validate(&rows).expect("orbit table is a quandle");
            let labels = (0..nx)
                .map(|a| format!("{}*^{a}{}", p.generators[0], p.generators[1]))
                .chain((0..ny).map(|b| format!("{}*^{b}{}", p.generators[1], p.generators[0])))
                .collect();
            Ok(TwoGenNormal::Finite { quandle, labels })
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(text: &str) -> FreeAbelianElement {
        FreeAbelianElement::parse(text).unwrap()
    }

    #[test]
    fn op_bumps_operand_base() {
        let a = el("(1;0,2,-1)");
        let b = el("(3;0,1,0)");
        assert_eq!(a.op(&b, 1).unwrap(), el("(1;0,2,0)"));
        // same base: no change
        let c = el("(1;0,2)");
        let d = el("(1;0,5)");
        assert_eq!(c.op(&d, 1).unwrap(), c);
        assert_eq!(c.op(&c, 1).unwrap(), c);
        // dual decrements
        assert_eq!(a.op(&b, -1).unwrap(), el("(1;0,2,-2)"));
    }

    #[test]
    fn rank_mismatch_rejected() {
        assert!(matches!(el("(1;0,1)").op(&el("(1;0,0,0)"), 1), Err(FabError::RankMismatch)));
    }

    #[test]
    fn abelian_identity_holds() {
        let a = el("(1;0,2,-1)");
        let b = el("(2;1,0,4)");
        let c = el("(3;-2,3,0)");
        let lhs = a.op(&b, 1).unwrap().op(&c, 1).unwrap();
        let rhs = a.op(&c, 1).unwrap().op(&b, 1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn membership_examples() {
        let gens = vec![el("(1;0,2)")];
        assert_eq!(fab_membership(&gens, &el("(1;0,2)")).unwrap(), FabMembership::Member);
        match fab_membership(&gens, &el("(1;0,5)")).unwrap() {
            FabMembership::NonMember(NonMemberData::AvoidedTuples {
                free_positions,
                tuple,
                avoided,
            }) => {
                assert_eq!(free_positions, vec![1]);
                assert_eq!(tuple, vec![5]);
                assert_eq!(avoided, vec![vec![2]]);
            }
            other => panic!("unexpected {other:?}"),
        }

        // coordinates at generator-base positions are free
        let gens = vec![el("(1;0,0,0)"), el("(2;0,0,0)")];
        assert_eq!(fab_membership(&gens, &el("(1;0,7,0)")).unwrap(), FabMembership::Member);

        let gens = vec![el("(2;0,0)")];
        assert!(matches!(
            fab_membership(&gens, &el("(1;0,3)")).unwrap(),
            FabMembership::NonMember(NonMemberData::BaseMiss { base: 0 })
        ));
    }

    #[test]
    fn xn_sizes_and_properties() {
        for (r, n) in [(1usize, 4u64), (2, 2), (2, 3), (3, 2)] {
            let xn = XnQuandle::build(r, n, DEFAULT_XN_CAP).unwrap();
            assert_eq!(xn.quandle.size(), r * (n as usize).pow(r as u32 - 1));
            assert!(xn.quandle.is_abelian());
            assert!(xn.quandle.is_n_quandle(n));
            assert_eq!(xn.quandle.components().len(), r);
            // generated by the base elements
            let gens: Vec<usize> =
                (0..r).map(|i| xn.index_of(&FreeAbelianElement::generator(r, i))).collect();
            let closure = xn.quandle.subquandle_closure(&gens);
            assert_eq!(closure.len(), xn.quandle.size());
        }
        assert!(matches!(XnQuandle::build(4, 10, 100), Err(FabError::CapExceeded { .. })));
    }

    #[test]
    fn xn_index_round_trip() {
        let xn = XnQuandle::build(3, 3, DEFAULT_XN_CAP).unwrap();
        for id in 0..xn.quandle.size() {
            assert_eq!(xn.index_of(&xn.element_of(id)), id);
        }
        // reduction mod N
        assert_eq!(xn.index_of(&el("(1;0,5,-1)")), xn.index_of(&el("(1;0,2,2)")));
    }

    #[test]
    fn separation_base_miss() {
        let gens = vec![el("(2;0,0)")];
        let x = el("(1;0,3)");
        let cert = fab_separate(&gens, &x, DEFAULT_XN_CAP).unwrap();
        assert_eq!(cert.modulus, None);
        assert_eq!(cert.target.size(), 2);
        cert.verify(&gens, &x).unwrap();
    }

    #[test]
    fn separation_minimal_modulus() {
        let gens = vec![el("(1;0,2)")];
        let x = el("(1;0,5)");
        let cert = fab_separate(&gens, &x, DEFAULT_XN_CAP).unwrap();
        // 5 and 2 already differ mod 2
        assert_eq!(cert.modulus, Some(2));
        assert_eq!(cert.target.size(), 4);
        cert.verify(&gens, &x).unwrap();

        // 4 vs 1: differ mod 2 as well
        let gens = vec![el("(1;0,0,1)")];
        let x = el("(1;0,0,4)");
        let cert = fab_separate(&gens, &x, DEFAULT_XN_CAP).unwrap();
        assert_eq!(cert.modulus, Some(2));
        assert_eq!(cert.target.size(), 12);
        cert.verify(&gens, &x).unwrap();

        // 0 vs 2 vs 4: need N = 3
        let gens = vec![el("(1;0,2)"), el("(1;0,4)")];
        let x = el("(1;0,0)");
        let cert = fab_separate(&gens, &x, DEFAULT_XN_CAP).unwrap();
        assert_eq!(cert.modulus, Some(3));
        cert.verify(&gens, &x).unwrap();
    }

    #[test]
    fn separation_requires_nonmember() {
        let gens = vec![el("(1;0,2)")];
        assert!(matches!(
            fab_separate(&gens, &el("(1;0,2)"), DEFAULT_XN_CAP),
            Err(FabError::MembershipHolds)
        ));
    }

    #[test]
    fn two_gen_normalizer() {
        let p = QuandlePresentation::parse("gens x y\nrel x*y*y = x\nrel x*y*y*y = x\n").unwrap();
        match two_gen_abelian_normalize(&p).unwrap() {
            TwoGenNormal::SingleOrbit { base, exponent, presentation } => {
                assert_eq!(base, 0);
                assert_eq!(exponent, 1);
                assert_eq!(presentation.relations.len(), 1);
                assert_eq!(
                    presentation.relations[0].0,
                    QWord::parse("x*y", &p.generators).unwrap()
                );
            }
            other => panic!("unexpected {other:?}"),
        }

        let free = QuandlePresentation::parse("gens x y\n").unwrap();
        assert_eq!(two_gen_abelian_normalize(&free).unwrap(), TwoGenNormal::FreeAbelian);

        let both = QuandlePresentation::parse("gens x y\nrel x*y*y = x\nrel y*x*x = y\n").unwrap();
        match two_gen_abelian_normalize(&both).unwrap() {
            TwoGenNormal::Finite { quandle, labels } => {
                assert_eq!(quandle.size(), 4);
                assert!(quandle.is_abelian());
                assert!(quandle.is_n_quandle(2));
                assert_eq!(labels.len(), 4);
            }
            other => panic!("unexpected {other:?}"),
        }

        let bad = QuandlePresentation::parse("gens x y\nrel x*y = y\n").unwrap();
        assert!(matches!(
            two_gen_abelian_normalize(&bad),
            Err(FabError::UnsupportedRelationShape(0))
        ));
    }

    /// Brute-force oracle: closure of the generators under the operations,
    /// restricted to a coordinate box padded by one.
    pub fn box_closure_member(gens: &[FreeAbelianElement], x: &FreeAbelianElement) -> bool {
        let rank = x.rank();
        let mut lo = vec![i64::MAX; rank];
        let mut hi = vec![i64::MIN; rank];
        for e in gens.iter().chain([x]) {
            for j in 0..rank {
                lo[j] = lo[j].min(e.coords()[j] - 1);
                hi[j] = hi[j].max(e.coords()[j] + 1);
            }
        }
        let mut seen: std::collections::HashSet<FreeAbelianElement> =
            gens.iter().cloned().collect();
        let mut queue: Vec<FreeAbelianElement> = gens.to_vec();
        while let Some(e) = queue.pop() {
            for g in gens {
                for sign in [1i8, -1] {
                    let f = e.op(g, sign).unwrap();
                    let inside =
                        (0..rank).all(|j| lo[j] <= f.coords()[j] && f.coords()[j] <= hi[j]);
                    if inside && seen.insert(f.clone()) {
                        queue.push(f);
                    }
                }
            }
        }
        seen.contains(x)
    }

    #[test]
    fn membership_agrees_with_box_closure() {
        let cases = [
            (vec!["(1;0,2)"], "(1;0,5)"),
            (vec!["(1;0,2)"], "(1;0,2)"),
            (vec!["(1;0,0,0)", "(2;0,0,0)"], "(1;0,7,0)"),
            (vec!["(2;0,0)"], "(1;0,3)"),
            (vec!["(1;0,1,2)", "(3;1,1,0)"], "(3;4,-2,0)"),
            (vec!["(1;0,1,2)", "(3;1,1,0)"], "(1;0,3,1)"),
        ];
        for (gen_texts, x_text) in cases {
            let gens: Vec<FreeAbelianElement> = gen_texts.iter().map(|t| el(t)).collect();
            let x = el(x_text);
            let fast = matches!(fab_membership(&gens, &x).unwrap(), FabMembership::Member);
            assert_eq!(fast, box_closure_member(&gens, &x), "case {gen_texts:?} {x_text}");
        }
    }
}
