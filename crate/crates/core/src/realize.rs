//! Realizing finite fundamental n-quandles of links as coset quandles.
//!
//! For each component the peripheral subgroup `P_i = <m_i, l_i>` is
//! enumerated in the n-enveloping group of the fundamental n-quandle. When
//! every enumeration closes, the disjoint union of coset spaces carries the
//! quandle operation `H_i x * H_j y = H_i e_{m_i}^{-1} x y^{-1} e_{m_j} y`,
//! evaluated through the coset actions, and the result is re-validated.

use serde::{Deserialize, Serialize};

use crate::inner::{homogeneous_representation, orbit_map_defect, DEFAULT_INN_CAP};
use crate::links::LinkDiagram;
use crate::presentation::{env_n_presentation, GroupPresentation};
use crate::quandle::{FiniteQuandle, QuandleError};
use crate::toddcox::{todd_coxeter, CosetAction, CosetTable, TcLimits, TcOutcome};
use crate::words::GroupWord;

#[derive(Clone, Copy, Debug)]
pub struct RealizeLimits {
    pub tc: TcLimits,
    /// Also enumerate over the trivial subgroup to report the order of the
    /// n-enveloping group and of its exponent-sum-zero subgroup.
    pub with_env_order: bool,
}

impl Default for RealizeLimits {
    fn default() -> Self {
        RealizeLimits { tc: TcLimits::default(), with_env_order: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizeStats {
    pub order: usize,
    pub env_order: Option<usize>,
    pub e0_order: Option<usize>,
    pub cosets_defined: usize,
    pub steps: u64,
}

pub struct RealizedNQuandle {
    pub quandle: FiniteQuandle,
    pub n: u64,
    /// element -> link component index
    pub block_of: Vec<usize>,
    pub stats: RealizeStats,
    pub block_actions: Vec<CosetAction>,
    pub env: GroupPresentation,
    pub meridians: Vec<usize>,
    pub longitudes: Vec<GroupWord>,
}

pub enum RealizeOutcome {
    Realized(Box<RealizedNQuandle>),
    /// Some enumeration hit its limits: undecided, resumable.
    OutOfResources { component: Option<usize>, state: Box<CosetTable> },
}

#[derive(Debug, thiserror::Error)]
pub enum RealizeError {
    #[error("realized table failed validation: {0}")]
    Quandle(#[from] QuandleError),
    #[error("realized quandle is not an {0}-quandle")]
    NotNQuandle(u64),
}

pub fn realize_n_quandle(
    diagram: &LinkDiagram,
    n: u64,
    limits: &RealizeLimits,
) -> Result<RealizeOutcome, RealizeError> {
    let pres = diagram.fundamental_n_quandle(n);
    let env = env_n_presentation(&pres, n);
    let peripheral = diagram.peripheral_data();

    let mut block_actions: Vec<CosetAction> = Vec::new();
    let mut total_steps = 0u64;
    let mut total_cosets = 0usize;
    for (i, (&m, l)) in peripheral.meridians.iter().zip(&peripheral.longitudes).enumerate() {
        let sub = vec![GroupWord::generator(m), l.clone()];
        match todd_coxeter(&env, &sub, &limits.tc) {
            TcOutcome::Closed { action, cosets_defined, steps } => {
                total_steps += steps;
                total_cosets += cosets_defined;
                block_actions.push(action);
            }
            TcOutcome::OutOfResources(state) => {
                return Ok(RealizeOutcome::OutOfResources { component: Some(i), state });
            }
        }
    }

    let (env_order, e0_order) = if limits.with_env_order {
        match todd_coxeter(&env, &[], &limits.tc) {
            TcOutcome::Closed { action, cosets_defined, steps } => {
                total_steps += steps;
                total_cosets += cosets_defined;
                // the exponent-sum map onto Z_n is onto (each generator has
                // exponent sum 1), so E_n^0 has index exactly n
                let order = action.index;
                assert_eq!(
                    order % n as usize,
                    0,
                    "group order must be divisible by the exponent-sum image order"
                );
                (Some(order), Some(order / n as usize))
            }
            TcOutcome::OutOfResources(state) => {
                return Ok(RealizeOutcome::OutOfResources { component: None, state })
            }
        }
    } else {
        (None, None)
    };

    // assemble the disjoint-union coset quandle
    let spanning: Vec<Vec<GroupWord>> =
        block_actions.iter().map(CosetAction::spanning_words).collect();
    let offsets: Vec<usize> = block_actions
        .iter()
        .scan(0usize, |acc, a| {
            let off = *acc;
            *acc += a.index;
            Some(off)
        })
        .collect();
    let total: usize = block_actions.iter().map(|a| a.index).sum();

    let mut rows = vec![vec![0usize; total]; total];
    let mut block_of = vec![0usize; total];
    for (i, ai) in block_actions.iter().enumerate() {
        let mi = GroupWord::generator(peripheral.meridians[i]);
        for x in 0..ai.index {
            let e = offsets[i] + x;
            block_of[e] = i;
            for (j, aj) in block_actions.iter().enumerate() {
                let mj = GroupWord::generator(peripheral.meridians[j]);
                for y in 0..aj.index {
                    let f = offsets[j] + y;
                    // e_{m_i}^{-1} x y^{-1} e_{m_j} y traced in block i
                    let word = mi
                        .inverse()
                        .mul(&spanning[i][x])
                        .mul(&spanning[j][y].inverse())
                        .mul(&mj)
                        .mul(&spanning[j][y]);
                    rows[e][f] = offsets[i] + ai.trace(0, &word);
                }
            }
        }
    }

    let quandle = FiniteQuandle::validate(&rows)?;
    if !quandle.is_n_quandle(n) {
        return Err(RealizeError::NotNQuandle(n));
    }
    if env_order.is_some() {
        // a finite enveloping group forces all peripheral indices finite and
        // the quandle no larger than the group
        assert!(
            quandle.size() <= env_order.unwrap(),
            "coset quandle cannot outgrow its enveloping group"
        );
    }

    let stats = RealizeStats {
        order: quandle.size(),
        env_order,
        e0_order,
        cosets_defined: total_cosets,
        steps: total_steps,
    };
    Ok(RealizeOutcome::Realized(Box::new(RealizedNQuandle {
        quandle,
        n,
        block_of,
        stats,
        block_actions,
        env,
        meridians: peripheral.meridians,
        longitudes: peripheral.longitudes,
    })))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneityReport {
    pub pass: bool,
    pub witness: Option<String>,
}

/// Checks the homogeneous structure of a realized n-quandle: the peripheral
/// words fix their base coset, each longitude's action commutes with its
/// meridian's, and the table round-trips through the inner-group coset
/// rebuild to an isomorphic quandle.
pub fn verify_homogeneous_realized(r: &RealizedNQuandle) -> HomogeneityReport {
    let fail = |witness: String| HomogeneityReport { pass: false, witness: Some(witness) };
    for (i, action) in r.block_actions.iter().enumerate() {
        let m = GroupWord::generator(r.meridians[i]);
        if action.trace(0, &m) != 0 {
            return fail(format!("meridian of component {i} does not fix its base coset"));
        }
        if action.trace(0, &r.longitudes[i]) != 0 {
            return fail(format!("longitude of component {i} does not fix its base coset"));
        }
        let pm = action.perm_of_word(&m);
        let pl = action.perm_of_word(&r.longitudes[i]);
        if pm.then(&pl) != pl.then(&pm) {
            return fail(format!("peripheral pair of component {i} does not commute"));
        }
        // conjugation compatibility: the action of e_{x *^{s} y} equals the
        // conjugate of e_x's action by e_y^{s}'s
        let ngens = r.env.generators.len();
        for x in 0..ngens {
            for y in 0..ngens {
                for s in [1i64, -1] {
                    let px = action.perm_of_word(&GroupWord::generator(x));
                    let py = action.perm_of_word(&GroupWord::from_syllables([(y, s)]));
                    let conj = py.inverse().then(&px).then(&py);
                    let word = GroupWord::from_syllables([(y, -s), (x, 1), (y, s)]);
                    if action.perm_of_word(&word) != conj {
                        return fail(format!(
                            "action is not a homomorphism at generators ({x},{y})"
                        ));
                    }
                }
            }
        }
    }
    match homogeneous_representation(&r.quandle, DEFAULT_INN_CAP) {
        Err(e) => fail(format!("inner-group rebuild failed: {e}")),
        Ok(rep) => match orbit_map_defect(&r.quandle, &rep) {
            Some(w) => fail(w),
            None => HomogeneityReport { pass: true, witness: None },
        },
    }
}

/// Same round-trip check for a plain finite n-quandle.
pub fn verify_homogeneous_table(q: &FiniteQuandle) -> HomogeneityReport {
    match homogeneous_representation(q, DEFAULT_INN_CAP) {
        Err(e) => HomogeneityReport { pass: false, witness: Some(format!("{e}")) },
        Ok(rep) => match orbit_map_defect(q, &rep) {
            Some(w) => HomogeneityReport { pass: false, witness: Some(w) },
            None => HomogeneityReport { pass: true, witness: None },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::presented_homs;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::parse(
            "arc a\narc b\narc c\n\
             crossing over=b in=a out=c sign=+1\n\
             crossing over=c in=b out=a sign=+1\n\
             crossing over=a in=c out=b sign=+1\n\
             component a c b\n",
        )
        .unwrap()
    }

    fn unknot() -> LinkDiagram {
        LinkDiagram::parse("arc a\ncomponent a\n").unwrap()
    }

    #[test]
    fn trefoil_two_quandle_is_r3() {
        let RealizeOutcome::Realized(r) =
            realize_n_quandle(&trefoil(), 2, &RealizeLimits::default()).unwrap()
        else {
            panic!("should close");
        };
        assert_eq!(r.stats.order, 3);
        assert_eq!(r.stats.env_order, Some(6));
        assert_eq!(r.stats.e0_order, Some(3));
        assert!(r.quandle.isomorphism(&FiniteQuandle::dihedral(3)).is_some());
        assert!(r.quandle.is_n_quandle(2));
        let report = verify_homogeneous_realized(&r);
        assert!(report.pass, "{:?}", report.witness);
    }

    #[test]
    fn trefoil_three_quandle() {
        let RealizeOutcome::Realized(r) =
            realize_n_quandle(&trefoil(), 3, &RealizeLimits::default()).unwrap()
        else {
            panic!("should close");
        };
        // the three-fold branched cover of the trefoil has |pi_1| = 8
        assert_eq!(r.stats.env_order, Some(24));
        assert_eq!(r.stats.e0_order, Some(8));
        assert_eq!(r.stats.order, 4);
        assert!(r.quandle.is_n_quandle(3));
        let report = verify_homogeneous_realized(&r);
        assert!(report.pass, "{:?}", report.witness);
    }

    #[test]
    fn unknot_any_n() {
        for n in [2u64, 3, 5] {
            let RealizeOutcome::Realized(r) =
                realize_n_quandle(&unknot(), n, &RealizeLimits::default()).unwrap()
            else {
                panic!("should close");
            };
            assert_eq!(r.stats.order, 1);
            assert_eq!(r.stats.env_order, Some(n as usize));
            assert_eq!(r.stats.e0_order, Some(1));
        }
    }

    #[test]
    fn hom_count_cross_check() {
        // colorings of the 2-quandle presentation by the realized table agree
        // with colorings by R3
        let d = trefoil();
        let RealizeOutcome::Realized(r) =
            realize_n_quandle(&d, 2, &RealizeLimits::default()).unwrap()
        else {
            panic!()
        };
        let p2 = d.fundamental_n_quandle(2);
        let into_realized = presented_homs(&p2, &r.quandle).len();
        let into_r3 = presented_homs(&p2, &FiniteQuandle::dihedral(3)).len();
        assert_eq!(into_realized, into_r3);
        assert_eq!(into_r3, 9);
    }

    #[test]
    fn unlink_exhausts() {
        let d = LinkDiagram::parse("arc a\narc b\ncomponent a\ncomponent b\n").unwrap();
        let limits = RealizeLimits {
            tc: TcLimits { max_cosets: 60, max_steps: 100_000 },
            with_env_order: false,
        };
        match realize_n_quandle(&d, 2, &limits).unwrap() {
            RealizeOutcome::OutOfResources { .. } => {}
            RealizeOutcome::Realized(_) => panic!("free 2-quandle of rank 2 is infinite"),
        }
    }
}
