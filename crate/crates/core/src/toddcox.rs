//! Todd–Coxeter coset enumeration over finitely presented groups.
//!
//! Deduction-first (Felsch-style) strategy: after every table entry is set,
//! all relator rotations through the new edge are scanned, deducing forced
//! entries and queuing coincidences, which are merged by union-find with
//! immediate draining. New cosets are defined at the first undefined entry
//! in row-major scan order, which makes coset numbering reproducible.
//!
//! Enumeration semi-decides finiteness: running out of resources is always
//! "undecided", never a claim of infiniteness.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;
use crate::presentation::GroupPresentation;
use crate::words::GroupWord;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TcLimits {
    pub max_cosets: usize,
    pub max_steps: u64,
}

impl Default for TcLimits {
    fn default() -> Self {
        TcLimits { max_cosets: 100_000, max_steps: 10_000_000 }
    }
}

/// The permutation action of each group generator on the cosets of the
/// enumerated subgroup. Coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetAction {
    pub index: usize,
    pub gen_perms: Vec<Permutation>,
}

impl CosetAction {
    /// Traces a word from a coset through the action.
    pub fn trace(&self, start: usize, word: &GroupWord) -> usize {
        let mut c = start;
        for (g, s) in word.letters() {
            let p = &self.gen_perms[g];
            c = if s > 0 { p.apply(c) } else { p.inverse().apply(c) };
        }
        c
    }

    pub fn perm_of_word(&self, word: &GroupWord) -> Permutation {
        let mut p = Permutation::identity(self.index);
        for (g, s) in word.letters() {
            let q = &self.gen_perms[g];
            p = if s > 0 { p.then(q) } else { p.then(&q.inverse()) };
        }
        p
    }

    /// A word reaching each coset from coset 0, by breadth-first search over
    /// letters in generator order. Deterministic.
    pub fn spanning_words(&self) -> Vec<GroupWord> {
        let mut words: Vec<Option<GroupWord>> = vec![None; self.index];
        words[0] = Some(GroupWord::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let from = words[c].clone().unwrap();
            for (g, perm) in self.gen_perms.iter().enumerate() {
                for (target, e) in [(perm.apply(c), 1i64), (perm.inverse().apply(c), -1)] {
                    if words[target].is_none() {
                        words[target] = Some(from.mul(&GroupWord::from_syllables([(g, e)])));
                        queue.push_back(target);
                    }
                }
            }
        }
        words.into_iter().map(|w| w.expect("action is transitive on cosets")).collect()
    }
}

pub enum TcOutcome {
    Closed { action: CosetAction, cosets_defined: usize, steps: u64 },
    OutOfResources(Box<CosetTable>),
}

/// Letters are `2*g` for generator `g` and `2*g + 1` for its inverse.
fn inv_letter(l: u32) -> u32 {
    l ^ 1
}

fn word_letters(w: &GroupWord) -> Vec<u32> {
    let mut out = Vec::new();
    for (g, s) in w.letters() {
        let l = if s > 0 { 2 * g as u32 } else { 2 * g as u32 + 1 };
        if out.last() == Some(&inv_letter(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclically_reduce(mut w: Vec<u32>) -> Vec<u32> {
    while w.len() >= 2 && *w.first().unwrap() == inv_letter(*w.last().unwrap()) {
        w.remove(0);
        w.pop();
    }
    w
}

/// Working state of one enumeration, checkpointable as JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CosetTable {
    version: u32,
    ngens: usize,
    relators: Vec<Vec<u32>>,
    subgroup: Vec<Vec<u32>>,
    rows: Vec<Vec<Option<u32>>>,
    forward: Vec<u32>,
    dedstack: Vec<(u32, u32)>,
    cqueue: VecDeque<(u32, u32)>,
    live: usize,
    steps: u64,
    sub_filled: usize,
    #[serde(skip)]
    rotations: Vec<Vec<Vec<u32>>>,
}

const CHECKPOINT_VERSION: u32 = 1;

impl CosetTable {
    pub fn new(g: &GroupPresentation, subgroup: &[GroupWord]) -> CosetTable {
        let ngens = g.generators.len();
        assert!(ngens >= 1, "presentation needs at least one generator");
        let relators: Vec<Vec<u32>> = g
            .relators
            .iter()
            .map(|r| cyclically_reduce(word_letters(r)))
            .filter(|r| !r.is_empty())
            .collect();
        let subgroup: Vec<Vec<u32>> =
            subgroup.iter().map(word_letters).filter(|w| !w.is_empty()).collect();
        let mut table = CosetTable {
            version: CHECKPOINT_VERSION,
            ngens,
            relators,
            subgroup,
            rows: vec![vec![None; 2 * ngens]],
            forward: vec![0],
            dedstack: Vec::new(),
            cqueue: VecDeque::new(),
            live: 1,
            steps: 0,
            sub_filled: 0,
            rotations: Vec::new(),
        };
        table.build_rotations();
        table
    }

    fn build_rotations(&mut self) {
        let mut rotations = vec![Vec::new(); 2 * self.ngens];
        for r in &self.relators {
            for k in 0..r.len() {
                let rot: Vec<u32> = r[k..].iter().chain(&r[..k]).copied().collect();
                rotations[rot[0] as usize].push(rot);
            }
        }
        self.rotations = rotations;
    }

    pub fn from_checkpoint_json(s: &str) -> Result<CosetTable, String> {
        let mut t: CosetTable = serde_json::from_str(s).map_err(|e| e.to_string())?;
        if t.version != CHECKPOINT_VERSION {
            return Err(format!("unsupported checkpoint version {}", t.version));
        }
        t.build_rotations();
        Ok(t)
    }

    pub fn checkpoint_json(&self) -> String {
        serde_json::to_string(self).expect("checkpoint serializes")
    }

    pub fn cosets_defined(&self) -> usize {
        self.rows.len()
    }

    pub fn live_cosets(&self) -> usize {
        self.live
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        while self.forward[c as usize] != c {
            let parent = self.forward[c as usize];
            let grand = self.forward[parent as usize];
            self.forward[c as usize] = grand;
            c = grand;
        }
        c
    }

    fn entry(&mut self, c: u32, l: u32) -> Option<u32> {
        match self.rows[c as usize][l as usize] {
            None => None,
            Some(d) => {
                let d = self.rep(d);
                self.rows[c as usize][l as usize] = Some(d);
                Some(d)
            }
        }
    }

    /// Records `c . l = d` in both directions, queuing a coincidence if an
    /// existing entry disagrees.
    fn deduce(&mut self, c: u32, l: u32, d: u32) {
        for (a, la, b) in [(c, l, d), (d, inv_letter(l), c)] {
            match self.entry(a, la) {
                None => {
                    self.rows[a as usize][la as usize] = Some(b);
                    self.dedstack.push((a, la));
                }
                Some(existing) => {
                    let rb = self.rep(b);
                    if existing != rb {
                        self.cqueue.push_back((existing, rb));
                    }
                }
            }
        }
    }

    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.cqueue.pop_front() {
            let a = self.rep(a);
            let b = self.rep(b);
            if a == b {
                continue;
            }
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.forward[kill as usize] = keep;
            self.live -= 1;
            for l in 0..(2 * self.ngens as u32) {
                if let Some(t) = self.rows[kill as usize][l as usize].take() {
                    let t = self.rep(t);
                    self.deduce(keep, l, t);
                }
            }
        }
    }

    /// Scans `word` as a cycle at `start`: a complete mismatching scan is a
    /// coincidence, a gap of one is a deduction.
    fn scan(&mut self, start: u32, word: &[u32]) {
        let start = self.rep(start);
        let mut f = start;
        let mut i = 0;
        while i < word.len() {
            self.steps += 1;
            match self.entry(f, word[i]) {
                Some(x) => {
                    f = x;
                    i += 1;
                }
                None => break,
            }
        }
        if i == word.len() {
            if f != start {
                self.cqueue.push_back((f, start));
            }
            return;
        }
        let mut b = start;
        let mut j = word.len();
        while j > i {
            self.steps += 1;
            match self.entry(b, inv_letter(word[j - 1])) {
                Some(x) => {
                    b = x;
                    j -= 1;
                }
                None => break,
            }
        }
        if j == i {
            if f != b {
                self.cqueue.push_back((f, b));
            }
        } else if j == i + 1 {
            self.deduce(f, word[i], b);
        }
    }

    /// Drains deductions and coincidences to quiescence.
    fn propagate(&mut self) {
        loop {
            self.process_coincidences();
            let Some((c, l)) = self.dedstack.pop() else {
                if self.cqueue.is_empty() {
                    return;
                }
                continue;
            };
            let c = self.rep(c);
            let Some(d) = self.entry(c, l) else { continue };
            let rots = std::mem::take(&mut self.rotations);
            for rot in &rots[l as usize] {
                self.scan(c, rot);
            }
            for rot in &rots[inv_letter(l) as usize] {
                self.scan(d, rot);
            }
            self.rotations = rots;
        }
    }

    fn new_coset(&mut self) -> u32 {
        let id = self.rows.len() as u32;
        self.rows.push(vec![None; 2 * self.ngens]);
        self.forward.push(id);
        self.live += 1;
        id
    }

    fn over_limits(&self, limits: &TcLimits) -> bool {
        self.rows.len() >= limits.max_cosets || self.steps > limits.max_steps
    }

    /// Completes the path of one subgroup word from coset 0 back to itself,
    /// defining cosets as needed.
    fn fill_subgroup_word(&mut self, wi: usize, limits: &TcLimits) -> bool {
        loop {
            let word = self.subgroup[wi].clone();
            let mut c = 0u32;
            let mut i = 0;
            while i + 1 < word.len() {
                self.steps += 1;
                match self.entry(c, word[i]) {
                    Some(x) => {
                        c = x;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i + 1 == word.len() || word.len() == 1 {
                let last = word[word.len() - 1];
                let from = if word.len() == 1 { 0 } else { c };
                self.deduce(from, last, 0);
                self.propagate();
                return true;
            }
            if self.over_limits(limits) {
                return false;
            }
            let m = self.new_coset();
            self.deduce(c, word[i], m);
            self.propagate();
        }
    }

    /// First undefined entry in row-major order over live cosets.
    fn next_undefined(&mut self) -> Option<(u32, u32)> {
        for c in 0..self.rows.len() as u32 {
            if self.rep(c) != c {
                continue;
            }
            for l in 0..(2 * self.ngens as u32) {
                if self.entry(c, l).is_none() {
                    return Some((c, l));
                }
            }
        }
        None
    }

    /// Runs the enumeration until the table closes or a limit is hit.
    pub fn run(mut self, limits: &TcLimits) -> TcOutcome {
        while self.sub_filled < self.subgroup.len() {
            if !self.fill_subgroup_word(self.sub_filled, limits) {
                return TcOutcome::OutOfResources(Box::new(self));
            }
            self.sub_filled += 1;
        }
        loop {
            self.propagate();
            match self.next_undefined() {
                None => break,
                Some((c, l)) => {
                    if self.over_limits(limits) {
                        return TcOutcome::OutOfResources(Box::new(self));
                    }
                    let m = self.new_coset();
                    self.deduce(c, l, m);
                }
            }
        }
        let (cosets_defined, steps) = (self.rows.len(), self.steps);
        TcOutcome::Closed { action: self.into_action(), cosets_defined, steps }
    }

    fn into_action(mut self) -> CosetAction {
        let mut newid = vec![usize::MAX; self.rows.len()];
        let mut count = 0;
        for c in 0..self.rows.len() as u32 {
            if self.rep(c) == c {
                newid[c as usize] = count;
                count += 1;
            }
        }
        let mut gen_perms = Vec::with_capacity(self.ngens);
        for g in 0..self.ngens {
            let mut images = vec![0usize; count];
            for c in 0..self.rows.len() as u32 {
                if self.rep(c) != c {
                    continue;
                }
                let d = self.entry(c, 2 * g as u32).expect("closed table is complete");
                images[newid[c as usize]] = newid[d as usize];
            }
            gen_perms
                .push(Permutation::from_images(images).expect("closed columns are bijections"));
        }
        CosetAction { index: count, gen_perms }
    }
}

/// Runs a fresh enumeration of the cosets of the subgroup generated by
/// `subgroup` in the presented group. On closure the action is re-checked by
/// [`verify_action`]; a verification failure is a bug and panics.
pub fn todd_coxeter(g: &GroupPresentation, subgroup: &[GroupWord], limits: &TcLimits) -> TcOutcome {
    let outcome = CosetTable::new(g, subgroup).run(limits);
    if let TcOutcome::Closed { action, .. } = &outcome {
        if let Err(e) = verify_action(g, subgroup, action) {
            panic!("coset enumeration produced an inconsistent table: {e}");
        }
    }
    outcome
}

/// Independent check that a claimed coset action is consistent: every relator
/// acts trivially on every coset, every subgroup word fixes coset 0, and the
/// action is transitive.
pub fn verify_action(
    g: &GroupPresentation,
    subgroup: &[GroupWord],
    action: &CosetAction,
) -> Result<(), String> {
    if action.gen_perms.len() != g.generators.len() {
        return Err("wrong number of generator permutations".into());
    }
    for (i, p) in action.gen_perms.iter().enumerate() {
        if p.degree() != action.index {
            return Err(format!("generator {i} acts on the wrong number of cosets"));
        }
    }
    for (ri, r) in g.relators.iter().enumerate() {
        for c in 0..action.index {
            if action.trace(c, r) != c {
                return Err(format!("relator {ri} does not close at coset {c}"));
            }
        }
    }
    for (wi, w) in subgroup.iter().enumerate() {
        if action.trace(0, w) != 0 {
            return Err(format!("subgroup word {wi} does not fix coset 0"));
        }
    }
    // transitivity: every coset is reachable from 0
    let words = action.spanning_words();
    if words.len() != action.index {
        return Err("action is not transitive".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::GroupPresentation;

    fn pres(text: &str) -> GroupPresentation {
        GroupPresentation::parse(text).unwrap()
    }

    fn index_of(g: &GroupPresentation, sub: &[GroupWord]) -> usize {
        match todd_coxeter(g, sub, &TcLimits::default()) {
            TcOutcome::Closed { action, .. } => action.index,
            TcOutcome::OutOfResources(_) => panic!("enumeration did not close"),
        }
    }

    #[test]
    fn cyclic_of_order_three() {
        let g = pres("gens a\nrelator a^3\n");
        assert_eq!(index_of(&g, &[]), 3);
    }

    #[test]
    fn symmetric_group_presentation() {
        // <a, b | a^2, b^2, (ab)^3> is S3
        let g = pres("gens a b\nrelator a^2\nrelator b^2\nrelator a b a b a b\n");
        assert_eq!(index_of(&g, &[]), 6);
        // over <a> the index halves
        let sub = vec![GroupWord::parse("a", &g.generators).unwrap()];
        assert_eq!(index_of(&g, &sub), 3);
    }

    #[test]
    fn quaternion_group() {
        // <a, b | a^4, a^2 b^-2, b^-1 a b a> has order 8
        let g = pres("gens a b\nrelator a^4\nrelator a^2 b^-2\nrelator b^-1 a b a\n");
        assert_eq!(index_of(&g, &[]), 8);
    }

    #[test]
    fn trefoil_two_enveloping_group() {
        // conjugation relators of the trefoil plus squared generators: S3
        let g = pres(
            "gens a b c\nrelator b^-1 a b c^-1\nrelator c^-1 b c a^-1\nrelator a^-1 c a b^-1\nrelator a^2\nrelator b^2\nrelator c^2\n",
        );
        assert_eq!(index_of(&g, &[]), 6);
    }

    #[test]
    fn out_of_resources_is_resumable() {
        let g = pres("gens a b\nrelator a^2\nrelator b^2\nrelator a b a b a b\n");
        let tiny = TcLimits { max_cosets: 3, max_steps: 1_000_000 };
        let TcOutcome::OutOfResources(state) = CosetTable::new(&g, &[]).run(&tiny) else {
            panic!("expected resource exhaustion");
        };
        let json = state.checkpoint_json();
        let restored = CosetTable::from_checkpoint_json(&json).unwrap();
        let TcOutcome::Closed { action, .. } = restored.run(&TcLimits::default()) else {
            panic!("resumed run should close");
        };
        assert_eq!(action.index, 6);
        verify_action(&g, &[], &action).unwrap();
    }

    #[test]
    fn free_group_exhausts() {
        let g = pres("gens a b\n");
        let limits = TcLimits { max_cosets: 50, max_steps: 1_000_000 };
        assert!(matches!(todd_coxeter(&g, &[], &limits), TcOutcome::OutOfResources(_)));
    }

    #[test]
    fn deterministic_actions() {
        let g = pres("gens a b\nrelator a^2\nrelator b^3\nrelator a b a b a b a b\n");
        let TcOutcome::Closed { action: a1, .. } = todd_coxeter(&g, &[], &TcLimits::default()) else { panic!() };
        let TcOutcome::Closed { action: a2, .. } = todd_coxeter(&g, &[], &TcLimits::default()) else { panic!() };
        assert_eq!(a1, a2);
        assert_eq!(a1.index, 24); // <a,b | a^2, b^3, (ab)^4> = S4
    }

    #[test]
    fn spanning_words_reach_all_cosets() {
        let g = pres("gens a\nrelator a^5\n");
        let TcOutcome::Closed { action, .. } = todd_coxeter(&g, &[], &TcLimits::default()) else {
            panic!()
        };
        let words = action.spanning_words();
        for (c, w) in words.iter().enumerate() {
            assert_eq!(action.trace(0, w), c);
        }
    }

    #[test]
    fn resumed_equals_oneshot() {
        let g = pres("gens a b\nrelator a^3\nrelator b^3\nrelator a b a^-1 b^-1\n");
        let TcOutcome::Closed { action: oneshot, .. } = todd_coxeter(&g, &[], &TcLimits::default()) else {
            panic!()
        };
        assert_eq!(oneshot.index, 9);
        let mut state = CosetTable::new(&g, &[]);
        // resume through checkpoints in tiny step slices
        let mut budget = 40u64;
        let action = loop {
            let limits = TcLimits { max_cosets: 100_000, max_steps: budget };
            match state.run(&limits) {
                TcOutcome::Closed { action, .. } => break action,
                TcOutcome::OutOfResources(s) => {
                    state = CosetTable::from_checkpoint_json(&s.checkpoint_json()).unwrap();
                    budget += 40;
                }
            }
        };
        assert_eq!(action, oneshot);
    }
}
