//! Link diagrams as arc-based crossing lists, their fundamental quandle and
//! n-quandle presentations, the Wirtinger presentation of the link group,
//! and peripheral (meridian/longitude) data per component.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::presentation::{env_presentation, GroupPresentation, QuandlePresentation};
use crate::words::{GroupWord, QWord};

#[derive(Debug, Error)]
pub enum LinkError {
    #[error("malformed crossing: {0}")]
    MalformedCrossing(String),
    #[error("arc count mismatch: {0}")]
    ArcCountMismatch(String),
    #[error("broken component cycle: {0}")]
    BrokenComponentCycle(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

/// A link diagram: named arcs, signed crossings, and the arcs of each
/// component in under-traversal order.
///
/// At a crossing the incoming under-arc `under_in` becomes `under_out`,
/// with the relation `under_in *^{sign} over = under_out`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkDiagram {
    pub arcs: Vec<String>,
    pub crossings: Vec<Crossing>,
    pub components: Vec<Vec<usize>>,
}

/// Per-component meridian generator and 0-framed longitude.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeripheralData {
    pub meridians: Vec<usize>,
    pub longitudes: Vec<GroupWord>,
}

impl LinkDiagram {
    /// Validates the combinatorial invariants: components partition the
    /// arcs; each arc passes under at most once, and consecutive arcs of a
    /// component are joined by exactly the crossing that transforms the
    /// first into the second.
    pub fn validate(
        arcs: Vec<String>,
        crossings: Vec<Crossing>,
        components: Vec<Vec<usize>>,
    ) -> Result<LinkDiagram, LinkError> {
        let n = arcs.len();
        if n == 0 {
            return Err(LinkError::Parse("diagram has no arcs".into()));
        }
        for c in &crossings {
            for a in [c.over, c.under_in, c.under_out] {
                if a >= n {
                    return Err(LinkError::MalformedCrossing(format!("arc index {a} out of range")));
                }
            }
            if c.sign != 1 && c.sign != -1 {
                return Err(LinkError::MalformedCrossing(format!("sign {} is not ±1", c.sign)));
            }
        }

        // each arc goes under at most once, entering and leaving
        let mut in_at: Vec<Option<usize>> = vec![None; n];
        let mut out_at: Vec<Option<usize>> = vec![None; n];
        for (i, c) in crossings.iter().enumerate() {
            if in_at[c.under_in].replace(i).is_some() {
                return Err(LinkError::ArcCountMismatch(format!(
                    "arc '{}' is under_in at more than one crossing",
                    arcs[c.under_in]
                )));
            }
            if out_at[c.under_out].replace(i).is_some() {
                return Err(LinkError::ArcCountMismatch(format!(
                    "arc '{}' is under_out at more than one crossing",
                    arcs[c.under_out]
                )));
            }
        }
        for a in 0..n {
            if in_at[a].is_some() != out_at[a].is_some() {
                return Err(LinkError::ArcCountMismatch(format!(
                    "arc '{}' enters a crossing but never leaves one, or vice versa",
                    arcs[a]
                )));
            }
        }

        let mut seen = vec![false; n];
        for comp in &components {
            if comp.is_empty() {
                return Err(LinkError::BrokenComponentCycle("empty component".into()));
            }
            for &a in comp {
                if a >= n {
                    return Err(LinkError::BrokenComponentCycle(format!("arc index {a} out of range")));
                }
                if seen[a] {
                    return Err(LinkError::BrokenComponentCycle(format!(
                        "arc '{}' listed in more than one component",
                        arcs[a]
                    )));
                }
                seen[a] = true;
            }
            if comp.len() == 1 && in_at[comp[0]].is_none() {
                continue; // crossing-free unknotted component
            }
            for (k, &a) in comp.iter().enumerate() {
                let next = comp[(k + 1) % comp.len()];
                let ci = in_at[a].ok_or_else(|| {
                    LinkError::BrokenComponentCycle(format!(
                        "arc '{}' of a multi-arc component passes under no crossing",
                        arcs[a]
                    ))
                })?;
                if crossings[ci].under_out != next {
                    return Err(LinkError::BrokenComponentCycle(format!(
                        "arc '{}' is followed by '{}' in its component, but its crossing exits to '{}'",
                        arcs[a], arcs[next], arcs[crossings[ci].under_out]
                    )));
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| !seen[a]) {
            return Err(LinkError::BrokenComponentCycle(format!(
                "arc '{}' belongs to no component",
                arcs[a]
            )));
        }
        Ok(LinkDiagram { arcs, crossings, components })
    }

    /// Parses the text format: `arc NAME` lines, then
    /// `crossing over=A in=B out=C sign=±1` lines, then
    /// `component A B C` lines.
    pub fn parse(text: &str) -> Result<LinkDiagram, LinkError> {
        let mut arcs: Vec<String> = Vec::new();
        let mut crossings = Vec::new();
        let mut components = Vec::new();
        let find = |arcs: &[String], name: &str| -> Result<usize, LinkError> {
            arcs.iter()
                .position(|a| a == name)
                .ok_or_else(|| LinkError::Parse(format!("unknown arc '{name}'")))
        };
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| LinkError::Parse(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("arc ") {
                let name = rest.trim().to_string();
                if name.is_empty() || arcs.contains(&name) {
                    return Err(err(format!("bad or duplicate arc name '{name}'")));
                }
                arcs.push(name);
            } else if let Some(rest) = line.strip_prefix("crossing ") {
                let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
                for tok in rest.split_whitespace() {
                    let (k, v) =
                        tok.split_once('=').ok_or_else(|| err(format!("bad field '{tok}'")))?;
                    fields.insert(k, v);
                }
                let get = |k: &str| {
                    fields.get(k).copied().ok_or_else(|| err(format!("missing field '{k}'")))
                };
                let sign = match get("sign")? {
                    "+1" | "1" | "+" => 1,
                    "-1" | "-" => -1,
                    other => return Err(err(format!("bad sign '{other}'"))),
                };
                crossings.push(Crossing {
                    over: find(&arcs, get("over")?)?,
                    under_in: find(&arcs, get("in")?)?,
                    under_out: find(&arcs, get("out")?)?,
                    sign,
                });
            } else if let Some(rest) = line.strip_prefix("component ") {
                let comp: Result<Vec<usize>, LinkError> =
                    rest.split_whitespace().map(|name| find(&arcs, name)).collect();
                components.push(comp?);
            } else {
                return Err(err("expected 'arc', 'crossing' or 'component'".into()));
            }
        }
        LinkDiagram::validate(arcs, crossings, components)
    }

    /// One generator per arc; per crossing the relation
    /// `under_in *^{sign} over = under_out`.
    pub fn fundamental_quandle(&self) -> QuandlePresentation {
        let relations = self
            .crossings
            .iter()
            .map(|c| {
                (QWord::new(c.under_in, [(c.over, c.sign)]), QWord::generator(c.under_out))
            })
            .collect();
        QuandlePresentation { generators: self.arcs.clone(), relations }
    }

    pub fn fundamental_n_quandle(&self, n: u64) -> QuandlePresentation {
        self.fundamental_quandle().n_quandle(n)
    }

    /// The Wirtinger presentation of the link group, as the enveloping-group
    /// presentation of the fundamental quandle.
    pub fn wirtinger_group(&self) -> GroupPresentation {
        env_presentation(&self.fundamental_quandle())
    }

    /// Meridian (first arc of each component) and 0-framed longitude: the
    /// product of `e_over^{sign}` at each crossing passed under along the
    /// component, corrected by a meridian power to exponent sum zero.
    pub fn peripheral_data(&self) -> PeripheralData {
        let mut in_at: Vec<Option<usize>> = vec![None; self.arcs.len()];
        for (i, c) in self.crossings.iter().enumerate() {
            in_at[c.under_in] = Some(i);
        }
        let mut meridians = Vec::new();
        let mut longitudes = Vec::new();
        for comp in &self.components {
            let meridian = comp[0];
            let mut word = GroupWord::empty();
            for &a in comp {
                if let Some(ci) = in_at[a] {
                    let c = &self.crossings[ci];
                    word = word.mul(&GroupWord::from_syllables([(c.over, c.sign as i64)]));
                }
            }
            let writhe = word.exponent_sum();
            let longitude = word.mul(&GroupWord::from_syllables([(meridian, -writhe)]));
            debug_assert_eq!(longitude.exponent_sum(), 0);
            meridians.push(meridian);
            longitudes.push(longitude);
        }
        PeripheralData { meridians, longitudes }
    }
}

/// Converts PD code lines `X a b c d` (edges counterclockwise from the
/// incoming under-edge `a`) into an arc-based diagram. The over-strand runs
/// `b -> d` if `d` is the cyclic successor of `b` within its component's
/// edge range, else `d -> b`; the sign is `+1` exactly for `b -> d`.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, LinkError> {
    let mut quads: Vec<[usize; 4]> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| LinkError::Parse(format!("line {}: {msg}", lineno + 1));
        let rest = line
            .strip_prefix('X')
            .ok_or_else(|| err("expected 'X a b c d'".into()))?;
        let nums: Result<Vec<usize>, _> = rest.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|e| err(format!("bad edge number: {e}")))?;
        if nums.len() != 4 || nums.iter().any(|&e| e == 0) {
            return Err(err("expected four positive edge numbers".into()));
        }
        quads.push([nums[0], nums[1], nums[2], nums[3]]);
    }
    if quads.is_empty() {
        return Err(LinkError::Parse("no crossings in PD input".into()));
    }

    let max_edge = quads.iter().flatten().copied().max().unwrap();
    let mut present = vec![false; max_edge + 1];
    for q in &quads {
        for &e in q {
            present[e] = true;
        }
    }
    if (1..=max_edge).any(|e| !present[e]) {
        return Err(LinkError::Parse("edge numbers are not contiguous from 1".into()));
    }

    // components: connected classes of edges under the strand adjacencies
    let mut uf: Vec<usize> = (0..=max_edge).collect();
    fn root(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let join = |uf: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (root(uf, a), root(uf, b));
        if ra != rb {
            uf[ra.max(rb)] = ra.min(rb);
        }
    };
    for q in &quads {
        join(&mut uf, q[0], q[2]);
        join(&mut uf, q[1], q[3]);
    }
    let edge_root: Vec<usize> = (0..=max_edge).map(|e| root(&mut uf, e)).collect();
    let mut range: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for e in 1..=max_edge {
        let entry = range.entry(edge_root[e]).or_insert((e, e));
        entry.0 = entry.0.min(e);
        entry.1 = entry.1.max(e);
    }
    let next_edge = |e: usize| -> usize {
        let r = range[&edge_root[e]];
        if e == r.1 { r.0 } else { e + 1 }
    };

    // merge over-strand edge pairs into arcs
    let mut arc_uf: Vec<usize> = (0..=max_edge).collect();
    for q in &quads {
        let (ra, rb) = (root(&mut arc_uf, q[1]), root(&mut arc_uf, q[3]));
        if ra != rb {
            arc_uf[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut arc_id: BTreeMap<usize, usize> = BTreeMap::new();
    let mut arcs: Vec<String> = Vec::new();
    for e in 1..=max_edge {
        let r = root(&mut arc_uf, e);
        arc_id.entry(r).or_insert_with(|| {
            arcs.push(format!("x{r}"));
            arcs.len() - 1
        });
    }
    let arc_of = |arc_uf: &mut Vec<usize>, e: usize| arc_id[&root(arc_uf, e)];

    let mut crossings = Vec::new();
    for q in &quads {
        let [a, b, c, d] = *q;
        let sign = if next_edge(b) == d {
            1
        } else if next_edge(d) == b {
            -1
        } else {
            return Err(LinkError::MalformedCrossing(format!(
                "over edges {b},{d} are not cyclically adjacent"
            )));
        };
        crossings.push(Crossing {
            over: arc_of(&mut arc_uf, b),
            under_in: arc_of(&mut arc_uf, a),
            under_out: arc_of(&mut arc_uf, c),
            sign,
        });
    }

    // under-traversal order per component, starting at each range minimum
    let mut in_to_out: BTreeMap<usize, usize> = BTreeMap::new();
    for cr in &crossings {
        in_to_out.insert(cr.under_in, cr.under_out);
    }
    let mut components = Vec::new();
    let mut placed = vec![false; arcs.len()];
    for &(lo, _) in range.values() {
        let start = arc_of(&mut arc_uf, lo);
        if placed[start] {
            continue;
        }
        let mut comp = vec![start];
        placed[start] = true;
        let mut cur = start;
        while let Some(&next) = in_to_out.get(&cur) {
            if next == start {
                break;
            }
            if placed[next] {
                return Err(LinkError::BrokenComponentCycle(
                    "under-traversal does not close into a cycle".into(),
                ));
            }
            comp.push(next);
            placed[next] = true;
            cur = next;
        }
        components.push(comp);
    }

    LinkDiagram::validate(arcs, crossings, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{is_in_e0, translate_word};

    pub fn trefoil_text() -> &'static str {
        "arc a\narc b\narc c\n\
         crossing over=b in=a out=c sign=+1\n\
         crossing over=c in=b out=a sign=+1\n\
         crossing over=a in=c out=b sign=+1\n\
         component a c b\n"
    }

    #[test]
    fn parse_trefoil() {
        let d = LinkDiagram::parse(trefoil_text()).unwrap();
        assert_eq!(d.arcs, vec!["a", "b", "c"]);
        assert_eq!(d.components.len(), 1);
        let p = d.fundamental_quandle();
        assert_eq!(p.generators.len(), 3);
        assert_eq!(p.relations.len(), 3);
        assert_eq!(p.relations[0].0, QWord::new(0, [(1, 1)]));
        assert_eq!(p.relations[0].1, QWord::generator(2));
    }

    #[test]
    fn parse_unknot() {
        let d = LinkDiagram::parse("arc a\ncomponent a\n").unwrap();
        let p = d.fundamental_quandle();
        assert_eq!(p.generators.len(), 1);
        assert!(p.relations.is_empty());
        let peripheral = d.peripheral_data();
        assert_eq!(peripheral.meridians, vec![0]);
        assert!(peripheral.longitudes[0].is_empty());
    }

    #[test]
    fn arc_count_mismatch_rejected() {
        // arc b goes under but never comes back out
        let bad = "arc a\narc b\ncrossing over=a in=b out=a sign=+1\ncomponent a b\n";
        assert!(matches!(LinkDiagram::parse(bad), Err(LinkError::ArcCountMismatch(_))));
    }

    #[test]
    fn broken_cycle_rejected() {
        let bad = "arc a\narc b\narc c\n\
                   crossing over=b in=a out=c sign=+1\n\
                   crossing over=c in=b out=a sign=+1\n\
                   crossing over=a in=c out=b sign=+1\n\
                   component a b c\n";
        assert!(matches!(LinkDiagram::parse(bad), Err(LinkError::BrokenComponentCycle(_))));
    }

    #[test]
    fn trefoil_longitude() {
        let d = LinkDiagram::parse(trefoil_text()).unwrap();
        let p = d.peripheral_data();
        assert_eq!(p.meridians, vec![0]);
        // traversal a -> c -> b picks up e_b e_a e_c, corrected by e_a^{-3}
        assert_eq!(
            p.longitudes[0],
            GroupWord::from_syllables([(1, 1), (0, 1), (2, 1), (0, -3)])
        );
        assert_eq!(p.longitudes[0].exponent_sum(), 0);
        for n in 2..6 {
            assert!(is_in_e0(&p.longitudes[0], n));
        }
    }

    #[test]
    fn wirtinger_presentation_of_trefoil() {
        let d = LinkDiagram::parse(trefoil_text()).unwrap();
        let g = d.wirtinger_group();
        assert_eq!(g.generators, vec!["e_a", "e_b", "e_c"]);
        assert_eq!(g.relators.len(), 3);
        // first relation a*b = c gives e_b^-1 e_a e_b e_c^-1
        assert_eq!(
            g.relators[0],
            GroupWord::from_syllables([(1, -1), (0, 1), (1, 1), (2, -1)])
        );
    }

    #[test]
    fn two_component_unlink() {
        let d = LinkDiagram::parse("arc a\narc b\ncomponent a\ncomponent b\n").unwrap();
        let p = d.fundamental_quandle();
        assert_eq!(p.generators.len(), 2);
        assert!(p.relations.is_empty());
        let pd = d.peripheral_data();
        assert!(pd.longitudes.iter().all(|l| l.is_empty()));
        assert_eq!(d.fundamental_n_quandle(2).relations.len(), 2);
    }

    #[test]
    fn hopf_link() {
        let text = "arc a\narc b\n\
                    crossing over=a in=b out=b sign=+1\n\
                    crossing over=b in=a out=a sign=+1\n\
                    component a\ncomponent b\n";
        let d = LinkDiagram::parse(text).unwrap();
        let p = d.peripheral_data();
        // each longitude is the other meridian, corrected
        assert_eq!(p.longitudes[0], GroupWord::from_syllables([(1, 1), (0, -1)]));
        assert_eq!(p.longitudes[1], GroupWord::from_syllables([(0, 1), (1, -1)]));
    }

    #[test]
    fn translate_wirtinger_consistency() {
        // the env presentation relators match translating each relation
        let d = LinkDiagram::parse(trefoil_text()).unwrap();
        let p = d.fundamental_quandle();
        let g = d.wirtinger_group();
        for ((u, v), r) in p.relations.iter().zip(&g.relators) {
            assert_eq!(*r, translate_word(u).mul(&translate_word(v).inverse()));
        }
    }

    #[test]
    fn pd_import_trefoil() {
        // standard PD code of the right trefoil
        let d = parse_pd("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n").unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.crossings.len(), 3);
        assert_eq!(d.arcs.len(), 3);
        // all crossings share the same sign in an alternating torus diagram
        let signs: Vec<i8> = d.crossings.iter().map(|c| c.sign).collect();
        assert!(signs.iter().all(|&s| s == signs[0]));
    }

    #[test]
    fn pd_import_rejects_garbage() {
        assert!(parse_pd("X 1 2 3\n").is_err());
        assert!(parse_pd("Y 1 2 3 4\n").is_err());
        assert!(parse_pd("X 1 2 3 9\n").is_err());
    }
}
