//! Ends of the surface as eventually periodic digit words, and the structure
//! of the ideal boundary: classification, limit points, subtree bisimulation,
//! fractal and quasi-fractal covers.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::blueprint::{EndAutomaton, StateId};
use crate::cantor_basis::{Digit, TriadicInterval};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("end {0} does not run in the automaton")]
    PathNotAccepted(String),
    #[error("malformed end {text:?}: {reason}")]
    BadEndSyntax { text: String, reason: String },
    #[error("interval {0:?} has no fractal cover within the search bound")]
    CoverMissing(String),
}

/// An eventually periodic end `prefix · cycle^ω`.
///
/// Equality, hashing and ordering see the infinite word, so `"2(2)"` and
/// `"(2)"` denote the same end. Ordering is the order of the Cantor points.
#[derive(Clone, Debug)]
pub struct EndPath {
    prefix: Vec<Digit>,
    cycle: Vec<Digit>,
}

impl EndPath {
    pub fn new(prefix: Vec<Digit>, cycle: Vec<Digit>) -> Result<Self, BoundaryError> {
        if cycle.is_empty() {
            return Err(BoundaryError::BadEndSyntax {
                text: format!("{}()", word(&prefix)),
                reason: "cycle must be nonempty".into(),
            });
        }
        Ok(EndPath { prefix, cycle })
    }

    pub fn prefix(&self) -> &[Digit] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Digit] {
        &self.cycle
    }

    /// The `i`-th digit of the infinite word.
    pub fn digit(&self, i: usize) -> Digit {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// First `k` digits, as an interval.
    pub fn interval(&self, k: usize) -> TriadicInterval {
        TriadicInterval::from_digits((0..k).map(|i| self.digit(i)).collect())
    }

    /// Shortest prefix and primitive cycle.
    pub fn canonical(&self) -> EndPath {
        let mut cycle = self.cycle.clone();
        let n = cycle.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (0..n).all(|i| cycle[i] == cycle[i % p]) {
                cycle.truncate(p);
                break;
            }
        }
        let mut prefix = self.prefix.clone();
        while let Some(&last) = prefix.last() {
            if last == *cycle.last().expect("nonempty cycle") {
                prefix.pop();
                cycle.rotate_right(1);
            } else {
                break;
            }
        }
        EndPath { prefix, cycle }
    }

    /// The Cantor point `0.prefix(cycle)` in base 3.
    pub fn point(&self) -> BigRational {
        let three = BigInt::from(3u8);
        let to_int = |w: &[Digit]| {
            w.iter()
                .fold(BigInt::zero(), |acc, d| acc * &three + BigInt::from(d.value()))
        };
        let p = to_int(&self.prefix);
        let c = to_int(&self.cycle);
        let p_den = num_traits::pow(three.clone(), self.prefix.len());
        let c_den = num_traits::pow(three.clone(), self.cycle.len()) - BigInt::one();
        (BigRational::from_integer(p) + BigRational::new(c, c_den)) / BigRational::from_integer(p_den)
    }

    /// Number of digits after which two distinct ends must differ.
    fn horizon(&self, other: &EndPath) -> usize {
        self.prefix.len().max(other.prefix.len()) + self.cycle.len() * other.cycle.len() + 1
    }
}

fn word(w: &[Digit]) -> String {
    w.iter().map(|d| d.as_char()).collect()
}

impl PartialEq for EndPath {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for EndPath {}

impl Ord for EndPath {
    fn cmp(&self, other: &Self) -> Ordering {
        let h = self.horizon(other);
        for i in 0..h {
            match self.digit(i).cmp(&other.digit(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for EndPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for EndPath {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.canonical();
        c.prefix.hash(state);
        c.cycle.hash(state);
    }
}

impl fmt::Display for EndPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", word(&self.prefix), word(&self.cycle))
    }
}

impl FromStr for EndPath {
    type Err = BoundaryError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| BoundaryError::BadEndSyntax { text: text.to_string(), reason: reason.into() };
        let t = text.trim();
        let open = t.find('(').ok_or_else(|| bad("expected '('"))?;
        if !t.ends_with(')') {
            return Err(bad("expected ')' at the end"));
        }
        let digits = |s: &str| -> Result<Vec<Digit>, BoundaryError> {
            s.chars()
                .map(|c| Digit::from_char(c).ok_or_else(|| bad("digits must be 0 or 2")))
                .collect()
        };
        let prefix = digits(&t[..open])?;
        let cycle = digits(&t[open + 1..t.len() - 1])?;
        EndPath::new(prefix, cycle).map_err(|_| bad("cycle must be nonempty"))
    }
}

impl Serialize for EndPath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EndPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// States along the end: the prefix run and the recurrent states of the cycle.
#[derive(Clone, Debug)]
pub struct EndRun {
    /// `states[k]` is the state at the interval of the first `k` digits.
    pub prefix_states: Vec<StateId>,
    /// States visited infinitely often.
    pub recurrent: Vec<StateId>,
}

/// Runs an end through the automaton.
pub fn run_end(a: &EndAutomaton, end: &EndPath) -> Result<EndRun, BoundaryError> {
    let fail = || BoundaryError::PathNotAccepted(end.to_string());
    let mut s = a.start();
    let mut prefix_states = vec![s];
    for &d in end.prefix() {
        s = a.step(s, d).ok_or_else(fail)?;
        prefix_states.push(s);
    }
    // iterate the cycle word until the state at a cycle boundary repeats
    let mut boundary: Vec<StateId> = vec![s];
    let mut trail: Vec<Vec<StateId>> = Vec::new();
    loop {
        let mut visited = Vec::with_capacity(end.cycle().len());
        let mut t = *boundary.last().expect("nonempty");
        for &d in end.cycle() {
            visited.push(t);
            t = a.step(t, d).ok_or_else(fail)?;
        }
        trail.push(visited);
        if let Some(pos) = boundary.iter().position(|&b| b == t) {
            let mut recurrent: Vec<StateId> = trail[pos..].iter().flatten().copied().collect();
            recurrent.sort_unstable();
            recurrent.dedup();
            return Ok(EndRun { prefix_states, recurrent });
        }
        boundary.push(t);
    }
}

/// State at depth `k` along the end.
pub fn state_at(a: &EndAutomaton, end: &EndPath, k: usize) -> Option<StateId> {
    a.run(end.interval(k).digits())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndClassification {
    pub isolated: bool,
    pub nonplanar: bool,
    pub cylindrical: bool,
}

pub fn classify_end(a: &EndAutomaton, end: &EndPath) -> Result<EndClassification, BoundaryError> {
    let run = run_end(a, end)?;
    let nonplanar = run.recurrent.iter().any(|&s| a.chi(s) == 2);
    let isolated = !run.recurrent.iter().any(|&s| a.is_branching(s));
    Ok(EndClassification { isolated, nonplanar, cylindrical: isolated && !nonplanar })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "ends", rename_all = "snake_case")]
pub enum LimitPoints {
    CountableList(Vec<EndPath>),
    Uncountable,
}

/// Components of the reachable graph that carry a cycle, with the number of
/// internal edges.
fn cyclic_components(a: &EndAutomaton) -> Vec<(Vec<StateId>, usize)> {
    let mut out = Vec::new();
    for comp in a.sccs() {
        let inside: BTreeSet<StateId> = comp.iter().copied().collect();
        let edges = comp
            .iter()
            .map(|&s| a.successors(s).filter(|(_, t)| inside.contains(t)).count())
            .sum::<usize>();
        if edges > 0 {
            out.push((comp, edges));
        }
    }
    out
}

/// Limit points of the end space, enumerated through prefixes of length at
/// most `depth_bound`.
pub fn limit_points(a: &EndAutomaton, depth_bound: usize) -> LimitPoints {
    let comps = cyclic_components(a);
    if comps.iter().any(|(c, e)| *e > c.len()) {
        return LimitPoints::Uncountable;
    }
    // every cyclic component is a simple cycle; keep those with a branching state
    let mut comp_of: HashMap<StateId, usize> = HashMap::new();
    let mut cycle_word: HashMap<StateId, Vec<Digit>> = HashMap::new();
    for (ci, (comp, _)) in comps.iter().enumerate() {
        if !comp.iter().any(|&s| a.is_branching(s)) {
            continue;
        }
        let inside: BTreeSet<StateId> = comp.iter().copied().collect();
        for &s in comp {
            comp_of.insert(s, ci);
            let mut w = Vec::new();
            let mut t = s;
            loop {
                let (d, next) = a
                    .successors(t)
                    .find(|(_, n)| inside.contains(n))
                    .expect("simple cycle edge");
                w.push(d);
                t = next;
                if t == s {
                    break;
                }
            }
            cycle_word.insert(s, w);
        }
    }
    let mut found: BTreeSet<EndPath> = BTreeSet::new();
    let mut queue = VecDeque::new();
    queue.push_back((Vec::<Digit>::new(), a.start(), None::<usize>));
    while let Some((w, s, parent_comp)) = queue.pop_front() {
        let here = comp_of.get(&s).copied();
        if here.is_some() && here != parent_comp {
            let end = EndPath::new(w.clone(), cycle_word[&s].clone()).expect("nonempty cycle");
            found.insert(end.canonical());
        }
        if w.len() < depth_bound {
            for (d, t) in a.successors(s) {
                let mut w2 = w.clone();
                w2.push(d);
                queue.push_back((w2, t, here));
            }
        }
    }
    LimitPoints::CountableList(found.into_iter().collect())
}

/// Bisimulation classes of all states, by partition refinement on
/// (chi, out-degree, child codes) and successor classes.
pub fn bisimulation_classes(a: &EndAutomaton) -> Vec<usize> {
    let n = a.len();
    let label = |s: StateId| {
        let t = a.transitions(s);
        (a.chi(s), a.out_degree(s), t[0].is_some(), t[1].is_some())
    };
    let mut class = renumber((0..n).map(label).collect::<Vec<_>>());
    loop {
        let sig: Vec<_> = (0..n)
            .map(|s| {
                let t = a.transitions(s);
                (class[s], t[0].map(|x| class[x]), t[1].map(|x| class[x]))
            })
            .collect();
        let next = renumber(sig);
        let before = class.iter().collect::<BTreeSet<_>>().len();
        let after = next.iter().collect::<BTreeSet<_>>().len();
        class = next;
        if before == after {
            return class;
        }
    }
}

fn renumber<K: Ord + Clone>(keys: Vec<K>) -> Vec<usize> {
    let mut ids = std::collections::BTreeMap::new();
    keys.iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k.clone()).or_insert(next)
        })
        .collect()
}

pub fn bisimilar(a: &EndAutomaton, s1: StateId, s2: StateId) -> bool {
    let c = bisimulation_classes(a);
    c[s1] == c[s2]
}

/// Bisimilarity of states in two different automata, via their disjoint union.
pub fn bisimilar_across(a1: &EndAutomaton, s1: StateId, a2: &EndAutomaton, s2: StateId) -> bool {
    let off = a1.len();
    let mut names: Vec<String> = a1.names().iter().map(|n| format!("a.{n}")).collect();
    names.extend(a2.names().iter().map(|n| format!("b.{n}")));
    let mut trans: Vec<[Option<StateId>; 2]> = (0..a1.len()).map(|s| a1.transitions(s)).collect();
    trans.extend((0..a2.len()).map(|s| {
        let t = a2.transitions(s);
        [t[0].map(|x| x + off), t[1].map(|x| x + off)]
    }));
    let chi: Vec<u8> = (0..a1.len()).map(|s| a1.chi(s)).chain((0..a2.len()).map(|s| a2.chi(s))).collect();
    // the union is only used for refinement, so the start need not reach everything
    let u = EndAutomaton::new(names, 0, trans, chi, 0).expect("union of valid automata");
    let c = bisimulation_classes(&u);
    c[s1] == c[s2 + off]
}

/// A finite set of disjoint strict descendants of `i`, covering every end
/// through `i`, whose subtrees are bisimilar to that of `i`.
pub fn is_fractal(a: &EndAutomaton, i: &TriadicInterval, depth_bound: usize) -> Option<Vec<TriadicInterval>> {
    if i.level() > depth_bound {
        return None;
    }
    let root_state = a.run(i.digits())?;
    let classes = bisimulation_classes(a);
    let mut cover = Vec::new();
    let mut queue = VecDeque::new();
    for (d, t) in a.successors(root_state) {
        queue.push_back((i.child(d), t));
    }
    while let Some((j, s)) = queue.pop_front() {
        if j.level() > depth_bound {
            return None;
        }
        if classes[s] == classes[root_state] {
            cover.push(j);
            continue;
        }
        for (d, t) in a.successors(s) {
            queue.push_back((j.child(d), t));
        }
    }
    cover.sort();
    Some(cover)
}

/// A finite cover `{I_k}` of `[0,1]` with witnesses `J_k ⊋ I_k` whose
/// subtrees are bisimilar to those of `I_k`. Each witness is the nearest
/// such ancestor.
pub fn is_quasi_fractal(a: &EndAutomaton, depth_bound: usize) -> Option<Vec<(TriadicInterval, TriadicInterval)>> {
    let classes = bisimulation_classes(a);
    let mut cover = Vec::new();
    // (interval, state, states of the strict ancestors from the root)
    let mut queue: VecDeque<(TriadicInterval, StateId, Vec<StateId>)> = VecDeque::new();
    queue.push_back((TriadicInterval::root(), a.start(), Vec::new()));
    while let Some((k, s, ancestors)) = queue.pop_front() {
        if let Some(depth) = ancestors.iter().rposition(|&t| classes[t] == classes[s]) {
            cover.push((k.clone(), k.truncate(depth)));
            continue;
        }
        if k.level() >= depth_bound {
            return None;
        }
        let mut next = ancestors.clone();
        next.push(s);
        for (d, t) in a.successors(s) {
            queue.push_back((k.child(d), t, next.clone()));
        }
    }
    cover.sort();
    Some(cover)
}

/// Prefix substitution `from·u ↦ to·u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixMap {
    pub from: TriadicInterval,
    pub to: TriadicInterval,
}

impl PrefixMap {
    pub fn apply(&self, i: &TriadicInterval) -> Option<TriadicInterval> {
        if !self.from.is_prefix_of(i) {
            return None;
        }
        let mut d = self.to.digits().to_vec();
        d.extend_from_slice(&i.digits()[self.from.level()..]);
        Some(TriadicInterval::from_digits(d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractalAtlas {
    pub core: Vec<TriadicInterval>,
    pub maps: Vec<PrefixMap>,
}

/// Core blocks between `i` and its fractal cover, with the shift maps onto
/// the cover elements.
pub fn fractal_atlas(a: &EndAutomaton, i: &TriadicInterval) -> Result<FractalAtlas, BoundaryError> {
    let bound = i.level() + 2 * a.len() + 2;
    let cover = is_fractal(a, i, bound).ok_or_else(|| BoundaryError::CoverMissing(i.word()))?;
    let mut core = Vec::new();
    let mut queue = VecDeque::new();
    queue.push_back(i.clone());
    while let Some(k) = queue.pop_front() {
        if cover.iter().any(|c| c.is_prefix_of(&k)) {
            continue;
        }
        let s = a.run(k.digits()).expect("core interval runs");
        for (d, _) in a.successors(s) {
            queue.push_back(k.child(d));
        }
        core.push(k);
    }
    core.sort();
    let maps = cover.into_iter().map(|to| PrefixMap { from: i.clone(), to }).collect();
    Ok(FractalAtlas { core, maps })
}

/// The lexicographically least end through `i`, if `i` is live.
pub fn least_end_through(a: &EndAutomaton, i: &TriadicInterval) -> Option<EndPath> {
    let mut s = a.run(i.digits())?;
    let mut digits = i.digits().to_vec();
    let mut seen: HashMap<StateId, usize> = HashMap::new();
    loop {
        if let Some(&pos) = seen.get(&s) {
            let cycle = digits.split_off(pos);
            return Some(EndPath::new(digits, cycle).expect("nonempty cycle").canonical());
        }
        seen.insert(s, digits.len());
        let (d, t) = a.successors(s).next().expect("live state");
        digits.push(d);
        s = t;
    }
}

/// Every eventually periodic end with `|prefix| + |cycle| <= max_len` that runs
/// in the automaton, in increasing order.
pub fn eventually_periodic_ends(a: &EndAutomaton, max_len: usize) -> Vec<EndPath> {
    let mut found = BTreeSet::new();
    let mut queue = VecDeque::new();
    queue.push_back((Vec::<Digit>::new(), a.start()));
    while let Some((w, s)) = queue.pop_front() {
        // split w = prefix · cycle
        for cut in 0..w.len() {
            let end = EndPath::new(w[..cut].to_vec(), w[cut..].to_vec()).expect("nonempty");
            if run_end(a, &end).is_ok() {
                found.insert(end.canonical());
            }
        }
        if w.len() < max_len {
            for (d, t) in a.successors(s) {
                let mut w2 = w.clone();
                w2.push(d);
                queue.push_back((w2, t));
            }
        }
    }
    found.into_iter().collect()
}
