//! Blueprint pairs presented as deterministic automata over `{0, 2}`.
//!
//! A run of the automaton on a digit word picks the interval of that word;
//! the state it reaches carries the genus label `chi` of the block attached
//! there, and the pants label `xi` is read off from the out-degree.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cantor_basis::{Digit, TriadicInterval};
use crate::ideal_boundary::{self, LimitPoints};

pub type StateId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlueprintError {
    #[error("automaton has no states")]
    Empty,
    #[error("state {0:?} is declared twice")]
    DuplicateState(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("state {state:?} has chi 1: cross-caps make the surface non-orientable")]
    NonOrientable { state: String },
    #[error("state {state:?} has chi {value}; only 0 and 2 are allowed")]
    BadChi { state: String, value: u8 },
    #[error("reachable state {state:?} has no outgoing transition")]
    DeadState { state: String },
    #[error("transition target index {0} is out of range")]
    BadTarget(usize),
    #[error("interval {0:?} is not in the slice")]
    NotInSlice(String),
    #[error("interval {0:?} carries both a pants and a genus; normalize first")]
    NotNormalized(String),
}

/// Finite presentation of a blueprint pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAutomaton {
    names: Vec<String>,
    start: StateId,
    trans: Vec<[Option<StateId>; 2]>,
    chi: Vec<u8>,
    base_genus: u32,
}

/// One row of a state table: name, chi, target on `0`, target on `2`.
pub type StateRow<'a> = (&'a str, u8, Option<&'a str>, Option<&'a str>);

impl EndAutomaton {
    pub fn new(
        names: Vec<String>,
        start: StateId,
        trans: Vec<[Option<StateId>; 2]>,
        chi: Vec<u8>,
        base_genus: u32,
    ) -> Result<Self, BlueprintError> {
        if names.is_empty() {
            return Err(BlueprintError::Empty);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(BlueprintError::DuplicateState(n.clone()));
            }
        }
        if start >= names.len() {
            return Err(BlueprintError::BadTarget(start));
        }
        if trans.len() != names.len() || chi.len() != names.len() {
            return Err(BlueprintError::BadTarget(trans.len().max(chi.len())));
        }
        for row in &trans {
            for t in row.iter().flatten() {
                if *t >= names.len() {
                    return Err(BlueprintError::BadTarget(*t));
                }
            }
        }
        for (i, &c) in chi.iter().enumerate() {
            match c {
                0 | 2 => {}
                1 => return Err(BlueprintError::NonOrientable { state: names[i].clone() }),
                v => return Err(BlueprintError::BadChi { state: names[i].clone(), value: v }),
            }
        }
        let a = EndAutomaton { names, start, trans, chi, base_genus };
        let reach = a.reachable();
        for (s, &live) in reach.iter().enumerate() {
            if live && a.out_degree(s) == 0 {
                return Err(BlueprintError::DeadState { state: a.names[s].clone() });
            }
        }
        Ok(a)
    }

    /// Builds an automaton from named rows.
    pub fn from_table(base_genus: u32, start: &str, rows: &[StateRow<'_>]) -> Result<Self, BlueprintError> {
        let names: Vec<String> = rows.iter().map(|r| r.0.to_string()).collect();
        let idx = |n: &str| {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| BlueprintError::UnknownState(n.to_string()))
        };
        let mut trans = Vec::with_capacity(rows.len());
        for r in rows {
            let t0 = r.2.map(idx).transpose()?;
            let t2 = r.3.map(idx).transpose()?;
            trans.push([t0, t2]);
        }
        let chi = rows.iter().map(|r| r.1).collect();
        let start = idx(start)?;
        EndAutomaton::new(names, start, trans, chi, base_genus)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn base_genus(&self) -> u32 {
        self.base_genus
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn chi(&self, s: StateId) -> u8 {
        self.chi[s]
    }

    pub fn step(&self, s: StateId, d: Digit) -> Option<StateId> {
        self.trans[s][d.index()]
    }

    pub fn transitions(&self, s: StateId) -> [Option<StateId>; 2] {
        self.trans[s]
    }

    pub fn out_degree(&self, s: StateId) -> usize {
        self.trans[s].iter().filter(|t| t.is_some()).count()
    }

    pub fn is_branching(&self, s: StateId) -> bool {
        self.out_degree(s) == 2
    }

    /// Successors in digit order.
    pub fn successors(&self, s: StateId) -> impl Iterator<Item = (Digit, StateId)> + '_ {
        Digit::ALL
            .into_iter()
            .filter_map(move |d| self.step(s, d).map(|t| (d, t)))
    }

    /// State reached by reading `word` from the start, if the run is defined.
    pub fn run(&self, word: &[Digit]) -> Option<StateId> {
        self.run_from(self.start, word)
    }

    pub fn run_from(&self, s: StateId, word: &[Digit]) -> Option<StateId> {
        word.iter().try_fold(s, |s, &d| self.step(s, d))
    }

    pub fn reachable(&self) -> Vec<bool> {
        self.reachable_from(self.start)
    }

    pub fn reachable_from(&self, s0: StateId) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![s0];
        seen[s0] = true;
        while let Some(s) = stack.pop() {
            for (_, t) in self.successors(s) {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Strongly connected components of the reachable part, as state lists.
    pub fn sccs(&self) -> Vec<Vec<StateId>> {
        let reach = self.reachable();
        let n = self.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut out = Vec::new();
        let mut counter = 0usize;
        for root in 0..n {
            if !reach[root] || index[root] != usize::MAX {
                continue;
            }
            // iterative Tarjan: (state, next successor slot)
            let mut work: Vec<(StateId, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(top) = work.last_mut() {
                let v = top.0;
                if top.1 < 2 {
                    let k = top.1;
                    top.1 += 1;
                    if let Some(w) = self.trans[v][k] {
                        if index[w] == usize::MAX {
                            index[w] = counter;
                            low[w] = counter;
                            counter += 1;
                            stack.push(w);
                            on_stack[w] = true;
                            work.push((w, 0));
                        } else if on_stack[w] {
                            low[v] = low[v].min(index[w]);
                        }
                    }
                } else {
                    work.pop();
                    if let Some(&(parent, _)) = work.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out.push(comp);
                    }
                }
            }
        }
        out
    }

    /// States lying on at least one cycle.
    pub fn cyclic_states(&self) -> Vec<bool> {
        let mut cyc = vec![false; self.len()];
        for comp in self.sccs() {
            let nontrivial = comp.len() > 1 || self.successors(comp[0]).any(|(_, t)| t == comp[0]);
            if nontrivial {
                for s in comp {
                    cyc[s] = true;
                }
            }
        }
        cyc
    }

    /// JSON form `{states, start, trans, chi, base_genus}`.
    pub fn to_json(&self) -> AutomatonJson {
        let mut trans = BTreeMap::new();
        let mut chi = BTreeMap::new();
        for s in 0..self.len() {
            let mut row = BTreeMap::new();
            for (d, t) in self.successors(s) {
                row.insert(d.as_char().to_string(), self.names[t].clone());
            }
            trans.insert(self.names[s].clone(), row);
            chi.insert(self.names[s].clone(), self.chi[s]);
        }
        AutomatonJson {
            states: self.names.clone(),
            start: self.names[self.start].clone(),
            trans,
            chi,
            base_genus: self.base_genus,
        }
    }

    pub fn from_json(j: &AutomatonJson) -> Result<Self, BlueprintError> {
        let idx = |n: &str| {
            j.states
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| BlueprintError::UnknownState(n.to_string()))
        };
        let mut trans = vec![[None, None]; j.states.len()];
        for (from, row) in &j.trans {
            let f = idx(from)?;
            for (digit, to) in row {
                let d = match digit.as_str() {
                    "0" => Digit::Zero,
                    "2" => Digit::Two,
                    other => return Err(BlueprintError::UnknownState(format!("digit {other}"))),
                };
                trans[f][d.index()] = Some(idx(to)?);
            }
        }
        let mut chi = vec![0u8; j.states.len()];
        for (name, &c) in &j.chi {
            chi[idx(name)?] = c;
        }
        EndAutomaton::new(j.states.clone(), idx(&j.start)?, trans, chi, j.base_genus)
    }
}

/// Serialized automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub states: Vec<String>,
    pub start: String,
    pub trans: BTreeMap<String, BTreeMap<String, String>>,
    pub chi: BTreeMap<String, u8>,
    pub base_genus: u32,
}

/// Labels of one materialized interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceEntry {
    pub chi: u8,
    pub xi: u8,
    pub state: StateId,
}

/// The blueprint pair materialized to a finite depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlueprintSlice {
    pub depth: usize,
    pub entries: BTreeMap<TriadicInterval, SliceEntry>,
}

impl BlueprintSlice {
    pub fn get(&self, i: &TriadicInterval) -> Option<&SliceEntry> {
        self.entries.get(i)
    }

    pub fn at_level(&self, m: usize) -> impl Iterator<Item = (&TriadicInterval, &SliceEntry)> {
        self.entries.iter().filter(move |(i, _)| i.level() == m)
    }

    pub fn restrict(&self, m: usize) -> BlueprintSlice {
        BlueprintSlice {
            depth: m.min(self.depth),
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| i.level() <= m)
                .map(|(i, e)| (i.clone(), *e))
                .collect(),
        }
    }
}

/// Building block attached to an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    Pants,
    Cylinder,
    GenusCylinder,
}

/// Materializes every run prefix of length at most `n`.
pub fn expand(a: &EndAutomaton, n: usize) -> BlueprintSlice {
    let mut entries = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back((TriadicInterval::root(), a.start()));
    while let Some((i, s)) = queue.pop_front() {
        let xi = u8::from(a.is_branching(s));
        entries.insert(i.clone(), SliceEntry { chi: a.chi(s), xi, state: s });
        if i.level() < n {
            for (d, t) in a.successors(s) {
                queue.push_back((i.child(d), t));
            }
        }
    }
    BlueprintSlice { depth: n, entries }
}

pub fn block_kind(xi: u8, chi: u8) -> Option<BlockKind> {
    match (xi, chi) {
        (1, 0) => Some(BlockKind::Pants),
        (0, 0) => Some(BlockKind::Cylinder),
        (0, 2) => Some(BlockKind::GenusCylinder),
        _ => None,
    }
}

pub fn building_block(slice: &BlueprintSlice, i: &TriadicInterval) -> Result<BlockKind, BlueprintError> {
    let e = slice.get(i).ok_or_else(|| BlueprintError::NotInSlice(i.word()))?;
    block_kind(e.xi, e.chi).ok_or_else(|| BlueprintError::NotNormalized(i.word()))
}

/// Suffix marking states inserted by [`normalize`].
pub const GENUS_SPLIT_SUFFIX: &str = "_g";

/// Splits every branching genus state into a genus cylinder followed by pants.
///
/// The inserted state reads digit `0` into the original state, whose chi is
/// reset to 0. Every transition into the original state is redirected to the
/// inserted one.
pub fn normalize(a: &EndAutomaton) -> EndAutomaton {
    let reach = a.reachable();
    let violators: Vec<StateId> = (0..a.len())
        .filter(|&s| reach[s] && a.is_branching(s) && a.chi(s) == 2)
        .collect();
    if violators.is_empty() {
        return a.clone();
    }
    let mut names = a.names.clone();
    let mut trans = a.trans.clone();
    let mut chi = a.chi.clone();
    let mut fresh = vec![None; a.len()];
    for &s in &violators {
        let mut name = format!("{}{}", a.names[s], GENUS_SPLIT_SUFFIX);
        while names.contains(&name) {
            name.push('g');
        }
        fresh[s] = Some(names.len());
        names.push(name);
        trans.push([Some(s), None]);
        chi.push(2);
        chi[s] = 0;
    }
    for row in trans.iter_mut().take(a.len()) {
        for t in row.iter_mut().flatten() {
            if let Some(g) = fresh[*t] {
                *t = g;
            }
        }
    }
    let start = fresh[a.start].unwrap_or(a.start);
    EndAutomaton::new(names, start, trans, chi, a.base_genus).expect("normalization keeps validity")
}

pub fn is_normalized(a: &EndAutomaton) -> bool {
    let reach = a.reachable();
    (0..a.len()).all(|s| !(reach[s] && a.is_branching(s) && a.chi(s) == 2))
}

/// Finitely many ends, all cylindrical, and finite genus.
pub fn is_finite_type(a: &EndAutomaton) -> bool {
    for comp in a.sccs() {
        let s0 = comp[0];
        let nontrivial = comp.len() > 1 || a.successors(s0).any(|(_, t)| t == s0);
        if !nontrivial {
            continue;
        }
        for &s in &comp {
            if a.out_degree(s) != 1 || a.chi(s) != 0 {
                return false;
            }
        }
    }
    true
}

/// Genus summary of a blueprint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenusProfile {
    Finite(u64),
    Infinite,
}

/// Total genus, including the handles of the compact part.
pub fn total_genus(a: &EndAutomaton) -> GenusProfile {
    let cyc = a.cyclic_states();
    let reach = a.reachable();
    for s in 0..a.len() {
        if reach[s] && cyc[s] {
            let from = a.reachable_from(s);
            if (0..a.len()).any(|t| from[t] && a.chi(t) == 2) {
                return GenusProfile::Infinite;
            }
        }
    }
    let slice = expand(a, a.len());
    let handles = slice.entries.values().filter(|e| e.chi == 2).count() as u64;
    GenusProfile::Finite(u64::from(a.base_genus) + handles)
}

/// Number of ends if finite.
pub fn end_count(a: &EndAutomaton) -> Option<u64> {
    let cyc = a.cyclic_states();
    let reach = a.reachable();
    for s in 0..a.len() {
        if reach[s] && cyc[s] {
            let from = a.reachable_from(s);
            if (0..a.len()).any(|t| from[t] && a.is_branching(t)) {
                return None;
            }
        }
    }
    let slice = expand(a, a.len());
    Some(slice.at_level(a.len()).count() as u64)
}

/// Why two blueprints cannot be homeomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum DistinctWitness {
    EndCountability { first_uncountable: bool, second_uncountable: bool },
    LimitPointCount { first: usize, second: usize },
    EndCount { first: Option<u64>, second: Option<u64> },
    GenusGrowth { first: GenusProfile, second: GenusProfile },
    NonplanarEnds { first: bool, second: bool },
    NonplanarLimitPoints { first: usize, second: usize },
}

impl fmt::Display for DistinctWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistinctWitness::EndCountability { first_uncountable, second_uncountable } => write!(
                f,
                "limit set uncountable: {} vs {}",
                first_uncountable, second_uncountable
            ),
            DistinctWitness::LimitPointCount { first, second } => {
                write!(f, "limit point count {} vs {}", first, second)
            }
            DistinctWitness::EndCount { first, second } => write!(f, "end count {:?} vs {:?}", first, second),
            DistinctWitness::GenusGrowth { first, second } => write!(f, "genus {:?} vs {:?}", first, second),
            DistinctWitness::NonplanarEnds { first, second } => {
                write!(f, "has nonplanar ends: {} vs {}", first, second)
            }
            DistinctWitness::NonplanarLimitPoints { first, second } => {
                write!(f, "nonplanar limit points {} vs {}", first, second)
            }
        }
    }
}

/// Matched exhaustion stages: truncation depths `(d_i, d'_i)` with the running
/// sums `k + Σχ` and `Σξ` of each side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub stages: Vec<CertificateStage>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStage {
    pub first_depth: usize,
    pub second_depth: usize,
    pub genus_sum: u64,
    pub pants_sum: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent { certificate: Certificate },
    Distinct { witness: DistinctWitness },
    Unknown { depth_bound: usize },
}

/// Running sums `(k + Σχ, Σξ)` over the entries of level `< d`, for `d = 0..=max`.
fn running_sums(a: &EndAutomaton, max: usize) -> Vec<(u64, u64)> {
    let slice = expand(a, max);
    let mut per_level = vec![(0u64, 0u64); max + 1];
    for (i, e) in &slice.entries {
        per_level[i.level()].0 += u64::from(e.chi);
        per_level[i.level()].1 += u64::from(e.xi);
    }
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = (2 * u64::from(a.base_genus), 0u64);
    out.push(acc);
    for lvl in per_level.iter().take(max) {
        acc.0 += lvl.0;
        acc.1 += lvl.1;
        out.push(acc);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Profile {
    uncountable: bool,
    limit_points: usize,
    nonplanar_limit_points: usize,
    ends: Option<u64>,
    genus: GenusProfile,
    nonplanar: bool,
}

fn profile(a: &EndAutomaton, depth_bound: usize) -> Profile {
    let lp = ideal_boundary::limit_points(a, depth_bound);
    let (uncountable, limit_points, nonplanar_limit_points) = match &lp {
        LimitPoints::Uncountable => (true, 0, 0),
        LimitPoints::CountableList(v) => {
            let np = v
                .iter()
                .filter(|e| ideal_boundary::classify_end(a, e).map(|c| c.nonplanar).unwrap_or(false))
                .count();
            (false, v.len(), np)
        }
    };
    let cyc = a.cyclic_states();
    let reach = a.reachable();
    let nonplanar = (0..a.len()).any(|s| reach[s] && cyc[s] && a.chi(s) == 2);
    Profile {
        uncountable,
        limit_points,
        nonplanar_limit_points,
        ends: end_count(a),
        genus: total_genus(a),
        nonplanar,
    }
}

/// Bounded search for matching exhaustions, after comparing end invariants.
pub fn blueprint_equivalent(a1: &EndAutomaton, a2: &EndAutomaton, depth_bound: usize) -> Equivalence {
    let p1 = profile(a1, depth_bound);
    let p2 = profile(a2, depth_bound);
    if p1.uncountable != p2.uncountable {
        return Equivalence::Distinct {
            witness: DistinctWitness::EndCountability {
                first_uncountable: p1.uncountable,
                second_uncountable: p2.uncountable,
            },
        };
    }
    if p1.ends != p2.ends {
        return Equivalence::Distinct { witness: DistinctWitness::EndCount { first: p1.ends, second: p2.ends } };
    }
    if p1.genus != p2.genus {
        return Equivalence::Distinct {
            witness: DistinctWitness::GenusGrowth { first: p1.genus, second: p2.genus },
        };
    }
    if p1.nonplanar != p2.nonplanar {
        return Equivalence::Distinct {
            witness: DistinctWitness::NonplanarEnds { first: p1.nonplanar, second: p2.nonplanar },
        };
    }
    if p1.limit_points != p2.limit_points {
        return Equivalence::Distinct {
            witness: DistinctWitness::LimitPointCount { first: p1.limit_points, second: p2.limit_points },
        };
    }
    if p1.nonplanar_limit_points != p2.nonplanar_limit_points {
        return Equivalence::Distinct {
            witness: DistinctWitness::NonplanarLimitPoints {
                first: p1.nonplanar_limit_points,
                second: p2.nonplanar_limit_points,
            },
        };
    }
    if depth_bound == 0 {
        return Equivalence::Unknown { depth_bound };
    }
    // Chains of depth truncations on both sides, allowed to run up to twice
    // the bound so that a shifted presentation can still catch up.
    let reach = 2 * depth_bound;
    let s1 = running_sums(a1, reach);
    let s2 = running_sums(a2, reach);
    // len[d][e]: length of the longest matched chain ending at (d, e).
    let mut len = vec![vec![0usize; reach + 1]; reach + 1];
    let mut prev: Vec<Vec<Option<(usize, usize)>>> = vec![vec![None; reach + 1]; reach + 1];
    for d in 1..=reach {
        for e in 1..=reach {
            if s1[d] != s2[e] {
                continue;
            }
            len[d][e] = 1;
            for pd in 1..d {
                for pe in 1..e {
                    if len[pd][pe] + 1 > len[d][e] {
                        len[d][e] = len[pd][pe] + 1;
                        prev[d][e] = Some((pd, pe));
                    }
                }
            }
        }
    }
    let mut end: Option<(usize, usize)> = None;
    for d in depth_bound..=reach {
        for e in depth_bound..=reach {
            if len[d][e] > 0 && end.is_none_or(|(bd, be)| len[d][e] > len[bd][be]) {
                end = Some((d, e));
            }
        }
    }
    match end {
        None => Equivalence::Unknown { depth_bound },
        Some(mut cur) => {
            let mut stages = Vec::new();
            loop {
                let (g, x) = s1[cur.0];
                stages.push(CertificateStage {
                    first_depth: cur.0,
                    second_depth: cur.1,
                    genus_sum: g,
                    pants_sum: x,
                });
                match prev[cur.0][cur.1] {
                    Some(p) => cur = p,
                    None => break,
                }
            }
            stages.reverse();
            Equivalence::Equivalent { certificate: Certificate { stages } }
        }
    }
}

/// Automata for the surfaces used throughout the examples and tests.
pub mod examples {
    use super::EndAutomaton;

    /// Pants attached repeatedly: the Cantor tree surface.
    pub fn cantor() -> EndAutomaton {
        EndAutomaton::from_table(0, "s", &[("s", 0, Some("s"), Some("s"))]).unwrap()
    }

    /// One limit point at 1 with isolated planar ends 0, 2/3, 8/9, ...
    pub fn flute() -> EndAutomaton {
        EndAutomaton::from_table(0, "r", &[("r", 0, Some("c"), Some("r")), ("c", 0, Some("c"), None)]).unwrap()
    }

    /// One limit point at 3/4 with isolated planar ends 0, 1, 2/3, 7/9, 20/27, ...
    pub fn flute_alternating() -> EndAutomaton {
        EndAutomaton::from_table(
            0,
            "q",
            &[
                ("q", 0, Some("z"), Some("p")),
                ("p", 0, Some("q"), Some("t")),
                ("z", 0, Some("z"), None),
                ("t", 0, None, Some("t")),
            ],
        )
        .unwrap()
    }

    /// A cylinder with infinitely many handles on one end.
    pub fn genus_cylinder() -> EndAutomaton {
        EndAutomaton::from_table(0, "g", &[("g", 2, Some("g"), None)]).unwrap()
    }

    /// The plane: a single cylindrical end.
    pub fn plain_cylinder() -> EndAutomaton {
        EndAutomaton::from_table(0, "c", &[("c", 0, Some("c"), None)]).unwrap()
    }

    /// Two ends, planar at 0 and nonplanar at 1.
    pub fn planar_and_nonplanar() -> EndAutomaton {
        EndAutomaton::from_table(
            0,
            "root",
            &[
                ("root", 0, Some("left"), Some("right")),
                ("left", 0, Some("left"), None),
                ("right", 2, None, Some("right")),
            ],
        )
        .unwrap()
    }

    /// A pair of pants with two cylindrical ends and one handle in the compact part.
    pub fn pants_with_handle() -> EndAutomaton {
        EndAutomaton::from_table(
            1,
            "root",
            &[("root", 0, Some("a"), Some("b")), ("a", 0, Some("a"), None), ("b", 0, None, Some("b"))],
        )
        .unwrap()
    }
}
