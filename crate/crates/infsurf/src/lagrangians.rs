//! Generator objects: saddle arcs `L_I`, genus circles `X_I`, `Y_I`, base
//! circles `Z_I` and open arcs between end classes.
//!
//! End classes are found by tracking the complement arcs of descending
//! manifolds on the circles toward an end. Positions on a circle are quarter
//! turns `0..4`; a pants saddle marks `{0, 2}` on the circle below it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::blueprint::{self, EndAutomaton};
use crate::cantor_basis::{Digit, TriadicInterval};
use crate::ideal_boundary::{self, BoundaryError, EndPath, LimitPoints};
use crate::surface_builder::{self, BlockType, Site};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LagrangianError {
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error("the limit set is uncountable; no countable generating set exists")]
    UncountableLimitSet,
    #[error("cannot parse object {text:?}: {reason}")]
    BadObject { text: String, reason: String },
    #[error("object {object} is not valid here: {reason}")]
    InvalidObject { object: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
    Unique,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndClass {
    pub end: EndPath,
    pub side: Side,
}

impl EndClass {
    pub fn unique(end: EndPath) -> Self {
        EndClass { end, side: Side::Unique }
    }
}

impl fmt::Display for EndClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = match self.side {
            Side::Plus => "+",
            Side::Minus => "-",
            Side::Unique => "",
        };
        write!(f, "{}{}", self.end, mark)
    }
}

impl FromStr for EndClass {
    type Err = LagrangianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (body, side) = match t.chars().last() {
            Some('+') => (&t[..t.len() - 1], Side::Plus),
            Some('-') => (&t[..t.len() - 1], Side::Minus),
            _ => (t, Side::Unique),
        };
        Ok(EndClass { end: body.trim().parse()?, side })
    }
}

impl Serialize for EndClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EndClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorObject {
    SaddleArc(TriadicInterval),
    GenusUp(Site),
    GenusDown(Site),
    BaseCircle(Site),
    OpenArc {
        a: EndClass,
        b: EndClass,
        /// Twist count per circle, keyed by the interval above the circle.
        twists: BTreeMap<TriadicInterval, i64>,
    },
}

impl GeneratorObject {
    pub fn arc(a: EndClass, b: EndClass) -> Self {
        GeneratorObject::OpenArc { a, b, twists: BTreeMap::new() }
    }

    pub fn is_closed(&self) -> bool {
        matches!(
            self,
            GeneratorObject::GenusUp(_) | GeneratorObject::GenusDown(_) | GeneratorObject::BaseCircle(_)
        )
    }

    pub fn twists(&self) -> Option<&BTreeMap<TriadicInterval, i64>> {
        match self {
            GeneratorObject::OpenArc { twists, .. } => Some(twists),
            _ => None,
        }
    }
}

fn site_word(s: &Site) -> String {
    match s {
        Site::Interval(i) => i.word(),
        other => other.to_string(),
    }
}

impl fmt::Display for GeneratorObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorObject::SaddleArc(i) => write!(f, "L[{}]", i.word()),
            GeneratorObject::GenusUp(s) => write!(f, "X[{}]", site_word(s)),
            GeneratorObject::GenusDown(s) => write!(f, "Y[{}]", site_word(s)),
            GeneratorObject::BaseCircle(s) => write!(f, "Z[{}]", site_word(s)),
            GeneratorObject::OpenArc { a, b, twists } => {
                write!(f, "arc({a}, {b}")?;
                if !twists.is_empty() {
                    let parts: Vec<String> = twists.iter().map(|(w, k)| format!("S[{}]:{}", w.word(), k)).collect();
                    write!(f, "; twists: {}", parts.join(", "))?;
                }
                write!(f, ")")
            }
        }
    }
}

fn parse_site(text: &str, inner: &str) -> Result<Site, LagrangianError> {
    if inner == "disk" {
        return Ok(Site::BaseDisk);
    }
    if let Some(j) = inner.strip_prefix('b') {
        return match j.parse::<u32>() {
            Ok(j) if j >= 1 => Ok(Site::Base(j)),
            _ => Err(LagrangianError::BadObject { text: text.into(), reason: "bad base handle index".into() }),
        };
    }
    TriadicInterval::parse(inner)
        .map(Site::Interval)
        .map_err(|e| LagrangianError::BadObject { text: text.into(), reason: e.to_string() })
}

impl FromStr for GeneratorObject {
    type Err = LagrangianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = |reason: &str| LagrangianError::BadObject { text: t.to_string(), reason: reason.into() };
        if let Some(body) = t.strip_prefix("arc(") {
            let body = body.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
            let (ends, tw) = match body.find(';') {
                Some(k) => (&body[..k], Some(&body[k + 1..])),
                None => (body, None),
            };
            // split at the comma that follows the first end's closing ')'
            let close = ends.find(')').ok_or_else(|| bad("expected an end 'prefix(cycle)'"))?;
            let rest = &ends[close + 1..];
            let comma = rest.find(',').ok_or_else(|| bad("expected ',' between ends"))?;
            let a: EndClass = ends[..close + 1 + comma].parse()?;
            let b: EndClass = rest[comma + 1..].parse()?;
            let mut twists = BTreeMap::new();
            if let Some(tw) = tw {
                let tw = tw.trim();
                let list = tw.strip_prefix("twists:").ok_or_else(|| bad("expected 'twists:'"))?;
                for item in list.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                    let item = item.strip_prefix("S[").ok_or_else(|| bad("expected 'S[word]:k'"))?;
                    let (w, k) = item.split_once("]:").ok_or_else(|| bad("expected 'S[word]:k'"))?;
                    let w = TriadicInterval::parse(w).map_err(|e| bad(&e.to_string()))?;
                    let k: i64 = k.trim().parse().map_err(|_| bad("twist count must be an integer"))?;
                    if k != 0 {
                        *twists.entry(w).or_insert(0) += k;
                    }
                }
                twists.retain(|_, k| *k != 0);
            }
            return Ok(GeneratorObject::OpenArc { a, b, twists });
        }
        let tag = t.chars().next().ok_or_else(|| bad("empty object"))?;
        let inner = t
            .get(1..)
            .and_then(|r| r.strip_prefix('['))
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected TAG[word]"))?;
        match tag {
            'L' => TriadicInterval::parse(inner)
                .map(GeneratorObject::SaddleArc)
                .map_err(|e| bad(&e.to_string())),
            'X' => Ok(GeneratorObject::GenusUp(parse_site(t, inner)?)),
            'Y' => Ok(GeneratorObject::GenusDown(parse_site(t, inner)?)),
            'Z' => Ok(GeneratorObject::BaseCircle(parse_site(t, inner)?)),
            _ => Err(bad("unknown object tag")),
        }
    }
}

impl Serialize for GeneratorObject {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GeneratorObject {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which of the three end-class cases a classified end falls under.
pub fn end_case(c: &ideal_boundary::EndClassification) -> u8 {
    match (c.isolated, c.nonplanar) {
        (true, false) => 1,
        (true, true) => 2,
        (false, _) => 3,
    }
}

/// Surviving marked points on the circle toward `end` after `depth_bound`
/// blocks, in quarter turns.
pub fn marked_points(a: &EndAutomaton, end: &EndPath, depth_bound: usize) -> Result<BTreeSet<u8>, LagrangianError> {
    let class = ideal_boundary::classify_end(a, end)?;
    let run = ideal_boundary::run_end(a, end)?;
    let end = end.canonical();
    // start once the run has entered its recurrent states
    let mut base = end.prefix().len();
    let mut s = a.run(end.prefix()).expect("classified end runs");
    while !run.recurrent.contains(&s) {
        s = a.step(s, end.digit(base)).expect("classified end runs");
        base += 1;
    }
    let top = depth_bound.max(base + end.cycle().len());
    let mut holes: BTreeSet<u8> = BTreeSet::new();
    for k in base..top {
        let d = end.digit(k);
        if a.is_branching(s) {
            let (keep, hole): (fn(u8) -> Option<u8>, u8) = match d {
                Digit::Zero => (|t| (t == 1).then_some((3 + 2 * t) % 4), 3),
                Digit::Two => (|t| (t == 3).then_some((2 * t + 1) % 4), 1),
            };
            holes = holes.into_iter().filter_map(keep).collect();
            holes.insert(hole);
        } else if a.chi(s) == 2 && class.isolated {
            holes.insert(0);
            holes.insert(2);
        }
        s = a.step(s, d).expect("classified end runs");
    }
    Ok(holes)
}

/// Classes of gradient rays toward `end`.
pub fn end_classes(a: &EndAutomaton, end: &EndPath, depth_bound: usize) -> Result<Vec<EndClass>, LagrangianError> {
    let holes = marked_points(a, end, depth_bound)?;
    if holes.len() <= 1 {
        Ok(vec![EndClass::unique(end.clone())])
    } else {
        Ok(vec![
            EndClass { end: end.clone(), side: Side::Plus },
            EndClass { end: end.clone(), side: Side::Minus },
        ])
    }
}

/// Default depth for resolving end classes.
pub fn class_depth(a: &EndAutomaton, end: &EndPath) -> usize {
    let c = end.canonical();
    c.prefix().len() + 2 * c.cycle().len() + 2 * a.len() + 6
}

pub fn class_count(a: &EndAutomaton, end: &EndPath) -> Result<usize, LagrangianError> {
    Ok(end_classes(a, end, class_depth(a, end))?.len())
}

/// Fills in or checks the sides of an arc's end classes.
pub fn resolve(a: &EndAutomaton, obj: &GeneratorObject) -> Result<GeneratorObject, LagrangianError> {
    match obj {
        GeneratorObject::OpenArc { a: e1, b: e2, twists } => {
            let fix = |e: &EndClass| -> Result<EndClass, LagrangianError> {
                let n = class_count(a, &e.end)?;
                match (n, e.side) {
                    (1, Side::Unique) | (2, Side::Plus) | (2, Side::Minus) => Ok(e.clone()),
                    (2, Side::Unique) => Ok(EndClass { end: e.end.clone(), side: Side::Plus }),
                    _ => Err(LagrangianError::InvalidObject {
                        object: obj.to_string(),
                        reason: format!("end {} has a single class", e.end),
                    }),
                }
            };
            let (x, y) = (fix(e1)?, fix(e2)?);
            if x == y {
                return Err(LagrangianError::InvalidObject {
                    object: obj.to_string(),
                    reason: "both ends are the same class".into(),
                });
            }
            Ok(GeneratorObject::OpenArc { a: x, b: y, twists: twists.clone() })
        }
        other => {
            check_object(a, other)?;
            Ok(other.clone())
        }
    }
}

/// Checks the support conditions of a closed object or saddle arc.
pub fn check_object(a: &EndAutomaton, obj: &GeneratorObject) -> Result<(), LagrangianError> {
    let invalid = |reason: &str| LagrangianError::InvalidObject { object: obj.to_string(), reason: reason.into() };
    let state = |i: &TriadicInterval| a.run(i.digits()).ok_or_else(|| invalid("interval is not in the blueprint"));
    match obj {
        GeneratorObject::SaddleArc(i) => {
            if !a.is_branching(state(i)?) {
                return Err(invalid("no pants at this interval"));
            }
        }
        GeneratorObject::GenusUp(s) | GeneratorObject::GenusDown(s) => match s {
            Site::Interval(i) => {
                if a.chi(state(i)?) != 2 {
                    return Err(invalid("no handle at this interval"));
                }
            }
            Site::Base(j) if *j >= 1 && *j <= a.base_genus() => {}
            _ => return Err(invalid("no such handle")),
        },
        GeneratorObject::BaseCircle(s) => {
            let depth = match s {
                Site::Interval(i) => i.level() + 1,
                _ => 1,
            };
            let cx = surface_builder::build_truncation(&blueprint::normalize(a), depth)
                .map_err(|e| invalid(&e.to_string()))?;
            if !base_circle_sites(&cx).contains(s) {
                return Err(invalid("no saddle here reaches the base point"));
            }
        }
        GeneratorObject::OpenArc { .. } => {}
    }
    Ok(())
}

/// Sites of blocks holding the first saddle of their cell.
pub fn base_circle_sites(cx: &surface_builder::BlockComplex) -> Vec<Site> {
    let mut first: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for s in &cx.saddles {
        let cell = cx.blocks[s.block].cell;
        let e = first.entry(cell).or_insert((s.order_index, s.block));
        if s.order_index < e.0 {
            *e = (s.order_index, s.block);
        }
    }
    let mut out: Vec<Site> = first.values().map(|&(_, b)| cx.blocks[b].site.clone()).collect();
    out.sort();
    out
}

/// The generating set through interval depth `depth`.
pub fn generator_set(a: &EndAutomaton, depth: usize) -> Result<Vec<GeneratorObject>, LagrangianError> {
    let limits = match ideal_boundary::limit_points(a, depth) {
        LimitPoints::Uncountable => return Err(LagrangianError::UncountableLimitSet),
        LimitPoints::CountableList(v) => v,
    };
    let a = &blueprint::normalize(a);
    let slice = blueprint::expand(a, depth);
    let mut out = Vec::new();
    for (i, e) in &slice.entries {
        if i.level() < depth && e.xi == 1 {
            out.push(GeneratorObject::SaddleArc(i.clone()));
        }
    }
    let mut genus_sites: Vec<Site> = (1..=a.base_genus()).map(Site::Base).collect();
    genus_sites.extend(
        slice
            .entries
            .iter()
            .filter(|(i, e)| i.level() < depth && e.chi == 2)
            .map(|(i, _)| Site::Interval(i.clone())),
    );
    for s in genus_sites {
        out.push(GeneratorObject::GenusUp(s.clone()));
        out.push(GeneratorObject::GenusDown(s));
    }
    if depth >= 1 {
        let cx = surface_builder::build_truncation(a, depth).expect("normalized");
        out.extend(base_circle_sites(&cx).into_iter().map(GeneratorObject::BaseCircle));
    }
    let ends = ideal_boundary::eventually_periodic_ends(a, depth.max(1));
    for p in &ends {
        if class_count(a, p)? == 2 {
            out.push(GeneratorObject::arc(
                EndClass { end: p.clone(), side: Side::Plus },
                EndClass { end: p.clone(), side: Side::Minus },
            ));
        }
    }
    // representatives of the gaps between consecutive limit points
    let isolated: Vec<&EndPath> = ends.iter().filter(|e| !limits.contains(e)).collect();
    let mut reps: Vec<EndPath> = Vec::new();
    for j in 0..=limits.len() {
        let lo = j.checked_sub(1).map(|k| &limits[k]);
        let hi = limits.get(j);
        let best = isolated
            .iter()
            .filter(|e| lo.is_none_or(|l| **e > l) && hi.is_none_or(|h| **e < h))
            .min_by_key(|e| {
                let c = e.canonical();
                (c.prefix().len() + c.cycle().len(), (**e).clone())
            });
        if let Some(q) = best {
            reps.push((*q).clone());
        }
    }
    if let Some(q1) = reps.first() {
        let side = |e: &EndPath| -> Result<EndClass, LagrangianError> {
            Ok(if class_count(a, e)? == 2 {
                EndClass { end: e.clone(), side: Side::Plus }
            } else {
                EndClass::unique(e.clone())
            })
        };
        let c1 = side(q1)?;
        for qj in reps.iter().skip(1) {
            out.push(GeneratorObject::arc(c1.clone(), side(qj)?));
        }
        for p in &limits {
            out.push(GeneratorObject::arc(c1.clone(), side(p)?));
        }
    }
    Ok(out)
}

/// End classes at infinity of an object.
pub fn ideal_boundary_of(a: &EndAutomaton, obj: &GeneratorObject) -> Result<Vec<EndClass>, LagrangianError> {
    match obj {
        GeneratorObject::SaddleArc(i) => {
            let mut out = Vec::with_capacity(2);
            for d in Digit::ALL {
                let child = i.child(d);
                let end = ideal_boundary::least_end_through(a, &child).ok_or_else(|| LagrangianError::InvalidObject {
                    object: obj.to_string(),
                    reason: format!("child {} is not in the blueprint", child.word()),
                })?;
                let side = if class_count(a, &end)? == 1 {
                    Side::Unique
                } else if d == Digit::Two {
                    Side::Plus
                } else {
                    Side::Minus
                };
                out.push(EndClass { end, side });
            }
            Ok(out)
        }
        GeneratorObject::OpenArc { a: x, b: y, .. } => Ok(vec![x.clone(), y.clone()]),
        _ => Ok(Vec::new()),
    }
}

fn end_inside(end: &EndPath, site: &Site) -> bool {
    match site {
        Site::Interval(w) => (0..w.level()).all(|k| end.digit(k) == w.digits()[k]),
        _ => true,
    }
}

/// Crossings of an object with the gluing circle below `site`.
pub fn crosses_circle(a: &EndAutomaton, obj: &GeneratorObject, site: &Site) -> Result<u64, LagrangianError> {
    match obj {
        GeneratorObject::SaddleArc(_) | GeneratorObject::OpenArc { .. } => {
            let ends = ideal_boundary_of(a, obj)?;
            let inside = ends.iter().filter(|e| end_inside(&e.end, site)).count();
            // the two classes of one end are joined through the base, so
            // such an arc cannot be pushed off the circles along its end
            let looped = ends.len() == 2 && ends[0].end == ends[1].end && inside == 2;
            let twist = match (obj, site) {
                (GeneratorObject::OpenArc { twists, .. }, Site::Interval(w)) => {
                    twists.get(w).map_or(0, |k| k.unsigned_abs())
                }
                _ => 0,
            };
            Ok(u64::from(inside == 1) + 2 * u64::from(looped) + 2 * twist)
        }
        GeneratorObject::BaseCircle(s) => {
            let below = match (site, s) {
                (Site::Interval(w), Site::Interval(i)) => w.is_prefix_of(i),
                (Site::Interval(_), _) => false,
                (Site::Base(j), Site::Base(k)) => j <= k,
                (Site::Base(_), Site::Interval(_)) => true,
                _ => false,
            };
            Ok(if below { 2 } else { 0 })
        }
        GeneratorObject::GenusUp(_) | GeneratorObject::GenusDown(_) => Ok(0),
    }
}

/// Crossings with the internal circle of the handle block at `site`.
pub fn crosses_internal(obj: &GeneratorObject, site: &Site) -> u64 {
    match obj {
        GeneratorObject::GenusUp(s) | GeneratorObject::GenusDown(s) if s == site => 1,
        _ => 0,
    }
}

/// Vertices are end classes and arrows are open arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<EndClass>,
    pub arrows: Vec<(usize, usize)>,
}

pub fn quiver(gens: &[GeneratorObject]) -> Quiver {
    let mut vertices: BTreeSet<EndClass> = BTreeSet::new();
    for g in gens {
        if let GeneratorObject::OpenArc { a, b, .. } = g {
            vertices.insert(a.clone());
            vertices.insert(b.clone());
        }
    }
    let vertices: Vec<EndClass> = vertices.into_iter().collect();
    let pos = |e: &EndClass| vertices.iter().position(|v| v == e).expect("vertex");
    let arrows = gens
        .iter()
        .filter_map(|g| match g {
            GeneratorObject::OpenArc { a, b, .. } => Some((pos(a), pos(b))),
            _ => None,
        })
        .collect();
    Quiver { vertices, arrows }
}

/// Block type at a site of the normalized blueprint, if present.
pub fn block_type_at(a: &EndAutomaton, site: &Site) -> Option<BlockType> {
    match site {
        Site::BaseDisk => Some(BlockType::Disk),
        Site::Base(j) => (*j >= 1 && *j <= a.base_genus()).then_some(BlockType::GenusCylinder),
        Site::Interval(i) => {
            let s = a.run(i.digits())?;
            Some(match (a.is_branching(s), a.chi(s)) {
                (true, _) => BlockType::Pants,
                (false, 2) => BlockType::GenusCylinder,
                _ => BlockType::Cylinder,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blueprint::examples::*;

    fn e(s: &str) -> EndPath {
        s.parse().unwrap()
    }

    fn o(s: &str) -> GeneratorObject {
        s.parse().unwrap()
    }

    #[test]
    fn class_counts() {
        assert_eq!(end_classes(&plain_cylinder(), &e("(0)"), 8).unwrap().len(), 1);
        let g = end_classes(&genus_cylinder(), &e("(0)"), 8).unwrap();
        assert_eq!(g.iter().map(|c| c.side).collect::<Vec<_>>(), [Side::Plus, Side::Minus]);
        for d in 6..=12 {
            assert_eq!(end_classes(&flute(), &e("(2)"), d).unwrap().len(), 1);
            assert_eq!(end_classes(&flute_alternating(), &e("(20)"), d).unwrap().len(), 2);
        }
        assert!(end_classes(&plain_cylinder(), &e("(2)"), 4).is_err());
    }

    #[test]
    fn object_syntax() {
        for s in ["L[2]", "L[]", "X[20]", "Y[b1]", "Z[0]", "arc(0(0)+, 2(2)-; twists: S[200]:1)", "arc(0(0), 22(2))"] {
            assert_eq!(o(s).to_string(), s);
        }
        assert_eq!(o("arc(0(0),2(2))").to_string(), "arc(0(0), 2(2))");
        assert!("Q[0]".parse::<GeneratorObject>().is_err());
        assert!("arc(0(0))".parse::<GeneratorObject>().is_err());
    }

    #[test]
    fn flute_generators() {
        let g = generator_set(&flute(), 3).unwrap();
        let names: Vec<String> = g.iter().map(|x| x.to_string()).collect();
        assert_eq!(names, ["L[]", "L[2]", "L[22]", "Z[]", "Z[2]", "Z[22]", "arc((0), (2))"]);
        assert!(matches!(generator_set(&cantor(), 3), Err(LagrangianError::UncountableLimitSet)));
    }

    #[test]
    fn fractal_two_generators() {
        let g = generator_set(&planar_and_nonplanar(), 3).unwrap();
        let names: Vec<String> = g.iter().map(|x| x.to_string()).collect();
        assert!(names.contains(&"X[2]".to_string()));
        assert!(names.contains(&"Y[22]".to_string()));
        assert!(names.contains(&"arc((2)+, (2)-)".to_string()));
    }

    #[test]
    fn saddle_arc_rays() {
        let b = ideal_boundary_of(&flute(), &o("L[]")).unwrap();
        assert_eq!(b[0].end, e("(0)"));
        assert_eq!(b[1].end, e("2(0)"));
    }

    #[test]
    fn crossings() {
        let a = flute();
        let arc = o("arc(0(0), 2(2))");
        let zero = Site::Interval(TriadicInterval::parse("0").unwrap());
        let root = Site::Interval(TriadicInterval::root());
        assert_eq!(crosses_circle(&a, &arc, &zero).unwrap(), 1);
        assert_eq!(crosses_circle(&a, &arc, &root).unwrap(), 0);
        let twisted = o("arc(0(0), 2(2); twists: S[0]:1)");
        assert_eq!(crosses_circle(&a, &twisted, &zero).unwrap(), 3);
        assert_eq!(crosses_internal(&o("X[2]"), &Site::Interval(TriadicInterval::parse("2").unwrap())), 1);
    }
}
