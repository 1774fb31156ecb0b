//! Restriction to truncations, extension along designated rays, Dehn twists
//! about level circles and twist towers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blueprint::{EndAutomaton, StateId};
use crate::cantor_basis::TriadicInterval;
use crate::ideal_boundary::{self, EndPath};
use crate::lagrangians::{self, EndClass, GeneratorObject, LagrangianError, Side};
use crate::surface_builder::Site;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LimitError {
    #[error(transparent)]
    Lagrangian(#[from] LagrangianError),
    #[error("no ray designated for the boundary circle below {0:?}")]
    RayMismatch(String),
    #[error("object restricts to nothing at this level")]
    EmptyRestriction,
    #[error("cannot restrict from level {from} up to level {to}")]
    LevelOrder { from: usize, to: usize },
    #[error("{object} does not cross the circle below {circle:?}")]
    NoCrossing { object: String, circle: String },
    #[error("end {0} is cylindrical")]
    CylindricalEnd(String),
}

/// Where an object leaves the truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mark {
    /// Boundary circle, named by the interval above it.
    pub circle: TriadicInterval,
    pub slot: u8,
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedObject {
    pub object: Option<GeneratorObject>,
    pub level: usize,
    pub marks: Vec<Mark>,
}

fn slot(side: Side) -> u8 {
    match side {
        Side::Unique => 0,
        Side::Plus => 1,
        Side::Minus => 3,
    }
}

/// `ρ_n`: the part of `obj` inside `M^{≤n}`.
pub fn viterbo_restrict(a: &EndAutomaton, obj: &GeneratorObject, n: usize) -> Result<TruncatedObject, LimitError> {
    let none = TruncatedObject { object: None, level: n, marks: Vec::new() };
    match obj {
        GeneratorObject::GenusUp(s) | GeneratorObject::GenusDown(s) | GeneratorObject::BaseCircle(s) => {
            let inside = match s {
                Site::Interval(i) => i.level() < n,
                _ => true,
            };
            Ok(if inside { TruncatedObject { object: Some(obj.clone()), level: n, marks: Vec::new() } } else { none })
        }
        GeneratorObject::SaddleArc(i) => {
            if i.level() >= n {
                return Ok(none);
            }
            let marks = lagrangians::ideal_boundary_of(a, obj)?
                .into_iter()
                .map(|e| Mark { circle: e.end.interval(n), slot: slot(e.side), twist: 0 })
                .collect();
            Ok(TruncatedObject { object: Some(obj.clone()), level: n, marks })
        }
        GeneratorObject::OpenArc { a: x, b: y, twists } => {
            let kept: BTreeMap<TriadicInterval, i64> =
                twists.iter().filter(|(w, _)| w.level() <= n).map(|(w, k)| (w.clone(), *k)).collect();
            let marks = [x, y]
                .iter()
                .map(|e| {
                    let circle = e.end.interval(n);
                    let twist = kept.get(&circle).copied().unwrap_or(0);
                    Mark { circle, slot: slot(e.side), twist }
                })
                .collect();
            let object = GeneratorObject::OpenArc { a: x.clone(), b: y.clone(), twists: kept };
            Ok(TruncatedObject { object: Some(object), level: n, marks })
        }
    }
}

/// `ρ_{i,j}`: restricts a level-`j` truncation further to level `i`.
pub fn restrict_truncated(a: &EndAutomaton, t: &TruncatedObject, i: usize) -> Result<TruncatedObject, LimitError> {
    if i > t.level {
        return Err(LimitError::LevelOrder { from: t.level, to: i });
    }
    match &t.object {
        None => Ok(TruncatedObject { object: None, level: i, marks: Vec::new() }),
        Some(obj) => viterbo_restrict(a, obj, i),
    }
}

/// Result of `ι^r_n`, with the ends where the designated class differs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub object: GeneratorObject,
    /// Ends `p` whose `L_{p,p}` is needed to recover the original object.
    pub corrections: Vec<EndPath>,
}

/// `ι^r_n`: continues every mark along the designated ray of its circle.
pub fn extend(a: &EndAutomaton, t: &TruncatedObject, rays: &[(TriadicInterval, EndClass)]) -> Result<Extension, LimitError> {
    let obj = t.object.as_ref().ok_or(LimitError::EmptyRestriction)?;
    if rays.len() != t.marks.len() {
        let missing = t.marks.get(rays.len()).map(|m| m.circle.word()).unwrap_or_default();
        return Err(LimitError::RayMismatch(missing));
    }
    for (m, (c, e)) in t.marks.iter().zip(rays) {
        if &m.circle != c || !c.is_prefix_of(&e.end.interval(c.level())) {
            return Err(LimitError::RayMismatch(m.circle.word()));
        }
        ideal_boundary::classify_end(a, &e.end).map_err(LagrangianError::from)?;
    }
    match obj {
        GeneratorObject::OpenArc { a: x, b: y, twists } => {
            let corrections = [x, y]
                .iter()
                .zip(rays)
                .filter(|(orig, (_, r))| orig.end == r.end && orig.side != r.side)
                .map(|(orig, _)| orig.end.clone())
                .collect();
            Ok(Extension {
                object: GeneratorObject::OpenArc { a: rays[0].1.clone(), b: rays[1].1.clone(), twists: twists.clone() },
                corrections,
            })
        }
        GeneratorObject::SaddleArc(_) => {
            let own = lagrangians::ideal_boundary_of(a, obj)?;
            let corrections = own
                .iter()
                .zip(rays)
                .filter(|(o, (_, r))| o.end == r.end && o.side != r.side)
                .map(|(o, _)| o.end.clone())
                .collect();
            Ok(Extension { object: obj.clone(), corrections })
        }
        closed => Ok(Extension { object: closed.clone(), corrections: Vec::new() }),
    }
}

/// Rays that reproduce the object's own end classes.
pub fn own_rays(a: &EndAutomaton, t: &TruncatedObject) -> Result<Vec<(TriadicInterval, EndClass)>, LimitError> {
    let Some(obj) = &t.object else { return Ok(Vec::new()) };
    let ends = lagrangians::ideal_boundary_of(a, obj)?;
    Ok(t.marks.iter().zip(ends).map(|(m, e)| (m.circle.clone(), e)).collect())
}

/// Twists an open arc `k` times about the circle below `circle`.
pub fn dehn_twist(
    a: &EndAutomaton,
    arc: &GeneratorObject,
    circle: &TriadicInterval,
    k: i64,
) -> Result<GeneratorObject, LimitError> {
    let no = || LimitError::NoCrossing { object: arc.to_string(), circle: circle.word() };
    let GeneratorObject::OpenArc { a: x, b: y, twists } = arc else {
        return Err(no());
    };
    let bare = GeneratorObject::arc(x.clone(), y.clone());
    if lagrangians::crosses_circle(a, &bare, &Site::Interval(circle.clone()))? == 0 {
        return Err(no());
    }
    let mut twists = twists.clone();
    let e = twists.entry(circle.clone()).or_insert(0);
    *e += k;
    if *e == 0 {
        twists.remove(circle);
    }
    Ok(GeneratorObject::OpenArc { a: x.clone(), b: y.clone(), twists })
}

/// How the twist support continues past the materialized levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Presentation {
    /// Exactly these circles.
    Finite { circles: Vec<TriadicInterval> },
    /// The circles below every interval `end[..k]` with `k >= from`.
    Periodic { end: EndPath, from: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerFamily {
    pub p: EndClass,
    pub q: EndClass,
    pub levels: Vec<GeneratorObject>,
    /// Materialized support `S_1, S_2, …`.
    pub support: Vec<TriadicInterval>,
    pub presentation: Presentation,
}

/// States whose whole future is a chain of plain cylinders.
pub fn terminal_cylinder_states(a: &EndAutomaton) -> Vec<bool> {
    let mut t: Vec<bool> = (0..a.len()).map(|s| a.out_degree(s) == 1 && a.chi(s) == 0).collect();
    loop {
        let mut changed = false;
        for s in 0..a.len() {
            if t[s] && a.successors(s).any(|(_, n)| !t[n]) {
                t[s] = false;
                changed = true;
            }
        }
        if !changed {
            return t;
        }
    }
}

pub fn noncylindrical_block(a: &EndAutomaton, w: &TriadicInterval) -> bool {
    let t = terminal_cylinder_states(a);
    a.run(w.digits()).is_some_and(|s: StateId| !t[s])
}

fn class_for(a: &EndAutomaton, e: &EndPath) -> Result<EndClass, LimitError> {
    let side = if lagrangians::class_count(a, e)? == 2 { Side::Plus } else { Side::Unique };
    Ok(EndClass { end: e.clone(), side })
}

/// `L_i` = twist of `L_{i-1}` about `S_i`, where `S_i` runs toward `p`.
pub fn twist_tower(a: &EndAutomaton, p: &EndPath, q: &EndPath, depth: usize) -> Result<TowerFamily, LimitError> {
    let c = ideal_boundary::classify_end(a, p).map_err(LagrangianError::from)?;
    if c.cylindrical {
        return Err(LimitError::CylindricalEnd(p.to_string()));
    }
    ideal_boundary::classify_end(a, q).map_err(LagrangianError::from)?;
    let (pc, qc, from) = if p == q {
        // a single end can only carry the tower through its two classes
        if lagrangians::class_count(a, p)? != 2 {
            return Err(LimitError::NoCrossing { object: format!("arc({p}, {q})"), circle: String::new() });
        }
        let pc = EndClass { end: p.clone(), side: Side::Plus };
        let qc = EndClass { end: p.clone(), side: Side::Minus };
        (pc, qc, 1)
    } else {
        let split = (0..).find(|&k| p.digit(k) != q.digit(k)).expect("distinct ends differ");
        (class_for(a, p)?, class_for(a, q)?, split + 1)
    };
    let mut cur = GeneratorObject::arc(pc.clone(), qc.clone());
    let mut levels = vec![cur.clone()];
    let mut support = Vec::with_capacity(depth);
    for i in 1..=depth {
        let s = p.interval(from + i - 1);
        debug_assert!(noncylindrical_block(a, &s));
        cur = dehn_twist(a, &cur, &s, 1)?;
        levels.push(cur.clone());
        support.push(s);
    }
    Ok(TowerFamily { p: pc, q: qc, levels, support, presentation: Presentation::Periodic { end: p.clone(), from } })
}

/// The constant family of a single object.
pub fn family_from_object(obj: &GeneratorObject) -> Result<TowerFamily, LimitError> {
    let GeneratorObject::OpenArc { a, b, twists } = obj else {
        return Err(LimitError::NoCrossing { object: obj.to_string(), circle: String::new() });
    };
    let circles: Vec<TriadicInterval> = twists.keys().cloned().collect();
    Ok(TowerFamily {
        p: a.clone(),
        q: b.clone(),
        levels: vec![obj.clone()],
        support: circles.clone(),
        presentation: Presentation::Finite { circles },
    })
}

/// A gradient-sectorial object is flow invariant near infinity, so it can
/// only carry finitely many twists.
pub fn has_sectorial_preimage(family: &TowerFamily) -> bool {
    matches!(family.presentation, Presentation::Finite { .. })
}

/// One compatibility check `ρ_{n+i}(L_j) = ρ_{n+i}(L_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityCheck {
    pub i: usize,
    pub j: usize,
    pub level: usize,
    pub holds: bool,
}

pub fn compatibility_checks(a: &EndAutomaton, family: &TowerFamily) -> Result<Vec<CompatibilityCheck>, LimitError> {
    let base = match &family.presentation {
        Presentation::Periodic { from, .. } => from.saturating_sub(1),
        Presentation::Finite { .. } => 0,
    };
    let mut out = Vec::new();
    for j in 0..family.levels.len() {
        let lj = viterbo_restrict(a, &family.levels[j], base + j)?;
        for i in 0..=j {
            let lhs = restrict_truncated(a, &lj, base + i)?;
            let rhs = viterbo_restrict(a, &family.levels[i], base + i)?;
            out.push(CompatibilityCheck { i, j, level: base + i, holds: lhs == rhs });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReport {
    pub levels: Vec<String>,
    pub twist_support: Vec<String>,
    pub presentation: Presentation,
    pub compatibility: Vec<CompatibilityCheck>,
    pub compatible: bool,
    pub sectorial_preimage: bool,
}

pub fn tower_report(a: &EndAutomaton, family: &TowerFamily) -> Result<TowerReport, LimitError> {
    let compatibility = compatibility_checks(a, family)?;
    Ok(TowerReport {
        levels: family.levels.iter().map(|l| l.to_string()).collect(),
        twist_support: family.support.iter().map(|w| w.word()).collect(),
        presentation: family.presentation.clone(),
        compatible: compatibility.iter().all(|c| c.holds),
        compatibility,
        sectorial_preimage: has_sectorial_preimage(family),
    })
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

    fn w(s: &str) -> TriadicInterval {
        TriadicInterval::parse(s).unwrap()
    }

    #[test]
    fn restrict_closed_and_arcs() {
        let a = genus_cylinder();
        let x = o("X[0]");
        assert_eq!(viterbo_restrict(&a, &x, 3).unwrap().object, Some(x.clone()));
        assert_eq!(viterbo_restrict(&a, &x, 1).unwrap().object, None);
        let f = flute();
        let arc = o("arc((0), (2); twists: S[222]:1)");
        let t = viterbo_restrict(&f, &arc, 2).unwrap();
        assert_eq!(t.marks.len(), 2);
        assert_eq!(t.object.unwrap().twists().unwrap().len(), 0);
    }

    #[test]
    fn twist_round_trip() {
        let f = flute();
        let arc = o("arc((0), (2))");
        let t = dehn_twist(&f, &arc, &w("2"), 1).unwrap();
        assert_eq!(dehn_twist(&f, &t, &w("2"), -1).unwrap(), arc);
        let tt = dehn_twist(&f, &t, &w("2"), 1).unwrap();
        let site = Site::Interval(w("2"));
        assert_eq!(lagrangians::crosses_circle(&f, &tt, &site).unwrap(), 5);
        assert!(matches!(dehn_twist(&f, &arc, &w(""), 1), Err(LimitError::NoCrossing { .. })));
    }

    #[test]
    fn extend_restrict() {
        let f = flute();
        let arc = o("arc((0), (2))");
        let t = viterbo_restrict(&f, &arc, 3).unwrap();
        let rays = own_rays(&f, &t).unwrap();
        assert_eq!(extend(&f, &t, &rays).unwrap().object, arc);
        assert!(matches!(extend(&f, &t, &rays[..1]), Err(LimitError::RayMismatch(_))));
        let g = planar_and_nonplanar();
        let arc = o("arc((0), (2)+)");
        let t = viterbo_restrict(&g, &arc, 2).unwrap();
        let flipped = vec![(w("00"), "(0)".parse().unwrap()), (w("22"), "(2)-".parse().unwrap())];
        let ext = extend(&g, &t, &flipped).unwrap();
        assert_eq!(ext.corrections, vec![e("(2)")]);
    }

    #[test]
    fn towers() {
        let c = cantor();
        let t = twist_tower(&c, &e("(0)"), &e("(2)"), 5).unwrap();
        assert_eq!(t.support.len(), 5);
        assert!(!has_sectorial_preimage(&t));
        assert!(tower_report(&c, &t).unwrap().compatible);
        let zero = twist_tower(&c, &e("(0)"), &e("(2)"), 0).unwrap();
        assert_eq!(zero.levels, vec![o("arc((0), (2))")]);
        assert!(matches!(
            twist_tower(&plain_cylinder(), &e("(0)"), &e("0(0)"), 2),
            Err(LimitError::CylindricalEnd(_))
        ));
        assert!(has_sectorial_preimage(&family_from_object(&o("arc((0), (2); twists: S[0]:1)")).unwrap()));
    }
}
