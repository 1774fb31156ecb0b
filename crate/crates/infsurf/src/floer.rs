//! Combinatorial wrapped Floer complexes over F2 between generator objects on
//! a truncation.
//!
//! The complex is written down directly from the post-wrapping intersection
//! pattern: a ladder of pairs `x_i, y_i` along a shared noncylindrical end,
//! plus isolated compact intersection points.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blueprint::EndAutomaton;
use crate::cantor_basis::TriadicInterval;
use crate::ideal_boundary::{self, EndPath};
use crate::lagrangians::{self, EndClass, GeneratorObject, LagrangianError};
use crate::surface_builder::{self, BlockComplex, Site, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FloerError {
    #[error(transparent)]
    Lagrangian(#[from] LagrangianError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("pair ({0}, {1}) is outside the modeled families")]
    UnsupportedPair(String, String),
    #[error("cohomology still changing at level {0}")]
    NoStabilization(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
    Case4,
    ClosedClosed,
    ClosedArc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Isomorphic,
    QuasiIsomorphic,
}

impl CaseTag {
    pub fn mode(self) -> Mode {
        match self {
            CaseTag::Case1 | CaseTag::Case2 | CaseTag::Case3 => Mode::QuasiIsomorphic,
            _ => Mode::Isomorphic,
        }
    }
}

/// Wrapping data kept for reports. Blocks have unit height, so the slope
/// that makes the time-1 flow cross once is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WrapProfile {
    pub slope: u32,
    pub offset: u32,
    pub epsilon: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum GenTag {
    X(usize),
    Y(usize),
    Compact(usize),
}

impl fmt::Display for GenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenTag::X(i) => write!(f, "x{i}"),
            GenTag::Y(i) => write!(f, "y{i}"),
            GenTag::Compact(i) => write!(f, "c{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloerGenerator {
    pub id: usize,
    pub block: usize,
    pub site: Site,
    pub level: usize,
    pub deg: u8,
    pub tag: GenTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloerComplex {
    pub depth: usize,
    pub generators: Vec<FloerGenerator>,
    /// `boundary[j]` lists the generators in `∂(generator j)`.
    pub boundary: Vec<Vec<usize>>,
    pub case_tag: CaseTag,
    pub wrap: WrapProfile,
}

impl FloerComplex {
    /// Arrows `(source, target)`.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.boundary.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |&i| (j, i)))
    }

    /// Dense F2 matrix, rows indexed by targets.
    pub fn differential(&self) -> Vec<Vec<u8>> {
        let n = self.generators.len();
        let mut m = vec![vec![0u8; n]; n];
        for (j, i) in self.arrows() {
            m[i][j] ^= 1;
        }
        m
    }

    pub fn cohomology(&self) -> Ranks {
        cohomology(self)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "case {:?}, depth {}", self.case_tag, self.depth);
        let _ = writeln!(out, "{:<6} {:<8} {:>5} {:>3}  boundary", "gen", "site", "level", "deg");
        for g in &self.generators {
            let d: Vec<String> = self.boundary[g.id].iter().map(|&t| self.generators[t].tag.to_string()).collect();
            let site = match &g.site {
                Site::Interval(i) => format!("\"{}\"", i.word()),
                s => s.to_string(),
            };
            let _ = writeln!(
                out,
                "{:<6} {:<8} {:>5} {:>3}  {}",
                g.tag.to_string(),
                site,
                g.level,
                g.deg,
                if d.is_empty() { "0".to_string() } else { d.join(" + ") }
            );
        }
        let r = self.cohomology();
        let _ = writeln!(out, "ranks: H0 {} H1 {} total {}", r.h0, r.h1, r.total());
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranks {
    pub h0: usize,
    pub h1: usize,
}

impl Ranks {
    pub fn total(&self) -> usize {
        self.h0 + self.h1
    }
}

/// Rank over F2 of a set of sparse columns.
pub fn f2_rank(columns: &[Vec<usize>], rows: usize) -> usize {
    let words = rows.div_ceil(64).max(1);
    let mut pivots: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for col in columns {
        let mut v = vec![0u64; words];
        for &i in col {
            v[i / 64] ^= 1 << (i % 64);
        }
        loop {
            let lead = v.iter().enumerate().rev().find(|(_, w)| **w != 0).map(|(k, w)| k * 64 + 63 - w.leading_zeros() as usize);
            let Some(lead) = lead else { break };
            match pivots.get(&lead) {
                Some(p) => {
                    for (a, b) in v.iter_mut().zip(p) {
                        *a ^= b;
                    }
                }
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// F2 cohomology ranks by degree.
pub fn cohomology(fc: &FloerComplex) -> Ranks {
    let n = fc.generators.len();
    let count = |d: u8| fc.generators.iter().filter(|g| g.deg == d).count();
    let rank = |d: u8| {
        let cols: Vec<Vec<usize>> = fc
            .generators
            .iter()
            .filter(|g| g.deg == d)
            .map(|g| fc.boundary[g.id].clone())
            .collect();
        f2_rank(&cols, n)
    };
    let (r0, r1) = (rank(0), rank(1));
    Ranks { h0: count(0) - r0 - r1, h1: count(1) - r1 - r0 }
}

/// `∂∘∂` as sparse columns, reduced mod 2.
pub fn boundary_squared(fc: &FloerComplex) -> Vec<Vec<usize>> {
    fc.boundary
        .iter()
        .map(|col| {
            let mut acc: BTreeMap<usize, u8> = BTreeMap::new();
            for &i in col {
                for &k in &fc.boundary[i] {
                    *acc.entry(k).or_insert(0) ^= 1;
                }
            }
            acc.into_iter().filter(|(_, v)| *v == 1).map(|(k, _)| k).collect()
        })
        .collect()
}

/// Checks `∂² = 0`, filtration and cell locality.
pub fn check_invariants(fc: &FloerComplex) -> Result<(), String> {
    if boundary_squared(fc).iter().any(|c| !c.is_empty()) {
        return Err("boundary does not square to zero".into());
    }
    for (s, t) in fc.arrows() {
        let (gs, gt) = (&fc.generators[s], &fc.generators[t]);
        if gt.deg != (gs.deg + 1) % 2 {
            return Err(format!("arrow {} -> {} does not raise degree", gs.tag, gt.tag));
        }
        if gt.level < gs.level || gt.level - gs.level > 1 {
            return Err(format!("arrow {} -> {} breaks the level filtration", gs.tag, gt.tag));
        }
        let comparable = match (&gs.site, &gt.site) {
            (Site::Interval(a), Site::Interval(b)) => a.is_prefix_of(b) || b.is_prefix_of(a),
            _ => true,
        };
        if !comparable {
            return Err(format!("arrow {} -> {} leaves its chain", gs.tag, gt.tag));
        }
    }
    Ok(())
}

/// Depth from which the chain of an arc starts along its ends.
fn start_depth(obj: &GeneratorObject) -> usize {
    match obj {
        GeneratorObject::SaddleArc(i) => i.level() + 1,
        _ => 0,
    }
}

/// Interval depth needed for the compact part of an object to lie in the truncation.
pub fn support_depth(_a: &EndAutomaton, obj: &GeneratorObject) -> Result<usize, FloerError> {
    Ok(match obj {
        GeneratorObject::SaddleArc(i) => i.level() + 1,
        GeneratorObject::GenusUp(s) | GeneratorObject::GenusDown(s) | GeneratorObject::BaseCircle(s) => match s {
            Site::Interval(i) => i.level() + 1,
            _ => 1,
        },
        GeneratorObject::OpenArc { a: x, b: y, twists } => {
            // a loop through both classes of one end leaves from the base
            let split = if x.end == y.end {
                0
            } else {
                (0..).find(|&k| x.end.digit(k) != y.end.digit(k)).expect("distinct ends differ")
            };
            let tw = twists.keys().map(|w| w.level()).max().unwrap_or(0);
            (split + 1).max(tw).max(1)
        }
    })
}

fn is_arc(obj: &GeneratorObject) -> bool {
    matches!(obj, GeneratorObject::SaddleArc(_) | GeneratorObject::OpenArc { .. })
}

struct Builder<'a> {
    cx: &'a BlockComplex,
    generators: Vec<FloerGenerator>,
    boundary: Vec<Vec<usize>>,
    compact: usize,
}

impl<'a> Builder<'a> {
    fn push(&mut self, block: usize, deg: u8, tag: GenTag) -> usize {
        let b = &self.cx.blocks[block];
        let id = self.generators.len();
        self.generators.push(FloerGenerator { id, block, site: b.site.clone(), level: b.level, deg, tag });
        self.boundary.push(Vec::new());
        id
    }

    fn compact(&mut self, block: usize, deg: u8) -> usize {
        self.compact += 1;
        self.push(block, deg, GenTag::Compact(self.compact))
    }

    fn block_of(&self, site: &Site) -> Option<usize> {
        self.cx.block_at(site).map(|b| b.id)
    }
}

/// Which shared end governs the pair, and how.
fn shared_end_case(
    a: &EndAutomaton,
    ea: &[EndClass],
    eb: &[EndClass],
) -> Result<Option<(EndPath, CaseTag)>, FloerError> {
    let mut best: Option<(EndPath, CaseTag)> = None;
    for x in ea {
        for y in eb {
            if x.end != y.end {
                continue;
            }
            let c = ideal_boundary::classify_end(a, &x.end).map_err(LagrangianError::from)?;
            let tag = if !c.isolated {
                CaseTag::Case1
            } else if c.nonplanar {
                if x.side == y.side {
                    CaseTag::Case2
                } else {
                    CaseTag::Case3
                }
            } else {
                continue;
            };
            let better = match &best {
                None => true,
                Some((_, CaseTag::Case3)) => tag != CaseTag::Case3,
                _ => false,
            };
            if better {
                best = Some((x.end.clone(), tag));
            }
        }
    }
    Ok(best)
}

/// The morphism complex from `x` to `y` on the truncation `cx` of `a`.
pub fn cf(a: &EndAutomaton, cx: &BlockComplex, x: &GeneratorObject, y: &GeneratorObject) -> Result<FloerComplex, FloerError> {
    let mut b = Builder { cx, generators: Vec::new(), boundary: Vec::new(), compact: 0 };
    let case_tag;
    if x.is_closed() && y.is_closed() {
        case_tag = CaseTag::ClosedClosed;
        let site = |o: &GeneratorObject| match o {
            GeneratorObject::GenusUp(s) | GeneratorObject::GenusDown(s) | GeneratorObject::BaseCircle(s) => s.clone(),
            _ => unreachable!("closed object"),
        };
        let (sx, sy) = (site(x), site(y));
        if let Some(blk) = b.block_of(&sx) {
            if x == y {
                b.compact(blk, 0);
                b.compact(blk, 1);
            } else if sx == sy
                && matches!(
                    (x, y),
                    (GeneratorObject::GenusUp(_), GeneratorObject::GenusDown(_))
                        | (GeneratorObject::GenusDown(_), GeneratorObject::GenusUp(_))
                )
            {
                b.compact(blk, 0);
            }
        }
    } else if x.is_closed() || y.is_closed() {
        case_tag = CaseTag::ClosedArc;
        let (closed, arc) = if x.is_closed() { (x, y) } else { (y, x) };
        match (closed, arc) {
            (GeneratorObject::BaseCircle(s), GeneratorObject::SaddleArc(i)) => {
                if *s == Site::Interval(i.clone()) {
                    if let Some(blk) = b.block_of(s) {
                        b.compact(blk, 0);
                    }
                }
            }
            (GeneratorObject::BaseCircle(s), GeneratorObject::OpenArc { .. }) => {
                if b.block_of(s).is_some() {
                    b.compact(0, 0);
                }
            }
            (GeneratorObject::GenusUp(_) | GeneratorObject::GenusDown(_), _) => {}
            _ => return Err(FloerError::UnsupportedPair(x.to_string(), y.to_string())),
        }
    } else if is_arc(x) && is_arc(y) {
        let ex = lagrangians::ideal_boundary_of(a, x)?;
        let ey = lagrangians::ideal_boundary_of(a, y)?;
        match shared_end_case(a, &ex, &ey)? {
            Some((p, tag)) => {
                case_tag = tag;
                let l0 = start_depth(x).max(start_depth(y));
                let blocks: Vec<usize> = (l0..cx.depth)
                    .filter_map(|l| b.block_of(&Site::Interval(p.interval(l))))
                    .collect();
                let k = blocks.len();
                let xs: Vec<usize> = blocks.iter().enumerate().map(|(i, &blk)| b.push(blk, 0, GenTag::X(i + 1))).collect();
                for (i, &blk) in blocks.iter().enumerate() {
                    if tag == CaseTag::Case3 {
                        let yi = b.push(blk, 1, GenTag::Y(i + 1));
                        b.boundary[yi] = vec![xs[i]];
                    } else if i + 1 < k {
                        // the last y would reach past the truncation
                        let yi = b.push(blk, 1, GenTag::Y(i + 1));
                        b.boundary[yi] = vec![xs[i], xs[i + 1]];
                    }
                }
            }
            None => {
                case_tag = CaseTag::Case4;
                if matches!((x, y), (GeneratorObject::OpenArc { .. }, GeneratorObject::OpenArc { .. })) || x == y {
                    b.compact(0, 0);
                }
            }
        }
        // twist intersections on circles crossed by both arcs
        let tx = x.twists().cloned().unwrap_or_default();
        let ty = y.twists().cloned().unwrap_or_default();
        let mut circles: Vec<&TriadicInterval> = tx.keys().chain(ty.keys()).collect();
        circles.sort();
        circles.dedup();
        for w in circles {
            let site = Site::Interval(w.clone());
            let Some(circle) = cx.circle_at(&site) else { continue };
            let plain = |o: &GeneratorObject| -> Result<u64, FloerError> {
                let bare = match o {
                    GeneratorObject::OpenArc { a, b, .. } => GeneratorObject::arc(a.clone(), b.clone()),
                    other => other.clone(),
                };
                Ok(lagrangians::crosses_circle(a, &bare, &site)?)
            };
            if plain(x)? == 0 || plain(y)? == 0 {
                continue;
            }
            let d = (tx.get(w).copied().unwrap_or(0) - ty.get(w).copied().unwrap_or(0)).unsigned_abs();
            let blk = circle.upper.unwrap_or(circle.lower);
            for _ in 0..d {
                b.compact(blk, 0);
            }
        }
    } else {
        return Err(FloerError::UnsupportedPair(x.to_string(), y.to_string()));
    }
    let wrap = WrapProfile { slope: 1, offset: 0, epsilon: x == y };
    Ok(FloerComplex { depth: cx.depth, generators: b.generators, boundary: b.boundary, case_tag, wrap })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    pub level: usize,
    pub case_tag: CaseTag,
    pub mode: Mode,
    /// `(depth, H0, H1)` for every depth examined.
    pub ranks: Vec<(usize, usize, usize)>,
}

/// Largest depth examined before giving up.
pub const STABILIZATION_BOUND: usize = 64;

/// Smallest depth from which the cohomology stays constant over `window`
/// further depths.
pub fn stabilization_level(
    a: &EndAutomaton,
    x: &GeneratorObject,
    y: &GeneratorObject,
    window: usize,
) -> Result<Stabilization, FloerError> {
    let a = &crate::blueprint::normalize(a);
    let start = support_depth(a, x)?.max(support_depth(a, y)?);
    let mut ranks = Vec::new();
    let mut tag = None;
    let top = STABILIZATION_BOUND.max(start + window + 1);
    let full = surface_builder::build_truncation(a, top)?;
    for n in start..=top {
        let cx = full.restrict(n);
        let fc = cf(a, &cx, x, y)?;
        tag.get_or_insert(fc.case_tag);
        let r = fc.cohomology();
        ranks.push((n, r.h0, r.h1));
        let len = ranks.len();
        if len > window {
            let tail = &ranks[len - window - 1..];
            if tail.iter().all(|t| (t.1, t.2) == (tail[0].1, tail[0].2)) {
                let case_tag = tag.expect("set above");
                return Ok(Stabilization { level: tail[0].0, case_tag, mode: case_tag.mode(), ranks });
            }
        }
    }
    Err(FloerError::NoStabilization(top))
}
