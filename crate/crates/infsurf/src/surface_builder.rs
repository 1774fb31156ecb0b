//! Truncated standard surfaces `M^{≤n}` as block complexes.
//!
//! Blocks sit at integer ψ-levels: the base disk at 0, the handles of the
//! compact part at `1..=k`, and the block of interval `I` at `k + 1 + |I|`.
//! A circle lives at the bottom level of the block above it.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blueprint::{self, BlockKind, BlueprintError, EndAutomaton};
use crate::cantor_basis::TriadicInterval;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error(transparent)]
    Blueprint(#[from] BlueprintError),
    #[error("truncation depth must be at least 1")]
    ZeroDepth,
    #[error("circle at level {circle} lies above the block of the saddle at level {block}")]
    LevelOrder { circle: usize, block: usize },
    #[error("genus would be negative (chi {chi}, boundary {boundary})")]
    NegativeGenus { chi: i64, boundary: usize },
    #[error("no saddle with id {0}")]
    UnknownSaddle(usize),
    #[error("no circle with id {0}")]
    UnknownCircle(usize),
}

/// Where a block sits in the surface.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    BaseDisk,
    /// The `j`-th handle of the compact part, `j >= 1`.
    Base(u32),
    Interval(TriadicInterval),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::BaseDisk => write!(f, "disk"),
            Site::Base(j) => write!(f, "b{j}"),
            Site::Interval(i) => write!(f, "{}", i.word()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockType {
    Disk,
    Pants,
    Cylinder,
    GenusCylinder,
}

impl BlockType {
    pub fn euler(self) -> i64 {
        match self {
            BlockType::Disk => 1,
            BlockType::Pants => -1,
            BlockType::Cylinder => 0,
            BlockType::GenusCylinder => -2,
        }
    }
}

impl From<BlockKind> for BlockType {
    fn from(k: BlockKind) -> Self {
        match k {
            BlockKind::Pants => BlockType::Pants,
            BlockKind::Cylinder => BlockType::Cylinder,
            BlockKind::GenusCylinder => BlockType::GenusCylinder,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub id: usize,
    pub site: Site,
    pub kind: BlockType,
    /// ψ-range `[level, level + 1]`.
    pub level: usize,
    /// Id of the first block of the maximal chain containing this one.
    pub cell: usize,
    pub lower_circle: Option<usize>,
    pub upper_circles: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circle {
    pub id: usize,
    pub level: usize,
    /// Site of the block just above the circle, or of the live interval a
    /// boundary circle bounds.
    pub site: Site,
    pub lower: usize,
    /// `None` for a boundary circle of the truncation.
    pub upper: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SaddleKind {
    PantsSaddle,
    GenusLower,
    GenusUpper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Saddle {
    pub id: usize,
    pub block: usize,
    pub kind: SaddleKind,
    pub order_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockComplex {
    pub depth: usize,
    pub base_genus: u32,
    pub blocks: Vec<Block>,
    pub circles: Vec<Circle>,
    pub saddles: Vec<Saddle>,
}

/// ψ-level of the block at `site`.
pub fn site_level(base_genus: u32, site: &Site) -> usize {
    match site {
        Site::BaseDisk => 0,
        Site::Base(j) => *j as usize,
        Site::Interval(i) => base_genus as usize + 1 + i.level(),
    }
}

pub fn build_truncation(a: &EndAutomaton, n: usize) -> Result<BlockComplex, SurfaceError> {
    if n == 0 {
        return Err(SurfaceError::ZeroDepth);
    }
    let slice = blueprint::expand(a, n);
    let k = a.base_genus();

    // blocks in (level, word) order so that truncation keeps a prefix of ids
    let mut sites: Vec<(Site, BlockType)> = vec![(Site::BaseDisk, BlockType::Disk)];
    for j in 1..=k {
        sites.push((Site::Base(j), BlockType::GenusCylinder));
    }
    let mut intervals: Vec<&TriadicInterval> = slice.entries.keys().filter(|i| i.level() < n).collect();
    intervals.sort_by(|x, y| (x.level(), *x).cmp(&(y.level(), *y)));
    for i in intervals {
        let kind = blueprint::building_block(&slice, i)?;
        sites.push((Site::Interval(i.clone()), kind.into()));
    }
    let index: BTreeMap<Site, usize> = sites.iter().enumerate().map(|(id, (s, _))| (s.clone(), id)).collect();

    let mut blocks: Vec<Block> = sites
        .iter()
        .enumerate()
        .map(|(id, (site, kind))| Block {
            id,
            site: site.clone(),
            kind: *kind,
            level: site_level(k, site),
            cell: id,
            lower_circle: None,
            upper_circles: Vec::new(),
        })
        .collect();

    // circles: one under every non-disk block, plus one per live level-n interval
    let mut above: Vec<(Site, usize)> = Vec::new();
    for b in blocks.iter().skip(1) {
        let lower = match &b.site {
            Site::Base(1) => 0,
            Site::Base(j) => index[&Site::Base(j - 1)],
            Site::Interval(i) => match i.parent() {
                Some(p) => index[&Site::Interval(p)],
                None => if k == 0 { 0 } else { index[&Site::Base(k)] },
            },
            Site::BaseDisk => unreachable!("disk is block 0"),
        };
        above.push((b.site.clone(), lower));
    }
    for (i, _) in slice.at_level(n) {
        let lower = index[&Site::Interval(i.parent().expect("n >= 1"))];
        above.push((Site::Interval(i.clone()), lower));
    }
    above.sort_by(|x, y| (site_level(k, &x.0), &x.0).cmp(&(site_level(k, &y.0), &y.0)));
    let mut circles = Vec::with_capacity(above.len());
    for (id, (site, lower)) in above.into_iter().enumerate() {
        let upper = index.get(&site).copied();
        if let Some(u) = upper {
            blocks[u].lower_circle = Some(id);
        }
        blocks[lower].upper_circles.push(id);
        circles.push(Circle { id, level: site_level(k, &site), site, lower, upper });
    }

    // maximal chains: a chain continues through the single upper neighbour of
    // a non-pants block and stops after a pants
    for id in 1..blocks.len() {
        let c = circles[blocks[id].lower_circle.expect("non-disk block")].lower;
        if blocks[c].kind != BlockType::Pants {
            blocks[id].cell = blocks[c].cell;
        }
    }

    let mut saddles = Vec::new();
    for b in &blocks {
        let kinds: &[SaddleKind] = match b.kind {
            BlockType::Pants => &[SaddleKind::PantsSaddle],
            BlockType::GenusCylinder => &[SaddleKind::GenusLower, SaddleKind::GenusUpper],
            _ => &[],
        };
        for (j, &kind) in kinds.iter().enumerate() {
            saddles.push(Saddle { id: saddles.len(), block: b.id, kind, order_index: 2 * b.level + j });
        }
    }
    Ok(BlockComplex { depth: n, base_genus: k, blocks, circles, saddles })
}

impl BlockComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.blocks.iter().map(|b| b.kind.euler()).sum()
    }

    pub fn boundary_circles(&self) -> usize {
        self.circles.iter().filter(|c| c.upper.is_none()).count()
    }

    pub fn genus(&self) -> Result<u64, SurfaceError> {
        let chi = self.euler_characteristic();
        let b = self.boundary_circles();
        let twice = 2 - chi - b as i64;
        if twice < 0 || twice % 2 != 0 {
            return Err(SurfaceError::NegativeGenus { chi, boundary: b });
        }
        Ok((twice / 2) as u64)
    }

    pub fn count(&self, kind: BlockType) -> usize {
        self.blocks.iter().filter(|b| b.kind == kind).count()
    }

    pub fn block_at(&self, site: &Site) -> Option<&Block> {
        self.blocks.iter().find(|b| &b.site == site)
    }

    /// The circle whose upper side is `site`.
    pub fn circle_at(&self, site: &Site) -> Option<&Circle> {
        self.circles.iter().find(|c| &c.site == site)
    }

    pub fn saddle(&self, id: usize) -> Result<&Saddle, SurfaceError> {
        self.saddles.get(id).ok_or(SurfaceError::UnknownSaddle(id))
    }

    pub fn circle(&self, id: usize) -> Result<&Circle, SurfaceError> {
        self.circles.get(id).ok_or(SurfaceError::UnknownCircle(id))
    }

    /// The complex cut off after interval depth `m`.
    pub fn restrict(&self, m: usize) -> BlockComplex {
        let m = m.max(1).min(self.depth);
        let keep = |s: &Site| match s {
            Site::Interval(i) => i.level() < m,
            _ => true,
        };
        let blocks: Vec<Block> = self
            .blocks
            .iter()
            .filter(|b| keep(&b.site))
            .map(|b| {
                let mut b = b.clone();
                b.upper_circles.retain(|&c| {
                    let site = &self.circles[c].site;
                    !matches!(site, Site::Interval(i) if i.level() > m)
                });
                b
            })
            .collect();
        let circles: Vec<Circle> = self
            .circles
            .iter()
            .filter(|c| !matches!(&c.site, Site::Interval(i) if i.level() > m))
            .map(|c| {
                let mut c = c.clone();
                if !keep(&c.site) {
                    c.upper = None;
                }
                c
            })
            .collect();
        let saddles = self.saddles.iter().filter(|s| s.block < blocks.len()).cloned().collect();
        BlockComplex { depth: m, base_genus: self.base_genus, blocks, circles, saddles }
    }

    /// Saddles ordered by cell, then by ψ within each cell.
    pub fn saddle_order(&self) -> Vec<&Saddle> {
        let mut out: Vec<&Saddle> = self.saddles.iter().collect();
        out.sort_by_key(|s| (self.blocks[s.block].cell, s.order_index, s.id));
        out
    }

    /// Cell entered through a circle.
    pub fn circle_cell(&self, c: &Circle) -> Option<usize> {
        c.upper.map(|u| self.blocks[u].cell)
    }

    /// Angular slots (quarter turns) where the descending manifold of the
    /// saddle meets the circle.
    pub fn descending_trace(&self, saddle: usize, circle: usize) -> Result<Vec<u8>, SurfaceError> {
        let s = self.saddle(saddle)?;
        let c = self.circle(circle)?;
        let block = &self.blocks[s.block];
        if c.level > block.level {
            return Err(SurfaceError::LevelOrder { circle: c.level, block: block.level });
        }
        let Some(cell) = self.circle_cell(c) else {
            return Ok(Vec::new());
        };
        if block.cell != cell {
            return Ok(Vec::new());
        }
        let first = self
            .saddles
            .iter()
            .filter(|t| {
                let b = &self.blocks[t.block];
                b.cell == cell && b.level >= c.level
            })
            .min_by_key(|t| t.order_index)
            .map(|t| t.id);
        if first == Some(s.id) {
            Ok(vec![0, 2])
        } else {
            Ok(Vec::new())
        }
    }

    /// Pants-decomposition graph: blocks as nodes, circles as edges, each
    /// handle drawn as a 2-cycle.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph surface {\n  node [shape=box];\n");
        for b in &self.blocks {
            let shape = match b.kind {
                BlockType::Disk => "circle",
                BlockType::Pants => "box",
                BlockType::Cylinder => "ellipse",
                BlockType::GenusCylinder => "doublecircle",
            };
            let _ = writeln!(out, "  b{} [label=\"{:?} {}\", shape={}];", b.id, b.kind, b.site, shape);
            if b.kind == BlockType::GenusCylinder {
                let _ = writeln!(out, "  h{} [label=\"\", shape=point];", b.id);
                let _ = writeln!(out, "  b{0} -- h{0};\n  b{0} -- h{0};", b.id);
            }
        }
        for c in &self.circles {
            match c.upper {
                Some(u) => {
                    let _ = writeln!(out, "  b{} -- b{} [label=\"{}\"];", c.lower, u, c.level);
                }
                None => {
                    let _ = writeln!(out, "  e{} [label=\"{}\", shape=plaintext];", c.id, c.site);
                    let _ = writeln!(out, "  b{} -- e{} [style=dashed];", c.lower, c.id);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Summary counts for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationStats {
    pub depth: usize,
    pub blocks: usize,
    pub disks: usize,
    pub pants: usize,
    pub cylinders: usize,
    pub genus_cylinders: usize,
    pub saddles: usize,
    pub euler_characteristic: i64,
    pub boundary_circles: usize,
    pub genus: u64,
}

impl BlockComplex {
    pub fn stats(&self) -> Result<TruncationStats, SurfaceError> {
        Ok(TruncationStats {
            depth: self.depth,
            blocks: self.blocks.len(),
            disks: self.count(BlockType::Disk),
            pants: self.count(BlockType::Pants),
            cylinders: self.count(BlockType::Cylinder),
            genus_cylinders: self.count(BlockType::GenusCylinder),
            saddles: self.saddles.len(),
            euler_characteristic: self.euler_characteristic(),
            boundary_circles: self.boundary_circles(),
            genus: self.genus()?,
        })
    }
}
