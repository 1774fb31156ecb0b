//! Serializable summaries shared by the command line and the C interface.

use serde::{Deserialize, Serialize};

use crate::blueprint::{self, EndAutomaton, Equivalence, GenusProfile};
use crate::cantor_basis::TriadicInterval;
use crate::floer::{self, CaseTag, FloerComplex, FloerError, Ranks, Stabilization};
use crate::ideal_boundary::{self, LimitPoints};
use crate::lagrangians::{self, GeneratorObject, LagrangianError};
use crate::limits::{self, LimitError, TowerReport};
use crate::surface_builder::{self, SurfaceError, TruncationStats};
use crate::EndPath;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndSummary {
    pub end: EndPath,
    pub isolated: bool,
    pub nonplanar: bool,
    pub cylindrical: bool,
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPair {
    pub interval: TriadicInterval,
    pub witness: TriadicInterval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub finite_type: bool,
    pub states: usize,
    pub normalized_states: usize,
    pub end_count: Option<u64>,
    pub genus: GenusProfile,
    pub limit_points: LimitPoints,
    pub fractal_cover: Option<Vec<TriadicInterval>>,
    pub quasi_fractal_cover: Option<Vec<QuasiPair>>,
    pub ends: Vec<EndSummary>,
}

/// Classification with a search depth for covers and end listings.
pub fn classify(a: &EndAutomaton, depth: usize) -> Result<ClassifyReport, LagrangianError> {
    let n = blueprint::normalize(a);
    let mut ends = Vec::new();
    for e in ideal_boundary::eventually_periodic_ends(&n, depth.min(6)) {
        let c = ideal_boundary::classify_end(&n, &e)?;
        ends.push(EndSummary {
            classes: lagrangians::class_count(&n, &e)?,
            end: e,
            isolated: c.isolated,
            nonplanar: c.nonplanar,
            cylindrical: c.cylindrical,
        });
    }
    let quasi = ideal_boundary::is_quasi_fractal(&n, depth)
        .map(|v| v.into_iter().map(|(interval, witness)| QuasiPair { interval, witness }).collect());
    Ok(ClassifyReport {
        finite_type: blueprint::is_finite_type(&n),
        states: a.len(),
        normalized_states: n.len(),
        end_count: blueprint::end_count(&n),
        genus: blueprint::total_genus(&n),
        limit_points: ideal_boundary::limit_points(&n, depth),
        fractal_cover: ideal_boundary::is_fractal(&n, &TriadicInterval::root(), depth),
        quasi_fractal_cover: quasi,
        ends,
    })
}

impl ClassifyReport {
    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let words = |v: &[TriadicInterval]| {
            let w: Vec<String> = v.iter().map(|i| format!("{:?}", i.word())).collect();
            format!("[{}]", w.join(","))
        };
        let mut out = String::new();
        match &self.fractal_cover {
            Some(c) => out.push_str(&format!("fractal: yes, cover {}\n", words(c))),
            None => out.push_str("fractal: no (within bound)\n"),
        }
        match &self.quasi_fractal_cover {
            Some(c) => {
                let parts: Vec<String> =
                    c.iter().map(|p| format!("{:?}<{:?}", p.interval.word(), p.witness.word())).collect();
                out.push_str(&format!("quasi-fractal: yes, cover [{}]\n", parts.join(",")));
            }
            None => out.push_str("quasi-fractal: no (within bound)\n"),
        }
        match &self.limit_points {
            LimitPoints::Uncountable => out.push_str("limit points: uncountable\n"),
            LimitPoints::CountableList(v) => {
                let p: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                out.push_str(&format!("limit points: {} [{}]\n", v.len(), p.join(", ")));
            }
        }
        out.push_str(&format!("finite type: {}\n", yes(self.finite_type)));
        match self.end_count {
            Some(n) => out.push_str(&format!("ends: {n}\n")),
            None => out.push_str("ends: infinite\n"),
        }
        match self.genus {
            GenusProfile::Finite(g) => out.push_str(&format!("genus: {g}\n")),
            GenusProfile::Infinite => out.push_str("genus: infinite\n"),
        }
        const SHOWN: usize = 16;
        for e in self.ends.iter().take(SHOWN) {
            out.push_str(&format!(
                "  end {:<10} isolated {:<3} nonplanar {:<3} cylindrical {:<3} classes {}\n",
                e.end.to_string(),
                yes(e.isolated),
                yes(e.nonplanar),
                yes(e.cylindrical),
                e.classes
            ));
        }
        if self.ends.len() > SHOWN {
            out.push_str(&format!("  ... {} more ends (use --json for the full list)\n", self.ends.len() - SHOWN));
        }
        out
    }
}

pub fn truncate(a: &EndAutomaton, n: usize) -> Result<(TruncationStats, String), SurfaceError> {
    let cx = surface_builder::build_truncation(&blueprint::normalize(a), n)?;
    Ok((cx.stats()?, cx.to_dot()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub depth: usize,
    pub generators: Vec<GeneratorObject>,
}

pub fn generators(a: &EndAutomaton, depth: usize) -> Result<GeneratorsReport, LagrangianError> {
    Ok(GeneratorsReport { depth, generators: lagrangians::generator_set(a, depth)? })
}

/// Complex export: generators, boundary matrix rows and ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub generators: Vec<floer::FloerGenerator>,
    pub boundary: Vec<Vec<u8>>,
    pub ranks: Ranks,
    pub case_tag: CaseTag,
}

impl From<&FloerComplex> for ComplexJson {
    fn from(fc: &FloerComplex) -> Self {
        ComplexJson {
            generators: fc.generators.clone(),
            boundary: fc.differential(),
            ranks: fc.cohomology(),
            case_tag: fc.case_tag,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorReport {
    pub a: GeneratorObject,
    pub b: GeneratorObject,
    pub depth: usize,
    pub complex: ComplexJson,
    pub table: String,
    pub stabilization: Stabilization,
}

pub fn mor(a: &EndAutomaton, x: &GeneratorObject, y: &GeneratorObject, n: usize, window: usize) -> Result<MorReport, FloerError> {
    let aut = blueprint::normalize(a);
    let x = lagrangians::resolve(&aut, x)?;
    let y = lagrangians::resolve(&aut, y)?;
    let cx = surface_builder::build_truncation(&aut, n)?;
    let fc = floer::cf(&aut, &cx, &x, &y)?;
    let stabilization = floer::stabilization_level(&aut, &x, &y, window)?;
    Ok(MorReport { complex: ComplexJson::from(&fc), table: fc.to_table(), a: x, b: y, depth: n, stabilization })
}

pub fn tower(a: &EndAutomaton, p: &EndPath, q: &EndPath, depth: usize) -> Result<TowerReport, LimitError> {
    let aut = blueprint::normalize(a);
    let fam = limits::twist_tower(&aut, p, q, depth)?;
    limits::tower_report(&aut, &fam)
}

pub fn equiv(a: &EndAutomaton, b: &EndAutomaton, depth: usize) -> Equivalence {
    blueprint::blueprint_equivalent(&blueprint::normalize(a), &blueprint::normalize(b), depth)
}
