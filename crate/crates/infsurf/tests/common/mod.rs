#![allow(dead_code)]

use std::path::PathBuf;

use infsurf::blueprint::{self, examples, EndAutomaton};
use infsurf::dsl;
use infsurf::floer::FloerComplex;
use infsurf::ideal_boundary as ib;
use infsurf::lagrangians::{self as lg, GeneratorObject};
use infsurf::surface_builder::{build_truncation, BlockType, Site};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS: [&str; 7] = [
    "cantor",
    "flute",
    "flute_alternating",
    "genus_cylinder",
    "plain_cylinder",
    "planar_and_nonplanar",
    "pants_with_handle",
];

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/blueprints")
}

pub fn corpus_path(name: &str) -> PathBuf {
    corpus_dir().join(format!("{name}.bp"))
}

pub fn corpus_text(name: &str) -> String {
    std::fs::read_to_string(corpus_path(name)).unwrap()
}

pub fn corpus(name: &str) -> EndAutomaton {
    dsl::load(&corpus_text(name)).unwrap().1
}

/// The bundled examples as built in code, by name.
pub fn builtin(name: &str) -> EndAutomaton {
    match name {
        "cantor" => examples::cantor(),
        "flute" => examples::flute(),
        "flute_alternating" => examples::flute_alternating(),
        "genus_cylinder" => examples::genus_cylinder(),
        "plain_cylinder" => examples::plain_cylinder(),
        "planar_and_nonplanar" => examples::planar_and_nonplanar(),
        "pants_with_handle" => examples::pants_with_handle(),
        other => panic!("unknown example {other}"),
    }
}

/// A random automaton with at most `max_states` states, every state live.
pub fn random_automaton(rng: &mut impl Rng, max_states: usize) -> EndAutomaton {
    let k = rng.gen_range(1..=max_states);
    let names: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
    let mut trans = Vec::with_capacity(k);
    let mut chi = Vec::with_capacity(k);
    for _ in 0..k {
        let mut row = [None, None];
        match rng.gen_range(0..3) {
            0 => row[0] = Some(rng.gen_range(0..k)),
            1 => row[1] = Some(rng.gen_range(0..k)),
            _ => row = [Some(rng.gen_range(0..k)), Some(rng.gen_range(0..k))],
        }
        trans.push(row);
        chi.push(if rng.gen_bool(0.3) { 2 } else { 0 });
    }
    let base_genus = if rng.gen_bool(0.2) { rng.gen_range(1..=2) } else { 0 };
    EndAutomaton::new(names, 0, trans, chi, base_genus).expect("every state has a successor")
}

pub fn random_normalized(seed: u64, max_states: usize) -> EndAutomaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    blueprint::normalize(&random_automaton(&mut rng, max_states))
}

/// Rank over F2 of a dense matrix by row reduction.
pub fn dense_rank(mut m: Vec<Vec<u8>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn matmul(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = a.len();
    let mut out = vec![vec![0u8; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 1 {
                for j in 0..n {
                    out[i][j] ^= b[k][j];
                }
            }
        }
    }
    out
}

/// Independent total rank: `dim - 2 rank ∂`.
pub fn oracle_total(fc: &FloerComplex) -> usize {
    let d = fc.differential();
    fc.generators.len() - 2 * dense_rank(d)
}

pub fn squares_to_zero(fc: &FloerComplex) -> bool {
    let d = fc.differential();
    matmul(&d, &d).iter().all(|r| r.iter().all(|&x| x == 0))
}

/// A random valid object of `a`, if one turns up within a few draws.
pub fn random_object(a: &EndAutomaton, rng: &mut impl Rng) -> Option<GeneratorObject> {
    let cx = build_truncation(a, 4).unwrap();
    let ends = ib::eventually_periodic_ends(a, 4);
    for _ in 0..64 {
        let cand = match rng.gen_range(0..4) {
            0 => {
                let pants: Vec<_> = cx.blocks.iter().filter(|b| b.kind == BlockType::Pants).collect();
                match pants.choose(rng) {
                    Some(b) => match &b.site {
                        Site::Interval(i) => GeneratorObject::SaddleArc(i.clone()),
                        _ => continue,
                    },
                    None => continue,
                }
            }
            1 => {
                let gen: Vec<_> = cx.blocks.iter().filter(|b| b.kind == BlockType::GenusCylinder).collect();
                match gen.choose(rng) {
                    Some(b) if rng.gen_bool(0.5) => GeneratorObject::GenusUp(b.site.clone()),
                    Some(b) => GeneratorObject::GenusDown(b.site.clone()),
                    None => continue,
                }
            }
            2 => match lg::base_circle_sites(&cx).choose(rng) {
                Some(s) => GeneratorObject::BaseCircle(s.clone()),
                None => continue,
            },
            _ => {
                let (Some(p), Some(q)) = (ends.choose(rng), ends.choose(rng)) else { continue };
                let side = |e: &ib::EndPath, plus: bool| lg::EndClass {
                    end: e.clone(),
                    side: match lg::class_count(a, e).unwrap() {
                        1 => lg::Side::Unique,
                        _ if plus => lg::Side::Plus,
                        _ => lg::Side::Minus,
                    },
                };
                GeneratorObject::arc(side(p, true), side(q, rng.gen_bool(0.5)))
            }
        };
        if let Ok(obj) = lg::resolve(a, &cand) {
            return Some(obj);
        }
    }
    None
}
