mod common;

use std::collections::BTreeSet;

use infsurf::blueprint::examples;
use infsurf::cantor_basis::TriadicInterval;
use infsurf::surface_builder::{build_truncation, BlockComplex, BlockType, SaddleKind, Site, SurfaceError};
use proptest::prelude::*;

fn site(s: &str) -> Site {
    Site::Interval(TriadicInterval::parse(s).unwrap())
}

/// Checks the DOT text is one undirected graph whose edges join declared nodes.
pub fn check_dot(dot: &str) -> Result<(), String> {
    let body = dot
        .strip_prefix("graph surface {\n")
        .and_then(|b| b.strip_suffix("}\n"))
        .ok_or("not a single graph block")?;
    let mut nodes = BTreeSet::new();
    for line in body.lines() {
        let line = line.trim();
        let stmt = line.strip_suffix(';').ok_or_else(|| format!("unterminated statement {line:?}"))?;
        let head = stmt.split(" [").next().unwrap();
        if head == "node" {
            continue;
        }
        if let Some((a, b)) = head.split_once(" -- ") {
            for n in [a, b] {
                if !nodes.contains(n) {
                    return Err(format!("edge to undeclared node {n}"));
                }
            }
        } else {
            if head.is_empty() || !head.chars().all(|c| c.is_ascii_alphanumeric()) {
                return Err(format!("bad node id {head:?}"));
            }
            nodes.insert(head.to_string());
        }
        if stmt.matches('"').count() % 2 != 0 {
            return Err(format!("unbalanced quotes in {line:?}"));
        }
    }
    Ok(())
}

#[test]
fn cantor_counts() {
    let a = examples::cantor();
    for n in 1..=7 {
        let cx = build_truncation(&a, n).unwrap();
        let pants = (1usize << n) - 1;
        assert_eq!(cx.count(BlockType::Pants), pants);
        assert_eq!(cx.count(BlockType::Disk), 1);
        assert_eq!(cx.euler_characteristic(), 1 - pants as i64);
        assert_eq!(cx.boundary_circles(), 1 << n);
        assert_eq!(cx.genus().unwrap(), 0);
        assert_eq!(cx.saddles.len(), pants);
    }
}

#[test]
fn genus_cylinder_depth_three() {
    let cx = build_truncation(&examples::genus_cylinder(), 3).unwrap();
    assert_eq!(cx.count(BlockType::GenusCylinder), 3);
    assert_eq!(cx.euler_characteristic(), -5);
    assert_eq!(cx.boundary_circles(), 1);
    assert_eq!(cx.genus().unwrap(), 3);
    assert_eq!(cx.saddles.len(), 6);
    let lower = cx.saddles.iter().filter(|s| s.kind == SaddleKind::GenusLower).count();
    let upper = cx.saddles.iter().filter(|s| s.kind == SaddleKind::GenusUpper).count();
    assert_eq!((lower, upper), (3, 3));
}

#[test]
fn plain_cylinder_depth_five() {
    let cx = build_truncation(&examples::plain_cylinder(), 5).unwrap();
    assert_eq!(cx.blocks.len(), 6);
    assert_eq!(cx.count(BlockType::Cylinder), 5);
    assert_eq!(cx.euler_characteristic(), 1);
    assert_eq!(cx.boundary_circles(), 1);
    assert!(cx.saddles.is_empty());
}

#[test]
fn base_genus_sits_below_the_root() {
    let cx = build_truncation(&examples::pants_with_handle(), 2).unwrap();
    let b1 = cx.block_at(&Site::Base(1)).unwrap();
    let root = cx.block_at(&site("")).unwrap();
    assert_eq!(b1.kind, BlockType::GenusCylinder);
    assert!(b1.level < root.level);
    assert_eq!(cx.genus().unwrap(), 1);
    assert_eq!(cx.euler_characteristic(), -2);
}

#[test]
fn requires_normalized_input() {
    let a = infsurf::EndAutomaton::from_table(0, "s", &[("s", 2, Some("s"), Some("s"))]).unwrap();
    assert!(matches!(build_truncation(&a, 2), Err(SurfaceError::Blueprint(_))));
    assert!(build_truncation(&infsurf::blueprint::normalize(&a), 2).is_ok());
}

#[test]
fn flute_cells_and_traces() {
    let cx = build_truncation(&examples::flute(), 4).unwrap();
    let order: Vec<usize> = cx.saddle_order().iter().map(|s| s.order_index).collect();
    let mut sorted_by_cell = order.clone();
    sorted_by_cell.sort();
    assert_eq!(order.len(), 4);
    // each pants starts a fresh cell along the spine, so order follows level
    assert_eq!(order, sorted_by_cell);
    let root_saddle = cx.saddles.iter().find(|s| cx.blocks[s.block].site == site("")).unwrap();
    let root_circle = cx.circle_at(&site("")).unwrap();
    assert_eq!(cx.descending_trace(root_saddle.id, root_circle.id).unwrap(), vec![0, 2]);
    let upper = cx.circle_at(&site("22")).unwrap();
    assert!(matches!(cx.descending_trace(root_saddle.id, upper.id), Err(SurfaceError::LevelOrder { .. })));
}

#[test]
fn corpus_dot_is_well_formed() {
    for name in common::CORPUS {
        let a = infsurf::blueprint::normalize(&common::builtin(name));
        let cx = build_truncation(&a, 4).unwrap();
        check_dot(&cx.to_dot()).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

fn identities(cx: &BlockComplex) -> Result<(), String> {
    let g = cx.genus().map_err(|e| e.to_string())? as i64;
    if cx.euler_characteristic() != 2 - 2 * g - cx.boundary_circles() as i64 {
        return Err("euler identity".into());
    }
    if cx.saddles.len() != cx.count(BlockType::Pants) + 2 * cx.count(BlockType::GenusCylinder) {
        return Err("saddle count".into());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncation_identities(seed in any::<u64>(), n in 1usize..=7) {
        let a = common::random_normalized(seed, 6);
        let cx = build_truncation(&a, n).unwrap();
        prop_assert_eq!(identities(&cx), Ok(()));
        prop_assert!(check_dot(&cx.to_dot()).is_ok());
    }

    #[test]
    fn restriction_is_functorial(seed in any::<u64>(), n in 1usize..=7, m in 1usize..=7) {
        let a = common::random_normalized(seed, 6);
        let m = m.min(n);
        let full = build_truncation(&a, n).unwrap();
        prop_assert_eq!(full.restrict(m), build_truncation(&a, m).unwrap());
    }
}
