use std::collections::HashSet;

use lrcube::amalgamation::{color_amalgam, validate_table};
use lrcube::detachment::{realize, verify_realization};
use lrcube::{base_cube, contains_as_corner, embed, format, verify, Axis, CubeArray};
use proptest::prelude::*;

/// Straightforward layer check kept apart from the library verifier.
fn naive_rainbow(c: &CubeArray) -> bool {
    let n = c.order();
    let full = n * n;
    for axis in 0..3 {
        for layer in 0..n {
            let mut seen = HashSet::new();
            for a in 0..n {
                for b in 0..n {
                    let (x, y, z) = match axis {
                        0 => (layer, a, b),
                        1 => (a, layer, b),
                        _ => (a, b, layer),
                    };
                    seen.insert(c.cell(x, y, z).0);
                }
            }
            if seen.len() != full {
                return false;
            }
        }
    }
    true
}

fn shuffled(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle()
}

fn order_and_perms() -> impl Strategy<Value = (usize, Vec<u32>, Vec<usize>)> {
    (1usize..=7).prop_flat_map(|n| {
        (
            Just(n),
            shuffled(n * n).prop_map(|p| p.into_iter().map(|s| s as u32).collect()),
            shuffled(n),
        )
    })
}

proptest! {
    #[test]
    fn relabel_and_axis_permutation_preserve_validity((n, sym, perm) in order_and_perms()) {
        let base = base_cube(n).unwrap();
        let relabeled = base.relabel(&sym).unwrap();
        prop_assert!(verify(&relabeled).is_valid());
        for axis in Axis::ALL {
            let moved = relabeled.permute_axis(axis, &perm).unwrap();
            prop_assert!(verify(&moved).is_valid());
            prop_assert!(naive_rainbow(&moved));
        }
    }

    #[test]
    fn text_round_trip((n, sym, _) in order_and_perms()) {
        let cube = base_cube(n).unwrap().relabel(&sym).unwrap();
        let text = format::to_text(&cube);
        prop_assert_eq!(&format::parse(&text).unwrap(), cube.as_array());
        prop_assert_eq!(format::parse(&text.replace('\n', "\r\n")).unwrap(), cube.into_array());
    }

    #[test]
    fn verifier_agrees_with_naive_check(
        n in 2usize..=5,
        edits in prop::collection::vec((0usize..125, 0u32..25), 0..3),
    ) {
        let mut cells = base_cube(n).unwrap().into_array().cells().to_vec();
        let size = cells.len();
        for (i, s) in edits {
            cells[i % size] = s % (n * n) as u32;
        }
        let c = CubeArray::new(n, cells).unwrap();
        let report = verify(&c);
        prop_assert_eq!(report.is_valid(), naive_rainbow(&c));
        prop_assert_eq!(report.is_valid(), report.violations.is_empty());
    }

    #[test]
    fn coloring_is_valid(m in 2usize..=30, extra in 0usize..=60) {
        let n = 2 * m + extra;
        let table = color_amalgam(m, n).unwrap();
        prop_assert!(validate_table(&table).is_valid());
    }

    #[test]
    fn realization_matches_its_table(m in 2usize..=4, extra in 0usize..=4, seed: u64) {
        let table = color_amalgam(m, 2 * m + extra).unwrap();
        let ext = realize(&table, seed).unwrap();
        let report = verify_realization(&ext, &table);
        prop_assert!(report.is_valid(), "{}", report);
    }

    #[test]
    fn embedding_keeps_the_corner(
        (m, perm) in (1usize..=4).prop_flat_map(|m| (Just(m), shuffled(m * m))),
        extra in 0usize..=3,
        seed: u64,
    ) {
        let perm: Vec<u32> = perm.into_iter().map(|s| s as u32).collect();
        let small = base_cube(m).unwrap().relabel(&perm).unwrap();
        let n = 2 * m + extra;
        let (big, report) = embed(&small, n, seed).unwrap();
        prop_assert!(report.is_success());
        prop_assert!(naive_rainbow(big.as_array()));
        prop_assert!(contains_as_corner(&big, &small));
    }
}
