//! Exhaustive search for layer-rainbow extensions of a fixed corner.
//!
//! Free cells are filled in lexicographic `(x, y, z)` order, symbols tried in
//! ascending order. Each layer keeps the set of symbols it still lacks; a
//! cell may take any symbol missing from all three of its layers, and after
//! every placement the open cells of the three touched layers must still
//! have a candidate. Only usable at small orders (`n <= 8`).

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::cube::{cell_index, CubeArray, LayerRainbowCube};
use crate::error::{Error, Result};

/// Largest order the bitset representation supports (`n² <= 64`).
pub const MAX_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
    pub time_budget: Duration,
}

impl SearchLimits {
    pub fn new(max_nodes: u64, time_budget: Duration) -> Result<Self> {
        if max_nodes == 0 || time_budget.is_zero() {
            return Err(Error::Malformed("search limits must be positive".into()));
        }
        Ok(SearchLimits {
            max_nodes,
            time_budget,
        })
    }
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 500_000_000,
            time_budget: Duration::from_secs(60),
        }
    }
}

/// Symmetry reduction applied during search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Symmetry {
    /// Raw search; counts are exact numbers of extensions.
    #[default]
    None,
    /// The symbols outside the corner are interchangeable: only the smallest
    /// symbol not yet placed anywhere is tried. Counts are divided by
    /// `(n² − m²)!`.
    RelabelNew,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(LayerRainbowCube),
    /// The whole search tree was explored without a solution.
    ProvedImpossible,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountOutcome {
    Exact(u64),
    /// Budget ran out after `found_so_far` extensions.
    BudgetExhausted {
        found_so_far: u64,
    },
}

/// Walk result of [`visit_extensions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VisitOutcome {
    /// Every extension was visited.
    Complete,
    /// The visitor asked to stop.
    Stopped,
    BudgetExhausted,
}

/// Looks for any extension of `small` to order `n`.
pub fn brute_force_extend(
    small: &LayerRainbowCube,
    n: usize,
    limits: SearchLimits,
    symmetry: Symmetry,
) -> Result<SearchResult> {
    let mut found = None;
    let (outcome, nodes) = visit_extensions(small, n, limits, symmetry, |cube| {
        found = Some(cube.clone());
        ControlFlow::Break(())
    })?;
    let outcome = match (outcome, found) {
        (_, Some(cube)) => SearchOutcome::Found(LayerRainbowCube::new(cube)?),
        (VisitOutcome::Complete, None) => SearchOutcome::ProvedImpossible,
        _ => SearchOutcome::BudgetExhausted,
    };
    Ok(SearchResult { outcome, nodes })
}

/// Counts the extensions of `small` to order `n`.
pub fn count_extensions(
    small: &LayerRainbowCube,
    n: usize,
    limits: SearchLimits,
    symmetry: Symmetry,
) -> Result<CountOutcome> {
    let mut count = 0u64;
    let (outcome, _) = visit_extensions(small, n, limits, symmetry, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(match outcome {
        VisitOutcome::BudgetExhausted => CountOutcome::BudgetExhausted {
            found_so_far: count,
        },
        _ => CountOutcome::Exact(count),
    })
}

/// Calls `visit` on every extension of `small` to order `n`, in search order.
/// Returns how the walk ended and the number of search nodes used.
pub fn visit_extensions<F>(
    small: &LayerRainbowCube,
    n: usize,
    limits: SearchLimits,
    symmetry: Symmetry,
    visit: F,
) -> Result<(VisitOutcome, u64)>
where
    F: FnMut(&CubeArray) -> ControlFlow<()>,
{
    let m = small.order();
    if n < m {
        return Err(Error::Malformed(format!(
            "target order {n} is smaller than the corner order {m}"
        )));
    }
    if n > MAX_ORDER {
        return Err(Error::Malformed(format!(
            "exhaustive search supports orders up to {MAX_ORDER}, got {n}"
        )));
    }
    let full: u64 = if n * n == 64 {
        u64::MAX
    } else {
        (1u64 << (n * n)) - 1
    };
    let mut search = Search {
        n,
        cells: vec![0; n * n * n],
        missing: [vec![full; n], vec![full; n], vec![full; n]],
        free: Vec::new(),
        placed: vec![0; n * n],
        first_new: (m * m) as u32,
        symmetry,
        nodes: 0,
        limits,
        start: Instant::now(),
        exhausted: false,
        visit,
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x < m && y < m && z < m {
                    let s = small.cell(x, y, z).0;
                    search.cells[cell_index(n, x, y, z)] = s;
                    search.take(x, y, z, s);
                } else {
                    search.free.push([x, y, z]);
                }
            }
        }
    }
    let flow = search.descend(0);
    let outcome = match (flow, search.exhausted) {
        (_, true) => VisitOutcome::BudgetExhausted,
        (ControlFlow::Break(()), false) => VisitOutcome::Stopped,
        (ControlFlow::Continue(()), false) => VisitOutcome::Complete,
    };
    Ok((outcome, search.nodes))
}

struct Search<F> {
    n: usize,
    cells: Vec<u32>,
    /// Symbols each layer still lacks, per axis.
    missing: [Vec<u64>; 3],
    free: Vec<[usize; 3]>,
    /// Occurrences of each symbol so far.
    placed: Vec<u32>,
    first_new: u32,
    symmetry: Symmetry,
    nodes: u64,
    limits: SearchLimits,
    start: Instant,
    exhausted: bool,
    visit: F,
}

impl<F> Search<F>
where
    F: FnMut(&CubeArray) -> ControlFlow<()>,
{
    fn domain(&self, [x, y, z]: [usize; 3]) -> u64 {
        self.missing[0][x] & self.missing[1][y] & self.missing[2][z]
    }

    fn take(&mut self, x: usize, y: usize, z: usize, s: u32) {
        let bit = 1u64 << s;
        self.missing[0][x] &= !bit;
        self.missing[1][y] &= !bit;
        self.missing[2][z] &= !bit;
        self.placed[s as usize] += 1;
    }

    fn give_back(&mut self, x: usize, y: usize, z: usize, s: u32) {
        let bit = 1u64 << s;
        self.missing[0][x] |= bit;
        self.missing[1][y] |= bit;
        self.missing[2][z] |= bit;
        self.placed[s as usize] -= 1;
    }

    /// Open cells after position `next` that share a layer with `p` still
    /// have a candidate.
    fn forward_ok(&self, next: usize, p: [usize; 3]) -> bool {
        self.free[next..]
            .iter()
            .filter(|q| q[0] == p[0] || q[1] == p[1] || q[2] == p[2])
            .all(|&q| self.domain(q) != 0)
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.limits.max_nodes
            || (self.nodes.is_multiple_of(4096) && self.start.elapsed() > self.limits.time_budget)
        {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn descend(&mut self, pos: usize) -> ControlFlow<()> {
        if pos == self.free.len() {
            let cube = CubeArray::new(self.n, self.cells.clone())
                .expect("search only places in-range symbols");
            return (self.visit)(&cube);
        }
        let p = self.free[pos];
        let mut domain = self.domain(p);
        let mut fresh_tried = false;
        while domain != 0 {
            let s = domain.trailing_zeros();
            domain &= domain - 1;
            if self.symmetry == Symmetry::RelabelNew
                && s >= self.first_new
                && self.placed[s as usize] == 0
            {
                if fresh_tried {
                    continue;
                }
                fresh_tried = true;
            }
            self.nodes += 1;
            if self.out_of_budget() {
                return ControlFlow::Break(());
            }
            let [x, y, z] = p;
            self.take(x, y, z, s);
            self.cells[cell_index(self.n, x, y, z)] = s;
            let flow = if self.forward_ok(pos + 1, p) {
                self.descend(pos + 1)
            } else {
                ControlFlow::Continue(())
            };
            self.give_back(x, y, z, s);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{base_cube, contains_as_corner, verify};
    use crate::format::parse;

    fn order1() -> LayerRainbowCube {
        LayerRainbowCube::new(CubeArray::new(1, vec![0]).unwrap()).unwrap()
    }

    fn sample_order2() -> LayerRainbowCube {
        LayerRainbowCube::new(parse("2\n1 2\n3 4\n\n4 3\n2 1\n").unwrap()).unwrap()
    }

    #[test]
    fn order_one_into_itself() {
        let c = count_extensions(&order1(), 1, SearchLimits::default(), Symmetry::None).unwrap();
        assert_eq!(c, CountOutcome::Exact(1));
    }

    #[test]
    fn order_one_into_two() {
        let r = brute_force_extend(&order1(), 2, SearchLimits::default(), Symmetry::None).unwrap();
        let SearchOutcome::Found(c) = r.outcome else {
            panic!("expected an extension");
        };
        assert!(verify(&c).is_valid());
        assert!(contains_as_corner(&c, &order1()));
    }

    #[test]
    fn order_two_into_three_is_impossible() {
        let r = brute_force_extend(&sample_order2(), 3, SearchLimits::default(), Symmetry::None)
            .unwrap();
        assert_eq!(r.outcome, SearchOutcome::ProvedImpossible);
        let c =
            count_extensions(&sample_order2(), 3, SearchLimits::default(), Symmetry::None).unwrap();
        assert_eq!(c, CountOutcome::Exact(0));
    }

    #[test]
    fn symmetry_reduction_divides_count_by_relabelings() {
        let raw = count_extensions(&order1(), 2, SearchLimits::default(), Symmetry::None).unwrap();
        let reduced =
            count_extensions(&order1(), 2, SearchLimits::default(), Symmetry::RelabelNew).unwrap();
        let (CountOutcome::Exact(raw), CountOutcome::Exact(reduced)) = (raw, reduced) else {
            panic!("budget too small");
        };
        // three new symbols
        assert_eq!(raw, reduced * 6);
        assert!(raw > 0);
    }

    #[test]
    fn order_two_cube_count() {
        // independent enumeration: 24 order-2 cubes, 6 with symbol 0 at the origin
        let c = count_extensions(&order1(), 2, SearchLimits::default(), Symmetry::None).unwrap();
        assert_eq!(c, CountOutcome::Exact(6));
        let mut all = Vec::new();
        visit_extensions(&order1(), 2, SearchLimits::default(), Symmetry::None, |a| {
            all.push(a.clone());
            ControlFlow::Continue(())
        })
        .unwrap();
        all.sort_by(|a, b| a.cells().cmp(b.cells()));
        all.dedup();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn full_cube_has_exactly_itself() {
        let c = base_cube(3).unwrap();
        assert_eq!(
            count_extensions(&c, 3, SearchLimits::default(), Symmetry::None).unwrap(),
            CountOutcome::Exact(1)
        );
    }

    #[test]
    fn budget_exhaustion_is_a_result() {
        let limits = SearchLimits::new(10, Duration::from_secs(5)).unwrap();
        let r = brute_force_extend(&sample_order2(), 3, limits, Symmetry::None).unwrap();
        assert_eq!(r.outcome, SearchOutcome::BudgetExhausted);
        assert!(SearchLimits::new(0, Duration::from_secs(1)).is_err());
    }

    #[test]
    fn rejects_bad_orders() {
        let limits = SearchLimits::default();
        assert!(brute_force_extend(&sample_order2(), 1, limits, Symmetry::None).is_err());
        assert!(brute_force_extend(&order1(), 9, limits, Symmetry::None).is_err());
    }

    #[test]
    fn deterministic() {
        let limits = SearchLimits::default();
        let a = brute_force_extend(&order1(), 3, limits, Symmetry::None).unwrap();
        let b = brute_force_extend(&order1(), 3, limits, Symmetry::None).unwrap();
        assert_eq!(a, b);
    }
}
