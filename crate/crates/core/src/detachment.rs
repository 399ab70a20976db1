//! Turning a colored amalgam back into concrete cells.
//!
//! The amalgam vertices are split one subvertex at a time: first the `z`
//! family (`z` into layers `0..m`, `γ` into layers `m..n`), then `x`/`α`,
//! then `y`/`β`. Splitting subvertex `i` off a vertex that still stands for
//! `r` indices is a matrix rounding problem. Rows are colors, columns are
//! the distinct edges through the vertex (identified by their other two
//! endpoints), and entry `c` is the multiplicity of that edge in that color.
//! The subvertex must take `⌊c/r⌋` or `⌈c/r⌉` of every entry, exactly `1/r`
//! of every row (the color's degree per subvertex) and exactly `1/r` of every
//! column (the edge's multiplicity per subvertex). Row and column targets are
//! integers, so an integral rounding exists and one max-flow finds it. After
//! the last split every edge has three concrete endpoints and multiplicity
//! one, i.e. it is a cell.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::amalgamation::{validate_table, AmalgamVertex, ColorMultTable, EdgeKind};
use crate::cube::{cell_index, Axis};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;

/// How many subvertices each amalgam vertex is split into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitFunction {
    m: usize,
    n: usize,
}

impl SplitFunction {
    pub fn new(m: usize, n: usize) -> Self {
        SplitFunction { m, n }
    }

    pub fn g(&self, vertex: AmalgamVertex) -> usize {
        if vertex.is_new() {
            self.n - self.m
        } else {
            self.m
        }
    }

    /// Index range of the subvertices of `vertex` along its axis.
    pub fn indices(&self, vertex: AmalgamVertex) -> std::ops::Range<usize> {
        if vertex.is_new() {
            self.m..self.n
        } else {
            0..self.m
        }
    }
}

/// One endpoint of a partially detached edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    /// Still amalgamated into the old-range vertex (`x`, `y` or `z`).
    Old,
    /// Still amalgamated into the new-range vertex (`α`, `β` or `γ`).
    New,
    /// Detached to a concrete index.
    Index(usize),
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Old => f.write_str("old"),
            Part::New => f.write_str("new"),
            Part::Index(i) => write!(f, "{i}"),
        }
    }
}

/// Edges still waiting for placement when a realization step failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendingEdge {
    pub color: usize,
    pub parts: [Part; 3],
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationFailure {
    pub step: String,
    pub reason: String,
    pub pending: Vec<PendingEdge>,
}

impl fmt::Display for RealizationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "realization failed at {}: {} ({} edge groups pending)",
            self.step,
            self.reason,
            self.pending.len()
        )
    }
}

impl std::error::Error for RealizationFailure {}

/// A color in `1..=n²` for every cell of `[0,n)³ ∖ [0,m)³`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredExtension {
    m: usize,
    n: usize,
    /// x-major, 0 for corner cells.
    colors: Vec<u32>,
}

impl ColoredExtension {
    /// `colors` is x-major over `[0,n)³`; corner entries must be 0.
    pub fn from_raw(m: usize, n: usize, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != n * n * n || m > n {
            return Err(Error::Malformed(format!(
                "extension of {m} into {n} needs {} entries, got {}",
                n * n * n,
                colors.len()
            )));
        }
        Ok(ColoredExtension { m, n, colors })
    }

    pub fn corner_order(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `None` inside the corner.
    pub fn color(&self, x: usize, y: usize, z: usize) -> Option<u32> {
        match self.colors[cell_index(self.n, x, y, z)] {
            0 => None,
            c => Some(c),
        }
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.colors
    }

    /// Extension cells with their colors in lexicographic `(x, y, z)` order.
    pub fn cells(&self) -> impl Iterator<Item = ([usize; 3], u32)> + '_ {
        let n = self.n;
        let m = self.m;
        self.colors.iter().enumerate().filter_map(move |(i, &c)| {
            let p = [i / (n * n), (i / n) % n, i % n];
            (p.iter().any(|&v| v >= m)).then_some((p, c))
        })
    }

    /// Lines `x y z color`, coordinates 0-based, colors 1-based.
    pub fn to_debug_lines(&self) -> String {
        let mut out = String::new();
        for ([x, y, z], c) in self.cells() {
            out.push_str(&format!("{x} {y} {z} {c}\n"));
        }
        out
    }
}

/// Places every edge of the colored amalgam onto a concrete cell.
///
/// Deterministic in `(table, seed)`; the seed only reorders the flow
/// networks, which changes which of the valid roundings is found.
///
/// Should a split ever fail for `n <= 6`, the exhaustive
/// [`brute_force_realize`] is tried before giving up.
pub fn realize(table: &ColorMultTable, seed: u64) -> Result<ColoredExtension> {
    let report = validate_table(table);
    if let Some(v) = report.violations.first() {
        return Err(Error::Malformed(format!("table does not validate: {v}")));
    }
    match realize_by_splitting(table, seed) {
        Err(Error::Realization(failure)) if table.profile().n <= BRUTE_FORCE_MAX_ORDER => {
            brute_force_realize(table, BRUTE_FORCE_NODES, seed)
                .filter(|ext| verify_realization(ext, table).is_valid())
                .ok_or(Error::Realization(failure))
        }
        other => other,
    }
}

const BRUTE_FORCE_MAX_ORDER: usize = 6;
const BRUTE_FORCE_NODES: u64 = 50_000_000;

fn realize_by_splitting(table: &ColorMultTable, seed: u64) -> Result<ColoredExtension> {
    let profile = table.profile();
    let (m, n) = (profile.m, profile.n);
    let split = SplitFunction::new(m, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut state: Vec<BTreeMap<[Part; 3], u32>> = (1..=profile.color_count())
        .map(|c| {
            EdgeKind::ALL
                .into_iter()
                .filter(|&k| table.get(c, k) > 0)
                .map(|k| {
                    let parts = k
                        .new_axes()
                        .map(|new| if new { Part::New } else { Part::Old });
                    (parts, table.get(c, k))
                })
                .collect()
        })
        .collect();

    use AmalgamVertex::*;
    for vertex in [Z, Gamma, X, Alpha, Y, Beta] {
        let indices = split.indices(vertex);
        let g = split.g(vertex);
        for (i, index) in indices.enumerate() {
            split_off(&mut state, vertex, index, g - i, &mut rng).map_err(|reason| {
                realization_error(
                    &state,
                    format!("splitting {vertex} into index {index}"),
                    reason,
                )
            })?;
        }
    }

    let mut colors = vec![0u32; n * n * n];
    for (c, edges) in state.iter().enumerate() {
        for (&parts, &mult) in edges {
            let [Part::Index(x), Part::Index(y), Part::Index(z)] = parts else {
                return Err(realization_error(
                    &state,
                    "assembly".into(),
                    format!("color {} has an undetached edge", c + 1),
                ));
            };
            let cell = &mut colors[cell_index(n, x, y, z)];
            if mult != 1 || *cell != 0 {
                return Err(realization_error(
                    &state,
                    "assembly".into(),
                    format!("cell ({x}, {y}, {z}) is not simple"),
                ));
            }
            *cell = c as u32 + 1;
        }
    }
    let ext = ColoredExtension { m, n, colors };
    let report = verify_realization(&ext, table);
    if let Some(v) = report.violations.first() {
        return Err(Error::Internal(format!(
            "realization fails verification: {v}"
        )));
    }
    Ok(ext)
}

fn realization_error(state: &[BTreeMap<[Part; 3], u32>], step: String, reason: String) -> Error {
    let pending = state
        .iter()
        .enumerate()
        .flat_map(|(c, edges)| {
            edges
                .iter()
                .filter(|(parts, _)| parts.iter().any(|p| !matches!(p, Part::Index(_))))
                .map(move |(&parts, &multiplicity)| PendingEdge {
                    color: c + 1,
                    parts,
                    multiplicity,
                })
        })
        .collect();
    Error::Realization(Box::new(RealizationFailure {
        step,
        reason,
        pending,
    }))
}

/// Detaches one subvertex `index` from `vertex`, which currently stands for
/// `remaining` indices.
fn split_off(
    state: &mut [BTreeMap<[Part; 3], u32>],
    vertex: AmalgamVertex,
    index: usize,
    remaining: usize,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(), String> {
    let axis = vertex.axis();
    let family = if vertex.is_new() {
        Part::New
    } else {
        Part::Old
    };
    let r = remaining as u32;

    // (color, edge, multiplicity) for every edge through the vertex
    let mut entries: Vec<(usize, [Part; 3], u32)> = Vec::new();
    for (c, edges) in state.iter().enumerate() {
        entries.extend(
            edges
                .iter()
                .filter(|(parts, _)| parts[axis] == family)
                .map(|(&parts, &mult)| (c, parts, mult)),
        );
    }

    let mut take: Vec<u32> = entries.iter().map(|e| e.2 / r).collect();
    if r > 1 {
        let mut column_of: BTreeMap<[Part; 3], usize> = BTreeMap::new();
        for e in &entries {
            let next = column_of.len();
            column_of.entry(e.1).or_insert(next);
        }
        let mut row_total = vec![0u32; state.len()];
        let mut col_total = vec![0u32; column_of.len()];
        let mut row_floor = vec![0u32; state.len()];
        let mut col_floor = vec![0u32; column_of.len()];
        for (e, &t) in entries.iter().zip(&take) {
            let col = column_of[&e.1];
            row_total[e.0] += e.2;
            col_total[col] += e.2;
            row_floor[e.0] += t;
            col_floor[col] += t;
        }
        if let Some(c) = (0..state.len()).find(|&c| !row_total[c].is_multiple_of(r)) {
            return Err(format!(
                "color {} has degree {} at {vertex}, not divisible by {r}",
                c + 1,
                row_total[c]
            ));
        }
        if let Some((parts, _)) = column_of
            .iter()
            .find(|(_, &col)| !col_total[col].is_multiple_of(r))
        {
            return Err(format!(
                "edge {parts:?} has multiplicity not divisible by {r}"
            ));
        }

        let rows = state.len();
        let cols = column_of.len();
        let (source, sink) = (rows + cols, rows + cols + 1);
        let mut net = FlowNetwork::new(rows + cols + 2);
        let mut row_order: Vec<usize> = (0..rows).collect();
        row_order.shuffle(rng);
        let mut need = 0i64;
        for c in row_order {
            let d = (row_total[c] / r - row_floor[c]) as i64;
            if d > 0 {
                net.add_arc(source, c, d);
                need += d;
            }
        }
        let mut fractional: Vec<usize> = (0..entries.len())
            .filter(|&i| !entries[i].2.is_multiple_of(r))
            .collect();
        fractional.shuffle(rng);
        let arcs: Vec<_> = fractional
            .iter()
            .map(|&i| {
                (
                    i,
                    net.add_arc(entries[i].0, rows + column_of[&entries[i].1], 1),
                )
            })
            .collect();
        let mut col_need = 0i64;
        for col in 0..cols {
            let d = (col_total[col] / r - col_floor[col]) as i64;
            if d > 0 {
                net.add_arc(rows + col, sink, d);
                col_need += d;
            }
        }
        if need != col_need {
            return Err(format!(
                "row demand {need} differs from column demand {col_need}"
            ));
        }
        let flow = net.max_flow(source, sink);
        if flow != need {
            return Err(format!("rounding flow reached {flow} of {need}"));
        }
        for (i, arc) in arcs {
            take[i] += net.flow(arc) as u32;
        }
    }

    for ((c, parts, _), t) in entries.into_iter().zip(take) {
        if t == 0 {
            continue;
        }
        let edges = &mut state[c];
        let left = edges.get_mut(&parts).expect("entry collected from state");
        *left -= t;
        if *left == 0 {
            edges.remove(&parts);
        }
        let mut detached = parts;
        detached[axis] = Part::Index(index);
        *edges.entry(detached).or_insert(0) += t;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealizationViolation {
    Shape {
        reason: String,
    },
    /// A corner cell carries a color or an extension cell carries none or an
    /// out-of-range one.
    CellColor {
        cell: [usize; 3],
        color: u32,
    },
    /// Color `color` meets index `index` of `axis` `actual` times.
    Coordinate {
        color: usize,
        axis: Axis,
        index: usize,
        expected: u32,
        actual: u32,
    },
    Census {
        color: usize,
        kind: EdgeKind,
        expected: u32,
        actual: u32,
    },
}

impl fmt::Display for RealizationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizationViolation::Shape { reason } => write!(f, "shape mismatch: {reason}"),
            RealizationViolation::CellColor { cell, color } => {
                write!(f, "cell {cell:?} has color {color}")
            }
            RealizationViolation::Coordinate {
                color,
                axis,
                index,
                expected,
                actual,
            } => write!(
                f,
                "color {color} meets {axis} = {index} {actual} times, expected {expected}"
            ),
            RealizationViolation::Census {
                color,
                kind,
                expected,
                actual,
            } => write!(
                f,
                "color {color} has {actual} {kind} cells, expected {expected}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationReport {
    pub violations: Vec<RealizationViolation>,
}

impl RealizationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for RealizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid: {} violations", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Checks an extension against the detachment conditions: every color class
/// meets each index once (κ₂) or each new index once and no old index (κ₁),
/// and its cells have exactly the table's edge-kind census.
pub fn verify_realization(ext: &ColoredExtension, table: &ColorMultTable) -> RealizationReport {
    let profile = table.profile();
    let (m, n) = (profile.m, profile.n);
    let mut violations = Vec::new();
    if ext.m != m || ext.n != n || ext.colors.len() != n * n * n {
        violations.push(RealizationViolation::Shape {
            reason: format!(
                "extension is {} into {}, table is {m} into {n}",
                ext.m, ext.n
            ),
        });
        return RealizationReport { violations };
    }
    let colors = profile.color_count();
    // hits[color][axis][index]
    let mut hits = vec![[vec![0u32; n], vec![0u32; n], vec![0u32; n]]; colors + 1];
    let mut census = vec![[0u32; 7]; colors + 1];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let c = ext.colors[cell_index(n, x, y, z)];
                let kind = EdgeKind::of_cell(x, y, z, m);
                let in_range = (1..=colors as u32).contains(&c);
                match kind {
                    None if c != 0 => violations.push(RealizationViolation::CellColor {
                        cell: [x, y, z],
                        color: c,
                    }),
                    Some(_) if !in_range => violations.push(RealizationViolation::CellColor {
                        cell: [x, y, z],
                        color: c,
                    }),
                    Some(kind) => {
                        let c = c as usize;
                        hits[c][0][x] += 1;
                        hits[c][1][y] += 1;
                        hits[c][2][z] += 1;
                        census[c][kind.index()] += 1;
                    }
                    None => {}
                }
            }
        }
    }
    for c in 1..=colors {
        let kappa1 = profile.is_kappa1(c);
        for axis in Axis::ALL {
            for index in 0..n {
                let expected = u32::from(!kappa1 || index >= m);
                let actual = hits[c][axis.index()][index];
                if actual != expected {
                    violations.push(RealizationViolation::Coordinate {
                        color: c,
                        axis,
                        index,
                        expected,
                        actual,
                    });
                }
            }
        }
        for kind in EdgeKind::ALL {
            let expected = table.get(c, kind);
            let actual = census[c][kind.index()];
            if actual != expected {
                violations.push(RealizationViolation::Census {
                    color: c,
                    kind,
                    expected,
                    actual,
                });
            }
        }
    }
    RealizationReport { violations }
}

/// Backtracking search for a realization of `table`, independent of the
/// flow construction, for cross-checking [`realize`] at small orders
/// (`n <= 8`). Returns `None` when no realization exists or `max_nodes`
/// search nodes were spent.
///
/// Branches on whichever open constraint has the fewest options: an
/// uncolored cell, or a color that has not yet met a layer it must meet.
/// Each node also checks that every layer still admits a perfect matching of
/// open cells to missing colors. Value order is shuffled and the search
/// restarts with a doubled node limit whenever a limit is hit; a run that
/// finishes under its limit is exhaustive.
pub fn brute_force_realize(
    table: &ColorMultTable,
    max_nodes: u64,
    seed: u64,
) -> Option<ColoredExtension> {
    let profile = table.profile();
    let (m, n) = (profile.m, profile.n);
    let colors = profile.color_count();
    if colors > 64 {
        return None;
    }
    let cells: Vec<([usize; 3], EdgeKind)> = (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| [x, y, z])))
        .filter_map(|p| EdgeKind::of_cell(p[0], p[1], p[2], m).map(|k| (p, k)))
        .collect();
    // colors that must meet index i of an axis
    let required: Vec<u64> = (0..n)
        .map(|i| {
            (0..colors)
                .filter(|&c| i >= m || !profile.is_kappa1(c + 1))
                .fold(0u64, |acc, c| acc | 1 << c)
        })
        .collect();

    let quota: Vec<[u32; 7]> = table.rows().to_vec();
    let mut open = [0u64; 7];
    for (c, row) in quota.iter().enumerate() {
        for k in 0..7 {
            if row[k] > 0 {
                open[k] |= 1 << c;
            }
        }
    }
    // fresh colors with equal quota rows are interchangeable
    let class: Vec<usize> = (0..colors)
        .map(|c| (0..=c).find(|&d| quota[d] == quota[c]).unwrap())
        .collect();
    let mut search = RealizationSearch {
        n,
        colors,
        required,
        class,
        placed: vec![0; colors],
        assigned: vec![0; cells.len()],
        cells,
        quota,
        open,
        used: [vec![0; n], vec![0; n], vec![0; n]],
        nodes: 0,
        limit: 0,
        limit_hit: false,
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let mut spent = 0u64;
    let mut limit = 1_000u64;
    loop {
        search.nodes = 0;
        search.limit = limit.min(max_nodes - spent);
        search.limit_hit = false;
        if search.run() {
            break;
        }
        if !search.limit_hit {
            return None;
        }
        spent += search.nodes.min(search.limit);
        if spent >= max_nodes {
            return None;
        }
        limit = limit.saturating_mul(2);
    }
    let mut out = vec![0u32; n * n * n];
    for (([x, y, z], _), c) in search.cells.iter().zip(&search.assigned) {
        out[cell_index(n, *x, *y, *z)] = *c;
    }
    Some(ColoredExtension { m, n, colors: out })
}

struct RealizationSearch {
    n: usize,
    colors: usize,
    required: Vec<u64>,
    class: Vec<usize>,
    placed: Vec<u32>,
    cells: Vec<([usize; 3], EdgeKind)>,
    assigned: Vec<u32>,
    quota: Vec<[u32; 7]>,
    // colors with quota left, per kind
    open: [u64; 7],
    // colors already meeting an index, per axis
    used: [Vec<u64>; 3],
    nodes: u64,
    limit: u64,
    limit_hit: bool,
    rng: ChaCha8Rng,
}

fn augment(
    left: usize,
    layer_cells: &[usize],
    cand: &[u64],
    allowed: u64,
    owner: &mut [usize; 64],
    seen: &mut u64,
) -> bool {
    let mut bits = cand[layer_cells[left]] & allowed & !*seen;
    while bits != 0 {
        let c = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        *seen |= 1 << c;
        if owner[c] == usize::MAX || augment(owner[c], layer_cells, cand, allowed, owner, seen) {
            owner[c] = left;
            return true;
        }
    }
    false
}

enum Branch {
    Cell(usize),
    Need {
        color: usize,
        axis: usize,
        index: usize,
    },
}

impl RealizationSearch {
    fn candidates(&self, i: usize) -> u64 {
        let ([x, y, z], kind) = self.cells[i];
        self.open[kind.index()] & !self.used[0][x] & !self.used[1][y] & !self.used[2][z]
    }

    fn place(&mut self, i: usize, c: usize) {
        let ([x, y, z], kind) = self.cells[i];
        let bit = 1u64 << c;
        self.assigned[i] = c as u32 + 1;
        self.placed[c] += 1;
        self.quota[c][kind.index()] -= 1;
        if self.quota[c][kind.index()] == 0 {
            self.open[kind.index()] &= !bit;
        }
        self.used[0][x] |= bit;
        self.used[1][y] |= bit;
        self.used[2][z] |= bit;
    }

    fn unplace(&mut self, i: usize, c: usize) {
        let ([x, y, z], kind) = self.cells[i];
        let bit = 1u64 << c;
        self.used[0][x] &= !bit;
        self.used[1][y] &= !bit;
        self.used[2][z] &= !bit;
        self.quota[c][kind.index()] += 1;
        self.open[kind.index()] |= bit;
        self.placed[c] -= 1;
        self.assigned[i] = 0;
    }

    /// Every layer must still admit a perfect matching between its open cells
    /// and the colors that have yet to meet it.
    fn layers_matchable(&self, cand: &[u64]) -> bool {
        let n = self.n;
        let mut layer_cells: Vec<usize> = Vec::new();
        for axis in 0..3 {
            for index in 0..n {
                let missing = self.required[index] & !self.used[axis][index];
                layer_cells.clear();
                layer_cells.extend(
                    (0..self.cells.len())
                        .filter(|&i| self.assigned[i] == 0 && self.cells[i].0[axis] == index),
                );
                if layer_cells.len() != missing.count_ones() as usize {
                    return false;
                }
                // Kuhn's augmenting paths, cells on the left
                let mut owner = [usize::MAX; 64];
                for li in 0..layer_cells.len() {
                    let mut seen = 0u64;
                    if !augment(li, &layer_cells, cand, missing, &mut owner, &mut seen) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.limit_hit = true;
            return false;
        }
        let n = self.n;
        // support[axis][index][color]: open cells in that layer accepting the color
        let mut support = vec![vec![vec![0u16; self.colors]; n]; 3];
        let mut cand = vec![0u64; self.cells.len()];
        let mut best: Option<(u32, Branch)> = None;
        for i in 0..self.cells.len() {
            if self.assigned[i] != 0 {
                continue;
            }
            let c = self.candidates(i);
            if c == 0 {
                return false;
            }
            cand[i] = c;
            if best.as_ref().is_none_or(|(b, _)| c.count_ones() < *b) {
                best = Some((c.count_ones(), Branch::Cell(i)));
            }
            let p = self.cells[i].0;
            let mut bits = c;
            while bits != 0 {
                let color = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for axis in 0..3 {
                    support[axis][p[axis]][color] += 1;
                }
            }
        }
        let Some((mut best_count, mut branch)) = best else {
            return true;
        };
        // each color's remaining quota of a kind must fit into cells accepting it
        let mut kind_support = vec![[0u32; 7]; self.colors];
        for i in 0..self.cells.len() {
            let mut bits = cand[i];
            let k = self.cells[i].1.index();
            while bits != 0 {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                kind_support[c][k] += 1;
            }
        }
        if (0..self.colors).any(|c| (0..7).any(|k| kind_support[c][k] < self.quota[c][k])) {
            return false;
        }
        if !self.layers_matchable(&cand) {
            return false;
        }
        for axis in 0..3 {
            for index in 0..n {
                let mut missing = self.required[index] & !self.used[axis][index];
                while missing != 0 {
                    let color = missing.trailing_zeros() as usize;
                    missing &= missing - 1;
                    let s = support[axis][index][color] as u32;
                    if s == 0 {
                        return false;
                    }
                    if s < best_count {
                        best_count = s;
                        branch = Branch::Need { color, axis, index };
                    }
                }
            }
        }
        match branch {
            Branch::Cell(i) => {
                let mut values: Vec<usize> = Vec::with_capacity(cand[i].count_ones() as usize);
                let mut bits = cand[i];
                while bits != 0 {
                    values.push(bits.trailing_zeros() as usize);
                    bits &= bits - 1;
                }
                values.shuffle(&mut self.rng);
                let mut fresh_classes: Vec<usize> = Vec::new();
                for c in values {
                    if self.placed[c] == 0 {
                        if fresh_classes.contains(&self.class[c]) {
                            continue;
                        }
                        fresh_classes.push(self.class[c]);
                    }
                    self.place(i, c);
                    if self.run() {
                        return true;
                    }
                    self.unplace(i, c);
                    if self.limit_hit {
                        return false;
                    }
                }
            }
            Branch::Need { color, axis, index } => {
                let mut options: Vec<usize> = (0..self.cells.len())
                    .filter(|&i| {
                        self.assigned[i] == 0
                            && self.cells[i].0[axis] == index
                            && cand[i] & (1 << color) != 0
                    })
                    .collect();
                options.shuffle(&mut self.rng);
                for i in options {
                    self.place(i, color);
                    if self.run() {
                        return true;
                    }
                    self.unplace(i, color);
                    if self.limit_hit {
                        return false;
                    }
                }
            }
        }
        false
    }
}
