//! Corner embedding of a layer-rainbow cube of order `m` into one of order
//! `n >= 2m`.
//!
//! Color `i` of the colored extension is identified with symbol `i − 1`, so
//! the corner colors `1..=m²` are the small cube's own symbols.

use std::fmt;
use std::time::{Duration, Instant};

use crate::amalgamation::{
    amalgam_profile, necessity_check, stage_one, stage_three, stage_two, validate_table,
};
use crate::cube::{
    base_cube, cell_index, contains_as_corner, verify, CubeArray, LayerRainbowCube, SymbolId,
    VerifyReport,
};
use crate::detachment::realize;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Coloring,
    Detachment,
    Assembly,
    Verification,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Coloring => "coloring",
            Stage::Detachment => "detachment",
            Stage::Assembly => "assembly",
            Stage::Verification => "verification",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct EmbedReport {
    pub input_order: usize,
    pub output_order: usize,
    pub verify: VerifyReport,
    pub corner_ok: bool,
    pub timings: Vec<(Stage, Duration)>,
}

impl EmbedReport {
    pub fn is_success(&self) -> bool {
        self.verify.is_valid() && self.corner_ok
    }
}

/// Embeds `small` in the corner `[0,m)³` of a layer-rainbow cube of order `n`.
///
/// Fails with [`Error::InfeasibleOrder`] when `n < 2m`. The output is a pure
/// function of `(small, n, seed)`.
pub fn embed(
    small: &LayerRainbowCube,
    n: usize,
    seed: u64,
) -> Result<(LayerRainbowCube, EmbedReport)> {
    let m = small.order();
    let check = necessity_check(m, n);
    if !check.feasible {
        return Err(Error::InfeasibleOrder(check.witness));
    }
    let mut timings = Vec::with_capacity(4);

    let array = if m == 1 {
        let start = Instant::now();
        let cube = embed_m1(small.cell(0, 0, 0), n)?;
        timings.push((Stage::Assembly, start.elapsed()));
        cube.into_array()
    } else {
        let start = Instant::now();
        let profile = amalgam_profile(m, n)?;
        let table = stage_three(stage_two(stage_one(&profile)?)?)?;
        if let Some(v) = validate_table(&table).violations.first() {
            return Err(Error::Internal(format!("coloring fails validation: {v}")));
        }
        timings.push((Stage::Coloring, start.elapsed()));

        let start = Instant::now();
        let ext = realize(&table, seed)?;
        timings.push((Stage::Detachment, start.elapsed()));

        let start = Instant::now();
        let mut cells: Vec<u32> = ext.raw().iter().map(|&c| c.wrapping_sub(1)).collect();
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    cells[cell_index(n, x, y, z)] = small.cell(x, y, z).0;
                }
            }
        }
        let array = CubeArray::new(n, cells)?;
        timings.push((Stage::Assembly, start.elapsed()));
        array
    };

    let start = Instant::now();
    let report = verify(&array);
    let corner_ok = contains_as_corner(&array, small);
    timings.push((Stage::Verification, start.elapsed()));
    let report = EmbedReport {
        input_order: m,
        output_order: n,
        verify: report,
        corner_ok,
        timings,
    };
    if !report.is_success() {
        return Err(Error::Internal(format!(
            "assembled cube fails verification (corner_ok = {corner_ok}, {} layer violations)",
            report.verify.violations.len()
        )));
    }
    Ok((LayerRainbowCube::new_unchecked(array), report))
}

/// The `m = 1` case: the base cube with symbols `base(0,0,0)` and `symbol`
/// swapped, so that the corner cell holds `symbol`.
pub fn embed_m1(symbol: SymbolId, n: usize) -> Result<LayerRainbowCube> {
    let base = base_cube(n)?;
    let size = (n * n) as u32;
    if symbol.0 >= size {
        return Err(Error::Malformed(format!(
            "symbol {symbol} out of range 0..{size}"
        )));
    }
    let at_corner = base.cell(0, 0, 0).0;
    if at_corner == symbol.0 {
        return Ok(base);
    }
    let perm: Vec<u32> = (0..size)
        .map(|s| match s {
            s if s == at_corner => symbol.0,
            s if s == symbol.0 => at_corner,
            s => s,
        })
        .collect();
    base.relabel(&perm)
}
