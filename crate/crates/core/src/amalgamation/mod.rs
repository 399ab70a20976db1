//! The amalgamated hypergraph of `K³(n,n,n) ∖ K³(m,m,m)` and its coloring.
//!
//! Collapsing the old indices `[0, m)` of each axis to one vertex (`x`, `y`,
//! `z`) and the new indices `[m, n)` to another (`α`, `β`, `γ`) turns the
//! extension cells into a six-vertex multigraph with seven edge kinds. A
//! coloring of that multigraph is recorded as a [`ColorMultTable`]: for each
//! of the `n²` colors, how many edges of each kind it receives.

mod coloring;

use std::fmt;

use crate::error::{Error, NecessityWitness, Result};

pub use coloring::{
    color_amalgam, stage_one, stage_three, stage_two, validate_table, ColorMultTable,
    ColoringParameters, StageOneRegime, TableReport, TableViolation, CSV_HEADER,
};

/// Classification of an extension cell by which of its coordinates are new
/// (`>= m`). Greek letters mark new coordinates, Latin letters old ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// x new; y, z old
    Ayz,
    /// y new; x, z old
    Bxz,
    /// z new; x, y old
    Gxy,
    /// x, y new; z old
    Abz,
    /// x, z new; y old
    Agy,
    /// y, z new; x old
    Bgx,
    /// all new
    Abg,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 7] = [
        EdgeKind::Ayz,
        EdgeKind::Bxz,
        EdgeKind::Gxy,
        EdgeKind::Abz,
        EdgeKind::Agy,
        EdgeKind::Bgx,
        EdgeKind::Abg,
    ];

    /// Kinds with exactly one new coordinate.
    pub const SINGLE_NEW: [EdgeKind; 3] = [EdgeKind::Ayz, EdgeKind::Bxz, EdgeKind::Gxy];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Which of `(x, y, z)` lie in the new range.
    pub fn new_axes(self) -> [bool; 3] {
        match self {
            EdgeKind::Ayz => [true, false, false],
            EdgeKind::Bxz => [false, true, false],
            EdgeKind::Gxy => [false, false, true],
            EdgeKind::Abz => [true, true, false],
            EdgeKind::Agy => [true, false, true],
            EdgeKind::Bgx => [false, true, true],
            EdgeKind::Abg => [true, true, true],
        }
    }

    pub fn from_new_axes(new: [bool; 3]) -> Option<EdgeKind> {
        EdgeKind::ALL.into_iter().find(|k| k.new_axes() == new)
    }

    /// Kind of cell `(x, y, z)` for corner order `m`; `None` inside the corner.
    pub fn of_cell(x: usize, y: usize, z: usize, m: usize) -> Option<EdgeKind> {
        EdgeKind::from_new_axes([x >= m, y >= m, z >= m])
    }

    pub fn label(self) -> &'static str {
        match self {
            EdgeKind::Ayz => "AYZ",
            EdgeKind::Bxz => "BXZ",
            EdgeKind::Gxy => "GXY",
            EdgeKind::Abz => "ABZ",
            EdgeKind::Agy => "AGY",
            EdgeKind::Bgx => "BGX",
            EdgeKind::Abg => "ABG",
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The six vertices of the amalgam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AmalgamVertex {
    X,
    Y,
    Z,
    Alpha,
    Beta,
    Gamma,
}

impl AmalgamVertex {
    pub const ALL: [AmalgamVertex; 6] = [
        AmalgamVertex::X,
        AmalgamVertex::Y,
        AmalgamVertex::Z,
        AmalgamVertex::Alpha,
        AmalgamVertex::Beta,
        AmalgamVertex::Gamma,
    ];

    /// Axis index (0 = x, 1 = y, 2 = z).
    pub fn axis(self) -> usize {
        match self {
            AmalgamVertex::X | AmalgamVertex::Alpha => 0,
            AmalgamVertex::Y | AmalgamVertex::Beta => 1,
            AmalgamVertex::Z | AmalgamVertex::Gamma => 2,
        }
    }

    pub fn is_new(self) -> bool {
        matches!(
            self,
            AmalgamVertex::Alpha | AmalgamVertex::Beta | AmalgamVertex::Gamma
        )
    }

    pub fn incident(self, kind: EdgeKind) -> bool {
        kind.new_axes()[self.axis()] == self.is_new()
    }

    pub fn name(self) -> &'static str {
        match self {
            AmalgamVertex::X => "x",
            AmalgamVertex::Y => "y",
            AmalgamVertex::Z => "z",
            AmalgamVertex::Alpha => "alpha",
            AmalgamVertex::Beta => "beta",
            AmalgamVertex::Gamma => "gamma",
        }
    }
}

impl fmt::Display for AmalgamVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Total multiplicity of each edge kind in the amalgam.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmalgamProfile {
    pub m: usize,
    pub n: usize,
    totals: [u64; 7],
}

impl AmalgamProfile {
    pub fn total(&self, kind: EdgeKind) -> u64 {
        self.totals[kind.index()]
    }

    pub fn edge_count(&self) -> u64 {
        self.totals.iter().sum()
    }

    /// `|κ₁| = m²`, the corner colors `1..=m²`.
    pub fn kappa1_size(&self) -> usize {
        self.m * self.m
    }

    /// `|κ₂| = n² − m²`, the new colors `m²+1..=n²`.
    pub fn kappa2_size(&self) -> usize {
        self.n * self.n - self.m * self.m
    }

    pub fn color_count(&self) -> usize {
        self.n * self.n
    }

    /// Colors are 1-based; `1..=m²` form κ₁.
    pub fn is_kappa1(&self, color: usize) -> bool {
        (1..=self.kappa1_size()).contains(&color)
    }
}

pub fn amalgam_profile(m: usize, n: usize) -> Result<AmalgamProfile> {
    if m == 0 {
        return Err(Error::Malformed("corner order must be positive".into()));
    }
    if n < 2 * m {
        return Err(Error::InfeasibleOrder(NecessityWitness::new(m, n)));
    }
    let (mm, d) = (m as u64, (n - m) as u64);
    let single = mm * mm * d;
    let double = mm * d * d;
    let triple = d * d * d;
    Ok(AmalgamProfile {
        m,
        n,
        totals: [single, single, single, double, double, double, triple],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NecessityCheck {
    /// `n >= 2m`.
    pub feasible: bool,
    pub witness: NecessityWitness,
}

/// Decides whether an order-`m` cube can sit in the corner of an order-`n`
/// one. The verdict is `n >= 2m`; the counting inequality is attached as an
/// explanation (it is degenerate at `n = m`).
pub fn necessity_check(m: usize, n: usize) -> NecessityCheck {
    NecessityCheck {
        feasible: n >= 2 * m,
        witness: NecessityWitness::new(m, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_two_four() {
        let p = amalgam_profile(2, 4).unwrap();
        for k in EdgeKind::ALL {
            assert_eq!(p.total(k), 8, "{k}");
        }
        assert_eq!(p.edge_count(), 56);
        assert_eq!(p.kappa2_size(), 12);
    }

    #[test]
    fn profile_one_two() {
        let p = amalgam_profile(1, 2).unwrap();
        assert_eq!(p.total(EdgeKind::Ayz), 1);
        assert_eq!(p.total(EdgeKind::Bgx), 1);
        assert_eq!(p.total(EdgeKind::Abg), 1);
        assert_eq!(p.edge_count(), 7);
    }

    #[test]
    fn profile_sums_to_difference_of_cubes() {
        for m in 1..20usize {
            for n in 2 * m..2 * m + 15 {
                let p = amalgam_profile(m, n).unwrap();
                assert_eq!(p.edge_count(), (n * n * n - m * m * m) as u64);
            }
            assert_eq!(
                amalgam_profile(m, 2 * m).unwrap().edge_count(),
                7 * (m as u64).pow(3)
            );
        }
    }

    #[test]
    fn profile_rejects_small_target() {
        assert!(matches!(
            amalgam_profile(2, 3),
            Err(Error::InfeasibleOrder(_))
        ));
        assert!(matches!(amalgam_profile(0, 3), Err(Error::Malformed(_))));
    }

    #[test]
    fn necessity() {
        let c = necessity_check(2, 3);
        assert!(!c.feasible);
        assert_eq!(
            (c.witness.new_block_cells, c.witness.required_cells),
            (1, 4)
        );
        assert!(!c.witness.inequality_holds());

        let c = necessity_check(2, 4);
        assert!(c.feasible);
        assert_eq!(
            (c.witness.new_block_cells, c.witness.required_cells),
            (8, 8)
        );

        for m in 1..10 {
            let c = necessity_check(m, m);
            assert!(!c.feasible);
            assert!(c.witness.inequality_holds());
        }
        // away from n = m the inequality and the verdict agree
        for m in 1..15 {
            for n in m + 1..4 * m {
                let c = necessity_check(m, n);
                assert_eq!(c.feasible, c.witness.inequality_holds(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn kinds_and_vertices() {
        assert_eq!(EdgeKind::of_cell(0, 0, 0, 1), None);
        assert_eq!(EdgeKind::of_cell(1, 0, 0, 1), Some(EdgeKind::Ayz));
        assert_eq!(EdgeKind::of_cell(0, 1, 1, 1), Some(EdgeKind::Bgx));
        assert_eq!(EdgeKind::of_cell(3, 3, 3, 2), Some(EdgeKind::Abg));
        for k in EdgeKind::ALL {
            // every kind meets each axis exactly once
            for axis in 0..3 {
                let hits = AmalgamVertex::ALL
                    .iter()
                    .filter(|v| v.axis() == axis && v.incident(k))
                    .count();
                assert_eq!(hits, 1);
            }
        }
        assert!(AmalgamVertex::X.incident(EdgeKind::Bgx));
        assert!(!AmalgamVertex::X.incident(EdgeKind::Ayz));
    }
}
