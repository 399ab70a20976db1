use std::fmt;
use std::fmt::Write as _;

use super::{amalgam_profile, AmalgamProfile, AmalgamVertex, EdgeKind};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "color,AYZ,BXZ,GXY,ABZ,AGY,BGX,ABG";

const AYZ: usize = 0;
const BXZ: usize = 1;
const GXY: usize = 2;
const ABZ: usize = 3;
const AGY: usize = 4;
const BGX: usize = 5;
const ABG: usize = 6;

/// Per-color multiplicity of every edge kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorMultTable {
    profile: AmalgamProfile,
    /// `rows[c - 1]` holds color `c`, indexed by [`EdgeKind::index`].
    rows: Vec<[u32; 7]>,
}

impl ColorMultTable {
    fn empty(profile: AmalgamProfile) -> Self {
        ColorMultTable {
            profile,
            rows: vec![[0; 7]; profile.color_count()],
        }
    }

    /// Builds a table from explicit rows (one per color `1..=n²`).
    pub fn from_rows(profile: AmalgamProfile, rows: Vec<[u32; 7]>) -> Result<Self> {
        if rows.len() != profile.color_count() {
            return Err(Error::Malformed(format!(
                "table needs {} rows, got {}",
                profile.color_count(),
                rows.len()
            )));
        }
        Ok(ColorMultTable { profile, rows })
    }

    pub fn profile(&self) -> &AmalgamProfile {
        &self.profile
    }

    /// `color` is 1-based.
    pub fn get(&self, color: usize, kind: EdgeKind) -> u32 {
        self.rows[color - 1][kind.index()]
    }

    pub fn row(&self, color: usize) -> &[u32; 7] {
        &self.rows[color - 1]
    }

    pub fn rows(&self) -> &[[u32; 7]] {
        &self.rows
    }

    pub fn set(&mut self, color: usize, kind: EdgeKind, value: u32) {
        self.rows[color - 1][kind.index()] = value;
    }

    pub fn column_sum(&self, kind: EdgeKind) -> u64 {
        self.rows.iter().map(|r| r[kind.index()] as u64).sum()
    }

    /// Degree of an amalgam vertex in color class `color`.
    pub fn degree(&self, color: usize, vertex: AmalgamVertex) -> u32 {
        EdgeKind::ALL
            .into_iter()
            .filter(|&k| vertex.incident(k))
            .map(|k| self.get(color, k))
            .sum()
    }

    fn kappa2(&self) -> std::ops::RangeInclusive<usize> {
        self.profile.kappa1_size() + 1..=self.profile.color_count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * 24 + CSV_HEADER.len() + 1);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            write!(out, "{}", i + 1).unwrap();
            for v in row {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageOneRegime {
    /// `n ≡ 0`, or `n ≡ 1` with `n >= 2m+2`, or `n ≡ 2` with `n >= 2m+3` (mod 3).
    Main,
    /// `n ≡ 1 (mod 3)` and `n ∈ {2m, 2m+1}`.
    CaseOne,
    /// `n ≡ 2 (mod 3)` and `n ∈ {2m, 2m+1, 2m+2}`.
    CaseTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringParameters {
    /// `⌈m − n/3⌉`
    pub a: i64,
    /// `max(a, 0)`
    pub a_clamped: i64,
    /// `n mod 3`
    pub ell: i64,
    /// `n − 2m`
    pub j: i64,
    /// `⌊m/2⌋`
    pub half_m: i64,
}

impl ColoringParameters {
    pub fn new(m: usize, n: usize) -> Self {
        let (m, n) = (m as i64, n as i64);
        let a = -(n - 3 * m).div_euclid(3);
        ColoringParameters {
            a,
            a_clamped: a.max(0),
            ell: n % 3,
            j: n - 2 * m,
            half_m: m / 2,
        }
    }

    pub fn regime(&self) -> StageOneRegime {
        match (self.ell, self.j) {
            (1, 0..=1) => StageOneRegime::CaseOne,
            (2, 0..=2) => StageOneRegime::CaseTwo,
            _ => StageOneRegime::Main,
        }
    }
}

/// Colors the `AYZ`, `BXZ` and `GXY` edges so that κ₁ gets none of them, each
/// κ₂ color gets at least `3m − n` in total, and no two of the three kinds
/// exceed `m` together in any color.
pub fn stage_one(profile: &AmalgamProfile) -> Result<ColorMultTable> {
    let (m, n) = (profile.m, profile.n);
    if m < 2 {
        return Err(Error::StageUndefined { m });
    }
    if n < 2 * m {
        return Err(Error::InfeasibleOrder(crate::error::NecessityWitness::new(
            m, n,
        )));
    }
    let params = ColoringParameters::new(m, n);
    let target = profile.total(EdgeKind::Ayz) as i64;
    let mut table = ColorMultTable::empty(*profile);
    let kappa2 = table.kappa2();

    match params.regime() {
        StageOneRegime::Main => {
            let cap = params.half_m;
            let floor = params.a_clamped;
            for c in kappa2.clone() {
                for k in [AYZ, BXZ, GXY] {
                    table.rows[c - 1][k] = floor as u32;
                }
            }
            for k in [AYZ, BXZ, GXY] {
                let colors = kappa2.clone().count() as i64;
                let mut remainder = target - floor * colors;
                if remainder < 0 {
                    return Err(Error::Internal(format!(
                        "stage one: lower bound {floor} overshoots column total {target}"
                    )));
                }
                // the round robin ends in an even split whenever no cap binds
                let (q, r) = (remainder / colors, remainder % colors);
                let even = |i: i64| floor + q + (i < r) as i64;
                let unblocked = kappa2.clone().zip(0..).all(|(c, i)| {
                    let row = &table.rows[c - 1];
                    let v = even(i);
                    v <= cap
                        && [AYZ, BXZ, GXY]
                            .iter()
                            .filter(|&&f| f != k)
                            .all(|&f| v + row[f] as i64 <= m as i64)
                });
                if unblocked {
                    for (c, i) in kappa2.clone().zip(0..) {
                        table.rows[c - 1][k] = even(i) as u32;
                    }
                    remainder = 0;
                }
                while remainder > 0 {
                    let mut progressed = false;
                    for c in kappa2.clone() {
                        if remainder == 0 {
                            break;
                        }
                        let row = &mut table.rows[c - 1];
                        let v = row[k] as i64;
                        let fits_pairs = [AYZ, BXZ, GXY]
                            .iter()
                            .filter(|&&f| f != k)
                            .all(|&f| v + 1 + row[f] as i64 <= m as i64);
                        if v < cap && fits_pairs {
                            row[k] += 1;
                            remainder -= 1;
                            progressed = true;
                        }
                    }
                    if !progressed {
                        return Err(Error::Internal(format!(
                            "stage one: {remainder} units of {} left with every color at its cap",
                            EdgeKind::ALL[k]
                        )));
                    }
                }
            }
        }
        regime => {
            let a = params.a;
            if a < 1 {
                return Err(Error::Internal(format!("stage one: a = {a} in {regime:?}")));
            }
            // residue of the color index that deviates from the majority value
            let (major, minor) = match regime {
                StageOneRegime::CaseOne => (a, a - 1),
                _ => (a - 1, a),
            };
            let deviant = |k: usize| match k {
                AYZ => 1,
                BXZ => 2,
                _ => 0,
            };
            let mut sums = [0i64; 3];
            for c in kappa2.clone() {
                for k in [AYZ, BXZ, GXY] {
                    let v = if c % 3 == deviant(k) { minor } else { major };
                    table.rows[c - 1][k] = v as u32;
                    sums[k] += v;
                }
            }
            if let Some(k) = (0..3).find(|&k| sums[k] > target) {
                return Err(Error::Internal(format!(
                    "stage one: residue pattern gives {} = {} above total {target}",
                    EdgeKind::ALL[k],
                    sums[k]
                )));
            }
            // raise a−1 to a, lowest color first, kinds in AYZ, BXZ, GXY order
            for c in kappa2.clone() {
                for k in [AYZ, BXZ, GXY] {
                    if sums[k] < target && table.rows[c - 1][k] as i64 == a - 1 {
                        table.rows[c - 1][k] += 1;
                        sums[k] += 1;
                    }
                }
            }
            if let Some(k) = (0..3).find(|&k| sums[k] != target) {
                return Err(Error::Internal(format!(
                    "stage one: top-up ended with {} = {} != {target}",
                    EdgeKind::ALL[k],
                    sums[k]
                )));
            }
        }
    }
    Ok(table)
}

/// Fills `ABZ`, `AGY`, `BGX` so that each κ₂ color has degree `m` at the old
/// vertices: `ABZ = m − AYZ − BXZ` and likewise.
pub fn stage_two(mut table: ColorMultTable) -> Result<ColorMultTable> {
    let m = table.profile.m as i64;
    if let Some(v) = condition_one(&table).into_iter().next() {
        return Err(Error::Internal(format!("stage two input: {v}")));
    }
    for c in table.kappa2() {
        let row = &mut table.rows[c - 1];
        for (target, e, f) in [(ABZ, AYZ, BXZ), (AGY, AYZ, GXY), (BGX, BXZ, GXY)] {
            let v = m - row[e] as i64 - row[f] as i64;
            if v < 0 {
                return Err(Error::Internal(format!(
                    "stage two: negative entry for color {c}"
                )));
            }
            row[target] = v as u32;
        }
    }
    for c in 1..=table.profile.kappa1_size() {
        let row = &mut table.rows[c - 1];
        row[ABZ] = 0;
        row[AGY] = 0;
        row[BGX] = 0;
    }
    Ok(table)
}

/// Fills `ABG`: `n − m` on κ₁, `n − 3m + AYZ + BXZ + GXY` on κ₂.
pub fn stage_three(mut table: ColorMultTable) -> Result<ColorMultTable> {
    let (m, n) = (table.profile.m as i64, table.profile.n as i64);
    if let Some(v) = condition_two(&table).into_iter().next() {
        return Err(Error::Internal(format!("stage three input: {v}")));
    }
    for c in 1..=table.profile.kappa1_size() {
        table.rows[c - 1][ABG] = (n - m) as u32;
    }
    for c in table.kappa2() {
        let row = &mut table.rows[c - 1];
        let v = n - 3 * m + row[AYZ] as i64 + row[BXZ] as i64 + row[GXY] as i64;
        if v < 0 {
            return Err(Error::Internal(format!(
                "stage three: negative entry for color {c}"
            )));
        }
        row[ABG] = v as u32;
    }
    Ok(table)
}

/// Runs the three stages for `(m, n)`, `m >= 2`, and validates the result.
pub fn color_amalgam(m: usize, n: usize) -> Result<ColorMultTable> {
    let profile = amalgam_profile(m, n)?;
    let table = stage_three(stage_two(stage_one(&profile)?)?)?;
    let report = validate_table(&table);
    if let Some(v) = report.violations.first() {
        return Err(Error::Internal(format!(
            "coloring for m = {m}, n = {n} fails validation: {v}"
        )));
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableViolation {
    RowCount {
        expected: usize,
        actual: usize,
    },
    ColumnSum {
        kind: EdgeKind,
        expected: u64,
        actual: u64,
    },
    /// A κ₁ color carries a kind it must not.
    Kappa1Entry {
        color: usize,
        kind: EdgeKind,
        value: u32,
    },
    SingleNewSumTooSmall {
        color: usize,
        sum: i64,
        bound: i64,
    },
    PairSumTooLarge {
        color: usize,
        kinds: (EdgeKind, EdgeKind),
        sum: i64,
    },
    DerivedEntry {
        color: usize,
        kind: EdgeKind,
        expected: i64,
        actual: u32,
    },
    Degree {
        color: usize,
        vertex: AmalgamVertex,
        expected: i64,
        actual: u32,
    },
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableViolation::RowCount { expected, actual } => {
                write!(f, "table has {actual} colors, expected {expected}")
            }
            TableViolation::ColumnSum {
                kind,
                expected,
                actual,
            } => write!(f, "column {kind} sums to {actual}, expected {expected}"),
            TableViolation::Kappa1Entry { color, kind, value } => {
                write!(f, "corner color {color} has {kind} = {value}, expected 0")
            }
            TableViolation::SingleNewSumTooSmall { color, sum, bound } => {
                write!(f, "color {color}: AYZ + BXZ + GXY = {sum} < {bound}")
            }
            TableViolation::PairSumTooLarge { color, kinds, sum } => {
                write!(
                    f,
                    "color {color}: {} + {} = {sum} exceeds m",
                    kinds.0, kinds.1
                )
            }
            TableViolation::DerivedEntry {
                color,
                kind,
                expected,
                actual,
            } => write!(f, "color {color}: {kind} = {actual}, expected {expected}"),
            TableViolation::Degree {
                color,
                vertex,
                expected,
                actual,
            } => write!(
                f,
                "color {color}: degree of {vertex} is {actual}, expected {expected}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub violations: Vec<TableViolation>,
}

impl TableReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for TableReport {
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

fn condition_one(table: &ColorMultTable) -> Vec<TableViolation> {
    let (m, n) = (table.profile.m as i64, table.profile.n as i64);
    let mut out = Vec::new();
    for c in 1..=table.profile.kappa1_size() {
        for kind in EdgeKind::SINGLE_NEW {
            let value = table.get(c, kind);
            if value != 0 {
                out.push(TableViolation::Kappa1Entry {
                    color: c,
                    kind,
                    value,
                });
            }
        }
    }
    for c in table.kappa2() {
        let row = table.row(c);
        let sum = (row[AYZ] + row[BXZ] + row[GXY]) as i64;
        if sum < 3 * m - n {
            out.push(TableViolation::SingleNewSumTooSmall {
                color: c,
                sum,
                bound: 3 * m - n,
            });
        }
        for (e, f) in [(AYZ, BXZ), (AYZ, GXY), (BXZ, GXY)] {
            let sum = (row[e] + row[f]) as i64;
            if sum > m {
                out.push(TableViolation::PairSumTooLarge {
                    color: c,
                    kinds: (EdgeKind::ALL[e], EdgeKind::ALL[f]),
                    sum,
                });
            }
        }
    }
    out
}

fn condition_two(table: &ColorMultTable) -> Vec<TableViolation> {
    let m = table.profile.m as i64;
    let mut out = Vec::new();
    for c in 1..=table.profile.color_count() {
        let row = table.row(c);
        let kappa1 = table.profile.is_kappa1(c);
        for (target, e, f) in [(ABZ, AYZ, BXZ), (AGY, AYZ, GXY), (BGX, BXZ, GXY)] {
            let expected = if kappa1 {
                0
            } else {
                m - row[e] as i64 - row[f] as i64
            };
            if row[target] as i64 != expected {
                out.push(TableViolation::DerivedEntry {
                    color: c,
                    kind: EdgeKind::ALL[target],
                    expected,
                    actual: row[target],
                });
            }
        }
    }
    out
}

/// Checks the table against every identity a finished coloring satisfies:
/// column totals, both coloring conditions, the `ABG` rule, and the per-color
/// degrees (`m` / `0` at old vertices on κ₂ / κ₁, `n − m` at new vertices).
pub fn validate_table(table: &ColorMultTable) -> TableReport {
    let p = &table.profile;
    let (m, n) = (p.m as i64, p.n as i64);
    let mut violations = Vec::new();
    if table.rows.len() != p.color_count() {
        violations.push(TableViolation::RowCount {
            expected: p.color_count(),
            actual: table.rows.len(),
        });
        return TableReport { violations };
    }
    for kind in EdgeKind::ALL {
        let actual = table.column_sum(kind);
        if actual != p.total(kind) {
            violations.push(TableViolation::ColumnSum {
                kind,
                expected: p.total(kind),
                actual,
            });
        }
    }
    violations.extend(condition_one(table));
    violations.extend(condition_two(table));
    let incidence = AmalgamVertex::ALL.map(|v| EdgeKind::ALL.map(|k| v.incident(k) as u32));
    for c in 1..=p.color_count() {
        let row = table.row(c);
        let kappa1 = p.is_kappa1(c);
        let expected_abg = if kappa1 {
            n - m
        } else {
            n - 3 * m + (row[AYZ] + row[BXZ] + row[GXY]) as i64
        };
        if row[ABG] as i64 != expected_abg {
            violations.push(TableViolation::DerivedEntry {
                color: c,
                kind: EdgeKind::Abg,
                expected: expected_abg,
                actual: row[ABG],
            });
        }
        for (vertex, incident) in AmalgamVertex::ALL.into_iter().zip(&incidence) {
            let expected = match (vertex.is_new(), kappa1) {
                (true, _) => n - m,
                (false, true) => 0,
                (false, false) => m,
            };
            let actual: u32 = row.iter().zip(incident).map(|(v, i)| v * i).sum();
            if actual as i64 != expected {
                violations.push(TableViolation::Degree {
                    color: c,
                    vertex,
                    expected,
                    actual,
                });
            }
        }
    }
    TableReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds3(t: &ColorMultTable, c: usize) -> [u32; 3] {
        [
            t.get(c, EdgeKind::Ayz),
            t.get(c, EdgeKind::Bxz),
            t.get(c, EdgeKind::Gxy),
        ]
    }

    #[test]
    fn parameters() {
        let p = ColoringParameters::new(2, 4);
        assert_eq!((p.a, p.ell, p.j, p.half_m), (1, 1, 0, 1));
        assert_eq!(p.regime(), StageOneRegime::CaseOne);

        let p = ColoringParameters::new(2, 6);
        assert_eq!((p.a, p.a_clamped), (0, 0));
        assert_eq!(p.regime(), StageOneRegime::Main);

        let p = ColoringParameters::new(3, 8);
        assert_eq!((p.a, p.j), (1, 2));
        assert_eq!(p.regime(), StageOneRegime::CaseTwo);

        // a = ⌈m − n/3⌉ with a negative argument
        let p = ColoringParameters::new(2, 11);
        assert_eq!((p.a, p.a_clamped), (-1, 0));
        assert_eq!(p.regime(), StageOneRegime::Main);

        // n ≡ 1 with n = 2m + 2 is the main case
        assert_eq!(
            ColoringParameters::new(4, 10).regime(),
            StageOneRegime::Main
        );
        // n ≡ 2 with n = 2m + 3 is the main case
        assert_eq!(
            ColoringParameters::new(4, 11).regime(),
            StageOneRegime::Main
        );
        assert_eq!(
            ColoringParameters::new(3, 8).regime(),
            StageOneRegime::CaseTwo
        );
    }

    #[test]
    fn parameter_bounds_hold_on_grid() {
        for m in 2..=50i64 {
            for n in 2 * m..=150 {
                let p = ColoringParameters::new(m as usize, n as usize);
                let ceil_m3 = (m + 2) / 3;
                assert!(p.a <= ceil_m3);
                // max(a, m²/(m+n)) ≤ ⌊m/2⌋ with the rational compared exactly
                assert!(p.a <= p.half_m);
                assert!(m * m <= p.half_m * (m + n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn stage_one_two_four() {
        let profile = amalgam_profile(2, 4).unwrap();
        let t = stage_one(&profile).unwrap();
        // κ₂ = colors 5..=16; pattern alone already reaches the totals
        let expect = |c: usize| -> [u32; 3] {
            [
                (c % 3 != 1) as u32,
                (c % 3 != 2) as u32,
                (c % 3 != 0) as u32,
            ]
        };
        for c in 1..=4 {
            assert_eq!(kinds3(&t, c), [0, 0, 0]);
        }
        for c in 5..=16 {
            let v = kinds3(&t, c);
            assert_eq!(v, expect(c), "color {c}");
            assert_eq!(v.iter().sum::<u32>(), 2);
        }
        for k in EdgeKind::SINGLE_NEW {
            assert_eq!(t.column_sum(k), 8);
        }
    }

    #[test]
    fn stage_one_main_case_two_six() {
        let profile = amalgam_profile(2, 6).unwrap();
        let t = stage_one(&profile).unwrap();
        for c in 5..=36 {
            assert!(kinds3(&t, c).iter().all(|&v| v <= 1));
        }
        for k in EdgeKind::SINGLE_NEW {
            assert_eq!(t.column_sum(k), 16);
        }
        // round robin: the first 16 κ₂ colors take one unit of every kind
        assert_eq!(kinds3(&t, 5), [1, 1, 1]);
        assert_eq!(kinds3(&t, 20), [1, 1, 1]);
        assert_eq!(kinds3(&t, 21), [0, 0, 0]);
    }

    #[test]
    fn stage_one_case_two_three_eight() {
        let profile = amalgam_profile(3, 8).unwrap();
        let t = stage_one(&profile).unwrap();
        for c in 10..=64 {
            let v = kinds3(&t, c);
            assert!(v.iter().all(|&x| x <= 1), "color {c}: {v:?}");
            assert!(v.iter().sum::<u32>() >= 1);
        }
        for k in EdgeKind::SINGLE_NEW {
            assert_eq!(t.column_sum(k), 45);
        }
        assert!(condition_one(&t).is_empty());
    }

    #[test]
    fn stage_one_rejects_m_one() {
        let profile = amalgam_profile(1, 3).unwrap();
        assert!(matches!(
            stage_one(&profile),
            Err(Error::StageUndefined { m: 1 })
        ));
    }

    #[test]
    fn stage_two_values() {
        let profile = amalgam_profile(2, 4).unwrap();
        let t = stage_two(stage_one(&profile).unwrap()).unwrap();
        for c in 5..=16 {
            let abz = t.get(c, EdgeKind::Abz);
            let expect = 2 - t.get(c, EdgeKind::Ayz) - t.get(c, EdgeKind::Bxz);
            assert_eq!(abz, expect);
        }
        // color 6 ≡ 0: AYZ = BXZ = 1 → ABZ = 0; color 5 ≡ 2: AYZ = 1, BXZ = 0 → ABZ = 1
        assert_eq!(t.get(6, EdgeKind::Abz), 0);
        assert_eq!(t.get(5, EdgeKind::Abz), 1);
        for c in 1..=4 {
            for k in [EdgeKind::Abz, EdgeKind::Agy, EdgeKind::Bgx] {
                assert_eq!(t.get(c, k), 0);
            }
        }
        for k in [EdgeKind::Abz, EdgeKind::Agy, EdgeKind::Bgx] {
            assert_eq!(t.column_sum(k), 8);
        }
    }

    #[test]
    fn stage_two_rejects_broken_condition_one() {
        let profile = amalgam_profile(2, 4).unwrap();
        let mut t = stage_one(&profile).unwrap();
        t.set(5, EdgeKind::Bxz, 2);
        assert!(matches!(stage_two(t), Err(Error::Internal(_))));
    }

    #[test]
    fn stage_three_values() {
        let t = color_amalgam(2, 4).unwrap();
        for c in 1..=4 {
            assert_eq!(t.get(c, EdgeKind::Abg), 2);
        }
        for c in 5..=16 {
            assert_eq!(t.get(c, EdgeKind::Abg), 0);
        }
        assert_eq!(t.column_sum(EdgeKind::Abg), 8);
    }

    #[test]
    fn pipeline_tables_validate() {
        for (m, n) in [(2, 4), (3, 6), (2, 5), (3, 7), (5, 13), (7, 20)] {
            let t = color_amalgam(m, n).unwrap();
            assert!(validate_table(&t).is_valid(), "m={m} n={n}");
        }
    }

    #[test]
    fn perturbed_abg_breaks_degrees() {
        let mut t = color_amalgam(2, 4).unwrap();
        t.set(1, EdgeKind::Abg, 3);
        t.set(2, EdgeKind::Abg, 1);
        let r = validate_table(&t);
        assert!(!r.is_valid());
        // column sum survives; the α, β, γ degrees of both colors break
        assert!(!r
            .violations
            .iter()
            .any(|v| matches!(v, TableViolation::ColumnSum { .. })));
        let degree_breaks = r
            .violations
            .iter()
            .filter(|v| matches!(v, TableViolation::Degree { vertex, .. } if vertex.is_new()))
            .count();
        assert_eq!(degree_breaks, 6);
    }

    #[test]
    fn csv_dump() {
        let t = color_amalgam(2, 4).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.next(), Some("1,0,0,0,0,0,0,2"));
        assert_eq!(lines.clone().count(), 15);
        assert_eq!(lines.nth(3), Some("5,1,0,1,1,0,1,0"));
    }
}
