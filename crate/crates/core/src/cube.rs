//! Cube arrays, the layer-rainbow verifier, and the basic constructions.
//!
//! Cells are addressed as `(x, y, z)` with each coordinate in `[0, n)`.
//! Symbols are stored 0-based in `[0, n²)`; the text format shifts them to
//! 1-based (see [`crate::format`]).

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A symbol of an order-`n` cube, `0 <= value < n²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        };
        f.write_str(s)
    }
}

#[inline]
pub(crate) fn cell_index(n: usize, x: usize, y: usize, z: usize) -> usize {
    (x * n + y) * n + z
}

/// An `n × n × n` array with every entry in `[0, n²)`.
///
/// This is a *candidate*: shape and symbol range are checked on construction,
/// the rainbow property is not. See [`verify`] and [`LayerRainbowCube`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubeArray {
    order: usize,
    cells: Vec<u32>,
}

impl CubeArray {
    /// `cells` is laid out x-major: index `(x·n + y)·n + z`.
    pub fn new(order: usize, cells: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Malformed("cube order must be positive".into()));
        }
        let expected = order
            .checked_pow(3)
            .ok_or_else(|| Error::Malformed(format!("order {order} is too large")))?;
        if cells.len() != expected {
            return Err(Error::Malformed(format!(
                "order {order} cube needs {expected} cells, got {}",
                cells.len()
            )));
        }
        let bound = (order * order) as u64;
        if let Some((i, &s)) = cells.iter().enumerate().find(|(_, &s)| s as u64 >= bound) {
            let (x, y, z) = (i / (order * order), (i / order) % order, i % order);
            return Err(Error::Malformed(format!(
                "symbol {s} at ({x}, {y}, {z}) is out of range 0..{bound}"
            )));
        }
        Ok(CubeArray { order, cells })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize, usize) -> u32) -> Result<Self> {
        let mut cells = Vec::with_capacity(order * order * order);
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    cells.push(f(x, y, z));
                }
            }
        }
        CubeArray::new(order, cells)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cell(&self, x: usize, y: usize, z: usize) -> SymbolId {
        SymbolId(self.cells[cell_index(self.order, x, y, z)])
    }

    /// Raw cells in x-major order.
    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    /// Reorders the layers along `axis`: layer `i` of the result is layer
    /// `perm[i]` of `self`.
    pub fn permute_axis(&self, axis: Axis, perm: &[usize]) -> Result<CubeArray> {
        let n = self.order;
        check_bijection(perm, n)?;
        CubeArray::from_fn(n, |x, y, z| {
            let mut c = [x, y, z];
            c[axis.index()] = perm[c[axis.index()]];
            self.cells[cell_index(n, c[0], c[1], c[2])]
        })
    }
}

/// One failing `(axis, layer, symbol)` combination: the symbol occurs `count`
/// times in that layer instead of once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerViolation {
    pub axis: Axis,
    pub layer: usize,
    pub symbol: SymbolId,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub order: usize,
    pub violations: Vec<LayerViolation>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid: order {} layer-rainbow latin cube", self.order);
        }
        writeln!(
            f,
            "invalid: order {} cube has {} layer violations",
            self.order,
            self.violations.len()
        )?;
        for v in &self.violations {
            // 1-based symbol to match the text format
            writeln!(
                f,
                "  {} = {}: symbol {} occurs {} times",
                v.axis,
                v.layer,
                v.symbol.0 + 1,
                v.count
            )?;
        }
        Ok(())
    }
}

/// Checks that each of the `3n` layers contains every symbol exactly once.
pub fn verify(cube: &CubeArray) -> VerifyReport {
    let n = cube.order;
    let nn = n * n;
    let mut violations = Vec::new();
    let mut counts = vec![0u32; nn];
    for axis in Axis::ALL {
        for layer in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for u in 0..n {
                for v in 0..n {
                    let (x, y, z) = match axis {
                        Axis::X => (layer, u, v),
                        Axis::Y => (u, layer, v),
                        Axis::Z => (u, v, layer),
                    };
                    counts[cube.cells[cell_index(n, x, y, z)] as usize] += 1;
                }
            }
            for (s, &count) in counts.iter().enumerate() {
                if count != 1 {
                    violations.push(LayerViolation {
                        axis,
                        layer,
                        symbol: SymbolId(s as u32),
                        count,
                    });
                }
            }
        }
    }
    VerifyReport {
        order: n,
        violations,
    }
}

/// A cube array that has passed [`verify`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LayerRainbowCube(CubeArray);

impl LayerRainbowCube {
    pub fn new(array: CubeArray) -> Result<Self> {
        let report = verify(&array);
        if report.is_valid() {
            Ok(LayerRainbowCube(array))
        } else {
            Err(Error::NotRainbow(report))
        }
    }

    /// Skips verification in release builds.
    pub(crate) fn new_unchecked(array: CubeArray) -> Self {
        debug_assert!(verify(&array).is_valid());
        LayerRainbowCube(array)
    }

    pub fn as_array(&self) -> &CubeArray {
        &self.0
    }

    pub fn into_array(self) -> CubeArray {
        self.0
    }

    /// Replaces every symbol `s` by `perm[s]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<LayerRainbowCube> {
        let n = self.0.order;
        let as_usize: Vec<usize> = perm.iter().map(|&p| p as usize).collect();
        check_bijection(&as_usize, n * n)?;
        let cells = self.0.cells.iter().map(|&s| perm[s as usize]).collect();
        Ok(LayerRainbowCube(CubeArray { order: n, cells }))
    }

    pub fn permute_axis(&self, axis: Axis, perm: &[usize]) -> Result<LayerRainbowCube> {
        Ok(LayerRainbowCube(self.0.permute_axis(axis, perm)?))
    }
}

impl Deref for LayerRainbowCube {
    type Target = CubeArray;

    fn deref(&self) -> &CubeArray {
        &self.0
    }
}

fn check_bijection(perm: &[usize], size: usize) -> Result<()> {
    if perm.len() != size {
        return Err(Error::NotBijection {
            size,
            reason: format!("length is {}", perm.len()),
        });
    }
    let mut seen = vec![false; size];
    for &p in perm {
        if p >= size {
            return Err(Error::NotBijection {
                size,
                reason: format!("value {p} out of range"),
            });
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::NotBijection {
                size,
                reason: format!("value {p} repeated"),
            });
        }
    }
    Ok(())
}

/// The modular cube `cell(x, y, z) = n·((x + z) mod n) + ((y + z) mod n)`.
///
/// Fixing `z` gives a bijection `(x, y) ↦ symbol`; fixing `x` (or `y`) the
/// map `(y, z) ↦ ((x+z) mod n, (y+z) mod n)` is again a bijection.
pub fn base_cube(n: usize) -> Result<LayerRainbowCube> {
    if n == 0 {
        return Err(Error::Malformed("cube order must be positive".into()));
    }
    let array = CubeArray::from_fn(n, |x, y, z| (n * ((x + z) % n) + (y + z) % n) as u32)?;
    Ok(LayerRainbowCube::new_unchecked(array))
}

/// True when `big` agrees with `small` on the corner `[0, m)³`.
pub fn contains_as_corner(big: &CubeArray, small: &CubeArray) -> bool {
    let m = small.order();
    if m > big.order() {
        return false;
    }
    (0..m).all(|x| (0..m).all(|y| (0..m).all(|z| big.cell(x, y, z) == small.cell(x, y, z))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_order2() -> CubeArray {
        // z = 0: [[1,2],[3,4]], z = 1: [[4,3],[2,1]] (1-based)
        let layers = [[[1, 2], [3, 4]], [[4, 3], [2, 1]]];
        CubeArray::from_fn(2, |x, y, z| layers[z][x][y] - 1).unwrap()
    }

    #[test]
    fn order_two_rainbow_example() {
        assert!(verify(&sample_order2()).is_valid());
    }

    #[test]
    fn layer_latin_cube_is_not_rainbow() {
        let layers = [[[1, 2], [2, 1]], [[2, 1], [1, 2]]];
        let c = CubeArray::from_fn(2, |x, y, z| layers[z][x][y] - 1).unwrap();
        let r = verify(&c);
        assert!(!r.is_valid());
        // every one of the 6 layers misses symbols 3 and 4 and doubles 1 and 2
        assert_eq!(r.violations.len(), 6 * 4);
        assert!(r
            .violations
            .iter()
            .all(|v| (v.symbol.0 < 2 && v.count == 2) || (v.symbol.0 >= 2 && v.count == 0)));
    }

    #[test]
    fn order_one() {
        let c = CubeArray::new(1, vec![0]).unwrap();
        assert!(verify(&c).is_valid());
        assert_eq!(base_cube(1).unwrap().cells(), &[0]);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            CubeArray::new(2, vec![0; 7]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            CubeArray::new(2, vec![4; 8]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            CubeArray::new(0, vec![]),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn base_cube_order_two() {
        let c = base_cube(2).unwrap();
        // z = 0 layer [[0,1],[2,3]], z = 1 layer [[3,2],[1,0]]
        let expect = [[[0, 1], [2, 3]], [[3, 2], [1, 0]]];
        for z in 0..2 {
            for x in 0..2 {
                for y in 0..2 {
                    assert_eq!(c.cell(x, y, z).0, expect[z][x][y]);
                }
            }
        }
    }

    #[test]
    fn base_cube_sweep() {
        for n in 1..=30 {
            assert!(
                verify(base_cube(n).unwrap().as_array()).is_valid(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn relabel_identity_and_swap() {
        let c = base_cube(2).unwrap();
        assert_eq!(c.relabel(&[0, 1, 2, 3]).unwrap(), c);
        let swapped = c.relabel(&[3, 1, 2, 0]).unwrap();
        assert!(verify(&swapped).is_valid());
        assert_eq!(swapped.cell(0, 0, 0).0, 3);
    }

    #[test]
    fn relabel_rejects_non_bijections() {
        let c = base_cube(2).unwrap();
        assert!(matches!(
            c.relabel(&[0, 0, 1, 2]),
            Err(Error::NotBijection { .. })
        ));
        assert!(matches!(
            c.relabel(&[0, 1, 2]),
            Err(Error::NotBijection { .. })
        ));
        assert!(matches!(
            c.relabel(&[0, 1, 2, 9]),
            Err(Error::NotBijection { .. })
        ));
    }

    #[test]
    fn corner_containment() {
        let c = base_cube(4).unwrap();
        assert!(contains_as_corner(&c, &c));
        let small = base_cube(2).unwrap();
        // cell(1,1,1): 2·0 + 0 = 0 in the order-2 cube, 4·2 + 2 = 10 in the order-4 cube
        assert_eq!(small.cell(1, 1, 1).0, 0);
        assert_eq!(c.cell(1, 1, 1).0, 10);
        assert!(!contains_as_corner(&c, &small));
        assert!(!contains_as_corner(&small, &c));
    }

    #[test]
    fn single_defect_is_reported_on_all_three_axes() {
        let c = base_cube(3).unwrap();
        let mut cells = c.cells().to_vec();
        let old = cells[0];
        cells[0] = (old + 1) % 9;
        let r = verify(&CubeArray::new(3, cells).unwrap());
        // one symbol doubled and one missing in the three layers through (0,0,0)
        assert_eq!(r.violations.len(), 6);
        for axis in Axis::ALL {
            assert_eq!(r.violations.iter().filter(|v| v.axis == axis).count(), 2);
            assert!(r
                .violations
                .iter()
                .filter(|v| v.axis == axis)
                .all(|v| v.layer == 0));
        }
    }
}
