//! Empty rectangles, pentagons and hexagons.
//!
//! All planar coordinates are in eighths of a grid unit: vertical circle `k`
//! sits at `x = 8k`, horizontal circle `r` at `y = 8r`, marking centers at
//! `8k + 4`. Every polygon is stored as a region between a left and a right
//! boundary profile over a cyclic interval of heights.

mod combined;
mod rect;
mod shapes;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

pub use combined::{BuildError, CombinedDiagram, Designation, PositionClass, Side};
pub use rect::{empty_rectangles, rectangles_from, Rect};
pub use shapes::{hexagons, hexagons_from, pentagons, pentagons_from, HexOrder, Vertex};

/// One of the curves a boundary side can follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Curve {
    /// A straight vertical circle at `x` (eighths, possibly shifted by a
    /// multiple of `8n` to unwrap the torus).
    Straight(i64),
    /// The straight distinguished circle of the positive grid.
    Beta,
    /// The bulged distinguished circle of the negative grid.
    Gamma,
}

/// A boundary side as a function of height: `pieces[i].1` applies from height
/// `pieces[i].0` up to the next switch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    pub pieces: Vec<(i64, Curve)>,
}

impl Profile {
    pub fn straight(x8: i64) -> Self {
        Self { pieces: alloc::vec![(i64::MIN, Curve::Straight(x8))] }
    }

    pub fn curve_at(&self, y8: i64) -> Curve {
        self.pieces.iter().rev().find(|(start, _)| *start <= y8).map(|p| p.1).unwrap_or(self.pieces[0].1)
    }

    /// Switch heights strictly after the first piece.
    pub fn switches(&self) -> impl Iterator<Item = i64> + '_ {
        self.pieces.iter().skip(1).map(|p| p.0)
    }
}

/// Evaluates `Beta` and `Gamma` at a height.
pub trait Geometry {
    fn n(&self) -> usize;
    fn beta_x8(&self) -> i64;
    fn gamma_x8(&self, y8: i64) -> i64;

    fn curve_x8(&self, curve: Curve, y8: i64) -> i64 {
        match curve {
            Curve::Straight(x) => x,
            Curve::Beta => self.beta_x8(),
            Curve::Gamma => self.gamma_x8(y8.rem_euclid(8 * self.n() as i64)),
        }
    }
}

/// Geometry of a plain grid: no distinguished circles.
pub(crate) struct Plain(pub usize);

impl Geometry for Plain {
    fn n(&self) -> usize {
        self.0
    }

    fn beta_x8(&self) -> i64 {
        unreachable!("plain grids have no distinguished circle")
    }

    fn gamma_x8(&self, _y8: i64) -> i64 {
        unreachable!("plain grids have no distinguished circle")
    }
}

/// A disk given by two boundary profiles over the heights
/// `8 * bottom_row .. 8 * (bottom_row + height)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    pub bottom_row: usize,
    pub height: usize,
    pub left: Profile,
    pub right: Profile,
}

impl Region {
    fn lift(&self, n: usize, y8: i64) -> Option<i64> {
        let period = 8 * n as i64;
        let lo = 8 * self.bottom_row as i64;
        let hi = lo + 8 * self.height as i64;
        let mut y = y8.rem_euclid(period);
        if y <= lo {
            y += period;
        }
        (y < hi).then_some(y)
    }

    /// Whether the torus point `(x8, y8)` lies in the open region.
    pub fn contains<G: Geometry>(&self, geo: &G, x8: i64, y8: i64) -> bool {
        let n = geo.n();
        let Some(y) = self.lift(n, y8) else { return false };
        let left = geo.curve_x8(self.left.curve_at(y), y);
        let right = geo.curve_x8(self.right.curve_at(y), y);
        let period = 8 * n as i64;
        // smallest translate of x8 to the right of the left side
        let x = left + 1 + (x8 - left - 1).rem_euclid(period);
        x < right
    }

    /// Lift a crossing height into the open vertical extent.
    pub fn lift_height(&self, n: usize, y8: i64) -> Option<i64> {
        self.lift(n, y8)
    }

    /// Bit `r` is set when the marking in row `r` of `rows` lies inside.
    pub fn marking_mask<G: Geometry>(&self, geo: &G, rows: &[usize]) -> u32 {
        let mut mask = 0;
        for (col, &r) in rows.iter().enumerate() {
            if self.contains(geo, 8 * col as i64 + 4, 8 * r as i64 + 4) {
                mask |= 1 << r;
            }
        }
        mask
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolygonKind {
    Rectangle,
    PentagonS,
    PentagonT,
    HexagonSt,
    HexagonTs,
}

impl PolygonKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Rectangle => "rectangle",
            Self::PentagonS => "pentagon_s",
            Self::PentagonT => "pentagon_t",
            Self::HexagonSt => "hexagon_st",
            Self::HexagonTs => "hexagon_ts",
        }
    }
}

/// An empty polygon between two states, with the rows of the O and X
/// markings it contains as bit masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon {
    pub kind: PolygonKind,
    pub from: u32,
    pub to: u32,
    pub region: Region,
    pub o_mask: u32,
    pub x_mask: u32,
}

impl Polygon {
    pub fn o_count(&self) -> u32 {
        self.o_mask.count_ones()
    }

    pub fn x_count(&self) -> u32 {
        self.x_mask.count_ones()
    }

    /// Text dump used by golden files: kind, endpoints, extent and the band
    /// profile table.
    pub fn dump(&self, from: &[usize], to: &[usize]) -> String {
        let mut s = String::new();
        let list = |v: &[usize]| v.iter().map(|r| alloc::format!("{r}")).collect::<Vec<_>>().join(",");
        let _ = writeln!(s, "kind {}", self.kind.name());
        let _ = writeln!(s, "from {}", list(from));
        let _ = writeln!(s, "to {}", list(to));
        let _ = writeln!(s, "rows {}+{}", self.region.bottom_row, self.region.height);
        for (name, p) in [("left", &self.region.left), ("right", &self.region.right)] {
            let _ = write!(s, "{name}");
            for (i, (start, c)) in p.pieces.iter().enumerate() {
                let label = match c {
                    Curve::Straight(x) => alloc::format!("straight({})", x.div_euclid(8)),
                    Curve::Beta => "beta".into(),
                    Curve::Gamma => "gamma".into(),
                };
                if i == 0 {
                    let _ = write!(s, " {label}");
                } else {
                    let _ = write!(s, " |{start}| {label}");
                }
            }
            s.push('\n');
        }
        let _ = writeln!(s, "o {:#b} x {:#b}", self.o_mask, self.x_mask);
        s
    }
}

/// Positions of the state components, as eighths, excluding the given columns.
pub(crate) fn other_points(sigma: &[u8], skip: [usize; 2]) -> impl Iterator<Item = (i64, i64)> + '_ {
    sigma.iter().enumerate().filter(move |(k, _)| !skip.contains(k)).map(|(k, &r)| (8 * k as i64, 8 * r as i64))
}
