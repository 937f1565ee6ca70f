use alloc::vec::Vec;

use super::{other_points, Plain, Profile, Region};
use crate::grid::GridDiagram;
use crate::states::GridState;

/// An empty rectangle from `from` to `to` on a single grid.
///
/// The rectangle spans columns `left_col .. right_col` (with `right_col`
/// possibly `>= n` when it wraps) and rows `bottom_row .. bottom_row + height`
/// cyclically. Its lower-left and upper-right corners belong to `from`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub from: u32,
    pub to: u32,
    pub left_col: usize,
    pub right_col: usize,
    pub bottom_row: usize,
    pub height: usize,
    pub o_mask: u32,
    pub x_mask: u32,
}

impl Rect {
    pub fn wraps_columns(&self, n: usize) -> bool {
        self.right_col >= n
    }

    pub fn wraps_rows(&self, n: usize) -> bool {
        self.bottom_row + self.height > n
    }

    pub fn o_count(&self) -> u32 {
        self.o_mask.count_ones()
    }

    pub fn x_count(&self) -> u32 {
        self.x_mask.count_ones()
    }

    pub fn region(&self) -> Region {
        Region {
            bottom_row: self.bottom_row,
            height: self.height,
            left: Profile::straight(8 * self.left_col as i64),
            right: Profile::straight(8 * self.right_col as i64),
        }
    }
}

/// Try the rectangle whose left side is column `left` and right side column
/// `right` (`right > left`, unwrapped).
fn candidate(g: &GridDiagram, x: &GridState, left: usize, right: usize) -> Option<(GridState, Rect)> {
    let n = g.n();
    let (l, r) = (left % n, right % n);
    let bottom = x.row(l);
    let top = x.row(r);
    let height = (top + n - bottom) % n;
    let region = Region {
        bottom_row: bottom,
        height,
        left: Profile::straight(8 * left as i64),
        right: Profile::straight(8 * right as i64),
    };
    let geo = Plain(n);
    if other_points(x.as_bytes(), [l, r]).any(|(px, py)| region.contains(&geo, px, py)) {
        return None;
    }
    let y = x.transposed(l, r);
    let rect = Rect {
        from: x.index() as u32,
        to: y.index() as u32,
        left_col: left,
        right_col: right,
        bottom_row: bottom,
        height,
        o_mask: region.marking_mask(&geo, g.o_rows()),
        x_mask: region.marking_mask(&geo, g.x_rows()),
    };
    Some((y, rect))
}

/// Every empty rectangle starting at `x`, in a deterministic order.
pub fn rectangles_from(g: &GridDiagram, x: &GridState) -> Vec<(GridState, Rect)> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            out.extend(candidate(g, x, i, k));
            out.extend(candidate(g, x, k, i + n));
        }
    }
    out
}

/// The empty rectangles from `x` to `y`: at most two, none unless the states
/// differ in exactly two columns.
pub fn empty_rectangles(g: &GridDiagram, x: &GridState, y: &GridState) -> Vec<Rect> {
    let diff = x.differing_columns(y);
    if diff.len() != 2 || x.transposed(diff[0], diff[1]) != *y {
        return Vec::new();
    }
    let n = g.n();
    let (i, k) = (diff[0], diff[1]);
    [candidate(g, x, i, k), candidate(g, x, k, i + n)].into_iter().flatten().map(|(_, r)| r).collect()
}
