use alloc::vec::Vec;

use super::{other_points, CombinedDiagram, Curve, Geometry, Polygon, PolygonKind, Profile, Region, Side};
use crate::states::GridState;

/// Distinguished crossing of beta and gamma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    S,
    T,
}

/// Order in which a hexagon's boundary, traversed with the disk on its left,
/// meets the two distinguished crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HexOrder {
    St,
    Ts,
}

struct Shape {
    kind: PolygonKind,
    source: Side,
    target: Side,
    /// Crossing corners in boundary order.
    corners: &'static [Vertex],
}

fn curve(side: Side) -> Curve {
    match side {
        Side::Plus => Curve::Beta,
        Side::Minus => Curve::Gamma,
    }
}

fn height(cd: &CombinedDiagram, v: Vertex) -> i64 {
    match v {
        Vertex::S => cd.s_height(),
        Vertex::T => cd.t_height(),
    }
}

/// Every polygon of the given shape starting at `x`.
///
/// The polygon joins `x` to the state `y` obtained by exchanging the rows of
/// column `j` and of the distinguished circle. One side is the straight circle
/// `j`; the other follows beta and gamma, turning at the designated crossings.
fn enumerate(cd: &CombinedDiagram, shape: &Shape, x: &GridState) -> Vec<(GridState, Polygon)> {
    let n = cd.n();
    let c = cd.column();
    let d = c + 1;
    let beta = cd.beta_x8();
    let mut out = Vec::new();
    for j in (0..n).filter(|&j| j != d) {
        let y = x.transposed(d, j);
        for composite_right in [true, false] {
            let (bottom, top, lower_curve) = if composite_right {
                (x.row(j), x.row(d), curve(shape.target))
            } else {
                (x.row(d), x.row(j), curve(shape.source))
            };
            let height_rows = (top + n - bottom) % n;
            let mut region = Region {
                bottom_row: bottom,
                height: height_rows,
                left: Profile::straight(0),
                right: Profile::straight(0),
            };
            // switch heights in increasing order along the side
            let mut switches: Vec<i64> = Vec::with_capacity(shape.corners.len());
            let upward: Vec<Vertex> =
                if composite_right { shape.corners.to_vec() } else { shape.corners.iter().rev().copied().collect() };
            let mut ok = true;
            for v in upward {
                match region.lift_height(n, height(cd, v)) {
                    Some(h) if switches.last().is_none_or(|&p| p < h) => switches.push(h),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let other = |cv: Curve| if cv == Curve::Beta { Curve::Gamma } else { Curve::Beta };
            let mut pieces = alloc::vec![(i64::MIN, lower_curve)];
            for &h in &switches {
                let prev = pieces.last().unwrap().1;
                pieces.push((h, other(prev)));
            }
            // each turn must be convex: the gamma piece meeting the crossing
            // lies on the interior side of beta
            let convex = switches.iter().enumerate().all(|(i, &h)| {
                let gx = if pieces[i].1 == Curve::Gamma { cd.gamma_x8(h - 1) } else { cd.gamma_x8(h + 1) };
                if composite_right {
                    gx < beta
                } else {
                    gx > beta
                }
            });
            if !convex {
                continue;
            }
            let composite = Profile { pieces };
            let jx = 8 * j as i64;
            let period = 8 * n as i64;
            if composite_right {
                region.left = Profile::straight(if j < d { jx } else { jx - period });
                region.right = composite;
            } else {
                region.left = composite;
                region.right = Profile::straight(if j > d { jx } else { jx + period });
            }
            if other_points(x.as_bytes(), [j, d]).any(|(px, py)| region.contains(cd, px, py)) {
                continue;
            }
            let plus = cd.plus();
            let poly = Polygon {
                kind: shape.kind,
                from: x.index() as u32,
                to: y.index() as u32,
                o_mask: region.marking_mask(cd, plus.o_rows()),
                x_mask: region.marking_mask(cd, plus.x_rows()),
                region,
            };
            out.push((y.clone(), poly));
        }
    }
    out
}

fn pentagon_shape(vertex: Vertex) -> Shape {
    match vertex {
        Vertex::S => {
            Shape { kind: PolygonKind::PentagonS, source: Side::Plus, target: Side::Minus, corners: &[Vertex::S] }
        }
        Vertex::T => {
            Shape { kind: PolygonKind::PentagonT, source: Side::Minus, target: Side::Plus, corners: &[Vertex::T] }
        }
    }
}

fn hexagon_shape(order: HexOrder) -> Shape {
    match order {
        HexOrder::St => Shape {
            kind: PolygonKind::HexagonSt,
            source: Side::Minus,
            target: Side::Minus,
            corners: &[Vertex::S, Vertex::T],
        },
        HexOrder::Ts => Shape {
            kind: PolygonKind::HexagonTs,
            source: Side::Plus,
            target: Side::Plus,
            corners: &[Vertex::T, Vertex::S],
        },
    }
}

/// Empty pentagons with a corner at `vertex` starting at `x`: from a positive
/// state for `s`, from a negative state for `t`.
pub fn pentagons_from(cd: &CombinedDiagram, vertex: Vertex, x: &GridState) -> Vec<(GridState, Polygon)> {
    enumerate(cd, &pentagon_shape(vertex), x)
}

pub fn pentagons(cd: &CombinedDiagram, vertex: Vertex, x: &GridState, y: &GridState) -> Vec<Polygon> {
    pentagons_from(cd, vertex, x).into_iter().filter(|(z, _)| z == y).map(|(_, p)| p).collect()
}

/// Empty hexagons with consecutive corners at `s` and `t` in the given order:
/// between negative states for `St`, positive states for `Ts`.
pub fn hexagons_from(cd: &CombinedDiagram, order: HexOrder, x: &GridState) -> Vec<(GridState, Polygon)> {
    enumerate(cd, &hexagon_shape(order), x)
}

pub fn hexagons(cd: &CombinedDiagram, order: HexOrder, x: &GridState, y: &GridState) -> Vec<Polygon> {
    hexagons_from(cd, order, x).into_iter().filter(|(z, _)| z == y).map(|(_, p)| p).collect()
}
