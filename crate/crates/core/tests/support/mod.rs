//! Brute-force polygon counting on a rasterized torus.
//!
//! Every curve is drawn on a lattice sixteen times finer than the grid. A
//! candidate boundary is assembled from arcs of the relevant circles, each arc
//! walked in both directions, and kept when it is a simple, null-homologous,
//! counterclockwise loop whose winding numbers are 0 or 1, turning left at
//! every corner, with no state point inside.

#![allow(dead_code)]

use std::collections::HashMap;

use gridlab_core::grid::{GridDiagram, Marking};
use gridlab_core::polygon::CombinedDiagram;
use gridlab_core::states::GridState;

pub const S: i64 = 16;

type Pt = (i64, i64);

/// A closed curve as a cyclic list of lattice points, one unit apart.
#[derive(Clone)]
pub struct Cycle {
    pts: Vec<Pt>,
    at: HashMap<Pt, usize>,
}

impl Cycle {
    fn new(pts: Vec<Pt>) -> Self {
        let at = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Self { pts, at }
    }

    fn vertical(x: i64, size: i64) -> Self {
        Self::new((0..size).map(|y| (x, y)).collect())
    }

    fn horizontal(y: i64, size: i64) -> Self {
        Self::new((0..size).map(|x| (x, y)).collect())
    }

    pub fn contains(&self, p: Pt) -> bool {
        self.at.contains_key(&p)
    }

    /// Points strictly after `from` up to and including `to`.
    fn walk(&self, from: Pt, to: Pt, forward: bool) -> Option<Vec<Pt>> {
        let len = self.pts.len();
        let mut i = *self.at.get(&from)?;
        self.at.get(&to)?;
        let mut out = Vec::new();
        loop {
            i = if forward { (i + 1) % len } else { (i + len - 1) % len };
            out.push(self.pts[i]);
            if self.pts[i] == to {
                return Some(out);
            }
        }
    }
}

/// Curves of a (possibly combined) diagram.
pub struct Arrangement {
    pub n: usize,
    size: i64,
    /// Distinguished column index; its straight circle is replaced by
    /// `source` or `target` curves below.
    pub d: usize,
    pub beta: Cycle,
    pub gamma: Option<Cycle>,
    pub crossings: Vec<Pt>,
    pub s: Option<Pt>,
    pub t: Option<Pt>,
    pub o_rows: Vec<usize>,
}

impl Arrangement {
    pub fn plain(g: &GridDiagram, d: usize) -> Self {
        let n = g.n();
        let size = S * n as i64;
        Self {
            n,
            size,
            d,
            beta: Cycle::vertical(S * d as i64, size),
            gamma: None,
            crossings: vec![],
            s: None,
            t: None,
            o_rows: g.o_rows().to_vec(),
        }
    }

    /// Both distinguished curves of a crossing change, in the rotated frame of
    /// `cd`. The negative curve detours around the marking of each band
    /// between consecutive swapped markings.
    pub fn combined(cd: &CombinedDiagram) -> Self {
        let g = cd.plus();
        let n = g.n();
        let size = S * n as i64;
        let c = cd.column() as i64;
        let marks = cd.marking_rows();
        let heights: Vec<i64> = marks.iter().map(|m| S * m.0 as i64 + 12).collect();
        let side = |k: usize| if marks[k].2 { S * c + 6 } else { S * c + 26 };
        let beta_x = S * (c + 1);
        // walk up band by band starting just above crossing 3
        let mut pts = Vec::new();
        let mut y = heights[3] - size;
        let mut x = side(0);
        for (k, &top) in heights.iter().enumerate() {
            let bx = side(k);
            // horizontal jog at the bottom of band k
            while x != bx {
                pts.push((x, y.rem_euclid(size)));
                x += (bx - x).signum();
            }
            while y < top {
                pts.push((x, y.rem_euclid(size)));
                y += 1;
            }
        }
        // close the last jog
        let bx = side(0);
        while x != bx {
            pts.push((x, y.rem_euclid(size)));
            x += (bx - x).signum();
        }
        let gamma = Cycle::new(pts);
        let crossings: Vec<Pt> = heights.iter().map(|&h| (beta_x, h)).collect();
        let is_x = |k: usize| marks[k % 4].1 == Marking::X;
        let t = (0..4).find(|&k| is_x(k) && is_x(k + 1)).unwrap();
        let lower_o = (0..4).filter(|&k| !is_x(k)).min_by_key(|&k| marks[k].0).unwrap();
        let s = if is_x(lower_o + 1) { lower_o } else { (lower_o + 3) % 4 };
        Self {
            n,
            size,
            d: cd.column() + 1,
            beta: Cycle::vertical(beta_x, size),
            gamma: Some(gamma),
            s: Some(crossings[s]),
            t: Some(crossings[t]),
            crossings,
            o_rows: g.o_rows().to_vec(),
        }
    }

    fn curve(&self, minus: bool) -> &Cycle {
        if minus {
            self.gamma.as_ref().unwrap()
        } else {
            &self.beta
        }
    }

    fn point_on(&self, minus: bool, row: usize) -> Pt {
        let y = S * row as i64;
        let c = self.curve(minus);
        let x = (0..self.size).find(|&x| c.contains((x, y))).unwrap();
        (x, y)
    }
}

#[derive(Clone, Copy)]
pub struct Shape {
    pub source_minus: bool,
    pub target_minus: bool,
    /// Crossing corners in boundary order.
    pub corners: &'static [char],
}

pub const RECT: Shape = Shape { source_minus: false, target_minus: false, corners: &[] };
pub const PENT_S: Shape = Shape { source_minus: false, target_minus: true, corners: &['s'] };
pub const PENT_T: Shape = Shape { source_minus: true, target_minus: false, corners: &['t'] };
pub const HEX_ST: Shape = Shape { source_minus: true, target_minus: true, corners: &['s', 't'] };
pub const HEX_TS: Shape = Shape { source_minus: false, target_minus: false, corners: &['t', 's'] };

/// One polygon found: target state and the rows of the O markings inside.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Found {
    pub to: Vec<usize>,
    pub o_mask: u32,
}

fn step_dir(a: Pt, b: Pt, size: i64) -> Pt {
    let w = |v: i64| {
        let v = v.rem_euclid(size);
        if v > size / 2 {
            v - size
        } else {
            v
        }
    };
    (w(b.0 - a.0), w(b.1 - a.1))
}

fn check_loop(arr: &Arrangement, x: &GridState, lp: &[Pt], corners: &[Pt]) -> Option<u32> {
    let size = arr.size;
    let m = lp.len();
    // simple
    let mut seen = std::collections::HashSet::new();
    if !lp.iter().all(|p| seen.insert(*p)) {
        return None;
    }
    let us = size as usize;
    let mut vflow = vec![0i64; us * us];
    let mut hflow = vec![0i64; us * us];
    let idx = |x: i64, y: i64| (y.rem_euclid(size) as usize) * us + x.rem_euclid(size) as usize;
    let mut dirs = Vec::with_capacity(m);
    for i in 0..m {
        let (a, b) = (lp[i], lp[(i + 1) % m]);
        let d = step_dir(a, b, size);
        dirs.push(d);
        match d {
            (0, 1) => vflow[idx(a.0, a.1)] += 1,
            (0, -1) => vflow[idx(b.0, b.1)] -= 1,
            (1, 0) => hflow[idx(a.0, a.1)] += 1,
            (-1, 0) => hflow[idx(b.0, b.1)] -= 1,
            _ => unreachable!("non-unit step"),
        }
    }
    // null-homologous: net flow through the line y = 0 and x = 0 vanishes
    let net_v: i64 = (0..size).map(|x| vflow[idx(x, 0)]).sum();
    let net_h: i64 = (0..size).map(|y| hflow[idx(0, y)]).sum();
    if net_v != 0 || net_h != 0 {
        return None;
    }
    // winding numbers, cell (x, y) is the unit square with lower-left (x, y)
    let mut w = vec![0i64; us * us];
    for y in 0..size {
        if y > 0 {
            w[idx(0, y)] = w[idx(0, y - 1)] + hflow[idx(0, y)];
        }
        for x in 1..size {
            w[idx(x, y)] = w[idx(x - 1, y)] - vflow[idx(x, y)];
        }
    }
    let lo = *w.iter().min().unwrap();
    if w.iter().any(|&v| v - lo > 1) {
        return None;
    }
    let cell = |x: i64, y: i64| w[idx(x, y)] - lo;
    // counterclockwise: domain on the left of each step
    let (a, d) = (lp[0], dirs[0]);
    let left = match d {
        (0, 1) => cell(a.0 - 1, a.1),
        (0, -1) => cell(a.0, a.1 - 1),
        (1, 0) => cell(a.0, a.1),
        _ => cell(a.0 - 1, a.1 - 1),
    };
    if left != 1 {
        return None;
    }
    // convex corners
    for &p in corners {
        let i = lp.iter().position(|&q| q == p)?;
        let din = dirs[(i + m - 1) % m];
        let dout = dirs[i];
        if din.0 * dout.1 - din.1 * dout.0 <= 0 {
            return None;
        }
    }
    // empty
    for k in 0..arr.n {
        let (px, py) = (S * k as i64, S * x.row(k) as i64);
        let px = if k == arr.d { continue } else { px };
        if (0..4).all(|q| cell(px - (q & 1), py - (q >> 1)) == 1) {
            return None;
        }
    }
    let mut mask = 0;
    for (col, &r) in arr.o_rows.iter().enumerate() {
        if cell(S * col as i64 + 8, S * r as i64 + 8) == 1 {
            mask |= 1 << r;
        }
    }
    Some(mask)
}

/// Every polygon of `shape` from `x`, found by trying all boundary loops.
pub fn polygons_from(arr: &Arrangement, shape: Shape, x: &GridState) -> Vec<Found> {
    let n = arr.n;
    let size = arr.size;
    let d = arr.d;
    let mut out = Vec::new();
    let corner_pts: Vec<Pt> =
        shape.corners.iter().map(|&c| if c == 's' { arr.s.unwrap() } else { arr.t.unwrap() }).collect();
    for j in (0..n).filter(|&j| j != d) {
        let y = x.transposed(d, j);
        let (a, a2) = (x.row(d), x.row(j));
        let xd = arr.point_on(shape.source_minus, a);
        let yj = (S * j as i64, S * a as i64);
        let xj = (S * j as i64, S * a2 as i64);
        let yd = arr.point_on(shape.target_minus, a2);
        let row_a = Cycle::horizontal(S * a as i64, size);
        let row_a2 = Cycle::horizontal(S * a2 as i64, size);
        let col_j = Cycle::vertical(S * j as i64, size);
        let legs = 4 + corner_pts.len();
        for bits in 0..(1u32 << legs) {
            let dir = |k: usize| bits >> k & 1 == 1;
            let mut lp = vec![xd];
            let ok = (|| {
                lp.extend(row_a.walk(xd, yj, dir(0))?);
                lp.extend(col_j.walk(yj, xj, dir(1))?);
                lp.extend(row_a2.walk(xj, yd, dir(2))?);
                // distinguished path from yd through the corners to xd
                let mut here = yd;
                let mut on_minus = shape.target_minus;
                for (k, &cp) in corner_pts.iter().enumerate() {
                    lp.extend(arr.curve(on_minus).walk(here, cp, dir(3 + k))?);
                    here = cp;
                    on_minus = !on_minus;
                }
                if on_minus != shape.source_minus {
                    return None;
                }
                let last = arr.curve(on_minus).walk(here, xd, dir(3 + corner_pts.len()))?;
                lp.extend(&last[..last.len() - 1]);
                Some(())
            })()
            .is_some();
            if !ok {
                continue;
            }
            let mut corners = vec![xd, yj, xj, yd];
            corners.extend(&corner_pts);
            if let Some(mask) = check_loop(arr, x, &lp, &corners) {
                out.push(Found { to: y.sigma(), o_mask: mask });
            }
        }
    }
    out.sort();
    out
}
