//! Grid diagrams on the torus and the cross-commutation move.
//!
//! Columns and rows are 0-based. The marking of column `c` in row `r` sits in
//! the unit cell `[c, c+1) x [r, r+1)`; vertical circles lie at integer `x`,
//! horizontal circles at integer `y`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Which marking family a sequence describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Marking {
    X,
    O,
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marking::X => f.write_str("X"),
            Marking::O => f.write_str("O"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid number must be positive")]
    Empty,
    #[error("{marking} has {got} entries, expected {expected}")]
    WrongLength { marking: Marking, expected: usize, got: usize },
    #[error("{marking} row {row} out of range in column {column}")]
    OutOfRange { marking: Marking, column: usize, row: usize },
    #[error("{marking} rows are not a permutation: row {row} is used twice")]
    NotPermutation { marking: Marking, row: usize },
    #[error("X/O collision in column {column}")]
    Collision { column: usize },
    #[error("diagram has {components} components, expected a knot")]
    NotAKnot { components: usize },
    #[error("grids have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("grids are not related by a column cross-commutation")]
    NotCrossCommutation,
    #[error("writhe difference {0} across a cross-commutation, expected +-2")]
    WritheMismatch(i64),
    #[error("writhe and marking order disagree on the positive crossing")]
    DesignationConflict,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridDiagram {
    n: usize,
    x_rows: Vec<usize>,
    o_rows: Vec<usize>,
}

impl GridDiagram {
    pub fn new(x_rows: Vec<usize>, o_rows: Vec<usize>) -> Result<Self, GridError> {
        let n = x_rows.len();
        if n == 0 {
            return Err(GridError::Empty);
        }
        if o_rows.len() != n {
            return Err(GridError::WrongLength { marking: Marking::O, expected: n, got: o_rows.len() });
        }
        check_permutation(&x_rows, Marking::X)?;
        check_permutation(&o_rows, Marking::O)?;
        if let Some(column) = (0..n).find(|&c| x_rows[c] == o_rows[c]) {
            return Err(GridError::Collision { column });
        }
        Ok(Self { n, x_rows, o_rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_rows(&self) -> &[usize] {
        &self.x_rows
    }

    pub fn o_rows(&self) -> &[usize] {
        &self.o_rows
    }

    /// Column holding the X marking of row `r`.
    pub fn x_column(&self, r: usize) -> usize {
        self.x_rows.iter().position(|&x| x == r).expect("x_rows is a permutation")
    }

    /// Column holding the O marking of row `r`.
    pub fn o_column(&self, r: usize) -> usize {
        self.o_rows.iter().position(|&o| o == r).expect("o_rows is a permutation")
    }

    /// Number of link components: cycles of the column walk X -> O (vertical)
    /// then O -> X (horizontal).
    pub fn trace_components(&self) -> usize {
        let mut x_col_of_row = vec![0; self.n];
        for (c, &r) in self.x_rows.iter().enumerate() {
            x_col_of_row[r] = c;
        }
        let mut seen = vec![false; self.n];
        let mut cycles = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = x_col_of_row[self.o_rows[c]];
            }
        }
        cycles
    }

    pub fn is_knot(&self) -> bool {
        self.trace_components() == 1
    }

    pub fn require_knot(&self) -> Result<(), GridError> {
        match self.trace_components() {
            1 => Ok(()),
            components => Err(GridError::NotAKnot { components }),
        }
    }

    /// Signed crossing count of the planar diagram with vertical strands over
    /// horizontal ones.
    pub fn writhe(&self) -> i64 {
        let n = self.n;
        let mut total = 0;
        for c in 0..n {
            let (xr, or) = (self.x_rows[c], self.o_rows[c]);
            // vertical strand runs X -> O
            let dy: i64 = if or > xr { 1 } else { -1 };
            let (lo, hi) = (xr.min(or), xr.max(or));
            for r in lo + 1..hi {
                let (oc, xc) = (self.o_column(r), self.x_column(r));
                let (left, right) = (oc.min(xc), oc.max(xc));
                if left < c && c < right {
                    // horizontal strand runs O -> X
                    let dx: i64 = if xc > oc { 1 } else { -1 };
                    // det(over, under) with over = (0, dy), under = (dx, 0)
                    total += -dy * dx;
                }
            }
        }
        total
    }

    /// Mirror image: reverse the row order.
    pub fn mirror(&self) -> Self {
        let flip = |v: &[usize]| v.iter().map(|&r| self.n - 1 - r).collect();
        Self { n: self.n, x_rows: flip(&self.x_rows), o_rows: flip(&self.o_rows) }
    }

    /// Exchange the roles of rows and columns.
    pub fn transpose(&self) -> Self {
        let invert = |v: &[usize]| {
            let mut inv = vec![0; v.len()];
            for (c, &r) in v.iter().enumerate() {
                inv[r] = c;
            }
            inv
        };
        Self { n: self.n, x_rows: invert(&self.x_rows), o_rows: invert(&self.o_rows) }
    }

    /// Exchange columns `c` and `c + 1 (mod n)`.
    pub fn apply_column_swap(&self, c: usize) -> Self {
        assert!(c < self.n, "column {c} out of range");
        let d = (c + 1) % self.n;
        let mut out = self.clone();
        out.x_rows.swap(c, d);
        out.o_rows.swap(c, d);
        out
    }

    /// Cyclically relabel columns so that old column `k` becomes column 0.
    pub fn rotate_columns(&self, k: usize) -> Self {
        let n = self.n;
        let rot = |v: &[usize]| (0..n).map(|c| v[(c + k) % n]).collect();
        Self { n, x_rows: rot(&self.x_rows), o_rows: rot(&self.o_rows) }
    }

    /// Cyclically relabel rows so that old row `k` becomes row 0.
    pub fn rotate_rows(&self, k: usize) -> Self {
        let n = self.n;
        let rot = |v: &[usize]| v.iter().map(|&r| (r + n - k % n) % n).collect();
        Self { n, x_rows: rot(&self.x_rows), o_rows: rot(&self.o_rows) }
    }

    /// Row interval `(lo, hi)` spanned by the markings of column `c`.
    pub fn column_span(&self, c: usize) -> (usize, usize) {
        let (a, b) = (self.x_rows[c], self.o_rows[c]);
        (a.min(b), a.max(b))
    }
}

fn check_permutation(rows: &[usize], marking: Marking) -> Result<(), GridError> {
    let n = rows.len();
    let mut used = vec![false; n];
    for (column, &row) in rows.iter().enumerate() {
        if row >= n {
            return Err(GridError::OutOfRange { marking, column, row });
        }
        if core::mem::replace(&mut used[row], true) {
            return Err(GridError::NotPermutation { marking, row });
        }
    }
    Ok(())
}

/// Witness that two grids differ by swapping columns `column` and
/// `column + 1 (mod n)` whose marking intervals strictly interleave.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossCommutation {
    pub column: usize,
    /// The four marking rows of the swapped pair, ascending.
    pub strip_rows: [usize; 4],
    /// `interleaved[k]` is true when `strip_rows[k]` belongs to the left column
    /// of the first grid. Entries alternate.
    pub interleaved: [bool; 4],
}

pub fn detect_cross_commutation(a: &GridDiagram, b: &GridDiagram) -> Option<CrossCommutation> {
    let n = a.n;
    if b.n != n || n < 2 || a == b {
        return None;
    }
    for c in 0..n {
        if n == 2 && c == 1 {
            break;
        }
        if a.apply_column_swap(c) != *b {
            continue;
        }
        let d = (c + 1) % n;
        let mut rows = [(a.x_rows[c], true), (a.o_rows[c], true), (a.x_rows[d], false), (a.o_rows[d], false)];
        rows.sort_unstable();
        // intervals sharing an endpoint row do not interleave
        let distinct = rows.windows(2).all(|w| w[0].0 != w[1].0);
        let alternating = distinct && rows.windows(2).all(|w| w[0].1 != w[1].1);
        if alternating {
            return Some(CrossCommutation {
                column: c,
                strip_rows: rows.map(|(r, _)| r),
                interleaved: rows.map(|(_, left)| left),
            });
        }
    }
    None
}

/// Row cross-commutation detection through transposition.
pub fn detect_row_cross_commutation(a: &GridDiagram, b: &GridDiagram) -> Option<CrossCommutation> {
    detect_cross_commutation(&a.transpose(), &b.transpose())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlusSide {
    First,
    Second,
}

/// Column rotation that moves a swap of columns `c`, `c + 1 (mod n)` off the
/// seam.
pub fn seam_rotation(n: usize, c: usize) -> usize {
    if c + 1 == n {
        1
    } else {
        0
    }
}

/// Whether `a` is the positive grid, read from the cyclic order of the four
/// swapped markings: going up from the X of the right column, the next
/// swapped marking is the X of the left column.
pub fn marking_order_plus(a: &GridDiagram, c: usize) -> bool {
    let d = (c + 1) % a.n;
    let mut marks = [
        (a.x_rows[c], true, true),
        (a.o_rows[c], false, true),
        (a.x_rows[d], true, false),
        (a.o_rows[d], false, false),
    ];
    marks.sort_unstable();
    let k = (0..4).find(|&k| marks[k].1 && marks[(k + 1) % 4].1).expect("interleaved X markings are adjacent");
    !marks[k].2
}

/// Decide which grid of a cross-commutation pair carries the positive
/// crossing: the one with larger writhe once columns are rotated so the
/// swapped pair does not straddle the seam. Returns the side and the writhe
/// difference, which must be 2.
pub fn designate_plus(a: &GridDiagram, b: &GridDiagram, w: &CrossCommutation) -> Result<(PlusSide, i64), GridError> {
    let n = a.n;
    let c = w.column;
    if b.n != n || c >= n || a.apply_column_swap(c) != *b {
        return Err(GridError::NotCrossCommutation);
    }
    let k = seam_rotation(n, c);
    let diff = a.rotate_columns(k).writhe() - b.rotate_columns(k).writhe();
    let side = match diff {
        2 => PlusSide::First,
        -2 => PlusSide::Second,
        other => return Err(GridError::WritheMismatch(other)),
    };
    if marking_order_plus(a, c) != (side == PlusSide::First) {
        return Err(GridError::DesignationConflict);
    }
    Ok((side, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(x: &[usize], o: &[usize]) -> GridDiagram {
        GridDiagram::new(x.to_vec(), o.to_vec()).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(GridDiagram::new(vec![0, 1], vec![0, 1]), Err(GridError::Collision { column: 0 }));
        assert_eq!(
            GridDiagram::new(vec![0, 0], vec![1, 1]),
            Err(GridError::NotPermutation { marking: Marking::X, row: 0 })
        );
        assert!(matches!(GridDiagram::new(vec![0, 2], vec![1, 0]), Err(GridError::OutOfRange { .. })));
        assert_eq!(GridDiagram::new(vec![], vec![]), Err(GridError::Empty));
    }

    #[test]
    fn components() {
        assert_eq!(grid(&[0, 1], &[1, 0]).trace_components(), 1);
        let split = grid(&[0, 1, 2, 3], &[1, 0, 3, 2]);
        assert_eq!(split.trace_components(), 2);
        assert_eq!(grid(&[4, 0, 1, 2, 3], &[1, 2, 3, 4, 0]).trace_components(), 1);
    }

    #[test]
    fn unknot_writhe_is_zero() {
        assert_eq!(grid(&[0, 1], &[1, 0]).writhe(), 0);
    }

    #[test]
    fn swap_is_involution() {
        let g = grid(&[4, 0, 1, 2, 3], &[1, 2, 3, 4, 0]);
        for c in 0..5 {
            assert_eq!(g.apply_column_swap(c).apply_column_swap(c), g);
        }
        assert_eq!(grid(&[0, 1], &[1, 0]).apply_column_swap(0), grid(&[1, 0], &[0, 1]));
    }

    #[test]
    fn interleaved_pair_is_detected() {
        // column 0 spans rows {0,2}, column 1 spans {1,3}
        let a = grid(&[0, 1, 3, 2], &[2, 3, 0, 1]);
        let b = a.apply_column_swap(0);
        let w = detect_cross_commutation(&a, &b).expect("interleaved");
        assert_eq!(w.column, 0);
        assert_eq!(w.strip_rows, [0, 1, 2, 3]);
        assert_eq!(w.interleaved, [true, false, true, false]);
        assert!(detect_cross_commutation(&a, &a).is_none());
    }

    #[test]
    fn nested_swap_is_rejected() {
        // column 0 spans {0,3}, column 1 spans {1,2}
        let a = grid(&[0, 1, 2, 3], &[3, 2, 1, 0]);
        assert!(detect_cross_commutation(&a, &a.apply_column_swap(0)).is_none());
    }

    #[test]
    fn transpose_round_trip() {
        let g = grid(&[4, 0, 1, 2, 3], &[1, 2, 3, 4, 0]);
        assert_eq!(g.transpose().transpose(), g);
        let a = grid(&[0, 1, 3, 2], &[2, 3, 0, 1]).transpose();
        let b = grid(&[0, 1, 3, 2], &[2, 3, 0, 1]).apply_column_swap(0).transpose();
        assert_eq!(detect_row_cross_commutation(&a, &b), detect_cross_commutation(&a.transpose(), &b.transpose()));
        assert!(detect_row_cross_commutation(&a, &b).is_some());
    }

    #[test]
    fn designation_guard() {
        let a = grid(&[0, 1, 3, 2], &[2, 3, 0, 1]);
        let w = CrossCommutation { column: 0, strip_rows: [0, 1, 2, 3], interleaved: [true, false, true, false] };
        assert_eq!(designate_plus(&a, &a, &w), Err(GridError::NotCrossCommutation));
        let b = a.apply_column_swap(0);
        let (first, d1) = designate_plus(&a, &b, &w).unwrap();
        let (second, d2) = designate_plus(&b, &a, &w).unwrap();
        assert_ne!(first, second);
        assert_eq!((d1, d2), (2, 2));
    }
}
