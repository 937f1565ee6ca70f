use thiserror::Error;

use super::Geometry;
use crate::grid::{
    designate_plus, detect_cross_commutation, seam_rotation, CrossCommutation, GridDiagram, GridError, Marking,
    PlusSide,
};
use crate::states::GridState;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("the grids are not related by a column cross-commutation")]
    NotCrossCommutation,
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Which grid of a pair a state belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

/// Where the input pair ended up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Designation {
    /// `PlusSide::First` when the first argument is the positive grid.
    pub plus: PlusSide,
    /// Columns were relabeled by `rotate_columns(rotation)`.
    pub rotation: usize,
    pub witness: CrossCommutation,
}

/// Band of a point on the distinguished circle, named as in the local
/// grading tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PositionClass {
    A,
    B,
    C,
    D,
}

/// Both grids of a cross-commutation pair drawn on one torus.
///
/// The swapped columns are `c` and `c + 1` of the rotated positive grid. The
/// positive grid uses the straight circle `beta` at `x = c + 1`; the negative
/// grid replaces it with `gamma`, which crosses `beta` at the four heights
/// `r_k + 3/4` and in each band between crossings passes the one marking of
/// that band on the far side, at `x = c + 3/8` or `x = c + 13/8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedDiagram {
    plus: GridDiagram,
    minus: GridDiagram,
    designation: Designation,
    c: usize,
    /// Marking rows in increasing order with their kind and whether they sit
    /// in column `c` of the positive grid.
    marking_rows: [(usize, Marking, bool); 4],
    s_index: usize,
    t_index: usize,
    o1_row: usize,
    o2_row: usize,
}

impl CombinedDiagram {
    pub fn build(a: &GridDiagram, b: &GridDiagram) -> Result<Self, BuildError> {
        let witness = detect_cross_commutation(a, b).ok_or(BuildError::NotCrossCommutation)?;
        let (side, _) = designate_plus(a, b, &witness)?;
        let (plus, minus) = match side {
            PlusSide::First => (a, b),
            PlusSide::Second => (b, a),
        };
        let n = a.n();
        let rotation = seam_rotation(n, witness.column);
        let plus = plus.rotate_columns(rotation);
        let minus = minus.rotate_columns(rotation);
        let c = (witness.column + n - rotation) % n;

        let mut marks = [
            (plus.x_rows()[c], Marking::X, true),
            (plus.o_rows()[c], Marking::O, true),
            (plus.x_rows()[c + 1], Marking::X, false),
            (plus.o_rows()[c + 1], Marking::O, false),
        ];
        marks.sort_unstable_by_key(|m| m.0);

        // crossing k lies between band k and band k + 1
        let is_x = |k: usize| marks[k % 4].1 == Marking::X;
        let t_index = (0..4).find(|&k| is_x(k) && is_x(k + 1)).expect("X bands are adjacent");
        let o_bands: [usize; 2] = {
            let mut v = (0..4).filter(|&k| !is_x(k));
            [v.next().unwrap(), v.next().unwrap()]
        };
        let (o1_band, o2_band) =
            if marks[o_bands[0]].0 > marks[o_bands[1]].0 { (o_bands[0], o_bands[1]) } else { (o_bands[1], o_bands[0]) };
        let s_index = if is_x(o2_band + 1) { o2_band } else { (o2_band + 3) % 4 };

        Ok(Self {
            plus,
            minus,
            designation: Designation { plus: side, rotation, witness },
            c,
            marking_rows: marks,
            s_index,
            t_index,
            o1_row: marks[o1_band].0,
            o2_row: marks[o2_band].0,
        })
    }

    /// The positive grid, with columns rotated so the swapped pair is `(c, c + 1)`.
    pub fn plus(&self) -> &GridDiagram {
        &self.plus
    }

    pub fn minus(&self) -> &GridDiagram {
        &self.minus
    }

    pub fn grid(&self, side: Side) -> &GridDiagram {
        match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        }
    }

    pub fn designation(&self) -> Designation {
        self.designation
    }

    pub fn column(&self) -> usize {
        self.c
    }

    pub fn marking_rows(&self) -> [(usize, Marking, bool); 4] {
        self.marking_rows
    }

    /// Crossing heights in eighths, `8 r_k + 6`.
    pub fn crossing_heights(&self) -> [i64; 4] {
        self.marking_rows.map(|m| 8 * m.0 as i64 + 6)
    }

    pub fn s_height(&self) -> i64 {
        self.crossing_heights()[self.s_index]
    }

    pub fn t_height(&self) -> i64 {
        self.crossing_heights()[self.t_index]
    }

    pub fn s_index(&self) -> usize {
        self.s_index
    }

    pub fn t_index(&self) -> usize {
        self.t_index
    }

    /// Row of the upper O marking of the swapped columns.
    pub fn o1_row(&self) -> usize {
        self.o1_row
    }

    pub fn o2_row(&self) -> usize {
        self.o2_row
    }

    /// Band containing height `y8` (mod the torus): band `k` runs from
    /// crossing `k - 1` to crossing `k` and holds marking `k`.
    pub fn band_of(&self, y8: i64) -> usize {
        let y = y8.rem_euclid(8 * self.plus.n() as i64);
        let h = self.crossing_heights();
        (0..4).find(|&k| y < h[k]).unwrap_or(0)
    }

    /// Whether gamma passes to the left of beta in band `k`.
    pub fn gamma_left(&self, band: usize) -> bool {
        self.marking_rows[band].2
    }

    /// x coordinate (eighths) of the component of a state on the
    /// distinguished circle.
    pub fn distinguished_x8(&self, side: Side, row: usize) -> i64 {
        match side {
            Side::Plus => self.beta_x8(),
            Side::Minus => self.gamma_x8(8 * row as i64),
        }
    }

    /// Position class of a component in `row` on the distinguished circle,
    /// named after the marking of its band: `A` and `C` hold the O and X of
    /// column `c`, `B` and `D` the O and X of column `c + 1`.
    pub fn position_class(&self, row: usize) -> PositionClass {
        let (_, kind, left) = self.marking_rows[self.band_of(8 * row as i64)];
        match (kind, left) {
            (Marking::O, true) => PositionClass::A,
            (Marking::O, false) => PositionClass::B,
            (Marking::X, true) => PositionClass::C,
            (Marking::X, false) => PositionClass::D,
        }
    }

    /// Relabel a state of the rotated frame back to the input frame.
    pub fn unrotate(&self, x: &GridState) -> GridState {
        let n = self.plus.n();
        x.rotate_columns((n - self.designation.rotation) % n)
    }

    /// Relabel a state of the input frame into the rotated frame.
    pub fn rotate(&self, x: &GridState) -> GridState {
        x.rotate_columns(self.designation.rotation)
    }

    /// The state of the other grid agreeing with `x` off the distinguished
    /// circle; its component there stays on the same horizontal circle.
    pub fn nearest_point(&self, x: &GridState) -> GridState {
        x.clone()
    }
}

impl Geometry for CombinedDiagram {
    fn n(&self) -> usize {
        self.plus.n()
    }

    fn beta_x8(&self) -> i64 {
        8 * (self.c as i64 + 1)
    }

    fn gamma_x8(&self, y8: i64) -> i64 {
        let base = 8 * self.c as i64;
        if self.gamma_left(self.band_of(y8)) {
            base + 3
        } else {
            base + 13
        }
    }
}
