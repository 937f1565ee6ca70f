//! Bigraded homology of grid complexes over `GF(2)[V_0, ..., V_{n-1}]`.
//!
//! Homology is computed one bigrading at a time: each slice `(d, s)` of a free
//! module is a finite vector space, so everything reduces to GF(2) ranks. The
//! complex is first shrunk by cancelling differential entries equal to `1`,
//! which is a homotopy equivalence of free complexes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::algebra::{slice_basis, Column, Monomial, Polynomial, SliceBasis};
use crate::complex::{differential, Flavor, GridComplex};
use crate::gf2::{rank, BitMatrix, GfVec, QuotientBasis, SparseVec};
use crate::grid::GridDiagram;
use crate::states::Bigrading;

/// A free bigraded complex: generators with gradings and the differential as
/// columns of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    pub n_vars: usize,
    pub gradings: Vec<Bigrading>,
    pub cols: Vec<Column>,
    /// Grid state index of each generator.
    pub origin: Vec<u32>,
}

impl FreeComplex {
    pub fn from_grid(cx: &GridComplex) -> Self {
        Self {
            n_vars: cx.grid.n(),
            gradings: cx.gradings.clone(),
            cols: cx.differential.columns().to_vec(),
            origin: (0..cx.len() as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    /// Cancel every differential entry equal to `1`, lowest source first,
    /// until none is left.
    pub fn reduced(&self) -> Self {
        let n = self.len();
        let mut cols: Vec<HashMap<u32, Polynomial>> = self.cols.iter().map(|c| c.iter().cloned().collect()).collect();
        let mut rows: Vec<Vec<u32>> = alloc::vec![Vec::new(); n];
        for (x, c) in self.cols.iter().enumerate() {
            for (y, _) in c {
                rows[*y as usize].push(x as u32);
            }
        }
        let mut alive = alloc::vec![true; n];
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                if !alive[x] {
                    continue;
                }
                let Some(y) =
                    cols[x].iter().filter(|(_, p)| p.terms() == [Monomial::ONE]).map(|(y, _)| *y as usize).min()
                else {
                    continue;
                };
                // d'(z) = d(z) + d(z)_y * d(x) for every z hitting y
                let dx: Vec<(u32, Polynomial)> =
                    cols[x].iter().filter(|(w, _)| **w as usize != y).map(|(w, p)| (*w, p.clone())).collect();
                let sources: Vec<u32> = core::mem::take(&mut rows[y]);
                for z in sources {
                    let z = z as usize;
                    if z == x || !alive[z] {
                        continue;
                    }
                    let Some(a) = cols[z].remove(&(y as u32)) else { continue };
                    for (w, b) in &dx {
                        let prod = &a * b;
                        let entry = cols[z].entry(*w).or_insert_with(Polynomial::zero);
                        *entry += &prod;
                        if entry.is_zero() {
                            cols[z].remove(w);
                        } else {
                            rows[*w as usize].push(z as u32);
                        }
                    }
                }
                alive[x] = false;
                alive[y] = false;
                cols[x].clear();
                cols[y].clear();
                // entries into x are dropped with it
                for z in core::mem::take(&mut rows[x]) {
                    cols[z as usize].remove(&(x as u32));
                }
                changed = true;
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        let mut new_index = alloc::vec![u32::MAX; n];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k as u32;
        }
        let new_cols = keep
            .iter()
            .map(|&i| {
                let mut c: Column = cols[i]
                    .iter()
                    .filter(|(y, p)| alive[**y as usize] && !p.is_zero())
                    .map(|(y, p)| (new_index[*y as usize], p.clone()))
                    .collect();
                c.sort_unstable_by_key(|e| e.0);
                c
            })
            .collect();
        Self {
            n_vars: self.n_vars,
            gradings: keep.iter().map(|&i| self.gradings[i]).collect(),
            cols: new_cols,
            origin: keep.iter().map(|&i| self.origin[i]).collect(),
        }
    }

    pub fn slice(&self, d: i64, s: i64) -> SliceBasis {
        slice_basis(&self.gradings, self.n_vars, d, s)
    }

    /// Range of Maslov and Alexander gradings of the generators.
    pub fn extent(&self) -> Option<((i64, i64), (i64, i64))> {
        let m = self.gradings.iter().map(|g| g.maslov);
        let a = self.gradings.iter().map(|g| g.alexander);
        Some(((m.clone().min()?, m.max()?), (a.clone().min()?, a.max()?)))
    }

    /// Values of `M - 2A` carried by some generator.
    pub fn diagonals(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.gradings.iter().map(|g| g.maslov - 2 * g.alexander).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Matrix of the differential from `from` into `to`, columns indexed by
/// `from`.
pub fn boundary_matrix(cx: &FreeComplex, from: &SliceBasis, to: &SliceBasis) -> Vec<SparseVec> {
    crate::algebra::matrix_from_columns(&cx.cols, from, to)
}

/// Homology of one bigrading.
#[derive(Clone, Debug)]
pub struct HomologySlice {
    pub bigrading: (i64, i64),
    pub basis: SliceBasis,
    pub quotient: QuotientBasis<SparseVec>,
}

impl HomologySlice {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Cycle representatives as `(generator, monomial)` combinations.
    pub fn representatives(&self) -> Vec<Vec<(u32, Monomial)>> {
        self.quotient
            .representatives()
            .iter()
            .map(|v| v.ones().into_iter().map(|i| self.basis.elements()[i]).collect())
            .collect()
    }
}

pub fn homology_slice(cx: &FreeComplex, d: i64, s: i64) -> HomologySlice {
    let here = cx.slice(d, s);
    let above = cx.slice(d + 1, s);
    let below = cx.slice(d - 1, s);
    let incoming = boundary_matrix(cx, &above, &here);
    let outgoing = boundary_matrix(cx, &here, &below);
    let quotient = QuotientBasis::new(here.len(), incoming, outgoing);
    HomologySlice { bigrading: (d, s), basis: here, quotient }
}

/// Push a chain of slice `from` through multiplication by `V_var` into the
/// basis of `to`.
fn multiply(v: &SparseVec, from: &SliceBasis, to: &SliceBasis, var: usize) -> SparseVec {
    let t = Monomial::var(var);
    let idx = v.ones().into_iter().filter_map(|i| {
        let (x, m) = from.elements()[i];
        to.position(x, &(m * t))
    });
    SparseVec::from_indices(to.len(), idx)
}

/// Rank of the map `H_{d,s} -> H_{d-2,s-1}` induced by `V_var`.
pub fn u_map_rank(source: &HomologySlice, target: &HomologySlice, var: usize) -> usize {
    let images = source
        .quotient
        .representatives()
        .iter()
        .map(|z| {
            let w = multiply(z, &source.basis, &target.basis, var);
            target.quotient.coordinates(&w).expect("V maps cycles to cycles")
        })
        .map(|c| SparseVec::from_indices(target.dim(), c.ones()));
    rank(images)
}

/// Total dimension of the homology of the tilde complex.
pub fn tilde_dim(g: &GridDiagram, cap: usize) -> Result<usize, crate::complex::ComplexError> {
    let cx = differential(g, Flavor::Tilde, cap)?;
    let n = cx.len();
    let mut m = BitMatrix::zeros(n, n);
    for (x, col) in cx.differential.columns().iter().enumerate() {
        for (y, p) in col {
            if p.len() % 2 == 1 {
                m.toggle(*y as usize, x);
            }
        }
    }
    Ok(n - 2 * m.rank())
}

/// Dimension of `H_{d,s}` by dense elimination on the unreduced complex.
pub fn dense_slice_dim(cx: &FreeComplex, d: i64, s: i64) -> usize {
    let here = cx.slice(d, s);
    let dense_rank = |from: &SliceBasis, to: &SliceBasis| {
        let mut m = BitMatrix::zeros(from.len(), to.len());
        for (j, col) in boundary_matrix(cx, from, to).iter().enumerate() {
            for i in col.ones() {
                m.toggle(j, i);
            }
        }
        m.rank()
    };
    let out = dense_rank(&here, &cx.slice(d - 1, s));
    let inc = dense_rank(&cx.slice(d + 1, s), &here);
    here.len() - out - inc
}

/// Dimensions of all nonzero slices in a window, keyed by `(d, s)`.
pub fn homology_table(cx: &FreeComplex, s_range: (i64, i64)) -> BTreeMap<(i64, i64), usize> {
    let mut out = BTreeMap::new();
    for delta in cx.diagonals() {
        for s in s_range.0..=s_range.1 {
            let dim = homology_slice(cx, 2 * s + delta, s).dim();
            if dim > 0 {
                out.insert((2 * s + delta, s), dim);
            }
        }
    }
    out
}

/// Window of bigradings searched for torsion: `s` from `s_min` to `s_max`,
/// `d` from `d_min` to `d_max`, with `b` steps of room below the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub b: i64,
    pub d_min: i64,
    pub d_max: i64,
    pub s_min: i64,
    pub s_max: i64,
}

impl Window {
    pub fn new(cx: &FreeComplex, b: i64) -> Option<Self> {
        let ((m_lo, m_hi), (a_lo, a_hi)) = cx.extent()?;
        Some(Self { b, d_min: m_lo - 2 * b, d_max: m_hi, s_min: a_lo - b, s_max: a_hi })
    }

    /// Bigradings `(d, s)` of the diagonal `d - 2s = delta` inside the window,
    /// top first.
    pub fn rows(&self, delta: i64) -> Vec<(i64, i64)> {
        (self.s_min..=self.s_max)
            .rev()
            .map(|s| (2 * s + delta, s))
            .filter(|&(d, _)| d >= self.d_min && d <= self.d_max)
            .collect()
    }
}

/// A bar of the U-persistence along one diagonal: classes born at `birth`
/// and still alive at `last`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub diagonal: i64,
    pub birth: (i64, i64),
    pub last: (i64, i64),
    /// Number of bars with these endpoints.
    pub multiplicity: usize,
    /// Reaches the bottom of the window.
    pub infinite: bool,
    /// `min { k : U^k z = 0 }` for a finite bar.
    pub order: usize,
}

/// Dimensions and U-ranks along one diagonal, top first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalTable {
    pub diagonal: i64,
    pub rows: Vec<(i64, i64)>,
    pub dims: Vec<usize>,
    /// `u_ranks[i]` is the rank of `U: H(rows[i]) -> H(rows[i + 1])`.
    pub u_ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub window: Window,
    pub var: usize,
    pub diagonals: Vec<DiagonalTable>,
    pub intervals: Vec<Interval>,
}

/// Rows of a diagonal counted from the bottom that must show a single
/// stable tower.
pub const STABLE_ROWS: usize = 3;

impl HomologyTable {
    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for t in &self.diagonals {
            for (r, &d) in t.rows.iter().zip(&t.dims) {
                if d > 0 {
                    out.insert(*r, d);
                }
            }
        }
        out
    }

    /// The last rows of every diagonal show exactly one tower: dimension 1
    /// with U of rank 1 on one diagonal, nothing on the others.
    pub fn stabilized(&self) -> bool {
        let mut towers = 0;
        for t in &self.diagonals {
            let k = t.rows.len();
            if k < STABLE_ROWS {
                return false;
            }
            let dims = &t.dims[k - STABLE_ROWS..];
            let ranks = &t.u_ranks[k - STABLE_ROWS..k - 1];
            if dims.iter().all(|&d| d == 0) {
                continue;
            }
            if dims.iter().all(|&d| d == 1) && ranks.iter().all(|&r| r == 1) {
                towers += 1;
            } else {
                return false;
            }
        }
        towers == 1
    }

    /// Top of the tower, when the table is stabilized.
    pub fn tower_top(&self) -> Option<(i64, i64)> {
        self.intervals.iter().find(|i| i.infinite).map(|i| i.birth)
    }

    /// Largest order of a finite bar, zero when there is none.
    pub fn max_torsion(&self) -> usize {
        self.intervals.iter().filter(|i| !i.infinite).map(|i| i.order).max().unwrap_or(0)
    }
}

/// Slices of one diagonal with the ranks of every power of U between them.
fn diagonal_table(cx: &FreeComplex, window: &Window, delta: i64, var: usize) -> (DiagonalTable, Vec<Interval>) {
    let rows = window.rows(delta);
    let slices: Vec<HomologySlice> = rows.iter().map(|&(d, s)| homology_slice(cx, d, s)).collect();
    let k = rows.len();
    // r[i][j] = rank of U^(j - i) from row i to row j
    let mut r = alloc::vec![alloc::vec![0usize; k]; k];
    for i in 0..k {
        r[i][i] = slices[i].dim();
        let mut chains: Vec<SparseVec> = slices[i].quotient.representatives().to_vec();
        for j in i + 1..k {
            if chains.is_empty() {
                break;
            }
            chains = chains.iter().map(|z| multiply(z, &slices[j - 1].basis, &slices[j].basis, var)).collect();
            let coords = chains.iter().map(|z| {
                let c = slices[j].quotient.coordinates(z).expect("V maps cycles to cycles");
                SparseVec::from_indices(slices[j].dim(), c.ones())
            });
            r[i][j] = rank(coords);
            if r[i][j] == 0 {
                break;
            }
        }
    }
    let at = |i: isize, j: isize| -> usize {
        if i < 0 || j < 0 || i as usize >= k || j as usize >= k || i > j {
            0
        } else {
            r[i as usize][j as usize]
        }
    };
    let mut intervals = Vec::new();
    for b in 0..k as isize {
        for e in b..k as isize {
            let m = at(b, e) + at(b - 1, e + 1);
            let m = m as isize - at(b - 1, e) as isize - at(b, e + 1) as isize;
            debug_assert!(m >= 0);
            if m > 0 {
                intervals.push(Interval {
                    diagonal: delta,
                    birth: rows[b as usize],
                    last: rows[e as usize],
                    multiplicity: m as usize,
                    infinite: e as usize == k - 1,
                    order: (e - b + 1) as usize,
                });
            }
        }
    }
    let table = DiagonalTable {
        diagonal: delta,
        dims: slices.iter().map(|s| s.dim()).collect(),
        u_ranks: (0..k.saturating_sub(1)).map(|i| r[i][i + 1]).collect(),
        rows,
    };
    (table, intervals)
}

/// Homology of every diagonal of `cx` inside `window`, with U acting as
/// `V_var`.
pub fn homology_in_window(cx: &FreeComplex, window: Window, var: usize) -> HomologyTable {
    let mut diagonals = Vec::new();
    let mut intervals = Vec::new();
    for delta in cx.diagonals() {
        let (t, iv) = diagonal_table(cx, &window, delta, var);
        diagonals.push(t);
        intervals.extend(iv);
    }
    HomologyTable { window, var, diagonals, intervals }
}

/// Outcome of the torsion search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    /// `None` when no window up to the cap stabilized.
    pub order: Option<usize>,
    /// Window sizes tried, in order.
    pub attempts: Vec<i64>,
    pub table: HomologyTable,
}

impl TorsionReport {
    pub fn inconclusive(&self) -> bool {
        self.order.is_none()
    }
}

/// The room below the generators suggested by their grading range.
pub fn default_b_cap(cx: &FreeComplex) -> i64 {
    cx.extent().map(|(_, (lo, hi))| hi - lo + cx.n_vars as i64 + 1).unwrap_or(0)
}

/// Maximal order of U-torsion of the unblocked homology, found by widening the
/// window from `b_start` until the bottom rows show a single stable tower or
/// `b_cap` is passed.
pub fn torsion_order(cx: &FreeComplex, b_start: i64, b_cap: i64) -> Option<TorsionReport> {
    let mut b = b_start.max(1);
    let mut attempts = Vec::new();
    loop {
        let window = Window::new(cx, b)?;
        let table = homology_in_window(cx, window, 0);
        attempts.push(b);
        if table.stabilized() {
            return Some(TorsionReport { order: Some(table.max_torsion()), attempts, table });
        }
        if b >= b_cap {
            return Some(TorsionReport { order: None, attempts, table });
        }
        b = (2 * b).min(b_cap);
    }
}
