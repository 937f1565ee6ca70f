use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use hashbrown::HashMap;
use thiserror::Error;

use super::poly::{Monomial, Polynomial};
use crate::grid::GridDiagram;
use crate::states::Bigrading;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("generator spaces do not match")]
    SpaceMismatch,
    #[error("bigrading {from:?} -> {to:?} is incompatible with declared degree {degree:?}")]
    BigradingMismatch { from: (i64, i64), to: (i64, i64), degree: Degree },
    #[error("term {source_index} -> {target_index} has shift {shift:?}, declared degree {degree:?}")]
    DegreeViolation { source_index: usize, target_index: usize, shift: (i64, i64), degree: Degree },
}

/// Declared homogeneity `(maslov shift, alexander shift)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Degree {
    pub maslov: i64,
    pub alexander: i64,
}

impl Degree {
    pub const fn new(maslov: i64, alexander: i64) -> Self {
        Self { maslov, alexander }
    }
}

impl core::ops::Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        Degree::new(self.maslov + rhs.maslov, self.alexander + rhs.alexander)
    }
}

/// Sparse column: `(target generator, coefficient)` sorted by target, no zero
/// coefficients.
pub type Column = Vec<(u32, Polynomial)>;

/// A `GF(2)[V_0..V_{n-1}]`-linear map between free modules generated by grid
/// states, stored by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: GridDiagram,
    target: GridDiagram,
    degree: Degree,
    cols: Vec<Column>,
}

/// How a term's Alexander shift is checked against the declared degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMode {
    /// Maslov exact, Alexander exact.
    Graded,
    /// Maslov exact, Alexander at most the declared shift.
    Filtered,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DegreeReport {
    /// Number of terms per attained `(maslov, alexander)` shift.
    pub histogram: BTreeMap<(i64, i64), usize>,
    pub first_violation: Option<(usize, usize, Monomial, (i64, i64))>,
}

impl DegreeReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }

    pub fn max_alexander_shift(&self) -> Option<i64> {
        self.histogram.keys().map(|k| k.1).max()
    }
}

/// Shift `(dM, dA)` of the term `x -> m * y`.
pub fn term_shift(from: Bigrading, to: Bigrading, m: &Monomial) -> (i64, i64) {
    let k = m.degree();
    (to.maslov - 2 * k - from.maslov, to.alexander - k - from.alexander)
}

impl ModuleMap {
    /// Build from possibly unnormalized columns: duplicate targets are summed
    /// and zero entries dropped.
    pub fn from_columns(source: GridDiagram, target: GridDiagram, degree: Degree, cols: Vec<Column>) -> Self {
        let cols = cols.into_iter().map(normalize_column).collect();
        Self { source, target, degree, cols }
    }

    pub fn zero(source: GridDiagram, target: GridDiagram, size: usize, degree: Degree) -> Self {
        Self { source, target, degree, cols: alloc::vec![Vec::new(); size] }
    }

    /// Multiplication by `p` on the free module over `grid`.
    pub fn scalar(grid: GridDiagram, size: usize, p: &Polynomial, degree: Degree) -> Self {
        let cols =
            (0..size).map(|i| if p.is_zero() { Vec::new() } else { alloc::vec![(i as u32, p.clone())] }).collect();
        Self { source: grid.clone(), target: grid, degree, cols }
    }

    pub fn identity(grid: GridDiagram, size: usize) -> Self {
        Self::scalar(grid, size, &Polynomial::one(), Degree::default())
    }

    pub fn source(&self) -> &GridDiagram {
        &self.source
    }

    pub fn target(&self) -> &GridDiagram {
        &self.target
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn with_degree(mut self, degree: Degree) -> Self {
        self.degree = degree;
        self
    }

    pub fn source_size(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, x: usize) -> &[(u32, Polynomial)] {
        &self.cols[x]
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    pub fn entry(&self, x: usize, y: usize) -> Option<&Polynomial> {
        let col = &self.cols[x];
        col.binary_search_by_key(&(y as u32), |e| e.0).ok().map(|i| &col[i].1)
    }

    pub fn term_count(&self) -> usize {
        self.cols.iter().flatten().map(|(_, p)| p.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// First nonzero entry in source order, as `(source, target, coefficient)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Polynomial)> {
        self.cols.iter().enumerate().find_map(|(x, col)| col.first().map(|(y, p)| (x, *y as usize, p.clone())))
    }

    /// Every `(source, target, monomial)` term in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Monomial)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(x, col)| col.iter().flat_map(move |(y, p)| p.terms().iter().map(move |m| (x, *y as usize, *m))))
    }

    /// The composite `g o f` (first `self`, then `g`).
    pub fn then(&self, g: &ModuleMap) -> Result<ModuleMap, MapError> {
        compose(self, g)
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap, MapError> {
        if self.source != other.source || self.target != other.target || self.cols.len() != other.cols.len() {
            return Err(MapError::SpaceMismatch);
        }
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut col = a.clone();
                col.extend(b.iter().cloned());
                normalize_column(col)
            })
            .collect();
        Ok(Self { source: self.source.clone(), target: self.target.clone(), degree: self.degree, cols })
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> ModuleMap {
        let cols =
            self.cols.iter().map(|col| normalize_column(col.iter().map(|(y, q)| (*y, q * p)).collect())).collect();
        Self { source: self.source.clone(), target: self.target.clone(), degree: self.degree, cols }
    }

    /// Apply to a general module element given as sparse `(generator, coefficient)` pairs.
    pub fn apply(&self, element: &[(u32, Polynomial)]) -> Column {
        let mut out = Vec::new();
        for (x, p) in element {
            for (y, q) in &self.cols[*x as usize] {
                out.push((*y, p * q));
            }
        }
        normalize_column(out)
    }

    /// Remove a single monomial from one entry.
    pub fn without_term(&self, x: usize, y: usize, m: Monomial) -> ModuleMap {
        let mut out = self.clone();
        let col = &mut out.cols[x];
        if let Ok(i) = col.binary_search_by_key(&(y as u32), |e| e.0) {
            col[i].1.toggle(m);
            if col[i].1.is_zero() {
                col.remove(i);
            }
        }
        out
    }

    /// Keep only the terms whose Alexander shift equals `delta_a`.
    pub fn graded_part(&self, src: &[Bigrading], tgt: &[Bigrading], delta_a: i64) -> ModuleMap {
        let cols = self
            .cols
            .iter()
            .enumerate()
            .map(|(x, col)| {
                col.iter()
                    .filter_map(|(y, p)| {
                        let kept: Vec<Monomial> = p
                            .terms()
                            .iter()
                            .copied()
                            .filter(|m| term_shift(src[x], tgt[*y as usize], m).1 == delta_a)
                            .collect();
                        (!kept.is_empty()).then(|| (*y, Polynomial::from_terms(kept)))
                    })
                    .collect()
            })
            .collect();
        let degree = Degree::new(self.degree.maslov, delta_a);
        Self { source: self.source.clone(), target: self.target.clone(), degree, cols }
    }

    /// Check every term against the declared degree.
    pub fn degree_report(&self, src: &[Bigrading], tgt: &[Bigrading], mode: DegreeMode) -> DegreeReport {
        let mut report = DegreeReport::default();
        for (x, y, m) in self.terms() {
            let shift = term_shift(src[x], tgt[y], &m);
            *report.histogram.entry(shift).or_default() += 1;
            let ok = shift.0 == self.degree.maslov
                && match mode {
                    DegreeMode::Graded => shift.1 == self.degree.alexander,
                    DegreeMode::Filtered => shift.1 <= self.degree.alexander,
                };
            if !ok && report.first_violation.is_none() {
                report.first_violation = Some((x, y, m, shift));
            }
        }
        report
    }

    pub fn check_degree(&self, src: &[Bigrading], tgt: &[Bigrading], mode: DegreeMode) -> Result<(), MapError> {
        match self.degree_report(src, tgt, mode).first_violation {
            None => Ok(()),
            Some((x, y, _, shift)) => {
                Err(MapError::DegreeViolation { source_index: x, target_index: y, shift, degree: self.degree })
            }
        }
    }
}

/// Sort by target, merge duplicates mod 2, drop zeros.
pub fn normalize_column(mut col: Vec<(u32, Polynomial)>) -> Column {
    if col.len() <= 1 {
        col.retain(|(_, p)| !p.is_zero());
        return col;
    }
    col.sort_by_key(|e| e.0);
    let mut out: Column = Vec::with_capacity(col.len());
    for (y, p) in col {
        match out.last_mut() {
            Some((last, acc)) if *last == y => *acc += &p,
            _ => out.push((y, p)),
        }
    }
    out.retain(|(_, p)| !p.is_zero());
    out
}

/// `g o f`: apply `f` first. Requires `f.target == g.source`.
pub fn compose(f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap, MapError> {
    if f.target != g.source {
        return Err(MapError::SpaceMismatch);
    }
    let mut acc: HashMap<u32, Vec<crate::algebra::Monomial>> = HashMap::new();
    let cols = f
        .cols
        .iter()
        .map(|col| {
            acc.clear();
            for (y, p) in col {
                for (z, q) in &g.cols[*y as usize] {
                    let slot = acc.entry(*z).or_default();
                    for a in p.terms() {
                        for b in q.terms() {
                            slot.push(*a * *b);
                        }
                    }
                }
            }
            let mut out: Column = acc
                .drain()
                .map(|(z, terms)| (z, Polynomial::from_terms(terms)))
                .filter(|(_, p)| !p.is_zero())
                .collect();
            out.sort_by_key(|e| e.0);
            out
        })
        .collect();
    Ok(ModuleMap { source: f.source.clone(), target: g.target.clone(), degree: f.degree + g.degree, cols })
}
