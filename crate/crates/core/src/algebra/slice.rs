use alloc::vec::Vec;

use hashbrown::HashMap;

use super::map::{Column, ModuleMap};
use super::poly::Monomial;
use crate::gf2::{GfVec, SparseVec};
use crate::states::Bigrading;

/// The finite basis of one bigraded piece `(d, s)` of a free module: pairs of
/// generator and monomial `m` with `M(m x) = d`, `A(m x) = s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceBasis {
    pub bigrading: (i64, i64),
    elements: Vec<(u32, Monomial)>,
    index: HashMap<(u32, Monomial), usize>,
}

impl SliceBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[(u32, Monomial)] {
        &self.elements
    }

    pub fn position(&self, generator: u32, m: &Monomial) -> Option<usize> {
        self.index.get(&(generator, *m)).copied()
    }
}

/// All monomials of total degree `k` in `n` variables, in increasing order.
pub fn monomials_of_degree(n: usize, k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = alloc::vec![0usize; n];
    fill(&mut exps, 0, k, &mut out);
    out.sort_unstable();
    out
}

fn fill(exps: &mut [usize], i: usize, left: usize, out: &mut Vec<Monomial>) {
    if i + 1 == exps.len() {
        exps[i] = left;
        out.push(Monomial::from_exponents(exps));
        return;
    }
    for k in 0..=left {
        exps[i] = k;
        fill(exps, i + 1, left - k, out);
    }
}

/// Basis of bigrading `(d, s)` for generators with the given gradings.
pub fn slice_basis(gradings: &[Bigrading], n_vars: usize, d: i64, s: i64) -> SliceBasis {
    let mut by_degree: HashMap<usize, Vec<Monomial>> = HashMap::new();
    let mut elements = Vec::new();
    for (x, g) in gradings.iter().enumerate() {
        let k = g.alexander - s;
        if k < 0 || g.maslov - 2 * k != d {
            continue;
        }
        let monos = by_degree.entry(k as usize).or_insert_with(|| monomials_of_degree(n_vars, k as usize));
        elements.extend(monos.iter().map(|m| (x as u32, *m)));
    }
    let index = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    SliceBasis { bigrading: (d, s), elements, index }
}

/// Matrix of a map on slices, as columns indexed by `from` with row indices
/// into `to`. Terms landing outside `to` are dropped, so the caller picks the
/// homogeneous part by choosing `to`.
pub fn matrix_from_columns(cols: &[Column], from: &SliceBasis, to: &SliceBasis) -> Vec<SparseVec> {
    from.elements
        .iter()
        .map(|(x, m)| {
            let mut rows = Vec::new();
            for (y, p) in &cols[*x as usize] {
                for t in p.terms() {
                    if let Some(i) = to.position(*y, &(*t * *m)) {
                        rows.push(i);
                    }
                }
            }
            SparseVec::from_indices(to.len(), rows)
        })
        .collect()
}

pub fn matrix_on_slice(f: &ModuleMap, from: &SliceBasis, to: &SliceBasis) -> Vec<SparseVec> {
    matrix_from_columns(f.columns(), from, to)
}
