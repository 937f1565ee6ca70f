//! Exact linear algebra over GF(2): bit-packed dense vectors for small
//! dimensions, sorted index lists above that, and a pivot reducer shared by
//! rank, kernel and homology computations.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

/// Dimension above which sparse vectors are used.
pub const DENSE_LIMIT: usize = 4096;

pub trait GfVec: Clone {
    fn zero(dim: usize) -> Self;
    fn toggle(&mut self, i: usize);
    fn get(&self, i: usize) -> bool;
    /// Highest set index.
    fn pivot(&self) -> Option<usize>;
    fn add_assign(&mut self, other: &Self);
    fn is_zero(&self) -> bool;
    fn ones(&self) -> Vec<usize>;

    fn from_indices(dim: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zero(dim);
        for i in idx {
            v.toggle(i);
        }
        v
    }

    fn unit(dim: usize, i: usize) -> Self {
        Self::from_indices(dim, [i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseVec {
    words: Vec<u64>,
}

impl GfVec for DenseVec {
    fn zero(dim: usize) -> Self {
        Self { words: vec![0; dim.div_ceil(64)] }
    }

    fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn pivot(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| 64 * k + 63 - w.leading_zeros() as usize)
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(64 * k + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }
}

/// Sorted list of set indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    idx: Vec<u32>,
}

impl GfVec for SparseVec {
    fn zero(_dim: usize) -> Self {
        Self::default()
    }

    fn toggle(&mut self, i: usize) {
        match self.idx.binary_search(&(i as u32)) {
            Ok(k) => {
                self.idx.remove(k);
            }
            Err(k) => self.idx.insert(k, i as u32),
        }
    }

    fn get(&self, i: usize) -> bool {
        self.idx.binary_search(&(i as u32)).is_ok()
    }

    fn pivot(&self) -> Option<usize> {
        self.idx.last().map(|&i| i as usize)
    }

    fn add_assign(&mut self, other: &Self) {
        let (a, b) = (&self.idx, &other.idx);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        self.idx = out;
    }

    fn is_zero(&self) -> bool {
        self.idx.is_empty()
    }

    fn ones(&self) -> Vec<usize> {
        self.idx.iter().map(|&i| i as usize).collect()
    }

    fn from_indices(_dim: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<u32> = idx.into_iter().map(|i| i as u32).collect();
        v.sort_unstable();
        let mut out = Vec::with_capacity(v.len());
        let mut k = 0;
        while k < v.len() {
            let mut l = k;
            while l < v.len() && v[l] == v[k] {
                l += 1;
            }
            if (l - k) % 2 == 1 {
                out.push(v[k]);
            }
            k = l;
        }
        Self { idx: out }
    }
}

/// Vectors kept with pairwise distinct pivots, each carrying a tag that
/// records how it was assembled.
#[derive(Clone, Debug)]
pub struct PivotReducer<V: GfVec, T: GfVec> {
    stored: Vec<(V, T)>,
    by_pivot: HashMap<usize, usize>,
}

impl<V: GfVec, T: GfVec> Default for PivotReducer<V, T> {
    fn default() -> Self {
        Self { stored: Vec::new(), by_pivot: HashMap::new() }
    }
}

impl<V: GfVec, T: GfVec> PivotReducer<V, T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.stored.len()
    }

    /// Clear pivots of `v` against stored vectors until the pivot is new or
    /// `v` vanishes; the tag accumulates alongside.
    pub fn reduce(&self, v: &mut V, tag: &mut T) {
        while let Some(p) = v.pivot() {
            match self.by_pivot.get(&p) {
                Some(&k) => {
                    v.add_assign(&self.stored[k].0);
                    tag.add_assign(&self.stored[k].1);
                }
                None => return,
            }
        }
    }

    /// Reduce and store. Returns `None` when `v` was stored, or the tag of the
    /// zero combination when `v` is dependent.
    pub fn insert(&mut self, mut v: V, mut tag: T) -> Option<T> {
        self.reduce(&mut v, &mut tag);
        match v.pivot() {
            Some(p) => {
                self.by_pivot.insert(p, self.stored.len());
                self.stored.push((v, tag));
                None
            }
            None => Some(tag),
        }
    }
}

/// Rank of a set of column vectors.
pub fn rank<V: GfVec>(cols: impl IntoIterator<Item = V>) -> usize {
    let mut r: PivotReducer<V, SparseVec> = PivotReducer::new();
    for c in cols {
        r.insert(c, SparseVec::default());
    }
    r.rank()
}

/// Basis of the kernel of the matrix whose columns are `cols`, as index
/// combinations of the columns.
pub fn kernel<V: GfVec>(cols: impl IntoIterator<Item = V>) -> Vec<SparseVec> {
    let mut r: PivotReducer<V, SparseVec> = PivotReducer::new();
    let mut out = Vec::new();
    for (j, c) in cols.into_iter().enumerate() {
        if let Some(tag) = r.insert(c, SparseVec::unit(0, j)) {
            out.push(tag);
        }
    }
    out
}

/// Homology `ker(out) / im(in)` of one slice, with pivot-ordered
/// representatives.
#[derive(Clone, Debug)]
pub struct QuotientBasis<V: GfVec> {
    dim: usize,
    reps: Vec<V>,
    reducer: PivotReducer<V, SparseVec>,
}

impl<V: GfVec> QuotientBasis<V> {
    /// `incoming` are the images spanning the boundaries, `outgoing` the
    /// columns of the outgoing map indexed by the slice basis of dimension `dim`.
    pub fn new(dim: usize, incoming: impl IntoIterator<Item = V>, outgoing: impl IntoIterator<Item = SparseVec>) -> Self
    where
        V: GfVec,
    {
        let mut reducer: PivotReducer<V, SparseVec> = PivotReducer::new();
        for b in incoming {
            reducer.insert(b, SparseVec::default());
        }
        let cycles = kernel(outgoing);
        let mut reps = Vec::new();
        for z in cycles {
            let v = V::from_indices(dim, z.ones());
            if reducer.insert(v.clone(), SparseVec::unit(0, reps.len())).is_none() {
                reps.push(v);
            }
        }
        Self { dim: reps.len(), reps, reducer }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn representatives(&self) -> &[V] {
        &self.reps
    }

    /// Coordinates of a cycle in the representative basis; `None` when `z` is
    /// not in the span of cycles.
    pub fn coordinates(&self, z: &V) -> Option<SparseVec> {
        let mut v = z.clone();
        let mut tag = SparseVec::default();
        self.reducer.reduce(&mut v, &mut tag);
        v.is_zero().then_some(tag)
    }
}

/// Row-major bit matrix for dense rank computations.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    rows: Vec<DenseVec>,
    ncols: usize,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { rows: vec![DenseVec::zero(ncols); nrows], ncols }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.rows[r].toggle(c);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        rank(self.rows.iter().cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dense_pivot_and_ones() {
        let v = DenseVec::from_indices(130, [3, 64, 129]);
        assert_eq!(v.pivot(), Some(129));
        assert_eq!(v.ones(), vec![3, 64, 129]);
        assert!(DenseVec::zero(10).is_zero());
    }

    #[test]
    fn kernel_of_small_matrix() {
        // columns e0, e1, e0+e1
        let cols =
            [SparseVec::from_indices(2, [0]), SparseVec::from_indices(2, [1]), SparseVec::from_indices(2, [0, 1])];
        let k = kernel(cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].ones(), vec![0, 1, 2]);
    }

    #[test]
    fn quotient_of_chain() {
        // C: a -> b, slice {b, c} with no outgoing map: H = <c>
        let incoming = [SparseVec::from_indices(2, [0])];
        let outgoing = [SparseVec::default(), SparseVec::default()];
        let q = QuotientBasis::<SparseVec>::new(2, incoming, outgoing);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.coordinates(&SparseVec::from_indices(2, [0, 1])).unwrap().ones(), vec![0]);
        assert!(q.coordinates(&SparseVec::from_indices(2, [0])).unwrap().is_zero());
    }

    proptest! {
        #[test]
        fn dense_and_sparse_agree(rows in proptest::collection::vec(proptest::collection::vec(0usize..40, 0..8), 0..30)) {
            let d = rank(rows.iter().map(|r| DenseVec::from_indices(40, r.iter().copied())));
            let s = rank(rows.iter().map(|r| SparseVec::from_indices(40, r.iter().copied())));
            prop_assert_eq!(d, s);
            let k = kernel(rows.iter().map(|r| SparseVec::from_indices(40, r.iter().copied())));
            prop_assert_eq!(k.len() + d, rows.len());
        }
    }
}
