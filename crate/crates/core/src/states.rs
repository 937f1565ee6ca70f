//! Grid states and their Maslov and Alexander gradings.

use alloc::vec::Vec;

use num_rational::Ratio;
use thiserror::Error;

use crate::grid::GridDiagram;

/// Largest grid number enumerated without an explicit override.
pub const DEFAULT_MAX_N: usize = 7;

/// Hard limit imposed by the monomial packing.
pub const HARD_MAX_N: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("grid number {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("non-integral Alexander grading {num}/{den} on a knot diagram")]
    NonIntegralAlexander { num: i64, den: i64 },
}

/// A grid state: the component on vertical circle `j` is the point
/// `(j, sigma[j])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridState {
    sigma: Vec<u8>,
}

impl GridState {
    pub fn new(sigma: Vec<usize>) -> Option<Self> {
        let n = sigma.len();
        let mut seen = [false; 256];
        for &r in &sigma {
            if r >= n || core::mem::replace(&mut seen[r], true) {
                return None;
            }
        }
        Some(Self { sigma: sigma.into_iter().map(|r| r as u8).collect() })
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn row(&self, column: usize) -> usize {
        self.sigma[column] as usize
    }

    pub fn sigma(&self) -> Vec<usize> {
        self.sigma.iter().map(|&r| r as usize).collect()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.sigma
    }

    /// Exchange the components on columns `a` and `b`.
    pub fn transposed(&self, a: usize, b: usize) -> Self {
        let mut sigma = self.sigma.clone();
        sigma.swap(a, b);
        Self { sigma }
    }

    /// Relabel under the column rotation `GridDiagram::rotate_columns(k)`.
    pub fn rotate_columns(&self, k: usize) -> Self {
        let n = self.n();
        Self { sigma: (0..n).map(|c| self.sigma[(c + k) % n]).collect() }
    }

    /// Lexicographic rank among all states of the same size.
    pub fn index(&self) -> usize {
        lex_rank(&self.sigma)
    }

    /// Columns where the two states disagree.
    pub fn differing_columns(&self, other: &Self) -> Vec<usize> {
        (0..self.n()).filter(|&c| self.sigma[c] != other.sigma[c]).collect()
    }
}

/// All grid states of size `n`, in lexicographic order of `sigma`.
#[derive(Clone, Debug)]
pub struct StateSpace {
    n: usize,
    states: Vec<GridState>,
}

impl StateSpace {
    pub fn new(n: usize, cap: usize) -> Result<Self, StateError> {
        if n > cap.min(HARD_MAX_N) {
            return Err(StateError::CapExceeded { n, cap: cap.min(HARD_MAX_N) });
        }
        Ok(Self { n, states: enumerate_states_unchecked(n) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[GridState] {
        &self.states
    }

    pub fn get(&self, index: usize) -> &GridState {
        &self.states[index]
    }

    /// Lexicographic rank of a state (Lehmer code).
    pub fn index_of(&self, x: &GridState) -> usize {
        lex_rank(&x.sigma)
    }
}

fn lex_rank(sigma: &[u8]) -> usize {
    let n = sigma.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = sigma[i + 1..].iter().filter(|&&v| v < sigma[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Lexicographic enumeration of all permutations of `0..n`.
pub fn enumerate_states(g: &GridDiagram, cap: usize) -> Result<Vec<GridState>, StateError> {
    Ok(StateSpace::new(g.n(), cap)?.states)
}

fn enumerate_states_unchecked(n: usize) -> Vec<GridState> {
    let mut out = Vec::new();
    let mut perm: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(GridState { sigma: perm.clone() });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

/// A point of the plane in half-integer units (`(1, 1)` is `(1/2, 1/2)`).
pub type HalfPoint = (i64, i64);

/// A formal integer combination of planar points.
#[derive(Clone, Debug, Default)]
pub struct FormalSum {
    terms: Vec<(i64, HalfPoint)>,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, coefficient: i64, p: HalfPoint) {
        self.terms.push((coefficient, p));
    }

    pub fn from_points(points: impl IntoIterator<Item = HalfPoint>) -> Self {
        Self { terms: points.into_iter().map(|p| (1, p)).collect() }
    }

    /// `self - other`, termwise.
    pub fn minus(mut self, other: &Self) -> Self {
        self.terms.extend(other.terms.iter().map(|&(c, p)| (-c, p)));
        self
    }

    pub fn state(x: &GridState) -> Self {
        Self::from_points((0..x.n()).map(|c| (2 * c as i64, 2 * x.row(c) as i64)))
    }

    pub fn markings(rows: &[usize]) -> Self {
        Self::from_points(rows.iter().enumerate().map(|(c, &r)| (2 * c as i64 + 1, 2 * r as i64 + 1)))
    }
}

/// `J(P, Q) = (I(P, Q) + I(Q, P)) / 2`, extended bilinearly, where `I`
/// counts pairs `p < q` in both coordinates.
pub fn j_pairing(p: &FormalSum, q: &FormalSum) -> Ratio<i64> {
    let mut twice = 0i64;
    for &(a, pa) in &p.terms {
        for &(b, qb) in &q.terms {
            let below = pa.0 < qb.0 && pa.1 < qb.1;
            let above = qb.0 < pa.0 && qb.1 < pa.1;
            twice += a * b * (below as i64 + above as i64);
        }
    }
    Ratio::new(twice, 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bigrading {
    pub maslov: i64,
    pub alexander: i64,
}

/// Maslov gradings with respect to both marking families, and the Alexander
/// function as an exact rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateGradings {
    pub m_o: Ratio<i64>,
    pub m_x: Ratio<i64>,
    pub alexander: Ratio<i64>,
}

impl StateGradings {
    pub fn bigrading(&self) -> Result<Bigrading, StateError> {
        let a = self.alexander;
        if !a.is_integer() || !self.m_o.is_integer() {
            return Err(StateError::NonIntegralAlexander { num: *a.numer(), den: *a.denom() });
        }
        Ok(Bigrading { maslov: self.m_o.to_integer(), alexander: a.to_integer() })
    }
}

pub fn maslov(rows: &[usize], x: &GridState) -> Ratio<i64> {
    let diff = FormalSum::state(x).minus(&FormalSum::markings(rows));
    j_pairing(&diff, &diff) + 1
}

pub fn gradings(g: &GridDiagram, x: &GridState) -> StateGradings {
    let m_o = maslov(g.o_rows(), x);
    let m_x = maslov(g.x_rows(), x);
    let alexander = (m_o - m_x) / 2 - Ratio::new(g.n() as i64 - 1, 2);
    StateGradings { m_o, m_x, alexander }
}

/// Bigrading of every state in `space`, indexed like the space.
pub fn grading_table(g: &GridDiagram, space: &StateSpace) -> Result<Vec<Bigrading>, StateError> {
    space.states().iter().map(|x| gradings(g, x).bigrading()).collect()
}

/// The state whose components sit at the upper-left corners of the O cells.
pub fn nwo_state(g: &GridDiagram) -> GridState {
    let n = g.n();
    GridState::new(g.o_rows().iter().map(|&r| (r + 1) % n).collect()).expect("shifted permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unknot2() -> GridDiagram {
        GridDiagram::new(alloc::vec![0, 1], alloc::vec![1, 0]).unwrap()
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let sp = StateSpace::new(3, DEFAULT_MAX_N).unwrap();
        assert_eq!(sp.len(), 6);
        assert_eq!(sp.get(0).sigma(), alloc::vec![0, 1, 2]);
        assert_eq!(sp.get(5).sigma(), alloc::vec![2, 1, 0]);
        assert_eq!(StateSpace::new(5, DEFAULT_MAX_N).unwrap().len(), 120);
        assert_eq!(StateSpace::new(2, DEFAULT_MAX_N).unwrap().len(), 2);
        for (i, x) in sp.states().iter().enumerate() {
            assert_eq!(sp.index_of(x), i);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(StateSpace::new(8, 7).unwrap_err(), StateError::CapExceeded { n: 8, cap: 7 });
        assert!(StateSpace::new(8, 8).is_ok());
    }

    #[test]
    fn j_pairing_basics() {
        let empty = FormalSum::new();
        let p = FormalSum::from_points([(0, 0), (2, 4)]);
        assert_eq!(j_pairing(&empty, &p), Ratio::from_integer(0));
        let a = FormalSum::from_points([(0, 0)]);
        let b = FormalSum::from_points([(2, 2)]);
        assert_eq!(j_pairing(&a, &b), Ratio::new(1, 2));
    }

    #[test]
    fn nwo_of_unknot2() {
        let g = unknot2();
        let x = nwo_state(&g);
        assert_eq!(x.sigma(), alloc::vec![0, 1]);
        // J(x - O, x - O) = -1 by the four-term expansion
        let d = FormalSum::state(&x).minus(&FormalSum::markings(g.o_rows()));
        assert_eq!(j_pairing(&d, &d), Ratio::from_integer(-1));
        assert_eq!(gradings(&g, &x).m_o, Ratio::from_integer(0));
    }

    #[test]
    fn unknot2_gradings() {
        let g = unknot2();
        let sp = StateSpace::new(2, DEFAULT_MAX_N).unwrap();
        let table = grading_table(&g, &sp).unwrap();
        let mut got: Vec<_> = table.iter().map(|b| (b.maslov, b.alexander)).collect();
        got.sort();
        assert_eq!(got, alloc::vec![(-1, -1), (0, 0)]);
    }

    proptest! {
        #[test]
        fn nwo_is_a_state_with_zero_maslov(perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
                                           shift in 1..6usize) {
            let n = perm.len();
            let o: Vec<usize> = perm.clone();
            let x: Vec<usize> = perm.iter().map(|&r| (r + shift) % n).collect();
            let g = GridDiagram::new(x, o).unwrap();
            let nwo = nwo_state(&g);
            prop_assert_eq!(nwo.n(), n);
            prop_assert_eq!(gradings(&g, &nwo).m_o, Ratio::from_integer(0));
        }
    }
}
