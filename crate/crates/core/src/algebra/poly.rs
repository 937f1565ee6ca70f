use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul};

use crate::states::HARD_MAX_N;

/// Exponent vector of a monomial `V_0^{e_0} ... V_{n-1}^{e_{n-1}}`.
///
/// Variables are indexed by the row of their O marking.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([u8; HARD_MAX_N]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; HARD_MAX_N]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; HARD_MAX_N];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[usize]) -> Self {
        assert!(exps.len() <= HARD_MAX_N);
        let mut e = [0; HARD_MAX_N];
        for (slot, &k) in e.iter_mut().zip(exps) {
            *slot = u8::try_from(k).expect("exponent fits in u8");
        }
        Monomial(e)
    }

    /// Product of the variables whose bit is set in `mask`.
    pub fn from_mask(mask: u32) -> Self {
        let mut e = [0; HARD_MAX_N];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = ((mask >> i) & 1) as u8;
        }
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn exponents(&self, n: usize) -> Vec<usize> {
        self.0[..n].iter().map(|&k| k as usize).collect()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&k| k as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0) {
            *a = a.checked_add(b).expect("monomial exponent overflow");
        }
        Monomial(e)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &k) in self.0.iter().enumerate().filter(|(_, &k)| k > 0) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if k == 1 {
                write!(f, "V{i}")?;
            } else {
                write!(f, "V{i}^{k}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial over GF(2): the set of monomials with coefficient one, kept
/// sorted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self { terms: alloc::vec![m] }
    }

    /// Sum of the given monomials mod 2; repeated monomials cancel in pairs.
    pub fn from_terms(mut terms: Vec<Monomial>) -> Self {
        terms.sort_unstable();
        let mut out = Vec::with_capacity(terms.len());
        let mut i = 0;
        while i < terms.len() {
            let mut j = i;
            while j < terms.len() && terms[j] == terms[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(terms[i]);
            }
            i = j;
        }
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.binary_search(m).is_ok()
    }

    /// Toggle one monomial.
    pub fn toggle(&mut self, m: Monomial) {
        match self.terms.binary_search(&m) {
            Ok(i) => {
                self.terms.remove(i);
            }
            Err(i) => self.terms.insert(i, m),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        // multiplication by a monomial preserves the order
        Self { terms: self.terms.iter().map(|&t| t * m).collect() }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if rhs.terms.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (a, b) = (&self.terms, &rhs.terms);
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
        self.terms = out;
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        match (self.terms.len(), rhs.terms.len()) {
            (0, _) | (_, 0) => Polynomial::zero(),
            (1, _) => rhs.mul_monomial(self.terms[0]),
            (_, 1) => self.mul_monomial(rhs.terms[0]),
            _ => {
                let mut all = Vec::with_capacity(self.terms.len() * rhs.terms.len());
                for &a in &self.terms {
                    for &b in &rhs.terms {
                        all.push(a * b);
                    }
                }
                Polynomial::from_terms(all)
            }
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m:?}")?;
        }
        Ok(())
    }
}
