#![no_std]
//! Grid homology over `GF(2)[V_0, ..., V_{n-1}]`, crossing-change maps between
//! cross-commutation pairs, and certified bounds on the crossing-change
//! invariant.

extern crate alloc;

pub mod algebra;
pub mod complex;
pub mod gf2;
pub mod grid;
pub mod homology;
pub mod lbound;
pub mod polygon;
pub mod states;
pub mod text;
