//! Certified bounds on the crossing-change invariant: the torsion order from
//! below and a verified chain of crossing changes from above.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::{compose, Degree, MapError, ModuleMap, Polynomial};
use crate::complex::{
    homotopy_residual, ComplexError, CrossingPackage, GridComplex, C_MINUS_DEGREE, C_PLUS_DEGREE, H_DEGREE,
};
use crate::grid::{detect_cross_commutation, GridDiagram, GridError, PlusSide};
use crate::homology::{default_b_cap, tilde_dim, torsion_order, FreeComplex, TorsionReport};
use crate::polygon::Side;

/// Which way a step crosses the distinguished crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// From the positive grid to the negative one.
    PlusToMinus,
    MinusToPlus,
}

impl Direction {
    pub fn tag(self) -> &'static str {
        match self {
            Self::PlusToMinus => "+to-",
            Self::MinusToPlus => "-to+",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "+to-" => Some(Self::PlusToMinus),
            "-to+" => Some(Self::MinusToPlus),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LBoundError {
    #[error("a certificate needs at least one grid")]
    Empty,
    #[error("{grids} grids need {} direction tags, got {tags}", grids - 1)]
    TagCount { grids: usize, tags: usize },
    #[error("grid {index} has size {found}, expected {expected}")]
    SizeMismatch { index: usize, expected: usize, found: usize },
    #[error("grids {index} and {} are not related by a cross-commutation", index + 1)]
    NotAStep { index: usize },
    #[error("step {index} is tagged {tag} but goes the other way")]
    WrongDirection { index: usize, tag: &'static str },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("composite homotopy residual is nonzero on {0}")]
    Residual(String),
}

/// A chain of cross-commutations from `grids[0]` to the last grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub grids: Vec<GridDiagram>,
    pub directions: Vec<Direction>,
}

impl Certificate {
    /// Check sizes, knots and that every step is a cross-commutation going the
    /// tagged way.
    pub fn new(grids: Vec<GridDiagram>, directions: Vec<Direction>) -> Result<Self, LBoundError> {
        let first = grids.first().ok_or(LBoundError::Empty)?;
        if directions.len() + 1 != grids.len() {
            return Err(LBoundError::TagCount { grids: grids.len(), tags: directions.len() });
        }
        let n = first.n();
        for (index, g) in grids.iter().enumerate() {
            if g.n() != n {
                return Err(LBoundError::SizeMismatch { index, expected: n, found: g.n() });
            }
            g.require_knot()?;
        }
        for (index, w) in grids.windows(2).enumerate() {
            let step = detect_cross_commutation(&w[0], &w[1]).ok_or(LBoundError::NotAStep { index })?;
            let (side, _) = crate::grid::designate_plus(&w[0], &w[1], &step)?;
            let actual = match side {
                PlusSide::First => Direction::PlusToMinus,
                PlusSide::Second => Direction::MinusToPlus,
            };
            if actual != directions[index] {
                return Err(LBoundError::WrongDirection { index, tag: directions[index].tag() });
            }
        }
        Ok(Self { grids, directions })
    }

    /// Tag every step by the side its first grid is on.
    pub fn inferred(grids: Vec<GridDiagram>) -> Result<Self, LBoundError> {
        let n = grids.first().ok_or(LBoundError::Empty)?.n();
        if let Some(index) = grids.iter().position(|g| g.n() != n) {
            return Err(LBoundError::SizeMismatch { index, expected: n, found: grids[index].n() });
        }
        let mut directions = Vec::new();
        for (index, w) in grids.windows(2).enumerate() {
            let step = detect_cross_commutation(&w[0], &w[1]).ok_or(LBoundError::NotAStep { index })?;
            directions.push(match crate::grid::designate_plus(&w[0], &w[1], &step)?.0 {
                PlusSide::First => Direction::PlusToMinus,
                PlusSide::Second => Direction::MinusToPlus,
            });
        }
        Self::new(grids, directions)
    }

    pub fn steps(&self) -> usize {
        self.directions.len()
    }
}

/// One verified step seen from its first grid.
#[derive(Clone, Debug)]
pub struct Step {
    pub direction: Direction,
    pub package: CrossingPackage,
}

impl Step {
    fn start_side(&self) -> Side {
        match self.direction {
            Direction::PlusToMinus => Side::Plus,
            Direction::MinusToPlus => Side::Minus,
        }
    }

    fn end_side(&self) -> Side {
        match self.start_side() {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }

    pub fn forward(&self) -> &ModuleMap {
        match self.direction {
            Direction::PlusToMinus => &self.package.c_minus,
            Direction::MinusToPlus => &self.package.c_plus,
        }
    }

    pub fn backward(&self) -> &ModuleMap {
        match self.direction {
            Direction::PlusToMinus => &self.package.c_plus,
            Direction::MinusToPlus => &self.package.c_minus,
        }
    }

    /// Homotopy for `backward o forward` on the first grid.
    pub fn homotopy_from(&self) -> &ModuleMap {
        match self.start_side() {
            Side::Plus => &self.package.h_plus,
            Side::Minus => &self.package.h_minus,
        }
    }

    /// Homotopy for `forward o backward` on the second grid.
    pub fn homotopy_to(&self) -> &ModuleMap {
        match self.end_side() {
            Side::Plus => &self.package.h_plus,
            Side::Minus => &self.package.h_minus,
        }
    }

    pub fn source(&self) -> &GridComplex {
        self.package.complex(self.start_side())
    }

    pub fn target(&self) -> &GridComplex {
        self.package.complex(self.end_side())
    }
}

/// Composite maps along a certificate with their homotopies:
/// `backward o forward + mu = d H_source + H_source d` on the first grid and
/// `forward o backward + mu = d H_target + H_target d` on the last.
#[derive(Clone, Debug)]
pub struct Composite {
    pub forward: ModuleMap,
    pub backward: ModuleMap,
    pub h_source: ModuleMap,
    pub h_target: ModuleMap,
    /// Product of the variables of every step.
    pub mu: Polynomial,
    pub residual_zero: bool,
}

/// Build and verify every step of a certificate.
pub fn steps(cert: &Certificate, cap: usize) -> Result<Vec<Step>, LBoundError> {
    cert.grids
        .windows(2)
        .zip(&cert.directions)
        .map(|(w, &direction)| Ok(Step { direction, package: CrossingPackage::build(&w[0], &w[1], cap)? }))
        .collect()
}

/// Telescope the step homotopies into homotopies for the composites and check
/// both residuals vanish exactly.
pub fn compose_certificates(first: &GridComplex, steps: &[Step]) -> Result<Composite, LBoundError> {
    let g0 = first.grid.clone();
    let size = first.len();
    let mut forward = ModuleMap::identity(g0.clone(), size);
    let mut backward = ModuleMap::identity(g0.clone(), size);
    let mut h_source = ModuleMap::zero(g0.clone(), g0.clone(), size, H_DEGREE);
    let mut h_target = h_source.clone();
    let mut mu = Polynomial::one();
    let mut last = first;
    for (k, step) in steps.iter().enumerate() {
        let v = step.package.v1_polynomial();
        // H_k = v H_{k-1} + B_{k-1} h A_{k-1} on the first grid
        let pulled = compose(&compose(&forward, step.homotopy_from())?, &backward)?;
        h_source =
            if k == 0 { pulled } else { h_source.mul_polynomial(&v).add(&pulled.with_degree(h_source.degree()))? };
        // K_k = mu_{k-1} h' + f K_{k-1} g on the current last grid
        let pushed = compose(&compose(step.backward(), &h_target)?, step.forward())?;
        let local = step.homotopy_to().mul_polynomial(&mu);
        h_target = if k == 0 { local } else { local.add(&pushed.with_degree(H_DEGREE))? };
        forward = compose(&forward, step.forward())?;
        backward = compose(step.backward(), &backward)?;
        mu = &mu * &v;
        last = step.target();
    }
    let target = last;
    let check =
        |cx: &GridComplex, h: &ModuleMap, a: &ModuleMap, b: &ModuleMap| -> Result<Option<String>, LBoundError> {
            let r = homotopy_residual(cx, h, a, b, &mu)?;
            Ok(r.first_nonzero().map(|(x, y, p)| alloc::format!("state {x} -> state {y} with coefficient {p:?}")))
        };
    let source_bad = check(first, &h_source, &forward, &backward)?;
    let target_bad = check(target, &h_target, &backward, &forward)?;
    let residual_zero = source_bad.is_none() && target_bad.is_none();
    if let Some(w) = source_bad.or(target_bad) {
        return Err(LBoundError::Residual(w));
    }
    Ok(Composite { forward, backward, h_source, h_target, mu, residual_zero })
}

/// Expected degrees of the composites of `m` steps taken in the given
/// directions.
pub fn composite_degree(directions: &[Direction]) -> Degree {
    directions.iter().fold(Degree::new(0, 0), |acc, d| {
        acc + match d {
            Direction::PlusToMinus => C_MINUS_DEGREE,
            Direction::MinusToPlus => C_PLUS_DEGREE,
        }
    })
}

#[derive(Clone, Debug)]
pub struct LBoundReport {
    /// Torsion order of the first grid, when the last grid is an unknot and
    /// the torsion search stabilized.
    pub lower: Option<usize>,
    pub upper: usize,
    pub exact: bool,
    /// `lower <= upper`; a violation is reported, never hidden.
    pub consistent: bool,
    pub endpoint_unknot: bool,
    pub torsion: Option<TorsionReport>,
    pub composite: Composite,
}

/// Bound the invariant of the first grid's knot relative to the last one.
pub fn lbound(cert: &Certificate, cap: usize) -> Result<LBoundReport, LBoundError> {
    let g0 = &cert.grids[0];
    let first = crate::complex::differential(g0, crate::complex::Flavor::Filtered, cap)?;
    let steps = steps(cert, cap)?;
    let composite = compose_certificates(&first, &steps)?;
    let end = cert.grids.last().expect("nonempty");
    let endpoint_unknot = tilde_dim(end, cap)? == 1usize << (end.n() - 1);
    let torsion = if endpoint_unknot {
        let unblocked = crate::complex::differential(g0, crate::complex::Flavor::Unblocked, cap)?;
        let reduced = FreeComplex::from_grid(&unblocked).reduced();
        torsion_order(&reduced, 1, default_b_cap(&reduced))
    } else {
        None
    };
    let lower = torsion.as_ref().and_then(|t| t.order);
    let upper = cert.steps();
    Ok(LBoundReport {
        lower,
        upper,
        exact: lower == Some(upper),
        consistent: lower.is_none_or(|l| l <= upper),
        endpoint_unknot,
        torsion,
        composite,
    })
}
