//! Grid complexes, the crossing-change maps between the two grids of a
//! cross-commutation pair, and exact verification of their identities.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::{compose, Column, Degree, DegreeMode, DegreeReport, MapError, ModuleMap, Monomial, Polynomial};
use crate::grid::{GridDiagram, GridError};
use crate::polygon::{
    hexagons_from, pentagons_from, rectangles_from, BuildError, CombinedDiagram, HexOrder, PositionClass, Side, Vertex,
};
use crate::states::{grading_table, Bigrading, GridState, StateError, StateSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Rectangles avoiding X, weighted by the O markings they contain.
    Unblocked,
    /// All empty rectangles, weighted by the O markings they contain.
    Filtered,
    /// Rectangles avoiding both X and O, all variables set to zero.
    Tilde,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Self::Unblocked => "unblocked",
            Self::Filtered => "filtered",
            Self::Tilde => "tilde",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("the {flavor} differential does not square to zero: {witness}")]
    NotADifferential { flavor: &'static str, witness: Witness },
    #[error("crossing maps failed verification: {0}")]
    Verification(String),
}

/// A nonzero coefficient `x -> p * z` found where zero was required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub source: usize,
    pub target: usize,
    pub coefficient: Polynomial,
}

impl core::fmt::Display for Witness {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "state {} -> state {} with coefficient {:?}", self.source, self.target, self.coefficient)
    }
}

fn witness_of(map: &ModuleMap) -> Option<Witness> {
    map.first_nonzero().map(|(source, target, coefficient)| Witness { source, target, coefficient })
}

/// Column of the differential at `x`.
pub fn differential_column(g: &GridDiagram, flavor: Flavor, x: &GridState) -> Column {
    let mut col = Vec::new();
    for (y, r) in rectangles_from(g, x) {
        let coefficient = match flavor {
            Flavor::Unblocked if r.x_mask != 0 => continue,
            Flavor::Tilde if r.x_mask != 0 || r.o_mask != 0 => continue,
            Flavor::Tilde => Monomial::ONE,
            _ => Monomial::from_mask(r.o_mask),
        };
        col.push((y.index() as u32, Polynomial::monomial(coefficient)));
    }
    crate::algebra::normalize_column(col)
}

#[derive(Clone, Debug)]
pub struct GridComplex {
    pub grid: GridDiagram,
    pub flavor: Flavor,
    pub differential: ModuleMap,
    pub gradings: Vec<Bigrading>,
}

impl GridComplex {
    /// Assemble from precomputed columns (one per state in lexicographic
    /// order) and verify that the differential squares to zero.
    pub fn from_columns(
        grid: GridDiagram,
        flavor: Flavor,
        cols: Vec<Column>,
        gradings: Vec<Bigrading>,
    ) -> Result<Self, ComplexError> {
        let differential = ModuleMap::from_columns(grid.clone(), grid.clone(), Degree::new(-1, 0), cols);
        let sq = compose(&differential, &differential)?;
        if let Some(witness) = witness_of(&sq) {
            return Err(ComplexError::NotADifferential { flavor: flavor.name(), witness });
        }
        Ok(Self { grid, flavor, differential, gradings })
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn degree_mode(&self) -> DegreeMode {
        match self.flavor {
            Flavor::Filtered => DegreeMode::Filtered,
            _ => DegreeMode::Graded,
        }
    }
}

/// Build and check a grid complex. Refuses grids above `cap`.
pub fn differential(g: &GridDiagram, flavor: Flavor, cap: usize) -> Result<GridComplex, ComplexError> {
    g.require_knot()?;
    let space = StateSpace::new(g.n(), cap)?;
    let gradings = grading_table(g, &space)?;
    let cols = space.states().iter().map(|x| differential_column(g, flavor, x)).collect();
    GridComplex::from_columns(g.clone(), flavor, cols, gradings)
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub detail: String,
}

impl Check {
    fn from_residual(name: &str, residual: &ModuleMap) -> Self {
        let witness = witness_of(residual);
        Self { name: name.into(), passed: witness.is_none(), witness, detail: String::new() }
    }
}

/// `d_tgt o f + f o d_src`, which vanishes exactly when `f` is a chain map.
pub fn chain_map_residual(f: &ModuleMap, src: &GridComplex, tgt: &GridComplex) -> Result<ModuleMap, MapError> {
    compose(f, &tgt.differential)?
        .add(&compose(&src.differential, f)?.with_degree(f.degree() + tgt.differential.degree()))
}

pub fn verify_chain_map(f: &ModuleMap, src: &GridComplex, tgt: &GridComplex) -> Result<Check, MapError> {
    Ok(Check::from_residual("chain map", &chain_map_residual(f, src, tgt)?))
}

/// Every term of `f` has Maslov shift exactly `maslov` and Alexander shift at
/// most `alexander`.
pub fn verify_degrees(f: &ModuleMap, src: &[Bigrading], tgt: &[Bigrading], claimed: Degree) -> DegreeReport {
    f.clone().with_degree(claimed).degree_report(src, tgt, DegreeMode::Filtered)
}

/// `d o h + h o d + b o a + mu`, the residual of a homotopy between `b o a`
/// and multiplication by `mu` on the complex `cx`.
pub fn homotopy_residual(
    cx: &GridComplex,
    h: &ModuleMap,
    a: &ModuleMap,
    b: &ModuleMap,
    mu: &Polynomial,
) -> Result<ModuleMap, MapError> {
    let d = &cx.differential;
    let deg = a.degree() + b.degree();
    let mut acc = compose(h, d)?.with_degree(deg);
    acc = acc.add(&compose(d, h)?.with_degree(deg))?;
    acc = acc.add(&compose(a, b)?.with_degree(deg))?;
    acc.add(&ModuleMap::scalar(cx.grid.clone(), cx.len(), mu, deg))
}

/// The four maps of a crossing change, expressed on the input grids.
#[derive(Clone, Debug)]
pub struct CrossingPackage {
    pub cd: CombinedDiagram,
    /// Positive and negative grids in the input column labeling.
    pub plus: GridComplex,
    pub minus: GridComplex,
    /// Pentagons through `s`, from the positive grid to the negative one.
    pub c_minus: ModuleMap,
    /// Pentagons through `t`, from the negative grid to the positive one.
    pub c_plus: ModuleMap,
    /// Hexagons with corners `s` then `t`, on the negative grid.
    pub h_minus: ModuleMap,
    /// Hexagons with corners `t` then `s`, on the positive grid.
    pub h_plus: ModuleMap,
    /// Variable of the upper swapped O marking.
    pub v1: usize,
    pub report: Vec<Check>,
}

pub const C_MINUS_DEGREE: Degree = Degree::new(0, 0);
pub const C_PLUS_DEGREE: Degree = Degree::new(-2, -1);
pub const H_DEGREE: Degree = Degree::new(-1, 0);

/// Build a map on input-frame labels from polygons enumerated in the rotated
/// frame of `cd`.
fn polygon_map<F>(
    cd: &CombinedDiagram,
    space: &StateSpace,
    src: &GridDiagram,
    tgt: &GridDiagram,
    degree: Degree,
    each: F,
) -> ModuleMap
where
    F: Fn(&GridState) -> Vec<(GridState, crate::polygon::Polygon)>,
{
    let mut cols: Vec<Column> = alloc::vec![Vec::new(); space.len()];
    for x in space.states() {
        let rotated = cd.rotate(x);
        let col = &mut cols[x.index()];
        for (y, p) in each(&rotated) {
            col.push((cd.unrotate(&y).index() as u32, Polynomial::monomial(Monomial::from_mask(p.o_mask))));
        }
    }
    ModuleMap::from_columns(src.clone(), tgt.clone(), degree, cols)
}

impl CrossingPackage {
    /// Build the maps for a cross-commutation pair of knot grids and run every
    /// verification. Fails closed: any failed identity is an error.
    pub fn build(a: &GridDiagram, b: &GridDiagram, cap: usize) -> Result<Self, ComplexError> {
        let pkg = Self::build_unchecked(a, b, cap)?;
        if let Some(bad) = pkg.report.iter().find(|c| !c.passed) {
            let w = bad.witness.as_ref().map(|w| alloc::format!(": {w}")).unwrap_or_default();
            return Err(ComplexError::Verification(alloc::format!("{} failed{w}{}", bad.name, bad.detail)));
        }
        Ok(pkg)
    }

    /// Build and fill the report without failing on a verification error.
    pub fn build_unchecked(a: &GridDiagram, b: &GridDiagram, cap: usize) -> Result<Self, ComplexError> {
        let cd = CombinedDiagram::build(a, b)?;
        let n = a.n();
        let back = (n - cd.designation().rotation) % n;
        let plus_grid = cd.plus().rotate_columns(back);
        let minus_grid = cd.minus().rotate_columns(back);
        let plus = differential(&plus_grid, Flavor::Filtered, cap)?;
        let minus = differential(&minus_grid, Flavor::Filtered, cap)?;
        let space = StateSpace::new(n, cap)?;

        let c_minus =
            polygon_map(&cd, &space, &plus_grid, &minus_grid, C_MINUS_DEGREE, |x| pentagons_from(&cd, Vertex::S, x));
        let c_plus =
            polygon_map(&cd, &space, &minus_grid, &plus_grid, C_PLUS_DEGREE, |x| pentagons_from(&cd, Vertex::T, x));
        let h_minus =
            polygon_map(&cd, &space, &minus_grid, &minus_grid, H_DEGREE, |x| hexagons_from(&cd, HexOrder::St, x));
        let h_plus =
            polygon_map(&cd, &space, &plus_grid, &plus_grid, H_DEGREE, |x| hexagons_from(&cd, HexOrder::Ts, x));
        let mut pkg = Self { v1: cd.o1_row(), cd, plus, minus, c_minus, c_plus, h_minus, h_plus, report: Vec::new() };
        pkg.report = pkg.verify()?;
        Ok(pkg)
    }

    pub fn v1_polynomial(&self) -> Polynomial {
        Polynomial::monomial(Monomial::var(self.v1))
    }

    pub fn complex(&self, side: Side) -> &GridComplex {
        match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        }
    }

    /// Run every check on the current maps.
    pub fn verify(&self) -> Result<Vec<Check>, MapError> {
        let (p, m) = (&self.plus, &self.minus);
        let mut out = Vec::new();
        let mut named = |name: &str, mut c: Check| {
            c.name = name.into();
            out.push(c);
        };
        named("C- chain map", verify_chain_map(&self.c_minus, p, m)?);
        named("C+ chain map", verify_chain_map(&self.c_plus, m, p)?);
        for (name, f, src, tgt, deg) in [
            ("C- degree", &self.c_minus, p, m, C_MINUS_DEGREE),
            ("C+ degree", &self.c_plus, m, p, C_PLUS_DEGREE),
            ("H+ degree", &self.h_plus, p, p, H_DEGREE),
            ("H- degree", &self.h_minus, m, m, H_DEGREE),
        ] {
            let report = verify_degrees(f, &src.gradings, &tgt.gradings, deg);
            let witness = report.first_violation.map(|(x, y, mono, _)| Witness {
                source: x,
                target: y,
                coefficient: Polynomial::monomial(mono),
            });
            let detail = alloc::format!(" shifts {:?}", report.histogram);
            named(name, Check { name: String::new(), passed: witness.is_none(), witness, detail });
        }
        let v1 = self.v1_polynomial();
        named(
            "H+ homotopy",
            Check::from_residual("", &homotopy_residual(p, &self.h_plus, &self.c_minus, &self.c_plus, &v1)?),
        );
        named(
            "H- homotopy",
            Check::from_residual("", &homotopy_residual(m, &self.h_minus, &self.c_plus, &self.c_minus, &v1)?),
        );
        Ok(out)
    }

    pub fn passed(&self) -> bool {
        self.report.iter().all(|c| c.passed)
    }
}

/// One row of the local grading tables: what happens to a pentagon term,
/// split through the nearest-point map into a rectangle and a change of the
/// distinguished component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalChange {
    pub class: PositionClass,
    /// `#(p ∩ O) - #(r ∩ O)` for the associated rectangle `r`.
    pub delta_r: i64,
    /// Maslov change of the nearest-point map at the target state.
    pub delta_m: i64,
    pub delta_a: i64,
    /// Total shift of the term `x -> V^p y`.
    pub total_m: i64,
    pub total_a: i64,
    /// Upper bound for `total_a` predicted by the table row.
    pub total_a_bound: i64,
}

/// Table row `(delta_r, delta_m, delta_a, total_m, total_a bound)` for
/// pentagons through `s`, indexed by the class of the target's component on
/// gamma.
pub fn table_s(class: PositionClass) -> (i64, i64, i64, i64, i64) {
    match class {
        PositionClass::A => (-1, -1, -1, 0, 0),
        PositionClass::B | PositionClass::D => (0, 1, 0, 0, 0),
        PositionClass::C => (0, 1, 1, 0, 0),
    }
}

/// Same for pentagons through `t`, by the class of the target's component on
/// beta.
pub fn table_t(class: PositionClass) -> (i64, i64, i64, i64, i64) {
    match class {
        PositionClass::A => (1, 1, 1, -2, -1),
        PositionClass::B | PositionClass::D => (0, -1, 0, -2, -1),
        PositionClass::C => (0, -1, -1, -2, -1),
    }
}

impl LocalChange {
    pub fn expected(&self, vertex: Vertex) -> (i64, i64, i64, i64, i64) {
        match vertex {
            Vertex::S => table_s(self.class),
            Vertex::T => table_t(self.class),
        }
    }

    /// Whether the measured tuple matches its table row.
    pub fn matches(&self, vertex: Vertex) -> bool {
        let (r, m, a, tm, ta) = self.expected(vertex);
        self.delta_r == r
            && self.delta_m == m
            && self.delta_a == a
            && self.total_m == tm
            && self.total_a_bound == ta
            && self.total_a <= ta
    }
}

/// Measure every pentagon through `vertex` against the local tables.
pub fn local_changes(cd: &CombinedDiagram, vertex: Vertex, cap: usize) -> Result<Vec<LocalChange>, ComplexError> {
    let (src_side, tgt_side) = match vertex {
        Vertex::S => (Side::Plus, Side::Minus),
        Vertex::T => (Side::Minus, Side::Plus),
    };
    let (src, tgt) = (cd.grid(src_side), cd.grid(tgt_side));
    let space = StateSpace::new(src.n(), cap)?;
    let grade = |g: &GridDiagram, x: &GridState| crate::states::gradings(g, x).bigrading();
    let d = cd.column() + 1;
    let mut out = Vec::new();
    for x in space.states() {
        let gx = grade(src, x)?;
        for (y, p) in pentagons_from(cd, vertex, x) {
            // the nearest-point image of y lives on the source grid
            let near = cd.nearest_point(&y);
            let right_side = matches!(p.region.right.pieces.len(), l if l > 1);
            let rect = crate::polygon::empty_rectangles(src, x, &near)
                .into_iter()
                .find(|r| (r.right_col % src.n() == d) == right_side)
                .ok_or_else(|| {
                    ComplexError::Verification(alloc::format!(
                        "pentagon {} -> {} has no associated rectangle",
                        x.index(),
                        y.index()
                    ))
                })?;
            let gy = grade(tgt, &y)?;
            let gnear = grade(src, &near)?;
            let k = p.o_count() as i64;
            let class = cd.position_class(y.row(d));
            let delta_r = k - rect.o_count() as i64;
            let delta_m = gy.maslov - gnear.maslov;
            let delta_a = gy.alexander - gnear.alexander;
            let total_a_bound = match vertex {
                Vertex::S => table_s(class).4,
                Vertex::T => table_t(class).4,
            };
            out.push(LocalChange {
                class,
                delta_r,
                delta_m,
                delta_a,
                total_m: gy.maslov - 2 * k - gx.maslov,
                total_a: gy.alexander - k - gx.alexander,
                total_a_bound,
            });
        }
    }
    Ok(out)
}
