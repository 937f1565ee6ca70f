//! Machine-readable results. Every cached command computes one of these, and
//! its text output is rendered from the same value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gridlab_core::algebra::ModuleMap;
use gridlab_core::complex::{differential_column, Check, ComplexError, CrossingPackage, Flavor, GridComplex, Witness};
use gridlab_core::grid::{GridDiagram, PlusSide};
use gridlab_core::homology::{default_b_cap, tilde_dim, torsion_order, FreeComplex, TorsionReport};
use gridlab_core::lbound::LBoundReport;
use gridlab_core::states::{grading_table, gradings, nwo_state, StateSpace, HARD_MAX_N};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::grid_hash;

/// The differential of `g`, columns computed in parallel.
pub fn build_complex(g: &GridDiagram, flavor: Flavor, cap: usize) -> Result<GridComplex, ComplexError> {
    g.require_knot()?;
    let space = StateSpace::new(g.n(), cap)?;
    let gradings = grading_table(g, &space)?;
    let cols = space.states().par_iter().map(|x| differential_column(g, flavor, x)).collect();
    GridComplex::from_columns(g.clone(), flavor, cols, gradings)
}

fn perm(n: usize, index: usize) -> Vec<usize> {
    StateSpace::new(n, HARD_MAX_N).map(|s| s.get(index).sigma()).unwrap_or_default()
}

pub fn witness_text(n: usize, w: &Witness) -> String {
    format!("{:?} -> {:?} with coefficient {:?}", perm(n, w.source), perm(n, w.target), w.coefficient)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub n: usize,
    pub components: usize,
    pub knot: bool,
    pub writhe: i64,
    pub grid_hash: String,
}

pub fn validate(g: &GridDiagram) -> ValidateReport {
    let components = g.trace_components();
    ValidateReport { n: g.n(), components, knot: components == 1, writhe: g.writhe(), grid_hash: grid_hash(g) }
}

impl ValidateReport {
    pub fn text(&self) -> String {
        if self.knot {
            format!("OK: knot, n={}\n", self.n)
        } else {
            format!("OK: link with {} components, n={}\n", self.components, self.n)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateGrading {
    pub state: Vec<usize>,
    pub maslov: i64,
    pub alexander: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingsReport {
    pub grid_hash: String,
    pub n: usize,
    pub nwo: StateGrading,
    pub states: Vec<StateGrading>,
}

pub fn gradings_report(g: &GridDiagram, cap: usize) -> Result<GradingsReport, ComplexError> {
    g.require_knot()?;
    let space = StateSpace::new(g.n(), cap)?;
    let states = space
        .states()
        .par_iter()
        .map(|x| {
            let b = gradings(g, x).bigrading()?;
            Ok(StateGrading { state: x.sigma(), maslov: b.maslov, alexander: b.alexander })
        })
        .collect::<Result<Vec<_>, gridlab_core::states::StateError>>()?;
    let x = nwo_state(g);
    let nwo = states[space.index_of(&x)].clone();
    Ok(GradingsReport { grid_hash: grid_hash(g), n: g.n(), nwo, states })
}

impl GradingsReport {
    pub fn text(&self) -> String {
        let mut s = format!("NWO {:?}: M={} A={}\n", self.nwo.state, self.nwo.maslov, self.nwo.alexander);
        for st in &self.states {
            let _ = writeln!(s, "{:?} M={} A={}", st.state, st.maslov, st.alexander);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradingCount {
    pub maslov: i64,
    pub alexander: i64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatesReport {
    pub grid_hash: String,
    pub n: usize,
    pub count: usize,
    pub bigradings: Vec<BigradingCount>,
}

pub fn states_report(g: &GridDiagram, cap: usize) -> Result<StatesReport, ComplexError> {
    let r = gradings_report(g, cap)?;
    let mut counts: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for st in &r.states {
        *counts.entry((st.maslov, st.alexander)).or_default() += 1;
    }
    Ok(StatesReport {
        grid_hash: r.grid_hash,
        n: r.n,
        count: r.states.len(),
        bigradings: counts
            .into_iter()
            .map(|((maslov, alexander), count)| BigradingCount { maslov, alexander, count })
            .collect(),
    })
}

impl StatesReport {
    pub fn text(&self) -> String {
        let mut s = format!("{} states, n={}\n", self.count, self.n);
        for b in &self.bigradings {
            let _ = writeln!(s, "M={} A={}: {}", b.maslov, b.alexander, b.count);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
    pub detail: String,
}

impl CheckRow {
    fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        match &self.witness {
            Some(w) => format!("{status} {}{}: witness {w}\n", self.name, self.detail),
            None => format!("{status} {}{}\n", self.name, self.detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct D2Report {
    pub grid_hash: String,
    pub checks: Vec<CheckRow>,
}

pub fn d2_report(g: &GridDiagram, flavors: &[Flavor], cap: usize) -> Result<D2Report, ComplexError> {
    let mut checks = Vec::new();
    for &flavor in flavors {
        let row = match build_complex(g, flavor, cap) {
            Ok(cx) => CheckRow {
                name: format!("d^2 = 0 ({})", flavor.name()),
                passed: true,
                witness: None,
                detail: format!(", {} terms", cx.differential.term_count()),
            },
            Err(ComplexError::NotADifferential { witness, .. }) => CheckRow {
                name: format!("d^2 = 0 ({})", flavor.name()),
                passed: false,
                witness: Some(witness_text(g.n(), &witness)),
                detail: String::new(),
            },
            Err(e) => return Err(e),
        };
        checks.push(row);
    }
    Ok(D2Report { grid_hash: grid_hash(g), checks })
}

impl D2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn text(&self) -> String {
        self.checks.iter().map(CheckRow::line).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub first_hash: String,
    pub second_hash: String,
    /// `"first"` or `"second"`: the grid with the positive crossing.
    pub plus: String,
    pub column: usize,
    pub v1: usize,
    pub checks: Vec<CheckRow>,
}

pub fn crossing_report(pkg: &CrossingPackage, first: &GridDiagram, second: &GridDiagram) -> CrossingReport {
    let d = pkg.cd.designation();
    let n = first.n();
    let row = |c: &Check| CheckRow {
        name: c.name.clone(),
        passed: c.passed,
        witness: c.witness.as_ref().map(|w| witness_text(n, w)),
        detail: c.detail.clone(),
    };
    CrossingReport {
        first_hash: grid_hash(first),
        second_hash: grid_hash(second),
        plus: match d.plus {
            PlusSide::First => "first".into(),
            PlusSide::Second => "second".into(),
        },
        column: d.witness.column,
        v1: pkg.v1,
        checks: pkg.report.iter().map(row).collect(),
    }
}

impl CrossingReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn text(&self) -> String {
        let mut s =
            format!("cross-commutation at column {}, positive grid: {}, V1 = V{}\n", self.column, self.plus, self.v1);
        for c in &self.checks {
            s.push_str(&c.line());
        }
        s
    }
}

/// Source state, target state, exponent list of each monomial.
pub type MapEntry = (Vec<usize>, Vec<usize>, Vec<Vec<usize>>);

/// `{source_grid_hash, target_grid_hash, degree, entries}`, entries sorted by
/// source then target state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapExport {
    pub source_grid_hash: String,
    pub target_grid_hash: String,
    pub degree: [i64; 2],
    pub entries: Vec<MapEntry>,
}

pub fn export_map(f: &ModuleMap) -> MapExport {
    let n = f.source().n();
    let space = StateSpace::new(n, HARD_MAX_N).expect("maps exist only below the cap");
    let states = space.states();
    let entries = f
        .columns()
        .iter()
        .enumerate()
        .flat_map(|(x, col)| {
            col.iter().map(move |(y, p)| {
                (states[x].sigma(), states[*y as usize].sigma(), p.terms().iter().map(|m| m.exponents(n)).collect())
            })
        })
        .collect();
    MapExport {
        source_grid_hash: grid_hash(f.source()),
        target_grid_hash: grid_hash(f.target()),
        degree: [f.degree().maslov, f.degree().alexander],
        entries,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bar {
    pub birth: [i64; 2],
    pub last: [i64; 2],
    pub multiplicity: usize,
    pub infinite: bool,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub grid_hash: String,
    pub generators: usize,
    pub reduced_generators: usize,
    /// Room below the generators of each window tried.
    pub attempts: Vec<i64>,
    pub stabilized: bool,
    pub torsion_order: Option<usize>,
    pub tower_top: Option<[i64; 2]>,
    pub bars: Vec<Bar>,
}

pub fn homology_report(g: &GridDiagram, cap: usize) -> Result<HomologyReport, ComplexError> {
    let cx = build_complex(g, Flavor::Unblocked, cap)?;
    let reduced = FreeComplex::from_grid(&cx).reduced();
    Ok(from_torsion(g, cx.len(), reduced.len(), torsion_order(&reduced, 1, default_b_cap(&reduced))))
}

pub(crate) fn from_torsion(
    g: &GridDiagram,
    generators: usize,
    reduced: usize,
    t: Option<TorsionReport>,
) -> HomologyReport {
    let mut r = HomologyReport {
        grid_hash: grid_hash(g),
        generators,
        reduced_generators: reduced,
        attempts: Vec::new(),
        stabilized: false,
        torsion_order: None,
        tower_top: None,
        bars: Vec::new(),
    };
    if let Some(t) = t {
        r.stabilized = !t.inconclusive();
        r.torsion_order = t.order;
        r.attempts = t.attempts;
        r.tower_top = t.table.tower_top().map(|(d, s)| [d, s]);
        r.bars = t
            .table
            .intervals
            .iter()
            .map(|i| Bar {
                birth: [i.birth.0, i.birth.1],
                last: [i.last.0, i.last.1],
                multiplicity: i.multiplicity,
                infinite: i.infinite,
                order: i.order,
            })
            .collect();
    }
    r
}

impl HomologyReport {
    pub fn text(&self) -> String {
        let mut s = format!("generators: {}, after cancellation: {}\n", self.generators, self.reduced_generators);
        let b = self.attempts.last().copied().unwrap_or(0);
        let _ = writeln!(s, "window depth {b}: {}", if self.stabilized { "stabilized" } else { "not stabilized" });
        for bar in &self.bars {
            let [m, a] = bar.birth;
            let k = bar.multiplicity;
            if bar.infinite {
                let _ = writeln!(s, "(M,A)=({m},{a}): F[U] x{k}");
            } else {
                let _ = writeln!(s, "(M,A)=({m},{a}): F[U]/U^{} x{k}", bar.order);
            }
        }
        match self.torsion_order {
            Some(t) => {
                let _ = writeln!(s, "torsion order: {t}");
            }
            None => s.push_str("torsion order: inconclusive\n"),
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionSummary {
    pub grid_hash: String,
    pub order: Option<usize>,
    pub attempts: Vec<i64>,
}

impl From<&HomologyReport> for TorsionSummary {
    fn from(h: &HomologyReport) -> Self {
        Self { grid_hash: h.grid_hash.clone(), order: h.torsion_order, attempts: h.attempts.clone() }
    }
}

impl TorsionSummary {
    pub fn text(&self) -> String {
        match self.order {
            Some(t) => format!("{t}\n"),
            None => format!("inconclusive (window depths {:?})\n", self.attempts),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TildeReport {
    pub grid_hash: String,
    pub n: usize,
    pub dim: usize,
    /// `2^(n-1)`, the value for an unknot.
    pub unknot_dim: usize,
    pub unknot: bool,
}

pub fn tilde_report(g: &GridDiagram, cap: usize) -> Result<TildeReport, ComplexError> {
    let dim = tilde_dim(g, cap)?;
    let unknot_dim = 1usize << (g.n() - 1);
    Ok(TildeReport { grid_hash: grid_hash(g), n: g.n(), dim, unknot_dim, unknot: dim == unknot_dim })
}

impl TildeReport {
    pub fn text(&self) -> String {
        let verdict = if self.unknot { "unknot" } else { "not the unknot" };
        format!("dim = {} ({verdict}; unknot has {})\n", self.dim, self.unknot_dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// Depth of the window in which the torsion search stabilized.
    pub torsion_window: Option<i64>,
    pub residual_zero: bool,
    pub endpoint_unknot: bool,
    /// Exponents of the composite's monomial `mu`.
    pub mu: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LBoundJson {
    pub lower: Option<usize>,
    pub upper: usize,
    pub exact: bool,
    pub consistent: bool,
    pub evidence: Evidence,
}

pub fn lbound_json(r: &LBoundReport, n: usize) -> LBoundJson {
    let mu = r.composite.mu.terms().first().map(|m| m.exponents(n)).unwrap_or_default();
    LBoundJson {
        lower: r.lower,
        upper: r.upper,
        exact: r.exact,
        consistent: r.consistent,
        evidence: Evidence {
            torsion_window: r.torsion.as_ref().filter(|t| !t.inconclusive()).and_then(|t| t.attempts.last().copied()),
            residual_zero: r.composite.residual_zero,
            endpoint_unknot: r.endpoint_unknot,
            mu,
        },
    }
}

impl LBoundJson {
    pub fn text(&self) -> String {
        let lower = self.lower.map(|l| l.to_string()).unwrap_or_else(|| "?".into());
        let mut s = format!("{lower} <= l(K) <= {}\n", self.upper);
        if self.exact {
            let _ = writeln!(s, "exact: l(K) = {}", self.upper);
        }
        if !self.evidence.endpoint_unknot {
            s.push_str("last grid is not an unknot: no lower bound\n");
        }
        if !self.consistent {
            s.push_str("INCONSISTENT: lower bound exceeds the certificate length\n");
        }
        s
    }
}
