//! Acceptance run: prints PASS or FAIL for every criterion and exits nonzero
//! if any failed.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::path::Path;
use std::time::{Duration, Instant};

use gridlab::{catalog, cert::parse_certificate};
use gridlab_core::algebra::{compose, ModuleMap};
use gridlab_core::complex::{differential, local_changes, CrossingPackage, Flavor, C_MINUS_DEGREE, C_PLUS_DEGREE};
use gridlab_core::grid::GridDiagram;
use gridlab_core::homology::{
    default_b_cap, dense_slice_dim, homology_slice, tilde_dim, torsion_order, FreeComplex, Window,
};
use gridlab_core::lbound::{compose_certificates, composite_degree, lbound, steps, Certificate};
use gridlab_core::polygon::{hexagons_from, pentagons_from, rectangles_from, CombinedDiagram, HexOrder, Vertex};
use gridlab_core::states::{gradings, nwo_state, GridState, StateSpace};

const CAP: usize = 7;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn grid(name: &str) -> GridDiagram {
    catalog::grid(name).unwrap()
}

fn pairs() -> [(&'static str, GridDiagram, GridDiagram); 2] {
    [("4x4", grid("unknot4a"), grid("unknot4b")), ("trefoil", grid("trefoil5"), grid("trefoil5-unknotted"))]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn d_squared_zero() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (name, g) in catalog::all() {
        for flavor in [Flavor::Unblocked, Flavor::Filtered, Flavor::Tilde] {
            let start = Instant::now();
            let cx = differential(&g, flavor, CAP).map_err(|e| format!("{name}: {e}"))?;
            let sq = compose(&cx.differential, &cx.differential).map_err(|e| e.to_string())?;
            ensure(sq.is_zero(), || format!("{name} {}: d^2 has {} terms", flavor.name(), sq.term_count()))?;
            let t = start.elapsed();
            ensure(t < Duration::from_secs(60), || format!("{name} {} took {t:?}", flavor.name()))?;
            slowest = slowest.max(t);
        }
    }
    Ok(format!("3 flavors on {} grids, slowest {slowest:.2?}", catalog::ENTRIES.len()))
}

/// Every rectangle with corners on `x`, empty or not: `(y, #O, #X, #x in interior)`.
fn all_rectangles(g: &GridDiagram, x: &GridState) -> Vec<(GridState, i64, i64, i64, usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    for left in 0..n {
        for w in 1..n {
            let right = (left + w) % n;
            let bottom = x.row(left);
            let h = (x.row(right) + n - bottom) % n;
            let in_rows = |r: usize| (r + n - bottom) % n < h;
            let cols = (0..w).map(|k| (left + k) % n);
            let o = cols.clone().filter(|&c| in_rows(g.o_rows()[c])).count() as i64;
            let xs = cols.clone().filter(|&c| in_rows(g.x_rows()[c])).count() as i64;
            let interior = (1..w)
                .map(|k| (left + k) % n)
                .filter(|&c| {
                    let off = (x.row(c) + n - bottom) % n;
                    off > 0 && off < h
                })
                .count() as i64;
            out.push((x.transposed(left, right), o, xs, interior, left, right));
        }
    }
    out
}

fn grading_laws() -> Outcome {
    for (name, g) in catalog::all() {
        let m = gradings(&g, &nwo_state(&g)).bigrading().map_err(|e| e.to_string())?.maslov;
        ensure(m == 0, || format!("{name}: M(NWO) = {m}"))?;
    }
    let mut count = 0;
    let mut empty = 0;
    for (name, g) in catalog::all().filter(|(_, g)| g.n() <= 5) {
        let n = g.n();
        for x in StateSpace::new(n, CAP).unwrap().states() {
            let gx = gradings(&g, x).bigrading().unwrap();
            let mut empties = Vec::new();
            for (y, o, xs, interior, left, right) in all_rectangles(&g, x) {
                let gy = gradings(&g, &y).bigrading().unwrap();
                count += 1;
                ensure(gx.maslov - gy.maslov == 1 - 2 * o + 2 * interior, || {
                    format!("{name}: (M-2) fails from {:?} to {:?}", x.sigma(), y.sigma())
                })?;
                ensure(gx.alexander - gy.alexander == xs - o, || {
                    format!("{name}: Alexander law fails from {:?} to {:?}", x.sigma(), y.sigma())
                })?;
                if interior == 0 {
                    let right = if right > left { right } else { right + n };
                    empties.push((y.sigma(), left, right, o));
                }
            }
            let mut found: Vec<_> = rectangles_from(&g, x)
                .into_iter()
                .map(|(y, r)| (y.sigma(), r.left_col, r.right_col, r.o_count() as i64))
                .collect();
            found.sort();
            empties.sort();
            ensure(found == empties, || format!("{name}: empty rectangles from {:?} disagree", x.sigma()))?;
            empty += found.len();
        }
    }
    Ok(format!("M(NWO) = 0 on all grids; {count} rectangles ({empty} empty) on n <= 5"))
}

fn associated_graded() -> Outcome {
    for (name, g) in catalog::all() {
        let filtered = differential(&g, Flavor::Filtered, CAP).map_err(|e| e.to_string())?;
        let unblocked = differential(&g, Flavor::Unblocked, CAP).map_err(|e| e.to_string())?;
        let graded = filtered.differential.graded_part(&filtered.gradings, &filtered.gradings, 0);
        for x in 0..filtered.len() {
            ensure(graded.column(x) == unblocked.differential.column(x), || format!("{name}: column {x} differs"))?;
        }
    }
    Ok(format!("{} grids, generator by generator", catalog::ENTRIES.len()))
}

fn crossing_packages() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (name, a, b) in pairs() {
        let pkg = CrossingPackage::build(&a, &b, CAP).map_err(|e| format!("{name}: {e}"))?;
        ensure(pkg.c_minus.degree() == C_MINUS_DEGREE && pkg.c_plus.degree() == C_PLUS_DEGREE, || {
            format!("{name}: declared degrees")
        })?;
        for c in &pkg.report {
            ensure(c.passed, || format!("{name}: {} failed", c.name))?;
        }
        notes.push(format!("{name} {} checks", pkg.report.len()));
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!("{} in {t:.2?}", notes.join(", ")))
}

fn local_tables() -> Outcome {
    let mut counts = [0usize; 2];
    for (name, a, b) in pairs() {
        let cd = CombinedDiagram::build(&a, &b).map_err(|e| e.to_string())?;
        for (k, vertex) in [Vertex::S, Vertex::T].into_iter().enumerate() {
            let (total_m, bound) = if k == 0 { (0, 0) } else { (-2, -1) };
            for ch in local_changes(&cd, vertex, CAP).map_err(|e| e.to_string())? {
                ensure(ch.matches(vertex) && ch.total_m == total_m && ch.total_a <= bound, || {
                    format!("{name} {vertex:?}: {ch:?} expected {:?}", ch.expected(vertex))
                })?;
                counts[k] += 1;
            }
        }
    }
    ensure(counts[0] > 0 && counts[1] > 0, || "no pentagons".into())?;
    Ok(format!("{} s-pentagons, {} t-pentagons on both pairs", counts[0], counts[1]))
}

fn oracle_agreement() -> Outcome {
    let (a, b) = (grid("unknot4a"), grid("unknot4b"));
    let cd = CombinedDiagram::build(&a, &b).map_err(|e| e.to_string())?;
    let arr = support::Arrangement::combined(&cd);
    let mut total = 0;
    let found = |list: Vec<(GridState, gridlab_core::polygon::Polygon)>| {
        let mut v: Vec<support::Found> =
            list.into_iter().map(|(y, p)| support::Found { to: y.sigma(), o_mask: p.o_mask }).collect();
        v.sort();
        v
    };
    for x in StateSpace::new(4, CAP).unwrap().states() {
        for (shape, got) in [
            (support::PENT_S, found(pentagons_from(&cd, Vertex::S, x))),
            (support::PENT_T, found(pentagons_from(&cd, Vertex::T, x))),
            (support::HEX_ST, found(hexagons_from(&cd, HexOrder::St, x))),
            (support::HEX_TS, found(hexagons_from(&cd, HexOrder::Ts, x))),
        ] {
            let want = support::polygons_from(&arr, shape, x);
            ensure(got == want, || format!("shape {:?} from {:?}", shape.corners, x.sigma()))?;
            total += want.len();
        }
    }
    Ok(format!("{total} pentagons and hexagons over all 24 states"))
}

fn homology() -> Outcome {
    let mut notes = Vec::new();
    for (name, expected) in [("unknot2", 0), ("trefoil5", 1), ("figure8-6", 1)] {
        let g = grid(name);
        let full = FreeComplex::from_grid(&differential(&g, Flavor::Unblocked, CAP).map_err(|e| e.to_string())?);
        let reduced = full.reduced();
        let t = torsion_order(&reduced, 1, default_b_cap(&reduced)).ok_or("empty complex")?;
        ensure(t.order == Some(expected), || format!("{name}: torsion {:?}, expected {expected}", t.order))?;
        let towers = t.table.intervals.iter().filter(|i| i.infinite).map(|i| i.multiplicity).sum::<usize>();
        ensure(towers == 1, || format!("{name}: {towers} towers"))?;
        if expected == 0 {
            ensure(t.table.intervals.iter().all(|i| i.infinite), || format!("{name}: not a pure tower"))?;
        }
        notes.push(format!("{name} {expected}"));
    }
    let mut slices = 0;
    for (name, g) in catalog::all().filter(|(_, g)| g.n() <= 5) {
        let full = FreeComplex::from_grid(&differential(&g, Flavor::Unblocked, CAP).map_err(|e| e.to_string())?);
        let reduced = full.reduced();
        let w = Window::new(&full, 4).ok_or("empty complex")?;
        for delta in full.diagonals() {
            for (d, s) in w.rows(delta) {
                let pivot = homology_slice(&reduced, d, s).dim();
                let dense = dense_slice_dim(&full, d, s);
                ensure(pivot == dense, || format!("{name}: slice ({d},{s}) pivot {pivot} dense {dense}"))?;
                slices += 1;
            }
        }
    }
    Ok(format!("{}; dense elimination agrees on {slices} slices", notes.join(", ")))
}

fn tilde() -> Outcome {
    let mut notes = Vec::new();
    for (name, want) in [
        ("unknot2", Some(2)),
        ("unknot4a", Some(8)),
        ("unknot4b", Some(8)),
        ("trefoil5", Some(48)),
        ("trefoil5-unknotted", Some(16)),
        ("figure8-6", None),
    ] {
        let g = grid(name);
        let dim = tilde_dim(&g, CAP).map_err(|e| e.to_string())?;
        if let Some(want) = want {
            ensure(dim == want, || format!("{name}: {dim}, expected {want}"))?;
        } else {
            ensure(dim != 1 << (g.n() - 1), || format!("{name}: looks like an unknot"))?;
        }
        notes.push(format!("{name} {dim}"));
    }
    Ok(notes.join(", "))
}

fn sandwich() -> Outcome {
    let base = Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog");
    let cert = parse_certificate(catalog::TREFOIL_CERT, &base).map_err(|e| e.to_string())?;
    let r = lbound(&cert, CAP).map_err(|e| e.to_string())?;
    ensure(r.lower == Some(1) && r.upper == 1 && r.exact && r.consistent, || {
        format!("report [{:?}, {}] exact {}", r.lower, r.upper, r.exact)
    })?;
    let (a, b) = (grid("unknot4a"), grid("unknot4b"));
    let (t, u) = (grid("trefoil5"), grid("trefoil5-unknotted"));
    let mut chains = 0;
    for grids in [
        vec![a.clone(), b.clone()],
        vec![a.clone(), b.clone(), a],
        vec![t.clone(), u.clone(), t],
        vec![b, grid("unknot4a")],
    ] {
        let cert = Certificate::inferred(grids).map_err(|e| e.to_string())?;
        let m = cert.steps();
        let st = steps(&cert, CAP).map_err(|e| e.to_string())?;
        let first = differential(&cert.grids[0], Flavor::Filtered, CAP).map_err(|e| e.to_string())?;
        let c = compose_certificates(&first, &st).map_err(|e| format!("m={m}: {e}"))?;
        ensure(c.residual_zero && c.mu.terms().len() == 1 && c.mu.terms()[0].degree() == m as i64, || {
            format!("m={m}: mu {:?}", c.mu)
        })?;
        ensure(c.forward.degree() == composite_degree(&cert.directions), || format!("m={m}: composite degree"))?;
        chains += 1;
    }
    Ok(format!("trefoil [1, 1] exact; {chains} composite chains (m = 1, 2) with zero residual"))
}

fn mutate(name: &str, pkg: &CrossingPackage, which: &str, map: &ModuleMap) -> Result<usize, String> {
    let mut count = 0;
    for (x, y, m) in map.terms() {
        let mut p = pkg.clone();
        let cut = map.without_term(x, y, m);
        match which {
            "C-" => p.c_minus = cut,
            _ => p.h_plus = cut,
        }
        let report = p.verify().map_err(|e| e.to_string())?;
        ensure(report.iter().any(|c| !c.passed && c.witness.is_some()), || {
            format!("{name}: deleting {which} term {x} -> {m:?} * {y} went unnoticed")
        })?;
        count += 1;
    }
    Ok(count)
}

fn mutations() -> Outcome {
    let mut notes = Vec::new();
    for (name, a, b) in pairs() {
        let pkg = CrossingPackage::build(&a, &b, CAP).map_err(|e| e.to_string())?;
        let c = mutate(name, &pkg, "C-", &pkg.c_minus)?;
        let h = mutate(name, &pkg, "H+", &pkg.h_plus)?;
        notes.push(format!("{name} {c} C- and {h} H+ deletions caught"));
    }
    Ok(notes.join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("d^2 = 0 for all flavors", d_squared_zero),
        ("grading laws", grading_laws),
        ("associated graded", associated_graded),
        ("crossing packages", crossing_packages),
        ("local grading tables", local_tables),
        ("polygon oracle", oracle_agreement),
        ("homology and torsion", homology),
        ("tilde dimensions", tilde),
        ("bound sandwich", sandwich),
        ("mutations fail closed", mutations),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
