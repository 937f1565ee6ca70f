//! Grids bundled with the tool.

use gridlab_core::grid::GridDiagram;
use gridlab_core::text::parse_grid;

pub const ENTRIES: &[(&str, &str)] = &[
    ("unknot2", include_str!("../catalog/unknot2.grid")),
    ("unknot4a", include_str!("../catalog/unknot4a.grid")),
    ("unknot4b", include_str!("../catalog/unknot4b.grid")),
    ("trefoil5", include_str!("../catalog/trefoil5.grid")),
    ("trefoil5-unknotted", include_str!("../catalog/trefoil5-unknotted.grid")),
    ("figure8-6", include_str!("../catalog/figure8-6.grid")),
];

/// One-step certificate from the trefoil to its unknotted neighbour.
pub const TREFOIL_CERT: &str = include_str!("../catalog/trefoil-cert.json");

pub fn text(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".grid").unwrap_or(name);
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn grid(name: &str) -> Option<GridDiagram> {
    text(name).map(|t| parse_grid(t).expect("bundled grids parse"))
}

pub fn all() -> impl Iterator<Item = (&'static str, GridDiagram)> {
    ENTRIES.iter().map(|(n, t)| (*n, parse_grid(t).expect("bundled grids parse")))
}
