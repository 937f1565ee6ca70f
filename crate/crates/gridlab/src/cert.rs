//! Certificate files: `{"grids": [...], "direction": [...]}`. A grid entry is
//! either inline grid text or a path relative to the certificate.

use std::path::{Path, PathBuf};

use gridlab_core::grid::GridDiagram;
use gridlab_core::lbound::{Certificate, Direction, LBoundError};
use gridlab_core::text::{parse_grid, ParseError};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CertError {
    #[error("certificate is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("grid {index}: cannot read {path}: {source}")]
    Read { index: usize, path: PathBuf, source: std::io::Error },
    #[error("grid {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error("direction {index}: unknown tag `{tag}`, expected `+to-` or `-to+`")]
    Tag { index: usize, tag: String },
    #[error(transparent)]
    Invalid(#[from] LBoundError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    grids: Vec<String>,
    #[serde(default)]
    direction: Option<Vec<String>>,
}

fn is_inline(entry: &str) -> bool {
    entry.trim_start().starts_with("n=")
}

/// Parse a certificate. Without a `direction` field the tags are inferred.
pub fn parse_certificate(json: &str, base: &Path) -> Result<Certificate, CertError> {
    let raw: Raw = serde_json::from_str(json)?;
    let grids = raw
        .grids
        .iter()
        .enumerate()
        .map(|(index, entry)| load_grid(index, entry, base))
        .collect::<Result<Vec<GridDiagram>, _>>()?;
    match raw.direction {
        None => Ok(Certificate::inferred(grids)?),
        Some(tags) => {
            let directions = tags
                .iter()
                .enumerate()
                .map(|(index, tag)| Direction::from_tag(tag).ok_or_else(|| CertError::Tag { index, tag: tag.clone() }))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Certificate::new(grids, directions)?)
        }
    }
}

fn load_grid(index: usize, entry: &str, base: &Path) -> Result<GridDiagram, CertError> {
    let text = if is_inline(entry) {
        entry.to_string()
    } else if let Some(bundled) = entry.strip_prefix("catalog:").and_then(crate::catalog::text) {
        bundled.to_string()
    } else {
        let path = base.join(entry);
        std::fs::read_to_string(&path).map_err(|source| CertError::Read { index, path, source })?
    };
    parse_grid(&text).map_err(|source| CertError::Parse { index, source })
}
