use crate::matroid::Matroid;

use super::CensusError;

/// Matroids sharing one `(n, d)` header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub n: usize,
    pub d: usize,
    pub matroids: Vec<Matroid>,
}

/// Read a header line `n d` followed by one basis-indicator string per line.
///
/// Indicator strings use `*` for bases and `0` otherwise, over the
/// `d`-subsets in colex order. Blank lines and lines starting with `#`
/// are skipped.
pub fn parse_catalog(text: &str) -> Result<Catalog, CensusError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or(CensusError::Catalog { line: 0, message: "missing header".into() })?;
    let bad_header = || CensusError::Catalog { line: header_line, message: format!("expected \"n d\", found {header:?}") };
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad_header()))
        .collect::<Result<_, _>>()?;
    let [n, d] = fields[..] else { return Err(bad_header()) };
    let matroids = lines
        .map(|(line, l)| {
            Matroid::from_indicator(n, d, l).map_err(|e| CensusError::Catalog { line, message: e.to_string() })
        })
        .collect::<Result<_, _>>()?;
    Ok(Catalog { n, d, matroids })
}

/// Inverse of [`parse_catalog`].
pub fn emit_catalog(n: usize, d: usize, matroids: &[Matroid]) -> String {
    let mut out = format!("{n} {d}\n");
    for m in matroids {
        out.push_str(&m.indicator_string());
        out.push('\n');
    }
    out
}
