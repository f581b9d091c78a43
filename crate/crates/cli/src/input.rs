use std::path::Path;

use serde::Deserialize;

use matroid_complexes::bits::mask_of;
use matroid_complexes::matroid::{GraphInput, Matroid};

use crate::CliError;

/// A matroid description read from TOML.
///
/// Exactly one of `bases`, `circuits` or `graph` must be present. Element
/// indices are 0-based unless `one_indexed` is set here or on the command
/// line.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidFile {
    pub n: Option<usize>,
    pub rank: Option<usize>,
    #[serde(default)]
    pub one_indexed: bool,
    pub bases: Option<Vec<Vec<usize>>>,
    pub circuits: Option<Vec<Vec<usize>>>,
    pub graph: Option<GraphSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl MatroidFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn to_matroid(&self, one_indexed: bool) -> Result<Matroid, CliError> {
        let shift = usize::from(one_indexed || self.one_indexed);
        let sets = |lists: &[Vec<usize>]| -> Result<Vec<u64>, CliError> {
            lists.iter().map(|l| Ok(mask_of(&shifted(l, shift)?))).collect()
        };
        let present = [self.bases.is_some(), self.circuits.is_some(), self.graph.is_some()];
        if present.iter().filter(|&&p| p).count() != 1 {
            return Err(CliError::Input("give exactly one of bases, circuits or graph".into()));
        }
        let m = if let Some(bases) = &self.bases {
            let n = self.n.ok_or_else(|| CliError::Input("bases need n".into()))?;
            Matroid::from_bases(n, sets(bases)?)?
        } else if let Some(circuits) = &self.circuits {
            let n = self.n.ok_or_else(|| CliError::Input("circuits need n".into()))?;
            let rank = self.rank.ok_or_else(|| CliError::Input("circuits need rank".into()))?;
            Matroid::from_circuits(n, rank, &sets(circuits)?)?
        } else {
            let g = self.graph.as_ref().expect("checked above");
            let mut edges = Vec::with_capacity(g.edges.len());
            for &[a, b] in &g.edges {
                let e = shifted(&[a, b], shift)?;
                edges.push((e[0], e[1]));
            }
            Matroid::graphic(&GraphInput::new(g.vertices, edges)?)?
        };
        if let Some(n) = self.n {
            if n != m.n() {
                return Err(CliError::Input(format!("n = {n} but the description has {} elements", m.n())));
            }
        }
        if let Some(rank) = self.rank {
            if rank != m.rank() {
                return Err(CliError::Input(format!("rank = {rank} but the description has rank {}", m.rank())));
            }
        }
        Ok(m)
    }
}

fn shifted(list: &[usize], shift: usize) -> Result<Vec<usize>, CliError> {
    list.iter()
        .map(|&x| x.checked_sub(shift).ok_or_else(|| CliError::Input("index 0 in a one-indexed file".into())))
        .collect()
}

/// Parse a comma-separated ground-set order, smallest element first.
pub fn parse_order(text: &str, one_indexed: bool) -> Result<Vec<usize>, CliError> {
    let values: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| CliError::Input(format!("bad order entry {t:?}"))))
        .collect::<Result<_, _>>()?;
    shifted(&values, usize::from(one_indexed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circuits_one_indexed() {
        let f = MatroidFile::parse("n = 6\nrank = 4\none_indexed = true\ncircuits = [[1,2,3,4],[1,2,5,6],[3,4,5,6]]\n").unwrap();
        let m = f.to_matroid(false).unwrap();
        assert_eq!(m.basis_count(), 12);
    }

    #[test]
    fn graph_input() {
        let f = MatroidFile::parse("[graph]\nvertices = 4\nedges = [[0,1],[1,2],[2,3],[3,0]]\n").unwrap();
        let m = f.to_matroid(false).unwrap();
        assert_eq!((m.n(), m.rank(), m.basis_count()), (4, 3, 4));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(MatroidFile::parse("n = 3\nbases = [[0,1]]\ncircuits = [[0]]\n").unwrap().to_matroid(false).is_err());
        assert!(MatroidFile::parse("n = 3\nrank = 1\nbases = [[0,1]]\n").unwrap().to_matroid(false).is_err());
        assert!(MatroidFile::parse("n = 3\nbases = [[0,1]]\n").unwrap().to_matroid(true).is_err());
        assert!(MatroidFile::parse("n = 3\nbasis = [[0,1]]\n").is_err());
        assert!(MatroidFile::parse("n = 4\nbases = [[0,1],[2,3]]\n").unwrap().to_matroid(false).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("3,1,2", true).unwrap(), vec![2, 0, 1]);
        assert!(parse_order("a", false).is_err());
    }
}
