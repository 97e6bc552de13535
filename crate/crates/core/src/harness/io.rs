//! TSV ingestion and per-dataset statistics.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use crate::bias::parochial_of;
use crate::error::{Error, Result};
use crate::exact::BrTable;
use crate::graph::{build_graph, Color, ColoredGraph};
use crate::scalar::Scalar;

/// A loaded graph together with the original id of every dense node id.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub graph: ColoredGraph<f64>,
    pub original_ids: Vec<u64>,
}

impl Dataset {
    /// Dense id of an original node id.
    pub fn dense_id(&self, original: u64) -> Option<usize> {
        self.original_ids.binary_search(&original).ok()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Rescale every out-weight row to sum to one instead of rejecting rows
    /// that deviate by more than the input tolerance.
    pub normalize_weights: bool,
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split('\t').map(str::trim).collect()))
        }
    })
}

fn parse_id(field: &str, line: usize) -> Result<u64> {
    field.parse().map_err(|_| Error::ParseError { line, message: format!("bad node id {field:?}") })
}

/// Parses `node<TAB>R|B` lines.
pub fn parse_colors(text: &str) -> Result<BTreeMap<u64, Color>> {
    let mut out = BTreeMap::new();
    for (line, fields) in lines(text) {
        if fields.len() != 2 {
            return Err(Error::ParseError { line, message: format!("expected 2 fields, found {}", fields.len()) });
        }
        let id = parse_id(fields[0], line)?;
        let color: Color = fields[1].parse().map_err(|message| Error::ParseError { line, message })?;
        if out.insert(id, color).is_some_and(|old| old != color) {
            return Err(Error::ParseError { line, message: format!("node {id} has two colors") });
        }
    }
    Ok(out)
}

/// Parses `src<TAB>dst<TAB>weight` lines.
pub fn parse_edges(text: &str) -> Result<Vec<(u64, u64, f64)>> {
    let mut out = Vec::new();
    for (line, fields) in lines(text) {
        if fields.len() != 3 {
            return Err(Error::ParseError { line, message: format!("expected 3 fields, found {}", fields.len()) });
        }
        let src = parse_id(fields[0], line)?;
        let dst = parse_id(fields[1], line)?;
        let w: f64 = fields[2]
            .parse()
            .map_err(|_| Error::ParseError { line, message: format!("bad weight {:?}", fields[2]) })?;
        if !w.is_finite() {
            return Err(Error::ParseError { line, message: format!("bad weight {:?}", fields[2]) });
        }
        out.push((src, dst, w));
    }
    Ok(out)
}

/// Builds a graph from parsed colors and edges, compacting ids in ascending
/// order of the original ids.
pub fn assemble(colors: &BTreeMap<u64, Color>, edges: &[(u64, u64, f64)], opts: LoadOptions) -> Result<Dataset> {
    let original_ids: Vec<u64> = colors.keys().copied().collect();
    let dense = |id: u64| original_ids.binary_search(&id).map_err(|_| Error::UnknownColor(id as usize));
    let mut mapped = Vec::with_capacity(edges.len());
    for &(s, d, w) in edges {
        mapped.push((dense(s)?, dense(d)?, w));
    }
    if opts.normalize_weights {
        let mut sums = vec![0.0; original_ids.len()];
        for &(s, _, w) in &mapped {
            sums[s] += w;
        }
        for e in &mut mapped {
            if sums[e.0] > 0.0 {
                e.2 /= sums[e.0];
            }
        }
    }
    let graph = build_graph(colors.values().copied().collect(), &mapped)?;
    Ok(Dataset { graph, original_ids })
}

/// Reads an edge file and a color file.
pub fn load_dataset(edge_path: &Path, color_path: &Path, opts: LoadOptions) -> Result<Dataset> {
    let colors = parse_colors(&fs::read_to_string(color_path)?)?;
    let edges = parse_edges(&fs::read_to_string(edge_path)?)?;
    assemble(&colors, &edges, opts)
}

/// Writes `g` as an edge file and a color file, using dense ids.
pub fn write_dataset<T: Scalar>(g: &ColoredGraph<T>, edge_path: &Path, color_path: &Path) -> Result<()> {
    let mut edges = String::new();
    for (s, d, w) in g.edges() {
        edges.push_str(&format!("{s}\t{d}\t{}\n", w.to_real()));
    }
    let mut colors = String::new();
    for v in g.nodes() {
        colors.push_str(&format!("{v}\t{}\n", g.color(v)));
    }
    fs::write(edge_path, edges)?;
    fs::write(color_path, colors)?;
    Ok(())
}

/// Size, cross-edge and parochial-share summary of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetStats {
    pub red: usize,
    pub blue: usize,
    pub red_to_blue: usize,
    pub blue_to_red: usize,
    pub edges: usize,
    /// Fraction of red nodes that are parochial.
    pub parochial_red: f64,
    pub parochial_blue: f64,
}

impl DatasetStats {
    pub fn compute<T: Scalar>(g: &ColoredGraph<T>, brs: &BrTable<T>, theta_bad: f64) -> Self {
        let share = |c: Color| {
            let total = g.count_of(c);
            if total == 0 {
                0.0
            } else {
                parochial_of(brs, g.colors(), c, theta_bad).len() as f64 / total as f64
            }
        };
        Self {
            red: g.count_of(Color::Red),
            blue: g.count_of(Color::Blue),
            red_to_blue: g.cross_edge_count(Color::Red),
            blue_to_red: g.cross_edge_count(Color::Blue),
            edges: g.edge_count(),
            parochial_red: share(Color::Red),
            parochial_blue: share(Color::Blue),
        }
    }

    pub const HEADER: &'static str = "red\tblue\tred_to_blue\tblue_to_red\tedges\tpct_parochial_red\tpct_parochial_blue";
}

impl fmt::Display for DatasetStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.red, self.blue, self.red_to_blue, self.blue_to_red, self.edges, self.parochial_red, self.parochial_blue
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_br;

    #[test]
    fn minimal_files() {
        let colors = parse_colors("10\tR\n20\tB\n").unwrap();
        let edges = parse_edges("10\t20\t1.0\n20\t10\t1\n").unwrap();
        let ds = assemble(&colors, &edges, LoadOptions::default()).unwrap();
        assert_eq!(ds.original_ids, vec![10, 20]);
        assert_eq!(ds.dense_id(20), Some(1));
        let brs = exact_br(&ds.graph, 4).unwrap();
        let stats = DatasetStats::compute(&ds.graph, &brs, 2.0);
        assert_eq!((stats.red, stats.blue, stats.red_to_blue, stats.blue_to_red, stats.edges), (1, 1, 1, 1, 2));
        assert_eq!(stats.parochial_red, 0.0);
    }

    #[test]
    fn malformed_weight_reports_line() {
        let err = parse_edges("# header\n0\t1\t0.5\n0\t2\tabc\n").unwrap_err();
        assert!(matches!(err, Error::ParseError { line: 3, .. }));
    }

    #[test]
    fn uncolored_node_rejected() {
        let colors = parse_colors("0\tR\n1\tB\n").unwrap();
        let edges = parse_edges("0\t1\t1\n1\t7\t1\n").unwrap();
        assert_eq!(assemble(&colors, &edges, LoadOptions::default()).unwrap_err(), Error::UnknownColor(7));
    }

    #[test]
    fn normalization_is_optional() {
        let colors = parse_colors("0\tR\n1\tB\n2\tB\n").unwrap();
        let edges = parse_edges("0\t1\t2\n0\t2\t2\n1\t0\t1\n2\t0\t1\n").unwrap();
        assert!(matches!(assemble(&colors, &edges, LoadOptions::default()), Err(Error::NonStochasticRow { .. })));
        let ds = assemble(&colors, &edges, LoadOptions { normalize_weights: true }).unwrap();
        assert_eq!(ds.graph.weight(0, 1), Some(0.5));
    }
}
