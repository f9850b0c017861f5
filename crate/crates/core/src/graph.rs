//! Simple undirected graphs stored as sorted neighbour arrays.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An immutable simple graph on vertices `0..n`.
///
/// Neighbours of each vertex are kept in one flat array (`offsets[v]..offsets[v + 1]`)
/// and are sorted ascending. The degree vector is cached alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    degrees: Vec<u32>,
    edge_count: u64,
}

impl Graph {
    /// Empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
            degrees: vec![0; n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an arbitrary edge list, rejecting self-loops,
    /// out-of-range endpoints and duplicate edges. `(u, v)` and `(v, u)` name
    /// the same edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::Resource(format!("{n} vertices exceed the u32 index space")));
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            list.push((u.min(v) as u32, u.max(v) as u32));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parameter(format!("duplicate edge {} {}", w[0].0, w[0].1)));
        }
        Ok(Self::from_sorted_edges(n, &list))
    }

    /// Builds a graph from edges that are already `u < v`, unique and in
    /// lexicographic order. Rows come out sorted without a sort pass.
    pub(crate) fn from_sorted_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut degrees = vec![0u32; n];
        for &(u, v) in edges {
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0usize;
        for &d in &degrees {
            acc += d as usize;
            offsets.push(acc);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; acc];
        for &(u, v) in edges {
            neighbors[fill[u as usize]] = v;
            fill[u as usize] += 1;
            neighbors[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        let graph = Self {
            offsets,
            neighbors,
            degrees,
            edge_count: edges.len() as u64,
        };
        debug_assert!(graph.check_invariants().is_ok());
        graph
    }

    pub fn vertex_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.degrees[v] as usize)
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> Result<&[u32]> {
        self.check_vertex(v)?;
        Ok(&self.neighbors[self.offsets[v]..self.offsets[v + 1]])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        Ok(self.neighbors(u)?.binary_search(&(v as u32)).is_ok())
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors[self.offsets[u]..self.offsets[u + 1]]
                .iter()
                .map(|&w| w as usize)
                .filter(move |&w| w > u)
                .map(move |w| (u, w))
        })
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.vertex_count() })
        }
    }

    /// Verifies symmetry, absence of self-loops, sorted rows, the cached
    /// degrees and the handshake identity.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.vertex_count();
        let mut degree_sum = 0u64;
        for v in 0..n {
            let row = &self.neighbors[self.offsets[v]..self.offsets[v + 1]];
            if row.len() != self.degrees[v] as usize {
                return Err(Error::Parameter(format!("cached degree of {v} is stale")));
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parameter(format!("row {v} is not strictly sorted")));
            }
            for &w in row {
                let w = w as usize;
                if w == v {
                    return Err(Error::Parameter(format!("self-loop at vertex {v}")));
                }
                let back = &self.neighbors[self.offsets[w]..self.offsets[w + 1]];
                if back.binary_search(&(v as u32)).is_err() {
                    return Err(Error::Parameter(format!("edge {v}-{w} is not symmetric")));
                }
            }
            degree_sum += row.len() as u64;
        }
        if degree_sum != 2 * self.edge_count {
            return Err(Error::Parameter("degree sum differs from 2e".into()));
        }
        Ok(())
    }

    /// `r(v)`: the sum of the degrees of the neighbours of `v` (0 when isolated).
    pub fn neighbor_degree_sum(&self, v: usize) -> Result<u64> {
        Ok(self
            .neighbors(v)?
            .iter()
            .map(|&w| self.degrees[w as usize] as u64)
            .sum())
    }

    /// `r(v)` for every vertex in one pass over the edges.
    pub fn neighbor_degree_sums(&self) -> Vec<u64> {
        let mut r = vec![0u64; self.vertex_count()];
        for (u, w) in self.edges() {
            r[u] += self.degrees[w] as u64;
            r[w] += self.degrees[u] as u64;
        }
        r
    }

    /// Serializes in the edge-list format accepted by [`load_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.vertex_count()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

/// Free-function form of [`Graph::neighbor_degree_sum`].
pub fn neighbor_degree_sum(graph: &Graph, v: usize) -> Result<u64> {
    graph.neighbor_degree_sum(v)
}

/// Parses an edge-list document.
///
/// The optional first non-comment line `n <N>` declares the vertex count;
/// every other non-empty line holds one edge `u v`. Lines starting with `#`
/// are comments. Without a header, `N` is one more than the largest index
/// seen. Errors carry the 1-based line number.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: line_no, message };
        let tokens: Vec<&str> = line.split_whitespace().collect();

        if tokens[0] == "n" {
            if seen_content {
                return Err(parse_err("vertex-count header must come first".into()));
            }
            seen_content = true;
            if tokens.len() != 2 {
                return Err(parse_err(format!("malformed header {line:?}")));
            }
            let n = tokens[1]
                .parse::<usize>()
                .map_err(|_| parse_err(format!("invalid vertex count {:?}", tokens[1])))?;
            declared = Some(n);
            continue;
        }
        seen_content = true;
        if tokens.len() != 2 {
            return Err(parse_err(format!("expected two vertex indices, got {line:?}")));
        }
        let index = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(format!("invalid vertex index {tok:?}")))
        };
        let (u, v) = (index(tokens[0])?, index(tokens[1])?);
        if u == v {
            return Err(parse_err(format!("self-loop at vertex {u}")));
        }
        if let Some(n) = declared {
            if u.max(v) >= n {
                return Err(parse_err(format!("vertex {} out of range for n = {n}", u.max(v))));
            }
        }
        edges.push((u.min(v), u.max(v), line_no));
    }

    let n = declared.unwrap_or_else(|| edges.iter().map(|&(_, v, _)| v + 1).max().unwrap_or(0));
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
        let line = w[0].2.max(w[1].2);
        return Err(Error::Parse {
            line,
            message: format!("duplicate edge {} {}", w[1].0, w[1].1),
        });
    }
    Graph::from_edges(n, edges.into_iter().map(|(u, v, _)| (u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn path_from_edge_list() {
        let g = load_edge_list("n 3\n0 1\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1).unwrap(), &[0, 2]);
    }

    #[test]
    fn header_only_gives_isolated_vertices() {
        let g = load_edge_list("n 2").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn missing_header_infers_vertex_count() {
        let g = load_edge_list("# comment\n0 4\n\n2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = load_edge_list("n 3\n0 0").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, message: "self-loop at vertex 0".into() });

        match load_edge_list("n 3\n0 1\n# c\n1 0").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            e => panic!("unexpected {e:?}"),
        }
        match load_edge_list("n 3\n0 3").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e:?}"),
        }
        match load_edge_list("n 3\n0 1 2").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e:?}"),
        }
        match load_edge_list("0 1\nn 3").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(load_edge_list("n x"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]).unwrap_err(),
            Error::VertexOutOfRange { vertex: 3, n: 3 }
        );
    }

    #[test]
    fn neighbor_degree_sums() {
        let k4 = complete(4);
        for v in 0..4 {
            assert_eq!(k4.neighbor_degree_sum(v).unwrap(), 9);
        }
        let p3 = load_edge_list("0 1\n1 2").unwrap();
        assert_eq!(neighbor_degree_sum(&p3, 1).unwrap(), 2);
        assert_eq!(neighbor_degree_sum(&p3, 0).unwrap(), 2);
        assert_eq!(neighbor_degree_sum(&p3, 2).unwrap(), 2);

        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(g.neighbor_degree_sum(2).unwrap(), 0);
        assert!(matches!(g.neighbor_degree_sum(3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(6, [(4, 1), (0, 5), (2, 3), (1, 2)]).unwrap();
        g.check_invariants().unwrap();
        assert_eq!(load_edge_list(&g.to_edge_list()).unwrap(), g);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 5), (1, 2), (1, 4), (2, 3)]);
    }
}
