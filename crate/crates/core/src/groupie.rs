//! The groupie predicate and the conditioning statistics around one vertex
//! or one vertex pair.

use num_rational::Ratio;

use crate::error::{param, Error, Result};
use crate::graph::Graph;

/// Groupie test from the raw quantities: `n * r >= 2e * deg`, evaluated in
/// 128-bit integers. An isolated vertex is a groupie iff `e = 0`.
#[inline]
pub fn groupie_from_counts(n: usize, edge_count: u64, degree: u64, neighbor_degree_sum: u64) -> bool {
    if degree == 0 {
        return edge_count == 0;
    }
    n as u128 * neighbor_degree_sum as u128 >= 2 * edge_count as u128 * degree as u128
}

pub fn is_groupie(graph: &Graph, v: usize) -> Result<bool> {
    let r = graph.neighbor_degree_sum(v)?;
    Ok(groupie_from_counts(
        graph.vertex_count(),
        graph.edge_count(),
        graph.degrees()[v] as u64,
        r,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupieReport {
    pub flags: Vec<bool>,
    pub count: usize,
    pub edge_count: u64,
}

impl GroupieReport {
    pub fn vertex_count(&self) -> usize {
        self.flags.len()
    }

    /// `N / n`, reduced.
    pub fn proportion(&self) -> Ratio<u64> {
        Ratio::new(self.count as u64, self.flags.len() as u64)
    }

    pub fn proportion_f64(&self) -> f64 {
        self.count as f64 / self.flags.len() as f64
    }

    pub fn groupies(&self) -> impl Iterator<Item = usize> + '_ {
        self.flags.iter().enumerate().filter(|(_, &g)| g).map(|(v, _)| v)
    }
}

/// Classifies every vertex. All `r(v)` come from a single pass over the edges.
pub fn groupie_report(graph: &Graph) -> Result<GroupieReport> {
    let n = graph.vertex_count();
    if n == 0 {
        return param("groupie report needs at least one vertex");
    }
    let r = graph.neighbor_degree_sums();
    let e = graph.edge_count();
    let flags: Vec<bool> = graph
        .degrees()
        .iter()
        .zip(&r)
        .map(|(&d, &r)| groupie_from_counts(n, e, d as u64, r))
        .collect();
    let count = flags.iter().filter(|&&g| g).count();
    Ok(GroupieReport { flags, count, edge_count: e })
}

/// Edge counts around `v`: `V1` = neighbours of `v`, `V2` = the remaining
/// vertices other than `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborhoodStats {
    pub vertex: usize,
    /// `deg(v)`
    pub degree: u64,
    /// edges inside `V1`
    pub e1: u64,
    /// edges inside `V2`
    pub e2: u64,
    /// edges between `V1` and `V2`
    pub e3: u64,
}

pub fn neighborhood_stats(graph: &Graph, v: usize) -> Result<NeighborhoodStats> {
    let nbrs = graph.neighbors(v)?;
    let mut in_v1 = vec![false; graph.vertex_count()];
    for &w in nbrs {
        in_v1[w as usize] = true;
    }
    let (mut e1, mut e2, mut e3) = (0, 0, 0);
    for (a, b) in graph.edges() {
        if a == v || b == v {
            continue;
        }
        match (in_v1[a], in_v1[b]) {
            (true, true) => e1 += 1,
            (false, false) => e2 += 1,
            _ => e3 += 1,
        }
    }
    Ok(NeighborhoodStats { vertex: v, degree: nbrs.len() as u64, e1, e2, e3 })
}

/// `S = 2(n-i)e1 + (n-2i)(e3+i) - 2i*e2`. For `i >= 1`, `v` is a groupie iff `S >= 0`.
pub fn single_vertex_statistic(stats: &NeighborhoodStats, n: usize) -> i128 {
    let n = n as i128;
    let i = stats.degree as i128;
    2 * (n - i) * stats.e1 as i128 + (n - 2 * i) * (stats.e3 as i128 + i) - 2 * i * stats.e2 as i128
}

/// Partition of the other `n - 2` vertices by adjacency to `v1` and `v2`:
///
/// * `V1`: adjacent to `v1` only
/// * `V2`: adjacent to both
/// * `V3`: adjacent to `v2` only
/// * `V4`: adjacent to neither
///
/// `edges[j][k]` (0-based part indices, symmetric) counts the edges with one
/// end in each part, or inside the part when `j = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairPartitionStats {
    pub v1: usize,
    pub v2: usize,
    pub adjacent: bool,
    pub sizes: [u64; 4],
    pub edges: [[u64; 4]; 4],
}

impl PairPartitionStats {
    /// Assembles stats from raw counts, checking that `i4 = n - 2 - i1 - i2 - i3`
    /// and that every count fits its part sizes. `edges` is read from its upper
    /// triangle and mirrored.
    pub fn from_counts(n: usize, adjacent: bool, sizes: [u64; 4], edges: [[u64; 4]; 4]) -> Result<Self> {
        if n < 2 || sizes.iter().sum::<u64>() != n as u64 - 2 {
            return param(format!("part sizes {sizes:?} do not partition {} vertices", n.saturating_sub(2)));
        }
        let mut sym = [[0u64; 4]; 4];
        for j in 0..4 {
            for k in j..4 {
                let max = pair_capacity(&sizes, j, k);
                if edges[j][k] > max {
                    return param(format!("e{}{} = {} exceeds its maximum {max}", j + 1, k + 1, edges[j][k]));
                }
                sym[j][k] = edges[j][k];
                sym[k][j] = edges[j][k];
            }
        }
        Ok(Self { v1: 0, v2: 1, adjacent, sizes, edges: sym })
    }

    /// `e_jk` with the 1-based part labels used in the formulas.
    pub fn e(&self, j: usize, k: usize) -> u64 {
        self.edges[j - 1][k - 1]
    }

    /// `i_j` with 1-based part label.
    pub fn size(&self, j: usize) -> u64 {
        self.sizes[j - 1]
    }

    /// Total edge count of the graph these stats came from.
    pub fn total_edges(&self) -> u64 {
        let [i1, i2, i3, _] = self.sizes;
        let inner: u64 = (0..4).flat_map(|j| (j..4).map(move |k| (j, k))).map(|(j, k)| self.edges[j][k]).sum();
        inner + i1 + 2 * i2 + i3 + self.adjacent as u64
    }
}

/// Number of vertex pairs between parts `j` and `k` (or inside `j` when equal).
pub(crate) fn pair_capacity(sizes: &[u64; 4], j: usize, k: usize) -> u64 {
    if j == k {
        sizes[j] * sizes[j].saturating_sub(1) / 2
    } else {
        sizes[j] * sizes[k]
    }
}

pub fn pair_partition_stats(graph: &Graph, v1: usize, v2: usize) -> Result<PairPartitionStats> {
    graph.check_vertex(v1)?;
    graph.check_vertex(v2)?;
    if v1 == v2 {
        return param("pair statistics need two distinct vertices");
    }
    let n = graph.vertex_count();
    // part[w] in 0..4, or 4 for v1/v2 themselves
    let mut part = vec![3u8; n];
    for &w in graph.neighbors(v1)? {
        part[w as usize] = 0;
    }
    for &w in graph.neighbors(v2)? {
        let w = w as usize;
        part[w] = if part[w] == 0 { 1 } else { 2 };
    }
    part[v1] = 4;
    part[v2] = 4;

    let mut sizes = [0u64; 4];
    for &p in &part {
        if p < 4 {
            sizes[p as usize] += 1;
        }
    }
    let mut edges = [[0u64; 4]; 4];
    for (a, b) in graph.edges() {
        let (pa, pb) = (part[a] as usize, part[b] as usize);
        if pa < 4 && pb < 4 {
            edges[pa.min(pb)][pa.max(pb)] += 1;
        }
    }
    let mut stats = PairPartitionStats::from_counts(n, graph.has_edge(v1, v2)?, sizes, edges)?;
    stats.v1 = v1;
    stats.v2 = v2;
    debug_assert_eq!(stats.total_edges(), graph.edge_count());
    Ok(stats)
}

/// The pair statistics `(B1, B2)` of an adjacent pair. Both vertices are
/// groupies iff `B1 >= 0` and `B2 >= 0`.
///
/// With `d1 = i1 + i2 + 1` (the degree of `v1`) and `c = i1 + i2 + i3 + 1`:
///
/// ```text
/// B1 = 2(n - d1)(e11 + e22 + e12 + i2)
///    + (n - 2 d1)(e13 + e14 + e23 + e24 + c)
///    - 2 d1 (e33 + e34 + e44)
/// ```
///
/// and `B2` is the same with parts 1 and 3 exchanged.
pub fn pair_statistics(stats: &PairPartitionStats, n: usize) -> Result<(i128, i128)> {
    if !stats.adjacent {
        return Err(Error::Unsupported(
            "pair statistics are defined for adjacent pairs only; classify each vertex instead".into(),
        ));
    }
    let e = |j, k| stats.e(j, k) as i128;
    let [i1, i2, i3, _] = stats.sizes.map(|s| s as i128);
    let n = n as i128;
    let c = i1 + i2 + i3 + 1;

    let d1 = i1 + i2 + 1;
    let b1 = 2 * (n - d1) * (e(1, 1) + e(2, 2) + e(1, 2) + i2)
        + (n - 2 * d1) * (e(1, 3) + e(1, 4) + e(2, 3) + e(2, 4) + c)
        - 2 * d1 * (e(3, 3) + e(3, 4) + e(4, 4));

    let d2 = i3 + i2 + 1;
    let b2 = 2 * (n - d2) * (e(3, 3) + e(2, 2) + e(2, 3) + i2)
        + (n - 2 * d2) * (e(1, 3) + e(3, 4) + e(1, 2) + e(2, 4) + c)
        - 2 * d2 * (e(1, 1) + e(1, 4) + e(4, 4));

    Ok((b1, b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_edge_list;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n))).unwrap()
    }

    #[test]
    fn regular_graphs_are_all_groupies() {
        for g in [complete(5), cycle(7), complete(1)] {
            let report = groupie_report(&g).unwrap();
            assert_eq!(report.count, g.vertex_count());
            assert_eq!(report.proportion(), Ratio::from_integer(1));
        }
    }

    #[test]
    fn k4_plus_disjoint_edge() {
        let mut edges: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        edges.push((4, 5));
        let g = Graph::from_edges(6, edges).unwrap();
        assert_eq!(g.edge_count(), 7);
        for v in 0..4 {
            assert!(is_groupie(&g, v).unwrap());
        }
        assert!(!is_groupie(&g, 4).unwrap());
        assert!(!is_groupie(&g, 5).unwrap());
    }

    #[test]
    fn isolated_vertex_convention() {
        let g = Graph::empty(3);
        for v in 0..3 {
            assert!(is_groupie(&g, v).unwrap());
        }
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let report = groupie_report(&g).unwrap();
        assert_eq!(report.flags, vec![true, true, false]);
        assert_eq!(report.proportion(), Ratio::new(2, 3));
        assert!(groupie_report(&Graph::empty(0)).is_err());
        assert!(is_groupie(&g, 3).is_err());
    }

    #[test]
    fn path_p3_report() {
        let g = load_edge_list("n 3\n0 1\n1 2").unwrap();
        let report = groupie_report(&g).unwrap();
        assert_eq!(report.flags, vec![true, false, true]);
        assert_eq!(report.count, 2);
        assert_eq!(report.proportion(), Ratio::new(2, 3));
        assert_eq!(report.edge_count, 2);
        assert_eq!(report.groupies().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn neighborhood_partitions() {
        let k4 = complete(4);
        let s = neighborhood_stats(&k4, 0).unwrap();
        assert_eq!((s.degree, s.e1, s.e2, s.e3), (3, 3, 0, 0));
        assert_eq!(single_vertex_statistic(&s, 4), 0);

        let p4 = load_edge_list("0 1\n1 2\n2 3").unwrap();
        let s = neighborhood_stats(&p4, 0).unwrap();
        assert_eq!((s.degree, s.e1, s.e2, s.e3), (1, 0, 1, 1));
        assert_eq!(single_vertex_statistic(&s, 4), 2);

        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let s = neighborhood_stats(&g, 4).unwrap();
        assert_eq!((s.degree, s.e1, s.e2, s.e3), (0, 0, 3, 0));
        assert_eq!(single_vertex_statistic(&s, 5), 0);
    }

    #[test]
    fn pair_partitions() {
        let s = pair_partition_stats(&complete(4), 0, 1).unwrap();
        assert!(s.adjacent);
        assert_eq!(s.sizes, [0, 2, 0, 0]);
        assert_eq!(s.e(2, 2), 1);
        assert_eq!(s.edges.iter().flatten().sum::<u64>(), 1);

        let s = pair_partition_stats(&Graph::empty(4), 0, 1).unwrap();
        assert!(!s.adjacent);
        assert_eq!(s.sizes, [0, 0, 0, 2]);
        assert_eq!(s.edges, [[0; 4]; 4]);
        assert!(matches!(pair_statistics(&s, 4), Err(Error::Unsupported(_))));

        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let s = pair_partition_stats(&g, 0, 1).unwrap();
        assert!(s.adjacent);
        assert_eq!(s.sizes, [0, 0, 0, 2]);
        assert_eq!(s.e(4, 4), 0);
        assert_eq!(pair_statistics(&s, 4).unwrap(), (2, 2));

        assert!(matches!(pair_partition_stats(&g, 2, 2), Err(Error::Parameter(_))));
        assert!(pair_partition_stats(&g, 0, 9).is_err());
    }

    #[test]
    fn pair_statistics_single_inner_edge() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let s = pair_partition_stats(&g, 0, 1).unwrap();
        assert_eq!(s.e(4, 4), 1);
        assert_eq!(pair_statistics(&s, 4).unwrap(), (0, 0));
        assert_eq!(s.total_edges(), 2);
    }

    #[test]
    fn from_counts_validates() {
        assert!(PairPartitionStats::from_counts(4, true, [0, 0, 0, 1], [[0; 4]; 4]).is_err());
        let mut e = [[0; 4]; 4];
        e[3][3] = 2;
        assert!(PairPartitionStats::from_counts(4, true, [0, 0, 0, 2], e).is_err());
        e[3][3] = 1;
        assert!(PairPartitionStats::from_counts(4, true, [0, 0, 0, 2], e).is_ok());
    }

    #[test]
    fn symmetric_stats_give_equal_pair_statistics() {
        let mut e = [[0u64; 4]; 4];
        e[0][0] = 1; // e11
        e[2][2] = 1; // e33
        e[0][3] = 2; // e14
        e[2][3] = 2; // e34
        e[0][2] = 3; // e13
        e[1][1] = 1; // e22
        let s = PairPartitionStats::from_counts(12, true, [3, 2, 3, 2], e).unwrap();
        let (b1, b2) = pair_statistics(&s, 12).unwrap();
        assert_eq!(b1, b2);
    }
}
