//! Exhaustive ground truth over all labelled graphs on a handful of vertices.
//!
//! A graph on `n` vertices is a `C(n, 2)`-bit mask; bit `k` is the `k`-th
//! pair `(u, v)`, `u < v`, in lexicographic order. Probabilities are exact
//! rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::asymptotics::{convolution_bound_check, DiscreteDistribution};
use crate::error::{param, Error, Result};
use crate::generate::{derive_seed, gen_gnp, RngSeed};
use crate::graph::Graph;
use crate::groupie::{
    groupie_report, is_groupie, neighborhood_stats, pair_partition_stats, pair_statistics,
    single_vertex_statistic,
};
use crate::moments::{exact_single_vertex_moments, single_vertex_moments};

/// Largest `n` enumerated by default.
pub const DEFAULT_MAX_N: usize = 5;
/// Hard cap, reachable only by explicit request.
pub const HARD_MAX_N: usize = 6;

fn pair_list(n: usize) -> Vec<(u32, u32)> {
    (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect()
}

fn graph_from_mask(n: usize, pairs: &[(u32, u32)], mask: u64) -> Graph {
    let edges: Vec<(u32, u32)> = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::from_sorted_edges(n, &edges)
}

fn check_size(n: usize, allow_six: bool) -> Result<()> {
    let cap = if allow_six { HARD_MAX_N } else { DEFAULT_MAX_N };
    if n > cap {
        return Err(Error::Resource(format!(
            "exhaustive enumeration is capped at n = {cap}, got {n}"
        )));
    }
    Ok(())
}

/// Visits each of the `2^C(n,2)` labelled graphs on `n` vertices once, in
/// increasing mask order. `n = 6` needs `allow_six`.
pub fn enumerate_all_graphs<F>(n: usize, allow_six: bool, mut visit: F) -> Result<u64>
where
    F: FnMut(u64, &Graph),
{
    check_size(n, allow_six)?;
    let pairs = pair_list(n);
    let total = 1u64 << pairs.len();
    for mask in 0..total {
        visit(mask, &graph_from_mask(n, &pairs, mask));
    }
    Ok(total)
}

/// Exact expected groupie count and proportion in `B(n, p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactExpectation {
    pub n: usize,
    pub p: BigRational,
    pub expected_count: BigRational,
    pub expected_proportion: BigRational,
}

fn check_rational_p(p: &BigRational) -> Result<()> {
    if *p < BigRational::zero() || *p > BigRational::one() {
        return param(format!("probability {p} is outside [0, 1]"));
    }
    Ok(())
}

/// `p^k (1-p)^(m-k)` for `k = 0..=m`.
fn edge_weights(p: &BigRational, m: usize) -> Vec<BigRational> {
    let q = BigRational::one() - p;
    (0..=m)
        .map(|k| num_traits::pow(p.clone(), k) * num_traits::pow(q.clone(), m - k))
        .collect()
}

/// Sums groupie counts over every graph on `n <= 6` vertices, weighted by
/// `p^e (1-p)^(C(n,2)-e)`. Graphs with equal edge count share a weight, so
/// counts are accumulated per edge count in integers first.
pub fn enumerate_expected_groupies(n: usize, p: &BigRational) -> Result<ExactExpectation> {
    check_rational_p(p)?;
    if n == 0 {
        return param("need at least one vertex");
    }
    let m = n * (n - 1) / 2;
    let mut groupies_by_edges = vec![0u64; m + 1];
    enumerate_all_graphs(n, true, |mask, g| {
        let count = groupie_report(g).map(|r| r.count).unwrap_or(0);
        groupies_by_edges[mask.count_ones() as usize] += count as u64;
    })?;
    let expected_count = edge_weights(p, m)
        .into_iter()
        .zip(groupies_by_edges)
        .fold(BigRational::zero(), |acc, (w, c)| acc + w * BigInt::from(c));
    let expected_proportion = expected_count.clone() / BigInt::from(n);
    Ok(ExactExpectation { n, p: p.clone(), expected_count, expected_proportion })
}

/// `P(v is a groupie | deg(v) = i)` in `B(n, p)`, `n <= 6`.
///
/// By exchangeability the neighbours can be fixed to `1..=i` with `v = 0`;
/// every edge set on the other `n - 1` vertices is then enumerated and
/// weighted, and the predicate is evaluated on the whole graph.
pub fn exact_groupie_probability_given_degree(n: usize, i: usize, p: &BigRational) -> Result<BigRational> {
    check_rational_p(p)?;
    check_size(n, true)?;
    if n == 0 || i > n - 1 {
        return param(format!("degree {i} is out of range for n = {n}"));
    }
    let rest = n - 1;
    let inner: Vec<(u32, u32)> = pair_list(rest).into_iter().map(|(u, v)| (u + 1, v + 1)).collect();
    let weights = edge_weights(p, inner.len());
    let mut prob = BigRational::zero();
    for mask in 0..1u64 << inner.len() {
        let mut edges: Vec<(u32, u32)> = (1..=i as u32).map(|w| (0, w)).collect();
        edges.extend(inner.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e));
        let g = Graph::from_sorted_edges(n, &edges);
        if is_groupie(&g, 0)? {
            prob += &weights[mask.count_ones() as usize];
        }
    }
    Ok(prob)
}

/// Outcome of one verification suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: u64,
    pub failures: u64,
    /// First counterexample, if any.
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn for_each_small_graph<F: FnMut(usize, u64, &Graph)>(max_n: usize, mut f: F) -> Result<()> {
    check_size(max_n, true)?;
    for n in 1..=max_n {
        enumerate_all_graphs(n, true, |mask, g| f(n, mask, g))?;
    }
    Ok(())
}

/// For every graph with `n <= max_n` and every vertex of positive degree,
/// `is_groupie` agrees with the sign of the single-vertex statistic.
pub fn verify_statistic_equivalence(max_n: usize) -> Result<SuiteResult> {
    let mut suite = SuiteResult::new("statistic-equivalence");
    for_each_small_graph(max_n, |n, mask, g| {
        for v in 0..n {
            if g.degrees()[v] == 0 {
                continue;
            }
            let s = single_vertex_statistic(&neighborhood_stats(g, v).unwrap(), n);
            let ok = is_groupie(g, v).unwrap() == (s >= 0);
            suite.record(ok, || format!("n={n} mask={mask:#x} v={v} S={s}"));
        }
    })?;
    Ok(suite)
}

/// For every adjacent pair, `B1 >= 0 && B2 >= 0` iff both ends are groupies,
/// and exchanging the pair exchanges `B1` and `B2`.
pub fn verify_pair_equivalence(max_n: usize) -> Result<SuiteResult> {
    let mut suite = SuiteResult::new("pair-equivalence");
    for_each_small_graph(max_n, |n, mask, g| {
        for (v1, v2) in g.edges() {
            let (b1, b2) = pair_statistics(&pair_partition_stats(g, v1, v2).unwrap(), n).unwrap();
            let both = is_groupie(g, v1).unwrap() && is_groupie(g, v2).unwrap();
            suite.record((b1 >= 0 && b2 >= 0) == both, || {
                format!("n={n} mask={mask:#x} pair=({v1},{v2}) B=({b1},{b2})")
            });
            let swapped = pair_statistics(&pair_partition_stats(g, v2, v1).unwrap(), n).unwrap();
            suite.record(swapped == (b2, b1), || format!("n={n} mask={mask:#x} swap ({v1},{v2})"));
        }
    })?;
    Ok(suite)
}

/// Every graph with an edge has a groupie and every graph on `n >= 2`
/// vertices has at least two: exhaustively for `n <= max_n`, then on
/// `random_graphs` seeded samples with `2 <= n <= 12`.
pub fn verify_groupie_existence(max_n: usize, random_graphs: u64, seed: RngSeed) -> Result<SuiteResult> {
    let mut suite = SuiteResult::new("groupie-existence");
    let mut check = |g: &Graph, label: &dyn Fn() -> String| {
        let r = groupie_report(g).unwrap();
        let n = g.vertex_count();
        suite.record(r.count >= 1, label);
        if n >= 2 {
            suite.record(r.count >= 2, label);
        }
        let degree_squares: u64 = g.degrees().iter().map(|&d| d as u64 * d as u64).sum();
        suite.record(g.neighbor_degree_sums().iter().sum::<u64>() == degree_squares, label);
    };
    for_each_small_graph(max_n, |n, mask, g| check(g, &|| format!("n={n} mask={mask:#x}")))?;
    for t in 0..random_graphs {
        let word = derive_seed(seed.0, t);
        let n = 2 + (word % 11) as usize;
        let p = ((word >> 8) % 1000) as f64 / 999.0;
        let g = gen_gnp(n, p, seed.derive(t))?;
        check(&g, &|| format!("random graph {t}: n={n} p={p}"));
    }
    Ok(suite)
}

/// The closed-form single-vertex moments equal the binomial decomposition,
/// in exact rationals, for `2 <= n <= 12`, every degree and
/// `p in {0.1, 0.3, 0.5, 0.7, 0.9}`.
pub fn verify_moment_identities() -> Result<SuiteResult> {
    let mut suite = SuiteResult::new("moment-identities");
    for n in 2..=12 {
        for i in 0..n {
            for num in [1, 3, 5, 7, 9] {
                let p = BigRational::new(num.into(), 10.into());
                let a = single_vertex_moments(n, i, p.clone())?;
                let b = exact_single_vertex_moments(n, i, p)?;
                suite.record(a == b, || format!("n={n} i={i} p={num}/10"));
            }
        }
    }
    Ok(suite)
}

fn unit_interval(seed: u64, index: u64) -> f64 {
    (derive_seed(seed, index) >> 11) as f64 / (1u64 << 53) as f64
}

/// The convolution bound holds on the worked Bernoulli example and on
/// `instances` random lists of Bernoulli summands (1 to 8 per list).
pub fn verify_convolution_bound(instances: u64, seed: RngSeed) -> Result<SuiteResult> {
    let mut suite = SuiteResult::new("convolution-bound");
    let b3 = DiscreteDistribution::bernoulli(0.3)?;
    let b5 = DiscreteDistribution::bernoulli(0.5)?;
    let r = convolution_bound_check(&[b3.clone(), b3], &[b5.clone(), b5])?;
    suite.record(
        r.holds && (r.rhs - 0.4).abs() < 1e-12 && (r.lhs - 0.24).abs() < 1e-12,
        || format!("worked example: lhs={} rhs={}", r.lhs, r.rhs),
    );
    for t in 0..instances {
        let base = derive_seed(seed.0, t);
        let len = 1 + (base % 8) as usize;
        let mut fs = Vec::with_capacity(len);
        let mut gs = Vec::with_capacity(len);
        for k in 0..len as u64 {
            fs.push(DiscreteDistribution::bernoulli(unit_interval(base, 2 * k))?);
            gs.push(DiscreteDistribution::bernoulli(unit_interval(base, 2 * k + 1))?);
        }
        let r = convolution_bound_check(&fs, &gs)?;
        suite.record(r.holds, || format!("instance {t}: lhs={} rhs={}", r.lhs, r.rhs));
    }
    Ok(suite)
}

/// Runs every exhaustive suite for graphs up to `max_n` vertices.
pub fn verify_all(max_n: usize, seed: RngSeed) -> Result<Vec<SuiteResult>> {
    check_size(max_n, true)?;
    Ok(vec![
        verify_statistic_equivalence(max_n)?,
        verify_pair_equivalence(max_n)?,
        verify_groupie_existence(max_n, 10_000, seed)?,
        verify_moment_identities()?,
        verify_convolution_bound(100, seed)?,
    ])
}
