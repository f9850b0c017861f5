//! Seeded samplers for `B(n, p)` and `B(n1, n2, p)`.
//!
//! Candidate pairs are numbered by a linear index: for `B(n, p)` the pairs
//! `(u, v)`, `u < v`, in lexicographic order; for `B(n1, n2, p)` the cross
//! pairs `(a, n1 + b)` as `a * n2 + b`. The random word attached to pair `k`
//! of a graph with key `K` is
//!
//! ```text
//! pair_word(K, k) = mix64(K + (k + 1) * 0x9E37_79B9_7F4A_7C15)   (wrapping)
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer and `K = mix64(seed)`. For
//! `p >= 0.25` pair `k` is an edge iff the top 53 bits of its word fall below
//! `p * 2^53`. For smaller `p` the sampler jumps from edge to edge: standing
//! at index `c`, the word of `c` is turned into a uniform `u` in `(0, 1]` and
//! the next edge is `c + floor(ln u / ln(1 - p))`. Both strategies are pure
//! functions of `(params, seed)`.

use crate::error::{check_probability, param, Result};
use crate::graph::Graph;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Below this edge probability the sampler skips geometrically instead of
/// testing every pair.
pub const SPARSE_THRESHOLD: f64 = 0.25;

/// SplitMix64 output function (Stafford variant 13).
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of stream `index` derived from `seed`; used for per-trial seeds.
#[inline]
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix64(seed ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

#[inline]
fn pair_word(key: u64, index: u64) -> u64 {
    mix64(key.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Master seed for one graph or one simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// Seed of the `index`-th derived stream.
    pub fn derive(self, index: u64) -> RngSeed {
        RngSeed(derive_seed(self.0, index))
    }
}

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        RngSeed(seed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Gnp { n: usize, p: f64 },
    Bipartite { n1: usize, n2: usize, p: f64 },
}

impl ModelParams {
    pub fn gnp(n: usize, p: f64) -> Result<Self> {
        let params = ModelParams::Gnp { n, p };
        params.validate()?;
        Ok(params)
    }

    pub fn bipartite(n1: usize, n2: usize, p: f64) -> Result<Self> {
        let params = ModelParams::Bipartite { n1, n2, p };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability(self.p())?;
        match *self {
            ModelParams::Gnp { n: 0, .. } => param("B(n, p) needs n >= 1"),
            ModelParams::Bipartite { n1, n2, .. } if n1 == 0 || n2 == 0 => {
                param("B(n1, n2, p) needs both parts non-empty")
            }
            _ if self.vertex_count() > u32::MAX as usize => {
                param("vertex count exceeds the u32 index space")
            }
            _ => Ok(()),
        }
    }

    pub fn p(&self) -> f64 {
        match *self {
            ModelParams::Gnp { p, .. } | ModelParams::Bipartite { p, .. } => p,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            ModelParams::Gnp { n, .. } => n,
            ModelParams::Bipartite { n1, n2, .. } => n1 + n2,
        }
    }

    /// Number of candidate pairs.
    pub fn pair_count(&self) -> u64 {
        match *self {
            ModelParams::Gnp { n, .. } => (n as u64) * (n as u64).saturating_sub(1) / 2,
            ModelParams::Bipartite { n1, n2, .. } => n1 as u64 * n2 as u64,
        }
    }

    pub fn model_name(&self) -> &'static str {
        match self {
            ModelParams::Gnp { .. } => "gnp",
            ModelParams::Bipartite { .. } => "bipartite",
        }
    }
}

/// Streams the edges of one sampled graph without materializing it.
///
/// Repeated calls to [`EdgeSampler::for_each_edge`] replay the same edges in
/// the same (lexicographic) order.
#[derive(Debug, Clone, Copy)]
pub struct EdgeSampler {
    params: ModelParams,
    key: u64,
}

impl EdgeSampler {
    pub fn new(params: ModelParams, seed: RngSeed) -> Result<Self> {
        params.validate()?;
        Ok(Self { params, key: mix64(seed.0) })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn for_each_edge<F: FnMut(usize, usize)>(&self, mut f: F) {
        let p = self.params.p();
        if p <= 0.0 {
            return;
        }
        if p < SPARSE_THRESHOLD {
            self.sparse(p, &mut f);
        } else {
            self.dense(p, &mut f);
        }
    }

    fn dense<F: FnMut(usize, usize)>(&self, p: f64, f: &mut F) {
        // p = 1 maps to 2^53, above every 53-bit word.
        let threshold = (p * (1u64 << 53) as f64) as u64;
        let key = self.key;
        let mut k = 0u64;
        match self.params {
            ModelParams::Gnp { n, .. } => {
                for u in 0..n {
                    for v in u + 1..n {
                        if pair_word(key, k) >> 11 < threshold {
                            f(u, v);
                        }
                        k += 1;
                    }
                }
            }
            ModelParams::Bipartite { n1, n2, .. } => {
                for a in 0..n1 {
                    for b in 0..n2 {
                        if pair_word(key, k) >> 11 < threshold {
                            f(a, n1 + b);
                        }
                        k += 1;
                    }
                }
            }
        }
    }

    fn sparse<F: FnMut(usize, usize)>(&self, p: f64, f: &mut F) {
        let total = self.params.pair_count();
        let log_q = (-p).ln_1p();
        // Row bookkeeping for the triangular index of B(n, p).
        let mut row = 0usize;
        let mut row_start = 0u64;
        let mut row_end = match self.params {
            ModelParams::Gnp { n, .. } => n.saturating_sub(1) as u64,
            ModelParams::Bipartite { .. } => 0,
        };

        let mut cursor = 0u64;
        while cursor < total {
            let word = pair_word(self.key, cursor);
            let u = ((word >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
            let skip = (u.ln() / log_q).floor();
            if skip >= (total - cursor) as f64 {
                break;
            }
            let idx = cursor + skip as u64;
            match self.params {
                ModelParams::Gnp { n, .. } => {
                    while idx >= row_end {
                        row += 1;
                        row_start = row_end;
                        row_end += (n - 1 - row) as u64;
                    }
                    f(row, row + 1 + (idx - row_start) as usize);
                }
                ModelParams::Bipartite { n1, n2, .. } => {
                    f((idx / n2 as u64) as usize, n1 + (idx % n2 as u64) as usize);
                }
            }
            cursor = idx + 1;
        }
    }

    /// Materializes the sampled graph.
    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        self.for_each_edge(|u, v| edges.push((u as u32, v as u32)));
        Graph::from_sorted_edges(self.params.vertex_count(), &edges)
    }
}

/// Samples `B(n, p)`.
pub fn gen_gnp(n: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    Ok(EdgeSampler::new(ModelParams::gnp(n, p)?, seed)?.graph())
}

/// Samples `B(n1, n2, p)`; vertices `0..n1` form the first part.
pub fn gen_bipartite(n1: usize, n2: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    Ok(EdgeSampler::new(ModelParams::bipartite(n1, n2, p)?, seed)?.graph())
}

/// Samples a graph from either model.
pub fn generate(params: ModelParams, seed: RngSeed) -> Result<Graph> {
    Ok(EdgeSampler::new(params, seed)?.graph())
}
