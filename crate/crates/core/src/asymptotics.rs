//! Limiting groupie proportions and the auxiliary bounds.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{check_probability, param, Error, Result};
use crate::generate::ModelParams;

/// Standard normal CDF, `0.5 * erfc(-x / sqrt 2)`.
///
/// `erfc` is the fdlibm rational approximation (via `libm`), accurate to a
/// few ulps over the whole line, which keeps `Phi` within 1e-15 absolute.
pub fn normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return param(format!("normal CDF argument {x} is not finite"));
    }
    Ok(phi(x))
}

#[inline]
fn phi(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// Which limit statement a prediction comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    Gnp,
    /// `|n1 - n2| -> inf` with `n1 / n2 -> alpha`.
    BipartiteUnbalanced { alpha: f64 },
    /// `n1 - n2 = c` fixed.
    BipartiteBalancedShift { p: f64, c: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitPrediction {
    pub value: f64,
    pub regime: Regime,
}

/// `Phi(1)`, the limit of the groupie proportion in `B(n, p)` for every `0 < p < 1`.
pub fn gnp_limit() -> LimitPrediction {
    LimitPrediction { value: phi(1.0), regime: Regime::Gnp }
}

/// `max(1, alpha) / (1 + alpha)`.
pub fn bipartite_unbalanced_limit(alpha: f64) -> Result<LimitPrediction> {
    if !alpha.is_finite() || alpha < 0.0 {
        return param(format!("part-size ratio {alpha} must be a finite non-negative number"));
    }
    Ok(LimitPrediction {
        value: alpha.max(1.0) / (1.0 + alpha),
        regime: Regime::BipartiteUnbalanced { alpha },
    })
}

/// `(Phi(1 + s) + Phi(1 - s)) / 2` with `s = pc / (2(1 - p))`.
pub fn balanced_shift_limit(p: f64, c: i64) -> Result<LimitPrediction> {
    if !(p > 0.0 && p < 1.0) {
        return param(format!("balanced-shift limit needs 0 < p < 1, got {p}"));
    }
    let s = shift(p, c);
    Ok(LimitPrediction {
        value: 0.5 * (phi(1.0 + s) + phi(1.0 - s)),
        regime: Regime::BipartiteBalancedShift { p, c },
    })
}

fn shift(p: f64, c: i64) -> f64 {
    p * c as f64 / (2.0 * (1.0 - p))
}

/// Beyond this value of `|pc / (2(1 - p))|` the balanced-shift limit equals
/// 1/2 to double precision and the part sizes are treated as unbalanced.
pub const SHIFT_CUTOFF: f64 = 10.0;

/// Limit prediction for a concrete parameter set.
///
/// `B(n1, n2, p)` uses the balanced-shift limit with `c = n1 - n2` while
/// `|pc / (2(1 - p))| <= SHIFT_CUTOFF`, and the unbalanced limit with
/// `alpha = n1 / n2` otherwise. Requires `0 < p < 1`.
pub fn predicted_limit(params: &ModelParams) -> Result<LimitPrediction> {
    params.validate()?;
    let p = params.p();
    if !(p > 0.0 && p < 1.0) {
        return param(format!("limit predictions need 0 < p < 1, got {p}"));
    }
    match *params {
        ModelParams::Gnp { .. } => Ok(gnp_limit()),
        ModelParams::Bipartite { n1, n2, .. } => {
            let c = n1 as i64 - n2 as i64;
            if shift(p, c).abs() <= SHIFT_CUTOFF {
                balanced_shift_limit(p, c)
            } else {
                bipartite_unbalanced_limit(n1 as f64 / n2 as f64)
            }
        }
    }
}

/// Union bound `n (1 - p)^(n - 1)` on the probability that `B(n, p)` has an
/// isolated vertex.
pub fn isolated_vertex_bound(n: usize, p: f64) -> Result<f64> {
    check_probability(p)?;
    if n == 0 {
        return param("isolated-vertex bound needs n >= 1");
    }
    Ok(n as f64 * (1.0 - p).powf((n - 1) as f64))
}

/// Default universal constant for the one-dimensional Berry–Esseen bound.
pub const DEFAULT_BERRY_ESSEEN_CONSTANT: f64 = 0.5600;

/// `C (p^2 + (1-p)^2) / sqrt(p(1-p)) / sqrt(E)` for a sum of `E` Bernoulli(p) trials.
pub fn berry_esseen_bound(p: f64, edge_trials: u64, constant: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return param(format!("Berry-Esseen bound needs 0 < p < 1, got {p}"));
    }
    if edge_trials == 0 {
        return param("Berry-Esseen bound needs at least one trial");
    }
    if !constant.is_finite() || constant <= 0.0 {
        return param(format!("constant {constant} must be positive"));
    }
    let q = 1.0 - p;
    Ok(constant * (p * p + q * q) / (p * q).sqrt() / (edge_trials as f64).sqrt())
}

/// A finite distribution on the real line.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    /// Support points, strictly increasing, with their masses.
    atoms: Vec<(f64, f64)>,
}

impl DiscreteDistribution {
    /// Builds a distribution from `(point, probability)` pairs. Repeated
    /// points are merged; probabilities must be non-negative and sum to 1
    /// within 1e-12.
    pub fn new(atoms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut atoms: Vec<(f64, f64)> = atoms.into_iter().collect();
        if atoms.is_empty() {
            return param("distribution needs at least one support point");
        }
        for &(x, w) in &atoms {
            if !x.is_finite() || !w.is_finite() || w < 0.0 {
                return param(format!("invalid atom ({x}, {w})"));
            }
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > 1e-12 {
            return param(format!("probabilities sum to {total}, not 1"));
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self { atoms: merge_sorted(atoms) })
    }

    pub fn point_mass(x: f64) -> Result<Self> {
        Self::new([(x, 1.0)])
    }

    pub fn bernoulli(p: f64) -> Result<Self> {
        check_probability(p)?;
        Self::new([(0.0, 1.0 - p), (1.0, p)])
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn support_size(&self) -> usize {
        self.atoms.len()
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.atoms.iter().take_while(|a| a.0 <= x).map(|a| a.1).sum()
    }

    /// Distribution of `X + Y` for independent `X ~ self`, `Y ~ other`.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut atoms = Vec::with_capacity(self.atoms.len() * other.atoms.len());
        for &(x, wx) in &self.atoms {
            for &(y, wy) in &other.atoms {
                atoms.push((x + y, wx * wy));
            }
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self { atoms: merge_sorted(atoms) }
    }
}

fn merge_sorted(atoms: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
    for (x, w) in atoms {
        match merged.last_mut() {
            Some(last) if last.0 == x => last.1 += w,
            _ => merged.push((x, w)),
        }
    }
    merged
}

/// `sup_x |F(x) - G(x)|`. Both CDFs are right-continuous step functions, so
/// the supremum is attained at a point of the merged support.
pub fn sup_cdf_distance(f: &DiscreteDistribution, g: &DiscreteDistribution) -> f64 {
    let (a, b) = (f.atoms(), g.atoms());
    let (mut i, mut j) = (0, 0);
    let (mut fa, mut gb) = (0.0f64, 0.0f64);
    let mut sup = 0.0f64;
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(p), Some(q)) => p.0.min(q.0),
            (Some(p), None) => p.0,
            (None, Some(q)) => q.0,
            (None, None) => unreachable!(),
        };
        while i < a.len() && a[i].0 == x {
            fa += a[i].1;
            i += 1;
        }
        while j < b.len() && b[j].0 == x {
            gb += b[j].1;
            j += 1;
        }
        sup = sup.max((fa - gb).abs());
    }
    sup
}

/// Largest product of support sizes the convolution check will expand.
pub const CONVOLUTION_SUPPORT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvolutionBound {
    /// sup distance between the CDFs of the two sums
    pub lhs: f64,
    /// sum of the summand-wise sup distances
    pub rhs: f64,
    pub holds: bool,
}

/// Checks `sup|F - G| <= sum_k sup|F_k - G_k|` for the sums of independent
/// summands with distributions `fs` and `gs`.
pub fn convolution_bound_check(fs: &[DiscreteDistribution], gs: &[DiscreteDistribution]) -> Result<ConvolutionBound> {
    if fs.len() != gs.len() || fs.is_empty() {
        return param(format!(
            "need two equally long non-empty lists, got {} and {}",
            fs.len(),
            gs.len()
        ));
    }
    for list in [fs, gs] {
        let mut product = 1u64;
        for d in list {
            product = product.saturating_mul(d.support_size() as u64);
            if product > CONVOLUTION_SUPPORT_CAP {
                return Err(Error::Resource(format!(
                    "product of support sizes exceeds {CONVOLUTION_SUPPORT_CAP}"
                )));
            }
        }
    }
    let rhs: f64 = fs.iter().zip(gs).map(|(f, g)| sup_cdf_distance(f, g)).sum();
    let sum = |list: &[DiscreteDistribution]| {
        list[1..].iter().fold(list[0].clone(), |acc, d| acc.convolve(d))
    };
    let lhs = sup_cdf_distance(&sum(fs), &sum(gs));
    Ok(ConvolutionBound { lhs, rhs, holds: lhs <= rhs + 1e-12 })
}
