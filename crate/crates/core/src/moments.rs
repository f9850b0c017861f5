//! Conditional moments of the single-vertex statistic `S` and of the pair
//! statistics `(B1, B2)`.
//!
//! Two routes are provided for each quantity:
//!
//! * closed forms (`single_vertex_moments`, `printed_pair_moments`), evaluated
//!   term for term;
//! * the binomial decomposition (`exact_*`): given the conditioning sizes,
//!   every edge count is an independent binomial and the statistics are
//!   linear in them, so means, variances and covariances follow from
//!   `E[Bin(m, p)] = mp` and `Var[Bin(m, p)] = mp(1 - p)`.
//!
//! For the single vertex the two routes agree exactly. For the pair, the
//! closed-form means and variances do not account for the edges that the
//! partition itself fixes, and differ from the decomposition; the
//! covariances agree. [`compare_pair_moments`] reports the difference.
//!
//! Every function is generic over [`Scalar`], so the same code runs in `f64`
//! and in exact rationals (`BigRational`).

use num_traits::{FromPrimitive, Num};

use crate::error::{param, Result};
use crate::groupie::pair_capacity;

/// Numeric field the moment formulas are evaluated in.
pub trait Scalar: Num + Clone + PartialOrd + FromPrimitive + std::fmt::Debug {}

impl<T: Num + Clone + PartialOrd + FromPrimitive + std::fmt::Debug> Scalar for T {}

#[inline]
fn int<T: Scalar>(x: i64) -> T {
    T::from_i64(x).expect("integer representable in scalar type")
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary<T = f64> {
    pub mean: T,
    pub variance: T,
    /// Only set for pair statistics.
    pub covariance: Option<T>,
}

/// Moments of `(B1, B2)` conditioned on the partition sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct PairMoments<T = f64> {
    pub b1: MomentSummary<T>,
    pub b2: MomentSummary<T>,
    pub covariance: T,
}

fn check_p<T: Scalar>(p: &T) -> Result<()> {
    if *p >= T::zero() && *p <= T::one() {
        Ok(())
    } else {
        param(format!("probability {p:?} is outside [0, 1]"))
    }
}

fn check_single(n: usize, i: usize) -> Result<()> {
    if n < 2 {
        return param(format!("need n >= 2, got {n}"));
    }
    if i > n - 1 {
        return param(format!("degree {i} is out of range 0..={}", n - 1));
    }
    Ok(())
}

fn check_pair(n: usize, i1: usize, i2: usize, i3: usize) -> Result<()> {
    if n < 2 || i1 + i2 + i3 > n - 2 {
        return param(format!(
            "part sizes i1={i1}, i2={i2}, i3={i3} exceed the {} vertices outside the pair",
            n.saturating_sub(2)
        ));
    }
    Ok(())
}

/// Closed-form mean `i((n-2)p + (n-2i))` and variance
/// `[(2(n-i))^2 C(i,2) + (n-2i)^2 i(n-1-i) + (2i)^2 C(n-1-i,2)] p(1-p)`
/// of `S` given `deg(v) = i`.
pub fn single_vertex_moments<T: Scalar>(n: usize, i: usize, p: T) -> Result<MomentSummary<T>> {
    check_single(n, i)?;
    check_p(&p)?;
    let (n, i) = (n as i64, i as i64);
    let pq = p.clone() - p.clone() * p.clone();
    let mean = int::<T>(i) * (int::<T>(n - 2) * p + int(n - 2 * i));
    let bracket = (2 * (n - i)).pow(2) * i * (i - 1) / 2
        + (n - 2 * i).pow(2) * i * (n - 1 - i)
        + (2 * i).pow(2) * (n - 1 - i) * (n - 2 - i) / 2;
    Ok(MomentSummary { mean, variance: int::<T>(bracket) * pq, covariance: None })
}

/// Independent binomial terms of a linear statistic: `(coefficient, trials)`.
type LinearForm = (i64, Vec<(i64, u64)>);

fn linear_moments<T: Scalar>(form: &LinearForm, p: &T) -> (T, T) {
    let pq = p.clone() - p.clone() * p.clone();
    let (constant, terms) = form;
    let mut mean = int::<T>(*constant);
    let mut var = T::zero();
    for &(coef, trials) in terms {
        let t = int::<T>(trials as i64);
        mean = mean + int::<T>(coef) * t.clone() * p.clone();
        var = var + int::<T>(coef * coef) * t * pq.clone();
    }
    (mean, var)
}

/// Moments of `S = 2(n-i)e1 + (n-2i)(e3+i) - 2i e2` with
/// `e1 ~ Bin(C(i,2), p)`, `e3 ~ Bin(i(n-1-i), p)`, `e2 ~ Bin(C(n-1-i,2), p)` independent.
pub fn exact_single_vertex_moments<T: Scalar>(n: usize, i: usize, p: T) -> Result<MomentSummary<T>> {
    check_single(n, i)?;
    check_p(&p)?;
    let (n, i) = (n as i64, i as i64);
    let rest = n - 1 - i;
    let form: LinearForm = (
        (n - 2 * i) * i,
        vec![
            (2 * (n - i), (i * (i - 1) / 2) as u64),
            (n - 2 * i, (i * rest) as u64),
            (-2 * i, (rest * (rest - 1).max(0) / 2) as u64),
        ],
    );
    let (mean, variance) = linear_moments(&form, &p);
    Ok(MomentSummary { mean, variance, covariance: None })
}

/// Closed-form pair moments, evaluated term for term. With `d1 = i1+i2+1`,
/// `d3 = i3+i2+1` and `i4 = n-2-i1-i2-i3`:
///
/// * `E[B1] = (n-d1)((n-2)p + (n-2 d1))`, `E[B2]` likewise with `d3`;
/// * `Var[B1] = [(2(n-d1))^2 d1(d1-1)/2 + (n-2 d1)^2 d1(n-1-d1)
///   + (2 d1)^2 (n-1-d1)(n-2-d1)/2] p(1-p)`, `Var[B2]` likewise;
/// * `Cov[B1, B2]` as the ten-term sum over the part pairs.
pub fn printed_pair_moments<T: Scalar>(n: usize, i1: usize, i2: usize, i3: usize, p: T) -> Result<PairMoments<T>> {
    check_pair(n, i1, i2, i3)?;
    check_p(&p)?;
    let (n, i1, i2, i3) = (n as i64, i1 as i64, i2 as i64, i3 as i64);
    let i4 = n - 2 - i1 - i2 - i3;
    let pq = p.clone() - p.clone() * p.clone();
    let d1 = i1 + i2 + 1;
    let d3 = i3 + i2 + 1;

    let mean = |d: i64| int::<T>(n - d) * (int::<T>(n - 2) * p.clone() + int(n - 2 * d));
    let var = |d: i64| {
        let bracket = (2 * (n - d)).pow(2) * d * (d - 1) / 2
            + (n - 2 * d).pow(2) * d * (n - 1 - d)
            + (2 * d).pow(2) * (n - 1 - d) * (n - 2 - d) / 2;
        int::<T>(bracket) * pq.clone()
    };
    let binom2 = |k: i64| k * (k - 1) / 2;
    let cov_bracket = -4 * (n - d1) * d3 * binom2(i1)
        + 4 * (n - d1) * (n - d3) * binom2(i2)
        - 4 * (n - d3) * d1 * binom2(i3)
        + 4 * d1 * d3 * binom2(i4)
        + 2 * (n - d1) * (n - 2 * d3) * i1 * i2
        + (n - 2 * d1) * (n - 2 * d3) * i1 * i3
        - 2 * (n - 2 * d1) * d3 * i1 * i4
        + 2 * (n - d3) * (n - 2 * d1) * i2 * i3
        + (n - 2 * d1) * (n - 2 * d3) * i2 * i4
        - 2 * d1 * (n - 2 * d3) * i3 * i4;
    let covariance = int::<T>(cov_bracket) * pq.clone();

    Ok(PairMoments {
        b1: MomentSummary { mean: mean(d1), variance: var(d1), covariance: Some(covariance.clone()) },
        b2: MomentSummary { mean: mean(d3), variance: var(d3), covariance: Some(covariance.clone()) },
        covariance,
    })
}

/// The ten part pairs `(j, k)`, `j <= k`, 0-based.
const PART_PAIRS: [(usize, usize); 10] =
    [(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Coefficients of `e_jk` in `B1` and `B2` (indexed like [`PART_PAIRS`]) and
/// the constant terms.
fn pair_forms(n: i64, sizes: [i64; 4]) -> ([i64; 10], [i64; 10], i64, i64) {
    let [i1, i2, i3, _] = sizes;
    let c = i1 + i2 + i3 + 1;
    // B1: inner = {11, 22, 12}, cross = {13, 14, 23, 24}, outer = {33, 34, 44}
    let d1 = i1 + i2 + 1;
    let (a1, b1, c1) = (2 * (n - d1), n - 2 * d1, -2 * d1);
    // B2: inner = {33, 22, 23}, cross = {13, 34, 12, 24}, outer = {11, 14, 44}
    let d3 = i3 + i2 + 1;
    let (a2, b2, c2) = (2 * (n - d3), n - 2 * d3, -2 * d3);
    //        11  22  33  44  12  13  14  23  24  34
    let f1 = [a1, a1, c1, c1, a1, b1, b1, b1, b1, c1];
    let f2 = [c2, a2, a2, c2, b2, b2, c2, a2, b2, b2];
    let k1 = a1 * i2 + b1 * c;
    let k2 = a2 * i2 + b2 * c;
    (f1, f2, k1, k2)
}

/// Pair moments from the binomial decomposition: the ten `e_jk` are
/// independent binomials whose trial counts are the pair capacities of the
/// parts, and `B1`, `B2` are linear in them.
pub fn exact_pair_moments<T: Scalar>(n: usize, i1: usize, i2: usize, i3: usize, p: T) -> Result<PairMoments<T>> {
    check_pair(n, i1, i2, i3)?;
    check_p(&p)?;
    let i4 = n - 2 - i1 - i2 - i3;
    let sizes = [i1 as u64, i2 as u64, i3 as u64, i4 as u64];
    let (f1, f2, k1, k2) = pair_forms(n as i64, sizes.map(|s| s as i64));
    let trials: Vec<u64> = PART_PAIRS.iter().map(|&(j, k)| pair_capacity(&sizes, j, k)).collect();

    let form1: LinearForm = (k1, f1.iter().zip(&trials).map(|(&c, &t)| (c, t)).collect());
    let form2: LinearForm = (k2, f2.iter().zip(&trials).map(|(&c, &t)| (c, t)).collect());
    let (m1, v1) = linear_moments(&form1, &p);
    let (m2, v2) = linear_moments(&form2, &p);

    let pq = p.clone() - p.clone() * p;
    let mut covariance = T::zero();
    for ((&c1, &c2), &t) in f1.iter().zip(&f2).zip(&trials) {
        covariance = covariance + int::<T>(c1 * c2) * int::<T>(t as i64) * pq.clone();
    }
    Ok(PairMoments {
        b1: MomentSummary { mean: m1, variance: v1, covariance: Some(covariance.clone()) },
        b2: MomentSummary { mean: m2, variance: v2, covariance: Some(covariance.clone()) },
        covariance,
    })
}

/// Absolute and relative difference of one moment between two routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discrepancy {
    pub reference: f64,
    pub candidate: f64,
    pub absolute: f64,
    /// `absolute / |reference|`; infinite when the reference is 0 and the
    /// candidate is not, 0 when both are 0.
    pub relative: f64,
}

impl Discrepancy {
    pub fn new(reference: f64, candidate: f64) -> Self {
        let absolute = (candidate - reference).abs();
        let relative = if absolute == 0.0 {
            0.0
        } else if reference == 0.0 {
            f64::INFINITY
        } else {
            absolute / reference.abs()
        };
        Self { reference, candidate, absolute, relative }
    }
}

/// Closed-form pair moments measured against the decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct PairMomentComparison {
    pub printed: PairMoments,
    pub exact: PairMoments,
    pub mean_b1: Discrepancy,
    pub mean_b2: Discrepancy,
    pub variance_b1: Discrepancy,
    pub variance_b2: Discrepancy,
    pub covariance: Discrepancy,
}

pub fn compare_pair_moments(n: usize, i1: usize, i2: usize, i3: usize, p: f64) -> Result<PairMomentComparison> {
    let printed = printed_pair_moments(n, i1, i2, i3, p)?;
    let exact = exact_pair_moments(n, i1, i2, i3, p)?;
    Ok(PairMomentComparison {
        mean_b1: Discrepancy::new(exact.b1.mean, printed.b1.mean),
        mean_b2: Discrepancy::new(exact.b2.mean, printed.b2.mean),
        variance_b1: Discrepancy::new(exact.b1.variance, printed.b1.variance),
        variance_b2: Discrepancy::new(exact.b2.variance, printed.b2.variance),
        covariance: Discrepancy::new(exact.covariance, printed.covariance),
        printed,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn single_vertex_examples() {
        for p in [0.0f64, 0.25, 0.5, 1.0] {
            let m = single_vertex_moments(3, 2, p).unwrap();
            assert!((m.mean - (2.0 * p - 2.0)).abs() < 1e-12);
            assert!((m.variance - 4.0 * p * (1.0 - p)).abs() < 1e-12);
            assert_eq!(m.covariance, None);
        }
        let m = single_vertex_moments(10, 5, 0.5).unwrap();
        assert_eq!((m.mean, m.variance), (20.0, 400.0));
        let m = single_vertex_moments(7, 0, 0.3).unwrap();
        assert_eq!((m.mean, m.variance), (0.0, 0.0));
    }

    #[test]
    fn exact_single_vertex_examples() {
        let m = exact_single_vertex_moments(3, 2, 0.25).unwrap();
        assert_eq!((m.mean, m.variance), (-1.5, 0.75));
        for p in [0.1, 0.3, 0.5, 0.8] {
            let m = exact_single_vertex_moments(4, 1, q((p * 10.0) as i64, 10)).unwrap();
            let pr = q((p * 10.0) as i64, 10);
            assert_eq!(m.mean, q(2, 1) + q(2, 1) * pr.clone());
            assert_eq!(m.variance, q(12, 1) * pr.clone() * (q(1, 1) - pr));
        }
        for p in [0.0, 1.0] {
            assert_eq!(exact_single_vertex_moments(9, 4, p).unwrap().variance, 0.0);
        }
    }

    #[test]
    fn single_vertex_range_errors() {
        assert!(single_vertex_moments(5, 7, 0.5).is_err());
        assert!(single_vertex_moments(5, 5, 0.5).is_err());
        assert!(single_vertex_moments(1, 0, 0.5).is_err());
        assert!(exact_single_vertex_moments(5, 2, 1.5).is_err());
        assert!(single_vertex_moments(5, 2, q(-1, 3)).is_err());
    }

    #[test]
    fn single_vertex_routes_agree_exactly() {
        for n in 2..=12usize {
            for i in 0..n {
                for num in [1, 3, 5, 7, 9] {
                    let a = single_vertex_moments(n, i, q(num, 10)).unwrap();
                    let b = exact_single_vertex_moments(n, i, q(num, 10)).unwrap();
                    assert_eq!(a, b, "n={n} i={i} p={num}/10");
                }
            }
        }
    }

    #[test]
    fn printed_pair_examples() {
        let m = printed_pair_moments(4, 0, 0, 0, 0.5).unwrap();
        assert_eq!(m.b1.mean, 9.0);
        assert_eq!(m.b1.variance, 3.0); // 12 p(1-p)
        assert_eq!(m.covariance, 1.0);
        let m = printed_pair_moments(15, 3, 4, 3, 0.3).unwrap();
        assert_eq!(m.b1.mean, m.b2.mean);
        assert_eq!(m.b1.variance, m.b2.variance);
    }

    #[test]
    fn exact_pair_examples() {
        for p in [0.0f64, 0.2, 0.5, 1.0] {
            let m = exact_pair_moments(4, 0, 0, 0, p).unwrap();
            let pq = p * (1.0 - p);
            assert!((m.b1.mean - (2.0 - 2.0 * p)).abs() < 1e-12);
            assert!((m.b2.mean - (2.0 - 2.0 * p)).abs() < 1e-12);
            assert!((m.b1.variance - 4.0 * pq).abs() < 1e-12);
            assert!((m.covariance - 4.0 * pq).abs() < 1e-12);
        }
        let m = exact_pair_moments(20, 4, 5, 6, 0.0).unwrap();
        assert_eq!((m.b1.variance, m.b2.variance, m.covariance), (0.0, 0.0, 0.0));
        assert!(exact_pair_moments(6, 2, 2, 1, 0.5).is_err());
        assert!(printed_pair_moments(6, 2, 2, 1, 0.5).is_err());
    }

    #[test]
    fn pair_routes_share_the_covariance() {
        for n in 2..=14usize {
            for i1 in 0..=n - 2 {
                for i2 in 0..=n - 2 - i1 {
                    for i3 in 0..=n - 2 - i1 - i2 {
                        let a = printed_pair_moments(n, i1, i2, i3, q(3, 10)).unwrap();
                        let b = exact_pair_moments(n, i1, i2, i3, q(3, 10)).unwrap();
                        assert_eq!(a.covariance, b.covariance, "n={n} ({i1},{i2},{i3})");
                    }
                }
            }
        }
    }

    #[test]
    fn swapping_outer_parts_swaps_moments() {
        for (n, i1, i2, i3) in [(10, 1, 2, 4), (20, 4, 5, 6), (7, 0, 3, 2)] {
            let p = q(2, 7);
            for f in [exact_pair_moments::<BigRational>, printed_pair_moments::<BigRational>] {
                let a = f(n, i1, i2, i3, p.clone()).unwrap();
                let b = f(n, i3, i2, i1, p.clone()).unwrap();
                assert_eq!((a.b1.mean.clone(), a.b1.variance.clone()), (b.b2.mean.clone(), b.b2.variance.clone()));
                assert_eq!((a.b2.mean, a.b2.variance), (b.b1.mean, b.b1.variance));
                assert_eq!(a.covariance, b.covariance);
            }
        }
    }

    #[test]
    fn exact_covariance_obeys_cauchy_schwarz() {
        for n in 2..=16usize {
            for i1 in 0..=n - 2 {
                for i2 in 0..=n - 2 - i1 {
                    let i3 = (n - 2 - i1 - i2) / 2;
                    let m = exact_pair_moments(n, i1, i2, i3, 0.37f64).unwrap();
                    assert!(m.b1.variance >= 0.0 && m.b2.variance >= 0.0);
                    let bound = (m.b1.variance * m.b2.variance).sqrt();
                    assert!(m.covariance.abs() <= bound * (1.0 + 1e-12) + 1e-9);
                }
            }
        }
    }

    #[test]
    fn comparison_reports_known_gap() {
        let c = compare_pair_moments(4, 0, 0, 0, 0.5).unwrap();
        assert_eq!(c.mean_b1.reference, 1.0);
        assert_eq!(c.mean_b1.candidate, 9.0);
        assert_eq!(c.mean_b1.absolute, 8.0);
        assert_eq!(c.mean_b1.relative, 8.0);
        assert_eq!(c.variance_b1.reference, 1.0);
        assert_eq!(c.variance_b1.candidate, 3.0);
        assert_eq!(c.covariance.absolute, 0.0);
        assert_eq!(Discrepancy::new(0.0, 1.0).relative, f64::INFINITY);
        assert_eq!(Discrepancy::new(0.0, 0.0).relative, 0.0);
    }
}
