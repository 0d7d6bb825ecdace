//! Summand-count distributions and their distance to the normal law.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// Standard normal CDF, `Phi(x) = erfc(-x / sqrt 2) / 2`.
///
/// `erfc` is the fdlibm rational approximation (via `libm`), accurate to
/// about one ulp, so the absolute error here is below 1e-15.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// `a / b` as `f64`, shifting both operands so huge counts stay in range.
pub fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    let shift = b.bits().max(a.bits()).saturating_sub(1000);
    let a = (a >> shift).to_f64().unwrap_or(f64::INFINITY);
    let b = (b >> shift).to_f64().unwrap_or(f64::INFINITY);
    a / b
}

/// A histogram of summand counts with exact (big-integer) frequencies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram {
    bins: BTreeMap<u64, BigUint>,
}

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, count: u64, freq: impl Into<BigUint>) {
        let freq = freq.into();
        if freq.is_zero() {
            return;
        }
        *self.bins.entry(count).or_default() += freq;
    }

    pub fn add_one(&mut self, count: u64) {
        self.add(count, 1u32);
    }

    /// Merges another tally into this one.
    pub fn merge(&mut self, other: &Histogram) {
        for (&k, v) in &other.bins {
            self.add(k, v.clone());
        }
    }

    /// Bin-wise `self - other`; panics if `other` is not dominated by `self`.
    pub fn subtract(&self, other: &Histogram) -> Histogram {
        let mut out = self.clone();
        for (&k, v) in &other.bins {
            let slot = out.bins.get_mut(&k).expect("subtrahend bin missing");
            *slot -= v;
            if slot.is_zero() {
                out.bins.remove(&k);
            }
        }
        out
    }

    pub fn get(&self, count: u64) -> BigUint {
        self.bins.get(&count).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.bins.iter().map(|(&k, v)| (k, v))
    }

    pub fn total(&self) -> BigUint {
        self.bins.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Nonzero bins as `(count, freq)` pairs with `u64` frequencies, if they fit.
    pub fn to_u64_pairs(&self) -> Option<Vec<(u64, u64)>> {
        self.iter().map(|(k, v)| v.to_u64().map(|v| (k, v))).collect()
    }
}

impl Serialize for Histogram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.bins.len()))?;
        for (k, v) in &self.bins {
            map.serialize_entry(&k.to_string(), &v.to_string())?;
        }
        map.end()
    }
}

/// Histogram plus moments and Kolmogorov-Smirnov distances to the standard
/// normal after centering by the mean and scaling by the standard deviation.
///
/// `ks` compares the lattice CDF `F(v)` with `Phi((v + 1/2 - mean) / sd)` at
/// every integer `v` (continuity-corrected). `ks_raw` is the plain supremum
/// over the steps of the empirical CDF, `max |F(v-) - Phi(z_v)|, |F(v) - Phi(z_v)|`;
/// for an integer-valued count it cannot drop below roughly half the largest
/// atom.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionSummary {
    pub histogram: Histogram,
    #[serde(serialize_with = "ser_decimal")]
    pub total: BigUint,
    pub mean: f64,
    pub variance: f64,
    pub stddev: f64,
    pub ks: f64,
    pub ks_raw: f64,
    /// Zero variance (including a single observation); both KS fields are 1.0.
    pub degenerate: bool,
    /// The support splits into at least two runs separated by an empty band.
    pub bimodal: bool,
}

fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl DistributionSummary {
    /// Summarizes a non-empty histogram.
    pub fn from_histogram(histogram: Histogram) -> Self {
        assert!(!histogram.is_empty(), "empty histogram");
        let total = histogram.total();
        let probs: Vec<(f64, f64)> = histogram.iter().map(|(k, v)| (k as f64, ratio(v, &total))).collect();
        let mean: f64 = probs.iter().map(|(k, p)| k * p).sum();
        let variance: f64 = probs.iter().map(|(k, p)| (k - mean) * (k - mean) * p).sum::<f64>().max(0.0);
        let stddev = variance.sqrt();
        let degenerate = probs.len() < 2 || stddev <= 0.0;
        let (ks, ks_raw) =
            if degenerate { (1.0, 1.0) } else { (lattice_ks(&probs, mean, stddev), step_ks(&probs, mean, stddev)) };
        let bimodal = histogram.iter().map(|(k, _)| k).collect::<Vec<_>>().windows(2).any(|w| w[1] > w[0] + 1);
        DistributionSummary { histogram, total, mean, variance, stddev, ks, ks_raw, degenerate, bimodal }
    }

    /// Two-column `count,freq` CSV body (with header).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("count,freq\n");
        for (k, v) in self.histogram.iter() {
            out.push_str(&format!("{k},{v}\n"));
        }
        out
    }
}

// Continuity-corrected distance between the lattice CDF and the normal.
fn lattice_ks(probs: &[(f64, f64)], mean: f64, sd: f64) -> f64 {
    let phi = |v: f64| normal_cdf((v + 0.5 - mean) / sd);
    let mut best = phi(probs[0].0 - 1.0);
    let mut cdf = 0.0;
    for (i, &(v, p)) in probs.iter().enumerate() {
        cdf += p;
        best = best.max((cdf - phi(v)).abs());
        // F stays flat up to the next support point
        if let Some(&(next, _)) = probs.get(i + 1) {
            if next > v + 1.0 {
                best = best.max((cdf - phi(next - 1.0)).abs());
            }
        }
    }
    best
}

fn step_ks(probs: &[(f64, f64)], mean: f64, sd: f64) -> f64 {
    let mut best: f64 = 0.0;
    let mut cdf = 0.0;
    for &(v, p) in probs {
        let z = normal_cdf((v - mean) / sd);
        best = best.max((cdf - z).abs());
        cdf += p;
        best = best.max((cdf - z).abs());
    }
    best
}

/// Median of a list of finite values (mean of the middle pair for even length).
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { 0.5 * (v[m - 1] + v[m]) })
}

/// Ordinary least squares fit `y = slope * x + intercept`.
pub fn linear_fit(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Composite Simpson quadrature of the normal density on [-12, x].
    fn cdf_by_quadrature(x: f64) -> f64 {
        let a = -12.0;
        let n = 200_000;
        let h = (x - a) / n as f64;
        let f = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut s = f(a) + f(x);
        for i in 1..n {
            let t = a + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(t);
        }
        s * h / 3.0
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        for x in [0.3, 1.0, 2.5, 4.0] {
            assert!((normal_cdf(x) + normal_cdf(-x) - 1.0).abs() < 1e-9);
        }
        assert!((normal_cdf(1.959964) - 0.975).abs() < 1e-6);
        for x in [-3.0, -1.2, 0.0, 0.7, 1.959964, 3.3] {
            assert!((normal_cdf(x) - cdf_by_quadrature(x)).abs() < 1e-7, "x = {x}");
        }
    }

    #[test]
    fn ratio_of_huge_numbers() {
        let a = BigUint::from(3u32) << 5000;
        let b = BigUint::from(4u32) << 5000;
        assert!((ratio(&a, &b) - 0.75).abs() < 1e-12);
        assert_eq!(ratio(&BigUint::from(1u32), &BigUint::from(8u32)), 0.125);
    }

    #[test]
    fn moments_of_small_histogram() {
        let mut h = Histogram::new();
        h.add(0, 1u32);
        h.add(1, 4u32);
        h.add(2, 3u32);
        let s = DistributionSummary::from_histogram(h);
        assert_eq!(s.total, BigUint::from(8u32));
        assert!((s.mean - 10.0 / 8.0).abs() < 1e-12);
        let var = (1.0 * 1.5625 + 4.0 * 0.0625 + 3.0 * 0.5625) / 8.0;
        assert!((s.variance - var).abs() < 1e-12);
        assert!(!s.degenerate && !s.bimodal);
        assert!(s.ks > 0.0 && s.ks < 1.0);
    }

    #[test]
    fn singleton_is_degenerate() {
        let mut h = Histogram::new();
        h.add_one(5);
        let s = DistributionSummary::from_histogram(h);
        assert!(s.degenerate);
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.ks, 1.0);
        assert!(s.ks.is_finite());
    }

    #[test]
    fn three_point_ks_by_hand() {
        // counts {2, 3, 9}: the plain statistic peaks at the middle jump
        let mut h = Histogram::new();
        for v in [2, 3, 9] {
            h.add_one(v);
        }
        let s = DistributionSummary::from_histogram(h);
        let mean = 14.0 / 3.0;
        let sd = ((2.0f64 - mean).powi(2) + (3.0 - mean).powi(2) + (9.0 - mean).powi(2)).sqrt() / 3f64.sqrt();
        let expect_raw = (2.0 / 3.0 - normal_cdf((3.0 - mean) / sd)).abs();
        assert!((s.ks_raw - expect_raw).abs() < 1e-12);
        // lattice version: F(3) = 2/3 against Phi((3.5 - mean)/sd), and F(8) = 2/3 against Phi((8.5-mean)/sd)
        let lat = [
            (1.0 / 3.0 - normal_cdf((2.5 - mean) / sd)).abs(),
            (2.0 / 3.0 - normal_cdf((3.5 - mean) / sd)).abs(),
            (2.0 / 3.0 - normal_cdf((8.5 - mean) / sd)).abs(),
            (1.0 - normal_cdf((9.5 - mean) / sd)).abs(),
            normal_cdf((1.5 - mean) / sd),
        ];
        let expect = lat.iter().cloned().fold(0.0, f64::max);
        assert!((s.ks - expect).abs() < 1e-12);
        assert!(s.bimodal);
    }

    #[test]
    fn subtract_and_merge() {
        let mut a = Histogram::new();
        a.add(1, 5u32);
        a.add(2, 2u32);
        let mut b = Histogram::new();
        b.add(1, 5u32);
        let d = a.subtract(&b);
        assert_eq!(d.iter().count(), 1);
        assert_eq!(d.get(2), BigUint::from(2u32));
        let mut m = d.clone();
        m.merge(&b);
        assert_eq!(m, a);
    }

    #[test]
    fn fit_and_median() {
        let pts: Vec<_> = (0..10).map(|i| (i as f64, 3.0 - 0.5 * i as f64)).collect();
        let (s, c) = linear_fit(&pts).unwrap();
        assert!((s + 0.5).abs() < 1e-12 && (c - 3.0).abs() < 1e-12);
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }

    #[test]
    fn json_shape() {
        let mut h = Histogram::new();
        h.add(0, 1u32);
        h.add(1, 4u32);
        let s = DistributionSummary::from_histogram(h);
        let v: serde_json::Value = serde_json::to_value(&s).unwrap();
        assert_eq!(v["histogram"]["1"], "4");
        assert_eq!(v["total"], "5");
        assert!(v["ks"].is_number());
    }
}
