//! Periodic trapezoid rule with pairwise summation.

use std::f64::consts::PI;

/// Pairwise (cascade) summation; fixed association order for a given length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 8;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Uniform nodes `2πk/N`, `k = 0..N`, on the circle.
pub fn circle_nodes(points: usize) -> impl Iterator<Item = f64> {
    let step = 2.0 * PI / points as f64;
    (0..points).map(move |k| k as f64 * step)
}

/// `∫₀^{2π} f(σ) dσ/2π` for a `2π`-periodic integrand, evaluated componentwise.
///
/// For a trigonometric polynomial of degree below `points` the result is exact
/// up to rounding.
pub fn circle_average<const K: usize>(points: usize, f: impl Fn(f64) -> [f64; K]) -> [f64; K] {
    let samples: Vec<[f64; K]> = circle_nodes(points).map(f).collect();
    let mut out = [0.0; K];
    let mut column = vec![0.0; samples.len()];
    for (k, slot) in out.iter_mut().enumerate() {
        for (c, s) in column.iter_mut().zip(&samples) {
            *c = s[k];
        }
        *slot = pairwise_sum(&column) / points as f64;
    }
    out
}
