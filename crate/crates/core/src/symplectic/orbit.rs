//! Graph charts on unit coadjoint orbits and their invariant area forms.
//!
//! The hyperboloid `⟨l̂,l̂⟩ = −1`, `l⁰ > 0` is covered by `(l¹, l²)` alone. The
//! sphere needs several charts: each solves one coefficient `u_k` from the
//! other two, on the hemisphere where it has a fixed sign.

use serde::Serialize;

use crate::error::{Error, Result};

/// Distance from the chart boundary treated as singular.
const EDGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbitChart {
    /// `l⁰ = √(1 + l₁² + l₂²)`.
    Hyperboloid,
    /// `u_axis = ±√(1 − u_a² − u_b²)` with `(a, b, axis)` cyclic.
    Sphere { axis: usize, upper: bool },
}

impl OrbitChart {
    pub const SPHERE: Self = Self::Sphere { axis: 2, upper: true };

    /// Sphere chart solving for the largest coefficient of `v`.
    pub fn for_sphere_vector(v: &[f64; 3]) -> Self {
        let axis = (0..3).max_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs())).unwrap_or(2);
        Self::Sphere {
            axis,
            upper: v[axis] >= 0.0,
        }
    }

    /// Indices of the two free coefficients.
    pub fn free_axes(&self) -> (usize, usize) {
        match *self {
            Self::Hyperboloid => (1, 2),
            Self::Sphere { axis, .. } => ((axis + 1) % 3, (axis + 2) % 3),
        }
    }

    pub fn dependent_axis(&self) -> usize {
        match *self {
            Self::Hyperboloid => 0,
            Self::Sphere { axis, .. } => axis,
        }
    }

    /// Solved coefficient at chart point `x`.
    pub fn dependent(&self, x: [f64; 2]) -> Result<f64> {
        let q = x[0] * x[0] + x[1] * x[1];
        match *self {
            Self::Hyperboloid => Ok((1.0 + q).sqrt()),
            Self::Sphere { upper, .. } => {
                let rest = 1.0 - q;
                if !(rest > EDGE_TOL) {
                    return Err(Error::ChartSingular("sphere chart reached its equator; switch charts"));
                }
                Ok(if upper { rest.sqrt() } else { -rest.sqrt() })
            }
        }
    }

    /// Basis coefficients of the unit vector at chart point `x`.
    pub fn embed(&self, x: [f64; 2]) -> Result<[f64; 3]> {
        let (a, b) = self.free_axes();
        let mut v = [0.0; 3];
        v[a] = x[0];
        v[b] = x[1];
        v[self.dependent_axis()] = self.dependent(x)?;
        Ok(v)
    }

    pub fn coords(&self, v: &[f64; 3]) -> [f64; 2] {
        let (a, b) = self.free_axes();
        [v[a], v[b]]
    }

    /// Coefficient of `dx₁∧dx₂` in the unit orbit form: `∓1/(2l⁰)` on the
    /// hyperboloid (left, right) and `±1/(2u_k)` on the sphere.
    pub fn density(&self, side: Side, x: [f64; 2]) -> Result<f64> {
        let d = self.dependent(x)?;
        let sign = match (self, side) {
            (Self::Hyperboloid, Side::Left) | (Self::Sphere { .. }, Side::Right) => -1.0,
            _ => 1.0,
        };
        Ok(sign / (2.0 * d))
    }

    /// Components `(a₁, a₂)` of a potential with `da` equal to the unit orbit
    /// form: `a = ∓(x₁dx₂ − x₂dx₁)/(2(1 + x_dep))`, matching [`Self::density`].
    pub fn connection(&self, side: Side, x: [f64; 2]) -> Result<[f64; 2]> {
        let d = self.dependent(x)?;
        if !(1.0 + d > EDGE_TOL) {
            return Err(Error::ChartSingular("orbit potential is singular at the antipode"));
        }
        let sign = match (self, side) {
            (Self::Hyperboloid, Side::Left) | (Self::Sphere { .. }, Side::Right) => -1.0,
            _ => 1.0,
        };
        let k = sign / (2.0 * (1.0 + d));
        Ok([-k * x[1], k * x[0]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{levi_civita, levi_civita_mixed, ETA};
    use crate::diff::Stencil;
    use proptest::prelude::*;

    fn lowered(chart: &OrbitChart, v: [f64; 3]) -> [f64; 3] {
        match chart {
            OrbitChart::Hyperboloid => [ETA[0] * v[0], v[1], v[2]],
            _ => v,
        }
    }

    /// Largest deviation of single-orbit brackets from the expected algebra.
    fn orbit_algebra_residual(chart: OrbitChart, side: Side, c: f64, x: [f64; 2]) -> f64 {
        let st = Stencil::default();
        let w = c * chart.density(side, x).unwrap();
        // P = −W⁻¹ with W = [[0, w], [−w, 0]]
        let p12 = 1.0 / w;
        let q = |y: &[f64]| lowered(&chart, chart.embed([y[0], y[1]]).unwrap()).map(|v| c * v);
        let grads: Vec<[f64; 3]> = (0..2).map(|i| st.partial(&x, i, q)).collect();
        let val = q(&x);
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                let got = p12 * (grads[0][a] * grads[1][b] - grads[1][a] * grads[0][b]);
                let want: f64 = (0..3)
                    .map(|k| match (chart, side) {
                        (OrbitChart::Hyperboloid, Side::Left) => -2.0 * levi_civita_mixed(a, b, k) * val[k],
                        (OrbitChart::Hyperboloid, Side::Right) => 2.0 * levi_civita_mixed(a, b, k) * val[k],
                        (_, Side::Left) => 2.0 * levi_civita(a, b, k) * val[k],
                        (_, Side::Right) => -2.0 * levi_civita(a, b, k) * val[k],
                    })
                    .sum();
                worst = worst.max((got - want).abs());
            }
        }
        worst
    }

    #[test]
    fn sphere_chart_switch() {
        let eq = [1.0, 0.0, 0.0];
        assert!(OrbitChart::SPHERE.dependent(OrbitChart::SPHERE.coords(&eq)).is_err());
        let c = OrbitChart::for_sphere_vector(&eq);
        assert_eq!(c, OrbitChart::Sphere { axis: 0, upper: true });
        let back = c.embed(c.coords(&eq)).unwrap();
        assert!((back[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hyperboloid_origin_block() {
        // at l̂ = t₀ the left density is −1/2, so the block is (m/2) dl₂∧dl₁
        assert_eq!(OrbitChart::Hyperboloid.density(Side::Left, [0.0, 0.0]).unwrap(), -0.5);
        assert!(orbit_algebra_residual(OrbitChart::Hyperboloid, Side::Left, 1.3, [0.0, 0.0]) < 1e-9);
    }

    #[test]
    fn equator_brackets_in_rotated_chart() {
        for side in [Side::Left, Side::Right] {
            let chart = OrbitChart::for_sphere_vector(&[0.0, -1.0, 0.0]);
            assert!(orbit_algebra_residual(chart, side, 0.7, [0.05, -0.02]) < 1e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn connection_potential_generates_density(
            x1 in -0.6f64..0.6, x2 in -0.6f64..0.6, axis in 0usize..3, left: bool,
        ) {
            let side = if left { Side::Left } else { Side::Right };
            let st = Stencil::default();
            // the potential is singular at the antipode of each chart axis
            let sphere = OrbitChart::Sphere { axis, upper: true };
            for chart in [OrbitChart::Hyperboloid, sphere] {
                let x = [x1, x2];
                let a = |y: &[f64]| chart.connection(side, [y[0], y[1]]).unwrap();
                let d1 = st.partial(&x, 0, a);
                let d2 = st.partial(&x, 1, a);
                let curl = d1[1] - d2[0];
                prop_assert!((curl - chart.density(side, x).unwrap()).abs() < 1e-9);
            }
        }

        #[test]
        fn orbit_brackets_close(
            x1 in -0.6f64..0.6, x2 in -0.6f64..0.6, c in 0.2f64..3.0, axis in 0usize..3, upper: bool, left: bool,
        ) {
            let side = if left { Side::Left } else { Side::Right };
            let sphere = OrbitChart::Sphere { axis, upper };
            prop_assert!(orbit_algebra_residual(OrbitChart::Hyperboloid, side, c, [x1, x2]) < 1e-8);
            prop_assert!(orbit_algebra_residual(sphere, side, c, [x1, x2]) < 1e-8);
        }
    }
}
