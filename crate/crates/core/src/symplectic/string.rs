//! Presymplectic structure on the twelve-parameter family of simple string
//! solutions.
//!
//! Chart: `(l₁, l₂, r₁, r₂, u₁, u₂, v₁, v₂, f, b, φ₁, φ₂)`. The orbit data fix
//! `l̂, r̂, l̂_s, r̂_s`, `(f, b)` fix the frequencies and `θ, θ_s`, and the angles
//! enter through
//! `g₀ = e^{φ₁ l̂} e^{−(γ+θ) n̂} e^{−φ₁ r̂}`, `h₀ = e^{φ₂ l̂_s} e^{−(γ_s+θ_s) n̂_s} e^{−φ₂ r̂_s}`,
//! with `(n̂, γ)` the normalized commutator of `(l̂, r̂)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::form::{exterior_derivative, TwoFormMatrix};
use super::orbit::{OrbitChart, Side};
use super::poisson::{Observables, PhaseSpace};
use super::{canonical_pairing, pair_embedding};
use crate::algebra::{normalized_commutator, AlgebraElement, UnitSphereVector, UnitTimelikeVector};
use crate::bridge::{self, f_max};
use crate::charges::{currents, min_quadrature_points, orbit_coefficients};
use crate::diff::Stencil;
use crate::error::{Error, Result};
use crate::quadrature::{circle_nodes, pairwise_sum};
use crate::solution::SolutionParams;

pub const STRING_LABELS: [&str; 12] = ["l1", "l2", "r1", "r2", "u1", "u2", "v1", "v2", "f", "b", "phi1", "phi2"];

const ORBIT_BLOCKS: [(usize, OrbitChart, Side); 4] = [
    (0, OrbitChart::Hyperboloid, Side::Left),
    (2, OrbitChart::Hyperboloid, Side::Right),
    (4, OrbitChart::SPHERE, Side::Left),
    (6, OrbitChart::SPHERE, Side::Right),
];

/// Point of the twelve-dimensional string chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StringChartPoint {
    pub l: UnitTimelikeVector,
    pub r: UnitTimelikeVector,
    pub l_s: UnitSphereVector,
    pub r_s: UnitSphereVector,
    pub f: f64,
    pub b: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub n: i64,
}

impl StringChartPoint {
    pub fn coords(&self) -> Result<[f64; 12]> {
        let (l, r) = (self.l.element().coeffs, self.r.element().coeffs);
        let (u, v) = (self.l_s.element().coeffs, self.r_s.element().coeffs);
        if u[2] <= 0.0 || v[2] <= 0.0 {
            return Err(Error::ChartSingular("sphere vectors must lie in the chart hemisphere u₃ > 0"));
        }
        Ok([l[1], l[2], r[1], r[2], u[0], u[1], v[0], v[1], self.f, self.b, self.phi1, self.phi2])
    }

    pub fn from_coords(x: &[f64], n: i64) -> Result<Self> {
        let (h, s) = (OrbitChart::Hyperboloid, OrbitChart::SPHERE);
        Ok(Self {
            l: UnitTimelikeVector::from_element(&AlgebraElement::new(h.embed([x[0], x[1]])?))?,
            r: UnitTimelikeVector::from_element(&AlgebraElement::new(h.embed([x[2], x[3]])?))?,
            l_s: UnitSphereVector::from_element(&AlgebraElement::new(s.embed([x[4], x[5]])?))?,
            r_s: UnitSphereVector::from_element(&AlgebraElement::new(s.embed([x[6], x[7]])?))?,
            f: x[8],
            b: x[9],
            phi1: x[10],
            phi2: x[11],
            n,
        })
    }

    pub fn solution(&self) -> Result<SolutionParams> {
        string_solution(&self.coords()?, self.n)
    }

    /// Random point with `(f, b)` inside the admissible region, away from its edges.
    pub fn random<R: Rng>(rng: &mut R, n: i64) -> Self {
        let tau = std::f64::consts::TAU;
        let b = rng.gen_range(1.05..1.8);
        let f = b + rng.gen_range(0.15..0.85) * (f_max(b) - b);
        Self {
            l: UnitTimelikeVector::new(rng.gen_range(0.1..0.8), rng.gen_range(0.0..tau)),
            r: UnitTimelikeVector::new(rng.gen_range(0.1..0.8), rng.gen_range(0.0..tau)),
            l_s: UnitSphereVector::new(rng.gen_range(0.1..1.0), rng.gen_range(0.0..tau)),
            r_s: UnitSphereVector::new(rng.gen_range(0.1..1.0), rng.gen_range(0.0..tau)),
            f,
            b,
            phi1: rng.gen_range(-1.0..1.0),
            phi2: rng.gen_range(-1.0..1.0),
            n,
        }
    }
}

/// Solution at chart point `x` with winding `n`.
pub fn string_solution(x: &[f64], n: i64) -> Result<SolutionParams> {
    let (h, s) = (OrbitChart::Hyperboloid, OrbitChart::SPHERE);
    let l = AlgebraElement::new(h.embed([x[0], x[1]])?);
    let r = AlgebraElement::new(h.embed([x[2], x[3]])?);
    let ls = AlgebraElement::new(s.embed([x[4], x[5]])?);
    let rs = AlgebraElement::new(s.embed([x[6], x[7]])?);
    let inv = bridge::bridge(x[8], x[9], n)?;
    let theta = 0.5 * inv.cosh2theta.max(1.0).acosh();
    let theta_s = 0.5 * inv.cos2theta_s.clamp(-1.0, 1.0).acos();
    let ca = normalized_commutator(&l, &r)?;
    let cs = normalized_commutator(&ls, &rs)?;
    let (phi1, phi2) = (x[10], x[11]);
    Ok(SolutionParams {
        lambda: inv.lambda,
        rho: inv.rho,
        m: -n,
        n,
        l: UnitTimelikeVector::from_element(&l)?,
        r: UnitTimelikeVector::from_element(&r)?,
        g0: l.exp(phi1) * ca.n.exp(-(ca.gamma + theta)) * r.exp(-phi1),
        lambda_s: inv.lambda_s,
        rho_s: inv.rho_s,
        m_s: n,
        n_s: n,
        l_s: UnitSphereVector::from_element(&ls)?,
        r_s: UnitSphereVector::from_element(&rs)?,
        h0: ls.exp(phi2) * cs.n.exp(-(cs.gamma + theta_s)) * rs.exp(-phi2),
    })
}

/// `ϑ(δ) = ∫ (⟨R_τ, g⁻¹δg⟩ + ⟨R^s_τ, h⁻¹δh⟩) dσ/2π` at time `τ`, where `δ` is
/// the derivative at `t = 0` of the one-parameter family of solutions.
pub fn presymplectic_pairing(
    family: impl Fn(f64) -> Result<SolutionParams>,
    tau: f64,
    st: &Stencil,
) -> Result<f64> {
    let p = family(0.0)?;
    let points = min_quadrature_points(&p);
    let nodes: Vec<f64> = circle_nodes(points).collect();
    let samples = |t: f64| -> Vec<f64> {
        match family(t) {
            Ok(q) => nodes
                .iter()
                .flat_map(|&sigma| {
                    let (g, h) = q.evaluate(tau, sigma);
                    pair_embedding(&g, &h)
                })
                .collect(),
            Err(_) => vec![f64::NAN; 8 * points],
        }
    };
    let d = st.derivative(0.0, samples);
    if d.iter().any(|v| !v.is_finite()) {
        return Err(Error::ChartSingular("variation leaves the admissible family"));
    }
    let terms: Vec<f64> = nodes
        .iter()
        .enumerate()
        .map(|(k, &sigma)| {
            let (g, h) = p.evaluate(tau, sigma);
            let c = currents(&p, tau, sigma);
            let delta: [f64; 8] = d[8 * k..8 * k + 8].try_into().expect("eight embedding coordinates");
            canonical_pairing(&g, &h, &c.ads.r_tau, &c.sphere.r_tau, &delta)
        })
        .collect();
    Ok(pairwise_sum(&terms) / points as f64)
}

/// `ϑ` evaluated on a chart tangent vector at `point`.
pub fn string_presymplectic(point: &StringChartPoint, direction: &[f64], st: &Stencil) -> Result<f64> {
    let x = point.coords()?;
    presymplectic_pairing(
        |t| {
            let y: Vec<f64> = x.iter().zip(direction).map(|(a, d)| a + t * d).collect();
            string_solution(&y, point.n)
        },
        0.0,
        st,
    )
}

/// Components `ϑ_j` at chart point `x`.
pub fn string_one_form(x: &[f64], n: i64, st: &Stencil) -> Result<Vec<f64>> {
    (0..x.len())
        .map(|j| {
            presymplectic_pairing(
                |t| {
                    let mut y = x.to_vec();
                    y[j] += t;
                    string_solution(&y, n)
                },
                0.0,
                st,
            )
        })
        .collect()
}

/// `ω = dϑ` on the string chart, by nested central differences.
pub fn string_symplectic(point: &StringChartPoint, st: &Stencil) -> Result<TwoFormMatrix> {
    let x = point.coords()?;
    exterior_derivative(|y| string_one_form(y, point.n, st), &x, &STRING_LABELS, st)
}

/// Orbit-block coefficients of `ω`, normalized by the unit orbit densities.
///
/// On the family these equal the signed orbit coefficients `(m_L, m_R, m^s_L, m^s_R)`.
pub fn orbit_block_coefficients(w: &TwoFormMatrix, x: &[f64]) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (k, (i, chart, side)) in ORBIT_BLOCKS.into_iter().enumerate() {
        out[k] = w.get(i, i + 1) / chart.density(side, [x[i], x[i + 1]])?;
    }
    Ok(out)
}

/// String chart at fixed winding `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StringPhaseSpace {
    pub n: i64,
    pub stencil: Stencil,
}

impl PhaseSpace for StringPhaseSpace {
    fn labels(&self) -> Vec<String> {
        STRING_LABELS.iter().map(|s| s.to_string()).collect()
    }

    fn form(&self, x: &[f64]) -> Result<TwoFormMatrix> {
        exterior_derivative(|y| string_one_form(y, self.n, &self.stencil), x, &STRING_LABELS, &self.stencil)
    }

    fn observables(&self, x: &[f64]) -> Result<Observables> {
        let p = string_solution(x, self.n)?;
        let c = orbit_coefficients(&p);
        Ok(Observables {
            l: (c[0] * p.l_hat()).lowered(),
            r: (c[1] * p.r_hat()).lowered(),
            l_s: (c[2] * p.l_hat_s()).lowered(),
            r_s: (c[3] * p.r_hat_s()).lowered(),
            casimirs: c,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Ads, Sphere};
    use crate::charges::charges_analytic;
    use crate::solution::Isometry;

    fn bridge_point() -> StringChartPoint {
        StringChartPoint {
            l: UnitTimelikeVector::new(0.55, 4.1),
            r: UnitTimelikeVector::new(0.4, 2.0),
            l_s: UnitSphereVector::new(0.24, 0.46),
            r_s: UnitSphereVector::new(0.4, 2.45),
            f: 5.0 / 3.0,
            b: 5.0 / 4.0,
            phi1: 0.4,
            phi2: -0.6,
            n: 1,
        }
    }

    #[test]
    fn chart_solution_has_family_invariants() {
        let p = bridge_point().solution().unwrap();
        assert!((p.cosh2theta() - 73.0 / 48.0).abs() < 1e-12);
        assert!((p.cos2theta_s() + 11.0 / 36.0).abs() < 1e-12);
        let (dl, dr) = p.relation_defects();
        assert!(dl.abs() < 1e-12 && dr.abs() < 1e-12);
    }

    #[test]
    fn coords_round_trip() {
        let a = bridge_point();
        let b = StringChartPoint::from_coords(&a.coords().unwrap(), 1).unwrap();
        let (x, y) = (a.coords().unwrap(), b.coords().unwrap());
        assert!(x.iter().zip(&y).all(|(p, q)| (p - q).abs() < 1e-12));
    }

    #[test]
    fn zero_direction_pairs_to_zero() {
        let v = string_presymplectic(&bridge_point(), &[0.0; 12], &Stencil::default()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn pairing_along_isometries_is_the_charge() {
        let st = Stencil::default();
        let p = bridge_point().solution().unwrap();
        let q = charges_analytic(&p);
        let x = AlgebraElement::<Ads>::new([0.3, -0.7, 0.2]);
        let y = AlgebraElement::<Sphere>::new([0.1, 0.5, -0.4]);
        let left = presymplectic_pairing(
            |t| Isometry { g_l: x.exp(t), ..Isometry::default() }.apply(&p),
            0.3,
            &st,
        )
        .unwrap();
        assert!((left - q.l.inner(&x)).abs() < 1e-9);
        let right = presymplectic_pairing(
            |t| Isometry { h_r: y.exp(t), ..Isometry::default() }.apply(&p),
            -0.2,
            &st,
        )
        .unwrap();
        assert!((right - q.r_s.inner(&y)).abs() < 1e-9);
    }

    #[test]
    fn phi1_direction_pairs_nontrivially() {
        let mut e = [0.0; 12];
        e[10] = 1.0;
        let v = string_presymplectic(&bridge_point(), &e, &Stencil::default()).unwrap();
        assert!(v.abs() > 1e-3);
    }

    #[test]
    fn bridge_point_blocks_and_brackets() {
        let st = Stencil::default();
        let point = bridge_point();
        let x = point.coords().unwrap();
        let w = string_symplectic(&point, &st).unwrap();
        let blocks = orbit_block_coefficients(&w, &x).unwrap();
        let want = [359.0 / 288.0, 203.0 / 96.0, 1.0 - 11.0 / 144.0, -1.0 / 18.0];
        for (got, want) in blocks.iter().zip(want) {
            assert!((got - want).abs() < 1e-5, "{got} vs {want}");
        }
        let space = StringPhaseSpace { n: 1, stencil: st };
        let t = crate::symplectic::bracket_table(&space, &x, &st).unwrap();
        assert!(t.algebra_residual < 1e-5, "{}", t.algebra_residual);
        assert!(t.casimir_residual < 1e-5, "{}", t.casimir_residual);
    }

    #[test]
    fn equal_orbit_vectors_are_flagged() {
        let mut point = bridge_point();
        point.r = point.l;
        assert!(point.solution().is_err());
        assert!(string_symplectic(&point, &Stencil::default()).is_err());
    }
}
