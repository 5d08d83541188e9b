//! Noether currents `L_a = ∂_a g g⁻¹`, `R_a = g⁻¹∂_a g` and the isometry charges
//! `L = ∫ L_τ dσ/2π`, `R = ∫ R_τ dσ/2π` (geometric units, no coupling prefactor).

use serde::Serialize;

use crate::algebra::{Ads, AdsAlgebraElement, AlgebraElement, GroupElement, Sector, Sphere, SphereAlgebraElement};
use crate::quadrature::circle_average;
use crate::solution::{Isometry, SolutionParams};

/// `L_τ, L_σ, R_τ, R_σ` of one sector at a worldsheet point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct SectorCurrents<S: Sector> {
    pub l_tau: AlgebraElement<S>,
    pub l_sigma: AlgebraElement<S>,
    pub r_tau: AlgebraElement<S>,
    pub r_sigma: AlgebraElement<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Currents {
    pub ads: SectorCurrents<Ads>,
    pub sphere: SectorCurrents<Sphere>,
}

#[allow(clippy::too_many_arguments)]
fn sector_currents<S: Sector>(
    lambda: f64,
    rho: f64,
    m: i64,
    n: i64,
    l: &AlgebraElement<S>,
    r: &AlgebraElement<S>,
    g0: &GroupElement<S>,
    theta_l: f64,
    theta_r: f64,
) -> SectorCurrents<S> {
    // e^{θ_l l̂} g₀ r̂ g₀⁻¹ e^{−θ_l l̂} and e^{−θ_r r̂} g₀⁻¹ l̂ g₀ e^{θ_r r̂}
    let r_moved = (l.exp(theta_l) * *g0).adjoint(r);
    let l_moved = (*g0 * r.exp(theta_r)).inverse().adjoint(l);
    let (hm, hn) = (0.5 * m as f64, 0.5 * n as f64);
    SectorCurrents {
        l_tau: lambda * *l + rho * r_moved,
        l_sigma: hm * *l + hn * r_moved,
        r_tau: lambda * l_moved + rho * *r,
        r_sigma: hm * l_moved + hn * *r,
    }
}

/// Closed-form currents at `(τ, σ)`.
pub fn currents(p: &SolutionParams, tau: f64, sigma: f64) -> Currents {
    let ph = p.phases(tau, sigma);
    Currents {
        ads: sector_currents(p.lambda, p.rho, p.m, p.n, &p.l_hat(), &p.r_hat(), &p.g0, ph.theta_l, ph.theta_r),
        sphere: sector_currents(
            p.lambda_s,
            p.rho_s,
            p.m_s,
            p.n_s,
            &p.l_hat_s(),
            &p.r_hat_s(),
            &p.h0,
            ph.theta_l_s,
            ph.theta_r_s,
        ),
    }
}

/// Left/right charges of both sectors with their Casimir magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChargeSet {
    #[serde(rename = "L")]
    pub l: AdsAlgebraElement,
    #[serde(rename = "R")]
    pub r: AdsAlgebraElement,
    #[serde(rename = "L_s")]
    pub l_s: SphereAlgebraElement,
    #[serde(rename = "R_s")]
    pub r_s: SphereAlgebraElement,
    /// `√(−⟨L,L⟩)`
    #[serde(rename = "mL")]
    pub m_l: f64,
    #[serde(rename = "mR")]
    pub m_r: f64,
    /// `√⟨L_s,L_s⟩`
    #[serde(rename = "mL_s")]
    pub m_l_s: f64,
    #[serde(rename = "mR_s")]
    pub m_r_s: f64,
}

impl ChargeSet {
    fn from_vectors(
        l: AdsAlgebraElement,
        r: AdsAlgebraElement,
        l_s: SphereAlgebraElement,
        r_s: SphereAlgebraElement,
    ) -> Self {
        let timelike = |v: &AdsAlgebraElement| (-v.norm2()).max(0.0).sqrt();
        Self {
            l,
            r,
            l_s,
            r_s,
            m_l: timelike(&l),
            m_r: timelike(&r),
            m_l_s: l_s.norm2().max(0.0).sqrt(),
            m_r_s: r_s.norm2().max(0.0).sqrt(),
        }
    }

    /// `m_R / m_L`
    pub fn asymmetry(&self) -> f64 {
        self.m_r / self.m_l
    }

    /// Largest coefficient difference between two charge sets.
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        [
            (self.l - o.l).max_abs(),
            (self.r - o.r).max_abs(),
            (self.l_s - o.l_s).max_abs(),
            (self.r_s - o.r_s).max_abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Charges after `g ↦ g_L g g_R`: `L ↦ Ad_{g_L} L`, `R ↦ Ad_{g_R⁻¹} R`.
    pub fn transform(&self, iso: &Isometry) -> Self {
        Self::from_vectors(
            iso.g_l.adjoint(&self.l),
            iso.g_r.inverse().adjoint(&self.r),
            iso.h_l.adjoint(&self.l_s),
            iso.h_r.inverse().adjoint(&self.r_s),
        )
    }
}

/// Signed orbit coefficients `(λ + ρ cosh 2θ, λ cosh 2θ + ρ, λ_s + ρ_s cos 2θ_s, λ_s cos 2θ_s + ρ_s)`.
///
/// `L = c_L l̂` and so on; the sphere coefficients can be negative.
pub fn orbit_coefficients(p: &SolutionParams) -> [f64; 4] {
    let (c, cs) = (p.cosh2theta(), p.cos2theta_s());
    [
        p.lambda + p.rho * c,
        p.lambda * c + p.rho,
        p.lambda_s + p.rho_s * cs,
        p.lambda_s * cs + p.rho_s,
    ]
}

/// `L = (λ + ρ cosh 2θ) l̂`, `R = (λ cosh 2θ + ρ) r̂` and the sphere analogues.
pub fn charges_analytic(p: &SolutionParams) -> ChargeSet {
    let [cl, cr, cls, crs] = orbit_coefficients(p);
    ChargeSet::from_vectors(cl * p.l_hat(), cr * p.r_hat(), cls * p.l_hat_s(), crs * p.r_hat_s())
}

/// Smallest quadrature size treated as resolved: `4(|m| + |n|) + 16`, worst sector.
pub fn min_quadrature_points(p: &SolutionParams) -> usize {
    let ads = p.m.unsigned_abs() + p.n.unsigned_abs();
    let sphere = p.m_s.unsigned_abs() + p.n_s.unsigned_abs();
    4 * ads.max(sphere) as usize + 16
}

/// Result of [`charges_numeric`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureCharges {
    pub charges: ChargeSet,
    pub points: usize,
    /// Set when `points` is below [`min_quadrature_points`].
    pub underresolved: bool,
}

/// Periodic trapezoid rule for the charges at time `τ`.
pub fn charges_numeric(p: &SolutionParams, tau: f64, points: usize) -> QuadratureCharges {
    let avg = circle_average(points.max(1), |sigma| {
        let c = currents(p, tau, sigma);
        let mut out = [0.0; 12];
        out[0..3].copy_from_slice(&c.ads.l_tau.coeffs);
        out[3..6].copy_from_slice(&c.ads.r_tau.coeffs);
        out[6..9].copy_from_slice(&c.sphere.l_tau.coeffs);
        out[9..12].copy_from_slice(&c.sphere.r_tau.coeffs);
        out
    });
    let take = |k: usize| [avg[k], avg[k + 1], avg[k + 2]];
    QuadratureCharges {
        charges: ChargeSet::from_vectors(
            AlgebraElement::new(take(0)),
            AlgebraElement::new(take(3)),
            AlgebraElement::new(take(6)),
            AlgebraElement::new(take(9)),
        ),
        points,
        underresolved: points < min_quadrature_points(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::f_max;
    use crate::diff::Stencil;
    use crate::geometry::induced_metric_numeric;
    use crate::solution::SimpleFamilyPoint;
    use proptest::prelude::*;

    fn family(f: f64, b: f64, n: i64) -> SolutionParams {
        SimpleFamilyPoint::new(f, b, n).unwrap().solution().unwrap()
    }

    #[test]
    fn bridge_point_casimirs() {
        let p = family(5.0 / 3.0, 5.0 / 4.0, 1);
        let q = charges_numeric(&p, 0.0, 256);
        assert!(!q.underresolved);
        assert!((q.charges.m_l - 359.0 / 288.0).abs() < 1e-12);
        assert!((q.charges.m_r - 203.0 / 96.0).abs() < 1e-12);
        assert!((q.charges.l - (359.0 / 288.0) * AlgebraElement::<Ads>::basis(0)).max_abs() < 1e-12);
        let a = charges_analytic(&p);
        assert!((a.m_l_s - (1.0 - 11.0 / 144.0)).abs() < 1e-13);
        assert!((a.m_r_s - 1.0 / 18.0).abs() < 1e-13);
        assert!(orbit_coefficients(&p)[3] < 0.0);
        assert!(q.charges.max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn origin_currents_match_substitution() {
        let p = family(5.0 / 3.0, 5.0 / 4.0, 1);
        let c = currents(&p, 0.0, 0.0);
        let expect = p.lambda * p.l_hat() + p.rho * p.g0.adjoint(&p.r_hat());
        assert!((c.ads.l_tau - expect).max_abs() < 1e-15);
        let z = currents(&SolutionParams::static_point(), 0.3, 1.0);
        assert_eq!(z.ads.l_tau.max_abs() + z.sphere.r_sigma.max_abs(), 0.0);
    }

    #[test]
    fn currents_agree_with_finite_differences() {
        let p = family(1.9, 1.4, 2);
        let (tau, sigma) = (0.3, -0.8);
        let c = currents(&p, tau, sigma);
        let (jt, js) = crate::geometry::right_currents(|t, s| p.evaluate(t, s).0, tau, sigma, &Stencil::default());
        assert!((c.ads.r_tau - jt).max_abs() < 1e-9);
        assert!((c.ads.r_sigma - js).max_abs() < 1e-9);
        // ⟨L_a L_b⟩ = ⟨R_a R_b⟩ = f_ab
        let m = induced_metric_numeric(&p, tau, sigma, &Stencil::default());
        assert!((c.ads.l_tau.inner(&c.ads.l_sigma) - m.ads[0][1]).abs() < 1e-8);
        assert!((c.ads.r_tau.inner(&c.ads.r_sigma) - m.ads[0][1]).abs() < 1e-8);
        assert!((c.sphere.l_sigma.norm2() - m.sphere[1][1]).abs() < 1e-8);
    }

    #[test]
    fn winding_free_left_charge() {
        // ρ = 0, n = 0 (m = 0 by parity with an even partner): integrand constant
        let mut p = SolutionParams::static_point();
        p.lambda = 1.7;
        p.l = crate::algebra::UnitTimelikeVector::new(0.4, 1.0);
        let q = charges_numeric(&p, 0.5, 16);
        assert!((q.charges.l - 1.7 * p.l_hat()).max_abs() < 1e-15);
        assert!(charges_numeric(&family(1.5, 1.2, 3), 0.0, 8).underresolved);
    }

    #[test]
    fn diagonal_point_is_particle_like() {
        let p = family(1.4, 1.4, 1);
        let a = charges_analytic(&p);
        assert!((a.m_l - a.m_r).abs() < 1e-14);
        assert!((a.m_l - (p.lambda + p.rho).abs()).abs() < 1e-14);
    }

    fn point() -> impl Strategy<Value = SolutionParams> {
        (1.0..2.5f64, 0.0..1.0f64, 1..4i64).prop_map(|(b, u, n)| family(b + u * (f_max(b) - b), b, n))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn quadrature_matches_closed_form(p in point(), tau in -3.0..3.0f64) {
            let q = charges_numeric(&p, tau, 256).charges;
            prop_assert!(q.max_abs_diff(&charges_analytic(&p)) <= 1e-10);
        }

        #[test]
        fn casimir_norms(p in point()) {
            let a = charges_analytic(&p);
            prop_assert!((a.l.norm2() + a.m_l * a.m_l).abs() < 1e-12);
            prop_assert!((a.r.norm2() + a.m_r * a.m_r).abs() < 1e-12);
            prop_assert!((a.l_s.norm2() - a.m_l_s * a.m_l_s).abs() < 1e-12);
            prop_assert!((a.r_s.norm2() - a.m_r_s * a.m_r_s).abs() < 1e-12);
        }

        #[test]
        fn charges_transform_in_adjoint(p in point(), c in prop::array::uniform6(-1.0..1.0f64)) {
            let iso = Isometry {
                g_l: AlgebraElement::<Ads>::basis(1).exp(c[0]) * AlgebraElement::<Ads>::basis(0).exp(c[1]),
                g_r: AlgebraElement::<Ads>::basis(2).exp(c[2]),
                h_l: AlgebraElement::<Sphere>::basis(0).exp(2.0 * c[3]) * AlgebraElement::<Sphere>::basis(1).exp(c[4]),
                h_r: AlgebraElement::<Sphere>::basis(1).exp(3.0 * c[5]),
            };
            let q = iso.apply(&p).unwrap();
            let moved = charges_analytic(&p).transform(&iso);
            let direct = charges_numeric(&q, 0.7, 256).charges;
            prop_assert!(moved.max_abs_diff(&direct) <= 1e-9);
            let a = charges_analytic(&p);
            let b = charges_analytic(&q);
            prop_assert!((a.m_l - b.m_l).abs() <= 1e-12 * (1.0 + a.m_l));
            prop_assert!((a.m_r_s - b.m_r_s).abs() <= 1e-12);
        }
    }
}
