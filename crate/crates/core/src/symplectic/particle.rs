//! Particle limit: geodesics `g(τ) = e^{τL} g₀` on AdS₃ and S³, their phase
//! space of left/right orbit data plus angles, and its symplectic form.
//!
//! Unreduced chart: `(l₁, l₂, r₁, r₂, u₁, u₂, v₁, v₂, m, φ, m_s, φ_s)` with
//! `L = m l̂`, `R = m r̂`, `L_s = m_s û`, `R_s = m_s v̂` and
//! `g = F(l̂) e^{φt₀} F(r̂)⁻¹`, `h = F(û) e^{φ_s s₃} F(v̂)⁻¹`, where `F` is
//! [`frame`]. The mass shell `m² = M² + m_s²` leaves the reduced chart
//! `(l₁, l₂, r₁, r₂, u₁, u₂, v₁, v₂, m_s, χ)` with `χ = φ_s − (m_s/m) φ`.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::form::{exterior_derivative, TwoFormMatrix};
use super::orbit::{OrbitChart, Side};
use super::poisson::{Observables, PhaseSpace};
use super::{canonical_pairing, pair_embedding};
use crate::algebra::{
    frame, AdsAlgebraElement, AdsGroupElement, AlgebraElement, GroupElement, Sector, SphereAlgebraElement,
    SphereGroupElement, UnitSphereVector, UnitTimelikeVector,
};
use crate::diff::Stencil;
use crate::error::{Error, Result};

pub const UNREDUCED_LABELS: [&str; 12] = ["l1", "l2", "r1", "r2", "u1", "u2", "v1", "v2", "m", "phi", "m_s", "phi_s"];
pub const REDUCED_LABELS: [&str; 10] = ["l1", "l2", "r1", "r2", "u1", "u2", "v1", "v2", "m_s", "chi"];

/// `e^{τL} g₀`.
pub fn particle_evaluate<S: Sector>(charge: &AlgebraElement<S>, g0: &GroupElement<S>, tau: f64) -> GroupElement<S> {
    charge.exp(tau) * *g0
}

/// `R = Ad_{g₀⁻¹} L`, so that `e^{τL} g₀ = g₀ e^{τR}`.
pub fn right_charge<S: Sector>(charge: &AlgebraElement<S>, g0: &GroupElement<S>) -> AlgebraElement<S> {
    g0.inverse().adjoint(charge)
}

/// `F(l̂) e^{φ·axis} F(r̂)⁻¹`, which maps `r̂` to `l̂` under the adjoint action.
pub fn group_from_orbits<S: Sector>(l: &AlgebraElement<S>, r: &AlgebraElement<S>, phi: f64) -> GroupElement<S> {
    frame(l) * AlgebraElement::<S>::axis().exp(phi) * frame(r).inverse()
}

/// `g = e^{θ_L n̂_L} e^{φt₀} e^{θ_R n̂_R}` with `Ad_g r̂ = l̂`.
///
/// `φ` is an angle on the covering line; `φ` and `φ + 2π` give the same
/// matrix because `e^{2πt₀} = I`.
pub fn g_from_lr(l: &AdsAlgebraElement, r: &AdsAlgebraElement, phi: f64) -> Result<AdsGroupElement> {
    UnitTimelikeVector::from_element(l)?;
    UnitTimelikeVector::from_element(r)?;
    if !phi.is_finite() {
        return Err(Error::NonFinite("phi"));
    }
    Ok(group_from_orbits(l, r, phi))
}

/// Point of the particle phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleChartPoint {
    pub l: UnitTimelikeVector,
    pub r: UnitTimelikeVector,
    pub l_s: UnitSphereVector,
    pub r_s: UnitSphereVector,
    pub m_s: f64,
    pub phi: f64,
    pub phi_s: f64,
    /// Particle mass `M`, a fixed parameter.
    pub mass: f64,
}

impl ParticleChartPoint {
    /// `m = √(M² + m_s²)`.
    pub fn m(&self) -> f64 {
        self.mass.hypot(self.m_s)
    }

    pub fn group_elements(&self) -> (AdsGroupElement, SphereGroupElement) {
        (
            group_from_orbits(&self.l.element(), &self.r.element(), self.phi),
            group_from_orbits(&self.l_s.element(), &self.r_s.element(), self.phi_s),
        )
    }

    fn orbit_coords(&self) -> Result<[f64; 8]> {
        let (l, r) = (self.l.element().coeffs, self.r.element().coeffs);
        let (u, v) = (self.l_s.element().coeffs, self.r_s.element().coeffs);
        let [a, b] = OrbitChart::SPHERE.coords(&u);
        let [c, d] = OrbitChart::SPHERE.coords(&v);
        // the chart is the upper hemisphere; fail here rather than at evaluation
        OrbitChart::SPHERE.dependent([a, b])?;
        OrbitChart::SPHERE.dependent([c, d])?;
        if u[2] <= 0.0 || v[2] <= 0.0 {
            return Err(Error::ChartSingular("sphere vectors must lie in the chart hemisphere u₃ > 0"));
        }
        Ok([l[1], l[2], r[1], r[2], a, b, c, d])
    }

    pub fn unreduced_coords(&self) -> Result<[f64; 12]> {
        let o = self.orbit_coords()?;
        Ok([o[0], o[1], o[2], o[3], o[4], o[5], o[6], o[7], self.m(), self.phi, self.m_s, self.phi_s])
    }

    pub fn reduced_coords(&self) -> Result<[f64; 10]> {
        let o = self.orbit_coords()?;
        let chi = self.phi_s - self.m_s / self.m() * self.phi;
        Ok([o[0], o[1], o[2], o[3], o[4], o[5], o[6], o[7], self.m_s, chi])
    }

    /// Point on the slice `φ = 0` of the reduced chart.
    pub fn from_reduced(x: &[f64], mass: f64) -> Result<Self> {
        let o = OrbitVectors::from_chart(x)?;
        Ok(Self {
            l: UnitTimelikeVector::from_element(&o.l)?,
            r: UnitTimelikeVector::from_element(&o.r)?,
            l_s: UnitSphereVector::from_element(&o.u)?,
            r_s: UnitSphereVector::from_element(&o.v)?,
            m_s: x[8],
            phi: 0.0,
            phi_s: x[9],
            mass,
        })
    }

    /// Random point with moderate rapidities and sphere vectors away from the chart edge.
    pub fn random<R: Rng>(rng: &mut R, mass: f64) -> Self {
        let tau = std::f64::consts::TAU;
        Self {
            l: UnitTimelikeVector::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..tau)),
            r: UnitTimelikeVector::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..tau)),
            l_s: UnitSphereVector::new(rng.gen_range(0.0..1.1), rng.gen_range(0.0..tau)),
            r_s: UnitSphereVector::new(rng.gen_range(0.0..1.1), rng.gen_range(0.0..tau)),
            m_s: rng.gen_range(0.5..2.0),
            phi: rng.gen_range(-3.0..3.0),
            phi_s: rng.gen_range(-3.0..3.0),
            mass,
        }
    }
}

/// Unit vectors at the first eight chart coordinates.
struct OrbitVectors {
    l: AdsAlgebraElement,
    r: AdsAlgebraElement,
    u: SphereAlgebraElement,
    v: SphereAlgebraElement,
}

impl OrbitVectors {
    fn from_chart(x: &[f64]) -> Result<Self> {
        let (h, s) = (OrbitChart::Hyperboloid, OrbitChart::SPHERE);
        Ok(Self {
            l: AlgebraElement::new(h.embed([x[0], x[1]])?),
            r: AlgebraElement::new(h.embed([x[2], x[3]])?),
            u: AlgebraElement::new(s.embed([x[4], x[5]])?),
            v: AlgebraElement::new(s.embed([x[6], x[7]])?),
        })
    }
}

const ORBIT_BLOCKS: [(usize, OrbitChart, Side); 4] = [
    (0, OrbitChart::Hyperboloid, Side::Left),
    (2, OrbitChart::Hyperboloid, Side::Right),
    (4, OrbitChart::SPHERE, Side::Left),
    (6, OrbitChart::SPHERE, Side::Right),
];

/// `(g, h)` at an unreduced chart point.
pub fn unreduced_group_elements(x: &[f64]) -> Result<(AdsGroupElement, SphereGroupElement)> {
    let o = OrbitVectors::from_chart(x)?;
    Ok((group_from_orbits(&o.l, &o.r, x[9]), group_from_orbits(&o.u, &o.v, x[11])))
}

/// `ϑ = ⟨R, g⁻¹dg⟩ + ⟨R_s, h⁻¹dh⟩` on the unreduced chart, by finite differences.
pub fn particle_one_form(x: &[f64], st: &Stencil) -> Result<Vec<f64>> {
    let o = OrbitVectors::from_chart(x)?;
    let (g, h) = unreduced_group_elements(x)?;
    let (r, r_s) = (x[8] * o.r, x[10] * o.v);
    let emb = |y: &[f64]| unreduced_group_elements(y).map(|(g, h)| pair_embedding(&g, &h)).unwrap_or([f64::NAN; 8]);
    (0..x.len())
        .map(|j| {
            let d = st.partial(x, j, emb);
            if d.iter().any(|v| !v.is_finite()) {
                return Err(Error::ChartSingular("finite-difference stencil left the chart"));
            }
            Ok(canonical_pairing(&g, &h, &r, &r_s, &d))
        })
        .collect()
}

/// Numeric `dϑ` on the unreduced chart.
pub fn particle_form_numeric(x: &[f64], st: &Stencil) -> Result<TwoFormMatrix> {
    exterior_derivative(|y| particle_one_form(y, st), x, &UNREDUCED_LABELS, st)
}

/// `m(ω_L + ω_R) + m_s(ω^s_L + ω^s_R) + dm∧(a_L + a_R) + dm_s∧(a^s_L + a^s_R) − dm∧dφ + dm_s∧dφ_s`
/// on the unreduced chart, with `ω = da` the unit orbit forms of [`OrbitChart`].
pub fn particle_form_unreduced(x: &[f64]) -> Result<TwoFormMatrix> {
    let mut w = TwoFormMatrix::zeros(&UNREDUCED_LABELS);
    for (i, chart, side) in ORBIT_BLOCKS {
        let (scale, k) = if i < 4 { (x[8], 8) } else { (x[10], 10) };
        let xy = [x[i], x[i + 1]];
        w.add_wedge(i, i + 1, scale * chart.density(side, xy)?);
        let a = chart.connection(side, xy)?;
        w.add_wedge(k, i, a[0]);
        w.add_wedge(k, i + 1, a[1]);
    }
    w.add_wedge(8, 9, -1.0);
    w.add_wedge(10, 11, 1.0);
    Ok(w)
}

/// Reduced form at `x = (l₁, …, v₂, m_s, χ)`: the pull-back of the unreduced
/// form to `m = √(M² + m_s²)`, `φ = 0`, `φ_s = χ`.
pub fn reduced_form(x: &[f64], mass: f64) -> Result<TwoFormMatrix> {
    let m_s = x[8];
    let m = mass.hypot(m_s);
    if !(m > 0.0) {
        return Err(Error::Degenerate("vanishing AdS Casimir m".into()));
    }
    let mut full = [0.0; 12];
    full[..8].copy_from_slice(&x[..8]);
    full[8] = m;
    full[10] = m_s;
    full[11] = x[9];
    let mut jac = DMatrix::zeros(12, 10);
    for i in 0..8 {
        jac[(i, i)] = 1.0;
    }
    jac[(8, 8)] = m_s / m;
    jac[(10, 8)] = 1.0;
    jac[(11, 9)] = 1.0;
    let labels = REDUCED_LABELS.iter().map(|s| s.to_string()).collect();
    Ok(particle_form_unreduced(&full)?.pullback(&jac, labels))
}

/// Symplectic form of the ten-dimensional reduced phase space at `point`.
pub fn particle_symplectic(point: &ParticleChartPoint) -> Result<TwoFormMatrix> {
    reduced_form(&point.reduced_coords()?, point.mass)
}

/// Reduced particle phase space at fixed mass `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticlePhaseSpace {
    pub mass: f64,
}

impl PhaseSpace for ParticlePhaseSpace {
    fn labels(&self) -> Vec<String> {
        REDUCED_LABELS.iter().map(|s| s.to_string()).collect()
    }

    fn form(&self, x: &[f64]) -> Result<TwoFormMatrix> {
        reduced_form(x, self.mass)
    }

    fn observables(&self, x: &[f64]) -> Result<Observables> {
        let o = OrbitVectors::from_chart(x)?;
        let m_s = x[8];
        let m = self.mass.hypot(m_s);
        Ok(Observables {
            l: (m * o.l).lowered(),
            r: (m * o.r).lowered(),
            l_s: (m_s * o.u).lowered(),
            r_s: (m_s * o.v).lowered(),
            casimirs: [m, m, m_s, m_s],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Ads, Sphere};
    use crate::symplectic::poisson::{bracket_table, closedness_residual, jacobi_residual};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn points(seed: u64, count: usize) -> Vec<ParticleChartPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let mass = rng.gen_range(0.0..2.0);
                ParticleChartPoint::random(&mut rng, mass)
            })
            .collect()
    }

    #[test]
    fn evaluate_at_origin_and_both_factorizations() {
        let l = 1.7 * UnitTimelikeVector::new(0.4, 1.1).element();
        let g0 = AlgebraElement::<Ads>::new([0.2, -0.3, 0.5]).exp(0.9);
        assert!(particle_evaluate(&l, &g0, 0.0).distance(&g0) < 1e-15);
        let r = right_charge(&l, &g0);
        assert!((r.norm2() - l.norm2()).abs() < 1e-12);
        assert!((l.norm2() + 1.7 * 1.7).abs() < 1e-12);
        for tau in [-1.3, 0.4, 2.2] {
            let right = g0 * r.exp(tau);
            assert!(particle_evaluate(&l, &g0, tau).distance(&right) < 1e-12);
        }
        let ls = 0.8 * UnitSphereVector::new(0.6, 2.0).element();
        let h0 = AlgebraElement::<Sphere>::new([0.3, 0.1, -0.4]).exp(1.2);
        let rs = right_charge(&ls, &h0);
        assert!(particle_evaluate(&ls, &h0, 0.7).distance(&(h0 * rs.exp(0.7))) < 1e-12);
    }

    #[test]
    fn g_from_lr_examples() {
        let t0 = AlgebraElement::<Ads>::axis();
        let g = g_from_lr(&t0, &t0, 0.8).unwrap();
        assert!(g.distance(&t0.exp(0.8)) < 1e-15);
        let (l, r) = (UnitTimelikeVector::new(0.7, 0.3).element(), UnitTimelikeVector::new(1.1, 4.0).element());
        let g = g_from_lr(&l, &r, -0.4).unwrap();
        assert!((g.adjoint(&r) - l).max_abs() < 1e-12);
        let g2 = g_from_lr(&l, &r, -0.4 + std::f64::consts::TAU).unwrap();
        assert!(g.distance(&g2) < 1e-12);
        assert!(g_from_lr(&(-1.0 * l), &r, 0.0).is_err());
    }

    #[test]
    fn numeric_form_matches_analytic() {
        let st = Stencil::default();
        for p in points(3, 4) {
            let x = p.unreduced_coords().unwrap();
            let num = particle_form_numeric(&x, &st).unwrap();
            let ana = particle_form_unreduced(&x).unwrap();
            assert!(num.max_abs_diff(&ana) < 1e-7, "{}", num.max_abs_diff(&ana));
        }
    }

    #[test]
    fn reduced_is_pullback_of_numeric_form() {
        let st = Stencil::default();
        let p = points(5, 1)[0];
        let x = p.reduced_coords().unwrap();
        let m = p.m();
        let full = [x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7], m, 0.0, x[8], x[9]];
        let num = particle_form_numeric(&full, &st).unwrap();
        let mut jac = DMatrix::zeros(12, 10);
        for i in 0..8 {
            jac[(i, i)] = 1.0;
        }
        jac[(8, 8)] = x[8] / m;
        jac[(10, 8)] = 1.0;
        jac[(11, 9)] = 1.0;
        let pulled = num.pullback(&jac, REDUCED_LABELS.iter().map(|s| s.to_string()).collect());
        assert!(pulled.max_abs_diff(&particle_symplectic(&p).unwrap()) < 1e-7);
    }

    #[test]
    fn left_block_at_axis() {
        let mut p = points(9, 1)[0];
        p.l = UnitTimelikeVector::AXIS;
        let w = particle_symplectic(&p).unwrap();
        // (m/2) dl₂∧dl₁
        assert!((w.get(1, 0) - p.m() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn massless_angle_coupling() {
        let mut p = points(11, 1)[0];
        p.mass = 0.0;
        let x = p.reduced_coords().unwrap();
        assert!((x[9] - (p.phi_s - p.phi)).abs() < 1e-14);
        let w = particle_symplectic(&p).unwrap();
        assert_eq!(w.get(8, 9), 1.0);
    }

    #[test]
    fn fixed_m_s_leaf_decouples_chi() {
        let p = points(13, 1)[0];
        let w = particle_symplectic(&p).unwrap();
        let chi = w.index_of("chi").unwrap();
        for j in 0..10 {
            if w.labels()[j] != "m_s" {
                assert_eq!(w.get(chi, j), 0.0);
            }
        }
    }

    #[test]
    fn reduced_form_is_closed_and_nondegenerate() {
        let st = Stencil::default();
        for p in points(17, 3) {
            let x = p.reduced_coords().unwrap();
            let r = closedness_residual(|y| reduced_form(y, p.mass), &x, &st).unwrap();
            assert!(r < 1e-8, "{r}");
            assert!(particle_symplectic(&p).unwrap().condition_number().is_finite());
        }
    }

    #[test]
    fn chart_rejects_lower_hemisphere() {
        let mut p = points(19, 1)[0];
        p.l_s = UnitSphereVector::new(2.5, 0.3);
        assert!(matches!(p.reduced_coords(), Err(Error::ChartSingular(_))));
    }

    #[test]
    fn bracket_algebra_closes() {
        let st = Stencil::default();
        for p in points(7, 20) {
            let space = ParticlePhaseSpace { mass: p.mass };
            let t = bracket_table(&space, &p.reduced_coords().unwrap(), &st).unwrap();
            assert!(t.algebra_residual < 1e-6, "{}", t.algebra_residual);
            assert!(t.casimir_residual < 1e-6, "{}", t.casimir_residual);
        }
    }

    #[test]
    fn jacobi_identity() {
        let st = Stencil::default();
        let p = points(23, 1)[0];
        let space = ParticlePhaseSpace { mass: p.mass };
        let j = jacobi_residual(&space, &p.reduced_coords().unwrap(), &st).unwrap();
        assert!(j < 1e-4, "{j}");
    }

    #[test]
    fn reduced_round_trip() {
        let p = points(29, 1)[0];
        let x = p.reduced_coords().unwrap();
        let q = ParticleChartPoint::from_reduced(&x, p.mass).unwrap();
        let y = q.reduced_coords().unwrap();
        assert!(x.iter().zip(&y).all(|(a, b)| (a - b).abs() < 1e-12));
        let (g, _) = q.group_elements();
        let l = q.m() * q.l.element();
        assert!((g.adjoint(&(q.m() * q.r.element())) - l).max_abs() < 1e-12);
    }
}
