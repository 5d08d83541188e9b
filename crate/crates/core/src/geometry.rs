//! Finite-difference checks of the worldsheet geometry: induced metrics,
//! conformal gauge, chirality and the equations of motion.
//!
//! Light-cone derivatives are `∂ = ½(∂_τ + ∂_σ)`, `∂̄ = ½(∂_τ − ∂_σ)`.

use serde::Serialize;

use crate::algebra::{AlgebraElement, GroupElement, Sector};
use crate::bridge::InvariantBlock;
use crate::diff::Stencil;
use crate::error::{Error, Result};
use crate::solution::SolutionParams;

pub type Metric2 = [[f64; 2]; 2];

/// Induced metrics `f_ab` on AdS₃ and `f^s_ab` on S³, indices `(τ, σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InducedMetric {
    pub ads: Metric2,
    pub sphere: Metric2,
}

impl InducedMetric {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d
                    .max((self.ads[i][j] - other.ads[i][j]).abs())
                    .max((self.sphere[i][j] - other.sphere[i][j]).abs());
            }
        }
        d
    }
}

fn metric_from<S: Sector>(jt: &AlgebraElement<S>, js: &AlgebraElement<S>) -> Metric2 {
    let ts = jt.inner(js);
    [[jt.norm2(), ts], [ts, js.norm2()]]
}

/// `(g⁻¹∂_τ g, g⁻¹∂_σ g)` by finite differences of the path `eval`.
pub fn right_currents<S: Sector>(
    eval: impl Fn(f64, f64) -> GroupElement<S>,
    tau: f64,
    sigma: f64,
    st: &Stencil,
) -> (AlgebraElement<S>, AlgebraElement<S>) {
    let gi = eval(tau, sigma).inverse();
    let dt = st.derivative(tau, |t| *eval(t, sigma).matrix());
    let ds = st.derivative(sigma, |s| *eval(tau, s).matrix());
    (
        AlgebraElement::from_matrix(&(gi.matrix() * dt)),
        AlgebraElement::from_matrix(&(gi.matrix() * ds)),
    )
}

/// `f_ab = ⟨(g⁻¹∂_a g)(g⁻¹∂_b g)⟩` by central differences.
pub fn induced_metric_numeric(p: &SolutionParams, tau: f64, sigma: f64, st: &Stencil) -> InducedMetric {
    let (jt, js) = right_currents(|t, s| p.evaluate(t, s).0, tau, sigma, st);
    let (kt, ks) = right_currents(|t, s| p.evaluate(t, s).1, tau, sigma, st);
    InducedMetric {
        ads: metric_from(&jt, &js),
        sphere: metric_from(&kt, &ks),
    }
}

/// Closed-form metric from the invariants:
/// `f_ττ = −2μμ̄ cosh α − μ² − μ̄²`, `f_τσ = μ̄² − μ²`, `f_σσ = 2μμ̄ cosh α − μ² − μ̄²`
/// and `f^s = [[μ² + μ̄² + 2μμ̄ cos β, μ² − μ̄²], [μ² − μ̄², μ² + μ̄² − 2μμ̄ cos β]]`.
pub fn induced_metric_analytic(inv: &InvariantBlock) -> InducedMetric {
    let (u, v) = (inv.mu2, inv.mubar2);
    let pa = inv.mu_mubar_cosh_alpha();
    let pb = inv.mu_mubar_cos_beta();
    InducedMetric {
        ads: [[-2.0 * pa - u - v, v - u], [v - u, 2.0 * pa - u - v]],
        sphere: [[u + v + 2.0 * pb, u - v], [u - v, u + v - 2.0 * pb]],
    }
}

/// Metric computed directly from the frequencies, windings and `θ`, `θ_s`.
///
/// Valid for any parameter set, including ones violating `4λρ = mn`.
pub fn induced_metric_from_params(p: &SolutionParams) -> InducedMetric {
    fn block(l: f64, r: f64, m: f64, n: f64, c: f64, sign: f64) -> Metric2 {
        let tt = l * l + r * r + 2.0 * l * r * c;
        let ss = 0.25 * (m * m + n * n + 2.0 * m * n * c);
        let ts = 0.5 * (l * m + r * n + (l * n + r * m) * c);
        [[sign * tt, sign * ts], [sign * ts, sign * ss]]
    }
    // ⟨l̂, l̂⟩ = −1 and ⟨l̂, Ad r̂⟩ = −cosh 2θ flip every AdS entry.
    InducedMetric {
        ads: block(p.lambda, p.rho, p.m as f64, p.n as f64, p.cosh2theta(), -1.0),
        sphere: block(p.lambda_s, p.rho_s, p.m_s as f64, p.n_s as f64, p.cos2theta_s(), 1.0),
    }
}

/// Conformal-gauge residuals and the per-sector `μ², μ̄²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaugeResidual {
    /// `⟨(g⁻¹∂g)²⟩ + ⟨(h⁻¹∂h)²⟩`
    pub chiral: f64,
    /// `⟨(g⁻¹∂̄g)²⟩ + ⟨(h⁻¹∂̄h)²⟩`
    pub antichiral: f64,
    /// `−⟨(g⁻¹∂g)²⟩`
    pub ads_mu2: f64,
    /// `−⟨(g⁻¹∂̄g)²⟩`
    pub ads_mubar2: f64,
    /// `⟨(h⁻¹∂h)²⟩`
    pub sphere_mu2: f64,
    /// `⟨(h⁻¹∂̄h)²⟩`
    pub sphere_mubar2: f64,
}

impl GaugeResidual {
    pub fn max_abs(&self) -> f64 {
        self.chiral.abs().max(self.antichiral.abs())
    }
}

fn light_cone(m: &Metric2) -> (f64, f64) {
    (
        0.25 * (m[0][0] + 2.0 * m[0][1] + m[1][1]),
        0.25 * (m[0][0] - 2.0 * m[0][1] + m[1][1]),
    )
}

pub fn gauge_residual(p: &SolutionParams, tau: f64, sigma: f64, st: &Stencil) -> GaugeResidual {
    let m = induced_metric_numeric(p, tau, sigma, st);
    let (a, abar) = light_cone(&m.ads);
    let (s, sbar) = light_cone(&m.sphere);
    GaugeResidual {
        chiral: a + s,
        antichiral: abar + sbar,
        ads_mu2: -a,
        ads_mubar2: -abar,
        sphere_mu2: s,
        sphere_mubar2: sbar,
    }
}

/// Max-norm residuals of `∂_τ(g⁻¹∂_τ g) − ∂_σ(g⁻¹∂_σ g)` and the sphere analogue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EomResidual {
    pub ads: f64,
    pub sphere: f64,
}

impl EomResidual {
    pub fn max(&self) -> f64 {
        self.ads.max(self.sphere)
    }
}

fn eom_sector<S: Sector>(
    eval: impl Fn(f64, f64) -> GroupElement<S> + Copy,
    tau: f64,
    sigma: f64,
    st: &Stencil,
) -> f64 {
    let dt = st.derivative(tau, |t| right_currents(eval, t, sigma, st).0.coeffs);
    let ds = st.derivative(sigma, |s| right_currents(eval, tau, s, st).1.coeffs);
    (0..3).fold(0.0, |m: f64, i| m.max((dt[i] - ds[i]).abs()))
}

/// Nested central differences of the right currents.
pub fn eom_residual(p: &SolutionParams, tau: f64, sigma: f64, st: &Stencil) -> EomResidual {
    EomResidual {
        ads: eom_sector(|t, s| p.evaluate(t, s).0, tau, sigma, st),
        sphere: eom_sector(|t, s| p.evaluate(t, s).1, tau, sigma, st),
    }
}

/// Same residual for an arbitrary path, used as a negative control.
pub fn eom_residual_path<S: Sector>(
    eval: impl Fn(f64, f64) -> GroupElement<S> + Copy,
    tau: f64,
    sigma: f64,
    st: &Stencil,
) -> f64 {
    eom_sector(eval, tau, sigma, st)
}

/// `max(|∂̄⟨(g⁻¹∂g)²⟩|, |∂⟨(g⁻¹∂̄g)²⟩|)` over both sectors.
pub fn chirality_residual(p: &SolutionParams, tau: f64, sigma: f64, st: &Stencil) -> f64 {
    let forms = |t: f64, s: f64| {
        let m = induced_metric_numeric(p, t, s, st);
        let (a, abar) = light_cone(&m.ads);
        let (b, bbar) = light_cone(&m.sphere);
        [a, abar, b, bbar]
    };
    let x = [tau, sigma];
    let dbar = st.directional(&x, &[0.5, -0.5], |y| forms(y[0], y[1]));
    let d = st.directional(&x, &[0.5, 0.5], |y| forms(y[0], y[1]));
    dbar[0].abs().max(dbar[2].abs()).max(d[1].abs()).max(d[3].abs())
}

/// Largest spread (max − min) of any metric entry over the given points.
pub fn metric_spread(p: &SolutionParams, points: &[(f64, f64)], st: &Stencil) -> f64 {
    let mut lo = [f64::INFINITY; 8];
    let mut hi = [f64::NEG_INFINITY; 8];
    for &(t, s) in points {
        let m = induced_metric_numeric(p, t, s, st);
        let flat = [m.ads[0], m.ads[1], m.sphere[0], m.sphere[1]].concat();
        for (k, v) in flat.into_iter().enumerate() {
            lo[k] = lo[k].min(v);
            hi[k] = hi[k].max(v);
        }
    }
    (0..8).fold(0.0, |acc: f64, k| if hi[k] >= lo[k] { acc.max(hi[k] - lo[k]) } else { acc })
}

/// `max ‖g(τ,σ+2π) − g(τ,σ)‖` over both sectors and the given points.
pub fn periodicity_defect(p: &SolutionParams, points: &[(f64, f64)]) -> f64 {
    points.iter().fold(0.0, |m: f64, &(t, s)| {
        let (g0, h0) = p.evaluate(t, s);
        let (g1, h1) = p.evaluate(t, s + std::f64::consts::TAU);
        m.max(g0.distance(&g1)).max(h0.distance(&h1))
    })
}

/// `(H, H_s) = (−coth 2θ, cot 2θ_s)`.
pub fn mean_curvatures(inv: &InvariantBlock) -> Result<(f64, f64)> {
    let c = inv.cosh2theta;
    let sh2 = c * c - 1.0;
    if !(sh2 > 1e-24) {
        return Err(Error::Degenerate("θ = 0: mean curvature of the AdS tube diverges".into()));
    }
    let cs = inv.cos2theta_s;
    let sn2 = 1.0 - cs * cs;
    if !(sn2 > 1e-24) {
        return Err(Error::Degenerate("θ_s ∈ {0, π/2}: torus degenerates to a circle".into()));
    }
    Ok((-c / sh2.sqrt(), cs / sn2.sqrt()))
}
