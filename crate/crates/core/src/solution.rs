//! Particle-type solutions `g = e^{θ_l l̂} g₀ e^{θ_r r̂}`, `h = e^{θ_l^s l̂_s} h₀ e^{θ_r^s r̂_s}`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    euler_ads, euler_sphere, AdsAlgebraElement, AdsGroupElement, AlgebraElement, GroupElement,
    SphereAlgebraElement, SphereGroupElement, UnitSphereVector, UnitTimelikeVector, VALIDATION_TOL,
    frame,
};
use crate::bridge::{self, InvariantBlock};
use crate::error::{Error, Result};

/// Relative tolerance on `4λρ = mn`.
pub const RELATION_TOL: f64 = 1e-12;

/// The twelve-parameter chart of a particle-type solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolutionParams {
    pub lambda: f64,
    pub rho: f64,
    pub m: i64,
    pub n: i64,
    pub l: UnitTimelikeVector,
    pub r: UnitTimelikeVector,
    pub g0: AdsGroupElement,
    pub lambda_s: f64,
    pub rho_s: f64,
    pub m_s: i64,
    pub n_s: i64,
    pub l_s: UnitSphereVector,
    pub r_s: UnitSphereVector,
    pub h0: SphereGroupElement,
}

/// Worldsheet phases at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phases {
    pub theta_l: f64,
    pub theta_r: f64,
    pub theta_l_s: f64,
    pub theta_r_s: f64,
}

impl Phases {
    /// `η = θ_l + θ_r`
    pub fn eta(&self) -> f64 {
        self.theta_l + self.theta_r
    }
    /// `ξ = θ_l − θ_r`
    pub fn xi(&self) -> f64 {
        self.theta_l - self.theta_r
    }
    /// `η_s = θ_l^s − θ_r^s`
    pub fn eta_s(&self) -> f64 {
        self.theta_l_s - self.theta_r_s
    }
    /// `ξ_s = θ_l^s + θ_r^s`
    pub fn xi_s(&self) -> f64 {
        self.theta_l_s + self.theta_r_s
    }
}

impl SolutionParams {
    /// The static point: all frequencies and windings zero, trivial frames.
    pub fn static_point() -> Self {
        Self {
            lambda: 0.0,
            rho: 0.0,
            m: 0,
            n: 0,
            l: UnitTimelikeVector::AXIS,
            r: UnitTimelikeVector::AXIS,
            g0: GroupElement::identity(),
            lambda_s: 0.0,
            rho_s: 0.0,
            m_s: 0,
            n_s: 0,
            l_s: UnitSphereVector::AXIS,
            r_s: UnitSphereVector::AXIS,
            h0: GroupElement::identity(),
        }
    }

    pub fn l_hat(&self) -> AdsAlgebraElement {
        self.l.element()
    }
    pub fn r_hat(&self) -> AdsAlgebraElement {
        self.r.element()
    }
    pub fn l_hat_s(&self) -> SphereAlgebraElement {
        self.l_s.element()
    }
    pub fn r_hat_s(&self) -> SphereAlgebraElement {
        self.r_s.element()
    }

    /// `(4λρ − mn, 4λ_sρ_s − m_s n_s)`
    pub fn relation_defects(&self) -> (f64, f64) {
        (
            4.0 * self.lambda * self.rho - (self.m * self.n) as f64,
            4.0 * self.lambda_s * self.rho_s - (self.m_s * self.n_s) as f64,
        )
    }

    pub fn phases(&self, tau: f64, sigma: f64) -> Phases {
        let half = 0.5 * sigma;
        Phases {
            theta_l: self.lambda.mul_add(tau, self.m as f64 * half),
            theta_r: self.rho.mul_add(tau, self.n as f64 * half),
            theta_l_s: self.lambda_s.mul_add(tau, self.m_s as f64 * half),
            theta_r_s: self.rho_s.mul_add(tau, self.n_s as f64 * half),
        }
    }

    /// `(g(τ,σ), h(τ,σ))`
    pub fn evaluate(&self, tau: f64, sigma: f64) -> (AdsGroupElement, SphereGroupElement) {
        let p = self.phases(tau, sigma);
        let g = self.l_hat().exp(p.theta_l) * self.g0 * self.r_hat().exp(p.theta_r);
        let h = self.l_hat_s().exp(p.theta_l_s) * self.h0 * self.r_hat_s().exp(p.theta_r_s);
        (g, h)
    }

    /// `cosh 2θ = −⟨l̂ g₀ r̂ g₀⁻¹⟩`
    pub fn cosh2theta(&self) -> f64 {
        -self.l_hat().inner(&self.g0.adjoint(&self.r_hat()))
    }

    /// `cos 2θ_s = ⟨l̂_s h₀ r̂_s h₀⁻¹⟩`
    pub fn cos2theta_s(&self) -> f64 {
        self.l_hat_s().inner(&self.h0.adjoint(&self.r_hat_s()))
    }
}

/// Validates a raw parameter set and returns it with normalized unit-vector charts.
///
/// Checks finiteness, parity of both winding pairs, `4λρ = mn` to
/// `1e-12·(1 + |mn|)` and group membership of `g₀`, `h₀` at `1e-10`.
pub fn make_solution(params: SolutionParams) -> Result<SolutionParams> {
    let p = check_structure(params)?;
    let (d, ds) = p.relation_defects();
    if d.abs() > RELATION_TOL * (1.0 + (p.m * p.n).abs() as f64) {
        return Err(Error::FrequencyRelation {
            lambda: p.lambda,
            rho: p.rho,
            m: p.m,
            n: p.n,
            defect: d,
        });
    }
    if ds.abs() > RELATION_TOL * (1.0 + (p.m_s * p.n_s).abs() as f64) {
        return Err(Error::FrequencyRelation {
            lambda: p.lambda_s,
            rho: p.rho_s,
            m: p.m_s,
            n: p.n_s,
            defect: ds,
        });
    }
    Ok(p)
}

/// Like [`make_solution`] but leaves `4λρ = mn` unchecked, so that perturbed
/// (non-solution) parameter sets can be fed to the verifiers.
pub fn make_unchecked(params: SolutionParams) -> Result<SolutionParams> {
    check_structure(params)
}

fn check_structure(mut p: SolutionParams) -> Result<SolutionParams> {
    let reals = [
        p.lambda,
        p.rho,
        p.lambda_s,
        p.rho_s,
        p.l.rapidity,
        p.l.angle,
        p.r.rapidity,
        p.r.angle,
        p.l_s.polar,
        p.l_s.azimuth,
        p.r_s.polar,
        p.r_s.azimuth,
    ];
    if !reals.iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite("solution parameters"));
    }
    if (p.m - p.n).rem_euclid(2) != 0 {
        return Err(Error::Parity(p.m, p.n));
    }
    if (p.m_s - p.n_s).rem_euclid(2) != 0 {
        return Err(Error::Parity(p.m_s, p.n_s));
    }
    for (what, r) in [
        ("g0 determinant", p.g0.det_residual()),
        ("h0 determinant", p.h0.det_residual()),
        ("h0 unitarity", p.h0.unitarity_residual()),
    ] {
        if !(r <= VALIDATION_TOL) {
            return Err(Error::GroupConstraint { what, residual: r });
        }
    }
    p.l = p.l.normalized();
    p.r = p.r.normalized();
    p.l_s = p.l_s.normalized();
    p.r_s = p.r_s.normalized();
    Ok(p)
}

/// Left and right multiplications `g ↦ g_L g g_R`, `h ↦ h_L h h_R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub g_l: AdsGroupElement,
    pub g_r: AdsGroupElement,
    pub h_l: SphereGroupElement,
    pub h_r: SphereGroupElement,
}

impl Default for Isometry {
    fn default() -> Self {
        Self {
            g_l: GroupElement::identity(),
            g_r: GroupElement::identity(),
            h_l: GroupElement::identity(),
            h_r: GroupElement::identity(),
        }
    }
}

impl Isometry {
    pub fn act(&self, g: &AdsGroupElement, h: &SphereGroupElement) -> (AdsGroupElement, SphereGroupElement) {
        (self.g_l * *g * self.g_r, self.h_l * *h * self.h_r)
    }

    /// Transformed parameters: `l̂ ↦ Ad_{g_L} l̂`, `r̂ ↦ Ad_{g_R⁻¹} r̂`, `g₀ ↦ g_L g₀ g_R`.
    pub fn apply(&self, p: &SolutionParams) -> Result<SolutionParams> {
        let mut q = *p;
        q.l = UnitTimelikeVector::from_element(&self.g_l.adjoint(&p.l_hat()))?;
        q.r = UnitTimelikeVector::from_element(&self.g_r.inverse().adjoint(&p.r_hat()))?;
        q.g0 = self.g_l * p.g0 * self.g_r;
        q.l_s = UnitSphereVector::from_element(&self.h_l.adjoint(&p.l_hat_s()))?;
        q.r_s = UnitSphereVector::from_element(&self.h_r.inverse().adjoint(&p.r_hat_s()))?;
        q.h0 = self.h_l * p.h0 * self.h_r;
        Ok(q)
    }

    pub fn inverse(&self) -> Self {
        Self {
            g_l: self.g_l.inverse(),
            g_r: self.g_r.inverse(),
            h_l: self.h_l.inverse(),
            h_r: self.h_r.inverse(),
        }
    }
}

/// Invariant angles of the canonical form `g = e^{θ_l t₀} e^{θ t₁} e^{θ_r t₀}`,
/// `h = e^{θ_l^s s₃} e^{θ_s s₂} e^{θ_r^s s₃}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalAngles {
    pub theta: f64,
    pub theta_s: f64,
}

/// Output of [`canonical_form`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Canonical {
    pub params: SolutionParams,
    pub angles: CanonicalAngles,
    /// Isometry taking the input solution to the canonical one.
    pub isometry: Isometry,
}

/// Brings a solution to `l̂ = r̂ = t₀`, `l̂_s = r̂_s = s₃`, `g₀ = e^{θ t₁}`, `h₀ = e^{θ_s s₂}`.
///
/// The residual rotations about the axes are absorbed into the isometry, so
/// the canonical solution at `(τ,σ)` equals `g_L g(τ,σ) g_R`.
pub fn canonical_form(p: &SolutionParams) -> Result<Canonical> {
    let (fl, fr) = (frame(&p.l_hat()), frame(&p.r_hat()));
    let ea = euler_ads(&(fl.inverse() * p.g0 * fr));
    let t0 = AlgebraElement::axis();
    let g_l = t0.exp(-ea.left) * fl.inverse();
    let g_r = fr * t0.exp(-ea.right);

    let (fl, fr) = (frame(&p.l_hat_s()), frame(&p.r_hat_s()));
    let es = euler_sphere(&(fl.inverse() * p.h0 * fr));
    let s3 = AlgebraElement::axis();
    let h_l = s3.exp(-es.left) * fl.inverse();
    let h_r = fr * s3.exp(-es.right);

    let isometry = Isometry { g_l, g_r, h_l, h_r };
    let mut params = *p;
    params.l = UnitTimelikeVector::AXIS;
    params.r = UnitTimelikeVector::AXIS;
    params.g0 = AlgebraElement::basis(1).exp(ea.theta);
    params.l_s = UnitSphereVector::AXIS;
    params.r_s = UnitSphereVector::AXIS;
    params.h0 = AlgebraElement::basis(1).exp(es.theta);
    Ok(Canonical {
        params,
        angles: CanonicalAngles {
            theta: ea.theta,
            theta_s: es.theta,
        },
        isometry,
    })
}

/// A point `(f, b, n)` of the simple family `m_s = n_s = −m = n > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimpleFamilyPoint {
    pub f: f64,
    pub b: f64,
    pub n: i64,
}

impl SimpleFamilyPoint {
    /// Validates `n > 0` and admissibility of `(f, b)`.
    pub fn new(f: f64, b: f64, n: i64) -> Result<Self> {
        bridge::check_region(f, b, n)?;
        Ok(Self { f, b, n })
    }

    pub fn invariants(&self) -> Result<InvariantBlock> {
        bridge::bridge(self.f, self.b, self.n)
    }

    /// Canonical solution with `g₀ = e^{θ t₁}`, `h₀ = e^{θ_s s₂}`.
    pub fn solution(&self) -> Result<SolutionParams> {
        let inv = self.invariants()?;
        let theta = 0.5 * inv.cosh2theta.max(1.0).acosh();
        let theta_s = 0.5 * inv.cos2theta_s.clamp(-1.0, 1.0).acos();
        Ok(SolutionParams {
            lambda: inv.lambda,
            rho: inv.rho,
            m: -self.n,
            n: self.n,
            l: UnitTimelikeVector::AXIS,
            r: UnitTimelikeVector::AXIS,
            g0: AlgebraElement::basis(1).exp(theta),
            lambda_s: inv.lambda_s,
            rho_s: inv.rho_s,
            m_s: self.n,
            n_s: self.n,
            l_s: UnitSphereVector::AXIS,
            r_s: UnitSphereVector::AXIS,
            h0: AlgebraElement::basis(1).exp(theta_s),
        })
    }
}

/// Sampled embedding coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub tau: f64,
    pub sigma: f64,
    /// `(Y^{0'}, Y^0, Y^1, Y^2)`
    pub y: [f64; 4],
    /// `(X₁, X₂, X₃, X₄)`
    pub x: [f64; 4],
}

/// Embedding coordinates on the product grid, `τ` outer and `σ` inner.
pub fn embedding_surface(p: &SolutionParams, taus: &[f64], sigmas: &[f64]) -> Vec<SurfacePoint> {
    let mut out = Vec::with_capacity(taus.len() * sigmas.len());
    for &tau in taus {
        for &sigma in sigmas {
            let (g, h) = p.evaluate(tau, sigma);
            out.push(SurfacePoint {
                tau,
                sigma,
                y: g.embedding(),
                x: h.embedding(),
            });
        }
    }
    out
}

/// Number of σ samples used for winding extraction; keeps steps below `π/(4 n_max)`.
pub fn winding_samples(p: &SolutionParams) -> usize {
    let n_max = [p.m, p.n, p.m_s, p.n_s].iter().map(|k| k.unsigned_abs()).max().unwrap_or(0);
    (8 * n_max as usize).max(64)
}

/// Windings of the canonical solution around the `(Y¹,Y²)` and `(X₃,X₄)` circles per σ-cycle.
///
/// Signs are oriented so that the simple family returns `(n, n)`.
pub fn winding_numbers(p: &SolutionParams) -> Result<(i64, i64)> {
    let c = canonical_form(p)?.params;
    let steps = winding_samples(p);
    let mut ads = Unwrap::default();
    let mut sph = Unwrap::default();
    for k in 0..=steps {
        let sigma = TAU * k as f64 / steps as f64;
        let (g, h) = c.evaluate(0.0, sigma);
        let y = g.embedding();
        let x = h.embedding();
        if y[2].hypot(y[3]) < 1e-12 {
            return Err(Error::UndefinedWinding("AdS projection onto (Y1, Y2) collapses"));
        }
        if x[2].hypot(x[3]) < 1e-12 {
            return Err(Error::UndefinedWinding("sphere projection onto (X3, X4) collapses"));
        }
        ads.push(y[3].atan2(y[2]));
        sph.push(x[2].atan2(x[3]));
    }
    Ok(((-ads.total / TAU).round() as i64, (sph.total / TAU).round() as i64))
}

#[derive(Default)]
struct Unwrap {
    last: Option<f64>,
    total: f64,
}

impl Unwrap {
    fn push(&mut self, angle: f64) {
        if let Some(prev) = self.last {
            let mut d = angle - prev;
            d -= TAU * (d / TAU).round();
            self.total += d;
        }
        self.last = Some(angle);
    }
}
