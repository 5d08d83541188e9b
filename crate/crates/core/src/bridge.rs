//! The invariant bridge `(f, b, n) ↦ (θ, θ_s, μ, μ̄, α, β)` for the simple family,
//! the admissible region in the `(f, b)` plane, and a least-squares feasibility
//! check for general winding sectors.

use std::fmt;

use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the region inequalities, so that boundary points computed
/// in floating point (e.g. `f = f_max(b)`) stay admissible.
pub const REGION_SLACK: f64 = 1e-12;

/// Below this `μμ̄/n²` the angles α, β are reported as undefined.
const DEGENERATE_EPS: f64 = 1e-14;

/// First violated inequality of the admissible region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum RegionViolation {
    NonFinite,
    NonPositiveWinding { n: i64 },
    FBelowOne { f: f64 },
    BBelowOne { b: f64 },
    /// `cosh 2θ < 1`, equivalently `cos 2θ_s < −1`.
    FBelowB { f: f64, b: f64 },
    /// `cos 2θ_s > 1`, i.e. `f² − bf − 2 > 0`.
    Cos2ThetaSAboveOne { f: f64, b: f64, excess: f64 },
}

impl fmt::Display for RegionViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonFinite => write!(out, "f and b must be finite"),
            Self::NonPositiveWinding { n } => write!(out, "winding n = {n} must be positive"),
            Self::FBelowOne { f } => write!(out, "f = {f} < 1"),
            Self::BBelowOne { b } => write!(out, "b = {b} < 1"),
            Self::FBelowB { f, b } => {
                write!(out, "f = {f} < b = {b} (cosh2theta < 1)")
            }
            Self::Cos2ThetaSAboveOne { f, b, excess } => write!(
                out,
                "cos2theta_s out of range: f^2 - b f - 2 = {excess} > 0 at (f, b) = ({f}, {b})"
            ),
        }
    }
}

/// Upper edge of the admissible region, `f_max(b) = (b + √(b² + 8)) / 2`.
pub fn f_max(b: f64) -> f64 {
    0.5 * (b + b.mul_add(b, 8.0).sqrt())
}

/// `cosh 2θ = bf − b² + 1`
pub fn cosh2theta(f: f64, b: f64) -> f64 {
    b.mul_add(f - b, 1.0)
}

/// `cos 2θ_s = f² − bf − 1`
pub fn cos2theta_s(f: f64, b: f64) -> f64 {
    f.mul_add(f - b, -1.0)
}

fn region_violation(f: f64, b: f64) -> Option<RegionViolation> {
    if !f.is_finite() || !b.is_finite() {
        return Some(RegionViolation::NonFinite);
    }
    if f < 1.0 - REGION_SLACK {
        return Some(RegionViolation::FBelowOne { f });
    }
    if b < 1.0 - REGION_SLACK {
        return Some(RegionViolation::BBelowOne { b });
    }
    if f < b - REGION_SLACK * b {
        return Some(RegionViolation::FBelowB { f, b });
    }
    let excess = f.mul_add(f - b, -2.0);
    if excess > REGION_SLACK * f * f {
        return Some(RegionViolation::Cos2ThetaSAboveOne { f, b, excess });
    }
    None
}

/// Result of [`admissible`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub violation: Option<RegionViolation>,
}

/// `1 ≤ b ≤ f ≤ f_max(b)`, with the first violated inequality as diagnostic.
pub fn admissible(f: f64, b: f64) -> Admissibility {
    let violation = region_violation(f, b);
    Admissibility {
        admissible: violation.is_none(),
        violation,
    }
}

/// Errors with [`Error::Region`] unless `(f, b, n)` is admissible.
pub fn check_region(f: f64, b: f64, n: i64) -> Result<()> {
    if n <= 0 {
        return Err(Error::Region(RegionViolation::NonPositiveWinding { n }));
    }
    match region_violation(f, b) {
        Some(v) => Err(Error::Region(v)),
        None => Ok(()),
    }
}

/// `μ², μ̄²` and `cosh α` from the AdS relations alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdsSide {
    pub mu2: f64,
    pub mubar2: f64,
    pub cosh_alpha: Option<f64>,
}

/// `μ², μ̄²` and `cos β` from the sphere relations alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereSide {
    pub mu2: f64,
    pub mubar2: f64,
    pub cos_beta: Option<f64>,
}

/// `μ² = (n²/4)(f−1)(f+c)`, `μ̄² = (n²/4)(f+1)(f−c)`, `cosh α = e/√(e² − sinh² 2θ)`.
pub fn ads_side(f: f64, cosh2theta: f64, n: i64) -> AdsSide {
    let q = 0.25 * (n * n) as f64;
    let mu2 = q * (f - 1.0) * (f + cosh2theta);
    let mubar2 = q * (f + 1.0) * (f - cosh2theta);
    let e2 = (f * f - 1.0).max(0.0);
    let sinh2 = (cosh2theta * cosh2theta - 1.0).max(0.0);
    let cosh_alpha = (mu2.max(0.0) * mubar2.max(0.0)).sqrt() > DEGENERATE_EPS * q
        && e2 - sinh2 > 0.0;
    AdsSide {
        mu2,
        mubar2,
        cosh_alpha: cosh_alpha.then(|| e2.sqrt() / (e2 - sinh2).sqrt()),
    }
}

/// `μ² = (n²/4)(b+1)(b+c_s)`, `μ̄² = (n²/4)(b−1)(b−c_s)`, `cos β = a/√(a² + sin² 2θ_s)`.
///
/// The `+` under the root is the branch consistent with `4μμ̄ cos β = A²`.
pub fn sphere_side(b: f64, cos2theta_s: f64, n: i64) -> SphereSide {
    let q = 0.25 * (n * n) as f64;
    let mu2 = q * (b + 1.0) * (b + cos2theta_s);
    let mubar2 = q * (b - 1.0) * (b - cos2theta_s);
    let a2 = (b * b - 1.0).max(0.0);
    let sin2 = (1.0 - cos2theta_s * cos2theta_s).max(0.0);
    let defined = (mu2.max(0.0) * mubar2.max(0.0)).sqrt() > DEGENERATE_EPS * q && a2 + sin2 > 0.0;
    SphereSide {
        mu2,
        mubar2,
        cos_beta: defined.then(|| a2.sqrt() / (a2 + sin2).sqrt()),
    }
}

/// Which boundary pieces of the region a point sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Degeneracy {
    /// `f = 1`: `E = 0`, `μ = 0`.
    pub static_ads: bool,
    /// `b = 1`: `A = 0`, `μ̄ = 0`.
    pub static_sphere: bool,
    /// `f = b`: `θ = 0`, centre worldline.
    pub theta_zero: bool,
    /// `f = f_max`: `θ_s = 0`.
    pub theta_s_zero: bool,
    pub alpha_undefined: bool,
    pub beta_undefined: bool,
}

impl Degeneracy {
    pub fn any(&self) -> bool {
        self.static_ads
            || self.static_sphere
            || self.theta_zero
            || self.theta_s_zero
            || self.alpha_undefined
            || self.beta_undefined
    }
}

/// Isometry-invariant data of a simple-family point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantBlock {
    pub n: i64,
    pub f: f64,
    pub b: f64,
    pub e: f64,
    pub a: f64,
    #[serde(rename = "E")]
    pub big_e: f64,
    #[serde(rename = "F")]
    pub big_f: f64,
    #[serde(rename = "A")]
    pub big_a: f64,
    #[serde(rename = "B")]
    pub big_b: f64,
    pub lambda: f64,
    pub rho: f64,
    pub lambda_s: f64,
    pub rho_s: f64,
    pub cosh2theta: f64,
    pub cos2theta_s: f64,
    pub mu2: f64,
    pub mubar2: f64,
    pub mu: f64,
    pub mubar: f64,
    pub cosh_alpha: Option<f64>,
    pub cos_beta: Option<f64>,
    pub ads: AdsSide,
    pub sphere: SphereSide,
    /// Largest difference between the AdS-side and sphere-side `μ², μ̄²`.
    pub side_gap: f64,
    pub degenerate: Degeneracy,
}

impl InvariantBlock {
    /// `μμ̄ cosh α`; on the `μ̄ = 0` or `μ = 0` edges the finite limit `E²/4`.
    pub fn mu_mubar_cosh_alpha(&self) -> f64 {
        match self.cosh_alpha {
            Some(c) => self.mu * self.mubar * c,
            None => 0.25 * self.big_e * self.big_e,
        }
    }

    /// `μμ̄ cos β`; on degenerate edges the limit `A²/4`.
    pub fn mu_mubar_cos_beta(&self) -> f64 {
        match self.cos_beta {
            Some(c) => self.mu * self.mubar * c,
            None => 0.25 * self.big_a * self.big_a,
        }
    }

    /// `μ²μ̄² − (n⁴/16) e² (f² − cosh² 2θ)`
    pub fn product_identity_defect(&self) -> f64 {
        let n4 = ((self.n * self.n) as f64).powi(2);
        self.mu2 * self.mubar2
            - n4 / 16.0 * self.e * self.e * (self.f * self.f - self.cosh2theta * self.cosh2theta)
    }

    /// `(4μμ̄ cosh α − E², 4μμ̄ cos β − A²)`, zero where the angle is undefined.
    pub fn cross_identity_defects(&self) -> (f64, f64) {
        let p = self.mu * self.mubar;
        (
            self.cosh_alpha.map_or(0.0, |c| 4.0 * p * c - self.big_e * self.big_e),
            self.cos_beta.map_or(0.0, |c| 4.0 * p * c - self.big_a * self.big_a),
        )
    }
}

/// Solves the bridge relations at an admissible `(f, b, n)`.
///
/// Both sides are evaluated independently; the block carries the AdS-side
/// `μ², μ̄²` and the gap to the sphere side.
pub fn bridge(f: f64, b: f64, n: i64) -> Result<InvariantBlock> {
    check_region(f, b, n)?;
    let nf = n as f64;
    let e = (f * f - 1.0).max(0.0).sqrt();
    let a = (b * b - 1.0).max(0.0).sqrt();
    let (big_e, big_f, big_a, big_b) = (nf * e, nf * f, nf * a, nf * b);
    let c = cosh2theta(f, b).max(1.0);
    let cs = cos2theta_s(f, b).clamp(-1.0, 1.0);
    let ads = ads_side(f, c, n);
    let sphere = sphere_side(b, cs, n);
    let side_gap = (ads.mu2 - sphere.mu2)
        .abs()
        .max((ads.mubar2 - sphere.mubar2).abs());
    let mu2 = ads.mu2.max(0.0);
    let mubar2 = ads.mubar2.max(0.0);
    let scale = REGION_SLACK * (1.0 + f * f);
    let degenerate = Degeneracy {
        static_ads: e * e <= scale,
        static_sphere: a * a <= scale,
        theta_zero: c - 1.0 <= scale,
        theta_s_zero: 1.0 - cs <= scale,
        alpha_undefined: ads.cosh_alpha.is_none(),
        beta_undefined: sphere.cos_beta.is_none(),
    };
    Ok(InvariantBlock {
        n,
        f,
        b,
        e,
        a,
        big_e,
        big_f,
        big_a,
        big_b,
        lambda: 0.5 * (big_e + big_f),
        rho: 0.5 * (big_e - big_f),
        lambda_s: 0.5 * (big_a + big_b),
        rho_s: 0.5 * (big_b - big_a),
        cosh2theta: c,
        cos2theta_s: cs,
        mu2,
        mubar2,
        mu: mu2.sqrt(),
        mubar: mubar2.sqrt(),
        cosh_alpha: ads.cosh_alpha,
        cos_beta: sphere.cos_beta,
        ads,
        sphere,
        side_gap,
        degenerate,
    })
}

/// One row of a region scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub f: f64,
    pub b: f64,
    pub admissible: bool,
    pub cosh2theta: f64,
    pub cos2theta_s: f64,
    pub mu2: f64,
    pub mubar2: f64,
    pub cosh_alpha: Option<f64>,
    pub cos_beta: Option<f64>,
}

/// Uniform samples `lo + k (hi − lo)/(count − 1)`; a single sample sits at `lo`.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            (0..count)
                .map(|k| if k + 1 == count { hi } else { lo + step * k as f64 })
                .collect()
        }
    }
}

/// Evaluates the region on the product grid, `f` outer and `b` inner.
///
/// Inadmissible points still carry the polynomial invariants (which leave
/// their physical ranges there); `cosh α`, `cos β` are left empty.
pub fn scan_region(f: (f64, f64, usize), b: (f64, f64, usize), n: i64) -> Result<Vec<ScanRow>> {
    for (name, (lo, hi, count)) in [("f", f), ("b", b)] {
        if count == 0 {
            return Err(Error::EmptyGrid(format!("{name} axis has no points")));
        }
        if !(lo <= hi) {
            return Err(Error::EmptyGrid(format!("{name} range [{lo}, {hi}] is empty")));
        }
    }
    if n <= 0 {
        return Err(Error::Region(RegionViolation::NonPositiveWinding { n }));
    }
    let mut rows = Vec::with_capacity(f.2 * b.2);
    for fv in linspace(f.0, f.1, f.2) {
        for bv in linspace(b.0, b.1, b.2) {
            rows.push(match bridge(fv, bv, n) {
                Ok(inv) => ScanRow {
                    f: fv,
                    b: bv,
                    admissible: true,
                    cosh2theta: inv.cosh2theta,
                    cos2theta_s: inv.cos2theta_s,
                    mu2: inv.mu2,
                    mubar2: inv.mubar2,
                    cosh_alpha: inv.cosh_alpha,
                    cos_beta: inv.cos_beta,
                },
                Err(_) => {
                    let c = cosh2theta(fv, bv);
                    let ads = ads_side(fv, c, n);
                    ScanRow {
                        f: fv,
                        b: bv,
                        admissible: false,
                        cosh2theta: c,
                        cos2theta_s: cos2theta_s(fv, bv),
                        mu2: ads.mu2,
                        mubar2: ads.mubar2,
                        cosh_alpha: None,
                        cos_beta: None,
                    }
                }
            });
        }
    }
    Ok(rows)
}

/// Frequencies and invariants of a general winding sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorData {
    pub m: i64,
    pub n: i64,
    pub m_s: i64,
    pub n_s: i64,
    pub lambda: f64,
    pub rho: f64,
    pub cosh2theta: f64,
    pub lambda_s: f64,
    pub rho_s: f64,
    pub cos2theta_s: f64,
}

/// Outcome of [`feasibility_general`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// Euclidean norm of the least-squares residual.
    pub residual: f64,
    pub mu2: f64,
    pub mubar2: f64,
    /// Best-fit `μμ̄ cosh α` and `μμ̄ cos β`.
    pub mu_mubar_cosh_alpha: f64,
    pub mu_mubar_cos_beta: f64,
}

/// Least-squares test of whether the six metric–current relations of both
/// sectors admit a common `(μ², μ̄², μμ̄ cosh α, μμ̄ cos β)` with `μ², μ̄² ≥ 0`,
/// `cosh α ≥ 1` and `|cos β| ≤ 1`.
pub fn feasibility_general(d: &SectorData, tol: f64) -> Result<Feasibility> {
    if (d.m - d.n).rem_euclid(2) != 0 {
        return Err(Error::Parity(d.m, d.n));
    }
    if (d.m_s - d.n_s).rem_euclid(2) != 0 {
        return Err(Error::Parity(d.m_s, d.n_s));
    }
    let vals = [
        d.lambda,
        d.rho,
        d.cosh2theta,
        d.lambda_s,
        d.rho_s,
        d.cos2theta_s,
    ];
    if !vals.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("sector data"));
    }
    let (m, n, ms, ns) = (d.m as f64, d.n as f64, d.m_s as f64, d.n_s as f64);
    let (l, r, c) = (d.lambda, d.rho, d.cosh2theta);
    let (ls, rs, cs) = (d.lambda_s, d.rho_s, d.cos2theta_s);
    #[rustfmt::skip]
    let a = SMatrix::<f64, 6, 4>::from_row_slice(&[
        1.0, 1.0, 2.0, 0.0,
        1.0, 1.0, -2.0, 0.0,
        1.0, -1.0, 0.0, 0.0,
        1.0, 1.0, 0.0, 2.0,
        1.0, 1.0, 0.0, -2.0,
        1.0, -1.0, 0.0, 0.0,
    ]);
    let rhs = SVector::<f64, 6>::from_column_slice(&[
        l * l + r * r + 2.0 * l * r * c,
        0.25 * (m * m + n * n + 2.0 * m * n * c),
        0.5 * (l * m + r * n + (l * n + r * m) * c),
        ls * ls + rs * rs + 2.0 * ls * rs * cs,
        0.25 * (ms * ms + ns * ns + 2.0 * ms * ns * cs),
        0.5 * (ls * ms + rs * ns + (ls * ns + rs * ms) * cs),
    ]);
    let x = a
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::Degenerate(e.to_string()))?;
    let residual = (a * x - rhs).norm();
    let (u, v, p, q) = (x[0], x[1], x[2], x[3]);
    let scale = tol * (1.0 + rhs.amax());
    let root = (u.max(0.0) * v.max(0.0)).sqrt();
    let feasible = residual <= scale
        && u >= -scale
        && v >= -scale
        && p >= root - scale
        && q.abs() <= root + scale;
    Ok(Feasibility {
        feasible,
        residual,
        mu2: u,
        mubar2: v,
        mu_mubar_cosh_alpha: p,
        mu_mubar_cos_beta: q,
    })
}
