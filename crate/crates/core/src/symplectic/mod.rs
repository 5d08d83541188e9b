//! Symplectic structure of the particle and string phase spaces.
//!
//! Two-forms are stored as `W_ij = ω(∂_i, ∂_j)` and brackets are
//! `{F,G} = −∇Fᵀ W⁻¹ ∇G`; with this sign the left AdS charges satisfy
//! `{L₁, L₂} = 2L₀`.

pub mod form;
pub mod orbit;
pub mod particle;
pub mod poisson;
pub mod string;

pub use form::TwoFormMatrix;
pub use particle::{ParticleChartPoint, ParticlePhaseSpace};
pub use poisson::{bracket_table, BracketTable, Observables, PhaseSpace};
pub use string::{StringChartPoint, StringPhaseSpace};

use crate::algebra::{trace_inner, Ads, AdsAlgebraElement, AdsGroupElement, Sector, Sphere, SphereAlgebraElement, SphereGroupElement};

/// Embedding coordinates `(Y, X)` of a pair `(g, h)`.
pub(crate) fn pair_embedding(g: &AdsGroupElement, h: &SphereGroupElement) -> [f64; 8] {
    let (y, x) = (g.embedding(), h.embedding());
    [y[0], y[1], y[2], y[3], x[0], x[1], x[2], x[3]]
}

/// `⟨R, g⁻¹δg⟩ + ⟨R_s, h⁻¹δh⟩` for a variation given in embedding coordinates.
pub(crate) fn canonical_pairing(
    g: &AdsGroupElement,
    h: &SphereGroupElement,
    r: &AdsAlgebraElement,
    r_s: &SphereAlgebraElement,
    delta: &[f64; 8],
) -> f64 {
    let dg = Ads::from_embedding_unchecked(&[delta[0], delta[1], delta[2], delta[3]]);
    let dh = Sphere::from_embedding_unchecked(&[delta[4], delta[5], delta[6], delta[7]]);
    trace_inner::<Ads>(&r.matrix(), &(g.inverse().matrix() * dg))
        + trace_inner::<Sphere>(&r_s.matrix(), &(h.inverse().matrix() * dh))
}
