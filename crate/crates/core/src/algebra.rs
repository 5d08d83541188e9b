//! 2×2 matrix algebra for SL(2,R) ≅ AdS₃ and SU(2) ≅ S³.
//!
//! Both groups are handled through the [`Sector`] trait. Lie algebra elements
//! are stored as coefficient triples in the standard bases
//!
//! * AdS: `t₀ = [[0,1],[-1,0]]`, `t₁ = [[0,1],[1,0]]`, `t₂ = [[1,0],[0,-1]]`,
//!   with `⟨u,v⟩ = ½ tr(uv)` and metric `diag(-1, 1, 1)`;
//! * sphere: `s_n = iσ_n`, with `⟨u,v⟩ = -½ tr(uv)` and metric `diag(1, 1, 1)`.
//!
//! Group elements are identified with embedding coordinates
//! `g = Y^{0'} I + Y^μ t_μ` and `h = X₄ I + X_n s_n`.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Debug;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{ComplexField, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used by constructors when validating group and unit-norm constraints.
pub const VALIDATION_TOL: f64 = 1e-10;

/// Below this `|⟨v,v⟩|` the exponential switches to its power series.
const PARABOLIC_EPS: f64 = 1e-10;

/// Metric of `sl(2,R)` in the basis `t_μ`.
pub const ETA: [f64; 3] = [-1.0, 1.0, 1.0];

/// Levi-Civita symbol with all indices down, `ε₀₁₂ = 1`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// `ε_{μν}^ρ` for `sl(2,R)`: last index raised with `η`.
pub fn levi_civita_mixed(mu: usize, nu: usize, rho: usize) -> f64 {
    levi_civita(mu, nu, rho) * ETA[rho]
}

/// One of the two simple factors of the target space.
pub trait Sector: Copy + Clone + Debug + PartialEq + Default + Send + Sync + 'static {
    /// Matrix entries: `f64` for SL(2,R), `Complex64` for SU(2).
    type Entry: ComplexField<RealField = f64> + Copy;

    const NAME: &'static str;
    /// Diagonal of the inner product in the standard basis.
    const METRIC: [f64; 3];
    /// `⟨u,v⟩ = TRACE_SIGN · ½ Re tr(uv)`; also `v² = TRACE_SIGN ⟨v,v⟩ I`.
    const TRACE_SIGN: f64;
    /// `Y·Y` (AdS) or `X·X` (sphere) on the group manifold.
    const EMBEDDING_NORM: f64;
    /// Signature of the embedding-space dot product.
    const EMBEDDING_METRIC: [f64; 4];
    /// Basis index of the reference axis (`t₀` or `s₃`) used by charts and frames.
    const AXIS: usize;
    /// SU(2) is compact: unit vectors rotate rather than boost.
    const COMPACT: bool;

    fn basis(i: usize) -> Matrix2<Self::Entry>;
    fn embedding(m: &Matrix2<Self::Entry>) -> [f64; 4];
    fn from_embedding_unchecked(x: &[f64; 4]) -> Matrix2<Self::Entry>;
    /// Residual of membership beyond the determinant (unitarity for SU(2)).
    fn extra_residual(m: &Matrix2<Self::Entry>) -> f64;
}

/// SL(2,R), the AdS₃ factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Ads;

/// SU(2), the S³ factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Sphere;

impl Sector for Ads {
    type Entry = f64;
    const NAME: &'static str = "sl2r";
    const METRIC: [f64; 3] = ETA;
    const TRACE_SIGN: f64 = 1.0;
    const EMBEDDING_NORM: f64 = -1.0;
    const EMBEDDING_METRIC: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];
    const AXIS: usize = 0;
    const COMPACT: bool = false;

    fn basis(i: usize) -> Matrix2<f64> {
        match i {
            0 => Matrix2::new(0.0, 1.0, -1.0, 0.0),
            1 => Matrix2::new(0.0, 1.0, 1.0, 0.0),
            2 => Matrix2::new(1.0, 0.0, 0.0, -1.0),
            _ => panic!("sl(2,R) basis index {i} out of range"),
        }
    }

    /// `(Y^{0'}, Y^0, Y^1, Y^2)`
    fn embedding(m: &Matrix2<f64>) -> [f64; 4] {
        [
            0.5 * (m[(0, 0)] + m[(1, 1)]),
            0.5 * (m[(0, 1)] - m[(1, 0)]),
            0.5 * (m[(0, 1)] + m[(1, 0)]),
            0.5 * (m[(0, 0)] - m[(1, 1)]),
        ]
    }

    fn from_embedding_unchecked(y: &[f64; 4]) -> Matrix2<f64> {
        Matrix2::new(y[0] + y[3], y[2] + y[1], y[2] - y[1], y[0] - y[3])
    }

    fn extra_residual(_: &Matrix2<f64>) -> f64 {
        0.0
    }
}

impl Sector for Sphere {
    type Entry = Complex64;
    const NAME: &'static str = "su2";
    const METRIC: [f64; 3] = [1.0, 1.0, 1.0];
    const TRACE_SIGN: f64 = -1.0;
    const EMBEDDING_NORM: f64 = 1.0;
    const EMBEDDING_METRIC: [f64; 4] = [1.0, 1.0, 1.0, 1.0];
    const AXIS: usize = 2;
    const COMPACT: bool = true;

    fn basis(i: usize) -> Matrix2<Complex64> {
        let (o, z, i1) = (Complex64::ONE, Complex64::ZERO, Complex64::I);
        match i {
            0 => Matrix2::new(z, i1, i1, z),
            1 => Matrix2::new(z, o, -o, z),
            2 => Matrix2::new(i1, z, z, -i1),
            _ => panic!("su(2) basis index {i} out of range"),
        }
    }

    /// `(X₁, X₂, X₃, X₄)`
    fn embedding(m: &Matrix2<Complex64>) -> [f64; 4] {
        [
            0.5 * (m[(0, 1)] + m[(1, 0)]).im,
            0.5 * (m[(0, 1)] - m[(1, 0)]).re,
            0.5 * (m[(0, 0)] - m[(1, 1)]).im,
            0.5 * (m[(0, 0)] + m[(1, 1)]).re,
        ]
    }

    fn from_embedding_unchecked(x: &[f64; 4]) -> Matrix2<Complex64> {
        Matrix2::new(
            Complex64::new(x[3], x[2]),
            Complex64::new(x[1], x[0]),
            Complex64::new(-x[1], x[0]),
            Complex64::new(x[3], -x[2]),
        )
    }

    fn extra_residual(m: &Matrix2<Complex64>) -> f64 {
        (m.adjoint() * m - Matrix2::identity()).camax()
    }
}

/// Inner product of two algebra matrices of sector `S`.
pub fn trace_inner<S: Sector>(a: &Matrix2<S::Entry>, b: &Matrix2<S::Entry>) -> f64 {
    S::TRACE_SIGN * 0.5 * (a * b).trace().real()
}

/// Lie algebra element `v^i e_i` with real coefficients.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", transparent)]
pub struct AlgebraElement<S: Sector> {
    pub coeffs: [f64; 3],
    #[serde(skip)]
    _sector: PhantomData<S>,
}

pub type AdsAlgebraElement = AlgebraElement<Ads>;
pub type SphereAlgebraElement = AlgebraElement<Sphere>;

impl<S: Sector> Debug for AlgebraElement<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:?}", S::NAME, self.coeffs)
    }
}

impl<S: Sector> AlgebraElement<S> {
    pub const fn new(coeffs: [f64; 3]) -> Self {
        Self {
            coeffs,
            _sector: PhantomData,
        }
    }

    pub const fn zero() -> Self {
        Self::new([0.0; 3])
    }

    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 3];
        c[i] = 1.0;
        Self::new(c)
    }

    /// The reference axis `t₀` or `s₃`.
    pub fn axis() -> Self {
        Self::basis(S::AXIS)
    }

    pub fn matrix(&self) -> Matrix2<S::Entry> {
        (0..3).fold(Matrix2::zeros(), |acc, i| {
            acc + S::basis(i) * S::Entry::from_real(self.coeffs[i])
        })
    }

    /// Projection of a matrix onto the algebra (the traceless part, for valid input).
    pub fn from_matrix(m: &Matrix2<S::Entry>) -> Self {
        let mut c = [0.0; 3];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = S::METRIC[i] * trace_inner::<S>(&S::basis(i), m);
        }
        Self::new(c)
    }

    pub fn inner(&self, other: &Self) -> f64 {
        (0..3)
            .map(|i| S::METRIC[i] * self.coeffs[i] * other.coeffs[i])
            .sum()
    }

    pub fn norm2(&self) -> f64 {
        self.inner(self)
    }

    /// Components with the index lowered, `v_i = ⟨e_i, v⟩`.
    pub fn lowered(&self) -> [f64; 3] {
        [
            S::METRIC[0] * self.coeffs[0],
            S::METRIC[1] * self.coeffs[1],
            S::METRIC[2] * self.coeffs[2],
        ]
    }

    pub fn commutator(&self, other: &Self) -> Self {
        let (a, b) = (self.matrix(), other.matrix());
        Self::from_matrix(&(a * b - b * a))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.map(|c| c * s))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// `exp(θ v)` by trace classification, without input checks.
    ///
    /// With `v² = q I`: `q < 0` gives `cos(wθ) I + sin(wθ)/w v`, `q > 0` the
    /// hyperbolic analogue, and `|q|` below `1e-10` the power series.
    pub fn exp(&self, theta: f64) -> GroupElement<S> {
        let q = S::TRACE_SIGN * self.norm2();
        let (c, s) = if q.abs() < PARABOLIC_EPS && (theta * theta * q).abs() < 1.0 {
            exp_series(theta * theta * q, theta)
        } else if q < 0.0 {
            let w = (-q).sqrt();
            ((w * theta).cos(), (w * theta).sin() / w)
        } else {
            let w = q.sqrt();
            ((w * theta).cosh(), (w * theta).sinh() / w)
        };
        let m = Matrix2::identity() * S::Entry::from_real(c) + self.matrix() * S::Entry::from_real(s);
        GroupElement::from_matrix_unchecked(m)
    }
}

/// `(C(x), θ S(x))` with `C(x) = Σ x^k/(2k)!`, `S(x) = Σ x^k/(2k+1)!`.
fn exp_series(x: f64, theta: f64) -> (f64, f64) {
    let (mut c, mut s) = (0.0, 0.0);
    let (mut tc, mut ts) = (1.0, 1.0);
    for k in 0..20 {
        c += tc;
        s += ts;
        let k = k as f64;
        tc *= x / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        ts *= x / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        if tc.abs() < 1e-18 && ts.abs() < 1e-18 {
            break;
        }
    }
    (c, theta * s)
}

impl<S: Sector> Add for AlgebraElement<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new([
            self.coeffs[0] + o.coeffs[0],
            self.coeffs[1] + o.coeffs[1],
            self.coeffs[2] + o.coeffs[2],
        ])
    }
}

impl<S: Sector> Sub for AlgebraElement<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<S: Sector> Neg for AlgebraElement<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<S: Sector> Mul<AlgebraElement<S>> for f64 {
    type Output = AlgebraElement<S>;
    fn mul(self, v: AlgebraElement<S>) -> AlgebraElement<S> {
        v.scale(self)
    }
}

/// Algebra element tagged with its sector at runtime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnyAlgebraElement {
    Ads(AdsAlgebraElement),
    Sphere(SphereAlgebraElement),
}

impl AnyAlgebraElement {
    pub fn inner(&self, other: &Self) -> Result<f64> {
        match (self, other) {
            (Self::Ads(u), Self::Ads(v)) => Ok(u.inner(v)),
            (Self::Sphere(u), Self::Sphere(v)) => Ok(u.inner(v)),
            _ => Err(Error::MixedSectors),
        }
    }
}

/// `exp(θ v)`, rejecting non-finite input.
pub fn exp_algebra<S: Sector>(v: &AlgebraElement<S>, theta: f64) -> Result<GroupElement<S>> {
    if !v.is_finite() || !theta.is_finite() {
        return Err(Error::NonFinite("exponential argument"));
    }
    Ok(v.exp(theta))
}

/// Element of SL(2,R) or SU(2).
#[derive(Clone, Copy, PartialEq)]
pub struct GroupElement<S: Sector> {
    m: Matrix2<S::Entry>,
}

pub type AdsGroupElement = GroupElement<Ads>;
pub type SphereGroupElement = GroupElement<Sphere>;

impl<S: Sector> Debug for GroupElement<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}Group{:?}", S::NAME, self.embedding())
    }
}

impl<S: Sector> GroupElement<S> {
    pub fn identity() -> Self {
        Self::from_matrix_unchecked(Matrix2::identity())
    }

    /// Wraps a matrix after checking `det = 1` (and unitarity for SU(2)).
    pub fn new(m: Matrix2<S::Entry>) -> Result<Self> {
        let g = Self::from_matrix_unchecked(m);
        if !g.embedding().iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("group element"));
        }
        let det = g.det_residual();
        if det > VALIDATION_TOL {
            return Err(Error::GroupConstraint {
                what: "determinant",
                residual: det,
            });
        }
        let extra = S::extra_residual(&m);
        if extra > VALIDATION_TOL {
            return Err(Error::GroupConstraint {
                what: "unitarity",
                residual: extra,
            });
        }
        Ok(g)
    }

    pub fn from_matrix_unchecked(m: Matrix2<S::Entry>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix2<S::Entry> {
        &self.m
    }

    pub fn det_residual(&self) -> f64 {
        (self.m.determinant() - S::Entry::from_real(1.0)).modulus()
    }

    pub fn unitarity_residual(&self) -> f64 {
        S::extra_residual(&self.m)
    }

    /// Inverse through the adjugate; exact for unit determinant.
    pub fn inverse(&self) -> Self {
        let m = &self.m;
        Self::from_matrix_unchecked(Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked(self.m * other.m)
    }

    /// `Ad_g v = g v g⁻¹`.
    pub fn adjoint(&self, v: &AlgebraElement<S>) -> AlgebraElement<S> {
        AlgebraElement::from_matrix(&(self.m * v.matrix() * self.inverse().m))
    }

    pub fn embedding(&self) -> [f64; 4] {
        S::embedding(&self.m)
    }

    pub fn from_embedding(x: [f64; 4]) -> Result<Self> {
        if !x.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("embedding coordinates"));
        }
        let norm = embedding_dot::<S>(&x, &x);
        if (norm - S::EMBEDDING_NORM).abs() > VALIDATION_TOL {
            return Err(Error::EmbeddingConstraint {
                norm,
                expected: S::EMBEDDING_NORM,
            });
        }
        Ok(Self::from_matrix_unchecked(S::from_embedding_unchecked(&x)))
    }

    /// Largest entry of `|self - other|`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.m - other.m).camax()
    }
}

impl<S: Sector> Mul for GroupElement<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.compose(&o)
    }
}

impl<S: Sector> Serialize for GroupElement<S> {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.embedding().serialize(s)
    }
}

impl<'de, S: Sector> Deserialize<'de> for GroupElement<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = <[f64; 4]>::deserialize(d)?;
        Self::from_embedding(x).map_err(serde::de::Error::custom)
    }
}

/// Dot product on the embedding space (`R^{2,2}` or `R^4`).
pub fn embedding_dot<S: Sector>(x: &[f64; 4], y: &[f64; 4]) -> f64 {
    (0..4).map(|i| S::EMBEDDING_METRIC[i] * x[i] * y[i]).sum()
}

/// Unit timelike element `l̂ = cosh ψ t₀ + sinh ψ (cos φ t₁ + sin φ t₂)`, future-directed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitTimelikeVector {
    pub rapidity: f64,
    pub angle: f64,
}

impl UnitTimelikeVector {
    pub const AXIS: Self = Self {
        rapidity: 0.0,
        angle: 0.0,
    };

    pub fn new(rapidity: f64, angle: f64) -> Self {
        Self { rapidity, angle }.normalized()
    }

    /// Rapidity non-negative and angle in `[0, 2π)`.
    pub fn normalized(self) -> Self {
        let (r, a) = if self.rapidity < 0.0 {
            (-self.rapidity, self.angle + std::f64::consts::PI)
        } else {
            (self.rapidity, self.angle)
        };
        Self {
            rapidity: r,
            angle: wrap_angle(a),
        }
    }

    pub fn element(&self) -> AdsAlgebraElement {
        let (c, s) = (self.rapidity.cosh(), self.rapidity.sinh());
        AlgebraElement::new([c, s * self.angle.cos(), s * self.angle.sin()])
    }

    pub fn from_element(v: &AdsAlgebraElement) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite("unit timelike vector"));
        }
        if (v.norm2() + 1.0).abs() > VALIDATION_TOL {
            return Err(Error::UnitVector(format!("⟨l,l⟩ = {} ≠ -1", v.norm2())));
        }
        if v.coeffs[0] <= 0.0 {
            return Err(Error::UnitVector("timelike vector is past-directed".into()));
        }
        let rho = v.coeffs[1].hypot(v.coeffs[2]);
        Ok(Self {
            rapidity: rho.asinh(),
            angle: wrap_angle(v.coeffs[2].atan2(v.coeffs[1])),
        })
    }
}

/// Unit element `ŝ = cos ϑ s₃ + sin ϑ (cos φ s₁ + sin φ s₂)` of su(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSphereVector {
    pub polar: f64,
    pub azimuth: f64,
}

impl UnitSphereVector {
    pub const AXIS: Self = Self {
        polar: 0.0,
        azimuth: 0.0,
    };

    pub fn new(polar: f64, azimuth: f64) -> Self {
        Self { polar, azimuth }.normalized()
    }

    /// Polar angle in `[0, π]`, azimuth in `[0, 2π)`.
    pub fn normalized(self) -> Self {
        let v = self.element();
        Self::from_element(&v).unwrap_or(self)
    }

    pub fn element(&self) -> SphereAlgebraElement {
        let (c, s) = (self.polar.cos(), self.polar.sin());
        AlgebraElement::new([s * self.azimuth.cos(), s * self.azimuth.sin(), c])
    }

    pub fn from_element(v: &SphereAlgebraElement) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite("unit sphere vector"));
        }
        if (v.norm2() - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::UnitVector(format!("⟨s,s⟩ = {} ≠ 1", v.norm2())));
        }
        let rho = v.coeffs[0].hypot(v.coeffs[1]);
        Ok(Self {
            polar: rho.atan2(v.coeffs[2]),
            azimuth: wrap_angle(v.coeffs[1].atan2(v.coeffs[0])),
        })
    }
}

pub(crate) fn wrap_angle(a: f64) -> f64 {
    let t = std::f64::consts::TAU;
    let w = a.rem_euclid(t);
    if w >= t {
        0.0
    } else {
        w
    }
}

/// Result of [`normalized_commutator`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Commutator<S: Sector> {
    /// `n̂ = [l̂, r̂] / (2 sinh 2γ)` (AdS) or `/(2 sin 2γ)` (sphere).
    pub n: AlgebraElement<S>,
    pub gamma: f64,
    /// `sinh 2γ` or `sin 2γ`.
    pub s2: f64,
}

impl<S: Sector> Commutator<S> {
    /// `cosh 2γ` (AdS) or `cos 2γ` (sphere).
    pub fn c2(&self) -> f64 {
        if S::COMPACT {
            (2.0 * self.gamma).cos()
        } else {
            (2.0 * self.gamma).cosh()
        }
    }
}

/// Normalized commutator of two unit vectors together with their "angle" γ.
///
/// AdS: `cosh 2γ = -⟨l̂,r̂⟩`, and `n̂² = I`. Sphere: `cos 2γ = ⟨l̂,r̂⟩`, `n̂² = -I`.
/// In both cases `exp(n̂, -γ) r̂ exp(n̂, γ) = l̂`.
pub fn normalized_commutator<S: Sector>(
    l: &AlgebraElement<S>,
    r: &AlgebraElement<S>,
) -> Result<Commutator<S>> {
    let k = l.commutator(r);
    let s2 = 0.5 * k.norm2().abs().sqrt();
    if !(s2 > 1e-12) {
        return Err(Error::Degenerate(
            "parallel unit vectors have no normalized commutator".into(),
        ));
    }
    let c2 = if S::COMPACT { l.inner(r) } else { -l.inner(r) };
    let gamma = if S::COMPACT {
        0.5 * s2.atan2(c2)
    } else {
        0.5 * s2.asinh()
    };
    Ok(Commutator {
        n: k.scale(0.5 / s2),
        gamma,
        s2,
    })
}

/// `exp(-α n̂) r̂ exp(α n̂)`, the boost (rotation, for SU(2)) of `r̂` towards `l̂`.
pub fn boost<S: Sector>(alpha: f64, n: &AlgebraElement<S>, r: &AlgebraElement<S>) -> AlgebraElement<S> {
    n.exp(-alpha).adjoint(r)
}

/// Group element `F` with `Ad_F(axis) = v̂` for a unit vector `v̂`.
///
/// For `v̂` equal to the axis this is the identity; the SU(2) antipode uses a
/// half-turn about `s₁`.
pub fn frame<S: Sector>(v: &AlgebraElement<S>) -> GroupElement<S> {
    let axis = AlgebraElement::<S>::axis();
    match normalized_commutator(v, &axis) {
        Ok(c) => c.n.exp(-c.gamma),
        Err(_) if S::COMPACT && v.inner(&axis) < 0.0 => AlgebraElement::<S>::basis(0).exp(FRAC_PI_2),
        Err(_) => GroupElement::identity(),
    }
}

/// Euler decomposition `g = exp(a·axis) exp(θ·e) exp(b·axis)` with `θ ≥ 0`,
/// where `e = t₁` (AdS) or `s₂` (sphere).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub left: f64,
    pub theta: f64,
    pub right: f64,
}

pub fn euler_ads(g: &AdsGroupElement) -> EulerAngles {
    let [y0p, y0, y1, y2] = g.embedding();
    let ch = y0p.hypot(y0);
    let sh = y1.hypot(y2);
    let eta = y0.atan2(y0p);
    let xi = if sh > 0.0 { y2.atan2(y1) } else { 0.0 };
    EulerAngles {
        left: 0.5 * (eta + xi),
        theta: sh.atan2(ch).tan().atanh(),
        right: 0.5 * (eta - xi),
    }
}

pub fn euler_sphere(h: &SphereGroupElement) -> EulerAngles {
    let m = h.matrix();
    let (a, b) = (m[(0, 0)], m[(0, 1)]);
    let xi = a.im.atan2(a.re);
    let eta = if b.norm() > 0.0 { b.im.atan2(b.re) } else { 0.0 };
    EulerAngles {
        left: 0.5 * (xi + eta),
        theta: b.norm().atan2(a.norm()),
        right: 0.5 * (xi - eta),
    }
}

/// Maximum entrywise residual of `e_i e_j = METRIC_ij I + (structure) e_k` for the basis.
///
/// AdS: `t_μ t_ν = η_{μν} I + ε_{μν}^ρ t_ρ`; sphere: `s_m s_n = -δ_{mn} I - ε_{mnl} s_l`.
pub fn basis_product_residual<S: Sector>() -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let lhs = S::basis(i) * S::basis(j);
            let mut rhs = Matrix2::<S::Entry>::identity() * S::Entry::from_real(S::TRACE_SIGN * S::METRIC[i] * if i == j { 1.0 } else { 0.0 });
            for k in 0..3 {
                let c = if S::COMPACT {
                    -levi_civita(i, j, k)
                } else {
                    levi_civita_mixed(i, j, k)
                };
                rhs += S::basis(k) * S::Entry::from_real(c);
            }
            worst = worst.max((lhs - rhs).camax());
        }
    }
    worst
}
