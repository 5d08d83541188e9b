//! Poisson brackets of the isometry charges on a chart, with the expected
//! `sl(2,R) ⊕ sl(2,R) ⊕ su(2) ⊕ su(2)` structure constants.

use nalgebra::DMatrix;
use serde::Serialize;

use super::form::{bracket, TwoFormMatrix};
use crate::algebra::{levi_civita, levi_civita_mixed};
use crate::diff::Stencil;
use crate::error::{Error, Result};

/// Number of charge components (`L`, `R`, `L_s`, `R_s`, three each).
pub const CHARGES: usize = 12;
/// Charge components followed by the four orbit coefficients.
pub const OBSERVABLES: usize = 16;

pub const OBSERVABLE_LABELS: [&str; OBSERVABLES] = [
    "L0", "L1", "L2", "R0", "R1", "R2", "Ls1", "Ls2", "Ls3", "Rs1", "Rs2", "Rs3", "mL", "mR", "mL_s", "mR_s",
];

/// Lowered charge components and the (signed) orbit coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observables {
    pub l: [f64; 3],
    pub r: [f64; 3],
    pub l_s: [f64; 3],
    pub r_s: [f64; 3],
    pub casimirs: [f64; 4],
}

impl Observables {
    pub fn to_array(&self) -> [f64; OBSERVABLES] {
        let mut out = [0.0; OBSERVABLES];
        out[0..3].copy_from_slice(&self.l);
        out[3..6].copy_from_slice(&self.r);
        out[6..9].copy_from_slice(&self.l_s);
        out[9..12].copy_from_slice(&self.r_s);
        out[12..16].copy_from_slice(&self.casimirs);
        out
    }
}

/// A chart carrying a symplectic form and the charge functions.
pub trait PhaseSpace {
    fn labels(&self) -> Vec<String>;
    fn form(&self, x: &[f64]) -> Result<TwoFormMatrix>;
    fn observables(&self, x: &[f64]) -> Result<Observables>;

    fn dim(&self) -> usize {
        self.labels().len()
    }
}

/// Expected `{Q_a, Q_b}` for charge indices `a, b < 12`:
/// `{L_μ,L_ν} = −2ε_{μν}^ρL_ρ`, `{R_μ,R_ν} = 2ε_{μν}^ρR_ρ`,
/// `{L^s_m,L^s_n} = 2ε_{mnl}L^s_l`, `{R^s_m,R^s_n} = −2ε_{mnl}R^s_l`, all others zero.
pub fn expected_bracket(q: &[f64; OBSERVABLES], a: usize, b: usize) -> f64 {
    if a >= CHARGES || b >= CHARGES || a / 3 != b / 3 {
        return 0.0;
    }
    let block = a / 3;
    let (mu, nu) = (a % 3, b % 3);
    (0..3)
        .map(|rho| {
            let (eps, sign) = match block {
                0 => (levi_civita_mixed(mu, nu, rho), -2.0),
                1 => (levi_civita_mixed(mu, nu, rho), 2.0),
                2 => (levi_civita(mu, nu, rho), 2.0),
                _ => (levi_civita(mu, nu, rho), -2.0),
            };
            sign * eps * q[3 * block + rho]
        })
        .sum()
}

/// Gradients of all observables, one row per chart coordinate.
fn observable_gradients(space: &impl PhaseSpace, x: &[f64], st: &Stencil) -> Result<DMatrix<f64>> {
    let f = |y: &[f64]| space.observables(y).map(|o| o.to_array()).unwrap_or([f64::NAN; OBSERVABLES]);
    let mut g = DMatrix::zeros(x.len(), OBSERVABLES);
    for i in 0..x.len() {
        let d = st.partial(x, i, f);
        if d.iter().any(|v| !v.is_finite()) {
            return Err(Error::ChartSingular("finite-difference stencil left the chart"));
        }
        for (k, v) in d.iter().enumerate() {
            g[(i, k)] = *v;
        }
    }
    Ok(g)
}

/// All brackets `{O_a, O_b}` at `x`.
pub fn bracket_matrix(space: &impl PhaseSpace, x: &[f64], st: &Stencil) -> Result<DMatrix<f64>> {
    let p = space.form(x)?.poisson_tensor()?;
    let g = observable_gradients(space, x, st)?;
    Ok(g.transpose() * p * g)
}

/// Bracket table at one chart point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketTable {
    pub point: Vec<f64>,
    pub observables: Observables,
    /// `{Q_a, Q_b}` for the twelve charge components.
    pub charges: Vec<Vec<f64>>,
    pub expected: Vec<Vec<f64>>,
    /// Largest `|{Q_a,Q_b}` − expected`|`.
    pub algebra_residual: f64,
    /// Largest `|{m, Q}|` over orbit coefficients `m` and all observables.
    pub casimir_residual: f64,
    pub condition_number: f64,
}

pub fn bracket_table(space: &impl PhaseSpace, x: &[f64], st: &Stencil) -> Result<BracketTable> {
    let form = space.form(x)?;
    let p = form.poisson_tensor()?;
    let obs = space.observables(x)?;
    let q = obs.to_array();
    let g = observable_gradients(space, x, st)?;
    let b = g.transpose() * p * g;
    let mut charges = vec![vec![0.0; CHARGES]; CHARGES];
    let mut expected = vec![vec![0.0; CHARGES]; CHARGES];
    let mut algebra: f64 = 0.0;
    for i in 0..CHARGES {
        for j in 0..CHARGES {
            charges[i][j] = b[(i, j)];
            expected[i][j] = expected_bracket(&q, i, j);
            algebra = algebra.max((b[(i, j)] - expected[i][j]).abs());
        }
    }
    let mut casimir: f64 = 0.0;
    for i in CHARGES..OBSERVABLES {
        for j in 0..OBSERVABLES {
            casimir = casimir.max(b[(i, j)].abs());
        }
    }
    Ok(BracketTable {
        point: x.to_vec(),
        observables: obs,
        charges,
        expected,
        algebra_residual: algebra,
        casimir_residual: casimir,
        condition_number: form.condition_number(),
    })
}

/// Largest `|{A,{B,C}} + {B,{C,A}} + {C,{A,B}}|` over triples of charge components,
/// with the inner brackets differentiated numerically.
pub fn jacobi_residual(space: &impl PhaseSpace, x: &[f64], st: &Stencil) -> Result<f64> {
    let inner = |y: &[f64]| -> Vec<f64> {
        match bracket_matrix(space, y, st) {
            Ok(b) => (0..CHARGES * CHARGES).map(|k| b[(k / CHARGES, k % CHARGES)]).collect(),
            Err(_) => vec![f64::NAN; CHARGES * CHARGES],
        }
    };
    // dB[i][a·12 + b] = ∂_i {Q_a, Q_b}
    let db: Vec<Vec<f64>> = (0..x.len()).map(|i| st.partial(x, i, inner)).collect();
    if db.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::ChartSingular("finite-difference stencil left the chart"));
    }
    let p = space.form(x)?.poisson_tensor()?;
    let g = observable_gradients(space, x, st)?;
    let grad_of = |a: usize| -> Vec<f64> { (0..x.len()).map(|i| g[(i, a)]).collect() };
    let grad_bracket = |a: usize, b: usize| -> Vec<f64> { db.iter().map(|row| row[a * CHARGES + b]).collect() };
    let mut worst: f64 = 0.0;
    for a in 0..CHARGES {
        for b in a + 1..CHARGES {
            for c in b + 1..CHARGES {
                let j = bracket(&p, &grad_of(a), &grad_bracket(b, c))
                    + bracket(&p, &grad_of(b), &grad_bracket(c, a))
                    + bracket(&p, &grad_of(c), &grad_bracket(a, b));
                worst = worst.max(j.abs());
            }
        }
    }
    Ok(worst)
}

/// Largest `|∂_i W_jk + ∂_j W_ki + ∂_k W_ij|` over coordinate triples.
pub fn closedness_residual(
    form: impl Fn(&[f64]) -> Result<TwoFormMatrix>,
    x: &[f64],
    st: &Stencil,
) -> Result<f64> {
    let n = x.len();
    let flat = |y: &[f64]| -> Vec<f64> {
        match form(y) {
            Ok(w) => w.matrix().iter().copied().collect(),
            Err(_) => vec![f64::NAN; n * n],
        }
    };
    // column-major flattening: W_jk sits at k·n + j
    let dw: Vec<Vec<f64>> = (0..n).map(|i| st.partial(x, i, flat)).collect();
    if dw.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::ChartSingular("finite-difference stencil left the chart"));
    }
    let w = |i: usize, j: usize, k: usize| dw[i][k * n + j];
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                worst = worst.max((w(i, j, k) + w(j, k, i) + w(k, i, j)).abs());
            }
        }
    }
    Ok(worst)
}
