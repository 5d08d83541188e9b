//! Antisymmetric matrices of two-forms on a coordinate chart and the Poisson
//! tensor obtained by inverting them.

use nalgebra::DMatrix;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::diff::Stencil;
use crate::error::{Error, Result};

/// Smallest singular value below which a form is treated as degenerate.
pub const SINGULAR_TOL: f64 = 1e-10;

/// `W_ij = ω(∂_i, ∂_j)` over labelled chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFormMatrix {
    labels: Vec<String>,
    matrix: DMatrix<f64>,
}

impl TwoFormMatrix {
    /// Keeps the antisymmetric part `½(W − Wᵀ)` of `matrix`.
    ///
    /// # Panics
    /// If `matrix` is not square or the label count differs from its size.
    pub fn new(labels: Vec<String>, matrix: DMatrix<f64>) -> Self {
        assert!(matrix.is_square(), "two-form matrix must be square");
        assert_eq!(labels.len(), matrix.nrows(), "one label per coordinate");
        let anti = (&matrix - matrix.transpose()) * 0.5;
        Self { labels, matrix: anti }
    }

    /// Zero form on the given coordinates.
    pub fn zeros(labels: &[&str]) -> Self {
        let n = labels.len();
        Self {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            matrix: DMatrix::zeros(n, n),
        }
    }

    /// Adds `c·dx_i∧dx_j`, i.e. `W_ij += c`, `W_ji −= c`.
    pub fn add_wedge(&mut self, i: usize, j: usize, c: f64) {
        self.matrix[(i, j)] += c;
        self.matrix[(j, i)] -= c;
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `Jᵀ W J` for a chart map with Jacobian `J` (rows: these coordinates).
    pub fn pullback(&self, jacobian: &DMatrix<f64>, labels: Vec<String>) -> Self {
        Self::new(labels, jacobian.transpose() * &self.matrix * jacobian)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).amax()
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.matrix.clone().svd(false, false).singular_values.iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// Ratio of largest to smallest singular value (infinite when degenerate).
    pub fn condition_number(&self) -> f64 {
        let s = self.singular_values();
        match (s.first(), s.last()) {
            (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
            _ => f64::INFINITY,
        }
    }

    /// Poisson tensor `P = −W⁻¹`, so that `{F,G} = ∇Fᵀ P ∇G`.
    pub fn poisson_tensor(&self) -> Result<DMatrix<f64>> {
        let smallest = self.singular_values().last().copied().unwrap_or(0.0);
        let scale = self.matrix.amax().max(1.0);
        if !(smallest > SINGULAR_TOL * scale) {
            return Err(Error::SingularForm(smallest));
        }
        let inv = self.matrix.clone().try_inverse().ok_or(Error::SingularForm(smallest))?;
        Ok(-inv)
    }
}

impl Serialize for TwoFormMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = self.matrix.row_iter().map(|r| r.iter().copied().collect()).collect();
        let mut st = s.serialize_struct("TwoFormMatrix", 2)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("matrix", &rows)?;
        st.end()
    }
}

/// `W_ij = ∂_i ϑ_j − ∂_j ϑ_i` for a one-form given by its components.
pub fn exterior_derivative(
    one_form: impl Fn(&[f64]) -> Result<Vec<f64>>,
    x: &[f64],
    labels: &[&str],
    st: &Stencil,
) -> Result<TwoFormMatrix> {
    let n = x.len();
    let f = |y: &[f64]| one_form(y).unwrap_or_else(|_| vec![f64::NAN; n]);
    let mut j = DMatrix::zeros(n, n);
    for i in 0..n {
        let row = st.partial(x, i, f);
        if row.len() != n || row.iter().any(|v| !v.is_finite()) {
            return Err(Error::ChartSingular("finite-difference stencil left the chart"));
        }
        for (k, v) in row.into_iter().enumerate() {
            j[(i, k)] = 2.0 * v;
        }
    }
    Ok(TwoFormMatrix::new(labels.iter().map(|s| s.to_string()).collect(), j))
}

/// `∇Fᵀ P ∇G`.
pub fn bracket(poisson: &DMatrix<f64>, grad_f: &[f64], grad_g: &[f64]) -> f64 {
    let n = grad_f.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += grad_f[i] * poisson[(i, j)] * grad_g[j];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canonical() -> TwoFormMatrix {
        let mut w = TwoFormMatrix::zeros(&["q", "p"]);
        w.add_wedge(0, 1, 1.0); // dq∧dp
        w
    }

    #[test]
    fn antisymmetrizes_input() {
        let w = TwoFormMatrix::new(vec!["a".into(), "b".into()], DMatrix::from_row_slice(2, 2, &[1.0, 3.0, 1.0, 2.0]));
        assert_eq!(w.get(0, 0), 0.0);
        assert_eq!(w.get(0, 1), 1.0);
        assert_eq!(w.get(1, 0), -1.0);
    }

    #[test]
    fn canonical_pair_bracket() {
        // ω = dq∧dp gives {q, p} = 1 under P = −W⁻¹
        let p = canonical().poisson_tensor().unwrap();
        assert!((bracket(&p, &[1.0, 0.0], &[0.0, 1.0]) - 1.0).abs() < 1e-15);
        assert!((canonical().condition_number() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singular_form_rejected() {
        let w = TwoFormMatrix::zeros(&["a", "b"]);
        assert!(matches!(w.poisson_tensor(), Err(Error::SingularForm(_))));
        assert!(w.condition_number().is_infinite());
    }

    #[test]
    fn pullback_of_scaled_chart() {
        let j = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        let w = canonical().pullback(&j, vec!["x".into(), "y".into()]);
        assert_eq!(w.get(0, 1), 6.0);
    }

    #[test]
    fn derivative_of_potential() {
        // ϑ = q dp, so dϑ = dq∧dp
        let w = exterior_derivative(|y| Ok(vec![0.0, y[0]]), &[0.3, -0.2], &["q", "p"], &Stencil::default()).unwrap();
        assert!(w.max_abs_diff(&canonical()) < 1e-12);
    }

    #[test]
    fn serializes_labels_and_rows() {
        let v = serde_json::to_value(canonical()).unwrap();
        assert_eq!(v["labels"][1], "p");
        assert_eq!(v["matrix"][0][1], 1.0);
    }
}
