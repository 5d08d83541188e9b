//! Central finite differences with optional Richardson extrapolation.
//!
//! With Richardson enabled the estimate combines steps `h` and `2h`,
//! `(4 D(h) - D(2h)) / 3`, which cancels the `h^2` term of the central
//! difference and leaves an `O(h^4)` truncation error.

use nalgebra::{ComplexField, Matrix2};

/// Values that finite differences can be taken of.
pub trait Axpy: Clone {
    fn zero_like(&self) -> Self;
    /// `self += a * x`
    fn axpy(&mut self, a: f64, x: &Self);
}

impl Axpy for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn axpy(&mut self, a: f64, x: &Self) {
        *self += a * x;
    }
}

impl<T: ComplexField<RealField = f64> + Copy> Axpy for Matrix2<T> {
    fn zero_like(&self) -> Self {
        Matrix2::zeros()
    }
    fn axpy(&mut self, a: f64, x: &Self) {
        *self += x * T::from_real(a);
    }
}

impl Axpy for Vec<f64> {
    fn zero_like(&self) -> Self {
        vec![0.0; self.len()]
    }
    fn axpy(&mut self, a: f64, x: &Self) {
        for (s, v) in self.iter_mut().zip(x) {
            *s += a * v;
        }
    }
}

impl<const N: usize> Axpy for [f64; N] {
    fn zero_like(&self) -> Self {
        [0.0; N]
    }
    fn axpy(&mut self, a: f64, x: &Self) {
        for (s, v) in self.iter_mut().zip(x) {
            *s += a * v;
        }
    }
}

/// Step size and order of a central-difference derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil {
    pub step: f64,
    pub richardson: bool,
}

impl Default for Stencil {
    fn default() -> Self {
        Self {
            step: 1e-4,
            richardson: true,
        }
    }
}

impl Stencil {
    pub fn plain(step: f64) -> Self {
        Self {
            step,
            richardson: false,
        }
    }

    pub fn richardson(step: f64) -> Self {
        Self {
            step,
            richardson: true,
        }
    }

    /// Offsets and weights of the first-derivative stencil.
    fn weights(&self) -> &'static [(f64, f64)] {
        if self.richardson {
            // 8[f(h) - f(-h)] - [f(2h) - f(-2h)], over 12h
            &[
                (1.0, 8.0 / 12.0),
                (-1.0, -8.0 / 12.0),
                (2.0, -1.0 / 12.0),
                (-2.0, 1.0 / 12.0),
            ]
        } else {
            &[(1.0, 0.5), (-1.0, -0.5)]
        }
    }

    /// Derivative at `x` of the one-parameter family `f`.
    pub fn derivative<V: Axpy>(&self, x: f64, mut f: impl FnMut(f64) -> V) -> V {
        let h = self.step;
        let mut acc: Option<V> = None;
        for &(offset, w) in self.weights() {
            let value = f(x + offset * h);
            let sum = acc.get_or_insert_with(|| value.zero_like());
            sum.axpy(w / h, &value);
        }
        acc.expect("stencil has at least one point")
    }

    /// Directional derivative of `f` at `x` along `dir`.
    pub fn directional<V: Axpy>(&self, x: &[f64], dir: &[f64], f: impl Fn(&[f64]) -> V) -> V {
        let mut p = x.to_vec();
        self.derivative(0.0, |t| {
            for ((pi, xi), di) in p.iter_mut().zip(x).zip(dir) {
                *pi = xi + t * di;
            }
            f(&p)
        })
    }

    /// Partial derivative of `f` with respect to coordinate `i`.
    pub fn partial<V: Axpy>(&self, x: &[f64], i: usize, f: impl Fn(&[f64]) -> V) -> V {
        let mut p = x.to_vec();
        self.derivative(x[i], |t| {
            p[i] = t;
            f(&p)
        })
    }

    pub fn gradient(&self, x: &[f64], f: impl Fn(&[f64]) -> f64) -> Vec<f64> {
        (0..x.len()).map(|i| self.partial(x, i, &f)).collect()
    }
}
