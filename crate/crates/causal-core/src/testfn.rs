//! Schwartz test functions from a closed Hermite-Gaussian family in four
//! variables, with exact derivatives at zero, exact Fourier transform, and
//! exact behavior under the subtraction projector.
//!
//! Basis: h_n(u; w) = H_n(u/w) exp(-u^2 / 2w^2) with physicists' Hermite
//! polynomials; a member is a finite combination of products over the four
//! coordinates, all sharing one width w.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub type MultiIndex = [u16; 4];

pub fn multi_order(a: &MultiIndex) -> u32 {
    a.iter().map(|&x| x as u32).sum()
}

pub fn multi_factorial(a: &MultiIndex) -> f64 {
    a.iter()
        .map(|&n| (1..=n as u64).product::<u64>() as f64)
        .product()
}

/// All multi-indices with |alpha| <= omega.
pub fn multi_indices_up_to(omega: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let w = omega as u16;
    for a0 in 0..=w {
        for a1 in 0..=(w - a0) {
            for a2 in 0..=(w - a0 - a1) {
                for a3 in 0..=(w - a0 - a1 - a2) {
                    out.push([a0, a1, a2, a3]);
                }
            }
        }
    }
    out.sort_by_key(|a| (multi_order(a), *a));
    out
}

/// Evaluates physicists' Hermite polynomials H_0..H_n at u.
fn hermite_upto(n: usize, u: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(n + 1);
    h.push(1.0);
    if n >= 1 {
        h.push(2.0 * u);
    }
    for k in 1..n {
        let next = 2.0 * u * h[k] - 2.0 * k as f64 * h[k - 1];
        h.push(next);
    }
    h
}

/// A test function sum_alpha c_alpha prod_k h_{alpha_k}(x_k; w).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TestFunction {
    pub width: f64,
    pub coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl TestFunction {
    pub fn new(width: f64) -> Self {
        assert!(width > 0.0);
        TestFunction { width, coeffs: BTreeMap::new() }
    }

    /// Plain Gaussian exp(-|x|^2 / 2 w^2) (Euclidean norm on R^4).
    pub fn gaussian(width: f64) -> Self {
        let mut f = TestFunction::new(width);
        f.coeffs.insert([0, 0, 0, 0], Complex64::new(1.0, 0.0));
        f
    }

    /// The width that makes `gaussian` equal exp(-|x|^2), i.e. w = 1/sqrt(2).
    pub fn unit_variance_width() -> f64 {
        0.5f64.sqrt()
    }

    pub fn with_term(mut self, alpha: MultiIndex, c: Complex64) -> Self {
        *self.coeffs.entry(alpha).or_insert(Complex64::new(0.0, 0.0)) += c;
        self
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs
            .keys()
            .flat_map(|a| a.iter())
            .map(|&x| x as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64; 4]) -> Complex64 {
        let n = self.max_degree();
        let w = self.width;
        let tables: Vec<Vec<f64>> = (0..4).map(|k| hermite_upto(n, x[k] / w)).collect();
        let gauss = (-x.iter().map(|c| c * c).sum::<f64>() / (2.0 * w * w)).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, c) in &self.coeffs {
            let mut prod = 1.0;
            for k in 0..4 {
                prod *= tables[k][a[k] as usize];
            }
            acc += c * prod;
        }
        acc * gauss
    }

    /// Exact coefficient-space derivative along axis k:
    /// d/du [H_n e^{-u^2/2}] = n H_{n-1} e^{..} - (1/2) H_{n+1} e^{..},
    /// with the chain-rule factor 1/w.
    pub fn derivative(&self, axis: usize) -> TestFunction {
        let mut out = TestFunction::new(self.width);
        let iw = 1.0 / self.width;
        for (a, c) in &self.coeffs {
            if a[axis] > 0 {
                let mut lower = *a;
                lower[axis] -= 1;
                let f = a[axis] as f64;
                *out.coeffs.entry(lower).or_insert(Complex64::new(0.0, 0.0)) += c * f * iw;
            }
            let mut upper = *a;
            upper[axis] += 1;
            *out.coeffs.entry(upper).or_insert(Complex64::new(0.0, 0.0)) -= c * 0.5 * iw;
        }
        out
    }

    /// D^beta f, iterated exact derivatives.
    pub fn derivative_multi(&self, beta: &MultiIndex) -> TestFunction {
        let mut f = self.clone();
        for axis in 0..4 {
            for _ in 0..beta[axis] {
                f = f.derivative(axis);
            }
        }
        f
    }

    /// Value at the origin; exact (H_n(0) by recurrence, Gaussian = 1).
    pub fn eval_at_zero(&self) -> Complex64 {
        let n = self.max_degree();
        let mut h0 = vec![0.0; n + 1];
        h0[0] = 1.0;
        for k in 2..=n {
            h0[k] = -2.0 * (k as f64 - 1.0) * h0[k - 2];
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, c) in &self.coeffs {
            let mut prod = 1.0;
            for k in 0..4 {
                prod *= h0[a[k] as usize];
            }
            acc += c * prod;
        }
        acc
    }

    /// Exact D^beta f(0).
    pub fn derivative_at_zero(&self, beta: &MultiIndex) -> Complex64 {
        self.derivative_multi(beta).eval_at_zero()
    }

    /// Exact Fourier transform with the Minkowski phase,
    /// f~(p) = (2 pi)^{-2} int f(x) e^{i (p0 x0 - pvec.xvec)} d^4 x.
    ///
    /// Each h_n factor maps to w i^n h_n(.; 1/w) along x0 and
    /// w (-i)^n h_n(.; 1/w) along the spatial axes; the (2 pi)^{-2}
    /// cancels the four sqrt(2 pi) factors.
    pub fn fourier(&self) -> TestFunction {
        let w = self.width;
        let mut out = TestFunction::new(1.0 / w);
        let i = Complex64::new(0.0, 1.0);
        for (a, c) in &self.coeffs {
            let phase = i.powu(a[0] as u32) * (-i).powu((a[1] + a[2] + a[3]) as u32);
            let scale = w.powi(4);
            *out.coeffs.entry(*a).or_insert(Complex64::new(0.0, 0.0)) += c * phase * scale;
        }
        out
    }

    /// S_lambda f (x) = f(lambda x): exact width rescaling.
    pub fn scaled(&self, lambda: f64) -> TestFunction {
        assert!(lambda > 0.0);
        TestFunction { width: self.width / lambda, coeffs: self.coeffs.clone() }
    }
}

/// Smooth compactly supported window, identically 1 inside `r_inner` and 0
/// outside `r_outer` (Euclidean 4-norm).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BumpWindow {
    pub r_inner: f64,
    pub r_outer: f64,
}

fn smooth_step_piece(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

impl BumpWindow {
    pub fn new(radius: f64) -> Self {
        BumpWindow { r_inner: 0.5 * radius, r_outer: radius }
    }

    pub fn eval(&self, x: &[f64; 4]) -> f64 {
        let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        if r <= self.r_inner {
            1.0
        } else if r >= self.r_outer {
            0.0
        } else {
            let t = (r - self.r_inner) / (self.r_outer - self.r_inner);
            let a = smooth_step_piece(1.0 - t);
            let b = smooth_step_piece(t);
            a / (a + b)
        }
    }
}

/// Result of the subtraction projector: the original function minus
/// Gaussian-windowed monomials (x^alpha / alpha!) w(x) carrying its Taylor
/// data at zero. Derivatives at zero are tracked exactly.
#[derive(Clone, Debug)]
pub struct SubtractedFn {
    pub base: TestFunction,
    pub window: BumpWindow,
    pub terms: BTreeMap<MultiIndex, Complex64>,
    pub omega: i32,
}

impl SubtractedFn {
    pub fn eval(&self, x: &[f64; 4]) -> Complex64 {
        let mut acc = self.base.eval(x);
        let w = self.window.eval(x);
        if w != 0.0 {
            for (a, c) in &self.terms {
                let mono: f64 = (0..4).map(|k| x[k].powi(a[k] as i32)).product();
                acc -= c * mono / multi_factorial(a) * w;
            }
        }
        acc
    }

    /// Exact derivative at zero: the window is 1 near zero, so the
    /// monomial term x^alpha/alpha! contributes exactly delta_{alpha beta}.
    pub fn derivative_at_zero(&self, beta: &MultiIndex) -> Complex64 {
        let mut v = self.base.derivative_at_zero(beta);
        if let Some(c) = self.terms.get(beta) {
            v -= c;
        }
        v
    }
}

/// The subtraction projector: phi - sum_{|alpha| <= omega} D^alpha phi(0)
/// (x^alpha / alpha!) w(x). For omega < 0 it is the identity.
pub fn omega_subtract(phi: &TestFunction, omega: i32, window: BumpWindow) -> SubtractedFn {
    let mut terms = BTreeMap::new();
    if omega >= 0 {
        for alpha in multi_indices_up_to(omega as u32) {
            let c = phi.derivative_at_zero(&alpha);
            if c.norm() != 0.0 {
                terms.insert(alpha, c);
            }
        }
    }
    SubtractedFn { base: phi.clone(), window, terms, omega }
}

/// Second application of the projector to an already subtracted function;
/// idempotency is exact because all tracked derivatives vanish.
pub fn omega_subtract_again(phi: &SubtractedFn, omega: i32, window: BumpWindow) -> SubtractedFn {
    let mut out = phi.clone();
    if omega >= 0 {
        for alpha in multi_indices_up_to(omega as u32) {
            let c = phi.derivative_at_zero(&alpha);
            if c.norm() != 0.0 {
                *out.terms.entry(alpha).or_insert(Complex64::new(0.0, 0.0)) += c;
            }
        }
    }
    out.window = window;
    out.omega = omega.max(phi.omega);
    out
}

/// Two-variable projector on a product chi(x, y) = phi(x - y) psi(y):
/// acts as `omega_subtract` on the relative-coordinate factor.
pub struct TwoVariableSubtracted {
    pub relative: SubtractedFn,
    pub second: TestFunction,
}

pub fn omega_two_variable(
    phi_relative: &TestFunction,
    psi: &TestFunction,
    omega: i32,
    window: BumpWindow,
) -> TwoVariableSubtracted {
    TwoVariableSubtracted {
        relative: omega_subtract(phi_relative, omega, window),
        second: psi.clone(),
    }
}

impl TwoVariableSubtracted {
    pub fn eval(&self, x: &[f64; 4], y: &[f64; 4]) -> Complex64 {
        let rel = [x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]];
        self.relative.eval(&rel) * self.second.eval(y)
    }

    /// D^beta_x chi at x = y, as a function of y; vanishes through omega.
    pub fn dx_at_diagonal(&self, beta: &MultiIndex, y: &[f64; 4]) -> Complex64 {
        self.relative.derivative_at_zero(beta) * self.second.eval(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::{integrate, QuadOpts};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn gaussian_eval() {
        let f = TestFunction::gaussian(1.0);
        let x = [0.3, -0.2, 0.1, 0.5];
        let want = (-x.iter().map(|v| v * v).sum::<f64>() / 2.0).exp();
        assert!((f.eval(&x).re - want).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let f = TestFunction::gaussian(0.8)
            .with_term([1, 0, 2, 0], c(0.7))
            .with_term([0, 3, 0, 1], c(-0.4));
        let df = f.derivative(2);
        let x = [0.2, -0.5, 0.9, 0.1];
        let h = 1e-5;
        let mut xp = x;
        let mut xm = x;
        xp[2] += h;
        xm[2] -= h;
        let fd = (f.eval(&xp) - f.eval(&xm)) / c(2.0 * h);
        assert!((df.eval(&x) - fd).norm() < 1e-9);
    }

    #[test]
    fn fourier_matches_quadrature_1d_slice() {
        // check the x0 factor of the transform by direct quadrature: the
        // function is separable, the spatial integrals at pvec = 0 give
        // (sqrt(2 pi) w)^3
        let f = TestFunction::gaussian(1.0).with_term([2, 0, 0, 0], c(1.0));
        let ft = f.fourier();
        let p = [1.3, 0.0, 0.0, 0.0];
        let opts = QuadOpts::default();
        let (ix0, _) = integrate(
            |t| {
                let x = [t, 0.0, 0.0, 0.0];
                f.eval(&x) * Complex64::new(0.0, p[0] * t).exp()
            },
            -12.0,
            12.0,
            &opts,
        );
        let tau = (2.0 * std::f64::consts::PI).sqrt();
        let want = ix0 * tau.powi(3) / (2.0 * std::f64::consts::PI).powi(2);
        let got = ft.eval(&p);
        assert!((got - want).norm() < 1e-10, "got {got}, want {want}");
    }

    #[test]
    fn scaling_is_exact() {
        let f = TestFunction::gaussian(1.0).with_term([0, 1, 1, 0], c(0.3));
        let g = f.scaled(2.5);
        let x = [0.1, 0.2, -0.3, 0.4];
        let lx = [0.25, 0.5, -0.75, 1.0];
        assert!((g.eval(&x) - f.eval(&lx)).norm() < 1e-14);
    }

    #[test]
    fn window_is_one_near_zero() {
        let w = BumpWindow::new(1.0);
        assert_eq!(w.eval(&[0.1, 0.1, 0.1, 0.1]), 1.0);
        assert_eq!(w.eval(&[1.0, 0.3, 0.0, 0.0]), 0.0);
        let mid = w.eval(&[0.75, 0.0, 0.0, 0.0]);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn subtraction_kills_derivatives_at_zero() {
        let phi = TestFunction::gaussian(1.0)
            .with_term([1, 0, 0, 0], c(0.3))
            .with_term([0, 0, 2, 1], c(-0.9));
        for omega in 0..=3 {
            let sub = omega_subtract(&phi, omega, BumpWindow::new(1.0));
            for beta in multi_indices_up_to(omega as u32) {
                let d = sub.derivative_at_zero(&beta);
                assert!(d.norm() < 1e-14, "omega={omega}, beta={beta:?}");
            }
        }
    }

    #[test]
    fn subtraction_idempotent_exactly() {
        let phi = TestFunction::gaussian(0.9).with_term([0, 2, 0, 0], c(1.1));
        let once = omega_subtract(&phi, 2, BumpWindow::new(1.0));
        let twice = omega_subtract_again(&once, 2, BumpWindow::new(1.0));
        assert_eq!(once.terms.len(), twice.terms.len());
        for (a, cv) in &once.terms {
            assert!((twice.terms[a] - cv).norm() == 0.0);
        }
        for t in [-1.4, -0.3, 0.0, 0.6, 2.2] {
            let x = [t, 0.5 * t, -t, 0.25];
            assert!((once.eval(&x) - twice.eval(&x)).norm() == 0.0);
        }
    }

    #[test]
    fn gaussian_omega0_vanishes_at_zero() {
        let phi = TestFunction::gaussian(1.0);
        let sub = omega_subtract(&phi, 0, BumpWindow::new(1.0));
        assert!(sub.eval(&[0.0; 4]).norm() < 1e-15);
    }

    #[test]
    fn negative_omega_is_identity() {
        let phi = TestFunction::gaussian(1.0).with_term([1, 1, 0, 0], c(2.0));
        let sub = omega_subtract(&phi, -3, BumpWindow::new(1.0));
        assert!(sub.terms.is_empty());
        let x = [0.3, -0.8, 0.2, 0.0];
        assert!((sub.eval(&x) - phi.eval(&x)).norm() == 0.0);
    }

    #[test]
    fn two_variable_projector_product_form() {
        let phi = TestFunction::gaussian(1.0);
        let psi = TestFunction::gaussian(1.3).with_term([0, 0, 0, 2], c(0.5));
        let chi = omega_two_variable(&phi, &psi, 1, BumpWindow::new(1.0));
        for beta in multi_indices_up_to(1) {
            for y in [[0.0; 4], [0.4, -0.1, 0.2, 0.9]] {
                assert!(chi.dx_at_diagonal(&beta, &y).norm() < 1e-14);
            }
        }
        let sub = omega_subtract(&phi, 1, BumpWindow::new(1.0));
        let x = [0.7, 0.1, -0.2, 0.3];
        let y = [0.2, 0.0, 0.1, -0.4];
        let rel = [0.5, 0.1, -0.3, 0.7];
        let want = sub.eval(&rel) * psi.eval(&y);
        assert!((chi.eval(&x, &y) - want).norm() < 1e-14);
    }
}
