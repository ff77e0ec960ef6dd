//! Splitting of translationally invariant scalar distributions into
//! retarded and advanced parts: smoothed step families, the step-function
//! Fourier transform with its pole/delta structure, subtraction projectors
//! (re-exported from [`crate::testfn`]), dispersion-integral evaluators,
//! scaling-based singular-order estimation, and cutoff scans demonstrating
//! the divergence of multi-contraction integrals.

use crate::error::{Error, Result};
use crate::geometry::{eps, Momentum4, SpacetimePoint, Versor};
use crate::numerics::dawson::pv_gaussian_over_k;
use crate::numerics::quad::{
    integrate, integrate_to_infinity, integrate_with_breakpoints, principal_value, QuadOpts,
};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

pub use crate::testfn::{
    omega_subtract, omega_subtract_again, omega_two_variable, BumpWindow, SubtractedFn,
    TestFunction, TwoVariableSubtracted,
};

type C64 = Complex64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

// ---------------------------------------------------------------------------
// Smoothed step family and the Fourier transform of theta
// ---------------------------------------------------------------------------

/// Smoothed step theta_lambda(x.v) = 1/2 + (1/pi) arctan(lambda (x.v)).
pub fn theta_lambda(x: &SpacetimePoint, v: &Versor, lambda: f64) -> f64 {
    assert!(lambda > 0.0);
    0.5 + (lambda * x.dot_versor(v)).atan() / PI
}

/// Structured value of the Fourier transform of theta(v.x): the 1-D pole
/// factor in k0 and the spatial delta layer, never a raw number for the
/// delta part.
#[derive(Clone, Copy, Debug)]
pub struct FtTheta {
    /// i / (k0 + i eps v0) at the given finite eps
    pub pole: C64,
    /// eps -> 0 splitting: coefficient of PV(1/k0) and weight of delta(k0)
    pub pv_coefficient: C64,
    pub delta_weight: f64,
    /// the layer delta(kvec - k0 vvec/v0): reported as its shift
    pub spatial_delta_shift: [f64; 3],
}

/// Fourier transform of theta(v.x) at (k0, kvec): pole factor plus layer
/// descriptor. `epsilon = 0` gives the boundary-value decomposition
/// i/(k0 + i0) = i PV(1/k0) + pi delta(k0).
pub fn ft_theta(k: &Momentum4, epsilon: f64, v: &Versor) -> FtTheta {
    let pole = if epsilon > 0.0 {
        c(0.0, 1.0) / c(k.p0, epsilon * v.v0)
    } else if k.p0 != 0.0 {
        c(0.0, 1.0) / c(k.p0, 0.0)
    } else {
        c(f64::INFINITY, 0.0)
    };
    let shift = [
        k.p0 * v.vvec[0] / v.v0,
        k.p0 * v.vvec[1] / v.v0,
        k.p0 * v.vvec[2] / v.v0,
    ];
    FtTheta {
        pole,
        pv_coefficient: c(0.0, 1.0),
        delta_weight: PI,
        spatial_delta_shift: shift,
    }
}

/// Regularized integral  reg int f(k)/k dk  with the symmetric window
/// [-delta, delta] subtraction of f(0); equals the principal value for any
/// integrable f, independently of delta.
pub fn reg_integral_over_pole<F: Fn(f64) -> C64>(f: F, delta: f64, opts: &QuadOpts) -> C64 {
    assert!(delta > 0.0);
    let f0 = f(0.0);
    let (inner, _) = integrate(
        |k| {
            if k == 0.0 {
                c(0.0, 0.0)
            } else {
                (f(k) - f0) / c(k, 0.0)
            }
        },
        -delta,
        delta,
        opts,
    );
    let (right, _) = integrate_to_infinity(|u| f(delta + u) / c(delta + u, 0.0), 0.0, opts);
    let (left, _) = integrate_to_infinity(|u| f(-delta - u) / c(-delta - u, 0.0), 0.0, opts);
    inner + right + left
}

/// One-dimensional Fourier transform of theta(t) phi(t) evaluated through
/// the regularized convolution with theta's transform:
/// (theta phi)~(p) = (1/2) phi~(p) + (i/2 pi) reg int phi~(p - k)/k dk,
/// in the unitary convention phi~(k) = (2 pi)^{-1/2} int phi e^{ikt} dt.
pub fn ft_theta_apply<F: Fn(f64) -> C64>(phi_ft: F, p0: f64, delta: f64, opts: &QuadOpts) -> C64 {
    let reg = reg_integral_over_pole(|k| phi_ft(p0 - k), delta, opts);
    0.5 * phi_ft(p0) + c(0.0, 0.5 / PI) * reg
}

// ---------------------------------------------------------------------------
// Scalar distributions
// ---------------------------------------------------------------------------

/// Invariant odd structure  sign * eps(p0) theta(p^2 - threshold) h(p^2):
/// the causal shape shared by the two-vertex contraction coefficients of
/// massive theories. Enables the reduced one-dimensional dispersion
/// integral and its analytic continuation to spacelike momenta.
#[derive(Clone)]
pub struct InvariantOdd {
    pub sign: f64,
    pub threshold: f64,
    pub h: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

/// A translationally invariant coefficient distribution given by its
/// momentum-space evaluator plus splitting metadata.
#[derive(Clone)]
pub struct ScalarDistribution {
    pub id: String,
    pub eval_p: Arc<dyn Fn(&Momentum4) -> C64 + Send + Sync>,
    /// singular order at zero (infinity in momentum)
    pub omega: i32,
    pub causal: bool,
    /// value under p -> -p, when known: +1 even, -1 odd
    pub parity: Option<i8>,
    pub mass_params: Vec<f64>,
    /// support starts at p^2 >= support_threshold (0 if none known)
    pub support_threshold: f64,
    /// one-sided spectra carry theta(-p0); affects ray breakpoints
    pub one_sided: bool,
    pub invariant_odd: Option<InvariantOdd>,
}

impl ScalarDistribution {
    pub fn eval(&self, p: &Momentum4) -> C64 {
        (self.eval_p)(p)
    }

    /// Vacuum-polarization scalar f(p) = g(p) - g(-p) with
    /// g(p) = theta(p^2-4m^2) theta(-p0) (p^2+2m^2) sqrt(1-4m^2/p^2):
    /// equivalently -eps(p0) theta(p^2-4m^2) h(p^2). Causal, omega = 2.
    pub fn vacuum_polarization_f(m: f64) -> Self {
        let m2 = m * m;
        let h = Arc::new(move |s: f64| (s + 2.0 * m2) * (1.0 - 4.0 * m2 / s).sqrt());
        let thr = 4.0 * m2;
        let h_eval = h.clone();
        ScalarDistribution {
            id: "vp_f".into(),
            eval_p: Arc::new(move |p: &Momentum4| {
                let s = p.square();
                if s > thr {
                    c(-eps(p.p0) * h_eval(s), 0.0)
                } else {
                    c(0.0, 0.0)
                }
            }),
            omega: 2,
            causal: true,
            parity: Some(-1),
            mass_params: vec![m],
            support_threshold: thr,
            one_sided: false,
            invariant_odd: Some(InvariantOdd { sign: -1.0, threshold: thr, h }),
        }
    }

    /// The one-sided half g(p) = theta(p^2-4m^2) theta(-p0) h(p^2) alone:
    /// not causal, its splitting depends on the frame versor.
    pub fn one_sided_g(m: f64) -> Self {
        let m2 = m * m;
        let thr = 4.0 * m2;
        ScalarDistribution {
            id: "vp_g".into(),
            eval_p: Arc::new(move |p: &Momentum4| {
                let s = p.square();
                if s > thr && p.p0 < 0.0 {
                    c((s + 2.0 * m2) * (1.0 - 4.0 * m2 / s).sqrt(), 0.0)
                } else {
                    c(0.0, 0.0)
                }
            }),
            omega: 2,
            causal: false,
            parity: None,
            mass_params: vec![m],
            support_threshold: thr,
            one_sided: true,
            invariant_odd: None,
        }
    }

    /// Synthetic Euclidean power |p|_E^k: exact-homogeneity oracle for the
    /// scaling estimator.
    pub fn euclidean_power(k: i32) -> Self {
        ScalarDistribution {
            id: format!("power_{k}"),
            eval_p: Arc::new(move |p: &Momentum4| {
                let r2 = p.p0 * p.p0 + p.spatial_norm2();
                c(r2.powf(0.5 * k as f64), 0.0)
            }),
            omega: k,
            causal: false,
            parity: Some(1),
            mass_params: vec![],
            support_threshold: 0.0,
            one_sided: false,
            invariant_odd: None,
        }
    }

    /// t-values where p - t v crosses a support boundary of this
    /// distribution or of its ray-subtraction terms.
    pub fn ray_breakpoints(&self, p: &Momentum4, v: &Versor) -> Vec<f64> {
        let mut out = Vec::new();
        let pv = v.dot(p);
        let thr = self.support_threshold;
        // (p - t v)^2 = thr: t^2 - 2 t (p.v) + p^2 - thr = 0
        let disc = pv * pv - p.square() + thr;
        if disc >= 0.0 {
            out.push(pv - disc.sqrt());
            out.push(pv + disc.sqrt());
        }
        // (p - t v)0 = 0
        out.push(p.p0 / v.v0);
        // subtraction ray -t v: supports start at t^2 = thr
        if thr > 0.0 {
            out.push(thr.sqrt());
            out.push(-thr.sqrt());
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }
}

// ---------------------------------------------------------------------------
// Retarded parts via dispersion integrals
// ---------------------------------------------------------------------------

/// Options shared by the splitting evaluators.
#[derive(Clone, Copy, Debug)]
pub struct SplitOpts {
    pub quad: QuadOpts,
    /// relative half-width of the threshold neighborhood that triggers a
    /// widened error bar instead of a failure
    pub threshold_delta: f64,
    /// step of the directional finite differences in the ray subtraction
    pub fd_step: f64,
}

impl Default for SplitOpts {
    fn default() -> Self {
        SplitOpts { quad: QuadOpts::default(), threshold_delta: 1e-3, fd_step: 1e-2 }
    }
}

/// Value of a retarded-part evaluation and its accuracy metadata.
#[derive(Clone, Copy, Debug)]
pub struct RetValue {
    pub value: C64,
    pub error: f64,
    /// set when the momentum lies in a threshold neighborhood; the error
    /// bar is widened accordingly
    pub threshold_warning: bool,
}

/// Central retarded part of a causal distribution, normalization point 0.
///
/// Over the invariant-odd structure the dispersion integral reduces to
///   ret~d(p) = sign (i/2pi) (p^2)^k
///              int_thr^inf h(s) / (s^k (p^2 - s + i0)) ds,
/// k = floor(omega/2) + 1, for omega >= 0; valid for all p^2 != 0 — the
/// s-form is the analytic continuation to spacelike p. For omega < 0 the
/// splitting is trivial and the unsubtracted t-integral is used.
pub fn ret_causal(d: &ScalarDistribution, p: &Momentum4, opts: &SplitOpts) -> Result<RetValue> {
    if !d.causal {
        return Err(Error::NotCausal);
    }
    let s_ext = p.square();
    if s_ext == 0.0 {
        return Err(Error::NullMomentum);
    }
    if d.omega < 0 {
        return ret_trivial_t_integral(d, p, opts);
    }
    let inv = d.invariant_odd.as_ref().ok_or(Error::NoContinuationRule)?;
    let k = d.omega.div_euclid(2) + 1; // power of s in the denominator
    let thr = inv.threshold;
    let warn = (s_ext - thr).abs() < opts.threshold_delta * thr.max(1.0);
    let h = inv.h.clone();
    let weight = move |s: f64| h(s) / s.powi(k);

    let (integral, err) = pole_weighted_integral(&weight, thr, s_ext, &opts.quad);
    let pref = c(0.0, inv.sign / (2.0 * PI)) * c(s_ext.powi(k), 0.0);
    Ok(RetValue {
        value: pref * integral,
        error: err * pref.norm() * if warn { 1.0 / opts.threshold_delta } else { 1.0 },
        threshold_warning: warn,
    })
}

/// int_thr^inf w(s) / (s_ext - s + i0) ds with PV + Sokhotski residue when
/// s_ext lies above threshold.
pub fn pole_weighted_integral(
    w: &impl Fn(f64) -> f64,
    thr: f64,
    s_ext: f64,
    quad: &QuadOpts,
) -> (C64, f64) {
    if s_ext > thr {
        let hi = 2.0 * s_ext - thr; // window symmetric around the pole
        let (pv, e1) = principal_value(|s| c(-w(s), 0.0), s_ext, thr, hi, quad);
        let (tail, e2) =
            integrate_to_infinity(|u| c(w(hi + u) / (s_ext - hi - u), 0.0), 0.0, quad);
        // 1/(x + i0) = PV(1/x) - i pi delta(x)
        let res = c(0.0, -PI * w(s_ext));
        (pv + tail + res, e1 + e2)
    } else {
        let (v, e) = integrate_to_infinity(|u| c(w(thr + u) / (s_ext - thr - u), 0.0), 0.0, quad);
        (v, e)
    }
}

/// Trivial splitting for omega < 0 through the unsubtracted dispersion
/// integral ret~d(p) = (i/2pi) int d~(tp) / (1 - t + i0) dt, p timelike.
fn ret_trivial_t_integral(
    d: &ScalarDistribution,
    p: &Momentum4,
    opts: &SplitOpts,
) -> Result<RetValue> {
    if p.square() <= 0.0 {
        return Err(Error::NoContinuationRule);
    }
    let f = |t: f64| d.eval(&p.scale(t));
    let t0 = if d.support_threshold > 0.0 {
        (d.support_threshold / p.square()).sqrt()
    } else {
        0.0
    };
    let quad = &opts.quad;
    let mut total = c(0.0, 0.0);
    let mut err = 0.0;
    // positive branch [t0, inf): pole at t = 1 if the support reaches it
    if t0 < 1.0 {
        let hi = 2.0 - t0;
        let (pv, e1) = principal_value(|t| -f(t), 1.0, t0, hi, quad);
        let (tail, e2) = integrate_to_infinity(|u| f(hi + u) / c(1.0 - hi - u, 0.0), 0.0, quad);
        total += pv + tail + c(0.0, -PI) * f(1.0);
        err += e1 + e2;
    } else {
        let (v, e) = integrate_to_infinity(|u| f(t0 + u) / c(1.0 - t0 - u, 0.0), 0.0, quad);
        total += v;
        err += e;
    }
    // negative branch (-inf, -t0]
    let (v, e) = integrate_to_infinity(|u| f(-t0 - u) / c(1.0 + t0 + u, 0.0), 0.0, quad);
    total += v;
    err += e;
    Ok(RetValue {
        value: c(0.0, 1.0 / (2.0 * PI)) * total,
        error: err / (2.0 * PI),
        threshold_warning: false,
    })
}

/// Frame-dependent retarded part of a (generally non-causal) distribution:
///   ret~k(p) = (i/2pi) int dt/(t + i0)
///              [ k~(p - t v) - sum_{j<=omega} (1/j!) (d/ds)^j k~(s p - t v)|_0 ]
/// The multi-index Taylor subtraction collapses into directional
/// derivatives along p, evaluated by high-order finite differences.
pub fn ret_noncausal(
    kappa: &ScalarDistribution,
    v: &Versor,
    p: &Momentum4,
    opts: &SplitOpts,
) -> Result<RetValue> {
    let omega = kappa.omega;
    let eval = kappa.eval_p.clone();
    let vm = v.as_momentum();
    let h = opts.fd_step;
    let dir = move |s: f64, t: f64| {
        let q = p.scale(s).add(&vm.scale(-t));
        eval(&q)
    };
    let n_of = move |t: f64| -> C64 {
        let head = dir(1.0, t);
        if omega < 0 {
            return head;
        }
        let mut sub = dir(0.0, t);
        if omega >= 1 {
            let d1 = (-dir(2.0 * h, t) + 8.0 * dir(h, t) - 8.0 * dir(-h, t) + dir(-2.0 * h, t))
                / (12.0 * h);
            sub += d1;
        }
        if omega >= 2 {
            let d2 = (-dir(2.0 * h, t) + 16.0 * dir(h, t) - 30.0 * dir(0.0, t)
                + 16.0 * dir(-h, t)
                - dir(-2.0 * h, t))
                / (12.0 * h * h);
            sub += 0.5 * d2;
        }
        if omega >= 3 {
            let d3 = (dir(2.0 * h, t) - 2.0 * dir(h, t) + 2.0 * dir(-h, t) - dir(-2.0 * h, t))
                / (2.0 * h * h * h);
            sub += d3 / 6.0;
        }
        head - sub
    };

    let quad = &opts.quad;
    let bps = kappa.ray_breakpoints(p, v);
    let min_bp = bps
        .iter()
        .map(|b| b.abs())
        .filter(|b| *b > 1e-9)
        .fold(f64::INFINITY, f64::min);
    let d_win = (0.5 * min_bp).min(0.5).max(1e-4);
    let (core, e0) = principal_value(&n_of, 0.0, -d_win, d_win, quad);
    let t_hi = bps.iter().fold(d_win, |a, b| a.max(b.abs())) + 2.0;
    let (mid_pos, e1) =
        integrate_with_breakpoints(|t| n_of(t) / c(t, 0.0), d_win, t_hi, &bps, quad);
    let (mid_neg, e2) =
        integrate_with_breakpoints(|t| n_of(t) / c(t, 0.0), -t_hi, -d_win, &bps, quad);
    // The Taylor-subtracted remainder decays like t^{-(3 + omega - omega)} =
    // O(t^-3) for the mass-corrected kernels, but its finite-difference
    // evaluation loses ~eps_mach t^2/h^2 to cancellation; integrate the tail
    // on a finite cap and bound the truncated rest by |N(T)| T / 2.
    let t_cap = (64.0 * (1.0 + v.dot(p).abs() + kappa.support_threshold.sqrt())).max(4.0 * t_hi);
    let (tail_pos, e3) = integrate(|t| n_of(t) / c(t, 0.0), t_hi, t_cap, quad);
    let (tail_neg, e4) = integrate(|t| n_of(t) / c(t, 0.0), -t_cap, -t_hi, quad);
    let trunc = (n_of(t_cap).norm() + n_of(-t_cap).norm()) * 0.5 * t_cap;
    // Sokhotski residue of 1/(t + i0): -i pi N(0)
    let residue = c(0.0, -PI) * n_of(0.0);
    let total = core + mid_pos + mid_neg + tail_pos + tail_neg + residue;
    Ok(RetValue {
        value: c(0.0, 1.0 / (2.0 * PI)) * total,
        error: (e0 + e1 + e2 + e3 + e4 + trunc) / (2.0 * PI),
        threshold_warning: false,
    })
}

/// theta-multiplication route for the retarded part in momentum space:
/// ret~d(p) = (i/2pi) int dk0 d~(p - k0 e0)/(k0 + i0). Same limit as the
/// trivial dispersion integral for omega < 0; kept as an independent route.
pub fn ret_theta_multiplication(
    d: &ScalarDistribution,
    p: &Momentum4,
    opts: &SplitOpts,
) -> Result<RetValue> {
    let v = Versor::rest();
    let f = |k0: f64| d.eval(&Momentum4 { p0: p.p0 - k0, pvec: p.pvec });
    let quad = &opts.quad;
    let bps: Vec<f64> = {
        // k0 values where p - k0 e0 crosses the support boundary
        let mut b = d.ray_breakpoints(p, &v);
        b.retain(|t| t.is_finite());
        b
    };
    let min_bp = bps
        .iter()
        .map(|b| b.abs())
        .filter(|b| *b > 1e-9)
        .fold(f64::INFINITY, f64::min);
    let d_win = (0.5 * min_bp).min(0.5).max(1e-4);
    let (core, e0) = principal_value(&f, 0.0, -d_win, d_win, quad);
    let t_hi = bps.iter().fold(d_win, |a, b| a.max(b.abs())) + 2.0;
    let (mid_pos, e1) = integrate_with_breakpoints(|t| f(t) / c(t, 0.0), d_win, t_hi, &bps, quad);
    let (mid_neg, e2) =
        integrate_with_breakpoints(|t| f(t) / c(t, 0.0), -t_hi, -d_win, &bps, quad);
    let (tail_pos, e3) = integrate_to_infinity(|u| f(t_hi + u) / c(t_hi + u, 0.0), 0.0, quad);
    let (tail_neg, e4) =
        integrate_to_infinity(|u| f(-t_hi - u) / c(-t_hi - u, 0.0), 0.0, quad);
    let residue = c(0.0, -PI) * f(0.0);
    let total = core + mid_pos + mid_neg + tail_pos + tail_neg + residue;
    Ok(RetValue {
        value: c(0.0, 1.0 / (2.0 * PI)) * total,
        error: (e0 + e1 + e2 + e3 + e4) / (2.0 * PI),
        threshold_warning: false,
    })
}

// ---------------------------------------------------------------------------
// Split results, advanced parts, freedom terms
// ---------------------------------------------------------------------------

/// Retarded/advanced pair for a scalar distribution, with the freedom
/// polynomial sum_{|alpha| <= omega} C_alpha p^alpha carried explicitly.
#[derive(Clone)]
pub struct SplitResult {
    pub scalar_id: String,
    pub omega: i32,
    pub normalization_point: Momentum4,
    pub frame_versor: Option<Versor>,
    pub freedom: Vec<(crate::testfn::MultiIndex, C64)>,
    ret: Arc<dyn Fn(&Momentum4) -> Result<RetValue> + Send + Sync>,
    diff: Arc<dyn Fn(&Momentum4) -> C64 + Send + Sync>,
}

impl SplitResult {
    /// Central splitting of a causal distribution.
    pub fn causal(d: &ScalarDistribution, opts: SplitOpts) -> Self {
        let dd = d.clone();
        let de = d.clone();
        SplitResult {
            scalar_id: d.id.clone(),
            omega: d.omega,
            normalization_point: Momentum4::zero(),
            frame_versor: None,
            freedom: Vec::new(),
            ret: Arc::new(move |p| ret_causal(&dd, p, &opts)),
            diff: Arc::new(move |p| de.eval(p)),
        }
    }

    /// Frame-dependent splitting with the given versor.
    pub fn noncausal(d: &ScalarDistribution, v: Versor, opts: SplitOpts) -> Self {
        let dd = d.clone();
        let de = d.clone();
        SplitResult {
            scalar_id: d.id.clone(),
            omega: d.omega,
            normalization_point: Momentum4::zero(),
            frame_versor: Some(v),
            freedom: Vec::new(),
            ret: Arc::new(move |p| ret_noncausal(&dd, &v, p, &opts)),
            diff: Arc::new(move |p| de.eval(p)),
        }
    }

    fn freedom_poly(&self, p: &Momentum4) -> C64 {
        let mut acc = c(0.0, 0.0);
        for (alpha, coef) in &self.freedom {
            let mono: f64 = (0..4).map(|mu| p.up(mu).powi(alpha[mu] as i32)).product();
            acc += coef * mono;
        }
        acc
    }

    /// Retarded evaluator including the freedom polynomial.
    pub fn ret_eval(&self, p: &Momentum4) -> Result<RetValue> {
        let mut r = (self.ret)(p)?;
        r.value += self.freedom_poly(p);
        Ok(r)
    }

    /// Advanced evaluator: av := ret - d pointwise; a freedom term shifts
    /// ret and av identically, so the difference stays d.
    pub fn av_eval(&self, p: &Momentum4) -> Result<RetValue> {
        let mut r = (self.ret)(p)?;
        r.value = r.value + self.freedom_poly(p) - (self.diff)(p);
        Ok(r)
    }

    /// The distribution being split, evaluated pointwise.
    pub fn diff_eval(&self, p: &Momentum4) -> C64 {
        (self.diff)(p)
    }

    pub fn export_grid(&self, grid: &[Momentum4]) -> Result<SplitExport> {
        let mut rows = Vec::with_capacity(grid.len());
        for p in grid {
            let r = self.ret_eval(p)?;
            let a = self.av_eval(p)?;
            rows.push(SplitRow {
                p: [p.p0, p.pvec[0], p.pvec[1], p.pvec[2]],
                ret: [r.value.re, r.value.im],
                av: [a.value.re, a.value.im],
            });
        }
        Ok(SplitExport {
            scalar_id: self.scalar_id.clone(),
            omega: self.omega,
            normalization_point: [
                self.normalization_point.p0,
                self.normalization_point.pvec[0],
                self.normalization_point.pvec[1],
                self.normalization_point.pvec[2],
            ],
            freedom: self.freedom.iter().map(|(a, cv)| (*a, [cv.re, cv.im])).collect(),
            grid: rows,
        })
    }
}

/// av := ret - d as an explicit operation on a split result.
pub fn advanced_from_ret(split: &SplitResult, p: &Momentum4) -> Result<RetValue> {
    split.av_eval(p)
}

/// Adds freedom coefficients C_alpha (|alpha| <= omega) to a split result.
pub fn add_freedom(
    mut split: SplitResult,
    coeffs: Vec<(crate::testfn::MultiIndex, C64)>,
) -> Result<SplitResult> {
    for (alpha, _) in &coeffs {
        let order = crate::testfn::multi_order(alpha) as i32;
        if order > split.omega {
            return Err(Error::FreedomOrderTooHigh { got: order as usize, omega: split.omega });
        }
    }
    split.freedom.extend(coeffs);
    Ok(split)
}

/// Serializable row of a split-result grid export.
#[derive(Serialize)]
pub struct SplitRow {
    pub p: [f64; 4],
    pub ret: [f64; 2],
    pub av: [f64; 2],
}

#[derive(Serialize)]
pub struct SplitExport {
    pub scalar_id: String,
    pub omega: i32,
    pub normalization_point: [f64; 4],
    pub freedom: Vec<([u16; 4], [f64; 2])>,
    pub grid: Vec<SplitRow>,
}

// ---------------------------------------------------------------------------
// Scaling-based singular-order estimation
// ---------------------------------------------------------------------------

/// Least-squares slope of log |<d~, S_{1/lambda} phi~>| against log lambda,
/// minus 4 (the measure scaling), with a standard-error estimate.
/// `pairing(p0, rho, lambda)` is the rotationally reduced integrand of the
/// pairing including the probe at scale lambda; constant angular factors
/// drop out of the slope.
pub fn singular_order_estimate(
    pairing: impl Fn(f64, f64, f64) -> f64,
    lambdas: &[f64],
    quad: &QuadOpts,
) -> (f64, f64) {
    assert!(lambdas.len() >= 3);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &lam in lambdas {
        let cut = 9.0 * lam;
        let (val, _) = integrate(
            |p0| {
                let (inner, _) =
                    integrate(|rho| c(rho * rho * pairing(p0, rho, lam), 0.0), 0.0, cut, quad);
                inner
            },
            -cut,
            cut,
            quad,
        );
        let mag = val.norm();
        if mag > 0.0 {
            xs.push(lam.ln());
            ys.push(mag.ln());
        }
    }
    least_squares_slope(&xs, &ys)
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let resid: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - my - slope * (x - mx);
            e * e
        })
        .sum();
    let stderr = (resid / (n - 2.0).max(1.0) / sxx).sqrt();
    (slope - 4.0, stderr)
}

/// Reduced pairing for an invariant-odd distribution probed by the p0-odd
/// Gaussian p0 exp(-(p0^2+rho^2)/2).
pub fn odd_invariant_pairing(d: &ScalarDistribution) -> impl Fn(f64, f64, f64) -> f64 + '_ {
    move |p0: f64, rho: f64, lam: f64| {
        let p = Momentum4 { p0, pvec: [rho, 0.0, 0.0] };
        let val = d.eval(&p).re;
        if val == 0.0 {
            return 0.0;
        }
        let u0 = p0 / lam;
        let ur = rho / lam;
        val * u0 * (-(u0 * u0 + ur * ur) / 2.0).exp()
    }
}

/// Reduced pairing for a smooth radial distribution probed by the plain
/// Gaussian exp(-(p0^2+rho^2)/2).
pub fn even_radial_pairing(d: &ScalarDistribution) -> impl Fn(f64, f64, f64) -> f64 + '_ {
    move |p0: f64, rho: f64, lam: f64| {
        let p = Momentum4 { p0, pvec: [rho, 0.0, 0.0] };
        let u0 = p0 / lam;
        let ur = rho / lam;
        d.eval(&p).re * (-(u0 * u0 + ur * ur) / 2.0).exp()
    }
}

// ---------------------------------------------------------------------------
// Cutoff scan of the theta-multiplied contraction integrals
// ---------------------------------------------------------------------------

/// Plane-wave kernel family of the scan, through the product u(p) v(p)
/// per contracted field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelFamily {
    /// massless scalar-like kernels u = v = (2 pi)^{-3/2} (2|p|)^{-1/2},
    /// singularity index s = -1/2
    MasslessScalar,
    /// Dirac-like kernels with bounded amplitudes, s = 0
    DiracLike,
}

impl KernelFamily {
    fn uv(&self, r: f64) -> f64 {
        match self {
            KernelFamily::MasslessScalar => (2.0 * PI).powi(-3) / (2.0 * r),
            KernelFamily::DiracLike => (2.0 * PI).powi(-3),
        }
    }
}

/// Evaluates the theta-multiplied q-contraction integral with momentum
/// cutoff Lambda on Gaussian test functions phi~ = psi~ = exp(-|p|^2-p0^2):
///
///   I_q(L) = int_{|p_i|<L} prod_i uv(p_i)
///     { i PV_k [ phi~(-P, -E+k) psi~(P, E-k) ] + pi phi~(-P,-E) psi~(P,E) }
///
/// with P = sum p_i, E = sum |p_i|. The inner regularized k-integral is a
/// Gaussian Hilbert transform (Dawson closed form); for q = 2 the angular
/// integral is carried out exactly.
pub fn contraction_cutoff_scan(
    q: usize,
    cutoff: f64,
    family: KernelFamily,
    quad: &QuadOpts,
) -> C64 {
    assert!(q == 1 || q == 2, "scan covers q = 1, 2");
    match q {
        1 => {
            let (v, _) = integrate(
                |r| {
                    if r <= 0.0 {
                        return c(0.0, 0.0);
                    }
                    let uv = family.uv(r);
                    let pv = pv_gaussian_over_k(2.0, r);
                    let main = c(0.0, (-2.0 * r * r).exp() * pv);
                    let pi_term = c(PI * (-4.0 * r * r).exp(), 0.0);
                    c(4.0 * PI * r * r * uv, 0.0) * (main + pi_term)
                },
                0.0,
                cutoff,
                quad,
            );
            v
        }
        _ => {
            let (v, _) = integrate(
                |r1| {
                    if r1 <= 0.0 {
                        return c(0.0, 0.0);
                    }
                    let (inner, _) = integrate(
                        |r2| {
                            if r2 <= 0.0 {
                                return c(0.0, 0.0);
                            }
                            let uv = family.uv(r1) * family.uv(r2);
                            let e_tot = r1 + r2;
                            // int_{-1}^{1} exp(-2|p1+p2|^2) dcos, in the
                            // overflow-safe difference form
                            let ang = exp_angular(r1, r2);
                            let pv = pv_gaussian_over_k(2.0, e_tot);
                            let main = c(0.0, ang * pv);
                            let pi_term = c(PI * ang * (-2.0 * e_tot * e_tot).exp(), 0.0);
                            c(r1 * r1 * r2 * r2 * uv, 0.0) * (main + pi_term)
                        },
                        0.0,
                        cutoff,
                        quad,
                    );
                    c(8.0 * PI * PI, 0.0) * inner
                },
                0.0,
                cutoff,
                quad,
            );
            v
        }
    }
}

/// int_{-1}^{1} exp(-2 |p1 + p2|^2) dcos with |p1+p2|^2 = r1^2 + r2^2 +
/// 2 r1 r2 cos: equals [e^{-2(r1-r2)^2} - e^{-2(r1+r2)^2}] / (4 r1 r2),
/// which avoids the sinh overflow of the naive form.
fn exp_angular(r1: f64, r2: f64) -> f64 {
    let x = 4.0 * r1 * r2;
    if x < 1e-8 {
        2.0 * (-2.0 * (r1 * r1 + r2 * r2)).exp() * (1.0 + x * x / 24.0)
    } else {
        let dm = r1 - r2;
        let dp = r1 + r2;
        ((-2.0 * dm * dm).exp() - (-2.0 * dp * dp).exp()) / x
    }
}
