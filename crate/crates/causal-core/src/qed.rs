//! Second-order spinor-QED kernels: the eight-term S-matrix table and the
//! closed-form split kernels (vacuum polarization, self-energy, vacuum
//! bubble), each cross-validated against the dispersion splitting of the
//! raw contraction distributions.

use crate::dirac::{slash, DiracMatrix};
use crate::error::{Error, Result};
use crate::geometry::Momentum4;
use crate::propagators::{c3_bracket, transversal_tensor};
use crate::splitter::{
    pole_weighted_integral, ret_causal, InvariantOdd, ScalarDistribution, SplitOpts,
};
use crate::wick::{enumerate_contractions, ContractionPattern, Vertex};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

type C64 = Complex64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

// ---------------------------------------------------------------------------
// The eight-term S_2 table
// ---------------------------------------------------------------------------

/// One term group of the second-order S-matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct S2Term {
    /// normal-ordered residual monomial, vertex labels 1 and 2
    pub monomial: String,
    /// which coefficient evaluator the term carries
    pub coefficient_id: String,
    /// complex prefactor in front of the coefficient
    pub prefactor: [f64; 2],
    /// scalar id of the associated contraction pattern
    pub pattern_scalar_id: String,
    pub q: usize,
}

/// The eight term groups of S_2 for spinor QED, each linked to a
/// contraction pattern of the two-vertex Wick decomposition.
pub fn s2_table() -> Vec<S2Term> {
    let t = |monomial: &str, coefficient_id: &str, pre: C64, pattern: &str, q: usize| S2Term {
        monomial: monomial.into(),
        coefficient_id: coefficient_id.into(),
        prefactor: [pre.re, pre.im],
        pattern_scalar_id: pattern.into(),
        q,
    };
    vec![
        t(
            ":psi#(1) gamma^mu psi(1) A_mu(1) psi#(2) gamma^nu psi(2) A_nu(2):",
            "unit",
            c(-1.0, 0.0),
            "unit",
            0,
        ),
        t(
            ":psi#(1) psi(1) psi#(2) psi(2): gamma^mu__gamma_mu",
            "dfeyn0",
            c(0.0, -1.0),
            "A>A",
            1,
        ),
        t(
            ":psi#(1) [gamma^mu S A gamma^nu] psi(2) A_mu(1) A_nu(2):",
            "sfeyn_12",
            c(0.0, -1.0),
            "psi>psi#",
            1,
        ),
        t(
            ":psi#(2) [gamma^mu S A gamma^nu] psi(1) A_mu(2) A_nu(1):",
            "sfeyn_21",
            c(0.0, -1.0),
            "psi#>psi",
            1,
        ),
        t(
            ":psi#(2) psi(1):",
            "sigma_21",
            c(0.0, -1.0),
            "A>A*psi#>psi",
            2,
        ),
        t(
            ":psi#(1) psi(2):",
            "sigma_12",
            c(0.0, 1.0),
            "A>A*psi>psi#",
            2,
        ),
        t(":A_mu(1) A_nu(2):", "pi", c(0.0, -1.0), "psi#>psi*psi>psi#", 2),
        t("1", "upsilon", c(1.0, 0.0), "A>A*psi#>psi*psi>psi#", 3),
    ]
}

/// Joins the S_2 table with the pattern enumeration of two QED vertices:
/// every term must resolve to exactly one pattern and vice versa.
pub fn s2_pattern_join(m: f64) -> Result<Vec<(S2Term, ContractionPattern)>> {
    let v1 = Vertex::qed(m, 1);
    let v2 = Vertex::qed(m, 2);
    let pats = enumerate_contractions(&v1, &v2)?;
    let table = s2_table();
    let mut out = Vec::new();
    for term in table {
        let matches: Vec<&ContractionPattern> = pats
            .iter()
            .filter(|p| p.scalar_factor_id == term.pattern_scalar_id && p.q == term.q)
            .collect();
        if matches.len() != 1 {
            return Err(Error::InadmissiblePattern(format!(
                "term `{}` resolves to {} patterns",
                term.coefficient_id,
                matches.len()
            )));
        }
        out.push((term, matches[0].clone()));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Closed-form kernels
// ---------------------------------------------------------------------------

/// Scalar part of the vacuum polarization,
/// Pi~(p) = (1/3) (p^2)^2 int_{4m^2}^inf (s+2m^2) sqrt(1-4m^2/s)
///          / (s^2 (p^2 - s + i0)) ds.
pub fn pi_scalar(p_sq: f64, m: f64, opts: &SplitOpts) -> Result<C64> {
    if p_sq == 0.0 {
        return Err(Error::NullMomentum);
    }
    let m2 = m * m;
    let w = move |s: f64| (s + 2.0 * m2) * (1.0 - 4.0 * m2 / s).sqrt() / (s * s);
    let (integral, _) = pole_weighted_integral(&w, 4.0 * m2, p_sq, &opts.quad);
    Ok(c(p_sq * p_sq / 3.0, 0.0) * integral)
}

/// Vacuum-polarization tensor
/// Pi~_{mu nu}(p) = e^2 (2 pi)^-4 (p_mu p_nu / p^2 - g_{mu nu}) Pi~(p).
pub fn pi_tilde(p: &Momentum4, m: f64, e2: f64, opts: &SplitOpts) -> Result<[[C64; 4]; 4]> {
    let scalar = pi_scalar(p.square(), m, opts)? * e2 * (2.0 * PI).powi(-4);
    let t = transversal_tensor(p)?;
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            // lower indices: p_mu p_nu / p^2 - g_{mu nu} has the same
            // components as the upper-index transversal tensor
            out[mu][nu] = c(t[mu][nu], 0.0) * scalar;
        }
    }
    Ok(out)
}

/// Imaginary part of Pi~ implied by the Sokhotski-Plemelj residue of the
/// defining s-integral: -(pi/3) (p^2 + 2 m^2) sqrt(1 - 4 m^2/p^2) on
/// p^2 > 4 m^2, zero below.
pub fn pi_scalar_absorptive(p_sq: f64, m: f64) -> f64 {
    let m2 = m * m;
    if p_sq <= 4.0 * m2 {
        return 0.0;
    }
    -(PI / 3.0) * (p_sq + 2.0 * m2) * (1.0 - 4.0 * m2 / p_sq).sqrt()
}

/// Self-energy kernel
/// Sigma~(p) = e^2 (2 pi)^-4 { (1 - m^2/p^2) [ln|1 - p^2/m^2| - i pi
/// theta(p^2-m^2)] [m - (pslash/4)(1 + m^2/p^2)] + (m^2/p^2)(pslash/4)
/// - m/4 + (pslash - m)/8 }.
pub fn sigma_tilde(p: &Momentum4, m: f64, e2: f64) -> Result<DiracMatrix> {
    let s = p.square();
    if s == 0.0 {
        return Err(Error::NullMomentum);
    }
    let m2 = m * m;
    let ps = slash(p);
    let ident = DiracMatrix::identity;
    let mut acc = DiracMatrix::zero();
    let bracket_coef = 1.0 - m2 / s;
    if bracket_coef != 0.0 {
        // on-shell limit: the log bracket is suppressed by (1 - m^2/p^2)
        let log_term = c((1.0 - s / m2).abs().ln(), 0.0)
            + if s > m2 { c(0.0, -PI) } else { c(0.0, 0.0) };
        let spin = ident().scale(c(m, 0.0)) - ps.scale(c(0.25 * (1.0 + m2 / s), 0.0));
        acc = acc + spin.scale(log_term * bracket_coef);
    }
    acc = acc + ps.scale(c(0.25 * m2 / s, 0.0));
    acc = acc - ident().scale(c(0.25 * m, 0.0));
    acc = acc + (ps - ident().scale(c(m, 0.0))).scale(c(0.125, 0.0));
    Ok(acc.scale(c(e2 * (2.0 * PI).powi(-4), 0.0)))
}

/// The A and B channels of the self-energy contraction matrix
/// [A(s) + B(s) pslash] theta(p^2 - m^2) theta(-p0):
/// A(s) = (2^5 pi^3)^-1 4 m (1 - m^2/s), B(s) = -(2^5 pi^3)^-1 (1 - m^4/s^2).
pub fn k2_channel_a(m: f64) -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
    let m2 = m * m;
    Arc::new(move |s: f64| 4.0 * m * (1.0 - m2 / s) / (32.0 * PI.powi(3)))
}

pub fn k2_channel_b(m: f64) -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
    let m2 = m * m;
    Arc::new(move |s: f64| -(1.0 - m2 * m2 / (s * s)) / (32.0 * PI.powi(3)))
}

/// Causal combination feeding the dispersion route of the self-energy:
/// the identity channel of d_Sigma(p) = -eps(p0) theta(p^2-m^2)
/// [A(s) + B(s) pslash], omega = 1.
pub fn sigma_causal_scalar_channel(m: f64) -> ScalarDistribution {
    let h = k2_channel_a(m);
    invariant_odd_dist("sigma_d_a", m * m, h, 1, m)
}

/// The pslash-coefficient channel of d_Sigma, omega = 1.
pub fn sigma_causal_slash_channel(m: f64) -> ScalarDistribution {
    let h = k2_channel_b(m);
    invariant_odd_dist("sigma_d_b", m * m, h, 1, m)
}

/// The time component of the slash channel, -eps(p0) theta(p^2-m^2) B(s) p0,
/// as a plain scalar distribution: scales with degree 1, the probe target
/// of the singular-order estimator for this contraction.
pub fn sigma_slash_time_component(m: f64) -> ScalarDistribution {
    let b = k2_channel_b(m);
    let thr = m * m;
    ScalarDistribution {
        id: "sigma_d_b_p0".into(),
        eval_p: Arc::new(move |p: &Momentum4| {
            let s = p.square();
            if s > thr {
                c(-crate::geometry::eps(p.p0) * b(s) * p.p0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        }),
        omega: 1,
        causal: true,
        parity: Some(1),
        mass_params: vec![m],
        support_threshold: thr,
        one_sided: false,
        invariant_odd: None,
    }
}

fn invariant_odd_dist(
    id: &str,
    thr: f64,
    h: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    omega: i32,
    m: f64,
) -> ScalarDistribution {
    let he = h.clone();
    ScalarDistribution {
        id: id.into(),
        eval_p: Arc::new(move |p: &Momentum4| {
            let s = p.square();
            if s > thr {
                c(-crate::geometry::eps(p.p0) * he(s), 0.0)
            } else {
                c(0.0, 0.0)
            }
        }),
        omega,
        causal: true,
        parity: Some(-1),
        mass_params: vec![m],
        support_threshold: thr,
        one_sided: false,
        invariant_odd: Some(InvariantOdd { sign: -1.0, threshold: thr, h }),
    }
}

/// Dispersion route to the self-energy: apply the central splitting to the
/// causal combination d_Sigma channel by channel and assemble
///   Sigma~_disp(p) = i [ ret~d_A(p) 1 + ret~d_B(p) pslash ].
/// The factor i converts the contraction normalization to the kernel
/// normalization of the S_2 display (fixed by matching the absorptive
/// parts; see the validation suite).
pub fn sigma_from_dispersion(
    p: &Momentum4,
    m: f64,
    e2: f64,
    opts: &SplitOpts,
) -> Result<DiracMatrix> {
    let da = sigma_causal_scalar_channel(m);
    let db = sigma_causal_slash_channel(m);
    let ra = ret_causal(&da, p, opts)?.value;
    let rb = ret_causal(&db, p, opts)?.value;
    let matrix = DiracMatrix::identity().scale(ra) + slash(p).scale(rb);
    Ok(matrix.scale(c(0.0, e2)))
}

/// Splits a matrix of the form a 1 + b pslash into its two channels
/// (a, b) using tr M and tr(pslash M).
pub fn matrix_channels(mat: &DiracMatrix, p: &Momentum4) -> (C64, C64) {
    let a = mat.trace() / 4.0;
    let pm = slash(p) * *mat;
    let b = pm.trace() / (4.0 * p.square());
    (a, b)
}

/// Vacuum bubble kernel Upsilon~ = Upsilon~'' - Upsilon~', principal
/// branches for the logarithms (ambiguous for 0 < p^2 < 4m^2 — flagged in
/// the docs, excluded from tight tolerances).
pub fn upsilon_tilde(p: &Momentum4, m: f64, e2: f64) -> Result<C64> {
    Ok(e2 * (upsilon_dprime(p, m)? - upsilon_prime(p, m)?))
}

/// Upsilon~'(p) = (2 pi)^-5 theta(p^2-4m^2) theta(-p0) [ C_3 bracket ].
pub fn upsilon_prime(p: &Momentum4, m: f64) -> Result<C64> {
    let s = p.square();
    if s == 0.0 {
        return Err(Error::NullMomentum);
    }
    if s <= 4.0 * m * m || p.p0 >= 0.0 {
        return Ok(c(0.0, 0.0));
    }
    Ok(c((2.0 * PI).powi(-5) * c3_bracket(s, m), 0.0))
}

/// Upsilon~''(p) = i (2 pi)^-6 m^4 { 5 p^4/48 m^4 + 2 p^2/3 m^2 + 1
///   + (3 - 4 m^2/p^2) ln^2( sqrt(-p^2/4m^2) + sqrt(1 - p^2/4m^2) )
///   + (p^4/24 m^4 + p^2/12 m^2 + 1) sqrt(1 - 4 m^2/p^2)
///     ln( (sqrt(1-4m^2/p^2) - 1) / (sqrt(1-4m^2/p^2) + 1) ) }.
pub fn upsilon_dprime(p: &Momentum4, m: f64) -> Result<C64> {
    let s = p.square();
    if s == 0.0 {
        return Err(Error::NullMomentum);
    }
    let m2 = m * m;
    let m4 = m2 * m2;
    let z = c(s, 0.0);
    let quarter = z / (4.0 * m2);
    let log1 = ((-quarter).sqrt() + (c(1.0, 0.0) - quarter).sqrt()).ln();
    let beta = (c(1.0, 0.0) - c(4.0 * m2, 0.0) / z).sqrt();
    let log2 = ((beta - 1.0) / (beta + 1.0)).ln();
    let brace = c(5.0 * s * s / (48.0 * m4) + 2.0 * s / (3.0 * m2) + 1.0, 0.0)
        + (c(3.0, 0.0) - c(4.0 * m2, 0.0) / z) * log1 * log1
        + c(s * s / (24.0 * m4) + s / (12.0 * m2) + 1.0, 0.0) * beta * log2;
    Ok(c(0.0, (2.0 * PI).powi(-6) * m4) * brace)
}

// ---------------------------------------------------------------------------
// Vacuum polarization from the splitting route
// ---------------------------------------------------------------------------

/// Conversion between the dispersion-normalized retarded scalar and the
/// kernel normalization of the closed form: the two representations of the
/// same subtracted Cauchy integral differ by exactly 2 pi i / 3 (the 1/3
/// from the trace normalization of the two-fermion contraction, the 2 pi i
/// from the pairing convention). Derived by matching the t-integral to the
/// s-integral; pinned numerically in the validation suite.
pub const PI_FROM_DISPERSION: C64 = C64::new(0.0, 2.0 * PI / 3.0);

/// Vacuum polarization assembled from the splitting: build
/// f(p) = g(p) - g(-p) from the one-sided contraction scalar, apply the
/// central splitting with omega = 2, subtract the one-sided piece of the
/// non-time-ordered product, and attach the transversal tensor:
///
///   Pi~_route(p) = e^2 (2 pi)^-4 (tensor) (2 pi i/3) [ ret~f(p) + g(p) ].
pub fn vacuum_polarization_from_splitting(
    p: &Momentum4,
    m: f64,
    e2: f64,
    opts: &SplitOpts,
) -> Result<[[C64; 4]; 4]> {
    let scalar = vacuum_polarization_scalar_from_splitting(p, m, opts)?;
    let t = transversal_tensor(p)?;
    let mut out = [[c(0.0, 0.0); 4]; 4];
    let pref = scalar * e2 * (2.0 * PI).powi(-4);
    for mu in 0..4 {
        for nu in 0..4 {
            out[mu][nu] = c(t[mu][nu], 0.0) * pref;
        }
    }
    Ok(out)
}

/// Scalar part of the splitting route (comparable to `pi_scalar`).
pub fn vacuum_polarization_scalar_from_splitting(
    p: &Momentum4,
    m: f64,
    opts: &SplitOpts,
) -> Result<C64> {
    let f = ScalarDistribution::vacuum_polarization_f(m);
    let retf = ret_causal(&f, p, opts)?.value;
    // the non-time-ordered subtraction: g(p) = theta(p^2-4m^2) theta(-p0) h
    let m2 = m * m;
    let s = p.square();
    let g = if s > 4.0 * m2 && p.p0 < 0.0 {
        (s + 2.0 * m2) * (1.0 - 4.0 * m2 / s).sqrt()
    } else {
        0.0
    };
    Ok(PI_FROM_DISPERSION * (retf + c(g, 0.0)))
}

// ---------------------------------------------------------------------------
// Freedom-polynomial fitting
// ---------------------------------------------------------------------------

/// Least-squares fit of residual(s) ~ c0 + c1 s over sample points
/// (s, residual); the degree-2 freedom polynomial of an invariant scalar.
pub fn fit_affine_in_s(samples: &[(f64, C64)]) -> (C64, C64) {
    let n = samples.len() as f64;
    let sx: f64 = samples.iter().map(|(s, _)| s).sum();
    let sxx: f64 = samples.iter().map(|(s, _)| s * s).sum();
    let sy: C64 = samples.iter().map(|(_, y)| y).sum();
    let sxy: C64 = samples.iter().map(|(s, y)| y * *s).sum();
    let det = n * sxx - sx * sx;
    let c0 = (sy * sxx - sxy * sx) / det;
    let c1 = (sxy * n - sy * sx) / det;
    (c0, c1)
}

/// Mean of complex samples; the degree-0 freedom coefficient.
pub fn fit_const(samples: &[C64]) -> C64 {
    samples.iter().sum::<C64>() / samples.len() as f64
}
