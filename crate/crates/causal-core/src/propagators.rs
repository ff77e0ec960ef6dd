//! Position-space pairing functions of the massive scalar field (Bessel
//! closed forms), their massless limit, the closed-form momentum-space
//! contraction distributions of spinor QED, and the Feynman combinations
//! assembled from split parts.

use crate::dirac::{gamma, slash, DiracMatrix};
use crate::error::{Error, Result};
use crate::geometry::{eps, theta, Momentum4, SpacetimePoint};
use crate::numerics::bessel;
use num_complex::Complex64;

pub use crate::dirac::{bar, dirac_u, dirac_v, spin_sum_u, spin_sum_v};

type C64 = Complex64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Distributional layer concentrated on a singular manifold; reported as
/// metadata, never as a numeric value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SingularLayer {
    None,
    /// weight * eps(x0) delta(x.x)
    EpsDeltaCone { weight: f64 },
    /// weight * delta(x.x)
    DeltaCone { weight: f64 },
}

/// Smooth part of a pairing function plus its singular layer descriptor.
#[derive(Clone, Copy, Debug)]
pub struct PairingValue {
    pub smooth: C64,
    pub layer: SingularLayer,
}

fn off_cone_invariant(x: &SpacetimePoint) -> Result<f64> {
    let lam = x.square();
    let scale = x.x0 * x.x0 + x.xvec.iter().map(|v| v * v).sum::<f64>();
    if lam.abs() <= 1e-14 * scale.max(1e-300) {
        return Err(Error::OnLightCone);
    }
    Ok(lam)
}

/// Positive-frequency pairing function D^(+) of the massive scalar field.
///
/// Timelike x:  -(m i / 8 pi sqrt(l)) [N1(m sqrt(l)) - i eps(x0) J1(m sqrt(l))]
/// Spacelike x: -(m i / 4 pi^2 sqrt(-l)) K1(m sqrt(-l)),  l = x.x,
/// plus the layer (1/4 pi) eps(x0) delta(x.x).
pub fn pair_dplus(x: &SpacetimePoint, m: f64) -> Result<PairingValue> {
    assert!(m > 0.0, "mass must be positive");
    let lam = off_cone_invariant(x)?;
    let layer = SingularLayer::EpsDeltaCone { weight: 1.0 / (4.0 * std::f64::consts::PI) };
    let smooth = if lam > 0.0 {
        let z = m * lam.sqrt();
        let pref = c(0.0, -m / (8.0 * std::f64::consts::PI * lam.sqrt()));
        let bracket = c(bessel::n1(z), -eps(x.x0) * bessel::j1(z));
        pref * bracket
    } else {
        let y = m * (-lam).sqrt();
        c(0.0, -m / (4.0 * std::f64::consts::PI.powi(2) * (-lam).sqrt())) * bessel::k1(y)
    };
    Ok(PairingValue { smooth, layer })
}

/// Negative-frequency pairing D^(-); equals -D^(+)(-x).
pub fn pair_dminus(x: &SpacetimePoint, m: f64) -> Result<PairingValue> {
    assert!(m > 0.0, "mass must be positive");
    let lam = off_cone_invariant(x)?;
    let layer = SingularLayer::EpsDeltaCone { weight: 1.0 / (4.0 * std::f64::consts::PI) };
    let smooth = if lam > 0.0 {
        let z = m * lam.sqrt();
        let pref = c(0.0, m / (8.0 * std::f64::consts::PI * lam.sqrt()));
        let bracket = c(bessel::n1(z), eps(x.x0) * bessel::j1(z));
        pref * bracket
    } else {
        let y = m * (-lam).sqrt();
        c(0.0, m / (4.0 * std::f64::consts::PI.powi(2) * (-lam).sqrt())) * bessel::k1(y)
    };
    Ok(PairingValue { smooth, layer })
}

/// Commutation function D = D^(+) + D^(-): causally supported; the smooth
/// part vanishes identically for spacelike x (the K1 terms cancel) and is
/// -(m / 4 pi sqrt(l)) eps(x0) J1(m sqrt(l)) inside the cone.
pub fn commutator_d(x: &SpacetimePoint, m: f64) -> Result<PairingValue> {
    assert!(m > 0.0, "mass must be positive");
    let lam = off_cone_invariant(x)?;
    let layer = SingularLayer::EpsDeltaCone { weight: 1.0 / (2.0 * std::f64::consts::PI) };
    let smooth = if lam > 0.0 {
        let z = m * lam.sqrt();
        c(-m * eps(x.x0) * bessel::j1(z) / (4.0 * std::f64::consts::PI * lam.sqrt()), 0.0)
    } else {
        c(0.0, 0.0)
    };
    Ok(PairingValue { smooth, layer })
}

/// Massless positive-frequency pairing D_0^(+): smooth part i/(4 pi^2 x.x)
/// on either side of the cone.
pub fn pair_d0plus(x: &SpacetimePoint) -> Result<PairingValue> {
    let lam = off_cone_invariant(x)?;
    Ok(PairingValue {
        smooth: c(0.0, 1.0 / (4.0 * std::f64::consts::PI.powi(2) * lam)),
        layer: SingularLayer::EpsDeltaCone { weight: 1.0 / (4.0 * std::f64::consts::PI) },
    })
}

// ---------------------------------------------------------------------------
// Closed-form momentum-space contraction distributions of spinor QED
// ---------------------------------------------------------------------------

/// Scalar coefficient of the two-fermion contraction:
/// -(2 pi)^-3/3 (p^2 + 2 m^2) sqrt(1 - 4 m^2/p^2) theta(p^2-4m^2) theta(-p0).
pub fn c2_scalar(p: &Momentum4, m: f64) -> f64 {
    let s = p.square();
    if s <= 4.0 * m * m || p.p0 >= 0.0 {
        return 0.0;
    }
    let pref = -(2.0 * std::f64::consts::PI).powi(-3) / 3.0;
    pref * (s + 2.0 * m * m) * (1.0 - 4.0 * m * m / s).sqrt()
}

/// Transversal tensor p^mu p^nu / p^2 - g^{mu nu}.
pub fn transversal_tensor(p: &Momentum4) -> Result<[[f64; 4]; 4]> {
    let s = p.square();
    if s == 0.0 {
        return Err(Error::NullMomentum);
    }
    let mut t = [[0.0; 4]; 4];
    for (mu, row) in t.iter_mut().enumerate() {
        for (nu, e) in row.iter_mut().enumerate() {
            let g = if mu == nu { if mu == 0 { 1.0 } else { -1.0 } } else { 0.0 };
            *e = p.up(mu) * p.up(nu) / s - g;
        }
    }
    Ok(t)
}

/// Fourier transform of the two-Dirac contraction C_2^{mu nu}.
pub fn ft_c2(p: &Momentum4, m: f64) -> Result<[[C64; 4]; 4]> {
    let t = transversal_tensor(p)?;
    let s = c2_scalar(p, m);
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            out[mu][nu] = c(t[mu][nu] * s, 0.0);
        }
    }
    Ok(out)
}

/// Fourier transform of the Dirac+photon contraction K_2, exactly the
/// displayed gamma-sandwich form
/// (2^5 pi^3)^-1 theta(p^2-m^2) theta(-p0) (1-m^2/p^2)
///   gamma^mu [ m + (pslash/2)(1 + m^2/p^2) ] gamma_mu.
pub fn ft_k2(p: &Momentum4, m: f64) -> Result<DiracMatrix> {
    let s = p.square();
    if s == 0.0 {
        return Err(Error::NullMomentum);
    }
    if s <= m * m || p.p0 >= 0.0 {
        return Ok(DiracMatrix::zero());
    }
    let pref = (1.0 - m * m / s) / (32.0 * std::f64::consts::PI.powi(3));
    let inner = DiracMatrix::identity().scale(c(m, 0.0))
        + slash(p).scale(c(0.5 * (1.0 + m * m / s), 0.0));
    let mut sandwich = DiracMatrix::zero();
    for mu in 0..4 {
        let sign = if mu == 0 { 1.0 } else { -1.0 }; // gamma_mu = g_{mu mu} gamma^mu
        sandwich = sandwich + (gamma(mu) * inner * gamma(mu)).scale(c(sign, 0.0));
    }
    Ok(sandwich.scale(c(pref, 0.0)))
}

/// Fourier transform of the three-fold contraction C_3 (a scalar):
/// i (2 pi)^-5 theta(p^2-4m^2) theta(-p0) [ (p^4/24 + m^2 p^2/12 + m^4) beta
///   + (m^4/p^2)(4 m^2 - 3 p^2) ln(sqrt(p^2/4m^2) + sqrt(p^2/4m^2 - 1)) ],
/// beta = sqrt(1 - 4 m^2 / p^2).
pub fn ft_c3(p: &Momentum4, m: f64) -> Result<C64> {
    let s = p.square();
    if s == 0.0 {
        return Err(Error::NullMomentum);
    }
    if s <= 4.0 * m * m || p.p0 >= 0.0 {
        return Ok(c(0.0, 0.0));
    }
    Ok(c(0.0, (2.0 * std::f64::consts::PI).powi(-5)) * c3_bracket(s, m))
}

/// The real bracket of C_3 on its support s > 4 m^2.
pub fn c3_bracket(s: f64, m: f64) -> f64 {
    let m2 = m * m;
    let beta = (1.0 - 4.0 * m2 / s).sqrt();
    let r = (s / (4.0 * m2)).sqrt();
    let poly = s * s / 24.0 + m2 * s / 12.0 + m2 * m2;
    poly * beta + (m2 * m2 / s) * (4.0 * m2 - 3.0 * s) * (r + (s / (4.0 * m2) - 1.0).sqrt()).ln()
}

// ---------------------------------------------------------------------------
// Feynman combinations assembled from split parts
// ---------------------------------------------------------------------------

/// Massless Feynman combination D^F_0 = D^ret_0 - D^(+)_0 in position
/// space: smooth part -i/(4 pi^2 x.x), even in x, layer (1/4 pi) delta(x.x).
pub fn feynman_d0_position(x: &SpacetimePoint) -> Result<PairingValue> {
    let ret_minus_plus = {
        // D^ret_0 is pure cone layer; off the cone only -D_0^(+) survives
        let dp = pair_d0plus(x)?;
        -dp.smooth
    };
    Ok(PairingValue {
        smooth: ret_minus_plus,
        layer: SingularLayer::DeltaCone { weight: 1.0 / (4.0 * std::f64::consts::PI) },
    })
}

/// Momentum-space pole value with its on-shell delta layer.
#[derive(Clone, Copy, Debug)]
pub struct PoleValue {
    /// principal-value part, a plain number off the singular manifold
    pub value: C64,
    /// weight of i pi delta(p^2 - m^2)
    pub delta_weight: C64,
}

/// D~^F_0(p) = (2 pi)^-2 [ PV 1/p^2 + i pi delta(p^2) ], assembled from the
/// retarded two-pole form minus the on-shell positive-frequency measure.
pub fn feynman_d0_momentum(p: &Momentum4) -> Result<PoleValue> {
    let s = p.square();
    if s == 0.0 {
        return Err(Error::NullMomentum);
    }
    let n = (2.0 * std::f64::consts::PI).powi(-2);
    Ok(PoleValue { value: c(n / s, 0.0), delta_weight: c(0.0, n * std::f64::consts::PI) })
}

/// Retarded two-pole assembly at finite epsilon:
/// (2 pi)^-2 / ((p0 + i eps)^2 - |pvec|^2 - m^2); the eps -> 0 limit off the
/// shell is the PV part of the Feynman combination (their difference is the
/// on-shell layer). Used by the pole-comparison oracle.
pub fn retarded_pole_assembly(p: &Momentum4, m: f64, epsilon: f64) -> C64 {
    let n = (2.0 * std::f64::consts::PI).powi(-2);
    let p0 = c(p.p0, epsilon);
    let denom = p0 * p0 - c(p.spatial_norm2() + m * m, 0.0);
    c(n, 0.0) / denom
}

/// S^(+)(x) = (i gamma d + m) D^(+)(x), smooth part off the cone.
pub fn s_plus_smooth(x: &SpacetimePoint, m: f64) -> Result<DiracMatrix> {
    s_pm_smooth(x, m, true)
}

/// S^(-)(x) = (i gamma d + m) D^(-)(x), smooth part off the cone.
pub fn s_minus_smooth(x: &SpacetimePoint, m: f64) -> Result<DiracMatrix> {
    s_pm_smooth(x, m, false)
}

fn s_pm_smooth(x: &SpacetimePoint, m: f64, plus: bool) -> Result<DiracMatrix> {
    let lam = off_cone_invariant(x)?;
    let sgn = if plus { 1.0 } else { -1.0 };
    let e0 = eps(x.x0);
    let pi = std::f64::consts::PI;
    // D^(sgn)(x) = F(lam); cylinder-function identity d/dz [C1(z)/z] = -C2(z)/z
    let (f, fp) = if lam > 0.0 {
        // F = sgn (-i m^2 / 8 pi) [N1(z) - sgn i eps J1(z)] / z, z = m sqrt(lam)
        let z = m * lam.sqrt();
        let pref = c(0.0, -sgn * m * m / (8.0 * pi));
        let b1 = c(bessel::n1(z), -sgn * e0 * bessel::j1(z));
        let b2 = c(puruspe::Yn(2, z), -sgn * e0 * puruspe::Jn(2, z));
        // dz/dlam = m^2 / 2z
        (pref * b1 / z, pref * (-b2 / z) * (m * m / (2.0 * z)))
    } else {
        // F = sgn (-i m^2 / 4 pi^2) K1(y) / y, y = m sqrt(-lam); dy/dlam = -m^2/2y
        let y = m * (-lam).sqrt();
        let pref = c(0.0, -sgn * m * m / (4.0 * pi * pi));
        let k1 = bessel::k1(y);
        let k2 = puruspe::Kn(2, y);
        (pref * k1 / y, pref * k2 * m * m / (2.0 * y * y))
    };
    // (i gamma^mu d_mu + m) F(x.x) = 2 i F'(lam) xslash + m F
    let xm = Momentum4 { p0: x.x0, pvec: x.xvec };
    Ok(slash(&xm).scale(c(0.0, 2.0) * fp) + DiracMatrix::identity().scale(c(m, 0.0) * f))
}

/// S^F(x) off the cone: theta(-x0) S^(-)(x) - theta(x0) S^(+)(x).
pub fn feynman_s_position(x: &SpacetimePoint, m: f64) -> Result<DiracMatrix> {
    off_cone_invariant(x)?;
    if x.x0 < 0.0 {
        s_minus_smooth(x, m)
    } else {
        Ok(s_plus_smooth(x, m)?.scale(c(-1.0, 0.0)))
    }
}

/// Equivalent assembly -S_av(x) - S^(+)(x) with S_av = S_ret - S,
/// S_ret = theta(x0) (S^(+) + S^(-)); used as a consistency route.
pub fn feynman_s_position_via_av(x: &SpacetimePoint, m: f64) -> Result<DiracMatrix> {
    let sp = s_plus_smooth(x, m)?;
    let sm = s_minus_smooth(x, m)?;
    let s = sp + sm;
    let s_ret = s.scale(c(theta(x.x0), 0.0));
    let s_av = s_ret - s;
    Ok(s_av.scale(c(-1.0, 0.0)) - sp)
}

/// S~^F(p) PV part: -(2 pi)^-2 (pslash + m)/(p^2 - m^2), with the layer
/// -i pi (2 pi)^-2 (pslash + m) delta(p^2 - m^2) reported via `delta_weight`
/// applied to the same matrix.
pub fn feynman_s_momentum(p: &Momentum4, m: f64) -> Result<(DiracMatrix, C64)> {
    let s = p.square();
    if s == m * m {
        return Err(Error::NullMomentum);
    }
    let n = -(2.0 * std::f64::consts::PI).powi(-2) / (s - m * m);
    let num = slash(p) + DiracMatrix::identity().scale(c(m, 0.0));
    Ok((num.scale(c(n, 0.0)), c(0.0, -std::f64::consts::PI * (2.0 * std::f64::consts::PI).powi(-2))))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn dplus_spacelike_matches_k1_form() {
        let x = SpacetimePoint::new(0.3, 1.2, 0.0, 0.5);
        let m = 1.0;
        let lam = x.square();
        assert!(lam < 0.0);
        let want = c(0.0, -m / (4.0 * PI * PI * (-lam).sqrt())) * bessel::k1(m * (-lam).sqrt());
        let got = pair_dplus(&x, m).unwrap();
        assert!((got.smooth - want).norm() < 1e-15);
        assert_eq!(got.layer, SingularLayer::EpsDeltaCone { weight: 1.0 / (4.0 * PI) });
    }

    #[test]
    fn dplus_timelike_forward() {
        let x = SpacetimePoint::new(2.0, 0.0, 0.0, 0.0);
        let m = 1.0;
        let z = 2.0;
        let want = c(0.0, -1.0 / (8.0 * PI * 2.0)) * c(bessel::n1(z), -bessel::j1(z));
        let got = pair_dplus(&x, m).unwrap().smooth;
        assert!((got - want).norm() < 1e-15);
    }

    #[test]
    fn on_cone_rejected() {
        let x = SpacetimePoint::new(1.0, 1.0, 0.0, 0.0);
        assert!(matches!(pair_dplus(&x, 1.0), Err(Error::OnLightCone)));
    }

    #[test]
    fn commutator_vanishes_spacelike_and_is_odd_timelike() {
        let m = 1.0;
        let xs = SpacetimePoint::new(0.1, 0.7, -0.4, 0.2);
        assert_eq!(commutator_d(&xs, m).unwrap().smooth, c(0.0, 0.0));
        // sum of the two pairings cancels exactly as well
        let s = pair_dplus(&xs, m).unwrap().smooth + pair_dminus(&xs, m).unwrap().smooth;
        assert!(s.norm() < 1e-18);

        let xt = SpacetimePoint::new(1.5, 0.3, 0.0, 0.0);
        let v = commutator_d(&xt, m).unwrap().smooth;
        let vr = commutator_d(&xt.neg(), m).unwrap().smooth;
        assert!((v + vr).norm() < 1e-15, "eps(x0) oddness");
        // direct closed form
        let lam = xt.square();
        let want = -m * bessel::j1(m * lam.sqrt()) / (4.0 * PI * lam.sqrt());
        assert!((v.re - want).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
        // assembly from the two pairings agrees
        let s2 = pair_dplus(&xt, m).unwrap().smooth + pair_dminus(&xt, m).unwrap().smooth;
        assert!((s2 - v).norm() < 1e-15);
    }

    #[test]
    fn c2_support_and_transversality() {
        let m = 1.0;
        // p0 > 0: zero
        let p = Momentum4::new(3.0, 0.5, 0.0, 0.0);
        assert_eq!(c2_scalar(&p, m), 0.0);
        // on support: transversal
        let p = Momentum4::new(-3.0, 0.5, 0.2, -0.1);
        assert!(p.square() > 4.0 * m * m);
        let t = ft_c2(&p, m).unwrap();
        for nu in 0..4 {
            let mut contraction = c(0.0, 0.0);
            for mu in 0..4 {
                contraction += c(p.down(mu), 0.0) * t[mu][nu];
            }
            assert!(contraction.norm() < 1e-14 * t[0][0].norm().max(1.0));
        }
        assert!(c2_scalar(&p, m) != 0.0);
    }

    #[test]
    fn c2_threshold_vanishing() {
        let m = 1.0;
        let s_values = [4.0001, 4.001, 4.01];
        let mut mags: Vec<f64> = Vec::new();
        for s in s_values {
            let p = Momentum4::new(-(s as f64).sqrt(), 0.0, 0.0, 0.0);
            mags.push(c2_scalar(&p, m).abs());
        }
        // magnitude shrinks like sqrt(1 - 4 m^2/p^2) toward threshold
        assert!(mags[0] < mags[1] && mags[1] < mags[2]);
        let ratio = mags[0] / mags[1];
        let want = ((1.0f64 - 4.0 / 4.0001) / (1.0 - 4.0 / 4.001)).sqrt()
            * (4.0001 + 2.0) / (4.001 + 2.0);
        assert!((ratio - want).abs() < 1e-3);
    }

    #[test]
    fn k2_gamma_sandwich_matches_simplified_form() {
        // gamma^mu [ m + (pslash/2) c ] gamma_mu = 4 m - pslash c (matrix oracle)
        let m = 0.9;
        let p = Momentum4::new(-2.5, 0.4, -0.3, 1.0);
        let got = ft_k2(&p, m).unwrap();
        let s = p.square();
        let pref = (1.0 - m * m / s) / (32.0 * PI.powi(3));
        let simplified = (DiracMatrix::identity().scale(c(4.0 * m, 0.0))
            - slash(&p).scale(c(1.0 + m * m / s, 0.0)))
        .scale(c(pref, 0.0));
        assert!((got - simplified).max_abs() < 1e-15);
    }

    #[test]
    fn k2_support() {
        let m = 1.0;
        assert_eq!(ft_k2(&Momentum4::new(2.0, 0.0, 0.0, 0.0), m).unwrap().max_abs(), 0.0);
        assert_eq!(ft_k2(&Momentum4::new(-0.9, 0.0, 0.0, 0.0), m).unwrap().max_abs(), 0.0);
        assert!(ft_k2(&Momentum4::new(-1.5, 0.0, 0.0, 0.0), m).unwrap().max_abs() > 0.0);
    }

    #[test]
    fn c3_support_and_sign() {
        let m = 1.0;
        assert_eq!(ft_c3(&Momentum4::new(5.0, 0.0, 0.0, 0.0), m).unwrap(), c(0.0, 0.0));
        assert_eq!(ft_c3(&Momentum4::new(-1.0, 0.0, 0.0, 0.0), m).unwrap(), c(0.0, 0.0));
        // bracket positive well above threshold
        for s in [30.0, 100.0, 1000.0] {
            assert!(c3_bracket(s, m) > 0.0, "s = {s}");
        }
        let v = ft_c3(&Momentum4::new(-6.0, 1.0, 0.0, 0.0), m).unwrap();
        assert_eq!(v.re, 0.0);
        assert!(v.im != 0.0);
    }

    #[test]
    fn s_pm_matches_finite_difference_of_dpm() {
        // S^(+) = (i gamma d + m) D^(+): check the derivative assembly by
        // central differences of the smooth part, away from the cone.
        let m = 1.0;
        for x in [
            SpacetimePoint::new(2.0, 0.4, 0.1, -0.2),
            SpacetimePoint::new(0.2, 1.5, -0.3, 0.6),
            SpacetimePoint::new(-1.8, 0.2, 0.5, 0.1),
        ] {
            let h = 1e-5;
            let mut fd = DiracMatrix::zero();
            for mu in 0..4 {
                let mut xp = x;
                let mut xm = x;
                match mu {
                    0 => {
                        xp.x0 += h;
                        xm.x0 -= h;
                    }
                    k => {
                        xp.xvec[k - 1] += h;
                        xm.xvec[k - 1] -= h;
                    }
                }
                let dp = (pair_dplus(&xp, m).unwrap().smooth
                    - pair_dplus(&xm, m).unwrap().smooth)
                    / c(2.0 * h, 0.0);
                // i gamma^mu d_mu with d_mu = covariant derivative: d/dx^mu
                fd = fd + gamma(mu).scale(c(0.0, 1.0) * dp * c(if mu == 0 { 1.0 } else { 1.0 }, 0.0));
            }
            let want = fd
                + DiracMatrix::identity().scale(c(m, 0.0) * pair_dplus(&x, m).unwrap().smooth);
            let got = s_plus_smooth(&x, m).unwrap();
            assert!(
                (got - want).max_abs() < 1e-7 * want.max_abs().max(1e-3),
                "x = {x:?}: diff {}",
                (got - want).max_abs()
            );
        }
    }

    #[test]
    fn feynman_s_two_routes_agree() {
        let m = 1.0;
        for x in [
            SpacetimePoint::new(1.7, 0.2, 0.0, 0.3),
            SpacetimePoint::new(-1.1, 0.4, 0.2, 0.0),
            SpacetimePoint::new(0.3, 2.0, -0.7, 0.5),
        ] {
            let a = feynman_s_position(&x, m).unwrap();
            let b = feynman_s_position_via_av(&x, m).unwrap();
            assert!((a - b).max_abs() < 1e-14 * a.max_abs().max(1e-6));
        }
    }

    #[test]
    fn feynman_d0_even_in_x() {
        for x in [
            SpacetimePoint::new(1.7, 0.2, 0.0, 0.3),
            SpacetimePoint::new(0.3, 2.0, -0.7, 0.5),
        ] {
            let a = feynman_d0_position(&x).unwrap().smooth;
            let b = feynman_d0_position(&x.neg()).unwrap().smooth;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn feynman_pole_assembly_extrapolates_to_closed_form() {
        // two-pole retarded assembly at eps -> 0 against the single pole
        for (p, m) in [
            (Momentum4::new(1.3, 0.4, 0.0, 0.0), 0.0),
            (Momentum4::new(0.2, 1.1, -0.5, 0.3), 0.0),
            (Momentum4::new(2.0, 0.3, 0.0, 0.1), 1.0),
        ] {
            let s = p.square() - m * m;
            let closed = (2.0 * PI).powi(-2) / s;
            // Richardson in eps: f(eps) = f0 + a eps^2 for this symmetric point set
            let f1 = retarded_pole_assembly(&p, m, 1e-3).re;
            let f2 = retarded_pole_assembly(&p, m, 5e-4).re;
            let extrap = (4.0 * f2 - f1) / 3.0;
            assert!(
                (extrap - closed).abs() < 1e-8 * closed.abs(),
                "p {p:?}: {extrap} vs {closed}"
            );
        }
    }
}
