//! Dirac algebra in the chiral representation: gamma matrices, slash
//! contraction, and the plane-wave spinors u_s, v_s.

use crate::error::{Error, Result};
use crate::geometry::Momentum4;
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

pub type C64 = Complex64;

/// Dense complex 4x4 matrix; all we need for the spinor bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracMatrix(pub [[C64; 4]; 4]);

impl DiracMatrix {
    pub fn zero() -> Self {
        DiracMatrix([[C64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= c;
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    /// Outer product a b^T (no conjugation; pair with `bar` for spinor sums).
    pub fn outer(a: &[C64; 4], b: &[C64; 4]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = a[i] * b[j];
            }
        }
        m
    }
}

impl Add for DiracMatrix {
    type Output = DiracMatrix;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for DiracMatrix {
    type Output = DiracMatrix;
    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl Mul for DiracMatrix {
    type Output = DiracMatrix;
    fn mul(self, rhs: Self) -> Self {
        let mut m = DiracMatrix::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..4 {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// gamma^mu in the chiral representation:
/// gamma^0 = offdiag(1,1), gamma^k = offdiag(-sigma_k, sigma_k).
pub fn gamma(mu: usize) -> DiracMatrix {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match mu {
        0 => DiracMatrix([
            [o, o, one, o],
            [o, o, o, one],
            [one, o, o, o],
            [o, one, o, o],
        ]),
        1 => DiracMatrix([
            [o, o, o, -one],
            [o, o, -one, o],
            [o, one, o, o],
            [one, o, o, o],
        ]),
        2 => DiracMatrix([
            [o, o, o, i],
            [o, o, -i, o],
            [o, -i, o, o],
            [i, o, o, o],
        ]),
        3 => DiracMatrix([
            [o, o, -one, o],
            [o, o, o, one],
            [one, o, o, o],
            [o, -one, o, o],
        ]),
        _ => panic!("gamma index out of range"),
    }
}

/// Metric g^{mu mu} on the diagonal, signature (+,-,-,-).
pub fn metric(mu: usize, nu: usize) -> f64 {
    if mu != nu {
        0.0
    } else if mu == 0 {
        1.0
    } else {
        -1.0
    }
}

/// pslash = gamma^mu p_mu.
pub fn slash(p: &Momentum4) -> DiracMatrix {
    let mut m = DiracMatrix::zero();
    for mu in 0..4 {
        m = m + gamma(mu).scale(c(p.down(mu), 0.0));
    }
    m
}

fn energy(pvec: &[f64; 3], m: f64) -> f64 {
    (pvec.iter().map(|x| x * x).sum::<f64>() + m * m).sqrt()
}

/// p.sigma acting on 2-spinors.
fn p_dot_sigma(pvec: &[f64; 3]) -> [[C64; 2]; 2] {
    // sigma_1, sigma_2, sigma_3 standard Pauli matrices
    [
        [c(pvec[2], 0.0), c(pvec[0], -pvec[1])],
        [c(pvec[0], pvec[1]), c(-pvec[2], 0.0)],
    ]
}

fn chi(s: usize) -> [C64; 2] {
    match s {
        1 => [c(1.0, 0.0), c(0.0, 0.0)],
        2 => [c(0.0, 0.0), c(1.0, 0.0)],
        _ => panic!("spin index must be 1 or 2"),
    }
}

fn apply2(m: &[[C64; 2]; 2], v: &[C64; 2]) -> [C64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// Positive-frequency Dirac spinor u_s(pvec), chiral representation,
/// normalized so that u^dagger u = 1.
pub fn dirac_u(s: usize, pvec: &[f64; 3], m: f64) -> Result<[C64; 4]> {
    spinor(s, pvec, m, true)
}

/// Negative-frequency Dirac spinor v_s(pvec); lower doublet carries the
/// opposite relative sign.
pub fn dirac_v(s: usize, pvec: &[f64; 3], m: f64) -> Result<[C64; 4]> {
    spinor(s, pvec, m, false)
}

fn spinor(s: usize, pvec: &[f64; 3], m: f64, positive: bool) -> Result<[C64; 4]> {
    if m <= 0.0 {
        return Err(Error::MasslessDirac);
    }
    let e = energy(pvec, m);
    let norm = 0.5 * ((e + m) / e).sqrt(); // (1/sqrt2) sqrt((E+m)/2E)
    let x = chi(s);
    let ps = p_dot_sigma(pvec);
    let psx = apply2(&ps, &x);
    let a = 1.0 / (e + m);
    let upper = [x[0] + psx[0] * a, x[1] + psx[1] * a];
    let mut lower = [x[0] - psx[0] * a, x[1] - psx[1] * a];
    if !positive {
        lower = [-lower[0], -lower[1]];
    }
    Ok([
        upper[0] * norm,
        upper[1] * norm,
        lower[0] * norm,
        lower[1] * norm,
    ])
}

/// Dirac adjoint row: ubar = u^dagger gamma^0.
pub fn bar(u: &[C64; 4]) -> [C64; 4] {
    // (u^dagger gamma0)_j = sum_i conj(u_i) gamma0_{i j}; gamma0 swaps doublets
    [u[2].conj(), u[3].conj(), u[0].conj(), u[1].conj()]
}

/// sum_s u_s(p) ubar_s(p) as a matrix (the positive-energy projector density).
pub fn spin_sum_u(pvec: &[f64; 3], m: f64) -> Result<DiracMatrix> {
    let mut acc = DiracMatrix::zero();
    for s in [1, 2] {
        let u = dirac_u(s, pvec, m)?;
        acc = acc + DiracMatrix::outer(&u, &bar(&u));
    }
    Ok(acc)
}

/// sum_s v_s(p) vbar_s(p).
pub fn spin_sum_v(pvec: &[f64; 3], m: f64) -> Result<DiracMatrix> {
    let mut acc = DiracMatrix::zero();
    for s in [1, 2] {
        let v = dirac_v(s, pvec, m)?;
        acc = acc + DiracMatrix::outer(&v, &bar(&v));
    }
    Ok(acc)
}
