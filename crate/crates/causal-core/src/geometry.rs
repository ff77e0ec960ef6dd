//! Minkowski four-vectors with signature (+,-,-,-).

use serde::{Deserialize, Serialize};

/// Momentum four-vector in natural units (components of mass).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Momentum4 {
    pub p0: f64,
    pub pvec: [f64; 3],
}

/// Space-time point; `x.x = x0^2 - |xvec|^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub x0: f64,
    pub xvec: [f64; 3],
}

impl Momentum4 {
    pub const fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        Momentum4 { p0, pvec: [p1, p2, p3] }
    }

    pub fn zero() -> Self {
        Momentum4::new(0.0, 0.0, 0.0, 0.0)
    }

    /// Lorentz square p.p = p0^2 - |pvec|^2.
    pub fn square(&self) -> f64 {
        self.p0 * self.p0 - self.spatial_norm2()
    }

    pub fn spatial_norm2(&self) -> f64 {
        self.pvec.iter().map(|c| c * c).sum()
    }

    /// Contravariant component p^mu.
    pub fn up(&self, mu: usize) -> f64 {
        match mu {
            0 => self.p0,
            k => self.pvec[k - 1],
        }
    }

    /// Covariant component p_mu = g_{mu nu} p^nu.
    pub fn down(&self, mu: usize) -> f64 {
        match mu {
            0 => self.p0,
            k => -self.pvec[k - 1],
        }
    }

    pub fn dot(&self, other: &Momentum4) -> f64 {
        self.p0 * other.p0
            - self.pvec.iter().zip(&other.pvec).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn scale(&self, t: f64) -> Momentum4 {
        Momentum4 {
            p0: t * self.p0,
            pvec: [t * self.pvec[0], t * self.pvec[1], t * self.pvec[2]],
        }
    }

    pub fn add(&self, other: &Momentum4) -> Momentum4 {
        Momentum4 {
            p0: self.p0 + other.p0,
            pvec: [
                self.pvec[0] + other.pvec[0],
                self.pvec[1] + other.pvec[1],
                self.pvec[2] + other.pvec[2],
            ],
        }
    }

    pub fn neg(&self) -> Momentum4 {
        self.scale(-1.0)
    }

    pub fn is_timelike(&self) -> bool {
        self.square() > 0.0
    }
}

impl SpacetimePoint {
    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        SpacetimePoint { x0, xvec: [x1, x2, x3] }
    }

    pub fn square(&self) -> f64 {
        self.x0 * self.x0 - self.xvec.iter().map(|c| c * c).sum::<f64>()
    }

    pub fn dot_versor(&self, v: &Versor) -> f64 {
        self.x0 * v.v0 - self.xvec.iter().zip(&v.vvec).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn neg(&self) -> SpacetimePoint {
        SpacetimePoint {
            x0: -self.x0,
            xvec: [-self.xvec[0], -self.xvec[1], -self.xvec[2]],
        }
    }
}

/// Unit timelike versor (v.v = 1, v0 > 0) fixing the reference frame of a
/// non-invariant splitting.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Versor {
    pub v0: f64,
    pub vvec: [f64; 3],
}

impl Versor {
    /// Rest-frame versor (1,0,0,0).
    pub fn rest() -> Self {
        Versor { v0: 1.0, vvec: [0.0, 0.0, 0.0] }
    }

    /// Versor boosted with rapidity `eta` along the given spatial axis (0,1,2).
    pub fn boosted(eta: f64, axis: usize) -> Self {
        let mut vvec = [0.0; 3];
        vvec[axis] = eta.sinh();
        Versor { v0: eta.cosh(), vvec }
    }

    pub fn square(&self) -> f64 {
        self.v0 * self.v0 - self.vvec.iter().map(|c| c * c).sum::<f64>()
    }

    pub fn as_momentum(&self) -> Momentum4 {
        Momentum4 { p0: self.v0, pvec: self.vvec }
    }

    pub fn dot(&self, p: &Momentum4) -> f64 {
        self.v0 * p.p0 - self.vvec.iter().zip(&p.pvec).map(|(a, b)| a * b).sum::<f64>()
    }
}

/// Sign function with sgn(0) = 0.
pub fn eps(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Step function, theta(0) = 1.
pub fn theta(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_signature() {
        let p = Momentum4::new(2.0, 1.0, 0.0, 0.0);
        assert_eq!(p.square(), 3.0);
        assert_eq!(p.up(1), 1.0);
        assert_eq!(p.down(1), -1.0);
        assert_eq!(p.down(0), 2.0);
    }

    #[test]
    fn boosted_versor_is_unit() {
        let v = Versor::boosted(0.7, 2);
        assert!((v.square() - 1.0).abs() < 1e-14);
        assert!(v.v0 > 0.0);
    }
}
