//! Adaptive Gauss-Kronrod quadrature (real and complex integrands),
//! principal-value integration by symmetric subtraction, and an
//! Euler-averaged tail for oscillatory semi-infinite integrals.

use num_complex::Complex64;

// 15-point Kronrod / 7-point Gauss pair on [-1,1].
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss-Kronrod 15(7) panel; returns (integral, error estimate).
fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        kron += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let err = (h * (kron - gauss)).norm();
    (kron * h, err)
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOpts {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadOpts {
    fn default() -> Self {
        QuadOpts { abs_tol: 1e-12, rel_tol: 1e-10, max_subdivisions: 400 }
    }
}

/// Adaptive integration of a complex-valued integrand on a finite interval.
/// Worst-error-first bisection; returns (value, error estimate).
pub fn integrate<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &QuadOpts,
) -> (Complex64, f64) {
    if a == b {
        return (Complex64::new(0.0, 0.0), 0.0);
    }
    let (v, e) = gk15(&mut f, a, b);
    // (neg_error, a, b, value, error) max-heap on error via sorted Vec
    let mut panels: Vec<(f64, f64, Complex64, f64)> = vec![(a, b, v, e)];
    let mut total = v;
    let mut total_err = e;
    for _ in 0..opts.max_subdivisions {
        let tol = opts.abs_tol.max(opts.rel_tol * total.norm());
        if total_err <= tol {
            break;
        }
        // split the worst panel; NaN errors sort first so they get split
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| {
                x.1 .3
                    .partial_cmp(&y.1 .3)
                    .unwrap_or_else(|| {
                        if x.1 .3.is_nan() {
                            std::cmp::Ordering::Greater
                        } else {
                            std::cmp::Ordering::Less
                        }
                    })
            })
            .unwrap();
        let (pa, pb, pv, pe) = panels.swap_remove(idx);
        let mid = 0.5 * (pa + pb);
        let (v1, e1) = gk15(&mut f, pa, mid);
        let (v2, e2) = gk15(&mut f, mid, pb);
        total += v1 + v2 - pv;
        total_err += e1 + e2 - pe;
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
    }
    (total, total_err)
}

/// Adaptive integration with interior breakpoints (kinks/jumps of the integrand).
pub fn integrate_with_breakpoints<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    opts: &QuadOpts,
) -> (Complex64, f64) {
    let mut pts: Vec<f64> = vec![a];
    let mut bps: Vec<f64> = breakpoints.iter().copied().filter(|t| *t > a && *t < b).collect();
    bps.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.extend(bps);
    pts.push(b);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for w in pts.windows(2) {
        let (v, e) = integrate(&mut f, w[0], w[1], opts);
        total += v;
        err += e;
    }
    (total, err)
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: &QuadOpts) -> (f64, f64) {
    let (v, e) = integrate(|x| Complex64::new(f(x), 0.0), a, b, opts);
    (v.re, e)
}

/// PV integral of f(x)/(x-c) over [a,b] containing the simple pole c.
///
/// The symmetric window [c-d, c+d] is handled by the subtraction
/// int (f(c+u)-f(c-u))/u du on (0,d], the rest by plain quadrature.
pub fn principal_value<F: FnMut(f64) -> Complex64>(
    mut f: F,
    c: f64,
    a: f64,
    b: f64,
    opts: &QuadOpts,
) -> (Complex64, f64) {
    assert!(a < c && c < b, "pole must lie inside the interval");
    let d = (c - a).min(b - c);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    // symmetric core: integrand is smooth at u=0 with value 2 f'(c)
    let (v, e) = integrate(
        |u| {
            if u == 0.0 {
                // removable; the limit 2 f'(c) is irrelevant at a single node
                Complex64::new(0.0, 0.0)
            } else {
                (f(c + u) - f(c - u)) / u
            }
        },
        0.0,
        d,
        opts,
    );
    total += v;
    err += e;
    if a < c - d {
        let (v, e) = integrate(|x| f(x) / Complex64::new(x - c, 0.0), a, c - d, opts);
        total += v;
        err += e;
    }
    if c + d < b {
        let (v, e) = integrate(|x| f(x) / Complex64::new(x - c, 0.0), c + d, b, opts);
        total += v;
        err += e;
    }
    (total, err)
}

/// Integral over [a, +inf) of a decaying integrand via the map t -> a + u/(1-u).
pub fn integrate_to_infinity<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    opts: &QuadOpts,
) -> (Complex64, f64) {
    integrate(
        |u| {
            let om = 1.0 - u;
            let t = a + u / om;
            f(t) / Complex64::new(om * om, 0.0)
        },
        0.0,
        1.0 - 1e-12,
        opts,
    )
}

/// Semi-infinite oscillatory integral int_0^inf f, where the tail of f
/// oscillates with period ~`period`. Integrates to a base cutoff, then
/// accelerates the sequence of partial integrals I(L_k), L_k spaced half a
/// period apart, by `levels` rounds of pairwise averaging (Euler transform).
pub fn oscillatory_tail<F: FnMut(f64) -> Complex64>(
    mut f: F,
    base_cutoff: f64,
    period: f64,
    levels: usize,
    opts: &QuadOpts,
) -> (Complex64, f64) {
    let (base, base_err) = integrate(&mut f, 0.0, base_cutoff, opts);
    let h = 0.5 * period;
    let n = 1 << levels;
    let mut partial = Vec::with_capacity(n + 1);
    let mut acc = base;
    partial.push(acc);
    let mut err = base_err;
    for k in 0..n {
        let (dv, de) = integrate(&mut f, base_cutoff + k as f64 * h, base_cutoff + (k + 1) as f64 * h, opts);
        acc += dv;
        err += de;
        partial.push(acc);
    }
    let mut seq = partial;
    for _ in 0..levels {
        seq = seq.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    // spread of the final averaged sequence bounds the acceleration error
    let spread = seq
        .iter()
        .map(|v| (*v - seq[0]).norm())
        .fold(0.0f64, f64::max);
    (*seq.last().unwrap(), err + spread)
}
