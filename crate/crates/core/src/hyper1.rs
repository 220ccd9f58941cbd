//! Rank-one hypergeometric functions.
//!
//! `F_lambda(exp H) = 2F1(rho~ + lambda, rho~ - lambda; (m_half + m + 1)/2;
//! -sinh^2(u/2))` with `u = beta(H)` and `rho~ = (m_half/2 + m)/2`. The 2F1
//! argument is real and nonpositive on every production path; three regimes
//! cover it: exact terminating series (lattice spectral parameters), the
//! defining series after a Pfaff map `z -> z/(z-1)`, and the `1/z` connection
//! formula for the far range where the Pfaff series stalls.

use crate::gammac::{gamma, gamma_ratio};
use num_complex::Complex64;
use thiserror::Error;

const C1: Complex64 = Complex64::new(1.0, 0.0);
const MAX_TERMS: usize = 200_000;

#[derive(Debug, Error)]
pub enum Hyper1Error {
    #[error("2F1 series did not converge (argument {0})")]
    NoConvergence(f64),
    #[error("c = {0} is a nonpositive integer reached before termination")]
    InvalidC(Complex64),
    #[error("argument {0} outside the supported range")]
    BadArgument(f64),
    #[error("connection formula degenerate: a - b = {0} is an integer")]
    DegenerateConnection(Complex64),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

fn near_nonpositive_int(z: Complex64) -> Option<i64> {
    if z.im.abs() < 1e-12 && z.re < 0.5 {
        let n = z.re.round();
        if (z.re - n).abs() < 1e-12 && n <= 0.0 {
            return Some(n as i64);
        }
    }
    None
}

/// Raw hypergeometric series at `|z| < 1`; exact finite sum when `a` or `b`
/// is a nonpositive integer.
fn series_2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64, Hyper1Error> {
    let n_terminate = [near_nonpositive_int(a), near_nonpositive_int(b)]
        .into_iter()
        .flatten()
        .map(|n| -n)
        .min();
    if let Some(nc) = near_nonpositive_int(c) {
        match n_terminate {
            Some(nt) if nt <= -nc => {}
            _ => return Err(Hyper1Error::InvalidC(c)),
        }
    }
    let mut term = C1;
    let mut acc = C1;
    let mut small_streak = 0;
    for k in 0..MAX_TERMS {
        if let Some(nt) = n_terminate {
            if k as i64 >= nt {
                return Ok(acc);
            }
        }
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        acc += term;
        if term.norm() <= 1e-17 * (1.0 + acc.norm()) {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(acc);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Hyper1Error::NoConvergence(z))
}

/// Gauss hypergeometric function for real argument `z <= 0` (plus `0 < z < 1`
/// for the Legendre-Q closed form). Terminating parameter detection is exact
/// to 1e-12, so lattice evaluations are finite sums.
pub fn gauss_2f1(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: f64,
) -> Result<Complex64, Hyper1Error> {
    if z == 0.0 {
        return Ok(C1);
    }
    if near_nonpositive_int(a).is_some() || near_nonpositive_int(b).is_some() {
        return series_2f1(a, b, c, z);
    }
    if z > 0.0 {
        if z >= 0.95 {
            return Err(Hyper1Error::BadArgument(z));
        }
        return series_2f1(a, b, c, z);
    }
    if z >= -0.5 {
        return series_2f1(a, b, c, z);
    }
    let w = z / (z - 1.0);
    if w <= 0.85 {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)).
        let pre = Complex64::new(1.0 - z, 0.0).powc(-a);
        return Ok(pre * series_2f1(a, c - b, c, w)?);
    }
    connection_large_z(a, b, c, z)
}

/// `1/z` connection formula for `z < -1`, requiring `a - b` off the integers.
fn connection_large_z(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: f64,
) -> Result<Complex64, Hyper1Error> {
    let diff = a - b;
    if diff.im.abs() < 1e-8 && (diff.re - diff.re.round()).abs() < 1e-8 {
        return Err(Hyper1Error::DegenerateConnection(diff));
    }
    let lnmz = (-z).ln();
    let iz = 1.0 / z;
    let term = |p: Complex64, q: Complex64| -> Result<Complex64, Hyper1Error> {
        // Gamma(c) Gamma(q-p) / (Gamma(q) Gamma(c-p)) (-z)^{-p}
        //   2F1(p, p-c+1; p-q+1; 1/z)
        let coef = gamma_ratio(&[c, q - p], &[q, c - p])
            .map_err(|e| Hyper1Error::BadParameter(e.to_string()))?;
        let f = series_2f1(p, p - c + 1.0, p - q + 1.0, iz)?;
        Ok(coef * (-p * lnmz).exp() * f)
    };
    Ok(term(a, b)? + term(b, a)?)
}

/// Rank-one multiplicity data: `m_half` on `beta/2`, `m` on `beta`.
#[derive(Debug, Clone, Copy)]
pub struct Rank1Params {
    pub m_half: f64,
    pub m: f64,
    /// `rho~ = (m_half/2 + m)/2`.
    pub rho_tilde: f64,
}

impl Rank1Params {
    pub fn new(m_half: f64, m: f64) -> Result<Rank1Params, Hyper1Error> {
        if m <= 0.0 || m_half < 0.0 {
            return Err(Hyper1Error::BadParameter(format!(
                "need m > 0 and m_half >= 0, got ({m_half}, {m})"
            )));
        }
        Ok(Rank1Params {
            m_half,
            m,
            rho_tilde: 0.5 * (m_half / 2.0 + m),
        })
    }

    fn c_param(&self) -> f64 {
        (self.m_half + self.m + 1.0) / 2.0
    }
}

/// `F_lambda(exp H)` in rank one, `u = beta(H)` real, `lambda` the
/// `lambda_beta` coordinate.
pub fn f_lambda_rank1(
    params: &Rank1Params,
    lambda: Complex64,
    u: f64,
) -> Result<Complex64, Hyper1Error> {
    let rt = params.rho_tilde;
    let a = rt + lambda;
    let b = rt - lambda;
    let c = Complex64::new(params.c_param(), 0.0);
    let half = u / 2.0;
    let z = -half.sinh().powi(2);
    if near_nonpositive_int(a).is_some() || near_nonpositive_int(b).is_some() {
        return series_2f1(a, b, c, z);
    }
    if z >= -4.0 {
        return gauss_2f1(a, b, c, z);
    }
    // Far range. The connection formula degenerates as a - b = 2 lambda
    // approaches an integer; since F is entire and even in lambda, average
    // it over a lambda-circle that clears the degenerate set.
    let two_lam = 2.0 * lambda;
    let near_degenerate = two_lam.im.abs() < 0.05 && (two_lam.re - two_lam.re.round()).abs() < 0.1;
    if !near_degenerate {
        return connection_large_z(a, b, c, z);
    }
    let radius = 0.12;
    let n = 16;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let phase = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let l = lambda + Complex64::from_polar(radius, phase);
        acc += connection_large_z(
            Complex64::new(rt, 0.0) + l,
            Complex64::new(rt, 0.0) - l,
            c,
            z,
        )?;
    }
    Ok(acc / n as f64)
}

/// Classical one-variable polynomial families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    LegendreP,
    ChebyshevT,
    ChebyshevU,
    /// Symmetric Jacobi `X_n^{(m-1)/2}` (pass `m` through `Rank1Params::m`).
    SymJacobiX,
    /// Classical Jacobi `P_n^{(a,b)}` with `a = (m_half + m - 1)/2`,
    /// `b = (m - 1)/2` taken from the params.
    JacobiPab,
}

/// Evaluate a classical polynomial; `params` feeds the Jacobi exponents.
pub fn classical_poly(
    kind: PolyKind,
    n: usize,
    params: &Rank1Params,
    x: f64,
) -> Result<f64, Hyper1Error> {
    match kind {
        PolyKind::LegendreP => Ok(three_term(n, x, 0.0, 0.0)),
        PolyKind::ChebyshevT => Ok(three_term(n, x, -0.5, -0.5) / jacobi_pab_norm(n, -0.5)),
        PolyKind::ChebyshevU => {
            Ok(three_term(n, x, 0.5, 0.5) * (n as f64 + 1.0) / jacobi_pab_norm(n, 0.5))
        }
        PolyKind::SymJacobiX => {
            // X_n^{(m-1)/2} = P_n^{(a,a)}/P_n^{(a,a)}(1) with a = (m-1)/2;
            // the recurrence stays stable where the terminating 2F1 form
            // (equivalent, asserted in tests) loses digits to cancellation.
            let a = (params.m - 1.0) / 2.0;
            Ok(jacobi_recurrence(n, a, a, x) / jacobi_pab_norm(n, a))
        }
        PolyKind::JacobiPab => {
            let a = (params.m_half + params.m - 1.0) / 2.0;
            let b = (params.m - 1.0) / 2.0;
            Ok(jacobi_recurrence(n, a, b, x))
        }
    }
}

/// `P_n^{(a,b)}(1) = binom(n+a, n)`.
fn jacobi_pab_norm(n: usize, a: f64) -> f64 {
    let mut v = 1.0;
    for i in 1..=n {
        v *= (a + i as f64) / i as f64;
    }
    v
}

fn three_term(n: usize, x: f64, a: f64, b: f64) -> f64 {
    jacobi_recurrence(n, a, b, x)
}

/// Standard three-term recurrence for `P_n^{(a,b)}`.
fn jacobi_recurrence(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (a - b + (a + b + 2.0) * x);
    for k in 2..=n {
        let kf = k as f64;
        let c1 = 2.0 * kf * (kf + a + b) * (2.0 * kf + a + b - 2.0);
        let c2 = (2.0 * kf + a + b - 1.0)
            * ((2.0 * kf + a + b) * (2.0 * kf + a + b - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + a + b);
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Generating function `G(m, x, tau) = (1 - tau^2)/(1 - 2 tau x + tau^2)^{1 + m/2}`.
pub fn generating_g(m: f64, x: f64, tau: f64) -> Result<f64, Hyper1Error> {
    if tau.abs() >= 1.0 {
        return Err(Hyper1Error::BadParameter(format!(
            "|tau| = {} >= 1",
            tau.abs()
        )));
    }
    let q = 1.0 - 2.0 * tau * x + tau * tau;
    Ok((1.0 - tau * tau) / q.powf(1.0 + m / 2.0))
}

/// Truncated series
/// `sum_{n <= N} (n + m/2) (Gamma(n+m)/Gamma(n+1)) X_n^{(m-1)/2}(x) tau^n`,
/// which converges to `(Gamma(m+1)/2) G(m, x, tau)`.
pub fn generating_series_lhs(m: f64, x: f64, tau: f64, n_max: usize) -> Result<f64, Hyper1Error> {
    if tau.abs() >= 1.0 {
        return Err(Hyper1Error::BadParameter(format!(
            "|tau| = {} >= 1",
            tau.abs()
        )));
    }
    let params = Rank1Params::new(0.0, m)?;
    let mut acc = 0.0;
    let mut tau_pow = 1.0;
    // Gamma(n+m)/Gamma(n+1), updated multiplicatively.
    let mut gratio = gamma(Complex64::new(m, 0.0))
        .map_err(|e| Hyper1Error::BadParameter(e.to_string()))?
        .re;
    for n in 0..=n_max {
        let x_n = classical_poly(PolyKind::SymJacobiX, n, &params, x)?;
        acc += (n as f64 + m / 2.0) * gratio * x_n * tau_pow;
        tau_pow *= tau;
        gratio *= (n as f64 + m) / (n as f64 + 1.0);
    }
    Ok(acc)
}

/// Associated Legendre function of the second kind, as the Gamma-and-2F1
/// closed form (`z > 1`):
/// `Q^mu_nu(z) = e^{mu pi i} Gamma(nu+mu+1) Gamma(1/2) / (2^{nu+1} Gamma(nu+3/2))
///  (z^2-1)^{mu/2} z^{-mu-nu-1} 2F1((nu+mu+2)/2, (nu+mu+1)/2; nu+3/2; z^{-2})`.
pub fn legendre_q(mu: Complex64, nu: Complex64, z: f64) -> Result<Complex64, Hyper1Error> {
    if z <= 1.0 {
        return Err(Hyper1Error::BadArgument(z));
    }
    let pref = gamma_ratio(&[nu + mu + 1.0, Complex64::new(0.5, 0.0)], &[nu + 1.5])
        .map_err(|e| Hyper1Error::BadParameter(e.to_string()))?;
    let phase = (Complex64::new(0.0, std::f64::consts::PI) * mu).exp();
    let two_pow = (-(nu + 1.0) * std::f64::consts::LN_2).exp();
    let alg = Complex64::new(z * z - 1.0, 0.0).powc(mu / 2.0) * (-(mu + nu + 1.0) * z.ln()).exp();
    let f = series_2f1(
        (nu + mu + 2.0) / 2.0,
        (nu + mu + 1.0) / 2.0,
        nu + 1.5,
        1.0 / (z * z),
    )?;
    Ok(phase * pref * two_pow * alg * f)
}
