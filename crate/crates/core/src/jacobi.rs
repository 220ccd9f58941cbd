//! Heckman-Opdam Jacobi polynomials.
//!
//! `P_mu = sum_{nu <= mu} c_{mu nu} M_nu` with `c_{mu mu} = 1` and
//! `<P_mu, M_nu>_m = 0` for `nu < mu`. Coefficients come from two
//! independent routes that must agree:
//!
//! * the eigenvalue recursion of `L_m^T` — for dominant `nu < mu`,
//!   `(<mu+2rho, mu> - <nu+2rho, nu>) c_{mu nu}
//!      = 2 sum_{alpha > 0} m_alpha sum_{k >= 1} <nu + 2k alpha, alpha>
//!        c~_{mu, nu + 2k alpha}`,
//!   where `c~` extends the coefficients W-invariantly through dominant
//!   representatives (lattice steps run over the doubled roots, which is the
//!   convention validated by the orthogonality oracle);
//! * triangular orthogonalization against orbit sums, with the inner
//!   products `<M_a, M_b>_m` computed by torus quadrature.

use crate::gammac::CFunctions;
use crate::quad::{self, QuadError};
use crate::rootsys::{solve_dense, RootSystem, RootSystemError, Weight};
use crate::singular::Singular;
use num_complex::Complex64;
use std::collections::BTreeMap;
use thiserror::Error;

const TAU: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Error)]
pub enum JacobiError {
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("eigenvalue collision between mu = {0:?} and nu = {1:?}: recursion denominator {2:e}")]
    EigenvalueCollision(Vec<i64>, Vec<i64>, f64),
    #[error("saturation set too large: {0} weights (cap 10^4)")]
    SaturationTooLarge(usize),
    #[error(transparent)]
    Singular(#[from] Singular),
    #[error("tail bound needs 0 < r < eps, got r = {0}, eps = {1}")]
    BadTailParameters(f64, f64),
}

/// A point `h = exp(H1 + i H2)` of the complex torus, stored through the
/// duals of `H1` (noncompact part) and `H2` (torus part) in `a*`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint {
    pub h1: Vec<f64>,
    pub h2: Vec<f64>,
}

impl GroupPoint {
    pub fn identity(rank: usize) -> GroupPoint {
        GroupPoint {
            h1: vec![0.0; rank],
            h2: vec![0.0; rank],
        }
    }

    /// Pure torus point from coroot coordinates `s` in `[0,1)^l`:
    /// `H2 = 2 pi sum_j s_j H_{beta_j}`.
    pub fn torus(rs: &RootSystem, s: &[f64]) -> GroupPoint {
        let mut h2 = vec![0.0; rs.rank];
        for (j, &sj) in s.iter().enumerate() {
            let bj = rs.beta_basis[j];
            let beta = &rs.positive_roots[bj];
            let nb = rs.inner(beta, beta);
            for c in 0..rs.rank {
                h2[c] += sj * TAU * 2.0 * beta[c] / nb;
            }
        }
        GroupPoint {
            h1: vec![0.0; rs.rank],
            h2,
        }
    }

    /// Rank-one point with `beta(H1) = u` and `beta(H2) = theta`.
    pub fn rank_one(rs: &RootSystem, u: f64, theta: f64) -> GroupPoint {
        let bi = rs.beta_basis[0];
        let beta = &rs.positive_roots[bi];
        let nb = rs.inner(beta, beta);
        GroupPoint {
            h1: beta.iter().map(|x| u * x / nb).collect(),
            h2: beta.iter().map(|x| theta * x / nb).collect(),
        }
    }

    /// Torus part reduced modulo the period lattice `2 pi {H_alpha}`.
    pub fn reduce_torus_part(&self, rs: &RootSystem) -> GroupPoint {
        let mut h2 = self.h2.clone();
        for j in 0..rs.rank {
            let omega = &rs.fundamental_weights[j];
            let s = rs.inner(&h2, omega) / (2.0 * TAU);
            let k = s.floor();
            if k != 0.0 {
                let bj = rs.beta_basis[j];
                let beta = &rs.positive_roots[bj];
                let nb = rs.inner(beta, beta);
                for c in 0..rs.rank {
                    h2[c] -= k * TAU * 2.0 * beta[c] / nb;
                }
            }
        }
        GroupPoint {
            h1: self.h1.clone(),
            h2,
        }
    }

    /// `||H1||`: distance of the point from the compact torus.
    pub fn noncompact_norm(&self, rs: &RootSystem) -> f64 {
        rs.norm(&self.h1)
    }
}

/// Orbit sum `M_nu(h) = sum_{eta in W nu} e^{eta(log h)}`.
pub fn orbit_sum(rs: &RootSystem, nu: &Weight, h: &GroupPoint) -> Complex64 {
    let orbit = rs.weyl_orbit(nu);
    orbit_sum_precomputed(rs, &orbit, h)
}

fn orbit_sum_precomputed(rs: &RootSystem, orbit: &[Vec<f64>], h: &GroupPoint) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for eta in orbit {
        let re = rs.inner(eta, &h.h1);
        let im = rs.inner(eta, &h.h2);
        acc += Complex64::new(re, im).exp();
    }
    acc
}

/// Sparse expansion of `P_mu` over orbit sums: dominant `nu -> c_{mu nu}`,
/// zero coefficients dropped. Orbits are cached for evaluation.
#[derive(Debug, Clone)]
pub struct OrbitSumExpansion {
    pub mu: Weight,
    pub coeffs: Vec<(Weight, f64)>,
    orbits: Vec<Vec<Vec<f64>>>,
}

impl OrbitSumExpansion {
    fn assemble(rs: &RootSystem, mu: Weight, map: &BTreeMap<Vec<i64>, f64>) -> OrbitSumExpansion {
        let mut coeffs: Vec<(Weight, f64)> = map
            .iter()
            .filter(|(_, &v)| v.abs() > 1e-13)
            .map(|(k, &v)| (weight_of(rs, k), v))
            .collect();
        coeffs.sort_by(|a, b| {
            b.0.total()
                .cmp(&a.0.total())
                .then_with(|| a.0.coords.cmp(&b.0.coords))
        });
        let orbits = coeffs.iter().map(|(w, _)| rs.weyl_orbit(w)).collect();
        OrbitSumExpansion { mu, coeffs, orbits }
    }

    /// `P_mu(h)` as an exact finite sum of exponentials.
    pub fn eval(&self, rs: &RootSystem, h: &GroupPoint) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((_, c), orbit) in self.coeffs.iter().zip(&self.orbits) {
            acc += orbit_sum_precomputed(rs, orbit, h) * *c;
        }
        acc
    }

    /// `P_mu(e) = sum c_{mu nu} |W nu|`.
    pub fn value_at_identity(&self) -> f64 {
        self.coeffs
            .iter()
            .zip(&self.orbits)
            .map(|((_, c), orbit)| c * orbit.len() as f64)
            .sum()
    }

    pub fn coefficient(&self, nu_coords: &[i64]) -> f64 {
        self.coeffs
            .iter()
            .find(|(w, _)| w.coords == nu_coords)
            .map(|(_, c)| *c)
            .unwrap_or(0.0)
    }
}

fn weight_of(rs: &RootSystem, coords: &[i64]) -> Weight {
    rs.weight_from_coords(coords)
}

/// Coefficient routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffMethod {
    Recursion,
    GramSchmidt,
}

/// Jacobi-polynomial engine bound to one root system and its `c`-functions.
pub struct JacobiEngine<'a> {
    pub rs: &'a RootSystem,
    pub cf: &'a CFunctions<'a>,
}

impl<'a> JacobiEngine<'a> {
    pub fn new(rs: &'a RootSystem, cf: &'a CFunctions<'a>) -> JacobiEngine<'a> {
        JacobiEngine { rs, cf }
    }

    pub fn coeffs(
        &self,
        mu: &Weight,
        method: CoeffMethod,
    ) -> Result<OrbitSumExpansion, JacobiError> {
        match method {
            CoeffMethod::Recursion => self.coeffs_recursion(mu),
            CoeffMethod::GramSchmidt => self.coeffs_gram_schmidt(mu, 1e-10),
        }
    }

    /// Eigenvalue-recursion route (see module docs).
    pub fn coeffs_recursion(&self, mu: &Weight) -> Result<OrbitSumExpansion, JacobiError> {
        let rs = self.rs;
        if !mu.is_dominant() {
            return Err(RootSystemError::NotDominant(mu.coords.clone()).into());
        }
        let sat = rs.enumerate_dominant_below(mu)?;
        if sat.len() > 10_000 {
            return Err(JacobiError::SaturationTooLarge(sat.len()));
        }
        // Process in increasing height of mu - nu (a linear extension of
        // the dominance order from the top).
        let height =
            |w: &Weight| -> f64 { mu.ambient.iter().zip(&w.ambient).map(|(a, b)| a - b).sum() };
        let mut order: Vec<usize> = (0..sat.len()).collect();
        order.sort_by(|&i, &j| {
            height(&sat[i])
                .total_cmp(&height(&sat[j]))
                .then_with(|| sat[i].coords.cmp(&sat[j].coords))
        });

        let eig = |w_amb: &[f64]| -> f64 {
            let shifted: Vec<f64> = w_amb
                .iter()
                .zip(&rs.rho)
                .map(|(a, r)| a + 2.0 * r)
                .collect();
            rs.inner(&shifted, w_amb)
        };
        let eig_mu = eig(&mu.ambient);
        let mu_norm = rs.norm(&mu.ambient);

        let mut coeffs: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
        coeffs.insert(mu.coords.clone(), 1.0);

        for &oi in &order {
            let nu = &sat[oi];
            if nu.coords == mu.coords {
                continue;
            }
            let denom = eig_mu - eig(&nu.ambient);
            let scale = eig_mu.abs().max(1.0);
            if denom <= 1e-9 * scale {
                return Err(JacobiError::EigenvalueCollision(
                    mu.coords.clone(),
                    nu.coords.clone(),
                    denom,
                ));
            }
            let mut rhs = 0.0;
            for (ai, alpha) in rs.positive_roots.iter().enumerate() {
                let m_alpha = rs.multiplicities[ai];
                let mut k = 1i64;
                loop {
                    // eta = nu + 2 k alpha.
                    let eta: Vec<f64> = nu
                        .ambient
                        .iter()
                        .zip(alpha)
                        .map(|(n, a)| n + 2.0 * k as f64 * a)
                        .collect();
                    if rs.norm(&eta) > mu_norm + 1e-9 {
                        break;
                    }
                    let rep = rs.dominant_representative(&eta);
                    if let Some(w) = rs.weight_from_ambient(&rep) {
                        if let Some(&c) = coeffs.get(&w.coords) {
                            rhs += m_alpha * rs.inner(&eta, alpha) * c;
                        }
                    }
                    k += 1;
                }
            }
            let val = 2.0 * rhs / denom;
            if val.abs() > 1e-13 {
                coeffs.insert(nu.coords.clone(), val);
            }
        }
        Ok(OrbitSumExpansion::assemble(rs, mu.clone(), &coeffs))
    }

    /// Orthogonalization route: solve
    /// `sum_{nu < mu} c_nu <M_nu, M_nu'> = -<M_mu, M_nu'>` for all `nu' < mu`,
    /// inner products by torus quadrature (a shared Fourier table of the
    /// weight `delta(m, t)`).
    pub fn coeffs_gram_schmidt(
        &self,
        mu: &Weight,
        tol: f64,
    ) -> Result<OrbitSumExpansion, JacobiError> {
        let rs = self.rs;
        if !mu.is_dominant() {
            return Err(RootSystemError::NotDominant(mu.coords.clone()).into());
        }
        let sat = rs.enumerate_dominant_below(mu)?;
        let orbits: Vec<Vec<Vec<f64>>> = sat.iter().map(|w| rs.weyl_orbit(w)).collect();
        let freqs: Vec<Vec<Vec<i64>>> = orbits
            .iter()
            .map(|orbit| orbit.iter().map(|eta| rs.torus_frequencies(eta)).collect())
            .collect();
        // Needed Fourier frequencies: all pairwise differences.
        let mut needed: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
        for fa in &freqs {
            for fb in &freqs {
                for ka in fa {
                    for kb in fb {
                        let d: Vec<i64> = kb.iter().zip(ka).map(|(b, a)| b - a).collect();
                        needed.insert(d);
                    }
                }
            }
        }
        let needed: Vec<Vec<i64>> = needed.into_iter().collect();
        let table = self.weight_fourier_table(&needed, tol)?;
        let coeff_of = |k: &[i64]| -> f64 { table[&k.to_vec()] };

        // <M_a, M_b> = sum_{eta in Wa, eta' in Wb} delta_hat(eta' - eta).
        let pair = |a: usize, b: usize| -> f64 {
            let mut s = 0.0;
            for ka in &freqs[a] {
                for kb in &freqs[b] {
                    let d: Vec<i64> = kb.iter().zip(ka).map(|(x, y)| x - y).collect();
                    s += coeff_of(&d);
                }
            }
            s
        };

        let n = sat.len() - 1; // unknowns: nu < mu (index 0 is mu itself)
        let mut coeffs: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
        coeffs.insert(mu.coords.clone(), 1.0);
        if n > 0 {
            let mut a = vec![vec![0.0; n]; n];
            let mut b = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    a[i][j] = pair(j + 1, i + 1);
                }
                b[i] = -pair(0, i + 1);
            }
            let x = solve_dense(&a, &b);
            for (j, w) in sat.iter().skip(1).enumerate() {
                if x[j].abs() > 1e-11 {
                    coeffs.insert(w.coords.clone(), x[j]);
                }
            }
        }
        Ok(OrbitSumExpansion::assemble(rs, mu.clone(), &coeffs))
    }

    /// Fourier coefficients of the orthogonality weight `delta(m, t)` at the
    /// requested integer frequencies (torus-quadrature refinement).
    fn weight_fourier_table(
        &self,
        freqs: &[Vec<i64>],
        tol: f64,
    ) -> Result<BTreeMap<Vec<i64>, f64>, JacobiError> {
        let rs = self.rs;
        let root_freqs = rs.root_torus_frequencies();
        let mults = rs.multiplicities.clone();
        let weight = move |s: &[f64]| -> f64 {
            let mut w = 1.0;
            for (kf, m) in root_freqs.iter().zip(&mults) {
                let phase: f64 = kf.iter().zip(s).map(|(&k, &sj)| k as f64 * sj).sum();
                w *= (2.0 * (TAU * phase).sin()).abs().powf(*m);
            }
            w
        };
        let vals = quad::torus_fourier_table(weight, rs.rank, freqs, tol, 26)?;
        Ok(freqs.iter().cloned().zip(vals).collect())
    }

    /// `F_{mu+rho}(h) = c(mu + rho) P_mu(h)`.
    pub fn eval_f_discrete(
        &self,
        expansion: &OrbitSumExpansion,
        h: &GroupPoint,
    ) -> Result<Complex64, JacobiError> {
        let lam = self.rs.weight_plus_rho(&expansion.mu);
        let c = self.cf.c(&lam)?;
        Ok(c * expansion.eval(self.rs, h))
    }

    /// Opdam's norm formula `||P_mu||^2 = |W| c~*(-mu-rho)/c~(mu+rho)`.
    pub fn norm_p_squared(&self, mu: &Weight) -> Result<f64, JacobiError> {
        let rs = self.rs;
        let lam = rs.weight_plus_rho(mu);
        let neg: Vec<Complex64> = lam.ambient.iter().map(|z| -z).collect();
        let neg = rs.spectral_from_ambient(&neg);
        let num = self.cf.c_tilde_star(&neg)?;
        let den = self.cf.c_tilde(&lam)?;
        let v = rs.weyl.len() as f64 * (num / den).re;
        Ok(v)
    }

    /// `I_delta = int_T |delta(m,t)| dt = ||P_0||^2`.
    pub fn i_delta(&self) -> Result<f64, JacobiError> {
        self.norm_p_squared(&self.rs.weight_from_coords(&vec![0; self.rs.rank]))
    }

    /// `I_delta` by direct torus quadrature (independent route).
    pub fn i_delta_quadrature(&self, tol: f64) -> Result<f64, JacobiError> {
        let rs = self.rs;
        let root_freqs = rs.root_torus_frequencies();
        let mults = rs.multiplicities.clone();
        let r = quad::torus_quadrature(
            move |s: &[f64]| {
                let mut w = 1.0;
                for (kf, m) in root_freqs.iter().zip(&mults) {
                    let phase: f64 = kf.iter().zip(s).map(|(&k, &sj)| k as f64 * sj).sum();
                    w *= (2.0 * (TAU * phase).sin()).abs().powf(*m);
                }
                Complex64::new(w, 0.0)
            },
            rs.rank,
            tol,
            26,
        )?;
        Ok(r.value.re)
    }

    /// The product formula for `|W|`; must reproduce the group order.
    pub fn card_w_check(&self) -> f64 {
        let rs = self.rs;
        let rho = rs.rho_spectral();
        let mut prod = 1.0;
        for (i, alpha) in rs.positive_roots.iter().enumerate() {
            let ra = rs.lambda_alpha(&rho, alpha).unwrap().re;
            let mh4 = rs.multiplicity_half(alpha) / 4.0;
            let m2 = rs.multiplicities[i] / 2.0;
            prod *= (ra + mh4 + m2) / (ra + mh4);
        }
        prod
    }

    /// `||F_{mu+rho}||^2 = I_delta / d(mu)`.
    pub fn norm_f_squared(&self, mu: &Weight) -> Result<f64, JacobiError> {
        let d = crate::specfun::DFunction::new(self.cf);
        Ok(self.i_delta()? / d.d_at_weight(mu))
    }

    /// `||P_mu||^2` by torus quadrature of `|P_mu|^2 delta` (independent of
    /// the Gamma-product formula).
    pub fn norm_p_squared_quadrature(
        &self,
        expansion: &OrbitSumExpansion,
        tol: f64,
    ) -> Result<f64, JacobiError> {
        let rs = self.rs;
        let root_freqs = rs.root_torus_frequencies();
        let mults = rs.multiplicities.clone();
        let r = quad::torus_quadrature(
            |s: &[f64]| {
                let h = GroupPoint::torus(rs, s);
                let p = expansion.eval(rs, &h);
                let mut w = 1.0;
                for (kf, m) in root_freqs.iter().zip(&mults) {
                    let phase: f64 = kf.iter().zip(s).map(|(&k, &sj)| k as f64 * sj).sum();
                    w *= (2.0 * (TAU * phase).sin()).abs().powf(*m);
                }
                Complex64::new(p.norm_sqr() * w, 0.0)
            },
            rs.rank,
            tol,
            22,
        )?;
        Ok(r.value.re)
    }

    /// Normalized Jacobi transform `fhat(mu) = I_delta^{-1} <f, P_mu>_m`,
    /// with `f` given in torus coordinates.
    pub fn jacobi_transform<F>(
        &self,
        f: F,
        expansion: &OrbitSumExpansion,
        tol: f64,
    ) -> Result<Complex64, JacobiError>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        let rs = self.rs;
        let i_delta = self.i_delta()?;
        let root_freqs = rs.root_torus_frequencies();
        let mults = rs.multiplicities.clone();
        let r = quad::torus_quadrature(
            |s: &[f64]| {
                // conj(P_mu(t)) = P_mu(t^{-1}).
                let h_inv = GroupPoint {
                    h1: vec![0.0; rs.rank],
                    h2: GroupPoint::torus(rs, s).h2.iter().map(|x| -x).collect(),
                };
                let p = expansion.eval(rs, &h_inv);
                let mut w = 1.0;
                for (kf, m) in root_freqs.iter().zip(&mults) {
                    let phase: f64 = kf.iter().zip(s).map(|(&k, &sj)| k as f64 * sj).sum();
                    w *= (2.0 * (TAU * phase).sin()).abs().powf(*m);
                }
                f(s) * p * w
            },
            rs.rank,
            tol,
            22,
        )?;
        Ok(r.value / i_delta)
    }

    /// Partial Jacobi series `sum_{|mu| <= N} d(mu) c(mu+rho) fhat(mu) F_{mu+rho}(h)`.
    pub fn jacobi_series_partial<G>(
        &self,
        fhat: G,
        h: &GroupPoint,
        cutoff: i64,
    ) -> Result<Complex64, JacobiError>
    where
        G: Fn(&Weight) -> Complex64,
    {
        let rs = self.rs;
        let d = crate::specfun::DFunction::new(self.cf);
        let mut acc = Complex64::new(0.0, 0.0);
        for mu in enumerate_dominant_upto(rs, cutoff) {
            let expansion = self.coeffs_recursion(&mu)?;
            let f_mu = self.eval_f_discrete(&expansion, h)?;
            let lam = rs.weight_plus_rho(&mu);
            let c = self.cf.c(&lam)?;
            acc += d.d_at_weight(&mu) * c * fhat(&mu) * f_mu;
        }
        Ok(acc)
    }

    /// Upper bound for `sum_{|mu| > N} d(mu) C e^{-(eps - r) ||mu||}`,
    /// via a fitted polynomial-growth constant for `d` and exact counting
    /// of the weight shells.
    pub fn series_tail_bound(&self, c: f64, eps: f64, r: f64, n: i64) -> Result<f64, JacobiError> {
        if r >= eps || r < 0.0 {
            return Err(JacobiError::BadTailParameters(r, eps));
        }
        if c == 0.0 {
            return Ok(0.0);
        }
        let rs = self.rs;
        let m_exp = rs.growth_exponent;
        let d = crate::specfun::DFunction::new(self.cf);
        // Fit K in d(mu) <= K (1 + ||mu + rho||)^M over a sample range,
        // with a safety factor for the asymptotic approach from below.
        let mut k_fit: f64 = 0.0;
        for mu in enumerate_dominant_upto(rs, 30.min(6 * (n.max(5)))) {
            let shifted: Vec<f64> = mu.ambient.iter().zip(&rs.rho).map(|(a, b)| a + b).collect();
            let env = (1.0 + rs.norm(&shifted)).powf(m_exp);
            k_fit = k_fit.max(d.d_at_weight(&mu) / env);
        }
        let k_fit = 1.25 * k_fit;
        let gamma = eps - r;
        let c_min = self.min_norm_per_unit_total();
        let rho_norm = rs.norm(&rs.rho);
        let omega = rs.omega_bound;
        let l = rs.rank as i64;
        let mut total = 0.0f64;
        let mut shell = n + 1;
        loop {
            // count of mu with |mu| = shell: C(shell + l - 1, l - 1).
            let count = binomial(shell + l - 1, l - 1);
            let env = (1.0 + omega * shell as f64 + rho_norm).powf(m_exp);
            let term = count * k_fit * c * env * (-gamma * c_min * shell as f64).exp();
            total += term;
            if term < 1e-18 * total.max(1e-300) || shell > n + 200_000 {
                break;
            }
            shell += 1;
        }
        Ok(total)
    }

    /// `min ||mu|| / |mu|` over the dominant cone: exact for rank <= 2.
    fn min_norm_per_unit_total(&self) -> f64 {
        let rs = self.rs;
        match rs.rank {
            1 => rs.norm(&rs.fundamental_weights[0]),
            2 => {
                let w1 = &rs.fundamental_weights[0];
                let w2 = &rs.fundamental_weights[1];
                // q(t) = ||t w1 + (1-t) w2||^2 minimized over [0, 1].
                let a = rs.inner(w1, w1);
                let b = rs.inner(w1, w2);
                let cc = rs.inner(w2, w2);
                let denom = a - 2.0 * b + cc;
                let t = if denom.abs() < 1e-14 {
                    0.0
                } else {
                    ((cc - b) / denom).clamp(0.0, 1.0)
                };
                (a * t * t + 2.0 * b * t * (1.0 - t) + cc * (1.0 - t) * (1.0 - t)).sqrt()
            }
            _ => {
                let mut best = f64::INFINITY;
                let n = 40;
                for i in 0..=n {
                    for j in 0..=(n - i) {
                        let k = n - i - j;
                        let mut v = vec![0.0; rs.rank];
                        for (wi, &frac) in [i, j, k].iter().enumerate().take(rs.rank) {
                            for c in 0..rs.rank {
                                v[c] += frac as f64 / n as f64 * rs.fundamental_weights[wi][c];
                            }
                        }
                        best = best.min(rs.norm(&v));
                    }
                }
                best
            }
        }
    }
}

fn binomial(n: i64, k: i64) -> f64 {
    let mut v = 1.0;
    for i in 0..k {
        v *= (n - i) as f64 / (k - i) as f64;
    }
    v
}

/// All dominant weights with `|mu| <= cutoff`, deterministic order.
pub fn enumerate_dominant_upto(rs: &RootSystem, cutoff: i64) -> Vec<Weight> {
    let l = rs.rank;
    let mut out = Vec::new();
    let mut coords = vec![0i64; l];
    loop {
        if coords.iter().sum::<i64>() <= cutoff {
            out.push(rs.weight_from_coords(&coords));
        }
        let mut pos = 0;
        loop {
            if pos == l {
                return sort_weights(out);
            }
            coords[pos] += 1;
            if coords[pos] > cutoff {
                coords[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
    }
}

fn sort_weights(mut v: Vec<Weight>) -> Vec<Weight> {
    v.sort_by(|a, b| {
        a.total()
            .cmp(&b.total())
            .then_with(|| a.coords.cmp(&b.coords))
    });
    v
}
