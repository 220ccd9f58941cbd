//! Complex Gamma function and the Harish-Chandra `c`-function family.
//!
//! Gamma ratios are evaluated as `exp` of log-Gamma differences so that
//! vertical-line contours with `|Im lambda|` in the hundreds stay inside
//! f64 range. A ratio `Gamma(z+a)/Gamma(z+b)` with `a - b` integral is
//! expanded as a finite Pochhammer product, which stays exact across the
//! points where numerator and denominator poles cancel.

use crate::rootsys::{RootSystem, SpectralParameter};
use crate::singular::{EvalResult, Singular};
use num_complex::Complex64;
use std::f64::consts::PI;

const C1: Complex64 = Complex64::new(1.0, 0.0);

/// Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set; about
/// 15 significant digits on the right half-plane).
const LANCZOS_G: f64 = 4.7421875;
const LANCZOS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Distance from `z` to the nearest nonpositive integer.
fn pole_distance(z: Complex64) -> f64 {
    if z.re > 0.5 {
        return f64::INFINITY;
    }
    let n = z.re.round().min(0.0);
    (z - Complex64::new(n, 0.0)).norm()
}

pub fn is_gamma_pole(z: Complex64) -> bool {
    pole_distance(z) < 1e-12
}

/// Log-Gamma on the right half-plane `Re z >= 0.5` (Lanczos form).
/// Analytic there; the branch is the principal one.
fn lngamma_right(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let mut ser = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        ser += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    (zm1 + 0.5) * t.ln() - t + ((2.0 * PI).sqrt() * ser).ln()
}

/// `log sin(pi z)` computed without overflow for large `|Im z|`.
/// Any branch; callers only exponentiate differences.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let iz = Complex64::new(0.0, PI) * z;
    if z.im > 0.0 {
        // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2 i)
        -iz + (C1 - (2.0 * iz).exp()).ln() - Complex64::new(0.0, 2.0).ln() + Complex64::new(0.0, PI)
    } else {
        iz + (C1 - (-2.0 * iz).exp()).ln() - Complex64::new(0.0, 2.0).ln()
    }
}

/// Log-Gamma, valid on the whole plane minus the poles. The result is a
/// logarithm of `Gamma(z)` with an unspecified `2 pi i` multiple, so it is
/// only meaningful inside exponentiated differences.
pub fn lngamma(z: Complex64) -> EvalResult {
    if is_gamma_pole(z) {
        return Err(Singular::gamma_pole(z));
    }
    if z.re >= 0.5 {
        Ok(lngamma_right(z))
    } else {
        // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z)).
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - lngamma_right(1.0 - z))
    }
}

/// Complex Gamma function. Poles are reported, never NaN.
pub fn gamma(z: Complex64) -> EvalResult {
    lngamma(z).map(|lg| lg.exp())
}

/// `Gamma(num_1)...Gamma(num_k) / (Gamma(den_1)...Gamma(den_k))` through
/// log-space. A pole in a numerator factor is singular unless a denominator
/// pole cancels it; cancelling pairs with integral difference are folded
/// into exact Pochhammer products first.
pub fn gamma_ratio(nums: &[Complex64], dens: &[Complex64]) -> EvalResult {
    let mut nums: Vec<Option<Complex64>> = nums.iter().copied().map(Some).collect();
    let mut dens: Vec<Option<Complex64>> = dens.iter().copied().map(Some).collect();
    let mut acc = C1;

    // Fold numerator poles against denominator partners with integral offset.
    for ni in 0..nums.len() {
        let n = match nums[ni] {
            Some(n) if is_gamma_pole(n) => n,
            _ => continue,
        };
        let mut fixed = false;
        for dslot in dens.iter_mut() {
            let d = match dslot {
                Some(d) => *d,
                None => continue,
            };
            let diff = n - d;
            if diff.im.abs() < 1e-12 && (diff.re - diff.re.round()).abs() < 1e-12 {
                acc *= pochhammer_ratio(n, d)?;
                *dslot = None;
                nums[ni] = None;
                fixed = true;
                break;
            }
        }
        if !fixed {
            return Err(Singular::gamma_pole(n));
        }
    }
    let mut log = Complex64::new(0.0, 0.0);
    for n in nums.into_iter().flatten() {
        log += lngamma(n)?;
    }
    for d in dens.into_iter().flatten() {
        match lngamma(d) {
            Ok(lg) => log -= lg,
            // Denominator pole: the ratio has a zero.
            Err(_) => return Ok(Complex64::new(0.0, 0.0)),
        }
    }
    Ok(acc * log.exp())
}

/// `Gamma(n)/Gamma(d)` with `n - d` a (near-)integer: finite product
/// `prod_{i=0}^{k-1} (d + i)` for `n = d + k`, or its reciprocal.
fn pochhammer_ratio(n: Complex64, d: Complex64) -> EvalResult {
    let k = (n - d).re.round() as i64;
    if k >= 0 {
        let mut p = C1;
        for i in 0..k {
            p *= d + i as f64;
        }
        Ok(p)
    } else {
        let mut p = C1;
        for i in 0..(-k) {
            p *= n + i as f64;
        }
        if p.norm() < 1e-300 {
            return Err(Singular::gamma_pole(n));
        }
        Ok(C1 / p)
    }
}

/// The `c`-function family attached to a root system: `c`, `c*`, their
/// unnormalized versions and the Plancherel density `1/(c(lambda) c(-lambda))`.
#[derive(Debug, Clone)]
pub struct CFunctions<'a> {
    pub rs: &'a RootSystem,
    /// `c_HC = 1 / c_tilde(rho)`, so that `c(rho) = 1`.
    pub c_hc: f64,
    /// `c*_HC = 1 / c_tilde*(-rho)`, so that `c*(-rho) = 1`.
    pub cstar_hc: f64,
}

impl<'a> CFunctions<'a> {
    pub fn new(rs: &'a RootSystem) -> CFunctions<'a> {
        let rho = rs.rho_spectral();
        let ct = c_tilde_raw(rs, &rho).expect("c_tilde(rho) is finite for positive multiplicities");
        let neg_rho: Vec<Complex64> = rs.rho.iter().map(|&x| Complex64::new(-x, 0.0)).collect();
        let neg_rho = rs.spectral_from_ambient(&neg_rho);
        let cst = c_tilde_star_raw(rs, &neg_rho)
            .expect("c_tilde*(-rho) is finite for positive multiplicities");
        assert!(ct.im.abs() < 1e-9 && cst.im.abs() < 1e-9);
        CFunctions {
            rs,
            c_hc: 1.0 / ct.re,
            cstar_hc: 1.0 / cst.re,
        }
    }

    fn lambda_negated(&self, lam: &SpectralParameter) -> SpectralParameter {
        let amb: Vec<Complex64> = lam.ambient.iter().map(|z| -z).collect();
        self.rs.spectral_from_ambient(&amb)
    }

    /// `c_alpha` for one positive root (index into `positive_roots`).
    pub fn c_alpha(&self, lam: &SpectralParameter, alpha_idx: usize) -> EvalResult {
        let rs = self.rs;
        let alpha = &rs.positive_roots[alpha_idx];
        let la = rs.lambda_alpha(lam, alpha).unwrap();
        let mh4 = rs.multiplicity_half(alpha) / 4.0;
        let m2 = rs.multiplicities[alpha_idx] / 2.0;
        gamma_ratio(&[la + mh4], &[la + mh4 + m2])
    }

    /// `c*_alpha`: same Gamma ratio with `Gamma*(x) = Gamma(1-x)^{-1}`.
    pub fn c_star_alpha(&self, lam: &SpectralParameter, alpha_idx: usize) -> EvalResult {
        let rs = self.rs;
        let alpha = &rs.positive_roots[alpha_idx];
        let la = rs.lambda_alpha(lam, alpha).unwrap();
        let mh4 = rs.multiplicity_half(alpha) / 4.0;
        let m2 = rs.multiplicities[alpha_idx] / 2.0;
        gamma_ratio(&[C1 - la - mh4 - m2], &[C1 - la - mh4])
    }

    /// `S_alpha = sin(pi(lambda_alpha + m_{alpha/2}/4)) / sin(pi(lambda_alpha + m_{alpha/2}/4 + m_alpha/2))`.
    pub fn s_alpha(&self, lam: &SpectralParameter, alpha_idx: usize) -> EvalResult {
        let rs = self.rs;
        let alpha = &rs.positive_roots[alpha_idx];
        let la = rs.lambda_alpha(lam, alpha).unwrap();
        let mh4 = rs.multiplicity_half(alpha) / 4.0;
        let m2 = rs.multiplicities[alpha_idx] / 2.0;
        let den = ((la + mh4 + m2) * PI).sin();
        if den.norm() < 1e-300 {
            return Err(Singular {
                family: None,
                detail: format!("sine zero in S_alpha at lambda_alpha = {la}"),
            });
        }
        Ok(((la + mh4) * PI).sin() / den)
    }

    pub fn c_tilde(&self, lam: &SpectralParameter) -> EvalResult {
        c_tilde_raw(self.rs, lam)
    }

    pub fn c_tilde_star(&self, lam: &SpectralParameter) -> EvalResult {
        c_tilde_star_raw(self.rs, lam)
    }

    /// Normalized `c(lambda) = c_HC c_tilde(lambda)`.
    pub fn c(&self, lam: &SpectralParameter) -> EvalResult {
        Ok(self.c_hc * self.c_tilde(lam)?)
    }

    /// Normalized `c*(lambda) = c*_HC c_tilde*(lambda)`.
    pub fn c_star(&self, lam: &SpectralParameter) -> EvalResult {
        Ok(self.cstar_hc * self.c_tilde_star(lam)?)
    }

    /// `c` assembled over unmultipliable roots via the duplication formula.
    /// Must agree with [`CFunctions::c`]; kept as an independent route.
    pub fn c_unmult_route(&self, lam: &SpectralParameter) -> EvalResult {
        let rs = self.rs;
        let mut prod = Complex64::new(self.c_hc, 0.0);
        let ln2 = std::f64::consts::LN_2;
        for &bi in &rs.unmult_positive {
            let beta = &rs.positive_roots[bi];
            let lb = rs.lambda_alpha(lam, beta).unwrap();
            let mh = rs.multiplicity_half(beta);
            let m2 = rs.multiplicities[bi] / 2.0;
            // pi^{1/2} 2^{1 - m_{beta/2}/2} 2^{-2 lambda_beta}
            //   Gamma(2 lambda_beta) / (Gamma(lambda_beta + m_{beta/2}/4 + 1/2)
            //                           Gamma(lambda_beta + m_{beta/2}/4 + m_beta/2))
            let pref = (0.5 * PI.ln() + (1.0 - mh / 2.0) * ln2 - 2.0 * lb * ln2).exp();
            let ratio = gamma_ratio(&[2.0 * lb], &[lb + mh / 4.0 + 0.5, lb + mh / 4.0 + m2])?;
            prod *= pref * ratio;
        }
        Ok(prod)
    }

    /// `c*` assembled over unmultipliable roots via duplication.
    pub fn c_star_unmult_route(&self, lam: &SpectralParameter) -> EvalResult {
        let rs = self.rs;
        let mut prod = Complex64::new(self.cstar_hc, 0.0);
        let ln2 = std::f64::consts::LN_2;
        for &bi in &rs.unmult_positive {
            let beta = &rs.positive_roots[bi];
            let lb = rs.lambda_alpha(lam, beta).unwrap();
            let mh = rs.multiplicity_half(beta);
            let m2 = rs.multiplicities[bi] / 2.0;
            let pref = (-0.5 * PI.ln() - (mh / 2.0) * ln2 - 2.0 * lb * ln2).exp();
            let ratio = gamma_ratio(
                &[0.5 - lb - mh / 4.0, C1 - lb - mh / 4.0 - m2],
                &[C1 - 2.0 * lb],
            )?;
            prod *= pref * ratio;
        }
        Ok(prod)
    }

    /// Plancherel density `1/(c(lambda) c(-lambda))`.
    pub fn plancherel_density(&self, lam: &SpectralParameter) -> EvalResult {
        let neg = self.lambda_negated(lam);
        let a = self.c(lam)?;
        let b = self.c(&neg)?;
        let p = a * b;
        if p.norm() < 1e-280 {
            return Err(Singular {
                family: None,
                detail: "zero of c(lambda) c(-lambda)".into(),
            });
        }
        Ok(C1 / p)
    }
}

fn c_tilde_raw(rs: &RootSystem, lam: &SpectralParameter) -> EvalResult {
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for (i, alpha) in rs.positive_roots.iter().enumerate() {
        let la = rs.lambda_alpha(lam, alpha).unwrap();
        let mh4 = rs.multiplicity_half(alpha) / 4.0;
        let m2 = rs.multiplicities[i] / 2.0;
        nums.push(la + mh4);
        dens.push(la + mh4 + m2);
    }
    gamma_ratio(&nums, &dens)
}

fn c_tilde_star_raw(rs: &RootSystem, lam: &SpectralParameter) -> EvalResult {
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for (i, alpha) in rs.positive_roots.iter().enumerate() {
        let la = rs.lambda_alpha(lam, alpha).unwrap();
        let mh4 = rs.multiplicity_half(alpha) / 4.0;
        let m2 = rs.multiplicities[i] / 2.0;
        nums.push(C1 - la - mh4 - m2);
        dens.push(C1 - la - mh4);
    }
    gamma_ratio(&nums, &dens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Preset};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Reference values computed with mpmath at 30 digits.
    const GAMMA_REFS: [(f64, f64, f64, f64); 8] = [
        (0.5, 0.0, 1.7724538509055160273, 0.0),
        (3.0, 4.0, 0.0052255384713692141947, -0.17254707929430018772),
        (-1.5, 0.5, 0.93791666278788505097, 0.34920566814780486859),
        (
            0.5,
            20.0,
            -3.4307841591454817532e-14,
            4.5428803574633433635e-14,
        ),
        (-0.5, -0.5, -1.5814778282557300107, 0.054850170827764777407),
        (12.3, -4.5, 7754835.6499916018028, 35229566.341605465098),
        (0.1, 0.0, 9.5135076986687312858, 0.0),
        (-2.7, 0.0, -0.93108278483896396546, 0.0),
    ];

    #[test]
    fn gamma_reference_values() {
        for &(re, im, wre, wim) in &GAMMA_REFS {
            let got = gamma(c(re, im)).unwrap();
            let want = c(wre, wim);
            let rel = (got - want).norm() / want.norm();
            assert!(rel < 1e-12, "Gamma({re}+{im}i): rel err {rel:e}");
        }
    }

    #[test]
    fn gamma_small_values() {
        assert!((gamma(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        assert!((gamma(c(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-13);
        assert!(gamma(c(0.0, 0.0)).is_err());
        assert!(gamma(c(-3.0, 0.0)).is_err());
    }

    #[test]
    fn gamma_recurrence_self_consistency() {
        // Gamma(z+1) = z Gamma(z) on a grid, including |z| up to 50.
        let pts = [
            c(3.0, 4.0),
            c(0.3, -2.2),
            c(-4.4, 1.7),
            c(30.0, 20.0),
            c(-20.3, -35.0),
            c(49.0, 7.0),
        ];
        for &z in &pts {
            let a = gamma(z + 1.0).unwrap();
            let b = z * gamma(z).unwrap();
            assert!((a - b).norm() / a.norm() < 1e-12, "recurrence at {z}");
        }
    }

    #[test]
    fn lngamma_handles_large_imaginary_parts() {
        // exp(lngamma) underflows there, but differences stay finite:
        // Gamma(z)/Gamma(z+1) = 1/z even at Im z = 200.
        let z = c(0.4, 200.0);
        let r = gamma_ratio(&[z], &[z + 1.0]).unwrap();
        assert!((r - 1.0 / z).norm() < 1e-12);
    }

    #[test]
    fn pochhammer_cancellation() {
        // Gamma(z-1)/Gamma(z-2) = z - 2 even at z = 1 where both factors blow.
        let r = gamma_ratio(&[c(0.0, 0.0)], &[c(-1.0, 0.0)]).unwrap();
        assert!((r - c(-1.0, 0.0)).norm() < 1e-14);
        // Denominator-only pole gives a zero.
        let r = gamma_ratio(&[c(0.7, 0.0)], &[c(-2.0, 0.0)]).unwrap();
        assert!(r.norm() < 1e-14);
    }

    #[test]
    fn c_normalizations() {
        for rs in [
            build_root_system(Preset::A1, &[2.0]).unwrap(),
            build_root_system(Preset::A1, &[0.75]).unwrap(),
            build_root_system(Preset::BC1, &[1.5, 2.5]).unwrap(),
            build_root_system(Preset::A2, &[1.0]).unwrap(),
            build_root_system(Preset::B2, &[1.3, 0.8]).unwrap(),
            build_root_system(Preset::BC2, &[0.5, 1.5, 2.5]).unwrap(),
        ] {
            let cf = CFunctions::new(&rs);
            let rho = rs.rho_spectral();
            assert!((cf.c(&rho).unwrap() - 1.0).norm() < 1e-10);
            let neg: Vec<Complex64> = rs.rho.iter().map(|&x| c(-x, 0.0)).collect();
            let neg = rs.spectral_from_ambient(&neg);
            assert!((cf.c_star(&neg).unwrap() - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn rank_one_reduced_c_closed_form() {
        // m = 2: c_alpha(lambda) = Gamma(l)/Gamma(l+1) = 1/l; at lambda_beta = 2
        // the unnormalized factor is 0.5.
        let rs = build_root_system(Preset::A1, &[2.0]).unwrap();
        let cf = CFunctions::new(&rs);
        let lam = rs.spectral_from_real(&[2.0]);
        let v = cf.c_alpha(&lam, 0).unwrap();
        assert!((v - 0.5).norm() < 1e-13);
        // plancherel_density(i t) = t^2 for m = 2.
        for t in [0.3, 1.0, 4.7] {
            let lam = rs.spectral_from_ambient(&[c(0.0, t)]);
            let p = cf.plancherel_density(&lam).unwrap();
            assert!((p - t * t).norm() < 1e-11, "t = {t}: {p}");
        }
        // Geometric m = 1: c proportional to Gamma(l)/Gamma(l + 1/2).
        let rs1 = build_root_system(Preset::A1, &[1.0]).unwrap();
        let cf1 = CFunctions::new(&rs1);
        let lam = rs1.spectral_from_ambient(&[c(0.7, 1.3)]);
        let got = cf1.c(&lam).unwrap();
        let l = lam.coords[0];
        let want = gamma_ratio(&[l], &[l + 0.5]).unwrap() * cf1.c_hc;
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn c_star_alpha_is_s_alpha_times_c_alpha() {
        let rs = build_root_system(Preset::BC1, &[1.5, 2.5]).unwrap();
        let cf = CFunctions::new(&rs);
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let lam = rs.spectral_from_ambient(&[c(4.0 * next() - 2.0, 4.0 * next() - 2.0)]);
            for idx in 0..rs.positive_roots.len() {
                let lhs = cf.c_star_alpha(&lam, idx).unwrap();
                let rhs = cf.s_alpha(&lam, idx).unwrap() * cf.c_alpha(&lam, idx).unwrap();
                assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
            }
        }
    }

    #[test]
    fn s_alpha_reduced_even_multiplicity() {
        // m_{alpha/2} = 0, m_alpha = 2: S = sin(pi l)/sin(pi(l+1)) = -1.
        let rs = build_root_system(Preset::A1, &[2.0]).unwrap();
        let cf = CFunctions::new(&rs);
        let lam = rs.spectral_from_ambient(&[c(0.37, 0.81)]);
        let s = cf.s_alpha(&lam, 0).unwrap();
        assert!((s + 1.0).norm() < 1e-12);
    }

    #[test]
    fn unmult_route_agrees_with_sigma_plus_route() {
        for rs in [
            build_root_system(Preset::A1, &[2.5]).unwrap(),
            build_root_system(Preset::BC1, &[1.5, 2.5]).unwrap(),
            build_root_system(Preset::A2, &[1.3]).unwrap(),
            build_root_system(Preset::BC2, &[0.7, 1.1, 2.2]).unwrap(),
        ] {
            let cf = CFunctions::new(&rs);
            let mut state = 0x243f6a8885a308d3u64;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64
            };
            for _ in 0..200 {
                let amb: Vec<Complex64> = (0..rs.rank)
                    .map(|_| c(3.0 * next() - 1.5, 3.0 * next() - 1.5))
                    .collect();
                let lam = rs.spectral_from_ambient(&amb);
                let (a, b) = (cf.c(&lam), cf.c_unmult_route(&lam));
                if let (Ok(a), Ok(b)) = (a, b) {
                    assert!(
                        (a - b).norm() <= 1e-10 * (1.0 + a.norm()),
                        "c routes disagree at {amb:?}: {a} vs {b}"
                    );
                }
                let (a, b) = (cf.c_star(&lam), cf.c_star_unmult_route(&lam));
                if let (Ok(a), Ok(b)) = (a, b) {
                    assert!(
                        (a - b).norm() <= 1e-10 * (1.0 + a.norm()),
                        "c* routes disagree at {amb:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn plancherel_density_is_even() {
        let rs = build_root_system(Preset::B2, &[1.2, 0.9]).unwrap();
        let cf = CFunctions::new(&rs);
        let lam = rs.spectral_from_ambient(&[c(0.3, 0.9), c(-0.2, 1.4)]);
        let neg: Vec<Complex64> = lam.ambient.iter().map(|z| -z).collect();
        let neg = rs.spectral_from_ambient(&neg);
        let a = cf.plancherel_density(&lam).unwrap();
        let b = cf.plancherel_density(&neg).unwrap();
        assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()));
    }
}
