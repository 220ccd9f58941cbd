//! The `d` and `b` functions, their singularity classification, and
//! tube-domain membership predicates.
//!
//! Sign convention: `b` is normalized so that the inverse-transform contour
//! against the measure `dt` on `sigma + i a*` reproduces the alternating
//! Jacobi series with coefficients `(-1)^{|mu|} d(mu) a(mu + rho)` through
//! rightward residue shifts. Concretely
//!
//! `b(lambda) = 2^{-l} (c(-lambda)/c*(-lambda)) prod_j 1/sin(pi(rho_j - lambda_j))`,
//!
//! which in rank one gives `sum_w a(w lambda) b(w lambda)
//! = 2 C_b sinh((P+iA) lambda)/sin(pi lambda)` for `a = e^{-(P+iA) lambda}`
//! with `C_b = 2^{-l} c_tilde*(-rho)/c_tilde(rho) > 0`.

use crate::gammac::{gamma_ratio, CFunctions};
use crate::rootsys::{RootSystem, SpectralParameter};
use crate::singular::{EvalResult, FamilyKind, Singular};
use num_complex::Complex64;
use std::f64::consts::PI;

const C1: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn is_int(x: f64) -> bool {
    (x - x.round()).abs() < 1e-9
}

fn is_odd_int(x: f64) -> bool {
    is_int(x) && (x.round() as i64).rem_euclid(2) == 1
}

/// `1/sin(pi z)` without overflow for large `|Im z|`.
pub fn inv_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() <= 1.0 {
        let s = (PI * z).sin();
        C1 / s
    } else if z.im > 0.0 {
        // sin(pi z) = -e^{-i pi z}(1 - e^{2 pi i z})/(2i)
        let e = (I * PI * z).exp();
        -2.0 * I * e / (C1 - (2.0 * PI * I * z).exp())
    } else {
        let e = (-I * PI * z).exp();
        2.0 * I * e / (C1 - (-2.0 * PI * I * z).exp())
    }
}

/// The `d` function: `d(lambda) = 1/(c(lambda+rho) c*(-lambda-rho))`,
/// its rho-shifted Gamma-product form, and the exact polynomial form when
/// the multiplicities allow one.
#[derive(Debug, Clone)]
pub struct DFunction<'a> {
    pub cf: &'a CFunctions<'a>,
    /// `C_d = c_tilde(rho) c_tilde*(-rho) prod_beta 2^{m_{beta/2}}`.
    pub c_d: f64,
    pub has_polynomial_form: bool,
}

impl<'a> DFunction<'a> {
    pub fn new(cf: &'a CFunctions<'a>) -> DFunction<'a> {
        let rs = cf.rs;
        let mut pow2 = 1.0;
        for &bi in &rs.unmult_positive {
            pow2 *= 2f64.powf(rs.multiplicity_half(&rs.positive_roots[bi]));
        }
        let c_d = pow2 / (cf.c_hc * cf.cstar_hc);
        let has_polynomial_form = rs.unmult_positive.iter().all(|&bi| {
            let mh = rs.multiplicity_half(&rs.positive_roots[bi]);
            let m = rs.multiplicities[bi];
            is_int(mh / 2.0) && mh >= -1e-12 && is_int(m) && m.round() >= 1.0
        });
        DFunction {
            cf,
            c_d,
            has_polynomial_form,
        }
    }

    fn shift_by_rho(&self, lam: &SpectralParameter, sign: f64) -> SpectralParameter {
        let rs = self.cf.rs;
        let amb: Vec<Complex64> = lam
            .ambient
            .iter()
            .zip(&rs.rho)
            .map(|(&z, &r)| z + sign * r)
            .collect();
        rs.spectral_from_ambient(&amb)
    }

    /// Route 1: `d(lambda) = 1/(c(lambda+rho) c*(-lambda-rho))`.
    pub fn d(&self, lam: &SpectralParameter) -> EvalResult {
        let rs = self.cf.rs;
        let shifted = self.shift_by_rho(lam, 1.0);
        let neg: Vec<Complex64> = shifted.ambient.iter().map(|z| -z).collect();
        let neg = rs.spectral_from_ambient(&neg);
        let a = self.cf.c(&shifted)?;
        let b = self.cf.c_star(&neg)?;
        let p = a * b;
        if p.norm() < 1e-280 {
            return Err(Singular {
                family: None,
                detail: "zero of c(lambda+rho) c*(-lambda-rho)".into(),
            });
        }
        Ok(C1 / p)
    }

    /// Route 2: `d(lambda - rho)` via the Gamma-product form
    /// `C_d Pi(lambda) prod_beta G(l_b + m_h/4 + 1/2) G(l_b + rho_t) /
    ///  (G(l_b - m_h/4 + 1/2) G(l_b - rho_t + 1))`.
    pub fn d_shifted(&self, lam: &SpectralParameter) -> EvalResult {
        let rs = self.cf.rs;
        let mut value = Complex64::new(self.c_d, 0.0);
        for (k, &bi) in rs.unmult_positive.iter().enumerate() {
            let beta = &rs.positive_roots[bi];
            let lb = rs.lambda_alpha(lam, beta).unwrap();
            let mh4 = rs.multiplicity_half(beta) / 4.0;
            let rt = rs.rho_tilde[k];
            value *= lb;
            let ratio = gamma_ratio(&[lb + mh4 + 0.5, lb + rt], &[lb - mh4 + 0.5, lb - rt + 1.0])
                .map_err(|_| self.tag_shift_pole(k, lb, mh4, rt))?;
            value *= ratio;
        }
        Ok(value)
    }

    fn tag_shift_pole(&self, beta_idx: usize, lb: Complex64, mh4: f64, rt: f64) -> Singular {
        // Which Gamma factor is at a pole decides the family.
        let h1_k = -(lb + mh4 + 0.5);
        let h2_k = -(lb + rt);
        if h1_k.im.abs() < 1e-9 && is_int(h1_k.re) && h1_k.re > -0.5 {
            Singular::hyperplane(
                FamilyKind::H1,
                beta_idx,
                h1_k.re.round() as i64,
                format!(
                    "Gamma pole: lambda_beta = -(m_half/4 + 1/2) - {}",
                    h1_k.re.round()
                ),
            )
        } else {
            Singular::hyperplane(
                FamilyKind::H2,
                beta_idx,
                h2_k.re.round().max(0.0) as i64,
                format!("Gamma pole: lambda_beta = -rho_tilde - k near {}", h2_k.re),
            )
        }
    }

    /// `d(lambda)` through route 2 (`d_shifted` at `lambda + rho`).
    pub fn d_via_shift(&self, lam: &SpectralParameter) -> EvalResult {
        let shifted = self.shift_by_rho(lam, 1.0);
        self.d_shifted(&shifted)
    }

    /// Route 3: exact polynomial form of `d(lambda - rho)`, available when
    /// `m_{beta/2}/2` is a nonnegative integer and `m_beta` a positive one.
    pub fn d_shifted_polynomial(&self, lam: &SpectralParameter) -> Option<Complex64> {
        if !self.has_polynomial_form {
            return None;
        }
        let rs = self.cf.rs;
        let mut value = Complex64::new(self.c_d, 0.0);
        for (k, &bi) in rs.unmult_positive.iter().enumerate() {
            let beta = &rs.positive_roots[bi];
            let lb = rs.lambda_alpha(lam, beta).unwrap();
            let mh = rs.multiplicity_half(beta);
            let rt = rs.rho_tilde[k];
            value *= lb;
            let n1 = (mh / 2.0).round() as i64;
            for j in 0..n1 {
                value *= lb - (mh / 4.0 - 0.5) + j as f64;
            }
            let n2 = (2.0 * rt).round() as i64 - 1;
            for j in 0..n2 {
                value *= lb - (rt - 1.0) + j as f64;
            }
        }
        Some(value)
    }

    /// Value at a dominant weight: `d(mu)`, finite for positive multiplicities.
    pub fn d_at_weight(&self, mu: &crate::rootsys::Weight) -> f64 {
        let lam = self.cf.rs.spectral_from_real(&mu.ambient);
        let v = self
            .d_via_shift(&lam)
            .expect("d is finite on the dominant lattice");
        debug_assert!(v.im.abs() < 1e-8 * (1.0 + v.re.abs()));
        v.re
    }
}

/// The `b` function (see the module docs for the sign convention) and the
/// combination `b(lambda)/(c(lambda) c(-lambda))` that actually enters the
/// contour integrals.
#[derive(Debug, Clone)]
pub struct BFunction<'a> {
    pub cf: &'a CFunctions<'a>,
    pub d: DFunction<'a>,
    /// `C_b = 2^{-l} c_tilde*(-rho)/c_tilde(rho) > 0`.
    pub c_b: f64,
}

impl<'a> BFunction<'a> {
    pub fn new(cf: &'a CFunctions<'a>) -> BFunction<'a> {
        let l = cf.rs.rank as i32;
        let c_b = 0.5f64.powi(l) * cf.c_hc / cf.cstar_hc;
        BFunction {
            cf,
            d: DFunction::new(cf),
            c_b,
        }
    }

    fn sine_product(&self, lam: &SpectralParameter) -> EvalResult {
        // prod_j 1/sin(pi(rho_j - lambda_j)), poles tagged with H_{j,k}.
        let rs = self.cf.rs;
        let mut prod = C1;
        for (j, &lj) in lam.coords.iter().enumerate() {
            let w = Complex64::new(rs.rho_j[j], 0.0) - lj;
            if w.im.abs() < 1e-12 && (w.re - w.re.round()).abs() < 1e-12 {
                let k = -w.re.round() as i64;
                return Err(Singular::hyperplane(
                    FamilyKind::Hj,
                    j,
                    k,
                    format!("sine pole: lambda_{} = rho_{} + {}", j + 1, j + 1, k),
                ));
            }
            prod *= inv_sin_pi(w);
        }
        Ok(prod)
    }

    /// `b(lambda) = 2^{-l} (c(-lambda)/c*(-lambda)) prod_j 1/sin(pi(rho_j - lambda_j))`.
    pub fn b(&self, lam: &SpectralParameter) -> EvalResult {
        let rs = self.cf.rs;
        let l = rs.rank as i32;
        let neg: Vec<Complex64> = lam.ambient.iter().map(|z| -z).collect();
        let neg = rs.spectral_from_ambient(&neg);
        let num = self.cf.c(&neg)?;
        let den = self.cf.c_star(&neg)?;
        if den.norm() < 1e-280 {
            return Err(Singular {
                family: None,
                detail: "zero of c*(-lambda)".into(),
            });
        }
        Ok(0.5f64.powi(l) * (num / den) * self.sine_product(lam)?)
    }

    /// Trigonometric route:
    /// `b(lambda) = (-1)^l C_b prod_beta cos(pi(l_b - m_h/4)) / (cos(pi l_b) sin(pi l_b))
    ///              prod_{beta not in basis} sin(pi(l_b - rho_tilde))`.
    pub fn b_trig_route(&self, lam: &SpectralParameter) -> EvalResult {
        let rs = self.cf.rs;
        let sign = if rs.rank.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut value = Complex64::new(sign * self.c_b, 0.0);
        for (k, &bi) in rs.unmult_positive.iter().enumerate() {
            let beta = &rs.positive_roots[bi];
            let lb = rs.lambda_alpha(lam, beta).unwrap();
            let mh4 = rs.multiplicity_half(beta) / 4.0;
            let num = ((lb - mh4) * PI).cos();
            let den_cos = (lb * PI).cos();
            let den_sin = (lb * PI).sin();
            if den_cos.norm() < 1e-280 || den_sin.norm() < 1e-280 {
                return Err(Singular {
                    family: None,
                    detail: format!("trig pole of b at lambda_beta = {lb}"),
                });
            }
            value *= num / (den_cos * den_sin);
            if !rs.beta_basis.contains(&bi) {
                value *= ((lb - rs.rho_tilde[k]) * PI).sin();
            }
        }
        Ok(value)
    }

    /// `b(lambda)/(c(lambda) c(-lambda)) = 2^{-l} d(lambda - rho)
    ///   prod_j 1/sin(pi(rho_j - lambda_j))` — the Plancherel-side form,
    /// holomorphic on the tube `T_Sigma` where the individual factors are not.
    pub fn b_over_cc(&self, lam: &SpectralParameter) -> EvalResult {
        let l = self.cf.rs.rank as i32;
        let d = self.d.d_shifted(lam)?;
        Ok(0.5f64.powi(l) * d * self.sine_product(lam)?)
    }
}

/// Tube domains around the imaginary axis, all decided by strict
/// inequalities on `Re lambda_beta` or `Re lambda_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TubeDomain {
    /// `|Re lambda_beta| < delta L_beta` for all unmultipliable positive beta.
    TDelta { delta: f64 },
    /// `|Re lambda_j| < delta L_{beta_j}`.
    TPrime { delta: f64 },
    /// `Re lambda_j < delta L_{beta_j}` (one-sided).
    TDoublePrime { delta: f64 },
    /// `|Re lambda_beta| < 1/2 - eta`.
    TPiEta { eta: f64 },
    /// Hardy-class domain `Re lambda_beta > -delta rho_tilde_beta`.
    Hardy { delta: f64 },
    /// `Re lambda_beta > -L_beta`.
    LSigma,
    /// `|Re lambda_beta| < L_beta` (equals `TDelta` at `delta = 1`).
    TSigma,
}

#[derive(Debug, thiserror::Error)]
pub enum TubeError {
    #[error("delta must satisfy 0 < delta <= 1, got {0}")]
    BadDelta(f64),
    #[error("eta must satisfy 0 <= eta < 1/2, got {0}")]
    BadEta(f64),
}

/// Strict-inequality membership test.
pub fn tube_contains(
    rs: &RootSystem,
    tube: TubeDomain,
    lam: &SpectralParameter,
) -> Result<bool, TubeError> {
    match tube {
        TubeDomain::TDelta { delta } => {
            check_delta(delta)?;
            Ok(rs.unmult_positive.iter().enumerate().all(|(k, &bi)| {
                let lb = rs.lambda_alpha(lam, &rs.positive_roots[bi]).unwrap();
                lb.re.abs() < delta * rs.l_bound[k]
            }))
        }
        TubeDomain::TPrime { delta } => {
            check_delta(delta)?;
            Ok((0..rs.rank).all(|j| {
                let lb = l_of_basis(rs, j);
                lam.coords[j].re.abs() < delta * lb
            }))
        }
        TubeDomain::TDoublePrime { delta } => {
            check_delta(delta)?;
            Ok((0..rs.rank).all(|j| {
                let lb = l_of_basis(rs, j);
                lam.coords[j].re < delta * lb
            }))
        }
        TubeDomain::TPiEta { eta } => {
            if !(0.0..0.5).contains(&eta) {
                return Err(TubeError::BadEta(eta));
            }
            Ok(rs.unmult_positive.iter().all(|&bi| {
                let lb = rs.lambda_alpha(lam, &rs.positive_roots[bi]).unwrap();
                lb.re.abs() < 0.5 - eta
            }))
        }
        TubeDomain::Hardy { delta } => {
            check_delta(delta)?;
            Ok(rs.unmult_positive.iter().enumerate().all(|(k, &bi)| {
                let lb = rs.lambda_alpha(lam, &rs.positive_roots[bi]).unwrap();
                lb.re > -delta * rs.rho_tilde[k]
            }))
        }
        TubeDomain::LSigma => Ok(rs.unmult_positive.iter().enumerate().all(|(k, &bi)| {
            let lb = rs.lambda_alpha(lam, &rs.positive_roots[bi]).unwrap();
            lb.re > -rs.l_bound[k]
        })),
        TubeDomain::TSigma => tube_contains(rs, TubeDomain::TDelta { delta: 1.0 }, lam),
    }
}

fn check_delta(delta: f64) -> Result<(), TubeError> {
    if delta > 0.0 && delta <= 1.0 {
        Ok(())
    } else {
        Err(TubeError::BadDelta(delta))
    }
}

fn l_of_basis(rs: &RootSystem, j: usize) -> f64 {
    let bi = rs.beta_basis[j];
    let k = rs
        .unmult_positive
        .iter()
        .position(|&x| x == bi)
        .expect("beta_j is unmultipliable");
    rs.l_bound[k]
}

/// Pole order along one hyperplane family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleOrder {
    None,
    Simple,
    /// Simple poles only for `k = 0 ..= kmax`.
    SimpleFinite {
        kmax: i64,
    },
    Double,
}

/// Singularity data of `b/(c c)` for one unmultipliable positive root.
#[derive(Debug, Clone)]
pub struct RootSingularity {
    /// Index into `unmult_positive`.
    pub beta: usize,
    /// Whether this root is one of `beta_1..beta_l`.
    pub is_basis: bool,
    /// The selected case: table ("basis" or "nonbasis") plus row label.
    pub case_label: String,
    /// Order along `H_{1,beta,k}: lambda_beta = -(m_{beta/2}/4 + 1/2) - k`.
    pub h1: PoleOrder,
    /// Order along `H_{2,beta,k}: lambda_beta = -rho_tilde_beta - k`.
    pub h2: PoleOrder,
    /// Present for basis roots: index `j` of the simple-pole family
    /// `H_{j,k}: lambda_j = rho_j + k`.
    pub hj: Option<usize>,
    /// First negative singular value `l_beta` (None when this root
    /// contributes no negative-real singular hyperplanes).
    pub l_beta: Option<f64>,
}

/// Classification report over all of `Sigma*+`.
#[derive(Debug, Clone)]
pub struct SingularityReport {
    pub per_root: Vec<RootSingularity>,
}

/// Classify the singular hyperplanes of `b/(c c)` per unmultipliable root,
/// by exact parity tests on the multiplicities (1e-9 integrality tolerance).
pub fn classify_singularities(rs: &RootSystem) -> SingularityReport {
    let per_root = rs
        .unmult_positive
        .iter()
        .enumerate()
        .map(|(k, &bi)| {
            let beta = &rs.positive_roots[bi];
            let mh = rs.multiplicity_half(beta);
            let m = rs.multiplicities[bi];
            let rt = rs.rho_tilde[k];
            let first = mh / 4.0 + 0.5;
            let is_basis = rs.beta_basis.contains(&bi);
            let hj = if is_basis {
                Some(rs.beta_basis.iter().position(|&x| x == bi).unwrap())
            } else {
                None
            };
            let (case_label, h1, h2, l_beta) = if is_basis {
                classify_basis(mh, m, rt, first)
            } else {
                classify_nonbasis(mh, m, rt, first)
            };
            RootSingularity {
                beta: k,
                is_basis,
                case_label,
                h1,
                h2,
                hj,
                l_beta,
            }
        })
        .collect();
    SingularityReport { per_root }
}

fn classify_basis(
    mh: f64,
    m: f64,
    rt: f64,
    first: f64,
) -> (String, PoleOrder, PoleOrder, Option<f64>) {
    use PoleOrder::*;
    if is_int(mh / 2.0) {
        return ("basis(1)".into(), None, Simple, Some(-rt));
    }
    if is_odd_int(mh + m) {
        return ("basis(2)".into(), Simple, None, Some(-first));
    }
    if is_odd_int(m) && m.round() >= 3.0 {
        let kmax = ((m.round() as i64) - 3) / 2;
        return (
            "basis(3)".into(),
            SimpleFinite { kmax },
            Double,
            Some(-first),
        );
    }
    if is_int(m) && (m.round() - 1.0).abs() < 1e-12 {
        // H1 and H2 coincide: rho_tilde = m_half/4 + 1/2.
        return ("basis(4)".into(), Double, Double, Some(-first));
    }
    if m > 1.0 {
        ("basis(5a)".into(), Simple, Simple, Some(-first))
    } else {
        ("basis(5b)".into(), Simple, Simple, Some(-rt))
    }
}

fn classify_nonbasis(
    mh: f64,
    m: f64,
    rt: f64,
    first: f64,
) -> (String, PoleOrder, PoleOrder, Option<f64>) {
    use PoleOrder::*;
    if is_int(mh / 2.0) {
        if is_int(m) {
            return ("nonbasis(1)".into(), None, None, Option::<f64>::None);
        }
        return ("nonbasis(2)".into(), None, Simple, Some(-rt));
    }
    if is_odd_int(mh + m) {
        return ("nonbasis(3)".into(), None, None, Option::<f64>::None);
    }
    if is_odd_int(m) && m.round() >= 3.0 {
        let kmax = ((m.round() as i64) - 3) / 2;
        return (
            "nonbasis(4)".into(),
            SimpleFinite { kmax },
            Double,
            Some(-first),
        );
    }
    if is_int(m) && (m.round() - 1.0).abs() < 1e-12 {
        return ("nonbasis(5)".into(), Double, Double, Some(-first));
    }
    if is_int(2.0 * rt) {
        return ("nonbasis(6)".into(), Simple, None, Some(-first));
    }
    if m > 1.0 {
        ("nonbasis(7a)".into(), Simple, Simple, Some(-first))
    } else {
        ("nonbasis(7b)".into(), Simple, Simple, Some(-rt))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammac::CFunctions;
    use crate::rootsys::{build_root_system, Preset};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    struct Rng(u64);
    impl Rng {
        fn next(&mut self) -> f64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            (self.0 >> 11) as f64 / (1u64 << 53) as f64
        }
    }

    #[test]
    fn d_rank_one_examples() {
        // m = 2: d(n beta) = (n+1)^2, C_d = 1.
        let rs = build_root_system(Preset::A1, &[2.0]).unwrap();
        let cf = CFunctions::new(&rs);
        let d = DFunction::new(&cf);
        assert!((d.c_d - 1.0).abs() < 1e-12);
        let mu = rs.weight_from_coords(&[3]);
        assert!((d.d_at_weight(&mu) - 16.0).abs() < 1e-10);
        let zero = rs.weight_from_coords(&[0]);
        assert!((d.d_at_weight(&zero) - 1.0).abs() < 1e-10);

        // m = 1: C_d = 2, d(beta) = 3.
        let rs1 = build_root_system(Preset::A1, &[1.0]).unwrap();
        let cf1 = CFunctions::new(&rs1);
        let d1 = DFunction::new(&cf1);
        assert!((d1.c_d - 2.0).abs() < 1e-12);
        let one = rs1.weight_from_coords(&[1]);
        assert!((d1.d_at_weight(&one) - 3.0).abs() < 1e-10);
    }

    #[test]
    fn d_three_routes_agree() {
        for rs in [
            build_root_system(Preset::A1, &[2.0]).unwrap(),
            build_root_system(Preset::A1, &[3.0]).unwrap(),
            build_root_system(Preset::BC1, &[2.0, 3.0]).unwrap(),
            build_root_system(Preset::BC1, &[1.5, 2.5]).unwrap(),
            build_root_system(Preset::A2, &[1.0]).unwrap(),
        ] {
            let cf = CFunctions::new(&rs);
            let d = DFunction::new(&cf);
            let mut rng = Rng(0xdeadbeefcafe1234);
            for _ in 0..100 {
                let amb: Vec<Complex64> = (0..rs.rank)
                    .map(|_| c(4.0 * rng.next() - 2.0, 4.0 * rng.next() - 2.0))
                    .collect();
                let lam = rs.spectral_from_ambient(&amb);
                let r1 = d.d(&lam);
                let r2 = d.d_via_shift(&lam);
                if let (Ok(a), Ok(b)) = (&r1, &r2) {
                    assert!(
                        (a - b).norm() <= 1e-10 * (1.0 + a.norm()),
                        "route1 {a} route2 {b} at {amb:?}"
                    );
                }
                // Polynomial route compares on the shifted argument.
                let shifted = rs.spectral_from_ambient(
                    &lam.ambient
                        .iter()
                        .zip(&rs.rho)
                        .map(|(&z, &r)| z + r)
                        .collect::<Vec<_>>(),
                );
                if let (Some(p), Ok(b)) = (d.d_shifted_polynomial(&shifted), d.d_shifted(&shifted))
                {
                    assert!(
                        (p - b).norm() <= 1e-10 * (1.0 + p.norm()),
                        "poly {p} gamma {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn d_polynomial_form_flags() {
        let rs = build_root_system(Preset::A1, &[2.0]).unwrap();
        let cf = CFunctions::new(&rs);
        assert!(DFunction::new(&cf).has_polynomial_form);
        let rs = build_root_system(Preset::A1, &[2.5]).unwrap();
        let cf = CFunctions::new(&rs);
        assert!(!DFunction::new(&cf).has_polynomial_form);
        let rs = build_root_system(Preset::BC1, &[2.0, 1.0]).unwrap();
        let cf = CFunctions::new(&rs);
        assert!(DFunction::new(&cf).has_polynomial_form);
        let rs = build_root_system(Preset::BC1, &[1.0, 1.0]).unwrap();
        let cf = CFunctions::new(&rs);
        assert!(!DFunction::new(&cf).has_polynomial_form);
    }

    #[test]
    fn b_rank_one_reduced_closed_form() {
        // b(lambda) = -C_b/sin(pi lambda) under our sign convention, with
        // C_b = (1/2) Gamma(m)/(Gamma(m/2) Gamma(1 + m/2)); C_b = 1/2 at m = 2.
        let rs = build_root_system(Preset::A1, &[2.0]).unwrap();
        let cf = CFunctions::new(&rs);
        let b = BFunction::new(&cf);
        assert!((b.c_b - 0.5).abs() < 1e-12);
        let mut rng = Rng(0x1234567812345678);
        for _ in 0..50 {
            let lam =
                rs.spectral_from_ambient(&[c(2.0 * rng.next() - 1.0, 2.0 * rng.next() - 1.0)]);
            let got = b.b(&lam).unwrap();
            let want = -b.c_b * inv_sin_pi(lam.coords[0]);
            assert!((got - want).norm() < 1e-10 * (1.0 + want.norm()));
        }
        // General m: C_b = Gamma(m)/(2 Gamma(m/2) Gamma(1+m/2)).
        for m in [1.0, 2.5, 3.0] {
            let rs = build_root_system(Preset::A1, &[m]).unwrap();
            let cf = CFunctions::new(&rs);
            let b = BFunction::new(&cf);
            let g = |x: f64| crate::gammac::gamma(c(x, 0.0)).unwrap().re;
            let want = 0.5 * g(m) / (g(m / 2.0) * g(1.0 + m / 2.0));
            assert!((b.c_b - want).abs() < 1e-12, "m={m}: {} vs {want}", b.c_b);
        }
    }

    #[test]
    fn b_routes_agree() {
        for rs in [
            build_root_system(Preset::A1, &[2.0]).unwrap(),
            build_root_system(Preset::A1, &[0.8]).unwrap(),
            build_root_system(Preset::BC1, &[1.5, 2.5]).unwrap(),
            build_root_system(Preset::A2, &[1.0]).unwrap(),
            build_root_system(Preset::B2, &[1.2, 2.3]).unwrap(),
            build_root_system(Preset::BC2, &[0.7, 1.9, 1.1]).unwrap(),
        ] {
            let cf = CFunctions::new(&rs);
            let b = BFunction::new(&cf);
            let mut rng = Rng(0xfeedface0badf00d);
            for _ in 0..100 {
                let amb: Vec<Complex64> = (0..rs.rank)
                    .map(|_| c(3.0 * rng.next() - 1.5, 3.0 * rng.next() - 1.5))
                    .collect();
                let lam = rs.spectral_from_ambient(&amb);
                if let (Ok(v1), Ok(v2)) = (b.b(&lam), b.b_trig_route(&lam)) {
                    assert!(
                        (v1 - v2).norm() <= 1e-10 * (1.0 + v1.norm()),
                        "b routes disagree: {v1} vs {v2} at {amb:?}"
                    );
                }
                // b_over_cc = b * plancherel density.
                if let (Ok(bv), Ok(p), Ok(bcc)) =
                    (b.b(&lam), cf.plancherel_density(&lam), b.b_over_cc(&lam))
                {
                    assert!(
                        (bv * p - bcc).norm() <= 1e-9 * (1.0 + bcc.norm()),
                        "b*p {} vs b_over_cc {bcc}",
                        bv * p
                    );
                }
            }
        }
    }

    #[test]
    fn b_sine_pole_is_tagged() {
        let rs = build_root_system(Preset::A1, &[2.0]).unwrap();
        let cf = CFunctions::new(&rs);
        let b = BFunction::new(&cf);
        // lambda = rho + 2 sits on H_{1,k=2}.
        let lam = rs.spectral_from_real(&[3.0]);
        match b.b_over_cc(&lam) {
            Err(s) => {
                let (kind, j, k) = s.family.expect("tagged family");
                assert_eq!(kind, FamilyKind::Hj);
                assert_eq!(j, 0);
                assert_eq!(k, 2);
            }
            Ok(v) => panic!("expected singular, got {v}"),
        }
    }

    #[test]
    fn tube_membership_basics() {
        let rs = build_root_system(Preset::A1, &[2.0]).unwrap();
        // L_beta = rho_tilde = 1 at m = 2.
        let zero = rs.spectral_from_real(&[0.0]);
        assert!(tube_contains(&rs, TubeDomain::TDelta { delta: 1.0 }, &zero).unwrap());
        let close = rs.spectral_from_real(&[0.99]);
        assert!(tube_contains(&rs, TubeDomain::TDelta { delta: 1.0 }, &close).unwrap());
        let outside = rs.spectral_from_real(&[1.01]);
        assert!(!tube_contains(&rs, TubeDomain::TDelta { delta: 1.0 }, &outside).unwrap());
        assert!(tube_contains(&rs, TubeDomain::TDelta { delta: 1.5 }, &zero).is_err());
        assert!(tube_contains(&rs, TubeDomain::TPiEta { eta: 0.7 }, &zero).is_err());
    }

    #[test]
    fn tube_intersection_lemma() {
        // T_delta = intersection over w of w(T') = intersection of w(T'').
        for rs in [
            build_root_system(Preset::A2, &[1.3]).unwrap(),
            build_root_system(Preset::B2, &[0.9, 2.4]).unwrap(),
            build_root_system(Preset::BC2, &[1.5, 0.8, 2.5]).unwrap(),
        ] {
            let mut rng = Rng(0x0123456789abcdef);
            let delta = 0.7;
            for _ in 0..1000 {
                let amb: Vec<Complex64> = (0..rs.rank)
                    .map(|_| c(4.0 * rng.next() - 2.0, 4.0 * rng.next() - 2.0))
                    .collect();
                let lam = rs.spectral_from_ambient(&amb);
                let in_t = tube_contains(&rs, TubeDomain::TDelta { delta }, &lam).unwrap();
                let mut in_all_prime = true;
                let mut in_all_dprime = true;
                for w in &rs.weyl {
                    // lambda in w(T') iff w^{-1} lambda in T'; enumerate all
                    // elements, so applying each w covers all inverses.
                    let img = rs.spectral_from_ambient(&w.apply_complex(&lam.ambient));
                    in_all_prime &= tube_contains(&rs, TubeDomain::TPrime { delta }, &img).unwrap();
                    in_all_dprime &=
                        tube_contains(&rs, TubeDomain::TDoublePrime { delta }, &img).unwrap();
                }
                assert_eq!(in_t, in_all_prime);
                assert_eq!(in_t, in_all_dprime);
            }
        }
    }

    #[test]
    fn classifier_covers_every_row() {
        // Basis rows via rank-one systems.
        let expect_basis = [
            (vec![2.0], Preset::A1, "basis(1)"),       // reduced: m_half = 0
            (vec![1.0, 2.0], Preset::BC1, "basis(2)"), // 1 + 2 odd
            (vec![1.0, 3.0], Preset::BC1, "basis(3)"),
            (vec![1.0, 1.0], Preset::BC1, "basis(4)"),
            (vec![1.0, 2.5], Preset::BC1, "basis(5a)"),
            (vec![1.0, 0.5], Preset::BC1, "basis(5b)"),
            (vec![2.0, 1.5], Preset::BC1, "basis(1)"), // m_half/2 integer
        ];
        for (m, preset, label) in expect_basis {
            let rs = build_root_system(preset, &m).unwrap();
            let rep = classify_singularities(&rs);
            let row = rep.per_root.iter().find(|r| r.is_basis).unwrap();
            assert_eq!(row.case_label, label, "m = {m:?}");
        }
        // Non-basis rows: BC2 with the 2e1 root (non-basis, has half root e1).
        // Multiplicity order: [m_{e}, m_{mid}, m_{2e}].
        let expect_nonbasis = [
            (vec![2.0, 1.0, 3.0], "nonbasis(1)"),
            (vec![2.0, 1.0, 1.5], "nonbasis(2)"),
            (vec![1.0, 1.0, 2.0], "nonbasis(3)"),
            (vec![1.0, 1.0, 3.0], "nonbasis(4)"),
            (vec![1.0, 1.0, 1.0], "nonbasis(5)"),
            (vec![1.0, 1.0, 2.5], "nonbasis(6)"),
            (vec![1.0, 1.0, 2.3], "nonbasis(7a)"),
            (vec![1.0, 1.0, 0.7], "nonbasis(7b)"),
        ];
        for (m, label) in expect_nonbasis {
            let rs = build_root_system(Preset::BC2, &m).unwrap();
            let rep = classify_singularities(&rs);
            // Find the non-basis root with a half root (2 e1).
            let row = rep
                .per_root
                .iter()
                .find(|r| {
                    !r.is_basis && {
                        let beta = &rs.positive_roots[rs.unmult_positive[r.beta]];
                        rs.multiplicity_half(beta) > 0.0
                    }
                })
                .unwrap();
            assert_eq!(row.case_label, label, "m = {m:?}");
        }
        // Reduced non-basis rows via B2 (both e1-e2 and e1+e2 families are
        // unmultipliable; the non-basis ones are alpha_1 + alpha_2 and
        // alpha_1 + 2 alpha_2).
        let rs = build_root_system(Preset::B2, &[2.0, 1.3]).unwrap();
        let rep = classify_singularities(&rs);
        for row in rep.per_root.iter().filter(|r| !r.is_basis) {
            let beta = &rs.positive_roots[rs.unmult_positive[row.beta]];
            let m = rs.multiplicity(beta);
            if (m - 2.0).abs() < 1e-12 {
                assert_eq!(row.case_label, "nonbasis(1)");
            } else {
                assert_eq!(row.case_label, "nonbasis(2)");
            }
        }
    }

    #[test]
    fn l_beta_consistency_with_root_system() {
        // L_beta from the classifier l_beta of the basis representative
        // matches the constant stored on the root system.
        for rs in [
            build_root_system(Preset::A1, &[2.0]).unwrap(),
            build_root_system(Preset::BC1, &[1.0, 2.5]).unwrap(),
            build_root_system(Preset::BC2, &[1.0, 1.3, 0.7]).unwrap(),
            build_root_system(Preset::B2, &[1.1, 2.0]).unwrap(),
        ] {
            let rep = classify_singularities(&rs);
            for row in rep.per_root.iter().filter(|r| r.is_basis) {
                let l = row.l_beta.expect("basis roots always have l_beta");
                assert!(
                    (rs.l_bound[row.beta] + l).abs() < 1e-12,
                    "L_beta mismatch on root {}",
                    row.beta
                );
            }
        }
    }

    #[test]
    fn d_growth_bound_finite_sample() {
        // |d(lambda - rho)| <= C0 prod (1 + |lambda_beta|)^(m_half + m) with a
        // fitted constant stable under grid doubling.
        let rs = build_root_system(Preset::BC1, &[1.5, 2.5]).unwrap();
        let cf = CFunctions::new(&rs);
        let d = DFunction::new(&cf);
        let fit = |n: usize| -> f64 {
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let re = -0.4 + 1.0 * (i as f64 + 0.5) / n as f64;
                    let im = 40.0 * (j as f64 + 0.5) / n as f64;
                    let lam = rs.spectral_from_ambient(&[c(re, im)]);
                    if let Ok(v) = d.d_shifted(&lam) {
                        let lb = lam.coords[0];
                        let env = (1.0 + lb.norm()).powf(rs.growth_exponent);
                        worst = worst.max(v.norm() / env);
                    }
                }
            }
            worst
        };
        let c1 = fit(20);
        let c2 = fit(40);
        assert!(c2.is_finite() && c1.is_finite());
        assert!(
            (c2 - c1).abs() / c1 < 0.05,
            "fitted constant drift: {c1} -> {c2}"
        );
    }
}
