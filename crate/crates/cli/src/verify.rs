//! Verification batteries: per-identity reports with machine-readable
//! output and one pass/fail line per check in pretty mode.

use crate::{jnum, round15, RunConfig};
use num_complex::Complex64;
use ramanujan_roots::gammac::CFunctions;
use ramanujan_roots::hyper1::f_lambda_rank1;
use ramanujan_roots::jacobi::JacobiEngine;
use ramanujan_roots::master::MasterCase;
use ramanujan_roots::quad;
use ramanujan_roots::rootsys::{build_root_system, Preset, RootSystem};
use ramanujan_roots::specfun::{tube_contains, BFunction, DFunction, TubeDomain};
use serde_json::json;
use std::f64::consts::PI;

pub struct NamedCheck {
    pub name: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub tol: f64,
}

impl NamedCheck {
    fn new(name: impl Into<String>, lhs: Complex64, rhs: Complex64, tol: f64) -> NamedCheck {
        NamedCheck {
            name: name.into(),
            lhs,
            rhs,
            tol,
        }
    }

    fn real(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> NamedCheck {
        Self::new(
            name,
            Complex64::new(lhs, 0.0),
            Complex64::new(rhs, 0.0),
            tol,
        )
    }

    pub fn gap(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }

    pub fn pass(&self) -> bool {
        self.gap() < self.tol
    }
}

/// Print the report; returns overall pass.
pub fn emit_report(cfg: &RunConfig, suite: &str, checks: &[NamedCheck]) -> bool {
    let all_pass = checks.iter().all(|c| c.pass());
    if cfg.format == "json" {
        let items: Vec<_> = checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "lhs": [round15(c.lhs.re), round15(c.lhs.im)],
                    "rhs": [round15(c.rhs.re), round15(c.rhs.im)],
                    "gap": jnum(c.gap()),
                    "pass": c.pass(),
                })
            })
            .collect();
        let report = json!({
            "schema": 1,
            "suite": suite,
            "tol": jnum(checks.first().map(|c| c.tol).unwrap_or(0.0)),
            "checks": items,
            "pass": all_pass,
        });
        println!("{}", serde_json::to_string(&report).unwrap());
    } else {
        for c in checks {
            println!(
                "{} {:<46} gap {:.3e} (tol {:.1e})",
                if c.pass() { "PASS" } else { "FAIL" },
                c.name,
                c.gap(),
                c.tol
            );
        }
        println!(
            "{}: {}/{} checks passed",
            suite,
            checks.iter().filter(|c| c.pass()).count(),
            checks.len()
        );
    }
    all_pass
}

/// Rank-one battery: series vs contour vs closed form, sigma independence,
/// transform and Plancherel identities, and the m = 2 classical integral.
pub fn rank1_battery(
    rs: &RootSystem,
    _cf: &CFunctions,
    case: &MasterCase,
    p: f64,
    a: f64,
    tol: f64,
) -> Vec<NamedCheck> {
    let mut checks = Vec::new();
    let m = rs.multiplicities[rs.beta_basis[0]];
    let reduced = rs.multiplicity_half(&rs.positive_roots[rs.beta_basis[0]]) == 0.0;

    for u in [0.0, 0.35 * p, 0.7 * p] {
        let series = case.series_rank1(Complex64::new(u, 0.0), tol * 1e-2);
        let contour = case.master_contour(u, 0.0, tol * 1e-2);
        if let (Ok(s), Ok(k)) = (&series, &contour) {
            checks.push(NamedCheck::new(
                format!("series_vs_contour u={u:.3}"),
                *s,
                *k,
                tol,
            ));
        }
        if reduced {
            if let (Ok(s), Some(cl)) = (&series, case.closed_form_f(Complex64::new(u, 0.0))) {
                checks.push(NamedCheck::new(
                    format!("series_vs_closed u={u:.3}"),
                    *s,
                    cl,
                    tol,
                ));
            }
        }
    }

    // Sigma independence.
    let l_bound = rs.l_bound[0].min(rs.rho_tilde[0]);
    let (c1, c2) = (
        case.master_contour(0.3 * p.min(1.0), 0.0, tol * 1e-2),
        case.master_contour(0.3 * p.min(1.0), 0.4 * l_bound, tol * 1e-2),
    );
    if let (Ok(x), Ok(y)) = (c1, c2) {
        checks.push(NamedCheck::new("sigma_independence", x, y, tol));
    }

    // Transform identity at tube points.
    if reduced {
        for lam in [
            Complex64::new(0.0, 0.2),
            Complex64::new(0.25, 0.4),
            Complex64::new(-0.3, 1.0),
        ] {
            if let Ok(rep) = case.master_transform_check(lam, tol * 1e-2) {
                checks.push(NamedCheck::new(
                    format!("transform lam={lam}"),
                    rep.lhs,
                    rep.rhs,
                    tol,
                ));
            }
        }
        if let Ok(rep) = case.master_plancherel_check(tol * 1e-2) {
            checks.push(NamedCheck::new("plancherel", rep.lhs, rep.rhs, tol));
        }
    }

    // Classical m = 2 integral: int sin(P t)/sinh(pi t) t^2 dt
    //   = (1/2) sech^2(P/2) tanh(P/2).
    if reduced && (m - 2.0).abs() < 1e-12 && a == 0.0 {
        let lhs = quad::even_line_integral(
            |t| {
                if t < 1e-12 {
                    Complex64::new(p / PI, 0.0) * t * t
                } else {
                    Complex64::new((p * t).sin() / (PI * t).sinh() * t * t, 0.0)
                }
            },
            PI,
            tol * 1e-2,
            22,
        );
        if let Ok(v) = lhs {
            let rhs = 0.5 * (p / 2.0).cosh().powi(-2) * (p / 2.0).tanh();
            checks.push(NamedCheck::real(
                "classical_m2_integral",
                v.value.re,
                rhs,
                tol,
            ));
        }
    }
    checks
}

/// Cross-module identity battery at desk scale.
pub fn identities_battery(_tol: f64, seed: u64) -> Vec<NamedCheck> {
    let mut checks = Vec::new();
    let mut rng = SplitMix::new(seed);

    // cardW identity on random multiplicities.
    for (preset, n_orbits, order) in [
        (Preset::A1, 1, 2.0),
        (Preset::A2, 1, 6.0),
        (Preset::B2, 2, 8.0),
    ] {
        let mults: Vec<f64> = (0..n_orbits).map(|_| 0.5 + 2.5 * rng.next()).collect();
        let rs = build_root_system(preset, &mults).unwrap();
        let cf = CFunctions::new(&rs);
        let je = JacobiEngine::new(&rs, &cf);
        checks.push(NamedCheck::real(
            format!("cardW {preset:?}"),
            je.card_w_check(),
            order,
            1e-10,
        ));
    }

    // c-function route agreement and c(rho) = 1.
    for (preset, mults) in [
        (Preset::A1, vec![2.0]),
        (Preset::BC1, vec![1.5, 2.5]),
        (Preset::BC2, vec![0.7, 1.1, 2.2]),
    ] {
        let rs = build_root_system(preset, &mults).unwrap();
        let cf = CFunctions::new(&rs);
        let rho = rs.rho_spectral();
        checks.push(NamedCheck::new(
            format!("c(rho)=1 {preset:?}"),
            cf.c(&rho).unwrap(),
            Complex64::new(1.0, 0.0),
            1e-10,
        ));
        let amb: Vec<Complex64> = (0..rs.rank)
            .map(|_| Complex64::new(2.0 * rng.next() - 1.0, 2.0 * rng.next() - 1.0))
            .collect();
        let lam = rs.spectral_from_ambient(&amb);
        if let (Ok(x), Ok(y)) = (cf.c(&lam), cf.c_unmult_route(&lam)) {
            checks.push(NamedCheck::new(format!("c_routes {preset:?}"), x, y, 1e-10));
        }
    }

    // d routes and b routes at a random point.
    {
        let rs = build_root_system(Preset::BC1, &[1.5, 2.5]).unwrap();
        let cf = CFunctions::new(&rs);
        let d = DFunction::new(&cf);
        let b = BFunction::new(&cf);
        let lam = rs.spectral_from_ambient(&[Complex64::new(
            2.0 * rng.next() - 1.0,
            2.0 * rng.next() - 1.0,
        )]);
        if let (Ok(x), Ok(y)) = (d.d(&lam), d.d_via_shift(&lam)) {
            checks.push(NamedCheck::new("d_routes BC1", x, y, 1e-10));
        }
        if let (Ok(x), Ok(y)) = (b.b(&lam), b.b_trig_route(&lam)) {
            checks.push(NamedCheck::new("b_routes BC1", x, y, 1e-10));
        }
    }

    // Jacobi dual route on A1 (m = 1) at mu = 3.
    {
        let rs = build_root_system(Preset::A1, &[1.0]).unwrap();
        let cf = CFunctions::new(&rs);
        let je = JacobiEngine::new(&rs, &cf);
        let mu = rs.weight_from_coords(&[3]);
        let a = je.coeffs_recursion(&mu).unwrap();
        let b = je.coeffs_gram_schmidt(&mu, 1e-10).unwrap();
        let gap = a
            .coeffs
            .iter()
            .map(|(w, c)| (c - b.coefficient(&w.coords)).abs())
            .fold(0.0f64, f64::max);
        checks.push(NamedCheck::real(
            "jacobi_dual_route A1 m=1 mu=3",
            gap,
            0.0,
            1e-8,
        ));
        // Norm formula vs quadrature.
        let formula = je.norm_p_squared(&mu).unwrap();
        let quadr = je.norm_p_squared_quadrature(&a, 1e-10).unwrap();
        checks.push(NamedCheck::real(
            "norm_formula_vs_quadrature",
            formula,
            quadr,
            1e-6 * formula,
        ));
    }

    // Lattice agreement: F via 2F1 equals c(mu+rho) P_mu on A1 m=2.
    {
        let rs = build_root_system(Preset::A1, &[2.0]).unwrap();
        let cf = CFunctions::new(&rs);
        let je = JacobiEngine::new(&rs, &cf);
        let params = ramanujan_roots::hyper1::Rank1Params::new(0.0, 2.0).unwrap();
        let mu = rs.weight_from_coords(&[4]);
        let exp = je.coeffs_recursion(&mu).unwrap();
        let u = 0.3 + rng.next();
        let h = ramanujan_roots::jacobi::GroupPoint::rank_one(&rs, u, 0.0);
        let via_jacobi = je.eval_f_discrete(&exp, &h).unwrap();
        let via_2f1 =
            f_lambda_rank1(&params, Complex64::new(4.0 + params.rho_tilde, 0.0), u).unwrap();
        checks.push(NamedCheck::new(
            "F_lattice 2F1_vs_jacobi",
            via_2f1,
            via_jacobi,
            1e-9,
        ));
    }

    // Tube lemma sample.
    {
        let rs = build_root_system(Preset::B2, &[1.2, 0.9]).unwrap();
        let delta = 0.8;
        let mut agree = 0usize;
        let n = 200;
        for _ in 0..n {
            let amb: Vec<Complex64> = (0..2)
                .map(|_| Complex64::new(4.0 * rng.next() - 2.0, 4.0 * rng.next() - 2.0))
                .collect();
            let lam = rs.spectral_from_ambient(&amb);
            let in_t = tube_contains(&rs, TubeDomain::TDelta { delta }, &lam).unwrap();
            let in_all = rs.weyl.iter().all(|w| {
                let img = rs.spectral_from_ambient(&w.apply_complex(&lam.ambient));
                tube_contains(&rs, TubeDomain::TPrime { delta }, &img).unwrap()
            });
            if in_t == in_all {
                agree += 1;
            }
        }
        checks.push(NamedCheck::real(
            "tube_lemma B2",
            agree as f64,
            n as f64,
            0.5,
        ));
    }

    // Generating function identity.
    {
        let lhs = ramanujan_roots::hyper1::generating_series_lhs(2.0, 0.3, 0.4, 60).unwrap();
        let rhs = ramanujan_roots::gammac::gamma(Complex64::new(3.0, 0.0))
            .unwrap()
            .re
            / 2.0
            * ramanujan_roots::hyper1::generating_g(2.0, 0.3, 0.4).unwrap();
        checks.push(NamedCheck::real("generating_function m=2", lhs, rhs, 1e-10));
    }

    // A2 series shells settle.
    {
        let rs = build_root_system(Preset::A2, &[1.0]).unwrap();
        let cf = CFunctions::new(&rs);
        let case = MasterCase::new(
            &rs,
            &cf,
            ramanujan_roots::master::HardyFunction::exponential(1.0, 0.0).unwrap(),
        );
        let h = ramanujan_roots::jacobi::GroupPoint::torus(&rs, &[0.17, 0.31]);
        let s12 = case.series_partial_general(&h, 12).unwrap();
        let s16 = case.series_partial_general(&h, 16).unwrap();
        checks.push(NamedCheck::new("A2_series_cauchy", s16, s12, 2e-3));
    }

    checks
}

/// SplitMix64: deterministic, platform-independent sample grids.
struct SplitMix {
    state: u64,
}

impl SplitMix {
    fn new(seed: u64) -> SplitMix {
        SplitMix { state: seed }
    }

    fn next(&mut self) -> f64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z = z ^ (z >> 31);
        (z >> 11) as f64 / (1u64 << 53) as f64
    }
}
