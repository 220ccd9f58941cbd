//! `rmt`: evaluation, table dumps and verification suites for the
//! root-system master-identity library.
//!
//! Output is deterministic: floats are rounded to 15 significant digits
//! before printing, sample grids derive from a fixed seed, and identical
//! invocations produce byte-identical output. Exit code 0 means every check
//! passed, 1 a numeric failure, 2 a usage error.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use ramanujan_roots::gammac::CFunctions;
use ramanujan_roots::hyper1::{f_lambda_rank1, Rank1Params};
use ramanujan_roots::jacobi::JacobiEngine;
use ramanujan_roots::master::{HardyFunction, MasterCase};
use ramanujan_roots::rootsys::{
    build_root_system, root_system_from_json, Preset, RootSystem, SpectralParameter,
};
use ramanujan_roots::specfun::{
    classify_singularities, tube_contains, BFunction, DFunction, TubeDomain,
};
use serde_json::{json, Value};

mod verify;

#[derive(Parser)]
#[command(
    name = "rmt",
    version,
    about = "Hypergeometric Fourier analysis on root systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Root-system preset: A1, A2, B2, BC1, BC2.
    #[arg(long, global = true)]
    system: Option<String>,
    /// Multiplicities, one value per Weyl orbit (comma separated).
    #[arg(long, value_delimiter = ',', global = true)]
    m: Option<Vec<f64>>,
    /// Output format: json, csv or pretty.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Force JSON output (same as --format json).
    #[arg(long, global = true, default_value_t = false)]
    json: bool,
    /// Quadrature / check tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Maximum quadrature refinements.
    #[arg(long, global = true)]
    max_refine: Option<usize>,
    /// Seed for sample-grid checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON config file; explicit flags take precedence over its entries.
    #[arg(long, global = true)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Root-system constants: rho, Omega, Weyl order, L_beta.
    Rootinfo {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Evaluate c, c*, and the Plancherel density at a spectral point.
    Cfun {
        #[command(flatten)]
        common: CommonOpts,
        /// One "re,im" or "a+bi" literal per fundamental-weight coordinate.
        #[arg(long, required = true, allow_hyphen_values = true)]
        lambda: Vec<String>,
    },
    /// Evaluate the d function (all routes).
    Dfun {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, required = true, allow_hyphen_values = true)]
        lambda: Vec<String>,
    },
    /// Evaluate the b function and b/(c c).
    Bfun {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, required = true, allow_hyphen_values = true)]
        lambda: Vec<String>,
    },
    /// Tube-domain membership test.
    Tube {
        #[command(flatten)]
        common: CommonOpts,
        /// T_delta, T_prime, T_doubleprime, T_Pi_eta, Hardy, L_Sigma, T_Sigma.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, required = true, allow_hyphen_values = true)]
        lambda: Vec<String>,
    },
    /// Jacobi polynomial coefficients for one dominant weight.
    Jacobi {
        #[command(flatten)]
        common: CommonOpts,
        /// Weight coordinates in the fundamental-weight basis, e.g. "3" or "1,1".
        #[arg(long, value_delimiter = ',')]
        mu: Vec<i64>,
        /// Emit the CSV coefficient table.
        #[arg(long, default_value_t = false)]
        dump_coeffs: bool,
    },
    /// Rank-one hypergeometric function F_lambda(exp H).
    EvalF {
        #[command(flatten)]
        common: CommonOpts,
        /// Multiplicity of beta/2 (defaults to 0, the reduced case).
        #[arg(long, default_value_t = 0.0)]
        m_half: f64,
        /// Spectral parameter, "a+bi" literal or "re,im".
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Group coordinate u = beta(H).
        #[arg(long = "H", value_name = "H")]
        h: f64,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Singularity classification of b/(c c) (the two case tables).
    Singularities {
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Rank-one identity battery for the exponential Hardy family.
    Rank1 {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, alias = "P", default_value_t = 1.0)]
        p: f64,
        #[arg(long, alias = "A", default_value_t = 0.0)]
        a: f64,
    },
    /// Cross-module identity battery.
    Identities {
        #[command(flatten)]
        common: CommonOpts,
    },
}

/// Merged runtime configuration (config file values overridden by flags).
pub struct RunConfig {
    pub system: String,
    pub multiplicities: Vec<f64>,
    pub format: String,
    pub tol: f64,
    pub max_refine: usize,
    pub seed: u64,
}

fn merge_config(common: &CommonOpts) -> Result<RunConfig, String> {
    let mut system: Option<String> = None;
    let mut mults: Option<Vec<f64>> = None;
    let mut format: Option<String> = None;
    let mut tol: Option<f64> = None;
    let mut max_refine: Option<usize> = None;
    let mut seed: Option<u64> = None;
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("config {path}: {e}"))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| format!("config {path}: {e}"))?;
        if let Some(s) = v.get("system").and_then(|x| x.as_str()) {
            system = Some(s.to_string());
        }
        if let Some(arr) = v.get("multiplicities").and_then(|x| x.as_array()) {
            mults = Some(arr.iter().filter_map(|x| x.as_f64()).collect());
        }
        if let Some(s) = v.get("format").and_then(|x| x.as_str()) {
            format = Some(s.to_string());
        }
        if let Some(x) = v.get("tol").and_then(|x| x.as_f64()) {
            tol = Some(x);
        }
        if let Some(x) = v.get("max_refine").and_then(|x| x.as_u64()) {
            max_refine = Some(x as usize);
        }
        if let Some(x) = v.get("seed").and_then(|x| x.as_u64()) {
            seed = Some(x);
        }
    }
    // Explicit flags win over the config file.
    if let Some(s) = &common.system {
        system = Some(s.clone());
    }
    if let Some(m) = &common.m {
        mults = Some(m.clone());
    }
    if let Some(f) = &common.format {
        format = Some(f.clone());
    }
    if common.json {
        format = Some("json".into());
    }
    if let Some(t) = common.tol {
        tol = Some(t);
    }
    if let Some(r) = common.max_refine {
        max_refine = Some(r);
    }
    if let Some(s) = common.seed {
        seed = Some(s);
    }
    let tol = tol.unwrap_or(1e-8);
    if tol <= 0.0 {
        return Err(format!("tolerance must be positive, got {tol}"));
    }
    Ok(RunConfig {
        system: system.unwrap_or_else(|| "A1".into()),
        multiplicities: mults.unwrap_or_else(|| vec![2.0]),
        format: format.unwrap_or_else(|| "pretty".into()),
        tol,
        max_refine: max_refine.unwrap_or(20),
        seed: seed.unwrap_or(0x5eed_0001),
    })
}

fn build_system(cfg: &RunConfig) -> Result<RootSystem, String> {
    if cfg.system.trim_start().starts_with('{') {
        return root_system_from_json(&cfg.system).map_err(|e| e.to_string());
    }
    let preset =
        Preset::parse(&cfg.system).ok_or_else(|| format!("unknown preset {}", cfg.system))?;
    build_root_system(preset, &cfg.multiplicities).map_err(|e| e.to_string())
}

/// Round to 15 significant digits (fixed output formatting).
pub fn round15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn jnum(x: f64) -> Value {
    json!(round15(x))
}

pub fn jcomplex(z: Complex64) -> Value {
    json!([round15(z.re), round15(z.im)])
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim().replace(' ', "");
    if let Some((re, im)) = t.split_once(',') {
        let re: f64 = re.parse().map_err(|_| format!("bad real part in {text}"))?;
        let im: f64 = im
            .parse()
            .map_err(|_| format!("bad imaginary part in {text}"))?;
        return Ok(Complex64::new(re, im));
    }
    if t.ends_with('i') || t.ends_with('I') {
        let body = &t[..t.len() - 1];
        // Split at the last +/- that is not an exponent sign or leading.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
                split = Some(i);
                break;
            }
        }
        return match split {
            Some(i) => {
                let re: f64 = body[..i]
                    .parse()
                    .map_err(|_| format!("bad real part in {text}"))?;
                let im_text = &body[i..];
                let im: f64 = if im_text == "+" {
                    1.0
                } else if im_text == "-" {
                    -1.0
                } else {
                    im_text
                        .parse()
                        .map_err(|_| format!("bad imaginary part in {text}"))?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() {
                    1.0
                } else {
                    body.parse()
                        .map_err(|_| format!("bad imaginary literal {text}"))?
                };
                Ok(Complex64::new(0.0, im))
            }
        };
    }
    let re: f64 = t.parse().map_err(|_| format!("bad number {text}"))?;
    Ok(Complex64::new(re, 0.0))
}

fn parse_lambda(rs: &RootSystem, parts: &[String]) -> Result<SpectralParameter, String> {
    if parts.len() != rs.rank {
        return Err(format!(
            "need {} --lambda coordinates for rank {}, got {}",
            rs.rank,
            rs.rank,
            parts.len()
        ));
    }
    let coords: Result<Vec<Complex64>, String> = parts.iter().map(|p| parse_complex(p)).collect();
    Ok(rs.spectral_from_coords(&coords?))
}

fn emit(cfg: &RunConfig, value: &Value) {
    match cfg.format.as_str() {
        "json" => println!("{}", serde_json::to_string(value).unwrap()),
        _ => println!("{}", serde_json::to_string_pretty(value).unwrap()),
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Rootinfo { common } => {
            let cfg = merge_config(&common)?;
            let rs = build_system(&cfg)?;
            let report = json!({
                "schema": 1,
                "system": cfg.system,
                "rank": rs.rank,
                "weyl_order": rs.weyl.len(),
                "rho_j": rs.rho_j.iter().map(|&x| jnum(x)).collect::<Vec<_>>(),
                "rho_ambient": rs.rho.iter().map(|&x| jnum(x)).collect::<Vec<_>>(),
                "Omega": jnum(rs.omega_bound),
                "M": jnum(rs.growth_exponent),
                "rho_tilde": rs.rho_tilde.iter().map(|&x| jnum(x)).collect::<Vec<_>>(),
                "L_beta": rs.l_bound.iter().map(|&x| jnum(x)).collect::<Vec<_>>(),
                "positive_roots": rs.positive_roots.iter()
                    .map(|r| r.iter().map(|&x| jnum(x)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "multiplicities": rs.multiplicities.iter().map(|&x| jnum(x)).collect::<Vec<_>>(),
            });
            emit(&cfg, &report);
            Ok(0)
        }
        Command::Cfun { common, lambda } => {
            let cfg = merge_config(&common)?;
            let rs = build_system(&cfg)?;
            let cf = CFunctions::new(&rs);
            let lam = parse_lambda(&rs, &lambda)?;
            let mut report = json!({
                "schema": 1,
                "lambda": lam.coords.iter().map(|&z| jcomplex(z)).collect::<Vec<_>>(),
            });
            let obj = report.as_object_mut().unwrap();
            for (name, val) in [
                ("c", cf.c(&lam)),
                ("c_star", cf.c_star(&lam)),
                ("plancherel_density", cf.plancherel_density(&lam)),
            ] {
                match val {
                    Ok(v) => {
                        obj.insert(name.into(), jcomplex(v));
                    }
                    Err(s) => {
                        obj.insert(
                            name.into(),
                            json!({"singular": true, "detail": s.to_string()}),
                        );
                    }
                }
            }
            emit(&cfg, &report);
            Ok(0)
        }
        Command::Dfun { common, lambda } => {
            let cfg = merge_config(&common)?;
            let rs = build_system(&cfg)?;
            let cf = CFunctions::new(&rs);
            let d = DFunction::new(&cf);
            let lam = parse_lambda(&rs, &lambda)?;
            let report = match d.d(&lam) {
                Ok(v) => json!({
                    "schema": 1,
                    "lambda": lam.coords.iter().map(|&z| jcomplex(z)).collect::<Vec<_>>(),
                    "value": jcomplex(v),
                    "singular": false,
                }),
                Err(s) => json!({
                    "schema": 1,
                    "lambda": lam.coords.iter().map(|&z| jcomplex(z)).collect::<Vec<_>>(),
                    "singular": true,
                    "hyperplane": s.to_string(),
                }),
            };
            emit(&cfg, &report);
            Ok(0)
        }
        Command::Bfun { common, lambda } => {
            let cfg = merge_config(&common)?;
            let rs = build_system(&cfg)?;
            let cf = CFunctions::new(&rs);
            let b = BFunction::new(&cf);
            let lam = parse_lambda(&rs, &lambda)?;
            let mut report = json!({
                "schema": 1,
                "lambda": lam.coords.iter().map(|&z| jcomplex(z)).collect::<Vec<_>>(),
            });
            let obj = report.as_object_mut().unwrap();
            match b.b(&lam) {
                Ok(v) => {
                    obj.insert("value".into(), jcomplex(v));
                    obj.insert("singular".into(), json!(false));
                }
                Err(s) => {
                    obj.insert("singular".into(), json!(true));
                    obj.insert("hyperplane".into(), json!(s.to_string()));
                }
            }
            if let Ok(v) = b.b_over_cc(&lam) {
                obj.insert("b_over_cc".into(), jcomplex(v));
            }
            emit(&cfg, &report);
            Ok(0)
        }
        Command::Tube {
            common,
            kind,
            delta,
            eta,
            lambda,
        } => {
            let cfg = merge_config(&common)?;
            let rs = build_system(&cfg)?;
            let lam = parse_lambda(&rs, &lambda)?;
            let tube = match kind.as_str() {
                "T_delta" => TubeDomain::TDelta {
                    delta: delta.ok_or("T_delta needs --delta")?,
                },
                "T_prime" => TubeDomain::TPrime {
                    delta: delta.ok_or("T_prime needs --delta")?,
                },
                "T_doubleprime" => TubeDomain::TDoublePrime {
                    delta: delta.ok_or("T_doubleprime needs --delta")?,
                },
                "T_Pi_eta" => TubeDomain::TPiEta {
                    eta: eta.ok_or("T_Pi_eta needs --eta")?,
                },
                "Hardy" => TubeDomain::Hardy {
                    delta: delta.ok_or("Hardy needs --delta")?,
                },
                "L_Sigma" => TubeDomain::LSigma,
                "T_Sigma" => TubeDomain::TSigma,
                other => return Err(format!("unknown tube kind {other}")),
            };
            let contains = tube_contains(&rs, tube, &lam).map_err(|e| e.to_string())?;
            let report = json!({
                "schema": 1,
                "kind": kind,
                "delta": delta.map(jnum),
                "eta": eta.map(jnum),
                "lambda": lam.coords.iter().map(|&z| jcomplex(z)).collect::<Vec<_>>(),
                "contains": contains,
            });
            emit(&cfg, &report);
            Ok(0)
        }
        Command::Jacobi {
            common,
            mu,
            dump_coeffs,
        } => {
            let cfg = merge_config(&common)?;
            let rs = build_system(&cfg)?;
            if mu.len() != rs.rank {
                return Err(format!("--mu needs {} coordinates", rs.rank));
            }
            let cf = CFunctions::new(&rs);
            let je = JacobiEngine::new(&rs, &cf);
            let weight = rs.weight_from_coords(&mu);
            let expansion = je.coeffs_recursion(&weight).map_err(|e| e.to_string())?;
            if dump_coeffs || cfg.format == "csv" {
                let header: Vec<String> = (1..=rs.rank).map(|j| format!("nu_{j}")).collect();
                println!("{},c", header.join(","));
                for (w, c) in &expansion.coeffs {
                    let coords: Vec<String> = w.coords.iter().map(|x| x.to_string()).collect();
                    println!("{},{:?}", coords.join(","), round15(*c));
                }
            } else {
                let report = json!({
                    "schema": 1,
                    "mu": mu,
                    "norm_p_squared": jnum(je.norm_p_squared(&weight).map_err(|e| e.to_string())?),
                    "coeffs": expansion.coeffs.iter()
                        .map(|(w, c)| json!({"nu": w.coords, "c": jnum(*c)}))
                        .collect::<Vec<_>>(),
                });
                emit(&cfg, &report);
            }
            Ok(0)
        }
        Command::EvalF {
            common,
            m_half,
            lambda,
            h,
        } => {
            let cfg = merge_config(&common)?;
            let m = cfg.multiplicities.first().copied().unwrap_or(2.0);
            let params = Rank1Params::new(m_half, m).map_err(|e| e.to_string())?;
            let lam = parse_complex(&lambda)?;
            let value = f_lambda_rank1(&params, lam, h).map_err(|e| e.to_string())?;
            let report = json!({
                "schema": 1,
                "m_half": jnum(m_half),
                "m": jnum(m),
                "lambda": jcomplex(lam),
                "H": jnum(h),
                "value": jcomplex(value),
            });
            emit(&cfg, &report);
            Ok(0)
        }
        Command::Singularities { common } => {
            let cfg = merge_config(&common)?;
            let rs = build_system(&cfg)?;
            let rep = classify_singularities(&rs);
            let rows: Vec<Value> = rep
                .per_root
                .iter()
                .map(|r| {
                    json!({
                        "beta": rs.positive_roots[rs.unmult_positive[r.beta]],
                        "is_basis": r.is_basis,
                        "case": r.case_label,
                        "h1": format!("{:?}", r.h1),
                        "h2": format!("{:?}", r.h2),
                        "l_beta": r.l_beta.map(jnum),
                    })
                })
                .collect();
            emit(&cfg, &json!({"schema": 1, "rows": rows}));
            Ok(0)
        }
        Command::Verify { what } => match what {
            VerifyCommand::Rank1 { common, p, a } => {
                let cfg = merge_config(&common)?;
                let rs = build_system(&cfg)?;
                if rs.rank != 1 {
                    return Err("verify rank1 needs a rank-one system".into());
                }
                let cf = CFunctions::new(&rs);
                let case = MasterCase::new(
                    &rs,
                    &cf,
                    HardyFunction::exponential(p, a).map_err(|e| e.to_string())?,
                );
                let checks = verify::rank1_battery(&rs, &cf, &case, p, a, cfg.tol);
                let pass = verify::emit_report(&cfg, "rank1", &checks);
                Ok(if pass { 0 } else { 1 })
            }
            VerifyCommand::Identities { common } => {
                let cfg = merge_config(&common)?;
                let checks = verify::identities_battery(cfg.tol, cfg.seed);
                let pass = verify::emit_report(&cfg, "identities", &checks);
                Ok(if pass { 0 } else { 1 })
            }
        },
    }
}
