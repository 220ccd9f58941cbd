//! Root-system combinatorics.
//!
//! A triple `(a, Sigma, m)` is stored with ambient coordinates taken in the
//! basis of simple roots of `Sigma`, so the Gram matrix of that basis carries
//! the inner product and every Weyl element is an integer matrix. Presets pin
//! their normalization: rank-one presets use `<beta, beta> = 1` for the
//! unmultipliable root `beta`, `A2` uses `<alpha, alpha> = 2`, `B2`/`BC2` use
//! squared lengths `1` and `2` for short/long simple roots.

use num_complex::Complex64;
use serde::Deserialize;
use std::collections::BTreeMap;
use thiserror::Error;

const EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum RootSystemError {
    #[error("multiplicities must be positive, got {0}")]
    NonPositiveMultiplicity(f64),
    #[error("expected {expected} multiplicity values for {preset}, got {got}")]
    MultiplicityCount {
        preset: String,
        expected: usize,
        got: usize,
    },
    #[error("multiplicity function is not Weyl-invariant: roots {0} and {1} lie in one orbit but carry {2} != {3}")]
    NotWeylInvariant(usize, usize, f64, f64),
    #[error("root set is not closed under reflections: s_{0}({1}) is not a root")]
    NotClosed(usize, usize),
    #[error("Gram matrix is not symmetric positive-definite")]
    BadGram,
    #[error("unknown preset {0}")]
    UnknownPreset(String),
    #[error("unknown multiplicity key {key} for preset {preset}")]
    UnknownMultiplicityKey { preset: String, key: String },
    #[error("weight is not dominant: {0:?}")]
    NotDominant(Vec<i64>),
    #[error("zero root")]
    ZeroRoot,
    #[error("invalid root system JSON: {0}")]
    Json(String),
    #[error("rank {0} exceeds the supported bound 3")]
    RankTooLarge(usize),
}

/// Square matrix acting on ambient (simple-root basis) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylElement {
    pub mat: Vec<Vec<f64>>,
}

impl WeylElement {
    fn identity(l: usize) -> Self {
        let mut mat = vec![vec![0.0; l]; l];
        for (i, row) in mat.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        WeylElement { mat }
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.mat
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply_complex(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.mat
            .iter()
            .map(|row| row.iter().zip(v).map(|(&a, &b)| b * a).sum())
            .collect()
    }

    fn compose(&self, other: &WeylElement) -> WeylElement {
        let l = self.mat.len();
        let mut mat = vec![vec![0.0; l]; l];
        for i in 0..l {
            for j in 0..l {
                let mut s = 0.0;
                for (k, item) in other.mat.iter().enumerate() {
                    s += self.mat[i][k] * item[j];
                }
                mat[i][j] = s;
            }
        }
        WeylElement { mat }
    }

    fn key(&self) -> Vec<i64> {
        self.mat
            .iter()
            .flatten()
            .map(|&x| (x * 4.0).round() as i64)
            .collect()
    }
}

/// Dominant (or general) restricted weight: integer coordinates in the
/// fundamental-weight basis plus derived ambient coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    pub coords: Vec<i64>,
    pub ambient: Vec<f64>,
}

impl Weight {
    pub fn total(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn key(&self) -> Vec<i64> {
        self.coords.clone()
    }
}

/// A point of complexified `a*`, kept in both fundamental-weight coordinates
/// `lambda_j` and ambient (simple-root basis) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParameter {
    pub coords: Vec<Complex64>,
    pub ambient: Vec<Complex64>,
}

/// Preset root systems. Rank-one presets use the `<beta,beta> = 1`
/// normalization of the unmultipliable root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    A1,
    A2,
    B2,
    BC1,
    BC2,
}

impl Preset {
    pub fn parse(name: &str) -> Option<Preset> {
        match name.to_ascii_uppercase().as_str() {
            "A1" => Some(Preset::A1),
            "A2" => Some(Preset::A2),
            "B2" => Some(Preset::B2),
            "BC1" => Some(Preset::BC1),
            "BC2" => Some(Preset::BC2),
            _ => None,
        }
    }

    /// Multiplicity orbit names, in the order the positional list is read.
    pub fn orbit_names(&self) -> &'static [&'static str] {
        match self {
            Preset::A1 => &["beta"],
            Preset::A2 => &["alpha"],
            Preset::B2 => &["short", "long"],
            Preset::BC1 => &["beta/2", "beta"],
            Preset::BC2 => &["beta/2", "mid", "beta"],
        }
    }
}

/// Root system data bundle: roots with multiplicities, Weyl group, weight
/// machinery and all derived constants.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub rank: usize,
    /// Gram matrix of the simple-root basis of `Sigma`.
    pub gram: Vec<Vec<f64>>,
    /// Positive roots, ambient coordinates.
    pub positive_roots: Vec<Vec<f64>>,
    /// Multiplicity of each positive root (parallel to `positive_roots`).
    pub multiplicities: Vec<f64>,
    /// Indices (into `positive_roots`) of the simple roots of `Sigma`.
    pub simple_roots: Vec<usize>,
    /// Indices of the positive unmultipliable roots (`beta` with `2 beta` not a root).
    pub unmult_positive: Vec<usize>,
    /// Indices of `beta_1 .. beta_l`: the unmultipliable simple basis.
    pub beta_basis: Vec<usize>,
    /// Fundamental restricted weights `omega_j`, ambient coordinates.
    pub fundamental_weights: Vec<Vec<f64>>,
    /// Full Weyl group as matrices on ambient coordinates.
    pub weyl: Vec<WeylElement>,
    /// Index of the identity inside `weyl`.
    pub identity_index: usize,

    // Derived constants.
    /// `rho = (1/2) sum m_alpha alpha`, ambient coordinates.
    pub rho: Vec<f64>,
    /// `rho_j = rho_{beta_j}`.
    pub rho_j: Vec<f64>,
    /// `rho_tilde_beta` per positive unmultipliable root (parallel to `unmult_positive`).
    pub rho_tilde: Vec<f64>,
    /// `Omega = max_j ||omega_j||`.
    pub omega_bound: f64,
    /// `M = sum_{beta} (m_{beta/2} + m_beta)`.
    pub growth_exponent: f64,
    /// `L_beta` per positive unmultipliable root (parallel to `unmult_positive`).
    pub l_bound: Vec<f64>,
    /// `rho_L = (1/2) sum L_beta beta`, ambient coordinates.
    pub rho_l: Vec<f64>,
    /// Multiplicity function `m_L` on the unmultipliable roots.
    pub m_l: Vec<f64>,
    /// Orbit id of each positive root (equal ids = one Weyl orbit).
    pub orbit_of: Vec<usize>,
}

fn dot(gram: &[Vec<f64>], x: &[f64], y: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            s += xi * gram[i][j] * yj;
        }
    }
    s
}

fn dot_cr(gram: &[Vec<f64>], x: &[Complex64], y: &[f64]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            s += xi * gram[i][j] * yj;
        }
    }
    s
}

fn vec_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < EPS)
}

/// Solve a small dense linear system by Gaussian elimination with partial
/// pivoting. Panics on singular input; callers control the matrices.
pub(crate) fn solve_dense(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().map(|r| r.to_vec()).collect();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, piv);
        rhs.swap(col, piv);
        assert!(m[col][col].abs() > 1e-14, "singular linear system");
        for row in (col + 1)..n {
            let f = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = rhs[row];
        for k in (row + 1)..n {
            s -= m[row][k] * x[k];
        }
        x[row] = s / m[row][row];
    }
    x
}

struct PresetData {
    gram: Vec<Vec<f64>>,
    positive_roots: Vec<Vec<f64>>,
    /// Orbit id per positive root, indexing into the multiplicity list.
    orbit: Vec<usize>,
    n_orbits: usize,
}

fn preset_data(preset: Preset) -> PresetData {
    match preset {
        Preset::A1 => PresetData {
            gram: vec![vec![1.0]],
            positive_roots: vec![vec![1.0]],
            orbit: vec![0],
            n_orbits: 1,
        },
        // Simple root alpha_1 = beta/2 with <beta, beta> = 1.
        Preset::BC1 => PresetData {
            gram: vec![vec![0.25]],
            positive_roots: vec![vec![1.0], vec![2.0]],
            orbit: vec![0, 1],
            n_orbits: 2,
        },
        Preset::A2 => PresetData {
            gram: vec![vec![2.0, -1.0], vec![-1.0, 2.0]],
            positive_roots: vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
            orbit: vec![0, 0, 0],
            n_orbits: 1,
        },
        // alpha_1 = e1 - e2 (long, length^2 = 2), alpha_2 = e2 (short, length^2 = 1).
        Preset::B2 => PresetData {
            gram: vec![vec![2.0, -1.0], vec![-1.0, 1.0]],
            positive_roots: vec![
                vec![0.0, 1.0], // e2, short
                vec![1.0, 1.0], // e1, short
                vec![1.0, 0.0], // e1 - e2, long
                vec![1.0, 2.0], // e1 + e2, long
            ],
            orbit: vec![0, 0, 1, 1],
            n_orbits: 2,
        },
        // Same simple basis as B2; doubled short roots added.
        Preset::BC2 => PresetData {
            gram: vec![vec![2.0, -1.0], vec![-1.0, 1.0]],
            positive_roots: vec![
                vec![0.0, 1.0], // e2
                vec![1.0, 1.0], // e1
                vec![1.0, 0.0], // e1 - e2
                vec![1.0, 2.0], // e1 + e2
                vec![0.0, 2.0], // 2 e2
                vec![2.0, 2.0], // 2 e1
            ],
            orbit: vec![0, 0, 1, 1, 2, 2],
            n_orbits: 3,
        },
    }
}

/// Build a preset root system with positional multiplicities (one value per
/// Weyl orbit, see [`Preset::orbit_names`] for the order).
pub fn build_root_system(
    preset: Preset,
    multiplicities: &[f64],
) -> Result<RootSystem, RootSystemError> {
    let data = preset_data(preset);
    if multiplicities.len() != data.n_orbits {
        return Err(RootSystemError::MultiplicityCount {
            preset: format!("{preset:?}"),
            expected: data.n_orbits,
            got: multiplicities.len(),
        });
    }
    let per_root: Vec<f64> = data.orbit.iter().map(|&o| multiplicities[o]).collect();
    RootSystem::from_parts(data.gram, data.positive_roots, per_root)
}

/// Build a preset root system from named multiplicities.
pub fn build_root_system_named(
    preset: Preset,
    named: &BTreeMap<String, f64>,
) -> Result<RootSystem, RootSystemError> {
    let names = preset.orbit_names();
    let mut values = Vec::with_capacity(names.len());
    for name in names {
        match named.get(*name) {
            Some(&v) => values.push(v),
            None => {
                return Err(RootSystemError::UnknownMultiplicityKey {
                    preset: format!("{preset:?}"),
                    key: format!("missing \"{name}\""),
                })
            }
        }
    }
    for key in named.keys() {
        if !names.contains(&key.as_str()) {
            return Err(RootSystemError::UnknownMultiplicityKey {
                preset: format!("{preset:?}"),
                key: key.clone(),
            });
        }
    }
    build_root_system(preset, &values)
}

#[derive(Deserialize)]
struct RootSystemJson {
    preset: Option<String>,
    multiplicities: Option<serde_json::Value>,
    custom: Option<CustomJson>,
}

#[derive(Deserialize)]
struct CustomJson {
    gram: Vec<Vec<f64>>,
    positive_roots: Vec<Vec<f64>>,
    multiplicities: Vec<f64>,
}

/// Load a root system from a JSON document.
///
/// Presets: `{"preset": "BC1", "multiplicities": {"beta/2": 2.0, "beta": 1.5}}`
/// (an array of per-orbit values is also accepted). Custom systems supply
/// root vectors in the simple-root basis and a Gram matrix:
/// `{"custom": {"gram": [[1.0]], "positive_roots": [[1.0]], "multiplicities": [2.0]}}`.
pub fn root_system_from_json(text: &str) -> Result<RootSystem, RootSystemError> {
    let parsed: RootSystemJson =
        serde_json::from_str(text).map_err(|e| RootSystemError::Json(e.to_string()))?;
    if let Some(custom) = parsed.custom {
        return RootSystem::from_parts(custom.gram, custom.positive_roots, custom.multiplicities);
    }
    let name = parsed
        .preset
        .ok_or_else(|| RootSystemError::Json("need \"preset\" or \"custom\"".into()))?;
    let preset = Preset::parse(&name).ok_or(RootSystemError::UnknownPreset(name))?;
    let mults = parsed
        .multiplicities
        .ok_or_else(|| RootSystemError::Json("missing \"multiplicities\"".into()))?;
    match mults {
        serde_json::Value::Array(items) => {
            let mut values = Vec::new();
            for item in items {
                values
                    .push(item.as_f64().ok_or_else(|| {
                        RootSystemError::Json("multiplicity not a number".into())
                    })?);
            }
            build_root_system(preset, &values)
        }
        serde_json::Value::Object(map) => {
            let mut named = BTreeMap::new();
            for (k, v) in map {
                named.insert(
                    k,
                    v.as_f64()
                        .ok_or_else(|| RootSystemError::Json("multiplicity not a number".into()))?,
                );
            }
            build_root_system_named(preset, &named)
        }
        _ => Err(RootSystemError::Json("bad \"multiplicities\"".into())),
    }
}

impl RootSystem {
    /// Assemble and validate a root system from raw parts. `multiplicities`
    /// has one entry per positive root.
    pub fn from_parts(
        gram: Vec<Vec<f64>>,
        positive_roots: Vec<Vec<f64>>,
        multiplicities: Vec<f64>,
    ) -> Result<RootSystem, RootSystemError> {
        let l = gram.len();
        if l > 3 {
            return Err(RootSystemError::RankTooLarge(l));
        }
        for row in &gram {
            if row.len() != l {
                return Err(RootSystemError::BadGram);
            }
        }
        for i in 0..l {
            for j in 0..l {
                if (gram[i][j] - gram[j][i]).abs() > EPS {
                    return Err(RootSystemError::BadGram);
                }
            }
            if gram[i][i] <= 0.0 {
                return Err(RootSystemError::BadGram);
            }
        }
        for &m in &multiplicities {
            if m <= 0.0 {
                return Err(RootSystemError::NonPositiveMultiplicity(m));
            }
        }

        // All roots: positive plus negatives.
        let mut all_roots: Vec<Vec<f64>> = positive_roots.clone();
        for r in &positive_roots {
            all_roots.push(r.iter().map(|x| -x).collect());
        }
        let find_root = |v: &[f64]| all_roots.iter().position(|r| vec_eq(r, v));

        // Closure of the root set under all root reflections.
        for (i, alpha) in all_roots.iter().enumerate() {
            let na = dot(&gram, alpha, alpha);
            for (j, gamma) in all_roots.iter().enumerate() {
                let coef = 2.0 * dot(&gram, gamma, alpha) / na;
                let refl: Vec<f64> = gamma.iter().zip(alpha).map(|(g, a)| g - coef * a).collect();
                if find_root(&refl).is_none() {
                    return Err(RootSystemError::NotClosed(i, j));
                }
            }
        }

        // Simple roots: positive roots that are not sums of two positive roots.
        let mut simple_roots = Vec::new();
        for (i, alpha) in positive_roots.iter().enumerate() {
            let mut decomposable = false;
            'outer: for a in &positive_roots {
                for b in &positive_roots {
                    let sum: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    if vec_eq(&sum, alpha) {
                        decomposable = true;
                        break 'outer;
                    }
                }
            }
            if !decomposable {
                // Exclude doubled roots 2 alpha.
                let half: Vec<f64> = alpha.iter().map(|x| x / 2.0).collect();
                if positive_roots.iter().all(|r| !vec_eq(r, &half)) {
                    simple_roots.push(i);
                }
            }
        }
        if simple_roots.len() != l {
            return Err(RootSystemError::BadGram);
        }

        // Unmultipliable positive roots and the basis beta_1..beta_l.
        let is_root = |v: &[f64]| positive_roots.iter().any(|r| vec_eq(r, v));
        let mut unmult_positive = Vec::new();
        for (i, alpha) in positive_roots.iter().enumerate() {
            let twice: Vec<f64> = alpha.iter().map(|x| 2.0 * x).collect();
            if !is_root(&twice) {
                unmult_positive.push(i);
            }
        }
        let mut beta_basis = Vec::new();
        for &si in &simple_roots {
            let twice: Vec<f64> = positive_roots[si].iter().map(|x| 2.0 * x).collect();
            if let Some(t) = positive_roots.iter().position(|r| vec_eq(r, &twice)) {
                beta_basis.push(t);
            } else {
                beta_basis.push(si);
            }
        }

        // Weyl group from simple reflections, BFS closure.
        let mut generators = Vec::new();
        for &si in &simple_roots {
            let alpha = &positive_roots[si];
            let na = dot(&gram, alpha, alpha);
            let mut mat = vec![vec![0.0; l]; l];
            for j in 0..l {
                let mut e = vec![0.0; l];
                e[j] = 1.0;
                let coef = 2.0 * dot(&gram, &e, alpha) / na;
                for (i, row) in mat.iter_mut().enumerate() {
                    row[j] = e[i] - coef * alpha[i];
                }
            }
            generators.push(WeylElement { mat });
        }
        let mut weyl: Vec<WeylElement> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(WeylElement::identity(l));
        while let Some(w) = queue.pop_front() {
            if seen.insert(w.key()) {
                for g in &generators {
                    queue.push_back(g.compose(&w));
                }
                weyl.push(w);
            }
            assert!(weyl.len() <= 1024, "Weyl group enumeration diverged");
        }
        let identity_index = weyl
            .iter()
            .position(|w| *w == WeylElement::identity(l))
            .unwrap();

        // Weyl orbits of positive roots; used for the multiplicity
        // W-invariance check and the per-orbit constants.
        let mut orbit_of = vec![usize::MAX; positive_roots.len()];
        let mut next_orbit = 0;
        for i in 0..positive_roots.len() {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let id = next_orbit;
            next_orbit += 1;
            for w in &weyl {
                let img = w.apply(&positive_roots[i]);
                for (j, r) in positive_roots.iter().enumerate() {
                    if vec_eq(r, &img) {
                        if orbit_of[j] != usize::MAX && orbit_of[j] != id {
                            unreachable!("orbit bookkeeping clash");
                        }
                        orbit_of[j] = id;
                    }
                }
            }
        }
        for i in 0..positive_roots.len() {
            for j in 0..positive_roots.len() {
                if orbit_of[i] == orbit_of[j] && (multiplicities[i] - multiplicities[j]).abs() > EPS
                {
                    return Err(RootSystemError::NotWeylInvariant(
                        i,
                        j,
                        multiplicities[i],
                        multiplicities[j],
                    ));
                }
            }
        }

        // Fundamental weights: <omega_j, beta_k> = delta_jk <beta_k, beta_k>.
        let mut fundamental_weights = Vec::new();
        for j in 0..l {
            let mut a = vec![vec![0.0; l]; l];
            let mut b = vec![0.0; l];
            for (k, &bk) in beta_basis.iter().enumerate() {
                let beta = &positive_roots[bk];
                let nb = dot(&gram, beta, beta);
                for c in 0..l {
                    let mut e = vec![0.0; l];
                    e[c] = 1.0;
                    a[k][c] = dot(&gram, &e, beta) / nb;
                }
                b[k] = if k == j { 1.0 } else { 0.0 };
            }
            fundamental_weights.push(solve_dense(&a, &b));
        }

        // rho and friends.
        let mut rho = vec![0.0; l];
        for (i, alpha) in positive_roots.iter().enumerate() {
            for (c, x) in alpha.iter().enumerate() {
                rho[c] += 0.5 * multiplicities[i] * x;
            }
        }
        let mult_of = |v: &[f64]| -> f64 {
            positive_roots
                .iter()
                .position(|r| vec_eq(r, v))
                .map(|i| multiplicities[i])
                .unwrap_or(0.0)
        };
        let rho_tilde: Vec<f64> = unmult_positive
            .iter()
            .map(|&bi| {
                let beta = &positive_roots[bi];
                let half: Vec<f64> = beta.iter().map(|x| x / 2.0).collect();
                0.5 * (multiplicities[bi] + mult_of(&half) / 2.0)
            })
            .collect();
        let rho_j: Vec<f64> = beta_basis
            .iter()
            .map(|&bj| {
                let beta = &positive_roots[bj];
                dot(&gram, &rho, beta) / dot(&gram, beta, beta)
            })
            .collect();
        // Consistency: rho_j = (1/2)(m_{beta_j} + m_{beta_j/2}/2).
        for (k, &bj) in beta_basis.iter().enumerate() {
            let beta = &positive_roots[bj];
            let half: Vec<f64> = beta.iter().map(|x| x / 2.0).collect();
            let expect = 0.5 * (multiplicities[bj] + mult_of(&half) / 2.0);
            assert!(
                (rho_j[k] - expect).abs() < 1e-9,
                "rho_j mismatch: {} vs {expect}",
                rho_j[k]
            );
        }

        let omega_bound = fundamental_weights
            .iter()
            .map(|w| dot(&gram, w, w).sqrt())
            .fold(0.0f64, f64::max);

        let mut growth_exponent = 0.0;
        for &bi in &unmult_positive {
            let beta = &positive_roots[bi];
            let half: Vec<f64> = beta.iter().map(|x| x / 2.0).collect();
            growth_exponent += mult_of(&half) + multiplicities[bi];
        }

        // L_beta: first negative singular value of b/(c c) on the beta_j
        // representative of the orbit, from the multiplicity case analysis.
        let l_bound: Vec<f64> = unmult_positive
            .iter()
            .map(|&bi| {
                let beta = &positive_roots[bi];
                let half: Vec<f64> = beta.iter().map(|x| x / 2.0).collect();
                let m_half = mult_of(&half);
                let m = multiplicities[bi];
                l_beta_bound(m_half, m)
            })
            .collect();
        let mut rho_l = vec![0.0; l];
        for (k, &bi) in unmult_positive.iter().enumerate() {
            for (c, x) in positive_roots[bi].iter().enumerate() {
                rho_l[c] += 0.5 * l_bound[k] * x;
            }
        }
        let m_l: Vec<f64> = unmult_positive
            .iter()
            .enumerate()
            .map(|(k, &bi)| {
                let m = multiplicities[bi];
                if (l_bound[k] - rho_tilde[k]).abs() < EPS {
                    m
                } else {
                    0.5
                }
            })
            .collect();

        let rs = RootSystem {
            rank: l,
            gram,
            positive_roots,
            multiplicities,
            simple_roots,
            unmult_positive,
            beta_basis,
            fundamental_weights,
            weyl,
            identity_index,
            rho,
            rho_j,
            rho_tilde,
            omega_bound,
            growth_exponent,
            l_bound,
            rho_l,
            m_l,
            orbit_of,
        };
        rs.check_coroot_lattice()?;
        Ok(rs)
    }

    /// The coroot lattice used for the torus parameterization must be
    /// generated by the coroots of `beta_1..beta_l`.
    fn check_coroot_lattice(&self) -> Result<(), RootSystemError> {
        let l = self.rank;
        // Coroot of beta_j in ambient coordinates: 2 beta_j / <beta_j, beta_j>.
        let basis: Vec<Vec<f64>> = self
            .beta_basis
            .iter()
            .map(|&bj| {
                let beta = &self.positive_roots[bj];
                let nb = dot(&self.gram, beta, beta);
                beta.iter().map(|x| 2.0 * x / nb).collect()
            })
            .collect();
        for (i, alpha) in self.positive_roots.iter().enumerate() {
            let na = dot(&self.gram, alpha, alpha);
            let co: Vec<f64> = alpha.iter().map(|x| 2.0 * x / na).collect();
            // Solve co = sum c_j basis_j; entries must be integers.
            let mut a = vec![vec![0.0; l]; l];
            for (j, bvec) in basis.iter().enumerate() {
                for c in 0..l {
                    a[c][j] = bvec[c];
                }
            }
            let coeffs = solve_dense(&a, &co);
            for c in &coeffs {
                if (c - c.round()).abs() > EPS {
                    return Err(RootSystemError::NotClosed(i, i));
                }
            }
        }
        Ok(())
    }

    pub fn inner(&self, x: &[f64], y: &[f64]) -> f64 {
        dot(&self.gram, x, y)
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        dot(&self.gram, x, x).sqrt()
    }

    /// Norm of a complex covector: `||Re||^2 + ||Im||^2`.
    pub fn norm_complex(&self, x: &[Complex64]) -> f64 {
        let re: Vec<f64> = x.iter().map(|z| z.re).collect();
        let im: Vec<f64> = x.iter().map(|z| z.im).collect();
        (dot(&self.gram, &re, &re) + dot(&self.gram, &im, &im)).sqrt()
    }

    /// `lambda_alpha = <lambda, alpha> / <alpha, alpha>` for a nonzero root
    /// or covector `alpha` in ambient coordinates.
    pub fn lambda_alpha(
        &self,
        lambda: &SpectralParameter,
        alpha: &[f64],
    ) -> Result<Complex64, RootSystemError> {
        let na = dot(&self.gram, alpha, alpha);
        if na < EPS {
            return Err(RootSystemError::ZeroRoot);
        }
        Ok(dot_cr(&self.gram, &lambda.ambient, alpha) / na)
    }

    pub fn lambda_alpha_real(&self, lambda: &[f64], alpha: &[f64]) -> f64 {
        dot(&self.gram, lambda, alpha) / dot(&self.gram, alpha, alpha)
    }

    /// Multiplicity lookup by ambient vector, zero off the root system.
    pub fn multiplicity(&self, v: &[f64]) -> f64 {
        for (i, r) in self.positive_roots.iter().enumerate() {
            if vec_eq(r, v) {
                return self.multiplicities[i];
            }
            let neg: Vec<f64> = v.iter().map(|x| -x).collect();
            if vec_eq(r, &neg) {
                return self.multiplicities[i];
            }
        }
        0.0
    }

    /// Multiplicity of half of the given positive root (0 when `v/2` is not a root).
    pub fn multiplicity_half(&self, v: &[f64]) -> f64 {
        let half: Vec<f64> = v.iter().map(|x| x / 2.0).collect();
        self.multiplicity(&half)
    }

    pub fn spectral_from_coords(&self, coords: &[Complex64]) -> SpectralParameter {
        let l = self.rank;
        let mut ambient = vec![Complex64::new(0.0, 0.0); l];
        for (j, cj) in coords.iter().enumerate() {
            for c in 0..l {
                ambient[c] += cj * self.fundamental_weights[j][c];
            }
        }
        SpectralParameter {
            coords: coords.to_vec(),
            ambient,
        }
    }

    pub fn spectral_from_ambient(&self, ambient: &[Complex64]) -> SpectralParameter {
        let coords = self
            .beta_basis
            .iter()
            .map(|&bj| {
                let beta = &self.positive_roots[bj];
                dot_cr(&self.gram, ambient, beta) / dot(&self.gram, beta, beta)
            })
            .collect();
        SpectralParameter {
            coords,
            ambient: ambient.to_vec(),
        }
    }

    pub fn spectral_from_real(&self, ambient: &[f64]) -> SpectralParameter {
        let amb: Vec<Complex64> = ambient.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.spectral_from_ambient(&amb)
    }

    /// rho as a spectral parameter.
    pub fn rho_spectral(&self) -> SpectralParameter {
        self.spectral_from_real(&self.rho.clone())
    }

    pub fn weight_from_coords(&self, coords: &[i64]) -> Weight {
        let l = self.rank;
        let mut ambient = vec![0.0; l];
        for (j, &cj) in coords.iter().enumerate() {
            for c in 0..l {
                ambient[c] += cj as f64 * self.fundamental_weights[j][c];
            }
        }
        Weight {
            coords: coords.to_vec(),
            ambient,
        }
    }

    pub fn weight_from_ambient(&self, ambient: &[f64]) -> Option<Weight> {
        let coords: Vec<f64> = self
            .beta_basis
            .iter()
            .map(|&bj| {
                let beta = &self.positive_roots[bj];
                dot(&self.gram, ambient, beta) / dot(&self.gram, beta, beta)
            })
            .collect();
        let mut int_coords = Vec::with_capacity(coords.len());
        for c in coords {
            if (c - c.round()).abs() > 1e-6 {
                return None;
            }
            int_coords.push(c.round() as i64);
        }
        Some(Weight {
            coords: int_coords,
            ambient: ambient.to_vec(),
        })
    }

    /// Weight shifted by rho: `mu + rho` as a spectral parameter.
    pub fn weight_plus_rho(&self, mu: &Weight) -> SpectralParameter {
        let ambient: Vec<Complex64> = mu
            .ambient
            .iter()
            .zip(&self.rho)
            .map(|(&a, &r)| Complex64::new(a + r, 0.0))
            .collect();
        self.spectral_from_ambient(&ambient)
    }

    /// Orbit of a weight under the Weyl group, as ambient vectors
    /// (deduplicated, deterministic order).
    pub fn weyl_orbit(&self, mu: &Weight) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for w in &self.weyl {
            let img = w.apply(&mu.ambient);
            if !out.iter().any(|v| vec_eq(v, &img)) {
                out.push(img);
            }
        }
        out.sort_by(|a, b| {
            for (x, y) in a.iter().zip(b) {
                match x.partial_cmp(y).unwrap() {
                    std::cmp::Ordering::Equal => continue,
                    other => return other,
                }
            }
            std::cmp::Ordering::Equal
        });
        out
    }

    /// The unique dominant representative of `W v` for a real covector.
    /// Ties (stabilized points) resolve to the same vector.
    pub fn dominant_representative(&self, v: &[f64]) -> Vec<f64> {
        let mut best: Option<Vec<f64>> = None;
        for w in &self.weyl {
            let img = w.apply(v);
            let dominant = self.beta_basis.iter().all(|&bj| {
                let beta = &self.positive_roots[bj];
                dot(&self.gram, &img, beta) >= -EPS
            });
            if dominant {
                match &best {
                    None => best = Some(img),
                    Some(b) => {
                        // Lexicographic tie-break; orbit points equal up to
                        // EPS collapse to one representative.
                        if !vec_eq(b, &img) {
                            for (x, y) in img.iter().zip(b.iter()) {
                                if x > &(y + EPS) {
                                    best = Some(img);
                                    break;
                                } else if *x < y - EPS {
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
        best.expect("every Weyl orbit meets the closed dominant chamber")
    }

    /// Dominant representative of a spectral parameter: all `Re lambda_j >= 0`,
    /// lexicographic tie-break.
    pub fn dominant_representative_spectral(&self, lam: &SpectralParameter) -> SpectralParameter {
        let mut best: Option<Vec<Complex64>> = None;
        for w in &self.weyl {
            let img = w.apply_complex(&lam.ambient);
            let s = self.spectral_from_ambient(&img);
            if s.coords.iter().all(|c| c.re >= -EPS) {
                match &best {
                    None => best = Some(img),
                    Some(b) => {
                        let cur: f64 = b.iter().map(|z| z.re).sum();
                        let new: f64 = img.iter().map(|z| z.re).sum();
                        if new > cur + EPS {
                            best = Some(img);
                        }
                    }
                }
            }
        }
        let amb = best.unwrap_or_else(|| lam.ambient.clone());
        self.spectral_from_ambient(&amb)
    }

    /// Dominance order: `nu <= mu` iff `mu - nu` is a nonnegative-integer
    /// combination of simple roots. Inputs must be dominant.
    pub fn dominance_leq(&self, nu: &Weight, mu: &Weight) -> Result<bool, RootSystemError> {
        if !nu.is_dominant() {
            return Err(RootSystemError::NotDominant(nu.coords.clone()));
        }
        if !mu.is_dominant() {
            return Err(RootSystemError::NotDominant(mu.coords.clone()));
        }
        Ok(self.difference_in_positive_cone(&mu.ambient, &nu.ambient))
    }

    /// Is `x - y` a nonnegative-integer combination of simple roots?
    /// Ambient coordinates are simple-root coordinates, so this is a
    /// componentwise check up to rounding.
    pub(crate) fn difference_in_positive_cone(&self, x: &[f64], y: &[f64]) -> bool {
        for (a, b) in x.iter().zip(y) {
            let k = a - b;
            if k < -EPS || (k - k.round()).abs() > EPS {
                return false;
            }
        }
        true
    }

    /// All dominant weights `nu <= mu`, including `mu` itself, in a
    /// deterministic order (decreasing `|nu|`, then lexicographic coords).
    pub fn enumerate_dominant_below(&self, mu: &Weight) -> Result<Vec<Weight>, RootSystemError> {
        if !mu.is_dominant() {
            return Err(RootSystemError::NotDominant(mu.coords.clone()));
        }
        let l = self.rank;
        // Box bound: subtracting k_i alpha_i keeps <nu, pi> >= 0 where
        // pi = sum_j omega_j, so k_i <= <mu, pi> / <alpha_i, pi>.
        let mut pi = vec![0.0; l];
        for w in &self.fundamental_weights {
            for c in 0..l {
                pi[c] += w[c];
            }
        }
        let mu_pi = dot(&self.gram, &mu.ambient, &pi);
        let bounds: Vec<i64> = self
            .simple_roots
            .iter()
            .map(|&si| {
                let a_pi = dot(&self.gram, &self.positive_roots[si], &pi);
                (mu_pi / a_pi + EPS).floor() as i64
            })
            .collect();
        let mut found: Vec<Weight> = Vec::new();
        let mut counters = vec![0i64; l];
        loop {
            let mut ambient = mu.ambient.clone();
            for (i, &si) in self.simple_roots.iter().enumerate() {
                for c in 0..l {
                    ambient[c] -= counters[i] as f64 * self.positive_roots[si][c];
                }
            }
            if let Some(wt) = self.weight_from_ambient(&ambient) {
                if wt.is_dominant() {
                    found.push(wt);
                }
            }
            // Increment the counter vector.
            let mut pos = 0;
            loop {
                if pos == l {
                    break;
                }
                counters[pos] += 1;
                if counters[pos] > bounds[pos] {
                    counters[pos] = 0;
                    pos += 1;
                } else {
                    break;
                }
            }
            if pos == l {
                break;
            }
        }
        found.sort_by(|a, b| {
            b.total()
                .cmp(&a.total())
                .then_with(|| a.coords.cmp(&b.coords))
        });
        found.dedup_by(|a, b| a.coords == b.coords);
        Ok(found)
    }

    /// Frequencies of `e^eta` in the torus coordinates `s_j` (the coroot
    /// parameterization `H(s) = 2 pi sum_j s_j H_{beta_j}`): integer vector
    /// with entries `2 eta_{beta_j}`.
    pub fn torus_frequencies(&self, eta_ambient: &[f64]) -> Vec<i64> {
        self.beta_basis
            .iter()
            .map(|&bj| {
                let beta = &self.positive_roots[bj];
                let f = 2.0 * dot(&self.gram, eta_ambient, beta) / dot(&self.gram, beta, beta);
                assert!(
                    (f - f.round()).abs() < 1e-6,
                    "non-integer torus frequency {f}"
                );
                f.round() as i64
            })
            .collect()
    }

    /// `alpha(H(s))/(2 pi)` as integer coefficients of `s`: one row per
    /// positive root, entries `alpha(H_{beta_j}) = 2 <alpha, beta_j>/<beta_j, beta_j>`.
    pub fn root_torus_frequencies(&self) -> Vec<Vec<i64>> {
        self.positive_roots
            .iter()
            .map(|alpha| {
                self.beta_basis
                    .iter()
                    .map(|&bj| {
                        let beta = &self.positive_roots[bj];
                        let f = 2.0 * dot(&self.gram, alpha, beta) / dot(&self.gram, beta, beta);
                        assert!((f - f.round()).abs() < 1e-6);
                        f.round() as i64
                    })
                    .collect()
            })
            .collect()
    }
}

/// First-negative-singularity bound `L_beta` as a function of the orbit
/// multiplicities, per the basis-root case analysis: `rho_tilde_beta` when
/// `m_{beta/2}/2` is an integer or in the trailing small-`m_beta` case,
/// `m_{beta/2}/4 + 1/2` otherwise.
pub fn l_beta_bound(m_half: f64, m: f64) -> f64 {
    let rho_tilde = 0.5 * (m_half / 2.0 + m);
    let other = m_half / 4.0 + 0.5;
    let is_int = |x: f64| (x - x.round()).abs() < EPS;
    if is_int(m_half / 2.0) {
        return rho_tilde;
    }
    let sum_odd = is_int(m_half + m) && ((m_half + m).round() as i64) % 2 == 1;
    let m_odd = is_int(m) && (m.round() as i64) % 2 == 1;
    if sum_odd {
        return other;
    }
    if m_odd {
        // m = 1 and m odd >= 3 both give the same bound.
        return other;
    }
    if m > 1.0 {
        other
    } else {
        rho_tilde
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1(m: f64) -> RootSystem {
        build_root_system(Preset::A1, &[m]).unwrap()
    }

    #[test]
    fn a1_constants() {
        let rs = a1(2.0);
        // rho = (m/2) beta = beta.
        assert!((rs.rho[0] - 1.0).abs() < 1e-12);
        assert!((rs.rho_j[0] - 1.0).abs() < 1e-12);
        // omega_1 = beta with ||beta|| = 1.
        assert!((rs.omega_bound - 1.0).abs() < 1e-12);
        assert_eq!(rs.weyl.len(), 2);
        assert!((rs.growth_exponent - 2.0).abs() < 1e-12);
        assert!((rs.l_bound[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn a2_constants() {
        let rs = build_root_system(Preset::A2, &[1.0]).unwrap();
        assert_eq!(rs.weyl.len(), 6);
        // rho = alpha_1 + alpha_2 in ambient coords.
        assert!((rs.rho[0] - 1.0).abs() < 1e-12 && (rs.rho[1] - 1.0).abs() < 1e-12);
        // (omega_j)_{beta_k} = delta_jk.
        for j in 0..2 {
            for k in 0..2 {
                let beta = &rs.positive_roots[rs.beta_basis[k]];
                let v = rs.lambda_alpha_real(&rs.fundamental_weights[j], beta);
                let expect = if j == k { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bc1_beta_basis_is_doubled_simple_root() {
        let rs = build_root_system(Preset::BC1, &[1.5, 2.5]).unwrap();
        assert_eq!(rs.positive_roots.len(), 2);
        let beta = &rs.positive_roots[rs.beta_basis[0]];
        assert!((rs.inner(beta, beta) - 1.0).abs() < 1e-12);
        assert_eq!(rs.unmult_positive.len(), 1);
        // rho_tilde = (1/2)(m_half/2 + m) = (0.75 + 2.5)/2.
        assert!((rs.rho_tilde[0] - 1.625).abs() < 1e-12);
    }

    #[test]
    fn b2_bc2_orders() {
        let b2 = build_root_system(Preset::B2, &[1.0, 2.0]).unwrap();
        assert_eq!(b2.weyl.len(), 8);
        assert_eq!(b2.unmult_positive.len(), 4);
        let bc2 = build_root_system(Preset::BC2, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(bc2.weyl.len(), 8);
        assert_eq!(bc2.unmult_positive.len(), 4);
        // beta basis of BC2: e1 - e2 and 2 e2.
        let b1 = &bc2.positive_roots[bc2.beta_basis[0]];
        let b2v = &bc2.positive_roots[bc2.beta_basis[1]];
        assert!(vec_eq(b1, &[1.0, 0.0]) || vec_eq(b1, &[0.0, 2.0]));
        assert!(vec_eq(b2v, &[0.0, 2.0]) || vec_eq(b2v, &[1.0, 0.0]));
    }

    #[test]
    fn lambda_alpha_examples() {
        let rs = a1(2.0);
        let rho = rs.rho_spectral();
        let beta = rs.positive_roots[rs.beta_basis[0]].clone();
        let v = rs.lambda_alpha(&rho, &beta).unwrap();
        assert!((v.re - 1.0).abs() < 1e-12 && v.im.abs() < 1e-14);

        // lambda = 2 beta, alpha = beta -> 2.
        let lam = rs.spectral_from_real(&[2.0]);
        let v = rs.lambda_alpha(&lam, &beta).unwrap();
        assert!((v.re - 2.0).abs() < 1e-12);

        // A2: lambda = omega_1 + 2 omega_2, alpha = beta_2 -> 2.
        let rs2 = build_root_system(Preset::A2, &[1.0]).unwrap();
        let lam = rs2.spectral_from_coords(&[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
        let beta2 = rs2.positive_roots[rs2.beta_basis[1]].clone();
        let v = rs2.lambda_alpha(&lam, &beta2).unwrap();
        assert!((v.re - 2.0).abs() < 1e-12);

        assert!(rs.lambda_alpha(&rho, &[0.0]).is_err());
    }

    #[test]
    fn orbits_and_dominance() {
        let rs = a1(2.0);
        let mu = rs.weight_from_coords(&[3]);
        let orbit = rs.weyl_orbit(&mu);
        assert_eq!(orbit.len(), 2);
        let zero = rs.weight_from_coords(&[0]);
        assert_eq!(rs.weyl_orbit(&zero).len(), 1);

        // A1: k beta <= n beta iff n - k is a nonnegative integer.
        let nu = rs.weight_from_coords(&[1]);
        assert!(rs.dominance_leq(&nu, &mu).unwrap());
        assert!(!rs.dominance_leq(&mu, &nu).unwrap());
        let below = rs.enumerate_dominant_below(&mu).unwrap();
        let totals: Vec<i64> = below.iter().map(|w| w.total()).collect();
        assert_eq!(totals, vec![3, 2, 1, 0]);

        // A2, mu = omega_1: orbit size 3.
        let rs2 = build_root_system(Preset::A2, &[1.0]).unwrap();
        let w1 = rs2.weight_from_coords(&[1, 0]);
        assert_eq!(rs2.weyl_orbit(&w1).len(), 3);

        // A2, mu = omega_1 + omega_2: dominant below = {mu, 0}.
        let mu2 = rs2.weight_from_coords(&[1, 1]);
        let below2 = rs2.enumerate_dominant_below(&mu2).unwrap();
        let keys: Vec<Vec<i64>> = below2.iter().map(|w| w.coords.clone()).collect();
        assert_eq!(keys, vec![vec![1, 1], vec![0, 0]]);

        // mu = 0 -> [0].
        let below0 = rs.enumerate_dominant_below(&zero).unwrap();
        assert_eq!(below0.len(), 1);
    }

    #[test]
    fn bc1_dominance_skips_half_steps() {
        let rs = build_root_system(Preset::BC1, &[1.0, 1.0]).unwrap();
        let mu = rs.weight_from_coords(&[2]);
        let below = rs.enumerate_dominant_below(&mu).unwrap();
        // beta = 2 alpha_1, so every integer step down remains in P.
        let totals: Vec<i64> = below.iter().map(|w| w.total()).collect();
        assert_eq!(totals, vec![2, 1, 0]);
    }

    #[test]
    fn dominant_representative_fixes_orbit() {
        let rs = build_root_system(Preset::A2, &[1.0]).unwrap();
        for coords in [[2i64, 1], [0, 3], [1, 0]] {
            let mu = rs.weight_from_coords(&coords);
            for w in &rs.weyl {
                let img = w.apply(&mu.ambient);
                let rep = rs.dominant_representative(&img);
                assert!(vec_eq(&rep, &mu.ambient));
            }
        }
    }

    #[test]
    fn weyl_invariance_of_inner_product_and_multiplicity() {
        for rs in [
            a1(2.0),
            build_root_system(Preset::BC1, &[1.5, 2.5]).unwrap(),
            build_root_system(Preset::B2, &[1.3, 2.1]).unwrap(),
            build_root_system(Preset::BC2, &[0.5, 1.5, 2.5]).unwrap(),
        ] {
            for w in &rs.weyl {
                for (i, alpha) in rs.positive_roots.iter().enumerate() {
                    let img = w.apply(alpha);
                    assert!((rs.multiplicity(&img) - rs.multiplicities[i]).abs() < 1e-12);
                }
                // <wx, wy> = <x, y> on a sample pair.
                let x: Vec<f64> = (0..rs.rank).map(|i| 0.3 + 0.7 * i as f64).collect();
                let y: Vec<f64> = (0..rs.rank).map(|i| -0.2 + 0.4 * i as f64).collect();
                let wx = w.apply(&x);
                let wy = w.apply(&y);
                assert!((rs.inner(&wx, &wy) - rs.inner(&x, &y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rho_reconstruction() {
        for rs in [
            a1(0.5),
            build_root_system(Preset::BC1, &[1.5, 2.5]).unwrap(),
            build_root_system(Preset::A2, &[1.7]).unwrap(),
            build_root_system(Preset::B2, &[0.9, 2.2]).unwrap(),
        ] {
            let mut rec = vec![0.0; rs.rank];
            for (j, w) in rs.fundamental_weights.iter().enumerate() {
                for c in 0..rs.rank {
                    rec[c] += rs.rho_j[j] * w[c];
                }
            }
            for c in 0..rs.rank {
                assert!((rec[c] - rs.rho[c]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn half_root_pairing_identity() {
        // lambda_{beta/2} = 2 lambda_beta whenever beta/2 is a root.
        let rs = build_root_system(Preset::BC2, &[1.0, 2.0, 0.5]).unwrap();
        let lam = rs.spectral_from_coords(&[Complex64::new(0.3, 1.1), Complex64::new(-0.4, 0.2)]);
        for &bi in &rs.unmult_positive {
            let beta = rs.positive_roots[bi].clone();
            let half: Vec<f64> = beta.iter().map(|x| x / 2.0).collect();
            if rs.multiplicity(&half) > 0.0 {
                let lb = rs.lambda_alpha(&lam, &beta).unwrap();
                let lh = rs.lambda_alpha(&lam, &half).unwrap();
                assert!((lh - 2.0 * lb).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(build_root_system(Preset::A1, &[-1.0]).is_err());
        assert!(build_root_system(Preset::A1, &[1.0, 2.0]).is_err());
        // Not closed under reflections: a stray vector.
        let r = RootSystem::from_parts(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![vec![1.0, 0.0], vec![0.7, 0.3]],
            vec![1.0, 1.0],
        );
        assert!(r.is_err());
        // W-invariance violation on A2.
        let data = super::preset_data(Preset::A2);
        let r = RootSystem::from_parts(data.gram, data.positive_roots, vec![1.0, 1.0, 2.0]);
        assert!(matches!(r, Err(RootSystemError::NotWeylInvariant(..))));
    }

    #[test]
    fn json_loading() {
        let rs = root_system_from_json(
            r#"{"preset": "BC1", "multiplicities": {"beta/2": 2.0, "beta": 1.5}}"#,
        )
        .unwrap();
        assert_eq!(rs.positive_roots.len(), 2);
        assert!((rs.multiplicities[0] - 2.0).abs() < 1e-12);
        let rs = root_system_from_json(r#"{"preset": "A1", "multiplicities": [2.0]}"#).unwrap();
        assert_eq!(rs.rank, 1);
        let rs = root_system_from_json(
            r#"{"custom": {"gram": [[1.0]], "positive_roots": [[1.0]], "multiplicities": [2.0]}}"#,
        )
        .unwrap();
        assert_eq!(rs.rank, 1);
        assert!(root_system_from_json(r#"{"preset": "E8", "multiplicities": [1.0]}"#).is_err());
    }
}
