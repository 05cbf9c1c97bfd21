//! Validity machinery for multivariate Matérn models: conditional negative
//! definiteness, the parsimonious co-location coefficient, the analytic
//! sufficient conditions, the cross-spectral matrix, and the verdict logic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::sym_eigen;
use crate::specfun::ln_gamma;

/// Parameter set of an m-variate Matérn model: per-pair smoothness ν_ij,
/// scale a_ij, co-location matrix σ_ij, optional correlation matrix β_ij with
/// unit diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiMaternSpec {
    pub nu: Vec<Vec<f64>>,
    pub a: Vec<Vec<f64>>,
    pub sigma: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<f64>>>,
}

impl MultiMaternSpec {
    pub fn dim(&self) -> usize {
        self.nu.len()
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.dim();
        if m == 0 {
            return Err(Error::domain("empty parameter matrices".to_string()));
        }
        let check_matrix = |name: &str, mat: &Vec<Vec<f64>>, need_pos: bool| -> Result<()> {
            if mat.len() != m || mat.iter().any(|r| r.len() != m) {
                return Err(Error::domain(format!("{name} must be {m}x{m}")));
            }
            for i in 0..m {
                for j in 0..m {
                    if (mat[i][j] - mat[j][i]).abs() > 1e-12 * mat[i][j].abs().max(1.0) {
                        return Err(Error::domain(format!("{name} must be symmetric")));
                    }
                }
                if need_pos && !(mat[i][i] > 0.0) {
                    return Err(Error::domain(format!("{name} needs a positive diagonal")));
                }
            }
            Ok(())
        };
        check_matrix("nu", &self.nu, true)?;
        check_matrix("a", &self.a, true)?;
        check_matrix("sigma", &self.sigma, true)?;
        for i in 0..m {
            for j in 0..m {
                if !(self.nu[i][j] > 0.0) || !(self.a[i][j] > 0.0) {
                    return Err(Error::domain("nu and a entries must be positive".to_string()));
                }
            }
        }
        if let Some(beta) = &self.beta {
            check_matrix("beta", beta, false)?;
            for (i, row) in beta.iter().enumerate() {
                if (row[i] - 1.0).abs() > 1e-12 {
                    return Err(Error::domain("beta must have unit diagonal".to_string()));
                }
            }
        }
        Ok(())
    }
}

/// Validity status of a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Validity {
    Valid,
    Invalid,
    Undetermined,
}

/// Which acceptance rule fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "parsimonious")]
    Parsimonious,
    A1,
    A2a,
    A2b,
    A3a,
    A3b,
    #[serde(rename = "numeric-PSD-sample")]
    NumericPsdSample,
}

/// A wavenumber and eigenvector at which the cross-spectral matrix is
/// indefinite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub lambda: f64,
    pub eigenvalue: f64,
    pub eigenvector: Vec<f64>,
}

/// Outcome of [`validate`]: invalid verdicts always carry a witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Validity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<Rule>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Conditional negative definiteness: Σ cᵢcⱼθᵢⱼ <= 0 whenever Σ cᵢ = 0,
/// tested by projecting onto an orthonormal basis of the zero-sum subspace
/// and checking negative semidefiniteness of the projected matrix.
pub fn is_cnd(theta: &[Vec<f64>]) -> Result<bool> {
    let m = theta.len();
    if m == 0 || theta.iter().any(|r| r.len() != m) {
        return Err(Error::domain("is_cnd needs a square matrix".to_string()));
    }
    let mut scale: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            if (theta[i][j] - theta[j][i]).abs() > 1e-10 * theta[i][j].abs().max(1.0) {
                return Err(Error::domain("is_cnd needs a symmetric matrix".to_string()));
            }
            scale = scale.max(theta[i][j].abs());
        }
    }
    if m == 1 {
        return Ok(true); // zero-sum subspace is trivial
    }
    // Helmert-style contrast basis: v_k ∝ (1,...,1,-k,0,...)/norm, k ones
    let mut basis = Vec::with_capacity(m - 1);
    for k in 1..m {
        let mut v = vec![0.0; m];
        let norm = ((k * k + k) as f64).sqrt();
        for x in v.iter_mut().take(k) {
            *x = 1.0 / norm;
        }
        v[k] = -(k as f64) / norm;
        basis.push(v);
    }
    let n = m - 1;
    let mut proj = vec![0.0; n * n];
    for (r, vr) in basis.iter().enumerate() {
        for (c, vc) in basis.iter().enumerate() {
            let mut s = 0.0;
            for i in 0..m {
                for j in 0..m {
                    s += vr[i] * theta[i][j] * vc[j];
                }
            }
            proj[r * n + c] = s;
        }
    }
    // symmetrize against rounding
    for r in 0..n {
        for c in (r + 1)..n {
            let avg = 0.5 * (proj[r * n + c] + proj[c * n + r]);
            proj[r * n + c] = avg;
            proj[c * n + r] = avg;
        }
    }
    let (vals, _) = sym_eigen(&proj, n);
    let max = vals.last().copied().unwrap();
    Ok(max <= 1e-10 * scale.max(1.0))
}

/// Parsimonious co-location coefficient
/// b_ij = β_ij · [Γ(νᵢ+3/2)Γ(νⱼ+3/2)/(Γ(νᵢ)Γ(νⱼ))]^{1/2} · Γ(ν̄)/Γ(ν̄+3/2)
/// with ν̄ = (νᵢ+νⱼ)/2.
pub fn parsimonious_b(nu_i: f64, nu_j: f64, beta_ij: f64) -> f64 {
    let half = 0.5 * (nu_i + nu_j);
    let lg = |x: f64| ln_gamma(x).expect("positive smoothness");
    let ln = 0.5 * (lg(nu_i + 1.5) - lg(nu_i) + lg(nu_j + 1.5) - lg(nu_j)) + lg(half)
        - lg(half + 1.5);
    beta_ij * ln.exp()
}

/// Cross-spectral matrix F(λ) with entries
/// f_ij = σ_ij a_ij^{2ν} (a_ij²+λ²)^{-(ν+3/2)} Γ(ν+3/2)/(Γ(ν) π^{3/2});
/// the m = 1 case is the scalar Matérn spectral density.
pub fn spectral_matrix(spec: &MultiMaternSpec, lambda: f64) -> Result<Vec<Vec<f64>>> {
    spec.validate()?;
    if lambda < 0.0 {
        return Err(Error::domain(format!("lambda must be >= 0, got {lambda}")));
    }
    let m = spec.dim();
    let mut f = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let nu = spec.nu[i][j];
            let a = spec.a[i][j];
            let g = (ln_gamma(nu + 1.5)? - ln_gamma(nu)?).exp();
            f[i][j] = spec.sigma[i][j] * a.powf(2.0 * nu) * g
                / (std::f64::consts::PI.powf(1.5) * (a * a + lambda * lambda).powf(nu + 1.5));
        }
    }
    Ok(f)
}

fn min_max_eig(mat: &[Vec<f64>]) -> (f64, f64, Vec<f64>) {
    let m = mat.len();
    let mut flat = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            flat[i * m + j] = 0.5 * (mat[i][j] + mat[j][i]);
        }
    }
    let (vals, vecs) = sym_eigen(&flat, m);
    let evec: Vec<f64> = (0..m).map(|r| vecs[r * m]).collect();
    (vals[0], vals[vals.len() - 1].abs(), evec)
}

fn is_psd(mat: &[Vec<f64>]) -> bool {
    let (min, max, _) = min_max_eig(mat);
    min >= -1e-10 * max.max(1.0)
}

const PSD_SAMPLE_COUNT: usize = 200;

fn sample_lambdas(spec: &MultiMaternSpec) -> Vec<f64> {
    let m = spec.dim();
    let mut amin = f64::INFINITY;
    let mut amax = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            amin = amin.min(spec.a[i][j]);
            amax = amax.max(spec.a[i][j]);
        }
    }
    let lo = (1e-3 * amin).ln();
    let hi = (1e3 * amax).ln();
    (0..PSD_SAMPLE_COUNT)
        .map(|k| (lo + (hi - lo) * k as f64 / (PSD_SAMPLE_COUNT - 1) as f64).exp())
        .collect()
}

fn all_close(mat: &[Vec<f64>], f: impl Fn(usize, usize) -> f64) -> bool {
    for (i, row) in mat.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let want = f(i, j);
            if (v - want).abs() > 1e-10 * want.abs().max(1.0) {
                return false;
            }
        }
    }
    true
}

fn schur(a: &[Vec<f64>], f: impl Fn(f64) -> f64) -> Vec<Vec<f64>> {
    a.iter().map(|row| row.iter().map(|&v| f(v)).collect()).collect()
}

/// Decide validity: the parsimonious shape first, then the analytic
/// conditions A1, A2a/A2b, A3a/A3b, then numeric sampling of F(λ) (which can
/// only certify invalidity).
pub fn validate(spec: &MultiMaternSpec) -> Result<Verdict> {
    spec.validate()?;
    let m = spec.dim();
    let nu = &spec.nu;
    let a = &spec.a;
    let sigma = &spec.sigma;

    let gamma_ratio = |x: f64| (ln_gamma(x + 1.5).unwrap() - ln_gamma(x).unwrap()).exp();
    let common_a = all_close(a, |_, _| a[0][0]);
    let nu_averaged = all_close(nu, |i, j| 0.5 * (nu[i][i] + nu[j][j]));
    let common_nu = all_close(nu, |_, _| nu[0][0]);

    // parsimonious: averaged ν, one scale, σ_ij = b_ij σ_i σ_j with PSD β
    if nu_averaged && common_a {
        let mut beta = vec![vec![0.0; m]; m];
        let mut consistent = true;
        'outer: for i in 0..m {
            for j in 0..m {
                let g = parsimonious_b(nu[i][i], nu[j][j], 1.0);
                let denom = g * (sigma[i][i] * sigma[j][j]).sqrt();
                if denom == 0.0 {
                    consistent = false;
                    break 'outer;
                }
                beta[i][j] = sigma[i][j] / denom;
            }
        }
        if consistent {
            if let Some(given) = &spec.beta {
                consistent = all_close(given, |i, j| beta[i][j]);
            }
        }
        if consistent && is_psd(&beta) {
            return Ok(Verdict { status: Validity::Valid, rule: Some(Rule::Parsimonious), witness: None });
        }
    }

    // A1: common scale, (ν_ij) conditionally negative definite (equivalently
    // -ν_ij conditionally non-negative), σ_ij Γ(ν_ij+3/2)/Γ(ν_ij) PSD
    if common_a && is_cnd(nu)? {
        let c = (0..m)
            .map(|i| (0..m).map(|j| sigma[i][j] * gamma_ratio(nu[i][j])).collect())
            .collect::<Vec<Vec<f64>>>();
        if is_psd(&c) {
            return Ok(Verdict { status: Validity::Valid, rule: Some(Rule::A1), witness: None });
        }
    }

    if common_nu {
        // A2a: a² CND and σ_ij a_ij^{2ν} PSD
        let a2 = schur(a, |v| v * v);
        if is_cnd(&a2)? {
            let c = (0..m)
                .map(|i| (0..m).map(|j| sigma[i][j] * a[i][j].powf(2.0 * nu[0][0])).collect())
                .collect::<Vec<Vec<f64>>>();
            if is_psd(&c) {
                return Ok(Verdict { status: Validity::Valid, rule: Some(Rule::A2a), witness: None });
            }
        }
        // A2b: a^{-2} CND and σ_ij a_ij^{-3} PSD
        let ainv2 = schur(a, |v| 1.0 / (v * v));
        if is_cnd(&ainv2)? {
            let c = (0..m)
                .map(|i| (0..m).map(|j| sigma[i][j] / a[i][j].powi(3)).collect())
                .collect::<Vec<Vec<f64>>>();
            if is_psd(&c) {
                return Ok(Verdict { status: Validity::Valid, rule: Some(Rule::A2b), witness: None });
            }
        }
    }

    if nu_averaged {
        // A3a: a_ij² averaged and σ_ij a_ij^{2ν_ij}/Γ(ν_ij) PSD
        if all_close(a, |i, j| (0.5 * (a[i][i] * a[i][i] + a[j][j] * a[j][j])).sqrt()) {
            let c = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            sigma[i][j] * a[i][j].powf(2.0 * nu[i][j])
                                * (-ln_gamma(nu[i][j]).unwrap()).exp()
                        })
                        .collect()
                })
                .collect::<Vec<Vec<f64>>>();
            if is_psd(&c) {
                return Ok(Verdict { status: Validity::Valid, rule: Some(Rule::A3a), witness: None });
            }
        }
        // A3b: a_ij^{-2} averaged and σ_ij a_ij^{-3}/Γ(ν_ij) PSD
        if all_close(a, |i, j| {
            (0.5 * (1.0 / (a[i][i] * a[i][i]) + 1.0 / (a[j][j] * a[j][j]))).powf(-0.5)
        }) {
            let c = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            sigma[i][j] / a[i][j].powi(3) * (-ln_gamma(nu[i][j]).unwrap()).exp()
                        })
                        .collect()
                })
                .collect::<Vec<Vec<f64>>>();
            if is_psd(&c) {
                return Ok(Verdict { status: Validity::Valid, rule: Some(Rule::A3b), witness: None });
            }
        }
    }

    // numeric sampling: can certify invalidity only
    for lambda in sample_lambdas(spec) {
        let f = spectral_matrix(spec, lambda)?;
        let (min, max, evec) = min_max_eig(&f);
        if min < -1e-10 * max.max(f64::MIN_POSITIVE) {
            return Ok(Verdict {
                status: Validity::Invalid,
                rule: Some(Rule::NumericPsdSample),
                witness: Some(Witness { lambda, eigenvalue: min, eigenvector: evec }),
            });
        }
    }
    Ok(Verdict { status: Validity::Undetermined, rule: Some(Rule::NumericPsdSample), witness: None })
}

/// The Example-style parsimonious constructor: marginal smoothness values,
/// one common scale, marginal variances, and a correlation matrix β.
pub fn parsimonious_spec(nus: &[f64], a: f64, sigma2: &[f64], beta: &[Vec<f64>]) -> MultiMaternSpec {
    let m = nus.len();
    let mut nu = vec![vec![0.0; m]; m];
    let mut am = vec![vec![a; m]; m];
    let mut sigma = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            nu[i][j] = 0.5 * (nus[i] + nus[j]);
            am[i][j] = a;
            let b = parsimonious_b(nus[i], nus[j], beta[i][j]);
            sigma[i][j] = b * (sigma2[i] * sigma2[j]).sqrt();
        }
    }
    MultiMaternSpec { nu, a: am, sigma, beta: Some(beta.to_vec()) }
}
