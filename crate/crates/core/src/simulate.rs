//! Spectral Monte-Carlo synthesis of centred Gaussian field realizations
//! whose covariance is a chosen field model, plus the empirical covariance
//! estimator used to verify it.
//!
//! Each sample superposes `n_modes` randomized cosine waves: the wavenumber
//! magnitude is drawn from the mixture of the model's radial measures, the
//! direction uniformly on the sphere, the phase uniformly, and the component
//! amplitude from a Gaussian whose covariance is the model's spectral matrix
//! at that wavevector (projectors for rank 1, rotated simplex vertices for
//! rank 2). Second moments are exact for any mode count; per-sample RNG
//! streams are derived by hashing (seed, sample index), so samples are
//! order-independent and parallelizable.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::FieldModel;
use crate::measures::{check_constraints, RadialMeasure};
use crate::tensor_bases::mandel_vec;

/// Simulation request: model, evaluation points, sample and mode counts, seed.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub model: FieldModel,
    pub points: Vec<[f64; 3]>,
    pub n_samples: usize,
    pub n_modes: usize,
    pub seed: u64,
}

/// Realized field values, shape n_samples x n_points x value_dim.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub n_samples: usize,
    pub n_points: usize,
    pub dim: usize,
    data: Vec<f64>,
}

impl Realization {
    pub fn value(&self, sample: usize, point: usize) -> &[f64] {
        let base = (sample * self.n_points + point) * self.dim;
        &self.data[base..base + self.dim]
    }
}

enum Mode<'a> {
    Rank0(&'a RadialMeasure),
    Rank1Longitudinal(&'a RadialMeasure),
    Rank1Transverse(&'a RadialMeasure),
    Triangle(&'a RadialMeasure, usize),
    Simplex(&'a RadialMeasure, usize),
}

impl Mode<'_> {
    fn measure(&self) -> &RadialMeasure {
        match self {
            Mode::Rank0(m)
            | Mode::Rank1Longitudinal(m)
            | Mode::Rank1Transverse(m)
            | Mode::Triangle(m, _)
            | Mode::Simplex(m, _) => m,
        }
    }
}

fn components(model: &FieldModel) -> Vec<Mode<'_>> {
    match model {
        FieldModel::Rank0 { mu } => vec![Mode::Rank0(mu)],
        FieldModel::Rank1 { phi1, phi2 } => {
            vec![Mode::Rank1Longitudinal(phi1), Mode::Rank1Transverse(phi2)]
        }
        FieldModel::Rank2Triangle { phi } => {
            phi.iter().enumerate().map(|(m, p)| Mode::Triangle(p, m)).collect()
        }
        FieldModel::Rank2Simplex { phi } => {
            phi.iter().enumerate().map(|(n, p)| Mode::Simplex(p, n + 1)).collect()
        }
    }
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Deterministic orthonormal frame (e1, e2) perpendicular to a unit vector.
fn frame(p: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let axis = if p[0].abs() <= p[1].abs() && p[0].abs() <= p[2].abs() {
        [1.0, 0.0, 0.0]
    } else if p[1].abs() <= p[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let e1 = normalize(cross(&axis, p));
    let e2 = cross(p, &e1);
    (e1, e2)
}

fn sym_outer(u: &[f64; 3], v: &[f64; 3]) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = 0.5 * (u[i] * v[j] + u[j] * v[i]);
        }
    }
    m
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sample_rng(seed: u64, sample: u64) -> ChaCha12Rng {
    let mut state = seed ^ sample.wrapping_mul(0xA076_1D64_78BD_642F);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}

/// Generate realizations. Deterministic given the seed; identical results for
/// any parallel schedule. Models with an atom at zero are not supported.
///
/// ```
/// use tensorfield::{FieldModel, MeasureSpec, ModelSpec, SimConfig};
/// use tensorfield::simulate::simulate;
///
/// let spec = ModelSpec::Rank1 {
///     phi1: MeasureSpec::matern(1.0, 1.0, 0.8),
///     phi2: MeasureSpec::matern(1.5, 1.2, 0.5),
/// };
/// let cfg = SimConfig {
///     model: FieldModel::from_spec(&spec, 256)?,
///     points: vec![[0.0; 3], [1.0, 0.0, 0.0]],
///     n_samples: 10,
///     n_modes: 64,
///     seed: 1,
/// };
/// let real = simulate(&cfg)?;
/// assert_eq!(real.value(9, 1).len(), 3);
/// # Ok::<(), tensorfield::Error>(())
/// ```
pub fn simulate(cfg: &SimConfig) -> Result<Realization> {
    if cfg.n_samples < 1 || cfg.n_modes < 1 {
        return Err(Error::config("n_samples and n_modes must be at least 1".to_string()));
    }
    if cfg.points.is_empty() {
        return Err(Error::config("at least one evaluation point is required".to_string()));
    }
    let report = check_constraints(&cfg.model);
    if let Some(v) = report.first() {
        return Err(Error::model(v.message.clone()));
    }
    let comps = components(&cfg.model);
    if comps.iter().any(|c| c.measure().atom0() != 0.0) {
        return Err(Error::model("simulation requires atomless measures (atom at zero unsupported)".to_string()));
    }
    let masses: Vec<f64> = comps.iter().map(|c| c.measure().total_mass()).collect();
    let total: f64 = masses.iter().sum();
    if !(total > 0.0) {
        return Err(Error::model("total spectral mass must be positive".to_string()));
    }
    let dim = cfg.model.value_dim();
    let n_points = cfg.points.len();
    let coef = (2.0 * total / cfg.n_modes as f64).sqrt();
    let two_pi = 2.0 * std::f64::consts::PI;

    let rows: Vec<Vec<f64>> = (0..cfg.n_samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = sample_rng(cfg.seed, s as u64);
            let mut out = vec![0.0; n_points * dim];
            let mut amp = vec![0.0; dim];
            for _ in 0..cfg.n_modes {
                // component by mass
                let pick = rng.random_range(0.0..total);
                let mut acc = 0.0;
                // rounding fallback: the last component carrying any mass
                let mut idx = masses.iter().rposition(|&m| m > 0.0).unwrap();
                for (i, m) in masses.iter().enumerate().take(idx + 1) {
                    acc += m;
                    if pick < acc && *m > 0.0 {
                        idx = i;
                        break;
                    }
                }
                let comp = &comps[idx];
                let lambda = comp.measure().sample_lambda(rng.random_range(0.0..1.0));
                // uniform direction
                let z = rng.random_range(-1.0..1.0f64);
                let phi_dir = rng.random_range(0.0..two_pi);
                let sth = (1.0 - z * z).max(0.0).sqrt();
                let p = [sth * phi_dir.sin(), z, sth * phi_dir.cos()];
                let phase = rng.random_range(0.0..two_pi);
                amplitude(comp, &p, &mut rng, &mut amp);
                for (pt, x) in cfg.points.iter().enumerate() {
                    let arg = lambda * (p[0] * x[0] + p[1] * x[1] + p[2] * x[2]) + phase;
                    let c = coef * arg.cos();
                    for (d, a) in amp.iter().enumerate() {
                        out[pt * dim + d] += c * a;
                    }
                }
            }
            out
        })
        .collect();

    let mut data = Vec::with_capacity(cfg.n_samples * n_points * dim);
    for row in rows {
        data.extend_from_slice(&row);
    }
    Ok(Realization { n_samples: cfg.n_samples, n_points, dim, data })
}

/// Draw a component amplitude with E[A Aᵀ] equal to the component's spectral
/// matrix at direction p.
fn amplitude(mode: &Mode<'_>, p: &[f64; 3], rng: &mut ChaCha12Rng, out: &mut [f64]) {
    let sqrt2 = std::f64::consts::SQRT_2;
    match mode {
        Mode::Rank0(_) => {
            out[0] = rng.sample(StandardNormal);
        }
        Mode::Rank1Longitudinal(_) => {
            let z: f64 = rng.sample(StandardNormal);
            for i in 0..3 {
                out[i] = z * p[i];
            }
        }
        Mode::Rank1Transverse(_) => {
            let (e1, e2) = frame(p);
            let z1: f64 = rng.sample(StandardNormal);
            let z2: f64 = rng.sample(StandardNormal);
            for i in 0..3 {
                out[i] = z1 * e1[i] + z2 * e2[i];
            }
        }
        Mode::Triangle(_, m) => {
            // rank-one vertices C^m = v vᵀ
            let v = match m {
                0 => [0.0, 1.0],
                1 => [0.5, 0.75f64.sqrt()],
                _ => [0.5, -(0.75f64.sqrt())],
            };
            let z: f64 = rng.sample(StandardNormal);
            out[0] = z * v[0];
            out[1] = z * v[1];
        }
        Mode::Simplex(_, n) => {
            let (e1, e2) = frame(p);
            let iota = [1.0, 1.0, 1.0, 0.0, 0.0, 0.0];
            out.fill(0.0);
            match n {
                1 => {
                    // charge-1 pair sym(p, eـa), each scaled to unit norm
                    let b1 = mandel_vec(&sym_outer(p, &e1));
                    let b2 = mandel_vec(&sym_outer(p, &e2));
                    let z1: f64 = rng.sample(StandardNormal);
                    let z2: f64 = rng.sample(StandardNormal);
                    for i in 0..6 {
                        out[i] = z1 * b1[i] + z2 * b2[i];
                    }
                }
                2 => {
                    // charge-2 pair in the plane normal to p
                    let m1 = mandel_vec(&sym_outer(&e1, &e1));
                    let m2 = mandel_vec(&sym_outer(&e2, &e2));
                    let m12 = mandel_vec(&sym_outer(&e1, &e2));
                    let z1: f64 = rng.sample(StandardNormal);
                    let z2: f64 = rng.sample(StandardNormal);
                    for i in 0..6 {
                        out[i] = z1 * (m1[i] - m2[i]) / 2.0 + z2 * m12[i];
                    }
                }
                3 => {
                    let z: f64 = rng.sample(StandardNormal);
                    for i in 0..6 {
                        out[i] = z * iota[i] / 3.0f64.sqrt();
                    }
                }
                4 | 5 => {
                    let vpp = mandel_vec(&sym_outer(p, p));
                    let (c, s) = if *n == 4 {
                        (-(2.0f64 / 3.0).sqrt(), 1.0 / 3.0f64.sqrt())
                    } else {
                        (0.0, 1.0)
                    };
                    let z: f64 = rng.sample(StandardNormal);
                    for i in 0..6 {
                        out[i] = z * (c * vpp[i] + s * (iota[i] - vpp[i]) / sqrt2);
                    }
                }
                _ => unreachable!(),
            }
        }
    }
}

/// Unbiased cross-covariance between the field values at two point indices,
/// with a per-entry standard error estimate. Needs at least two samples.
pub fn empirical_cov(
    real: &Realization,
    i: usize,
    j: usize,
) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    if real.n_samples < 2 {
        return Err(Error::config("empirical_cov needs n_samples >= 2".to_string()));
    }
    if i >= real.n_points || j >= real.n_points {
        return Err(Error::config("point index out of range".to_string()));
    }
    let d = real.dim;
    let n = real.n_samples as f64;
    let mut mean_i = vec![0.0; d];
    let mut mean_j = vec![0.0; d];
    for s in 0..real.n_samples {
        for (a, m) in mean_i.iter_mut().enumerate() {
            *m += real.value(s, i)[a];
        }
        for (b, m) in mean_j.iter_mut().enumerate() {
            *m += real.value(s, j)[b];
        }
    }
    for m in mean_i.iter_mut().chain(mean_j.iter_mut()) {
        *m /= n;
    }
    let mut sum = vec![vec![0.0; d]; d];
    let mut sum_sq = vec![vec![0.0; d]; d];
    for s in 0..real.n_samples {
        let vi = real.value(s, i);
        let vj = real.value(s, j);
        for a in 0..d {
            for b in 0..d {
                let q = (vi[a] - mean_i[a]) * (vj[b] - mean_j[b]);
                sum[a][b] += q;
                sum_sq[a][b] += q * q;
            }
        }
    }
    let mut est = vec![vec![0.0; d]; d];
    let mut se = vec![vec![0.0; d]; d];
    for a in 0..d {
        for b in 0..d {
            est[a][b] = sum[a][b] / (n - 1.0);
            let mean_q = sum[a][b] / n;
            let var_q = (sum_sq[a][b] / n - mean_q * mean_q).max(0.0);
            se[a][b] = (var_q / n).sqrt();
        }
    }
    Ok((est, se))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{kernel_rank1, ModelSpec};
    use crate::measures::MeasureSpec;

    fn rank0_model(n_nodes: usize) -> FieldModel {
        FieldModel::from_spec(&ModelSpec::Rank0 { mu: MeasureSpec::matern(0.5, 1.0, 1.0) }, n_nodes)
            .unwrap()
    }

    #[test]
    fn identical_seeds_are_bit_identical() {
        let cfg = SimConfig {
            model: rank0_model(256),
            points: vec![[0.0; 3], [1.0, 0.0, 0.0]],
            n_samples: 50,
            n_modes: 32,
            seed: 42,
        };
        let a = simulate(&cfg).unwrap();
        let b = simulate(&cfg).unwrap();
        assert_eq!(a, b);
        let mut cfg2 = cfg.clone();
        cfg2.seed = 43;
        let c = simulate(&cfg2).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rank0_variance_matches_total_mass() {
        let cfg = SimConfig {
            model: rank0_model(1024),
            points: vec![[0.3, -0.2, 0.5]],
            n_samples: 20_000,
            n_modes: 64,
            seed: 7,
        };
        let real = simulate(&cfg).unwrap();
        let (est, se) = empirical_cov(&real, 0, 0).unwrap();
        assert!((est[0][0] - 1.0).abs() < 5.0 * se[0][0], "var {} ± {}", est[0][0], se[0][0]);
        // sample mean is centred
        let mut mean = 0.0;
        for s in 0..real.n_samples {
            mean += real.value(s, 0)[0];
        }
        mean /= real.n_samples as f64;
        let sd = est[0][0].sqrt() / (real.n_samples as f64).sqrt();
        assert!(mean.abs() < 5.0 * sd);
    }

    #[test]
    fn rank1_covariance_matches_kernel() {
        let spec = ModelSpec::Rank1 {
            phi1: MeasureSpec::matern(1.0, 1.0, 0.8),
            phi2: MeasureSpec::matern(1.5, 1.2, 0.5),
        };
        let model = FieldModel::from_spec(&spec, 1024).unwrap();
        let points = vec![[0.0; 3], [1.0, 0.0, 0.0]];
        let cfg = SimConfig { model, points, n_samples: 20_000, n_modes: 128, seed: 11 };
        let real = simulate(&cfg).unwrap();
        let (phi1, phi2) = match &cfg.model {
            FieldModel::Rank1 { phi1, phi2 } => (phi1, phi2),
            _ => unreachable!(),
        };
        // at coincident points the trace is Φ₁ + 2Φ₂
        let (est0, se0) = empirical_cov(&real, 0, 0).unwrap();
        let trace: f64 = (0..3).map(|a| est0[a][a]).sum();
        let trace_se: f64 = (0..3).map(|a| se0[a][a]).sum();
        let want = phi1.total_mass() + 2.0 * phi2.total_mass();
        assert!((trace - want).abs() < 5.0 * trace_se, "{trace} vs {want}");
        // cross covariance at ρ = 1
        let analytic = kernel_rank1(phi1, phi2, &cfg.points[0], &cfg.points[1]).unwrap();
        let (est, se) = empirical_cov(&real, 0, 1).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let tol = 5.0 * se[a][b].max(1e-4);
                assert!(
                    (est[a][b] - analytic[a][b]).abs() < tol,
                    "({a},{b}): {} vs {}",
                    est[a][b],
                    analytic[a][b]
                );
            }
        }
    }

    #[test]
    fn simplex_samples_are_mandel_vectors_with_exact_covariance_structure() {
        let m = |nu: f64, s2: f64| MeasureSpec::matern(nu, 1.0, s2);
        let spec = ModelSpec::Rank2Simplex {
            phi: [m(0.8, 0.4), m(1.1, 0.3), m(1.6, 0.2), m(0.9, 0.25), m(1.3, 0.15)],
        };
        let model = FieldModel::from_spec(&spec, 512).unwrap();
        let cfg = SimConfig {
            model,
            points: vec![[0.0; 3]],
            n_samples: 4000,
            n_modes: 32,
            seed: 3,
        };
        let real = simulate(&cfg).unwrap();
        assert_eq!(real.dim, 6);
        // values are finite 6-vectors; symmetric matrices by construction
        for s in 0..real.n_samples {
            for v in real.value(s, 0) {
                assert!(v.is_finite());
            }
        }
    }

    #[test]
    fn triangle_covariance_matches_kernel() {
        let spec = ModelSpec::Rank2Triangle {
            phi: [
                MeasureSpec::matern(0.7, 1.0, 0.5),
                MeasureSpec::matern(1.2, 1.5, 0.3),
                MeasureSpec::matern(2.0, 0.8, 0.2),
            ],
        };
        let model = FieldModel::from_spec(&spec, 1024).unwrap();
        let points = vec![[0.0; 3], [0.8, 0.3, -0.4]];
        let cfg = SimConfig { model, points, n_samples: 20_000, n_modes: 64, seed: 23 };
        let real = simulate(&cfg).unwrap();
        let phi = match &cfg.model {
            FieldModel::Rank2Triangle { phi } => phi,
            _ => unreachable!(),
        };
        for (i, j) in [(0usize, 0usize), (0, 1)] {
            let want = crate::kernels::kernel_rank2_triangle(phi, &cfg.points[i], &cfg.points[j]);
            let (est, se) = empirical_cov(&real, i, j).unwrap();
            for a in 0..2 {
                for b in 0..2 {
                    assert!(
                        (est[a][b] - want[a][b]).abs() < 5.0 * se[a][b].max(1e-4),
                        "({i},{j})[{a},{b}]: {} vs {}",
                        est[a][b],
                        want[a][b]
                    );
                }
            }
        }
    }

    #[test]
    fn simplex_covariance_matches_kernel() {
        let m = |nu: f64, s2: f64| MeasureSpec::matern(nu, 1.0, s2);
        let spec = ModelSpec::Rank2Simplex {
            phi: [m(0.8, 0.4), m(1.1, 0.3), m(1.6, 0.2), m(0.9, 0.25), m(1.3, 0.15)],
        };
        let model = FieldModel::from_spec(&spec, 1024).unwrap();
        let points = vec![[0.0; 3], [1.0, 0.2, 0.5]];
        let cfg = SimConfig { model, points, n_samples: 20_000, n_modes: 64, seed: 29 };
        let real = simulate(&cfg).unwrap();
        let phi = match &cfg.model {
            FieldModel::Rank2Simplex { phi } => phi,
            _ => unreachable!(),
        };
        for (i, j) in [(0usize, 0usize), (0, 1)] {
            let b = crate::kernels::kernel_rank2_simplex(phi, &cfg.points[i], &cfg.points[j]).unwrap();
            let want = crate::tensor_bases::tau(&b);
            let (est, se) = empirical_cov(&real, i, j).unwrap();
            for a in 0..6 {
                for c in 0..6 {
                    assert!(
                        (est[a][c] - want.0[a][c]).abs() < 5.0 * se[a][c].max(1e-4),
                        "({i},{j})[{a},{c}]: {} vs {}",
                        est[a][c],
                        want.0[a][c]
                    );
                }
            }
        }
    }

    #[test]
    fn atoms_and_degenerate_configs_are_rejected() {
        let with_atom = FieldModel::Rank0 {
            mu: crate::measures::RadialMeasure::build(
                &MeasureSpec::matern(1.0, 1.0, 1.0).with_atom0(0.5),
                64,
            )
            .unwrap(),
        };
        let cfg = SimConfig {
            model: with_atom,
            points: vec![[0.0; 3]],
            n_samples: 2,
            n_modes: 4,
            seed: 0,
        };
        assert!(matches!(simulate(&cfg), Err(Error::Model(_))));
        let cfg = SimConfig { model: rank0_model(64), points: vec![], n_samples: 1, n_modes: 1, seed: 0 };
        assert!(simulate(&cfg).is_err());
        // empirical_cov needs two samples
        let cfg = SimConfig {
            model: rank0_model(64),
            points: vec![[0.0; 3]],
            n_samples: 1,
            n_modes: 4,
            seed: 0,
        };
        let real = simulate(&cfg).unwrap();
        assert!(empirical_cov(&real, 0, 0).is_err());
    }

    #[test]
    fn rank0_marginals_pass_gaussianity_proxy() {
        let cfg = SimConfig {
            model: rank0_model(512),
            points: vec![[0.0; 3]],
            n_samples: 100_000,
            n_modes: 128,
            seed: 19,
        };
        let real = simulate(&cfg).unwrap();
        let n = real.n_samples as f64;
        let mut mean = 0.0;
        for s in 0..real.n_samples {
            mean += real.value(s, 0)[0];
        }
        mean /= n;
        let mut m2 = 0.0;
        let mut m3 = 0.0;
        let mut m4 = 0.0;
        for s in 0..real.n_samples {
            let d = real.value(s, 0)[0] - mean;
            m2 += d * d;
            m3 += d * d * d;
            m4 += d * d * d * d;
        }
        m2 /= n;
        m3 /= n;
        m4 /= n;
        let skew = m3 / m2.powf(1.5);
        let kurt = m4 / (m2 * m2);
        assert!(skew.abs() < 0.1, "skewness {skew}");
        assert!((kurt - 3.0).abs() < 0.2, "kurtosis {kurt}");
    }
}
