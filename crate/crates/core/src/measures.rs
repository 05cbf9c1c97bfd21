//! Radial spectral measures on [0, ∞): Matérn and dual-Matérn densities,
//! tabulated densities, atoms at zero, and the quadrature grids the kernels
//! and the simulator consume.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::gauss_legendre_on;
use crate::specfun::{bessel_k, gamma};

/// Matérn parameters: smoothness ν, inverse scale a, variance σ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaternParams {
    pub nu: f64,
    pub a: f64,
    pub sigma2: f64,
}

impl MaternParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.nu > 0.0) || !(self.a > 0.0) || !(self.sigma2 >= 0.0) {
            return Err(Error::domain(format!(
                "Matérn parameters need nu > 0, a > 0, sigma2 >= 0: nu={}, a={}, sigma2={}",
                self.nu, self.a, self.sigma2
            )));
        }
        Ok(())
    }
}

/// Dual-Matérn parameter: smoothness ν (total mass is 1 by construction).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualMaternParams {
    pub nu: f64,
}

impl DualMaternParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.nu > 0.0) {
            return Err(Error::domain(format!("dual Matérn needs nu > 0, got {}", self.nu)));
        }
        Ok(())
    }
}

/// Isotropic spectral density f(λ) of the Matérn covariance, normalized so
/// that ∫_{R³} f(‖λ‖) dλ = σ², i.e. the measure dμ = 4πλ²f(λ)dλ has total
/// mass σ² and its sinc transform reproduces the Matérn function.
pub fn matern_spectral_f(p: &MaternParams, lambda: f64) -> Result<f64> {
    p.validate()?;
    if lambda < 0.0 {
        return Err(Error::domain(format!("lambda must be >= 0, got {lambda}")));
    }
    let g = (crate::specfun::ln_gamma(p.nu + 1.5)? - crate::specfun::ln_gamma(p.nu)?).exp();
    Ok(p.sigma2 * g * p.a.powf(2.0 * p.nu)
        / (std::f64::consts::PI.powf(1.5) * (p.a * p.a + lambda * lambda).powf(p.nu + 1.5)))
}

/// Radial density 4πλ²·f(λ) of the Matérn spectral measure.
pub fn matern_radial_density(p: &MaternParams, lambda: f64) -> Result<f64> {
    Ok(4.0 * std::f64::consts::PI * lambda * lambda * matern_spectral_f(p, lambda)?)
}

/// Matérn two-point function M_{ν,a}(ρ) = (2^{1-ν}σ²/Γ(ν)) (aρ)^ν K_ν(aρ).
pub fn matern_covariance(p: &MaternParams, rho: f64) -> Result<f64> {
    p.validate()?;
    if rho < 0.0 {
        return Err(Error::domain(format!("rho must be >= 0, got {rho}")));
    }
    if rho == 0.0 || p.sigma2 == 0.0 {
        return Ok(p.sigma2);
    }
    let t = p.a * rho;
    let ln_pref = (1.0 - p.nu) * 2.0f64.ln() - crate::specfun::ln_gamma(p.nu)?;
    Ok(p.sigma2 * (ln_pref + p.nu * t.ln()).exp() * bessel_k(p.nu, t)?)
}

/// Spectral density s(λ) of the dual-Matérn model, normalized so the measure
/// 4πλ²s(λ)dλ has total mass 1 (the covariance (1+ρ²)^{-(ν+3/2)} at ρ = 0).
pub fn dual_matern_spectral_s(p: &DualMaternParams, lambda: f64) -> Result<f64> {
    p.validate()?;
    if lambda < 0.0 {
        return Err(Error::domain(format!("lambda must be >= 0, got {lambda}")));
    }
    if lambda == 0.0 {
        // λ^ν K_ν(λ) -> 2^{ν-1} Γ(ν)
        return Ok(gamma(p.nu)? / (8.0 * std::f64::consts::PI.powf(1.5) * gamma(p.nu + 1.5)?));
    }
    let pref = 2.0f64.powf(1.0 - p.nu) / (8.0 * std::f64::consts::PI.powf(1.5) * gamma(p.nu + 1.5)?);
    Ok(pref * lambda.powf(p.nu) * bessel_k(p.nu, lambda)?)
}

/// Radial density 4πλ²·s(λ) of the dual-Matérn spectral measure.
pub fn dual_matern_radial_density(p: &DualMaternParams, lambda: f64) -> Result<f64> {
    Ok(4.0 * std::f64::consts::PI * lambda * lambda * dual_matern_spectral_s(p, lambda)?)
}

/// Serializable description of a radial measure; [`RadialMeasure::build`]
/// turns it into a quadrature-ready measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MeasureSpec {
    Matern {
        nu: f64,
        a: f64,
        sigma2: f64,
        #[serde(default)]
        atom0: f64,
    },
    DualMatern {
        nu: f64,
        #[serde(default)]
        atom0: f64,
    },
    /// Piecewise-linear radial density between strictly increasing nodes.
    Tabulated {
        nodes: Vec<f64>,
        values: Vec<f64>,
        #[serde(default)]
        atom0: f64,
    },
}

impl MeasureSpec {
    pub fn matern(nu: f64, a: f64, sigma2: f64) -> Self {
        MeasureSpec::Matern { nu, a, sigma2, atom0: 0.0 }
    }

    pub fn dual_matern(nu: f64) -> Self {
        MeasureSpec::DualMatern { nu, atom0: 0.0 }
    }

    pub fn atom0(&self) -> f64 {
        match self {
            MeasureSpec::Matern { atom0, .. }
            | MeasureSpec::DualMatern { atom0, .. }
            | MeasureSpec::Tabulated { atom0, .. } => *atom0,
        }
    }

    pub fn with_atom0(mut self, mass: f64) -> Self {
        match &mut self {
            MeasureSpec::Matern { atom0, .. }
            | MeasureSpec::DualMatern { atom0, .. }
            | MeasureSpec::Tabulated { atom0, .. } => *atom0 = mass,
        }
        self
    }
}

/// Finite Borel measure on [0, ∞): an optional atom at zero plus a density
/// sampled on a fixed quadrature grid. `mass_weights[i]` is the quadrature
/// weight times the density at `nodes[i]`, so integrals against a kernel g
/// are `atom0·g(0) + Σ mass_weights[i]·g(nodes[i])`.
#[derive(Debug, Clone)]
pub struct RadialMeasure {
    atom0: f64,
    nodes: Vec<f64>,
    mass_weights: Vec<f64>,
    total_mass: f64,
    tail_bound: f64,
    cdf: Vec<f64>,
}

const TAIL_TARGET: f64 = 1e-10;

impl RadialMeasure {
    /// Build the quadrature grid for a measure description.
    ///
    /// Panels are octaves of the measure's length scale out to a cutoff with
    /// analytic tail mass below 1e-10 of the total; the node budget first
    /// covers every octave with a small Gauss rule, then refines the low
    /// octaves towards uniform node spacing so oscillatory kernels are
    /// resolved. Deterministic for fixed inputs.
    pub fn build(spec: &MeasureSpec, n_nodes: usize) -> Result<Self> {
        if n_nodes < 16 {
            return Err(Error::config(format!("n_nodes must be at least 16, got {n_nodes}")));
        }
        let atom0 = spec.atom0();
        if atom0 < 0.0 {
            return Err(Error::domain(format!("atom at zero must be >= 0, got {atom0}")));
        }
        match spec {
            MeasureSpec::Matern { nu, a, sigma2, .. } => {
                let p = MaternParams { nu: *nu, a: *a, sigma2: *sigma2 };
                p.validate()?;
                if p.sigma2 == 0.0 {
                    return Ok(Self::from_parts(atom0, Vec::new(), Vec::new(), 0.0));
                }
                let cutoff = matern_tail_cutoff(&p)?;
                let tail = matern_tail_bound(&p, cutoff);
                let density = |l: f64| matern_radial_density(&p, l).unwrap_or(0.0);
                let (nodes, mw) = panel_grid(p.a, cutoff, n_nodes, &density);
                Ok(Self::from_parts(atom0, nodes, mw, tail))
            }
            MeasureSpec::DualMatern { nu, .. } => {
                let p = DualMaternParams { nu: *nu };
                p.validate()?;
                let cutoff = dual_tail_cutoff(&p)?;
                let tail = dual_tail_bound(&p, cutoff);
                let density = |l: f64| dual_matern_radial_density(&p, l).unwrap_or(0.0);
                let scale = p.nu.max(1.0);
                let (nodes, mw) = panel_grid(scale, cutoff, n_nodes, &density);
                Ok(Self::from_parts(atom0, nodes, mw, tail))
            }
            MeasureSpec::Tabulated { nodes, values, .. } => {
                if nodes.len() != values.len() || nodes.len() < 2 {
                    return Err(Error::config("tabulated measure needs matching nodes/values of length >= 2".to_string()));
                }
                if nodes.windows(2).any(|w| w[1] <= w[0]) || nodes[0] < 0.0 {
                    return Err(Error::config("tabulated nodes must be nonnegative and strictly increasing".to_string()));
                }
                if values.iter().any(|&v| v < 0.0) {
                    return Err(Error::domain("tabulated density values must be >= 0".to_string()));
                }
                let density = |l: f64| interp_linear(nodes, values, l);
                let per = (n_nodes / (nodes.len() - 1)).clamp(2, 16);
                let mut qn = Vec::new();
                let mut qw = Vec::new();
                for w in nodes.windows(2) {
                    let (x, wt) = gauss_legendre_on(per, w[0], w[1]);
                    for (xi, wi) in x.iter().zip(&wt) {
                        qn.push(*xi);
                        qw.push(wi * density(*xi));
                    }
                }
                Ok(Self::from_parts(atom0, qn, qw, 0.0))
            }
        }
    }

    /// A unit of mass concentrated at a single wavenumber (plus an optional
    /// atom added later); used by tests and oracles.
    pub fn point_mass(lambda0: f64, mass: f64) -> Self {
        assert!(lambda0 >= 0.0 && mass >= 0.0);
        if lambda0 == 0.0 {
            Self::from_parts(mass, Vec::new(), Vec::new(), 0.0)
        } else {
            Self::from_parts(0.0, vec![lambda0], vec![mass], 0.0)
        }
    }

    /// The zero measure.
    pub fn null() -> Self {
        Self::from_parts(0.0, Vec::new(), Vec::new(), 0.0)
    }

    fn from_parts(atom0: f64, nodes: Vec<f64>, mass_weights: Vec<f64>, tail_bound: f64) -> Self {
        let total_mass = atom0 + mass_weights.iter().sum::<f64>();
        let mut cdf = Vec::with_capacity(mass_weights.len());
        let mut acc = 0.0;
        for w in &mass_weights {
            acc += w;
            cdf.push(acc);
        }
        RadialMeasure { atom0, nodes, mass_weights, total_mass, tail_bound, cdf }
    }

    pub fn atom0(&self) -> f64 {
        self.atom0
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn mass_weights(&self) -> &[f64] {
        &self.mass_weights
    }

    /// Weighted atoms (λ_i, mass_i) of the continuous part.
    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.mass_weights.iter().copied())
    }

    /// Integral of g against the measure: atom0·g(0) + Σ mass_i·g(λ_i).
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        let mut s = if self.atom0 > 0.0 { self.atom0 * g(0.0) } else { 0.0 };
        for (l, w) in self.atoms() {
            s += w * g(l);
        }
        s
    }

    /// Inverse-CDF sample of the continuous part from u ∈ [0, 1), piecewise
    /// linear between grid nodes.
    pub fn sample_lambda(&self, u: f64) -> f64 {
        debug_assert!(!self.nodes.is_empty());
        let target = u * (self.total_mass - self.atom0);
        let idx = self.cdf.partition_point(|&c| c < target);
        if idx >= self.nodes.len() {
            return *self.nodes.last().unwrap();
        }
        let hi_cdf = self.cdf[idx];
        let lo_cdf = if idx == 0 { 0.0 } else { self.cdf[idx - 1] };
        let lo_l = if idx == 0 { 0.0 } else { self.nodes[idx - 1] };
        let hi_l = self.nodes[idx];
        if hi_cdf - lo_cdf <= 0.0 {
            return hi_l;
        }
        lo_l + (hi_l - lo_l) * (target - lo_cdf) / (hi_cdf - lo_cdf)
    }
}

/// Alias for [`RadialMeasure::build`], the grid-construction entry point.
pub fn build_grid(spec: &MeasureSpec, n_nodes: usize) -> Result<RadialMeasure> {
    RadialMeasure::build(spec, n_nodes)
}

fn interp_linear(nodes: &[f64], values: &[f64], x: f64) -> f64 {
    if x <= nodes[0] {
        return values[0];
    }
    if x >= *nodes.last().unwrap() {
        return *values.last().unwrap();
    }
    let idx = nodes.partition_point(|&n| n < x);
    let (x0, x1) = (nodes[idx - 1], nodes[idx]);
    let (y0, y1) = (values[idx - 1], values[idx]);
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// Tail mass bound ∫_Λ^∞ 4πλ²f(λ)dλ <= 4σ²Γ(ν+3/2)a^{2ν}/(√π Γ(ν) 2ν) · Λ^{-2ν}.
fn matern_tail_bound(p: &MaternParams, cutoff: f64) -> f64 {
    let g = (crate::specfun::ln_gamma(p.nu + 1.5).unwrap() - crate::specfun::ln_gamma(p.nu).unwrap()).exp();
    4.0 * p.sigma2 * g * p.a.powf(2.0 * p.nu)
        / (std::f64::consts::PI.sqrt() * 2.0 * p.nu)
        * cutoff.powf(-2.0 * p.nu)
}

fn matern_tail_cutoff(p: &MaternParams) -> Result<f64> {
    let g = (crate::specfun::ln_gamma(p.nu + 1.5)? - crate::specfun::ln_gamma(p.nu)?).exp();
    let c = 4.0 * g * p.a.powf(2.0 * p.nu) / (std::f64::consts::PI.sqrt() * 2.0 * p.nu);
    // solve c·Λ^{-2ν} = TAIL_TARGET·σ² (σ² cancels against the bound's σ²)
    let cutoff = (c / TAIL_TARGET).powf(1.0 / (2.0 * p.nu)).max(8.0 * p.a);
    if !cutoff.is_finite() {
        return Err(Error::config(format!("tail cutoff unattainable for nu={}, a={}", p.nu, p.a)));
    }
    Ok(cutoff)
}

/// Tail bound via K_ν(λ) <= sqrt(π/2λ)·e^{-λ}·e^{ν²/(2λ)} and an incomplete
/// gamma tail estimate; valid once the cutoff clears both ν² and ν + 3/2.
fn dual_tail_bound(p: &DualMaternParams, cutoff: f64) -> f64 {
    let s = p.nu + 1.5;
    let pref = 2.0f64.powf(1.0 - p.nu)
        / (8.0 * std::f64::consts::PI.powf(1.5) * gamma(p.nu + 1.5).unwrap());
    let kbound = (std::f64::consts::PI / 2.0).sqrt() * (p.nu * p.nu / (2.0 * cutoff)).exp();
    let geom = 1.0 - s / cutoff;
    if geom <= 0.0 {
        return f64::INFINITY;
    }
    4.0 * std::f64::consts::PI * pref * kbound * cutoff.powf(s) * (-cutoff).exp() / geom
}

fn dual_tail_cutoff(p: &DualMaternParams) -> Result<f64> {
    let mut cutoff = (4.0 * p.nu + 24.0).max(2.0 * p.nu * p.nu);
    for _ in 0..64 {
        if dual_tail_bound(p, cutoff) <= TAIL_TARGET {
            return Ok(cutoff);
        }
        cutoff *= 1.5;
        if !cutoff.is_finite() {
            break;
        }
    }
    Err(Error::config(format!("dual Matérn tail cutoff unattainable for nu={}", p.nu)))
}

/// Octave panels on [0, cutoff] with Gauss–Legendre nodes per panel.
fn panel_grid(scale: f64, cutoff: f64, n_nodes: usize, density: &dyn Fn(f64) -> f64) -> (Vec<f64>, Vec<f64>) {
    // panel edges 0, s, 2s, 4s, ... clipped at the cutoff
    let mut edges = vec![0.0, scale.min(cutoff)];
    while *edges.last().unwrap() < cutoff {
        let next = (edges.last().unwrap() * 2.0).min(cutoff);
        edges.push(next);
    }
    // merge panels pairwise until every panel affords a high-order rule;
    // wider geometric panels stay well inside the Gauss convergence region
    while edges.len() > 5 && n_nodes / (edges.len() - 1) < 16 {
        let mut kept = Vec::with_capacity(edges.len() / 2 + 1);
        for (i, e) in edges.iter().enumerate() {
            if i % 2 == 0 || i == edges.len() - 1 {
                kept.push(*e);
            }
        }
        edges = kept;
    }
    let k = edges.len() - 1;
    let base = (n_nodes / k).clamp(2, 24);
    let mut counts = vec![base; k];
    let mut extra = n_nodes.saturating_sub(base * k);
    // refine low panels towards uniform spacing h
    let h = 12.0 * scale / (n_nodes as f64).sqrt();
    for (i, c) in counts.iter_mut().enumerate() {
        if extra == 0 {
            break;
        }
        let width = edges[i + 1] - edges[i];
        let want = (width / h).ceil() as usize;
        if want > *c {
            let add = (want - *c).min(extra);
            *c += add;
            extra -= add;
        }
    }
    // spread any remainder evenly
    if extra > 0 {
        let per = extra / k;
        let rem = extra % k;
        for (i, c) in counts.iter_mut().enumerate() {
            *c += per + usize::from(i < rem);
        }
    }
    let mut nodes = Vec::with_capacity(n_nodes);
    let mut mw = Vec::with_capacity(n_nodes);
    for i in 0..k {
        // cap single-rule order; long panels get equal subpanels
        let sub = counts[i].div_ceil(48);
        let per = counts[i].div_ceil(sub);
        let width = (edges[i + 1] - edges[i]) / sub as f64;
        for j in 0..sub {
            let a = edges[i] + width * j as f64;
            let b = a + width;
            let (x, w) = gauss_legendre_on(per, a, b);
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(*xi);
                mw.push(wi * density(*xi));
            }
        }
    }
    (nodes, mw)
}

/// A violated structural constraint of a field model.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintViolation {
    pub message: String,
}

/// Verify the atom-at-zero equalities of a field model; an empty report means
/// the model is admissible. Absolutely continuous measures always pass.
pub fn check_constraints(model: &crate::kernels::FieldModel) -> Vec<ConstraintViolation> {
    use crate::kernels::FieldModel;
    let mut out = Vec::new();
    let mut demand = |ok: bool, msg: String| {
        if !ok {
            out.push(ConstraintViolation { message: msg });
        }
    };
    match model {
        FieldModel::Rank0 { .. } => {}
        FieldModel::Rank1 { phi1, phi2 } => {
            demand(
                phi1.atom0() == phi2.atom0(),
                format!("Phi1({{0}}) = {} differs from Phi2({{0}}) = {}", phi1.atom0(), phi2.atom0()),
            );
        }
        FieldModel::Rank2Triangle { .. } => {}
        FieldModel::Rank2Simplex { phi } => {
            demand(
                phi[0].atom0() == phi[1].atom0(),
                format!("Phi1({{0}}) = {} differs from Phi2({{0}}) = {}", phi[0].atom0(), phi[1].atom0()),
            );
            demand(
                phi[0].atom0() == 2.0 * phi[3].atom0(),
                format!("Phi1({{0}}) = {} differs from 2·Phi4({{0}}) = {}", phi[0].atom0(), 2.0 * phi[3].atom0()),
            );
            demand(
                phi[4].atom0() == 0.0,
                format!("Phi5({{0}}) = {} must vanish", phi[4].atom0()),
            );
        }
    }
    out
}
