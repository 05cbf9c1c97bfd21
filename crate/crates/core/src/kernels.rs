//! Two-point correlation evaluators for the scalar, vector, two-component,
//! and symmetric-matrix field models, together with the independent spherical
//! quadrature oracles used to cross-validate them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{check_constraints, MeasureSpec, RadialMeasure};
use crate::quad::sphere_grid;
use crate::so3::{mandel_rotation_unchecked, rotation_to_pole};
use crate::specfun::{j0, j1_over_t, j2, j4};
use crate::tensor_bases::{
    extreme_point, l_basis, tau, triangle_vertices, ExtremePointId, Mandel6, Rank4Sym, Separation,
};

/// Default spherical quadrature order of the oracles: Gauss in cosθ times a
/// uniform azimuthal grid, sized to resolve phases λρ up to about 20.
pub const ORACLE_N_THETA: usize = 64;
pub const ORACLE_N_PHI: usize = 128;

/// Serializable description of a field model; [`FieldModel::from_spec`]
/// builds the quadrature grids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelSpec {
    Rank0 { mu: MeasureSpec },
    Rank1 { phi1: MeasureSpec, phi2: MeasureSpec },
    Rank2Triangle { phi: [MeasureSpec; 3] },
    Rank2Simplex { phi: [MeasureSpec; 5] },
}

/// A fully built random-field model: one radial measure per uncorrelated
/// component, grids ready for kernel evaluation and simulation.
#[derive(Debug, Clone)]
pub enum FieldModel {
    Rank0 { mu: RadialMeasure },
    Rank1 { phi1: RadialMeasure, phi2: RadialMeasure },
    Rank2Triangle { phi: [RadialMeasure; 3] },
    Rank2Simplex { phi: [RadialMeasure; 5] },
}

/// Kernel value matching the model's rank.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelValue {
    Scalar(f64),
    Matrix3([[f64; 3]; 3]),
    Matrix2([[f64; 2]; 2]),
    Rank4(Rank4Sym),
}

impl FieldModel {
    pub fn from_spec(spec: &ModelSpec, n_nodes: usize) -> Result<Self> {
        let model = match spec {
            ModelSpec::Rank0 { mu } => FieldModel::Rank0 { mu: RadialMeasure::build(mu, n_nodes)? },
            ModelSpec::Rank1 { phi1, phi2 } => FieldModel::Rank1 {
                phi1: RadialMeasure::build(phi1, n_nodes)?,
                phi2: RadialMeasure::build(phi2, n_nodes)?,
            },
            ModelSpec::Rank2Triangle { phi } => {
                let mut ms = Vec::with_capacity(3);
                for m in phi {
                    ms.push(RadialMeasure::build(m, n_nodes)?);
                }
                FieldModel::Rank2Triangle { phi: [ms.remove(0), ms.remove(0), ms.remove(0)] }
            }
            ModelSpec::Rank2Simplex { phi } => {
                let mut ms = Vec::with_capacity(5);
                for m in phi {
                    ms.push(RadialMeasure::build(m, n_nodes)?);
                }
                FieldModel::Rank2Simplex {
                    phi: [ms.remove(0), ms.remove(0), ms.remove(0), ms.remove(0), ms.remove(0)],
                }
            }
        };
        let report = check_constraints(&model);
        if let Some(v) = report.first() {
            return Err(Error::model(v.message.clone()));
        }
        Ok(model)
    }

    /// Dimension of a single field value (1, 3, 2, or 6 Mandel components).
    pub fn value_dim(&self) -> usize {
        match self {
            FieldModel::Rank0 { .. } => 1,
            FieldModel::Rank1 { .. } => 3,
            FieldModel::Rank2Triangle { .. } => 2,
            FieldModel::Rank2Simplex { .. } => 6,
        }
    }

    /// Column names of the kernel CSV output (upper triangle for the
    /// symmetric outputs, all nine entries for the vector model).
    pub fn kernel_component_names(&self) -> Vec<String> {
        let lbl = ["m1", "0", "p1"];
        match self {
            FieldModel::Rank0 { .. } => vec!["value".to_string()],
            FieldModel::Rank1 { .. } => {
                let mut v = Vec::new();
                for i in 0..3 {
                    for j in 0..3 {
                        v.push(format!("B_{}_{}", lbl[i], lbl[j]));
                    }
                }
                v
            }
            FieldModel::Rank2Triangle { .. } => {
                vec!["B_1_1".to_string(), "B_1_2".to_string(), "B_2_2".to_string()]
            }
            FieldModel::Rank2Simplex { .. } => {
                let mut v = Vec::new();
                for a in 1..=6 {
                    for b in a..=6 {
                        v.push(format!("B_{a}_{b}"));
                    }
                }
                v
            }
        }
    }

    /// Evaluate the two-point correlation at a pair of points.
    pub fn kernel(&self, x: &[f64; 3], y: &[f64; 3]) -> Result<KernelValue> {
        Ok(match self {
            FieldModel::Rank0 { mu } => KernelValue::Scalar(kernel_rank0(mu, x, y)),
            FieldModel::Rank1 { phi1, phi2 } => KernelValue::Matrix3(kernel_rank1(phi1, phi2, x, y)?),
            FieldModel::Rank2Triangle { phi } => KernelValue::Matrix2(kernel_rank2_triangle(phi, x, y)),
            FieldModel::Rank2Simplex { phi } => KernelValue::Rank4(kernel_rank2_simplex(phi, x, y)?),
        })
    }
}

impl KernelValue {
    /// Flatten to the CSV component layout of
    /// [`FieldModel::kernel_component_names`].
    pub fn components(&self) -> Vec<f64> {
        match self {
            KernelValue::Scalar(v) => vec![*v],
            KernelValue::Matrix3(m) => m.iter().flatten().copied().collect(),
            KernelValue::Matrix2(m) => vec![m[0][0], m[0][1], m[1][1]],
            KernelValue::Rank4(f) => {
                let t = tau(f);
                let mut v = Vec::with_capacity(21);
                for a in 0..6 {
                    for b in a..6 {
                        v.push(t.0[a][b]);
                    }
                }
                v
            }
        }
    }
}

/// Scalar kernel: atom0 + Σ wᵢ · sinc(λᵢ ρ).
pub fn kernel_rank0(mu: &RadialMeasure, x: &[f64; 3], y: &[f64; 3]) -> f64 {
    let rho = Separation::between(x, y).rho;
    mu.integrate(|l| j0(l * rho))
}

/// Vector kernel as the sum of its longitudinal and transverse components.
///
/// At ρ = 0 the analytic limits are (1/3)·Φ₁_tot·δ and (2/3)·Φ₂_tot·δ.
pub fn kernel_rank1(
    phi1: &RadialMeasure,
    phi2: &RadialMeasure,
    x: &[f64; 3],
    y: &[f64; 3],
) -> Result<[[f64; 3]; 3]> {
    if phi1.atom0() != phi2.atom0() {
        return Err(Error::model(format!(
            "Phi1({{0}}) = {} differs from Phi2({{0}}) = {}",
            phi1.atom0(),
            phi2.atom0()
        )));
    }
    let s = Separation::between(x, y);
    let mut m = [[0.0; 3]; 3];
    if s.rho == 0.0 {
        let diag = phi1.total_mass() / 3.0 + 2.0 * phi2.total_mass() / 3.0;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = diag;
        }
        return Ok(m);
    }
    let rho = s.rho;
    // longitudinal: -j₂ on r̂r̂, j₁/t on δ; transverse: j₂ on r̂r̂, j₀ - j₁/t on δ
    let c_rr = phi1.integrate(|l| -j2(l * rho)) + phi2.integrate(|l| j2(l * rho));
    let c_dd = phi1.integrate(|l| j1_over_t(l * rho))
        + phi2.integrate(|l| j0(l * rho) - j1_over_t(l * rho));
    let u = s.unit().expect("rho > 0");
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = c_rr * u[i] * u[j];
        }
        m[i][i] += c_dd;
    }
    Ok(m)
}

/// Independent check of the vector kernel: spherical quadrature of the plane
/// wave against the longitudinal projector weighted by Φ₁ and the transverse
/// projector weighted by Φ₂. The sine part must cancel and is asserted, not
/// assumed.
pub fn rank1_projector_oracle(
    phi1: &RadialMeasure,
    phi2: &RadialMeasure,
    x: &[f64; 3],
    y: &[f64; 3],
) -> [[f64; 3]; 3] {
    let s = Separation::between(x, y);
    let grid = sphere_grid(ORACLE_N_THETA, ORACLE_N_PHI);
    let mut cos_part = [[0.0; 3]; 3];
    let mut sin_max: f64 = 0.0;
    let four_pi = 4.0 * std::f64::consts::PI;
    for meas in [(phi1, true), (phi2, false)] {
        let (measure, longitudinal) = meas;
        let mut cos_proj = [[0.0; 3]; 3];
        let mut sin_proj = [[0.0; 3]; 3];
        for (lambda, mass) in measure.atoms() {
            for p in &grid {
                let phase = lambda * (p.dir[0] * s.r[0] + p.dir[1] * s.r[1] + p.dir[2] * s.r[2]);
                let (sph, cph) = phase.sin_cos();
                let wc = mass * p.weight * cph / four_pi;
                let ws = mass * p.weight * sph / four_pi;
                for i in 0..3 {
                    for j in 0..3 {
                        let proj = if longitudinal {
                            p.dir[i] * p.dir[j]
                        } else {
                            (if i == j { 1.0 } else { 0.0 }) - p.dir[i] * p.dir[j]
                        };
                        cos_proj[i][j] += wc * proj;
                        sin_proj[i][j] += ws * proj;
                    }
                }
            }
            // atoms at zero contribute through phase 0 only
        }
        let atom = measure.atom0();
        if atom > 0.0 {
            // sphere average of the projectors: δ/3 and 2δ/3
            let diag = if longitudinal { atom / 3.0 } else { 2.0 * atom / 3.0 };
            for i in 0..3 {
                cos_proj[i][i] += diag;
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                cos_part[i][j] += cos_proj[i][j];
                sin_max = sin_max.max(sin_proj[i][j].abs());
            }
        }
    }
    assert!(sin_max < 1e-10, "odd part of the spectral integral should cancel, got {sin_max}");
    cos_part
}

/// Two-component kernel: Σ_m (scalar kernel of Φ_m) · C^m.
pub fn kernel_rank2_triangle(phi: &[RadialMeasure; 3], x: &[f64; 3], y: &[f64; 3]) -> [[f64; 2]; 2] {
    let rho = Separation::between(x, y).rho;
    let verts = triangle_vertices();
    let mut m = [[0.0; 2]; 2];
    for (measure, v) in phi.iter().zip(verts.iter()) {
        let scalar = measure.integrate(|l| j0(l * rho));
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] += scalar * v[i][j];
            }
        }
    }
    m
}

/// Coefficients of j₀, j₂, j₄ in the component functions Ñ_{nq}(λ, r); the
/// value is their combination at argument t = λ·r.
const NTILDE: [[[f64; 3]; 5]; 5] = [
    [
        [-1.0 / 15.0, -2.0 / 21.0, -1.0 / 35.0],
        [1.0 / 10.0, 1.0 / 14.0, -1.0 / 35.0],
        [0.0, -3.0 / 28.0, 1.0 / 7.0],
        [0.0, 1.0 / 7.0, 1.0 / 7.0],
        [0.0, 0.0, -1.0],
    ],
    [
        [-1.0 / 15.0, 4.0 / 21.0, 1.0 / 140.0],
        [1.0 / 10.0, -1.0 / 7.0, 1.0 / 140.0],
        [0.0, 3.0 / 14.0, -1.0 / 28.0],
        [0.0, -2.0 / 7.0, -1.0 / 28.0],
        [0.0, 0.0, 1.0 / 4.0],
    ],
    [
        [1.0 / 3.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
    ],
    [
        [-1.0 / 15.0, -4.0 / 21.0, 3.0 / 70.0],
        [1.0 / 10.0, 1.0 / 7.0, 3.0 / 70.0],
        [0.0, -3.0 / 14.0, -3.0 / 14.0],
        [0.0, 2.0 / 7.0, -3.0 / 14.0],
        [0.0, 0.0, 3.0 / 2.0],
    ],
    [
        [1.0 / 5.0, -2.0 / 7.0, 1.0 / 70.0],
        [1.0 / 30.0, 1.0 / 21.0, 1.0 / 70.0],
        [0.0, -1.0 / 14.0, -1.0 / 14.0],
        [0.0, 3.0 / 7.0, -1.0 / 14.0],
        [0.0, 0.0, 1.0 / 2.0],
    ],
];

/// Component function Ñ_{nq}(λ, ρ) of the five-component matrix model,
/// n, q in 1..=5. Entries with no j-content are identically zero.
pub fn ntilde(n: usize, q: usize, lambda: f64, rho: f64) -> f64 {
    assert!((1..=5).contains(&n) && (1..=5).contains(&q), "ntilde indices must lie in 1..=5");
    let c = &NTILDE[n - 1][q - 1];
    if c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0 {
        return 0.0;
    }
    let t = lambda * rho;
    c[0] * j0(t) + c[1] * j2(t) + c[2] * j4(t)
}

/// Five-component symmetric-matrix kernel: quadrature over each Φ_n of
/// Σ_q Ñ_{nq}·L^q. At ρ = 0 only the j₀ terms survive, so the direction-free
/// L¹ and L² suffice.
pub fn kernel_rank2_simplex(
    phi: &[RadialMeasure; 5],
    x: &[f64; 3],
    y: &[f64; 3],
) -> Result<Rank4Sym> {
    let atoms_ok = phi[0].atom0() == phi[1].atom0()
        && phi[0].atom0() == 2.0 * phi[3].atom0()
        && phi[4].atom0() == 0.0;
    if !atoms_ok {
        return Err(Error::model("simplex atom constraints violated; run check_constraints for details".to_string()));
    }
    let s = Separation::between(x, y);
    let mut coeff = [0.0f64; 5];
    if s.rho == 0.0 {
        for (n, measure) in phi.iter().enumerate() {
            let mass = measure.total_mass();
            coeff[0] += mass * NTILDE[n][0][0];
            coeff[1] += mass * NTILDE[n][1][0];
        }
    } else {
        let rho = s.rho;
        for (n, measure) in phi.iter().enumerate() {
            let mut m0 = 0.0;
            let mut m2 = 0.0;
            let mut m4 = 0.0;
            if measure.atom0() > 0.0 {
                m0 += measure.atom0();
            }
            for (l, w) in measure.atoms() {
                let t = l * rho;
                m0 += w * j0(t);
                m2 += w * j2(t);
                m4 += w * j4(t);
            }
            for q in 0..5 {
                coeff[q] += NTILDE[n][q][0] * m0 + NTILDE[n][q][1] * m2 + NTILDE[n][q][2] * m4;
            }
        }
    }
    let mut out = l_basis(1, &s)?.scale(coeff[0]);
    out.axpy(coeff[1], &l_basis(2, &s)?);
    if s.rho > 0.0 {
        for q in 3..=5u8 {
            let c = coeff[q as usize - 1];
            if c != 0.0 {
                out.axpy(c, &l_basis(q, &s)?);
            }
        }
    }
    Ok(out)
}

/// Simplex vertex matrix belonging to component n of the five-component model.
pub fn simplex_vertex(n: usize) -> Mandel6 {
    match n {
        1 => extreme_point(ExtremePointId::D1),
        2 => extreme_point(ExtremePointId::D2),
        3 => extreme_point(ExtremePointId::D3),
        4 => extreme_point(ExtremePointId::D4),
        5 => extreme_point(ExtremePointId::D5),
        _ => panic!("simplex component index must lie in 1..=5"),
    }
}

/// Independent check of the five-component model: the sphere average of the
/// rotated vertex against the plane wave,
/// (1/4π) ∫ Q(g_p) Dⁿ Q(g_p)ᵀ cos(λ₀ p·r) dΩ(p).
/// The sine part must cancel and is asserted, not assumed.
pub fn rank2_quadrature_oracle(n: usize, lambda0: f64, s: &Separation) -> Mandel6 {
    assert!(lambda0 > 0.0, "oracle needs a positive wavenumber");
    let vertex = simplex_vertex(n);
    let grid = sphere_grid(ORACLE_N_THETA, ORACLE_N_PHI);
    let four_pi = 4.0 * std::f64::consts::PI;
    let mut cos_part = Mandel6::zeros();
    let mut sin_part = Mandel6::zeros();
    for p in &grid {
        let q = mandel_rotation_unchecked(&rotation_to_pole(p.theta, p.phi));
        let rotated = vertex.conjugate_by(&q);
        let phase = lambda0 * (p.dir[0] * s.r[0] + p.dir[1] * s.r[1] + p.dir[2] * s.r[2]);
        let (sph, cph) = phase.sin_cos();
        cos_part = cos_part.add(&rotated.scale(p.weight * cph / four_pi));
        sin_part = sin_part.add(&rotated.scale(p.weight * sph / four_pi));
    }
    let sin_max = sin_part.0.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(sin_max < 1e-10, "odd part of the spectral integral should cancel, got {sin_max}");
    cos_part
}

/// Evaluate a batch of point pairs in parallel; results are identical to the
/// sequential evaluation order by order.
pub fn eval_batch(model: &FieldModel, pairs: &[([f64; 3], [f64; 3])]) -> Result<Vec<Vec<f64>>> {
    pairs
        .par_iter()
        .map(|(x, y)| model.kernel(x, y).map(|v| v.components()))
        .collect()
}
