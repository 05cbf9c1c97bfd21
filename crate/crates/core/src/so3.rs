//! Rotation-group machinery: Euler rotations in the (x_{-1}, x_0, x_1) frame
//! with polar axis x_0, SU(2) Clebsch–Gordan coefficients, the Gordienko real
//! basis and the Godunov–Gordienko coefficients obtained from it, the Gaunt
//! integral as a quadrature oracle, the induced 6x6 rotation on symmetric
//! matrices, and the multiplicity count for tensor-power decompositions.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::sphere_grid;
use crate::specfun::{ln_factorial, real_sph_harm, HarmonicIndex};
use crate::tensor_bases::{Mandel6, MANDEL_PAIRS, MANDEL_WEIGHTS};

/// Euler angles (ψ, θ, φ): rotation about x_0 by ψ, about x_{-1} by θ, then
/// about x_0 by φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub psi: f64,
    pub theta: f64,
    pub phi: f64,
}

impl EulerAngles {
    pub fn new(psi: f64, theta: f64, phi: f64) -> Result<Self> {
        let two_pi = 2.0 * std::f64::consts::PI;
        if !(0.0..two_pi).contains(&psi) || !(0.0..two_pi).contains(&phi) {
            return Err(Error::domain(format!("euler angles psi/phi must lie in [0, 2pi): {psi}, {phi}")));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::domain(format!("euler angle theta must lie in [0, pi]: {theta}")));
        }
        Ok(EulerAngles { psi, theta, phi })
    }
}

/// Proper rotation of R³, rows and columns indexed by (x_{-1}, x_0, x_1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3(pub [[f64; 3]; 3]);

impl Rotation3 {
    pub fn identity() -> Self {
        Rotation3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Rotation about the x_0 axis.
    pub fn about_x0(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Rotation3([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    }

    /// Rotation about the x_{-1} axis.
    pub fn about_xm1(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Rotation3([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    }

    pub fn compose(&self, other: &Rotation3) -> Rotation3 {
        let mut out = [[0.0; 3]; 3];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[r][k] * other.0[k][c]).sum();
            }
        }
        Rotation3(out)
    }

    pub fn transpose(&self) -> Rotation3 {
        let mut out = [[0.0; 3]; 3];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.0[c][r];
            }
        }
        Rotation3(out)
    }

    pub fn apply(&self, v: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|c| self.0[r][c] * v[c]).sum();
        }
        out
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Max-abs deviation of RᵀR from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| self.0[k][i] * self.0[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }
}

/// Composition g_0(φ) · g_{-1}(θ) · g_0(ψ).
pub fn rotation_from_euler(a: &EulerAngles) -> Rotation3 {
    Rotation3::about_x0(a.phi)
        .compose(&Rotation3::about_xm1(a.theta))
        .compose(&Rotation3::about_x0(a.psi))
}

/// Canonical rotation carrying the polar axis x_0 to the direction (θ, φ).
pub fn rotation_to_pole(theta: f64, phi: f64) -> Rotation3 {
    Rotation3::about_x0(phi).compose(&Rotation3::about_xm1(theta))
}

/// SU(2) element ((α, β), (-β̄, ᾱ)).
#[derive(Debug, Clone, Copy)]
pub struct Su2 {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl Su2 {
    pub fn mul(&self, other: &Su2) -> Su2 {
        Su2 {
            alpha: self.alpha * other.alpha - self.beta * other.beta.conj(),
            beta: self.alpha * other.beta + self.beta * other.alpha.conj(),
        }
    }
}

fn su2_about_x0(angle: f64) -> Su2 {
    Su2 {
        alpha: Complex64::from_polar(1.0, angle / 2.0),
        beta: Complex64::new(0.0, 0.0),
    }
}

fn su2_about_xm1(angle: f64) -> Su2 {
    Su2 {
        alpha: Complex64::new((angle / 2.0).cos(), 0.0),
        beta: Complex64::new(-(angle / 2.0).sin(), 0.0),
    }
}

pub fn su2_from_euler(a: &EulerAngles) -> Su2 {
    su2_about_x0(a.phi)
        .mul(&su2_about_xm1(a.theta))
        .mul(&su2_about_x0(a.psi))
}

/// Image of an SU(2) element under the double cover onto SO(3), acting by
/// conjugation on the traceless Hermitian realisation of R³.
pub fn so3_from_su2(g: &Su2) -> Rotation3 {
    // basis matrices for x_{-1}, x_0, x_1
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let basis = [
        [[zero, i], [-i, zero]],
        [[one, zero], [zero, -one]],
        [[zero, one], [one, zero]],
    ];
    // g X g* with g* the conjugate transpose
    let gm = [[g.alpha, g.beta], [-g.beta.conj(), g.alpha.conj()]];
    let gs = [[g.alpha.conj(), -g.beta], [g.beta.conj(), g.alpha]];
    let mut out = [[0.0; 3]; 3];
    for (col, x) in basis.iter().enumerate() {
        let mut t = [[zero; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                t[r][c] = (0..2).map(|k| gm[r][k] * x[k][c]).sum();
            }
        }
        let mut m = [[zero; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] = (0..2).map(|k| t[r][k] * gs[k][c]).sum();
            }
        }
        out[0][col] = m[0][1].im; // x_{-1}
        out[1][col] = m[0][0].re; // x_0
        out[2][col] = m[0][1].re; // x_1
    }
    Rotation3(out)
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone)]
pub struct CMatrix {
    pub n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.n + c] = v;
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, self.get(c, r).conj());
            }
        }
        out
    }

    /// Max-abs deviation of U*U from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst: f64 = 0.0;
        for r in 0..self.n {
            for c in 0..self.n {
                let want = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((p.get(r, c) - want).norm());
            }
        }
        worst
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// Matrix of the irreducible SU(2) action on degree-2ℓ binary forms in the
/// Wigner basis, computed from the substitution h(ξ,η) ↦ h(ᾱξ−βη, β̄ξ+αη).
pub fn wigner_rep_matrix(ell: u32, g: &Su2) -> CMatrix {
    let dim = (2 * ell + 1) as usize;
    let l = ell as i64;
    let mut out = CMatrix::zeros(dim);
    // power tables
    let max_p = (2 * ell) as usize;
    let pows = |z: Complex64| -> Vec<Complex64> {
        let mut v = vec![Complex64::new(1.0, 0.0); max_p + 1];
        for k in 1..=max_p {
            v[k] = v[k - 1] * z;
        }
        v
    };
    let pa = pows(g.alpha);
    let pac = pows(g.alpha.conj());
    let pb = pows(-g.beta);
    let pbc = pows(g.beta.conj());
    for m in -l..=l {
        let p_tot = (l + m) as usize;
        for mp in -l..=l {
            // coefficient of ξ^{ℓ+m'} η^{ℓ-m'} in (ᾱξ-βη)^{ℓ+m} (β̄ξ+αη)^{ℓ-m}
            let target = (l + mp) as usize;
            let mut acc = Complex64::new(0.0, 0.0);
            let i_min = target.saturating_sub((l - m) as usize);
            let i_max = p_tot.min(target);
            for i in i_min..=i_max {
                let jj = target - i; // power of β̄ξ
                let c1 = binom_f64(p_tot as u64, i as u64);
                let c2 = binom_f64((l - m) as u64, jj as u64);
                acc += pac[i] * pb[p_tot - i] * pbc[jj] * pa[(l - m) as usize - jj] * (c1 * c2);
            }
            // ratio of basis normalisations N_m / N_{m'}
            let ln_ratio = 0.5
                * (ln_factorial((l + mp) as u64) + ln_factorial((l - mp) as u64)
                    - ln_factorial((l + m) as u64)
                    - ln_factorial((l - m) as u64));
            let sign = if (m - mp).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let v = acc * (sign * ln_ratio.exp());
            out.set((mp + l) as usize, (m + l) as usize, v);
        }
    }
    out
}

fn binom_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)).exp().round()
}

fn minus_i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Change of basis from the Wigner basis to the Gordienko basis: column m
/// holds the Wigner-basis components of h_m.
pub fn gordienko_transform(ell: u32) -> CMatrix {
    gordienko_variant(ell, false)
}

/// `flip_negative` replaces the (-i)^{ℓ-1} phase on h_{-m} with (-i)^ℓ; only
/// the printed phase yields a real representation (see tests).
pub(crate) fn gordienko_variant(ell: u32, flip_negative: bool) -> CMatrix {
    let l = ell as i64;
    let dim = (2 * ell + 1) as usize;
    let mut u = CMatrix::zeros(dim);
    let s = 1.0 / std::f64::consts::SQRT_2;
    let ph_m = minus_i_pow(l); // h_0, h_m phase
    let ph_neg = if flip_negative { minus_i_pow(l) } else { minus_i_pow(l - 1) };
    u.set(l as usize, l as usize, ph_m);
    for m in 1..=l {
        let sgn = if m % 2 == 0 { 1.0 } else { -1.0 };
        // column h_m
        u.set((l + m) as usize, (l + m) as usize, -ph_m * (sgn * s));
        u.set((l - m) as usize, (l + m) as usize, -ph_m * s);
        // column h_{-m}
        u.set((l + m) as usize, (l - m) as usize, ph_neg * (sgn * s));
        u.set((l - m) as usize, (l - m) as usize, -ph_neg * s);
    }
    u
}

/// Real orthogonal representation matrix in the Gordienko basis together with
/// the largest imaginary part discarded (a convention self-check).
pub fn real_rep_matrix(ell: u32, a: &EulerAngles) -> (Vec<f64>, f64) {
    let d = wigner_rep_matrix(ell, &su2_from_euler(a));
    let u = gordienko_transform(ell);
    let r = u.adjoint().mul(&d).mul(&u);
    let dim = (2 * ell + 1) as usize;
    let mut out = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            out[i * dim + j] = r.get(i, j).re;
        }
    }
    (out, r.max_imag())
}

/// All S^m_ℓ(θ, φ) for m = -ℓ..ℓ, in the Gordienko convention.
pub(crate) fn sph_harm_row(ell: u32, theta: f64, phi: f64) -> Vec<f64> {
    let dim = (2 * ell + 1) as usize;
    let g = su2_about_x0(phi).mul(&su2_about_xm1(theta));
    let d = wigner_rep_matrix(ell, &g);
    let u = gordienko_transform(ell);
    // column m0 = 0 of U* D U; U's column 0..: e_0 column is (-i)^ℓ at row ℓ
    let scale = ((2 * ell + 1) as f64 / (4.0 * std::f64::consts::PI)).sqrt();
    let col0 = minus_i_pow(ell as i64);
    let mut out = vec![0.0; dim];
    for (m, o) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for mu in 0..dim {
            acc += u.get(mu, m).conj() * d.get(mu, ell as usize);
        }
        acc *= col0;
        debug_assert!(acc.im.abs() < 1e-10);
        *o = scale * acc.re;
    }
    out
}

/// SU(2) Clebsch–Gordan coefficient ⟨j1 m1; j2 m2 | j m⟩ in the
/// Condon–Shortley phase, by the Racah closed-form sum. Arguments are doubled
/// (two_j = 2j) so half-integers are exact. Selection-rule violations give 0.
pub fn cg_su2(two_j1: u32, two_m1: i32, two_j2: u32, two_m2: i32, two_j: u32, two_m: i32) -> f64 {
    // parity and magnitude of (j, m)
    let valid = |tj: u32, tm: i32| tm.unsigned_abs() <= tj && (tj as i32 - tm) % 2 == 0;
    if !valid(two_j1, two_m1) || !valid(two_j2, two_m2) || !valid(two_j, two_m) {
        return 0.0;
    }
    if two_m1 + two_m2 != two_m {
        return 0.0;
    }
    let tj1 = two_j1 as i64;
    let tj2 = two_j2 as i64;
    let tj = two_j as i64;
    if tj > tj1 + tj2 || tj < (tj1 - tj2).abs() || (tj1 + tj2 - tj) % 2 != 0 {
        return 0.0;
    }
    let f = |x: i64| -> f64 {
        debug_assert!(x % 2 == 0 && x >= 0);
        ln_factorial((x / 2) as u64)
    };
    let tm1 = two_m1 as i64;
    let tm2 = two_m2 as i64;
    let tm = two_m as i64;

    let ln_delta = 0.5
        * (f(tj1 + tj2 - tj) + f(tj1 - tj2 + tj) + f(-tj1 + tj2 + tj)
            - ln_factorial(((tj1 + tj2 + tj) / 2 + 1) as u64));
    let ln_pref = 0.5
        * (((tj + 1) as f64).ln()
            + f(tj + tm)
            + f(tj - tm)
            + f(tj1 + tm1)
            + f(tj1 - tm1)
            + f(tj2 + tm2)
            + f(tj2 - tm2));

    // summation limits: all factorial arguments nonnegative
    let k_min = 0i64
        .max((tj2 - tj - tm1) / 2)
        .max((tj1 + tm2 - tj) / 2);
    let k_max = ((tj1 + tj2 - tj) / 2)
        .min((tj1 - tm1) / 2)
        .min((tj2 + tm2) / 2);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let ln_den = ln_factorial(k as u64)
            + f(tj1 + tj2 - tj - 2 * k)
            + f(tj1 - tm1 - 2 * k)
            + f(tj2 + tm2 - 2 * k)
            + f(tj - tj2 + tm1 + 2 * k)
            + f(tj - tj1 - tm2 + 2 * k);
        let term = (ln_delta + ln_pref - ln_den).exp();
        sum += if k % 2 == 0 { term } else { -term };
    }
    sum
}

/// Index sextuple of a Godunov–Gordienko coefficient g^{m\[m1,m2\]}_{ℓ\[ℓ1,ℓ2\]}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GGIndex {
    pub ell: u32,
    pub ell1: u32,
    pub ell2: u32,
    pub m: i32,
    pub m1: i32,
    pub m2: i32,
}

impl GGIndex {
    pub fn new(ell: u32, ell1: u32, ell2: u32, m: i32, m1: i32, m2: i32) -> Result<Self> {
        if m.unsigned_abs() > ell || m1.unsigned_abs() > ell1 || m2.unsigned_abs() > ell2 {
            return Err(Error::domain(format!(
                "GG index out of range: ell=({ell},{ell1},{ell2}) m=({m},{m1},{m2})"
            )));
        }
        Ok(GGIndex { ell, ell1, ell2, m, m1, m2 })
    }
}

/// Cached table of Godunov–Gordienko coefficients for ℓ1, ℓ2 up to `ell_max`
/// (and ℓ up to 2·ell_max). Immutable once built.
pub struct GGTable {
    ell_max: u32,
    entries: HashMap<GGIndex, f64>,
}

impl GGTable {
    pub fn new(ell_max: u32) -> Self {
        let mut entries = HashMap::new();
        for ell1 in 0..=ell_max {
            let u1 = gordienko_transform(ell1);
            for ell2 in 0..=ell_max {
                let u2 = gordienko_transform(ell2);
                for ell in ell1.abs_diff(ell2)..=(ell1 + ell2) {
                    let u = gordienko_transform(ell);
                    let block = gg_block(ell, ell1, ell2, &u, &u1, &u2);
                    let d = (2 * ell + 1) as usize;
                    let d1 = (2 * ell1 + 1) as usize;
                    let d2 = (2 * ell2 + 1) as usize;
                    for im in 0..d {
                        for im1 in 0..d1 {
                            for im2 in 0..d2 {
                                let v = block[(im * d1 + im1) * d2 + im2];
                                if v.abs() > 1e-14 {
                                    entries.insert(
                                        GGIndex {
                                            ell,
                                            ell1,
                                            ell2,
                                            m: im as i32 - ell as i32,
                                            m1: im1 as i32 - ell1 as i32,
                                            m2: im2 as i32 - ell2 as i32,
                                        },
                                        v,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        GGTable { ell_max, entries }
    }

    pub fn ell_max(&self) -> u32 {
        self.ell_max
    }

    /// Deterministic dump of the nonzero entries, sorted by index.
    pub fn entries_sorted(&self) -> Vec<(GGIndex, f64)> {
        let mut v: Vec<(GGIndex, f64)> = self.entries.iter().map(|(k, v)| (*k, *v)).collect();
        v.sort_by_key(|(k, _)| (k.ell, k.ell1, k.ell2, k.m, k.m1, k.m2));
        v
    }
}

/// Conjugate the SU(2) Clebsch–Gordan block by the Gordienko transform on all
/// three slots; the result is real up to rounding.
fn gg_block(ell: u32, ell1: u32, ell2: u32, u: &CMatrix, u1: &CMatrix, u2: &CMatrix) -> Vec<f64> {
    let d = (2 * ell + 1) as usize;
    let d1 = (2 * ell1 + 1) as usize;
    let d2 = (2 * ell2 + 1) as usize;
    let l = ell as i32;
    let l1 = ell1 as i32;
    let l2 = ell2 as i32;
    // tmp[mu][m1][m2] = Σ_{mu1 mu2} conj(U1) conj(U2) C^{ℓ mu}_{ℓ1 mu1 ℓ2 mu2}
    let mut tmp = vec![Complex64::new(0.0, 0.0); d * d1 * d2];
    for imu in 0..d {
        let mu = imu as i32 - l;
        for imu1 in 0..d1 {
            let mu1 = imu1 as i32 - l1;
            let imu2s = mu - mu1 + l2;
            if imu2s < 0 || imu2s >= d2 as i32 {
                continue;
            }
            let imu2 = imu2s as usize;
            let mu2 = mu - mu1;
            let c = cg_su2(2 * ell1, 2 * mu1, 2 * ell2, 2 * mu2, 2 * ell, 2 * mu);
            if c == 0.0 {
                continue;
            }
            for im1 in 0..d1 {
                let f1 = u1.get(imu1, im1).conj();
                if f1.norm_sqr() == 0.0 {
                    continue;
                }
                for im2 in 0..d2 {
                    let f2 = u2.get(imu2, im2).conj();
                    if f2.norm_sqr() == 0.0 {
                        continue;
                    }
                    tmp[(imu * d1 + im1) * d2 + im2] += f1 * f2 * c;
                }
            }
        }
    }
    let mut out = vec![0.0; d * d1 * d2];
    for im in 0..d {
        for im1 in 0..d1 {
            for im2 in 0..d2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for imu in 0..d {
                    let f = u.get(imu, im);
                    if f.norm_sqr() == 0.0 {
                        continue;
                    }
                    acc += f * tmp[(imu * d1 + im1) * d2 + im2];
                }
                debug_assert!(acc.im.abs() < 1e-11, "GG coefficient not real: {acc}");
                out[(im * d1 + im1) * d2 + im2] = acc.re;
            }
        }
    }
    out
}

/// Godunov–Gordienko coefficient from a prebuilt table; indices above the
/// table's degree bound are a range error, selection-rule zeros return 0.
pub fn gg_coeff(table: &GGTable, idx: &GGIndex) -> Result<f64> {
    if idx.ell1 > table.ell_max || idx.ell2 > table.ell_max || idx.ell > 2 * table.ell_max {
        return Err(Error::range(format!(
            "GG table built for ell1, ell2 <= {}, requested ({}, {}, {})",
            table.ell_max, idx.ell, idx.ell1, idx.ell2
        )));
    }
    Ok(table.entries.get(idx).copied().unwrap_or(0.0))
}

/// Integral of a triple product of real spherical harmonics over S² by
/// product quadrature of order ℓ1+ℓ2+ℓ3+2.
pub fn gaunt_numeric(i1: HarmonicIndex, i2: HarmonicIndex, i3: HarmonicIndex) -> f64 {
    let lsum = (i1.ell() + i2.ell() + i3.ell()) as usize;
    let grid = sphere_grid(lsum + 2, 2 * lsum + 4);
    let mut s = 0.0;
    for p in &grid {
        s += p.weight
            * real_sph_harm(i1, p.theta, p.phi)
            * real_sph_harm(i2, p.theta, p.phi)
            * real_sph_harm(i3, p.theta, p.phi);
    }
    s
}

/// The 6x6 matrix of X ↦ R X Rᵀ on symmetric matrices in the Mandel indexing
/// convention; orthogonal and multiplicative in R.
pub fn mandel_rotation(r: &Rotation3) -> Result<Mandel6> {
    if r.orthogonality_defect() > 1e-10 {
        return Err(Error::domain("mandel_rotation requires an orthogonal matrix".to_string()));
    }
    Ok(mandel_rotation_unchecked(r))
}

pub(crate) fn mandel_rotation_unchecked(r: &Rotation3) -> Mandel6 {
    let m = &r.0;
    let mut q = [[0.0; 6]; 6];
    for (a, qa) in q.iter_mut().enumerate() {
        let (i, j) = MANDEL_PAIRS[a];
        for (b, qab) in qa.iter_mut().enumerate() {
            let (k, l) = MANDEL_PAIRS[b];
            *qab = MANDEL_WEIGHTS[a] * MANDEL_WEIGHTS[b] * 0.5
                * (m[i][k] * m[j][l] + m[i][l] * m[j][k]);
        }
    }
    Mandel6(q)
}

/// Number of copies of the degree-ℓ irreducible in the rank-r tensor power
/// decomposition, for r >= 2 and 0 <= ℓ <= r.
pub fn multiplicity(ell: u32, r: u32) -> Result<u64> {
    if r < 2 {
        return Err(Error::domain(format!("multiplicity requires r >= 2, got {r}")));
    }
    if ell > r {
        return Ok(0);
    }
    let binom = |n: i64, k: i64| -> i64 {
        if n < 0 || k < 0 || k > n {
            return 0;
        }
        let mut acc: i64 = 1;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    };
    let r_i = r as i64;
    let l_i = ell as i64;
    let mut total: i64 = 0;
    for k in 0..=((r_i - l_i) / 3) {
        let term = binom(r_i, k) * binom(2 * r_i - 3 * k - l_i - 2, r_i - 2);
        total += if k % 2 == 0 { term } else { -term };
    }
    if total < 0 {
        return Err(Error::range(format!("multiplicity({ell}, {r}) evaluated negative")));
    }
    Ok(total as u64)
}
