//! Rank-4 covariant tensor bases, the Mandel flattening and its inverse, the
//! extreme points of the admissible convex bodies, barycentric coordinates
//! for the two-component triangle model, and the rotation (Haar) average.

use crate::error::{Error, Result};
use crate::linalg;
use crate::quad::gauss_legendre;
use crate::so3::{mandel_rotation_unchecked, Rotation3};

/// Index pairs of the 6-dimensional Mandel basis, as coordinate slots 0,1,2
/// for (x_{-1}, x_0, x_1): ((-1,-1),(0,0),(1,1),(-1,0),(0,1),(1,-1)).
pub const MANDEL_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)];

/// Component weights of the Mandel embedding (√2 on the mixed pairs).
pub const MANDEL_WEIGHTS: [f64; 6] = [
    1.0,
    1.0,
    1.0,
    std::f64::consts::SQRT_2,
    std::f64::consts::SQRT_2,
    std::f64::consts::SQRT_2,
];

/// 6x6 real matrix in the Mandel pair convention above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mandel6(pub [[f64; 6]; 6]);

impl Mandel6 {
    pub fn zeros() -> Self {
        Mandel6([[0.0; 6]; 6])
    }

    pub fn identity() -> Self {
        let mut m = [[0.0; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Mandel6(m)
    }

    pub fn add(&self, other: &Mandel6) -> Mandel6 {
        let mut out = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                out[i][j] = self.0[i][j] + other.0[i][j];
            }
        }
        Mandel6(out)
    }

    pub fn scale(&self, s: f64) -> Mandel6 {
        let mut out = self.0;
        for row in out.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        Mandel6(out)
    }

    pub fn mul(&self, other: &Mandel6) -> Mandel6 {
        let mut out = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                out[i][j] = (0..6).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Mandel6(out)
    }

    pub fn transpose(&self) -> Mandel6 {
        let mut out = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                out[i][j] = self.0[j][i];
            }
        }
        Mandel6(out)
    }

    pub fn apply(&self, v: &[f64; 6]) -> [f64; 6] {
        let mut out = [0.0; 6];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..6).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..6).map(|i| self.0[i][i]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Mandel6) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }

    /// Max-abs deviation from symmetry.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..6 {
            for j in (i + 1)..6 {
                worst = worst.max((self.0[i][j] - self.0[j][i]).abs());
            }
        }
        worst
    }

    /// Eigenvalues (ascending) of the symmetric part.
    pub fn eigenvalues(&self) -> [f64; 6] {
        let mut flat = [0.0; 36];
        for i in 0..6 {
            for j in 0..6 {
                flat[i * 6 + j] = 0.5 * (self.0[i][j] + self.0[j][i]);
            }
        }
        let v = linalg::sym_eigenvalues(&flat, 6);
        [v[0], v[1], v[2], v[3], v[4], v[5]]
    }

    /// Conjugation Q · self · Qᵀ.
    pub fn conjugate_by(&self, q: &Mandel6) -> Mandel6 {
        q.mul(self).mul(&q.transpose())
    }
}

/// Mandel 6-vector of a symmetric 3x3 matrix.
pub fn mandel_vec(m: &[[f64; 3]; 3]) -> [f64; 6] {
    let mut v = [0.0; 6];
    for (a, (i, j)) in MANDEL_PAIRS.iter().enumerate() {
        v[a] = MANDEL_WEIGHTS[a] * m[*i][*j];
    }
    v
}

/// Symmetric 3x3 matrix from its Mandel 6-vector.
pub fn mandel_vec_inv(v: &[f64; 6]) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for (a, (i, j)) in MANDEL_PAIRS.iter().enumerate() {
        let x = v[a] / MANDEL_WEIGHTS[a];
        m[*i][*j] = x;
        m[*j][*i] = x;
    }
    m
}

/// Symmetric rank-4 tensor over R³ with the pair symmetries
/// f_{ijkl} = f_{jikl} = f_{ijlk} = f_{klij}; indices run over (x_{-1}, x_0, x_1).
#[derive(Debug, Clone, PartialEq)]
pub struct Rank4Sym {
    c: [f64; 81],
}

#[inline]
fn r4idx(i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * 3 + j) * 3 + k) * 3 + l
}

impl Rank4Sym {
    pub fn zeros() -> Self {
        Rank4Sym { c: [0.0; 81] }
    }

    /// Validating constructor from raw components (coordinate order
    /// (x_{-1}, x_0, x_1) on each slot).
    pub fn new(c: [f64; 81]) -> Result<Self> {
        let t = Rank4Sym { c };
        let defect = t.symmetry_defect();
        let scale = t.c.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        if defect > 1e-12 * scale {
            return Err(Error::domain(format!("rank-4 components violate the pair symmetries (defect {defect:.3e})")));
        }
        Ok(t)
    }

    pub(crate) fn from_fn(f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let mut c = [0.0; 81];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        c[r4idx(i, j, k, l)] = f(i, j, k, l);
                    }
                }
            }
        }
        let t = Rank4Sym { c };
        debug_assert!(t.symmetry_defect() < 1e-12 * t.max_abs().max(1.0));
        t
    }

    /// Component by coordinate labels in {-1, 0, 1}.
    pub fn get(&self, i: i8, j: i8, k: i8, l: i8) -> f64 {
        let u = |x: i8| (x + 1) as usize;
        self.c[r4idx(u(i), u(j), u(k), u(l))]
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.c[r4idx(i, j, k, l)]
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let v = self.c[r4idx(i, j, k, l)];
                        worst = worst.max((v - self.c[r4idx(j, i, k, l)]).abs());
                        worst = worst.max((v - self.c[r4idx(i, j, l, k)]).abs());
                        worst = worst.max((v - self.c[r4idx(k, l, i, j)]).abs());
                    }
                }
            }
        }
        worst
    }

    pub fn add(&self, other: &Rank4Sym) -> Rank4Sym {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(other.c.iter()) {
            *a += b;
        }
        Rank4Sym { c }
    }

    pub fn scale(&self, s: f64) -> Rank4Sym {
        let mut c = self.c;
        for a in c.iter_mut() {
            *a *= s;
        }
        Rank4Sym { c }
    }

    pub fn axpy(&mut self, s: f64, other: &Rank4Sym) {
        for (a, b) in self.c.iter_mut().zip(other.c.iter()) {
            *a += s * b;
        }
    }

    /// Full 81-component contraction ⟨f, g⟩.
    pub fn dot(&self, other: &Rank4Sym) -> f64 {
        self.c.iter().zip(other.c.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs_diff(&self, other: &Rank4Sym) -> f64 {
        self.c
            .iter()
            .zip(other.c.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Separation vector y - x with its norm; coordinates (x_{-1}, x_0, x_1).
#[derive(Debug, Clone, Copy)]
pub struct Separation {
    pub r: [f64; 3],
    pub rho: f64,
}

impl Separation {
    pub fn between(x: &[f64; 3], y: &[f64; 3]) -> Self {
        let r = [y[0] - x[0], y[1] - x[1], y[2] - x[2]];
        let rho = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        Separation { r, rho }
    }

    pub fn from_vector(r: [f64; 3]) -> Self {
        Separation::between(&[0.0; 3], &r)
    }

    /// Unit direction, if the separation is nonzero.
    pub fn unit(&self) -> Option<[f64; 3]> {
        if self.rho == 0.0 {
            None
        } else {
            Some([self.r[0] / self.rho, self.r[1] / self.rho, self.r[2] / self.rho])
        }
    }

    /// Colatitude and azimuth of the direction: x_0 = ρ cosθ,
    /// x_{-1} = ρ sinθ sinφ, x_1 = ρ sinθ cosφ.
    pub fn angles(&self) -> Option<(f64, f64)> {
        let u = self.unit()?;
        let theta = u[1].clamp(-1.0, 1.0).acos();
        let phi = u[0].atan2(u[2]).rem_euclid(2.0 * std::f64::consts::PI);
        Some((theta, phi))
    }
}

/// Unit-normalized covariant basis tensor L^q evaluated at a separation:
/// L¹ = δδ, L² = δδ+δδ, and the direction-dependent L³, L⁴, L⁵ divided by
/// ‖r‖², ‖r‖², ‖r‖⁴ respectively. Direction-dependent tensors need ρ > 0.
pub fn l_basis(q: u8, s: &Separation) -> Result<Rank4Sym> {
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    match q {
        1 => Ok(Rank4Sym::from_fn(|i, j, k, l| d(i, j) * d(k, l))),
        2 => Ok(Rank4Sym::from_fn(|i, j, k, l| d(i, k) * d(j, l) + d(i, l) * d(j, k))),
        3..=5 => {
            let u = s.unit().ok_or_else(|| {
                Error::domain(format!("L^{q} is direction-dependent and undefined at zero separation"))
            })?;
            Ok(match q {
                3 => Rank4Sym::from_fn(|i, j, k, l| {
                    d(i, l) * u[j] * u[k] + d(j, k) * u[i] * u[l] + d(j, l) * u[i] * u[k] + d(i, k) * u[j] * u[l]
                }),
                4 => Rank4Sym::from_fn(|i, j, k, l| d(k, l) * u[i] * u[j] + d(i, j) * u[k] * u[l]),
                _ => Rank4Sym::from_fn(|i, j, k, l| u[i] * u[j] * u[k] * u[l]),
            })
        }
        _ => Err(Error::domain(format!("covariant basis index q must lie in 1..=5, got {q}"))),
    }
}

/// Mandel flattening of a symmetric rank-4 tensor.
pub fn tau(f: &Rank4Sym) -> Mandel6 {
    let mut m = [[0.0; 6]; 6];
    for (a, row) in m.iter_mut().enumerate() {
        let (i, j) = MANDEL_PAIRS[a];
        for (b, v) in row.iter_mut().enumerate() {
            let (k, l) = MANDEL_PAIRS[b];
            *v = MANDEL_WEIGHTS[a] * MANDEL_WEIGHTS[b] * f.at(i, j, k, l);
        }
    }
    Mandel6(m)
}

/// Inverse of [`tau`]; the input must be symmetric.
pub fn tau_inv(m: &Mandel6) -> Result<Rank4Sym> {
    let scale = m.frobenius().max(1.0);
    if m.asymmetry() > 1e-12 * scale {
        return Err(Error::domain(format!("tau_inv requires a symmetric matrix (defect {:.3e})", m.asymmetry())));
    }
    let mut pair_slot = [[0usize; 3]; 3];
    for (a, (i, j)) in MANDEL_PAIRS.iter().enumerate() {
        pair_slot[*i][*j] = a;
        pair_slot[*j][*i] = a;
    }
    Ok(Rank4Sym::from_fn(|i, j, k, l| {
        let a = pair_slot[i][j];
        let b = pair_slot[k][l];
        0.5 * (m.0[a][b] + m.0[b][a]) / (MANDEL_WEIGHTS[a] * MANDEL_WEIGHTS[b])
    }))
}

/// Labels of the extreme-point matrices of the admissible convex bodies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtremePointId {
    C1,
    C2,
    D1,
    D2,
    /// Point of the extreme ellipse at parameter θ ∈ [0, 2π).
    Dtheta(f64),
    D3,
    D4,
    D5,
}

/// Ellipse parameter at which D^θ coincides with C¹.
pub fn ellipse_theta_star() -> f64 {
    2.0 * (2.0f64 / 3.0).sqrt().asin()
}

/// The extreme-point matrices, symmetric PSD with unit trace.
pub fn extreme_point(id: ExtremePointId) -> Mandel6 {
    fn set(m: &mut [[f64; 6]; 6], i: usize, j: usize, v: f64) {
        m[i][j] = v;
        m[j][i] = v;
    }
    let mut m = [[0.0f64; 6]; 6];
    match id {
        ExtremePointId::C1 => {
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = 1.0 / 3.0;
                }
            }
        }
        ExtremePointId::C2 => {
            for i in 0..3 {
                m[i][i] = 2.0 / 15.0;
                m[i + 3][i + 3] = 1.0 / 5.0;
            }
            set(&mut m, 0, 1, -1.0 / 15.0);
            set(&mut m, 0, 2, -1.0 / 15.0);
            set(&mut m, 1, 2, -1.0 / 15.0);
        }
        ExtremePointId::D1 => {
            m[3][3] = 0.5;
            m[4][4] = 0.5;
        }
        ExtremePointId::D2 => {
            m[0][0] = 0.25;
            m[2][2] = 0.25;
            set(&mut m, 0, 2, -0.25);
            m[5][5] = 0.5;
        }
        ExtremePointId::Dtheta(theta) => {
            let sh = (theta / 2.0).sin();
            let ch = (theta / 2.0).cos();
            let s2 = 0.5 * sh * sh;
            m[0][0] = s2;
            m[2][2] = s2;
            set(&mut m, 0, 2, s2);
            m[1][1] = ch * ch;
            let off = theta.sin() / (2.0 * std::f64::consts::SQRT_2);
            set(&mut m, 0, 1, off);
            set(&mut m, 1, 2, off);
        }
        ExtremePointId::D3 => return extreme_point(ExtremePointId::Dtheta(ellipse_theta_star())),
        ExtremePointId::D4 => {
            m[0][0] = 1.0 / 6.0;
            m[2][2] = 1.0 / 6.0;
            set(&mut m, 0, 2, 1.0 / 6.0);
            m[1][1] = 2.0 / 3.0;
            set(&mut m, 0, 1, -1.0 / 3.0);
            set(&mut m, 1, 2, -1.0 / 3.0);
        }
        ExtremePointId::D5 => {
            m[0][0] = 0.5;
            m[2][2] = 0.5;
            set(&mut m, 0, 2, 0.5);
        }
    }
    Mandel6(m)
}

/// Vertices of the triangle inscribed in the admissible disc of 2x2 symmetric
/// unit-trace matrices, entered verbatim.
pub fn triangle_vertices() -> [[[f64; 2]; 2]; 3] {
    let s3 = 3.0f64.sqrt();
    [
        [[0.0, 0.0], [0.0, 1.0]],
        [[0.25, 0.25 * s3], [0.25 * s3, 0.75]],
        [[0.25, -0.25 * s3], [-0.25 * s3, 0.75]],
    ]
}

/// Barycentric coordinates of a symmetric unit-trace 2x2 matrix with respect
/// to the triangle vertices. A negative coordinate means the matrix lies
/// outside the triangle and is reported as a containment error.
pub fn barycentric_triangle(m: &[[f64; 2]; 2]) -> Result<[f64; 3]> {
    if (m[0][1] - m[1][0]).abs() > 1e-12 {
        return Err(Error::domain("barycentric_triangle requires a symmetric matrix".to_string()));
    }
    let trace = m[0][0] + m[1][1];
    if (trace - 1.0).abs() > 1e-12 {
        return Err(Error::domain(format!("barycentric_triangle requires unit trace, got {trace}")));
    }
    let v = triangle_vertices();
    // unknowns (a1,a2,a3): match the (0,0) and (0,1) entries plus Σa = 1
    let a = [
        [v[0][0][0], v[1][0][0], v[2][0][0]],
        [v[0][0][1], v[1][0][1], v[2][0][1]],
        [1.0, 1.0, 1.0],
    ];
    let b = [m[0][0], m[0][1], 1.0];
    let coords = linalg::solve3(a, b)
        .ok_or_else(|| Error::domain("triangle vertex system is singular".to_string()))?;
    let coords = [coords[0], coords[1], coords[2]];
    if coords.iter().any(|&c| c < -1e-12) {
        return Err(Error::Containment { coords });
    }
    Ok(coords)
}

/// Average of Q(R) · M · Q(R)ᵀ over the rotation group, by product quadrature
/// in the Euler angles.
pub fn isotropic_average(m: &Mandel6) -> Mandel6 {
    let n = 12usize;
    let (ct, wt) = gauss_legendre(n);
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let mut acc = Mandel6::zeros();
    let mut wsum = 0.0;
    for (c, w) in ct.iter().zip(&wt) {
        let theta = c.acos();
        for ip in 0..n {
            let psi = step * ip as f64;
            for iph in 0..n {
                let phi = step * iph as f64;
                let r = Rotation3::about_x0(phi)
                    .compose(&Rotation3::about_xm1(theta))
                    .compose(&Rotation3::about_x0(psi));
                let q = mandel_rotation_unchecked(&r);
                let weight = w * step * step;
                acc = acc.add(&m.conjugate_by(&q).scale(weight));
                wsum += weight;
            }
        }
    }
    acc.scale(1.0 / wsum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::so3::{mandel_rotation, rotation_from_euler, EulerAngles};
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_rank4(rng: &mut StdRng) -> Rank4Sym {
        let mut base: Vec<((usize, usize), (usize, usize), f64)> = Vec::new();
        for a in 0..6 {
            for b in a..6 {
                base.push((MANDEL_PAIRS[a], MANDEL_PAIRS[b], rng.random_range(-1.0..1.0)));
            }
        }
        Rank4Sym::from_fn(|i, j, k, l| {
            for &((pi, pj), (pk, pl), v) in &base {
                let m1 = (i == pi && j == pj) || (i == pj && j == pi);
                let m2 = (k == pk && l == pl) || (k == pl && l == pk);
                let m3 = (k == pi && l == pj) || (k == pj && l == pi);
                let m4 = (i == pk && j == pl) || (i == pl && j == pk);
                if (m1 && m2) || (m3 && m4) {
                    return v;
                }
            }
            0.0
        })
    }

    #[test]
    fn l_basis_reference_components() {
        let s = Separation::from_vector([0.3, -0.2, 0.9]);
        let l1 = l_basis(1, &s).unwrap();
        assert_eq!(l1.get(0, 0, 0, 0), 1.0);
        assert_eq!(l1.get(0, 0, 1, 1), 1.0);
        assert_eq!(l1.get(0, 1, 0, 1), 0.0);
        let l2 = l_basis(2, &s).unwrap();
        assert_eq!(l2.get(0, 1, 0, 1), 1.0);
        assert_eq!(l2.get(0, 0, 0, 0), 2.0);
        // r along x_0: only the all-zero component of L⁵ is 1
        let pole = Separation::from_vector([0.0, 2.5, 0.0]);
        let l5 = l_basis(5, &pole).unwrap();
        assert_eq!(l5.get(0, 0, 0, 0), 1.0);
        assert_eq!(l5.get(0, 0, 0, 1), 0.0);
        assert_eq!(l5.get(1, 1, 1, 1), 0.0);
        // degenerate direction
        let zero = Separation::from_vector([0.0, 0.0, 0.0]);
        assert!(l_basis(3, &zero).is_err());
        assert!(l_basis(1, &zero).is_ok());
        assert!(l_basis(6, &s).is_err());
    }

    #[test]
    fn l_basis_symmetries_hold_exactly() {
        let s = Separation::from_vector([1.0, 0.5, -0.25]);
        for q in 1..=5u8 {
            let l = l_basis(q, &s).unwrap();
            assert_eq!(l.symmetry_defect(), 0.0, "q={q}");
        }
    }

    #[test]
    fn l_basis_is_covariant() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..10 {
            let a = EulerAngles {
                psi: rng.random_range(0.0..std::f64::consts::TAU),
                theta: rng.random_range(0.0..std::f64::consts::PI),
                phi: rng.random_range(0.0..std::f64::consts::TAU),
            };
            let r = rotation_from_euler(&a);
            let q = mandel_rotation(&r).unwrap();
            let u = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0f64)];
            let s = Separation::from_vector(u);
            let ru = Separation::from_vector(r.apply(&u));
            for qi in 1..=5u8 {
                let rotated = tau(&l_basis(qi, &ru).unwrap());
                let conjugated = tau(&l_basis(qi, &s).unwrap()).conjugate_by(&q);
                assert!(rotated.max_abs_diff(&conjugated) < 1e-12, "q={qi}");
            }
        }
    }

    #[test]
    fn tau_reference_and_inverse() {
        let s = Separation::from_vector([1.0, 0.0, 0.0]);
        let t1 = tau(&l_basis(1, &s).unwrap());
        for i in 0..6 {
            for j in 0..6 {
                let want = if i < 3 && j < 3 { 1.0 } else { 0.0 };
                assert_eq!(t1.0[i][j], want);
            }
        }
        let mut rng = StdRng::seed_from_u64(37);
        for _ in 0..50 {
            let f = random_rank4(&mut rng);
            let back = tau_inv(&tau(&f)).unwrap();
            assert!(f.max_abs_diff(&back) < 1e-14);
            // Frobenius preservation
            let m = tau(&f);
            let full = f.dot(&f);
            let frob = m.frobenius();
            assert!((full - frob * frob).abs() < 1e-13 * full.max(1.0));
        }
        let mut asym = Mandel6::zeros();
        asym.0[0][1] = 1.0;
        assert!(tau_inv(&asym).is_err());
    }

    #[test]
    fn extreme_points_are_unit_trace_psd() {
        let all = [
            ExtremePointId::C1,
            ExtremePointId::C2,
            ExtremePointId::D1,
            ExtremePointId::D2,
            ExtremePointId::Dtheta(0.7),
            ExtremePointId::Dtheta(4.5),
            ExtremePointId::D3,
            ExtremePointId::D4,
            ExtremePointId::D5,
        ];
        for id in all {
            let m = extreme_point(id);
            assert!(m.asymmetry() < 1e-15, "{id:?}");
            assert!((m.trace() - 1.0).abs() < 1e-14, "{id:?}");
            let eigs = m.eigenvalues();
            assert!(eigs[0] >= -1e-14, "{id:?}: min eig {}", eigs[0]);
        }
    }

    #[test]
    fn simplex_identities() {
        // C² = (2/5)(D¹ + D²) + (1/5) D⁴ exactly
        let c2 = extreme_point(ExtremePointId::C2);
        let combo = extreme_point(ExtremePointId::D1)
            .add(&extreme_point(ExtremePointId::D2))
            .scale(0.4)
            .add(&extreme_point(ExtremePointId::D4).scale(0.2));
        assert!(c2.max_abs_diff(&combo) < 1e-16);
        // D^θ* = C¹
        let c1 = extreme_point(ExtremePointId::C1);
        let d3 = extreme_point(ExtremePointId::D3);
        assert!(c1.max_abs_diff(&d3) < 1e-15);
    }

    #[test]
    fn extreme_points_invariant_under_pole_stabilizer() {
        // conjugation by a rotation about the polar axis fixes every C₀ element
        for id in [
            ExtremePointId::D1,
            ExtremePointId::D2,
            ExtremePointId::Dtheta(1.3),
            ExtremePointId::D4,
            ExtremePointId::D5,
        ] {
            let m = extreme_point(id);
            for &psi in &[0.4, 1.9, 3.7] {
                let q = mandel_rotation(&Rotation3::about_x0(psi)).unwrap();
                let conj = m.conjugate_by(&q);
                assert!(m.max_abs_diff(&conj) < 1e-14, "{id:?} at psi={psi}");
            }
        }
    }

    #[test]
    fn barycentric_vertices_and_centroid() {
        let v = triangle_vertices();
        let a = barycentric_triangle(&v[0]).unwrap();
        assert!((a[0] - 1.0).abs() < 1e-13 && a[1].abs() < 1e-13 && a[2].abs() < 1e-13);
        let centroid = [
            [(v[0][0][0] + v[1][0][0] + v[2][0][0]) / 3.0, (v[0][0][1] + v[1][0][1] + v[2][0][1]) / 3.0],
            [(v[0][1][0] + v[1][1][0] + v[2][1][0]) / 3.0, (v[0][1][1] + v[1][1][1] + v[2][1][1]) / 3.0],
        ];
        let a = barycentric_triangle(&centroid).unwrap();
        for c in a {
            assert!((c - 1.0 / 3.0).abs() < 1e-13);
        }
    }

    #[test]
    fn barycentric_ball_center_lies_outside() {
        // the printed vertices are not equilateral; the disc center solves to
        // (-1, 1, 1) and is reported as a containment violation
        let m = [[0.5, 0.0], [0.0, 0.5]];
        match barycentric_triangle(&m) {
            Err(Error::Containment { coords }) => {
                let sum: f64 = coords.iter().sum();
                assert!((sum - 1.0).abs() < 1e-12);
                assert!((coords[0] + 1.0).abs() < 1e-12);
                assert!((coords[1] - 1.0).abs() < 1e-12);
                assert!((coords[2] - 1.0).abs() < 1e-12);
            }
            other => panic!("expected containment error, got {other:?}"),
        }
        assert!(barycentric_triangle(&[[0.5, 0.1], [0.0, 0.5]]).is_err());
        assert!(barycentric_triangle(&[[0.9, 0.0], [0.0, 0.5]]).is_err());
    }

    #[test]
    fn isotropic_average_fixes_invariants_and_projects() {
        let c1 = extreme_point(ExtremePointId::C1);
        assert!(isotropic_average(&c1).max_abs_diff(&c1) < 1e-12);
        let c2 = extreme_point(ExtremePointId::C2);
        assert!(isotropic_average(&c2).max_abs_diff(&c2) < 1e-12);
        // averaging D¹ lands in span{C¹, C²}: zero trace against C¹ here
        let avg = isotropic_average(&extreme_point(ExtremePointId::D1));
        // least-squares projection onto span{C1, C2}
        let g11 = c1.0.iter().flatten().zip(c1.0.iter().flatten()).map(|(a, b)| a * b).sum::<f64>();
        let g22 = c2.0.iter().flatten().zip(c2.0.iter().flatten()).map(|(a, b)| a * b).sum::<f64>();
        let g12 = c1.0.iter().flatten().zip(c2.0.iter().flatten()).map(|(a, b)| a * b).sum::<f64>();
        let b1 = avg.0.iter().flatten().zip(c1.0.iter().flatten()).map(|(a, b)| a * b).sum::<f64>();
        let b2 = avg.0.iter().flatten().zip(c2.0.iter().flatten()).map(|(a, b)| a * b).sum::<f64>();
        let det = g11 * g22 - g12 * g12;
        let x1 = (b1 * g22 - b2 * g12) / det;
        let x2 = (g11 * b2 - g12 * b1) / det;
        let proj = c1.scale(x1).add(&c2.scale(x2));
        assert!(avg.max_abs_diff(&proj) < 1e-8);
        // commutes with rotations
        let r = rotation_from_euler(&EulerAngles { psi: 0.3, theta: 1.0, phi: 2.0 });
        let q = mandel_rotation(&r).unwrap();
        let lhs = avg.mul(&q);
        let rhs = q.mul(&avg);
        assert!(lhs.max_abs_diff(&rhs) < 1e-8);
    }

    proptest! {
        #[test]
        fn tau_isometry_on_random_tensors(seed in 0u64..200) {
            let mut rng = StdRng::seed_from_u64(seed);
            let f = random_rank4(&mut rng);
            let g = random_rank4(&mut rng);
            let lhs = f.dot(&g);
            let mf = tau(&f);
            let mg = tau(&g);
            let rhs: f64 = (0..6).map(|i| (0..6).map(|j| mf.0[i][j] * mg.0[i][j]).sum::<f64>()).sum();
            prop_assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
        }

        #[test]
        fn mandel_vec_roundtrip(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0,
                                d in -5.0f64..5.0, e in -5.0f64..5.0, f in -5.0f64..5.0) {
            let m = [[a, d, f], [d, b, e], [f, e, c]];
            let back = mandel_vec_inv(&mandel_vec(&m));
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!((m[i][j] - back[i][j]).abs() < 1e-15);
                }
            }
            // norm preservation
            let full: f64 = m.iter().flatten().map(|x| x * x).sum();
            let v6: f64 = mandel_vec(&m).iter().map(|x| x * x).sum();
            prop_assert!((full - v6).abs() < 1e-12 * full.max(1.0));
        }
    }
}
