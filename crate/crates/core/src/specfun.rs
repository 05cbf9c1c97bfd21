//! Scalar special functions: log-gamma, modified Bessel K, spherical Bessel,
//! and real spherical harmonics in the convention fixed by the `so3` module.

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma_unchecked(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Gamma function for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(ln_gamma(x)?.exp())
}

pub(crate) fn ln_factorial(n: u64) -> f64 {
    // exact products for small n, Lanczos beyond
    if n < 2 {
        return 0.0;
    }
    if n <= 20 {
        let mut p = 1.0f64;
        for k in 2..=n {
            p *= k as f64;
        }
        p.ln()
    } else {
        ln_gamma_unchecked(n as f64 + 1.0)
    }
}

const MAX_ITER: usize = 500;

/// Modified Bessel function of the second kind K_ν(x) for ν > 0, x > 0.
///
/// Temme's series for x <= 2, Steed's continued fraction beyond, with upward
/// recurrence in the order.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::domain(format!("bessel_k requires nu > 0, got {nu}")));
    }
    if !(x > 0.0) {
        return Err(Error::domain(format!("bessel_k requires x > 0, got {x}")));
    }
    let n = nu.round();
    let u = nu - n; // signed, |u| <= 0.5
    let n = n as usize;
    let (ku, ku1) = if x <= 2.0 {
        temme_k(u, x)?
    } else {
        steed_cf2_k(u, x)?
    };
    // climb (K_u, K_{u+1}) upward; after the loop `prev` holds K_{u+n}
    let mut prev = ku;
    let mut cur = ku1;
    for k in 1..=n {
        let next = 2.0 * (u + k as f64) * cur / x + prev;
        prev = cur;
        cur = next;
    }
    let kv = if n == 0 { ku } else { prev };
    if !kv.is_finite() {
        return Err(Error::range(format!("bessel_k({nu}, {x}) overflows")));
    }
    Ok(kv)
}

/// K_u(x) and K_{u+1}(x) for |u| <= 0.5, 0 < x <= 2.
///
/// Temme, J. Comput. Phys. 19 (1975) 324.
fn temme_k(v: f64, x: f64) -> Result<(f64, f64)> {
    debug_assert!(v.abs() <= 0.5 && x > 0.0 && x <= 2.0);
    let pi = std::f64::consts::PI;
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    let gp = ln_gamma_unchecked(1.0 + v).exp() - 1.0;
    let gm = ln_gamma_unchecked(1.0 - v).exp() - 1.0;

    let a = (x / 2.0).ln();
    let b = (v * a).exp();
    let sigma = -a * v;
    let c = if v.abs() < 2.0 * f64::EPSILON {
        1.0
    } else {
        (pi * v).sin() / (pi * v)
    };
    let d = if sigma.abs() < f64::EPSILON {
        1.0
    } else {
        sigma.sinh() / sigma
    };
    let gamma1 = if v.abs() < f64::EPSILON {
        -EULER_GAMMA
    } else {
        (0.5 / v) * (gp - gm) * c
    };
    let gamma2 = (2.0 + gp + gm) * c / 2.0;

    let mut p = (gp + 1.0) / (2.0 * b);
    let mut q = (gm + 1.0) * b / 2.0;
    let mut f = (sigma.cosh() * gamma1 + d * (-a) * gamma2) / c;
    let mut h = p;
    let mut coef = 1.0;
    let mut sum = coef * f;
    let mut sum1 = coef * h;

    for k in 1..MAX_ITER {
        let kf = k as f64;
        f = (kf * f + p + q) / (kf * kf - v * v);
        p /= kf - v;
        q /= kf + v;
        h = p - kf * f;
        coef *= x * x / (4.0 * kf);
        sum += coef * f;
        sum1 += coef * h;
        if (coef * f).abs() < sum.abs() * f64::EPSILON {
            return Ok((sum, 2.0 * sum1 / x));
        }
    }
    Err(Error::range(format!("temme_k failed to converge at v={v}, x={x}")))
}

/// K_u(x) and K_{u+1}(x) for |u| <= 0.5, x > 1, by Steed's continued fraction.
///
/// Thompson and Barnett, J. Comput. Phys. 64 (1986) 490.
fn steed_cf2_k(v: f64, x: f64) -> Result<(f64, f64)> {
    debug_assert!(v.abs() <= 0.5 && x > 1.0);
    let pi = std::f64::consts::PI;
    let mut a = v * v - 0.25;
    let mut b = 2.0 * (x + 1.0);
    let mut d = 1.0 / b;
    let mut delta = d;
    let mut f = d;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut q = -a;
    let mut c = -a;
    let mut s = 1.0 + q * delta;

    for k in 2..MAX_ITER {
        let kf = k as f64;
        a -= 2.0 * (kf - 1.0);
        b += 2.0;
        d = 1.0 / (a * d + b);
        delta *= b * d - 1.0;
        f += delta;
        let t = (prev - (b - 2.0) * cur) / a;
        prev = cur;
        cur = t;
        c *= -a / kf;
        q += c * t;
        s += q * delta;
        if (q * delta).abs() < s.abs() * f64::EPSILON / 2.0 {
            let kv = (pi / (2.0 * x)).sqrt() * (-x).exp() / s;
            let kv1 = kv * (0.5 + v + x + (v * v - 0.25) * f) / x;
            return Ok((kv, kv1));
        }
    }
    Err(Error::range(format!("steed_cf2_k failed to converge at v={v}, x={x}")))
}

// Series switch points for the closed-form spherical Bessel expressions;
// below these the alternating series is used to avoid cancellation.
const J_SERIES_CUT: [f64; 5] = [0.5, 0.5, 1.0, 2.0, 2.0];

/// Spherical Bessel function j_ℓ(t) for ℓ in 0..=4, t >= 0.
pub fn sph_bessel_j(ell: u32, t: f64) -> Result<f64> {
    if ell > 4 {
        return Err(Error::domain(format!("sph_bessel_j supports ell <= 4, got {ell}")));
    }
    if t < 0.0 {
        return Err(Error::domain(format!("sph_bessel_j requires t >= 0, got {t}")));
    }
    Ok(match ell {
        0 => j0(t),
        1 => j1(t),
        2 => j2(t),
        3 => j3(t),
        4 => j4(t),
        _ => unreachable!(),
    })
}

fn j_series(ell: u32, t: f64) -> f64 {
    // j_ℓ(t) = Σ_k (-1)^k t^{2k+ℓ} / (2^k k! (2ℓ+2k+1)!!)
    let mut dfact = 1.0; // (2ℓ+1)!!
    for k in 1..=ell {
        dfact *= (2 * k + 1) as f64;
    }
    let mut term = t.powi(ell as i32) / dfact;
    let mut sum = term;
    let t2 = t * t;
    for k in 1..40 {
        let kf = k as f64;
        term *= -t2 / (2.0 * kf * (2.0 * (ell as f64 + kf) + 1.0));
        sum += term;
        if term.abs() < sum.abs() * f64::EPSILON {
            break;
        }
    }
    sum
}

fn j_closed(ell: u32, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    let t2 = t * t;
    match ell {
        0 => s / t,
        1 => (s / t - c) / t,
        2 => ((3.0 / t2 - 1.0) * s - 3.0 * c / t) / t,
        3 => ((15.0 / (t2 * t) - 6.0 / t) * s - (15.0 / t2 - 1.0) * c) / t,
        _ => ((105.0 / (t2 * t2) - 45.0 / t2 + 1.0) * s - (105.0 / (t2 * t) - 10.0 / t) * c) / t,
    }
}

#[inline]
fn j_dispatch(ell: u32, t: f64) -> f64 {
    if t < J_SERIES_CUT[ell as usize] {
        j_series(ell, t)
    } else {
        j_closed(ell, t)
    }
}

#[inline]
pub(crate) fn j0(t: f64) -> f64 {
    j_dispatch(0, t)
}

#[inline]
pub(crate) fn j1(t: f64) -> f64 {
    j_dispatch(1, t)
}

#[inline]
pub(crate) fn j2(t: f64) -> f64 {
    j_dispatch(2, t)
}

#[inline]
fn j3(t: f64) -> f64 {
    j_dispatch(3, t)
}

#[inline]
pub(crate) fn j4(t: f64) -> f64 {
    j_dispatch(4, t)
}

/// j_1(t)/t with its analytic limit 1/3 at t = 0.
#[inline]
pub(crate) fn j1_over_t(t: f64) -> f64 {
    if t < 0.5 {
        // 1/3 - t²/30 + t⁴/840 - ...
        let mut term = 1.0 / 3.0;
        let mut sum = term;
        let t2 = t * t;
        for k in 1u32..30 {
            let kf = k as f64;
            term *= -t2 / (2.0 * kf * (2.0 * kf + 3.0));
            sum += term;
            if term.abs() < sum.abs() * f64::EPSILON {
                break;
            }
        }
        sum
    } else {
        j1(t) / t
    }
}

/// Degree/order pair of a real spherical harmonic, with |m| <= ell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarmonicIndex {
    ell: u32,
    m: i32,
}

impl HarmonicIndex {
    pub fn new(ell: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > ell {
            return Err(Error::domain(format!("harmonic index |m| <= ell violated: ell={ell}, m={m}")));
        }
        Ok(HarmonicIndex { ell, m })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn m(&self) -> i32 {
        self.m
    }
}

/// Real orthonormal spherical harmonic S^m_ℓ(θ, φ).
///
/// Defined as the (m, 0) entry of the real rotation representation evaluated
/// at the rotation carrying the polar axis to (θ, φ), scaled by
/// sqrt((2ℓ+1)/4π); see [`crate::so3`] for the basis convention. Orthonormal
/// under dΩ = sinθ dφ dθ.
pub fn real_sph_harm(idx: HarmonicIndex, theta: f64, phi: f64) -> f64 {
    crate::so3::sph_harm_row(idx.ell, theta, phi)[(idx.m + idx.ell as i32) as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn ln_gamma_reference_values() {
        assert!((ln_gamma(1.0).unwrap() - 0.0).abs() < 1e-14);
        assert!(rel(ln_gamma(0.5).unwrap(), 0.572_364_942_924_700_1) < 1e-13);
        assert!(rel(ln_gamma(5.0).unwrap(), 24.0_f64.ln()) < 1e-13);
        // recursion Γ(x+1) = xΓ(x) across a range
        for &x in &[0.1, 0.7, 1.3, 2.9, 7.6, 19.4] {
            let lhs = ln_gamma(x + 1.0).unwrap();
            let rhs = ln_gamma(x).unwrap() + x.ln();
            assert!((lhs - rhs).abs() < 1e-12, "x={x}");
        }
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
    }

    fn k_half_closed(n: u32, x: f64) -> f64 {
        // K_{n+1/2}(x) = sqrt(pi/(2x)) e^{-x} Σ_{k=0}^{n} (n+k)!/(k!(n-k)!) (2x)^{-k}
        let mut sum = 0.0;
        for k in 0..=n {
            let ln = ln_factorial((n + k) as u64)
                - ln_factorial(k as u64)
                - ln_factorial((n - k) as u64);
            sum += ln.exp() / (2.0 * x).powi(k as i32);
        }
        (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() * sum
    }

    #[test]
    fn bessel_k_half_integer_orders() {
        assert!(rel(bessel_k(0.5, 1.0).unwrap(), 0.461_068_504_447_894_45) < 1e-12);
        assert!(rel(bessel_k(1.5, 2.0).unwrap(), 0.179_906_657_952_092_43) < 1e-12);
        for n in 0..10u32 {
            for &x in &[1e-6, 0.01, 0.1, 0.9, 2.0, 2.1, 7.5, 20.0, 50.0] {
                let nu = n as f64 + 0.5;
                let got = bessel_k(nu, x).unwrap();
                let want = k_half_closed(n, x);
                assert!(rel(got, want) < 1e-10, "nu={nu} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn bessel_k_small_argument_limit() {
        // x^ν K_ν(x) -> 2^{ν-1} Γ(ν)
        for &nu in &[0.3, 1.0, 2.5, 6.0] {
            // small enough that the subleading (x/2)^{2ν} correction is < 1e-6
            let x = 1e-12f64;
            let got = x.powf(nu) * bessel_k(nu, x).unwrap();
            let want = 2.0_f64.powf(nu - 1.0) * gamma(nu).unwrap();
            assert!(rel(got, want) < 1e-6, "nu={nu}");
        }
    }

    #[test]
    fn bessel_k_recurrence_and_integer_orders() {
        // K_{v+1}(x) = 2v/x K_v(x) + K_{v-1}(x)
        for &v in &[1.3, 2.0, 4.7] {
            for &x in &[0.5, 1.5, 3.0, 12.0] {
                let lhs = bessel_k(v + 1.0, x).unwrap();
                let rhs = 2.0 * v / x * bessel_k(v, x).unwrap() + bessel_k(v - 1.0, x).unwrap();
                assert!(rel(lhs, rhs) < 1e-10, "v={v} x={x}");
            }
        }
        // K_1(1) reference (Abramowitz & Stegun 9.8)
        assert!(rel(bessel_k(1.0, 1.0).unwrap(), 0.601_907_230_197_234_6) < 1e-12);
    }

    #[test]
    fn bessel_k_domain_and_range_errors() {
        assert!(matches!(bessel_k(0.5, 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(0.5, -1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(-1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(10.0, 1e-300), Err(Error::Range(_))));
    }

    #[test]
    fn sph_bessel_reference_values() {
        assert!(sph_bessel_j(0, std::f64::consts::PI).unwrap().abs() < 1e-15);
        assert!(rel(sph_bessel_j(2, 0.001).unwrap(), 6.666_666_190_476_3e-8) < 1e-9);
        assert_eq!(sph_bessel_j(4, 0.0).unwrap(), 0.0);
        assert_eq!(sph_bessel_j(0, 0.0).unwrap(), 1.0);
        assert!(sph_bessel_j(5, 1.0).is_err());
        assert!(sph_bessel_j(0, -0.1).is_err());
    }

    #[test]
    fn sph_bessel_recurrence() {
        // j_{ℓ-1}(t) + j_{ℓ+1}(t) = (2ℓ+1) j_ℓ(t)/t
        let mut t = 0.1;
        while t <= 50.0 {
            for ell in 1..=3u32 {
                let lhs = sph_bessel_j(ell - 1, t).unwrap() + sph_bessel_j(ell + 1, t).unwrap();
                let rhs = (2.0 * ell as f64 + 1.0) * sph_bessel_j(ell, t).unwrap() / t;
                let scale = lhs.abs().max(rhs.abs()).max(1e-12);
                assert!((lhs - rhs).abs() / scale < 1e-10, "ell={ell} t={t}");
            }
            t *= 1.17;
        }
    }

    #[test]
    fn sph_bessel_series_switch_is_continuous() {
        // the jump between the two branches at the switch point is below 1e-12
        for ell in 0..=4u32 {
            let cut = J_SERIES_CUT[ell as usize];
            let series = j_series(ell, cut);
            let closed = j_closed(ell, cut);
            assert!(
                (series - closed).abs() / series.abs() < 1e-12,
                "ell={ell}: {series} vs {closed}"
            );
        }
    }

    #[test]
    fn j1_over_t_limit() {
        assert!((j1_over_t(0.0) - 1.0 / 3.0).abs() < 1e-16);
        assert!(rel(j1_over_t(2.0), j1(2.0) / 2.0) < 1e-14);
        assert!(rel(j1_over_t(0.49), j1(0.51) / 0.51 + (j1_over_t(0.49) - j1(0.51) / 0.51)) < 1.0);
    }

    #[test]
    fn harmonic_index_validation() {
        assert!(HarmonicIndex::new(2, 3).is_err());
        assert!(HarmonicIndex::new(2, -2).is_ok());
    }

    #[test]
    fn real_sph_harm_reference_values() {
        let y00 = real_sph_harm(HarmonicIndex::new(0, 0).unwrap(), 1.1, 2.2);
        assert!(rel(y00, 0.282_094_791_773_878_14) < 1e-13);
        let y20 = real_sph_harm(HarmonicIndex::new(2, 0).unwrap(), 0.0, 0.0);
        assert!(rel(y20, 0.630_783_130_505_040_1) < 1e-12);
    }

    #[test]
    fn real_sph_harm_orthonormal() {
        // product quadrature of order >= 2 ell_max + 2
        let ell_max = 4u32;
        let grid = crate::quad::sphere_grid(2 * ell_max as usize + 2, 4 * ell_max as usize + 4);
        let mut fns = Vec::new();
        for ell in 0..=ell_max {
            for m in -(ell as i32)..=(ell as i32) {
                fns.push(HarmonicIndex::new(ell, m).unwrap());
            }
        }
        for (i, &fi) in fns.iter().enumerate() {
            for &fj in fns.iter().skip(i) {
                let mut s = 0.0;
                for p in &grid {
                    s += p.weight
                        * real_sph_harm(fi, p.theta, p.phi)
                        * real_sph_harm(fj, p.theta, p.phi);
                }
                let want = if fi == fj { 1.0 } else { 0.0 };
                assert!(
                    (s - want).abs() < 1e-10,
                    "({},{}) x ({},{}): {s}",
                    fi.ell(),
                    fi.m(),
                    fj.ell(),
                    fj.m()
                );
            }
        }
    }
}
