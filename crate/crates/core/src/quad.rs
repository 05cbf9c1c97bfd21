//! Gauss–Legendre rules and the product quadrature grid on the unit sphere.

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
///
/// Newton iteration on the Legendre polynomial, seeded with the Chebyshev
/// approximation of the roots. Accurate to machine precision for the orders
/// used here (n <= 64 per panel).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x.abs();
        weights[i] = w;
        nodes[n - 1 - i] = x.abs();
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // Force the middle node to exactly zero.
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_deriv(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    (
        x.iter().map(|&t| c + h * t).collect(),
        w.iter().map(|&t| t * h).collect(),
    )
}

/// One point of a sphere quadrature grid: direction angles, unit vector in
/// coordinates (x_{-1}, x_0, x_1), and weight (weights sum to 4π).
#[derive(Debug, Clone, Copy)]
pub struct SpherePoint {
    pub theta: f64,
    pub phi: f64,
    pub dir: [f64; 3],
    pub weight: f64,
}

/// Product rule on S²: Gauss–Legendre in cosθ times a uniform grid in φ.
///
/// Exact for spherical polynomials of degree up to `2*n_theta - 1` in cosθ
/// and azimuthal frequency below `n_phi`.
pub fn sphere_grid(n_theta: usize, n_phi: usize) -> Vec<SpherePoint> {
    let (ct, wt) = gauss_legendre(n_theta);
    let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let mut pts = Vec::with_capacity(n_theta * n_phi);
    for (&c, &w) in ct.iter().zip(&wt) {
        let theta = c.acos();
        let s = (1.0 - c * c).max(0.0).sqrt();
        for k in 0..n_phi {
            let phi = dphi * k as f64;
            pts.push(SpherePoint {
                theta,
                phi,
                dir: [s * phi.sin(), c, s * phi.cos()],
                weight: w * dphi,
            });
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        for n in [2usize, 5, 8, 17, 32, 64] {
            let (x, w) = gauss_legendre(n);
            assert_eq!(x.len(), n);
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-14, "n={n} weight sum {total}");
            // degree 2n-1 monomial: odd, integrates to zero
            let odd: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(2 * n as i32 - 1)).sum();
            assert!(odd.abs() < 1e-13);
            // degree 2n-2: 2/(2n-1)
            let even: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(2 * n as i32 - 2)).sum();
            assert!((even - 2.0 / (2.0 * n as f64 - 1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn gl_matches_known_5_point_rule() {
        let (x, w) = gauss_legendre(5);
        assert!((x[2]).abs() < 1e-16);
        assert!((w[2] - 128.0 / 225.0).abs() < 1e-15);
        assert!((x[4] - 0.906179845938664).abs() < 1e-13);
        assert!((w[4] - 0.236926885056189).abs() < 1e-13);
    }

    #[test]
    fn sphere_grid_integrates_harmonic_products() {
        let grid = sphere_grid(8, 16);
        let total: f64 = grid.iter().map(|p| p.weight).sum();
        assert!((total - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        // ∫ z² dΩ = 4π/3 with z the polar component x_0
        let zz: f64 = grid.iter().map(|p| p.weight * p.dir[1] * p.dir[1]).sum();
        assert!((zz - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
        // unit directions
        for p in &grid {
            let n2: f64 = p.dir.iter().map(|c| c * c).sum();
            assert!((n2 - 1.0).abs() < 1e-14);
        }
    }
}
