//! The Poisson-type kernel `K_α(z) = c_α (1−|z|²)^(α+1) / |1−z|^(α+2)`,
//! its Wirtinger gradients and its circular mean `M_α(r)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::special::{c_alpha, hyp2f1, HypParams};

/// Points with modulus at or above `1 − DISK_MARGIN` are rejected.
pub const DISK_MARGIN: f64 = 1e-12;

/// Default starting node count for the trapezoid rule.
pub const DEFAULT_QUAD_N: usize = 256;
/// Node count at which refinement gives up.
pub const MAX_QUAD_N: usize = 1 << 16;
/// Two successive refinements closer than this end the doubling.
pub const QUAD_REFINE_TOL: f64 = 1e-12;
const MIN_QUAD_N: usize = 16;

/// The exponent `α > −1` of the operator and kernel.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > -1.0 && alpha.is_finite() {
            Ok(Self(alpha))
        } else {
            domain(format!("alpha must be a finite number > -1, got {alpha}"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `c_α`; always finite and positive for a validated exponent.
    pub fn c(self) -> f64 {
        c_alpha(self.0).expect("alpha validated on construction")
    }
}

impl TryFrom<f64> for Alpha {
    type Error = crate::Error;

    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        let r = z.norm();
        if r.is_finite() && r < 1.0 - DISK_MARGIN {
            Ok(Self(z))
        } else {
            domain(format!("point {z} is not inside the open unit disk"))
        }
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(r, theta))
    }

    pub fn origin() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }

    pub fn z(self) -> Complex64 {
        self.0
    }

    pub fn r(self) -> f64 {
        self.0.norm()
    }

    pub fn theta(self) -> f64 {
        self.0.arg()
    }
}

/// Wirtinger derivatives of `t ↦ K_α(z e^{−it})` in `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelGradient {
    /// `∂K/∂z`
    pub dz: Complex64,
    /// `∂K/∂z̄`, the conjugate of `dz` since the kernel is real.
    pub dzbar: Complex64,
}

/// `K_α(z e^{−it})`.
pub fn kernel_value(alpha: Alpha, z: DiskPoint, t: f64) -> f64 {
    let a = alpha.value();
    let w = z.z().norm_sqr();
    let u = Complex64::new(1.0, 0.0) - z.z() * Complex64::from_polar(1.0, -t);
    alpha.c() * (1.0 - w).powf(a + 1.0) / u.norm().powf(a + 2.0)
}

/// Closed-form gradients of `K_α(z e^{−it})`.
///
/// Accuracy degrades through cancellation once `|z| > 0.999`.
pub fn kernel_gradients(alpha: Alpha, z: DiskPoint, t: f64) -> KernelGradient {
    let a = alpha.value();
    let zz = z.z();
    let w = zz.norm_sqr();
    let e = Complex64::from_polar(1.0, -t);
    let u = Complex64::new(1.0, 0.0) - zz * e;
    let q = u.norm_sqr();
    let scale = alpha.c() * (1.0 - w).powf(a) / q.powf((4.0 + a) / 2.0);
    let dz = scale * ((1.0 + a / 2.0) * e * u.conj() * (1.0 - w) - (a + 1.0) * zz.conj() * q);
    KernelGradient {
        dz,
        dzbar: dz.conj(),
    }
}

/// How [`kernel_mean`] evaluates `M_α(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanMethod {
    /// `c_α ₂F₁(−α/2, −α/2; 1; r²)`.
    Closed,
    /// Uniform trapezoid rule with a fixed number of nodes.
    Quadrature(usize),
    /// Trapezoid rule doubled from `start` nodes until two successive
    /// values agree to [`QUAD_REFINE_TOL`] or [`MAX_QUAD_N`] is reached.
    Adaptive { start: usize },
}

impl Default for MeanMethod {
    fn default() -> Self {
        MeanMethod::Adaptive {
            start: DEFAULT_QUAD_N,
        }
    }
}

/// Circular mean `M_α(r) = (1/2π) ∫ K_α(r e^{iε}) dε`.
pub fn kernel_mean(alpha: Alpha, r: f64, method: MeanMethod) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return domain(format!("kernel_mean requires 0 <= r < 1, got {r}"));
    }
    match method {
        MeanMethod::Closed => {
            let a = -alpha.value() / 2.0;
            let p = HypParams::new(a, a, 1.0)?;
            Ok(alpha.c() * hyp2f1(&p, r * r)?)
        }
        MeanMethod::Quadrature(n) => {
            check_nodes(n)?;
            let z = DiskPoint::new(Complex64::new(r, 0.0))?;
            Ok(trapezoid_mean(alpha, z, n))
        }
        MeanMethod::Adaptive { start } => {
            check_nodes(start)?;
            let z = DiskPoint::new(Complex64::new(r, 0.0))?;
            let mut n = start;
            let mut prev = trapezoid_mean(alpha, z, n);
            while n < MAX_QUAD_N {
                n *= 2;
                let next = trapezoid_mean(alpha, z, n);
                if (next - prev).abs() <= QUAD_REFINE_TOL {
                    return Ok(next);
                }
                prev = next;
            }
            Ok(prev)
        }
    }
}

fn check_nodes(n: usize) -> Result<()> {
    if n < MIN_QUAD_N {
        return domain(format!("quadrature needs at least {MIN_QUAD_N} nodes, got {n}"));
    }
    Ok(())
}

fn trapezoid_mean(alpha: Alpha, z: DiskPoint, n: usize) -> f64 {
    let step = 2.0 * PI / n as f64;
    (0..n)
        .map(|j| kernel_value(alpha, z, j as f64 * step))
        .sum::<f64>()
        / n as f64
}

/// `d/dr M_α(r) = (α²/2) c_α r ₂F₁(1−α/2, 1−α/2; 2; r²)` for `0 ≤ r < 1`.
pub fn kernel_mean_slope(alpha: Alpha, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return domain(format!("kernel_mean_slope requires 0 <= r < 1, got {r}"));
    }
    let a = alpha.value();
    if a == 0.0 {
        return Ok(0.0);
    }
    let p = HypParams::new(1.0 - a / 2.0, 1.0 - a / 2.0, 2.0)?;
    Ok(a * a / 2.0 * alpha.c() * r * hyp2f1(&p, r * r)?)
}

/// `lim_{r→1−} d/dr M_α(r)` through the Gauss summation at `x = 1`; only
/// defined for `α > 0`, where it equals `α/2`.
pub fn kernel_mean_slope_limit(alpha: Alpha) -> Result<f64> {
    let a = alpha.value();
    if !(a > 0.0) {
        return domain(format!("slope limit at the boundary requires alpha > 0, got {a}"));
    }
    let p = HypParams::new(1.0 - a / 2.0, 1.0 - a / 2.0, 2.0)?;
    Ok(a * a / 2.0 * alpha.c() * hyp2f1(&p, 1.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alpha(a: f64) -> Alpha {
        Alpha::new(a).unwrap()
    }

    fn real_point(r: f64) -> DiskPoint {
        DiskPoint::new(Complex64::new(r, 0.0)).unwrap()
    }

    #[test]
    fn alpha_and_point_validation() {
        assert!(Alpha::new(-1.0).is_err());
        assert!(Alpha::new(f64::NAN).is_err());
        assert!(DiskPoint::new(Complex64::new(1.0, 0.0)).is_err());
        assert!(DiskPoint::new(Complex64::new(0.0, 1.0 - 1e-13)).is_err());
        assert!(DiskPoint::new(Complex64::new(0.0, 0.999)).is_ok());
    }

    #[test]
    fn kernel_spot_values() {
        assert_relative_eq!(kernel_value(alpha(0.0), DiskPoint::origin(), 1.3), 1.0);
        let a = alpha(-0.5);
        assert_relative_eq!(kernel_value(a, DiskPoint::origin(), 0.2), a.c(), max_relative = 1e-15);
        // 0.5 · 0.75³ / 0.5⁴
        assert_relative_eq!(
            kernel_value(alpha(2.0), real_point(0.5), 0.0),
            3.375,
            max_relative = 1e-14
        );
    }

    #[test]
    fn kernel_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let a = alpha(rng.random_range(-0.99..6.0));
            let z = DiskPoint::from_polar(rng.random_range(0.0..0.999), rng.random_range(0.0..6.3)).unwrap();
            assert!(kernel_value(a, z, rng.random_range(0.0..6.3)) > 0.0);
        }
    }

    #[test]
    fn gradient_at_origin() {
        for a in [0.0, -0.5, 1.0, 3.0] {
            let al = alpha(a);
            for t in [0.0, 0.7, 2.0] {
                let g = kernel_gradients(al, DiskPoint::origin(), t);
                let expected = al.c() * (1.0 + a / 2.0) * Complex64::from_polar(1.0, -t);
                assert!((g.dz - expected).norm() < 1e-14);
            }
        }
        let g = kernel_gradients(alpha(0.0), DiskPoint::origin(), 0.0);
        assert!((g.dz - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = 1e-6;
        for _ in 0..100 {
            let a = alpha(rng.random_range(-0.9..4.0));
            let z = Complex64::from_polar(rng.random_range(0.0..0.9), rng.random_range(0.0..6.3));
            let t = rng.random_range(0.0..6.3);
            let k = |dz: Complex64| kernel_value(a, DiskPoint::new(z + dz).unwrap(), t);
            let kx = (k(Complex64::new(h, 0.0)) - k(Complex64::new(-h, 0.0))) / (2.0 * h);
            let ky = (k(Complex64::new(0.0, h)) - k(Complex64::new(0.0, -h))) / (2.0 * h);
            let fd_dz = Complex64::new(kx, -ky) / 2.0;
            let fd_dzbar = Complex64::new(kx, ky) / 2.0;
            let g = kernel_gradients(a, DiskPoint::new(z).unwrap(), t);
            assert!((g.dz - fd_dz).norm() < 1e-7, "{:?} vs {fd_dz}", g.dz);
            assert!((g.dzbar - fd_dzbar).norm() < 1e-7);
            assert_eq!(g.dzbar, g.dz.conj());
        }
    }

    #[test]
    fn mean_spot_values() {
        for r in [0.0, 0.3, 0.95] {
            assert_relative_eq!(kernel_mean(alpha(0.0), r, MeanMethod::Closed).unwrap(), 1.0);
        }
        // M_2(r) = (1 + r²)/2
        assert_relative_eq!(
            kernel_mean(alpha(2.0), 0.6, MeanMethod::Closed).unwrap(),
            0.68,
            max_relative = 1e-14
        );
        let closed = kernel_mean(alpha(-0.5), 0.9, MeanMethod::Closed).unwrap();
        let quad = kernel_mean(alpha(-0.5), 0.9, MeanMethod::Quadrature(256)).unwrap();
        let q512 = kernel_mean(alpha(-0.5), 0.9, MeanMethod::Quadrature(512)).unwrap();
        let q1024 = kernel_mean(alpha(-0.5), 0.9, MeanMethod::Quadrature(1024)).unwrap();
        assert!((closed - quad).abs() < 1e-10);
        // the 256-node error is 1.0e-12 here, so the first doubling moves by slightly more than 1e-12
        assert!((q512 - quad).abs() < 1e-11);
        assert!((q1024 - q512).abs() < 1e-12);
        // independent high-precision quadrature at α = 0.5, r = 0.9
        let hp = 0.981_921_372_243_338_8;
        assert_relative_eq!(kernel_mean(alpha(0.5), 0.9, MeanMethod::Closed).unwrap(), hp, max_relative = 1e-13);
    }

    #[test]
    fn mean_rejects_bad_arguments() {
        assert!(kernel_mean(alpha(0.0), 1.0, MeanMethod::Closed).is_err());
        assert!(kernel_mean(alpha(0.0), -0.1, MeanMethod::Closed).is_err());
        assert!(kernel_mean(alpha(0.0), 0.5, MeanMethod::Quadrature(8)).is_err());
    }

    #[test]
    fn mean_increases_to_one() {
        for a in [-0.5, 0.5, 1.0, 2.0, 3.0] {
            let mut prev = 0.0;
            let mut prev_gap = f64::INFINITY;
            for j in 1..=8 {
                let m = kernel_mean(alpha(a), 1.0 - 10f64.powi(-j), MeanMethod::Closed).unwrap();
                assert!(m > prev);
                let gap = (1.0 - m).abs();
                assert!(gap < prev_gap);
                prev = m;
                prev_gap = gap;
            }
            assert!(prev_gap < 1e-3);
        }
    }

    #[test]
    fn slope_values() {
        assert_relative_eq!(kernel_mean_slope(alpha(2.0), 0.35).unwrap(), 0.35, max_relative = 1e-14);
        assert_eq!(kernel_mean_slope(alpha(0.0), 0.7).unwrap(), 0.0);
        assert_relative_eq!(kernel_mean_slope_limit(alpha(2.0)).unwrap(), 1.0, max_relative = 1e-14);
        assert!(kernel_mean_slope_limit(alpha(0.0)).is_err());
        assert!(kernel_mean_slope_limit(alpha(-0.5)).is_err());
    }

    #[test]
    fn slope_matches_finite_difference_of_mean() {
        let h = 1e-5;
        for a in [-0.9, -0.5, 0.5, 1.0, 2.0, 5.0] {
            for r in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let m = |r| kernel_mean(alpha(a), r, MeanMethod::Closed).unwrap();
                let fd = (m(r + h) - m(r - h)) / (2.0 * h);
                let slope = kernel_mean_slope(alpha(a), r).unwrap();
                assert!((fd - slope).abs() < 1e-8, "alpha {a} r {r}: {fd} vs {slope}");
            }
        }
    }
}
