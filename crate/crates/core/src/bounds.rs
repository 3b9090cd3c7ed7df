//! Schwarz–Pick, coefficient, increment and growth bounds, with the harmonic
//! reference estimates and their extremal functions.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::kernel::{kernel_mean, Alpha, DiskPoint, MeanMethod};
use crate::solution::{boundary_factor, DiskFunction, SeriesSolution, WirtingerPair};
use crate::special::{gamma_fn, ln_gamma, GAMMA_MAX_ARG};

/// Default absolute tolerance of [`BoundReport::satisfied`].
pub const REPORT_TOL: f64 = 1e-9;

/// One inequality `lhs ≤ rhs` evaluated at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::with_tolerance(label, lhs, rhs, REPORT_TOL)
    }

    /// `satisfied` iff `rhs − lhs ≥ −tol`.
    pub fn with_tolerance(label: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            label: label.into(),
            lhs,
            rhs,
            slack,
            satisfied: slack >= -tol,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Writes reports as CSV with columns `label,lhs,rhs,slack,satisfied`.
pub fn write_reports_csv<W: std::io::Write>(reports: &[BoundReport], writer: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    for r in reports {
        wtr.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    wtr.flush()?;
    Ok(())
}

fn check_bound(m: f64) -> Result<()> {
    if !(m > 0.0 && m.is_finite()) {
        return domain(format!("bound M must be finite and positive, got {m}"));
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return domain(format!("radius must lie in [0, 1), got {r}"));
    }
    Ok(())
}

/// Right side of `|f(z) − (1−|z|)^(α+1)/(1+|z|) f(0)| ≤ M[M_α(|z|) − (1−|z|)^(α+1) c_α/(1+|z|)]`.
pub fn center_deviation_bound(alpha: Alpha, m: f64, z: DiskPoint) -> Result<f64> {
    check_bound(m)?;
    let r = z.r();
    let mean = kernel_mean(alpha, r, MeanMethod::Closed)?;
    Ok(m * (mean - center_weight(alpha, r) * alpha.c()))
}

/// `(1−r)^(α+1)/(1+r)`, the weight on `f(0)` in the centre deviation.
pub fn center_weight(alpha: Alpha, r: f64) -> f64 {
    (1.0 - r).powf(alpha.value() + 1.0) / (1.0 + r)
}

/// Bound on `‖D_f(z)‖` at `|z| = r`: `M M_α(r)(2+α+(4+3α)r)/(1−r²)`, or
/// without the `M_α(r)` factor when `tight` is false.
pub fn gradient_bound(alpha: Alpha, m: f64, r: f64, tight: bool) -> Result<f64> {
    check_bound(m)?;
    check_radius(r)?;
    let a = alpha.value();
    let base = m * (2.0 + a + (4.0 + 3.0 * a) * r) / (1.0 - r * r);
    if tight {
        Ok(base * kernel_mean(alpha, r, MeanMethod::Closed)?)
    } else {
        Ok(base)
    }
}

/// Lower bound for the boundary stretch `‖D_f(e^{iθ})‖` of a surjective
/// solution: `2/π` at `α = 0`, `α/2` for `α > 0`.
pub fn heinz_boundary_bound(alpha: f64) -> Result<f64> {
    if alpha == 0.0 {
        Ok(FRAC_2_PI)
    } else if alpha > 0.0 && alpha.is_finite() {
        Ok(alpha / 2.0)
    } else {
        domain(format!("boundary stretch bound requires alpha >= 0, got {alpha}"))
    }
}

/// `4M Γ(1+α/2) Γ(k+1+α/2) / (k! Γ(1+α) π)`, in log space once the
/// arguments leave the direct range of the Gamma function.
pub fn coefficient_sum_bound(alpha: Alpha, m: f64, k: u32) -> Result<f64> {
    check_bound(m)?;
    let a = alpha.value();
    let kf = k as f64;
    let args = [1.0 + a / 2.0, kf + 1.0 + a / 2.0, kf + 1.0, 1.0 + a];
    let ratio = if args.iter().all(|&s| s <= GAMMA_MAX_ARG) {
        gamma_fn(args[0])? * gamma_fn(args[1])? / (gamma_fn(args[2])? * gamma_fn(args[3])?)
    } else {
        (ln_gamma(args[0])? + ln_gamma(args[1])? - ln_gamma(args[2])? - ln_gamma(args[3])?).exp()
    };
    Ok(4.0 * m * ratio / PI)
}

/// The three coefficient checks at index `k ≥ 1`:
/// `|c_k F_k(1)| + |c_−k F_k(1)| ≤ 4M/π`, `|c_0 F_0(1)| ≤ M`, and
/// `|c_k| + |c_−k| ≤` [`coefficient_sum_bound`].
pub fn coefficient_bounds(sol: &SeriesSolution, m: f64, k: u32) -> Result<[BoundReport; 3]> {
    check_bound(m)?;
    if k == 0 {
        return domain("coefficient index must be positive");
    }
    let alpha = sol.alpha();
    let ki = k as i64;
    let (ck, cmk) = (sol.coeff(ki).norm(), sol.coeff(-ki).norm());
    let fk = boundary_factor(alpha, k as usize)?;
    let f0 = boundary_factor(alpha, 0)?;
    Ok([
        BoundReport::new(format!("coefficient_k{k}"), (ck + cmk) * fk.abs(), 4.0 * m / PI),
        BoundReport::new("coefficient_c0", (sol.coeff(0) * f0).norm(), m),
        BoundReport::new(
            format!("coefficient_sum_k{k}"),
            ck + cmk,
            coefficient_sum_bound(alpha, m, k)?,
        ),
    ])
}

/// Bound on `|f_z(z) − f_z(0)| + |f_z̄(z) − f_z̄(0)|` at `|z| = r`:
/// `(4M/π) r(2−r)/(1−r)² + (8M/π) r²/((1−r)(1−r²)²)`.
pub fn increment_bound(m: f64, r: f64) -> Result<f64> {
    check_bound(m)?;
    check_radius(r)?;
    let one = 1.0 - r;
    Ok(4.0 * m / PI * r * (2.0 - r) / (one * one)
        + 8.0 * m / PI * r * r / (one * (1.0 - r * r).powi(2)))
}

/// `|f(z)| ≤ c_α^(1/p) ‖f‖_p (1+|z|)^((α+1)/p) / (1−|z|)^(1/p)`.
pub fn growth_bound(alpha: Alpha, p: f64, hardy_norm: f64, z: DiskPoint) -> Result<f64> {
    if !(p >= 1.0) {
        return domain(format!("growth bound requires p >= 1, got {p}"));
    }
    if !(hardy_norm >= 0.0 && hardy_norm.is_finite()) {
        return domain(format!("Hardy norm must be finite and nonnegative, got {hardy_norm}"));
    }
    let r = z.r();
    let a = alpha.value();
    if p.is_infinite() {
        return Ok(hardy_norm);
    }
    Ok(alpha.c().powf(1.0 / p) * hardy_norm * (1.0 + r).powf((a + 1.0) / p)
        / (1.0 - r).powf(1.0 / p))
}

/// `(4/π) arctan|z|`, the sharp bound on `|f(z)|` for harmonic self-maps with `f(0) = 0`.
pub fn heinz_arctan_bound(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return domain(format!("radius must lie in [0, 1], got {r}"));
    }
    Ok(4.0 / PI * r.atan())
}

/// `4/(π(1−|z|²))`, the sharp bound on `‖D_f(z)‖` for harmonic self-maps.
pub fn colonna_bound(z: DiskPoint) -> f64 {
    4.0 / (PI * (1.0 - z.z().norm_sqr()))
}

fn check_unit(w: Complex64, name: &str) -> Result<()> {
    if (w.norm() - 1.0).abs() > 1e-12 {
        return domain(format!("{name} must have modulus 1, got {}", w.norm()));
    }
    Ok(())
}

/// `log((1+u)/(1−u))` and its `u`-derivative `2/(1−u²)`.
fn log_ratio(u: Complex64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    (((one + u) / (one - u)).ln(), 2.0 / (one - u * u))
}

/// Wirtinger pair of `s · Im L(z)` for analytic `L` with derivative `dl` and complex constant `s`.
fn im_analytic_derivatives(s: Complex64, dl: Complex64) -> WirtingerPair {
    let two_i = Complex64::new(0.0, 2.0);
    WirtingerPair {
        fz: s * dl / two_i,
        fzbar: -s * dl.conj() / two_i,
    }
}

/// `(2εM/π) Im log((1+ϑz^k)/(1−ϑz^k))`, which attains equality in the
/// order-`k` coefficient bound at `α = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffExtremal {
    k: u32,
    m: f64,
    eps: Complex64,
    theta: Complex64,
}

impl CoeffExtremal {
    pub fn new(k: u32, m: f64, eps: Complex64, theta: Complex64) -> Result<Self> {
        if k == 0 {
            return domain("extremal order must be positive");
        }
        check_bound(m)?;
        check_unit(eps, "epsilon")?;
        check_unit(theta, "theta")?;
        Ok(Self { k, m, eps, theta })
    }

    fn scale(&self) -> Complex64 {
        self.eps * (2.0 * self.m / PI)
    }

    pub fn derivatives(&self, z: DiskPoint) -> WirtingerPair {
        let zz = z.z();
        let u = self.theta * zz.powu(self.k);
        let (_, dl) = log_ratio(u);
        let du = self.theta * (self.k as f64) * zz.powu(self.k - 1);
        im_analytic_derivatives(self.scale(), dl * du)
    }

    /// Truncated expansion `(4εM/π) Σ_j Im (ϑz^k)^(2j+1)/(2j+1)` keeping powers up to `order`.
    pub fn to_series(&self, order: usize) -> Result<SeriesSolution> {
        let s = self.scale();
        let mut coeffs = Vec::new();
        let mut n = 1u32;
        while (self.k * n) as usize <= order {
            let t = self.theta.powu(n);
            let i_n = Complex64::new(0.0, n as f64);
            let idx = (self.k * n) as i64;
            coeffs.push((idx, s * t / i_n));
            coeffs.push((-idx, -s * t.conj() / i_n));
            n += 2;
        }
        SeriesSolution::new(Alpha::new(0.0)?, order, coeffs)
    }
}

impl DiskFunction for CoeffExtremal {
    fn value(&self, z: DiskPoint) -> Complex64 {
        let (l, _) = log_ratio(self.theta * z.z().powu(self.k));
        self.scale() * l.im
    }
}

/// `(2γ/π) arg((1+ψ_a)/(1−ψ_a))` with `ψ_a(z) = (z−a)/(1−āz)`, extremal for
/// the harmonic gradient bound at `z = a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColonnaExtremal {
    a: DiskPoint,
    gamma: Complex64,
}

impl ColonnaExtremal {
    pub fn new(a: DiskPoint, gamma: Complex64) -> Result<Self> {
        check_unit(gamma, "gamma")?;
        Ok(Self { a, gamma })
    }

    fn psi(&self, z: Complex64) -> (Complex64, Complex64) {
        let a = self.a.z();
        let den = Complex64::new(1.0, 0.0) - a.conj() * z;
        ((z - a) / den, (1.0 - a.norm_sqr()) / (den * den))
    }

    pub fn derivatives(&self, z: DiskPoint) -> WirtingerPair {
        let (psi, dpsi) = self.psi(z.z());
        let (_, dl) = log_ratio(psi);
        im_analytic_derivatives(self.gamma * FRAC_2_PI, dl * dpsi)
    }
}

impl DiskFunction for ColonnaExtremal {
    fn value(&self, z: DiskPoint) -> Complex64 {
        let (psi, _) = self.psi(z.z());
        let (l, _) = log_ratio(psi);
        self.gamma * FRAC_2_PI * l.im
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn alpha(a: f64) -> Alpha {
        Alpha::new(a).unwrap()
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn report_tolerance() {
        assert!(BoundReport::new("x", 1.0 + 5e-10, 1.0).satisfied);
        assert!(!BoundReport::new("x", 1.0 + 2e-9, 1.0).satisfied);
        let r = BoundReport::with_tolerance("y", 2.0, 1.5, 1.0);
        assert!(r.satisfied);
        assert_eq!(r.slack, -0.5);
        assert_eq!(
            BoundReport::new("z", 0.25, 1.0).to_json_line(),
            r#"{"label":"z","lhs":0.25,"rhs":1.0,"slack":0.75,"satisfied":true}"#
        );
        let mut buf = Vec::new();
        write_reports_csv(&[BoundReport::new("z", 0.25, 1.0)], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "label,lhs,rhs,slack,satisfied\nz,0.25,1.0,0.75,true\n");
    }

    #[test]
    fn center_deviation_examples() {
        for a in [-0.5, 0.0, 2.0] {
            assert!(center_deviation_bound(alpha(a), 3.0, DiskPoint::origin()).unwrap().abs() < 1e-15);
        }
        let z = DiskPoint::from_polar(0.3, 1.0).unwrap();
        assert_relative_eq!(center_deviation_bound(alpha(0.0), 2.0, z).unwrap(), 2.0 * 0.6 / 1.3, max_relative = 1e-14);
        let z = DiskPoint::from_polar(0.5, 0.0).unwrap();
        assert_relative_eq!(center_deviation_bound(alpha(2.0), 1.0, z).unwrap(), 0.625 - 0.125 / 3.0, max_relative = 1e-14);
        assert!(center_deviation_bound(alpha(0.0), 0.0, z).is_err());
    }

    #[test]
    fn gradient_examples() {
        for tight in [true, false] {
            assert_relative_eq!(gradient_bound(alpha(0.0), 1.0, 0.0, tight).unwrap(), 2.0);
        }
        assert_relative_eq!(gradient_bound(alpha(0.0), 1.0, 0.5, true).unwrap(), 4.0 / 0.75, max_relative = 1e-14);
        for a in [-0.9, -0.5, 0.0, 1.0, 2.0, 5.0] {
            for i in 0..10 {
                let r = i as f64 / 10.0;
                let t = gradient_bound(alpha(a), 1.0, r, true).unwrap();
                let l = gradient_bound(alpha(a), 1.0, r, false).unwrap();
                assert!(t <= l, "alpha {a} r {r}");
            }
        }
    }

    #[test]
    fn heinz_examples() {
        assert_relative_eq!(heinz_boundary_bound(0.0).unwrap(), 0.6366197723675814);
        assert_eq!(heinz_boundary_bound(2.0).unwrap(), 1.0);
        assert!(heinz_boundary_bound(-0.1).is_err());
        assert_relative_eq!(heinz_arctan_bound(1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(colonna_bound(DiskPoint::origin()), 4.0 / PI);
    }

    #[test]
    fn coefficient_sum_matches_boundary_factor() {
        for a in [-0.9, -0.5, 0.0, 1.0, 3.0] {
            for k in [1u32, 2, 7, 40, 200, 500] {
                let rhs = coefficient_sum_bound(alpha(a), 1.0, k).unwrap();
                let f = boundary_factor(alpha(a), k as usize).unwrap();
                assert_relative_eq!(rhs, 4.0 / (PI * f), max_relative = 1e-10);
            }
        }
        for k in [1u32, 5, 300] {
            assert_relative_eq!(coefficient_sum_bound(alpha(0.0), 2.0, k).unwrap(), 8.0 / PI, max_relative = 1e-12);
        }
    }

    #[test]
    fn coefficient_examples() {
        let m = 0.8;
        let sol = SeriesSolution::new(alpha(0.0), 2, [(1, Complex64::new(m, 0.0))]).unwrap();
        let [main, c0, cor] = coefficient_bounds(&sol, m, 1).unwrap();
        assert_relative_eq!(main.lhs, m);
        assert!(main.satisfied && c0.satisfied && cor.satisfied);
        assert!(coefficient_bounds(&sol, m, 0).is_err());

        for k in 1..=3 {
            let ext = CoeffExtremal::new(k, 1.0, one(), one()).unwrap().to_series(64).unwrap();
            let [main, _, _] = coefficient_bounds(&ext, 1.0, k).unwrap();
            assert!((main.rhs - main.lhs).abs() <= 1e-12, "k {k}");
        }
    }

    #[test]
    fn increment_examples() {
        assert_eq!(increment_bound(1.0, 0.0).unwrap(), 0.0);
        // mpmath: 12/π + (8/π)(0.25/(0.5·0.5625))
        assert_relative_eq!(increment_bound(1.0, 0.5).unwrap(), 6.083255602623555, max_relative = 1e-14);
        let mut prev = -1.0;
        for i in 0..100 {
            let v = increment_bound(1.0, i as f64 / 100.0).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn growth_examples() {
        let z0 = DiskPoint::origin();
        assert_relative_eq!(growth_bound(alpha(-0.5), 3.0, 2.0, z0).unwrap(), alpha(-0.5).c().powf(1.0 / 3.0) * 2.0, max_relative = 1e-15);
        for i in 0..20 {
            let r = i as f64 / 20.0;
            let z = DiskPoint::from_polar(r, 0.4).unwrap();
            let b = growth_bound(alpha(0.0), 2.0, 1.0, z).unwrap();
            assert_relative_eq!(b, ((1.0 + r) / (1.0 - r)).sqrt(), max_relative = 1e-14);
            assert!(r <= b);
        }
        assert!(growth_bound(alpha(0.0), 0.5, 1.0, z0).is_err());
    }

    #[test]
    fn coeff_extremal_at_origin() {
        let f = CoeffExtremal::new(1, 1.0, one(), one()).unwrap();
        assert!(f.value(DiskPoint::origin()).norm() < 1e-15);
        let d = f.derivatives(DiskPoint::origin());
        assert_relative_eq!(d.norm(), 4.0 / PI, max_relative = 1e-15);
        assert_relative_eq!(d.norm(), colonna_bound(DiskPoint::origin()), max_relative = 1e-15);
        assert!(CoeffExtremal::new(1, 1.0, Complex64::new(0.5, 0.0), one()).is_err());
    }

    #[test]
    fn extremal_series_matches_closed_form() {
        let theta = Complex64::from_polar(1.0, 0.7);
        let eps = Complex64::from_polar(1.0, -1.1);
        for k in 1..=3 {
            let f = CoeffExtremal::new(k, 1.5, eps, theta).unwrap();
            let s = f.to_series(240).unwrap();
            for (r, t) in [(0.3, 0.1), (0.6, 2.0), (0.75, -1.0)] {
                let z = DiskPoint::from_polar(r, t).unwrap();
                assert!((s.evaluate(z) - f.value(z)).norm() < 1e-12);
                let (a, b) = (s.wirtinger_derivatives(z), f.derivatives(z));
                assert!((a.fz - b.fz).norm() < 1e-10 && (a.fzbar - b.fzbar).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn colonna_extremal_saturates() {
        for (r, t) in [(0.0, 0.0), (0.4, 1.0), (0.85, -2.5)] {
            let a = DiskPoint::from_polar(r, t).unwrap();
            let f = ColonnaExtremal::new(a, Complex64::from_polar(1.0, 0.3)).unwrap();
            assert!(f.value(a).norm() < 1e-15);
            assert_relative_eq!(f.derivatives(a).norm(), colonna_bound(a), max_relative = 1e-12);
        }
        let h = 1e-6;
        let f = ColonnaExtremal::new(DiskPoint::from_polar(0.3, 0.5).unwrap(), one()).unwrap();
        let z = Complex64::new(-0.2, 0.35);
        let v = |d: Complex64| f.value(DiskPoint::new(z + d).unwrap());
        let fx = (v(Complex64::new(h, 0.0)) - v(Complex64::new(-h, 0.0))) / (2.0 * h);
        let fy = (v(Complex64::new(0.0, h)) - v(Complex64::new(0.0, -h))) / (2.0 * h);
        let d = f.derivatives(DiskPoint::new(z).unwrap());
        assert!((d.fz - (fx - Complex64::i() * fy) / 2.0).norm() < 1e-8);
        assert!((d.fzbar - (fx + Complex64::i() * fy) / 2.0).norm() < 1e-8);
    }

    #[test]
    fn colonna_below_gradient_bound() {
        for i in 0..100 {
            let r = i as f64 / 100.0;
            let z = DiskPoint::from_polar(r, 0.0).unwrap();
            assert!(colonna_bound(z) <= gradient_bound(alpha(0.0), 1.0, r, true).unwrap());
        }
    }
}
