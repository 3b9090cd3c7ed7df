//! Univalence and covering radii for normalized solutions.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::kernel::Alpha;
use crate::solution::HardyExponent;

/// Right end of the bracket searched by [`solve_rho`].
pub const RHO_BRACKET_HI: f64 = 1.0 - 1e-15;
/// Default residual tolerance of [`solve_rho`].
pub const RHO_FTOL: f64 = 1e-12;
/// Default bracket-width tolerance of [`solve_rho`].
pub const RHO_XTOL: f64 = 1e-15;
const RHO_MAX_ITER: usize = 200;

/// Search interval for the minimizer of `μ`.
pub const MU_LO: f64 = 1e-6;
pub const MU_HI: f64 = 1.0 - 1e-6;
/// Bracket width at which the golden-section search stops.
pub const GOLDEN_TOL: f64 = 1e-12;
/// Points in the unimodality pre-scan.
pub const MU_SCAN_POINTS: usize = 10_000;
/// Finite stand-in for `p = ∞`.
pub const P_INFINITY_CAP: f64 = 1e6;

/// The constants `(δ, M, α)` of the profile `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauInputs {
    alpha: f64,
    scale: f64,
    bound: f64,
}

impl LandauInputs {
    /// `alpha > −2`, `scale > 0`, `bound > 0`.
    pub fn new(alpha: f64, scale: f64, bound: f64) -> Result<Self> {
        if !(alpha > -2.0 && alpha.is_finite()) {
            return domain(format!("profile requires alpha > -2, got {alpha}"));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return domain(format!("scale must be finite and positive, got {scale}"));
        }
        if !(bound > 0.0 && bound.is_finite()) {
            return domain(format!("bound must be finite and positive, got {bound}"));
        }
        Ok(Self { alpha, scale, bound })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    fn lead(&self) -> f64 {
        self.scale / (self.bound * (2.0 + self.alpha))
    }
}

fn check_univalence_alpha(alpha: f64) -> Result<()> {
    if !(alpha > -1.0 && alpha <= 0.0) {
        return domain(format!("univalence radius requires alpha in (-1, 0], got {alpha}"));
    }
    Ok(())
}

/// `φ(x) = δ/(M(2+α)) − (4Mx/π)[(2−x)/(1−x)² + 2x/((1−x)(1−x²)²)]`.
pub fn phi_profile(x: f64, inputs: &LandauInputs) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return domain(format!("profile argument must lie in [0, 1), got {x}"));
    }
    Ok(phi(x, inputs))
}

fn phi(x: f64, inputs: &LandauInputs) -> f64 {
    let one = 1.0 - x;
    let bracket = (2.0 - x) / (one * one) + 2.0 * x / (one * (1.0 - x * x).powi(2));
    inputs.lead() - 4.0 * inputs.bound * x / PI * bracket
}

/// Unique root of [`phi_profile`] in `(0, 1)` by bisection.
pub fn solve_rho(inputs: &LandauInputs) -> Result<f64> {
    solve_rho_with(inputs, RHO_FTOL, RHO_XTOL)
}

/// [`solve_rho`] with explicit residual and bracket-width tolerances.
pub fn solve_rho_with(inputs: &LandauInputs, ftol: f64, xtol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0, RHO_BRACKET_HI);
    for _ in 0..RHO_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let v = phi(mid, inputs);
        if v.abs() <= ftol || hi - lo <= xtol {
            return Ok(mid);
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence { terms: RHO_MAX_ITER })
}

/// `ρ₀` together with the covered radius `R₀ ≥ (2ρ₀/3)[δ/(M(2+α)) − Mρ₀(2−ρ₀)/(π(1−ρ₀)²)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnivalentRange {
    pub rho0: f64,
    pub r0_lower: f64,
    /// The bracket came out negative and `r0_lower` was clamped to 0.
    pub clamped: bool,
}

pub fn univalent_range(inputs: &LandauInputs, rho0: f64) -> Result<UnivalentRange> {
    check_univalence_alpha(inputs.alpha)?;
    if !(0.0..1.0).contains(&rho0) {
        return domain(format!("rho0 must lie in [0, 1), got {rho0}"));
    }
    let m = inputs.bound;
    let bracket = inputs.lead() - m * rho0 * (2.0 - rho0) / (PI * (1.0 - rho0).powi(2));
    let raw = 2.0 * rho0 / 3.0 * bracket;
    let clamped = raw < 0.0;
    Ok(UnivalentRange {
        rho0,
        r0_lower: raw.max(0.0),
        clamped,
    })
}

fn effective_p(p: HardyExponent) -> f64 {
    match p {
        HardyExponent::Finite(p) => p,
        HardyExponent::Infinite => P_INFINITY_CAP,
    }
}

/// `μ(γ) = (1+γ)^((α+1)/p) / (γ(1−γ)^(1/p))`.
pub fn mu(gamma: f64, alpha: f64, p: f64) -> f64 {
    (1.0 + gamma).powf((alpha + 1.0) / p) / (gamma * (1.0 - gamma).powf(1.0 / p))
}

/// `d/dγ log μ(γ)`.
fn log_mu_slope(gamma: f64, alpha: f64, p: f64) -> f64 {
    (alpha + 1.0) / (p * (1.0 + gamma)) + 1.0 / (p * (1.0 - gamma)) - 1.0 / gamma
}

/// Minimizer of `μ` on `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuMinimum {
    pub gamma0: f64,
    pub mu_min: f64,
}

/// Pre-scan for unimodality, golden-section search on the scan bracket,
/// then bisection on the sign of `(log μ)'` to settle the last digits.
pub fn minimize_mu(alpha: f64, p: HardyExponent) -> Result<MuMinimum> {
    check_univalence_alpha(alpha)?;
    let p = effective_p(p);
    let f = |g: f64| mu(g, alpha, p);

    let step = (MU_HI - MU_LO) / (MU_SCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..MU_SCAN_POINTS).map(|i| MU_LO + step * i as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&g| f(g)).collect();
    let minima = (1..MU_SCAN_POINTS - 1)
        .filter(|&i| vals[i] < vals[i - 1] && vals[i] <= vals[i + 1])
        .count();
    if minima > 1 {
        return Err(Error::NotUnimodal { minima });
    }
    let best = vals
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("scan is nonempty");
    let mut lo = grid[best.saturating_sub(1)];
    let mut hi = grid[(best + 1).min(MU_SCAN_POINTS - 1)];
    let (glo, ghi) = (lo, hi);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > GOLDEN_TOL {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let mut gamma0 = 0.5 * (lo + hi);

    // μ is flat at its minimum, so comparisons alone pin γ₀ only to about √ε
    let s = |g: f64| log_mu_slope(g, alpha, p);
    if s(glo) < 0.0 && s(ghi) > 0.0 {
        let (mut a, mut b) = (glo, ghi);
        while b - a > 4.0 * f64::EPSILON * b {
            let mid = 0.5 * (a + b);
            if s(mid) < 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        gamma0 = 0.5 * (a + b);
    }
    Ok(MuMinimum {
        gamma0,
        mu_min: f(gamma0),
    })
}

/// Radii for a normalized solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandauResult {
    pub gamma0: f64,
    pub mstar: f64,
    pub rho0: f64,
    pub r0_lower: f64,
    pub univalence_radius: f64,
    pub covering_radius: f64,
}

impl LandauResult {
    pub const CSV_HEADER: [&'static str; 6] = [
        "gamma0",
        "mstar",
        "rho0",
        "r0_lower",
        "univalence_radius",
        "covering_radius",
    ];

    pub fn csv_row(&self) -> [f64; 6] {
        [
            self.gamma0,
            self.mstar,
            self.rho0,
            self.r0_lower,
            self.univalence_radius,
            self.covering_radius,
        ]
    }
}

/// Radii for a Hardy-space solution with `f(0) = 0` and `|J_f(0)| = λ`.
pub fn landau_hardy(alpha: f64, p: HardyExponent, hardy_norm: f64, lambda: f64) -> Result<LandauResult> {
    check_univalence_alpha(alpha)?;
    if !(hardy_norm > 0.0 && hardy_norm.is_finite()) {
        return domain(format!("Hardy norm must be finite and positive, got {hardy_norm}"));
    }
    let MuMinimum { gamma0, mu_min } = minimize_mu(alpha, p)?;
    let c = Alpha::new(alpha)?.c();
    let mstar = c.powf(1.0 / effective_p(p)) * hardy_norm * mu_min;
    let inputs = LandauInputs::new(alpha, lambda, mstar)?;
    let rho0 = solve_rho(&inputs)?;
    let range = univalent_range(&inputs, rho0)?;
    Ok(LandauResult {
        gamma0,
        mstar,
        rho0,
        r0_lower: range.r0_lower,
        univalence_radius: gamma0 * rho0,
        covering_radius: gamma0 * range.r0_lower,
    })
}

/// Radii for a bounded solution with `f(0) = 0`, `|J_f(0)| = β` and `sup|f| ≤ M`.
/// No rescaling is involved, so `gamma0 = 1` and `mstar = M`.
pub fn landau_beta(alpha: f64, beta: f64, m: f64) -> Result<LandauResult> {
    check_univalence_alpha(alpha)?;
    let inputs = LandauInputs::new(alpha, beta, m)?;
    let rho0 = solve_rho(&inputs)?;
    let range = univalent_range(&inputs, rho0)?;
    Ok(LandauResult {
        gamma0: 1.0,
        mstar: m,
        rho0,
        r0_lower: range.r0_lower,
        univalence_radius: rho0,
        covering_radius: range.r0_lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inputs(a: f64, d: f64, m: f64) -> LandauInputs {
        LandauInputs::new(a, d, m).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_profile(0.0, &inputs(0.0, 1.0, 1.0)).unwrap(), 0.5);
        assert_relative_eq!(phi_profile(0.0, &inputs(-0.5, 3.0, 2.0)).unwrap(), 1.0);
        let i = inputs(-1.5, 0.7, 4.0);
        assert!(phi_profile(0.2, &i).unwrap() > phi_profile(0.3, &i).unwrap());
        assert!(phi_profile(1.0, &i).is_err());
        assert!(LandauInputs::new(-2.0, 1.0, 1.0).is_err());
        assert!(LandauInputs::new(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn rho_oracle() {
        // mpmath findroot at 50 digits
        let i = inputs(0.0, 1.0, 1.0);
        let rho = solve_rho(&i).unwrap();
        assert!((rho - 0.13824961827339179).abs() < 1e-12);
        let range = univalent_range(&i, rho).unwrap();
        assert!((range.r0_lower - 0.035914979102365711).abs() < 1e-12);
        assert!(!range.clamped);
    }

    #[test]
    fn rho_monotone_in_scale_and_bound() {
        let base = solve_rho(&inputs(-0.3, 1.0, 2.0)).unwrap();
        assert!(solve_rho(&inputs(-0.3, 2.0, 2.0)).unwrap() > base);
        let mut prev = base;
        for m in [4.0, 16.0, 64.0, 1e3, 1e5] {
            let r = solve_rho(&inputs(-0.3, 1.0, m)).unwrap();
            assert!(r < prev);
            prev = r;
        }
        assert!(prev < 1e-8);
    }

    #[test]
    fn rho_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = rng.random_range(-0.99..=0.0);
            let i = inputs(a, rng.random_range(0.05..10.0), rng.random_range(0.2..20.0));
            let rho = solve_rho(&i).unwrap();
            assert!(phi(rho, &i).abs() <= 1e-12);
            let fine = solve_rho_with(&i, 1e-13, 1e-16).unwrap();
            assert!((fine - rho).abs() <= 1e-12);
            let range = univalent_range(&i, rho).unwrap();
            // at the root R₀/ρ₀ lies between lead/2 and 2·lead/3
            let lead = i.lead();
            assert!(range.r0_lower > 0.0);
            assert!(range.r0_lower >= 0.5 * lead * rho * (1.0 - 1e-12));
            assert!(range.r0_lower <= 2.0 / 3.0 * lead * rho * (1.0 + 1e-12));
            if lead <= 1.5 {
                assert!(range.r0_lower < rho);
            }
        }
        assert!(univalent_range(&inputs(0.5, 1.0, 1.0), 0.1).is_err());
    }

    #[test]
    fn mu_closed_form() {
        let m = minimize_mu(0.0, HardyExponent::Finite(1.0)).unwrap();
        assert!((m.gamma0 - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((m.mu_min - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
        for d in [-0.01, 0.01] {
            assert!(m.mu_min <= mu(m.gamma0 + d, 0.0, 1.0));
        }
    }

    #[test]
    fn mu_grid_agreement() {
        for a in [-0.9, -0.5, 0.0] {
            for p in [1.0, 2.0, 5.0] {
                let m = minimize_mu(a, HardyExponent::Finite(p)).unwrap();
                let n = 1_000_000;
                let mut best = (f64::INFINITY, 0.0);
                for i in 1..n {
                    let g = i as f64 / n as f64;
                    let v = mu(g, a, p);
                    if v < best.0 {
                        best = (v, g);
                    }
                }
                assert!((best.1 - m.gamma0).abs() < 1e-5, "alpha {a} p {p}");
                assert!(m.mu_min <= best.0);
            }
        }
    }

    #[test]
    fn mu_large_p() {
        let m = minimize_mu(-0.5, HardyExponent::Infinite).unwrap();
        assert!(m.gamma0 > 0.99);
        assert!((m.mu_min - 1.0 / m.gamma0).abs() < 1e-4);
    }

    #[test]
    fn hardy_pipeline_oracle() {
        let r = landau_hardy(0.0, HardyExponent::Finite(1.0), 1.0, 1.0).unwrap();
        assert!((r.mstar - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
        // mpmath at M* = 3 + 2√2
        assert!((r.rho0 - 0.0056982546513367680).abs() < 1e-12);
        assert!((r.r0_lower - 0.00024487682052382593).abs() < 1e-12);
        assert!((r.univalence_radius - 0.0023602943584392613).abs() < 1e-12);
        assert_relative_eq!(r.covering_radius, r.gamma0 * r.r0_lower);
        assert!(landau_hardy(0.5, HardyExponent::Finite(1.0), 1.0, 1.0).is_err());
        assert!(landau_hardy(0.0, HardyExponent::Finite(1.0), 1.0, 1e-9).unwrap().univalence_radius < 1e-9);
    }

    #[test]
    fn hardy_pipeline_sweep() {
        for a in [-0.9, -0.5, 0.0] {
            for p in [HardyExponent::Finite(1.0), HardyExponent::Finite(2.0), HardyExponent::Infinite] {
                for (norm, lambda) in [(1.0, 1.0), (0.5, 2.0), (3.0, 0.1)] {
                    let r = landau_hardy(a, p, norm, lambda).unwrap();
                    // the covering radius lives in the image plane and may exceed 1
                    assert!(r.covering_radius > 0.0);
                    for v in [r.gamma0, r.rho0, r.univalence_radius] {
                        assert!(v > 0.0 && v < 1.0, "{a} {p:?} {norm} {lambda} {r:?}");
                    }
                    let lead = lambda / (r.mstar * (2.0 + a));
                    assert!(r.covering_radius <= 2.0 / 3.0 * lead * r.univalence_radius * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn beta_path() {
        let r = landau_beta(0.0, 1.0, 1.0).unwrap();
        assert!((r.rho0 - 0.13824961827339179).abs() < 1e-12);
        assert_eq!(r.gamma0, 1.0);
        assert!(landau_beta(0.2, 1.0, 1.0).is_err());
    }
}
