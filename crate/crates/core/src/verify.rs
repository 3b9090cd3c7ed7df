//! Randomized check suite for a single solution, as run by `alpharm verify`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::bounds::{
    center_deviation_bound, center_weight, coefficient_bounds, gradient_bound, growth_bound,
    increment_bound, BoundReport,
};
use crate::error::{domain, Result};
use crate::kernel::DiskPoint;
use crate::solution::{
    hardy_mean, hardy_norm, pde_residual, sup_estimate, BoundaryData, HardyExponent,
    PolarGrid, SeriesSolution,
};

/// Knobs of [`verify_solution`].
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    /// Random interior points for the pointwise bounds.
    pub points: usize,
    /// Points are drawn uniformly from the disk of this radius.
    pub radius: f64,
    /// Grid for the sup estimate.
    pub grid: PolarGrid,
    /// Overrides the sup estimate as the bound `M`.
    pub m: Option<f64>,
    /// Pointwise bounds are checked to `tol · M`.
    pub tol: f64,
    /// Circle nodes for the Parseval and Hardy means.
    pub quad_n: usize,
    /// Finite-difference step of the residual check.
    pub fd_step: f64,
    /// Points for the residual check, drawn from `|z| ≤ 0.5`.
    pub residual_points: usize,
    /// Allowed residual, relative to `max(1, M)`.
    pub residual_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            points: 200,
            radius: 0.95,
            grid: PolarGrid::default(),
            m: None,
            tol: 1e-6,
            quad_n: 1024,
            fd_step: 1e-3,
            residual_points: 20,
            residual_tol: 1e-5,
        }
    }
}

/// Radii at which the Parseval identity is checked.
pub const PARSEVAL_RADII: [f64; 3] = [0.3, 0.7, 0.95];
const PARSEVAL_TOL: f64 = 1e-9;

/// Output of [`verify_solution`].
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    /// The bound `M` used by the checks.
    pub m: f64,
    /// Worst case of each check, in a fixed order.
    pub reports: Vec<BoundReport>,
}

impl VerifyOutcome {
    pub fn all_satisfied(&self) -> bool {
        self.reports.iter().all(|r| r.satisfied)
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundReport> {
        self.reports.iter().filter(|r| !r.satisfied)
    }
}

/// Keeps, per label, the report closest to violation relative to its tolerance.
#[derive(Default)]
struct Worst {
    order: Vec<String>,
    best: BTreeMap<String, (f64, BoundReport)>,
}

impl Worst {
    fn push(&mut self, report: BoundReport, tol: f64) {
        let margin = report.slack + tol;
        match self.best.get(&report.label) {
            Some((m, _)) if *m <= margin => {}
            Some(_) => {
                self.best.insert(report.label.clone(), (margin, report));
            }
            None => {
                self.order.push(report.label.clone());
                self.best.insert(report.label.clone(), (margin, report));
            }
        }
    }

    fn check(&mut self, label: &str, lhs: f64, rhs: f64, tol: f64) {
        self.push(BoundReport::with_tolerance(label, lhs, rhs, tol), tol);
    }

    fn finish(mut self) -> Vec<BoundReport> {
        self.order
            .iter()
            .map(|l| self.best.remove(l).expect("label recorded").1)
            .collect()
    }
}

/// A point drawn uniformly from the disk of radius `radius`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> DiskPoint {
    let r = radius * rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..2.0 * PI);
    DiskPoint::from_polar(r, t).expect("radius below 1")
}

/// Boundary samples of a random trigonometric polynomial of degree `order`
/// with coefficients uniform in the unit square, scaled by `1/(1+|k|)`.
pub fn random_boundary<R: Rng + ?Sized>(rng: &mut R, order: usize, samples: usize) -> Result<BoundaryData> {
    let k = order as i64;
    let coeffs: Vec<(i64, Complex64)> = (-k..=k)
        .map(|k| {
            let s = 1.0 / (1.0 + k.abs() as f64);
            (k, Complex64::new(rng.random_range(-s..s), rng.random_range(-s..s)))
        })
        .collect();
    BoundaryData::from_fn(samples, |t| {
        coeffs
            .iter()
            .map(|&(k, c)| c * Complex64::from_polar(1.0, k as f64 * t))
            .sum()
    })
}

/// Runs every pointwise, coefficient, residual, Parseval and growth check on `sol`.
pub fn verify_solution<R: Rng + ?Sized>(
    sol: &SeriesSolution,
    cfg: &VerifyConfig,
    rng: &mut R,
) -> Result<VerifyOutcome> {
    if !(cfg.radius > 0.0 && cfg.radius < 1.0) {
        return domain(format!("verification radius must lie in (0, 1), got {}", cfg.radius));
    }
    let alpha = sol.alpha();
    let m = match cfg.m {
        Some(m) => m,
        None => sup_estimate(sol, cfg.grid)?,
    };
    if !(m > 0.0 && m.is_finite()) {
        return domain(format!("bound M must be positive, got {m} (zero solution?)"));
    }
    let tol = cfg.tol * m;
    let mut worst = Worst::default();

    let f0 = sol.evaluate(DiskPoint::origin());
    let origin = sol.wirtinger_derivatives(DiskPoint::origin());
    let centered = f0.norm() <= 1e-14 * m.max(1.0);
    let p2 = HardyExponent::Finite(2.0);
    let norm2 = hardy_norm(sol, p2, cfg.quad_n)?;

    for _ in 0..cfg.points {
        let z = random_point(rng, cfg.radius);
        let r = z.r();
        let fz = sol.evaluate(z);
        let lhs = (fz - center_weight(alpha, r) * f0).norm();
        worst.check("center_deviation", lhs, center_deviation_bound(alpha, m, z)?, tol);

        let d = sol.wirtinger_derivatives(z);
        worst.check("gradient", d.norm(), gradient_bound(alpha, m, r, true)?, tol);

        if centered {
            let inc = (d.fz - origin.fz).norm() + (d.fzbar - origin.fzbar).norm();
            worst.check("increment", inc, increment_bound(m, r)?, tol);
        }

        worst.check("growth_p2", fz.norm(), growth_bound(alpha, 2.0, norm2, z)?, cfg.tol);
    }

    for k in 1..=sol.order() as u32 {
        for report in coefficient_bounds(sol, m, k)? {
            let label = if report.label.starts_with("coefficient_sum") {
                "coefficient_sum"
            } else if report.label == "coefficient_c0" {
                "coefficient_c0"
            } else {
                "coefficient"
            };
            let report = BoundReport::with_tolerance(label, report.lhs, report.rhs, tol);
            worst.push(report, tol);
        }
    }

    let scale = m.max(1.0);
    for _ in 0..cfg.residual_points {
        let z = random_point(rng, 0.5);
        let res = pde_residual(sol, alpha.value(), z, cfg.fd_step)?;
        worst.check("pde_residual", res.norm(), cfg.residual_tol * scale, 0.0);
    }

    let n = cfg.quad_n.max(4 * sol.order() + 1);
    for r in PARSEVAL_RADII {
        let quad = hardy_mean(sol, p2, r, n)?.powi(2);
        let sum = sol.parseval_sum(r);
        let allowed = PARSEVAL_TOL * sum.max(1.0);
        worst.check("parseval", (quad - sum).abs(), allowed, 0.0);
    }

    Ok(VerifyOutcome {
        m,
        reports: worst.finish(),
    })
}

/// `|J_f(0)|` and the sup estimate, the measured constants of the bounded univalence path.
pub fn measure_normalization(sol: &SeriesSolution, grid: PolarGrid) -> Result<(f64, f64)> {
    let beta = sol.wirtinger_derivatives(DiskPoint::origin()).jacobian().abs();
    Ok((beta, sup_estimate(sol, grid)?))
}
