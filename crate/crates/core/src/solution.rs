//! Solutions of the Dirichlet problem `T_α f = 0`, `f = f*` on the circle.
//!
//! The canonical representation is the truncated two-sided expansion
//!
//! ```text
//! f(z) = Σ_{k≥0} c_k  F(−α/2, k−α/2; k+1; |z|²) z^k
//!      + Σ_{k≥1} c_−k F(−α/2, k−α/2; k+1; |z|²) z̄^k
//! ```
//!
//! built from sampled boundary data by a discrete Fourier transform. The
//! Poisson-type integral against the kernel gives an independent route to
//! the same values.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kernel::{kernel_value, Alpha, DiskPoint};
use crate::special::{hyp2f1, hyp2f1_dx, HypParams};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 64;
/// Bound on `|c_k|^(1/K)` at the top order.
pub const ROOT_TEST_LIMIT: f64 = 1.5;
/// Boundary coefficients below this fraction of the largest are dropped.
const COEFF_CUTOFF: f64 = 1e-15;
const MIN_SAMPLES: usize = 16;
/// Allowed deviation of CSV angles from the uniform grid.
const UNIFORM_TOL: f64 = 1e-9;
/// Largest radius sampled by [`sup_estimate`].
pub const SUP_MAX_RADIUS: f64 = 1.0 - 1e-4;
/// Radii `1 − 2^−j`, `j = 1..=HARDY_LEVELS`, searched by [`hardy_norm`].
pub const HARDY_LEVELS: i32 = 12;
/// Default angular node count for circle means.
pub const DEFAULT_CIRCLE_NODES: usize = 1024;
/// Poisson integrals beyond this radius are flagged as ill-conditioned.
pub const POISSON_MAX_RADIUS: f64 = 0.99;

/// Anything that can be evaluated on the open disk.
pub trait DiskFunction {
    fn value(&self, z: DiskPoint) -> Complex64;

    /// Values at `n` equally spaced angles on the circle of radius `r`, starting at θ = 0.
    fn circle_values(&self, r: f64, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / n as f64;
                self.value(DiskPoint::from_polar(r, theta).expect("radius inside the disk"))
            })
            .collect()
    }
}

/// Adapter turning a closure into a [`DiskFunction`].
pub struct FromFn<F>(pub F);

impl<F: Fn(Complex64) -> Complex64> DiskFunction for FromFn<F> {
    fn value(&self, z: DiskPoint) -> Complex64 {
        (self.0)(z.z())
    }
}

/// Wirtinger derivatives `f_z`, `f_z̄` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WirtingerPair {
    pub fz: Complex64,
    pub fzbar: Complex64,
}

impl WirtingerPair {
    /// Operator norm `‖D_f‖ = |f_z| + |f_z̄|`.
    pub fn norm(&self) -> f64 {
        self.fz.norm() + self.fzbar.norm()
    }

    /// Minimum stretch `l(D_f) = ||f_z| − |f_z̄||`.
    pub fn min_stretch(&self) -> f64 {
        (self.fz.norm() - self.fzbar.norm()).abs()
    }

    /// Jacobian `J_f = |f_z|² − |f_z̄|²`.
    pub fn jacobian(&self) -> f64 {
        self.fz.norm_sqr() - self.fzbar.norm_sqr()
    }

    /// Real derivative matrix `[[u_x, u_y], [v_x, v_y]]`.
    pub fn real_matrix(&self) -> [[f64; 2]; 2] {
        let fx = self.fz + self.fzbar;
        let fy = Complex64::i() * (self.fz - self.fzbar);
        [[fx.re, fy.re], [fx.im, fy.im]]
    }
}

/// Uniform samples `f*(e^{2πij/N})`, `j = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    samples: Vec<Complex64>,
}

impl BoundaryData {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() < MIN_SAMPLES {
            return domain(format!(
                "boundary data needs at least {MIN_SAMPLES} samples, got {}",
                samples.len()
            ));
        }
        if samples.iter().any(|s| !(s.re.is_finite() && s.im.is_finite())) {
            return domain("boundary samples must be finite");
        }
        Ok(Self { samples })
    }

    /// Samples `f(θ_j)` of a function of the boundary angle.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new((0..n).map(|j| f(2.0 * PI * j as f64 / n as f64)).collect())
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Reads a `theta,re,im` table whose angles are uniform in `[0, 2π)` starting at 0.
    pub fn read_csv<R: std::io::Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(csv_error)?.clone();
        if headers.iter().collect::<Vec<_>>() != ["theta", "re", "im"] {
            return Err(Error::Parse(format!(
                "boundary CSV header must be theta,re,im, got {}",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut thetas = Vec::new();
        let mut samples = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record.map_err(csv_error)?;
            let field = |i: usize| -> Result<f64> {
                record[i].parse::<f64>().map_err(|_| {
                    Error::Parse(format!("row {}: invalid number {:?}", line + 1, &record[i]))
                })
            };
            thetas.push(field(0)?);
            samples.push(Complex64::new(field(1)?, field(2)?));
        }
        let n = thetas.len();
        for (j, w) in thetas.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::Parse(format!("row {}: theta is not strictly increasing", j + 2)));
            }
        }
        for (j, &t) in thetas.iter().enumerate() {
            let expected = 2.0 * PI * j as f64 / n as f64;
            if (t - expected).abs() > UNIFORM_TOL {
                return Err(Error::Parse(format!(
                    "row {}: theta {t} is off the uniform grid (expected {expected})",
                    j + 1
                )));
            }
        }
        Self::new(samples)
    }

    pub fn write_csv<W: std::io::Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
        wtr.write_record(["theta", "re", "im"]).map_err(csv_error)?;
        for (j, s) in self.samples.iter().enumerate() {
            wtr.write_record([
                format!("{}", self.theta(j)),
                format!("{}", s.re),
                format!("{}", s.im),
            ])
            .map_err(csv_error)?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Sample angle of index `j`.
    pub fn theta(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.len() as f64
    }

    /// `f̂(k) = (1/N) Σ_j f_j e^{−2πijk/N}`.
    pub fn fourier_coefficient(&self, k: i64) -> Complex64 {
        let n = self.len() as i64;
        let sum: Complex64 = self
            .samples
            .iter()
            .enumerate()
            .map(|(j, &s)| {
                // reduce jk mod N first so the twiddle angle stays exact
                let idx = (j as i64 * k).rem_euclid(n);
                s * Complex64::from_polar(1.0, -2.0 * PI * idx as f64 / n as f64)
            })
            .sum();
        sum / n as f64
    }

    /// The trigonometric interpolant of the samples. For even `N` the
    /// Nyquist term is split evenly between `±N/2`.
    pub fn interpolant(&self) -> TrigInterpolant {
        let n = self.len() as i64;
        let half = n / 2;
        let lo = if n % 2 == 0 { -half } else { -(n - 1) / 2 };
        let terms = (lo..=half)
            .map(|k| {
                let mut c = self.fourier_coefficient(k);
                if n % 2 == 0 && k.abs() == half {
                    c /= 2.0;
                }
                (k, c)
            })
            .collect();
        TrigInterpolant { terms }
    }
}

/// Trigonometric polynomial `Σ c_k e^{ikθ}`.
#[derive(Debug, Clone)]
pub struct TrigInterpolant {
    terms: Vec<(i64, Complex64)>,
}

impl TrigInterpolant {
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(k, c)| c * Complex64::from_polar(1.0, k as f64 * theta))
            .sum()
    }
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("{other:?}")),
    }
}

fn radial_params(alpha: Alpha, k: usize) -> HypParams {
    HypParams::radial(alpha.value(), k as u32)
}

/// `F(−α/2, k−α/2; k+1; 1)`, finite and positive for `α > −1`.
pub fn boundary_factor(alpha: Alpha, k: usize) -> Result<f64> {
    hyp2f1(&radial_params(alpha, k), 1.0)
}

/// Radial profiles `F_k(w)` (and optionally `F_k'(w)`) for `k = 0..=K`.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl RadialProfile {
    pub fn new(alpha: Alpha, order: usize, w: f64, with_derivs: bool) -> Self {
        let eval = |k: usize| {
            let p = radial_params(alpha, k);
            // the radial parameters are admissible and w < 1, so evaluation cannot fail
            let v = hyp2f1(&p, w).expect("radial profile converges on [0, 1)");
            let d = if with_derivs {
                hyp2f1_dx(&p, w).expect("radial profile derivative converges on [0, 1)")
            } else {
                0.0
            };
            (v, d)
        };
        let (values, derivs) = (0..=order).map(eval).unzip();
        Self { values, derivs }
    }

    pub fn value(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn deriv(&self, k: usize) -> f64 {
        self.derivs[k]
    }
}

/// On-disk form of a [`SeriesSolution`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub alpha: f64,
    pub order: usize,
    pub coeffs: Vec<CoeffEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub k: i64,
    pub re: f64,
    pub im: f64,
}

/// Truncated series expansion of order `K` with coefficients `c_k`, `|k| ≤ K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution {
    alpha: Alpha,
    order: usize,
    coeffs: BTreeMap<i64, Complex64>,
}

impl SeriesSolution {
    pub fn new(
        alpha: Alpha,
        order: usize,
        coeffs: impl IntoIterator<Item = (i64, Complex64)>,
    ) -> Result<Self> {
        if order == 0 {
            return domain("truncation order must be positive");
        }
        let mut map = BTreeMap::new();
        for (k, c) in coeffs {
            if k.unsigned_abs() as usize > order {
                return domain(format!("coefficient index {k} exceeds order {order}"));
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return domain(format!("coefficient c_{k} is not finite"));
            }
            if map.insert(k, c).is_some() {
                return domain(format!("duplicate coefficient index {k}"));
            }
        }
        let top = order as i64;
        let root = [top, -top]
            .iter()
            .filter_map(|k| map.get(k))
            .map(|c| c.norm().powf(1.0 / order as f64))
            .fold(0.0, f64::max);
        if root > ROOT_TEST_LIMIT {
            return domain(format!(
                "top-order coefficients fail the root test: {root} > {ROOT_TEST_LIMIT}"
            ));
        }
        Ok(Self {
            alpha,
            order,
            coeffs: map,
        })
    }

    /// Solution whose boundary values are the given samples, truncated at `order`.
    pub fn from_boundary(alpha: Alpha, data: &BoundaryData, order: usize) -> Result<Self> {
        let needed = 4 * order + 1;
        if data.len() < needed {
            return Err(Error::Aliasing {
                samples: data.len(),
                order,
                needed,
            });
        }
        let k = order as i64;
        let hat: Vec<(i64, Complex64)> = (-k..=k).map(|k| (k, data.fourier_coefficient(k))).collect();
        let scale = hat.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
        let mut coeffs = Vec::new();
        for (k, c) in hat {
            if c.norm() <= COEFF_CUTOFF * scale || c.norm() == 0.0 {
                continue;
            }
            let factor = boundary_factor(alpha, k.unsigned_abs() as usize)?;
            assert!(factor.abs() >= 1e-14, "boundary factor vanished for alpha > -1");
            coeffs.push((k, c / factor));
        }
        Self::new(alpha, order, coeffs)
    }

    pub fn from_document(doc: &SolutionDocument) -> Result<Self> {
        let alpha = Alpha::new(doc.alpha)?;
        Self::new(
            alpha,
            doc.order,
            doc.coeffs.iter().map(|e| (e.k, Complex64::new(e.re, e.im))),
        )
    }

    pub fn to_document(&self) -> SolutionDocument {
        SolutionDocument {
            alpha: self.alpha.value(),
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| CoeffEntry { k, re: c.re, im: c.im })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SolutionDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("solution document serializes")
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `c_k`, zero when absent.
    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    /// Largest `|k|` carrying a nonzero coefficient.
    fn active_order(&self) -> usize {
        self.coeffs
            .keys()
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn profile(&self, w: f64, with_derivs: bool) -> RadialProfile {
        RadialProfile::new(self.alpha, self.active_order(), w, with_derivs)
    }

    fn evaluate_with(&self, prof: &RadialProfile, z: Complex64) -> Complex64 {
        let top = self.active_order();
        let mut zp = Vec::with_capacity(top + 1);
        let mut acc = Complex64::new(1.0, 0.0);
        for _ in 0..=top {
            zp.push(acc);
            acc *= z;
        }
        self.coeffs
            .iter()
            .map(|(&k, &c)| {
                let m = k.unsigned_abs() as usize;
                let power = if k >= 0 { zp[m] } else { zp[m].conj() };
                c * prof.value(m) * power
            })
            .sum()
    }

    pub fn evaluate(&self, z: DiskPoint) -> Complex64 {
        let prof = self.profile(z.z().norm_sqr(), false);
        self.evaluate_with(&prof, z.z())
    }

    /// Term-wise Wirtinger derivatives, including the `k = 0` terms.
    pub fn wirtinger_derivatives(&self, z: DiskPoint) -> WirtingerPair {
        let zz = z.z();
        let zbar = zz.conj();
        let prof = self.profile(zz.norm_sqr(), true);
        let mut fz = Complex64::default();
        let mut fzbar = Complex64::default();
        for (&k, &c) in &self.coeffs {
            let m = k.unsigned_abs() as usize;
            let mu = m as u32;
            let (f, df) = (prof.value(m), prof.deriv(m));
            if k >= 0 {
                // c_k F(w) z^k
                if m > 0 {
                    fz += c * (m as f64) * f * zz.powu(mu - 1);
                }
                fz += c * df * zz.powu(mu) * zbar;
                fzbar += c * df * zz.powu(mu + 1);
            } else {
                // c_−k F(w) z̄^k
                fz += c * df * zbar.powu(mu + 1);
                fzbar += c * (m as f64) * f * zbar.powu(mu - 1);
                fzbar += c * df * zbar.powu(mu) * zz;
            }
        }
        WirtingerPair { fz, fzbar }
    }

    /// `Σ_k |c_k F_|k|(r²)|² r^{2|k|}`, the mean of `|f|²` over the circle of radius `r`.
    pub fn parseval_sum(&self, r: f64) -> f64 {
        let prof = self.profile(r * r, false);
        self.coeffs
            .iter()
            .map(|(&k, &c)| {
                let m = k.unsigned_abs() as usize;
                (c * prof.value(m)).norm_sqr() * r.powi(2 * m as i32)
            })
            .sum()
    }
}

impl DiskFunction for SeriesSolution {
    fn value(&self, z: DiskPoint) -> Complex64 {
        self.evaluate(z)
    }

    fn circle_values(&self, r: f64, n: usize) -> Vec<Complex64> {
        let prof = self.profile(r * r, false);
        (0..n)
            .map(|j| {
                let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64);
                self.evaluate_with(&prof, z)
            })
            .collect()
    }
}

/// Result of [`poisson_integral`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonEstimate {
    pub value: Complex64,
    /// Set when `|z|` exceeds [`POISSON_MAX_RADIUS`] and the quadrature
    /// may be under-resolved.
    pub ill_conditioned: bool,
}

/// Trapezoid evaluation of Poisson-type integrals for one boundary dataset.
#[derive(Debug, Clone)]
pub struct PoissonIntegrator {
    nodes: Vec<(f64, Complex64)>,
}

impl PoissonIntegrator {
    /// Interpolates the samples trigonometrically onto `n` quadrature nodes.
    pub fn new(data: &BoundaryData, n: usize) -> Result<Self> {
        if n < MIN_SAMPLES {
            return domain(format!("quadrature needs at least {MIN_SAMPLES} nodes, got {n}"));
        }
        let interp = data.interpolant();
        let nodes = (0..n)
            .map(|j| {
                let tau = 2.0 * PI * j as f64 / n as f64;
                (tau, interp.eval(tau))
            })
            .collect();
        Ok(Self { nodes })
    }

    /// `(1/2π) ∫ K_α(z e^{−iτ}) f*(e^{iτ}) dτ`.
    pub fn eval(&self, alpha: Alpha, z: DiskPoint) -> PoissonEstimate {
        let sum: Complex64 = self
            .nodes
            .iter()
            .map(|&(tau, f)| f * kernel_value(alpha, z, tau))
            .sum();
        PoissonEstimate {
            value: sum / self.nodes.len() as f64,
            ill_conditioned: z.r() > POISSON_MAX_RADIUS,
        }
    }
}

/// One-shot Poisson-type integral with `n` quadrature nodes.
pub fn poisson_integral(
    alpha: Alpha,
    data: &BoundaryData,
    z: DiskPoint,
    n: usize,
) -> Result<PoissonEstimate> {
    Ok(PoissonIntegrator::new(data, n)?.eval(alpha, z))
}

/// Smallest stencil step accepted by [`pde_residual`].
pub const MIN_FD_STEP: f64 = 1e-5;
/// Largest stencil step accepted by [`pde_residual`].
pub const MAX_FD_STEP: f64 = 1e-2;

/// `T_α f` at `z` with centred differences of step `h`.
///
/// `T_α = −(α²/4)(1−|z|²)^(−α−1) + (α/2)(1−|z|²)^(−α−1)(z∂_z + z̄∂_z̄) + ¼(1−|z|²)^(−α) Δ`.
pub fn pde_residual(f: &dyn DiskFunction, alpha: f64, z: DiskPoint, h: f64) -> Result<Complex64> {
    if !(MIN_FD_STEP..=MAX_FD_STEP).contains(&h) {
        return domain(format!("finite-difference step must lie in [1e-5, 1e-2], got {h}"));
    }
    if z.r() + 2.0 * h >= 1.0 {
        return domain(format!("stencil of step {h} at {} leaves the disk", z.z()));
    }
    let zz = z.z();
    let at = |d: Complex64| f.value(DiskPoint::new(zz + d).expect("stencil inside the disk"));
    let hx = Complex64::new(h, 0.0);
    let hy = Complex64::new(0.0, h);
    let center = at(Complex64::default());
    let (east, west, north, south) = (at(hx), at(-hx), at(hy), at(-hy));
    let fx = (east - west) / (2.0 * h);
    let fy = (north - south) / (2.0 * h);
    let laplacian = (east + west + north + south - 4.0 * center) / (h * h);
    // z ∂_z + z̄ ∂_z̄ = x ∂_x + y ∂_y
    let radial = zz.re * fx + zz.im * fy;
    let one_minus_w = 1.0 - zz.norm_sqr();
    let weight = one_minus_w.powf(-alpha - 1.0);
    Ok(-(alpha * alpha / 4.0) * weight * center
        + (alpha / 2.0) * weight * radial
        + 0.25 * one_minus_w.powf(-alpha) * laplacian)
}

/// Polar sampling grid for [`sup_estimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolarGrid {
    pub radial: usize,
    pub angular: usize,
}

impl Default for PolarGrid {
    fn default() -> Self {
        Self {
            radial: 48,
            angular: 256,
        }
    }
}

/// Lower estimate of `sup |f|` over the disk: the maximum over a polar grid
/// whose radii `1 − 10^(−4i/(n−1))` cluster toward [`SUP_MAX_RADIUS`].
pub fn sup_estimate(f: &dyn DiskFunction, grid: PolarGrid) -> Result<f64> {
    if grid.radial < 16 || grid.angular < 16 {
        return domain("sup_estimate grid counts must be at least 16");
    }
    let last = (grid.radial - 1) as f64;
    let mut best = 0.0f64;
    for i in 0..grid.radial {
        let r = 1.0 - 10f64.powf(-4.0 * i as f64 / last);
        for v in f.circle_values(r, grid.angular) {
            best = best.max(v.norm());
        }
    }
    Ok(best)
}

/// Exponent `p` of a Hardy-space mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HardyExponent {
    Finite(f64),
    Infinite,
}

impl HardyExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Self::Infinite)
        } else if p >= 1.0 && p.is_finite() {
            Ok(Self::Finite(p))
        } else {
            domain(format!("Hardy exponent must be >= 1 or infinite, got {p}"))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Self::Finite(p) => p,
            Self::Infinite => f64::INFINITY,
        }
    }
}

impl std::str::FromStr for HardyExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Self::Infinite),
            t => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid exponent {t:?}")))?;
                Self::new(p)
            }
        }
    }
}

/// Integral mean `M_p(r, f) = ((1/2π) ∫ |f(re^{iθ})|^p dθ)^(1/p)` on `n`
/// trapezoid nodes; the maximum modulus for `p = ∞`.
pub fn hardy_mean(f: &dyn DiskFunction, p: HardyExponent, r: f64, n: usize) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("Hardy mean radius must lie in (0, 1), got {r}"));
    }
    if n < MIN_SAMPLES {
        return domain(format!("Hardy mean needs at least {MIN_SAMPLES} nodes, got {n}"));
    }
    let values = f.circle_values(r, n);
    Ok(match p {
        HardyExponent::Infinite => values.iter().map(|v| v.norm()).fold(0.0, f64::max),
        HardyExponent::Finite(p) => {
            let mean = values.iter().map(|v| v.norm().powf(p)).sum::<f64>() / n as f64;
            mean.powf(1.0 / p)
        }
    })
}

/// Estimate of `‖f‖_p = sup_r M_p(r, f)` as the maximum over `r = 1 − 2^−j`, `j = 1..=12`.
pub fn hardy_norm(f: &dyn DiskFunction, p: HardyExponent, n: usize) -> Result<f64> {
    let mut best = 0.0f64;
    for j in 1..=HARDY_LEVELS {
        best = best.max(hardy_mean(f, p, 1.0 - 2f64.powi(-j), n)?);
    }
    Ok(best)
}
