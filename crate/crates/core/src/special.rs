//! Scalar special functions: Gamma, Pochhammer symbols and the Gauss
//! hypergeometric function `₂F₁(a, b; c; x)` restricted to `x ∈ [0, 1]`.
//!
//! The hypergeometric series is summed by term ratios. Above
//! [`CONNECTION_THRESHOLD`] the direct series converges too slowly, so the
//! value is obtained from the standard `x ↦ 1 − x` connection formulas
//! (including the logarithmic case when `c − a − b` is an integer), whose
//! inner series run in `1 − x ≤ 0.1`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Largest argument accepted by [`gamma_fn`].
pub const GAMMA_MAX_ARG: f64 = 170.0;

/// Partial sums stop once this many consecutive terms are negligible.
const STALL_TERMS: usize = 3;
const SERIES_RTOL: f64 = 1e-16;
/// Term budget for every series in this module.
pub const SERIES_CAP: usize = 100_000;

/// Above this `x` the connection formulas replace the direct series.
pub const CONNECTION_THRESHOLD: f64 = 0.9;

/// `c − a − b` closer than this to an integer takes the logarithmic branch.
const INTEGER_SNAP: f64 = 1e-9;

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

fn lanczos_sum(x: f64) -> f64 {
    // x = s - 1
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, &c)| acc + c / (x + (i + 1) as f64))
}

/// Gamma for `s ≥ 0.5` via Lanczos (g = 7, 9 terms).
fn gamma_lanczos(s: f64) -> f64 {
    let x = s - 1.0;
    let t = x + LANCZOS_G + 0.5;
    // split the power so that t^(x+1/2) e^-t does not overflow near s = 170
    let half = t.powf((x + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(x)
}

/// `Γ(s)` for `0 < s ≤ 170`.
pub fn gamma_fn(s: f64) -> Result<f64> {
    if !(s > 0.0 && s <= GAMMA_MAX_ARG) {
        return domain(format!("gamma_fn requires 0 < s <= 170, got {s}"));
    }
    Ok(gamma_positive(s))
}

fn gamma_positive(s: f64) -> f64 {
    if s == s.round() && s <= 171.0 {
        // exact for integer arguments
        return factorial(s as u32 - 1);
    }
    if s < 0.5 {
        gamma_lanczos(s + 1.0) / s
    } else {
        gamma_lanczos(s)
    }
}

/// `ln Γ(s)` for `s > 0`, valid far beyond the range of [`gamma_fn`].
pub fn ln_gamma(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return domain(format!("ln_gamma requires finite s > 0, got {s}"));
    }
    Ok(ln_gamma_positive(s))
}

fn ln_gamma_positive(s: f64) -> f64 {
    if s < 0.5 {
        return ln_gamma_positive(s + 1.0) - s.ln();
    }
    if s <= 100.0 {
        return gamma_lanczos(s).ln();
    }
    let x = s - 1.0;
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Gamma on the whole real line except the poles, by reflection below 1/2.
/// Returns an infinite value at a pole or on overflow.
pub(crate) fn gamma_real(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x >= 0.5 {
        if x > 171.6 {
            return f64::INFINITY;
        }
        gamma_positive(x)
    } else {
        PI / ((PI * x).sin() * gamma_real(1.0 - x))
    }
}

/// `1/Γ(x)`, zero at the poles.
pub(crate) fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / gamma_real(x)
    }
}

/// Digamma `ψ(x)` for real `x` off the poles.
pub(crate) fn digamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::NAN;
    }
    if x < 0.5 {
        return digamma(1.0 - x) - PI / (PI * x).tan();
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Bernoulli tail: 1/12, 1/120, 1/252, 1/240, 1/132, 691/32760, 1/12
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
    acc + x.ln() - 0.5 / x - tail
}

/// Rising factorial `(a)_n = a(a+1)…(a+n−1)` as an explicit product.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).map(|i| a + i as f64).product()
}

/// `c_α = Γ(α/2 + 1)² / Γ(1 + α)`, the normalising constant of the kernel.
pub fn c_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return domain(format!("c_alpha requires alpha > -1, got {alpha}"));
    }
    let top = alpha / 2.0 + 1.0;
    let bottom = 1.0 + alpha;
    if bottom <= GAMMA_MAX_ARG {
        Ok(gamma_positive(top).powi(2) / gamma_positive(bottom))
    } else {
        Ok((2.0 * ln_gamma_positive(top) - ln_gamma_positive(bottom)).exp())
    }
}

/// Parameters `(a, b; c)` of `₂F₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    a: f64,
    b: f64,
    c: f64,
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return domain("hypergeometric parameters must be finite");
        }
        if is_nonpositive_integer(c) {
            return domain(format!("lower parameter c = {c} is zero or a negative integer"));
        }
        Ok(Self { a, b, c })
    }

    /// Radial profile parameters `(−α/2, k − α/2; k + 1)` of the series expansion.
    pub fn radial(alpha: f64, k: u32) -> Self {
        let a = -alpha / 2.0;
        Self {
            a,
            b: k as f64 + a,
            c: k as f64 + 1.0,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `c − a − b`.
    pub fn excess(&self) -> f64 {
        self.c - self.a - self.b
    }

    /// Degree of the polynomial when the series terminates.
    pub fn terminating_degree(&self) -> Option<u32> {
        let deg = |v: f64| is_nonpositive_integer(v).then(|| (-v) as u32);
        match (deg(self.a), deg(self.b)) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (p, q) => p.or(q),
        }
    }

    fn shifted(&self) -> Self {
        Self {
            a: self.a + 1.0,
            b: self.b + 1.0,
            c: self.c + 1.0,
        }
    }
}

/// `₂F₁(a, b; c; x)` for `x ∈ [0, 1]`.
///
/// At `x = 1` the Gauss summation `Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b))` is used
/// and requires `c − a − b > 0`.
pub fn hyp2f1(p: &HypParams, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("hyp2f1 is restricted to x in [0, 1], got {x}"));
    }
    if x == 1.0 {
        if !(p.excess() > 0.0) {
            return domain(format!(
                "hyp2f1 at x = 1 requires c - a - b > 0, got {}",
                p.excess()
            ));
        }
        if let Some(n) = p.terminating_degree() {
            return Ok(polynomial(p, n, 1.0));
        }
        return gauss_at_one(p);
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if let Some(n) = p.terminating_degree() {
        return Ok(polynomial(p, n, x));
    }
    if x <= CONNECTION_THRESHOLD {
        return series(p.a, p.b, p.c, x);
    }
    match connection(p, x) {
        Ok(v) if v.is_finite() => Ok(v),
        // gamma overflow for extreme parameters; the direct sum may still fit the budget
        Ok(_) => series(p.a, p.b, p.c, x),
        Err(e) => Err(e),
    }
}

/// Derivative `d/dx ₂F₁(a, b; c; x) = (ab/c) ₂F₁(a+1, b+1; c+1; x)` on `[0, 1)`.
pub fn hyp2f1_dx(p: &HypParams, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return domain(format!("hyp2f1_dx is restricted to x in [0, 1), got {x}"));
    }
    let scale = p.a * p.b / p.c;
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(scale * hyp2f1(&p.shifted(), x)?)
}

/// Gauss summation at `x = 1`. Requires `c − a − b > 0`.
pub fn gauss_at_one(p: &HypParams) -> Result<f64> {
    let m = p.excess();
    if !(m > 0.0) {
        return domain(format!("Gauss summation requires c - a - b > 0, got {m}"));
    }
    let direct = gamma_real(p.c) * gamma_real(m) * rgamma(p.c - p.a) * rgamma(p.c - p.b);
    if direct.is_finite() {
        return Ok(direct);
    }
    // large parameters: combine in log space with explicit signs
    let mut log_sum = 0.0;
    let mut sign = 1.0;
    for (arg, power) in [(p.c, 1.0), (m, 1.0), (p.c - p.a, -1.0), (p.c - p.b, -1.0)] {
        if is_nonpositive_integer(arg) {
            // the Γ(c) pole is excluded by construction, so this is a 1/Γ zero
            return Ok(0.0);
        }
        let (lg, s) = ln_gamma_signed(arg);
        log_sum += power * lg;
        sign *= s;
    }
    Ok(sign * log_sum.exp())
}

fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (ln_gamma_positive(x), 1.0);
    }
    // reflection: Γ(x) = π / (sin(πx) Γ(1−x))
    let s = (PI * x).sin();
    (PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x), s.signum())
}

fn polynomial(p: &HypParams, degree: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..degree {
        let nf = n as f64;
        term *= (p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + 1.0)) * x;
        sum += term;
    }
    sum
}

/// Direct partial sums of the defining series. Lower parameter may be any
/// value off the poles.
fn series(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for n in 0..SERIES_CAP {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term.abs() <= SERIES_RTOL * sum.abs() {
            small += 1;
            if small >= STALL_TERMS {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence { terms: SERIES_CAP })
}

fn connection(p: &HypParams, x: f64) -> Result<f64> {
    let m = p.excess();
    let nearest = m.round();
    if (m - nearest).abs() < INTEGER_SNAP {
        let m = nearest as i64;
        if m >= 0 {
            return log_connection(p.a, p.b, m as u32, x);
        }
        // Euler: F(a,b;c;x) = (1−x)^(c−a−b) F(c−a, c−b; c; x), raising the excess to −m
        let euler = HypParams::new(p.c - p.a, p.c - p.b, p.c)?;
        let scale = (1.0 - x).powi(m as i32);
        let inner = match euler.terminating_degree() {
            Some(n) => polynomial(&euler, n, x),
            None => log_connection(euler.a, euler.b, (-m) as u32, x)?,
        };
        return Ok(scale * inner);
    }
    let y = 1.0 - x;
    let (a, b, c) = (p.a, p.b, p.c);
    let first = gamma_real(c) * gamma_real(m) * rgamma(c - a) * rgamma(c - b) * series(a, b, 1.0 - m, y)?;
    let second = y.powf(m)
        * gamma_real(c)
        * gamma_real(-m)
        * rgamma(a)
        * rgamma(b)
        * series(c - a, c - b, 1.0 + m, y)?;
    Ok(first + second)
}

/// `F(a, b; a+b+m; x)` for a nonnegative integer `m` (logarithmic case),
/// assuming neither `a` nor `b` is a nonpositive integer.
fn log_connection(a: f64, b: f64, m: u32, x: f64) -> Result<f64> {
    let y = 1.0 - x;
    let mf = m as f64;
    let c = a + b + mf;

    let mut finite = 0.0;
    if m > 0 {
        // Σ_{k<m} (a)_k (b)_k (m−k−1)! / k! (x−1)^k
        let mut ratio = 1.0; // (a)_k (b)_k / k! (x−1)^k
        for k in 0..m {
            let kf = k as f64;
            finite += ratio * factorial(m - k - 1);
            ratio *= (a + kf) * (b + kf) / (kf + 1.0) * (-y);
        }
        finite *= rgamma(a + mf) * rgamma(b + mf);
    }

    let ln_y = y.ln();
    let mut psi_k1 = digamma(1.0);
    let mut psi_km1 = digamma(mf + 1.0);
    let mut psi_a = digamma(a + mf);
    let mut psi_b = digamma(b + mf);
    let mut coef = 1.0 / factorial(m); // (a+m)_k (b+m)_k / (k! (k+m)!) y^k
    let mut sum = 0.0;
    let mut small = 0;
    let mut converged = false;
    for k in 0..SERIES_CAP {
        let kf = k as f64;
        let term = coef * (ln_y - psi_k1 - psi_km1 + psi_a + psi_b);
        sum += term;
        if term.abs() <= SERIES_RTOL * sum.abs() {
            small += 1;
            if small >= STALL_TERMS {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
        coef *= (a + mf + kf) * (b + mf + kf) / ((kf + 1.0) * (kf + mf + 1.0)) * y;
        psi_k1 += 1.0 / (kf + 1.0);
        psi_km1 += 1.0 / (kf + mf + 1.0);
        psi_a += 1.0 / (a + mf + kf);
        psi_b += 1.0 / (b + mf + kf);
    }
    if !converged {
        return Err(Error::NonConvergence { terms: SERIES_CAP });
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let log_part = sign * y.powi(m as i32) * rgamma(a) * rgamma(b) * sum;
    Ok(gamma_real(c) * (finite - log_part))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}
