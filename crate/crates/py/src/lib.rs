//! Python bindings: `import pyalpharm`.

use std::path::PathBuf;

use alpharm::bounds::{self, BoundReport};
use alpharm::kernel::{self, Alpha, DiskPoint, MeanMethod};
use alpharm::landau::{self, LandauInputs, LandauResult};
use alpharm::solution::{self, HardyExponent, PolarGrid};
use alpharm::verify::{verify_solution, VerifyConfig};
use alpharm::Error;
use num_complex::Complex64;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn err(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn alpha(a: f64) -> PyResult<Alpha> {
    Alpha::new(a).map_err(err)
}

fn point(z: Complex64) -> PyResult<DiskPoint> {
    DiskPoint::new(z).map_err(err)
}

fn exponent(p: f64) -> PyResult<HardyExponent> {
    HardyExponent::new(p).map_err(err)
}

/// Gauss hypergeometric function 2F1(a, b; c; x) for x in [0, 1].
#[pyfunction]
fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> PyResult<f64> {
    let p = alpharm::special::HypParams::new(a, b, c).map_err(err)?;
    alpharm::special::hyp2f1(&p, x).map_err(err)
}

/// Normalizing constant Gamma(alpha/2 + 1)^2 / Gamma(1 + alpha).
#[pyfunction]
fn c_alpha(alpha: f64) -> PyResult<f64> {
    alpharm::special::c_alpha(alpha).map_err(err)
}

#[pyfunction]
fn kernel_value(a: f64, z: Complex64, t: f64) -> PyResult<f64> {
    Ok(kernel::kernel_value(alpha(a)?, point(z)?, t))
}

/// Circular mean of the kernel at radius r. `method` is "closed", "quad" or "adaptive".
#[pyfunction]
#[pyo3(signature = (a, r, method = "closed", n = kernel::DEFAULT_QUAD_N))]
fn kernel_mean(a: f64, r: f64, method: &str, n: usize) -> PyResult<f64> {
    let m = match method {
        "closed" => MeanMethod::Closed,
        "quad" => MeanMethod::Quadrature(n),
        "adaptive" => MeanMethod::Adaptive { start: n },
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    kernel::kernel_mean(alpha(a)?, r, m).map_err(err)
}

#[pyfunction]
fn kernel_mean_slope(a: f64, r: f64) -> PyResult<f64> {
    kernel::kernel_mean_slope(alpha(a)?, r).map_err(err)
}

/// Samples of a function on the circle at theta_j = 2 pi j / N.
#[pyclass(name = "BoundaryData", module = "pyalpharm", frozen)]
struct PyBoundary(solution::BoundaryData);

#[pymethods]
impl PyBoundary {
    #[new]
    fn new(samples: Vec<Complex64>) -> PyResult<Self> {
        solution::BoundaryData::new(samples).map(Self).map_err(err)
    }

    /// Reads a theta,re,im CSV file.
    #[staticmethod]
    fn read_csv(path: PathBuf) -> PyResult<Self> {
        let file = std::fs::File::open(&path).map_err(|e| err(e.into()))?;
        solution::BoundaryData::read_csv(file).map(Self).map_err(err)
    }

    fn write_csv(&self, path: PathBuf) -> PyResult<()> {
        let file = std::fs::File::create(&path).map_err(|e| err(e.into()))?;
        self.0.write_csv(file).map_err(err)
    }

    #[getter]
    fn samples(&self) -> Vec<Complex64> {
        self.0.samples().to_vec()
    }

    fn fourier_coefficient(&self, k: i64) -> Complex64 {
        self.0.fourier_coefficient(k)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

fn report_dict<'py>(py: Python<'py>, r: &BoundReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("label", &r.label)?;
    d.set_item("lhs", r.lhs)?;
    d.set_item("rhs", r.rhs)?;
    d.set_item("slack", r.slack)?;
    d.set_item("satisfied", r.satisfied)?;
    Ok(d)
}

fn landau_dict<'py>(py: Python<'py>, r: &LandauResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("gamma0", r.gamma0)?;
    d.set_item("mstar", r.mstar)?;
    d.set_item("rho0", r.rho0)?;
    d.set_item("r0_lower", r.r0_lower)?;
    d.set_item("univalence_radius", r.univalence_radius)?;
    d.set_item("covering_radius", r.covering_radius)?;
    Ok(d)
}

/// Truncated series sum of c_k F_k(|z|^2) z^k + c_{-k} F_k(|z|^2) conj(z)^k.
#[pyclass(name = "SeriesSolution", module = "pyalpharm", frozen)]
struct PySolution(solution::SeriesSolution);

#[pymethods]
impl PySolution {
    /// `coeffs` maps k in [-order, order] to c_k.
    #[new]
    fn new(a: f64, order: usize, coeffs: Vec<(i64, Complex64)>) -> PyResult<Self> {
        solution::SeriesSolution::new(alpha(a)?, order, coeffs).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_boundary(a: f64, data: &PyBoundary, order: usize) -> PyResult<Self> {
        solution::SeriesSolution::from_boundary(alpha(a)?, &data.0, order)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        solution::SeriesSolution::from_json(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha().value()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn coeff(&self, k: i64) -> Complex64 {
        self.0.coeff(k)
    }

    fn __call__(&self, z: Complex64) -> PyResult<Complex64> {
        Ok(self.0.evaluate(point(z)?))
    }

    /// (f_z, f_zbar) at z.
    fn wirtinger(&self, z: Complex64) -> PyResult<(Complex64, Complex64)> {
        let d = self.0.wirtinger_derivatives(point(z)?);
        Ok((d.fz, d.fzbar))
    }

    fn jacobian(&self, z: Complex64) -> PyResult<f64> {
        Ok(self.0.wirtinger_derivatives(point(z)?).jacobian())
    }

    fn parseval_sum(&self, r: f64) -> f64 {
        self.0.parseval_sum(r)
    }

    #[pyo3(signature = (radial = 48, angular = 256))]
    fn sup_estimate(&self, radial: usize, angular: usize) -> PyResult<f64> {
        solution::sup_estimate(&self.0, PolarGrid { radial, angular }).map_err(err)
    }

    #[pyo3(signature = (p, n = solution::DEFAULT_CIRCLE_NODES))]
    fn hardy_norm(&self, p: f64, n: usize) -> PyResult<f64> {
        solution::hardy_norm(&self.0, exponent(p)?, n).map_err(err)
    }

    #[pyo3(signature = (z, h = 1e-3))]
    fn pde_residual(&self, z: Complex64, h: f64) -> PyResult<Complex64> {
        solution::pde_residual(&self.0, self.0.alpha().value(), point(z)?, h).map_err(err)
    }

    /// Runs the randomized check suite; returns the worst report per check.
    #[pyo3(signature = (seed = 0, points = 200, m = None))]
    fn verify<'py>(&self, py: Python<'py>, seed: u64, points: usize, m: Option<f64>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let cfg = VerifyConfig { points, m, ..VerifyConfig::default() };
        let out = verify_solution(&self.0, &cfg, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(err)?;
        out.reports.iter().map(|r| report_dict(py, r)).collect()
    }

    fn __repr__(&self) -> String {
        format!("SeriesSolution(alpha={}, order={})", self.0.alpha().value(), self.0.order())
    }
}

/// Poisson-type integral of the boundary samples at z.
#[pyfunction]
#[pyo3(signature = (a, data, z, n = 1024))]
fn poisson_integral(a: f64, data: &PyBoundary, z: Complex64, n: usize) -> PyResult<Complex64> {
    Ok(solution::poisson_integral(alpha(a)?, &data.0, point(z)?, n).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (a, m, r, tight = true))]
fn gradient_bound(a: f64, m: f64, r: f64, tight: bool) -> PyResult<f64> {
    bounds::gradient_bound(alpha(a)?, m, r, tight).map_err(err)
}

#[pyfunction]
fn center_deviation_bound(a: f64, m: f64, z: Complex64) -> PyResult<f64> {
    bounds::center_deviation_bound(alpha(a)?, m, point(z)?).map_err(err)
}

#[pyfunction]
fn increment_bound(m: f64, r: f64) -> PyResult<f64> {
    bounds::increment_bound(m, r).map_err(err)
}

#[pyfunction]
fn growth_bound(a: f64, p: f64, norm: f64, z: Complex64) -> PyResult<f64> {
    bounds::growth_bound(alpha(a)?, exponent(p)?.value(), norm, point(z)?).map_err(err)
}

#[pyfunction]
fn colonna_bound(z: Complex64) -> PyResult<f64> {
    Ok(bounds::colonna_bound(point(z)?))
}

#[pyfunction]
fn coefficient_sum_bound(a: f64, m: f64, k: u32) -> PyResult<f64> {
    bounds::coefficient_sum_bound(alpha(a)?, m, k).map_err(err)
}

/// Root of the Landau profile for the given alpha, scale delta and bound M.
#[pyfunction]
fn solve_rho(a: f64, scale: f64, bound: f64) -> PyResult<f64> {
    let inputs = LandauInputs::new(a, scale, bound).map_err(err)?;
    landau::solve_rho(&inputs).map_err(err)
}

/// (gamma0, mu_min) for the Hardy exponent p (float("inf") allowed).
#[pyfunction]
fn minimize_mu(a: f64, p: f64) -> PyResult<(f64, f64)> {
    let m = landau::minimize_mu(a, exponent(p)?).map_err(err)?;
    Ok((m.gamma0, m.mu_min))
}

#[pyfunction]
#[pyo3(name = "landau_hardy")]
fn landau_hardy_py<'py>(py: Python<'py>, a: f64, p: f64, norm: f64, lam: f64) -> PyResult<Bound<'py, PyDict>> {
    let r = landau::landau_hardy(a, exponent(p)?, norm, lam).map_err(err)?;
    landau_dict(py, &r)
}

#[pyfunction]
#[pyo3(name = "landau_beta")]
fn landau_beta_py<'py>(py: Python<'py>, a: f64, beta: f64, m: f64) -> PyResult<Bound<'py, PyDict>> {
    let r = landau::landau_beta(a, beta, m).map_err(err)?;
    landau_dict(py, &r)
}

#[pymodule]
fn pyalpharm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBoundary>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(hyp2f1, m)?)?;
    m.add_function(wrap_pyfunction!(c_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_value, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_mean, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_mean_slope, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_integral, m)?)?;
    m.add_function(wrap_pyfunction!(gradient_bound, m)?)?;
    m.add_function(wrap_pyfunction!(center_deviation_bound, m)?)?;
    m.add_function(wrap_pyfunction!(increment_bound, m)?)?;
    m.add_function(wrap_pyfunction!(growth_bound, m)?)?;
    m.add_function(wrap_pyfunction!(colonna_bound, m)?)?;
    m.add_function(wrap_pyfunction!(coefficient_sum_bound, m)?)?;
    m.add_function(wrap_pyfunction!(solve_rho, m)?)?;
    m.add_function(wrap_pyfunction!(minimize_mu, m)?)?;
    m.add_function(wrap_pyfunction!(landau_hardy_py, m)?)?;
    m.add_function(wrap_pyfunction!(landau_beta_py, m)?)?;
    Ok(())
}
