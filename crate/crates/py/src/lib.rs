//! Python bindings. Reports come back as plain dicts and lists; exact
//! coefficients come back as `fractions.Fraction`.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;
use serde::Serialize;

use seiffert_core::bernoulli;
use seiffert_core::means::{self, MeanKind, PositivePair};
use seiffert_core::oracle::Oracle;
use seiffert_core::proof::{self, AuxFamily};
use seiffert_core::series::{self, SeriesKind, TruncatedSeries};
use seiffert_core::sharp::{self, SweepConfig};
use seiffert_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(m) => PyValueError::new_err(m),
        Error::Range(m) => PyIndexError::new_err(m),
        Error::Bracket(m) | Error::NoWitness(m) => PyRuntimeError::new_err(m),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for seiffert_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// Serializes through JSON into native Python containers.
fn to_python<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let num: BigInt = q.numer().clone();
    let den: BigInt = q.denom().clone();
    py.import("fractions")?.getattr("Fraction")?.call1((num, den))
}

fn series_kind(name: &str) -> PyResult<SeriesKind> {
    match name {
        "cot" => Ok(SeriesKind::Cot),
        "csc2" => Ok(SeriesKind::Csc2),
        "ratio" => Ok(SeriesKind::Ratio),
        other => Err(PyValueError::new_err(format!("unknown series '{other}'"))),
    }
}

/// A validated pair of positive reals.
#[pyclass(name = "Pair", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyPair(PositivePair);

#[pymethods]
impl PyPair {
    #[new]
    fn new(a: f64, b: f64) -> PyResult<Self> {
        PositivePair::new(a, b).py().map(PyPair)
    }

    /// Pair `(x, 1)`.
    #[staticmethod]
    fn from_ratio(x: f64) -> PyResult<Self> {
        PositivePair::from_ratio(x).py().map(PyPair)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a()
    }

    #[getter]
    fn b(&self) -> f64 {
        self.0.b()
    }

    fn seiffert(&self) -> f64 {
        means::seiffert_t(self.0)
    }

    fn arithmetic(&self) -> f64 {
        means::arithmetic(self.0)
    }

    fn geometric(&self) -> f64 {
        means::geometric(self.0)
    }

    fn root_square(&self) -> f64 {
        means::root_square(self.0)
    }

    fn contra_harmonic(&self) -> f64 {
        means::contra_harmonic(self.0)
    }

    fn centroidal(&self) -> f64 {
        means::centroidal_c(self.0)
    }

    fn power(&self, p: f64) -> PyResult<f64> {
        means::power_mean(p, self.0).py()
    }

    /// Centroidal mean of the blended pair, weight in `[1/2, 1]`.
    fn blend(&self, x: f64) -> PyResult<f64> {
        means::blend_mean_j(x, self.0).py()
    }

    /// Any mean by name, e.g. `"seiffert"` or `"power(2)"`.
    fn mean(&self, kind: &str) -> PyResult<f64> {
        let kind: MeanKind = kind.parse().py()?;
        means::classical_mean(kind, self.0).py()
    }

    fn __repr__(&self) -> String {
        format!("Pair({}, {})", self.0.a(), self.0.b())
    }
}

#[pyfunction]
fn seiffert_t(a: f64, b: f64) -> PyResult<f64> {
    Ok(means::seiffert_t(PositivePair::new(a, b).py()?))
}

#[pyfunction]
fn mean(kind: &str, a: f64, b: f64) -> PyResult<f64> {
    let kind: MeanKind = kind.parse().py()?;
    means::classical_mean(kind, PositivePair::new(a, b).py()?).py()
}

#[pyfunction]
fn power_mean(p: f64, a: f64, b: f64) -> PyResult<f64> {
    means::power_mean(p, PositivePair::new(a, b).py()?).py()
}

#[pyfunction]
fn blend_mean_j(x: f64, a: f64, b: f64) -> PyResult<f64> {
    means::blend_mean_j(x, PositivePair::new(a, b).py()?).py()
}

/// Reference value of a mean as a decimal string with `digits` places.
#[pyfunction]
#[pyo3(signature = (kind, a, b, digits = 100))]
fn reference_mean(kind: &str, a: f64, b: f64, digits: u32) -> PyResult<String> {
    PositivePair::new(a, b).py()?;
    let o = Oracle::new(digits);
    let v = match kind.parse::<MeanKind>().py()? {
        MeanKind::Seiffert => o.seiffert(a, b),
        MeanKind::Arithmetic => o.arithmetic(a, b),
        MeanKind::Geometric => o.geometric(a, b),
        MeanKind::RootSquare => o.root_square(a, b),
        MeanKind::ContraHarmonic => o.contra_harmonic(a, b),
        MeanKind::Centroidal => o.centroidal(a, b),
        MeanKind::Power(_) => return Err(PyValueError::new_err("no reference evaluation for power means")),
    };
    Ok(v.to_string())
}

#[pyfunction]
fn bernoulli_even(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &bernoulli::bernoulli_even(n).py()?)
}

#[pyfunction]
fn zeta_even(q: usize) -> PyResult<f64> {
    bernoulli::zeta_even(q).py()
}

#[pyfunction]
#[pyo3(signature = (x, order = series::DEFAULT_ORDER))]
fn cot_series(x: f64, order: usize) -> PyResult<f64> {
    series::cot_series(x, order).py()
}

#[pyfunction]
#[pyo3(signature = (x, order = series::DEFAULT_ORDER))]
fn csc2_series(x: f64, order: usize) -> PyResult<f64> {
    series::csc2_series(x, order).py()
}

#[pyfunction]
#[pyo3(signature = (theta, order = series::DEFAULT_ORDER))]
fn ratio_series_r(theta: f64, order: usize) -> PyResult<f64> {
    series::ratio_series_r(theta, order).py()
}

/// Exact coefficients of `"cot"`, `"csc2"` or `"ratio"`, term `n = 1` first.
#[pyfunction]
#[pyo3(signature = (kind, order = series::DEFAULT_ORDER))]
fn series_coefficients<'py>(py: Python<'py>, kind: &str, order: usize) -> PyResult<Bound<'py, PyList>> {
    let s = TruncatedSeries::new(series_kind(kind)?, order).py()?;
    let items = s
        .exact_coefficients()
        .iter()
        .map(|c| fraction(py, c))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// Bound on the truncation remainder on the series' default interval.
#[pyfunction]
#[pyo3(signature = (kind, order = series::DEFAULT_ORDER))]
fn tail_bound(kind: &str, order: usize) -> PyResult<f64> {
    Ok(TruncatedSeries::new(series_kind(kind)?, order).py()?.tail_bound())
}

#[pyfunction]
fn ratio_ta_ca(t: f64) -> PyResult<f64> {
    sharp::ratio_ta_ca(t).py()
}

#[pyfunction]
fn lambda_closed() -> f64 {
    sharp::lambda_closed()
}

#[pyfunction]
fn lambda_numeric() -> PyResult<f64> {
    sharp::lambda_numeric().py()
}

#[pyfunction]
#[pyo3(signature = (scan_points = 1_000_000))]
fn discover_constants(py: Python<'_>, scan_points: usize) -> PyResult<Bound<'_, PyAny>> {
    let rows = py.detach(|| sharp::discover_constants(scan_points)).py()?;
    to_python(py, &rows)
}

/// Runs `"thm1"`, `"thm2"`, `"priors"` or `"chain"` and returns the report.
#[pyfunction]
#[pyo3(signature = (suite, samples = 1_000_000, seed = None, ratio_max = 1e8, alpha_shift = 0.0, beta_shift = 0.0))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    samples: usize,
    seed: Option<u64>,
    ratio_max: f64,
    alpha_shift: f64,
    beta_shift: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let config = SweepConfig {
        samples,
        seed: seed.unwrap_or(SweepConfig::default().seed),
        ratio_max,
        lower_shift: alpha_shift,
        upper_shift: beta_shift,
    };
    let run = match suite {
        "thm1" => sharp::theorem_1_1_verify,
        "thm2" => sharp::theorem_1_2_verify,
        "priors" => sharp::prior_bounds_regression,
        "chain" => sharp::ordering_chain_verify,
        other => return Err(PyValueError::new_err(format!("unknown suite '{other}'"))),
    };
    let report = py.detach(|| run(&config)).py()?;
    to_python(py, &report)
}

#[pyfunction]
fn aux_f(p: f64, t: f64) -> PyResult<f64> {
    AuxFamily::new(p).py()?.f(t).py()
}

#[pyfunction]
fn f_chain(p: f64, t: f64, level: u8) -> PyResult<f64> {
    AuxFamily::new(p).py()?.f_chain(t, level).py()
}

#[pyfunction]
#[pyo3(signature = (grid_points = 10_000))]
fn certify_lambda_chain(py: Python<'_>, grid_points: usize) -> PyResult<Bound<'_, PyAny>> {
    let cert = py.detach(|| proof::certify_lambda_chain(grid_points)).py()?;
    to_python(py, &cert)
}

#[pymodule]
fn seiffert(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPair>()?;
    m.add_function(wrap_pyfunction!(seiffert_t, m)?)?;
    m.add_function(wrap_pyfunction!(mean, m)?)?;
    m.add_function(wrap_pyfunction!(power_mean, m)?)?;
    m.add_function(wrap_pyfunction!(blend_mean_j, m)?)?;
    m.add_function(wrap_pyfunction!(reference_mean, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_even, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_even, m)?)?;
    m.add_function(wrap_pyfunction!(cot_series, m)?)?;
    m.add_function(wrap_pyfunction!(csc2_series, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_series_r, m)?)?;
    m.add_function(wrap_pyfunction!(series_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(tail_bound, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_ta_ca, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_closed, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(discover_constants, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(aux_f, m)?)?;
    m.add_function(wrap_pyfunction!(f_chain, m)?)?;
    m.add_function(wrap_pyfunction!(certify_lambda_chain, m)?)?;
    Ok(())
}
