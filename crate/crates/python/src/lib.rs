//! Python bindings: `import pymodsurf`.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use modsurf::lengths;
use modsurf::psl2;
use modsurf::spectral::{self, residuals};
use modsurf::transfer::{self, Discretization, SpectralParameter};
use modsurf::Error;

create_exception!(pymodsurf, NonConvergenceError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        Error::NonConvergence(_) => NonConvergenceError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn disc(n: usize, n_max: usize, k: usize) -> PyResult<Discretization> {
    Discretization::new(n, n_max, k).map_err(to_py)
}

/// Element of PSL(2, Z), normalized so that `c > 0` or `c = 0, a > 0`.
#[pyclass(name = "GroupElement", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyGroupElement(psl2::GroupElement);

#[pymethods]
impl PyGroupElement {
    #[new]
    fn new(a: i64, b: i64, c: i64, d: i64) -> PyResult<Self> {
        psl2::GroupElement::new(a.into(), b.into(), c.into(), d.into())
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn s() -> Self {
        Self(psl2::GroupElement::s())
    }

    #[staticmethod]
    fn t() -> Self {
        Self(psl2::GroupElement::t())
    }

    #[staticmethod]
    fn identity() -> Self {
        Self(psl2::GroupElement::identity())
    }

    fn entries(&self) -> (i128, i128, i128, i128) {
        let [a, b, c, d] = self.0.entries();
        (a, b, c, d)
    }

    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(to_py)
    }

    fn __matmul__(&self, other: &Self) -> PyResult<Self> {
        self.compose(other)
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn pow(&self, n: u32) -> PyResult<Self> {
        self.0.pow(n).map(Self).map_err(to_py)
    }

    fn trace(&self) -> u128 {
        self.0.trace()
    }

    fn is_hyperbolic(&self) -> bool {
        self.0.is_hyperbolic()
    }

    /// Möbius action on a real point; `None` stands for infinity.
    fn mobius(&self, x: Option<f64>) -> Option<f64> {
        let p = x.map_or(psl2::ExtendedReal::Infinity, psl2::ExtendedReal::Finite);
        self.0.mobius(p).finite()
    }

    fn __repr__(&self) -> String {
        format!("GroupElement({})", self.0)
    }
}

/// `2 arcosh(trace / 2)`.
#[pyfunction]
fn geodesic_length(trace: u64) -> PyResult<f64> {
    lengths::geodesic_length(trace).map_err(to_py)
}

type SpectrumRow = (u64, f64, usize, Vec<String>);

/// `[(trace, length, multiplicity, [necklace, ...]), ...]` up to `max_trace`.
#[pyfunction]
fn length_spectrum(max_trace: u64) -> PyResult<Vec<SpectrumRow>> {
    if max_trace < 3 {
        return Ok(Vec::new());
    }
    Ok(lengths::length_spectrum(max_trace)
        .map_err(to_py)?
        .into_iter()
        .map(|e| {
            let words = e.necklaces.iter().map(|n| n.to_string()).collect();
            (e.trace, e.length, e.multiplicity, words)
        })
        .collect())
}

/// Euler product over the length spectrum; needs `Re s > 1`.
#[pyfunction]
#[pyo3(signature = (s, max_trace = 400, k_max = 30))]
fn selberg_zeta(s: Complex64, max_trace: u64, k_max: u32) -> PyResult<Complex64> {
    lengths::selberg_zeta_euler(s, max_trace, k_max).map_err(to_py)
}

#[pyfunction]
fn torus_zeta(s: Complex64) -> Complex64 {
    lengths::torus_zeta(s)
}

#[pyfunction]
fn hurwitz_zeta(w: Complex64, a: f64) -> PyResult<Complex64> {
    transfer::hurwitz_zeta(w, a).map_err(to_py)
}

/// `(det(1 - M(s)), det(1 + M(s)))` for the accelerated operator.
#[pyfunction]
#[pyo3(signature = (s, n = 24, n_max = 50, k = 4))]
fn fredholm_dets(
    s: Complex64,
    n: usize,
    n_max: usize,
    k: usize,
) -> PyResult<(Complex64, Complex64)> {
    let m =
        transfer::gauss_matrix(SpectralParameter::from(s), disc(n, n_max, k)?).map_err(to_py)?;
    Ok((
        transfer::fredholm_det(&m, 1.0),
        transfer::fredholm_det(&m, -1.0),
    ))
}

/// `[(R, parity, |det|), ...]` for the dips of `|det(1 ∓ M(1/2 + iR))|`.
#[pyfunction]
#[pyo3(signature = (lo, hi, step, n = 24, n_max = 50, k = 4, dip_factor = spectral::DEFAULT_DIP_FACTOR))]
#[allow(clippy::too_many_arguments)]
fn scan(
    py: Python<'_>,
    lo: f64,
    hi: f64,
    step: f64,
    n: usize,
    n_max: usize,
    k: usize,
    dip_factor: f64,
) -> PyResult<Vec<(f64, i8, f64)>> {
    let range = spectral::ScanRange::new(lo, hi, step).map_err(to_py)?;
    let d = disc(n, n_max, k)?;
    let dips = py
        .detach(|| spectral::scan_critical_line(range, d, dip_factor))
        .map_err(to_py)?;
    Ok(dips.iter().map(|c| (c.r, c.parity, c.det_abs)).collect())
}

/// A refined resonance with its residual checks.
#[pyclass(name = "Resonance", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyResonance {
    r: f64,
    parity: i8,
    lambda_: f64,
    det_abs_min: f64,
    three_term_residual: f64,
    boundary_residual: f64,
    cocycle_r1: f64,
    cocycle_r2: f64,
    accepted: bool,
    n: usize,
    n_max: usize,
    k: usize,
}

impl From<spectral::ResonanceResult> for PyResonance {
    fn from(r: spectral::ResonanceResult) -> Self {
        Self {
            r: r.r,
            parity: r.parity,
            lambda_: r.lambda,
            det_abs_min: r.det_abs_min,
            three_term_residual: r.three_term_residual,
            boundary_residual: r.boundary_residual,
            cocycle_r1: r.cocycle_r1,
            cocycle_r2: r.cocycle_r2,
            accepted: r.accepted,
            n: r.n,
            n_max: r.n_max,
            k: r.k,
        }
    }
}

#[pymethods]
impl PyResonance {
    fn __repr__(&self) -> String {
        format!(
            "Resonance(R={:.9}, parity={}, lambda={:.6}, three_term_residual={:.2e}, accepted={})",
            self.r,
            self.parity,
            self.lambda_,
            self.three_term_residual,
            if self.accepted { "True" } else { "False" }
        )
    }
}

fn refine_defaults() -> (usize, usize, usize) {
    let d = spectral::REFINE_DISCRETIZATION;
    (d.n, d.n_max, d.k)
}

#[pyfunction]
#[pyo3(signature = (r0, parity, step = 0.01, n = None, n_max = None, k = None))]
fn refine_resonance(
    py: Python<'_>,
    r0: f64,
    parity: i8,
    step: f64,
    n: Option<usize>,
    n_max: Option<usize>,
    k: Option<usize>,
) -> PyResult<PyResonance> {
    let (dn, dm, dk) = refine_defaults();
    let d = disc(n.unwrap_or(dn), n_max.unwrap_or(dm), k.unwrap_or(dk))?;
    py.detach(|| spectral::refine_resonance(r0, parity, d, step, spectral::Tolerances::default()))
        .map(PyResonance::from)
        .map_err(to_py)
}

/// Scan and refine; candidates whose refinement fails are skipped.
#[pyfunction]
#[pyo3(signature = (lo = 9.0, hi = 14.0, step = 0.01))]
fn find_resonances(py: Python<'_>, lo: f64, hi: f64, step: f64) -> PyResult<Vec<PyResonance>> {
    let range = spectral::ScanRange::new(lo, hi, step).map_err(to_py)?;
    let found = py
        .detach(|| {
            spectral::find_resonances(
                range,
                Discretization::default(),
                spectral::REFINE_DISCRETIZATION,
                spectral::DEFAULT_DIP_FACTOR,
                spectral::Tolerances::default(),
            )
        })
        .map_err(to_py)?;
    Ok(found
        .into_iter()
        .filter_map(|d| d.result.ok())
        .map(PyResonance::from)
        .collect())
}

/// Period function at `s = 1/2 + iR` built from the eigenfunction of the
/// accelerated operator with eigenvalue near `parity`.
#[pyclass(name = "PeriodFunction", frozen)]
struct PyPeriodFunction {
    psi: spectral::Psi,
}

#[pymethods]
impl PyPeriodFunction {
    #[new]
    #[pyo3(signature = (r, parity, n = None, n_max = None, k = None))]
    fn new(
        r: f64,
        parity: i8,
        n: Option<usize>,
        n_max: Option<usize>,
        k: Option<usize>,
    ) -> PyResult<Self> {
        let (dn, dm, dk) = refine_defaults();
        let d = disc(n.unwrap_or(dn), n_max.unwrap_or(dm), k.unwrap_or(dk))?;
        let m = transfer::gauss_matrix(SpectralParameter::critical(r), d).map_err(to_py)?;
        let pf = spectral::PeriodFunction::from_operator(m, f64::from(parity)).map_err(to_py)?;
        Ok(Self {
            psi: spectral::reconstruct_psi(&pf),
        })
    }

    #[getter]
    fn s(&self) -> Complex64 {
        self.psi.s()
    }

    #[getter]
    fn mu(&self) -> Complex64 {
        self.psi.period_function().mu()
    }

    fn __call__(&self, x: f64) -> PyResult<Complex64> {
        self.psi.eval(x).map_err(to_py)
    }

    #[pyo3(signature = (samples = residuals::DEFAULT_SAMPLES))]
    fn three_term_residual(&self, samples: usize) -> PyResult<f64> {
        residuals::three_term_residual(&self.psi, samples).map_err(to_py)
    }

    fn boundary_residual(&self) -> PyResult<f64> {
        residuals::boundary_residual(&self.psi).map_err(to_py)
    }

    fn cocycle_residuals(&self) -> PyResult<(f64, f64)> {
        residuals::cocycle_residuals(&self.psi).map_err(to_py)
    }
}

#[pymodule]
fn pymodsurf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroupElement>()?;
    m.add_class::<PyResonance>()?;
    m.add_class::<PyPeriodFunction>()?;
    m.add_function(wrap_pyfunction!(geodesic_length, m)?)?;
    m.add_function(wrap_pyfunction!(length_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(selberg_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(torus_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(fredholm_dets, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(refine_resonance, m)?)?;
    m.add_function(wrap_pyfunction!(find_resonances, m)?)?;
    m.add(
        "NonConvergenceError",
        m.py().get_type::<NonConvergenceError>(),
    )?;
    Ok(())
}
