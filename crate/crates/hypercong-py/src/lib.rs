//! Python bindings for the hypercong verification engine.
//!
//! Exposes the core surface of the `hypercong` crate as an extension module:
//!
//! * [`Series`] — a truncated hypergeometric series with exact, modular and
//!   valuation accessors; rationals cross the boundary as
//!   `fractions.Fraction`.
//! * `eval_series` / `eval_series_mod` — one-shot evaluation helpers.
//! * `harmonic`, `catalan`, `binomial`, `rising`, `p_valuation`,
//!   `reduce_mod` — the arithmetic building blocks.
//! * `list_checks`, `run_check`, `run_sweep` — the checker registry and the
//!   sweep driver; verdicts and reports come back as plain dicts matching
//!   the JSON report schema.

use hypercong::checks::{find_check, run_check as run_check_def, Mode, REGISTRY};
use hypercong::hyperg::{RationalField, ResidueRing};
use hypercong::sweep::run_sweep as run_sweep_config;
use hypercong::{
    catalan as catalan_int, harmonic as harmonic_q, p_valuation as valuation_of, reduce_mod,
    rising as rising_in, trunc_hyper, CheckParams, HyperSeriesSpec, Rational, SweepConfig,
    Valuation,
};
use num_bigint::BigInt;
use num_traits::One;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};

/// Map any domain error onto a Python `ValueError` with its display text.
fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Parse an evaluation mode name the same way the CLI does.
fn parse_mode(name: &str) -> PyResult<Mode> {
    match name {
        "rational" => Ok(Mode::Rational),
        "modular" => Ok(Mode::Modular),
        "cross-check" => Ok(Mode::CrossCheck),
        other => Err(value_err(format!(
            "unknown mode {other:?} (expected rational, modular or cross-check)"
        ))),
    }
}

/// Convert a JSON value into the matching Python object.
fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64()
                    .ok_or_else(|| value_err("number out of range"))?
                    .into_pyobject(py)?
                    .into_any()
            }
        }
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, val) in map {
                dict.set_item(key, json_to_py(py, val)?)?;
            }
            dict.into_any()
        }
    })
}

/// Serialize any `serde::Serialize` value and hand it to Python as a dict.
fn to_py_dict<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let json = serde_json::to_value(value).map_err(value_err)?;
    json_to_py(py, &json)
}

/// A truncated hypergeometric series `F[top; bottom | z]_n`.
#[pyclass]
struct Series {
    spec: HyperSeriesSpec,
}

#[pymethods]
impl Series {
    /// Build a series; `bottom` defaults to empty and `z` to 1.
    #[new]
    #[pyo3(signature = (top, bottom = Vec::new(), z = None, n = 0))]
    fn new(
        top: Vec<Rational>,
        bottom: Vec<Rational>,
        z: Option<Rational>,
        n: u64,
    ) -> PyResult<Self> {
        let spec = HyperSeriesSpec::new(top, bottom, z.unwrap_or_else(Rational::one), n)
            .map_err(value_err)?;
        Ok(Series { spec })
    }

    /// The balanced special case `F[x..x; 1..1 | 1]_n` with `slots` top copies.
    #[staticmethod]
    fn balanced_unit(x: Rational, slots: usize, n: u64) -> PyResult<Self> {
        if slots == 0 {
            return Err(value_err("slots must be at least 1"));
        }
        Ok(Series {
            spec: HyperSeriesSpec::balanced_unit(x, slots, n),
        })
    }

    /// Exact value as a `fractions.Fraction`.
    fn value(&self) -> PyResult<Rational> {
        trunc_hyper(&self.spec, &RationalField).map_err(value_err)
    }

    /// Value in `Z/modulus`, when every division along the way is invertible.
    fn value_mod(&self, modulus: u64) -> PyResult<u64> {
        if modulus < 2 {
            return Err(value_err("modulus must be at least 2"));
        }
        let residue = trunc_hyper(&self.spec, &ResidueRing::new(modulus)).map_err(value_err)?;
        Ok(residue.value())
    }

    /// p-adic valuation of the exact value; `None` means the value is zero.
    fn valuation(&self, p: u64) -> PyResult<Option<i64>> {
        if p < 2 {
            return Err(value_err("p must be at least 2"));
        }
        let value = trunc_hyper(&self.spec, &RationalField).map_err(value_err)?;
        Ok(match valuation_of(&value, p) {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        })
    }

    #[getter]
    fn top(&self) -> Vec<Rational> {
        self.spec.top().to_vec()
    }

    #[getter]
    fn bottom(&self) -> Vec<Rational> {
        self.spec.bottom().to_vec()
    }

    #[getter]
    fn z(&self) -> Rational {
        self.spec.z().clone()
    }

    #[getter]
    fn n(&self) -> u64 {
        self.spec.n()
    }

    fn __repr__(&self) -> String {
        let join = |xs: &[Rational]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!(
            "Series(top=[{}], bottom=[{}], z={}, n={})",
            join(self.spec.top()),
            join(self.spec.bottom()),
            self.spec.z(),
            self.spec.n()
        )
    }
}

/// Exact value of `F[top; bottom | z]_n` as a `fractions.Fraction`.
#[pyfunction]
fn eval_series(
    top: Vec<Rational>,
    bottom: Vec<Rational>,
    z: Rational,
    n: u64,
) -> PyResult<Rational> {
    let spec = HyperSeriesSpec::new(top, bottom, z, n).map_err(value_err)?;
    trunc_hyper(&spec, &RationalField).map_err(value_err)
}

/// Value of `F[top; bottom | z]_n` in `Z/modulus`.
#[pyfunction]
fn eval_series_mod(
    top: Vec<Rational>,
    bottom: Vec<Rational>,
    z: Rational,
    n: u64,
    modulus: u64,
) -> PyResult<u64> {
    if modulus < 2 {
        return Err(value_err("modulus must be at least 2"));
    }
    let spec = HyperSeriesSpec::new(top, bottom, z, n).map_err(value_err)?;
    let residue = trunc_hyper(&spec, &ResidueRing::new(modulus)).map_err(value_err)?;
    Ok(residue.value())
}

/// Harmonic number `H_n`, with `H_{-1} = H_0 = 0`.
#[pyfunction]
fn harmonic(n: i64) -> Rational {
    harmonic_q(n)
}

/// Catalan number `C_k` as a Python int.
#[pyfunction]
fn catalan(k: u64) -> BigInt {
    catalan_int(k)
}

/// Generalised binomial coefficient `C(x, k)` over the rationals.
#[pyfunction]
fn binomial(x: Rational, k: u64) -> Rational {
    hypercong::binomial(&x, k)
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
#[pyfunction]
fn rising(x: Rational, k: u64) -> Rational {
    rising_in(&RationalField, &x, k)
}

/// p-adic valuation of a rational; `None` means the value is zero.
#[pyfunction]
fn p_valuation(value: Rational, p: u64) -> PyResult<Option<i64>> {
    if p < 2 {
        return Err(value_err("p must be at least 2"));
    }
    Ok(match valuation_of(&value, p) {
        Valuation::Finite(v) => Some(v),
        Valuation::Infinite => None,
    })
}

/// Reduce a rational into `Z/modulus`; fails if its denominator is not a unit.
#[pyfunction]
fn residue(value: Rational, modulus: u64) -> PyResult<u64> {
    if modulus < 2 {
        return Err(value_err("modulus must be at least 2"));
    }
    Ok(reduce_mod(&value, modulus).map_err(value_err)?.value())
}

/// The checker registry: one dict per check with id, summary, claim and gate.
#[pyfunction]
fn list_checks(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    let list = PyList::empty(py);
    for def in REGISTRY {
        let entry = PyDict::new(py);
        entry.set_item("id", def.id)?;
        entry.set_item("summary", def.summary)?;
        entry.set_item("claimed_exponent", to_py_dict(py, &def.claim)?)?;
        entry.set_item("gate", def.gate)?;
        entry.set_item("params", def.params)?;
        entry.set_item("exploratory", def.exploratory)?;
        list.append(entry)?;
    }
    Ok(list)
}

/// Run one registered check and return its verdict as a dict.
#[pyfunction]
#[pyo3(signature = (
    check_id, *, p = 0, r = 0, a = 0, s = 0, x = None, m = None, k = None, n = None,
    m_list = None, s_vec = None, t_vec = None, mode = "rational", claim = None
))]
#[allow(clippy::too_many_arguments)]
fn run_check<'py>(
    py: Python<'py>,
    check_id: &str,
    p: u64,
    r: u32,
    a: u64,
    s: u64,
    x: Option<Rational>,
    m: Option<u64>,
    k: Option<u64>,
    n: Option<u64>,
    m_list: Option<Vec<u64>>,
    s_vec: Option<Vec<i64>>,
    t_vec: Option<Vec<i64>>,
    mode: &str,
    claim: Option<i64>,
) -> PyResult<Bound<'py, PyAny>> {
    let def = find_check(check_id)
        .ok_or_else(|| value_err(format!("unknown check {check_id:?}")))?;
    let params = CheckParams {
        p,
        r,
        a,
        s,
        x,
        m,
        k,
        n,
        m_list,
        s_vec,
        t_vec,
    };
    let verdict = run_check_def(def, &params, parse_mode(mode)?, claim);
    to_py_dict(py, &verdict)
}

/// Run a sweep from a JSON config string; returns the report as a dict.
///
/// The report is also written to the path named in the config, exactly as
/// the command-line `sweep` subcommand would write it.
#[pyfunction]
fn run_sweep<'py>(py: Python<'py>, config_json: &str) -> PyResult<Bound<'py, PyAny>> {
    let config: SweepConfig =
        serde_json::from_str(config_json).map_err(|e| value_err(format!("bad config: {e}")))?;
    let report = run_sweep_config(&config)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py_dict(py, &report)
}

/// Register the extension module.
#[pymodule]
fn hypercong_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(eval_series, m)?)?;
    m.add_function(wrap_pyfunction!(eval_series_mod, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(rising, m)?)?;
    m.add_function(wrap_pyfunction!(p_valuation, m)?)?;
    m.add_function(wrap_pyfunction!(residue, m)?)?;
    m.add_function(wrap_pyfunction!(list_checks, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    Ok(())
}
