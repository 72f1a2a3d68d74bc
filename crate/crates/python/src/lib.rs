//! Python bindings: `import invseq_lab`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use invseq_core::formulas;
use invseq_core::invseq::{self as core_seq, StatFilter};
use invseq_core::lattice::{self, FStep, PathClass, PathFilter, PathKind, WStep};
use invseq_core::oeis::{default_cache_dir, Client};
use invseq_core::series::{self, Bounds, Subst, Support, Var};
use invseq_core::verify::{run_groups, Group, VerifyConfig};
use invseq_core::{Error, PatternWord};

create_exception!(
    invseq_lab,
    InvseqError,
    PyValueError,
    "Raised for invalid input or a failed computation."
);

fn err(e: Error) -> PyErr {
    InvseqError::new_err(e.to_string())
}

fn patterns(spec: &str) -> PyResult<Vec<PatternWord>> {
    PatternWord::parse_list(spec).map_err(err)
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    let text = v.to_string();
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(
    name = "InversionSequence",
    module = "invseq_lab",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyInversionSequence {
    inner: core_seq::InversionSequence,
}

#[pymethods]
impl PyInversionSequence {
    #[new]
    fn new(entries: Vec<u32>) -> PyResult<Self> {
        Ok(Self {
            inner: core_seq::InversionSequence::new(entries).map_err(err)?,
        })
    }

    #[getter]
    fn entries(&self) -> Vec<u32> {
        self.inner.entries().to_vec()
    }

    fn dist(&self) -> usize {
        self.inner.dist()
    }

    fn max_value(&self) -> i64 {
        self.inner.max_value()
    }

    fn prmx(&self) -> usize {
        self.inner.prmx()
    }

    /// Raises `InvseqError` when the sequence contains 102.
    fn rank(&self) -> PyResult<usize> {
        self.inner.rank().map_err(err)
    }

    fn contains(&self, pattern: &str) -> PyResult<bool> {
        Ok(self.inner.contains(&PatternWord::parse(pattern).map_err(err)?))
    }

    fn remark_dedup(&self) -> PyResult<Self> {
        Ok(Self {
            inner: core_seq::remark_dedup(&self.inner).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("InversionSequence({:?})", self.inner.entries())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(name = "TruncatedSeries", module = "invseq_lab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries {
    inner: series::TruncatedSeries,
}

#[pymethods]
impl PySeries {
    /// `(N_x, N_y, N_z)`.
    #[getter]
    fn bounds(&self) -> (u32, u32, u32) {
        let b = self.inner.bounds();
        (b.x, b.y, b.z)
    }

    #[pyo3(signature = (n, m = 0, t = 0))]
    fn coeff(&self, n: u32, m: u32, t: u32) -> PyResult<BigInt> {
        if !self.inner.bounds().contains([n, m, t]) {
            return Err(InvseqError::new_err(format!(
                "({n},{m},{t}) lies outside {}",
                self.inner.bounds()
            )));
        }
        Ok(self.inner.coeff(n, m, t))
    }

    /// `{(n, m, t): coefficient}` for the nonzero terms.
    fn terms(&self) -> Vec<((u32, u32, u32), BigInt)> {
        self.inner
            .terms()
            .map(|(e, c)| ((e[0], e[1], e[2]), c.clone()))
            .collect()
    }

    /// Substitutions such as `"x=1,z=0"`, applied left to right.
    fn specialize(&self, substs: &str) -> PyResult<Self> {
        let mut list = Vec::new();
        for part in substs.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let sub = match part.replace(' ', "").as_str() {
                "x=0" => Subst::Zero(Var::X),
                "x=1" => Subst::One(Var::X),
                "y=0" => Subst::Zero(Var::Y),
                "y=1" => Subst::One(Var::Y),
                "z=0" => Subst::Zero(Var::Z),
                "z=1" => Subst::One(Var::Z),
                other => return Err(InvseqError::new_err(format!("bad substitution {other:?}"))),
            };
            list.push(sub);
        }
        let inner = series::specialize(&self.inner, &list, &Support::length_dist_rank()).map_err(err)?;
        Ok(Self { inner })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "TruncatedSeries(bounds={}, nnz={})",
            self.inner.bounds(),
            self.inner.nnz()
        )
    }
}

#[pyfunction]
fn reduction(word: Vec<u32>) -> PyResult<Vec<u32>> {
    Ok(core_seq::reduction(&word).map_err(err)?.letters().to_vec())
}

#[pyfunction]
#[pyo3(signature = (n, patterns = "102,000", dist = None, rank = None, limit = None))]
fn enumerate_avoiding(
    n: usize,
    patterns: &str,
    dist: Option<usize>,
    rank: Option<usize>,
    limit: Option<usize>,
) -> PyResult<Vec<PyInversionSequence>> {
    let pats = self::patterns(patterns)?;
    Ok(core_seq::enumerate_avoiding(n, &pats, StatFilter { dist, rank })
        .take(limit.unwrap_or(usize::MAX))
        .map(|inner| PyInversionSequence { inner })
        .collect())
}

/// `[{"n", "m", "t", "count"}]` with `t = None` where rank is undefined.
#[pyfunction]
#[pyo3(signature = (n_max, patterns = "102,000"))]
fn count_table<'py>(py: Python<'py>, n_max: usize, patterns: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let pats = self::patterns(patterns)?;
    let table = py.detach(|| core_seq::count_table(n_max, &pats));
    table
        .iter()
        .map(|(k, v)| {
            let d = PyDict::new(py);
            d.set_item("n", k.n)?;
            d.set_item("m", k.m)?;
            d.set_item("t", k.t)?;
            d.set_item("count", v.clone())?;
            Ok(d)
        })
        .collect()
}

type FTuple = (u32, i64, Vec<i64>);
type WTuple = (u32, i64, u32);

fn f_steps(steps: Vec<FTuple>) -> PyResult<Vec<FStep>> {
    steps
        .into_iter()
        .map(|(dx, dy, label)| FStep::new(dx, dy, label).map_err(err))
        .collect()
}

fn w_steps(steps: Vec<WTuple>) -> PyResult<Vec<WStep>> {
    steps
        .into_iter()
        .map(|(dx, dy, w)| WStep::new(dx, dy, w).map_err(err))
        .collect()
}

/// Steps `(dx, dy, label)` to steps `(dx, dy, weight)`.
#[pyfunction]
fn eta(steps: Vec<FTuple>) -> PyResult<Vec<WTuple>> {
    Ok(lattice::eta_steps(&f_steps(steps)?)
        .into_iter()
        .map(|s| (s.dx, s.dy, s.weight))
        .collect())
}

#[pyfunction]
fn eta_inv(steps: Vec<WTuple>) -> PyResult<Vec<FTuple>> {
    let out = lattice::eta_inv_steps(&w_steps(steps)?).map_err(err)?;
    Ok(out.into_iter().map(|s| (s.dx, s.dy, s.label)).collect())
}

/// Paths as JSON-shaped Python objects, `{"steps": [...]}` each.
#[pyfunction]
#[pyo3(signature = (kind, semilength, height = None, ud = None, cls = None))]
fn enumerate_paths<'py>(
    py: Python<'py>,
    kind: &str,
    semilength: usize,
    height: Option<i64>,
    ud: Option<usize>,
    cls: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let kind = match kind {
        "labeled-f" => PathKind::LabeledF,
        "weighted-h" => PathKind::WeightedH,
        "simple-h" => PathKind::SimpleH,
        other => return Err(InvseqError::new_err(format!("unknown path kind {other:?}"))),
    };
    let class = match cls.map(|c| c.to_ascii_uppercase()) {
        None => None,
        Some(c) if c == "A" => Some(PathClass::A),
        Some(c) if c == "D" => Some(PathClass::D),
        Some(c) if c == "B" => Some(PathClass::B),
        Some(c) => return Err(InvseqError::new_err(format!("unknown class {c:?}"))),
    };
    let paths = py
        .detach(|| lattice::enumerate_paths(kind, semilength, PathFilter { height, ud, class }))
        .map_err(err)?;
    json_to_py(py, &serde_json::to_value(&paths).map_err(|e| err(e.into()))?)
}

#[pyfunction]
fn solve_b(max_x: u32, max_y: u32) -> PyResult<PySeries> {
    Ok(PySeries {
        inner: series::solve_b(Bounds::new(max_x, max_y, 0)).map_err(err)?,
    })
}

#[pyfunction]
fn solve_e(py: Python<'_>, max_x: u32, max_y: u32, max_z: u32) -> PyResult<PySeries> {
    let inner = py
        .detach(|| series::solve_e(Bounds::new(max_x, max_y, max_z)))
        .map_err(err)?;
    Ok(PySeries { inner })
}

#[pyfunction]
fn b_closed(n: i64, m: i64) -> PyResult<BigInt> {
    formulas::b_closed(n, m).map_err(err)
}

#[pyfunction]
fn count_dist_closed(n: i64, m: i64) -> PyResult<BigInt> {
    formulas::count_dist_closed(n, m).map_err(err)
}

#[pyfunction]
fn fuss3(m: i64) -> PyResult<BigInt> {
    formulas::fuss3(m).map_err(err)
}

#[pyfunction]
fn dist_rank_count(m: i64, t: i64) -> PyResult<BigInt> {
    formulas::dist_rank_count(m, t).map_err(err)
}

#[pyfunction]
fn dist_total(m: i64) -> PyResult<BigInt> {
    formulas::dist_total(m).map_err(err)
}

/// `[(index, value)]` from the cache, the network or a bundled b-file.
#[pyfunction]
#[pyo3(signature = (id, offline = true))]
fn oeis_fetch(py: Python<'_>, id: &str, offline: bool) -> PyResult<Vec<(i64, BigInt)>> {
    let seq = py
        .detach(|| Client::new(default_cache_dir()).fetch(id, offline))
        .map_err(err)?;
    Ok(seq.entries)
}

/// Runs the cross-checks; returns the JSON report as Python objects.
#[pyfunction]
#[pyo3(signature = (target = "all", offline = true))]
fn verify<'py>(py: Python<'py>, target: &str, offline: bool) -> PyResult<Bound<'py, PyAny>> {
    let groups = match target {
        "table1" => vec![Group::Table1],
        "bijections" => vec![Group::Bijections],
        "minpoly" => vec![Group::Minpoly],
        "closed-forms" => vec![Group::ClosedForms],
        "oeis" => vec![Group::Oeis],
        "all" => Group::ALL.to_vec(),
        other => return Err(InvseqError::new_err(format!("unknown target {other:?}"))),
    };
    let cfg = VerifyConfig {
        offline,
        ..VerifyConfig::default()
    };
    let report = py.detach(|| run_groups(&cfg, &groups));
    json_to_py(py, &report.to_json(false))
}

#[pymodule]
fn invseq_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("InvseqError", m.py().get_type::<InvseqError>())?;
    m.add_class::<PyInversionSequence>()?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(reduction, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_avoiding, m)?)?;
    m.add_function(wrap_pyfunction!(count_table, m)?)?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(eta_inv, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_paths, m)?)?;
    m.add_function(wrap_pyfunction!(solve_b, m)?)?;
    m.add_function(wrap_pyfunction!(solve_e, m)?)?;
    m.add_function(wrap_pyfunction!(b_closed, m)?)?;
    m.add_function(wrap_pyfunction!(count_dist_closed, m)?)?;
    m.add_function(wrap_pyfunction!(fuss3, m)?)?;
    m.add_function(wrap_pyfunction!(dist_rank_count, m)?)?;
    m.add_function(wrap_pyfunction!(dist_total, m)?)?;
    m.add_function(wrap_pyfunction!(oeis_fetch, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
