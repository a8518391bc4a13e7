use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use tracerank::cli::{self, corpus, job, Job, Session};
use tracerank::groebner::{buchberger, IdealPresentation};
use tracerank::modrank::Scalars;
use tracerank::poly::UniPoly;
use tracerank::tracecalc::SlopeSpec;
use tracerank::valuation::{cl_witness as cl, ClWitness};
use tracerank::{Error, Poly, PolyRing};

fn err(e: Error) -> PyErr {
    match e {
        Error::Verification { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn scalars(s: &str) -> PyResult<Scalars> {
    match s {
        "C" => Ok(Scalars::Complex),
        "Q" => Ok(Scalars::Rational),
        "Z" => Ok(Scalars::Integer),
        _ => Err(PyValueError::new_err(format!("scalars must be C, Q or Z, got {s:?}"))),
    }
}

fn slope(s: Option<&str>) -> PyResult<SlopeSpec> {
    match s {
        None => Ok(SlopeSpec::meridian()),
        Some(t) => job::parse_slope(t, (1, 1)).map_err(err),
    }
}

/// A parsed job: ring, ideal, peripheral data, claims and expectations.
#[pyclass(name = "Job", module = "tracerank_py")]
struct PyJob {
    inner: Job,
}

#[pymethods]
impl PyJob {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyJob { inner: job::parse_job(text).map_err(err)? })
    }

    /// Built-in corpus entry by name.
    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        match corpus::load(name) {
            Some(j) => Ok(PyJob { inner: j.map_err(err)? }),
            None => Err(PyValueError::new_err(format!("no corpus entry {name:?}"))),
        }
    }

    #[staticmethod]
    fn corpus_names() -> Vec<&'static str> {
        corpus::NAMES.to_vec()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name.clone()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn groebner_basis(&self) -> Vec<String> {
        buchberger(&self.inner.ideal).elements().iter().map(|p| p.to_string()).collect()
    }

    fn normal_form(&self, poly: &str) -> PyResult<String> {
        let p = Poly::parse(&self.inner.ring, poly).map_err(err)?;
        Ok(buchberger(&self.inner.ideal).normal_form(&p).map_err(err)?.to_string())
    }

    fn contains(&self, poly: &str) -> PyResult<bool> {
        let p = Poly::parse(&self.inner.ring, poly).map_err(err)?;
        buchberger(&self.inner.ideal).contains(&p).map_err(err)
    }

    fn eliminate(&self, keep: Vec<String>) -> PyResult<String> {
        cli::cmd_eliminate(&self.inner, &keep).map_err(err)
    }

    /// Rank as printed by the CLI: an integer, bounds `[a, b]`, or INFINITE.
    #[pyo3(signature = (scalars = "C", slope = None))]
    fn rank(&self, scalars: &str, slope: Option<&str>) -> PyResult<String> {
        let sc = self::scalars(scalars)?;
        let s = self::slope(slope)?;
        let mut session = Session::new(&self.inner);
        Ok(session.rank(s, sc).map_err(err)?.value.to_string())
    }

    /// Certificate text for the rank computation, if one was produced.
    #[pyo3(signature = (scalars = "C", slope = None))]
    fn certificate(&self, scalars: &str, slope: Option<&str>) -> PyResult<Option<String>> {
        let sc = self::scalars(scalars)?;
        let s = self::slope(slope)?;
        let mut session = Session::new(&self.inner);
        let r = session.rank(s, sc).map_err(err)?;
        let mut parts = Vec::new();
        if let Some(b) = &r.basis {
            parts.push(b.to_text());
        }
        if let Some(g) = &r.generators {
            parts.push(g.to_text());
        }
        if let Some(n) = &r.nonfree {
            parts.push(n.to_text());
        }
        Ok((!parts.is_empty()).then(|| parts.join("\n")))
    }

    /// Detection report as JSON.
    #[pyo3(signature = (integer_ranks = false))]
    fn detect(&self, integer_ranks: bool) -> PyResult<String> {
        cli::cmd_detect(&self.inner, true, integer_ranks).map_err(err)
    }

    /// Runs the job's expectations; returns the report and its exit code.
    fn check(&self) -> (String, i32) {
        cli::cmd_check(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Job({:?})", self.inner.name)
    }
}

/// Reduced lex Groebner basis of `generators` in `vars` (first variable lowest).
#[pyfunction]
fn groebner_basis(vars: Vec<String>, generators: Vec<String>) -> PyResult<Vec<String>> {
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::lex(&names);
    let gens: Vec<&str> = generators.iter().map(|s| s.as_str()).collect();
    let ideal = IdealPresentation::parse(&ring, &gens).map_err(err)?;
    Ok(buchberger(&ideal).elements().iter().map(|p| p.to_string()).collect())
}

/// Non-integrality witness at a prime other than `p`; coefficients are integers, constant first.
#[pyfunction]
fn cl_witness(coeffs: Vec<i64>, p: i64) -> PyResult<Option<String>> {
    let h = UniPoly::from_ints(&coeffs);
    let p = BigInt::from(p);
    match cl(&h, &p).map_err(err)? {
        w @ ClWitness::Found { .. } => {
            if !w.verify(&h, &p).map_err(err)? {
                return Err(PyRuntimeError::new_err("witness failed to verify"));
            }
            Ok(Some(w.to_string()))
        }
        ClWitness::None(_) => Ok(None),
    }
}

#[pymodule]
fn tracerank_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyJob>()?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(cl_witness, m)?)?;
    Ok(())
}
