use std::path::PathBuf;

use exactcat::approx::{is_pseudo_cluster_tilting, AddSubcat};
use exactcat::quotient::Quotient;
use exactcat::{ExactCategory, Field, Quiver, RepCategory, RepObj};
use exactcat_cli::{parse_spec, parse_spec_file, run_with_jobs, Command, Options, SpecDocument};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Representations of a quiver over a prime field.
#[pyclass(name = "RepCategory", frozen, module = "exactcat")]
struct PyRepCategory {
    inner: RepCategory,
}

/// A quiver representation.
#[pyclass(name = "RepObj", frozen, skip_from_py_object, module = "exactcat")]
#[derive(Clone)]
struct PyRepObj {
    inner: RepObj,
}

#[pymethods]
impl PyRepObj {
    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims().to_vec()
    }

    #[getter]
    fn total_dim(&self) -> usize {
        self.inner.total_dim()
    }

    /// Arrow matrices as lists of rows.
    fn maps(&self) -> Vec<Vec<Vec<u8>>> {
        self.inner.maps().iter().map(|m| m.to_rows()).collect()
    }

    fn __repr__(&self) -> String {
        format!("RepObj(dims={:?})", self.inner.dims())
    }
}

fn objs(v: &[PyRef<'_, PyRepObj>]) -> Vec<RepObj> {
    v.iter().map(|o| o.inner.clone()).collect()
}

#[pymethods]
impl PyRepCategory {
    #[new]
    #[pyo3(signature = (vertices, arrows, characteristic = 2))]
    fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>, characteristic: u32) -> PyResult<Self> {
        let q = Quiver::new(&vertices, &arrows).map_err(value_err)?;
        let f = Field::new(characteristic).map_err(value_err)?;
        Ok(PyRepCategory {
            inner: RepCategory::new(q, f),
        })
    }

    /// The linear quiver `1 -> 2 -> ... -> n`.
    #[staticmethod]
    #[pyo3(signature = (n, characteristic = 2))]
    fn linear(n: usize, characteristic: u32) -> PyResult<Self> {
        let f = Field::new(characteristic).map_err(value_err)?;
        Ok(PyRepCategory {
            inner: RepCategory::new(Quiver::linear(n), f),
        })
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.field().characteristic()
    }

    /// `maps[a]` is the matrix of arrow `a`, of shape (dim target, dim source).
    fn object(&self, dims: Vec<usize>, maps: Vec<Vec<Vec<i64>>>) -> PyResult<PyRepObj> {
        let inner = self.inner.object_from_ints(&dims, &maps).map_err(value_err)?;
        Ok(PyRepObj { inner })
    }

    fn simple(&self, v: usize) -> PyResult<PyRepObj> {
        if v >= self.inner.quiver().num_vertices() {
            return Err(PyValueError::new_err("vertex out of range"));
        }
        Ok(PyRepObj {
            inner: self.inner.simple(v),
        })
    }

    fn hom_dim(&self, x: &PyRepObj, y: &PyRepObj) -> usize {
        self.inner.hom_basis(&x.inner, &y.inner).len()
    }

    /// `dim Ext^1(z, x)`.
    fn ext_dim(&self, z: &PyRepObj, x: &PyRepObj) -> usize {
        self.inner.ext_dimension(&z.inner, &x.inner)
    }

    fn is_isomorphic(&self, x: &PyRepObj, y: &PyRepObj) -> bool {
        self.inner.find_iso(&x.inner, &y.inner, 1 << 16).is_some()
    }

    #[pyo3(signature = (max_dim, cap = 4096))]
    fn indecomposables(&self, max_dim: usize, cap: usize) -> PyResult<Vec<PyRepObj>> {
        let v = self.inner.indecomposables(max_dim, cap).map_err(value_err)?;
        Ok(v.into_iter().map(|inner| PyRepObj { inner }).collect())
    }

    /// Dimension of the hom-space from `x` to `y` modulo maps factoring
    /// through `add` of the generators.
    fn qhom_dim(&self, generators: Vec<PyRef<'_, PyRepObj>>, x: &PyRepObj, y: &PyRepObj) -> usize {
        let sub = AddSubcat::from_objects(&self.inner, objs(&generators));
        Quotient::new(&self.inner, &sub).qhom(&x.inner, &y.inner).dim
    }

    /// Both approximation conditions at every object of `testset`.
    fn is_pseudo_cluster_tilting(&self, generators: Vec<PyRef<'_, PyRepObj>>, testset: Vec<PyRef<'_, PyRepObj>>) -> bool {
        let sub = AddSubcat::from_objects(&self.inner, objs(&generators));
        is_pseudo_cluster_tilting(&self.inner, &sub, &objs(&testset)).pass
    }

    /// Abelianness sweep of the quotient over every morphism between sample objects.
    #[pyo3(signature = (generators, sample, seed = 0))]
    fn quotient_is_abelian(
        &self,
        py: Python<'_>,
        generators: Vec<PyRef<'_, PyRepObj>>,
        sample: Vec<PyRef<'_, PyRepObj>>,
        seed: u64,
    ) -> bool {
        let gens = objs(&generators);
        let sample = objs(&sample);
        py.detach(|| {
            let sub = AddSubcat::from_objects(&self.inner, gens);
            Quotient::new(&self.inner, &sub).verify_abelian(&sample, 4096, seed).pass
        })
    }
}

/// A parsed JSON specification.
#[pyclass(name = "Spec", frozen, module = "exactcat")]
struct PySpec {
    inner: SpecDocument,
}

fn command(name: &str) -> PyResult<Command> {
    Ok(match name {
        "check-pct" => Command::CheckPct,
        "quotient" => Command::Quotient,
        "classes" => Command::Classes,
        "confl" => Command::Confl,
        "verify-paper" => Command::VerifyPaper,
        _ => return Err(PyValueError::new_err(format!("unknown command {name:?}"))),
    })
}

#[pymethods]
impl PySpec {
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(PySpec {
            inner: parse_spec_file(&path).map_err(value_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (text, name = "spec"))]
    fn from_json(text: &str, name: &str) -> PyResult<Self> {
        Ok(PySpec {
            inner: parse_spec(name, text).map_err(value_err)?,
        })
    }

    fn object_names(&self) -> Vec<String> {
        self.inner.objects.iter().map(|(n, _)| n.clone()).collect()
    }

    fn object(&self, name: &str) -> PyResult<PyRepObj> {
        let o = self
            .inner
            .object(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown object {name:?}")))?;
        Ok(PyRepObj { inner: o.clone() })
    }

    fn category(&self) -> PyRepCategory {
        PyRepCategory {
            inner: self.inner.cat.clone(),
        }
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// Runs a command; returns `(exit_code, report_json)`.
    #[pyo3(signature = (command_name, bound = None, seed = 0, jobs = None, conflation = None))]
    fn run(
        &self,
        py: Python<'_>,
        command_name: &str,
        bound: Option<usize>,
        seed: u64,
        jobs: Option<usize>,
        conflation: Option<String>,
    ) -> PyResult<(i32, String)> {
        let c = command(command_name)?;
        let opts = Options {
            bound,
            seed,
            conflation,
            ..Options::default()
        };
        let r = py.detach(|| run_with_jobs(c, Some(&self.inner), &opts, jobs));
        Ok((r.exit_code, r.to_json()))
    }
}

/// Runs every check on the bundled fixtures; returns `(exit_code, report_json)`.
#[pyfunction]
#[pyo3(signature = (jobs = None))]
fn verify_paper(py: Python<'_>, jobs: Option<usize>) -> (i32, String) {
    let r = py.detach(|| run_with_jobs(Command::VerifyPaper, None, &Options::default(), jobs));
    (r.exit_code, r.to_json())
}

#[pymodule]
#[pyo3(name = "exactcat")]
fn exactcat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRepCategory>()?;
    m.add_class::<PyRepObj>()?;
    m.add_class::<PySpec>()?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    m.add("A2_FIXTURE", exactcat_cli::commands::A2_FIXTURE)?;
    m.add("A3_FIXTURE", exactcat_cli::commands::A3_FIXTURE)?;
    Ok(())
}
