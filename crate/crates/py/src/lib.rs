//! Python bindings. Graphs and hypergraphs are wrapped as classes; closures,
//! oracle results and reports come back as plain dicts.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use perc::constructions::Family;
use perc::formulas;
use perc::graph;
use perc::hyperperc::{self, HyperColouring};
use perc::oracle::{self, OracleResult, SearchOptions};
use perc::percolation::{self, InfectionState};
use perc::witness::{self, EdgeColouring};

fn err(e: perc::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", module = "bootperc", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: graph::Graph::from_edges(n, edges).map_err(err)? })
    }

    #[staticmethod]
    fn path(k: usize) -> PyResult<Self> {
        Ok(graph::make_path(k).map_err(err)?.into())
    }

    #[staticmethod]
    fn cycle(k: usize) -> PyResult<Self> {
        Ok(graph::make_cycle(k).map_err(err)?.into())
    }

    #[staticmethod]
    fn grid(dims: Vec<usize>) -> PyResult<Self> {
        Ok(graph::make_grid(&dims).map_err(err)?.into())
    }

    #[staticmethod]
    fn torus(dims: Vec<usize>) -> PyResult<Self> {
        Ok(graph::make_torus(&dims).map_err(err)?.into())
    }

    #[staticmethod]
    fn hypercube(d: usize) -> Self {
        graph::make_hypercube(d).into()
    }

    /// Edge probability `num/den`.
    #[staticmethod]
    #[pyo3(signature = (n, num, den, seed=0))]
    fn random(n: usize, num: u32, den: u32, seed: u64) -> PyResult<Self> {
        if den == 0 {
            return Err(PyValueError::new_err("denominator must be positive"));
        }
        let p = num_rational::Ratio::new(num, den);
        Ok(graph::make_random_graph(n, p, seed).map_err(err)?.into())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(graph::Graph::from_json(text).map_err(err)?.into())
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.num_edges())
    }
}

impl From<graph::Graph> for PyGraph {
    fn from(inner: graph::Graph) -> Self {
        PyGraph { inner }
    }
}

#[pyclass(name = "Hypergraph", module = "bootperc", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyHypergraph {
    inner: hyperperc::Hypergraph,
}

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(n: usize, hyperedges: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyHypergraph { inner: hyperperc::Hypergraph::new(n, hyperedges).map_err(err)? })
    }

    #[staticmethod]
    fn from_graph(g: &PyGraph) -> Self {
        PyHypergraph { inner: hyperperc::graph_to_hypergraph(&g.inner) }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn hyperedges(&self) -> Vec<Vec<usize>> {
        self.inner.hyperedges().to_vec()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph(n={}, hyperedges={})", self.inner.n(), self.inner.hyperedges().len())
    }
}

fn closure_dict<'py>(py: Python<'py>, st: &InfectionState) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("percolated", st.is_complete())?;
    d.set_item("closure_size", st.len())?;
    d.set_item("closure", st.infected())?;
    d.set_item("generations", st.generations.clone())?;
    Ok(d)
}

fn oracle_dict<'py>(py: Python<'py>, res: &OracleResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("status", if res.is_exact() { "exact" } else { "bounds" })?;
    d.set_item("size", res.size)?;
    d.set_item("witness", res.witness.clone())?;
    d.set_item("lower", res.lower)?;
    d.set_item("upper", res.upper)?;
    d.set_item("closures_evaluated", res.closures_evaluated)?;
    Ok(d)
}

fn family(kind: &str, dims: Option<Vec<usize>>, d: Option<usize>) -> PyResult<Family> {
    match (kind, dims, d) {
        ("grid", Some(dims), None) => Ok(Family::Grid { dims }),
        ("torus", Some(dims), None) => Ok(Family::Torus { dims }),
        ("hypercube", None, Some(d)) => Ok(Family::Hypercube { d }),
        _ => Err(PyValueError::new_err(
            "expected family 'grid' or 'torus' with dims, or 'hypercube' with d",
        )),
    }
}

fn colouring(g: &graph::Graph, c: Option<Vec<i64>>) -> EdgeColouring {
    c.map(EdgeColouring).unwrap_or_else(|| witness::greedy_colouring(g))
}

#[pyfunction]
fn bond_closure<'py>(py: Python<'py>, g: &PyGraph, seed: Vec<usize>, r: usize) -> PyResult<Bound<'py, PyDict>> {
    closure_dict(py, &percolation::bond_closure(&g.inner, &seed, r).map_err(err)?)
}

#[pyfunction]
fn neighbour_closure<'py>(py: Python<'py>, g: &PyGraph, seed: Vec<usize>, r: usize) -> PyResult<Bound<'py, PyDict>> {
    closure_dict(py, &percolation::neighbour_closure(&g.inner, &seed, r).map_err(err)?)
}

#[pyfunction]
fn hyper_closure<'py>(py: Python<'py>, h: &PyHypergraph, seed: Vec<usize>, r: usize) -> PyResult<Bound<'py, PyDict>> {
    closure_dict(py, &hyperperc::hyper_closure(&h.inner, &seed, r).map_err(err)?)
}

#[pyfunction]
fn percolates_bond(g: &PyGraph, seed: Vec<usize>, r: usize) -> PyResult<bool> {
    percolation::percolates_bond(&g.inner, &seed, r).map_err(err)
}

#[pyfunction]
fn percolates_vertex(g: &PyGraph, seed: Vec<usize>, r: usize) -> PyResult<bool> {
    percolation::percolates_vertex(&g.inner, &seed, r).map_err(err)
}

/// Percolating edge set of a family: `construct("torus", 2, dims=[3, 3])`.
#[pyfunction]
#[pyo3(signature = (kind, r, dims=None, d=None))]
fn construct(kind: &str, r: usize, dims: Option<Vec<usize>>, d: Option<usize>) -> PyResult<Vec<usize>> {
    family(kind, dims, d)?.construct(r).map_err(err)
}

#[pyfunction]
fn greedy_colouring(g: &PyGraph) -> Vec<i64> {
    witness::greedy_colouring(&g.inner).0
}

/// The family's graph with its recursive product colouring.
#[pyfunction]
#[pyo3(signature = (kind, dims=None, d=None))]
fn product_colouring(kind: &str, dims: Option<Vec<usize>>, d: Option<usize>) -> PyResult<(PyGraph, Vec<i64>)> {
    let (g, c) = family(kind, dims, d)?.product_colouring().map_err(err)?;
    Ok((g.into(), c.0))
}

/// Witness-space dimension; greedy colouring when `colouring` is omitted.
#[pyfunction]
#[pyo3(signature = (g, r, colouring=None))]
fn dim_w(g: &PyGraph, r: usize, colouring: Option<Vec<i64>>) -> PyResult<usize> {
    witness::dim_w(&g.inner, &self::colouring(&g.inner, colouring), r).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (h, r, colouring))]
fn hyper_dim_w(h: &PyHypergraph, r: usize, colouring: Vec<i64>) -> PyResult<usize> {
    hyperperc::hyper_dim_w(&h.inner, &HyperColouring(colouring), r).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, r, budget=10_000_000, lower_bound=None))]
fn min_percolating_bond<'py>(
    py: Python<'py>,
    g: &PyGraph,
    r: usize,
    budget: u64,
    lower_bound: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = SearchOptions { known_lower_bound: lower_bound, ..SearchOptions::with_budget(budget) };
    let res = py.detach(|| oracle::min_percolating_bond_with(&g.inner, r, &opts));
    oracle_dict(py, &res)
}

#[pyfunction]
#[pyo3(signature = (g, r, budget=10_000_000))]
fn min_percolating_vertex<'py>(py: Python<'py>, g: &PyGraph, r: usize, budget: u64) -> PyResult<Bound<'py, PyDict>> {
    let res = py.detach(|| oracle::min_percolating_vertex(&g.inner, r, budget));
    oracle_dict(py, &res)
}

#[pyfunction]
#[pyo3(signature = (h, r, budget=10_000_000))]
fn min_percolating_hyper<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    r: usize,
    budget: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let res = py.detach(|| oracle::min_percolating_hyper(&h.inner, r, budget));
    oracle_dict(py, &res)
}

#[pyfunction]
fn torus_recursion(dims: Vec<usize>, r: i64) -> PyResult<BigUint> {
    formulas::torus_recursion(&dims, r).map_err(err)
}

#[pyfunction]
fn grid_recursion(dims: Vec<usize>, r: i64) -> PyResult<BigUint> {
    formulas::grid_recursion(&dims, r).map_err(err)
}

#[pyfunction]
fn hypercube_set_size(d: usize, r: usize) -> PyResult<BigUint> {
    formulas::hypercube_set_size(d, r).map_err(err)
}

#[pyfunction]
fn hypercube_eq2_as_printed(d: usize, r: usize) -> PyResult<BigUint> {
    formulas::hypercube_eq2_as_printed(d, r).map_err(err)
}

#[pyfunction]
fn hypercube_corollary_as_printed(d: usize, r: usize) -> PyResult<BigUint> {
    formulas::hypercube_corollary_as_printed(d, r).map_err(err)
}

/// One consistency row as a dict keyed like the CSV columns.
#[pyfunction]
#[pyo3(signature = (kind, r, dims=None, d=None))]
fn consistency_report<'py>(
    py: Python<'py>,
    kind: &str,
    r: usize,
    dims: Option<Vec<usize>>,
    d: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let fam = family(kind, dims, d)?;
    let rep = py
        .detach(|| formulas::consistency_report(&fam, r, &formulas::ReportBudget::default()))
        .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("instance", &rep.instance)?;
    out.set_item("r", rep.r)?;
    out.set_item("recursion", &rep.recursion)?;
    out.set_item("eq2", &rep.eq2)?;
    out.set_item("corollary", &rep.corollary)?;
    out.set_item("construction_size", rep.construction_size)?;
    out.set_item("construction_percolates", rep.construction_percolates)?;
    out.set_item("oracle_min", rep.oracle_min)?;
    out.set_item("dim_lower_bound", rep.dim_lower_bound)?;
    out.set_item("csv", rep.csv_row())?;
    Ok(out)
}

#[pymodule]
#[pyo3(name = "bootperc")]
fn bootperc_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyHypergraph>()?;
    m.add_function(wrap_pyfunction!(bond_closure, m)?)?;
    m.add_function(wrap_pyfunction!(neighbour_closure, m)?)?;
    m.add_function(wrap_pyfunction!(hyper_closure, m)?)?;
    m.add_function(wrap_pyfunction!(percolates_bond, m)?)?;
    m.add_function(wrap_pyfunction!(percolates_vertex, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_colouring, m)?)?;
    m.add_function(wrap_pyfunction!(product_colouring, m)?)?;
    m.add_function(wrap_pyfunction!(dim_w, m)?)?;
    m.add_function(wrap_pyfunction!(hyper_dim_w, m)?)?;
    m.add_function(wrap_pyfunction!(min_percolating_bond, m)?)?;
    m.add_function(wrap_pyfunction!(min_percolating_vertex, m)?)?;
    m.add_function(wrap_pyfunction!(min_percolating_hyper, m)?)?;
    m.add_function(wrap_pyfunction!(torus_recursion, m)?)?;
    m.add_function(wrap_pyfunction!(grid_recursion, m)?)?;
    m.add_function(wrap_pyfunction!(hypercube_set_size, m)?)?;
    m.add_function(wrap_pyfunction!(hypercube_eq2_as_printed, m)?)?;
    m.add_function(wrap_pyfunction!(hypercube_corollary_as_printed, m)?)?;
    m.add_function(wrap_pyfunction!(consistency_report, m)?)?;
    Ok(())
}
