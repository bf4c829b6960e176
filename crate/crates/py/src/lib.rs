//! Python bindings: `import kclean`.
//!
//! Exponent vectors are lists whose entries are non-negative ints or `"inf"`
//! (`float("inf")` is accepted too). Variables and vertices are 1-based.

use kclean::cleanness::{filtration_from_tree, CleanSearch, Cleanness};
use kclean::multicomplex::DecompositionSearch;
use kclean::polarization::polarize_ideal;
use kclean::simplicial::is_k_decomposable_sc;
use kclean::{Exp, ExpVec, Fin, Inf, MonomialPrime, SearchBound};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyFloat, PyString};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn exp_of(obj: &Bound<'_, PyAny>) -> PyResult<Exp> {
    if let Ok(s) = obj.cast::<PyString>() {
        return match s.to_str()? {
            "inf" => Ok(Inf),
            other => Err(PyValueError::new_err(format!("bad exponent {other:?}"))),
        };
    }
    if let Ok(f) = obj.cast::<PyFloat>() {
        return if f.value().is_infinite() && f.value() > 0.0 {
            Ok(Inf)
        } else {
            Err(PyValueError::new_err("float exponents must be inf"))
        };
    }
    Ok(Fin(obj.extract::<u32>()?))
}

fn vec_of(row: &Bound<'_, PyAny>) -> PyResult<ExpVec> {
    let entries = row.try_iter()?.map(|e| exp_of(&e?)).collect::<PyResult<Vec<Exp>>>()?;
    ExpVec::new(entries).map_err(err)
}

fn vecs_of(rows: &Bound<'_, PyAny>) -> PyResult<Vec<ExpVec>> {
    rows.try_iter()?.map(|r| vec_of(&r?)).collect()
}

fn py_vec(py: Python<'_>, v: &ExpVec) -> PyResult<Vec<Py<PyAny>>> {
    v.entries()
        .iter()
        .map(|e| match e.finite() {
            Some(x) => Ok(x.into_pyobject(py)?.into_any().unbind()),
            None => Ok(PyString::new(py, "inf").into_any().unbind()),
        })
        .collect()
}

fn py_vecs(py: Python<'_>, vs: &[ExpVec]) -> PyResult<Vec<Vec<Py<PyAny>>>> {
    vs.iter().map(|v| py_vec(py, v)).collect()
}

fn finite_rows(vs: &[ExpVec]) -> Vec<Vec<u32>> {
    vs.iter().map(|v| v.to_finite().expect("ideal generators are finite")).collect()
}

fn prime_vars(primes: &[MonomialPrime]) -> Vec<Vec<usize>> {
    primes.iter().map(|p| p.vars.iter().map(|v| v + 1).collect()).collect()
}

fn one_based(faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    faces.iter().map(|f| f.iter().map(|v| v + 1).collect()).collect()
}

fn zero_based(faces: Vec<Vec<usize>>) -> PyResult<Vec<Vec<usize>>> {
    faces
        .into_iter()
        .map(|f| {
            f.into_iter()
                .map(|v| v.checked_sub(1).ok_or_else(|| PyValueError::new_err("vertices are numbered from 1")))
                .collect()
        })
        .collect()
}

fn search_bound(bound: Option<&Bound<'_, PyAny>>) -> PyResult<SearchBound> {
    match bound {
        None => Ok(SearchBound::Auto),
        Some(b) if b.is_none() => Ok(SearchBound::Auto),
        Some(b) => match b.extract::<u32>() {
            Ok(c) => Ok(SearchBound::Uniform(c)),
            Err(_) => Ok(SearchBound::PerCoordinate(b.extract::<Vec<u32>>()?)),
        },
    }
}

fn check_caps(bound: &SearchBound, n: usize) -> PyResult<()> {
    match bound {
        SearchBound::PerCoordinate(c) if c.len() != n => {
            Err(PyValueError::new_err(format!("bound has {} caps but there are {n} variables", c.len())))
        }
        _ => Ok(()),
    }
}

/// A monomial ideal given by exponent rows of its generators.
#[pyclass(name = "Ideal", module = "kclean", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Ideal(kclean::MonomialIdeal);

#[pymethods]
impl Ideal {
    #[new]
    fn new(n: usize, gens: Vec<Vec<u32>>) -> PyResult<Self> {
        let gens = gens.iter().map(|g| ExpVec::finite(g)).collect();
        kclean::MonomialIdeal::new(n, gens).map(Ideal).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Ideal).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn gens(&self) -> Vec<Vec<u32>> {
        finite_rows(self.0.gens())
    }

    fn contains(&self, m: Vec<u32>) -> bool {
        m.len() == self.0.n() && self.0.contains(&ExpVec::finite(&m))
    }

    fn colon(&self, u: Vec<u32>) -> PyResult<Self> {
        self.0.colon(&ExpVec::finite(&u)).map(Ideal).map_err(err)
    }

    fn add(&self, u: Vec<u32>) -> PyResult<Self> {
        self.0.add_principal(&ExpVec::finite(&u)).map(Ideal).map_err(err)
    }

    fn radical(&self) -> Self {
        Ideal(self.0.radical())
    }

    /// Associated primes as sorted lists of variables.
    fn ass(&self) -> PyResult<Vec<Vec<usize>>> {
        self.0.ass().map(|p| prime_vars(&p)).map_err(err)
    }

    fn min_primes(&self) -> PyResult<Vec<Vec<usize>>> {
        self.0.min_primes().map(|p| prime_vars(&p)).map_err(err)
    }

    fn irreducible_decomposition(&self) -> PyResult<Vec<Ideal>> {
        self.0.irreducible_decomposition().map(|v| v.into_iter().map(Ideal).collect()).map_err(err)
    }

    #[pyo3(signature = (k, bound=None))]
    fn is_k_clean(&self, k: usize, bound: Option<&Bound<'_, PyAny>>) -> PyResult<bool> {
        self.decide(k, Cleanness::KClean, bound).map(|t| t.is_some())
    }

    #[pyo3(signature = (k, bound=None))]
    fn is_pretty_k_clean(&self, k: usize, bound: Option<&Bound<'_, PyAny>>) -> PyResult<bool> {
        self.decide(k, Cleanness::PrettyKClean, bound).map(|t| t.is_some())
    }

    /// Filtration lines, or `None` when no certificate exists within the bound.
    #[pyo3(signature = (k, pretty=true, bound=None))]
    fn filtration(&self, k: usize, pretty: bool, bound: Option<&Bound<'_, PyAny>>) -> PyResult<Option<Vec<String>>> {
        let kind = if pretty { Cleanness::PrettyKClean } else { Cleanness::KClean };
        let Some(tree) = self.decide(k, kind, bound)? else { return Ok(None) };
        let f = filtration_from_tree(&tree).map_err(err)?;
        Ok(Some(f.to_string().lines().map(str::to_owned).collect()))
    }

    /// The polarization and its block sizes.
    fn polarize(&self) -> PyResult<(Ideal, Vec<usize>)> {
        let (p, map) = polarize_ideal(&self.0).map_err(err)?;
        let blocks = (0..map.source_dim()).map(|i| map.offset(i + 1) - map.offset(i)).collect();
        Ok((Ideal(p), blocks))
    }

    fn multicomplex(&self) -> Multicomplex {
        Multicomplex(kclean::Multicomplex::from_ideal(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("Ideal({}, {:?})", self.0.n(), finite_rows(self.0.gens()))
    }
}

impl Ideal {
    fn decide(
        &self,
        k: usize,
        kind: Cleanness,
        bound: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Option<std::sync::Arc<kclean::IdealTree>>> {
        let bound = search_bound(bound)?;
        check_caps(&bound, self.0.n())?;
        Ok(CleanSearch::new(bound).decide(&self.0, k, kind))
    }
}

/// A multicomplex generated by the given exponent vectors.
#[pyclass(name = "Multicomplex", module = "kclean", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Multicomplex(kclean::Multicomplex);

#[pymethods]
impl Multicomplex {
    #[new]
    fn new(n: usize, generators: &Bound<'_, PyAny>) -> PyResult<Self> {
        kclean::Multicomplex::generated_by(n, vecs_of(generators)?).map(Multicomplex).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Multicomplex).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn facets(&self, py: Python<'_>) -> PyResult<Vec<Vec<Py<PyAny>>>> {
        py_vecs(py, self.0.facets())
    }

    fn maximal(&self, py: Python<'_>) -> PyResult<Vec<Vec<Py<PyAny>>>> {
        py_vecs(py, self.0.maximal())
    }

    fn member(&self, a: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.member(&vec_of(a)?))
    }

    fn star(&self, a: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.star(&vec_of(a)?).map(Multicomplex).map_err(err)
    }

    fn deletion(&self, a: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.deletion(&vec_of(a)?).map(Multicomplex).map_err(err)
    }

    fn link(&self, a: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.link(&vec_of(a)?).map(Multicomplex).map_err(err)
    }

    fn ideal(&self) -> Ideal {
        Ideal(self.0.to_ideal())
    }

    #[pyo3(signature = (k, bound=None))]
    fn is_k_decomposable(&self, k: usize, bound: Option<&Bound<'_, PyAny>>) -> PyResult<bool> {
        let bound = search_bound(bound)?;
        check_caps(&bound, self.0.n())?;
        Ok(DecompositionSearch::new(bound).decompose(&self.0, k).is_some())
    }

    fn find_shelling(&self, py: Python<'_>) -> PyResult<Option<Vec<Vec<Py<PyAny>>>>> {
        self.0.find_shelling().map(|o| py_vecs(py, &o)).transpose()
    }

    fn __repr__(&self) -> String {
        serde_json::to_string(&self.0).map_or_else(|_| "Multicomplex(..)".into(), |s| format!("Multicomplex({s})"))
    }
}

/// A simplicial complex on vertices `1..=vertices`.
#[pyclass(name = "Complex", module = "kclean", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Complex(kclean::SimplicialComplex);

#[pymethods]
impl Complex {
    #[new]
    fn new(vertices: usize, facets: Vec<Vec<usize>>) -> PyResult<Self> {
        kclean::SimplicialComplex::new(vertices, &zero_based(facets)?).map(Complex).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Complex).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    #[getter]
    fn vertices(&self) -> usize {
        self.0.vertices()
    }

    fn facets(&self) -> Vec<Vec<usize>> {
        one_based(&self.0.facets())
    }

    fn link(&self, face: Vec<usize>) -> PyResult<Self> {
        self.0.link(&zero_based(vec![face])?[0]).map(Complex).map_err(err)
    }

    fn deletion(&self, face: Vec<usize>) -> PyResult<Self> {
        self.0.deletion(&zero_based(vec![face])?[0]).map(Complex).map_err(err)
    }

    /// Exact; `k >= -1`.
    fn is_k_decomposable(&self, k: i64) -> PyResult<bool> {
        is_k_decomposable_sc(&self.0, k).map(|t| t.is_some()).map_err(err)
    }

    fn find_shelling(&self) -> Option<Vec<Vec<usize>>> {
        self.0.find_shelling().map(|o| one_based(&o))
    }

    fn stanley_reisner(&self) -> PyResult<Ideal> {
        self.0.stanley_reisner().map(Ideal).map_err(err)
    }

    fn multicomplex(&self) -> PyResult<Multicomplex> {
        self.0.to_multicomplex().map(Multicomplex).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Complex({}, {:?})", self.0.vertices(), one_based(&self.0.facets()))
    }
}

#[pymodule]
#[pyo3(name = "kclean")]
fn kclean_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ideal>()?;
    m.add_class::<Multicomplex>()?;
    m.add_class::<Complex>()?;
    Ok(())
}
