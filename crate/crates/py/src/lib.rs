//! Python bindings: spaces, maps, bundles and tower maps from the corpus or
//! JSON, with the main invariants as methods.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use phk_core::algebra::catalogue::{catalogue, group_by_name, group_name};
use phk_core::algebra::finab::FinAb as CoreFinAb;
use phk_core::algebra::module::ModuleAction;
use phk_core::cartan_leray::cartan_leray;
use phk_core::classifying::{classify_bundles, PrincipalBundle};
use phk_core::cohomology::{cohomology, h1_nonabelian, homology, pi0, H1Algorithm};
use phk_core::corpus::{self, CorpusObject};
use phk_core::homotopy::coverings::enumerate_coverings;
use phk_core::homotopy::fundamental::pi1_profinite;
use phk_core::homotopy::hurewicz::hurewicz_h1;
use phk_core::homotopy::weq::{check_weak_equivalence_tower, WEBounds, WEVerdict};
use phk_core::simplicial::json::{smap_from_json, smap_to_json, sset_from_json, sset_to_json};
use phk_core::simplicial::{SMap, SSet};
use phk_core::towers::TowerMap as CoreTowerMap;
use phk_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Mismatch(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A finitely generated abelian group `Z^r + Z/d₁ + ... + Z/d_k`.
#[pyclass(frozen, eq, skip_from_py_object, module = "phk")]
#[derive(Clone, PartialEq)]
pub struct FinAb(CoreFinAb);

#[pymethods]
impl FinAb {
    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    /// Invariant factors, each dividing the next.
    #[getter]
    fn factors(&self) -> Vec<u64> {
        self.0.factors().to_vec()
    }

    /// `None` for infinite groups.
    #[getter]
    fn order(&self) -> Option<u64> {
        self.0.order()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FinAb('{}')", self.0)
    }
}

#[pyclass(frozen, module = "phk")]
pub struct Space(Arc<SSet>);

#[pymethods]
impl Space {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Space> {
        Ok(Space(Arc::new(sset_from_json(text).map_err(py_err)?)))
    }

    #[getter]
    fn dim_cap(&self) -> usize {
        self.0.dim_cap()
    }

    /// Number of nondegenerate simplices in each dimension.
    fn counts(&self) -> Vec<usize> {
        self.0.counts()
    }

    fn euler_characteristic(&self) -> i64 {
        self.0.euler_characteristic()
    }

    fn to_json(&self) -> String {
        sset_to_json(&self.0)
    }

    fn cohomology(&self, modulus: u64, degree: usize) -> PyResult<FinAb> {
        cohomology(&self.0, &CoreFinAb::cyclic(modulus), degree)
            .map(FinAb)
            .map_err(py_err)
    }

    fn homology(&self, modulus: u64, degree: usize) -> PyResult<FinAb> {
        homology(&self.0, modulus, degree)
            .map(FinAb)
            .map_err(py_err)
    }

    fn components(&self) -> usize {
        pi0(&self.0).count()
    }

    /// Orders of the finite quotients of `π₁` up to `bound`, one per kernel.
    fn pi1_quotient_orders(&self, bound: usize) -> PyResult<Vec<usize>> {
        Ok(pi1_profinite(&self.0, 0, bound).map_err(py_err)?.orders())
    }

    /// `|H¹(X; G)|`; `algorithm` is `"gauge"` or `"homomorphisms"`.
    #[pyo3(signature = (group, algorithm = "gauge"))]
    fn h1_size(&self, group: &str, algorithm: &str) -> PyResult<usize> {
        let alg = match algorithm {
            "gauge" => H1Algorithm::GaugeClasses,
            "homomorphisms" => H1Algorithm::Homomorphisms,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown algorithm `{other}`"
                )))
            }
        };
        let g = group_by_name(group).map_err(py_err)?;
        Ok(h1_nonabelian(&self.0, &g, alg).map_err(py_err)?.len())
    }

    /// Degrees of the connected coverings up to `max_degree`.
    fn covering_degrees(&self, max_degree: usize) -> PyResult<Vec<usize>> {
        let covs = enumerate_coverings(&self.0, max_degree).map_err(py_err)?;
        Ok(covs.iter().map(|c| c.degree()).collect())
    }

    fn hurewicz_agrees(&self, moduli: Vec<u64>) -> PyResult<bool> {
        Ok(hurewicz_h1(&self.0, &moduli).map_err(py_err)?.passes())
    }

    /// One principal bundle per isomorphism class.
    fn bundles(&self, group: &str) -> PyResult<Vec<Bundle>> {
        let g = group_by_name(group).map_err(py_err)?;
        let cls = classify_bundles(&self.0, &g).map_err(py_err)?;
        Ok(cls.bundles.into_iter().map(Bundle).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Space(dim_cap={}, counts={:?})",
            self.0.dim_cap(),
            self.0.counts()
        )
    }
}

#[pyclass(frozen, module = "phk")]
pub struct Map(SMap);

#[pymethods]
impl Map {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Map> {
        smap_from_json(text).map(Map).map_err(py_err)
    }

    #[getter]
    fn source(&self) -> Space {
        Space(self.0.source().clone())
    }

    #[getter]
    fn target(&self) -> Space {
        Space(self.0.target().clone())
    }

    fn to_json(&self) -> String {
        smap_to_json(&self.0)
    }

    #[pyo3(signature = (degree_cap, coeff_cap = 4, quotient_cap = 6))]
    fn check_weak_equivalence(
        &self,
        degree_cap: usize,
        coeff_cap: usize,
        quotient_cap: usize,
    ) -> PyResult<Verdict> {
        check(
            &CoreTowerMap::from_map(&self.0),
            degree_cap,
            coeff_cap,
            quotient_cap,
        )
    }
}

#[pyclass(frozen, module = "phk")]
pub struct TowerMap(CoreTowerMap);

#[pymethods]
impl TowerMap {
    #[getter]
    fn levels(&self) -> usize {
        self.0.maps.len()
    }

    #[pyo3(signature = (degree_cap, coeff_cap = 4, quotient_cap = 6))]
    fn check_weak_equivalence(
        &self,
        degree_cap: usize,
        coeff_cap: usize,
        quotient_cap: usize,
    ) -> PyResult<Verdict> {
        check(&self.0, degree_cap, coeff_cap, quotient_cap)
    }
}

fn check(
    f: &CoreTowerMap,
    degree_cap: usize,
    coeff_cap: usize,
    quotient_cap: usize,
) -> PyResult<Verdict> {
    let bounds = WEBounds {
        degree_cap,
        coeff_cap,
        quotient_cap,
    };
    check_weak_equivalence_tower(f, bounds)
        .map(Verdict)
        .map_err(py_err)
}

#[pyclass(frozen, module = "phk")]
pub struct Verdict(WEVerdict);

#[pymethods]
impl Verdict {
    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    /// `"pass-up-to-bounds"` or `"fail"`.
    #[getter]
    fn status(&self) -> String {
        self.0.status.to_string()
    }

    #[getter]
    fn probes(&self) -> Vec<(String, bool)> {
        self.0
            .probes
            .iter()
            .map(|p| (p.label.clone(), p.passed))
            .collect()
    }

    /// `(invariant, coefficient, degree, source value, target value)` of
    /// the first failing probe.
    #[getter]
    fn witness(&self) -> Option<(String, String, usize, String, String)> {
        self.0.witness.as_ref().map(|w| {
            (
                w.invariant.clone(),
                w.coefficient.clone(),
                w.degree,
                w.source_value.clone(),
                w.target_value.clone(),
            )
        })
    }

    fn __repr__(&self) -> String {
        format!("Verdict({}, {})", self.0.status, self.0.bounds)
    }
}

#[pyclass(frozen, module = "phk")]
pub struct Bundle(PrincipalBundle);

#[pymethods]
impl Bundle {
    #[getter]
    fn group(&self) -> String {
        group_name(&self.0.group)
    }

    #[getter]
    fn total(&self) -> Space {
        Space(self.0.total().clone())
    }

    #[getter]
    fn base(&self) -> Space {
        Space(self.0.base().clone())
    }

    fn cocycle(&self) -> Vec<usize> {
        self.0.cocycle.values().to_vec()
    }

    /// Cartan–Leray spectral sequence with trivial `Z/p` coefficients.
    /// Returns a dict with `e2`, `e_infinity`, `total`, `abutment` and
    /// `passes`.
    fn cartan_leray(&self, py: Python<'_>, prime: u64, max_degree: usize) -> PyResult<Py<PyAny>> {
        let action = ModuleAction::trivial(&self.0.group, CoreFinAb::cyclic(prime));
        let ss = cartan_leray(&self.0, &action, max_degree).map_err(py_err)?;
        let d = pyo3::types::PyDict::new(py);
        d.set_item("e2", ss.e2_expected.clone())?;
        d.set_item("e_infinity", ss.diagonal_totals())?;
        d.set_item("total", ss.total.clone())?;
        d.set_item("abutment", ss.abutment.clone())?;
        d.set_item("passes", ss.passes())?;
        Ok(d.into_any().unbind())
    }
}

/// Builds a corpus entry `name` or `name:param`.
#[pyfunction]
fn corpus_object(py: Python<'_>, spec: &str) -> PyResult<Py<PyAny>> {
    let obj = corpus::corpus(spec).map_err(py_err)?;
    Ok(match obj {
        CorpusObject::Space(x) => Space(x).into_pyobject(py)?.into_any().unbind(),
        CorpusObject::Map(f) => Map(f).into_pyobject(py)?.into_any().unbind(),
        CorpusObject::Bundle(b) => Bundle(b).into_pyobject(py)?.into_any().unbind(),
        CorpusObject::TowerMap(f) => TowerMap(f).into_pyobject(py)?.into_any().unbind(),
        CorpusObject::Tower(_) => {
            return Err(PyValueError::new_err(
                "towers are not exposed; use a tower map",
            ));
        }
    })
}

/// `(name, kind, description)` for every corpus entry.
#[pyfunction]
fn corpus_entries() -> Vec<(&'static str, &'static str, &'static str)> {
    corpus::ENTRIES
        .iter()
        .map(|e| (e.name, e.kind, e.description))
        .collect()
}

#[pyfunction]
fn group_names(max_order: usize) -> Vec<String> {
    catalogue()
        .up_to(max_order)
        .map(|e| e.name.clone())
        .collect()
}

#[pymodule]
fn phk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FinAb>()?;
    m.add_class::<Space>()?;
    m.add_class::<Map>()?;
    m.add_class::<TowerMap>()?;
    m.add_class::<Verdict>()?;
    m.add_class::<Bundle>()?;
    m.add_function(wrap_pyfunction!(corpus_object, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_entries, m)?)?;
    m.add_function(wrap_pyfunction!(group_names, m)?)?;
    Ok(())
}
