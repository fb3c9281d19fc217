//! Python bindings: `Pauli`, `Tableau` and `Stabilizer`.

use clifford_gf2::decompose::{self, GateSeq};
use clifford_gf2::{clifford, oracle, random, text, BinVec, CliffordTableau, PauliElement, StabilizerRep};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn err(e: clifford_gf2::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bits(s: &str) -> PyResult<BinVec> {
    BinVec::parse01(s).map_err(err)
}

fn seq_from_scheme(q: &CliffordTableau, scheme: &str) -> PyResult<GateSeq> {
    match scheme {
        "cols" => decompose::decompose_scheme1(q).map_err(err),
        "blocks" => decompose::decompose_scheme2(q).map_err(err),
        other => Err(PyValueError::new_err(format!("unknown scheme {other:?}, expected 'cols' or 'blocks'"))),
    }
}

/// `i^δ (−1)^ε τ_a` on `n` qubits.
#[pyclass(name = "Pauli", module = "gf2clifford", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPauli(PauliElement);

#[pymethods]
impl PyPauli {
    /// Parses a signed string such as `"+XZ"` or `"-iY"`.
    #[new]
    fn new(s: &str) -> PyResult<Self> {
        s.parse().map(Self).map_err(err)
    }

    /// Builds from a `0`/`1` label `[v; w]` and the two phase bits.
    #[staticmethod]
    #[pyo3(signature = (label, delta=false, epsilon=false))]
    fn from_label(label: &str, delta: bool, epsilon: bool) -> PyResult<Self> {
        PauliElement::new(delta, epsilon, bits(label)?).map(Self).map_err(err)
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label().to_string01()
    }

    /// Exponent of `i` in front of `τ_a`.
    #[getter]
    fn tau_phase(&self) -> u8 {
        self.0.tau_phase()
    }

    fn is_hermitian(&self) -> bool {
        self.0.is_hermitian()
    }

    fn commutes_with(&self, other: &Self) -> bool {
        self.0.commutes_with(&other.0)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.mul(&other.0).map(Self).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Pauli('{}')", self.0)
    }
}

/// Clifford operation stored as `(C, d, h)`.
#[pyclass(name = "Tableau", module = "gf2clifford", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyTableau(CliffordTableau);

#[pymethods]
impl PyTableau {
    /// Parses the tableau text format.
    #[new]
    fn new(s: &str) -> PyResult<Self> {
        text::parse_tableau(s).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(CliffordTableau::identity(n))
    }

    /// Tableau of a circuit in the text circuit format.
    #[staticmethod]
    fn from_circuit(s: &str) -> PyResult<Self> {
        text::parse_circuit(s).and_then(|seq| seq.tableau()).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, seed=0))]
    fn random(n: usize, seed: u64) -> Self {
        Self(random::random_tableau(n, &mut ChaCha8Rng::seed_from_u64(seed)))
    }

    #[staticmethod]
    fn hadamard(n: usize, qubits: Vec<usize>) -> PyResult<Self> {
        clifford::hadamard_gate(n, &qubits).map(Self).map_err(err)
    }

    #[staticmethod]
    fn cnot(n: usize, control: usize, target: usize) -> PyResult<Self> {
        clifford::cnot_gate(n, control, target).map(Self).map_err(err)
    }

    /// `exp(iπ/4·τ_ā)` for a `0`/`1` label.
    #[staticmethod]
    fn exp_pi4(label: &str) -> PyResult<Self> {
        clifford::exp_pi4_gate(&bits(label)?).map(Self).map_err(err)
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    /// Rows of `C` as `0`/`1` strings.
    #[getter]
    fn c(&self) -> Vec<String> {
        (0..self.0.c().rows()).map(|i| self.0.c().row(i).to_string01()).collect()
    }

    #[getter]
    fn d(&self) -> String {
        self.0.d().to_string01()
    }

    #[getter]
    fn h(&self) -> String {
        self.0.h().to_string01()
    }

    fn conjugate(&self, p: &PyPauli) -> PyResult<PyPauli> {
        self.0.conjugate(&p.0).map(PyPauli).map_err(err)
    }

    /// `self · first`, so `first` acts first.
    fn compose(&self, first: &Self) -> PyResult<Self> {
        self.0.compose(&first.0).map(Self).map_err(err)
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Circuit text for `scheme` in `{"cols", "blocks"}`.
    #[pyo3(signature = (scheme="cols"))]
    fn decompose(&self, scheme: &str) -> PyResult<String> {
        seq_from_scheme(&self.0, scheme).map(|seq| text::format_circuit(&seq))
    }

    #[pyo3(signature = (scheme="cols"))]
    fn two_qubit_count(&self, scheme: &str) -> PyResult<usize> {
        seq_from_scheme(&self.0, scheme).map(|seq| seq.two_qubit_count())
    }

    /// Dense unitary from the closed-form sum, as nested lists.
    fn unitary(&self) -> PyResult<Vec<Vec<Complex64>>> {
        let m = oracle::clifford_matrix_theorem6(&self.0).map_err(err)?;
        Ok((0..m.dim()).map(|i| (0..m.dim()).map(|j| m.get(i, j)).collect()).collect())
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.compose(other)
    }

    fn __str__(&self) -> String {
        text::format_tableau(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("<Tableau n={}>", self.0.num_qubits())
    }
}

/// Stabilizer state with hermitian generators.
#[pyclass(name = "Stabilizer", module = "gf2clifford", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyStabilizer(StabilizerRep);

#[pymethods]
impl PyStabilizer {
    /// From signed Pauli strings such as `["+XX", "+ZZ"]`.
    #[new]
    fn new(generators: Vec<String>) -> PyResult<Self> {
        let gens = generators.iter().map(|g| g.parse::<PauliElement>()).collect::<Result<Vec<_>, _>>().map_err(err)?;
        StabilizerRep::from_generators(&gens).map(Self).map_err(err)
    }

    #[staticmethod]
    fn zero_state(n: usize) -> Self {
        Self(StabilizerRep::zero_state(n))
    }

    #[staticmethod]
    #[pyo3(signature = (n, seed=0))]
    fn random(n: usize, seed: u64) -> Self {
        Self(random::random_stabilizer(n, &mut ChaCha8Rng::seed_from_u64(seed)))
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.0.generators().iter().map(ToString::to_string).collect()
    }

    fn apply(&self, q: &PyTableau) -> PyResult<Self> {
        self.0.apply_clifford(&q.0).map(Self).map_err(err)
    }

    /// Canonical form in the text format used by the CLI.
    fn canonical(&self) -> PyResult<String> {
        self.0.canonical_form().map(|c| text::format_canonical(&c)).map_err(err)
    }

    /// Nonzero amplitudes keyed by bitstring, qubit 0 first.
    fn amplitudes(&self) -> PyResult<Vec<(String, Complex64)>> {
        let map = self.0.canonical_form().map_err(err)?.amplitudes();
        let mag = map.magnitude();
        let entries = map.entries().map_err(err)?;
        Ok(entries
            .into_iter()
            .map(|a| (a.x.to_string01(), clifford_gf2::stabilizer::phase_value(a.phase) * mag))
            .collect())
    }

    /// Full state vector, index `Σ x_k 2^k`.
    fn state_vector(&self) -> PyResult<Vec<Complex64>> {
        self.0.canonical_form().and_then(|c| c.amplitudes().to_dense()).map_err(err)
    }

    fn __str__(&self) -> String {
        text::format_stabilizer(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Stabilizer({:?})", self.generators())
    }
}

#[pymodule]
fn gf2clifford(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPauli>()?;
    m.add_class::<PyTableau>()?;
    m.add_class::<PyStabilizer>()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_names() {
        let q = CliffordTableau::identity(2);
        assert!(seq_from_scheme(&q, "cols").is_ok());
        assert!(seq_from_scheme(&q, "blocks").is_ok());
    }

    #[test]
    fn tableau_equality_is_structural() {
        assert!(PyTableau::random(3, 4) == PyTableau::random(3, 4));
        assert!(PyTableau::identity(2).is_identity());
    }
}
