//! Dense complex reference implementations for small registers.
//!
//! Basis index `Σ x_k 2^k`, so qubit `k` is bit `k`. These are slow and
//! exponential on purpose: they are the ground truth the binary algorithms
//! are tested against.

use num_complex::Complex64;

use crate::clifford::CliffordTableau;
use crate::decompose::{self, GateSeq, PrimitiveGate};
use crate::error::{Error, Result};
use crate::gf2::{self, BinMat, BinVec};
use crate::pauli::PauliElement;
use crate::stabilizer::{self, pack, phase_value, StabilizerRep};

pub const MAX_OPERATOR_QUBITS: usize = 10;
pub const MAX_PAULI_QUBITS: usize = 12;
pub const TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::OracleCap { n, cap })
    } else {
        Ok(())
    }
}

/// Square complex matrix of size `2^n`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; 1 << (2 * n)] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        let dim = m.dim();
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Builds the operator column by column.
    pub fn from_columns(n: usize, mut col: impl FnMut(usize) -> Vec<Complex64>) -> Self {
        let mut m = Self::zeros(n);
        let dim = m.dim();
        for j in 0..dim {
            for (i, z) in col(j).into_iter().enumerate() {
                m.data[i * dim + j] = z;
            }
        }
        m
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        let dim = self.dim();
        self.data[i * dim + j] = z;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, rhs: &DenseOperator) -> Result<DenseOperator> {
        if self.n != rhs.n {
            return Err(Error::QubitCountMismatch { left: self.n, right: rhs.n });
        }
        let dim = self.dim();
        let mut out = Self::zeros(self.n);
        for i in 0..dim {
            for k in 0..dim {
                let a = self.data[i * dim + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..dim {
                    out.data[i * dim + j] += a * rhs.data[k * dim + j];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> DenseOperator {
        let dim = self.dim();
        let mut out = Self::zeros(self.n);
        for i in 0..dim {
            for j in 0..dim {
                out.data[j * dim + i] = self.data[i * dim + j].conj();
            }
        }
        out
    }

    pub fn apply(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = self.dim();
        if psi.len() != dim {
            return Err(Error::BadLength { expected: dim, got: psi.len() });
        }
        Ok((0..dim).map(|i| (0..dim).map(|j| self.data[i * dim + j] * psi[j]).sum()).collect())
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint().mul(self).map(|p| p.max_abs_diff(&Self::identity(self.n)) <= tol).unwrap_or(false)
    }
}

/// `i^δ(−1)^ε τ_a` as a dense matrix: entry `(x ⊕ w, x)` is the phase times `(−1)^{v·(x⊕w)}`.
pub fn dense_pauli(p: &PauliElement) -> Result<DenseOperator> {
    let n = p.num_qubits();
    check_cap(n, MAX_PAULI_QUBITS)?;
    let a = p.label();
    let (v, w) = (pack(a, 0, n), pack(a, n, 2 * n));
    let phase = phase_value(p.tau_phase());
    let mut m = DenseOperator::zeros(n);
    for x in 0..m.dim() {
        let row = x ^ w;
        let sign = if (v & row).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        m.set(row, x, phase * sign);
    }
    Ok(m)
}

/// Reads a dense matrix back as a Pauli element if it is exactly one.
pub fn dense_to_pauli(op: &DenseOperator) -> Option<PauliElement> {
    let n = op.num_qubits();
    let dim = op.dim();
    // Column 0 has its single nonzero entry at row w, equal to i^g.
    let w = (0..dim).find(|&i| op.get(i, 0).norm() > 0.5)?;
    let z = op.get(w, 0);
    let g = (0..4u8).find(|&g| (phase_value(g) - z).norm() < TOLERANCE)?;
    // v from the sign pattern on unit columns: column e_k lands on row e_k ⊕ w.
    let mut a = BinVec::zeros(2 * n);
    for k in 0..n {
        a.set(n + k, w >> k & 1 == 1);
    }
    for k in 0..n {
        let row = (1 << k) ^ w;
        let ratio = op.get(row, 1 << k) / z;
        // (−1)^{v·(e_k⊕w)} / (−1)^{v·w} = (−1)^{v_k}
        a.set(k, ratio.re < 0.0);
    }
    let v = pack(&a, 0, n);
    let sign_w = (v & w).count_ones() % 2 == 1;
    let tau_phase = (g + if sign_w { 2 } else { 0 }) % 4;
    let p = PauliElement::new(tau_phase & 1 == 1, tau_phase & 2 == 2, a).ok()?;
    let check = dense_pauli(&p).ok()?;
    (check.max_abs_diff(op) < TOLERANCE).then_some(p)
}

/// Applies one primitive gate to a state vector.
pub fn apply_gate(gate: &PrimitiveGate, n: usize, psi: &[Complex64]) -> Result<Vec<Complex64>> {
    gate.validate(n)?;
    if psi.len() != 1 << n {
        return Err(Error::BadLength { expected: 1 << n, got: psi.len() });
    }
    let dim = psi.len();
    Ok(match gate {
        PrimitiveGate::ExpPi4(a) => {
            let t = stabilizer::pauli_on_statevector(a, psi)?;
            let coeff = phase_value(1 + gf2::utu(a) as u8) * std::f64::consts::FRAC_1_SQRT_2;
            psi.iter().zip(t).map(|(&p, q)| p * std::f64::consts::FRAC_1_SQRT_2 + coeff * q).collect()
        }
        PrimitiveGate::PauliGate(a) => stabilizer::pauli_on_statevector(a, psi)?,
        PrimitiveGate::Cnot { control, target } => {
            (0..dim).map(|x| psi[x ^ (((x >> control) & 1) << target)]).collect()
        }
        PrimitiveGate::Swap(a, b) => (0..dim)
            .map(|x| {
                let (ba, bb) = ((x >> a) & 1, (x >> b) & 1);
                psi[x ^ ((ba ^ bb) << a) ^ ((ba ^ bb) << b)]
            })
            .collect(),
        PrimitiveGate::HadamardSet(qs) => {
            let mut out = psi.to_vec();
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let mut qs = qs.clone();
            qs.sort_unstable();
            qs.dedup();
            for q in qs {
                let bit = 1 << q;
                for x in (0..dim).filter(|x| x & bit == 0) {
                    let (u, v) = (out[x], out[x | bit]);
                    out[x] = (u + v) * s;
                    out[x | bit] = (u - v) * s;
                }
            }
            out
        }
        PrimitiveGate::SingleQubit { qubit, c, h, .. } => {
            let mut out = psi.to_vec();
            for g in decompose::single_qubit_gates(n, *qubit, c, h)? {
                out = apply_gate(&g, n, &out)?;
            }
            out
        }
    })
}

/// Dense unitary of a gate sequence, up to a global phase.
pub fn dense_from_gates(seq: &GateSeq) -> Result<DenseOperator> {
    let n = seq.n;
    check_cap(n, MAX_OPERATOR_QUBITS)?;
    let dim = 1usize << n;
    let mut cols = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut psi = vec![ZERO; dim];
        psi[j] = ONE;
        for g in &seq.gates {
            psi = apply_gate(g, n, &psi)?;
        }
        cols.push(psi);
    }
    Ok(DenseOperator::from_columns(n, |j| std::mem::take(&mut cols[j])))
}

/// Applies a gate sequence to a state vector.
pub fn run_on_state(seq: &GateSeq, psi: &[Complex64]) -> Result<Vec<Complex64>> {
    seq.gates.iter().try_fold(psi.to_vec(), |acc, g| apply_gate(g, seq.n, &acc))
}

/// `Q X Q†`
pub fn dense_conjugate(q: &DenseOperator, x: &DenseOperator) -> Result<DenseOperator> {
    q.mul(x)?.mul(&q.adjoint())
}

/// Diagonal operator `(−i)^{d·x}(−1)^{xᵀ lows(Z + ddᵀ) x}` for symmetric `Z`, `d = diag Z`.
pub fn diagonal_clifford_matrix(z: &BinMat, d: &BinVec) -> Result<DenseOperator> {
    if let Some((row, col)) = z.first_asymmetry() {
        if !z.is_square() {
            return Err(Error::NotSquare { rows: z.rows(), cols: z.cols() });
        }
        return Err(Error::NotSymmetric { row, col });
    }
    let n = z.rows();
    if d.len() != n {
        return Err(Error::BadLength { expected: n, got: d.len() });
    }
    if let Some(index) = (0..n).find(|&k| z.get(k, k) != d.get(k)) {
        return Err(Error::PhaseVectorMismatch { index });
    }
    check_cap(n, MAX_OPERATOR_QUBITS)?;
    let lows = (z + &BinMat::outer(d, d)).lows();
    let mut m = DenseOperator::zeros(n);
    for x in 0..m.dim() {
        let xv = BinVec::from_index(n, x);
        let p = 3 * d.dot(&xv) as u8 + 2 * lows.quad_form_lows(&xv) as u8;
        m.set(x, x, phase_value(p));
    }
    Ok(m)
}

/// Everything needed to write down a Clifford operator as a sum over the
/// factors of its block decomposition.
#[derive(Clone, Debug)]
pub struct Theorem6Data {
    pub blocks: decompose::SymplecticBlocks,
    /// `h + h′`, with `h′` the phase vector of the five `h = 0` factors.
    pub h6: BinVec,
    /// `h6[0..n]`
    pub t: BinVec,
    /// `T₂⁻ᵀ h6[n..2n]`
    pub h_bc: BinVec,
}

pub fn theorem6_data(q: &CliffordTableau) -> Result<Theorem6Data> {
    let n = q.num_qubits();
    let blocks = decompose::symplectic_block_decompose(q.c())?;
    let f = blocks.factors()?;
    let mut prod = CliffordTableau::identity(n);
    for c in f.iter().rev() {
        let factor = CliffordTableau::from_c_h(c.clone(), BinVec::zeros(2 * n))?;
        prod = factor.compose(&prod)?;
    }
    let h6 = q.h() ^ prod.h();
    let t = h6.slice(0, n);
    let h_bc = blocks.t2.inverse()?.vec_mul(&h6.slice(n, 2 * n));
    Ok(Theorem6Data { blocks, h6, t, h_bc })
}

/// `Q = 2^{−r/2} Σ (−i)^{d_brᵀx_br + d_bcᵀx_bc}(−1)^{q_br + q_bc + h_bcᵀx_bc + x_rᵀx_c} |T₁x_br⟩⟨T₂⁻¹x_bc + t|`
/// summed over `x_b ∈ GF(2)^{n−r}`, `x_r, x_c ∈ GF(2)^r`, with `x_br = [x_b; x_r]`,
/// `x_bc = [x_b; x_c]`, `q_br = x_brᵀ lows(Z_br + d_br d_brᵀ) x_br` and likewise for `q_bc`.
pub fn clifford_matrix_theorem6(q: &CliffordTableau) -> Result<DenseOperator> {
    let n = q.num_qubits();
    check_cap(n, MAX_OPERATOR_QUBITS)?;
    let data = theorem6_data(q)?;
    let bl = &data.blocks;
    let r = bl.r;
    let b = n - r;
    let (z_br, z_bc) = (bl.z_br(), bl.z_bc());
    let (d_br, d_bc) = (z_br.diag_vec(), z_bc.diag_vec());
    let l_br = (&z_br + &BinMat::outer(&d_br, &d_br)).lows();
    let l_bc = (&z_bc + &BinMat::outer(&d_bc, &d_bc)).lows();
    let t2_inv = bl.t2.inverse()?;
    let t_idx = pack(&data.t, 0, n);
    let scale = 0.5f64.powf(r as f64 / 2.0);

    let mut m = DenseOperator::zeros(n);
    for xb in 0..1usize << b {
        for xr in 0..1usize << r {
            let x_br = BinVec::from_index(n, xb | xr << b);
            let row = bl.t1.mul_vec(&x_br).to_index();
            let p_br = 3 * d_br.dot(&x_br) as u8 + 2 * l_br.quad_form_lows(&x_br) as u8;
            for xc in 0..1usize << r {
                let x_bc = BinVec::from_index(n, xb | xc << b);
                let col = t2_inv.mul_vec(&x_bc).to_index() ^ t_idx;
                let sign = l_bc.quad_form_lows(&x_bc) ^ data.h_bc.dot(&x_bc) ^ ((xr & xc).count_ones() % 2 == 1);
                let p = p_br + 3 * d_bc.dot(&x_bc) as u8 + 2 * sign as u8;
                let z = m.get(row, col) + phase_value(p) * scale;
                m.set(row, col, z);
            }
        }
    }
    Ok(m)
}

/// Dense operator of a tableau via its gate decomposition.
pub fn dense_from_tableau(q: &CliffordTableau) -> Result<DenseOperator> {
    check_cap(q.num_qubits(), MAX_OPERATOR_QUBITS)?;
    dense_from_gates(&decompose::decompose_scheme2(q)?)
}

/// A state fixed by every generator: `∏_k (I + g_k)/2` applied to the first
/// basis vector it does not annihilate, then normalized.
pub fn projector_state(state: &StabilizerRep) -> Result<Vec<Complex64>> {
    let n = state.num_qubits();
    check_cap(n, MAX_OPERATOR_QUBITS)?;
    let dim = 1usize << n;
    let gens = state.generators();
    let threshold = 0.5f64.powf(n as f64 / 2.0 + 1.0);
    for seed in 0..dim {
        let mut v = vec![ZERO; dim];
        v[seed] = ONE;
        for g in &gens {
            let gv = stabilizer::apply_pauli(g, &v)?;
            v = v.iter().zip(gv).map(|(a, b)| (a + b) * 0.5).collect();
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > threshold {
            return Ok(v.into_iter().map(|z| z / norm).collect());
        }
    }
    Err(Error::EmptyProjection)
}

/// Outcome of [`equal_up_to_phase`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseComparison {
    pub equal: bool,
    /// Largest `|u_j − λ v_j|` after fixing `λ` from the largest entry of `v`,
    /// or `||λ| − 1|` if that is larger.
    pub max_deviation: f64,
}

/// Compares `u` and `v` up to a global phase at [`TOLERANCE`].
pub fn equal_up_to_phase(u: &[Complex64], v: &[Complex64]) -> Result<PhaseComparison> {
    if u.len() != v.len() {
        return Err(Error::BadLength { expected: v.len(), got: u.len() });
    }
    let mut best = 0;
    for (j, z) in v.iter().enumerate() {
        if z.norm() > v[best].norm() + TOLERANCE {
            best = j;
        }
    }
    if v.is_empty() || v[best].norm() <= TOLERANCE {
        let dev = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
        return Ok(PhaseComparison { equal: dev <= TOLERANCE, max_deviation: dev });
    }
    let lambda = u[best] / v[best];
    let dev = u.iter().zip(v).map(|(a, b)| (a - lambda * b).norm()).fold((lambda.norm() - 1.0).abs(), f64::max);
    Ok(PhaseComparison { equal: dev <= TOLERANCE, max_deviation: dev })
}

pub fn operators_equal_up_to_phase(a: &DenseOperator, b: &DenseOperator) -> Result<PhaseComparison> {
    if a.n != b.n {
        return Err(Error::QubitCountMismatch { left: a.n, right: b.n });
    }
    equal_up_to_phase(&a.data, &b.data)
}

/// Checks `Q τ_a Q† = τ′` densely for every generator image of a tableau.
pub fn verify_tableau_dense(q: &CliffordTableau, op: &DenseOperator) -> Result<bool> {
    Ok(first_generator_mismatch(q, op)?.is_none())
}

/// Index `k` of the first generator `τ_{e_k}` whose dense image under `op`
/// differs from the tableau's prediction.
pub fn first_generator_mismatch(q: &CliffordTableau, op: &DenseOperator) -> Result<Option<usize>> {
    let n = q.num_qubits();
    if op.n != n {
        return Err(Error::QubitCountMismatch { left: n, right: op.n });
    }
    for k in 0..2 * n {
        let x = PauliElement::tau(BinVec::unit(2 * n, k))?;
        let lhs = dense_conjugate(op, &dense_pauli(&x)?)?;
        let rhs = dense_pauli(&q.conjugate(&x)?)?;
        if lhs.max_abs_diff(&rhs) > TOLERANCE {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pauli_read_back() {
        for s in ["+X", "-Y", "+iZ", "-iXY", "+YZI", "-ZZX"] {
            let p: PauliElement = s.parse().unwrap();
            assert_eq!(dense_to_pauli(&dense_pauli(&p).unwrap()).unwrap(), p, "{s}");
        }
        assert!(dense_to_pauli(&DenseOperator::zeros(1)).is_none());
    }

    #[test]
    fn y_matrix() {
        let y = dense_pauli(&"+Y".parse().unwrap()).unwrap();
        assert_eq!(y.get(0, 1), Complex64::new(0.0, -1.0));
        assert_eq!(y.get(1, 0), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn exp_pi4_z_is_phase_gate() {
        let seq = GateSeq { n: 1, gates: vec![PrimitiveGate::ExpPi4(BinVec::from_bits(&[1, 0]))] };
        let u = dense_from_gates(&seq).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((u.get(0, 0) - Complex64::new(s, s)).norm() < 1e-12);
        assert!((u.get(1, 1) - Complex64::new(s, -s)).norm() < 1e-12);
    }

    #[test]
    fn gate_kernels_match_tableaux() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 1..=3 {
            for _ in 0..60 {
                let g = random::random_gate(n, &mut rng);
                let seq = GateSeq { n, gates: vec![g.clone()] };
                let u = dense_from_gates(&seq).unwrap();
                assert!(u.is_unitary(1e-10));
                assert!(verify_tableau_dense(&g.tableau(n).unwrap(), &u).unwrap(), "{g:?}");
            }
        }
    }

    #[test]
    fn theorem6_matches_gates() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in 1..=3 {
            for _ in 0..30 {
                let q = random::random_tableau(n, &mut rng);
                let m = clifford_matrix_theorem6(&q).unwrap();
                assert!(m.is_unitary(1e-10));
                assert!(verify_tableau_dense(&q, &m).unwrap());
            }
        }
    }

    #[test]
    fn diagonal_examples() {
        let m = diagonal_clifford_matrix(&BinMat::from_rows(&[&[1]]), &BinVec::from_bits(&[1])).unwrap();
        assert_eq!(m.get(1, 1), Complex64::new(0.0, -1.0));
        assert!(diagonal_clifford_matrix(&BinMat::from_rows(&[&[1]]), &BinVec::from_bits(&[0])).is_err());
    }

    #[test]
    fn phase_comparison() {
        let u = [Complex64::new(0.0, 1.0), ZERO];
        let v = [ONE, ZERO];
        assert!(equal_up_to_phase(&u, &v).unwrap().equal);
        let w = [Complex64::new(2.0, 0.0), ZERO];
        assert!(!equal_up_to_phase(&w, &v).unwrap().equal);
        assert!(equal_up_to_phase(&u, &[ONE]).is_err());
    }

    #[test]
    fn caps_are_enforced() {
        assert_eq!(dense_pauli(&PauliElement::identity(13)), Err(Error::OracleCap { n: 13, cap: MAX_PAULI_QUBITS }));
        assert!(dense_from_gates(&GateSeq::new(11)).is_err());
    }
}
