//! Stabilizer states in binary form and their canonical form.
//!
//! A state on `n` qubits is stored as `n` generators `i^{f_k}(−1)^{b_k}τ_{s_k}`,
//! the columns of `S`. Left-multiplying by a tableau updates the generators;
//! right-multiplying by an invertible `R` swaps the generating set for
//! another one of the same group. [`StabilizerRep::canonical_form`] uses both
//! to reach a shape from which every amplitude can be written down directly.

use num_complex::Complex64;

use crate::clifford::{self, CliffordTableau};
use crate::error::{Error, Result};
use crate::gf2::{self, BinMat, BinVec};
use crate::pauli::PauliElement;

/// Generators `i^{f_k}(−1)^{b_k}τ_{s_k}` of a stabilizer group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StabilizerRep {
    n: usize,
    s: BinMat,
    f: BinVec,
    b: BinVec,
}

impl StabilizerRep {
    /// Validates independence, commutation and hermiticity.
    pub fn new(s: BinMat, f: BinVec, b: BinVec) -> Result<Self> {
        let n = s.cols();
        if s.rows() != 2 * n {
            return Err(Error::DimensionMismatch { op: "stabilizer", left: (s.rows(), s.cols()), right: (2 * n, n) });
        }
        for v in [&f, &b] {
            if v.len() != n {
                return Err(Error::BadLength { expected: n, got: v.len() });
            }
        }
        let rep = Self { n, s, f, b };
        rep.validate()?;
        Ok(rep)
    }

    fn from_parts_unchecked(s: BinMat, f: BinVec, b: BinVec) -> Self {
        Self { n: s.cols(), s, f, b }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let p = gf2::symplectic_form(n);
        let g = &(&self.s.transpose() * &p) * &self.s;
        if let Some((first, second)) = (0..n).flat_map(|i| (0..i).map(move |j| (j, i))).find(|&(j, i)| g.get(i, j)) {
            return Err(Error::NonCommuting { first, second });
        }
        let mut acc = BinMat::zeros(2 * n, 0);
        for k in 0..n {
            acc = acc.hstack(&self.s.select_cols(&[k]));
            if acc.rank() != k + 1 {
                return Err(Error::DependentGenerators { column: k });
            }
        }
        let expected = clifford::hermitian_phase_vector(&self.s);
        if let Some(index) = (0..n).find(|&k| expected.get(k) != self.f.get(k)) {
            return Err(Error::NotHermitian { index });
        }
        Ok(())
    }

    /// `|0…0⟩`: generators `Z_k`.
    pub fn zero_state(n: usize) -> Self {
        let s = BinMat::identity(2 * n).submatrix(0, 2 * n, 0, n);
        Self::from_parts_unchecked(s, BinVec::zeros(n), BinVec::zeros(n))
    }

    pub fn from_generators(gens: &[PauliElement]) -> Result<Self> {
        let n = gens.len();
        for (k, g) in gens.iter().enumerate() {
            if g.num_qubits() != n {
                return Err(Error::QubitCountMismatch { left: g.num_qubits(), right: n });
            }
            if !g.is_hermitian() {
                return Err(Error::NotHermitian { index: k });
            }
        }
        let cols: Vec<BinVec> = gens.iter().map(|g| g.label().clone()).collect();
        let s = BinMat::from_cols(2 * n, &cols);
        Self::new(
            s,
            BinVec::from_bools(gens.iter().map(|g| g.delta)),
            BinVec::from_bools(gens.iter().map(|g| g.epsilon)),
        )
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> &BinMat {
        &self.s
    }

    pub fn f(&self) -> &BinVec {
        &self.f
    }

    pub fn b(&self) -> &BinVec {
        &self.b
    }

    pub fn generator(&self, k: usize) -> PauliElement {
        PauliElement::new(self.f.get(k), self.b.get(k), self.s.col(k)).expect("even length")
    }

    pub fn generators(&self) -> Vec<PauliElement> {
        (0..self.n).map(|k| self.generator(k)).collect()
    }

    /// `[S; fᵀ]`
    pub fn s_bar(&self) -> BinMat {
        let n = self.n;
        let mut m = self.s.resized(2 * n + 1, n);
        m.set_row(2 * n, &self.f);
        m
    }

    /// Generators of `Q|ψ⟩`: `S̄′ = C̄S̄`, `b′ = b + Sᵀh + diag(S̄ᵀ lows(C̄ᵀŪC̄) S̄)`.
    pub fn apply_clifford(&self, q: &CliffordTableau) -> Result<Self> {
        let n = self.n;
        if q.num_qubits() != n {
            return Err(Error::QubitCountMismatch { left: q.num_qubits(), right: n });
        }
        let cbar = q.c_bar();
        let sbar = self.s_bar();
        let new_bar = &cbar * &sbar;
        let lows = clifford::bar_form(&cbar, n).lows();
        let mut b = &self.b ^ &self.s.vec_mul(q.h());
        b ^= &lows.lows_congruence_diag(&sbar);
        Ok(Self::from_parts_unchecked(new_bar.submatrix(0, 2 * n, 0, n), new_bar.row(2 * n), b))
    }

    /// Generators `g′_j = ∏_k g_k^{R_kj}`: `S̄′ = S̄R`, `b′ = Rᵀb + diag(Rᵀ lows(S̄ᵀŪS̄) R)`.
    pub fn basis_change(&self, r: &BinMat) -> Result<Self> {
        let n = self.n;
        if r.rows() != n || r.cols() != n {
            return Err(Error::DimensionMismatch { op: "basis_change", left: (n, n), right: (r.rows(), r.cols()) });
        }
        if !r.is_invertible() {
            return Err(Error::Singular { size: n, rank: r.rank() });
        }
        let sbar = self.s_bar();
        let new_bar = &sbar * r;
        let lows = clifford::bar_form(&sbar, n).lows();
        let mut b = r.vec_mul(&self.b);
        b ^= &lows.lows_congruence_diag(r);
        Ok(Self::from_parts_unchecked(new_bar.submatrix(0, 2 * n, 0, n), new_bar.row(2 * n), b))
    }

    /// Reduces to the canonical shape and records everything needed to
    /// enumerate the amplitudes.
    pub fn canonical_form(&self) -> Result<CanonicalStabilizer> {
        let n = self.n;

        // R₁ = [completion | ker W]: the last r_c generators become Z-type.
        let w = self.s.submatrix(n, 2 * n, 0, n);
        let kw = w.kernel_range_bases();
        let r_ab = kw.rank;
        let r_c = n - r_ab;
        let comp = kw.kernel.complete_to_invertible()?;
        let order: Vec<usize> = (r_c..n).chain(0..r_c).collect();
        let s1 = self.basis_change(&comp.select_cols(&order))?;

        // R₂ = [[Comp, K_ab, 0], [0, K_c, I]] with K a basis of ker V.
        let v = s1.s.submatrix(0, n, 0, n);
        let kernel = v.kernel_range_bases().kernel;
        let r_b = kernel.cols();
        let r_a = r_ab - r_b;
        let comp_ab = kernel.submatrix(0, r_ab, 0, r_b).complete_to_invertible()?;
        let mut r2 = BinMat::zeros(n, n);
        r2.set_block(0, 0, &comp_ab.submatrix(0, r_ab, r_b, r_ab));
        r2.set_block(0, r_a, &kernel);
        r2.set_block(r_ab, r_ab, &BinMat::identity(r_c));
        let s2 = s1.basis_change(&r2)?;

        // Index change |x⟩ ↦ |T⁻¹x⟩ maps [W_a W_b] to the first unit vectors.
        let t = s2.s.submatrix(n, 2 * n, 0, r_ab).complete_to_invertible()?;
        let s3 = s2.apply_clifford(&clifford::linear_gate(&t.inverse()?)?)?;

        // R₃ clears V_ca and normalizes V_cc.
        let vcc_inv = s3.s.submatrix(r_ab, n, r_ab, n).inverse()?;
        let mut r3 = BinMat::identity(n);
        r3.set_block(r_ab, 0, &(&vcc_inv * &s3.s.submatrix(r_ab, n, 0, r_a)));
        r3.set_block(r_ab, r_ab, &vcc_inv);
        let s4 = s3.basis_change(&r3)?;

        let z = s4.s.submatrix(0, r_a, 0, r_a);
        let canon = CanonicalStabilizer {
            n,
            r_a,
            r_b,
            r_c,
            t,
            f_a: z.diag_vec(),
            z,
            b_ab: s4.b.slice(0, r_ab),
            b_c: s4.b.slice(r_ab, n),
        };
        debug_assert_eq!(canon.canonical_rep(), s4);
        Ok(canon)
    }
}

/// Canonical form: in the index frame `y = T⁻¹x` the generators are
/// `S′ = [[Z,0,0],[0,0,0],[0,0,I],[I,0,0],[0,I,0],[0,0,0]]`, `f′ = [diag Z; 0]`,
/// `b′ = [b_ab; b_c]`, with block sizes `r_a`, `r_b`, `r_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalStabilizer {
    pub n: usize,
    pub r_a: usize,
    pub r_b: usize,
    pub r_c: usize,
    pub t: BinMat,
    pub z: BinMat,
    pub f_a: BinVec,
    pub b_ab: BinVec,
    pub b_c: BinVec,
}

impl CanonicalStabilizer {
    /// Generators in the `y` frame.
    pub fn canonical_rep(&self) -> StabilizerRep {
        let (n, r_a, r_b) = (self.n, self.r_a, self.r_b);
        let r_ab = r_a + r_b;
        let mut s = BinMat::zeros(2 * n, n);
        s.set_block(0, 0, &self.z);
        s.set_block(r_ab, r_ab, &BinMat::identity(self.r_c));
        s.set_block(n, 0, &BinMat::identity(r_ab));
        StabilizerRep::from_parts_unchecked(s, self.f_a.concat(&BinVec::zeros(n - r_a)), self.b_ab.concat(&self.b_c))
    }

    /// Generators of the original state, obtained by undoing the index change.
    pub fn original_rep(&self) -> Result<StabilizerRep> {
        self.canonical_rep().apply_clifford(&clifford::linear_gate(&self.t)?)
    }

    pub fn amplitudes(&self) -> AmplitudeMap {
        let f = BinMat::outer(&self.f_a, &self.f_a);
        AmplitudeMap { canon: self.clone(), quad: (&self.z + &f).lows() }
    }
}

/// Largest support dimension `r_a + r_b` that [`AmplitudeMap::entries`] enumerates.
pub const MAX_SUPPORT_QUBITS: usize = 24;

/// Largest register for which dense state vectors are built.
pub const MAX_STATE_QUBITS: usize = 20;

/// Amplitudes `ψ(T[y; b_c]) = 2^{−k/2}·i^{p(y)}` over `y ∈ GF(2)^k`, `k = r_a + r_b`, with
/// `i^{p(y)} = (−i)^{f_a·y_a}(−1)^{y_aᵀ lows(Z + f_a f_aᵀ) y_a + b_ab·y}`. All other amplitudes vanish.
#[derive(Clone, Debug)]
pub struct AmplitudeMap {
    canon: CanonicalStabilizer,
    quad: BinMat,
}

/// One nonzero amplitude `2^{−k/2}·i^phase` at basis state `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amplitude {
    pub x: BinVec,
    pub phase: u8,
}

impl AmplitudeMap {
    pub fn num_qubits(&self) -> usize {
        self.canon.n
    }

    /// `k = r_a + r_b`; every nonzero amplitude has magnitude `2^{−k/2}`.
    pub fn norm_exponent(&self) -> usize {
        self.canon.r_a + self.canon.r_b
    }

    pub fn magnitude(&self) -> f64 {
        0.5f64.powf(self.norm_exponent() as f64 / 2.0)
    }

    /// Phase exponent (of `i`) at `y`.
    pub fn phase_at(&self, y: &BinVec) -> u8 {
        let c = &self.canon;
        let ya = y.slice(0, c.r_a);
        let odd_i = ya.dot(&c.f_a) as u8;
        let sign = self.quad.quad_form_lows(&ya) ^ y.dot(&c.b_ab);
        (3 * odd_i + 2 * sign as u8) % 4
    }

    /// Basis state `T[y; b_c]`.
    pub fn index_of(&self, y: &BinVec) -> BinVec {
        self.canon.t.mul_vec(&y.concat(&self.canon.b_c))
    }

    /// All nonzero amplitudes, sorted by the bitstring `x_0 x_1 … x_{n−1}`.
    pub fn entries(&self) -> Result<Vec<Amplitude>> {
        let k = self.norm_exponent();
        if k > MAX_SUPPORT_QUBITS {
            return Err(Error::OracleCap { n: k, cap: MAX_SUPPORT_QUBITS });
        }
        let mut out: Vec<Amplitude> = (0..1usize << k)
            .map(|idx| {
                let y = BinVec::from_index(k, idx);
                Amplitude { x: self.index_of(&y), phase: self.phase_at(&y) }
            })
            .collect();
        out.sort_by_key(|a| a.x.to_string01());
        Ok(out)
    }

    /// Dense state vector indexed by `Σ x_k 2^k`.
    pub fn to_dense(&self) -> Result<Vec<Complex64>> {
        let n = self.num_qubits();
        if n > MAX_STATE_QUBITS {
            return Err(Error::OracleCap { n, cap: MAX_STATE_QUBITS });
        }
        let mag = self.magnitude();
        let mut psi = vec![Complex64::new(0.0, 0.0); 1 << n];
        for a in self.entries()? {
            psi[a.x.to_index()] = phase_value(a.phase) * mag;
        }
        Ok(psi)
    }
}

/// `i^p`
pub fn phase_value(p: u8) -> Complex64 {
    match p % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Bits `start..end` of `v` packed into a `usize`, bit `k` for coordinate `start + k`.
pub(crate) fn pack(v: &BinVec, start: usize, end: usize) -> usize {
    (start..end).filter(|&k| v.get(k)).fold(0, |acc, k| acc | 1 << (k - start))
}

/// `(τ_a ψ)_x = (−1)^{v·x} ψ_{x⊕w}`.
pub fn pauli_on_statevector(a: &BinVec, psi: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.len() / 2;
    if !a.len().is_multiple_of(2) || psi.len() != 1usize << n {
        return Err(Error::BadLength { expected: 1usize << n, got: psi.len() });
    }
    let (v, w) = (pack(a, 0, n), pack(a, n, 2 * n));
    Ok((0..psi.len())
        .map(|x| {
            let amp = psi[x ^ w];
            if (v & x).count_ones() % 2 == 1 {
                -amp
            } else {
                amp
            }
        })
        .collect())
}

/// `i^δ(−1)^ε τ_a ψ`.
pub fn apply_pauli(p: &PauliElement, psi: &[Complex64]) -> Result<Vec<Complex64>> {
    let phase = phase_value(p.tau_phase());
    Ok(pauli_on_statevector(p.label(), psi)?.into_iter().map(|z| z * phase).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn state(gens: &[&str]) -> StabilizerRep {
        let g: Vec<PauliElement> = gens.iter().map(|s| s.parse().unwrap()).collect();
        StabilizerRep::from_generators(&g).unwrap()
    }

    fn assert_stabilized(rep: &StabilizerRep, psi: &[Complex64]) {
        for g in rep.generators() {
            let out = apply_pauli(&g, psi).unwrap();
            for (a, b) in out.iter().zip(psi) {
                assert!((a - b).norm() < 1e-12, "{g} does not fix the state");
            }
        }
    }

    #[test]
    fn zero_state_amplitude() {
        let c = StabilizerRep::zero_state(3).canonical_form().unwrap();
        assert_eq!((c.r_a, c.r_b, c.r_c), (0, 0, 3));
        let psi = c.amplitudes().to_dense().unwrap();
        assert_eq!(psi[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn plus_y_amplitudes() {
        let c = state(&["+Y"]).canonical_form().unwrap();
        assert_eq!((c.r_a, c.r_b, c.r_c), (1, 0, 0));
        let psi = c.amplitudes().to_dense().unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((psi[0] - Complex64::new(s, 0.0)).norm() < 1e-12);
        assert!((psi[1] - Complex64::new(0.0, s)).norm() < 1e-12);
    }

    #[test]
    fn minus_z_and_plus_x() {
        let c = state(&["-Z"]).canonical_form().unwrap();
        assert_eq!(c.amplitudes().entries().unwrap(), vec![Amplitude { x: BinVec::from_bits(&[1]), phase: 0 }]);
        let c = state(&["+X"]).canonical_form().unwrap();
        assert_eq!((c.r_a, c.r_b), (0, 1));
        let e = c.amplitudes().entries().unwrap();
        assert!(e.iter().all(|a| a.phase == 0) && e.len() == 2);
    }

    #[test]
    fn validation_errors() {
        let s = BinMat::from_rows(&[&[1, 0], &[0, 0], &[0, 1], &[0, 0]]);
        assert_eq!(
            StabilizerRep::new(s, BinVec::zeros(2), BinVec::zeros(2)),
            Err(Error::NonCommuting { first: 0, second: 1 })
        );
        let s = BinMat::from_rows(&[&[1, 1], &[0, 0], &[0, 0], &[0, 0]]);
        assert_eq!(
            StabilizerRep::new(s, BinVec::zeros(2), BinVec::zeros(2)),
            Err(Error::DependentGenerators { column: 1 })
        );
        let s = BinMat::from_rows(&[&[1], &[1]]);
        assert_eq!(StabilizerRep::new(s, BinVec::zeros(1), BinVec::zeros(1)), Err(Error::NotHermitian { index: 0 }));
    }

    #[test]
    fn canonical_form_is_reached_and_stabilized() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=6 {
            for _ in 0..40 {
                let rep = random::random_stabilizer(n, &mut rng);
                let c = rep.canonical_form().unwrap();
                assert_eq!(c.r_a + c.r_b + c.r_c, n);
                assert!(c.z.is_symmetric() && c.z.is_invertible());
                let psi = c.amplitudes().to_dense().unwrap();
                let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-12);
                assert_stabilized(&rep, &psi);
                assert!(c.original_rep().unwrap().validate().is_ok());
            }
        }
    }

    #[test]
    fn basis_change_preserves_the_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=5 {
            let rep = random::random_stabilizer(n, &mut rng);
            let psi = rep.canonical_form().unwrap().amplitudes().to_dense().unwrap();
            let other = rep.basis_change(&random::random_invertible(n, &mut rng)).unwrap();
            assert!(other.validate().is_ok());
            assert_stabilized(&other, &psi);
        }
    }

    #[test]
    fn pauli_action_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let x = pauli_on_statevector(&BinVec::from_bits(&[0, 1]), &[one, zero]).unwrap();
        assert_eq!(x, vec![zero, one]);
        let z = pauli_on_statevector(&BinVec::from_bits(&[1, 0]), &[zero, one]).unwrap();
        assert_eq!(z, vec![zero, -one]);
    }
}
