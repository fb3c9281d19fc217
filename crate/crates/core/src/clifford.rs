//! Clifford operations as binary tableaux `(C, d, h)`.
//!
//! Column `k` of the symplectic matrix `C` together with `d_k` and `h_k`
//! describes the image `i^{d_k} (−1)^{h_k} τ_{c_k}` of the generator
//! `τ_{e_k}` under `X ↦ QXQ†`. A tableau fixes `Q` only up to a global phase.
//!
//! Several formulas are cleanest in the extended `(2n+1)`-dimensional form
//! `C̄ = [[C, 0], [dᵀ, 1]]`, `Ū = [[U, 0], [0, 1]]`, `h̄ = [h; 0]`; those views
//! are built on demand and never stored.

use crate::error::{Error, Result};
use crate::gf2::{self, BinMat, BinVec};
use crate::pauli::PauliElement;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    n: usize,
    c: BinMat,
    d: BinVec,
    h: BinVec,
}

/// `diag(CᵀUC)`: for every column `c_k`, the parity of `v_k ∧ w_k`.
pub fn hermitian_phase_vector(c: &BinMat) -> BinVec {
    assert!(c.rows().is_multiple_of(2));
    let ct = c.transpose();
    BinVec::from_bools((0..c.cols()).map(|k| gf2::utu(&ct.row(k))))
}

/// `C̄ᵀ Ū C̄` for an extended `(2n+1)`-square matrix.
pub(crate) fn bar_form(cbar: &BinMat, n: usize) -> BinMat {
    debug_assert_eq!(cbar.rows(), 2 * n + 1);
    let m = cbar.cols();
    let last = cbar.submatrix(2 * n, 2 * n + 1, 0, m);
    let low = cbar.submatrix(0, n, 0, m).vstack(&last);
    let high = cbar.submatrix(n, 2 * n, 0, m).vstack(&last);
    &low.transpose() * &high
}

/// `[[C, 0], [dᵀ, 1]]`
pub(crate) fn extend(c: &BinMat, d: &BinVec) -> BinMat {
    let m = c.rows();
    let mut cbar = c.resized(m + 1, m + 1);
    let mut last = d.concat(&BinVec::zeros(1));
    last.set(m, true);
    cbar.set_row(m, &last);
    cbar
}

impl CliffordTableau {
    /// Validates `C` symplectic and `d = diag(CᵀUC)`.
    pub fn new(c: BinMat, d: BinVec, h: BinVec) -> Result<Self> {
        if !c.is_square() || !c.rows().is_multiple_of(2) {
            return Err(Error::NotSquare { rows: c.rows(), cols: c.cols() });
        }
        let m = c.rows();
        for v in [&d, &h] {
            if v.len() != m {
                return Err(Error::BadLength { expected: m, got: v.len() });
            }
        }
        let n = m / 2;
        if let Some((row, col)) = c.symplectic_defect(&gf2::symplectic_form(n)) {
            return Err(Error::NotSymplectic { row, col });
        }
        let expected = hermitian_phase_vector(&c);
        if let Some(index) = (&expected ^ &d).first_one() {
            return Err(Error::PhaseVectorMismatch { index });
        }
        Ok(Self { n, c, d, h })
    }

    /// Builds a tableau from `C` and `h`, deriving `d`.
    pub fn from_c_h(c: BinMat, h: BinVec) -> Result<Self> {
        if !c.is_square() || !c.rows().is_multiple_of(2) {
            return Err(Error::NotSquare { rows: c.rows(), cols: c.cols() });
        }
        let d = hermitian_phase_vector(&c);
        Self::new(c, d, h)
    }

    pub(crate) fn from_parts_unchecked(c: BinMat, d: BinVec, h: BinVec) -> Self {
        let n = c.rows() / 2;
        debug_assert_eq!(hermitian_phase_vector(&c), d);
        Self { n, c, d, h }
    }

    pub fn identity(n: usize) -> Self {
        Self { n, c: BinMat::identity(2 * n), d: BinVec::zeros(2 * n), h: BinVec::zeros(2 * n) }
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn c(&self) -> &BinMat {
        &self.c
    }

    #[inline]
    pub fn d(&self) -> &BinVec {
        &self.d
    }

    #[inline]
    pub fn h(&self) -> &BinVec {
        &self.h
    }

    /// Bytes held by `C`, `d` and `h`.
    pub fn heap_bytes(&self) -> usize {
        self.c.heap_bytes() + 8 * (self.d.words().len() + self.h.words().len())
    }

    pub fn is_identity(&self) -> bool {
        self.c.is_identity() && self.h.is_zero()
    }

    /// Same `C`, different `h`.
    pub fn with_h(&self, h: BinVec) -> Result<Self> {
        if h.len() != 2 * self.n {
            return Err(Error::BadLength { expected: 2 * self.n, got: h.len() });
        }
        Ok(Self { h, ..self.clone() })
    }

    /// `C̄ = [[C, 0], [dᵀ, 1]]`
    pub fn c_bar(&self) -> BinMat {
        extend(&self.c, &self.d)
    }

    /// `h̄ = [h; 0]`
    pub fn h_bar(&self) -> BinVec {
        self.h.concat(&BinVec::zeros(1))
    }

    /// Image of the generator `τ_{e_k}`: `i^{d_k}(−1)^{h_k} τ_{c_k}`.
    pub fn generator_image(&self, k: usize) -> PauliElement {
        PauliElement::new(self.d.get(k), self.h.get(k), self.c.col(k)).expect("even length")
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::QubitCountMismatch { left: self.n, right: n });
        }
        Ok(())
    }

    /// Image of `p` under `X ↦ QXQ†`.
    ///
    /// Multiplies the generator images selected by `b₁` in index order, then
    /// the factor `i^{δ₁}`. This is the sum `b̄₁ᵀ lows(C̄ᵀŪC̄) b̄₁` accumulated
    /// one prefix at a time, costing `O(|b₁|·n)`.
    pub fn conjugate(&self, p: &PauliElement) -> Result<PauliElement> {
        self.check_n(p.num_qubits())?;
        let mut acc = PauliElement::identity(self.n);
        for k in p.label().iter_ones() {
            acc = acc.mul(&self.generator_image(k))?;
        }
        if p.delta {
            // (i^δ (−1)^ε τ)·i = i^{δ+1} (−1)^{ε+δ} τ
            acc.epsilon ^= acc.delta;
            acc.delta = !acc.delta;
        }
        acc.epsilon ^= p.epsilon;
        Ok(acc)
    }

    /// Same result as [`conjugate`](Self::conjugate), evaluated with the
    /// closed form `b̄₂ = C̄b̄₁`, `ε₂ = ε₁ + h̄ᵀb̄₁ + b̄₁ᵀ lows(C̄ᵀŪC̄) b̄₁`.
    /// Costs a full `(2n+1)`-square product.
    pub fn conjugate_by_formula(&self, p: &PauliElement) -> Result<PauliElement> {
        self.check_n(p.num_qubits())?;
        let cbar = self.c_bar();
        let mut b1 = p.label().concat(&BinVec::zeros(1));
        b1.set(2 * self.n, p.delta);
        let b2 = cbar.mul_vec(&b1);
        let m = bar_form(&cbar, self.n);
        let eps = p.epsilon ^ self.h_bar().dot(&b1) ^ m.quad_form_lows(&b1);
        PauliElement::new(b2.get(2 * self.n), eps, b2.slice(0, 2 * self.n))
    }

    /// Tableau of `self · first` (apply `first`, then `self`).
    ///
    /// `C̄₂₁ = C̄₂C̄₁`, `h̄₂₁ = h̄₁ + C̄₁ᵀh̄₂ + diag(C̄₁ᵀ lows(C̄₂ᵀŪC̄₂) C̄₁)`.
    pub fn compose(&self, first: &CliffordTableau) -> Result<CliffordTableau> {
        self.check_n(first.n)?;
        let m = 2 * self.n;
        let cbar1 = first.c_bar();
        let cbar2 = self.c_bar();
        let cbar21 = &cbar2 * &cbar1;
        let quad = bar_form(&cbar2, self.n).lows_congruence_diag(&cbar1);
        let mut h = first.h.clone();
        h ^= &first.c.vec_mul(&self.h);
        h ^= &quad.slice(0, m);
        let d = cbar21.row(m).slice(0, m);
        Ok(Self::from_parts_unchecked(cbar21.resized(m, m), d, h))
    }

    /// Tableau of `next · self`.
    pub fn then(&self, next: &CliffordTableau) -> Result<CliffordTableau> {
        next.compose(self)
    }

    /// `C₂ = PC₁ᵀP`, `h̄₂ = C̄⁻ᵀh̄ + diag(C̄⁻ᵀ lows(C̄ᵀŪC̄) C̄⁻¹)`.
    pub fn inverse(&self) -> CliffordTableau {
        let m = 2 * self.n;
        let c_inv = symplectic_inverse(&self.c);
        let d_inv = c_inv.vec_mul(&self.d);
        let cbar_inv = extend(&c_inv, &d_inv);
        let form = bar_form(&self.c_bar(), self.n);
        let mut h = cbar_inv.vec_mul(&self.h_bar());
        h ^= &form.lows_congruence_diag(&cbar_inv);
        Self::from_parts_unchecked(c_inv, d_inv, h.slice(0, m))
    }
}

/// `C⁻¹ = PCᵀP` for symplectic `C`.
pub fn symplectic_inverse(c: &BinMat) -> BinMat {
    let m = c.rows();
    let n = m / 2;
    let ct = c.transpose();
    let perm = |k: usize| if k < n { k + n } else { k - n };
    BinMat::from_fn(m, m, |i, j| ct.get(perm(i), perm(j)))
}

impl std::fmt::Debug for CliffordTableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CliffordTableau n={}", self.n)?;
        f.write_str(&self.c.to_string01())?;
        writeln!(f, "d {}", self.d)?;
        write!(f, "h {}", self.h)
    }
}

/// `Q₂·Q₁`
pub fn compose(q2: &CliffordTableau, q1: &CliffordTableau) -> Result<CliffordTableau> {
    q2.compose(q1)
}

pub fn inverse(q: &CliffordTableau) -> CliffordTableau {
    q.inverse()
}

pub fn conjugate_pauli(q: &CliffordTableau, p: &PauliElement) -> Result<PauliElement> {
    q.conjugate(p)
}

fn check_qubit(q: usize, n: usize) -> Result<()> {
    if q >= n {
        return Err(Error::QubitOutOfRange { qubit: q, n });
    }
    Ok(())
}

/// The Pauli operation `τ_a`: `C = I`, `h = Pa`.
pub fn pauli_gate(a: &BinVec) -> Result<CliffordTableau> {
    if !a.len().is_multiple_of(2) {
        return Err(Error::BadLength { expected: a.len() + 1, got: a.len() });
    }
    let n = a.len() / 2;
    Ok(CliffordTableau { h: a.swap_halves(), ..CliffordTableau::identity(n) })
}

/// Qubit `k` is moved to `perm[k]`: `C = blockdiag(Π, Π)` with `Πe_k = e_{perm[k]}`.
pub fn permutation_gate(perm: &[usize]) -> Result<CliffordTableau> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation { n });
        }
    }
    let pi = BinMat::from_fn(n, n, |i, j| perm[j] == i);
    Ok(CliffordTableau::from_parts_unchecked(BinMat::block_diag(&pi, &pi), BinVec::zeros(2 * n), BinVec::zeros(2 * n)))
}

/// Exchange of two qubits.
pub fn swap_gate(n: usize, q1: usize, q2: usize) -> Result<CliffordTableau> {
    check_qubit(q1, n)?;
    check_qubit(q2, n)?;
    if q1 == q2 {
        return Err(Error::RepeatedQubit { qubit: q1 });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(q1, q2);
    permutation_gate(&perm)
}

/// Controlled NOT: `X_c ↦ X_c X_t`, `Z_t ↦ Z_c Z_t`.
pub fn cnot_gate(n: usize, control: usize, target: usize) -> Result<CliffordTableau> {
    check_qubit(control, n)?;
    check_qubit(target, n)?;
    if control == target {
        return Err(Error::RepeatedQubit { qubit: control });
    }
    let mut c = BinMat::identity(2 * n);
    c.set(control, target, true);
    c.set(n + target, n + control, true);
    Ok(CliffordTableau::from_parts_unchecked(c, BinVec::zeros(2 * n), BinVec::zeros(2 * n)))
}

/// Index-space map `|x⟩ ↦ |Rx⟩`: `C = blockdiag(R⁻ᵀ, R)`, `h = 0`.
pub fn linear_gate(r: &BinMat) -> Result<CliffordTableau> {
    let r_inv = r.inverse()?;
    let n = r.rows();
    Ok(CliffordTableau::from_parts_unchecked(
        BinMat::block_diag(&r_inv.transpose(), r),
        BinVec::zeros(2 * n),
        BinVec::zeros(2 * n),
    ))
}

/// Hadamard on each listed qubit. Listing every qubit gives `C = P`.
pub fn hadamard_gate(n: usize, qubits: &[usize]) -> Result<CliffordTableau> {
    let mut on = vec![false; n];
    for &q in qubits {
        check_qubit(q, n)?;
        on[q] = true;
    }
    let mut c = BinMat::identity(2 * n);
    for q in (0..n).filter(|&q| on[q]) {
        c.set(q, q, false);
        c.set(n + q, n + q, false);
        c.set(q, n + q, true);
        c.set(n + q, q, true);
    }
    Ok(CliffordTableau::from_parts_unchecked(c, BinVec::zeros(2 * n), BinVec::zeros(2 * n)))
}

/// `exp(iπ/4·τ_ā) = (I + iτ_ā)/√2` with `τ_ā = i^{aᵀUa}τ_a`:
/// `C = I + aaᵀP`, `h = CᵀUa`.
pub fn exp_pi4_gate(a: &BinVec) -> Result<CliffordTableau> {
    if !a.len().is_multiple_of(2) {
        return Err(Error::BadLength { expected: a.len() + 1, got: a.len() });
    }
    if a.is_zero() {
        return Err(Error::ZeroLabel);
    }
    let n = a.len() / 2;
    let c = &BinMat::identity(2 * n) + &BinMat::outer(a, &a.swap_halves());
    let ua = a.slice(n, 2 * n).concat(&BinVec::zeros(n));
    let h = c.vec_mul(&ua);
    let d = hermitian_phase_vector(&c);
    Ok(CliffordTableau::from_parts_unchecked(c, d, h))
}

/// Places a `k`-qubit tableau on the listed qubits of an `n`-qubit register.
pub fn embed(n: usize, qubits: &[usize], small: &CliffordTableau) -> Result<CliffordTableau> {
    let k = small.n;
    if qubits.len() != k {
        return Err(Error::QubitCountMismatch { left: qubits.len(), right: k });
    }
    let mut seen = vec![false; n];
    for &q in qubits {
        check_qubit(q, n)?;
        if std::mem::replace(&mut seen[q], true) {
            return Err(Error::RepeatedQubit { qubit: q });
        }
    }
    let pos = |i: usize| if i < k { qubits[i] } else { n + qubits[i - k] };
    let mut c = BinMat::identity(2 * n);
    let mut h = BinVec::zeros(2 * n);
    for i in 0..2 * k {
        for j in 0..2 * k {
            c.set(pos(i), pos(j), small.c.get(i, j));
        }
        h.set(pos(i), small.h.get(i));
    }
    let d = hermitian_phase_vector(&c);
    Ok(CliffordTableau::from_parts_unchecked(c, d, h))
}
