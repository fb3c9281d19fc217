//! Factoring tableaux into one- and two-qubit primitive gates.
//!
//! Two schemes are provided. [`decompose_scheme1`] clears `C` one column pair
//! at a time with two-qubit `exp(iπ/4·τ)` gates. [`decompose_scheme2`] goes
//! through the five-factor block decomposition of a symplectic matrix
//! ([`symplectic_block_decompose`]): two index-space maps, two `[[I, Z], [0, I]]`
//! factors and a layer of Hadamards. Both finish by correcting `h` with a
//! single Pauli gate.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::clifford::{self, CliffordTableau};
use crate::error::{Error, Result};
use crate::gf2::{self, BinMat, BinVec};

/// One- or two-qubit building block of a [`GateSeq`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimitiveGate {
    /// `exp(iπ/4·τ_ā)` with label `a` of length `2n`, supported on at most two qubits.
    ExpPi4(BinVec),
    Cnot {
        control: usize,
        target: usize,
    },
    Swap(usize, usize),
    HadamardSet(Vec<usize>),
    /// `τ_a`
    PauliGate(BinVec),
    /// Arbitrary single-qubit tableau; `c` is `2x2`, `d` and `h` have length 2.
    SingleQubit {
        qubit: usize,
        c: BinMat,
        d: BinVec,
        h: BinVec,
    },
}

/// Qubits touched by a `2n`-bit label.
pub fn label_support(a: &BinVec) -> Vec<usize> {
    let n = a.len() / 2;
    (0..n).filter(|&k| a.get(k) || a.get(n + k)).collect()
}

impl PrimitiveGate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            PrimitiveGate::ExpPi4(a) | PrimitiveGate::PauliGate(a) => label_support(a),
            PrimitiveGate::Cnot { control, target } => vec![*control, *target],
            PrimitiveGate::Swap(a, b) => vec![*a, *b],
            PrimitiveGate::HadamardSet(qs) => qs.clone(),
            PrimitiveGate::SingleQubit { qubit, .. } => vec![*qubit],
        }
    }

    /// CNOT, SWAP and `exp(iπ/4·τ)` gates acting on two distinct qubits.
    pub fn is_two_qubit(&self) -> bool {
        match self {
            PrimitiveGate::Cnot { .. } | PrimitiveGate::Swap(..) => true,
            PrimitiveGate::ExpPi4(a) => label_support(a).len() == 2,
            _ => false,
        }
    }

    /// Checks indices and label lengths against an `n`-qubit register.
    pub fn validate(&self, n: usize) -> Result<()> {
        let check = |q: usize| {
            if q >= n {
                Err(Error::QubitOutOfRange { qubit: q, n })
            } else {
                Ok(())
            }
        };
        match self {
            PrimitiveGate::ExpPi4(a) => {
                if a.len() != 2 * n {
                    return Err(Error::BadLength { expected: 2 * n, got: a.len() });
                }
                if a.is_zero() {
                    return Err(Error::ZeroLabel);
                }
                let support = label_support(a).len();
                if support > 2 {
                    return Err(Error::GateSupportTooLarge { qubits: support });
                }
            }
            PrimitiveGate::PauliGate(a) => {
                if a.len() != 2 * n {
                    return Err(Error::BadLength { expected: 2 * n, got: a.len() });
                }
            }
            PrimitiveGate::Cnot { control: a, target: b } | PrimitiveGate::Swap(a, b) => {
                check(*a)?;
                check(*b)?;
                if a == b {
                    return Err(Error::RepeatedQubit { qubit: *a });
                }
            }
            PrimitiveGate::HadamardSet(qs) => qs.iter().try_for_each(|&q| check(q))?,
            PrimitiveGate::SingleQubit { qubit, c, d, h } => {
                check(*qubit)?;
                if c.rows() != 2 || c.cols() != 2 {
                    return Err(Error::NotSquare { rows: c.rows(), cols: c.cols() });
                }
                CliffordTableau::new(c.clone(), d.clone(), h.clone())?;
            }
        }
        Ok(())
    }

    pub fn tableau(&self, n: usize) -> Result<CliffordTableau> {
        self.validate(n)?;
        match self {
            PrimitiveGate::ExpPi4(a) => clifford::exp_pi4_gate(a),
            PrimitiveGate::Cnot { control, target } => clifford::cnot_gate(n, *control, *target),
            PrimitiveGate::Swap(a, b) => clifford::swap_gate(n, *a, *b),
            PrimitiveGate::HadamardSet(qs) => clifford::hadamard_gate(n, qs),
            PrimitiveGate::PauliGate(a) => clifford::pauli_gate(a),
            PrimitiveGate::SingleQubit { qubit, c, d, h } => {
                let small = CliffordTableau::new(c.clone(), d.clone(), h.clone())?;
                clifford::embed(n, &[*qubit], &small)
            }
        }
    }
}

/// Gate list; the first element is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GateSeq {
    pub n: usize,
    pub gates: Vec<PrimitiveGate>,
}

impl GateSeq {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<PrimitiveGate>) -> Result<Self> {
        gates.iter().try_for_each(|g| g.validate(n))?;
        Ok(Self { n, gates })
    }

    pub fn push(&mut self, gate: PrimitiveGate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: GateSeq) {
        assert_eq!(self.n, other.n);
        self.gates.extend(other.gates);
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Tableau of the whole sequence.
    pub fn tableau(&self) -> Result<CliffordTableau> {
        self.gates.iter().try_fold(CliffordTableau::identity(self.n), |acc, g| g.tableau(self.n)?.compose(&acc))
    }
}

/// Which end of an existing sequence a correcting Pauli gate goes on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Applied before everything else: `a = P(h + h′)`.
    Right,
    /// Applied after everything else: `a = CP(h + h′)`.
    Left,
}

/// Pauli gate turning `current`'s `h` into `target_h` without touching `C`.
pub fn fix_h(current: &CliffordTableau, target_h: &BinVec, side: Side) -> Result<PrimitiveGate> {
    let m = 2 * current.num_qubits();
    if target_h.len() != m {
        return Err(Error::BadLength { expected: m, got: target_h.len() });
    }
    let p_diff = (current.h() ^ target_h).swap_halves();
    let a = match side {
        Side::Right => p_diff,
        Side::Left => current.c().mul_vec(&p_diff),
    };
    Ok(PrimitiveGate::PauliGate(a))
}

/// [`fix_h`] after checking that both tableaux share `C`.
pub fn fix_tableau(current: &CliffordTableau, target: &CliffordTableau, side: Side) -> Result<PrimitiveGate> {
    if current.c() != target.c() {
        let diff = current.c() + target.c();
        let (row, col) = (0..diff.rows()).find_map(|i| diff.row(i).first_one().map(|j| (i, j))).unwrap_or((0, 0));
        return Err(Error::TableauMismatch { row, col });
    }
    fix_h(current, target.h(), side)
}

fn push_h_fix(seq: &mut GateSeq, target_h: &BinVec) -> Result<()> {
    let current = seq.tableau()?;
    if let PrimitiveGate::PauliGate(a) = fix_h(&current, target_h, Side::Right)? {
        if !a.is_zero() {
            seq.gates.insert(0, PrimitiveGate::PauliGate(a));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Single-qubit table

/// Key of a single-qubit tableau: the four bits of `C` row-major, then `h`.
fn single_key(c: &BinMat, h: &BinVec) -> u8 {
    (c.get(0, 0) as u8)
        | (c.get(0, 1) as u8) << 1
        | (c.get(1, 0) as u8) << 2
        | (c.get(1, 1) as u8) << 3
        | (h.get(0) as u8) << 4
        | (h.get(1) as u8) << 5
}

/// Labels of the three single-qubit `exp(iπ/4·τ)` gates: Z-, X- and Y-type.
const SINGLE_LABELS: [[u8; 2]; 3] = [[1, 0], [0, 1], [1, 1]];

/// Shortest `exp(iπ/4·τ)` word (in application order) for every one of the
/// 24 single-qubit tableaux, found by breadth-first search.
pub fn single_qubit_table() -> &'static HashMap<u8, Vec<[u8; 2]>> {
    static TABLE: OnceLock<HashMap<u8, Vec<[u8; 2]>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let gates: Vec<CliffordTableau> = SINGLE_LABELS
            .iter()
            .map(|a| clifford::exp_pi4_gate(&BinVec::from_bits(a)).expect("nonzero label"))
            .collect();
        let id = CliffordTableau::identity(1);
        let mut table = HashMap::new();
        table.insert(single_key(id.c(), id.h()), Vec::new());
        let mut queue = VecDeque::from([(id, Vec::new())]);
        while let Some((t, word)) = queue.pop_front() {
            for (g, label) in gates.iter().zip(SINGLE_LABELS) {
                let next = g.compose(&t).expect("same size");
                let key = single_key(next.c(), next.h());
                if let std::collections::hash_map::Entry::Vacant(slot) = table.entry(key) {
                    let mut w: Vec<[u8; 2]> = word.clone();
                    w.push(label);
                    slot.insert(w.clone());
                    queue.push_back((next, w));
                }
            }
        }
        table
    })
}

/// Shortest word realizing `c` with any `h`, for callers that fix `h` later.
fn single_qubit_c_word(c: &BinMat) -> &'static [[u8; 2]] {
    let table = single_qubit_table();
    (0..4u8)
        .filter_map(|hb| table.get(&(single_key(c, &BinVec::zeros(2)) | hb << 4)))
        .min_by_key(|w| w.len())
        .expect("table covers the single-qubit group")
}

fn embed_word(n: usize, qubit: usize, word: &[[u8; 2]]) -> Vec<PrimitiveGate> {
    word.iter()
        .map(|[z, x]| {
            let mut a = BinVec::zeros(2 * n);
            a.set(qubit, *z == 1);
            a.set(n + qubit, *x == 1);
            PrimitiveGate::ExpPi4(a)
        })
        .collect()
}

/// `exp(iπ/4·τ)` gates on `qubit` realizing the single-qubit tableau `(c, h)`.
pub fn single_qubit_gates(n: usize, qubit: usize, c: &BinMat, h: &BinVec) -> Result<Vec<PrimitiveGate>> {
    if qubit >= n {
        return Err(Error::QubitOutOfRange { qubit, n });
    }
    CliffordTableau::from_c_h(c.clone(), h.clone())?;
    let word = single_qubit_table().get(&single_key(c, h)).expect("table covers the single-qubit group");
    Ok(embed_word(n, qubit, word))
}

// ---------------------------------------------------------------------------
// Scheme 1: column-pair reduction

/// Statistics of one column-pair step, exposed for tests.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColumnStep {
    pub qubit: usize,
    pub swapped_with: Option<usize>,
    pub two_qubit_gates: usize,
}

/// Left factor applied to the working matrix; its inverse enters the circuit.
enum LeftFactor {
    Swap(usize, usize),
    Exp(BinVec),
    /// Single-qubit block whose inverse was applied; realize `block` itself.
    Single {
        qubit: usize,
        block: BinMat,
    },
}

/// `w ← (I + aaᵀP) w`
fn apply_exp_left(w: &mut BinMat, a: &BinVec) {
    let pa = a.swap_halves();
    let r = w.vec_mul(&pa);
    for i in a.iter_ones() {
        let mut row = w.row(i);
        row ^= &r;
        w.set_row(i, &row);
    }
}

fn block2(w: &BinMat, rows: [usize; 2], cols: [usize; 2]) -> BinMat {
    BinMat::from_fn(2, 2, |i, j| w.get(rows[i], cols[j]))
}

fn det2(b: &BinMat) -> bool {
    (b.get(0, 0) & b.get(1, 1)) ^ (b.get(0, 1) & b.get(1, 0))
}

/// Checks `c_iᵀ P c_j = P_ij` for all designated columns.
fn check_designated_symplectic(c: &BinMat, cols: &[usize]) -> Result<()> {
    let n = c.rows() / 2;
    let p = gf2::symplectic_form(n);
    let sub = c.select_cols(cols);
    let g = &(&sub.transpose() * &p) * &sub;
    for (i, &ci) in cols.iter().enumerate() {
        for (j, &cj) in cols.iter().enumerate() {
            if g.get(i, j) != p.get(ci, cj) {
                return Err(Error::NotSymplectic { row: ci, col: cj });
            }
        }
    }
    Ok(())
}

/// Reduces the designated column pairs of `c` to identity columns and
/// returns the circuit for the collected left factors together with one
/// [`ColumnStep`] per processed qubit.
fn reduce_column_pairs(c: &BinMat, qubits: &[usize]) -> Result<(GateSeq, Vec<ColumnStep>)> {
    let n = c.rows() / 2;
    let mut w = c.clone();
    let mut active = vec![true; n];
    let mut factors = Vec::new();
    let mut steps = Vec::new();
    let mut designated_cols: Vec<usize> = Vec::new();

    for &q in qubits {
        let alpha = [q, n + q];
        let mut step = ColumnStep { qubit: q, ..Default::default() };
        let candidates = std::iter::once(q).chain((0..n).filter(|&k| k != q && active[k]));
        let Some(k) = candidates.into_iter().find(|&k| det2(&block2(&w, [k, n + k], alpha))) else {
            return Err(Error::NotSymplectic { row: q, col: n + q });
        };
        if k != q {
            w.swap_rows(q, k);
            w.swap_rows(n + q, n + k);
            factors.push(LeftFactor::Swap(q, k));
            step.swapped_with = Some(k);
        }
        let others: Vec<usize> = (0..n).filter(|&l| l != q && active[l]).collect();

        // A qubit whose 2x2 block in columns (q, n+q) is invertible would make
        // the α block singular below. Such qubits come in pairs; one gate on
        // each pair moves the first column's part onto the first qubit, which
        // leaves both blocks singular.
        let bad: Vec<usize> = others.iter().copied().filter(|&l| det2(&block2(&w, [l, n + l], alpha))).collect();
        if !bad.len().is_multiple_of(2) {
            return Err(Error::NotSymplectic { row: q, col: n + q });
        }
        for pair in bad.chunks(2) {
            let (l1, l2) = (pair[0], pair[1]);
            // u = column q on qubits l1, l2; target u' = (x, 0) with xᵀP₂u₁ = 1.
            let (u1z, u1x) = (w.get(l1, q), w.get(n + l1, q));
            let (xz, xx) = if u1x { (true, false) } else { (false, true) };
            let mut a = BinVec::zeros(2 * n);
            a.set(l1, u1z ^ xz);
            a.set(n + l1, u1x ^ xx);
            a.set(l2, w.get(l2, q));
            a.set(n + l2, w.get(n + l2, q));
            apply_exp_left(&mut w, &a);
            debug_assert!(!det2(&block2(&w, [l1, n + l1], alpha)) && !det2(&block2(&w, [l2, n + l2], alpha)));
            factors.push(LeftFactor::Exp(a));
            step.two_qubit_gates += 1;
        }

        // Column q: a_α = c_{α,n+q}, a_β = c_{β,q}.
        for &l in &others {
            if !w.get(l, q) && !w.get(n + l, q) {
                continue;
            }
            let mut a = BinVec::zeros(2 * n);
            a.set(q, w.get(q, n + q));
            a.set(n + q, w.get(n + q, n + q));
            a.set(l, w.get(l, q));
            a.set(n + l, w.get(n + l, q));
            debug_assert!(gf2::sym_form(&w.col(q), &a), "aᵀPc_q must be 1");
            apply_exp_left(&mut w, &a);
            factors.push(LeftFactor::Exp(a));
            step.two_qubit_gates += 1;
        }
        // Column n+q: a_α = c_{α,q}, a_β = c_{β,n+q}.
        for &l in &others {
            if !w.get(l, n + q) && !w.get(n + l, n + q) {
                continue;
            }
            let mut a = BinVec::zeros(2 * n);
            a.set(q, w.get(q, q));
            a.set(n + q, w.get(n + q, q));
            a.set(l, w.get(l, n + q));
            a.set(n + l, w.get(n + l, n + q));
            debug_assert!(!gf2::sym_form(&w.col(q), &a), "aᵀPc_q must be 0");
            debug_assert!(gf2::sym_form(&w.col(n + q), &a), "aᵀPc_(n+q) must be 1");
            apply_exp_left(&mut w, &a);
            factors.push(LeftFactor::Exp(a));
            step.two_qubit_gates += 1;
        }
        let block = block2(&w, alpha, alpha);
        if !block.is_identity() {
            let inv = block.inverse().map_err(|_| Error::NotSymplectic { row: q, col: q })?;
            let rq = w.row(q);
            let rnq = w.row(n + q);
            let pick = |i: usize| {
                let mut r = BinVec::zeros(2 * n);
                if inv.get(i, 0) {
                    r ^= &rq;
                }
                if inv.get(i, 1) {
                    r ^= &rnq;
                }
                r
            };
            let (new_q, new_nq) = (pick(0), pick(1));
            w.set_row(q, &new_q);
            w.set_row(n + q, &new_nq);
            factors.push(LeftFactor::Single { qubit: q, block });
        }
        active[q] = false;
        steps.push(step);
        designated_cols.extend([q, n + q]);

        // Columns q, n+q are now unit columns, and rows q, n+q vanish on the
        // other designated columns.
        for &j in &alpha {
            if let Some(i) = (0..2 * n).find(|&i| w.get(i, j) != (i == j)) {
                return Err(Error::NotSymplectic { row: i, col: j });
            }
        }
        for &i in &alpha {
            if let Some(&j) = designated_cols.iter().find(|&&j| w.get(i, j) != (i == j)) {
                return Err(Error::NotSymplectic { row: i, col: j });
            }
        }
    }

    let mut seq = GateSeq::new(n);
    for f in factors.into_iter().rev() {
        match f {
            LeftFactor::Swap(a, b) => seq.push(PrimitiveGate::Swap(a, b)),
            LeftFactor::Exp(a) => seq.push(PrimitiveGate::ExpPi4(a)),
            LeftFactor::Single { qubit, block } => {
                seq.gates.extend(embed_word(n, qubit, single_qubit_c_word(&block)));
            }
        }
    }
    Ok((seq, steps))
}

/// Column-pair reduction with two-qubit `exp(iπ/4·τ)` gates.
pub fn decompose_scheme1(q: &CliffordTableau) -> Result<GateSeq> {
    decompose_scheme1_with_steps(q).map(|(seq, _)| seq)
}

/// [`decompose_scheme1`] plus per-column statistics.
pub fn decompose_scheme1_with_steps(q: &CliffordTableau) -> Result<(GateSeq, Vec<ColumnStep>)> {
    let n = q.num_qubits();
    let qubits: Vec<usize> = (0..n).collect();
    let (mut seq, steps) = reduce_column_pairs(q.c(), &qubits)?;
    push_h_fix(&mut seq, q.h())?;
    Ok((seq, steps))
}

/// Scheme 1 restricted to the column pairs `{k, n+k}` for `k` in `qubits`.
///
/// Only those columns of `c` and entries of `h` are read; the returned
/// circuit's tableau agrees with them there and is arbitrary elsewhere.
pub fn decompose_scheme1_partial(c: &BinMat, h: &BinVec, qubits: &[usize]) -> Result<GateSeq> {
    if !c.is_square() || !c.rows().is_multiple_of(2) {
        return Err(Error::NotSquare { rows: c.rows(), cols: c.cols() });
    }
    let n = c.rows() / 2;
    if h.len() != 2 * n {
        return Err(Error::BadLength { expected: 2 * n, got: h.len() });
    }
    let mut seen = vec![false; n];
    for &q in qubits {
        if q >= n {
            return Err(Error::QubitOutOfRange { qubit: q, n });
        }
        if std::mem::replace(&mut seen[q], true) {
            return Err(Error::RepeatedQubit { qubit: q });
        }
    }
    let cols: Vec<usize> = qubits.iter().flat_map(|&q| [q, n + q]).collect();
    check_designated_symplectic(c, &cols)?;
    let (mut seq, _) = reduce_column_pairs(c, qubits)?;
    let current = seq.tableau()?;
    let mut target = current.h().clone();
    for &j in &cols {
        target.set(j, h.get(j));
    }
    push_h_fix(&mut seq, &target)?;
    Ok(seq)
}

// ---------------------------------------------------------------------------
// Scheme 2: symplectic block decomposition

/// Blocks of `C = L(T₁)·[[I, Z_br], [0, I]]·H_r·[[I, Z_bc], [0, I]]·L(T₂)` where
/// `L(T) = blockdiag(T⁻ᵀ, T)`, `Z_br = [[Z₃, V₁], [V₁ᵀ, Z₁]]`,
/// `Z_bc = [[0, V₂], [V₂ᵀ, Z₂]]` and `H_r` is a Hadamard on the last `r` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticBlocks {
    pub n: usize,
    pub r: usize,
    pub t1: BinMat,
    pub t2: BinMat,
    pub z1: BinMat,
    pub z2: BinMat,
    pub z3: BinMat,
    pub v1: BinMat,
    pub v2: BinMat,
}

/// `[[I, Z], [0, I]]`
pub fn upper_unipotent(z: &BinMat) -> BinMat {
    let n = z.rows();
    BinMat::from_blocks(&BinMat::identity(n), z, &BinMat::zeros(n, n), &BinMat::identity(n))
}

impl SymplecticBlocks {
    pub fn z_br(&self) -> BinMat {
        BinMat::from_blocks(&self.z3, &self.v1, &self.v1.transpose(), &self.z1)
    }

    pub fn z_bc(&self) -> BinMat {
        let b = self.n - self.r;
        BinMat::from_blocks(&BinMat::zeros(b, b), &self.v2, &self.v2.transpose(), &self.z2)
    }

    /// The five symplectic factors, left to right.
    pub fn factors(&self) -> Result<[BinMat; 5]> {
        let n = self.n;
        let last: Vec<usize> = (n - self.r..n).collect();
        Ok([
            clifford::linear_gate(&self.t1)?.c().clone(),
            upper_unipotent(&self.z_br()),
            clifford::hadamard_gate(n, &last)?.c().clone(),
            upper_unipotent(&self.z_bc()),
            clifford::linear_gate(&self.t2)?.c().clone(),
        ])
    }

    /// Product of the five factors.
    pub fn reassemble(&self) -> Result<BinMat> {
        let f = self.factors()?;
        Ok(f.iter().skip(1).fold(f[0].clone(), |acc, m| &acc * m))
    }

    /// The single middle factor in its expanded form
    /// `[[I, V₁, Z₃+V₁V₂ᵀ, V₂+V₁Z₂], [0, Z₁, V₁ᵀ+Z₁V₂ᵀ, I+Z₁Z₂], [0, 0, I, 0], [0, I, V₂ᵀ, Z₂]]`.
    pub fn expanded_middle(&self) -> BinMat {
        let (n, r) = (self.n, self.r);
        let b = n - r;
        let v2t = self.v2.transpose();
        let v1t = self.v1.transpose();
        let mut m = BinMat::zeros(2 * n, 2 * n);
        m.set_block(0, 0, &BinMat::identity(b));
        m.set_block(0, b, &self.v1);
        m.set_block(0, n, &(&self.z3 + &(&self.v1 * &v2t)));
        m.set_block(0, n + b, &(&self.v2 + &(&self.v1 * &self.z2)));
        m.set_block(b, b, &self.z1);
        m.set_block(b, n, &(&v1t + &(&self.z1 * &v2t)));
        m.set_block(b, n + b, &(&BinMat::identity(r) + &(&self.z1 * &self.z2)));
        m.set_block(n, n, &BinMat::identity(b));
        m.set_block(n + b, b, &BinMat::identity(r));
        m.set_block(n + b, n, &v2t);
        m.set_block(n + b, n + b, &self.z2);
        m
    }
}

/// `blockdiag(R₁ᵀ, R₁⁻¹)·C·blockdiag(R₂, R₂⁻ᵀ)`
fn transform_with(c: &BinMat, r1: &BinMat, r2: &BinMat) -> Result<BinMat> {
    let left = BinMat::block_diag(&r1.transpose(), &r1.inverse()?);
    let right = BinMat::block_diag(r2, &r2.inverse()?.transpose());
    Ok(&(&left * c) * &right)
}

/// Finds `R₁`, `R₂` with `R₁⁻¹G′R₂ = [[0, 0], [0, I_r]]` for the lower-left
/// block `G′`, normalized so that the transformed top-left block is `I`.
/// Returns `(R₁, R₂, r, transformed)`.
pub(crate) fn block_transform(c: &BinMat) -> Result<(BinMat, BinMat, usize, BinMat)> {
    let n = c.rows() / 2;
    let g = c.submatrix(n, 2 * n, 0, n);
    let kr = g.kernel_range_bases();
    let r = kr.rank;
    let mut r2 = kr.kernel.complete_to_invertible()?;
    let image = &g * &r2.submatrix(0, n, n - r, n);
    let with_image_first = image.complete_to_invertible()?;
    let order: Vec<usize> = (r..n).chain(0..r).collect();
    let r1 = with_image_first.select_cols(&order);

    let t = transform_with(c, &r1, &r2)?;
    let e11 = t.submatrix(0, n - r, 0, n - r);
    let e11_inv = e11.inverse().map_err(|_| Error::NotSymplectic { row: 0, col: 0 })?;
    r2 = &r2 * &BinMat::block_diag(&e11_inv, &BinMat::identity(r));
    let t = transform_with(c, &r1, &r2)?;
    Ok((r1, r2, r, t))
}

/// Decomposes a symplectic matrix into [`SymplecticBlocks`].
pub fn symplectic_block_decompose(c: &BinMat) -> Result<SymplecticBlocks> {
    if !c.is_square() || !c.rows().is_multiple_of(2) {
        return Err(Error::NotSquare { rows: c.rows(), cols: c.cols() });
    }
    let n = c.rows() / 2;
    if let Some((row, col)) = c.symplectic_defect(&gf2::symplectic_form(n)) {
        return Err(Error::NotSymplectic { row, col });
    }
    let (r1, r2, r, t) = block_transform(c)?;
    let b = n - r;
    let v1 = t.submatrix(0, b, b, n);
    let f11 = t.submatrix(0, b, n, n + b);
    let v2 = t.submatrix(n + b, 2 * n, n, n + b).transpose();
    let blocks = SymplecticBlocks {
        n,
        r,
        t1: r1,
        t2: r2.transpose(),
        z1: t.submatrix(b, n, b, n),
        z2: t.submatrix(n + b, 2 * n, n + b, 2 * n),
        z3: &f11 + &(&v1 * &v2.transpose()),
        v1,
        v2,
    };
    Ok(blocks)
}

/// CNOTs and SWAPs realizing `|x⟩ ↦ |Rx⟩`, by Gauss-Jordan elimination.
pub fn linear_to_cnots(r: &BinMat) -> Result<GateSeq> {
    if !r.is_square() {
        return Err(Error::NotSquare { rows: r.rows(), cols: r.cols() });
    }
    let n = r.rows();
    let mut a = r.clone();
    let mut ops = Vec::new();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| a.get(i, col)) else {
            return Err(Error::Singular { size: n, rank: r.rank() });
        };
        if p != col {
            a.swap_rows(col, p);
            ops.push(PrimitiveGate::Swap(col, p));
        }
        for row in 0..n {
            if row != col && a.get(row, col) {
                a.add_row(col, row);
                ops.push(PrimitiveGate::Cnot { control: col, target: row });
            }
        }
    }
    // E_k…E_1 R = I, so R = E_1…E_k and E_k is applied first.
    ops.reverse();
    Ok(GateSeq { n, gates: ops })
}

/// `exp(iπ/4·τ)` gates realizing `C = [[I, Z], [0, I]]` for symmetric `Z`.
pub fn zmatrix_to_gates(z: &BinMat) -> Result<GateSeq> {
    if let Some((row, col)) = z.first_asymmetry() {
        if !z.is_square() {
            return Err(Error::NotSquare { rows: z.rows(), cols: z.cols() });
        }
        return Err(Error::NotSymmetric { row, col });
    }
    let n = z.rows();
    let mut seq = GateSeq::new(n);
    let mut diag = BinVec::zeros(n);
    for k in 0..n {
        for l in k + 1..n {
            if z.get(k, l) {
                let mut a = BinVec::zeros(2 * n);
                a.set(k, true);
                a.set(l, true);
                seq.push(PrimitiveGate::ExpPi4(a));
                // vvᵀ with v = e_k + e_l also sets (k,k) and (l,l).
                diag.flip(k);
                diag.flip(l);
            }
        }
    }
    for k in 0..n {
        if diag.get(k) != z.get(k, k) {
            seq.push(PrimitiveGate::ExpPi4(BinVec::unit(2 * n, k)));
        }
    }
    Ok(seq)
}

/// Five-factor synthesis: linear maps, `Z`-matrix gates and Hadamards.
pub fn decompose_scheme2(q: &CliffordTableau) -> Result<GateSeq> {
    let n = q.num_qubits();
    let blocks = symplectic_block_decompose(q.c())?;
    let mut seq = GateSeq::new(n);
    seq.extend(linear_to_cnots(&blocks.t2)?);
    seq.extend(zmatrix_to_gates(&blocks.z_bc())?);
    if blocks.r > 0 {
        seq.push(PrimitiveGate::HadamardSet((n - blocks.r..n).collect()));
    }
    seq.extend(zmatrix_to_gates(&blocks.z_br())?);
    seq.extend(linear_to_cnots(&blocks.t1)?);
    push_h_fix(&mut seq, q.h())?;
    Ok(seq)
}
