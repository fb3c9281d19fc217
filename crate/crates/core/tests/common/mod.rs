//! Independent dense reference built from Kronecker products of 2x2 matrices.
//!
//! Basis index `Σ x_k 2^k`: qubit 0 is the least significant tensor factor.

#![allow(dead_code)]

use clifford_gf2::decompose::{self, GateSeq, PrimitiveGate};
use clifford_gf2::{BinVec, CliffordTableau, PauliElement};
use num_complex::Complex64 as C;

pub const TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub dim: usize,
    pub data: Vec<C>,
}

const O: C = C::new(0.0, 0.0);
const L: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

impl Mat {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![O; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = L;
        }
        Self { dim, data }
    }

    pub fn small(entries: [[C; 2]; 2]) -> Self {
        Self { dim: 2, data: entries.iter().flatten().copied().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> C {
        self.data[i * self.dim + j]
    }

    pub fn kron(&self, low: &Mat) -> Mat {
        let dim = self.dim * low.dim;
        let mut data = vec![O; dim * dim];
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                let a = self.at(i1, j1);
                for i0 in 0..low.dim {
                    for j0 in 0..low.dim {
                        data[(i1 * low.dim + i0) * dim + j1 * low.dim + j0] = a * low.at(i0, j0);
                    }
                }
            }
        }
        Mat { dim, data }
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        let d = self.dim;
        let mut data = vec![O; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.at(i, k);
                if a != O {
                    for j in 0..d {
                        data[i * d + j] += a * rhs.at(k, j);
                    }
                }
            }
        }
        Mat { dim: d, data }
    }

    pub fn scale(&self, z: C) -> Mat {
        Mat { dim: self.dim, data: self.data.iter().map(|x| x * z).collect() }
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        Mat { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }

    pub fn adjoint(&self) -> Mat {
        let d = self.dim;
        let mut data = vec![O; d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.at(i, j).conj();
            }
        }
        Mat { dim: d, data }
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.at(i, j) * v[j]).sum()).collect()
    }

    /// Rounds every entry to the nearest of `0, ±1, ±i` if within `TOL`.
    pub fn snapped(&self) -> Option<Mat> {
        let cands = [O, L, -L, I, -I];
        let data = self
            .data
            .iter()
            .map(|z| cands.iter().copied().find(|c| (z - c).norm() < TOL))
            .collect::<Option<Vec<C>>>()?;
        Some(Mat { dim: self.dim, data })
    }
}

fn pauli_x() -> Mat {
    Mat::small([[O, L], [L, O]])
}

fn pauli_z() -> Mat {
    Mat::small([[L, O], [O, -L]])
}

fn hadamard() -> Mat {
    let s = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Mat::small([[s, s], [s, -s]])
}

/// Tensor product with `factor(k)` on qubit `k`.
pub fn tensor(n: usize, factor: impl Fn(usize) -> Mat) -> Mat {
    (0..n).fold(Mat::identity(1), |acc, k| factor(k).kron(&acc))
}

/// `i^δ(−1)^ε τ_a` with `τ_00 = I`, `τ_01 = X`, `τ_10 = Z`, `τ_11 = ZX`.
pub fn pauli_dense(p: &PauliElement) -> Mat {
    let n = p.num_qubits();
    let a = p.label();
    let m = tensor(n, |k| match (a.get(k), a.get(n + k)) {
        (false, false) => Mat::identity(2),
        (false, true) => pauli_x(),
        (true, false) => pauli_z(),
        (true, true) => pauli_z().mul(&pauli_x()),
    });
    let phase = [L, I, -L, -I][p.tau_phase() as usize];
    m.scale(phase)
}

fn permutation(n: usize, f: impl Fn(usize) -> usize) -> Mat {
    let dim = 1 << n;
    let mut m = Mat { dim, data: vec![O; dim * dim] };
    for x in 0..dim {
        m.data[f(x) * dim + x] = L;
    }
    m
}

/// `(I + i·τ_ā)/√2` with `τ_ā = i^{aᵀUa}τ_a`.
pub fn exp_dense(a: &BinVec) -> Mat {
    let n = a.len() / 2;
    let tau_bar = pauli_dense(&PauliElement::hermitian(a.clone(), false).unwrap());
    let s = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Mat::identity(1 << n).add(&tau_bar.scale(I)).scale(s)
}

pub fn gate_dense(g: &PrimitiveGate, n: usize) -> Mat {
    match g {
        PrimitiveGate::ExpPi4(a) => exp_dense(a),
        PrimitiveGate::PauliGate(a) => pauli_dense(&PauliElement::tau(a.clone()).unwrap()),
        PrimitiveGate::Cnot { control, target } => {
            let (c, t) = (*control, *target);
            permutation(n, move |x| x ^ (((x >> c) & 1) << t))
        }
        PrimitiveGate::Swap(a, b) => {
            let (a, b) = (*a, *b);
            permutation(n, move |x| {
                let d = ((x >> a) ^ (x >> b)) & 1;
                x ^ (d << a) ^ (d << b)
            })
        }
        PrimitiveGate::HadamardSet(qs) => tensor(n, |k| if qs.contains(&k) { hadamard() } else { Mat::identity(2) }),
        PrimitiveGate::SingleQubit { qubit, c, h, .. } => decompose::single_qubit_gates(n, *qubit, c, h)
            .unwrap()
            .iter()
            .fold(Mat::identity(1 << n), |acc, g| gate_dense(g, n).mul(&acc)),
    }
}

/// Unitary of a sequence whose first gate is applied first.
pub fn seq_dense(seq: &GateSeq) -> Mat {
    seq.gates.iter().fold(Mat::identity(1 << seq.n), |acc, g| gate_dense(g, seq.n).mul(&acc))
}

/// First generator index `k` where `U τ_{e_k} U†` differs from the tableau's image.
pub fn conjugation_mismatch(q: &CliffordTableau, u: &Mat) -> Option<usize> {
    let n = q.num_qubits();
    let ud = u.adjoint();
    (0..2 * n).find(|&k| {
        let x = PauliElement::tau(BinVec::unit(2 * n, k)).unwrap();
        let lhs = u.mul(&pauli_dense(&x)).mul(&ud).snapped();
        let rhs = pauli_dense(&q.conjugate(&x).unwrap());
        lhs.as_ref() != Some(&rhs)
    })
}

/// Max deviation of `u` from `λv` with `λ` fixed at the largest entry of `v`.
pub fn phase_deviation(u: &[C], v: &[C]) -> f64 {
    let j = (0..v.len()).fold(0, |b, j| if v[j].norm() > v[b].norm() + TOL { j } else { b });
    let lambda = u[j] / v[j];
    u.iter().zip(v).map(|(a, b)| (a - lambda * b).norm()).fold((lambda.norm() - 1.0).abs(), f64::max)
}
