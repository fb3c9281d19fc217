//! Random matrices, tableaux, circuits and stabilizer states.
//!
//! Samplers are generic over [`rand::Rng`]. None of them is uniform over its
//! target set; they are meant for tests and demos.

use rand::Rng;

use crate::clifford::CliffordTableau;
use crate::decompose::{GateSeq, PrimitiveGate, SymplecticBlocks};
use crate::gf2::{BinMat, BinVec};
use crate::stabilizer::StabilizerRep;

pub fn random_vec<R: Rng + ?Sized>(len: usize, rng: &mut R) -> BinVec {
    BinVec::from_bools((0..len).map(|_| rng.random::<bool>()))
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> BinMat {
    BinMat::from_fn(rows, cols, |_, _| rng.random::<bool>())
}

pub fn random_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BinMat {
    let mut m = BinMat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let b = rng.random::<bool>();
            m.set(i, j, b);
            m.set(j, i, b);
        }
    }
    m
}

/// `Π·L·U` with random unit-triangular `L`, `U` and a random row permutation.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BinMat {
    let l = BinMat::from_fn(n, n, |i, j| i == j || (i > j && rng.random::<bool>()));
    let u = BinMat::from_fn(n, n, |i, j| i == j || (i < j && rng.random::<bool>()));
    let mut m = &l * &u;
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        m.swap_rows(i, j);
    }
    m
}

/// Random factors of the five-block decomposition.
pub fn random_blocks<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SymplecticBlocks {
    let r = rng.random_range(0..=n);
    let b = n - r;
    SymplecticBlocks {
        n,
        r,
        t1: random_invertible(n, rng),
        t2: random_invertible(n, rng),
        z1: random_symmetric(r, rng),
        z2: random_symmetric(r, rng),
        z3: random_symmetric(b, rng),
        v1: random_matrix(b, r, rng),
        v2: random_matrix(b, r, rng),
    }
}

pub fn random_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BinMat {
    random_blocks(n, rng).reassemble().expect("factors are well formed")
}

pub fn random_tableau<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CliffordTableau {
    let c = random_symplectic(n, rng);
    CliffordTableau::from_c_h(c, random_vec(2 * n, rng)).expect("symplectic by construction")
}

fn distinct_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.random_range(0..n);
    let b = (a + rng.random_range(1..n)) % n;
    (a, b)
}

/// One gate of a random kind. Needs `n ≥ 1`; two-qubit kinds need `n ≥ 2`.
pub fn random_gate<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PrimitiveGate {
    assert!(n >= 1);
    let kinds = if n >= 2 { 6 } else { 3 };
    match rng.random_range(0..kinds) {
        0 => {
            let qs: Vec<usize> = (0..n).filter(|_| rng.random::<bool>()).collect();
            PrimitiveGate::HadamardSet(qs)
        }
        1 => PrimitiveGate::PauliGate(random_vec(2 * n, rng)),
        2 => {
            let qubits: Vec<usize> = if n >= 2 && rng.random::<bool>() {
                let (a, b) = distinct_pair(n, rng);
                vec![a, b]
            } else {
                vec![rng.random_range(0..n)]
            };
            loop {
                let mut a = BinVec::zeros(2 * n);
                for &q in &qubits {
                    a.set(q, rng.random::<bool>());
                    a.set(n + q, rng.random::<bool>());
                }
                if !a.is_zero() {
                    break PrimitiveGate::ExpPi4(a);
                }
            }
        }
        3 => {
            let (control, target) = distinct_pair(n, rng);
            PrimitiveGate::Cnot { control, target }
        }
        4 => {
            let (a, b) = distinct_pair(n, rng);
            PrimitiveGate::Swap(a, b)
        }
        _ => {
            let small = random_tableau(1, rng);
            PrimitiveGate::SingleQubit {
                qubit: rng.random_range(0..n),
                c: small.c().clone(),
                d: small.d().clone(),
                h: small.h().clone(),
            }
        }
    }
}

pub fn random_gate_seq<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> GateSeq {
    GateSeq { n, gates: (0..len).map(|_| random_gate(n, rng)).collect() }
}

/// A random tableau applied to `|0…0⟩`, followed by a random generator basis change.
pub fn random_stabilizer<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StabilizerRep {
    let q = random_tableau(n, rng);
    let s = StabilizerRep::zero_state(n).apply_clifford(&q).expect("same size");
    s.basis_change(&random_invertible(n, rng)).expect("invertible basis change")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_produce_valid_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..10 {
            assert!(random_invertible(n, &mut rng).is_invertible());
            assert!(random_symmetric(n, &mut rng).is_symmetric());
            assert!(random_symplectic(n, &mut rng).is_symplectic(&gf2::symplectic_form(n)));
        }
        for n in 1..6 {
            let seq = random_gate_seq(n, 20, &mut rng);
            assert!(seq.tableau().is_ok());
            assert!(random_stabilizer(n, &mut rng).validate().is_ok());
        }
    }

    #[test]
    fn all_branch_sizes_appear() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut seen = [false; 4];
        for _ in 0..200 {
            seen[random_blocks(3, &mut rng).r] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
