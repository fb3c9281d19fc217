//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is printed by a
//! bare `cargo test`. Exits nonzero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use clifford_gf2::decompose::{self, GateSeq};
use clifford_gf2::stabilizer::{self, CanonicalStabilizer};
use clifford_gf2::{clifford, oracle, random, BinMat, BinVec, CliffordTableau, PauliElement};
use common::{conjugation_mismatch, pauli_dense, phase_deviation, seq_dense, TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn all_elements(n: usize) -> Vec<PauliElement> {
    let mut out = Vec::new();
    for idx in 0..1usize << (2 * n) {
        for g in 0..4u8 {
            let a = BinVec::from_index(2 * n, idx);
            out.push(PauliElement::new(g & 1 == 1, g & 2 == 2, a).unwrap());
        }
    }
    out
}

fn random_element(n: usize, rng: &mut ChaCha8Rng) -> PauliElement {
    PauliElement::new(rng.random(), rng.random(), random::random_vec(2 * n, rng)).unwrap()
}

fn gate_built(n: usize, max_len: usize, rng: &mut ChaCha8Rng) -> GateSeq {
    let len = rng.random_range(1..=max_len);
    random::random_gate_seq(n, len, rng)
}

/// Binary Pauli product rule against dense 2^n x 2^n products, zero tolerance.
fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut bad = 0usize;
    let mut check = |p: &PauliElement, q: &PauliElement| {
        checked += 1;
        if pauli_dense(&p.mul(q).unwrap()) != pauli_dense(p).mul(&pauli_dense(q)) {
            bad += 1;
        }
    };
    for n in [1, 2] {
        let elems = all_elements(n);
        for p in &elems {
            for q in &elems {
                check(p, q);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for n in [2, 3] {
        for _ in 0..100_000 {
            let (p, q) = (random_element(n, &mut rng), random_element(n, &mut rng));
            check(&p, &q);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad == 0 && elapsed < Duration::from_secs(10),
        format!(
            "{checked} products (16x16 at n=1, 64x64 at n=2, 1e5 random at n=2,3), {bad} mismatches, {elapsed:.2?}"
        ),
    )
}

/// Conjugation, composition and inversion against dense unitaries.
fn criterion2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 1..=3 {
        for i in 0..1000 {
            let s1 = gate_built(n, 8, &mut rng);
            let s2 = gate_built(n, 8, &mut rng);
            let (q1, q2) = (s1.tableau().unwrap(), s2.tableau().unwrap());
            let (u1, u2) = (seq_dense(&s1), seq_dense(&s2));
            if let Some(k) = conjugation_mismatch(&q1, &u1) {
                failures.push(format!("n={n} #{i}: conjugate, generator {k}"));
            }
            let q21 = clifford::compose(&q2, &q1).unwrap();
            if let Some(k) = conjugation_mismatch(&q21, &u2.mul(&u1)) {
                failures.push(format!("n={n} #{i}: compose, generator {k}"));
            }
            let inv = clifford::inverse(&q1);
            if let Some(k) = conjugation_mismatch(&inv, &u1.adjoint()) {
                failures.push(format!("n={n} #{i}: inverse, generator {k}"));
            }
            if !clifford::compose(&inv, &q1).unwrap().is_identity() || !q1.compose(&inv).unwrap().is_identity() {
                failures.push(format!("n={n} #{i}: inverse is not two-sided"));
            }
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{count} gate-built pairs at n=1..3, {} failures {:?}, {elapsed:.2?}",
            failures.len(),
            failures.first()
        ),
    )
}

/// Both schemes recompose exactly; gate counts; block reassembly up to n = 16.
fn criterion3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut failures = Vec::new();
    let mut max_counts = [[0usize; 9]; 2];
    #[allow(clippy::needless_range_loop)]
    for n in 1..=8 {
        for i in 0..1000 {
            let q = if i % 2 == 0 {
                random::random_tableau(n, &mut rng)
            } else {
                gate_built(n, 4 * n * n, &mut rng).tableau().unwrap()
            };
            for (s, seq) in [decompose::decompose_scheme1(&q), decompose::decompose_scheme2(&q)].into_iter().enumerate()
            {
                let seq = seq.unwrap();
                if seq.tableau().unwrap() != q {
                    failures.push(format!("scheme {} n={n} #{i}: round trip", s + 1));
                }
                max_counts[s][n] = max_counts[s][n].max(seq.two_qubit_count());
            }
        }
    }
    let mut reassembled = 0;
    for n in 1..=16 {
        for i in 0..100 {
            let c = if i % 2 == 0 {
                random::random_symplectic(n, &mut rng)
            } else {
                gate_built(n, 4 * n * n, &mut rng).tableau().unwrap().c().clone()
            };
            let blocks = decompose::symplectic_block_decompose(&c).unwrap();
            if blocks.reassemble().unwrap() != c {
                failures.push(format!("block reassembly n={n} #{i}"));
            }
            reassembled += 1;
        }
    }
    let mut summary = Vec::new();
    let mut within = true;
    for (s, counts) in max_counts.iter().enumerate() {
        let bounded = (1..=8).all(|n| counts[n] <= 4 * n * n + 4 * n);
        let ratio = (1..=8).map(|n| counts[n] as f64 / (n * n) as f64).fold(0.0, f64::max);
        let monotone = (2..=8).all(|n| counts[n] >= counts[n - 1]);
        within &= bounded && monotone;
        summary.push(format!(
            "scheme {}: max two-qubit count {:?} for n=1..8, count ≤ {ratio:.2}·n² (bound 4n²+4n {bounded}, monotone {monotone})",
            s + 1,
            &counts[1..]
        ));
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && within && elapsed < Duration::from_secs(300),
        format!(
            "1000 tableaux x n=1..8 x 2 schemes, {reassembled} reassemblies n≤16, {} failures {:?}; {}; {elapsed:.2?}",
            failures.len(),
            failures.first(),
            summary.join("; ")
        ),
    )
}

/// Amplitudes in the canonical frame (`T = I`).
fn canonical_frame_vector(c: &CanonicalStabilizer) -> Vec<num_complex::Complex64> {
    let mut frame = c.clone();
    frame.t = BinMat::identity(c.n);
    frame.amplitudes().to_dense().unwrap()
}

/// Canonical-form amplitude expansion against the projector oracle.
fn criterion4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut classes = [0usize; 3];
    let mut branches = std::collections::BTreeSet::new();
    for n in 1..=5 {
        for i in 0..500 {
            let rep = random::random_stabilizer(n, &mut rng);
            let c = rep.canonical_form().unwrap();
            branches.insert((c.r_a > 0, c.r_b > 0, c.r_c > 0));
            let amps = c.amplitudes();
            let psi = amps.to_dense().unwrap();
            let proj = oracle::projector_state(&rep).unwrap();
            let dev = phase_deviation(&psi, &proj);
            worst = worst.max(dev);
            if dev > TOL {
                failures.push(format!("n={n} #{i}: projector deviation {dev:e}"));
            }
            let k = c.r_a + c.r_b;
            let nonzero: Vec<_> = psi.iter().filter(|z| z.norm() > 0.0).collect();
            let mag = 0.5f64.powf(k as f64 / 2.0);
            if nonzero.len() != 1 << k || nonzero.iter().any(|z| (z.norm() - mag).abs() > 1e-15) {
                failures.push(format!("n={n} #{i}: support or modulus"));
            }
            let has_i = amps.entries().unwrap().iter().any(|a| a.phase % 2 == 1);
            if has_i != !c.f_a.is_zero() {
                failures.push(format!("n={n} #{i}: i-powers vs f_a"));
            }
            let phi = canonical_frame_vector(&c);
            for (j, g) in c.canonical_rep().generators().iter().enumerate() {
                if stabilizer::apply_pauli(g, &phi).unwrap() != phi {
                    failures.push(format!("n={n} #{i}: canonical generator {j} not an exact eigenvector"));
                }
                classes[if j < c.r_a {
                    0
                } else if j < k {
                    1
                } else {
                    2
                }] += 1;
            }
            for (j, g) in rep.generators().iter().enumerate() {
                if stabilizer::apply_pauli(g, &psi).unwrap() != psi {
                    failures.push(format!("n={n} #{i}: generator {j} not an exact eigenvector"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && branches.len() == 7,
        format!(
            "2500 states n=1..5, max deviation {worst:.1e}, generator classes a/b/c checked {classes:?}, {} of 7 feasible (r_a,r_b,r_c) zero patterns, {} failures {:?}, {elapsed:.2?}",
            branches.len(),
            failures.len(),
            failures.first()
        ),
    )
}

/// Sum formula against both decompositions.
fn criterion5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        for i in 0..200 {
            let q = random::random_tableau(n, &mut rng);
            let m6 = oracle::clifford_matrix_theorem6(&q).unwrap();
            let s1 = decompose::decompose_scheme1(&q).unwrap();
            let s2 = decompose::decompose_scheme2(&q).unwrap();
            let u1 = oracle::dense_from_gates(&s1).unwrap();
            let u2 = oracle::dense_from_gates(&s2).unwrap();
            let indep = seq_dense(&s1);
            let devs = [
                oracle::operators_equal_up_to_phase(&m6, &u1).unwrap().max_deviation,
                oracle::operators_equal_up_to_phase(&m6, &u2).unwrap().max_deviation,
                oracle::operators_equal_up_to_phase(&u1, &u2).unwrap().max_deviation,
                phase_deviation(m6.as_slice(), &indep.data),
            ];
            let dev = devs.iter().copied().fold(0.0, f64::max);
            worst = worst.max(dev);
            if dev > TOL {
                failures.push(format!("n={n} #{i}: deviation {dev:e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty(),
        format!(
            "600 tableaux n=1..3, max deviation {worst:.1e}, {} failures {:?}, {elapsed:.2?}",
            failures.len(),
            failures.first()
        ),
    )
}

/// `exp(iπ/4·τ_ā)` tableaux against dense conjugation, every nonzero `a`.
fn criterion6() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in [1, 2] {
        for idx in 1..1usize << (2 * n) {
            let a = BinVec::from_index(2 * n, idx);
            let q = clifford::exp_pi4_gate(&a).unwrap();
            if let Some(k) = conjugation_mismatch(&q, &common::exp_dense(&a)) {
                failures.push(format!("a={a} generator {k}"));
            }
            checked += 1;
        }
    }
    outcome(
        failures.is_empty(),
        format!("{checked} labels at n=1,2, {} failures {:?}", failures.len(), failures.first()),
    )
}

/// Stabilizer update rule against dense evolution.
fn criterion7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for n in 1..=4 {
        for i in 0..500 {
            let rep = random::random_stabilizer(n, &mut rng);
            let seq = gate_built(n, 10, &mut rng);
            let before = rep.canonical_form().unwrap().amplitudes().to_dense().unwrap();
            let expected = seq_dense(&seq).apply(&before);
            let after = rep.apply_clifford(&seq.tableau().unwrap()).unwrap();
            let got = after.canonical_form().unwrap().amplitudes().to_dense().unwrap();
            let dev = phase_deviation(&got, &expected);
            worst = worst.max(dev);
            if dev > TOL {
                failures.push(format!("n={n} #{i}: deviation {dev:e}"));
            }
            pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty(),
        format!(
            "{pairs} (state, circuit) pairs n=1..4, max deviation {worst:.1e}, {} failures {:?}, {elapsed:.2?}",
            failures.len(),
            failures.first()
        ),
    )
}

/// Composition at n = 4096.
fn criterion8() -> Outcome {
    let n = 4096;
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let setup = Instant::now();
    let q1 = random::random_tableau(n, &mut rng);
    let q2 = random::random_tableau(n, &mut rng);
    let setup = setup.elapsed();
    let start = Instant::now();
    let q21 = q2.compose(&q1).unwrap();
    let elapsed = start.elapsed();
    let mem = [&q1, &q2, &q21].iter().map(|q| q.heap_bytes()).max().unwrap();
    // Spot-check the result through the group action.
    let consistent = (0..4).all(|_| {
        let p = PauliElement::hermitian(random::random_vec(2 * n, &mut rng), rng.random()).unwrap();
        q21.conjugate(&p).unwrap() == q2.conjugate(&q1.conjugate(&p).unwrap()).unwrap()
    });
    let symplectic_ok = CliffordTableau::new(q21.c().clone(), q21.d().clone(), q21.h().clone()).is_ok();
    outcome(
        elapsed < Duration::from_secs(5) && mem < 32 << 20 && consistent && symplectic_ok,
        format!(
            "compose {elapsed:.2?} (limit 5 s), {:.1} MiB per tableau (limit 32 MiB), action spot-check {consistent}, valid {symplectic_ok}, setup {setup:.2?}",
            mem as f64 / (1 << 20) as f64
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("Pauli product exactness", criterion1),
        ("conjugation / compose / inverse oracle suite", criterion2),
        ("decomposition round trips and gate counts", criterion3),
        ("stabilizer amplitude expansion", criterion4),
        ("Clifford matrix sum formula", criterion5),
        ("exp(iπ/4·τ) gate tableaux", criterion6),
        ("stabilizer update rule", criterion7),
        ("composition at n=4096", criterion8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let out = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        let status = if out.pass { "PASS" } else { "FAIL" };
        if !out.pass {
            failed += 1;
        }
        println!("criterion {} {status}: {name}: {}", i + 1, out.detail);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
