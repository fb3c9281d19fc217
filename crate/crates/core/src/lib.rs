//! Clifford operations and stabilizer states in binary linear algebra.
//!
//! A Clifford operation on `n` qubits is stored as a tableau `(C, d, h)`: a
//! `2n x 2n` symplectic matrix over GF(2) and two phase vectors. Composition,
//! inversion and the conjugation action reduce to bit-packed matrix products
//! and binary quadratic forms. Stabilizer states are stored as `(S, f, b)` and
//! can be expanded in the standard basis from a canonical form. The [`oracle`]
//! module recomputes everything with dense complex matrices at small sizes.
//!
//! ```
//! use clifford_gf2::{clifford, PauliElement};
//!
//! let h = clifford::hadamard_gate(2, &[0]).unwrap();
//! let cx = clifford::cnot_gate(2, 0, 1).unwrap();
//! let bell = cx.compose(&h).unwrap();
//! let z0: PauliElement = "+ZI".parse().unwrap();
//! assert_eq!(bell.conjugate(&z0).unwrap().to_string(), "+XX");
//! ```

pub mod clifford;
pub mod decompose;
pub mod error;
pub mod gf2;
pub mod oracle;
pub mod pauli;
pub mod random;
pub mod stabilizer;
pub mod text;

pub use clifford::CliffordTableau;
pub use decompose::{GateSeq, PrimitiveGate};
pub use error::{Error, Result};
pub use gf2::{BinMat, BinVec, StructMatrices};
pub use pauli::PauliElement;
pub use stabilizer::{CanonicalStabilizer, StabilizerRep};
