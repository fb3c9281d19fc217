//! Pauli group elements `i^δ (−1)^ε τ_a` in binary form.
//!
//! `τ_a` is the tensor product of `τ_00 = I`, `τ_01 = σx`, `τ_10 = σz` and
//! `τ_11 = σz·σx = iσy`, one factor per qubit, with `a = [v; w]`. Because the
//! `i`-exponent is kept binary and `τ` absorbs the `i` of `σy`, the product
//! rule needs nothing beyond XOR and a popcount.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{self, BinVec};

/// `i^delta · (−1)^epsilon · τ_a` on `n` qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliElement {
    n: usize,
    pub delta: bool,
    pub epsilon: bool,
    a: BinVec,
}

impl PauliElement {
    pub fn new(delta: bool, epsilon: bool, a: BinVec) -> Result<Self> {
        if !a.len().is_multiple_of(2) {
            return Err(Error::BadLength { expected: a.len() + 1, got: a.len() });
        }
        Ok(Self { n: a.len() / 2, delta, epsilon, a })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, delta: false, epsilon: false, a: BinVec::zeros(2 * n) }
    }

    /// Plain `τ_a`.
    pub fn tau(a: BinVec) -> Result<Self> {
        Self::new(false, false, a)
    }

    /// The hermitian element `i^{aᵀUa} (−1)^sign τ_a`.
    pub fn hermitian(a: BinVec, sign: bool) -> Result<Self> {
        let delta = gf2::utu(&a);
        Self::new(delta, sign, a)
    }

    /// `i^phase · σ_a` with `phase` taken mod 4.
    pub fn from_sigma(phase: u8, a: BinVec) -> Result<Self> {
        let f = gf2::utu(&a) as u8;
        let g = (phase + 4 - f) % 4;
        Self::new(g & 1 == 1, g & 2 == 2, a)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn label(&self) -> &BinVec {
        &self.a
    }

    pub fn into_label(self) -> BinVec {
        self.a
    }

    /// Exponent `g` (mod 4) such that the element equals `i^g σ_a`.
    pub fn sigma_phase(&self) -> u8 {
        (self.delta as u8 + 2 * self.epsilon as u8 + gf2::utu(&self.a) as u8) % 4
    }

    /// Exponent `g` (mod 4) such that the element equals `i^g τ_a`.
    pub fn tau_phase(&self) -> u8 {
        self.delta as u8 + 2 * self.epsilon as u8
    }

    /// Product `self · rhs`.
    ///
    /// `δ₁₂ = δ₁+δ₂`, `ε₁₂ = ε₁+ε₂+δ₁δ₂+a₂ᵀUa₁`, `a₁₂ = a₁+a₂`.
    pub fn mul(&self, rhs: &PauliElement) -> Result<PauliElement> {
        if self.n != rhs.n {
            return Err(Error::QubitCountMismatch { left: self.n, right: rhs.n });
        }
        Ok(PauliElement {
            n: self.n,
            delta: self.delta ^ rhs.delta,
            epsilon: self.epsilon ^ rhs.epsilon ^ (self.delta & rhs.delta) ^ cross_sign(&rhs.a, &self.a),
            a: &self.a ^ &rhs.a,
        })
    }

    /// Hermitian iff `δ = aᵀUa`.
    pub fn is_hermitian(&self) -> bool {
        self.delta == gf2::utu(&self.a)
    }

    pub fn commutes_with(&self, other: &PauliElement) -> bool {
        commutes(&self.a, &other.a)
    }

    /// Multiplies the element by `−1`.
    pub fn negated(&self) -> PauliElement {
        PauliElement { epsilon: !self.epsilon, ..self.clone() }
    }
}

/// `a₂ᵀ U a₁`: the parity of qubits where `w₁` and `v₂` are both set.
#[inline]
fn cross_sign(a2: &BinVec, a1: &BinVec) -> bool {
    let n = a1.len() / 2;
    if n.is_multiple_of(64) {
        // Halves are word aligned: v occupies the first n/64 words.
        let nw = n / 64;
        let (v2, w1) = (&a2.words()[..nw], &a1.words()[nw..]);
        return v2.iter().zip(w1).fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones()) & 1 == 1;
    }
    gf2::u_form(a2, a1)
}

/// `τ_a` and `τ_b` commute iff `bᵀPa = 0`.
pub fn commutes(a: &BinVec, b: &BinVec) -> bool {
    !gf2::sym_form(a, b)
}

impl fmt::Display for PauliElement {
    /// Signed σ-string, e.g. `+XZY`, `-iZ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.sigma_phase() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for k in 0..self.n {
            let ch = match (self.a.get(k), self.a.get(self.n + k)) {
                (false, false) => 'I',
                (false, true) => 'X',
                (true, false) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (δ={}, ε={}, a={})", self, self.delta as u8, self.epsilon as u8, self.a)
    }
}

impl FromStr for PauliElement {
    type Err = Error;

    /// Parses `[+|-][i]` followed by letters from `IXYZ`, qubit 0 first.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (mut phase, rest) = if let Some(r) = s.strip_prefix('+') {
            (0u8, r)
        } else if let Some(r) = s.strip_prefix('-').or_else(|| s.strip_prefix('\u{2212}')) {
            (2u8, r)
        } else {
            (0u8, s)
        };
        let rest = match rest.strip_prefix('i') {
            Some(r) => {
                phase += 1;
                r
            }
            None => rest,
        };
        let n = rest.chars().count();
        let mut a = BinVec::zeros(2 * n);
        for (k, ch) in rest.chars().enumerate() {
            let (z, x) = match ch {
                'I' | '_' => (false, false),
                'X' => (false, true),
                'Y' => (true, true),
                'Z' => (true, false),
                other => return Err(Error::parse(0, format!("invalid Pauli letter {other:?}"))),
            };
            a.set(k, z);
            a.set(n + k, x);
        }
        PauliElement::from_sigma(phase, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(bits: &[u8]) -> PauliElement {
        PauliElement::tau(BinVec::from_bits(bits)).unwrap()
    }

    #[test]
    fn z_times_x_is_tau11() {
        let p = tau(&[1, 0]).mul(&tau(&[0, 1])).unwrap();
        assert_eq!(p, tau(&[1, 1]));
    }

    #[test]
    fn x_times_z_carries_a_sign() {
        let p = tau(&[0, 1]).mul(&tau(&[1, 0])).unwrap();
        assert!(!p.delta);
        assert!(p.epsilon);
        assert_eq!(p.label(), &BinVec::from_bits(&[1, 1]));
    }

    #[test]
    fn hermitian_elements_square_to_identity() {
        for s in ["+X", "-Y", "+Z", "+XYZ", "-YYI", "+IIY"] {
            let p: PauliElement = s.parse().unwrap();
            assert!(p.is_hermitian(), "{s}");
            assert_eq!(p.mul(&p).unwrap(), PauliElement::identity(p.num_qubits()), "{s}");
        }
    }

    #[test]
    fn commutation_examples() {
        let a = BinVec::from_bits(&[1, 0, 1, 1]);
        assert!(commutes(&a, &a));
        assert!(!commutes(&BinVec::from_bits(&[1, 0]), &BinVec::from_bits(&[0, 1])));
        assert!(commutes(&BinVec::from_bits(&[0, 0, 1, 1]), &BinVec::from_bits(&[1, 1, 0, 0])));
    }

    #[test]
    fn hermiticity_examples() {
        assert!(PauliElement::identity(1).is_hermitian());
        assert!(!tau(&[1, 1]).is_hermitian());
        let iy = PauliElement::new(true, false, BinVec::from_bits(&[1, 1])).unwrap();
        assert!(iy.is_hermitian());
    }

    #[test]
    fn string_round_trip_and_phase_bits() {
        let y: PauliElement = "+Y".parse().unwrap();
        assert!(y.delta && y.epsilon);
        let my: PauliElement = "-Y".parse().unwrap();
        assert!(my.delta && !my.epsilon);
        for s in ["+XIZY", "-ZZ", "+iX", "-iYY", "+"] {
            let p: PauliElement = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("+XQ".parse::<PauliElement>().is_err());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(PauliElement::identity(1).mul(&PauliElement::identity(2)).is_err());
    }

    #[test]
    fn aligned_cross_sign_matches_generic() {
        let n = 64;
        let a1 = BinVec::from_bools((0..2 * n).map(|k| k % 3 == 0));
        let a2 = BinVec::from_bools((0..2 * n).map(|k| k % 5 < 2));
        assert_eq!(cross_sign(&a2, &a1), gf2::u_form(&a2, &a1));
    }
}
