//! Plain-text formats for matrices, tableaux, circuits and stabilizer states.
//!
//! All formats are line based. Blank lines and anything after `#` are
//! ignored. Bit strings are runs of `0`/`1` characters.
//!
//! ```text
//! matrix:      <rows> <cols>, then one bit string per row
//! tableau:     n <n>, then 2n rows of C, then d, then h
//! circuit:     n <n>, then one gate per line:
//!              H q.. | CNOT c t | SWAP a b | PAULI <2n bits> | EXP <2n bits>
//!              | SQ q <C as 4 bits> <d as 2 bits> <h as 2 bits>
//! stabilizer:  n <n>, then n signed Pauli strings such as +XZ or -YY
//! ```

use std::fmt::Write as _;

use crate::clifford::CliffordTableau;
use crate::decompose::{GateSeq, PrimitiveGate};
use crate::error::{Error, Result};
use crate::gf2::{BinMat, BinVec};
use crate::pauli::PauliElement;
use crate::stabilizer::{phase_value, AmplitudeMap, CanonicalStabilizer, StabilizerRep};

/// Non-empty lines with comments removed, tagged with 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(s: &'a str) -> Self {
        Self { inner: s.lines().enumerate(), last: 0 }
    }

    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            self.last = i + 1;
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let last = self.last;
        self.next_line().ok_or_else(|| Error::parse(last + 1, format!("unexpected end of input, expected {what}")))
    }

    fn finish(&mut self) -> Result<()> {
        match self.next_line() {
            Some((line, text)) => Err(Error::parse(line, format!("unexpected trailing content {text:?}"))),
            None => Ok(()),
        }
    }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::parse(line, format!("expected a non-negative integer, got {tok:?}")))
}

fn parse_bits(line: usize, tok: &str, len: usize) -> Result<BinVec> {
    let v = BinVec::parse01(tok).map_err(|e| e.at_line(line))?;
    if v.len() != len {
        return Err(Error::parse(line, format!("expected {len} bits, got {}", v.len())));
    }
    Ok(v)
}

/// Reads the `n <n>` header.
fn parse_header(lines: &mut Lines<'_>) -> Result<usize> {
    let (line, text) = lines.expect("header `n <count>`")?;
    let mut toks = text.split_whitespace();
    match (toks.next(), toks.next(), toks.next()) {
        (Some("n"), Some(k), None) => parse_usize(line, k),
        _ => Err(Error::parse(line, format!("expected header `n <count>`, got {text:?}"))),
    }
}

pub fn parse_matrix(s: &str) -> Result<BinMat> {
    let mut lines = Lines::new(s);
    let (line, text) = lines.expect("`<rows> <cols>`")?;
    let toks: Vec<&str> = text.split_whitespace().collect();
    let [r, c] = toks[..] else {
        return Err(Error::parse(line, format!("expected `<rows> <cols>`, got {text:?}")));
    };
    let (rows, cols) = (parse_usize(line, r)?, parse_usize(line, c)?);
    let mut m = BinMat::zeros(rows, cols);
    for i in 0..rows {
        let (line, text) = lines.expect("a matrix row")?;
        m.set_row(i, &parse_bits(line, text, cols)?);
    }
    lines.finish()?;
    Ok(m)
}

pub fn format_matrix(m: &BinMat) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        out.push_str(&m.row(i).to_string01());
        out.push('\n');
    }
    out
}

pub fn parse_tableau(s: &str) -> Result<CliffordTableau> {
    let mut lines = Lines::new(s);
    let n = parse_header(&mut lines)?;
    let mut c = BinMat::zeros(2 * n, 2 * n);
    for i in 0..2 * n {
        let (line, text) = lines.expect("a row of C")?;
        c.set_row(i, &parse_bits(line, text, 2 * n)?);
    }
    let (d, h) = if n == 0 {
        (BinVec::zeros(0), BinVec::zeros(0))
    } else {
        let (dl, dt) = lines.expect("the d vector")?;
        let d = parse_bits(dl, dt, 2 * n)?;
        let (hl, ht) = lines.expect("the h vector")?;
        let h = parse_bits(hl, ht, 2 * n)?;
        (d, h)
    };
    lines.finish()?;
    CliffordTableau::new(c, d, h)
}

pub fn format_tableau(q: &CliffordTableau) -> String {
    let mut out = format!("n {}\n", q.num_qubits());
    for i in 0..q.c().rows() {
        out.push_str(&q.c().row(i).to_string01());
        out.push('\n');
    }
    let _ = writeln!(out, "{}", q.d().to_string01());
    let _ = writeln!(out, "{}", q.h().to_string01());
    out
}

fn parse_gate(line: usize, text: &str, n: usize) -> Result<PrimitiveGate> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let args = &toks[1..];
    let want = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::parse(line, format!("{} takes {k} arguments, got {}", toks[0], args.len())))
        }
    };
    let gate = match toks[0].to_ascii_uppercase().as_str() {
        "H" => PrimitiveGate::HadamardSet(args.iter().map(|t| parse_usize(line, t)).collect::<Result<_>>()?),
        "CNOT" | "CX" => {
            want(2)?;
            PrimitiveGate::Cnot { control: parse_usize(line, args[0])?, target: parse_usize(line, args[1])? }
        }
        "SWAP" => {
            want(2)?;
            PrimitiveGate::Swap(parse_usize(line, args[0])?, parse_usize(line, args[1])?)
        }
        "PAULI" => {
            want(1)?;
            PrimitiveGate::PauliGate(parse_bits(line, args[0], 2 * n)?)
        }
        "EXP" => {
            want(1)?;
            PrimitiveGate::ExpPi4(parse_bits(line, args[0], 2 * n)?)
        }
        "SQ" => {
            want(4)?;
            let bits = parse_bits(line, args[1], 4)?;
            PrimitiveGate::SingleQubit {
                qubit: parse_usize(line, args[0])?,
                c: BinMat::from_fn(2, 2, |i, j| bits.get(2 * i + j)),
                d: parse_bits(line, args[2], 2)?,
                h: parse_bits(line, args[3], 2)?,
            }
        }
        other => return Err(Error::parse(line, format!("unknown gate {other:?}"))),
    };
    gate.validate(n).map_err(|e| e.at_line(line))?;
    Ok(gate)
}

pub fn parse_circuit(s: &str) -> Result<GateSeq> {
    let mut lines = Lines::new(s);
    let n = parse_header(&mut lines)?;
    let mut seq = GateSeq::new(n);
    while let Some((line, text)) = lines.next_line() {
        seq.push(parse_gate(line, text, n)?);
    }
    Ok(seq)
}

pub fn format_gate(g: &PrimitiveGate) -> String {
    match g {
        PrimitiveGate::HadamardSet(qs) => {
            std::iter::once("H".to_string()).chain(qs.iter().map(|q| q.to_string())).collect::<Vec<_>>().join(" ")
        }
        PrimitiveGate::Cnot { control, target } => format!("CNOT {control} {target}"),
        PrimitiveGate::Swap(a, b) => format!("SWAP {a} {b}"),
        PrimitiveGate::PauliGate(a) => format!("PAULI {}", a.to_string01()),
        PrimitiveGate::ExpPi4(a) => format!("EXP {}", a.to_string01()),
        PrimitiveGate::SingleQubit { qubit, c, d, h } => {
            let cb: String = (0..4).map(|k| if c.get(k / 2, k % 2) { '1' } else { '0' }).collect();
            format!("SQ {qubit} {cb} {} {}", d.to_string01(), h.to_string01())
        }
    }
}

pub fn format_circuit(seq: &GateSeq) -> String {
    let mut out = format!("n {}\n", seq.n);
    for g in &seq.gates {
        out.push_str(&format_gate(g));
        out.push('\n');
    }
    out
}

pub fn parse_stabilizer(s: &str) -> Result<StabilizerRep> {
    let mut lines = Lines::new(s);
    let n = parse_header(&mut lines)?;
    let mut gens = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, text) = lines.expect("a signed Pauli string")?;
        let p: PauliElement = text.parse().map_err(|e: Error| e.at_line(line))?;
        if p.num_qubits() != n {
            return Err(Error::parse(line, format!("expected {n} Pauli letters, got {}", p.num_qubits())));
        }
        if !p.is_hermitian() {
            return Err(Error::parse(line, "generator must be hermitian (no ±i prefix)"));
        }
        gens.push(p);
    }
    lines.finish()?;
    StabilizerRep::from_generators(&gens)
}

pub fn format_stabilizer(s: &StabilizerRep) -> String {
    let mut out = format!("n {}\n", s.num_qubits());
    for g in s.generators() {
        let _ = writeln!(out, "{g}");
    }
    out
}

/// Shortest decimal that reads back as the same `f64`, never in exponent form.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x}")
}

/// One line `x_0…x_{n−1} re im` per nonzero amplitude, sorted by bitstring.
pub fn format_amplitudes(map: &AmplitudeMap) -> Result<String> {
    let mag = map.magnitude();
    let mut out = String::new();
    for a in map.entries()? {
        let z = phase_value(a.phase) * mag;
        let _ = writeln!(out, "{} {} {}", a.x.to_string01(), format_number(z.re), format_number(z.im));
    }
    Ok(out)
}

pub fn format_canonical(c: &CanonicalStabilizer) -> String {
    let mut out = format!("n {}\nr_a {}\nr_b {}\nr_c {}\nT\n", c.n, c.r_a, c.r_b, c.r_c);
    for i in 0..c.t.rows() {
        let _ = writeln!(out, "{}", c.t.row(i).to_string01());
    }
    out.push_str("Z\n");
    for i in 0..c.z.rows() {
        let _ = writeln!(out, "{}", c.z.row(i).to_string01());
    }
    for (name, v) in [("b_ab", &c.b_ab), ("b_c", &c.b_c)] {
        let _ = writeln!(out, "{}", format!("{name} {}", v.to_string01()).trim_end());
    }
    out
}
