//! `cliffgf2`: command-line front end for the binary Clifford toolkit.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or parse error,
//! 3 refusal because a dense oracle cap was exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use clifford_gf2::decompose::{self, GateSeq};
use clifford_gf2::{oracle, random, text, BinVec, CliffordTableau, Error, StabilizerRep};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "cliffgf2", version, about = "Clifford tableaux and stabilizer states over GF(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the tableau of a circuit.
    Tableau { circuit: PathBuf },
    /// Print the tableau of Q2·Q1 (Q1 acts first).
    Compose { q2: PathBuf, q1: PathBuf },
    /// Print the inverse tableau.
    Invert { tableau: PathBuf },
    /// Decompose a tableau into a circuit.
    Decompose {
        tableau: PathBuf,
        #[arg(long, value_enum, default_value_t = Scheme::Cols)]
        scheme: Scheme,
    },
    /// Print the canonical form of a stabilizer state.
    Canon { stabilizer: PathBuf },
    /// Print the nonzero standard-basis amplitudes of a stabilizer state.
    Amplitudes { stabilizer: PathBuf },
    /// Print the nonzero entries of the unitary given by the closed-form sum.
    Theorem6 { tableau: PathBuf },
    /// Check a circuit against the dense oracle.
    Verify {
        circuit: PathBuf,
        /// Tableau to check instead of the one computed from the circuit.
        #[arg(long)]
        tableau: Option<PathBuf>,
        /// Stabilizer state to expand and evolve through the circuit.
        #[arg(long)]
        stabilizer: Option<PathBuf>,
    },
    /// Print a random tableau.
    GenRandomTableau {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    /// Column-by-column reduction.
    Cols,
    /// Five-block factorization.
    Blocks,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_tableau(path: &Path) -> Result<CliffordTableau> {
    text::parse_tableau(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_circuit(path: &Path) -> Result<GateSeq> {
    text::parse_circuit(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_stabilizer(path: &Path) -> Result<StabilizerRep> {
    text::parse_stabilizer(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn bits(n: usize, index: usize) -> String {
    BinVec::from_index(n, index).to_string01()
}

/// Output text and whether every check passed.
fn run(command: Command) -> Result<(String, bool)> {
    let out = match command {
        Command::Tableau { circuit } => text::format_tableau(&load_circuit(&circuit)?.tableau()?),
        Command::Compose { q2, q1 } => {
            let (q2, q1) = (load_tableau(&q2)?, load_tableau(&q1)?);
            text::format_tableau(&q2.compose(&q1)?)
        }
        Command::Invert { tableau } => text::format_tableau(&load_tableau(&tableau)?.inverse()),
        Command::Decompose { tableau, scheme } => {
            let q = load_tableau(&tableau)?;
            let seq = match scheme {
                Scheme::Cols => decompose::decompose_scheme1(&q)?,
                Scheme::Blocks => decompose::decompose_scheme2(&q)?,
            };
            let mut out = text::format_circuit(&seq);
            let _ = writeln!(out, "# gates: {} two-qubit: {}", seq.len(), seq.two_qubit_count());
            out
        }
        Command::Canon { stabilizer } => text::format_canonical(&load_stabilizer(&stabilizer)?.canonical_form()?),
        Command::Amplitudes { stabilizer } => {
            text::format_amplitudes(&load_stabilizer(&stabilizer)?.canonical_form()?.amplitudes())?
        }
        Command::Theorem6 { tableau } => {
            let q = load_tableau(&tableau)?;
            let n = q.num_qubits();
            let m = oracle::clifford_matrix_theorem6(&q)?;
            let mut out = format!("n {n}\n");
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    let z = m.get(i, j);
                    if z.norm() > oracle::TOLERANCE {
                        let (re, im) = (text::format_number(z.re), text::format_number(z.im));
                        let _ = writeln!(out, "{} {} {re} {im}", bits(n, i), bits(n, j));
                    }
                }
            }
            out
        }
        Command::Verify { circuit, tableau, stabilizer } => return verify(&circuit, tableau, stabilizer),
        Command::GenRandomTableau { n, seed } => {
            text::format_tableau(&random::random_tableau(n, &mut ChaCha8Rng::seed_from_u64(seed)))
        }
    };
    Ok((out, true))
}

fn verify(circuit: &Path, tableau: Option<PathBuf>, stabilizer: Option<PathBuf>) -> Result<(String, bool)> {
    let seq = load_circuit(circuit)?;
    let n = seq.n;
    if n > oracle::MAX_OPERATOR_QUBITS {
        return Err(Error::OracleCap { n, cap: oracle::MAX_OPERATOR_QUBITS }.into());
    }
    let q = match tableau {
        Some(path) => load_tableau(&path)?,
        None => seq.tableau()?,
    };
    if q.num_qubits() != n {
        return Err(Error::QubitCountMismatch { left: q.num_qubits(), right: n }.into());
    }
    let state = stabilizer.map(|p| load_stabilizer(&p)).transpose()?;
    if let Some(s) = &state {
        if s.num_qubits() != n {
            return Err(Error::QubitCountMismatch { left: s.num_qubits(), right: n }.into());
        }
    }

    let mut out = String::new();
    let mut ok = true;
    let mut report = |name: &str, pass: bool, detail: String| {
        ok &= pass;
        let _ = writeln!(out, "{name}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    };

    let dense = oracle::dense_from_gates(&seq)?;
    match oracle::first_generator_mismatch(&q, &dense)? {
        None => report("generators", true, format!("{} generator images agree", 2 * n)),
        Some(k) => report("generators", false, format!("mismatch at generator {k}")),
    }

    let cmp = oracle::operators_equal_up_to_phase(&oracle::clifford_matrix_theorem6(&q)?, &dense)?;
    report("theorem6", cmp.equal, format!("max deviation {:e}", cmp.max_deviation));

    if let Some(s) = state {
        let expanded = s.canonical_form()?.amplitudes().to_dense()?;
        let projected = oracle::projector_state(&s)?;
        let cmp = oracle::equal_up_to_phase(&expanded, &projected)?;
        report("amplitudes", cmp.equal, format!("max deviation {:e}", cmp.max_deviation));

        let evolved = s.apply_clifford(&q)?.canonical_form()?.amplitudes().to_dense()?;
        let expect = dense.apply(&projected)?;
        let cmp = oracle::equal_up_to_phase(&evolved, &expect)?;
        report("evolution", cmp.equal, format!("max deviation {:e}", cmp.max_deviation));
    }

    let _ = writeln!(out, "{}", if ok { "PASS" } else { "FAIL" });
    Ok((out, ok))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::OracleCap { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
