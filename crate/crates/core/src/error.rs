use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch between {left:?} and {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("singular {size}x{size} matrix (rank {rank})")]
    Singular { size: usize, rank: usize },

    #[error("column {column} depends linearly on the preceding columns")]
    DependentColumns { column: usize },

    #[error("matrix is not symmetric: entries ({row},{col}) and ({col},{row}) differ")]
    NotSymmetric { row: usize, col: usize },

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("matrix is not symplectic: CᵀPC differs from P at row {row}, column {col}")]
    NotSymplectic { row: usize, col: usize },

    #[error("tableaux have different C matrices (first difference at row {row}, column {col})")]
    TableauMismatch { row: usize, col: usize },

    #[error("phase vector d does not match diag(CᵀUC) at index {index}")]
    PhaseVectorMismatch { index: usize },

    #[error("vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },

    #[error("not a permutation of 0..{n}")]
    InvalidPermutation { n: usize },

    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("two-qubit gate needs distinct qubits, got {qubit} twice")]
    RepeatedQubit { qubit: usize },

    #[error("exp(iπ/4·τ) gate needs a nonzero label vector")]
    ZeroLabel,

    #[error("exp(iπ/4·τ) gate touches {qubits} qubits, at most 2 allowed")]
    GateSupportTooLarge { qubits: usize },

    #[error("stabilizer generators {first} and {second} do not commute")]
    NonCommuting { first: usize, second: usize },

    #[error("stabilizer generator {column} depends on the preceding generators")]
    DependentGenerators { column: usize },

    #[error("generator {index} is not hermitian (f does not match diag(SᵀUS))")]
    NotHermitian { index: usize },

    #[error("{n} qubits exceeds the dense oracle limit of {cap}")]
    OracleCap { n: usize, cap: usize },

    #[error("projection onto the stabilized subspace vanished for every seed")]
    EmptyProjection,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    /// Re-tags a parse error with a line number.
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse { message, .. } => Error::Parse { line, message },
            other => Error::Parse { line, message: other.to_string() },
        }
    }
}
