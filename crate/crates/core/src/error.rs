use thiserror::Error;

/// Errors produced by construction and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square with dimension >= 1, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        got: usize,
        expected: usize,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {dim} is not a power of two")]
    NotPowerOfTwo { dim: usize },

    #[error("qubit index {index} out of range for {qubits} qubit(s)")]
    QubitIndex { index: usize, qubits: usize },

    #[error("operator is not unitary (max |UU' - I| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("not a valid density matrix: {reason}")]
    InvalidDensity { reason: String },

    #[error("probability {value} outside [0, 1]")]
    ProbabilityRange { value: f64 },

    #[error("{name} = {value} outside [{min}, {max}]")]
    AngleRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("player count {players}: {requirement}")]
    PlayerCount {
        players: usize,
        requirement: &'static str,
    },

    #[error("expected {expected} strategies, got {got}")]
    ProfileLength { expected: usize, got: usize },

    #[error("player index {index} out of range for {players} players")]
    PlayerIndex { index: usize, players: usize },

    #[error("qubit split {n1} + {n2} does not partition {players} players")]
    QubitSplit {
        n1: usize,
        n2: usize,
        players: usize,
    },

    #[error("grid must have at least 2 points per axis, got {got}")]
    GridSize { got: usize },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
