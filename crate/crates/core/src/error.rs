use thiserror::Error;

use crate::graph::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which condition of the corridor definition a room set failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorridorCondition {
    /// Every block holds exactly one entrance and entrances are pairwise adjacent.
    OneEntrancePerBlock,
    /// Minimal sequences between rooms of a block stay inside the block.
    BlockClosure,
    /// Minimal sequences between blocks pass through the entrance pair.
    ConcatenationMinimal,
    /// Corridor edges carry the corridor label.
    UniformLabel,
}

impl CorridorCondition {
    pub fn number(self) -> u8 {
        match self {
            CorridorCondition::OneEntrancePerBlock => 1,
            CorridorCondition::BlockClosure => 2,
            CorridorCondition::ConcatenationMinimal => 3,
            CorridorCondition::UniformLabel => 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial `{dividend}` is not divisible by `{divisor}`")]
    NotDivisible { dividend: String, divisor: String },
    #[error("size {size} exceeds the cap {cap} of {what}")]
    SizeCap { what: &'static str, size: usize, cap: usize },
    #[error("variable `{0}` has no assigned value")]
    UnboundVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed matrix: {0}")]
    BadMatrix(String),
    #[error("malformed graph: {0}")]
    BadGraph(String),
    #[error("unknown room `{0}`")]
    UnknownRoom(String),
    #[error("room `{to}` is unreachable from `{from}`")]
    Unreachable { from: String, to: String },
    #[error("more than {cap} minimal sequences from `{from}` to `{to}`")]
    ExplosionCap { from: String, to: String, cap: u64 },
    #[error("graph violates the walking-cat axioms")]
    AxiomViolation(Box<ValidationReport>),
    #[error("not a corridor (condition {}): {detail} [witness {witness:?}]", .condition.number())]
    NotACorridor {
        condition: CorridorCondition,
        witness: (String, String),
        detail: String,
    },
    #[error("corridor {corridor} straddles several blocks of the current partition")]
    NotNested { corridor: usize },
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("illegal label `{label}`: {reason}")]
    BadLabel { label: String, reason: String },
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("face {0} is a chamber")]
    IsChamber(String),
    #[error("odd chamber count {count} for face {face}")]
    OddCount { face: String, count: usize },
    #[error("face multiplicity of {face} depends on the chosen hyperplane: {counts:?}")]
    MultiplicityMismatch { face: String, counts: Vec<usize> },
    #[error("chamber graph is disconnected")]
    Disconnected,
    #[error("graph is not indirectly acyclic")]
    NotAcyclic,
    #[error("bad arrangement: {0}")]
    BadArrangement(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
