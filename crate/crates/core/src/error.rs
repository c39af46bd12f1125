use thiserror::Error;

/// Errors raised by the diagram, determinant, certification and surgery layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("diagram is not planar: {0}")]
    NonPlanar(String),

    #[error("arc {arc} occurs {count} times (expected exactly 2)")]
    DanglingArc { arc: u32, count: usize },

    #[error("diagram has no crossings")]
    EmptyDiagram,

    #[error("marked arc {0} does not touch exactly one black region")]
    MarkError(u32),

    #[error("diagram is not connected")]
    Disconnected,

    #[error("link determinant is zero; the link cannot be quasi-alternating")]
    ZeroDeterminant,

    #[error("no crossing with index {0}")]
    NoSuchCrossing(usize),

    #[error("diagram has {crossings} crossings, above the brute-force bound {bound}")]
    TooLarge { crossings: usize, bound: usize },

    #[error("rational tangle does not extend the crossing: epsilon * a_{index} = {value} < 1")]
    NotExtending { index: usize, value: i64 },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("degenerate continued fraction: {0}")]
    DegenerateFraction(String),

    #[error("vertex {0} cannot be blown down (needs weight -1 and degree at most 2)")]
    NotBlowable(usize),

    #[error("illegal Reidemeister move: {0}")]
    IllegalMove(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
