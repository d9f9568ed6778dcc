use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicatePair(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error(
        "coloring is not proper: edges {first:?} and {second:?} share a vertex and color {color}"
    )]
    Improper {
        first: (usize, usize),
        second: (usize, usize),
        color: usize,
    },
    #[error("graph uses {colors} colors, enumeration supports at most {max}")]
    TooManyColors { colors: usize, max: usize },
    #[error("length {length} out of range ({min}..={max})")]
    LengthOutOfRange {
        length: usize,
        min: usize,
        max: usize,
    },
    #[error("parameter `{name}` = {value} out of range ({min}..={max})")]
    ParameterOutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("result is not exhaustive")]
    NotExhaustive,
    #[error("witness failed re-verification: {0}")]
    WitnessRejected(String),
}

pub type Result<T> = std::result::Result<T, Error>;
