use thiserror::Error;

/// Errors raised by the library.
///
/// Structural problems (bad ids, malformed partitions) and resource caps are
/// kept apart so callers can map caps to a dedicated exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex set is empty")]
    EmptyVertexSet,

    #[error("vertex {vertex} is not a vertex of a graph on {n} vertices")]
    NotAVertex { vertex: usize, n: usize },

    #[error("label count {got} does not match vertex count {n}")]
    LabelCount { got: usize, n: usize },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error(
        "restriction precondition violated: component {component:?} sees non-adjacent {u} and {v}"
    )]
    RestrictionPrecondition {
        component: Vec<usize>,
        u: usize,
        v: usize,
    },

    #[error("no bag contains {0:?}")]
    NoBagContains(Vec<usize>),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("vertex {0} appears in both decompositions")]
    IdCollision(usize),

    #[error("{format} parse error at byte {offset}: {message}")]
    Parse {
        format: &'static str,
        offset: usize,
        message: String,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("predicted {what} {predicted}{} exceeds cap {cap}", if *.exact { "" } else { " (lower bound)" })]
    SizeRefused {
        what: &'static str,
        predicted: String,
        exact: bool,
        cap: usize,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal certificate check failed: {0}")]
    BadCertificate(String),
}

impl Error {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::SizeRefused { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
