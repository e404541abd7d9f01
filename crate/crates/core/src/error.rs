use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HammockError {
    #[error("invalid dimensions {length}x{width}: length and width must both be at least 1")]
    InvalidDimension { length: i64, width: i64 },

    #[error("invalid kind {0}: expected 1 or 2")]
    InvalidKind(i64),

    /// An exhaustive method was asked to scan more edges than its ceiling allows.
    #[error("{method} handles at most {limit} edges, network has {edges}")]
    EdgeCeiling {
        method: &'static str,
        edges: usize,
        limit: usize,
    },

    #[error("frontier engine handles sweep width at most {limit}, network has {width}")]
    WidthLimit { width: usize, limit: usize },

    #[error("probability {0} lies outside [0, 1]")]
    Domain(String),

    #[error("malformed network description: {0}")]
    MalformedNetwork(String),
}

impl HammockError {
    /// True for errors caused by a resource ceiling rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Self::EdgeCeiling { .. } | Self::WidthLimit { .. })
    }
}

pub type Result<T, E = HammockError> = std::result::Result<T, E>;
