use crate::model::Diagnostics;

/// Errors raised by the surface, reduction and homeomorphism operations.
///
/// Every variant maps to a stable upper-case code (see [`Error::code`]) that
/// the CLI and the C ABI report verbatim.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("surface failed validation: {0}")]
    InvalidSurface(Diagnostics),
    #[error("degenerate interval ({0})")]
    DegenerateInterval(String),
    #[error("unknown strip `{0}`")]
    UnknownStrip(String),
    #[error("unknown leaf `{0}`")]
    UnknownLeaf(String),
    #[error("leaf `{0}` is not of type c2")]
    NotC2(String),
    #[error("leaf `{0}` is not of type c1")]
    NotC1(String),
    #[error("leaf `{0}` does not close off its component")]
    ComponentNotClosed(String),
    #[error("surface is not connected ({0} components)")]
    NotConnected(usize),
    #[error("surface is not reduced (leaf `{0}` has type c1 or c2)")]
    NotReduced(String),
    #[error("shadow failed validation: {0}")]
    InvalidShadow(Diagnostics),
    #[error("shadow is not in the identity component")]
    NotInH0,
    #[error("samples do not match the shadow: {0}")]
    InconsistentSamples(String),
    #[error("component is not a connected subgraph of the reduction graph")]
    MalformedComponent,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidSurface(_) => "INVALID_SURFACE",
            Error::DegenerateInterval(_) => "DEGENERATE_INTERVAL",
            Error::UnknownStrip(_) => "UNKNOWN_STRIP",
            Error::UnknownLeaf(_) => "UNKNOWN_LEAF",
            Error::NotC2(_) => "NOT_C2",
            Error::NotC1(_) => "NOT_C1",
            Error::ComponentNotClosed(_) => "COMPONENT_NOT_CLOSED",
            Error::NotConnected(_) => "NOT_CONNECTED",
            Error::NotReduced(_) => "NOT_REDUCED",
            Error::InvalidShadow(_) => "INVALID_SHADOW",
            Error::NotInH0 => "NOT_IN_H0",
            Error::InconsistentSamples(_) => "INCONSISTENT_SAMPLES",
            Error::MalformedComponent => "MALFORMED_COMPONENT",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
