use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a simple graph: {0}")]
    NonSimple(String),
    #[error("asymmetric adjacency: {0} lists {1} but not vice versa")]
    AsymmetricAdjacency(usize, usize),
    #[error("rotation system is not a sphere embedding (component of vertex {vertex}: n={n}, e={e}, f={f})")]
    NonPlanarRotation {
        vertex: usize,
        n: usize,
        e: usize,
        f: usize,
    },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown edge {0}-{1}")]
    UnknownEdge(usize, usize),
    #[error("unknown face {0}")]
    UnknownFace(usize),
    #[error("path length {0} exceeds the supported maximum of 12")]
    MTooLarge(usize),
    #[error("fan size k={0} outside the supported range")]
    KOutOfRange(usize),
    #[error("outer face is a triangle")]
    OuterFaceIsTriangle,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("n={0} is too small")]
    NTooSmall(usize),
    #[error("n={0} exceeds the enumeration cap (12 by default, 14 with deep, 64 with large)")]
    NTooLarge(usize),
    #[error("n={0} exceeds the brute-force oracle limit of 7")]
    NTooLargeForOracle(usize),
    #[error("deletion budget t={0} exceeds 2")]
    TTooLarge(usize),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("face {0} is not a triangle")]
    NonTriangularFace(usize),
    #[error("gluing would create a loop or parallel edge")]
    SimplicityViolated,
    #[error("unsupported order n={0}")]
    UnsupportedOrder(usize),
    #[error("search inconclusive: no pattern-free graph with at least {0} edges")]
    Inconclusive(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
