use thiserror::Error;

/// Coarse error classes, used by the command line to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Solver,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    // complex construction
    #[error("face {face} cites missing edge {edge}")]
    DanglingEdge { face: usize, edge: i64 },
    #[error("edge {edge} cites unknown vertex {vertex}")]
    UnknownEdgeVertex { edge: usize, vertex: i64 },
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(i64),
    #[error("edge {0} is a loop")]
    LoopEdge(usize),
    #[error("face {0} has fewer than three sides")]
    DegenerateFace(usize),
    #[error("face {0}: consecutive edges do not share a vertex")]
    BrokenCycle(usize),
    #[error("edge {edge} bounds {count} faces")]
    NonManifold { edge: usize, count: usize },
    #[error("complex is disconnected")]
    Disconnected,
    #[error("complex is not orientable")]
    NonOrientable,
    #[error("complex has boundary")]
    HasBoundary,
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown face {0}")]
    UnknownFace(usize),
    #[error("not an annulus: {0}")]
    NotAnAnnulus(String),
    #[error("not a quadrilateral: {0}")]
    NotAQuad(String),
    #[error("not a ring")]
    NotARing,
    #[error("vertex {0} is not interior")]
    NotInterior(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tile_types has {got} entries for {faces} faces")]
    TileTypeCount { got: usize, faces: usize },

    // rules
    #[error("unknown tile type {0:?}")]
    UnknownTileType(String),
    #[error("unknown edge type {0:?}")]
    UnknownEdgeType(String),
    #[error("edge mismatch: {0}")]
    EdgeMismatch(String),
    #[error("pattern for tile type {0:?} is not a disk")]
    NotADisk(String),
    #[error("face {0} has no usable tile type in the rule")]
    MissingTileType(usize),
    #[error("gluing failure along edge {0}")]
    GluingFailure(usize),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),

    // modulus / solvers
    #[error("weight carrier does not match mode")]
    CarrierMismatch,
    #[error("boundaries are not connected through the carrier graph")]
    NoPath,
    #[error("iteration limit {0} reached")]
    IterationLimit(usize),
    #[error("instance has {carriers} carriers, oracle limit is {limit}")]
    TooLarge { carriers: usize, limit: usize },
    #[error("quadratic program failed: {0}")]
    QpFailure(String),
    #[error("non-positive argument: {0}")]
    NonPositive(String),
    #[error("annuli are not nested")]
    NotNested,
    #[error("annuli overlap")]
    Overlapping,

    // packing
    #[error("not a triangulated disk: {0}")]
    NotATriangulatedDisk(String),
    #[error("vertex {0} is on the boundary")]
    BoundaryVertex(usize),

    // io
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            NoPath | IterationLimit(_) | TooLarge { .. } | QpFailure(_) => ErrorClass::Solver,
            Io(_) => ErrorClass::Io,
            _ => ErrorClass::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
