use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// Variant names double as the diagnostic tag printed by the command-line tool.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("DuplicateVertexInSimplex: simplex {simplex:?} repeats a vertex")]
    DuplicateVertexInSimplex { simplex: Vec<usize> },

    #[error("IndexOutOfRange: index {index} not in [0, {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("DuplicateSimplex: simplex {simplex:?} listed more than once")]
    DuplicateSimplex { simplex: Vec<usize> },

    #[error("NotClosedManifold: {kind} {simplex:?} has {cofaces} cofaces (expected 2)")]
    NotClosedManifold {
        kind: &'static str,
        simplex: Vec<usize>,
        cofaces: usize,
    },

    #[error("IsolatedVertex: vertex {vertex} lies in no top simplex")]
    IsolatedVertex { vertex: usize },

    #[error("EmptyComplex: no top simplices given")]
    EmptyComplex,

    #[error("WrongDimension: expected dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("UnknownMeshName: {0}")]
    UnknownMeshName(String),

    #[error("NonPositiveRadius: vertex {vertex} has radius {value}")]
    NonPositiveRadius { vertex: usize, value: f64 },

    #[error("WeightOutOfRange: edge weight {value} not in [0, pi/2]")]
    WeightOutOfRange { value: f64 },

    #[error("TriangleInequalityViolated: lengths ({0}, {1}, {2})")]
    TriangleInequalityViolated(f64, f64, f64),

    #[error("DegenerateTetrahedron: radii {radii:?} give Q = {q}")]
    DegenerateTetrahedron { radii: [f64; 4], q: f64 },

    #[error("Inadmissible: tetrahedron {simplex:?} has Q = {q}")]
    Inadmissible { simplex: [usize; 4], q: f64 },

    #[error("PerturbationLeavesAdmissibleSet: finite-difference step at vertex {vertex} leaves the admissible set")]
    PerturbationLeavesAdmissibleSet { vertex: usize },

    #[error("DimensionMismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("NotSymmetric: asymmetry {asymmetry} exceeds tolerance")]
    NotSymmetric { asymmetry: f64 },

    #[error("NoZeroMode: smallest |eigenvalue| {smallest} above threshold {threshold}")]
    NoZeroMode { smallest: f64, threshold: f64 },

    #[error("MultipleZeroModes: {count} eigenvalues below threshold {threshold}")]
    MultipleZeroModes { count: usize, threshold: f64 },

    #[error("EigenNoConvergence: Jacobi sweeps exhausted with off-diagonal norm {off_norm}")]
    EigenNoConvergence { off_norm: f64 },

    #[error("UnknownSpecialization: {0}")]
    UnknownSpecialization(String),

    #[error("InvalidSpecializationParameter: {0}")]
    InvalidSpecializationParameter(String),

    #[error("InadmissibleInitialMetric: {0}")]
    InadmissibleInitialMetric(String),

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    #[error("Parse: line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("Io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
