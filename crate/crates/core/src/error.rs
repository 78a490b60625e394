use thiserror::Error;

/// Errors raised by the operator, determinant, Fock, groupoid and
/// cohomology layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid order {0}: must be at least 1")]
    InvalidOrder(f64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("symmetry violation: {what} off by {violation:.3e}")]
    Symmetry { what: &'static str, violation: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("series diverges: spectral radius {0:.6} is not below 1")]
    Divergence(f64),

    #[error("determinant vanishes: |det| = {0:.3e}")]
    SingularDeterminant(f64),

    #[error("transformation is singular: |det| = {0:.3e}")]
    SingularTransform(f64),

    #[error("frame leaves the big cell: |det w+| = {0:.3e}")]
    ChartSingularity(f64),

    #[error("size out of range: {0}")]
    Size(String),

    #[error("Schwinger residue is not scalar: off-scalar part {0:.3e}")]
    Scalarness(f64),

    #[error("background has an eigenvalue within the spectral margin of zero: {0:.3e}")]
    Gap(f64),

    #[error("level {level} is within the spectral margin of eigenvalue {eigenvalue}")]
    CoverMembership { level: f64, eigenvalue: f64 },

    #[error("action axiom violated: {0}")]
    ActionAxiom(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("central extension ill-defined: cocycle violation {0:.3e}")]
    ExtensionIllDefined(f64),

    #[error(
        "descent condition fails at charts ({alpha},{alpha2}),({beta},{beta2}),({gamma},{gamma2}) \
         for f={f}, g={g}, object={object}"
    )]
    Descent {
        alpha: usize,
        alpha2: usize,
        beta: usize,
        beta2: usize,
        gamma: usize,
        gamma2: usize,
        f: usize,
        g: usize,
        object: usize,
    },

    #[error("local cocycle condition fails: {0}")]
    Cocycle(String),

    #[error("cocycle callable failed: {0}")]
    Callable(String),

    #[error("capacity exceeded: {0} cells")]
    Capacity(usize),

    #[error("coboundary requested at degree {degree} but nerve stops at {p_max}")]
    DegreeOverflow { degree: usize, p_max: usize },

    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
