use thiserror::Error;

/// Errors surfaced by the simulation and validation operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix entries must be finite (found NaN or infinity)")]
    NonFiniteEntry,

    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },

    #[error("dimension {n} exceeds the supported bound {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("unitarity residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    NotUnitary { residual: f64, tol: f64 },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("photon count mismatch: input carries {input}, output carries {output}")]
    PhotonCountMismatch { input: usize, output: usize },

    #[error("interference cutoff {cutoff} exceeds photon count {n}")]
    CutoffTooLarge { cutoff: usize, n: usize },

    #[error("enumeration bound exceeded: C({m},{n}) = {count} > {bound}")]
    EnumerationBound {
        m: usize,
        n: usize,
        count: u64,
        bound: u64,
    },

    #[error(
        "imaginary residue {residue:.3e} of the permutation sum exceeds {tol:.1e}; \
         this signals a kernel bug"
    )]
    ImaginaryResidue { residue: f64, tol: f64 },

    #[error(
        "probability {value:.3e} below the rounding floor for an exact law; \
         this signals a kernel bug"
    )]
    NegativeProbability { value: f64 },

    #[error(
        "clamped {clamped} of {total} probabilities under an exact law, \
         above the {limit:.2}% bug guard"
    )]
    ClampBreach {
        clamped: usize,
        total: usize,
        limit: f64,
    },

    #[error("collision-free mass {mass:.6e} outside (0, 1]")]
    MassOutOfRange { mass: f64 },

    #[error("distribution table is empty")]
    EmptyTable,

    #[error("event pool holds {pool} events, fewer than the {needed} requested")]
    PoolTooSmall { pool: usize, needed: usize },

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("need at least {needed} distinct events to place {k} centroids, found {distinct}")]
    TooFewDistinctEvents {
        distinct: usize,
        k: usize,
        needed: usize,
    },

    #[error("chi-squared table needs k >= 2 clusters, got {k}")]
    TooFewClusters { k: usize },

    #[error("chi-squared column {column} sums to zero")]
    ZeroColumnSum { column: usize },

    #[error("need at least {needed} values, got {got}")]
    TooFewValues { needed: usize, got: usize },

    #[error("degenerate ensemble: {0}")]
    DegenerateEnsemble(String),

    #[error("no pattern falls in the requested distance shell")]
    EmptyShell,

    #[error("tables disagree on (m, n): ({m1}, {n1}) vs ({m2}, {n2})")]
    TableMismatch {
        m1: usize,
        n1: usize,
        m2: usize,
        n2: usize,
    },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
