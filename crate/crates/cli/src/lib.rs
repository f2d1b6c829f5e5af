//! Library surface of the experiment runner, so integration tests can drive
//! commands in-process. The `bosonfide` binary is a thin wrapper over this.

pub mod commands;
pub mod config;
pub mod report;

pub use config::ExperimentConfig;

/// Exit code classification: configuration problems exit 2, numerical
/// invariant failures exit 3, everything else (I/O) exits 1.
pub fn exit_code_for(err: &bosonfide::Error) -> u8 {
    use bosonfide::Error::*;
    match err {
        Parse(_) | InvalidPattern(_) | CutoffTooLarge { .. } | EnumerationBound { .. }
        | DimensionTooLarge { .. } | PhotonCountMismatch { .. } | TooFewClusters { .. }
        | PoolTooSmall { .. } | TooFewDistinctEvents { .. } | TableMismatch { .. }
        | LengthMismatch { .. } | TooFewValues { .. } | EmptyTable | EmptyShell => 2,
        ImaginaryResidue { .. } | NegativeProbability { .. } | ClampBreach { .. }
        | MassOutOfRange { .. } | NotUnitary { .. } | NonFiniteEntry | NonSquare { .. }
        | ShapeMismatch { .. } | ZeroColumnSum { .. } | DegenerateEnsemble(_) => 3,
        Io(_) | Json(_) => 1,
    }
}
