use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed presentation spec: {0}")]
    MalformedSpec(String),
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("elements belong to different presentations")]
    PresentationMismatch,
    #[error("{what} has order p^{log_order}, above the cap p^{cap}")]
    CapExceeded {
        what: String,
        log_order: u32,
        cap: u32,
    },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not 2-generated (generator rank {0})")]
    NotTwoGenerated(usize),
    #[error("commutator quotient is not of type C(3^e) x C3 with e >= 2: {0}")]
    WrongAbelianization(String),
    #[error("transfer kernel matches none of the coded subgroups: {0}")]
    UncodedKernel(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("step size {step} exceeds nuclear rank {nuclear_rank}")]
    StepTooLarge { step: u32, nuclear_rank: u32 },
    #[error("selector {0} matches more than one descendant")]
    AmbiguousSelector(String),
    #[error("selector {0} matches no descendant")]
    NoMatch(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
