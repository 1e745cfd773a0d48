use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field of order {p}^{m} is outside the supported range (at most 2^16 elements)")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("modulus {0:?} is not a monic degree-m polynomial with coefficients below p")]
    BadModulus(Vec<u32>),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("the root of modulus {0:?} is not a primitive element")]
    NotPrimitive(Vec<u32>),
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("tower {q}^{s} does not match a field of order {order}")]
    BadTower { q: u32, s: u32, order: u32 },
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("point {0} is not on the curve")]
    OffCurve(String),
    #[error("unsupported ordering: {0}")]
    UnsupportedOrdering(String),
    #[error("gamma {gamma} out of range (need 0 < gamma < {n})")]
    GammaOutOfRange { gamma: usize, n: usize },
    #[error("columns {0:?} do not form an information set")]
    NotInformationSet(Vec<usize>),
    #[error("expected {expected} positions, got {got}")]
    Cardinality { expected: usize, got: usize },
    #[error("gamma {gamma} does not fit the orbit-prefix forms: {detail}")]
    InadmissibleGamma { gamma: usize, detail: String },
    #[error("no systematic form installed on this code")]
    NoSystematicForm,
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("automorphism sends an affine point to the point at infinity")]
    MovesToInfinity,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("brute force over {0} codewords is infeasible")]
    TooLarge(String),
    #[error("PD set construction failed: {0}")]
    PdSet(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str) -> Self {
        Error::Parse {
            what,
            input: input.chars().take(64).collect(),
        }
    }
}
