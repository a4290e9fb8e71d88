use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sublattice is not contained in the given superlattice")]
    NotSublattice,
    #[error("generated group exceeds the configured cap of {cap} elements")]
    SizeBound { cap: usize },
    #[error("Cartan matrix of a component matches no finite type")]
    UnknownDiagram,
    #[error("functional vanishes on root {root:?}")]
    NotGeneric { root: Vec<i64> },
    #[error("all weights are zero on a torus of positive rank")]
    ZeroTorus,
    #[error("search exceeded configured bounds: {0}")]
    CapExceeded(String),
    #[error("action is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("prime {0} is ramified in the descriptor")]
    Ramified(u64),
    #[error("prime {0} is below 5")]
    SmallPrime(u64),
    #[error("factors are defined over different primes")]
    MixedPrime,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
