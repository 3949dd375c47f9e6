use thiserror::Error;

use crate::group::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: exponent {exponent} out of range [0, {prime})")]
    ExponentOutOfRange { line: usize, exponent: u32, prime: u32 },
    #[error("line {line}: weighting violation: {message}")]
    Weighting { line: usize, message: String },
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("missing '{0} =' header")]
    MissingHeader(&'static str),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcError {
    #[error("group order {prime}^{exponent} exceeds the cap of {cap} elements")]
    CapExceeded { prime: u32, exponent: usize, cap: usize },
    #[error("inconsistent presentation: overlap {overlap} collects to {left} and {right}")]
    Inconsistent { overlap: String, left: String, right: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("subgroup is not normal: conjugate of {element} by {by} leaves it")]
    NotNormal { element: Elem, by: Elem },
    #[error("{what} needs order at most p^{cap_exponent}, got order {order}")]
    CapExceeded { what: &'static str, order: usize, cap_exponent: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordError {
    #[error("element {0} is not in the span of the basis")]
    NotInSpan(Elem),
    #[error("basis is not an independent set of commuting elements of order p")]
    DependentBasis,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("the group is abelian")]
    Abelian,
    #[error("conjugation action depends on the transversal for generator {0}")]
    InconsistentAction(usize),
    #[error("action of generator {0} is not invertible on A")]
    SingularAction(usize),
    #[error("generator images do not satisfy the extension conditions")]
    NotADerivation,
    #[error("element {0} is not in Z(Phi(G))")]
    NotInZPhi(Elem),
    #[error("element {0} is not in A* = Omega1*(G) ∩ Z(Phi(G))")]
    NotInAStar(Elem),
    #[error("constraint hypothesis fails: [C, x_{0}] is not contained in D")]
    ConstraintHypothesis(usize),
    #[error("{0}")]
    Coordinates(#[from] CoordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomorphismError {
    #[error("map is not a bijection")]
    NotBijective,
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(Elem, Elem),
    #[error("wrong number of generator images: {0}")]
    WrongArity(usize),
    #[error("image {0} is not an element of the group")]
    BadImage(Elem),
    #[error("case-b construction needs p = 3, d(G) = 2, class 3 and cyclic center: {0}")]
    CaseBPrecondition(String),
    #[error("brute-force search needs a non-abelian group")]
    Abelian,
    #[error("brute-force search cap exceeded: {0}")]
    CapExceeded(String),
    #[error("{0}")]
    Derivation(#[from] DerivationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("the group is abelian")]
    Abelian,
    #[error("group order {order} exceeds the analysis cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Automorphism(#[from] AutomorphismError),
}

/// A certificate check that did not pass, named by the field or property it covers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate check '{check}' failed: {detail}")]
pub struct VerifyError {
    pub check: String,
    pub detail: String,
}

impl VerifyError {
    pub fn new(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { check: check.into(), detail: detail.into() }
    }
}

/// Umbrella error for callers that mix stages (CLI, corpus loading).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Pc(#[from] PcError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Other(String),
}
