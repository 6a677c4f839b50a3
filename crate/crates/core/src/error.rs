//! Error types shared across the crate.

use thiserror::Error;

/// Errors arising from exact ring arithmetic and polynomial manipulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("arity mismatch: {0} variables vs {1}")]
    ArityMismatch(usize, usize),
    #[error("characteristic mismatch: {0} vs {1}")]
    CharMismatch(String, String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("zero argument not allowed here")]
    ZeroArgument,
    #[error("expected characteristic zero polynomial")]
    ExpectedCharZero,
    #[error("expected characteristic p polynomial")]
    ExpectedCharP,
    #[error("denominator index {0} out of range for denominator set of size {1}")]
    DenominatorIndex(usize, usize),
}

/// Errors from matrix-group construction and word evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator index {0} out of range ({1} generators)")]
    GeneratorIndex(usize, usize),
    #[error("generator {name} times its declared inverse is not the identity")]
    BadInverse { name: String },
    #[error("duplicate generator name {0}")]
    DuplicateName(String),
    #[error("matrix dimension mismatch")]
    Dimension,
    #[error("word is empty or evaluates to the identity")]
    TrivialWord,
    #[error("denominators of a word do not cancel into the declared product Phi^n (Phi mis-specified?)")]
    PhiCancellation,
    #[error("coefficient bound is only defined in characteristic zero")]
    CoeffBoundCharP,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Errors from the malabelian witness machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no conjugator of length <= {kappa_max} found for the given pair; malabelian hypothesis unverified at this radius")]
    MalabelianViolation { kappa_max: usize },
    #[error("input word is trivial in the group")]
    TrivialInput,
    #[error("empty word set")]
    EmptySet,
    #[error("constructed witness exceeds its stated length bound ({got} > {bound})")]
    LengthBound { got: u64, bound: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Errors from specialization into finite fields.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecializeError {
    #[error("denominator {index} of the denominator set specializes to zero (re-choose the evaluation data)")]
    DenominatorCollapse { index: usize },
    #[error("exhaustive reduction fallback exhausted; this contradicts the variable-reduction lemma and indicates an arithmetic bug")]
    ReductionExhausted,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Errors from the end-to-end separation pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparateError {
    #[error("input word evaluates to the identity; nothing to separate")]
    IdentityWord,
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Specialize(#[from] SpecializeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("element table capacity exceeded (cap {cap}); certificate remains valid")]
    Capacity { cap: usize },
    #[error("certificate record is malformed: {0}")]
    BadRecord(String),
}

/// Errors from brute-force enumeration over finite groups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("enumeration budget exceeded: {needed} tuples > budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("element table capacity exceeded (cap {cap})")]
    Capacity { cap: usize },
    #[error("no separating target in the catalog (catalog too small)")]
    NotSeparated,
    #[error("kernel orbit exceeds cap {cap}; invariant core not computed")]
    OrbitUnbounded { cap: usize },
    #[error("automorphism rule and its declared inverse do not compose to the identity")]
    BadAutRule,
    #[error("word is trivial in the free group")]
    TrivialWord,
    #[error("group not materializable: {0}")]
    NotMaterializable(String),
    #[error("invalid Lie type id: {0}")]
    BadLieType(String),
    #[error("element died in every factor of the product (impossible for a nontrivial image; internal error)")]
    DeadInAllFactors,
    #[error("degenerate input: {0}")]
    Degenerate(String),
}
