use thiserror::Error;

use crate::Id;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report, with the witness that triggered it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // structural input problems
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("id {id} out of range (size {size})")]
    OutOfRange { id: usize, size: usize },
    #[error("size cap exceeded: {what} has {size} > {cap}")]
    SizeCapExceeded { what: &'static str, size: usize, cap: usize },

    // inverse semigroup axioms
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(Id, Id, Id),
    #[error("element {0} has no inverse")]
    NotRegular(Id),
    #[error("idempotents {0} and {1} do not commute")]
    IdempotentsDoNotCommute(Id, Id),
    #[error("element {0} has more than one inverse")]
    NonUniqueInverse(Id),
    #[error("not a semilattice: element {0} is not idempotent or does not commute")]
    NotASemilattice(Id),
    #[error("relation is not a congruence: classes of {0} and {1} are not compatible")]
    NotACongruence(Id, Id),

    // presheaves and actions
    #[error("SA1 violated: (x{x}*{s})*{t} != x{x}*({s}{t})")]
    Sa1Violation { x: Id, s: Id, t: Id },
    #[error("SA2 violated: x{0}*p(x{0}) != x{0}")]
    Sa2Violation(Id),
    #[error("SA3 violated: p(x{x}*{s}) != {s}^-1 p(x{x}) {s}")]
    Sa3Violation { x: Id, s: Id },
    #[error("support of x{x} is {support}, which is not an idempotent")]
    SupportNotIdempotent { x: Id, support: Id },
    #[error("restriction maps not functorial at {e} >= {f} >= {g}")]
    RestrictionNotFunctorial { e: Id, f: Id, g: Id },
    #[error("not a subpresheaf: {0}")]
    NotASubpresheaf(String),
    #[error("semilattice does not match the idempotents of the acting semigroup")]
    LatticeMismatch,
    #[error("group action family not functorial: {0}")]
    NotFunctorial(String),
    #[error("congruence is not idempotent-separating: {0} ~ {1}")]
    NotIdempotentSeparating(Id, Id),
    #[error("kernel is not abelian: {0}*{1} != {1}*{0}")]
    KernelNotAbelian(Id, Id),
    #[error("map is not a section at {0}")]
    NotSection(Id),
    #[error("homomorphism precondition failed: {0}")]
    HomPreconditionFailed(String),
    #[error("action is not globally supported (idempotent {0} not in the image of p)")]
    NotGlobal(Id),

    // Munn semigroups
    #[error("generated Munn semigroup is not closed under composition ({0} * {1})")]
    ClosureViolation(Id, Id),

    // topology
    #[error("open sets missing the empty set or the whole space")]
    MissingEmptyOrFull,
    #[error("open sets not closed under union ({0:#b} | {1:#b})")]
    NotClosedUnderUnion(u32, u32),
    #[error("open sets not closed under intersection ({0:#b} & {1:#b})")]
    NotClosedUnderIntersection(u32, u32),
    #[error("space is not sober")]
    NotSober { fundamental: bool },
    #[error("bundle map is not surjective (base point {0} missed)")]
    NotSurjective(usize),
    #[error("bundle map is not continuous (preimage of base open {0:#b} is not open)")]
    NotContinuous(u32),
    #[error("bundle map is not a local homeomorphism at total point {0}")]
    NotLocalHomeo(usize),
}

impl Error {
    pub fn is_size_cap(&self) -> bool {
        matches!(self, Error::SizeCapExceeded { .. })
    }
}

pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::SizeCapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
