use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::GroupTag;

/// Errors raised by the exact and numeric evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator must be non-zero")]
    ZeroDenominator,

    #[error("modulus c must be positive, got {0}")]
    NonPositiveModulus(BigInt),

    #[error("arguments must be coprime, got d = {d}, c = {c}")]
    NotCoprime { d: BigInt, c: BigInt },

    #[error("S(d, c) needs c + d odd (theta group), got d = {d}, c = {c}")]
    ThetaParity { d: BigInt, c: BigInt },

    #[error("S4(d, c) needs d odd (group Gamma^0(2)), got d = {d}, c = {c}")]
    Gamma02Parity { d: BigInt, c: BigInt },

    #[error("matrix is not in {0}")]
    NotInGroup(GroupTag),

    #[error("matrix entries do not have determinant 1")]
    NotUnimodular,

    #[error("malformed continued fraction: {0}")]
    MalformedExpansion(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("logarithm branch is ambiguous: {0}")]
    BranchAmbiguity(String),

    #[error("series truncation too short: {0}")]
    Convergence(String),

    #[error("word outside the supported shape: {0}")]
    UnsupportedWord(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
