use thiserror::Error;

use crate::numerics::Representation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("expected a field in {expected:?} representation, got {found:?}")]
    Representation {
        expected: Representation,
        found: Representation,
    },
    #[error("field length {len} does not match grid size {n}")]
    Length { len: usize, n: usize },
    #[error("field is not normalized (norm² = {0})")]
    Unnormalized(f64),
    #[error("moments are inconsistent: Δ_min² = {0} < 0")]
    InconsistentMoments(f64),
    #[error("not applicable: {0}")]
    Inapplicable(String),
}
