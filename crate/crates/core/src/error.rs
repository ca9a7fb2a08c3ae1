use crate::poset::ElementId;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {id} is out of range for a poset with {len} elements")]
    ElementOutOfRange { id: ElementId, len: usize },

    #[error("the cover relation contains a directed cycle through element {0}")]
    CycleDetected(ElementId),

    #[error("expected {expected} values, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("isomorphism search is limited to {limit} elements, got {actual}")]
    SizeLimitExceeded { limit: usize, actual: usize },

    #[error("function is not monotone: {lower} <= {upper} but h({lower}) > h({upper})")]
    NotMonotone { lower: ElementId, upper: ElementId },

    #[error("set is not a filter: it contains {lower} but not {upper} >= {lower}")]
    NotAFilter { lower: ElementId, upper: ElementId },

    #[error("function takes the negative value {value} at element {element}")]
    NegativeValues { element: ElementId, value: i64 },

    #[error("map is not order-preserving: {lower} <= {upper} but their images are not ordered")]
    NotOrderPreserving { lower: ElementId, upper: ElementId },

    #[error("map is not an endomap of a single poset")]
    NotEndomap,

    #[error("({lower}, {upper}) is not a cover pair of the poset")]
    NotACover { lower: ElementId, upper: ElementId },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("network shape with {elements} elements cannot hold {targets} targets")]
    ImpossibleShape { elements: usize, targets: usize },

    #[error("invalid network shape: {0}")]
    InvalidShape(String),
}
