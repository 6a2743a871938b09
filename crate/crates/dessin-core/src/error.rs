//! Error type shared by the whole crate.

use alloc::string::String;
use core::fmt;

use crate::label::ElementLabel;

/// Everything that can go wrong when building or analyzing permutation pairs.
///
/// Structural problems (bad text, non-bijective data, mismatched ground sets)
/// and domain violations (asking for an arc between elements of different
/// orbits) are separate variants so callers can map them to different exit
/// codes. Library code never panics on any input reachable through parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A ground set must contain at least one element.
    EmptyGround,
    /// The same element was listed twice (in a ground set or a cycle list).
    Duplicate(ElementLabel),
    /// The element is not a member of the relevant ground set.
    NotInGround(ElementLabel),
    /// Two permutations that must share a ground set do not.
    GroundMismatch,
    /// The two marked elements of an operation must be distinct.
    SameElement(ElementLabel),
    /// The two elements lie in different orbits, so no connecting sequence exists.
    DifferentOrbits(ElementLabel, ElementLabel),
    /// An edge cannot be deleted from a one-edge pair.
    LastEdge,
    /// A claimed product-sequence is empty or its steps do not follow the product.
    BadSequence,
    /// The requested subset is not invariant under both permutations.
    NotInvariant(ElementLabel),
    /// A mentioned element exceeds the declared degree.
    DegreeExceeded { element: u32, degree: u32 },
    /// The operation is defined only on the plain ground set `{1, .., n}`.
    NonStandardGround,
    /// Cycle-notation text could not be parsed; `at` is a byte offset.
    Parse { at: usize, msg: String },
    /// The enumeration degree is outside the supported range.
    DegreeOutOfRange { degree: u32, min: u32, max: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyGround => write!(f, "ground set is empty"),
            Error::Duplicate(e) => write!(f, "duplicate element {e}"),
            Error::NotInGround(e) => write!(f, "element {e} is not in the ground set"),
            Error::GroundMismatch => write!(f, "permutations act on different ground sets"),
            Error::SameElement(e) => write!(f, "marked elements must be distinct, both are {e}"),
            Error::DifferentOrbits(x, y) => {
                write!(f, "elements {x} and {y} lie in different orbits")
            }
            Error::LastEdge => write!(f, "cannot delete the last remaining edge"),
            Error::BadSequence => write!(f, "not a valid product-sequence"),
            Error::NotInvariant(e) => {
                write!(f, "subset is not closed under the pair, image of {e} escapes")
            }
            Error::DegreeExceeded { element, degree } => {
                write!(f, "element {element} exceeds declared degree {degree}")
            }
            Error::NonStandardGround => {
                write!(f, "operation needs the plain ground set {{1, .., n}}")
            }
            Error::Parse { at, msg } => write!(f, "parse error at byte {at}: {msg}"),
            Error::DegreeOutOfRange { degree, min, max } => {
                write!(f, "degree {degree} is outside the supported range {min}..={max}")
            }
        }
    }
}

impl core::error::Error for Error {}
