//! Exact combinatorics for set-theoretic n-simplex relations.
//!
//! The crate covers the whole pipeline from face colorings of cubes to
//! twisted solutions of the quantum tetrahedron equation:
//!
//! * [`faces`]: faces of `I^N`, incoming/outgoing classification, the face
//!   graph and the equation graph on `I^{n+1}`;
//! * [`relation`]: finite R-maps, the n-simplex check and propagation of
//!   permitted colorings;
//! * [`chain`]: boundary matrices and (co)homology ranks in the basis of
//!   absolutely incoming colorings;
//! * [`cocycle`]: multiplicative 3-cocycles with values in `Z/m`;
//! * [`electric`]: the electric map restricted to residue rings `Z/p^k`;
//! * [`quantum`]: monomial operators and the quantum tetrahedron equation.

pub mod chain;
pub mod cocycle;
pub mod electric;
pub mod error;
pub mod faces;
pub mod format;
pub mod linalg;
pub mod modular;
pub mod quantum;
pub mod relation;

pub use error::{Error, Result};

/// Colors are indices `0..m` into the color set.
pub type Color = u32;

/// Outcome of an exhaustive check: how many cases were examined and the
/// first failing case in enumeration order, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check<T> {
    pub checked: u64,
    pub counterexample: Option<T>,
}

impl<T> Check<T> {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}
