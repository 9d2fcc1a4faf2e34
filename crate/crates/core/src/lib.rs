//! Exact-arithmetic toolkit for computing inhomogeneous minima of indefinite
//! binary quadratic expressions with the divided cell algorithm.
//!
//! The crate is organized around a scalar type [`Surd`] for elements of a real
//! quadratic field, on top of which sit:
//!
//! * [`homogeneous`] — indefinite binary quadratic forms as 2x2 surd matrices,
//!   Gauss reduction, the two-sided chain of reduced matrices, Markoff values
//!   and Lagrange sequences;
//! * [`inhomogeneous`] — divided cells, inner boxes, the divided cell step and
//!   its successor enumeration, neighbor cells, anchors of superfluous cells,
//!   and chain-position comparison;
//! * [`oracle`] — deliberately simple brute-force ground truth: windowed
//!   lattice minima, the basic and extended partial orders, line maxima;
//! * [`figures`] — deterministic SVG rendering of lattices, cells and boxes;
//! * [`sampling`] — seeded generators for property tests.
//!
//! Everything outside of figure quantization is computed exactly; there is no
//! floating point in any predicate.

pub mod exactnum;
pub mod figures;
pub mod homogeneous;
pub mod inhomogeneous;
pub mod oracle;
pub mod sampling;

pub use exactnum::{NumError, ParseSurdError, Rational, Surd};
pub use homogeneous::{Extended, HomChainStep, HomError, HomForm, LagrangeStep, MarkoffResult};
pub use inhomogeneous::{
    Cell, CellClass, ChainRecord, DividedCell, InhomError, InitialCell, InnerBox, StepChoice,
};
pub use oracle::{OracleError, OrderKind, OrderRelation, Window};
