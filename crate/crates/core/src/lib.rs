//! Minimal free resolutions of unimodular Lawrence ideals.
//!
//! A unimodular lattice `L ⊂ Z^n` determines the Lawrence ideal `J_L` in the
//! polynomial ring on `x_1..x_n, y_1..y_n`. Its minimal free resolution is
//! supported on the quotient of a periodic hyperplane arrangement by `L`,
//! and this crate builds that resolution explicitly, together with the
//! resolutions of its initial ideals and of its fiber ideals.

pub mod arrangement;
pub mod complex;
pub mod error;
pub mod graphs;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod resolution;
pub mod specializations;

pub use arrangement::{Arrangement, Covector, Limits, QuotientComplex, Sign, SignVector};
pub use complex::{Cell, LabeledComplex, PolyMatrix};
pub use error::{Error, Result};
pub use graphs::{complete_graph, Digraph, OrderedPartition};
pub use lattice::{Binomial, Circuit, Lattice, LatticeVector};
pub use linalg::{IntMatrix, RatMatrix};
pub use poly::{Monomial, Poly};
pub use resolution::{build_resolution, Convention, Degree};
pub use specializations::{FiberBuilder, FiberComplex, WeightOrder};
