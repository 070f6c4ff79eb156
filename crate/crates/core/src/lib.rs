//! Exact computations with unit integral quadratic forms and the graded
//! nilpotent Lie algebras attached to them.
//!
//! * [`form`]: forms, bigraphs, positivity tests;
//! * [`roots`]: positive roots, Weyl chains, root sequences;
//! * [`free_lie`]: the free Lie algebra in the tensor algebra, homogeneous
//!   ideals and graded quotient dimensions;
//! * [`relations`]: the relation sets `r`, `r0`, `r1`, `r2`, `p`, `j`;
//! * [`verify`]: machine-checkable reports on the structural identities;
//! * [`cli`]: the `liequad` command-line front end.
//!
//! ```
//! use liequad::{free_lie, relations, roots, UnitForm};
//!
//! let q: UnitForm = "n 3\na 1 2 -1\na 2 3 -1\n".parse()?;
//! let r = relations::gen_r(&q)?;
//! let dims = free_lie::lie_algebra(&q, &r)?;
//! assert_eq!(dims.total(), roots::positive_roots(&q, roots::DEFAULT_ROOT_CAP)?.len() as u64);
//! # Ok::<(), liequad::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod form;
pub mod free_lie;
pub mod relations;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
pub use form::{IntVector, UnitForm};
pub use free_lie::{Multibracket, TensorPoly};
pub use relations::{RelationSet, Tag};
