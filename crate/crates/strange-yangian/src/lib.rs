//! Exact workbench for the twisted current bisuperalgebra of the strange
//! Lie superalgebra and its Yangian presentation.
//!
//! Everything here is exact rational arithmetic: matrices over `Q`, sparse
//! polynomials in `(u, v, w, h)`, graded tensors with Koszul signs, and
//! rational-function tensors whose identities are decided by clearing
//! denominators. There are no tolerances anywhere; every verified identity
//! is an equality of canonical forms.
//!
//! The guide under `book/` walks through the mathematics chapter by
//! chapter; the snippets there are mirrored as doc-tests in this crate.
//!
//! A taste of the library:
//!
//! ```
//! use strange_yangian::supermodel::{build_generators, ModelConfig};
//!
//! let cfg = ModelConfig::new(2).unwrap();
//! let gens = build_generators(cfg).unwrap();
//! // [x+_1, x-_1] = h_1 in the matrix model.
//! let bracket = gens.x_plus[0].fixed.bracket(&gens.x_minus[0].fixed);
//! assert_eq!(bracket, gens.h[0].fixed);
//! ```

pub mod cli;
pub mod currents;
pub mod formdual;
pub mod gradedtensor;
pub mod hopfaudit;
pub mod linalg;
pub mod report;
pub mod rmatrixlab;
pub mod scalars;
pub mod supermodel;
