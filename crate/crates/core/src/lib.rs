//! Finite abelian heaps and trusses.
//!
//! Every carrier is `{0, .., n-1}`. Heaps are stored through their retract
//! group at base `0`; trusses add a multiplication table on top. On this
//! foundation the crate checks the axioms of every structure it builds,
//! searches Rota-Baxter type operators exhaustively, constructs the derived
//! (dendriform, tridendriform, NS, di- and tri-) structures those operators
//! induce, and classifies truss products on small heaps up to isomorphism.
//!
//! Parametric truss families on the integers are covered by [`zfamilies`],
//! which verifies the axioms over bounded windows.

pub mod classify;
pub mod error;
pub mod fixtures;
pub mod heap;
pub mod json;
pub mod limits;
pub mod operators;
pub mod products;
pub mod report;
pub mod structures;
pub mod table;
pub mod truss;
pub mod zfamilies;

pub use classify::{canonical_form, census, enumerate_truss_products, isomorphism, CanonicalForm, CensusReport};
pub use error::{Error, Result};
pub use heap::{FiniteHeap, TernaryTable};
pub use limits::Limits;
pub use operators::{check_operator, search_operators, CheckReport, EndoMap, Failure, OperatorKind};
pub use report::{ValidationReport, Violation};
pub use structures::{SplitKind, SplitStructure, Side};
pub use table::Table;
pub use truss::{AbsorberSet, FiniteRing, FiniteTruss};
