//! Finite stuquandles, stuck-link colorings and the stuquandle and
//! substuquandle polynomial invariants.
//!
//! ```
//! use stuquandle::{affine_stuquandle, stqp, AffineParams};
//!
//! let x = affine_stuquandle(&AffineParams { n: 4, a: 3, b: 2, e: 2 }).unwrap();
//! assert_eq!(stqp(&x).to_string(), "4*s1^2*t1^2*s2*t2*s3^4*t3^4*s4^2*t4^2*s5*t5");
//! ```

pub mod algebra;
pub mod catalog;
pub mod formats;
pub mod polynomial;
pub mod presentation;
pub mod rna;

pub use algebra::{
    affine_stuquandle, alexander_stuquandle, build_stuquandle, is_homomorphism, is_isomorphic, is_substuquandle,
    substuquandle_closure, AffineParams, AlexanderParams, AlgebraError, Axiom, Element, FiniteStuquandle, Op,
    OperationTable, Subset,
};
pub use catalog::{check, fixture, list_fixtures, CatalogError, Fixture};
pub use polynomial::{
    element_profile, quandle_polynomial, sstqp, stqp, ElementProfile, Monomial10, PhiMultiset, Polynomial10,
    QuandlePolynomial,
};
pub use presentation::{
    add_kink, compare, compile, coloring_image, counting_invariant, enumerate_colorings, enumerate_colorings_jobs,
    phi_invariant, Coloring, CompareReport, Crossing, CrossingDiagram, Presentation, Relation, Sign, Verdict,
};
pub use rna::{folding_invariant, self_closure, transform_t, ArcDiagram, FoldingInvariantReport, RnaError};
