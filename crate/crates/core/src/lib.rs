//! Agreement and association estimators for 2x2 tables.
//!
//! The crate computes 23 estimators on a [`table::Table2x2`], tests each
//! against its null value ([`inference`]), and maps their behaviour over
//! every table of a given size ([`study`]).
//!
//! ```
//! use agree2x2::estimators::{estimate_all, EstimatorId};
//! use agree2x2::table::Table2x2;
//!
//! let t = Table2x2::new(90, 10, 10, 90).unwrap();
//! let e = estimate_all(&t);
//! assert!((e.get(EstimatorId::G).unwrap() - 0.8).abs() < 1e-12);
//! assert!((e.get(EstimatorId::Q).unwrap() - 0.97561).abs() < 1e-5);
//! ```

pub mod challenge;
pub mod error;
pub mod estimators;
pub mod inference;
pub mod study;
pub mod table;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/tables.md")]
    mod tables {}
    #[doc = include_str!("../../../book/src/estimators.md")]
    mod estimators {}
    #[doc = include_str!("../../../book/src/inference.md")]
    mod inference {}
    #[doc = include_str!("../../../book/src/study.md")]
    mod study {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/discrepancies.md")]
    mod discrepancies {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
