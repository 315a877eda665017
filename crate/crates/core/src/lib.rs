//! Exact Clifford-algebra representations, even Clifford structures,
//! model curvature operators and the classification tables built on them.

pub mod blade;
pub mod classify;
pub mod curvature;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod models;
pub mod rational;
pub mod report;
pub mod sample;
pub mod spin;
pub mod structure;
pub mod suite;
pub mod triality;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use rational::Rational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/blades.md")]
    mod blades {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/structures.md")]
    mod structures {}
    #[doc = include_str!("../../../book/src/curvature.md")]
    mod curvature {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
