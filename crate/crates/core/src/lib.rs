//! Exact homological algebra over finite-dimensional bound quiver algebras.

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod criteria;
pub mod error;
pub mod homalg;
pub mod io;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    pub mod algebras {}
    #[doc = include_str!("../../../book/src/modules.md")]
    pub mod modules {}
    #[doc = include_str!("../../../book/src/homological.md")]
    pub mod homological {}
    #[doc = include_str!("../../../book/src/tilting.md")]
    pub mod tilting {}
    #[doc = include_str!("../../../book/src/criteria.md")]
    pub mod criteria {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    pub mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
