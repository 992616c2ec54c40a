pub mod algebra;
pub mod cli;
pub mod error;
pub use error::{Error, Result};
pub mod exact;
pub mod extcheck;
pub mod frobenius;
pub mod fsignature;
pub mod groebner;
pub mod linalg;
pub mod veronese;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/frobenius.md")]
    mod frobenius {}
    #[doc = include_str!("../../../book/src/fsignature.md")]
    mod fsignature {}
    #[doc = include_str!("../../../book/src/veronese.md")]
    mod veronese {}
    #[doc = include_str!("../../../book/src/extcheck.md")]
    mod extcheck {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/acceptance.md")]
    mod acceptance {}
}
