//! Compiles the guide's code blocks as doc-tests, so `cargo test` keeps the
//! book honest. One module per chapter to make failures easier to place.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/moments.md")]
pub mod moments {}
#[doc = include_str!("../../../book/src/weingarten.md")]
pub mod weingarten {}
#[doc = include_str!("../../../book/src/matchings.md")]
pub mod matchings {}
#[doc = include_str!("../../../book/src/optimizer.md")]
pub mod optimizer {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
