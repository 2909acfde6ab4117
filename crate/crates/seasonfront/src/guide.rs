//! Compiles the book's code blocks as doctests, keeping the guide and the
//! library in sync (`cargo test --doc` runs every snippet).

#[doc = include_str!("../../../book/src/model.md")]
pub mod model {}

#[doc = include_str!("../../../book/src/eigenvalue.md")]
pub mod eigenvalue {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/simulation.md")]
pub mod simulation {}

#[doc = include_str!("../../../book/src/periodic.md")]
pub mod periodic {}

#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
