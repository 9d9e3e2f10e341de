//! Doc-test shim for the guide in `book/`.
//!
//! mdbook renders the chapters but does not run their Rust snippets against
//! this workspace's crates. Including each chapter as a doc comment makes
//! `cargo test --doc` compile and execute every code block, so the guide and
//! the library cannot drift apart. One module per chapter keeps test
//! failures attributable to a file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/judgment-matrices.md")]
pub mod judgment_matrices {}

#[doc = include_str!("../../../book/src/classic-methods.md")]
pub mod classic_methods {}

#[doc = include_str!("../../../book/src/reference-rankings.md")]
pub mod reference_rankings {}

#[doc = include_str!("../../../book/src/geometric-solver.md")]
pub mod geometric_solver {}

#[doc = include_str!("../../../book/src/optimality.md")]
pub mod optimality {}

#[doc = include_str!("../../../book/src/simulation.md")]
pub mod simulation {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
