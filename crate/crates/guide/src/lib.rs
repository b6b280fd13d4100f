//! Doc-test harness for the book.
//!
//! mdBook renders `book/src`, but it cannot run the Rust snippets in the
//! chapters as tests. This crate includes each chapter as module
//! documentation, so `cargo test -p stable-forms-guide --doc` compiles and
//! runs every code block, keeping the book in sync with the library. One
//! module per chapter, so a failing doctest names its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/scalars-and-forms.md")]
pub mod scalars_and_forms {}

#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}

#[doc = include_str!("../../../book/src/hyperplanes.md")]
pub mod hyperplanes {}

#[doc = include_str!("../../../book/src/extension-sets.md")]
pub mod extension_sets {}

#[doc = include_str!("../../../book/src/volumes.md")]
pub mod volumes {}

#[doc = include_str!("../../../book/src/catalog.md")]
pub mod catalog {}

#[doc = include_str!("../../../book/src/cochain-splittings.md")]
pub mod cochain_splittings {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
