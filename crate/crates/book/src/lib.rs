// mdbook cannot build snippets against a local crate, so each chapter is
// pulled in as the docs of an empty module and `cargo test` runs it as a
// doc-test. One module per chapter keeps failures traceable to a file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/majorization.md")]
pub mod majorization {}
#[doc = include_str!("../../../book/src/flow.md")]
pub mod flow {}
#[doc = include_str!("../../../book/src/entropies.md")]
pub mod entropies {}
#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}
#[doc = include_str!("../../../book/src/quantum.md")]
pub mod quantum {}
#[doc = include_str!("../../../book/src/distinct.md")]
pub mod distinct {}
#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
