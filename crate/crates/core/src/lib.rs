//! Normal forms, rewriting systems and biautomatic structures for the
//! Chinese, hypoplactic and sylvester monoids of finite rank.
//!
//! Every value is immutable once built and every operation is a pure
//! function, so everything here can be shared freely across threads.

pub mod automata;
pub mod checks;
pub mod chinese;
pub mod error;
pub mod hypoplactic;
pub mod monoid;
pub mod presentation;
pub mod rewriting;
pub mod sylvester;
pub mod words;

pub use error::{Error, Result};
pub use presentation::Presentation;
pub use rewriting::{Rule, RewritingSystem, Strategy};
pub use words::{lex_compare, Letter, MonoidId, MonoidKind, Symbol, Word};
