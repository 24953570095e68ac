// Evaluation results carry values in both variants (`Flow::Return` is
// the UseMethod/return control path, not an error); boxing them would
// add indirection to every expression for no measured benefit.
#![allow(clippy::result_large_err)]

pub mod ast;
pub mod builtins;
pub mod dispatch;
pub mod env;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod printer;
pub mod summary;
pub mod table;
pub mod value;

pub use eval::Session;
pub use value::Value;
