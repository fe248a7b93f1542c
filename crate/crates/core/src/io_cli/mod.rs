//! Input parsing, the algebra catalog, report emitters and the command line.

pub mod algebra_file;
pub mod catalog;
pub mod cli;
pub mod expr;
pub mod report;
