//! Command-line front end, JSON output and a multi-threaded oracle for
//! [`matdioph_core`].

pub mod cli;
pub mod json;
pub mod parallel;
