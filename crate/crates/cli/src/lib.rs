//! Library surface of the command-line tool: problem-spec parsing and
//! output helpers, shared with the integration tests.

pub mod output;
pub mod spec;
