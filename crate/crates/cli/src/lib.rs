//! Library side of the `steenrod` command: the element grammar, structured
//! dumps, verification suites and command dispatch.

pub mod app;
pub mod grammar;
pub mod structured;
pub mod verify;

pub use app::{exit_code, run, Outcome};
pub use grammar::{parse_classical, parse_dual, parse_op, Mode, ParseError};
