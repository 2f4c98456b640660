//! Command-line front end: expression parsing, field selection, command
//! dispatch and JSON output.

pub mod format;
pub mod parse;
pub mod run;

pub use format::{format_poly, format_poly_vars, format_terms_xyz, format_uni};
pub use parse::{parse_expr, parse_poly, parse_poly_with, PolyExpr};
pub use run::{error_json, exit_code, parse_field_spec, run, Command, RunConfig};
