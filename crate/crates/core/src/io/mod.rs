//! Parsing, the embedded census, JSON and human-readable rendering.

pub mod census;
pub mod json;
pub mod parse;
pub mod render;

pub use census::{census_entries, census_lookup, census_names, CensusEntry, UnknownEntry};
pub use json::{gauss_poly_from_json, int_poly_from_json, poly_from_json, poly_to_json, PolyJson};
pub use parse::{parse_poly_expr, ParseError, ParseErrorKind};
pub use render::{read_trace, render_result, result_json, write_trace, Format, ResultJson};
