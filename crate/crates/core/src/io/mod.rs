//! Line-oriented model files and CSV output.
//!
//! ```text
//! levels 2
//! ham 1 2 2.5                # c0; value = c0 + c1*x
//! ham 2 2 0:-0.5 -1          # complex literal re:im
//! src 1 2 1
//! sweep delta -100 100 401
//! observe pop 2
//! ```

mod builtin;
mod csv;
mod model;
mod parse;
mod serialize;

pub use builtin::{builtin, builtin_names, rb87_model, BUILTIN_LAMBDA3, BUILTIN_RB87, BUILTIN_TWO_LEVEL};
pub use csv::{emit_csv, emit_csv_keyed, Column, ColumnKind, SweepResult, Value};
pub use model::{instantiate, Linear, ModelFile, Observable, Sweep};
pub use parse::{parse_model, Diagnostic, DiagnosticKind, ParseErrors};
pub use serialize::serialize_model;
