//! File formats, command-line space expressions and artifact checking.

pub mod certify;
pub mod dot;
pub mod expr;
pub mod json;

pub use certify::{certify, CertifyError, CertifyOptions, Certified};
pub use dot::to_dot;
pub use expr::{load_space, parse_space_expr, ExprError};
pub use json::{
    parse_space, read_space_file, space_to_string, to_json_line, ExplorationJson, FenceJson,
    ReportJson, SpaceFileError, SpaceJson,
};
