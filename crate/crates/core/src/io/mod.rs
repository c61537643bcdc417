//! External formats. Main-branch positions are 1-indexed everywhere.

mod dot;
mod gitscript;
mod json;

pub use dot::{edges, serialize_dot, serialize_edges};
pub use gitscript::{emit_git_script, parse_commit_log, ScriptError};
pub use json::{parse_json, serialize_json, JsonError};
