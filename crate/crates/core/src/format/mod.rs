pub mod json;
pub mod mlc;

pub use mlc::{parse_loop, print_loop};
