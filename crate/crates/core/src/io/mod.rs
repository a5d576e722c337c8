//! Interchange formats, weave generators and rendering.

mod document;
mod generators;
mod render;

pub use document::{parse_matrix, parse_text, serialize_text, WeaveDocument, FORMAT_TAG};
pub use generators::{plain, satin, twill};
pub use render::{render, RenderStyle};
