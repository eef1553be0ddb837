//! Presentation-file front end for the operad Gröbner basis engine.

pub mod commands;
pub mod format;
pub mod syntax;

pub use format::{format_element, format_presentation, format_result};
pub use syntax::{parse_element, parse_monomial, parse_presentation, ParseError, PresentationFile};
