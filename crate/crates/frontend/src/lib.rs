//! Front end: tokenizing and parsing the Lucid dialects and the
//! segmented hybrid-program grammar.

pub mod lexer;
pub mod parser;
pub mod segments;

use gipsy_core::Pos;
use thiserror::Error;

/// Which dialect a segment is parsed as. The generic core (GIPL) treats
/// the stream-operator words as ordinary identifiers; the other dialects
/// reserve them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    Gipl,
    Indexical,
    JLucid,
    Objective,
}

impl Dialect {
    pub fn stream_ops(&self) -> bool {
        !matches!(self, Dialect::Gipl)
    }

    /// Maps a segment LANGID to the dialect that compiles it.
    pub fn from_lang_id(lang_id: &str) -> Option<Dialect> {
        match lang_id {
            "GIPL" => Some(Dialect::Gipl),
            "INDEXICALLUCID" => Some(Dialect::Indexical),
            "JLUCID" => Some(Dialect::JLucid),
            "OBJECTIVELUCID" => Some(Dialect::Objective),
            _ => None,
        }
    }

    pub fn lang_id(&self) -> &'static str {
        match self {
            Dialect::Gipl => "GIPL",
            Dialect::Indexical => "INDEXICALLUCID",
            Dialect::JLucid => "JLUCID",
            Dialect::Objective => "OBJECTIVELUCID",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrontendError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("invalid segment: #{0}")]
    InvalidSegment(String),
    #[error("duplicate prototype: {0}")]
    DuplicatePrototype(String),
    #[error("duplicate type declaration: {0}")]
    DuplicateTypeDecl(String),
}

impl FrontendError {
    pub fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        FrontendError::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}

pub use parser::{parse_gipl, parse_indexical, parse_program};
pub use segments::{
    build_stub_dictionary, parse_funcdecls, parse_segments, Segment, SegmentOptions,
    SegmentedProgram,
};
