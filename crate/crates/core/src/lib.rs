//! Shared data model for the intensional-programming toolchain.
//!
//! Everything here is immutable after construction and cheap to clone:
//! evaluation contexts (dimension -> tag maps), runtime values, the
//! expression/declaration AST shared by every dialect, the scoped
//! definition dictionary, and the GIPSY type system with its
//! host-boundary matching table.

pub mod ast;
pub mod context;
pub mod dict;
pub mod pretty;
pub mod types;
pub mod value;

pub use ast::{BinOp, Decl, DeclKind, Expr, ExprKind, Pos, StreamBinOp, StreamUnOp, UnOp};
pub use context::{Context, ContextError, Tag};
pub use dict::{DictEntry, Dictionary, Prototype, Scope, ScopeId, GLOBAL_SCOPE};
pub use types::{type_match, Direction, GipsyType, TypeMatchError};
pub use value::{RecordValue, Value};
