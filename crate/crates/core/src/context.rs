//! Evaluation contexts: the point `P` at which an expression is demanded.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// A dimension index. Tags are plain signed 64-bit integers; arithmetic
/// that would overflow is reported by the evaluator, never wrapped.
pub type Tag = i64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("unbound dimension: {0}")]
    UnboundDimension(String),
}

/// A finite map from dimension names to tags. Contexts are value-semantic:
/// `with_tag` returns a new context and leaves the receiver untouched, so
/// one context can be shared freely across concurrent demands.
///
/// The map is kept sorted so that rendering and warehouse keying never
/// depend on binding insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    bindings: BTreeMap<String, Tag>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    /// Builds a context from (dimension, tag) pairs; later pairs win.
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, Tag)>,
        S: Into<String>,
    {
        let mut ctx = Context::new();
        for (d, t) in pairs {
            ctx.bindings.insert(d.into(), t);
        }
        ctx
    }

    /// Functional override: the result binds `dim` to `tag`, all other
    /// bindings are those of `self`. `dim` need not be bound already.
    pub fn with_tag(&self, dim: &str, tag: Tag) -> Context {
        let mut next = self.clone();
        next.bindings.insert(dim.to_string(), tag);
        next
    }

    /// Looks up the tag for a dimension; an unbound dimension is an error,
    /// never a default.
    pub fn tag(&self, dim: &str) -> Result<Tag, ContextError> {
        self.bindings
            .get(dim)
            .copied()
            .ok_or_else(|| ContextError::UnboundDimension(dim.to_string()))
    }

    pub fn is_bound(&self, dim: &str) -> bool {
        self.bindings.contains_key(dim)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Bindings in dimension-name order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Tag)> {
        self.bindings.iter().map(|(d, t)| (d.as_str(), *t))
    }

    /// Canonical form used as a warehouse key component: a sorted
    /// (dimension, tag) list, so binding order can never split cache
    /// entries.
    pub fn canonical(&self) -> Vec<(String, Tag)> {
        self.bindings.iter().map(|(d, t)| (d.clone(), *t)).collect()
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{t}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn override_replaces_single_binding() {
        let p = Context::from_pairs([("d", 0)]);
        assert_eq!(p.with_tag("d", 2), Context::from_pairs([("d", 2)]));
    }

    #[test]
    fn override_introduces_unbound_dimension() {
        let p = Context::new();
        assert_eq!(p.with_tag("d", 5), Context::from_pairs([("d", 5)]));
    }

    #[test]
    fn override_leaves_other_bindings_and_original_intact() {
        let p = Context::from_pairs([("d", 1), ("e", 7)]);
        let q = p.with_tag("d", 3);
        assert_eq!(q, Context::from_pairs([("d", 3), ("e", 7)]));
        assert_eq!(p, Context::from_pairs([("d", 1), ("e", 7)]));
    }

    #[test]
    fn query_returns_bound_tag() {
        let p = Context::from_pairs([("d", 5)]);
        assert_eq!(p.tag("d"), Ok(5));
        let p0 = Context::from_pairs([("d", 0)]);
        assert_eq!(p0.tag("d"), Ok(0));
    }

    #[test]
    fn query_of_unbound_dimension_errors() {
        let p = Context::from_pairs([("d", 1)]);
        assert_eq!(
            p.tag("e"),
            Err(ContextError::UnboundDimension("e".to_string()))
        );
    }

    proptest! {
        // Final bindings equal the last override per dimension, regardless
        // of the override order for other dimensions.
        #[test]
        fn override_is_right_biased(ops in proptest::collection::vec(("[abc]", -8i64..8), 0..24)) {
            let mut ctx = Context::new();
            let mut model: std::collections::BTreeMap<String, i64> = Default::default();
            for (d, t) in &ops {
                ctx = ctx.with_tag(d, *t);
                model.insert(d.clone(), *t);
            }
            for (d, t) in &model {
                prop_assert_eq!(ctx.tag(d), Ok(*t));
            }
            prop_assert_eq!(ctx.len(), model.len());
        }
    }
}
