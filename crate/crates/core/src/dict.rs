//! The definition environment: classified identifier entries in a tree
//! of lexical scopes.

use std::collections::BTreeMap;

use crate::ast::Expr;
use crate::types::GipsyType;

pub type ScopeId = u32;

/// The global scope every program shares; it holds imperative stubs,
/// linked host bindings, class entries, and builtin operators.
pub const GLOBAL_SCOPE: ScopeId = 0;

/// A function prototype from a `#funcdecl` (or `#NATIVE`) segment.
#[derive(Debug, Clone, PartialEq)]
pub struct Prototype {
    pub name: String,
    pub immutable: bool,
    pub return_type: GipsyType,
    pub return_is_array: bool,
    pub param_types: Vec<(GipsyType, bool)>,
    /// `: LANGID : URI [: remote-name]` binding, when declared.
    pub embed: Option<EmbedBinding>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbedBinding {
    pub lang_id: String,
    pub uri: String,
    pub remote_name: Option<String>,
}

impl Prototype {
    pub fn new(name: impl Into<String>, params: Vec<GipsyType>, ret: GipsyType) -> Self {
        Prototype {
            name: name.into(),
            immutable: false,
            return_type: ret,
            return_is_array: false,
            param_types: params.into_iter().map(|t| (t, false)).collect(),
            embed: None,
        }
    }

    pub fn immutable(mut self) -> Self {
        self.immutable = true;
        self
    }
}

/// One classified dictionary entry.
#[derive(Debug, Clone, PartialEq)]
pub enum DictEntry {
    Const(crate::value::Value),
    /// A builtin operator, stored by symbol.
    Op(String),
    Dim,
    Func {
        formals: Vec<String>,
        body: Expr,
    },
    Var(Expr),
    /// An imperative stub: a declared host function, with the concrete
    /// binding name filled in at link time.
    FreeFun {
        proto: Prototype,
        binding: Option<String>,
    },
    /// A declared user type; linked to a registry record type by name.
    Class {
        name: String,
        linked: bool,
    },
    /// Denormalized record member: `cid.cvid`.
    ClassVar {
        owner: String,
        field: String,
        ty: GipsyType,
    },
    /// Denormalized record method: `cid.cfid`.
    ClassFun {
        owner: String,
        method: String,
        proto: Prototype,
    },
}

impl DictEntry {
    pub fn kind_name(&self) -> &'static str {
        match self {
            DictEntry::Const(_) => "const",
            DictEntry::Op(_) => "op",
            DictEntry::Dim => "dim",
            DictEntry::Func { .. } => "func",
            DictEntry::Var(_) => "var",
            DictEntry::FreeFun { .. } => "freefun",
            DictEntry::Class { .. } => "class",
            DictEntry::ClassVar { .. } => "classv",
            DictEntry::ClassFun { .. } => "classf",
        }
    }
}

/// One lexical scope.
#[derive(Debug, Clone, PartialEq)]
pub struct Scope {
    pub id: ScopeId,
    pub parent: Option<ScopeId>,
    /// Scopes introduced by a where-clause inside a function body are
    /// instantiated per call site by substitution, so their variables
    /// must not be warehoused under the static scope id.
    pub in_function_body: bool,
    pub entries: BTreeMap<String, DictEntry>,
}

impl Scope {
    pub fn new(id: ScopeId, parent: Option<ScopeId>) -> Self {
        Scope {
            id,
            parent,
            in_function_body: false,
            entries: BTreeMap::new(),
        }
    }
}

/// The dictionary: a tree of scopes addressed by id. Scope 0 is the
/// global scope. Lookup walks a scope chain innermost-to-outermost;
/// extension creates new scopes and never mutates enclosing ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    scopes: Vec<Scope>,
}

impl Default for Dictionary {
    fn default() -> Self {
        Dictionary::new()
    }
}

impl Dictionary {
    pub fn new() -> Self {
        Dictionary {
            scopes: vec![Scope::new(GLOBAL_SCOPE, None)],
        }
    }

    pub fn scopes(&self) -> &[Scope] {
        &self.scopes
    }

    pub fn scope(&self, id: ScopeId) -> Option<&Scope> {
        self.scopes.iter().find(|s| s.id == id)
    }

    pub fn scope_mut(&mut self, id: ScopeId) -> Option<&mut Scope> {
        self.scopes.iter_mut().find(|s| s.id == id)
    }

    /// Allocates a fresh child scope and returns its id.
    pub fn push_scope(&mut self, parent: ScopeId, in_function_body: bool) -> ScopeId {
        let id = self.scopes.iter().map(|s| s.id).max().unwrap_or(0) + 1;
        let mut scope = Scope::new(id, Some(parent));
        scope.in_function_body = in_function_body;
        self.scopes.push(scope);
        id
    }

    /// Re-adds a deserialized scope verbatim.
    pub fn insert_scope(&mut self, scope: Scope) {
        if let Some(existing) = self.scopes.iter_mut().find(|s| s.id == scope.id) {
            *existing = scope;
        } else {
            self.scopes.push(scope);
        }
    }

    pub fn define(&mut self, scope: ScopeId, name: impl Into<String>, entry: DictEntry) {
        if let Some(s) = self.scope_mut(scope) {
            s.entries.insert(name.into(), entry);
        }
    }

    /// Entry for `name` in exactly the given scope.
    pub fn entry_in(&self, scope: ScopeId, name: &str) -> Option<&DictEntry> {
        self.scope(scope)?.entries.get(name)
    }

    /// Walks from `scope` outwards and returns the first entry for
    /// `name` along with the scope it was found in.
    pub fn lookup(&self, scope: ScopeId, name: &str) -> Option<(ScopeId, &DictEntry)> {
        let mut cur = Some(scope);
        while let Some(id) = cur {
            let s = self.scope(id)?;
            if let Some(entry) = s.entries.get(name) {
                return Some((id, entry));
            }
            cur = s.parent;
        }
        None
    }

    /// Dimension names visible from `scope`, innermost first.
    pub fn dims_in_scope(&self, scope: ScopeId) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = Some(scope);
        while let Some(id) = cur {
            let Some(s) = self.scope(id) else { break };
            for (name, entry) in &s.entries {
                if matches!(entry, DictEntry::Dim) && !out.contains(name) {
                    out.push(name.clone());
                }
            }
            cur = s.parent;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::Value;

    #[test]
    fn inner_scopes_shadow_outer_and_popping_restores() {
        let mut d = Dictionary::new();
        d.define(GLOBAL_SCOPE, "x", DictEntry::Const(Value::Int(1)));
        let inner = d.push_scope(GLOBAL_SCOPE, false);
        d.define(inner, "x", DictEntry::Const(Value::Int(2)));

        let (scope, entry) = d.lookup(inner, "x").unwrap();
        assert_eq!(scope, inner);
        assert_eq!(entry, &DictEntry::Const(Value::Int(2)));

        // The "popped" view is simply a lookup from the outer scope; the
        // enclosing scope was never mutated.
        let (scope, entry) = d.lookup(GLOBAL_SCOPE, "x").unwrap();
        assert_eq!(scope, GLOBAL_SCOPE);
        assert_eq!(entry, &DictEntry::Const(Value::Int(1)));
    }

    #[test]
    fn lookup_walks_to_outer_scope() {
        let mut d = Dictionary::new();
        d.define(GLOBAL_SCOPE, "y", DictEntry::Dim);
        let inner = d.push_scope(GLOBAL_SCOPE, false);
        assert_eq!(d.lookup(inner, "y").map(|(s, _)| s), Some(GLOBAL_SCOPE));
        assert!(d.lookup(inner, "z").is_none());
    }
}
