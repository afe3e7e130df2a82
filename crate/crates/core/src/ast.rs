//! Expression and declaration trees shared by all dialect front ends.
//!
//! The core intensional forms (`Id`, `Call`, `If`, `HashQuery`, `At`,
//! `Where`, `Literal`, data `UnOp`/`BinOp`) are what the evaluator
//! understands. Dialect surface forms (stream operators, arrays, embed,
//! dot-notation) parse into their own variants and are either rewritten
//! away by the translator or handled by the extended semantic rules.
//!
//! Structural equality ignores source positions and dictionary scope
//! annotations, so parse/pretty-print and serialize/deserialize round
//! trips can be compared directly.

use std::fmt;

use crate::value::Value;

/// Source position (1-based line and column) within the original file.
#[derive(Debug, Clone, Copy, Default, Eq, PartialEq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Data unary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnOp {
    Not,
    Neg,
    Iseod,
}

impl UnOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            UnOp::Not => "!",
            UnOp::Neg => "-",
            UnOp::Iseod => "iseod",
        }
    }
}

/// Data binary operators, conventional precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Lt,
    Gt,
    Le,
    Ge,
    Eq,
    Ne,
    And,
    Or,
    BitAnd,
    BitOr,
}

impl BinOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "%",
            BinOp::Lt => "<",
            BinOp::Gt => ">",
            BinOp::Le => "<=",
            BinOp::Ge => ">=",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::And => "&&",
            BinOp::Or => "||",
            BinOp::BitAnd => "&",
            BinOp::BitOr => "|",
        }
    }
}

/// Intensional unary stream operators; the optional dimension records
/// the `.d` qualifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamUnOp {
    First,
    Next,
    Prev,
}

impl StreamUnOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            StreamUnOp::First => "first",
            StreamUnOp::Next => "next",
            StreamUnOp::Prev => "prev",
        }
    }
}

/// Intensional binary stream operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamBinOp {
    Fby,
    Wvr,
    Asa,
    Upon,
}

impl StreamBinOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            StreamBinOp::Fby => "fby",
            StreamBinOp::Wvr => "wvr",
            StreamBinOp::Asa => "asa",
            StreamBinOp::Upon => "upon",
        }
    }
}

/// An expression node. `pos` and `scope` are carried alongside the kind
/// and excluded from structural equality; `scope` is filled in by
/// semantic analysis with the dictionary scope the node's identifier
/// resolved in.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
    pub scope: Option<u32>,
}

#[derive(Debug, Clone)]
pub enum ExprKind {
    Id(String),
    Literal(Value),
    Call(Box<Expr>, Vec<Expr>),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    /// `# E`: query the current context at the dimension E names.
    HashQuery(Box<Expr>),
    /// `E @ E' E''`: evaluate body with the context overridden at
    /// dimension E' to tag E''. Always three children after parsing.
    At(Box<Expr>, Box<Expr>, Box<Expr>),
    /// Placeholder dimension for the two-operand `@ (E)` concrete forms;
    /// the translator resolves it to the unique dimension in scope.
    ImpliedDim,
    Where(Box<Expr>, Vec<Decl>),
    UnOp(UnOp, Box<Expr>),
    BinOp(BinOp, Box<Expr>, Box<Expr>),
    StreamUn(StreamUnOp, Option<String>, Box<Expr>),
    StreamBin(StreamBinOp, Option<String>, Box<Expr>, Box<Expr>),
    ArrayLit(Vec<Expr>),
    Index(Box<Expr>, Vec<Expr>),
    DotField(Box<Expr>, String),
    DotCall(Box<Expr>, String, Vec<Expr>),
    EmbedRef {
        uri: String,
        method: String,
        args: Vec<Expr>,
    },
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Self {
        Expr {
            kind,
            pos,
            scope: None,
        }
    }

    pub fn id(name: impl Into<String>, pos: Pos) -> Self {
        Expr::new(ExprKind::Id(name.into()), pos)
    }

    pub fn lit(value: Value, pos: Pos) -> Self {
        Expr::new(ExprKind::Literal(value), pos)
    }

    pub fn int(v: i64, pos: Pos) -> Self {
        Expr::lit(Value::Int(v), pos)
    }

    /// Walks the tree, calling `f` on every expression node.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match &self.kind {
            ExprKind::Id(_) | ExprKind::Literal(_) | ExprKind::ImpliedDim => {}
            ExprKind::Call(callee, args) => {
                callee.walk(f);
                args.iter().for_each(|a| a.walk(f));
            }
            ExprKind::If(c, t, e) => {
                c.walk(f);
                t.walk(f);
                e.walk(f);
            }
            ExprKind::HashQuery(e) | ExprKind::UnOp(_, e) | ExprKind::StreamUn(_, _, e) => {
                e.walk(f)
            }
            ExprKind::At(b, d, t) => {
                b.walk(f);
                d.walk(f);
                t.walk(f);
            }
            ExprKind::Where(body, decls) => {
                body.walk(f);
                decls.iter().for_each(|d| d.walk(f));
            }
            ExprKind::BinOp(_, l, r) | ExprKind::StreamBin(_, _, l, r) => {
                l.walk(f);
                r.walk(f);
            }
            ExprKind::ArrayLit(items) => items.iter().for_each(|e| e.walk(f)),
            ExprKind::Index(arr, idx) => {
                arr.walk(f);
                idx.iter().for_each(|e| e.walk(f));
            }
            ExprKind::DotField(obj, _) => obj.walk(f),
            ExprKind::DotCall(obj, _, args) => {
                obj.walk(f);
                args.iter().for_each(|a| a.walk(f));
            }
            ExprKind::EmbedRef { args, .. } => args.iter().for_each(|a| a.walk(f)),
        }
    }

    /// True if any dialect stream operator or implied-dimension marker
    /// remains anywhere in the tree.
    pub fn has_surface_ops(&self) -> bool {
        let mut found = false;
        self.walk(&mut |e| {
            if matches!(
                e.kind,
                ExprKind::StreamUn(..) | ExprKind::StreamBin(..) | ExprKind::ImpliedDim
            ) {
                found = true;
            }
        });
        found
    }
}

/// A declaration inside a `where` clause (or the implicit top level).
#[derive(Debug, Clone)]
pub struct Decl {
    pub kind: DeclKind,
    pub pos: Pos,
}

#[derive(Debug, Clone)]
pub enum DeclKind {
    /// `dimension a, b;`
    Dimension(Vec<String>),
    /// `id = E;`
    Var(String, Expr),
    /// `id(f1,...,fn) = E;`
    Func(String, Vec<String>, Expr),
    /// `id[E,...] = E;` — array-element definition; parsed, rejected at
    /// analysis.
    VarIndexed(String, Vec<Expr>, Expr),
    /// `id.d1,...,dn(f1,...,fm) = E;` — dimension-subscripted function;
    /// parsed, rejected at analysis.
    SubscriptedFunc(String, Vec<String>, Vec<String>, Expr),
    /// `E.id = E;` — member assignment; parsed, rejected at analysis.
    MemberAssign(Expr, String, Expr),
    /// A bare `E;` inside a declaration list; parsed, rejected at
    /// analysis.
    ExprStmt(Expr),
    /// A naked `where Q end;` inside a declaration list; its decls are
    /// spliced into the enclosing scope.
    WhereBlock(Vec<Decl>),
}

impl Decl {
    pub fn new(kind: DeclKind, pos: Pos) -> Self {
        Decl { kind, pos }
    }

    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        match &self.kind {
            DeclKind::Dimension(_) => {}
            DeclKind::Var(_, e) | DeclKind::Func(_, _, e) | DeclKind::ExprStmt(e) => e.walk(f),
            DeclKind::VarIndexed(_, idx, e) => {
                idx.iter().for_each(|i| i.walk(f));
                e.walk(f);
            }
            DeclKind::SubscriptedFunc(_, _, _, e) => e.walk(f),
            DeclKind::MemberAssign(lhs, _, rhs) => {
                lhs.walk(f);
                rhs.walk(f);
            }
            DeclKind::WhereBlock(decls) => decls.iter().for_each(|d| d.walk(f)),
        }
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl PartialEq for Decl {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl PartialEq for ExprKind {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (self, other) {
            (Id(a), Id(b)) => a == b,
            (Literal(a), Literal(b)) => a == b,
            (Call(c1, a1), Call(c2, a2)) => c1 == c2 && a1 == a2,
            (If(c1, t1, e1), If(c2, t2, e2)) => c1 == c2 && t1 == t2 && e1 == e2,
            (HashQuery(a), HashQuery(b)) => a == b,
            (At(b1, d1, t1), At(b2, d2, t2)) => b1 == b2 && d1 == d2 && t1 == t2,
            (ImpliedDim, ImpliedDim) => true,
            (Where(b1, q1), Where(b2, q2)) => b1 == b2 && q1 == q2,
            (UnOp(o1, e1), UnOp(o2, e2)) => o1 == o2 && e1 == e2,
            (BinOp(o1, l1, r1), BinOp(o2, l2, r2)) => o1 == o2 && l1 == l2 && r1 == r2,
            (StreamUn(o1, d1, e1), StreamUn(o2, d2, e2)) => o1 == o2 && d1 == d2 && e1 == e2,
            (StreamBin(o1, d1, l1, r1), StreamBin(o2, d2, l2, r2)) => {
                o1 == o2 && d1 == d2 && l1 == l2 && r1 == r2
            }
            (ArrayLit(a), ArrayLit(b)) => a == b,
            (Index(a1, i1), Index(a2, i2)) => a1 == a2 && i1 == i2,
            (DotField(o1, f1), DotField(o2, f2)) => o1 == o2 && f1 == f2,
            (DotCall(o1, m1, a1), DotCall(o2, m2, a2)) => o1 == o2 && m1 == m2 && a1 == a2,
            (
                EmbedRef {
                    uri: u1,
                    method: m1,
                    args: a1,
                },
                EmbedRef {
                    uri: u2,
                    method: m2,
                    args: a2,
                },
            ) => u1 == u2 && m1 == m2 && a1 == a2,
            _ => false,
        }
    }
}

impl PartialEq for DeclKind {
    fn eq(&self, other: &Self) -> bool {
        use DeclKind::*;
        match (self, other) {
            (Dimension(a), Dimension(b)) => a == b,
            (Var(n1, e1), Var(n2, e2)) => n1 == n2 && e1 == e2,
            (Func(n1, f1, e1), Func(n2, f2, e2)) => n1 == n2 && f1 == f2 && e1 == e2,
            (VarIndexed(n1, i1, e1), VarIndexed(n2, i2, e2)) => n1 == n2 && i1 == i2 && e1 == e2,
            (SubscriptedFunc(n1, d1, f1, e1), SubscriptedFunc(n2, d2, f2, e2)) => {
                n1 == n2 && d1 == d2 && f1 == f2 && e1 == e2
            }
            (MemberAssign(l1, f1, r1), MemberAssign(l2, f2, r2)) => {
                l1 == l2 && f1 == f2 && r1 == r2
            }
            (ExprStmt(a), ExprStmt(b)) => a == b,
            (WhereBlock(a), WhereBlock(b)) => a == b,
            _ => false,
        }
    }
}
