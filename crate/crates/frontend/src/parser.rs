//! Recursive-descent parser for the Lucid dialects.
//!
//! Precedence, loosest to tightest: where clauses; fby/wvr/asa/upon
//! (right-associative); `||`; `|`; `&&`; `&`; relational; additive;
//! multiplicative; unary (including first/next/prev); `@`; `#`; then
//! call/index/dot postfix. Inside parentheses a bare `=` is accepted as
//! equality (several thesis-era listings use it); at statement level it
//! separates a definition's left side from its body.

use gipsy_core::ast::{BinOp, Decl, DeclKind, Expr, ExprKind, StreamBinOp, StreamUnOp, UnOp};
use gipsy_core::{Pos, Value};

use crate::lexer::{tokenize, TokKind, Token};
use crate::{Dialect, FrontendError};

/// Words with fixed meaning in every dialect.
const RESERVED: &[&str] = &[
    "if",
    "then",
    "else",
    "fi",
    "where",
    "end",
    "dimension",
    "embed",
    "iseod",
    "true",
    "false",
];

/// Additionally reserved when the dialect has stream operators.
const STREAM_WORDS: &[&str] = &["first", "next", "prev", "fby", "wvr", "asa", "upon"];

/// Parses one GIPL segment.
pub fn parse_gipl(segment: &str) -> Result<Expr, FrontendError> {
    parse_program(segment, Dialect::Gipl, 0)
}

/// Parses one Indexical Lucid (or superset dialect) segment.
pub fn parse_indexical(segment: &str) -> Result<Expr, FrontendError> {
    parse_program(segment, Dialect::Indexical, 0)
}

/// Parses one intensional segment, reporting positions relative to the
/// original file via `line_offset`.
pub fn parse_program(segment: &str, dialect: Dialect, line_offset: u32) -> Result<Expr, FrontendError> {
    let toks = tokenize(segment, line_offset)?;
    let mut p = Parser {
        toks,
        i: 0,
        dialect,
        depth: 0,
    };
    let expr = p.parse_top()?;
    p.expect_eof()?;
    Ok(expr)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    dialect: Dialect,
    /// Parenthesis/bracket nesting; `=` reads as equality when positive.
    depth: u32,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.i.min(self.toks.len() - 1)]
    }

    fn peek2(&self) -> &Token {
        &self.toks[(self.i + 1).min(self.toks.len() - 1)]
    }

    fn pos(&self) -> Pos {
        self.peek().pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i.min(self.toks.len() - 1)].clone();
        if self.i < self.toks.len() - 1 {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokKind) -> bool {
        if &self.peek().kind == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokKind) -> Result<Token, FrontendError> {
        if &self.peek().kind == &kind {
            Ok(self.bump())
        } else {
            Err(self.err(format!(
                "expected {}, found {}",
                kind.describe(),
                self.peek().kind.describe()
            )))
        }
    }

    fn err(&self, msg: impl Into<String>) -> FrontendError {
        FrontendError::syntax(self.pos(), msg)
    }

    fn is_reserved(&self, name: &str) -> bool {
        RESERVED.contains(&name)
            || (self.dialect.stream_ops() && STREAM_WORDS.contains(&name))
    }

    /// The current token, if it is a plain (non-reserved) identifier.
    fn peek_plain_id(&self) -> Option<&str> {
        match &self.peek().kind {
            TokKind::Id(name) if !self.is_reserved(name) => Some(name),
            _ => None,
        }
    }

    fn peek_kw(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokKind::Id(name) if name == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.peek_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), FrontendError> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.err(format!(
                "expected `{kw}`, found {}",
                self.peek().kind.describe()
            )))
        }
    }

    fn expect_eof(&mut self) -> Result<(), FrontendError> {
        self.eat(&TokKind::Semi);
        if matches!(self.peek().kind, TokKind::Eof) {
            Ok(())
        } else {
            Err(self.err(format!(
                "expected end of segment, found {}",
                self.peek().kind.describe()
            )))
        }
    }

    fn expect_plain_id(&mut self) -> Result<(String, Pos), FrontendError> {
        let pos = self.pos();
        match self.peek().kind.clone() {
            TokKind::Id(name) if !self.is_reserved(&name) => {
                self.bump();
                Ok((name, pos))
            }
            other => Err(FrontendError::syntax(
                pos,
                format!("expected identifier, found {}", other.describe()),
            )),
        }
    }

    /// Does the current token begin an expression?
    fn at_expr_start(&self) -> bool {
        match &self.peek().kind {
            TokKind::Int(_) | TokKind::Float(_) | TokKind::Str(_) => true,
            TokKind::LParen | TokKind::LBracket | TokKind::Hash => true,
            TokKind::Bang | TokKind::Minus => true,
            TokKind::Id(name) => {
                !self.is_reserved(name)
                    || name == "if"
                    || name == "embed"
                    || name == "iseod"
                    || name == "true"
                    || name == "false"
                    || (self.dialect.stream_ops()
                        && matches!(name.as_str(), "first" | "next" | "prev"))
            }
            _ => false,
        }
    }

    /// Can the current token begin an `@` tag operand (hash level)?
    fn at_tag_start(&self) -> bool {
        match &self.peek().kind {
            TokKind::Int(_) | TokKind::Float(_) | TokKind::Str(_) => true,
            TokKind::LParen | TokKind::LBracket | TokKind::Hash => true,
            TokKind::Id(name) => {
                !self.is_reserved(name)
                    || name == "if"
                    || name == "embed"
                    || name == "true"
                    || name == "false"
            }
            _ => false,
        }
    }

    // ---- top level ----------------------------------------------------

    /// A segment is an expression, optionally with trailing where-style
    /// declarations; a segment consisting only of declarations denotes
    /// the first-defined identifier evaluated under them.
    fn parse_top(&mut self) -> Result<Expr, FrontendError> {
        let start = self.pos();
        let first = self.parse_expr()?;
        if matches!(self.peek().kind, TokKind::Assign)
            || (self.decl_continues() && !matches!(self.peek().kind, TokKind::Eof))
        {
            // Declaration-only segment: `life = ... ;  f(x) = ...;`
            let mut decls = Vec::new();
            let first_decl = self.finish_decl_from_expr(first)?;
            let result_name = decl_result_name(&first_decl).ok_or_else(|| {
                FrontendError::syntax(start, "top-level declaration defines no identifier")
            })?;
            decls.push(first_decl);
            while !matches!(self.peek().kind, TokKind::Eof) {
                if self.eat(&TokKind::Semi) {
                    continue;
                }
                decls.push(self.parse_decl()?);
            }
            return Ok(Expr::new(
                ExprKind::Where(Box::new(Expr::id(result_name, start)), decls),
                start,
            ));
        }
        Ok(first)
    }

    /// After a complete expression at statement level: does a definition
    /// plausibly follow? (Used only where the grammar allows implicit
    /// definitions.)
    fn decl_continues(&self) -> bool {
        self.peek_kw("dimension") || self.peek_plain_id().is_some()
    }

    // ---- declarations ---------------------------------------------------

    /// Parses the declaration list of a where clause, up to `end`.
    fn parse_decls_until_end(&mut self) -> Result<Vec<Decl>, FrontendError> {
        let mut decls = Vec::new();
        loop {
            if self.peek_kw("end") {
                self.bump();
                break;
            }
            if matches!(self.peek().kind, TokKind::Eof) {
                return Err(self.err("expected `end` to close where clause"));
            }
            decls.push(self.parse_decl()?);
        }
        if decls.is_empty() {
            return Err(self.err("where clause has no declarations"));
        }
        Ok(decls)
    }

    fn parse_decl(&mut self) -> Result<Decl, FrontendError> {
        let pos = self.pos();
        if self.eat_kw("dimension") {
            let mut names = vec![self.expect_plain_id()?.0];
            while self.eat(&TokKind::Comma) {
                names.push(self.expect_plain_id()?.0);
            }
            self.expect(TokKind::Semi)?;
            return Ok(Decl::new(DeclKind::Dimension(names), pos));
        }
        if self.peek_kw("where") {
            // Naked `where Q end;` inside a declaration list.
            self.bump();
            let decls = self.parse_decls_until_end()?;
            self.eat(&TokKind::Semi);
            return Ok(Decl::new(DeclKind::WhereBlock(decls), pos));
        }
        if let Some(decl) = self.try_subscripted_func()? {
            return Ok(decl);
        }
        let lhs = self.parse_expr()?;
        self.finish_decl_from_expr(lhs)
    }

    /// `id.d1,...,dn(f1,...,fm) = E;` needs lookahead past the comma
    /// list, which no expression form can produce.
    fn try_subscripted_func(&mut self) -> Result<Option<Decl>, FrontendError> {
        let save = self.i;
        let pos = self.pos();
        let parse = |p: &mut Parser| -> Result<Decl, FrontendError> {
            let (name, _) = p.expect_plain_id()?;
            p.expect(TokKind::Dot)?;
            let mut dims = vec![p.expect_plain_id()?.0];
            while matches!(p.peek().kind, TokKind::Comma) {
                p.bump();
                dims.push(p.expect_plain_id()?.0);
            }
            if dims.len() < 2 && !matches!(p.peek().kind, TokKind::LParen) {
                return Err(p.err("not a subscripted function"));
            }
            p.expect(TokKind::LParen)?;
            let mut formals = Vec::new();
            if !matches!(p.peek().kind, TokKind::RParen) {
                formals.push(p.expect_plain_id()?.0);
                while p.eat(&TokKind::Comma) {
                    formals.push(p.expect_plain_id()?.0);
                }
            }
            p.expect(TokKind::RParen)?;
            p.expect(TokKind::Assign)?;
            let body = p.parse_expr()?;
            p.expect(TokKind::Semi)?;
            Ok(Decl::new(DeclKind::SubscriptedFunc(name, dims, formals, body), pos))
        };
        // Only commit when the comma-separated subscript form is present;
        // a plain `a.b(...)` is member-call syntax handled elsewhere.
        let looks_subscripted = {
            let mut j = self.i;
            let id = matches!(self.toks.get(j).map(|t| &t.kind), Some(TokKind::Id(n)) if !self.is_reserved(n));
            j += 1;
            id && matches!(self.toks.get(j).map(|t| &t.kind), Some(TokKind::Dot)) && {
                j += 1;
                matches!(self.toks.get(j).map(|t| &t.kind), Some(TokKind::Id(_))) && {
                    j += 1;
                    matches!(self.toks.get(j).map(|t| &t.kind), Some(TokKind::Comma))
                }
            }
        };
        if !looks_subscripted {
            return Ok(None);
        }
        match parse(self) {
            Ok(d) => Ok(Some(d)),
            Err(_) => {
                self.i = save;
                Ok(None)
            }
        }
    }

    /// The expression-first half of declaration parsing: `lhs` has been
    /// parsed; decide between a definition and a bare expression
    /// statement.
    fn finish_decl_from_expr(&mut self, lhs: Expr) -> Result<Decl, FrontendError> {
        let pos = lhs.pos;
        if self.eat(&TokKind::Assign) {
            let rhs = self.parse_expr()?;
            self.expect(TokKind::Semi)?;
            return match lhs.kind {
                ExprKind::Id(name) => Ok(Decl::new(DeclKind::Var(name, rhs), pos)),
                ExprKind::Call(callee, args) => {
                    let name = match callee.kind {
                        ExprKind::Id(name) => name,
                        _ => {
                            return Err(FrontendError::syntax(
                                pos,
                                "function definition requires a plain name",
                            ))
                        }
                    };
                    let mut formals = Vec::new();
                    for a in args {
                        match a.kind {
                            ExprKind::Id(n) => formals.push(n),
                            _ => {
                                return Err(FrontendError::syntax(
                                    a.pos,
                                    "formal parameters must be identifiers",
                                ))
                            }
                        }
                    }
                    Ok(Decl::new(DeclKind::Func(name, formals, rhs), pos))
                }
                ExprKind::Index(arr, idx) => match arr.kind {
                    ExprKind::Id(name) => Ok(Decl::new(DeclKind::VarIndexed(name, idx, rhs), pos)),
                    _ => Err(FrontendError::syntax(
                        pos,
                        "array-element definition requires a plain name",
                    )),
                },
                ExprKind::DotField(obj, field) => {
                    Ok(Decl::new(DeclKind::MemberAssign(*obj, field, rhs), pos))
                }
                _ => Err(FrontendError::syntax(pos, "bad definition left-hand side")),
            };
        }
        self.expect(TokKind::Semi)?;
        Ok(Decl::new(DeclKind::ExprStmt(lhs), pos))
    }

    // ---- expressions ----------------------------------------------------

    /// Full expression: stream level plus any trailing where clauses.
    fn parse_expr(&mut self) -> Result<Expr, FrontendError> {
        let mut e = self.parse_stream()?;
        while self.peek_kw("where") {
            let pos = self.pos();
            self.bump();
            let decls = self.parse_decls_until_end()?;
            e = Expr::new(ExprKind::Where(Box::new(e), decls), pos);
        }
        Ok(e)
    }

    fn parse_stream(&mut self) -> Result<Expr, FrontendError> {
        let left = self.parse_binary(0)?;
        if self.dialect.stream_ops() {
            if let TokKind::Id(name) = &self.peek().kind {
                let op = match name.as_str() {
                    "fby" => Some(StreamBinOp::Fby),
                    "wvr" => Some(StreamBinOp::Wvr),
                    "asa" => Some(StreamBinOp::Asa),
                    "upon" => Some(StreamBinOp::Upon),
                    _ => None,
                };
                if let Some(op) = op {
                    let pos = self.pos();
                    self.bump();
                    let dim = if self.eat(&TokKind::Dot) {
                        Some(self.expect_plain_id()?.0)
                    } else {
                        None
                    };
                    let right = self.parse_stream()?;
                    return Ok(Expr::new(
                        ExprKind::StreamBin(op, dim, Box::new(left), Box::new(right)),
                        pos,
                    ));
                }
            }
        }
        Ok(left)
    }

    /// Binary operators by precedence-climbing over the data-op tiers.
    fn parse_binary(&mut self, tier: u8) -> Result<Expr, FrontendError> {
        const TIERS: usize = 7;
        if tier as usize >= TIERS {
            return self.parse_unary();
        }
        let mut left = self.parse_binary(tier + 1)?;
        loop {
            let op = match (tier, &self.peek().kind) {
                (0, TokKind::OrOr) => BinOp::Or,
                (1, TokKind::Pipe) => BinOp::BitOr,
                (2, TokKind::AndAnd) => BinOp::And,
                (3, TokKind::Amp) => BinOp::BitAnd,
                (4, TokKind::Lt) => BinOp::Lt,
                (4, TokKind::Gt) => BinOp::Gt,
                (4, TokKind::Le) => BinOp::Le,
                (4, TokKind::Ge) => BinOp::Ge,
                (4, TokKind::EqEq) => BinOp::Eq,
                (4, TokKind::Ne) => BinOp::Ne,
                (4, TokKind::Assign) if self.depth > 0 => BinOp::Eq,
                (5, TokKind::Plus) => BinOp::Add,
                (5, TokKind::Minus) => BinOp::Sub,
                (6, TokKind::Star) => BinOp::Mul,
                (6, TokKind::Slash) => BinOp::Div,
                (6, TokKind::Percent) => BinOp::Mod,
                _ => break,
            };
            let pos = self.pos();
            self.bump();
            let right = self.parse_binary(tier + 1)?;
            left = Expr::new(ExprKind::BinOp(op, Box::new(left), Box::new(right)), pos);
        }
        Ok(left)
    }

    fn parse_unary(&mut self) -> Result<Expr, FrontendError> {
        let pos = self.pos();
        match &self.peek().kind {
            TokKind::Bang => {
                self.bump();
                let e = self.parse_unary()?;
                return Ok(Expr::new(ExprKind::UnOp(UnOp::Not, Box::new(e)), pos));
            }
            TokKind::Minus => {
                self.bump();
                let e = self.parse_unary()?;
                return Ok(Expr::new(ExprKind::UnOp(UnOp::Neg, Box::new(e)), pos));
            }
            TokKind::Id(name) if name == "iseod" => {
                self.bump();
                let e = self.parse_unary()?;
                return Ok(Expr::new(ExprKind::UnOp(UnOp::Iseod, Box::new(e)), pos));
            }
            TokKind::Id(name) if self.dialect.stream_ops() => {
                let op = match name.as_str() {
                    "first" => Some(StreamUnOp::First),
                    "next" => Some(StreamUnOp::Next),
                    "prev" => Some(StreamUnOp::Prev),
                    _ => None,
                };
                if let Some(op) = op {
                    self.bump();
                    let dim = if self.eat(&TokKind::Dot) {
                        Some(self.expect_plain_id()?.0)
                    } else {
                        None
                    };
                    let e = self.parse_unary()?;
                    return Ok(Expr::new(
                        ExprKind::StreamUn(op, dim, Box::new(e)),
                        pos,
                    ));
                }
            }
            _ => {}
        }
        self.parse_at()
    }

    fn parse_at(&mut self) -> Result<Expr, FrontendError> {
        let mut e = self.parse_hash()?;
        while matches!(self.peek().kind, TokKind::At) {
            let pos = self.pos();
            self.bump();
            if self.eat(&TokKind::LBracket) {
                // E @ [E:E]
                self.depth += 1;
                let dim = self.parse_expr()?;
                self.expect(TokKind::Colon)?;
                let tag = self.parse_expr()?;
                self.depth -= 1;
                self.expect(TokKind::RBracket)?;
                e = Expr::new(
                    ExprKind::At(Box::new(e), Box::new(dim), Box::new(tag)),
                    pos,
                );
                continue;
            }
            self.eat(&TokKind::Dot);
            let (dim, dim_parenthesized) = if let Some(_) = self.peek_plain_id() {
                let (name, dpos) = self.expect_plain_id()?;
                (Expr::id(name, dpos), false)
            } else if matches!(self.peek().kind, TokKind::LParen) {
                self.bump();
                self.depth += 1;
                let d = self.parse_expr()?;
                self.depth -= 1;
                self.expect(TokKind::RParen)?;
                (d, true)
            } else {
                return Err(self.err(format!(
                    "expected dimension after `@`, found {}",
                    self.peek().kind.describe()
                )));
            };
            if self.at_tag_start() {
                let tag = self.parse_hash()?;
                e = Expr::new(
                    ExprKind::At(Box::new(e), Box::new(dim), Box::new(tag)),
                    pos,
                );
            } else if dim_parenthesized {
                // Two-operand context switch `E @ (E)`: the operand is
                // the tag; the dimension is implied and resolved by the
                // translator.
                let marker = Expr::new(ExprKind::ImpliedDim, pos);
                e = Expr::new(
                    ExprKind::At(Box::new(e), Box::new(marker), Box::new(dim)),
                    pos,
                );
            } else {
                return Err(self.err("missing tag expression after `@`"));
            }
        }
        Ok(e)
    }

    fn parse_hash(&mut self) -> Result<Expr, FrontendError> {
        if matches!(self.peek().kind, TokKind::Hash) {
            let pos = self.pos();
            self.bump();
            self.eat(&TokKind::Dot);
            let dim = if let Some(_) = self.peek_plain_id() {
                let (name, dpos) = self.expect_plain_id()?;
                Expr::id(name, dpos)
            } else if matches!(self.peek().kind, TokKind::LParen) {
                self.bump();
                self.depth += 1;
                let d = self.parse_expr()?;
                self.depth -= 1;
                self.expect(TokKind::RParen)?;
                d
            } else {
                return Err(self.err(format!(
                    "expected dimension after `#`, found {}",
                    self.peek().kind.describe()
                )));
            };
            return Ok(Expr::new(ExprKind::HashQuery(Box::new(dim)), pos));
        }
        self.parse_postfix()
    }

    fn parse_postfix(&mut self) -> Result<Expr, FrontendError> {
        let mut e = self.parse_primary()?;
        loop {
            match &self.peek().kind {
                TokKind::LParen => {
                    let pos = self.pos();
                    let args = self.parse_paren_args()?;
                    e = Expr::new(ExprKind::Call(Box::new(e), args), pos);
                }
                TokKind::LBracket => {
                    let pos = self.pos();
                    self.bump();
                    self.depth += 1;
                    let mut idx = vec![self.parse_expr()?];
                    while self.eat(&TokKind::Comma) {
                        idx.push(self.parse_expr()?);
                    }
                    self.depth -= 1;
                    self.expect(TokKind::RBracket)?;
                    e = Expr::new(ExprKind::Index(Box::new(e), idx), pos);
                }
                TokKind::Dot if matches!(&self.peek2().kind, TokKind::Id(n) if !self.is_reserved(n)) =>
                {
                    let pos = self.pos();
                    self.bump();
                    let (name, _) = self.expect_plain_id()?;
                    if matches!(self.peek().kind, TokKind::LParen) {
                        let args = self.parse_paren_args()?;
                        e = Expr::new(ExprKind::DotCall(Box::new(e), name, args), pos);
                    } else {
                        e = Expr::new(ExprKind::DotField(Box::new(e), name), pos);
                    }
                }
                _ => break,
            }
        }
        Ok(e)
    }

    fn parse_paren_args(&mut self) -> Result<Vec<Expr>, FrontendError> {
        self.expect(TokKind::LParen)?;
        self.depth += 1;
        let mut args = Vec::new();
        if !matches!(self.peek().kind, TokKind::RParen) {
            args.push(self.parse_expr()?);
            while self.eat(&TokKind::Comma) {
                args.push(self.parse_expr()?);
            }
        }
        self.depth -= 1;
        self.expect(TokKind::RParen)?;
        Ok(args)
    }

    fn parse_primary(&mut self) -> Result<Expr, FrontendError> {
        let pos = self.pos();
        match self.peek().kind.clone() {
            TokKind::Int(v) => {
                self.bump();
                Ok(Expr::lit(Value::Int(v), pos))
            }
            TokKind::Float(v) => {
                self.bump();
                Ok(Expr::lit(Value::Double(v), pos))
            }
            TokKind::Str(s) => {
                self.bump();
                Ok(Expr::lit(Value::Str(s), pos))
            }
            TokKind::LParen => {
                self.bump();
                self.depth += 1;
                let e = self.parse_expr()?;
                self.depth -= 1;
                self.expect(TokKind::RParen)?;
                Ok(e)
            }
            TokKind::LBracket => {
                self.bump();
                self.depth += 1;
                let mut items = Vec::new();
                if !matches!(self.peek().kind, TokKind::RBracket) {
                    items.push(self.parse_expr()?);
                    while self.eat(&TokKind::Comma) {
                        items.push(self.parse_expr()?);
                    }
                }
                self.depth -= 1;
                self.expect(TokKind::RBracket)?;
                Ok(Expr::new(ExprKind::ArrayLit(items), pos))
            }
            TokKind::Id(name) => match name.as_str() {
                "true" => {
                    self.bump();
                    Ok(Expr::lit(Value::Bool(true), pos))
                }
                "false" => {
                    self.bump();
                    Ok(Expr::lit(Value::Bool(false), pos))
                }
                "if" => self.parse_if(),
                "embed" => self.parse_embed(),
                _ if self.is_reserved(&name) => {
                    Err(self.err(format!("unexpected keyword `{name}`")))
                }
                _ => {
                    self.bump();
                    Ok(Expr::id(name, pos))
                }
            },
            other => Err(FrontendError::syntax(
                pos,
                format!("expected expression, found {}", other.describe()),
            )),
        }
    }

    /// `if E [then] E' [declarations] else E'' [declarations] [fi]` —
    /// `then` and `fi` are optional because several thesis-era listings
    /// omit them; declarations after a branch wrap it in a where clause.
    fn parse_if(&mut self) -> Result<Expr, FrontendError> {
        let pos = self.pos();
        self.expect_kw("if")?;
        let cond = self.parse_stream()?;
        self.eat_kw("then");
        let then_branch = self.parse_branch(&["else"])?;
        self.expect_kw("else")?;
        let else_branch = self.parse_branch(&["fi"])?;
        self.eat_kw("fi");
        Ok(Expr::new(
            ExprKind::If(
                Box::new(cond),
                Box::new(then_branch),
                Box::new(else_branch),
            ),
            pos,
        ))
    }

    /// A branch expression optionally followed by implicit definitions
    /// (terminated by `stops`, `fi`, or anything that is not a
    /// definition).
    fn parse_branch(&mut self, stops: &[&str]) -> Result<Expr, FrontendError> {
        let pos = self.pos();
        let expr = self.parse_stream()?;
        let mut decls = Vec::new();
        loop {
            if stops.iter().any(|s| self.peek_kw(s)) || self.peek_kw("fi") {
                break;
            }
            if !self.decl_continues() {
                break;
            }
            let save = self.i;
            match self.parse_decl() {
                Ok(d) => decls.push(d),
                Err(_) => {
                    self.i = save;
                    break;
                }
            }
        }
        if decls.is_empty() {
            Ok(expr)
        } else {
            Ok(Expr::new(ExprKind::Where(Box::new(expr), decls), pos))
        }
    }

    /// `embed(URI, METHOD, E, ...)`
    fn parse_embed(&mut self) -> Result<Expr, FrontendError> {
        let pos = self.pos();
        self.expect_kw("embed")?;
        self.expect(TokKind::LParen)?;
        self.depth += 1;
        let uri = match self.bump() {
            Token {
                kind: TokKind::Str(s),
                ..
            } => s,
            t => {
                return Err(FrontendError::syntax(
                    t.pos,
                    "embed() requires a string URI",
                ))
            }
        };
        self.expect(TokKind::Comma)?;
        let method = match self.bump() {
            Token {
                kind: TokKind::Str(s),
                ..
            } => s,
            t => {
                return Err(FrontendError::syntax(
                    t.pos,
                    "embed() requires a string method name",
                ))
            }
        };
        let mut args = Vec::new();
        while self.eat(&TokKind::Comma) {
            args.push(self.parse_expr()?);
        }
        self.depth -= 1;
        self.expect(TokKind::RParen)?;
        Ok(Expr::new(ExprKind::EmbedRef { uri, method, args }, pos))
    }
}

fn decl_result_name(decl: &Decl) -> Option<String> {
    match &decl.kind {
        DeclKind::Var(name, _)
        | DeclKind::Func(name, _, _)
        | DeclKind::VarIndexed(name, _, _)
        | DeclKind::SubscriptedFunc(name, _, _, _) => Some(name.clone()),
        _ => None,
    }
}
