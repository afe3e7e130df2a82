//! Canonical printer for ASTs. The output reparses to a structurally
//! identical tree, which is what the round-trip tests pin down.

use crate::ast::{BinOp, Decl, DeclKind, Expr, ExprKind};
use crate::value::Value;

const P_WHERE: u8 = 0;
const P_STREAM: u8 = 1;
const P_OR: u8 = 2;
const P_BITOR: u8 = 3;
const P_AND: u8 = 4;
const P_BITAND: u8 = 5;
const P_REL: u8 = 6;
const P_ADD: u8 = 7;
const P_MUL: u8 = 8;
const P_UNARY: u8 = 9;
const P_AT: u8 = 10;
const P_HASH: u8 = 11;
const P_POSTFIX: u8 = 12;
const P_PRIMARY: u8 = 13;

fn binop_prec(op: BinOp) -> u8 {
    match op {
        BinOp::Or => P_OR,
        BinOp::BitOr => P_BITOR,
        BinOp::And => P_AND,
        BinOp::BitAnd => P_BITAND,
        BinOp::Lt | BinOp::Gt | BinOp::Le | BinOp::Ge | BinOp::Eq | BinOp::Ne => P_REL,
        BinOp::Add | BinOp::Sub => P_ADD,
        BinOp::Mul | BinOp::Div | BinOp::Mod => P_MUL,
    }
}

fn prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Where(..) => P_WHERE,
        ExprKind::StreamBin(..) => P_STREAM,
        ExprKind::BinOp(op, ..) => binop_prec(*op),
        ExprKind::UnOp(..) | ExprKind::StreamUn(..) => P_UNARY,
        ExprKind::At(..) => P_AT,
        ExprKind::HashQuery(..) => P_HASH,
        ExprKind::Call(..) | ExprKind::Index(..) | ExprKind::DotField(..) | ExprKind::DotCall(..) => {
            P_POSTFIX
        }
        _ => P_PRIMARY,
    }
}

/// Renders an expression as a complete program text.
pub fn pretty_program(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, P_WHERE, 0);
    out.push('\n');
    out
}

/// Renders an expression inline.
pub fn pretty_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, P_WHERE, 0);
    out
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("    ");
    }
}

fn write_literal(out: &mut String, v: &Value) {
    match v {
        Value::Int(i) => out.push_str(&i.to_string()),
        // A fractionless double keeps ".0" so it relexes as a double.
        Value::Double(d) => {
            let s = d.to_string();
            if s.contains('.') || s.contains('e') || s.contains("inf") || s.contains("NaN") {
                out.push_str(&s);
            } else {
                out.push_str(&s);
                out.push_str(".0");
            }
        }
        Value::Float(fl) => {
            let s = fl.to_string();
            if s.contains('.') || s.contains('e') {
                out.push_str(&s);
            } else {
                out.push_str(&s);
                out.push_str(".0");
            }
        }
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Str(s) => out.push_str(&format!("{s:?}")),
        other => out.push_str(&other.render()),
    }
}

fn write_args(out: &mut String, args: &[Expr], depth: usize) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_expr(out, a, P_STREAM, depth);
    }
    out.push(')');
}

/// True when `e` can stand bare in an `@` tag position (parsed at hash
/// level, and not a negative literal).
fn tag_is_bare(e: &Expr) -> bool {
    if prec(e) < P_HASH {
        return false;
    }
    match &e.kind {
        ExprKind::Literal(Value::Int(v)) => *v >= 0,
        ExprKind::Literal(Value::Double(v)) => *v >= 0.0,
        _ => true,
    }
}

fn write_expr(out: &mut String, e: &Expr, min: u8, depth: usize) {
    let p = prec(e);
    let wrap = p < min;
    if wrap {
        out.push('(');
    }
    match &e.kind {
        ExprKind::Id(name) => out.push_str(name),
        ExprKind::Literal(v) => write_literal(out, v),
        ExprKind::ImpliedDim => out.push('_'),
        ExprKind::Call(callee, args) => {
            write_expr(out, callee, P_POSTFIX, depth);
            write_args(out, args, depth);
        }
        ExprKind::If(c, t, f) => {
            out.push_str("if ");
            write_expr(out, c, P_WHERE, depth);
            out.push_str(" then ");
            write_expr(out, t, P_WHERE, depth);
            out.push_str(" else ");
            write_expr(out, f, P_WHERE, depth);
            out.push_str(" fi");
        }
        ExprKind::HashQuery(dim) => match &dim.kind {
            ExprKind::Id(name) => {
                out.push_str("#.");
                out.push_str(name);
            }
            _ => {
                out.push_str("# (");
                write_expr(out, dim, P_WHERE, depth);
                out.push(')');
            }
        },
        ExprKind::At(body, dim, tag) => {
            write_expr(out, body, P_AT, depth);
            match &dim.kind {
                ExprKind::ImpliedDim => {
                    out.push_str(" @ (");
                    write_expr(out, tag, P_WHERE, depth);
                    out.push(')');
                }
                ExprKind::Id(name) => {
                    out.push_str(" @.");
                    out.push_str(name);
                    out.push(' ');
                    write_tag(out, tag, depth);
                }
                _ => {
                    out.push_str(" @.(");
                    write_expr(out, dim, P_WHERE, depth);
                    out.push_str(") ");
                    write_tag(out, tag, depth);
                }
            }
        }
        ExprKind::Where(body, decls) => {
            write_expr(out, body, P_STREAM, depth);
            out.push('\n');
            indent(out, depth);
            out.push_str("where\n");
            for d in decls {
                write_decl(out, d, depth + 1);
            }
            indent(out, depth);
            out.push_str("end");
        }
        ExprKind::UnOp(op, operand) => {
            out.push_str(op.symbol());
            if matches!(op, crate::ast::UnOp::Iseod) {
                out.push(' ');
            }
            write_expr(out, operand, P_UNARY, depth);
        }
        ExprKind::BinOp(op, l, r) => {
            let p = binop_prec(*op);
            write_expr(out, l, p, depth);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write_expr(out, r, p + 1, depth);
        }
        ExprKind::StreamUn(op, dim, operand) => {
            out.push_str(op.symbol());
            if let Some(d) = dim {
                out.push('.');
                out.push_str(d);
            }
            out.push(' ');
            write_expr(out, operand, P_UNARY, depth);
        }
        ExprKind::StreamBin(op, dim, l, r) => {
            write_expr(out, l, P_STREAM + 1, depth);
            out.push(' ');
            out.push_str(op.symbol());
            if let Some(d) = dim {
                out.push('.');
                out.push_str(d);
            }
            out.push(' ');
            write_expr(out, r, P_STREAM, depth);
        }
        ExprKind::ArrayLit(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, item, P_STREAM, depth);
            }
            out.push(']');
        }
        ExprKind::Index(arr, idx) => {
            write_expr(out, arr, P_POSTFIX, depth);
            out.push('[');
            for (i, x) in idx.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, x, P_STREAM, depth);
            }
            out.push(']');
        }
        ExprKind::DotField(obj, field) => {
            write_expr(out, obj, P_POSTFIX, depth);
            out.push('.');
            out.push_str(field);
        }
        ExprKind::DotCall(obj, method, args) => {
            write_expr(out, obj, P_POSTFIX, depth);
            out.push('.');
            out.push_str(method);
            write_args(out, args, depth);
        }
        ExprKind::EmbedRef { uri, method, args } => {
            out.push_str("embed(");
            out.push_str(&format!("{uri:?}, {method:?}"));
            for a in args {
                out.push_str(", ");
                write_expr(out, a, P_STREAM, depth);
            }
            out.push(')');
        }
    }
    if wrap {
        out.push(')');
    }
}

fn write_tag(out: &mut String, tag: &Expr, depth: usize) {
    if tag_is_bare(tag) {
        write_expr(out, tag, P_HASH, depth);
    } else {
        out.push('(');
        write_expr(out, tag, P_WHERE, depth);
        out.push(')');
    }
}

fn write_decl(out: &mut String, d: &Decl, depth: usize) {
    indent(out, depth);
    match &d.kind {
        DeclKind::Dimension(names) => {
            out.push_str("dimension ");
            out.push_str(&names.join(", "));
            out.push(';');
        }
        DeclKind::Var(name, e) => {
            out.push_str(name);
            out.push_str(" = ");
            write_expr(out, e, P_WHERE, depth);
            out.push(';');
        }
        DeclKind::Func(name, formals, e) => {
            out.push_str(name);
            out.push('(');
            out.push_str(&formals.join(", "));
            out.push_str(") = ");
            write_expr(out, e, P_WHERE, depth);
            out.push(';');
        }
        DeclKind::VarIndexed(name, idx, e) => {
            out.push_str(name);
            out.push('[');
            for (i, x) in idx.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, x, P_STREAM, depth);
            }
            out.push_str("] = ");
            write_expr(out, e, P_WHERE, depth);
            out.push(';');
        }
        DeclKind::SubscriptedFunc(name, dims, formals, e) => {
            out.push_str(name);
            out.push('.');
            out.push_str(&dims.join(","));
            out.push('(');
            out.push_str(&formals.join(", "));
            out.push_str(") = ");
            write_expr(out, e, P_WHERE, depth);
            out.push(';');
        }
        DeclKind::MemberAssign(obj, field, e) => {
            write_expr(out, obj, P_POSTFIX, depth);
            out.push('.');
            out.push_str(field);
            out.push_str(" = ");
            write_expr(out, e, P_WHERE, depth);
            out.push(';');
        }
        DeclKind::ExprStmt(e) => {
            write_expr(out, e, P_STREAM, depth);
            out.push(';');
        }
        DeclKind::WhereBlock(decls) => {
            out.push_str("where\n");
            for inner in decls {
                write_decl(out, inner, depth + 1);
            }
            indent(out, depth);
            out.push_str("end;");
        }
    }
    out.push('\n');
}
