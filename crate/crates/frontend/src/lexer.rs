//! Tokenizer shared by all dialect parsers.

use gipsy_core::Pos;

use crate::FrontendError;

#[derive(Debug, Clone, PartialEq)]
pub enum TokKind {
    Id(String),
    Int(i64),
    Float(f64),
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Dot,
    At,
    Hash,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Lt,
    Gt,
    Le,
    Ge,
    EqEq,
    Ne,
    AndAnd,
    OrOr,
    Amp,
    Pipe,
    Bang,
    Eof,
}

impl TokKind {
    pub fn describe(&self) -> String {
        match self {
            TokKind::Id(n) => format!("identifier `{n}`"),
            TokKind::Int(v) => format!("integer {v}"),
            TokKind::Float(v) => format!("float {v}"),
            TokKind::Str(_) => "string literal".into(),
            TokKind::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            TokKind::LParen => "(",
            TokKind::RParen => ")",
            TokKind::LBracket => "[",
            TokKind::RBracket => "]",
            TokKind::Comma => ",",
            TokKind::Semi => ";",
            TokKind::Colon => ":",
            TokKind::Dot => ".",
            TokKind::At => "@",
            TokKind::Hash => "#",
            TokKind::Assign => "=",
            TokKind::Plus => "+",
            TokKind::Minus => "-",
            TokKind::Star => "*",
            TokKind::Slash => "/",
            TokKind::Percent => "%",
            TokKind::Lt => "<",
            TokKind::Gt => ">",
            TokKind::Le => "<=",
            TokKind::Ge => ">=",
            TokKind::EqEq => "==",
            TokKind::Ne => "!=",
            TokKind::AndAnd => "&&",
            TokKind::OrOr => "||",
            TokKind::Amp => "&",
            TokKind::Pipe => "|",
            TokKind::Bang => "!",
            _ => "?",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokKind,
    pub pos: Pos,
}

/// Tokenizes one segment. `line_offset` shifts reported line numbers so
/// positions land in the original hybrid source file.
pub fn tokenize(src: &str, line_offset: u32) -> Result<Vec<Token>, FrontendError> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0usize;
    let mut line = 1 + line_offset;
    let mut col = 1u32;

    macro_rules! push {
        ($kind:expr, $pos:expr) => {
            toks.push(Token {
                kind: $kind,
                pos: $pos,
            })
        };
    }

    while i < bytes.len() {
        let c = bytes[i];
        let pos = Pos::new(line, col);
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
            }
            c if c.is_whitespace() => {
                col += 1;
                i += 1;
            }
            '/' if bytes.get(i + 1) == Some(&'/') => {
                while i < bytes.len() && bytes[i] != '\n' {
                    i += 1;
                }
            }
            '/' if bytes.get(i + 1) == Some(&'*') => {
                i += 2;
                col += 2;
                loop {
                    if i >= bytes.len() {
                        return Err(FrontendError::syntax(pos, "unterminated block comment"));
                    }
                    if bytes[i] == '*' && bytes.get(i + 1) == Some(&'/') {
                        i += 2;
                        col += 2;
                        break;
                    }
                    if bytes[i] == '\n' {
                        line += 1;
                        col = 1;
                    } else {
                        col += 1;
                    }
                    i += 1;
                }
            }
            '"' => {
                i += 1;
                col += 1;
                let mut s = String::new();
                loop {
                    if i >= bytes.len() || bytes[i] == '\n' {
                        return Err(FrontendError::syntax(pos, "unterminated string literal"));
                    }
                    match bytes[i] {
                        '"' => {
                            i += 1;
                            col += 1;
                            break;
                        }
                        '\\' => {
                            let esc = bytes.get(i + 1).copied().ok_or_else(|| {
                                FrontendError::syntax(pos, "unterminated escape sequence")
                            })?;
                            s.push(match esc {
                                'n' => '\n',
                                't' => '\t',
                                'r' => '\r',
                                '\\' => '\\',
                                '"' => '"',
                                '\'' => '\'',
                                '0' => '\0',
                                other => {
                                    return Err(FrontendError::syntax(
                                        Pos::new(line, col),
                                        format!("unknown escape sequence: \\{other}"),
                                    ))
                                }
                            });
                            i += 2;
                            col += 2;
                        }
                        other => {
                            s.push(other);
                            i += 1;
                            col += 1;
                        }
                    }
                }
                push!(TokKind::Str(s), pos);
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut is_float = false;
                if i < bytes.len()
                    && bytes[i] == '.'
                    && bytes.get(i + 1).is_some_and(|c| c.is_ascii_digit())
                {
                    is_float = true;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == 'e' || bytes[i] == 'E') {
                    let mut j = i + 1;
                    if bytes.get(j) == Some(&'+') || bytes.get(j) == Some(&'-') {
                        j += 1;
                    }
                    if bytes.get(j).is_some_and(|c| c.is_ascii_digit()) {
                        is_float = true;
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = bytes[start..i].iter().collect();
                col += (i - start) as u32;
                if is_float {
                    let v: f64 = text
                        .parse()
                        .map_err(|_| FrontendError::syntax(pos, "malformed float literal"))?;
                    push!(TokKind::Float(v), pos);
                } else {
                    let v: i64 = text.parse().map_err(|_| {
                        FrontendError::syntax(pos, "integer literal out of 64-bit range")
                    })?;
                    push!(TokKind::Int(v), pos);
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                col += (i - start) as u32;
                push!(TokKind::Id(text), pos);
            }
            _ => {
                let mut two = |kind: TokKind| {
                    toks.push(Token { kind, pos });
                    2usize
                };
                let advance = match (c, bytes.get(i + 1).copied()) {
                    ('<', Some('=')) => two(TokKind::Le),
                    ('>', Some('=')) => two(TokKind::Ge),
                    ('=', Some('=')) => two(TokKind::EqEq),
                    ('!', Some('=')) => two(TokKind::Ne),
                    ('&', Some('&')) => two(TokKind::AndAnd),
                    ('|', Some('|')) => two(TokKind::OrOr),
                    _ => {
                        let kind = match c {
                            '(' => TokKind::LParen,
                            ')' => TokKind::RParen,
                            '[' => TokKind::LBracket,
                            ']' => TokKind::RBracket,
                            ',' => TokKind::Comma,
                            ';' => TokKind::Semi,
                            ':' => TokKind::Colon,
                            '.' => TokKind::Dot,
                            '@' => TokKind::At,
                            '#' => TokKind::Hash,
                            '=' => TokKind::Assign,
                            '+' => TokKind::Plus,
                            '-' => TokKind::Minus,
                            '*' => TokKind::Star,
                            '/' => TokKind::Slash,
                            '%' => TokKind::Percent,
                            '<' => TokKind::Lt,
                            '>' => TokKind::Gt,
                            '&' => TokKind::Amp,
                            '|' => TokKind::Pipe,
                            '!' => TokKind::Bang,
                            other => {
                                return Err(FrontendError::syntax(
                                    pos,
                                    format!("unexpected character: {other:?}"),
                                ))
                            }
                        };
                        toks.push(Token { kind, pos });
                        1
                    }
                };
                i += advance;
                col += advance as u32;
            }
        }
    }
    toks.push(Token {
        kind: TokKind::Eof,
        pos: Pos::new(line, col),
    });
    Ok(toks)
}
