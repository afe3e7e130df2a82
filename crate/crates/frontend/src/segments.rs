//! The segmented hybrid-program grammar: `#funcdecl`/`#typedecl`
//! declarations followed by `#LANGID`-marked code segments.

use std::collections::BTreeSet;

use gipsy_core::dict::{DictEntry, Dictionary, EmbedBinding, Prototype, GLOBAL_SCOPE};
use gipsy_core::{GipsyType, Pos};

use crate::lexer::{tokenize, TokKind, Token};
use crate::FrontendError;

/// One `#LANGID` code segment; the body keeps its original text and the
/// line it starts on so diagnostics point into the source file.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub lang_id: String,
    pub body: String,
    pub start_line: u32,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SegmentedProgram {
    pub func_decls: Vec<Prototype>,
    pub type_decls: Vec<String>,
    pub segments: Vec<Segment>,
    /// Raw text of the declaration sections, marker lines excluded, in
    /// source order.
    pub decl_text: String,
}

/// Segment acceptance configuration, mirroring the preprocessor's
/// valid/invalid name lists: with only a valid list, everything else is
/// invalid; the invalid list alone rejects just its members; when both
/// are given the valid list wins.
#[derive(Debug, Clone, Default)]
pub struct SegmentOptions {
    /// LANGID assumed when the source carries no segment markers.
    pub default_dialect: Option<String>,
    pub valid: Option<BTreeSet<String>>,
    pub invalid: BTreeSet<String>,
}

impl SegmentOptions {
    pub fn accepts(&self, lang_id: &str) -> bool {
        match &self.valid {
            Some(valid) => valid.contains(lang_id),
            None => !self.invalid.contains(lang_id),
        }
    }
}

enum MarkerKind {
    FuncDecl,
    TypeDecl,
    LangId(String),
}

/// A marker is a line holding exactly `#funcdecl`, `#typedecl`, or a
/// `#CAPS` language id. Lucid's own `#` operator never matches: it is
/// followed by a lowercase dimension name or more expression text.
fn marker_of(line: &str) -> Option<MarkerKind> {
    let t = line.trim();
    let rest = t.strip_prefix('#')?;
    match rest {
        "funcdecl" => Some(MarkerKind::FuncDecl),
        "typedecl" => Some(MarkerKind::TypeDecl),
        _ if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_uppercase()) => {
            Some(MarkerKind::LangId(rest.to_string()))
        }
        _ => None,
    }
}

/// Splits a hybrid source into declarations and code segments.
pub fn parse_segments(
    source: &str,
    opts: &SegmentOptions,
) -> Result<SegmentedProgram, FrontendError> {
    let lines: Vec<&str> = source.split('\n').collect();
    let mut prog = SegmentedProgram::default();

    #[derive(PartialEq)]
    enum Section {
        Leading,
        FuncDecl(u32),
        TypeDecl(u32),
        Code,
    }
    let mut section = Section::Leading;
    let mut decl_buf = String::new();
    let mut decl_start = 0u32;
    let mut seg_body = String::new();
    let mut seg_lang = String::new();
    let mut seg_start = 0u32;

    let flush_decls = |prog: &mut SegmentedProgram,
                       section: &Section,
                       buf: &mut String,
                       start: u32|
     -> Result<(), FrontendError> {
        match section {
            Section::FuncDecl(_) => {
                prog.func_decls.extend(parse_funcdecls(buf, start)?);
                prog.decl_text.push_str(buf);
            }
            Section::TypeDecl(_) => {
                prog.type_decls.extend(parse_typedecls(buf, start)?);
                prog.decl_text.push_str(buf);
            }
            Section::Leading => {
                // Only whitespace/comments may precede the first marker
                // of a segmented program; keep them with the decl text.
                prog.decl_text.push_str(buf);
            }
            Section::Code => {}
        }
        buf.clear();
        Ok(())
    };

    for (idx, line) in lines.iter().enumerate() {
        let line_no = idx as u32 + 1;
        match marker_of(line) {
            Some(MarkerKind::FuncDecl) => {
                if section == Section::Code {
                    return Err(FrontendError::syntax(
                        Pos::new(line_no, 1),
                        "#funcdecl must precede all code segments",
                    ));
                }
                flush_decls(&mut prog, &section, &mut decl_buf, decl_start)?;
                section = Section::FuncDecl(line_no);
                decl_start = line_no;
            }
            Some(MarkerKind::TypeDecl) => {
                if section == Section::Code {
                    return Err(FrontendError::syntax(
                        Pos::new(line_no, 1),
                        "#typedecl must precede all code segments",
                    ));
                }
                flush_decls(&mut prog, &section, &mut decl_buf, decl_start)?;
                section = Section::TypeDecl(line_no);
                decl_start = line_no;
            }
            Some(MarkerKind::LangId(lang)) => {
                if !opts.accepts(&lang) {
                    return Err(FrontendError::InvalidSegment(lang));
                }
                if section == Section::Code {
                    prog.segments.push(Segment {
                        lang_id: seg_lang.clone(),
                        body: std::mem::take(&mut seg_body),
                        start_line: seg_start,
                    });
                } else {
                    flush_decls(&mut prog, &section, &mut decl_buf, decl_start)?;
                    section = Section::Code;
                }
                seg_lang = lang;
                seg_start = line_no + 1;
            }
            None => {
                if section == Section::Code {
                    seg_body.push_str(line);
                    seg_body.push('\n');
                } else {
                    decl_buf.push_str(line);
                    decl_buf.push('\n');
                }
            }
        }
    }
    if section == Section::Code {
        prog.segments.push(Segment {
            lang_id: seg_lang,
            body: seg_body,
            start_line: seg_start,
        });
    } else {
        flush_decls(&mut prog, &section, &mut decl_buf, decl_start)?;
    }

    if prog.segments.is_empty() {
        match &opts.default_dialect {
            Some(lang) => {
                // A bare source file interpreted under a forced dialect.
                prog.segments.push(Segment {
                    lang_id: lang.clone(),
                    body: prog.decl_text.clone(),
                    start_line: 1,
                });
                prog.decl_text.clear();
            }
            None => {
                return Err(FrontendError::syntax(
                    Pos::new(1, 1),
                    "source has no code segments and no dialect was forced",
                ));
            }
        }
    }
    Ok(prog)
}

/// Parses `#funcdecl` prototype lines:
/// `[immutable] TYPE [\[\]] ID ( TYPELIST ) [: [LANGID :] URI [: ID]] ;`
pub fn parse_funcdecls(text: &str, line_offset: u32) -> Result<Vec<Prototype>, FrontendError> {
    let toks = tokenize(text, line_offset)?;
    let mut p = DeclParser { toks, i: 0 };
    let mut protos = Vec::new();
    while !p.at_eof() {
        protos.push(p.parse_prototype()?);
    }
    Ok(protos)
}

fn parse_typedecls(text: &str, line_offset: u32) -> Result<Vec<String>, FrontendError> {
    let toks = tokenize(text, line_offset)?;
    let mut p = DeclParser { toks, i: 0 };
    let mut types = Vec::new();
    while !p.at_eof() {
        let name = p.expect_id()?;
        p.expect_semi()?;
        types.push(name);
    }
    Ok(types)
}

struct DeclParser {
    toks: Vec<Token>,
    i: usize,
}

impl DeclParser {
    fn peek(&self) -> &Token {
        &self.toks[self.i.min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if self.i < self.toks.len() - 1 {
            self.i += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek().kind, TokKind::Eof)
    }

    fn err(&self, msg: impl Into<String>) -> FrontendError {
        FrontendError::syntax(self.peek().pos, msg)
    }

    fn expect_id(&mut self) -> Result<String, FrontendError> {
        match self.bump() {
            Token {
                kind: TokKind::Id(name),
                ..
            } => Ok(name),
            t => Err(FrontendError::syntax(
                t.pos,
                format!("expected identifier, found {}", t.kind.describe()),
            )),
        }
    }

    fn expect_semi(&mut self) -> Result<(), FrontendError> {
        match self.bump() {
            Token {
                kind: TokKind::Semi,
                ..
            } => Ok(()),
            t => Err(FrontendError::syntax(
                t.pos,
                format!("expected `;`, found {}", t.kind.describe()),
            )),
        }
    }

    fn eat(&mut self, kind: &TokKind) -> bool {
        if &self.peek().kind == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    /// `TYPE [ [] ]`
    fn parse_type(&mut self) -> Result<(GipsyType, bool), FrontendError> {
        let name = self.expect_id()?;
        let ty = GipsyType::from_decl_name(&name);
        let mut is_array = false;
        if self.eat(&TokKind::LBracket) {
            if !self.eat(&TokKind::RBracket) {
                return Err(self.err("expected `]` in array type"));
            }
            is_array = true;
        }
        Ok((ty, is_array))
    }

    fn parse_prototype(&mut self) -> Result<Prototype, FrontendError> {
        let mut immutable = false;
        if matches!(&self.peek().kind, TokKind::Id(n) if n == "immutable") {
            self.bump();
            immutable = true;
        }
        let (return_type, return_is_array) = self.parse_type()?;
        let name = self.expect_id()?;
        if !self.eat(&TokKind::LParen) {
            return Err(self.err("expected `(` in prototype"));
        }
        let mut param_types = Vec::new();
        if !matches!(self.peek().kind, TokKind::RParen) {
            loop {
                param_types.push(self.parse_type()?);
                if !self.eat(&TokKind::Comma) {
                    break;
                }
            }
        }
        if !self.eat(&TokKind::RParen) {
            return Err(self.err("expected `)` in prototype"));
        }
        // Void is a return kind only.
        for (ty, _) in &param_types {
            if *ty == GipsyType::Void {
                return Err(self.err("void cannot be a parameter type"));
            }
        }
        let embed = if self.eat(&TokKind::Colon) {
            Some(self.parse_embed_binding()?)
        } else {
            None
        };
        self.expect_semi()?;
        Ok(Prototype {
            name,
            immutable,
            return_type,
            return_is_array,
            param_types,
            embed,
        })
    }

    /// `[LANGID :] URI [: ID]` — the published grammar carries a LANGID,
    /// the thesis's own example omits it; both are accepted.
    fn parse_embed_binding(&mut self) -> Result<EmbedBinding, FrontendError> {
        let mut lang_id = String::from("NATIVE");
        if self.eat(&TokKind::Hash) {
            lang_id = self.expect_id()?;
            if !self.eat(&TokKind::Colon) {
                return Err(self.err("expected `:` after embed language id"));
            }
        } else if matches!(&self.peek().kind, TokKind::Id(n) if n.chars().all(|c| c.is_ascii_uppercase()))
        {
            lang_id = self.expect_id()?;
            if !self.eat(&TokKind::Colon) {
                return Err(self.err("expected `:` after embed language id"));
            }
        }
        let uri = match self.bump() {
            Token {
                kind: TokKind::Str(s),
                ..
            } => s,
            t => {
                return Err(FrontendError::syntax(
                    t.pos,
                    "expected a string URI in embed binding",
                ))
            }
        };
        let remote_name = if self.eat(&TokKind::Colon) {
            Some(self.expect_id()?)
        } else {
            None
        };
        Ok(EmbedBinding {
            lang_id,
            uri,
            remote_name,
        })
    }
}

/// Builds the dictionary embryo: one unresolved FreeFun entry per
/// prototype and one unlinked Class entry per type declaration, so the
/// intensional compilers never trip over foreign names.
pub fn build_stub_dictionary(prog: &SegmentedProgram) -> Result<Dictionary, FrontendError> {
    let mut dict = Dictionary::new();
    for proto in &prog.func_decls {
        if dict.entry_in(GLOBAL_SCOPE, &proto.name).is_some() {
            return Err(FrontendError::DuplicatePrototype(proto.name.clone()));
        }
        dict.define(
            GLOBAL_SCOPE,
            proto.name.clone(),
            DictEntry::FreeFun {
                proto: proto.clone(),
                binding: None,
            },
        );
    }
    for ty in &prog.type_decls {
        if dict.entry_in(GLOBAL_SCOPE, ty).is_some() {
            if matches!(dict.entry_in(GLOBAL_SCOPE, ty), Some(DictEntry::Class { .. })) {
                return Err(FrontendError::DuplicateTypeDecl(ty.clone()));
            }
            return Err(FrontendError::DuplicatePrototype(ty.clone()));
        }
        dict.define(
            GLOBAL_SCOPE,
            ty.clone(),
            DictEntry::Class {
                name: ty.clone(),
                linked: false,
            },
        );
    }
    Ok(dict)
}
