//! TriG reader.
//!
//! Supports prefix and base directives (both `@prefix` and SPARQL style),
//! graph blocks with an optional `GRAPH` keyword, predicate/object lists,
//! labelled and anonymous blank nodes, all literal forms and numeric/boolean
//! shorthands. Statements outside graph blocks must carry an explicit graph
//! label in N-Quads form (`s p o g .`), which makes every N-Quads document
//! readable too. Collections are not supported.

use std::collections::HashMap;

use url::Url;

use crate::vocab::{rdf, xsd};

use super::{BlankNode, Iri, Literal, Quad, QuadSet, RdfError, Subject, Term};

/// Parses a TriG document.
pub fn parse_trig(text: &str) -> Result<QuadSet, RdfError> {
    parse_trig_with_base(text, None)
}

/// Parses an N-Quads document. N-Quads is accepted by the TriG reader.
pub fn parse_nquads(text: &str) -> Result<QuadSet, RdfError> {
    parse_trig_with_base(text, None)
}

pub fn parse_trig_with_base(text: &str, base: Option<&Iri>) -> Result<QuadSet, RdfError> {
    let mut parser = Parser::new(text);
    if let Some(base) = base {
        parser.base = Some(
            Url::parse(base.as_str())
                .map_err(|_| RdfError::InvalidIri(base.as_str().to_owned()))?,
        );
    }
    parser.document()?;
    let mut out = parser.out;
    for (prefix, iri) in parser.prefixes {
        if let Ok(iri) = Iri::new(iri) {
            out.set_prefix(prefix, iri);
        }
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    prefixes: HashMap<String, String>,
    base: Option<Url>,
    anon_counter: usize,
    out: QuadSet,
}

type Triple = (Subject, Iri, Term);

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            prefixes: HashMap::new(),
            base: None,
            anon_counter: 0,
            out: QuadSet::new(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, RdfError> {
        Err(RdfError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, expected: char) -> Result<(), RdfError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == expected => {
                self.bump();
                Ok(())
            }
            Some(c) => self.error(format!("expected '{expected}', found '{c}'")),
            None => self.error(format!("expected '{expected}', found end of input")),
        }
    }

    /// Case-insensitive keyword match that is not followed by a name char.
    fn at_keyword(&self, keyword: &str) -> bool {
        let n = keyword.len();
        let matches = keyword
            .chars()
            .enumerate()
            .all(|(i, k)| self.peek_at(i).is_some_and(|c| c.eq_ignore_ascii_case(&k)));
        matches && !self.peek_at(n).is_some_and(|c| is_name_char(c) || c == ':')
    }

    fn consume(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn document(&mut self) -> Result<(), RdfError> {
        loop {
            self.skip_ws();
            let Some(c) = self.peek() else {
                return Ok(());
            };
            if c == '@' {
                self.at_directive()?;
            } else if self.at_keyword("PREFIX") {
                self.consume(6);
                self.prefix_decl()?;
            } else if self.at_keyword("BASE") {
                self.consume(4);
                self.base_decl()?;
            } else if self.at_keyword("GRAPH") {
                self.consume(5);
                self.skip_ws();
                let label = self.graph_label()?;
                self.wrapped_graph(&label)?;
            } else if c == '{' {
                return self
                    .error("default graph blocks are not supported; every graph must be named");
            } else {
                self.top_level_statement()?;
            }
        }
    }

    fn at_directive(&mut self) -> Result<(), RdfError> {
        self.bump();
        let name = self.bare_word();
        match name.as_str() {
            "prefix" => {
                self.prefix_decl()?;
                self.expect('.')
            }
            "base" => {
                self.base_decl()?;
                self.expect('.')
            }
            other => self.error(format!("unknown directive @{other}")),
        }
    }

    fn bare_word(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn prefix_decl(&mut self) -> Result<(), RdfError> {
        self.skip_ws();
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if !is_name_char(c) {
                return self.error(format!("invalid character '{c}' in prefix name"));
            }
            prefix.push(c);
            self.bump();
        }
        self.expect(':')?;
        self.skip_ws();
        let iri = self.iri_ref()?;
        self.prefixes.insert(prefix, iri.into_string());
        Ok(())
    }

    fn base_decl(&mut self) -> Result<(), RdfError> {
        self.skip_ws();
        let iri = self.iri_ref()?;
        self.base =
            Some(Url::parse(iri.as_str()).map_err(|_| RdfError::InvalidIri(iri.into_string()))?);
        Ok(())
    }

    fn graph_label(&mut self) -> Result<Iri, RdfError> {
        match self.peek() {
            Some('<') => self.iri_ref(),
            Some('_') | Some('[') => self.error("graph names must be IRIs, not blank nodes"),
            Some(_) => self.prefixed_name(),
            None => self.error("expected graph name"),
        }
    }

    fn top_level_statement(&mut self) -> Result<(), RdfError> {
        let (line, column) = (self.line, self.column);
        let mut triples = Vec::new();
        let subject_is_anon_list = self.peek() == Some('[');
        let subject = self.subject(&mut triples)?;
        self.skip_ws();
        if self.peek() == Some('{') {
            let label = match subject {
                Subject::Iri(iri) if !subject_is_anon_list => iri,
                _ => return self.error("graph names must be IRIs, not blank nodes"),
            };
            return self.wrapped_graph(&label);
        }
        // N-Quads form: `s p o g .`
        if !(subject_is_anon_list && self.peek() == Some('.')) {
            self.predicate_object_list(&subject, &mut triples)?;
        }
        self.skip_ws();
        let graph = if self.peek() != Some('.') {
            if triples.len() != 1 {
                return self.error("unexpected term after object list");
            }
            self.graph_label_term()?
        } else {
            None
        };
        self.expect('.')?;
        let Some(graph) = graph else {
            return Err(RdfError::Syntax {
                line,
                column,
                message:
                    "triple outside a named graph; use a graph block or an N-Quads graph label"
                        .into(),
            });
        };
        for (s, p, o) in triples {
            self.out.insert(Quad::new(s, p, o, graph.clone()));
        }
        Ok(())
    }

    fn graph_label_term(&mut self) -> Result<Option<Iri>, RdfError> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Some(self.iri_ref()?)),
            Some(c) if is_name_start(c) || c == ':' => Ok(Some(self.prefixed_name()?)),
            Some(c) => self.error(format!("unexpected '{c}' after object")),
            None => self.error("unexpected end of input"),
        }
    }

    fn wrapped_graph(&mut self, graph: &Iri) -> Result<(), RdfError> {
        self.expect('{')?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('}') => {
                    self.bump();
                    return Ok(());
                }
                None => return self.error("unterminated graph block"),
                _ => {}
            }
            let mut triples = Vec::new();
            let anon = self.peek() == Some('[');
            let subject = self.subject(&mut triples)?;
            self.skip_ws();
            let bare_anon = anon && matches!(self.peek(), Some('.') | Some('}'));
            if !bare_anon {
                self.predicate_object_list(&subject, &mut triples)?;
            }
            for (s, p, o) in triples {
                self.out.insert(Quad::new(s, p, o, graph.clone()));
            }
            self.skip_ws();
            match self.peek() {
                Some('.') => {
                    self.bump();
                }
                Some('}') => {}
                Some(c) => return self.error(format!("expected '.' or '}}', found '{c}'")),
                None => return self.error("unterminated graph block"),
            }
        }
    }

    fn subject(&mut self, triples: &mut Vec<Triple>) -> Result<Subject, RdfError> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Subject::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => {
                Ok(Subject::BlankNode(self.blank_label()?))
            }
            Some('[') => Ok(Subject::BlankNode(self.anon(triples)?)),
            Some('(') => self.error("collections are not supported"),
            Some('"') | Some('\'') => self.error("literals cannot be subjects"),
            Some(c) if is_name_start(c) || c == ':' => Ok(Subject::Iri(self.prefixed_name()?)),
            Some(c) => self.error(format!("unexpected '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }

    /// `[ ... ]`: a fresh blank node, with nested predicate/object pairs
    /// appended to `triples`.
    fn anon(&mut self, triples: &mut Vec<Triple>) -> Result<BlankNode, RdfError> {
        self.expect('[')?;
        self.anon_counter += 1;
        let node = BlankNode::new(format!("anon{}", self.anon_counter))?;
        self.skip_ws();
        if self.peek() != Some(']') {
            self.predicate_object_list(&Subject::BlankNode(node.clone()), triples)?;
        }
        self.expect(']')?;
        Ok(node)
    }

    fn predicate_object_list(
        &mut self,
        subject: &Subject,
        triples: &mut Vec<Triple>,
    ) -> Result<(), RdfError> {
        loop {
            self.skip_ws();
            let predicate = self.predicate()?;
            loop {
                self.skip_ws();
                let object = self.object(triples)?;
                triples.push((subject.clone(), predicate.clone(), object));
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                    continue;
                }
                break;
            }
            self.skip_ws();
            if self.peek() == Some(';') {
                while self.peek() == Some(';') {
                    self.bump();
                    self.skip_ws();
                }
                if matches!(self.peek(), Some('.') | Some(']') | Some('}')) {
                    return Ok(());
                }
                continue;
            }
            return Ok(());
        }
    }

    fn predicate(&mut self) -> Result<Iri, RdfError> {
        match self.peek() {
            Some('a') if !self.peek_at(1).is_some_and(|c| is_name_char(c) || c == ':') => {
                self.bump();
                Ok(Iri::from_static(rdf::TYPE))
            }
            Some('<') => self.iri_ref(),
            Some(c) if is_name_start(c) || c == ':' => self.prefixed_name(),
            Some(c) => self.error(format!("expected predicate, found '{c}'")),
            None => self.error("expected predicate, found end of input"),
        }
    }

    fn object(&mut self, triples: &mut Vec<Triple>) -> Result<Term, RdfError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Term::BlankNode(self.blank_label()?)),
            Some('[') => Ok(Term::BlankNode(self.anon(triples)?)),
            Some('(') => self.error("collections are not supported"),
            Some('"') | Some('\'') => Ok(Term::Literal(self.literal()?)),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => {
                Ok(Term::Literal(self.numeric()?))
            }
            Some('.') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => {
                Ok(Term::Literal(self.numeric()?))
            }
            Some(_) if self.at_keyword("true") => {
                self.consume(4);
                Ok(Term::Literal(Literal::typed(
                    "true",
                    Iri::from_static(xsd::BOOLEAN),
                )))
            }
            Some(_) if self.at_keyword("false") => {
                self.consume(5);
                Ok(Term::Literal(Literal::typed(
                    "false",
                    Iri::from_static(xsd::BOOLEAN),
                )))
            }
            Some(c) if is_name_start(c) || c == ':' => Ok(Term::Iri(self.prefixed_name()?)),
            Some(c) => self.error(format!("expected object, found '{c}'")),
            None => self.error("expected object, found end of input"),
        }
    }

    fn iri_ref(&mut self) -> Result<Iri, RdfError> {
        let (line, column) = (self.line, self.column);
        self.expect('<')?;
        let mut s = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => match self.bump() {
                    Some('u') => s.push(self.hex_escape(4)?),
                    Some('U') => s.push(self.hex_escape(8)?),
                    _ => return self.error("invalid escape in IRI"),
                },
                Some(c) if c.is_whitespace() => return self.error("whitespace in IRI"),
                Some(c) => s.push(c),
                None => return self.error("unterminated IRI"),
            }
        }
        self.resolve(s, line, column)
    }

    fn resolve(&self, s: String, line: usize, column: usize) -> Result<Iri, RdfError> {
        if let Ok(iri) = Iri::new(s.as_str()) {
            return Ok(iri);
        }
        match &self.base {
            Some(base) => {
                let joined = base.join(&s).map_err(|_| RdfError::InvalidIri(s.clone()))?;
                Iri::new(joined.as_str())
            }
            None => Err(RdfError::RelativeIri {
                iri: s,
                line,
                column,
            }),
        }
    }

    fn hex_escape(&mut self, digits: usize) -> Result<char, RdfError> {
        let mut value = 0u32;
        for _ in 0..digits {
            let Some(d) = self.bump().and_then(|c| c.to_digit(16)) else {
                return self.error("invalid hex escape");
            };
            value = value * 16 + d;
        }
        match char::from_u32(value) {
            Some(c) => Ok(c),
            None => self.error("escape is not a valid code point"),
        }
    }

    fn prefixed_name(&mut self) -> Result<Iri, RdfError> {
        let (line, column) = (self.line, self.column);
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if !is_name_char(c) {
                return self.error(format!("unexpected '{c}'"));
            }
            prefix.push(c);
            self.bump();
        }
        if self.peek() != Some(':') {
            return self.error(format!("expected ':' after {prefix:?}"));
        }
        self.bump();
        let mut local = String::new();
        loop {
            match self.peek() {
                Some('\\') => {
                    self.bump();
                    match self.bump() {
                        Some(c) if "_~.-!$&'()*+,;=/?#@%".contains(c) => local.push(c),
                        _ => return self.error("invalid local name escape"),
                    }
                }
                Some('%') => {
                    local.push('%');
                    self.bump();
                    for _ in 0..2 {
                        match self.bump() {
                            Some(h) if h.is_ascii_hexdigit() => local.push(h),
                            _ => return self.error("invalid percent escape"),
                        }
                    }
                }
                Some('.') => {
                    // A trailing dot terminates the statement.
                    if self
                        .peek_at(1)
                        .is_some_and(|c| is_name_char(c) || c == ':' || c == '%' || c == '\\')
                    {
                        local.push('.');
                        self.bump();
                    } else {
                        break;
                    }
                }
                Some(c) if is_name_char(c) || c == ':' => {
                    local.push(c);
                    self.bump();
                }
                _ => break,
            }
        }
        let Some(ns) = self.prefixes.get(&prefix) else {
            return Err(RdfError::UndefinedPrefix {
                prefix,
                line,
                column,
            });
        };
        let full = format!("{ns}{local}");
        self.resolve(full, line, column)
    }

    fn blank_label(&mut self) -> Result<BlankNode, RdfError> {
        self.consume(2);
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if is_name_char(c) && c != '.' {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        match BlankNode::new(label) {
            Ok(b) => Ok(b),
            Err(e) => self.error(e.to_string()),
        }
    }

    fn literal(&mut self) -> Result<Literal, RdfError> {
        let quote = self.bump().expect("caller checked quote");
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.consume(2);
        }
        let mut s = String::new();
        loop {
            let Some(c) = self.bump() else {
                return self.error("unterminated string literal");
            };
            match c {
                '\\' => {
                    let e = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        _ => return self.error("invalid string escape"),
                    };
                    s.push(e);
                }
                c if c == quote && !long => break,
                c if c == quote
                    && long
                    && self.peek() == Some(quote)
                    && self.peek_at(1) == Some(quote) =>
                {
                    self.consume(2);
                    break;
                }
                '\n' | '\r' if !long => return self.error("newline in short string literal"),
                c => s.push(c),
            }
        }
        match self.peek() {
            Some('@') => {
                self.bump();
                let mut tag = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        tag.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                match Literal::lang(s, &tag) {
                    Ok(l) => Ok(l),
                    Err(e) => self.error(e.to_string()),
                }
            }
            Some('^') if self.peek_at(1) == Some('^') => {
                self.consume(2);
                let datatype = match self.peek() {
                    Some('<') => self.iri_ref()?,
                    _ => self.prefixed_name()?,
                };
                if datatype.as_str() == rdf::LANG_STRING {
                    return self.error("rdf:langString requires a language tag");
                }
                Ok(Literal::typed(s, datatype))
            }
            _ => Ok(Literal::string(s)),
        }
    }

    fn numeric(&mut self) -> Result<Literal, RdfError> {
        let mut s = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            s.push(c);
            self.bump();
        }
        let mut digits = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
            digits += 1;
        }
        let mut datatype = xsd::INTEGER;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            s.push('.');
            self.bump();
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                s.push(c);
                self.bump();
                digits += 1;
            }
            datatype = xsd::DECIMAL;
        }
        if digits == 0 {
            return self.error("malformed number");
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            s.push(e);
            self.bump();
            if let Some(c @ ('+' | '-')) = self.peek() {
                s.push(c);
                self.bump();
            }
            let mut exp = 0;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                s.push(c);
                self.bump();
                exp += 1;
            }
            if exp == 0 {
                return self.error("malformed exponent");
            }
            datatype = xsd::DOUBLE;
        }
        Ok(Literal::typed(s, Iri::from_static(datatype)))
    }
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\u{b7}')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::canonical_nquads;

    const REVIEW_COMMENT: &str = r#"
@prefix this: <http://example.org/np1> .
@prefix sub: <http://example.org/np1#> .
@prefix np: <http://www.nanopub.org/nschema#> .
@prefix lf: <https://purl.org/linkflows/model#> .
@prefix prov: <http://www.w3.org/ns/prov#> .
@prefix dcterms: <http://purl.org/dc/terms/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .

sub:Head {
  this: a np:Nanopublication ;
    np:hasAssertion sub:assertion ;
    np:hasProvenance sub:provenance ;
    np:hasPublicationInfo sub:pubinfo .
}

sub:assertion {
  sub:comment a lf:ReviewComment, lf:NegativeComment, lf:SuggestionComment ;
    lf:hasImpact "2"^^xsd:integer ;
    lf:refersTo <http://example.org/np0#paragraph> ;
    lf:hasCommentText """A "long" comment
spanning lines.""" .
}

sub:provenance {
  sub:assertion prov:wasAttributedTo <https://orcid.org/0000-0002-0000-0001> .
}

sub:pubinfo {
  this: dcterms:created "2020-01-01T00:00:00Z"^^xsd:dateTime ;
    dcterms:creator <https://orcid.org/0000-0002-0000-0002> .
}
"#;

    #[test]
    fn review_comment_document_partitions_into_four_graphs() {
        let q = parse_trig(REVIEW_COMMENT).unwrap();
        let graphs: Vec<_> = q
            .graphs()
            .into_iter()
            .map(|g| g.as_str().to_owned())
            .collect();
        assert_eq!(
            graphs,
            [
                "http://example.org/np1#Head",
                "http://example.org/np1#assertion",
                "http://example.org/np1#provenance",
                "http://example.org/np1#pubinfo",
            ]
        );
        assert_eq!(q.len(), 4 + 6 + 1 + 2);
        assert!(q.iter().any(|q| q
            .object
            .as_literal()
            .is_some_and(|l| l.lexical().contains("\"long\" comment\nspanning"))));
    }

    #[test]
    fn empty_document() {
        assert!(parse_trig("").unwrap().is_empty());
        assert!(parse_trig("  # only a comment\n").unwrap().is_empty());
    }

    #[test]
    fn duplicate_triples_collapse() {
        let doc =
            "<http://g> { <http://s> <http://p> <http://o> . <http://s> <http://p> <http://o> }";
        assert_eq!(parse_trig(doc).unwrap().len(), 1);
    }

    #[test]
    fn undefined_prefix_is_reported_with_position() {
        let err = parse_trig("<http://g> {\n  ex:s <http://p> <http://o> .\n}").unwrap_err();
        assert_eq!(
            err,
            RdfError::UndefinedPrefix {
                prefix: "ex".into(),
                line: 2,
                column: 3
            }
        );
    }

    #[test]
    fn relative_iri_requires_base() {
        let doc = "<http://g> { <s> <http://p> <http://o> }";
        assert!(matches!(parse_trig(doc), Err(RdfError::RelativeIri { .. })));
        let with_base = format!("@base <http://ex.org/dir/> .\n{doc}");
        let q = parse_trig(&with_base).unwrap();
        assert_eq!(
            q.iter().next().unwrap().subject.to_string(),
            "<http://ex.org/dir/s>"
        );
    }

    #[test]
    fn syntax_error_has_line_and_column() {
        let err = parse_trig("<http://g> {\n <http://s> <http://p> \n}").unwrap_err();
        assert!(matches!(err, RdfError::Syntax { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn triples_outside_named_graph_are_rejected() {
        assert!(parse_trig("<http://s> <http://p> <http://o> .").is_err());
        assert!(parse_trig("{ <http://s> <http://p> <http://o> }").is_err());
    }

    #[test]
    fn nquads_lines_are_accepted() {
        let doc = "<http://s> <http://p> \"x\"@EN <http://g> .\n_:b1 <http://p> \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> <http://g> .\n";
        let q = parse_nquads(doc).unwrap();
        assert_eq!(q.len(), 2);
        assert!(canonical_nquads(&q).contains("\"x\"@en"));
    }

    #[test]
    fn sparql_style_directives_graph_keyword_and_shorthands() {
        let doc = r#"
PREFIX ex: <http://ex.org/>
GRAPH ex:g {
  ex:s ex:int 42 ; ex:dec -1.5 ; ex:dbl 1e3 ; ex:bool true ;
       ex:blank [ ex:q "inner" ] ;
       ex:lang 'hi'@en-GB .
}
"#;
        let q = parse_trig(doc).unwrap();
        let nq = canonical_nquads(&q);
        assert!(nq.contains("\"42\"^^<http://www.w3.org/2001/XMLSchema#integer>"));
        assert!(nq.contains("\"-1.5\"^^<http://www.w3.org/2001/XMLSchema#decimal>"));
        assert!(nq.contains("\"1e3\"^^<http://www.w3.org/2001/XMLSchema#double>"));
        assert!(nq.contains("\"true\"^^<http://www.w3.org/2001/XMLSchema#boolean>"));
        assert!(nq.contains("\"hi\"@en-gb"));
        assert!(nq.contains("_:anon1 <http://ex.org/q> \"inner\""));
        assert_eq!(q.len(), 7);
    }

    #[test]
    fn integer_followed_by_statement_dot() {
        let q = parse_trig("@prefix ex: <http://ex.org/> .\nex:g { ex:s ex:p 5. }").unwrap();
        assert_eq!(
            q.iter()
                .next()
                .unwrap()
                .object
                .as_literal()
                .unwrap()
                .lexical(),
            "5"
        );
    }

    #[test]
    fn unicode_escapes_in_iris_and_strings() {
        let q =
            parse_trig("<http://g> { <http://ex.org/\\u00e9> <http://p> \"\\u00e9\\U0001F600\" }")
                .unwrap();
        let quad = q.iter().next().unwrap();
        assert_eq!(quad.subject.to_string(), "<http://ex.org/é>");
        assert_eq!(quad.object.as_literal().unwrap().lexical(), "é😀");
    }
}
