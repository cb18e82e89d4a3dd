//! The line-oriented ring file format.
//!
//! ```text
//! # comments run to the end of the line
//! ring "ising"
//! coeff int
//! basis 1 eps sigma
//! unit 1
//! mul sigma sigma = 1 + eps
//! mul eps eps = 1
//! mul eps sigma = sigma
//! mul sigma eps = sigma
//! ```
//!
//! Block rings add `block SRC TGT: label,label` lines (and optionally an
//! `objects A B` line fixing the object order). Terms are `[coeff*]label`;
//! multi-term coefficients are parenthesized, e.g. `(1 + q^2)*x`. Products
//! that are not listed are zero, except products with a declared unit, which
//! default to what the unit axioms force.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;
use zplus_core::coefficients::CoefficientError;
use zplus_core::gallery::{load_gallery, UnknownGalleryRing};
use zplus_core::zring::Blocks;
use zplus_core::{CoeffMode, Coefficient, RingBuilder, ValidationError, ZPlusRing};

/// A validation failure together with the file lines most likely at fault.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocatedError {
    pub error: ValidationError,
    pub message: String,
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RingFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{}", render_located(.0))]
    Validation(Vec<LocatedError>),
}

fn render_located(errors: &[LocatedError]) -> String {
    let mut out = format!("ring validation failed with {} error(s)", errors.len());
    for e in errors {
        let lines: Vec<String> = e.lines.iter().map(|l| l.to_string()).collect();
        out.push_str(&format!("\n  line {}: {}", lines.join(","), e.message));
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> RingFileError {
    RingFileError::Syntax { line, column, message: message.into() }
}

/// Validation error text with basis labels in place of indices.
pub fn describe_validation_error(labels: &[String], error: &ValidationError) -> String {
    let l = |i: &usize| labels.get(*i).map(String::as_str).unwrap_or("?");
    match error {
        ValidationError::AssociativityViolation { a, b, c, e, left, right } => format!(
            "associativity fails for ({}, {}, {}) at {}: (ab)c has {left}, a(bc) has {right}",
            l(a),
            l(b),
            l(c),
            l(e)
        ),
        ValidationError::BlockIncompatibility { a, b, result } => match result {
            Some(r) => format!("{} * {} produces {} outside the composite block", l(a), l(b), l(r)),
            None => format!("{} * {} is nonzero but not composable", l(a), l(b)),
        },
        ValidationError::UnitViolation { unit, witness, detail } => match unit {
            Some(u) => format!("unit {}: {detail} (witness {})", l(u), l(witness)),
            None => format!("{detail} (witness {})", l(witness)),
        },
        ValidationError::ModeMismatch { a, b, expected, found, .. } => {
            format!("{} * {} has a {found} coefficient in a {expected} ring", l(a), l(b))
        }
        other => other.to_string(),
    }
}

fn is_label(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Byte offset of `needle` within `haystack` (both slices of one line).
fn offset_in(line: &str, part: &str) -> usize {
    part.as_ptr() as usize - line.as_ptr() as usize
}

/// Removes a trailing comment, ignoring '#' inside the quoted ring name.
fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if quoted => escaped = true,
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn err(&self, part: &str, message: impl Into<String>) -> RingFileError {
        syntax(self.number, offset_in(self.text, part) + 1, message)
    }

    /// Whitespace-separated words after the keyword.
    fn words(&self, rest: &'a str) -> Vec<&'a str> {
        rest.split_whitespace().collect()
    }
}

struct MulLine {
    line: usize,
    terms: Vec<(usize, Coefficient)>,
}

struct BlockLine {
    line: usize,
    source: String,
    target: String,
    members: Vec<usize>,
}

#[derive(Default)]
struct Parsed {
    name: Option<String>,
    mode: Option<CoeffMode>,
    basis: Option<(usize, Vec<String>)>,
    units: Option<(usize, Vec<usize>)>,
    objects: Option<(usize, Vec<String>)>,
    blocks: Vec<BlockLine>,
    muls: BTreeMap<(usize, usize), MulLine>,
}

impl Parsed {
    fn labels(&self) -> &[String] {
        self.basis.as_ref().map(|(_, b)| b.as_slice()).unwrap_or(&[])
    }

    fn lookup(&self, line: &Line<'_>, label: &str) -> Result<usize, RingFileError> {
        if !is_label(label) {
            return Err(line.err(label, format!("invalid label '{label}'")));
        }
        self.labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| line.err(label, format!("unknown label '{label}'")))
    }
}

fn parse_name(line: &Line<'_>, rest: &str) -> Result<String, RingFileError> {
    let trimmed = rest.trim();
    let mut chars = trimmed.char_indices();
    if !matches!(chars.next(), Some((_, '"'))) {
        return Err(line.err(trimmed, "expected a quoted ring name"));
    }
    let mut name = String::new();
    let mut escaped = false;
    for (i, c) in chars {
        if escaped {
            name.push(c);
            escaped = false;
        } else if c == '\\' {
            escaped = true;
        } else if c == '"' {
            let tail = &trimmed[i + 1..];
            if !tail.trim().is_empty() {
                return Err(line.err(tail.trim(), "unexpected text after ring name"));
            }
            return Ok(name);
        } else {
            name.push(c);
        }
    }
    Err(line.err(trimmed, "unterminated ring name"))
}

/// Splits on `sep` outside parentheses, keeping the pieces as subslices.
fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn parse_sum(
    parsed: &Parsed,
    line: &Line<'_>,
    sum: &str,
    mode: CoeffMode,
) -> Result<Vec<(usize, Coefficient)>, RingFileError> {
    let sum = sum.trim();
    if sum.is_empty() {
        return Err(line.err(sum, "missing right-hand side"));
    }
    if sum == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    for raw in split_top_level(sum, '+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(line.err(raw, "empty term"));
        }
        let pieces = split_top_level(term, '*');
        let (coeff, label) = match pieces.as_slice() {
            [label] => (Coefficient::one(mode), label.trim()),
            [coeff, label] => {
                let c = coeff.trim();
                let inner = c.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(c);
                let parsed = Coefficient::parse(inner, mode).map_err(|e| coefficient_error(line, inner, e))?;
                (parsed, label.trim())
            }
            _ => return Err(line.err(term, "a term is [coefficient*]label")),
        };
        terms.push((parsed.lookup(line, label)?, coeff));
    }
    Ok(terms)
}

fn coefficient_error(line: &Line<'_>, text: &str, e: CoefficientError) -> RingFileError {
    let at = match &e {
        CoefficientError::Syntax { offset, .. }
        | CoefficientError::Negative { offset }
        | CoefficientError::QInIntMode { offset } => *offset,
        CoefficientError::ModeMismatch { .. } => 0,
    };
    syntax(line.number, offset_in(line.text, text) + at + 1, format!("bad coefficient: {e}"))
}

fn parse_line(parsed: &mut Parsed, line: &Line<'_>, body: &str) -> Result<(), RingFileError> {
    let keyword = body.split_whitespace().next().expect("nonempty line");
    let rest = &body[offset_in(body, keyword) + keyword.len()..];
    let need_header = |parsed: &Parsed, what: &str| -> Result<(), RingFileError> {
        if parsed.basis.is_none() {
            return Err(line.err(keyword, format!("'{what}' before the 'ring', 'coeff' and 'basis' header")));
        }
        Ok(())
    };
    match keyword {
        "ring" => {
            if parsed.name.is_some() {
                return Err(line.err(keyword, "duplicate 'ring' line"));
            }
            parsed.name = Some(parse_name(line, rest)?);
        }
        "coeff" => {
            if parsed.name.is_none() {
                return Err(line.err(keyword, "'coeff' before 'ring'"));
            }
            if parsed.mode.is_some() {
                return Err(line.err(keyword, "duplicate 'coeff' line"));
            }
            parsed.mode = Some(match line.words(rest).as_slice() {
                ["int"] => CoeffMode::Int,
                ["laurent"] => CoeffMode::Laurent,
                _ => return Err(line.err(rest.trim(), "expected 'int' or 'laurent'")),
            });
        }
        "basis" => {
            if parsed.mode.is_none() {
                return Err(line.err(keyword, "'basis' before 'coeff'"));
            }
            if parsed.basis.is_some() {
                return Err(line.err(keyword, "duplicate 'basis' line"));
            }
            let words = line.words(rest);
            if words.is_empty() {
                return Err(line.err(keyword, "basis is empty"));
            }
            let mut labels: Vec<String> = Vec::new();
            for w in words {
                if !is_label(w) {
                    return Err(line.err(w, format!("invalid label '{w}'")));
                }
                if labels.iter().any(|l| l == w) {
                    return Err(line.err(w, format!("duplicate label '{w}'")));
                }
                labels.push(w.to_string());
            }
            parsed.basis = Some((line.number, labels));
        }
        "unit" => {
            need_header(parsed, "unit")?;
            if parsed.units.is_some() {
                return Err(line.err(keyword, "duplicate 'unit' line"));
            }
            let units = line.words(rest).iter().map(|w| parsed.lookup(line, w)).collect::<Result<_, _>>()?;
            parsed.units = Some((line.number, units));
        }
        "objects" => {
            need_header(parsed, "objects")?;
            if parsed.objects.is_some() || !parsed.blocks.is_empty() {
                return Err(line.err(keyword, "'objects' must come once, before any 'block' line"));
            }
            let mut objects: Vec<String> = Vec::new();
            for w in line.words(rest) {
                if !is_label(w) || objects.iter().any(|o| o == w) {
                    return Err(line.err(w, format!("invalid or repeated object '{w}'")));
                }
                objects.push(w.to_string());
            }
            parsed.objects = Some((line.number, objects));
        }
        "block" => {
            need_header(parsed, "block")?;
            let Some((head, members)) = rest.split_once(':') else {
                return Err(line.err(keyword, "expected 'block SRC TGT: label,label,...'"));
            };
            let (source, target) = match line.words(head).as_slice() {
                [s, t] if is_label(s) && is_label(t) => (s.to_string(), t.to_string()),
                _ => return Err(line.err(head.trim(), "expected two object names before ':'")),
            };
            if let Some((_, objects)) = &parsed.objects {
                for o in [&source, &target] {
                    if !objects.contains(o) {
                        return Err(line.err(head.trim(), format!("object '{o}' not declared")));
                    }
                }
            }
            let members = members
                .split(',')
                .map(|m| parsed.lookup(line, m.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            parsed.blocks.push(BlockLine { line: line.number, source, target, members });
        }
        "mul" => {
            need_header(parsed, "mul")?;
            let Some((lhs, rhs)) = rest.split_once('=') else {
                return Err(line.err(keyword, "expected 'mul a b = sum'"));
            };
            let (a, b) = match line.words(lhs).as_slice() {
                [a, b] => (parsed.lookup(line, a)?, parsed.lookup(line, b)?),
                _ => return Err(line.err(lhs.trim(), "expected two labels before '='")),
            };
            if let Some(previous) = parsed.muls.get(&(a, b)) {
                return Err(line.err(lhs.trim(), format!("duplicate mul line (first on line {})", previous.line)));
            }
            let mode = parsed.mode.expect("header checked");
            let terms = parse_sum(parsed, line, rhs, mode)?;
            parsed.muls.insert((a, b), MulLine { line: line.number, terms });
        }
        other => return Err(line.err(keyword, format!("unknown keyword '{other}'"))),
    }
    Ok(())
}

fn assemble_blocks(parsed: &Parsed) -> Result<Option<Blocks>, RingFileError> {
    if parsed.blocks.is_empty() && parsed.objects.is_none() {
        return Ok(None);
    }
    let mut objects: Vec<String> = parsed.objects.as_ref().map(|(_, o)| o.clone()).unwrap_or_default();
    let n = parsed.labels().len();
    let mut assignment: Vec<Option<(usize, usize)>> = vec![None; n];
    for block in &parsed.blocks {
        let mut index = |name: &String| match objects.iter().position(|o| o == name) {
            Some(i) => i,
            None => {
                objects.push(name.clone());
                objects.len() - 1
            }
        };
        let st = (index(&block.source), index(&block.target));
        for &m in &block.members {
            if assignment[m].is_some() {
                let label = &parsed.labels()[m];
                return Err(syntax(block.line, 1, format!("'{label}' is assigned to two blocks")));
            }
            assignment[m] = Some(st);
        }
    }
    let basis_line = parsed.basis.as_ref().map(|(l, _)| *l).unwrap_or(0);
    let mut out = Vec::with_capacity(n);
    for (i, a) in assignment.into_iter().enumerate() {
        match a {
            Some(st) => out.push(st),
            None => {
                let label = &parsed.labels()[i];
                return Err(syntax(basis_line, 1, format!("'{label}' is not assigned to any block")));
            }
        }
    }
    Ok(Some(Blocks::new(objects, out)))
}

fn locate(parsed: &Parsed, error: &ValidationError) -> Vec<usize> {
    let mul = |a: usize, b: usize| parsed.muls.get(&(a, b)).map(|m| m.line);
    let basis_line = parsed.basis.as_ref().map(|(l, _)| *l).unwrap_or(0);
    let mut lines: Vec<usize> = match error {
        ValidationError::AssociativityViolation { a, b, c, .. } => {
            mul(*a, *b).into_iter().chain(mul(*b, *c)).collect()
        }
        ValidationError::BlockIncompatibility { a, b, .. } | ValidationError::ModeMismatch { a, b, .. } => {
            mul(*a, *b).into_iter().collect()
        }
        ValidationError::UnitViolation { .. } => parsed.units.iter().map(|(l, _)| *l).collect(),
        _ => Vec::new(),
    };
    lines.sort_unstable();
    lines.dedup();
    if lines.is_empty() {
        vec![basis_line]
    } else {
        lines
    }
}

pub fn parse_ring_file(text: &str) -> Result<ZPlusRing, RingFileError> {
    let mut parsed = Parsed::default();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        last_line = i + 1;
        let line = Line { number: i + 1, text: raw };
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        parse_line(&mut parsed, &line, body)?;
    }
    let Some((_, labels)) = parsed.basis.clone() else {
        return Err(syntax(last_line.max(1), 1, "missing 'ring', 'coeff' or 'basis' header"));
    };
    let mode = parsed.mode.expect("basis implies coeff");
    let name = parsed.name.clone().expect("coeff implies ring");
    let blocks = assemble_blocks(&parsed)?;
    let mut builder = RingBuilder::new(name, mode, labels);
    for ((a, b), m) in &parsed.muls {
        builder.product(*a, *b, m.terms.iter().cloned());
    }
    if let Some(blocks) = blocks {
        builder.set_blocks(blocks);
    }
    if let Some((_, units)) = &parsed.units {
        builder.set_units(units.iter().copied());
    }
    builder.fill_unit_defaults();
    builder.build().map_err(|report| {
        RingFileError::Validation(
            report
                .errors
                .iter()
                .map(|e| LocatedError {
                    error: e.clone(),
                    message: describe_validation_error(parsed.labels(), e),
                    lines: locate(&parsed, e),
                })
                .collect(),
        )
    })
}

fn quote(name: &str) -> String {
    let mut out = String::from("\"");
    for c in name.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn format_term(coeff: &Coefficient, label: &str) -> String {
    let is_one = coeff.term_count() == 1 && coeff.terms().get(&0).is_some_and(|v| *v == 1u32.into());
    if is_one && label != "0" {
        label.to_string()
    } else if coeff.term_count() == 1 {
        format!("{coeff}*{label}")
    } else {
        format!("({coeff})*{label}")
    }
}

/// Whether `b_a b_b` is what the file format would fill in by default.
fn is_default_product(ring: &ZPlusRing, a: usize, b: usize) -> bool {
    let product = ring.product(a, b);
    let implied = ring.unit_default(a, b, true).or_else(|| ring.unit_default(b, a, false));
    match implied {
        Some(support) => {
            product.len() == support.len()
                && product.iter().zip(&support).all(|((g, n), s)| g == s && *n == Coefficient::one(ring.mode()))
        }
        None => product.is_empty(),
    }
}

/// Canonical text: header, units, blocks by `(source, target)`, then every
/// non-default product in basis order.
pub fn serialize_ring(ring: &ZPlusRing) -> String {
    let mut out = String::new();
    out.push_str(&format!("ring {}\n", quote(ring.name())));
    out.push_str(&format!("coeff {}\n", ring.mode()));
    out.push_str(&format!("basis {}\n", ring.labels().join(" ")));
    if let Some(units) = ring.units() {
        out.push_str(&format!("unit {}\n", ring.subset_labels(units).join(" ")));
    }
    if let Some(blocks) = ring.blocks() {
        out.push_str(&format!("objects {}\n", blocks.objects().join(" ")));
        let objects = blocks.objects().len();
        for s in 0..objects {
            for t in 0..objects {
                let members = blocks.members(s, t, ring.len());
                if !members.is_empty() {
                    let labels = ring.subset_labels(&members).join(",");
                    out.push_str(&format!("block {} {}: {labels}\n", blocks.objects()[s], blocks.objects()[t]));
                }
            }
        }
    }
    for a in 0..ring.len() {
        for b in 0..ring.len() {
            if is_default_product(ring, a, b) {
                continue;
            }
            let product = ring.product(a, b);
            let rhs = if product.is_empty() {
                String::from("0")
            } else {
                product.iter().map(|(g, n)| format_term(n, ring.label(*g))).collect::<Vec<_>>().join(" + ")
            };
            out.push_str(&format!("mul {} {} = {rhs}\n", ring.label(a), ring.label(b)));
        }
    }
    out
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    Parse { path: String, source: RingFileError },
    #[error(transparent)]
    Gallery(#[from] UnknownGalleryRing),
}

/// Loads `gallery:NAME` or a ring file path.
pub fn load_ring(source: &str) -> Result<ZPlusRing, LoadError> {
    if let Some(name) = source.strip_prefix("gallery:") {
        return Ok(load_gallery(name)?.ring);
    }
    let text = std::fs::read_to_string(Path::new(source))
        .map_err(|e| LoadError::Io { path: source.to_string(), message: e.to_string() })?;
    parse_ring_file(&text).map_err(|source_err| LoadError::Parse { path: source.to_string(), source: source_err })
}

impl fmt::Display for LocatedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.lines.iter().map(|l| l.to_string()).collect();
        write!(f, "line {}: {}", lines.join(","), self.message)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zplus_core::gallery::gallery;

    const ISING: &str = "\
# Ising fusion rules
ring \"ising\"
coeff int
basis 1 eps sigma
unit 1
mul sigma sigma = 1 + eps
mul eps eps = 1
mul eps sigma = sigma
mul sigma eps = sigma
";

    #[test]
    fn parses_ising() {
        let r = parse_ring_file(ISING).unwrap();
        assert_eq!(r, load_gallery("ising").unwrap().ring);
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn missing_product_is_located() {
        let text = ISING.replace("mul eps sigma = sigma\n", "");
        let Err(RingFileError::Validation(errors)) = parse_ring_file(&text) else { panic!("should fail") };
        assert!(errors.iter().any(|e| matches!(e.error, ValidationError::AssociativityViolation { .. })));
        assert!(errors.iter().all(|e| !e.lines.is_empty()));
        // (eps, eps, sigma) fails first; only eps*eps has a line of its own
        assert_eq!(errors[0].lines, vec![7]);
        let cube = errors.iter().find(|e| matches!(e.error, ValidationError::AssociativityViolation { a: 2, b: 2, c: 2, .. }));
        assert_eq!(cube.unwrap().lines, vec![6]);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("ring \"r\"\ncoeff int\nbasis a\nmul a a = 2*b\n", 4, 13),
            ("ring \"r\"\ncoeff int\nbasis a\nmul a a = q*a\n", 4, 11),
            ("ring \"r\"\ncoeff int\nbasis a a\n", 3, 9),
            ("coeff int\n", 1, 1),
            ("ring \"r\"\ncoeff int\nbasis a\nmul a a = a\nmul a a = 0\n", 5, 5),
            ("ring \"r\"\ncoeff real\n", 2, 7),
        ];
        for (text, line, column) in cases {
            match parse_ring_file(text) {
                Err(RingFileError::Syntax { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn laurent_terms() {
        let text = "ring \"l\"\ncoeff laurent\nbasis 1 x\nunit 1\nmul x x = (1 + q^2)*x + q^-1*1\n";
        let r = parse_ring_file(text).unwrap();
        let out = serialize_ring(&r);
        assert!(out.contains("mul x x = q^-1*1 + (1 + q^2)*x"), "{out}");
        assert_eq!(parse_ring_file(&out).unwrap(), r);
    }

    #[test]
    fn empty_tensor_has_no_mul_lines() {
        let text = "ring \"zero\"\ncoeff int\nbasis a b\n";
        let out = serialize_ring(&parse_ring_file(text).unwrap());
        assert_eq!(out, text);
    }

    #[test]
    fn round_trip_gallery() {
        for entry in gallery() {
            let text = serialize_ring(&entry.ring);
            assert_eq!(parse_ring_file(&text).unwrap(), entry.ring, "{}", entry.name);
            assert_eq!(serialize_ring(&parse_ring_file(&text).unwrap()), text);
        }
    }

    #[test]
    fn names_with_quotes_and_hashes() {
        let text = "ring \"a \\\"b\\\" #c\" # trailing\ncoeff int\nbasis x\n";
        let r = parse_ring_file(text).unwrap();
        assert_eq!(r.name(), "a \"b\" #c");
        assert_eq!(parse_ring_file(&serialize_ring(&r)).unwrap(), r);
    }
}
