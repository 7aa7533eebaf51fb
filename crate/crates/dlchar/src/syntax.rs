//! Concept-expression syntax: roles, concepts, signatures, fragments,
//! parsing, printing and size measures.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A role name, possibly inverted (`R` or `R-`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RoleExpr {
    pub name: String,
    pub inverted: bool,
}

impl RoleExpr {
    pub fn new(name: impl Into<String>) -> Self {
        RoleExpr { name: name.into(), inverted: false }
    }

    pub fn inverse(name: impl Into<String>) -> Self {
        RoleExpr { name: name.into(), inverted: true }
    }

    /// The same role with the direction toggled.
    pub fn flipped(&self) -> Self {
        RoleExpr { name: self.name.clone(), inverted: !self.inverted }
    }
}

impl fmt::Display for RoleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "{}-", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

/// A concept expression over some signature.
///
/// `And`/`Or` keep their children as ordered lists of length >= 2; equality is
/// structural. Semantic comparisons live in the `reason` module.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConceptExpr {
    Name(String),
    Top,
    Bot,
    Not(Box<ConceptExpr>),
    And(Vec<ConceptExpr>),
    Or(Vec<ConceptExpr>),
    Exists(RoleExpr, Box<ConceptExpr>),
    Forall(RoleExpr, Box<ConceptExpr>),
    AtLeast(u32, RoleExpr, Box<ConceptExpr>),
}

impl ConceptExpr {
    pub fn name(n: impl Into<String>) -> Self {
        ConceptExpr::Name(n.into())
    }

    pub fn exists(role: RoleExpr, child: ConceptExpr) -> Self {
        ConceptExpr::Exists(role, Box::new(child))
    }

    pub fn forall(role: RoleExpr, child: ConceptExpr) -> Self {
        ConceptExpr::Forall(role, Box::new(child))
    }

    pub fn at_least(k: u32, role: RoleExpr, child: ConceptExpr) -> Self {
        assert!(k >= 1, "number restrictions require k >= 1");
        ConceptExpr::AtLeast(k, role, Box::new(child))
    }

    pub fn not(child: ConceptExpr) -> Self {
        ConceptExpr::Not(Box::new(child))
    }

    /// Conjunction helper that flattens the trivial cases: an empty list is
    /// `top`, a singleton is the child itself.
    pub fn and(children: Vec<ConceptExpr>) -> Self {
        match children.len() {
            0 => ConceptExpr::Top,
            1 => children.into_iter().next().unwrap(),
            _ => ConceptExpr::And(children),
        }
    }

    pub fn or(children: Vec<ConceptExpr>) -> Self {
        match children.len() {
            0 => ConceptExpr::Bot,
            1 => children.into_iter().next().unwrap(),
            _ => ConceptExpr::Or(children),
        }
    }

    /// Iterates over the direct children.
    pub fn children(&self) -> Vec<&ConceptExpr> {
        match self {
            ConceptExpr::Name(_) | ConceptExpr::Top | ConceptExpr::Bot => vec![],
            ConceptExpr::Not(c) => vec![c],
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => cs.iter().collect(),
            ConceptExpr::Exists(_, c) | ConceptExpr::Forall(_, c) | ConceptExpr::AtLeast(_, _, c) => {
                vec![c]
            }
        }
    }

    /// All concept names occurring in the expression.
    pub fn concept_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out, &mut BTreeSet::new());
        out
    }

    /// All role names occurring in the expression.
    pub fn role_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_names(&self, concepts: &mut BTreeSet<String>, roles: &mut BTreeSet<String>) {
        match self {
            ConceptExpr::Name(n) => {
                concepts.insert(n.clone());
            }
            ConceptExpr::Exists(r, c) | ConceptExpr::Forall(r, c) | ConceptExpr::AtLeast(_, r, c) => {
                roles.insert(r.name.clone());
                c.collect_names(concepts, roles);
            }
            _ => {
                for c in self.children() {
                    c.collect_names(concepts, roles);
                }
            }
        }
    }
}

impl fmt::Display for ConceptExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_concept(self))
    }
}

/// A finite signature of concept and role names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
}

impl Signature {
    pub fn new<I, J, S, T>(concepts: I, roles: J) -> Self
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        Signature {
            concepts: concepts.into_iter().map(Into::into).collect(),
            roles: roles.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains_concept(&self, name: &str) -> bool {
        self.concepts.contains(name)
    }

    pub fn contains_role(&self, name: &str) -> bool {
        self.roles.contains(name)
    }

    /// Componentwise union.
    pub fn union(&self, other: &Signature) -> Signature {
        Signature {
            concepts: self.concepts.union(&other.concepts).cloned().collect(),
            roles: self.roles.union(&other.roles).cloned().collect(),
        }
    }
}

/// One constructor of the concept grammar, used to delimit fragments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Exists,
    Forall,
    Geq,
    Inv,
    And,
    Or,
    Top,
    Bot,
    Neg,
}

impl Op {
    pub const ALL: [Op; 9] =
        [Op::Exists, Op::Forall, Op::Geq, Op::Inv, Op::And, Op::Or, Op::Top, Op::Bot, Op::Neg];

    pub fn token(self) -> &'static str {
        match self {
            Op::Exists => "exists",
            Op::Forall => "forall",
            Op::Geq => "geq",
            Op::Inv => "inv",
            Op::And => "and",
            Op::Or => "or",
            Op::Top => "top",
            Op::Bot => "bot",
            Op::Neg => "neg",
        }
    }
}

/// A set of constructors selecting a concept language.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentSpec {
    pub operators: BTreeSet<Op>,
}

impl FragmentSpec {
    pub fn new(ops: impl IntoIterator<Item = Op>) -> Self {
        FragmentSpec { operators: ops.into_iter().collect() }
    }

    /// The full ALCQI constructor set.
    pub fn full() -> Self {
        FragmentSpec::new(Op::ALL)
    }

    /// L(exists, and, top): EL.
    pub fn el() -> Self {
        FragmentSpec::new([Op::Exists, Op::And, Op::Top])
    }

    /// L(exists, and, top, bot).
    pub fn el_bot() -> Self {
        FragmentSpec::new([Op::Exists, Op::And, Op::Top, Op::Bot])
    }

    /// L(geq, and, top), with exists admitted as shorthand for `>=1`.
    pub fn elq() -> Self {
        FragmentSpec::new([Op::Exists, Op::Geq, Op::And, Op::Top])
    }

    /// L(forall, exists, geq, and, top).
    pub fn aleq() -> Self {
        FragmentSpec::new([Op::Forall, Op::Exists, Op::Geq, Op::And, Op::Top])
    }

    pub fn allows(&self, op: Op) -> bool {
        self.operators.contains(&op)
    }

    pub fn with(&self, op: Op) -> Self {
        let mut ops = self.operators.clone();
        ops.insert(op);
        FragmentSpec { operators: ops }
    }

    /// Parses a comma-separated operator list, e.g. `"exists,and,top"`.
    pub fn parse(text: &str) -> Result<Self, SyntaxError> {
        let mut ops = BTreeSet::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let op = Op::ALL
                .iter()
                .copied()
                .find(|o| o.token() == part)
                .ok_or_else(|| SyntaxError::new(0, format!("unknown fragment operator `{part}`")))?;
            ops.insert(op);
        }
        Ok(FragmentSpec { operators: ops })
    }
}

impl fmt::Display for FragmentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<&str> = self.operators.iter().map(|o| o.token()).collect();
        write!(f, "{}", toks.join(","))
    }
}

/// True iff every constructor used in `c` is licensed by `f`.
pub fn fragment_check(c: &ConceptExpr, f: &FragmentSpec) -> bool {
    let role_ok = |r: &RoleExpr| !r.inverted || f.allows(Op::Inv);
    match c {
        ConceptExpr::Name(_) => true,
        ConceptExpr::Top => f.allows(Op::Top),
        ConceptExpr::Bot => f.allows(Op::Bot),
        ConceptExpr::Not(ch) => f.allows(Op::Neg) && fragment_check(ch, f),
        ConceptExpr::And(cs) => f.allows(Op::And) && cs.iter().all(|ch| fragment_check(ch, f)),
        ConceptExpr::Or(cs) => f.allows(Op::Or) && cs.iter().all(|ch| fragment_check(ch, f)),
        ConceptExpr::Exists(r, ch) => f.allows(Op::Exists) && role_ok(r) && fragment_check(ch, f),
        ConceptExpr::Forall(r, ch) => f.allows(Op::Forall) && role_ok(r) && fragment_check(ch, f),
        ConceptExpr::AtLeast(_, r, ch) => f.allows(Op::Geq) && role_ok(r) && fragment_check(ch, f),
    }
}

/// Role depth, maximum number restriction and symbol count of a concept.
///
/// Numeric literals are sized by their binary encoding, so a restriction
/// `>=k` contributes `ceil(log2(k+1))` symbols; `exists` counts as a number
/// restriction of 1 towards `nr`.
pub fn depth_nr_size(c: &ConceptExpr) -> (u32, u32, u64) {
    match c {
        ConceptExpr::Name(_) | ConceptExpr::Top | ConceptExpr::Bot => (0, 0, 1),
        ConceptExpr::Not(ch) => {
            let (d, n, s) = depth_nr_size(ch);
            (d, n, s + 1)
        }
        ConceptExpr::And(cs) | ConceptExpr::Or(cs) => {
            let mut d = 0;
            let mut n = 0;
            let mut s = (cs.len() as u64).saturating_sub(1);
            for ch in cs {
                let (dc, nc, sc) = depth_nr_size(ch);
                d = d.max(dc);
                n = n.max(nc);
                s += sc;
            }
            (d, n, s)
        }
        ConceptExpr::Exists(r, ch) | ConceptExpr::Forall(r, ch) => {
            let (d, n, s) = depth_nr_size(ch);
            let nr = if matches!(c, ConceptExpr::Exists(..)) { n.max(1) } else { n };
            (d + 1, nr, s + 1 + role_size(r))
        }
        ConceptExpr::AtLeast(k, r, ch) => {
            let (d, n, s) = depth_nr_size(ch);
            (d + 1, n.max(*k), s + 1 + binary_digits(*k) + role_size(r))
        }
    }
}

pub fn role_depth(c: &ConceptExpr) -> u32 {
    depth_nr_size(c).0
}

pub fn concept_size(c: &ConceptExpr) -> u64 {
    depth_nr_size(c).2
}

fn role_size(r: &RoleExpr) -> u64 {
    if r.inverted {
        2
    } else {
        1
    }
}

fn binary_digits(k: u32) -> u64 {
    // ceil(log2(k + 1)): the binary length of k, for k >= 1
    (32 - k.leading_zeros()).max(1) as u64
}

/// Errors raised by the concept parser.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown {kind} name `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("number restriction requires k >= 1 (at position {pos})")]
    ZeroRestriction { pos: usize },
}

impl SyntaxError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        SyntaxError::Parse { pos, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u32, usize),
    Amp,
    Pipe,
    Bang,
    LParen,
    RParen,
    Dot,
    Geq,
    Dash,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            b'|' => {
                toks.push((Tok::Pipe, i));
                i += 1;
            }
            b'!' => {
                toks.push((Tok::Bang, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'.' => {
                toks.push((Tok::Dot, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Dash, i));
                i += 1;
            }
            b'>' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'=' {
                    toks.push((Tok::Geq, i));
                    i += 2;
                } else {
                    return Err(SyntaxError::new(i, "expected `>=`"));
                }
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                let val: u32 = lit
                    .parse()
                    .map_err(|_| SyntaxError::new(start, format!("number `{lit}` out of range")))?;
                toks.push((Tok::Int(val, start), start));
            }
            b'A'..=b'Z' | b'a'..=b'z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => return Err(SyntaxError::new(i, format!("unexpected character `{}`", b as char))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: Option<&'a Signature>,
    text_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.text_len)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect_dot(&mut self) -> Result<(), SyntaxError> {
        match self.next() {
            Some(Tok::Dot) => Ok(()),
            _ => Err(SyntaxError::new(self.here(), "expected `.` after role")),
        }
    }

    fn parse_role(&mut self) -> Result<RoleExpr, SyntaxError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Ident(name)) => {
                let inverted = if matches!(self.peek(), Some(Tok::Dash)) {
                    self.next();
                    true
                } else {
                    false
                };
                if let Some(sig) = self.sig {
                    if !sig.contains_role(&name) {
                        return Err(SyntaxError::UnknownName { kind: "role", name });
                    }
                }
                Ok(RoleExpr { name, inverted })
            }
            _ => Err(SyntaxError::new(pos, "expected role name")),
        }
    }

    // atom := "top" | "bot" | NAME | "!" atom | quantifier | "(" or-level ")"
    fn parse_atom(&mut self) -> Result<ConceptExpr, SyntaxError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Ident(word)) => match word.as_str() {
                "top" => Ok(ConceptExpr::Top),
                "bot" => Ok(ConceptExpr::Bot),
                "exists" => {
                    let role = self.parse_role()?;
                    self.expect_dot()?;
                    Ok(ConceptExpr::exists(role, self.parse_atom()?))
                }
                "forall" => {
                    let role = self.parse_role()?;
                    self.expect_dot()?;
                    Ok(ConceptExpr::forall(role, self.parse_atom()?))
                }
                _ => {
                    if let Some(sig) = self.sig {
                        if !sig.contains_concept(&word) {
                            return Err(SyntaxError::UnknownName { kind: "concept", name: word });
                        }
                    }
                    Ok(ConceptExpr::Name(word))
                }
            },
            Some(Tok::Bang) => Ok(ConceptExpr::not(self.parse_atom()?)),
            Some(Tok::Geq) => {
                let (k, kpos) = match self.next() {
                    Some(Tok::Int(k, p)) => (k, p),
                    _ => return Err(SyntaxError::new(self.here(), "expected number after `>=`")),
                };
                if k == 0 {
                    return Err(SyntaxError::ZeroRestriction { pos: kpos });
                }
                let role = self.parse_role()?;
                self.expect_dot()?;
                Ok(ConceptExpr::at_least(k, role, self.parse_atom()?))
            }
            Some(Tok::LParen) => {
                let inner = self.parse_or()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(SyntaxError::new(self.here(), "expected `)`")),
                }
            }
            _ => Err(SyntaxError::new(pos, "expected concept")),
        }
    }

    fn parse_and(&mut self) -> Result<ConceptExpr, SyntaxError> {
        let mut parts = vec![self.parse_atom()?];
        while matches!(self.peek(), Some(Tok::Amp)) {
            self.next();
            parts.push(self.parse_atom()?);
        }
        Ok(ConceptExpr::and(parts))
    }

    fn parse_or(&mut self) -> Result<ConceptExpr, SyntaxError> {
        let mut parts = vec![self.parse_and()?];
        while matches!(self.peek(), Some(Tok::Pipe)) {
            self.next();
            parts.push(self.parse_and()?);
        }
        Ok(ConceptExpr::or(parts))
    }
}

fn parse_with(text: &str, sig: Option<&Signature>) -> Result<ConceptExpr, SyntaxError> {
    let toks = lex(text)?;
    let text_len = text.len();
    let mut p = Parser { toks, pos: 0, sig, text_len };
    let c = p.parse_or()?;
    if p.pos != p.toks.len() {
        return Err(SyntaxError::new(p.here(), "trailing input after concept"));
    }
    Ok(c)
}

/// Parses a concept; every name must occur in `sig`.
pub fn parse_concept(text: &str, sig: &Signature) -> Result<ConceptExpr, SyntaxError> {
    parse_with(text, Some(sig))
}

/// Parses a concept without a signature check (names are taken at face value).
pub fn parse_concept_open(text: &str) -> Result<ConceptExpr, SyntaxError> {
    parse_with(text, None)
}

fn needs_parens_under_quantifier(c: &ConceptExpr) -> bool {
    matches!(c, ConceptExpr::And(_) | ConceptExpr::Or(_))
}

/// Renders a concept in the surface syntax; `parse_concept` of the result
/// yields a structurally identical tree.
pub fn render_concept(c: &ConceptExpr) -> String {
    match c {
        ConceptExpr::Name(n) => n.clone(),
        ConceptExpr::Top => "top".to_string(),
        ConceptExpr::Bot => "bot".to_string(),
        ConceptExpr::Not(ch) => {
            if needs_parens_under_quantifier(ch) {
                format!("!({})", render_concept(ch))
            } else {
                format!("!{}", render_concept(ch))
            }
        }
        ConceptExpr::And(cs) => {
            let parts: Vec<String> = cs
                .iter()
                .map(|ch| {
                    // parenthesize weaker-binding or same-operator children so
                    // the tree re-parses unchanged
                    if matches!(ch, ConceptExpr::Or(_) | ConceptExpr::And(_)) {
                        format!("({})", render_concept(ch))
                    } else {
                        render_concept(ch)
                    }
                })
                .collect();
            parts.join(" & ")
        }
        ConceptExpr::Or(cs) => {
            let parts: Vec<String> = cs
                .iter()
                .map(|ch| {
                    if matches!(ch, ConceptExpr::Or(_)) {
                        format!("({})", render_concept(ch))
                    } else {
                        render_concept(ch)
                    }
                })
                .collect();
            parts.join(" | ")
        }
        ConceptExpr::Exists(r, ch) => {
            if needs_parens_under_quantifier(ch) {
                format!("exists {}.({})", r, render_concept(ch))
            } else {
                format!("exists {}.{}", r, render_concept(ch))
            }
        }
        ConceptExpr::Forall(r, ch) => {
            if needs_parens_under_quantifier(ch) {
                format!("forall {}.({})", r, render_concept(ch))
            } else {
                format!("forall {}.{}", r, render_concept(ch))
            }
        }
        ConceptExpr::AtLeast(k, r, ch) => {
            if needs_parens_under_quantifier(ch) {
                format!(">={} {}.({})", k, r, render_concept(ch))
            } else {
                format!(">={} {}.{}", k, r, render_concept(ch))
            }
        }
    }
}
