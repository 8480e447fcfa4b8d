//! Conway notation: tokenizer, parser, renderer and parameter binding.
//!
//! Grammar accepted by [`parse`]:
//!
//! ```text
//! symbol     := polyhedral | tangle
//! polyhedral := "(2" NAME ")*"
//!             | [N "*"] slots            (slots must contain a separator unless N is given)
//! slots      := [product] (SEP [product])*
//! SEP        := "." | ":"                ("." advances one vertex, ":" two)
//! tangle     := ram ["+" [product]]      (bare "+" adds the tangle 1)
//! ram        := product ("," product)*
//! product    := atom (" " atom)*
//! atom       := INT | NAME | "(" tangle ")"
//! ```
//!
//! `NAME` is a single lowercase letter, `INT` an optionally negative integer. Whitespace is the
//! product operator, so `p1q` is rejected. An empty polyhedral slot stands for the tangle 1 and a
//! trailing `0` in a product rotates the preceding tangle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConwayError {
    #[error("unexpected {found} at position {pos} in {symbol:?}")]
    Unexpected { symbol: String, pos: usize, found: String },
    #[error("unsupported construct at position {pos} in {symbol:?}: {msg}")]
    Unsupported { symbol: String, pos: usize, msg: String },
    #[error("parameter {0} is not bound")]
    Unbound(String),
    #[error("parameter {name} = {value}: substituted values need |value| >= 2")]
    TooSmall { name: String, value: i64 },
}

/// Integer tangle: a literal or a named parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Lit(i64),
    Param(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tangle {
    Int(Term),
    /// Juxtaposition, left associative.
    Product(Vec<Tangle>),
    /// Comma-separated ramification.
    Ramification(Vec<Tangle>),
    /// `base + addend`; a bare trailing `+` has addend `1`.
    Plus(Box<Tangle>, Box<Tangle>),
}

/// Basic polyhedron underlying a polyhedral symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Base {
    /// `6*`, also written with a leading `.` or with bare slot separators.
    Six,
    Eight,
    Nine,
    /// `(2n)*` for `n >= 3`; `6*` and `8*` are the cases `n = 3, 4`.
    Antiprism(Term),
}

impl Base {
    /// Number of vertex slots, when known.
    pub fn slot_count(&self) -> Option<usize> {
        match self {
            Base::Six => Some(6),
            Base::Eight => Some(8),
            Base::Nine => Some(9),
            Base::Antiprism(Term::Lit(n)) => Some(2 * *n as usize),
            Base::Antiprism(Term::Param(_)) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConwayAst {
    Tangle(Tangle),
    /// Slots indexed by vertex position; `None` is the default tangle 1.
    Polyhedron {
        base: Base,
        slots: Vec<Option<Tangle>>,
    },
}

/// Parameter name to value.
pub type ParamBinding = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Name(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Dot,
    Colon,
    Star,
    Space,
}

fn describe(t: Option<&(usize, Tok)>) -> String {
    match t {
        None => "end of input".to_string(),
        Some((_, tok)) => format!("{tok:?}"),
    }
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ConwayError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out: Vec<(usize, Tok)> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                out.push((start, Tok::Space));
                continue;
            }
            '0'..='9' | '-' | '\u{2212}' => {
                let negative = c == '-' || c == '\u{2212}';
                if negative {
                    i += 1;
                }
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[ds..i].iter().collect();
                let v: i64 = digits.parse().map_err(|_| ConwayError::Unexpected {
                    symbol: s.to_string(),
                    pos: start,
                    found: format!("{c:?}"),
                })?;
                out.push((start, Tok::Int(if negative { -v } else { v })));
                continue;
            }
            'a'..='z' => {
                if chars.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    return Err(ConwayError::Unsupported {
                        symbol: s.to_string(),
                        pos: start,
                        msg: "tangles must be separated by spaces".into(),
                    });
                }
                Tok::Name(c.to_string())
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '.' => Tok::Dot,
            ':' => Tok::Colon,
            '*' => Tok::Star,
            _ => return Err(ConwayError::Unexpected { symbol: s.to_string(), pos: start, found: format!("{c:?}") }),
        };
        out.push((start, tok));
        i += 1;
    }
    // Spaces only matter between two atoms; drop them elsewhere.
    let is_atom_end = |t: &Tok| matches!(t, Tok::Int(_) | Tok::Name(_) | Tok::RParen);
    let is_atom_start = |t: &Tok| matches!(t, Tok::Int(_) | Tok::Name(_) | Tok::LParen);
    let mut cleaned = Vec::new();
    for k in 0..out.len() {
        if out[k].1 == Tok::Space {
            let keep = k > 0 && k + 1 < out.len() && is_atom_end(&out[k - 1].1) && is_atom_start(&out[k + 1].1);
            if !keep {
                continue;
            }
        } else if k > 0 {
            let prev = &out[k - 1].1;
            let glued = matches!(prev, Tok::Int(_) | Tok::Name(_)) && matches!(out[k].1, Tok::Int(_) | Tok::Name(_));
            if glued {
                return Err(ConwayError::Unsupported {
                    symbol: s.to_string(),
                    pos: out[k].0,
                    msg: "tangles must be separated by spaces".into(),
                });
            }
        }
        cleaned.push(out[k].clone());
    }
    Ok(cleaned)
}

struct Parser<'a> {
    symbol: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn unexpected(&self) -> ConwayError {
        let tok = self.toks.get(self.pos);
        ConwayError::Unexpected {
            symbol: self.symbol.to_string(),
            pos: tok.map(|t| t.0).unwrap_or(self.symbol.chars().count()),
            found: describe(tok),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ConwayError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn tangle(&mut self) -> Result<Tangle, ConwayError> {
        let ram = self.ramification()?;
        if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let addend = if self.at_atom() { self.product()? } else { Tangle::Int(Term::Lit(1)) };
            return Ok(Tangle::Plus(Box::new(ram), Box::new(addend)));
        }
        Ok(ram)
    }

    fn ramification(&mut self) -> Result<Tangle, ConwayError> {
        let mut items = vec![self.product()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            items.push(self.product()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Tangle::Ramification(items) })
    }

    fn at_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Name(_) | Tok::LParen))
    }

    fn product(&mut self) -> Result<Tangle, ConwayError> {
        let mut items = vec![self.atom()?];
        loop {
            match self.peek() {
                Some(Tok::Space) => {
                    self.pos += 1;
                    items.push(self.atom()?);
                }
                Some(Tok::LParen) => items.push(self.atom()?),
                _ if matches!(self.toks.get(self.pos.wrapping_sub(1)), Some((_, Tok::RParen))) && self.at_atom() => {
                    items.push(self.atom()?)
                }
                _ => break,
            }
        }
        if items.len() == 1 {
            return Ok(items.pop().unwrap());
        }
        let mut flat = Vec::new();
        for (i, it) in items.into_iter().enumerate() {
            match it {
                Tangle::Product(inner) if i == 0 => flat.extend(inner),
                other => flat.push(other),
            }
        }
        Ok(Tangle::Product(flat))
    }

    fn atom(&mut self) -> Result<Tangle, ConwayError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Tangle::Int(Term::Lit(v)))
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                Ok(Tangle::Int(Term::Param(n)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.tangle()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn slots(&mut self, base: Base) -> Result<ConwayAst, ConwayError> {
        let mut slots: Vec<Option<Tangle>> = Vec::new();
        let mut at = 0usize;
        loop {
            if self.at_atom() {
                let t = self.product()?;
                if slots.len() <= at {
                    slots.resize(at + 1, None);
                }
                slots[at] = Some(t);
            }
            match self.peek() {
                Some(Tok::Dot) => at += 1,
                Some(Tok::Colon) => at += 2,
                None => break,
                _ => return Err(self.unexpected()),
            }
            self.pos += 1;
        }
        if let Some(n) = base.slot_count() {
            if slots.len() > n {
                return Err(ConwayError::Unsupported {
                    symbol: self.symbol.to_string(),
                    pos: 0,
                    msg: format!("more than {n} vertex slots"),
                });
            }
        }
        Ok(ConwayAst::Polyhedron { base, slots })
    }
}

/// Parses a Conway symbol; parameters stay symbolic.
///
/// ```
/// use knotfam::conway::{parse, ConwayAst, Tangle, Term};
/// let ast = parse("2 3 2").unwrap();
/// let two = || Tangle::Int(Term::Lit(2));
/// assert_eq!(ast, ConwayAst::Tangle(Tangle::Product(vec![two(), Tangle::Int(Term::Lit(3)), two()])));
/// assert_eq!(parse("p,q,r+").unwrap().to_string(), "p,q,r+");
/// ```
pub fn parse(symbol: &str) -> Result<ConwayAst, ConwayError> {
    let compact: String = symbol.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(n) = compact.strip_prefix("(2").and_then(|r| r.strip_suffix(")*")) {
        if n.len() == 1 && n.chars().all(|c| c.is_ascii_lowercase()) {
            return Ok(ConwayAst::Polyhedron { base: Base::Antiprism(Term::Param(n.into())), slots: vec![] });
        }
    }
    let toks = tokenize(symbol)?;
    let mut p = Parser { symbol, toks, pos: 0 };
    if let [(_, Tok::Int(n)), (_, Tok::Star), ..] = &p.toks[..] {
        let n = *n;
        let base = match n {
            6 => Base::Six,
            8 => Base::Eight,
            9 => Base::Nine,
            n if n >= 10 && n % 2 == 0 => {
                if p.toks.len() > 2 {
                    return Err(ConwayError::Unsupported {
                        symbol: symbol.to_string(),
                        pos: p.toks[2].0,
                        msg: format!("slots on {n}*"),
                    });
                }
                Base::Antiprism(Term::Lit(n / 2))
            }
            _ => {
                return Err(ConwayError::Unsupported {
                    symbol: symbol.to_string(),
                    pos: p.toks[0].0,
                    msg: format!("basic polyhedron {n}*"),
                })
            }
        };
        p.pos = 2;
        return p.slots(base);
    }
    let has_sep = p.toks.iter().any(|t| matches!(t.1, Tok::Dot | Tok::Colon));
    if has_sep {
        return p.slots(Base::Six);
    }
    let t = p.tangle()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(ConwayAst::Tangle(t))
}

impl Tangle {
    fn collect_params(&self, out: &mut BTreeSet<String>) {
        match self {
            Tangle::Int(Term::Param(n)) => {
                out.insert(n.clone());
            }
            Tangle::Int(Term::Lit(_)) => {}
            Tangle::Product(v) | Tangle::Ramification(v) => v.iter().for_each(|t| t.collect_params(out)),
            Tangle::Plus(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
        }
    }

    fn bind(&self, b: &ParamBinding) -> Result<Tangle, ConwayError> {
        Ok(match self {
            Tangle::Int(t) => Tangle::Int(Term::Lit(bind_term(t, b)?)),
            Tangle::Product(v) => Tangle::Product(v.iter().map(|t| t.bind(b)).collect::<Result<_, _>>()?),
            Tangle::Ramification(v) => Tangle::Ramification(v.iter().map(|t| t.bind(b)).collect::<Result<_, _>>()?),
            Tangle::Plus(x, y) => Tangle::Plus(Box::new(x.bind(b)?), Box::new(y.bind(b)?)),
        })
    }
}

fn bind_term(t: &Term, b: &ParamBinding) -> Result<i64, ConwayError> {
    match t {
        Term::Lit(v) => Ok(*v),
        Term::Param(n) => {
            let v = *b.get(n).ok_or_else(|| ConwayError::Unbound(n.clone()))?;
            if v.abs() < 2 {
                return Err(ConwayError::TooSmall { name: n.clone(), value: v });
            }
            Ok(v)
        }
    }
}

impl ConwayAst {
    /// Parameter names in alphabetical order.
    pub fn params(&self) -> Vec<String> {
        let mut out = BTreeSet::new();
        match self {
            ConwayAst::Tangle(t) => t.collect_params(&mut out),
            ConwayAst::Polyhedron { base, slots } => {
                if let Base::Antiprism(Term::Param(n)) = base {
                    out.insert(n.clone());
                }
                slots.iter().flatten().for_each(|t| t.collect_params(&mut out));
            }
        }
        out.into_iter().collect()
    }

    pub fn is_concrete(&self) -> bool {
        self.params().is_empty()
    }

    /// Substitutes every parameter; values must satisfy `|v| >= 2`.
    pub fn bind(&self, b: &ParamBinding) -> Result<ConwayAst, ConwayError> {
        Ok(match self {
            ConwayAst::Tangle(t) => ConwayAst::Tangle(t.bind(b)?),
            ConwayAst::Polyhedron { base, slots } => {
                let base = match base {
                    Base::Antiprism(t) => {
                        let n = bind_term(t, b)?;
                        match n {
                            3 => Base::Six,
                            4 => Base::Eight,
                            n => Base::Antiprism(Term::Lit(n)),
                        }
                    }
                    other => other.clone(),
                };
                let slots =
                    slots.iter().map(|s| s.as_ref().map(|t| t.bind(b)).transpose()).collect::<Result<_, _>>()?;
                ConwayAst::Polyhedron { base, slots }
            }
        })
    }
}

/// Reads `p=2,q=3` (spaces allowed).
pub fn parse_binding(s: &str) -> Result<ParamBinding, String> {
    let mut out = ParamBinding::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected name=value, got {part:?}"))?;
        let v: i64 = v.trim().parse().map_err(|_| format!("bad value in {part:?}"))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn fmt_term(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Lit(v) => write!(f, "{v}"),
        Term::Param(n) => write!(f, "{n}"),
    }
}

struct Wrapped<'a>(&'a Tangle, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tangle::Int(t) => fmt_term(t, f),
            Tangle::Product(v) => {
                for (i, t) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    let wrap = !matches!(t, Tangle::Int(_)) && (i > 0 || !matches!(t, Tangle::Product(_)));
                    write!(f, "{}", Wrapped(t, wrap))?;
                }
                Ok(())
            }
            Tangle::Ramification(v) => {
                for (i, t) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", Wrapped(t, matches!(t, Tangle::Ramification(_) | Tangle::Plus(..))))?;
                }
                Ok(())
            }
            Tangle::Plus(a, b) => {
                write!(f, "{}+", Wrapped(a, matches!(**a, Tangle::Plus(..))))?;
                if **b != Tangle::Int(Term::Lit(1)) {
                    write!(f, "{}", Wrapped(b, matches!(**b, Tangle::Ramification(_) | Tangle::Plus(..))))?;
                }
                Ok(())
            }
        }
    }
}

/// Slot content is written as a product; anything looser is parenthesized.
struct Slot<'a>(&'a Tangle);

impl fmt::Display for Slot<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Wrapped(self.0, matches!(self.0, Tangle::Ramification(_) | Tangle::Plus(..))))
    }
}

fn separator(steps: usize) -> String {
    ":".repeat(steps / 2) + if steps % 2 == 1 { "." } else { "" }
}

impl fmt::Display for ConwayAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConwayAst::Tangle(t) => write!(f, "{t}"),
            ConwayAst::Polyhedron { base, slots } => {
                let filled: Vec<usize> = (0..slots.len()).filter(|&i| slots[i].is_some()).collect();
                let mut body = String::new();
                let mut prev = 0usize;
                for (k, &i) in filled.iter().enumerate() {
                    let steps = if k == 0 { i } else { i - prev };
                    body += &separator(steps);
                    body += &Slot(slots[i].as_ref().unwrap()).to_string();
                    prev = i;
                }
                match base {
                    Base::Six if body.contains(['.', ':']) => write!(f, "{body}"),
                    Base::Six => write!(f, "6*{body}"),
                    Base::Eight => write!(f, "8*{body}"),
                    Base::Nine => write!(f, "9*{body}"),
                    Base::Antiprism(Term::Param(n)) => write!(f, "(2{n})*"),
                    Base::Antiprism(Term::Lit(n)) => write!(f, "{}*", 2 * n),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Tangle {
        Tangle::Int(Term::Lit(v))
    }
    fn par(n: &str) -> Tangle {
        Tangle::Int(Term::Param(n.into()))
    }

    #[test]
    fn structures() {
        assert_eq!(
            parse("p,q,r+").unwrap(),
            ConwayAst::Tangle(Tangle::Plus(
                Box::new(Tangle::Ramification(vec![par("p"), par("q"), par("r")])),
                Box::new(int(1))
            ))
        );
        assert_eq!(
            parse(".p:q 0").unwrap(),
            ConwayAst::Polyhedron {
                base: Base::Six,
                slots: vec![None, Some(par("p")), None, Some(Tangle::Product(vec![par("q"), int(0)]))],
            }
        );
        assert_eq!(
            parse("8*p:.q").unwrap(),
            ConwayAst::Polyhedron { base: Base::Eight, slots: vec![Some(par("p")), None, None, Some(par("q"))] }
        );
        assert_eq!(
            parse("(2n)*").unwrap(),
            ConwayAst::Polyhedron { base: Base::Antiprism(Term::Param("n".into())), slots: vec![] }
        );
    }

    #[test]
    fn round_trips() {
        for s in [
            "p",
            "p q 1 r",
            "(p,q) (r,s)",
            "(p,q),r,(s,t)",
            "(p,q+r) (s,t)",
            "p 1,q 1,r 1+",
            ".p",
            ".p:q 0",
            "p 0:q 0:r 0",
            ".(p,q).r 0",
            "8*p 0::q 0",
            "8*p:.q",
            "9*.p 0",
            "9*p",
            "6*",
            "8*",
            "(2n)*",
            ".p 1 1:q",
            "p,q,r+s",
            "(p,q) 1 1 (r,s)",
        ] {
            assert_eq!(parse(s).unwrap().to_string(), s, "{s}");
        }
    }

    #[test]
    fn rejects() {
        assert!(matches!(parse("p1q"), Err(ConwayError::Unsupported { .. })));
        assert!(matches!(parse("p,,q"), Err(ConwayError::Unexpected { .. })));
        assert!(matches!(parse("7*"), Err(ConwayError::Unsupported { .. })));
        assert!(matches!(parse("(p,q"), Err(ConwayError::Unexpected { .. })));
        assert!(parse("p # q").is_err());
    }

    #[test]
    fn binding() {
        let b = parse_binding("p=2, q=3").unwrap();
        assert_eq!(parse("p q").unwrap().bind(&b).unwrap().to_string(), "2 3");
        let one = parse_binding("p=1").unwrap();
        assert_eq!(parse("p").unwrap().bind(&one), Err(ConwayError::TooSmall { name: "p".into(), value: 1 }));
        assert_eq!(parse("p q").unwrap().bind(&one), Err(ConwayError::TooSmall { name: "p".into(), value: 1 }));
        assert_eq!(parse("(2n)*").unwrap().bind(&parse_binding("n=4").unwrap()).unwrap().to_string(), "8*");
    }
}
