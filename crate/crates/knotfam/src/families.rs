//! Catalog of closed-form Tutte polynomials for link families.
//!
//! Formulas live in `data/catalog.toml` as expressions in a small language:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*     ("/" must divide exactly)
//! unary  := "-" unary | power
//! power  := atom ["^" unary]              (integer exponent; negative only on monomials)
//! atom   := INT | NAME | "x" | "y" | "(" expr ")"
//!         | gx(expr) | gy(expr)           ((x^n - 1)/(x - 1), any integer n)
//!         | dual(expr)                    (swap x and y)
//!         | wheel(expr)                   (Tutte polynomial of the wheel with n spokes)
//!         | sum(NAME, expr, expr, expr)   (sum over an integer range, reversed ranges negate)
//!         | T["id"](expr, ...)            (another entry, arguments in its parameter order)
//!         | K["name"]                     (fixed polynomial)
//! ```
//!
//! Besides families the data file holds `[[fixed]]` polynomials and `[[aux]]` entries: named
//! parametric sub-expressions that formulas may reference with `T[...]` but that are not families.

use crate::conway::{self, Base, ConwayAst, ParamBinding, Tangle, Term};
use crate::graphcore::MultiGraph;
use crate::poly::{LaurentPoly2, Var};
use crate::tait::{self, Checkerboard};
use crate::tutte::TutteEngine;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Deserialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

const CATALOG_SRC: &str = include_str!("../data/catalog.toml");
const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    Unknown(String),
    #[error("family {id:?} takes {expected} parameters, got {got}")]
    Arity { id: String, expected: usize, got: usize },
    #[error("parameter {0} missing")]
    MissingParam(String),
    #[error("in {id:?}: {msg}")]
    Expr { id: String, msg: String },
    #[error("catalog data: {0}")]
    Data(String),
    #[error("wheel needs n >= 1, got {0}")]
    WheelSize(i64),
    #[error("{id:?} has no graph builder")]
    NoBuilder { id: String },
    #[error(transparent)]
    Conway(#[from] conway::ConwayError),
    #[error(transparent)]
    Tait(#[from] tait::TaitError),
}

#[derive(Debug, Deserialize)]
struct RawCatalog {
    #[serde(default)]
    fixed: Vec<RawFixed>,
    #[serde(default)]
    aux: Vec<RawAux>,
    family: Vec<RawFamily>,
}

#[derive(Debug, Deserialize)]
struct RawFixed {
    name: String,
    value: String,
}

#[derive(Debug, Deserialize)]
struct RawAux {
    id: String,
    params: Vec<String>,
    expr: String,
}

#[derive(Debug, Deserialize)]
struct RawFamily {
    id: String,
    params: Vec<String>,
    expr: String,
    #[serde(default = "default_graph")]
    graph: String,
    #[serde(default)]
    note: String,
}

fn default_graph() -> String {
    "primary".into()
}

/// Which Tait graph the formula describes, if it can be built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphSource {
    Built(Checkerboard),
    None,
}

/// A catalog entry.
#[derive(Debug, Clone)]
pub struct FamilyEntry {
    /// Position in the catalog, starting at 1.
    pub index: usize,
    /// Conway symbol of the family.
    pub id: String,
    pub params: Vec<String>,
    pub source: String,
    pub graph: GraphSource,
    pub note: String,
    expr: Expr,
}

impl FamilyEntry {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn symbol(&self) -> Result<ConwayAst, FamilyError> {
        Ok(conway::parse(&self.id)?)
    }
}

/// Summary row of [`list_families`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInfo {
    pub index: usize,
    pub id: String,
    pub arity: usize,
}

#[derive(Debug, Clone)]
enum Expr {
    Int(i64),
    Var(String),
    X,
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Geom(Var, Box<Expr>),
    Dual(Box<Expr>),
    Wheel(Box<Expr>),
    Sum(String, Box<Expr>, Box<Expr>, Box<Expr>),
    Ref(String, Vec<Expr>),
    Fixed(String),
}

#[derive(Debug, Clone)]
enum Val {
    Int(BigInt),
    Poly(LaurentPoly2),
}

impl Val {
    fn poly(self) -> LaurentPoly2 {
        match self {
            Val::Int(i) => LaurentPoly2::constant(i),
            Val::Poly(p) => p,
        }
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn err(&self, msg: &str) -> String {
        format!("{msg} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.src))
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn need(&mut self, c: u8) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, String> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, String> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn string_lit(&mut self) -> Result<String, String> {
        self.need(b'[')?;
        self.need(b'"')?;
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos] != b'"' {
            self.pos += 1;
        }
        let s = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        self.need(b'"')?;
        self.need(b']')?;
        Ok(s)
    }

    fn args(&mut self) -> Result<Vec<Expr>, String> {
        self.need(b'(')?;
        let mut out = Vec::new();
        if self.eat(b')') {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat(b')') {
                return Ok(out);
            }
            self.need(b',')?;
        }
    }

    fn atom(&mut self) -> Result<Expr, String> {
        self.ws();
        let Some(&c) = self.src.get(self.pos) else {
            return Err(self.err("unexpected end"));
        };
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.need(b')')?;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let txt = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return txt.parse().map(Expr::Int).map_err(|_| self.err("integer too large"));
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
            let one = |p: &mut Self| -> Result<Box<Expr>, String> {
                let mut a = p.args()?;
                if a.len() != 1 {
                    return Err(p.err("expected one argument"));
                }
                Ok(Box::new(a.pop().unwrap()))
            };
            return match word.as_str() {
                "x" => Ok(Expr::X),
                "y" => Ok(Expr::Y),
                "gx" => Ok(Expr::Geom(Var::X, one(self)?)),
                "gy" => Ok(Expr::Geom(Var::Y, one(self)?)),
                "dual" => Ok(Expr::Dual(one(self)?)),
                "wheel" => Ok(Expr::Wheel(one(self)?)),
                "sum" => {
                    self.need(b'(')?;
                    self.ws();
                    let s = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                        self.pos += 1;
                    }
                    let var = String::from_utf8_lossy(&self.src[s..self.pos]).into_owned();
                    self.need(b',')?;
                    let lo = self.expr()?;
                    self.need(b',')?;
                    let hi = self.expr()?;
                    self.need(b',')?;
                    let body = self.expr()?;
                    self.need(b')')?;
                    Ok(Expr::Sum(var, Box::new(lo), Box::new(hi), Box::new(body)))
                }
                "T" => {
                    let id = self.string_lit()?;
                    Ok(Expr::Ref(id, self.args()?))
                }
                "K" => Ok(Expr::Fixed(self.string_lit()?)),
                _ if word.len() == 1 => Ok(Expr::Var(word)),
                _ => Err(self.err(&format!("unknown name {word:?}"))),
            };
        }
        Err(self.err("unexpected character"))
    }
}

fn parse_expr(src: &str) -> Result<Expr, String> {
    let mut p = ExprParser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.ws();
    if p.pos != src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Loaded catalog: entries plus fixed polynomials.
pub struct Catalog {
    entries: Vec<FamilyEntry>,
    aux: HashMap<String, FamilyEntry>,
    by_id: HashMap<String, usize>,
    fixed: HashMap<String, LaurentPoly2>,
}

impl Catalog {
    /// Parses catalog text in the bundled TOML layout.
    pub fn from_toml(src: &str) -> Result<Catalog, FamilyError> {
        let raw: RawCatalog = toml::from_str(src).map_err(|e| FamilyError::Data(e.to_string()))?;
        let mut fixed = HashMap::new();
        for f in raw.fixed {
            let v: LaurentPoly2 = f.value.parse().map_err(|e| FamilyError::Data(format!("{}: {e}", f.name)))?;
            fixed.insert(f.name, v);
        }
        let mut aux = HashMap::new();
        for a in raw.aux {
            let expr = parse_expr(&a.expr).map_err(|msg| FamilyError::Expr { id: a.id.clone(), msg })?;
            let entry = FamilyEntry {
                index: 0,
                id: a.id.clone(),
                params: a.params,
                source: a.expr,
                graph: GraphSource::None,
                note: String::new(),
                expr,
            };
            aux.insert(a.id, entry);
        }
        let mut entries = Vec::new();
        let mut by_id = HashMap::new();
        for (i, f) in raw.family.into_iter().enumerate() {
            let expr = parse_expr(&f.expr).map_err(|msg| FamilyError::Expr { id: f.id.clone(), msg })?;
            let graph = match f.graph.as_str() {
                "primary" => GraphSource::Built(Checkerboard::Primary),
                "dual" => GraphSource::Built(Checkerboard::Dual),
                "none" => GraphSource::None,
                other => return Err(FamilyError::Data(format!("{}: bad graph kind {other:?}", f.id))),
            };
            if by_id.insert(f.id.clone(), i).is_some() {
                return Err(FamilyError::Data(format!("duplicate id {:?}", f.id)));
            }
            entries.push(FamilyEntry {
                index: i + 1,
                id: f.id,
                params: f.params,
                source: f.expr,
                graph,
                note: f.note,
                expr,
            });
        }
        Ok(Catalog { entries, aux, by_id, fixed })
    }

    /// The bundled catalog.
    pub fn bundled() -> &'static Catalog {
        static CAT: OnceLock<Catalog> = OnceLock::new();
        CAT.get_or_init(|| Catalog::from_toml(CATALOG_SRC).expect("bundled catalog is valid"))
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Result<&FamilyEntry, FamilyError> {
        self.by_id.get(id.trim()).map(|&i| &self.entries[i]).ok_or_else(|| FamilyError::Unknown(id.to_string()))
    }

    pub fn fixed(&self, name: &str) -> Option<&LaurentPoly2> {
        self.fixed.get(name)
    }

    /// Evaluates an entry; all of its parameters must be bound (extra bindings are an error).
    pub fn eval(&self, id: &str, params: &ParamBinding) -> Result<LaurentPoly2, FamilyError> {
        let e = self.get(id)?;
        if params.len() != e.arity() {
            return Err(FamilyError::Arity { id: e.id.clone(), expected: e.arity(), got: params.len() });
        }
        let args = e
            .params
            .iter()
            .map(|p| params.get(p).copied().ok_or_else(|| FamilyError::MissingParam(p.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        self.eval_args(e, &args, 0)
    }

    fn eval_args(&self, e: &FamilyEntry, args: &[i64], depth: usize) -> Result<LaurentPoly2, FamilyError> {
        if args.len() != e.arity() {
            return Err(FamilyError::Arity { id: e.id.clone(), expected: e.arity(), got: args.len() });
        }
        if depth > MAX_DEPTH {
            return Err(FamilyError::Expr { id: e.id.clone(), msg: "reference depth exceeded".into() });
        }
        let env: BTreeMap<String, BigInt> =
            e.params.iter().cloned().zip(args.iter().map(|&a| BigInt::from(a))).collect();
        Ok(self.ev(&e.expr, &env, e, depth)?.poly())
    }

    fn ev(&self, x: &Expr, env: &BTreeMap<String, BigInt>, e: &FamilyEntry, depth: usize) -> Result<Val, FamilyError> {
        let fail = |msg: String| FamilyError::Expr { id: e.id.clone(), msg };
        let int = |v: Val| -> Result<i64, FamilyError> {
            match v {
                Val::Int(i) => i.to_i64().ok_or_else(|| fail("integer out of range".into())),
                Val::Poly(_) => Err(fail("expected an integer, found a polynomial".into())),
            }
        };
        Ok(match x {
            Expr::Int(i) => Val::Int(BigInt::from(*i)),
            Expr::Var(n) => Val::Int(env.get(n).cloned().ok_or_else(|| fail(format!("unbound name {n}")))?),
            Expr::X => Val::Poly(LaurentPoly2::x()),
            Expr::Y => Val::Poly(LaurentPoly2::y()),
            Expr::Neg(a) => match self.ev(a, env, e, depth)? {
                Val::Int(i) => Val::Int(-i),
                Val::Poly(p) => Val::Poly(-p),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                let (l, r) = (self.ev(a, env, e, depth)?, self.ev(b, env, e, depth)?);
                match (x, l, r) {
                    (Expr::Add(..), Val::Int(l), Val::Int(r)) => Val::Int(l + r),
                    (Expr::Sub(..), Val::Int(l), Val::Int(r)) => Val::Int(l - r),
                    (Expr::Mul(..), Val::Int(l), Val::Int(r)) => Val::Int(l * r),
                    (Expr::Add(..), l, r) => Val::Poly(l.poly() + r.poly()),
                    (Expr::Sub(..), l, r) => Val::Poly(l.poly() - r.poly()),
                    (_, l, r) => Val::Poly(l.poly() * r.poly()),
                }
            }
            Expr::Div(a, b) => {
                let (l, r) = (self.ev(a, env, e, depth)?, self.ev(b, env, e, depth)?);
                match (l, r) {
                    (Val::Int(l), Val::Int(r)) if !r.is_zero() && (&l % &r).is_zero() => Val::Int(l / r),
                    (l, r) => Val::Poly(l.poly().div_exact(&r.poly()).ok_or_else(|| fail("inexact division".into()))?),
                }
            }
            Expr::Pow(a, b) => {
                let exp = int(self.ev(b, env, e, depth)?)?;
                match self.ev(a, env, e, depth)? {
                    Val::Int(i) if exp >= 0 => Val::Int(num_traits::pow(i, exp as usize)),
                    Val::Int(_) => return Err(fail("negative power of an integer".into())),
                    Val::Poly(p) => {
                        Val::Poly(poly_pow(&p, exp).ok_or_else(|| fail("negative power of a non-monomial".into()))?)
                    }
                }
            }
            Expr::Geom(v, a) => Val::Poly(LaurentPoly2::geom_sum(*v, int(self.ev(a, env, e, depth)?)?)),
            Expr::Dual(a) => Val::Poly(self.ev(a, env, e, depth)?.poly().swap_xy()),
            Expr::Wheel(a) => Val::Poly(eval_wheel(int(self.ev(a, env, e, depth)?)?)?),
            Expr::Sum(var, lo, hi, body) => {
                let (lo, hi) = (int(self.ev(lo, env, e, depth)?)?, int(self.ev(hi, env, e, depth)?)?);
                let (range, sign) = if hi >= lo { (lo..=hi, 1) } else { (hi + 1..=lo - 1, -1) };
                let mut acc = Val::Int(BigInt::zero());
                let mut inner = env.clone();
                for i in range {
                    inner.insert(var.clone(), BigInt::from(i));
                    let v = self.ev(body, &inner, e, depth)?;
                    acc = match (acc, v) {
                        (Val::Int(a), Val::Int(b)) => Val::Int(a + b),
                        (a, b) => Val::Poly(a.poly() + b.poly()),
                    };
                }
                if sign < 0 {
                    match acc {
                        Val::Int(a) => Val::Int(-a),
                        Val::Poly(p) => Val::Poly(-p),
                    }
                } else {
                    acc
                }
            }
            Expr::Ref(id, a) => {
                let target = match self.aux.get(id) {
                    Some(a) => a,
                    None => self.get(id).map_err(|_| fail(format!("unknown reference {id:?}")))?,
                };
                let args = a.iter().map(|x| int(self.ev(x, env, e, depth)?)).collect::<Result<Vec<_>, _>>()?;
                Val::Poly(self.eval_args(target, &args, depth + 1)?)
            }
            Expr::Fixed(n) => {
                Val::Poly(self.fixed.get(n).cloned().ok_or_else(|| fail(format!("unknown fixed {n:?}")))?)
            }
        })
    }

    /// Tait graph of the entry at the given parameters, in the coloring its formula describes.
    pub fn graph(&self, id: &str, params: &ParamBinding) -> Result<MultiGraph, FamilyError> {
        let e = self.get(id)?;
        let GraphSource::Built(coloring) = e.graph else {
            return Err(FamilyError::NoBuilder { id: e.id.clone() });
        };
        let ast = e.symbol()?.bind(params)?;
        Ok(tait::tait_graph(&ast, coloring)?)
    }

    /// The entry whose symbol becomes `ast` under some binding, with that binding.
    ///
    /// ```
    /// use knotfam::{conway::parse, families::Catalog};
    /// let (e, b) = Catalog::bundled().match_symbol(&parse("2,3,4").unwrap()).unwrap();
    /// assert_eq!((e.id.as_str(), b["q"]), ("p,q,r", 3));
    /// ```
    pub fn match_symbol(&self, ast: &ConwayAst) -> Option<(&FamilyEntry, ParamBinding)> {
        self.entries.iter().find_map(|e| {
            let pattern = e.symbol().ok()?;
            let mut b = ParamBinding::new();
            unify_ast(&pattern, ast, &mut b).then_some((e, b))
        })
    }

    /// Formula value and engine value side by side.
    pub fn verify(
        &self,
        id: &str,
        params: &ParamBinding,
        engine: &TutteEngine,
    ) -> Result<(LaurentPoly2, LaurentPoly2), FamilyError> {
        let formula = self.eval(id, params)?;
        let g = self.graph(id, params)?;
        Ok((formula, engine.tutte(&g)))
    }
}

fn unify_ast(pat: &ConwayAst, val: &ConwayAst, b: &mut ParamBinding) -> bool {
    match (pat, val) {
        (ConwayAst::Tangle(p), ConwayAst::Tangle(v)) => unify_tangle(p, v, b),
        (ConwayAst::Polyhedron { base: pb, slots: ps }, ConwayAst::Polyhedron { base: vb, slots: vs }) => {
            let base_ok = match (pb, vb) {
                (Base::Antiprism(t), Base::Six) => unify_term(t, 3, b),
                (Base::Antiprism(t), Base::Eight) => unify_term(t, 4, b),
                (Base::Antiprism(t), Base::Antiprism(Term::Lit(n))) => unify_term(t, *n, b),
                (p, v) => p == v,
            };
            let trim = |s: &[Option<Tangle>]| s.len() - s.iter().rev().take_while(|x| x.is_none()).count();
            let (np, nv) = (trim(ps), trim(vs));
            base_ok
                && np == nv
                && ps[..np].iter().zip(&vs[..nv]).all(|(p, v)| match (p, v) {
                    (None, None) => true,
                    (Some(p), Some(v)) => unify_tangle(p, v, b),
                    _ => false,
                })
        }
        _ => false,
    }
}

fn unify_tangle(pat: &Tangle, val: &Tangle, b: &mut ParamBinding) -> bool {
    match (pat, val) {
        (Tangle::Int(p), Tangle::Int(Term::Lit(v))) => unify_term(p, *v, b),
        (Tangle::Product(p), Tangle::Product(v)) | (Tangle::Ramification(p), Tangle::Ramification(v)) => {
            p.len() == v.len() && p.iter().zip(v).all(|(p, v)| unify_tangle(p, v, b))
        }
        (Tangle::Plus(p1, p2), Tangle::Plus(v1, v2)) => unify_tangle(p1, v1, b) && unify_tangle(p2, v2, b),
        _ => false,
    }
}

fn unify_term(pat: &Term, v: i64, b: &mut ParamBinding) -> bool {
    match pat {
        Term::Lit(l) => *l == v,
        Term::Param(_) if v.abs() < 2 => false,
        Term::Param(n) => *b.entry(n.clone()).or_insert(v) == v,
    }
}

fn poly_pow(p: &LaurentPoly2, e: i64) -> Option<LaurentPoly2> {
    if e >= 0 {
        return Some(p.pow(e as u32));
    }
    if p.len() != 1 {
        return None;
    }
    let (a, b, c) = p.terms().next()?;
    if c.abs() != BigInt::from(1) {
        return None;
    }
    let n = -e;
    let sign = if c.sign() == num_bigint::Sign::Minus && n % 2 == 1 { -1 } else { 1 };
    Some(LaurentPoly2::monomial(sign, a * e, b * e))
}

/// Tutte polynomial of the wheel `Wh(n+1)` (an `n`-cycle plus a hub), radical-free.
///
/// ```
/// let k4: knotfam::LaurentPoly2 = "x^3 + 3x^2 + 2x + 4x*y + 2y + 3y^2 + y^3".parse().unwrap();
/// assert_eq!(knotfam::families::eval_wheel(3).unwrap(), k4);
/// ```
pub fn eval_wheel(n: i64) -> Result<LaurentPoly2, FamilyError> {
    if n < 1 {
        return Err(FamilyError::WheelSize(n));
    }
    let s = LaurentPoly2::one() + LaurentPoly2::x() + LaurentPoly2::y();
    let xy = LaurentPoly2::monomial(1, 1, 1);
    let (mut prev, mut cur) = (LaurentPoly2::constant(2), s.clone());
    for _ in 1..n {
        let next = &s * &cur - &xy * &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur + xy - LaurentPoly2::x() - LaurentPoly2::y() - LaurentPoly2::one())
}

/// Evaluates a bundled catalog entry.
pub fn eval(id: &str, params: &ParamBinding) -> Result<LaurentPoly2, FamilyError> {
    Catalog::bundled().eval(id, params)
}

/// All bundled entries in catalog order.
pub fn list_families() -> Vec<FamilyInfo> {
    Catalog::bundled()
        .entries()
        .iter()
        .map(|e| FamilyInfo { index: e.index, id: e.id.clone(), arity: e.arity() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = r#"
[[fixed]]
name = "k4"
value = "x^3 + 3x^2 + 2x + 4x*y + 2y + 3y^2 + y^3"

[[family]]
id = "p"
params = ["p"]
expr = "gx(p) + y - 1"

[[family]]
id = "p q"
params = ["p", "q"]
graph = "dual"
expr = "gx(p)*gy(q) + x^p + y^q - 1"

[[family]]
id = "twice"
params = ["p"]
graph = "none"
expr = "T[\"p\"](p)*T[\"p\"](2) - K[\"k4\"] + sum(i, 1, p, x^i) + 2^3"
"#;

    fn b(s: &str) -> ParamBinding {
        conway::parse_binding(s).unwrap()
    }

    #[test]
    fn interpreter_basics() {
        let c = Catalog::from_toml(MINI).unwrap();
        assert_eq!(c.eval("p", &b("p=3")).unwrap().to_string(), "1*x^1 + 1*x^2 + 1*y^1");
        assert_eq!(c.eval("p q", &b("p=2,q=2")).unwrap(), "x^2 + x*y + y^2 + x + y".parse().unwrap());
        let t = c.eval("twice", &b("p=2")).unwrap();
        let p2: LaurentPoly2 = "x + y".parse().unwrap();
        let k4 = c.fixed("k4").unwrap().clone();
        let expect = &p2 * &p2 - k4 + "x + x^2 + 8".parse::<LaurentPoly2>().unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn reversed_sum_negates() {
        let c =
            Catalog::from_toml("[[family]]\nid = \"s\"\nparams = [\"p\"]\nexpr = \"sum(i, 1, p - 1, x^i)\"\n").unwrap();
        assert_eq!(c.eval("s", &b("p=-1")).unwrap(), "-1 - x^-1".parse().unwrap());
        assert_eq!(c.eval("s", &b("p=1")).unwrap(), LaurentPoly2::zero());
    }

    #[test]
    fn errors() {
        let c = Catalog::from_toml(MINI).unwrap();
        assert!(matches!(c.eval("nope", &b("p=2")), Err(FamilyError::Unknown(_))));
        assert!(matches!(c.eval("p", &b("p=2,q=3")), Err(FamilyError::Arity { .. })));
        assert!(matches!(c.eval("p q", &b("p=2,r=3")), Err(FamilyError::MissingParam(_))));
        assert!(Catalog::from_toml("[[family]]\nid=\"a\"\nparams=[]\nexpr=\"x +\"\n").is_err());
        assert!(matches!(eval_wheel(0), Err(FamilyError::WheelSize(0))));
    }

    #[test]
    fn wheel_base_cases() {
        assert_eq!(eval_wheel(1).unwrap(), LaurentPoly2::monomial(1, 1, 1));
    }
}
