//! Input documents: a small text grammar plus an equivalent JSON form
//! (versioned with `format: 1`). Monoid relations are written additively,
//! local-model binomials multiplicatively; both normalize to exponent
//! vectors. Printing then parsing is the identity on every document.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::bcotangent::{CRingPresentation, InteriorExpr, RPoint, SmoothExpr};
use crate::monoid::{AffineMonoid, MonoidPresentation};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// One map of a germ pair, prior to integer-linear elaboration.
#[derive(Clone, Debug, PartialEq)]
pub struct GermMapDoc {
    pub name: String,
    pub source: MonoidPresentation,
    pub source_free: usize,
    /// per target generator: coefficients over the source generators
    pub send: Vec<Vec<u64>>,
    /// b-Jacobian rows
    pub jac: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GermPairDoc {
    pub target: MonoidPresentation,
    pub target_free: usize,
    pub maps: Vec<GermMapDoc>,
}

/// Base block of a ring document: a free base ring C plus the images of
/// its generators, presenting a morphism C -> this ring for pushouts.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseBlock {
    pub real_names: Vec<String>,
    pub interior_names: Vec<String>,
    pub real_images: Vec<SmoothExpr>,
    pub interior_images: Vec<InteriorExpr>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CringDoc {
    pub ring: CRingPresentation,
    pub base: Option<BaseBlock>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    MonoidPresentation(MonoidPresentation),
    AffineMonoid(AffineMonoid),
    /// binomial surface syntax for the same data as a presentation
    LocalModel(MonoidPresentation),
    GermPair(GermPairDoc),
    Cring(CringDoc),
    Point(RPoint),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub name: String,
    pub payload: Payload,
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match &self.payload {
            Payload::MonoidPresentation(_) => "monoid_presentation",
            Payload::AffineMonoid(_) => "affine_monoid",
            Payload::LocalModel(_) => "local_model",
            Payload::GermPair(_) => "germ_pair",
            Payload::Cring(_) => "cring_presentation",
            Payload::Point(_) => "point",
        }
    }
}

// ---------------------------------------------------------------- lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
    Eof,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Lexer, ParseError> {
        let mut toks = Vec::new();
        let mut line = 1usize;
        let mut col = 1usize;
        let mut chars = text.chars().peekable();
        while let Some(&c) = chars.peek() {
            let (l, co) = (line, col);
            let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
                let c = chars.next().unwrap();
                if c == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                c
            };
            if c.is_whitespace() {
                bump(&mut chars);
            } else if c == '#' {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), l, co));
            } else if c.is_ascii_digit() {
                let mut s = String::new();
                let mut seen_e = false;
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() || c == '.' {
                        seen_e = false;
                        s.push(bump(&mut chars));
                    } else if c == 'e' || c == 'E' {
                        seen_e = true;
                        s.push(bump(&mut chars));
                    } else if seen_e && (c == '+' || c == '-') {
                        seen_e = false;
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Num(s), l, co));
            } else if "{};=+-*^()/|,".contains(c) {
                bump(&mut chars);
                toks.push((Tok::Sym(c), l, co));
            } else {
                return Err(ParseError {
                    line: l,
                    col: co,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
        toks.push((Tok::Eof, line, col));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (_, line, col) = &self.toks[self.pos];
        ParseError {
            line: *line,
            col: *col,
            msg: msg.into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == &Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.peek() == &Tok::Ident(kw.to_string()) {
            self.next();
            Ok(())
        } else {
            Err(self.err(format!("expected `{kw}`")))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.err("expected identifier")),
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Num(s) => {
                let v = s
                    .parse::<u64>()
                    .map_err(|_| self.err("expected a nonnegative integer"))?;
                self.next();
                Ok(v)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn float(&mut self) -> Result<f64, ParseError> {
        let neg = if self.peek() == &Tok::Sym('-') {
            self.next();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Num(s) => {
                let v = s.parse::<f64>().map_err(|_| self.err("bad number"))?;
                self.next();
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let neg = if self.peek() == &Tok::Sym('-') {
            self.next();
            true
        } else {
            false
        };
        let p = self.uint()?;
        let mut r = BigRational::from(BigInt::from(p));
        if self.peek() == &Tok::Sym('/') {
            self.next();
            let q = self.uint()?;
            if q == 0 {
                return Err(self.err("zero denominator"));
            }
            r /= BigRational::from(BigInt::from(q));
        }
        Ok(if neg { -r } else { r })
    }
}

// --------------------------------------------------------------- parser

fn gen_index(lex: &Lexer, names: &[String], name: &str) -> Result<usize, ParseError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| lex.err(format!("reference to undeclared generator `{name}`")))
}

/// additive side: `2a + b` or `0`
fn parse_additive(lex: &mut Lexer, names: &[String]) -> Result<Vec<u64>, ParseError> {
    let mut v = vec![0u64; names.len()];
    if lex.peek() == &Tok::Num("0".into()) {
        lex.next();
        return Ok(v);
    }
    loop {
        let coeff = if let Tok::Num(_) = lex.peek() {
            lex.uint()?
        } else {
            1
        };
        let name = lex.ident()?;
        v[gen_index(lex, names, &name)?] += coeff;
        if lex.peek() == &Tok::Sym('+') {
            lex.next();
        } else {
            break;
        }
    }
    Ok(v)
}

/// multiplicative side: `a^2*b` or `1`
fn parse_monomial(lex: &mut Lexer, names: &[String]) -> Result<Vec<u64>, ParseError> {
    let mut v = vec![0u64; names.len()];
    if lex.peek() == &Tok::Num("1".into()) {
        lex.next();
        return Ok(v);
    }
    loop {
        let name = lex.ident()?;
        let idx = gen_index(lex, names, &name)?;
        let e = if lex.peek() == &Tok::Sym('^') {
            lex.next();
            lex.uint()?
        } else {
            1
        };
        v[idx] += e;
        if lex.peek() == &Tok::Sym('*') {
            lex.next();
        } else {
            break;
        }
    }
    Ok(v)
}

fn parse_monoid_body(
    lex: &mut Lexer,
    multiplicative: bool,
) -> Result<MonoidPresentation, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut rels = Vec::new();
    lex.expect_sym('{')?;
    while lex.peek() != &Tok::Sym('}') {
        match lex.ident()?.as_str() {
            kw @ ("gens" | "coords") => {
                if multiplicative != (kw == "coords") {
                    return Err(lex.err(format!("unexpected `{kw}` in this document kind")));
                }
                while let Tok::Ident(_) = lex.peek() {
                    names.push(lex.ident()?);
                }
                lex.expect_sym(';')?;
            }
            kw @ ("rel" | "binomial") => {
                if multiplicative != (kw == "binomial") {
                    return Err(lex.err(format!("unexpected `{kw}` in this document kind")));
                }
                let lhs = if multiplicative {
                    parse_monomial(lex, &names)?
                } else {
                    parse_additive(lex, &names)?
                };
                lex.expect_sym('=')?;
                let rhs = if multiplicative {
                    parse_monomial(lex, &names)?
                } else {
                    parse_additive(lex, &names)?
                };
                rels.push((lhs, rhs));
                lex.expect_sym(';')?;
            }
            other => return Err(lex.err(format!("unknown item `{other}`"))),
        }
    }
    lex.expect_sym('}')?;
    MonoidPresentation::new(names, rels).map_err(|e| lex.err(e.to_string()))
}

fn parse_affine_body(lex: &mut Lexer) -> Result<AffineMonoid, ParseError> {
    lex.expect_sym('{')?;
    lex.expect_kw("rank")?;
    let rank = lex.uint()? as usize;
    lex.expect_sym(';')?;
    let mut gens = Vec::new();
    while lex.peek() != &Tok::Sym('}') {
        lex.expect_kw("gen")?;
        let mut g = Vec::new();
        for _ in 0..rank {
            let neg = if lex.peek() == &Tok::Sym('-') {
                lex.next();
                true
            } else {
                false
            };
            let x = BigInt::from(lex.uint()?);
            g.push(if neg { -x } else { x });
        }
        lex.expect_sym(';')?;
        gens.push(g);
    }
    lex.expect_sym('}')?;
    Ok(AffineMonoid {
        ambient: crate::lattice::AbelianGroupData::free(rank),
        gen_images: gens,
        provenance: None,
    })
}

fn parse_germ_body(lex: &mut Lexer) -> Result<GermPairDoc, ParseError> {
    lex.expect_sym('{')?;
    lex.expect_kw("target")?;
    let (target, target_free) = parse_germ_monoid(lex)?;
    let mut maps = Vec::new();
    while lex.peek() != &Tok::Sym('}') {
        lex.expect_kw("map")?;
        let name = lex.ident()?;
        lex.expect_sym('{')?;
        lex.expect_kw("source")?;
        let (source, source_free) = parse_germ_monoid(lex)?;
        let mut send = vec![None; target.n_gens()];
        let mut jac = Vec::new();
        while lex.peek() != &Tok::Sym('}') {
            match lex.ident()?.as_str() {
                "send" => {
                    let tname = lex.ident()?;
                    let idx = gen_index(lex, &target.generator_names, &tname)?;
                    lex.expect_sym('=')?;
                    send[idx] = Some(parse_additive(lex, &source.generator_names)?);
                    lex.expect_sym(';')?;
                }
                "jac" => {
                    let mut row = Vec::new();
                    while lex.peek() != &Tok::Sym(';') {
                        row.push(lex.rational()?);
                    }
                    lex.expect_sym(';')?;
                    jac.push(row);
                }
                other => return Err(lex.err(format!("unknown item `{other}`"))),
            }
        }
        lex.expect_sym('}')?;
        let send: Vec<Vec<u64>> = send
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    lex.err(format!(
                        "map `{name}` sends no image for `{}`",
                        target.generator_names[i]
                    ))
                })
            })
            .collect::<Result<_, _>>()?;
        maps.push(GermMapDoc {
            name,
            source,
            source_free,
            send,
            jac,
        });
    }
    lex.expect_sym('}')?;
    if maps.len() != 2 {
        return Err(lex.err("a germ pair needs exactly two maps"));
    }
    Ok(GermPairDoc {
        target,
        target_free,
        maps,
    })
}

fn parse_germ_monoid(lex: &mut Lexer) -> Result<(MonoidPresentation, usize), ParseError> {
    // `{ gens ...; rel ...; free n; }`
    let mut names: Vec<String> = Vec::new();
    let mut rels = Vec::new();
    let mut free = 0usize;
    lex.expect_sym('{')?;
    while lex.peek() != &Tok::Sym('}') {
        match lex.ident()?.as_str() {
            "gens" => {
                while let Tok::Ident(_) = lex.peek() {
                    names.push(lex.ident()?);
                }
                lex.expect_sym(';')?;
            }
            "rel" => {
                let lhs = parse_additive(lex, &names)?;
                lex.expect_sym('=')?;
                let rhs = parse_additive(lex, &names)?;
                rels.push((lhs, rhs));
                lex.expect_sym(';')?;
            }
            "free" => {
                free = lex.uint()? as usize;
                lex.expect_sym(';')?;
            }
            other => return Err(lex.err(format!("unknown item `{other}`"))),
        }
    }
    lex.expect_sym('}')?;
    let p = MonoidPresentation::new(names, rels).map_err(|e| lex.err(e.to_string()))?;
    Ok((p, free))
}

/// smooth expression grammar: sums of products of atoms, with `exp(...)`
fn parse_smooth(
    lex: &mut Lexer,
    reals: &[String],
    interiors: &[String],
) -> Result<SmoothExpr, ParseError> {
    let mut e = parse_smooth_term(lex, reals, interiors)?;
    loop {
        match lex.peek() {
            Tok::Sym('+') => {
                lex.next();
                let rhs = parse_smooth_term(lex, reals, interiors)?;
                e = SmoothExpr::sum(e, rhs);
            }
            Tok::Sym('-') => {
                lex.next();
                let rhs = parse_smooth_term(lex, reals, interiors)?;
                e = SmoothExpr::sum(e, SmoothExpr::neg(rhs));
            }
            _ => break,
        }
    }
    Ok(e)
}

fn parse_smooth_term(
    lex: &mut Lexer,
    reals: &[String],
    interiors: &[String],
) -> Result<SmoothExpr, ParseError> {
    let mut e = parse_smooth_atom(lex, reals, interiors)?;
    while lex.peek() == &Tok::Sym('*') {
        lex.next();
        let rhs = parse_smooth_atom(lex, reals, interiors)?;
        e = SmoothExpr::prod(e, rhs);
    }
    Ok(e)
}

fn parse_smooth_atom(
    lex: &mut Lexer,
    reals: &[String],
    interiors: &[String],
) -> Result<SmoothExpr, ParseError> {
    match lex.peek().clone() {
        Tok::Sym('-') => {
            lex.next();
            Ok(SmoothExpr::neg(parse_smooth_atom(lex, reals, interiors)?))
        }
        Tok::Sym('(') => {
            lex.next();
            let e = parse_smooth(lex, reals, interiors)?;
            lex.expect_sym(')')?;
            Ok(e)
        }
        Tok::Num(s) => {
            lex.next();
            let v = s
                .parse::<f64>()
                .map_err(|_| lex.err("bad numeric literal"))?;
            Ok(SmoothExpr::Const(v))
        }
        Tok::Ident(name) if name == "exp" => {
            lex.next();
            lex.expect_sym('(')?;
            let e = parse_smooth(lex, reals, interiors)?;
            lex.expect_sym(')')?;
            Ok(SmoothExpr::exp(e))
        }
        Tok::Ident(name) => {
            lex.next();
            if let Some(i) = reals.iter().position(|n| *n == name) {
                Ok(SmoothExpr::RealVar(i))
            } else if let Some(i) = interiors.iter().position(|n| *n == name) {
                Ok(SmoothExpr::IntVar(i))
            } else {
                Err(lex.err(format!("reference to undeclared generator `{name}`")))
            }
        }
        _ => Err(lex.err("expected an expression")),
    }
}

/// interior normal form: `y1^2*y3*exp(f)` or `1`
fn parse_interior(
    lex: &mut Lexer,
    reals: &[String],
    interiors: &[String],
) -> Result<InteriorExpr, ParseError> {
    let mut alpha = vec![0u64; interiors.len()];
    let mut factor = SmoothExpr::zero();
    if lex.peek() == &Tok::Num("1".into()) {
        lex.next();
        return Ok(InteriorExpr { alpha, factor });
    }
    loop {
        match lex.peek().clone() {
            Tok::Ident(name) if name == "exp" => {
                lex.next();
                lex.expect_sym('(')?;
                let f = parse_smooth(lex, reals, interiors)?;
                lex.expect_sym(')')?;
                factor = if factor == SmoothExpr::zero() {
                    f
                } else {
                    SmoothExpr::sum(factor, f)
                };
            }
            Tok::Ident(name) => {
                lex.next();
                let idx = interiors
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| lex.err(format!("`{name}` is not an interior generator")))?;
                let e = if lex.peek() == &Tok::Sym('^') {
                    lex.next();
                    lex.uint()?
                } else {
                    1
                };
                alpha[idx] += e;
            }
            _ => return Err(lex.err("expected an interior monomial")),
        }
        if lex.peek() == &Tok::Sym('*') {
            lex.next();
        } else {
            break;
        }
    }
    Ok(InteriorExpr { alpha, factor })
}

fn parse_cring_body(lex: &mut Lexer) -> Result<CringDoc, ParseError> {
    let mut reals: Vec<String> = Vec::new();
    let mut interiors: Vec<String> = Vec::new();
    let mut rrels = Vec::new();
    let mut irels = Vec::new();
    let mut base = None;
    lex.expect_sym('{')?;
    while lex.peek() != &Tok::Sym('}') {
        match lex.ident()?.as_str() {
            "reals" => {
                while let Tok::Ident(_) = lex.peek() {
                    reals.push(lex.ident()?);
                }
                lex.expect_sym(';')?;
            }
            "interiors" => {
                while let Tok::Ident(_) = lex.peek() {
                    interiors.push(lex.ident()?);
                }
                lex.expect_sym(';')?;
            }
            "rrel" => {
                rrels.push(parse_smooth(lex, &reals, &interiors)?);
                lex.expect_sym(';')?;
            }
            "irel" => {
                let lhs = parse_interior(lex, &reals, &interiors)?;
                lex.expect_sym('=')?;
                let rhs = parse_interior(lex, &reals, &interiors)?;
                irels.push((lhs, rhs));
                lex.expect_sym(';')?;
            }
            "base" => {
                base = Some(parse_base_block(lex, &reals, &interiors)?);
            }
            other => return Err(lex.err(format!("unknown item `{other}`"))),
        }
    }
    lex.expect_sym('}')?;
    Ok(CringDoc {
        ring: CRingPresentation {
            real_names: reals,
            interior_names: interiors,
            real_relations: rrels,
            interior_relations: irels,
        },
        base,
    })
}

fn parse_base_block(
    lex: &mut Lexer,
    reals: &[String],
    interiors: &[String],
) -> Result<BaseBlock, ParseError> {
    let mut b_reals: Vec<String> = Vec::new();
    let mut b_interiors: Vec<String> = Vec::new();
    let mut r_images: Vec<Option<SmoothExpr>> = Vec::new();
    let mut i_images: Vec<Option<InteriorExpr>> = Vec::new();
    lex.expect_sym('{')?;
    while lex.peek() != &Tok::Sym('}') {
        match lex.ident()?.as_str() {
            "reals" => {
                while let Tok::Ident(_) = lex.peek() {
                    b_reals.push(lex.ident()?);
                    r_images.push(None);
                }
                lex.expect_sym(';')?;
            }
            "interiors" => {
                while let Tok::Ident(_) = lex.peek() {
                    b_interiors.push(lex.ident()?);
                    i_images.push(None);
                }
                lex.expect_sym(';')?;
            }
            "send" => {
                let name = lex.ident()?;
                lex.expect_sym('=')?;
                if let Some(i) = b_reals.iter().position(|n| *n == name) {
                    r_images[i] = Some(parse_smooth(lex, reals, interiors)?);
                } else if let Some(i) = b_interiors.iter().position(|n| *n == name) {
                    i_images[i] = Some(parse_interior(lex, reals, interiors)?);
                } else {
                    return Err(lex.err(format!("`{name}` is not a base generator")));
                }
                lex.expect_sym(';')?;
            }
            other => return Err(lex.err(format!("unknown item `{other}`"))),
        }
    }
    lex.expect_sym('}')?;
    let real_images = r_images
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| lex.err(format!("base generator `{}` has no image", b_reals[i]))))
        .collect::<Result<_, _>>()?;
    let interior_images = i_images
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            x.ok_or_else(|| lex.err(format!("base generator `{}` has no image", b_interiors[i])))
        })
        .collect::<Result<_, _>>()?;
    Ok(BaseBlock {
        real_names: b_reals,
        interior_names: b_interiors,
        real_images,
        interior_images,
    })
}

fn parse_point_body(lex: &mut Lexer) -> Result<RPoint, ParseError> {
    let mut reals = Vec::new();
    let mut interiors = Vec::new();
    lex.expect_sym('{')?;
    while lex.peek() != &Tok::Sym('}') {
        match lex.ident()?.as_str() {
            "reals" => {
                while matches!(lex.peek(), Tok::Num(_) | Tok::Sym('-')) {
                    reals.push(lex.float()?);
                }
                lex.expect_sym(';')?;
            }
            "interiors" => {
                while matches!(lex.peek(), Tok::Num(_) | Tok::Sym('-')) {
                    interiors.push(lex.float()?);
                }
                lex.expect_sym(';')?;
            }
            other => return Err(lex.err(format!("unknown item `{other}`"))),
        }
    }
    lex.expect_sym('}')?;
    Ok(RPoint::new(reals, interiors))
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return parse_json(text);
    }
    let mut lex = Lexer::new(text)?;
    let kind = lex.ident()?;
    let name = lex.ident()?;
    let payload = match kind.as_str() {
        "monoid" => Payload::MonoidPresentation(parse_monoid_body(&mut lex, false)?),
        "model" => Payload::LocalModel(parse_monoid_body(&mut lex, true)?),
        "affine" => Payload::AffineMonoid(parse_affine_body(&mut lex)?),
        "germ" => Payload::GermPair(parse_germ_body(&mut lex)?),
        "cring" => Payload::Cring(parse_cring_body(&mut lex)?),
        "point" => Payload::Point(parse_point_body(&mut lex)?),
        other => return Err(lex.err(format!("unknown document kind `{other}`"))),
    };
    if lex.peek() != &Tok::Eof {
        return Err(lex.err("trailing input after document"));
    }
    Ok(Document { name, payload })
}

// -------------------------------------------------------------- printer

fn print_additive(v: &[u64], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in v.iter().enumerate() {
        if c == 1 {
            parts.push(names[i].clone());
        } else if c > 1 {
            parts.push(format!("{c}{}", names[i]));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn print_monomial(v: &[u64], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in v.iter().enumerate() {
        if c == 1 {
            parts.push(names[i].clone());
        } else if c > 1 {
            parts.push(format!("{}^{c}", names[i]));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn print_smooth(e: &SmoothExpr, reals: &[String], interiors: &[String]) -> String {
    // precedence: 1 sum, 2 product, 3 atom
    fn go(e: &SmoothExpr, reals: &[String], interiors: &[String], prec: u8) -> String {
        let (s, my) = match e {
            SmoothExpr::Const(c) => (format!("{c}"), 3),
            SmoothExpr::RealVar(a) => (reals[*a].clone(), 3),
            SmoothExpr::IntVar(a) => (interiors[*a].clone(), 3),
            SmoothExpr::Sum(a, b) => {
                if let SmoothExpr::Neg(inner) = &**b {
                    (
                        format!(
                            "{} - {}",
                            go(a, reals, interiors, 1),
                            go(inner, reals, interiors, 2)
                        ),
                        1,
                    )
                } else {
                    (
                        format!(
                            "{} + {}",
                            go(a, reals, interiors, 1),
                            go(b, reals, interiors, 2)
                        ),
                        1,
                    )
                }
            }
            SmoothExpr::Prod(a, b) => (
                format!(
                    "{}*{}",
                    go(a, reals, interiors, 2),
                    go(b, reals, interiors, 3)
                ),
                2,
            ),
            SmoothExpr::Neg(a) => (format!("-{}", go(a, reals, interiors, 3)), 2),
            SmoothExpr::Exp(a) => (format!("exp({})", go(a, reals, interiors, 1)), 3),
        };
        if my < prec {
            format!("({s})")
        } else {
            s
        }
    }
    go(e, reals, interiors, 1)
}

fn print_interior(e: &InteriorExpr, reals: &[String], interiors: &[String]) -> String {
    let mono = print_monomial(&e.alpha, interiors);
    if e.factor == SmoothExpr::zero() {
        mono
    } else if mono == "1" {
        format!("exp({})", print_smooth(&e.factor, reals, interiors))
    } else {
        format!("{mono}*exp({})", print_smooth(&e.factor, reals, interiors))
    }
}

fn print_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn print(doc: &Document) -> String {
    let mut s = String::new();
    match &doc.payload {
        Payload::MonoidPresentation(p) | Payload::LocalModel(p) => {
            let multiplicative = matches!(doc.payload, Payload::LocalModel(_));
            let kind = if multiplicative { "model" } else { "monoid" };
            writeln!(s, "{kind} {} {{", doc.name).unwrap();
            if !p.generator_names.is_empty() {
                let kw = if multiplicative { "coords" } else { "gens" };
                writeln!(s, "  {kw} {};", p.generator_names.join(" ")).unwrap();
            }
            for (u, v) in &p.relations {
                if multiplicative {
                    writeln!(
                        s,
                        "  binomial {} = {};",
                        print_monomial(u, &p.generator_names),
                        print_monomial(v, &p.generator_names)
                    )
                    .unwrap();
                } else {
                    writeln!(
                        s,
                        "  rel {} = {};",
                        print_additive(u, &p.generator_names),
                        print_additive(v, &p.generator_names)
                    )
                    .unwrap();
                }
            }
            s.push_str("}\n");
        }
        Payload::AffineMonoid(m) => {
            writeln!(s, "affine {} {{", doc.name).unwrap();
            writeln!(s, "  rank {};", m.rank()).unwrap();
            for g in &m.gen_images {
                let coords: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                writeln!(s, "  gen {};", coords.join(" ")).unwrap();
            }
            s.push_str("}\n");
        }
        Payload::GermPair(gp) => {
            writeln!(s, "germ {} {{", doc.name).unwrap();
            s.push_str("  target ");
            print_germ_monoid(&mut s, &gp.target, gp.target_free, 2);
            for m in &gp.maps {
                writeln!(s, "  map {} {{", m.name).unwrap();
                s.push_str("    source ");
                print_germ_monoid(&mut s, &m.source, m.source_free, 4);
                for (i, img) in m.send.iter().enumerate() {
                    writeln!(
                        s,
                        "    send {} = {};",
                        gp.target.generator_names[i],
                        print_additive(img, &m.source.generator_names)
                    )
                    .unwrap();
                }
                for row in &m.jac {
                    let cells: Vec<String> = row.iter().map(print_rational).collect();
                    writeln!(s, "    jac {};", cells.join(" ")).unwrap();
                }
                s.push_str("  }\n");
            }
            s.push_str("}\n");
        }
        Payload::Cring(c) => {
            writeln!(s, "cring {} {{", doc.name).unwrap();
            let r = &c.ring;
            if !r.real_names.is_empty() {
                writeln!(s, "  reals {};", r.real_names.join(" ")).unwrap();
            }
            if !r.interior_names.is_empty() {
                writeln!(s, "  interiors {};", r.interior_names.join(" ")).unwrap();
            }
            for f in &r.real_relations {
                writeln!(s, "  rrel {};", print_smooth(f, &r.real_names, &r.interior_names))
                    .unwrap();
            }
            for (g, h) in &r.interior_relations {
                writeln!(
                    s,
                    "  irel {} = {};",
                    print_interior(g, &r.real_names, &r.interior_names),
                    print_interior(h, &r.real_names, &r.interior_names)
                )
                .unwrap();
            }
            if let Some(b) = &c.base {
                s.push_str("  base {\n");
                if !b.real_names.is_empty() {
                    writeln!(s, "    reals {};", b.real_names.join(" ")).unwrap();
                }
                if !b.interior_names.is_empty() {
                    writeln!(s, "    interiors {};", b.interior_names.join(" ")).unwrap();
                }
                for (i, e) in b.real_images.iter().enumerate() {
                    writeln!(
                        s,
                        "    send {} = {};",
                        b.real_names[i],
                        print_smooth(e, &r.real_names, &r.interior_names)
                    )
                    .unwrap();
                }
                for (i, e) in b.interior_images.iter().enumerate() {
                    writeln!(
                        s,
                        "    send {} = {};",
                        b.interior_names[i],
                        print_interior(e, &r.real_names, &r.interior_names)
                    )
                    .unwrap();
                }
                s.push_str("  }\n");
            }
            s.push_str("}\n");
        }
        Payload::Point(p) => {
            writeln!(s, "point {} {{", doc.name).unwrap();
            let fmt = |xs: &[f64]| -> String {
                xs.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(" ")
            };
            if !p.reals.is_empty() {
                writeln!(s, "  reals {};", fmt(&p.reals)).unwrap();
            }
            if !p.interiors.is_empty() {
                writeln!(s, "  interiors {};", fmt(&p.interiors)).unwrap();
            }
            s.push_str("}\n");
        }
    }
    s
}

fn print_germ_monoid(s: &mut String, p: &MonoidPresentation, free: usize, indent: usize) {
    let pad = " ".repeat(indent);
    s.push_str("{\n");
    if !p.generator_names.is_empty() {
        writeln!(s, "{pad}  gens {};", p.generator_names.join(" ")).unwrap();
    }
    for (u, v) in &p.relations {
        writeln!(
            s,
            "{pad}  rel {} = {};",
            print_additive(u, &p.generator_names),
            print_additive(v, &p.generator_names)
        )
        .unwrap();
    }
    writeln!(s, "{pad}  free {free};").unwrap();
    writeln!(s, "{pad}}}").unwrap();
}

// ----------------------------------------------------------------- JSON

fn json_rels(rels: &[(Vec<u64>, Vec<u64>)]) -> Value {
    Value::Array(
        rels.iter()
            .map(|(u, v)| json!({ "lhs": u, "rhs": v }))
            .collect(),
    )
}

pub fn to_json(doc: &Document) -> Value {
    let mut v = match &doc.payload {
        Payload::MonoidPresentation(p) | Payload::LocalModel(p) => json!({
            "gens": p.generator_names,
            "rels": json_rels(&p.relations),
        }),
        Payload::AffineMonoid(m) => json!({
            "rank": m.rank(),
            "gens": m.gen_images.iter().map(|g| {
                g.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        }),
        Payload::GermPair(gp) => json!({
            "target": {
                "gens": gp.target.generator_names,
                "rels": json_rels(&gp.target.relations),
                "free": gp.target_free,
            },
            "maps": gp.maps.iter().map(|m| json!({
                "name": m.name,
                "source": {
                    "gens": m.source.generator_names,
                    "rels": json_rels(&m.source.relations),
                    "free": m.source_free,
                },
                "send": m.send,
                "jac": m.jac.iter().map(|row| {
                    row.iter().map(print_rational).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
        Payload::Cring(c) => {
            let r = &c.ring;
            let mut v = json!({
                "reals": r.real_names,
                "interiors": r.interior_names,
                "rrels": r.real_relations.iter()
                    .map(|f| print_smooth(f, &r.real_names, &r.interior_names))
                    .collect::<Vec<_>>(),
                "irels": r.interior_relations.iter().map(|(g, h)| json!({
                    "lhs": print_interior(g, &r.real_names, &r.interior_names),
                    "rhs": print_interior(h, &r.real_names, &r.interior_names),
                })).collect::<Vec<_>>(),
            });
            if let Some(b) = &c.base {
                v["base"] = json!({
                    "reals": b.real_names,
                    "interiors": b.interior_names,
                    "real_images": b.real_images.iter()
                        .map(|e| print_smooth(e, &r.real_names, &r.interior_names))
                        .collect::<Vec<_>>(),
                    "interior_images": b.interior_images.iter()
                        .map(|e| print_interior(e, &r.real_names, &r.interior_names))
                        .collect::<Vec<_>>(),
                });
            }
            v
        }
        Payload::Point(p) => json!({
            "reals": p.reals,
            "interiors": p.interiors,
        }),
    };
    v["format"] = json!(1);
    v["kind"] = json!(doc.kind());
    v["name"] = json!(doc.name);
    v
}

fn jerr(msg: impl Into<String>) -> ParseError {
    ParseError {
        line: 0,
        col: 0,
        msg: msg.into(),
    }
}

fn jstr(v: &Value, key: &str) -> Result<String, ParseError> {
    v.get(key)
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| jerr(format!("missing string field `{key}`")))
}

fn jstrs(v: &Value, key: &str) -> Result<Vec<String>, ParseError> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| jerr(format!("missing array field `{key}`")))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| jerr(format!("field `{key}` must hold strings")))
        })
        .collect()
}

fn juvec(v: &Value) -> Result<Vec<u64>, ParseError> {
    v.as_array()
        .ok_or_else(|| jerr("expected an array of integers"))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| jerr("expected a nonnegative integer")))
        .collect()
}

fn jrels(v: &Value, key: &str) -> Result<Vec<(Vec<u64>, Vec<u64>)>, ParseError> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| jerr(format!("missing field `{key}`")))?
        .iter()
        .map(|r| {
            Ok((
                juvec(r.get("lhs").ok_or_else(|| jerr("relation missing lhs"))?)?,
                juvec(r.get("rhs").ok_or_else(|| jerr("relation missing rhs"))?)?,
            ))
        })
        .collect()
}

fn jpres(v: &Value) -> Result<MonoidPresentation, ParseError> {
    MonoidPresentation::new(jstrs(v, "gens")?, jrels(v, "rels")?).map_err(|e| jerr(e.to_string()))
}

/// parse a single expression string through the text-grammar machinery
fn jexpr(text: &str, reals: &[String], interiors: &[String]) -> Result<SmoothExpr, ParseError> {
    let mut lex = Lexer::new(text)?;
    let e = parse_smooth(&mut lex, reals, interiors)?;
    if lex.peek() != &Tok::Eof {
        return Err(jerr(format!("trailing input in expression `{text}`")));
    }
    Ok(e)
}

fn jinterior(text: &str, reals: &[String], interiors: &[String]) -> Result<InteriorExpr, ParseError> {
    let mut lex = Lexer::new(text)?;
    let e = parse_interior(&mut lex, reals, interiors)?;
    if lex.peek() != &Tok::Eof {
        return Err(jerr(format!("trailing input in expression `{text}`")));
    }
    Ok(e)
}

pub fn parse_json(text: &str) -> Result<Document, ParseError> {
    let v: Value = serde_json::from_str(text).map_err(|e| jerr(e.to_string()))?;
    if v.get("format").and_then(Value::as_u64) != Some(1) {
        return Err(jerr("unsupported or missing `format` (expected 1)"));
    }
    let name = jstr(&v, "name")?;
    let kind = jstr(&v, "kind")?;
    let payload = match kind.as_str() {
        "monoid_presentation" => Payload::MonoidPresentation(jpres(&v)?),
        "local_model" => Payload::LocalModel(jpres(&v)?),
        "affine_monoid" => {
            let rank = v
                .get("rank")
                .and_then(Value::as_u64)
                .ok_or_else(|| jerr("missing `rank`"))? as usize;
            let gens = v
                .get("gens")
                .and_then(Value::as_array)
                .ok_or_else(|| jerr("missing `gens`"))?
                .iter()
                .map(|g| {
                    g.as_array()
                        .ok_or_else(|| jerr("generator must be an array"))?
                        .iter()
                        .map(|x| {
                            x.as_str()
                                .and_then(|s| s.parse::<BigInt>().ok())
                                .ok_or_else(|| jerr("coordinates are integer strings"))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            for g in &gens {
                if g.len() != rank {
                    return Err(jerr("generator arity mismatch"));
                }
            }
            Payload::AffineMonoid(AffineMonoid {
                ambient: crate::lattice::AbelianGroupData::free(rank),
                gen_images: gens,
                provenance: None,
            })
        }
        "germ_pair" => {
            let tv = v.get("target").ok_or_else(|| jerr("missing `target`"))?;
            let target = jpres(tv)?;
            let target_free = tv.get("free").and_then(Value::as_u64).unwrap_or(0) as usize;
            let maps = v
                .get("maps")
                .and_then(Value::as_array)
                .ok_or_else(|| jerr("missing `maps`"))?
                .iter()
                .map(|m| {
                    let sv = m.get("source").ok_or_else(|| jerr("map missing `source`"))?;
                    let send = m
                        .get("send")
                        .and_then(Value::as_array)
                        .ok_or_else(|| jerr("map missing `send`"))?
                        .iter()
                        .map(juvec)
                        .collect::<Result<Vec<_>, _>>()?;
                    let jac = m
                        .get("jac")
                        .and_then(Value::as_array)
                        .ok_or_else(|| jerr("map missing `jac`"))?
                        .iter()
                        .map(|row| {
                            row.as_array()
                                .ok_or_else(|| jerr("jac row must be an array"))?
                                .iter()
                                .map(|c| {
                                    let s = c.as_str().ok_or_else(|| jerr("jac cell string"))?;
                                    let mut lex = Lexer::new(s)?;
                                    lex.rational()
                                })
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(GermMapDoc {
                        name: jstr(m, "name")?,
                        source: jpres(sv)?,
                        source_free: sv.get("free").and_then(Value::as_u64).unwrap_or(0) as usize,
                        send,
                        jac,
                    })
                })
                .collect::<Result<Vec<_>, ParseError>>()?;
            if maps.len() != 2 {
                return Err(jerr("a germ pair needs exactly two maps"));
            }
            Payload::GermPair(GermPairDoc {
                target,
                target_free,
                maps,
            })
        }
        "cring_presentation" => {
            let reals = jstrs(&v, "reals")?;
            let interiors = jstrs(&v, "interiors")?;
            let rrels = jstrs(&v, "rrels")?
                .iter()
                .map(|s| jexpr(s, &reals, &interiors))
                .collect::<Result<Vec<_>, _>>()?;
            let irels = v
                .get("irels")
                .and_then(Value::as_array)
                .ok_or_else(|| jerr("missing `irels`"))?
                .iter()
                .map(|r| {
                    Ok((
                        jinterior(&jstr(r, "lhs")?, &reals, &interiors)?,
                        jinterior(&jstr(r, "rhs")?, &reals, &interiors)?,
                    ))
                })
                .collect::<Result<Vec<_>, ParseError>>()?;
            let base = match v.get("base") {
                None => None,
                Some(b) => Some(BaseBlock {
                    real_names: jstrs(b, "reals")?,
                    interior_names: jstrs(b, "interiors")?,
                    real_images: jstrs(b, "real_images")?
                        .iter()
                        .map(|s| jexpr(s, &reals, &interiors))
                        .collect::<Result<_, _>>()?,
                    interior_images: jstrs(b, "interior_images")?
                        .iter()
                        .map(|s| jinterior(s, &reals, &interiors))
                        .collect::<Result<_, _>>()?,
                }),
            };
            Payload::Cring(CringDoc {
                ring: CRingPresentation {
                    real_names: reals,
                    interior_names: interiors,
                    real_relations: rrels,
                    interior_relations: irels,
                },
                base,
            })
        }
        "point" => {
            let nums = |key: &str| -> Result<Vec<f64>, ParseError> {
                v.get(key)
                    .and_then(Value::as_array)
                    .ok_or_else(|| jerr(format!("missing `{key}`")))?
                    .iter()
                    .map(|x| x.as_f64().ok_or_else(|| jerr("expected a number")))
                    .collect()
            };
            Payload::Point(RPoint::new(nums("reals")?, nums("interiors")?))
        }
        other => return Err(jerr(format!("unknown document kind `{other}`"))),
    };
    Ok(Document { name, payload })
}
