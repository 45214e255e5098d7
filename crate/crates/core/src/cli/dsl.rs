use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::constructions::LieAlgebraData;
use crate::graded_core::{Flag, Rational, TriDegree};
use crate::superalgebra::{Generator, Poly, Ring};

use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var(String, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// The polynomial in `ring`; unknown names are reported at their source position.
    pub fn eval(&self, ring: &Ring) -> Result<Poly, CliError> {
        Ok(match self {
            Expr::Num(c) => Poly::constant(c.clone()),
            Expr::Var(name, pos) => match ring.index_of(name) {
                Some(i) => ring.var(i),
                None => return Err(CliError::UnknownGenerator { name: name.clone(), line: pos.line, col: pos.col }),
            },
            Expr::Add(a, b) => a.eval(ring)?.add(&b.eval(ring)?),
            Expr::Sub(a, b) => a.eval(ring)?.sub(&b.eval(ring)?),
            Expr::Mul(a, b) => ring.mul(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Neg(a) => a.eval(ring)?.neg(),
            Expr::Pow(a, e) => ring.pow(&a.eval(ring)?, *e),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenDecl {
    pub name: String,
    pub degree: TriDegree,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LieTable {
    Builtin(String),
    /// `(i, j, k) ↦ c^k_ij` with `i < j`, zero-based.
    Table { dim: usize, brackets: BTreeMap<(usize, usize, usize), Rational> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieDecl {
    pub name: String,
    pub table: LieTable,
    /// `(basis index, generator) ↦ ρ_i(generator)`, zero-based.
    pub action: BTreeMap<(usize, String), Expr>,
}

impl LieDecl {
    pub fn data(&self) -> Result<LieAlgebraData, CliError> {
        match &self.table {
            LieTable::Builtin(b) => builtin_lie(b).ok_or_else(|| CliError::Input(format!("unknown Lie algebra {b}"))),
            LieTable::Table { dim, brackets } => {
                let entries: Vec<(usize, usize, usize, Rational)> =
                    brackets.iter().map(|(&(i, j, k), c)| (i, j, k, c.clone())).collect();
                Ok(LieAlgebraData::from_brackets(&self.name, *dim, &entries)?)
            }
        }
    }
}

pub fn builtin_lie(name: &str) -> Option<LieAlgebraData> {
    match name {
        "so3" => Some(LieAlgebraData::so3()),
        "heisenberg" | "h3" => Some(LieAlgebraData::heisenberg()),
        "aff1" => Some(LieAlgebraData::nonabelian2()),
        _ => name.strip_prefix("abelian").and_then(|n| n.parse().ok()).map(LieAlgebraData::abelian),
    }
}

/// A parsed model description.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModelSpec {
    pub name: Option<String>,
    pub gens: Vec<GenDecl>,
    pub q: BTreeMap<String, Expr>,
    pub delta: BTreeMap<String, Expr>,
    pub lies: Vec<LieDecl>,
    pub functions: Vec<(String, Expr)>,
    pub shift: Option<(i64, bool)>,
    pub poisson: Vec<(String, Expr)>,
    pub symplectic: Vec<(String, Expr)>,
    pub elements: Vec<(String, Expr)>,
    pub cutoffs: BTreeMap<String, i64>,
}

impl ModelSpec {
    pub fn ring(&self) -> Ring {
        Ring::new(self.gens.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect())
            .expect("generator names are checked while parsing")
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    End,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
}

fn syntax(pos: Pos, msg: impl Into<String>) -> CliError {
    CliError::Syntax { line: pos.line, col: pos.col, message: msg.into() }
}

impl Lexer {
    fn new(text: &str) -> Result<Self, CliError> {
        let mut toks = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let chars: Vec<char> = line.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let c = chars[i];
                let pos = Pos { line: ln + 1, col: i + 1 };
                if c.is_whitespace() {
                    i += 1;
                } else if c.is_alphabetic() || c == '_' {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                        i += 1;
                    }
                    toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                } else if c.is_ascii_digit() {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    toks.push((Tok::Int(s.parse().expect("digits")), pos));
                } else if c == '!' && chars.get(i + 1) == Some(&'=') {
                    toks.push((Tok::Sym("!="), pos));
                    i += 2;
                } else {
                    let sym = match c {
                        '≠' => "!=",
                        '(' => "(",
                        ')' => ")",
                        ',' => ",",
                        ':' => ":",
                        '=' => "=",
                        '+' => "+",
                        '-' => "-",
                        '*' => "*",
                        '/' => "/",
                        '^' => "^",
                        ';' => ";",
                        _ => return Err(syntax(pos, format!("unexpected character {c:?}"))),
                    };
                    toks.push((Tok::Sym(sym), pos));
                    i += 1;
                }
            }
            toks.push((Tok::Sym(";"), Pos { line: ln + 1, col: chars.len() + 1 }));
        }
        let end = toks.last().map_or(Pos { line: 1, col: 1 }, |t| t.1);
        toks.push((Tok::End, end));
        Ok(Lexer { toks })
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(x) if *x == s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), CliError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected '{s}'")))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), CliError> {
        match self.bump() {
            (Tok::Ident(s), p) => Ok((s, p)),
            (_, p) => Err(syntax(p, "expected a name")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), CliError> {
        match self.bump() {
            (Tok::Ident(s), _) if s == kw => Ok(()),
            (_, p) => Err(syntax(p, format!("expected '{kw}'"))),
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        let neg = self.eat("-");
        match self.bump() {
            (Tok::Int(n), p) => {
                let v: i64 = n.try_into().map_err(|_| syntax(p, "integer out of range"))?;
                Ok(if neg { -v } else { v })
            }
            (_, p) => Err(syntax(p, "expected an integer")),
        }
    }

    fn rational(&mut self) -> Result<Rational, CliError> {
        let neg = self.eat("-");
        let num = match self.bump() {
            (Tok::Int(n), _) => n,
            (_, p) => return Err(syntax(p, "expected a number")),
        };
        let mut r = Rational::from_integer(num);
        if self.eat("/") {
            match self.bump() {
                (Tok::Int(d), p) => {
                    if d.is_zero() {
                        return Err(syntax(p, "zero denominator"));
                    }
                    r /= Rational::from_integer(d);
                }
                (_, p) => return Err(syntax(p, "expected a denominator")),
            }
        }
        Ok(if neg { -r } else { r })
    }

    fn end_statement(&mut self) -> Result<(), CliError> {
        if matches!(self.peek(), Tok::End) || self.eat(";") {
            Ok(())
        } else {
            Err(syntax(self.pos(), "expected end of statement"))
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        while self.eat("*") {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat("^") {
            let p = self.pos();
            return match self.bump() {
                (Tok::Int(n), _) => {
                    let e: u32 = n.try_into().map_err(|_| syntax(p, "exponent out of range"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(syntax(p, "exponents must be nonnegative integers")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(Expr::Num(self.rational()?)),
            Tok::Ident(_) => {
                let (s, p) = self.ident()?;
                Ok(Expr::Var(s, p))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => Err(syntax(self.pos(), "expected an expression")),
        }
    }
}

fn check_names(e: &Expr, ring: &Ring) -> Result<(), CliError> {
    e.eval(ring).map(|_| ())
}

fn lie_mut<'a>(spec: &'a mut ModelSpec, name: &str, pos: Pos) -> Result<&'a mut LieDecl, CliError> {
    spec.lies.iter_mut().find(|l| l.name == name).ok_or_else(|| syntax(pos, format!("undeclared Lie algebra {name}")))
}

fn lie_dim(l: &LieDecl) -> usize {
    match &l.table {
        LieTable::Builtin(b) => builtin_lie(b).map_or(0, |g| g.dim()),
        LieTable::Table { dim, .. } => *dim,
    }
}

/// Parses the model language.
///
/// Statements are separated by newlines or `;`, and `#` starts a comment:
/// `gen x : (0,0,=)`, `Q x = expr`, `delta xi = expr`, `lie g = so3`, `lie g dim 3`,
/// `bracket g 1 2 3 = c`, `act g 1 x = expr`, `function f = expr`, `shift n [reversed]`,
/// `poisson pi = expr`, `symplectic omega = expr`, `element S = expr`, `cutoff key n`, `model name`.
pub fn parse_model(text: &str) -> Result<ModelSpec, CliError> {
    let mut p = Parser { toks: Lexer::new(text)?.toks, at: 0 };
    let mut spec = ModelSpec::default();
    let mut ring = Ring::empty();
    loop {
        while p.eat(";") {}
        if matches!(p.peek(), Tok::End) {
            break;
        }
        let (kw, kpos) = p.ident()?;
        match kw.as_str() {
            "model" => spec.name = Some(p.ident()?.0),
            "gen" => {
                let (name, npos) = p.ident()?;
                if ring.index_of(&name).is_some() {
                    return Err(syntax(npos, format!("generator {name} declared twice")));
                }
                p.expect(":")?;
                p.expect("(")?;
                let c = p.int()?;
                p.expect(",")?;
                let h = p.int()?;
                p.expect(",")?;
                let flag = if p.eat("=") {
                    Flag::Equal
                } else if p.eat("!=") {
                    Flag::Unequal
                } else {
                    return Err(syntax(p.pos(), "expected '=' or '!='"));
                };
                p.expect(")")?;
                let degree = TriDegree::new(c, h, flag);
                if let Tok::Ident(s) = p.peek().clone() {
                    let ppos = p.pos();
                    let odd = match s.as_str() {
                        "odd" => true,
                        "even" => false,
                        _ => return Err(syntax(ppos, "expected 'odd', 'even' or end of statement")),
                    };
                    p.bump();
                    if odd != degree.is_odd() {
                        return Err(syntax(ppos, format!("{name} has parity {} by its degree", degree.parity())));
                    }
                }
                spec.gens.push(GenDecl { name: name.clone(), degree });
                ring = spec.ring();
            }
            "Q" | "delta" => {
                let (name, npos) = p.ident()?;
                if ring.index_of(&name).is_none() {
                    return Err(CliError::UnknownGenerator { name, line: npos.line, col: npos.col });
                }
                p.expect("=")?;
                let e = p.expr()?;
                check_names(&e, &ring)?;
                let map = if kw == "Q" { &mut spec.q } else { &mut spec.delta };
                if map.insert(name.clone(), e).is_some() {
                    return Err(syntax(npos, format!("{kw} {name} assigned twice")));
                }
            }
            "lie" => {
                let (name, npos) = p.ident()?;
                if spec.lies.iter().any(|l| l.name == name) {
                    return Err(syntax(npos, format!("Lie algebra {name} declared twice")));
                }
                let table = if p.eat("=") {
                    let (b, bpos) = p.ident()?;
                    if builtin_lie(&b).is_none() {
                        return Err(syntax(bpos, format!("unknown Lie algebra {b}")));
                    }
                    LieTable::Builtin(b)
                } else {
                    p.keyword("dim")?;
                    let d = p.int()?;
                    if d < 0 {
                        return Err(syntax(npos, "negative dimension"));
                    }
                    LieTable::Table { dim: d as usize, brackets: BTreeMap::new() }
                };
                spec.lies.push(LieDecl { name, table, action: BTreeMap::new() });
            }
            "bracket" => {
                let (name, npos) = p.ident()?;
                let ipos = p.pos();
                let (i, j, k) = (p.int()?, p.int()?, p.int()?);
                p.expect("=")?;
                let c = p.rational()?;
                let l = lie_mut(&mut spec, &name, npos)?;
                let LieTable::Table { dim, brackets } = &mut l.table else {
                    return Err(syntax(npos, format!("{name} is a built-in algebra")));
                };
                let d = *dim as i64;
                if [i, j, k].iter().any(|&x| x < 1 || x > d) || i == j {
                    return Err(syntax(ipos, "bracket indices must be distinct basis indices 1..dim"));
                }
                let (a, b, c) = if i < j { (i, j, c) } else { (j, i, -c) };
                let e = brackets.entry(((a - 1) as usize, (b - 1) as usize, (k - 1) as usize)).or_insert_with(Rational::zero);
                *e += c;
                if e.is_zero() {
                    brackets.remove(&((a - 1) as usize, (b - 1) as usize, (k - 1) as usize));
                }
            }
            "act" => {
                let (name, npos) = p.ident()?;
                let ipos = p.pos();
                let i = p.int()?;
                let (g, gpos) = p.ident()?;
                if ring.index_of(&g).is_none() {
                    return Err(CliError::UnknownGenerator { name: g, line: gpos.line, col: gpos.col });
                }
                p.expect("=")?;
                let e = p.expr()?;
                check_names(&e, &ring)?;
                let l = lie_mut(&mut spec, &name, npos)?;
                if i < 1 || i as usize > lie_dim(l) {
                    return Err(syntax(ipos, "action index must lie in 1..dim"));
                }
                l.action.insert(((i - 1) as usize, g), e);
            }
            "function" | "poisson" | "symplectic" | "element" => {
                let (name, _) = p.ident()?;
                p.expect("=")?;
                let e = p.expr()?;
                if kw == "function" {
                    check_names(&e, &ring)?;
                }
                let list = match kw.as_str() {
                    "function" => &mut spec.functions,
                    "poisson" => &mut spec.poisson,
                    "symplectic" => &mut spec.symplectic,
                    _ => &mut spec.elements,
                };
                list.retain(|(n, _)| *n != name);
                list.push((name, e));
            }
            "shift" => {
                let n = p.int()?;
                let rev = if matches!(p.peek(), Tok::Ident(s) if s == "reversed") {
                    p.bump();
                    true
                } else {
                    false
                };
                spec.shift = Some((n, rev));
            }
            "cutoff" => {
                let (key, _) = p.ident()?;
                let v = p.int()?;
                spec.cutoffs.insert(key, v);
            }
            _ => return Err(syntax(kpos, format!("unknown statement '{kw}'"))),
        }
        p.end_statement()?;
    }
    Ok(spec)
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn flag_str(f: Flag) -> &'static str {
    match f {
        Flag::Equal => "=",
        Flag::Unequal => "!=",
    }
}

/// Renders `e` in `ring` in canonical form, or structurally when `ring` does not know its names.
pub fn render(e: &Expr, ring: Option<&Ring>) -> String {
    if let Some(p) = ring.and_then(|r| e.eval(r).ok()) {
        return ring.unwrap().format(&p);
    }
    render_raw(e)
}

fn render_raw(e: &Expr) -> String {
    match e {
        Expr::Num(c) if c.is_negative() => format!("({})", fmt_rational(c)),
        Expr::Num(c) => fmt_rational(c),
        Expr::Var(s, _) => s.clone(),
        Expr::Add(a, b) => format!("({} + {})", render_raw(a), render_raw(b)),
        Expr::Sub(a, b) => format!("({} - {})", render_raw(a), render_raw(b)),
        Expr::Mul(a, b) => format!("{}*{}", render_raw(a), render_raw(b)),
        Expr::Neg(a) => format!("(-{})", render_raw(a)),
        Expr::Pow(a, n) => format!("{}^{n}", render_raw(a)),
    }
}

/// Rings in which the named structures are read, when the model builds.
#[derive(Default)]
pub struct Contexts {
    pub poisson: Option<Ring>,
    pub forms: Option<Ring>,
    pub elements: Option<Ring>,
}

/// The canonical text of a model: statements in a fixed order, expressions normalised.
pub fn print_model(spec: &ModelSpec, ctx: &Contexts) -> String {
    let ring = spec.ring();
    let mut s = String::new();
    if let Some(n) = &spec.name {
        let _ = writeln!(s, "model {n}");
    }
    for g in &spec.gens {
        let d = g.degree;
        let par = if d.is_odd() { "odd" } else { "even" };
        let _ = writeln!(s, "gen {} : ({},{},{}) {par}", g.name, d.cochain, d.chain, flag_str(d.flag));
    }
    for (kw, map) in [("Q", &spec.q), ("delta", &spec.delta)] {
        for g in &spec.gens {
            if let Some(e) = map.get(&g.name) {
                let _ = writeln!(s, "{kw} {} = {}", g.name, render(e, Some(&ring)));
            }
        }
    }
    for l in &spec.lies {
        match &l.table {
            LieTable::Builtin(b) => {
                let _ = writeln!(s, "lie {} = {b}", l.name);
            }
            LieTable::Table { dim, brackets } => {
                let _ = writeln!(s, "lie {} dim {dim}", l.name);
                for (&(i, j, k), c) in brackets {
                    let _ = writeln!(s, "bracket {} {} {} {} = {}", l.name, i + 1, j + 1, k + 1, fmt_rational(c));
                }
            }
        }
        for ((i, g), e) in &l.action {
            let _ = writeln!(s, "act {} {} {g} = {}", l.name, i + 1, render(e, Some(&ring)));
        }
    }
    for (n, e) in &spec.functions {
        let _ = writeln!(s, "function {n} = {}", render(e, Some(&ring)));
    }
    if let Some((n, rev)) = spec.shift {
        let _ = writeln!(s, "shift {n}{}", if rev { " reversed" } else { "" });
    }
    for (kw, list, r) in [
        ("poisson", &spec.poisson, &ctx.poisson),
        ("symplectic", &spec.symplectic, &ctx.forms),
        ("element", &spec.elements, &ctx.elements),
    ] {
        for (n, e) in list {
            let _ = writeln!(s, "{kw} {n} = {}", render(e, r.as_ref()));
        }
    }
    for (k, v) in &spec.cutoffs {
        let _ = writeln!(s, "cutoff {k} {v}");
    }
    s
}
