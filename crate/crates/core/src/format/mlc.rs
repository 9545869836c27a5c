//! The `.mlc` text format.
//!
//! ```text
//! # comment
//! vars x y z
//! domain int            # optional, `rat` by default
//! path { x >= 0; x' < x; y' = y }
//! ```
//!
//! Constraints are `expr op expr` with `op` one of `<=`, `>=`, `=`, `<`, `>`
//! (also `≤`, `≥`). Over these loops `a < b` means `a ≤ b − 1`. Terms are
//! `c*v`, `c v`, `v` or a constant `c`, where `c` is `p` or `p/q` and `v` a
//! declared variable, optionally primed once.

use crate::error::{Error, Result};
use crate::mlc::{Domain, MlcLoop};
use crate::polyhedron::{Constraint, Polyhedron, Relation};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Prime,
    Num(Rational),
    Op(&'static str),
    Plus,
    Minus,
    Star,
    Semi,
    LBrace,
    RBrace,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn perr<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, col, message: msg.into() })
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line, col });
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
                    if i < chars.len() && chars[i] == '\'' {
                        push(&mut out, Tok::Prime);
                        i += 1;
                        if i < chars.len() && chars[i] == '\'' {
                            return perr(line, i + 1, "only one prime level exists");
                        }
                    }
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i < chars.len() && chars[i] == '/' {
                        i += 1;
                        if i >= chars.len() || !chars[i].is_ascii_digit() {
                            return perr(line, col, "malformed rational literal");
                        }
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                    if i < chars.len() && (chars[i] == '.' || chars[i] == 'e') {
                        return perr(line, col, "non-rational literal");
                    }
                    let s: String = chars[start..i].iter().collect();
                    match s.parse::<Rational>() {
                        Ok(r) => push(&mut out, Tok::Num(r)),
                        Err(_) => return perr(line, col, format!("invalid rational literal `{s}`")),
                    }
                }
                '<' | '>' | '=' | '≤' | '≥' => {
                    let next = chars.get(i + 1).copied();
                    let (op, len) = match (c, next) {
                        ('<', Some('=')) => ("<=", 2),
                        ('>', Some('=')) => (">=", 2),
                        ('<', _) => ("<", 1),
                        ('>', _) => (">", 1),
                        ('=', Some('=')) => ("=", 2),
                        ('=', _) => ("=", 1),
                        ('≤', _) => ("<=", 1),
                        _ => (">=", 1),
                    };
                    push(&mut out, Tok::Op(op));
                    i += len;
                }
                '+' => {
                    push(&mut out, Tok::Plus);
                    i += 1;
                }
                '-' => {
                    push(&mut out, Tok::Minus);
                    i += 1;
                }
                '*' => {
                    push(&mut out, Tok::Star);
                    i += 1;
                }
                ';' => {
                    push(&mut out, Tok::Semi);
                    i += 1;
                }
                '{' => {
                    push(&mut out, Tok::LBrace);
                    i += 1;
                }
                '}' => {
                    push(&mut out, Tok::RBrace);
                    i += 1;
                }
                '\'' => return perr(line, col, "prime without a variable"),
                other => return perr(line, col, format!("unexpected character `{other}`")),
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.col))
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        perr(l, c, msg)
    }
}

const KEYWORDS: [&str; 3] = ["vars", "path", "domain"];

/// Coefficients over `(x, x')` and constant of a side.
fn parse_expr(p: &mut Parser, vars: &[String]) -> Result<(Vec<Rational>, Rational)> {
    let n = vars.len();
    let mut coeffs = vec![Rational::ZERO; 2 * n];
    let mut constant = Rational::ZERO;
    let mut first = true;
    loop {
        let mut sign = Rational::ONE;
        match p.peek() {
            Some(Tok::Plus) if !first => {
                p.bump();
            }
            Some(Tok::Minus) => {
                p.bump();
                sign = -Rational::ONE;
            }
            _ if first => {}
            _ => break,
        }
        first = false;
        let mut coef = sign;
        let mut has_num = false;
        if let Some(Tok::Num(r)) = p.peek() {
            coef = &coef * r;
            has_num = true;
            p.bump();
            if p.peek() == Some(&Tok::Star) {
                p.bump();
                if !matches!(p.peek(), Some(Tok::Ident(_))) {
                    return p.fail("expected a variable after `*`");
                }
            }
        }
        match p.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let (line, col) = p.here();
                p.bump();
                let primed = if p.peek() == Some(&Tok::Prime) {
                    p.bump();
                    true
                } else {
                    false
                };
                let Some(idx) = vars.iter().position(|v| *v == name) else {
                    return perr(line, col, format!("unknown variable `{name}`"));
                };
                let slot = if primed { n + idx } else { idx };
                coeffs[slot] += coef;
            }
            _ if has_num => constant += coef,
            _ => return p.fail("expected a term"),
        }
        if !matches!(p.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
            break;
        }
    }
    Ok((coeffs, constant))
}

fn parse_constraint(p: &mut Parser, vars: &[String]) -> Result<Constraint> {
    let (lc, lk) = parse_expr(p, vars)?;
    let op = match p.bump() {
        Some(Spanned { tok: Tok::Op(op), .. }) => op,
        _ => {
            p.pos -= 1;
            return p.fail("expected a relation (<=, >=, =, <, >)");
        }
    };
    let (rc, rk) = parse_expr(p, vars)?;
    // (lc - rc)·v  op  rk - lk
    let coeffs: Vec<Rational> = lc.iter().zip(&rc).map(|(a, b)| a - b).collect();
    let rhs = rk - lk;
    Ok(match op {
        "<=" => Constraint::le(coeffs, rhs),
        "<" => Constraint::le(coeffs, rhs - Rational::ONE),
        ">=" => Constraint::ge(coeffs, rhs),
        ">" => Constraint::ge(coeffs, rhs + Rational::ONE),
        _ => Constraint::eq(coeffs, rhs),
    })
}

pub fn parse_loop(text: &str) -> Result<MlcLoop> {
    let toks = lex(text)?;
    let end = (text.lines().count().max(1), 1);
    let mut p = Parser { toks, pos: 0, end };
    let mut vars: Option<Vec<String>> = None;
    let mut domain = Domain::Rational;
    let mut paths = Vec::new();
    while let Some(tok) = p.peek().cloned() {
        match tok {
            Tok::Ident(kw) if kw == "vars" => {
                if vars.is_some() {
                    return p.fail("`vars` declared twice");
                }
                p.bump();
                let mut names = Vec::new();
                while let Some(Tok::Ident(name)) = p.peek().cloned() {
                    if KEYWORDS.contains(&name.as_str()) {
                        break;
                    }
                    if names.contains(&name) {
                        return p.fail(format!("duplicate variable `{name}`"));
                    }
                    names.push(name);
                    p.bump();
                }
                if p.peek() == Some(&Tok::Semi) {
                    p.bump();
                }
                vars = Some(names);
            }
            Tok::Ident(kw) if kw == "domain" => {
                p.bump();
                match p.bump().map(|s| s.tok) {
                    Some(Tok::Ident(d)) if d == "int" => domain = Domain::Integer,
                    Some(Tok::Ident(d)) if d == "rat" => domain = Domain::Rational,
                    _ => {
                        p.pos -= 1;
                        return p.fail("expected `int` or `rat`");
                    }
                }
                if p.peek() == Some(&Tok::Semi) {
                    p.bump();
                }
            }
            Tok::Ident(kw) if kw == "path" => {
                let Some(vs) = vars.as_ref() else {
                    return p.fail("`path` before `vars`");
                };
                p.bump();
                if p.bump().map(|s| s.tok) != Some(Tok::LBrace) {
                    p.pos -= 1;
                    return p.fail("expected `{`");
                }
                let mut cs = Vec::new();
                loop {
                    match p.peek() {
                        Some(Tok::RBrace) => {
                            p.bump();
                            break;
                        }
                        Some(Tok::Semi) => {
                            p.bump();
                        }
                        None => return p.fail("unterminated path block"),
                        _ => {
                            cs.push(parse_constraint(&mut p, vs)?);
                            match p.peek() {
                                Some(Tok::Semi) | Some(Tok::RBrace) => {}
                                _ => return p.fail("expected `;` or `}`"),
                            }
                        }
                    }
                }
                paths.push(Polyhedron::new(2 * vs.len(), cs)?);
            }
            _ => return p.fail("expected `vars`, `domain` or `path`"),
        }
    }
    let Some(vars) = vars else {
        return perr(1, 1, "missing `vars` declaration");
    };
    MlcLoop::new(vars, paths, domain)
}

fn render_side(terms: &[(Rational, String)], constant: &Rational) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (c, v) in terms {
        let a = c.abs();
        let body = if a.is_one() { v.clone() } else { format!("{a}*{v}") };
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
        }
    }
    if !constant.is_zero() || parts.is_empty() {
        if parts.is_empty() {
            parts.push(constant.to_string());
        } else {
            parts.push(format!(
                "{} {}",
                if constant.is_negative() { "-" } else { "+" },
                constant.abs()
            ));
        }
    }
    parts.join(" ")
}

/// Prints one constraint so that parsing it back yields the same constraint.
pub fn render_constraint(c: &Constraint, vars: &[String]) -> String {
    let n = vars.len();
    let name = |j: usize| {
        if j < n {
            vars[j].clone()
        } else {
            format!("{}'", vars[j - n])
        }
    };
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (j, a) in c.coeffs.iter().enumerate() {
        if a.is_positive() {
            left.push((a.clone(), name(j)));
        } else if a.is_negative() {
            right.push((-a, name(j)));
        }
    }
    let op = match c.relation {
        Relation::Le => "<=",
        Relation::Eq => "=",
    };
    format!(
        "{} {op} {}",
        render_side(&left, &Rational::ZERO),
        render_side(&right, &c.rhs)
    )
}

pub fn print_loop(l: &MlcLoop) -> String {
    let mut s = format!("vars {}\n", l.var_names.join(" "));
    if l.domain == Domain::Integer {
        s.push_str("domain int\n");
    }
    for q in &l.paths {
        s.push_str("path {\n");
        for c in q.constraints() {
            s.push_str("  ");
            s.push_str(&render_constraint(c, &l.var_names));
            s.push_str(";\n");
        }
        s.push_str("}\n");
    }
    s
}
