//! Plain-text formats. Variables are written 1-based (`x1`, `x2`, ...) and
//! stored 0-based. `#` starts a comment that runs to the end of the line.
//!
//! Polynomial:
//!
//! ```text
//! vars 3                      # optional; otherwise n = largest index
//! (x1*x2 + x3) * (2*x1^2 + -1*x3 + 5) * ()
//! ```
//!
//! Circuit, one node per line in topological order:
//!
//! ```text
//! vars 2
//! a var x1
//! b var x2
//! s add a b
//! k const -3
//! p mul s k
//! out p
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::counting::{BipartiteGraph, IntMatrix};
use crate::error::{Error, Result};
use crate::generators::{Cnf2Sat, Graph, Literal};
use crate::poly::{Circuit, Clause, Node, PiSigmaPi, Term};
use crate::table::MultilinearTable;
use crate::varset::VarSet;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Parses `vars <n>` if `line` is such a header.
fn vars_header(lineno: usize, line: &str, keyword: &str) -> Result<Option<usize>> {
    let mut words = line.split_whitespace();
    if words.next() != Some(keyword) {
        return Ok(None);
    }
    let n = words
        .next()
        .ok_or_else(|| syntax(lineno, 1, format!("`{keyword}` needs a count")))?;
    let n = n
        .parse::<usize>()
        .map_err(|_| syntax(lineno, keyword.len() + 2, format!("invalid count `{n}`")))?;
    if let Some(extra) = words.next() {
        return Err(syntax(lineno, 1, format!("unexpected `{extra}` after count")));
    }
    Ok(Some(n))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Plus,
    Star,
    Caret,
    Int(BigInt),
    /// 1-based index as written.
    Var(usize),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str, skip_lines: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate().skip(skip_lines) {
        let line = li + 1;
        let chars: Vec<char> = strip_comment(raw).chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let simple = match c {
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                '+' => Some(Tok::Plus),
                '*' => Some(Tok::Star),
                '^' => Some(Tok::Caret),
                _ => None,
            };
            if let Some(tok) = simple {
                out.push(Spanned { tok, line, col });
                i += 1;
                continue;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let digits_from = |start: usize| {
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                end
            };
            if c == 'x' {
                let end = digits_from(i + 1);
                if end == i + 1 {
                    return Err(syntax(line, col, "expected a variable index after `x`"));
                }
                let s: String = chars[i + 1..end].iter().collect();
                let idx = s
                    .parse::<usize>()
                    .map_err(|_| syntax(line, col, format!("variable index `{s}` too large")))?;
                out.push(Spanned { tok: Tok::Var(idx), line, col });
                i = end;
            } else if c.is_ascii_digit() || c == '-' {
                let end = digits_from(i + 1);
                if c == '-' && end == i + 1 {
                    return Err(syntax(line, col, "expected digits after `-`"));
                }
                let s: String = chars[i..end].iter().collect();
                let value = BigInt::from_str(&s).expect("sign and digits");
                out.push(Spanned { tok: Tok::Int(value), line, col });
                i = end;
            } else {
                return Err(syntax(line, col, format!("unexpected character `{c}`")));
            }
        }
    }
    Ok(out)
}

struct PolyParser {
    toks: Vec<Spanned>,
    pos: usize,
    eof: (usize, usize),
}

impl PolyParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.eof, |s| (s.line, s.col))
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn polynomial(&mut self) -> Result<Vec<Clause>> {
        let mut clauses = Vec::new();
        if self.peek().is_none() {
            return Ok(clauses);
        }
        clauses.push(self.clause()?);
        while self.eat(&Tok::Star) {
            clauses.push(self.clause()?);
        }
        if self.peek().is_some() {
            return Err(self.error("expected `*` or end of input"));
        }
        Ok(clauses)
    }

    fn clause(&mut self) -> Result<Clause> {
        self.expect(&Tok::LParen, "`(`")?;
        let mut terms = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(Clause::new(terms));
        }
        terms.push(self.term()?);
        while self.eat(&Tok::Plus) {
            terms.push(self.term()?);
        }
        self.expect(&Tok::RParen, "`+` or `)`")?;
        Ok(Clause::new(terms))
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = BigInt::one();
        if let Some(Tok::Int(c)) = self.peek().cloned() {
            self.pos += 1;
            coeff = c;
            if !self.eat(&Tok::Star) {
                return Ok(Term::constant(coeff));
            }
        }
        let mut factors = vec![self.factor()?];
        while self.eat(&Tok::Star) {
            factors.push(self.factor()?);
        }
        Ok(Term::new(coeff, factors))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        let (line, col) = self.here();
        let Some(Tok::Var(idx)) = self.peek().cloned() else {
            return Err(self.error("expected a variable `x<k>`"));
        };
        self.pos += 1;
        if idx == 0 {
            return Err(Error::validation(format!(
                "line {line}, column {col}: variable indices start at 1"
            )));
        }
        let mut exp = 1u32;
        if self.eat(&Tok::Caret) {
            let (el, ec) = self.here();
            let Some(Tok::Int(e)) = self.peek().cloned() else {
                return Err(self.error("expected an exponent"));
            };
            self.pos += 1;
            exp = u32::try_from(&e)
                .map_err(|_| syntax(el, ec, format!("invalid exponent `{e}`")))?;
            if exp == 0 {
                return Err(Error::validation(format!(
                    "line {el}, column {ec}: exponent must be positive"
                )));
            }
        }
        Ok((idx - 1, exp))
    }
}

/// Parses the polynomial grammar
/// `clause ('*' clause)*` with `clause := '(' ')' | '(' term ('+' term)* ')'`,
/// `term := [int '*'] factor ('*' factor)* | int`, `factor := 'x' index ['^' exp]`.
/// Empty input is the empty product.
pub fn parse_poly(text: &str) -> Result<PiSigmaPi> {
    let mut declared = None;
    let mut skip = 0;
    if let Some((lineno, line)) = content_lines(text).next() {
        if let Some(n) = vars_header(lineno, line, "vars")? {
            declared = Some(n);
            skip = lineno;
        }
    }
    let toks = tokenize(text, skip)?;
    let last_line = text.lines().count().max(1);
    let mut p = PolyParser {
        toks,
        pos: 0,
        eof: (last_line, text.lines().last().map_or(1, |l| l.len() + 1)),
    };
    let clauses = p.polynomial()?;
    let max_var = clauses
        .iter()
        .flat_map(|c| &c.terms)
        .filter_map(Term::max_var)
        .max();
    let n = match (declared, max_var) {
        (Some(n), _) => n,
        (None, Some(v)) => v + 1,
        (None, None) => 0,
    };
    PiSigmaPi::new(n, clauses)
}

fn write_term(out: &mut String, t: &Term) {
    if t.is_constant() {
        write!(out, "{}", t.coeff).unwrap();
        return;
    }
    if !t.coeff.is_one() {
        write!(out, "{}*", t.coeff).unwrap();
    }
    for (k, (&v, &e)) in t.exponents().iter().enumerate() {
        if k > 0 {
            out.push('*');
        }
        write!(out, "x{}", v + 1).unwrap();
        if e > 1 {
            write!(out, "^{e}").unwrap();
        }
    }
}

pub fn format_poly(f: &PiSigmaPi) -> String {
    let mut out = format!("vars {}\n", f.num_vars());
    if f.clauses().is_empty() {
        return out;
    }
    for (i, c) in f.clauses().iter().enumerate() {
        if i > 0 {
            out.push_str(" * ");
        }
        out.push('(');
        for (k, t) in c.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            write_term(&mut out, t);
        }
        out.push(')');
    }
    out.push('\n');
    out
}

/// Parses the line-oriented circuit format; node names are arbitrary words.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut declared = None;
    let mut names: std::collections::HashMap<String, usize> = Default::default();
    let mut nodes = Vec::new();
    let mut output = None;
    for (idx, (lineno, line)) in content_lines(text).enumerate() {
        if idx == 0 {
            if let Some(n) = vars_header(lineno, line, "vars")? {
                declared = Some(n);
                continue;
            }
        }
        if output.is_some() {
            return Err(Error::validation(format!("line {lineno}: content after `out`")));
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let resolve = |w: &str| {
            names.get(w).copied().ok_or_else(|| {
                Error::validation(format!(
                    "line {lineno}: `{w}` is not a previously defined node"
                ))
            })
        };
        if words[0] == "out" {
            if words.len() != 2 {
                return Err(Error::validation(format!("line {lineno}: `out` takes one node")));
            }
            output = Some(resolve(words[1])?);
            continue;
        }
        if words.len() < 2 {
            return Err(syntax(lineno, 1, "expected `<id> <kind> ...`"));
        }
        let (name, kind, args) = (words[0], words[1], &words[2..]);
        let node = match kind {
            "var" => {
                let [arg] = args else {
                    return Err(Error::validation(format!("line {lineno}: `var` takes one variable")));
                };
                let idx = arg
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| syntax(lineno, 1, format!("invalid variable `{arg}`")))?;
                if idx == 0 {
                    return Err(Error::validation(format!("line {lineno}: variable indices start at 1")));
                }
                Node::Input(idx - 1)
            }
            "const" => {
                let [arg] = args else {
                    return Err(Error::validation(format!("line {lineno}: `const` takes one integer")));
                };
                Node::Const(
                    BigInt::from_str(arg)
                        .map_err(|_| syntax(lineno, 1, format!("invalid integer `{arg}`")))?,
                )
            }
            "add" => Node::Add(args.iter().map(|w| resolve(w)).collect::<Result<_>>()?),
            "mul" => {
                let [a, b] = args else {
                    return Err(Error::validation(format!(
                        "line {lineno}: `mul` takes exactly two nodes, got {}",
                        args.len()
                    )));
                };
                Node::Mul(resolve(a)?, resolve(b)?)
            }
            other => return Err(syntax(lineno, 1, format!("unknown node kind `{other}`"))),
        };
        if names.insert(name.to_string(), nodes.len()).is_some() {
            return Err(Error::validation(format!("line {lineno}: node `{name}` defined twice")));
        }
        nodes.push(node);
    }
    let output = output.ok_or_else(|| Error::validation("missing `out` line"))?;
    let max_var = nodes
        .iter()
        .filter_map(|n| match n {
            Node::Input(v) => Some(*v),
            _ => None,
        })
        .max();
    let n = declared.unwrap_or(max_var.map_or(0, |v| v + 1));
    Circuit::new(n, nodes, output)
}

pub fn format_circuit(c: &Circuit) -> String {
    let mut out = format!("vars {}\n", c.num_vars());
    for (id, node) in c.nodes().iter().enumerate() {
        write!(out, "n{id} ").unwrap();
        match node {
            Node::Input(v) => writeln!(out, "var x{}", v + 1),
            Node::Const(k) => writeln!(out, "const {k}"),
            Node::Add(ch) => {
                out.push_str("add");
                for c in ch {
                    write!(out, " n{c}").unwrap();
                }
                writeln!(out)
            }
            Node::Mul(a, b) => writeln!(out, "mul n{a} n{b}"),
        }
        .unwrap();
    }
    writeln!(out, "out n{}", c.output()).unwrap();
    out
}

/// A polynomial file in either format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyInput {
    Poly(PiSigmaPi),
    Circuit(Circuit),
}

/// Circuit files are recognised by an `out` line or a node line
/// (`<id> var|const|add|mul ...`); anything else is read as a polynomial.
pub fn looks_like_circuit(text: &str) -> bool {
    content_lines(text).any(|(_, line)| {
        let mut words = line.split_whitespace();
        let first = words.next();
        let second = words.next();
        first == Some("out") || matches!(second, Some("var" | "const" | "add" | "mul"))
    })
}

pub fn parse_input(text: &str) -> Result<PolyInput> {
    if looks_like_circuit(text) {
        parse_circuit(text).map(PolyInput::Circuit)
    } else {
        parse_poly(text).map(PolyInput::Poly)
    }
}

/// Parses `x1*x3`, `x1,x3`, or `1` / `{}` for the empty monomial.
pub fn parse_monomial(text: &str) -> Result<VarSet> {
    let text = text.trim();
    if text == "1" || text == "{}" || text.is_empty() {
        return Ok(VarSet::empty());
    }
    let mut set = VarSet::empty();
    for part in text.split(['*', ',']) {
        let part = part.trim();
        let idx = part
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| Error::validation(format!("invalid monomial factor `{part}`")))?;
        if idx == 0 {
            return Err(Error::validation("variable indices start at 1"));
        }
        if set.contains(idx - 1) {
            return Err(Error::validation(format!("x{idx} repeated; monomial must be multilinear")));
        }
        set.insert(idx - 1);
    }
    Ok(set)
}

/// One `<vars> <coefficient>` line per entry, ordered by cardinality then
/// variable list; the empty monomial prints as `{}`.
pub fn format_table(t: &MultilinearTable) -> String {
    let mut out = String::new();
    for (k, c) in t.sorted() {
        writeln!(out, "{k} {c}").unwrap();
    }
    out
}

fn parse_edge_lines(
    text: &str,
    header: &str,
) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = content_lines(text);
    let (lineno, first) = lines
        .next()
        .ok_or_else(|| Error::validation(format!("missing `{header} <n>` header")))?;
    let n = vars_header(lineno, first, header)?
        .ok_or_else(|| syntax(lineno, 1, format!("expected `{header} <n>`")))?;
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        let parsed = match words.as_slice() {
            ["e", a, b] => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
            _ => None,
        };
        let (a, b) = parsed.ok_or_else(|| syntax(lineno, 1, "expected `e <u> <v>`"))?;
        if a == 0 || b == 0 {
            return Err(Error::validation(format!("line {lineno}: vertex indices start at 1")));
        }
        edges.push((a - 1, b - 1));
    }
    Ok((n, edges))
}

/// `graph <n>` followed by `e <u> <v>` lines.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, edges) = parse_edge_lines(text, "graph")?;
    Graph::new(n, edges)
}

/// `bigraph <t>` followed by `e <i> <j>` lines (left `i`, right `j`).
pub fn parse_bigraph(text: &str) -> Result<BipartiteGraph> {
    let (t, edges) = parse_edge_lines(text, "bigraph")?;
    BipartiteGraph::new(t, edges)
}

/// Comma-separated signed integers, one row per line.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let rows = content_lines(text)
        .map(|(lineno, line)| {
            line.split(',')
                .enumerate()
                .map(|(k, cell)| {
                    BigInt::from_str(cell.trim()).map_err(|_| {
                        syntax(lineno, k + 1, format!("invalid integer `{}`", cell.trim()))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::new(rows)
}

/// `cnf <vars>` followed by one clause per line: one or two signed 1-based
/// literals (`-2` is the negation of variable 2), optionally ending in `0`.
pub fn parse_cnf(text: &str) -> Result<Cnf2Sat> {
    let mut lines = content_lines(text);
    let (lineno, first) = lines
        .next()
        .ok_or_else(|| Error::validation("missing `cnf <vars>` header"))?;
    let vars = vars_header(lineno, first, "cnf")?
        .ok_or_else(|| syntax(lineno, 1, "expected `cnf <vars>`"))?;
    let mut clauses = Vec::new();
    for (lineno, line) in lines {
        let mut lits: Vec<i64> = line
            .split_whitespace()
            .map(|w| w.parse::<i64>().map_err(|_| syntax(lineno, 1, format!("invalid literal `{w}`"))))
            .collect::<Result<_>>()?;
        if lits.last() == Some(&0) {
            lits.pop();
        }
        if lits.contains(&0) {
            return Err(Error::validation(format!("line {lineno}: literal 0 inside a clause")));
        }
        clauses.push(
            lits.into_iter()
                .map(|l| Literal {
                    var: l.unsigned_abs() as usize - 1,
                    positive: l > 0,
                })
                .collect(),
        );
    }
    Cnf2Sat::new(vars, clauses)
}
