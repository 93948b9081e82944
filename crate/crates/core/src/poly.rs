//! Polynomial representations: product-of-sums-of-products clause lists and
//! arithmetic circuits.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::varset::VarSet;

/// A coefficient times a product of variable powers.
///
/// An empty exponent map is the constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    exponents: BTreeMap<usize, u32>,
}

impl Term {
    /// Builds a term from `(variable, exponent)` factors. Repeated variables
    /// have their exponents added and zero exponents are dropped.
    pub fn new(coeff: impl Into<BigInt>, factors: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut exponents = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *exponents.entry(v).or_insert(0) += e;
            }
        }
        Term {
            coeff: coeff.into(),
            exponents,
        }
    }

    /// Multilinear term `x_{v1} x_{v2} ...` with coefficient 1.
    pub fn product(vars: impl IntoIterator<Item = usize>) -> Self {
        Term::new(1, vars.into_iter().map(|v| (v, 1)))
    }

    pub fn var(v: usize) -> Self {
        Term::product([v])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Term::new(c, [])
    }

    pub fn exponents(&self) -> &BTreeMap<usize, u32> {
        &self.exponents
    }

    pub fn degree(&self) -> u64 {
        self.exponents.values().map(|&e| u64::from(e)).sum()
    }

    pub fn is_multilinear(&self) -> bool {
        self.exponents.values().all(|&e| e == 1)
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Variables that occur in the term, regardless of exponent.
    pub fn support(&self) -> VarSet {
        self.exponents.keys().copied().collect()
    }

    /// Monomial length `sum log2(1 + e)` over the exponents, without the
    /// `log n` scale factor. Equals the variable count for multilinear terms.
    pub fn length(&self) -> f64 {
        self.exponents
            .values()
            .map(|&e| (1.0 + f64::from(e)).log2())
            .sum()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exponents.keys().next_back().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Clause {
    pub terms: Vec<Term>,
}

impl Clause {
    pub fn new(terms: Vec<Term>) -> Self {
        Clause { terms }
    }

    /// `x_{v1} + x_{v2} + ...` with unit coefficients.
    pub fn linear(vars: impl IntoIterator<Item = usize>) -> Self {
        Clause::new(vars.into_iter().map(Term::var).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A product of clauses over variables `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiSigmaPi {
    n: usize,
    clauses: Vec<Clause>,
}

impl PiSigmaPi {
    pub fn new(n: usize, clauses: Vec<Clause>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            for t in &c.terms {
                if let Some(v) = t.max_var().filter(|&v| v >= n) {
                    return Err(Error::validation(format!(
                        "clause {} uses variable x{} but only {n} variables are declared",
                        i + 1,
                        v + 1
                    )));
                }
            }
        }
        Ok(PiSigmaPi { n, clauses })
    }

    /// The empty product over `n` variables, i.e. the constant 1.
    pub fn one(n: usize) -> Self {
        PiSigmaPi { n, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn into_clauses(self) -> Vec<Clause> {
        self.clauses
    }

    /// `(m, s, t)`: clause count, most terms in a clause, highest term degree.
    pub fn shape(&self) -> (usize, usize, u64) {
        let s = self.clauses.iter().map(Clause::len).max().unwrap_or(0);
        let t = self
            .clauses
            .iter()
            .flat_map(|c| &c.terms)
            .map(Term::degree)
            .max()
            .unwrap_or(0);
        (self.clauses.len(), s, t)
    }

    /// True when every term is a single variable to the first power.
    pub fn is_pi_sigma(&self) -> bool {
        self.clauses
            .iter()
            .flat_map(|c| &c.terms)
            .all(|t| t.degree() == 1)
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// Product of `self` and `other` as one clause list (`self`'s clauses first).
    pub fn concat(&self, other: &PiSigmaPi) -> Result<PiSigmaPi> {
        if self.n != other.n {
            return Err(Error::shape(format!(
                "variable counts differ: {} vs {}",
                self.n, other.n
            )));
        }
        let mut clauses = self.clauses.clone();
        clauses.extend(other.clauses.iter().cloned());
        Ok(PiSigmaPi { n: self.n, clauses })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Input(usize),
    /// Constant leaf. Not a gate of the classical model, but needed to carry
    /// clause coefficients into circuit form.
    Const(BigInt),
    /// Unbounded fan-in sum; an empty sum is zero.
    Add(Vec<usize>),
    Mul(usize, usize),
}

/// Arithmetic circuit with nodes in topological order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    nodes: Vec<Node>,
    output: usize,
}

impl Circuit {
    pub fn new(n: usize, nodes: Vec<Node>, output: usize) -> Result<Self> {
        for (id, node) in nodes.iter().enumerate() {
            let check = |child: usize| {
                if child >= id {
                    Err(Error::validation(format!(
                        "node {id} refers to node {child}, which does not precede it"
                    )))
                } else {
                    Ok(())
                }
            };
            match node {
                Node::Input(v) if *v >= n => {
                    return Err(Error::validation(format!(
                        "node {id} reads x{} but only {n} variables are declared",
                        v + 1
                    )))
                }
                Node::Input(_) | Node::Const(_) => {}
                Node::Add(children) => children.iter().try_for_each(|&c| check(c))?,
                Node::Mul(a, b) => {
                    check(*a)?;
                    check(*b)?;
                }
            }
        }
        if output >= nodes.len() {
            return Err(Error::validation(format!(
                "output node {output} does not exist"
            )));
        }
        Ok(Circuit { n, nodes, output })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn output(&self) -> usize {
        self.output
    }

    /// Gate count, the circuit size.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

/// Incremental circuit construction with append-only node ids.
#[derive(Debug, Default)]
pub(crate) struct CircuitBuilder {
    nodes: Vec<Node>,
    inputs: BTreeMap<usize, usize>,
}

impl CircuitBuilder {
    pub fn push(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    /// Input node for `v`, created on first use.
    pub fn input(&mut self, v: usize) -> usize {
        if let Some(&id) = self.inputs.get(&v) {
            return id;
        }
        let id = self.push(Node::Input(v));
        self.inputs.insert(v, id);
        id
    }

    /// Left-deep product of `factors`; the empty product is the constant 1.
    pub fn product(&mut self, factors: &[usize]) -> usize {
        match factors.split_first() {
            None => self.push(Node::Const(BigInt::one())),
            Some((&first, rest)) => rest
                .iter()
                .fold(first, |acc, &f| self.push(Node::Mul(acc, f))),
        }
    }

    /// `x^e` as a chain of `e - 1` multiplications.
    pub fn power(&mut self, v: usize, e: u32) -> usize {
        let x = self.input(v);
        let factors = vec![x; e as usize];
        self.product(&factors)
    }

    pub fn term(&mut self, t: &Term) -> usize {
        let mut factors = Vec::new();
        if t.is_constant() || !t.coeff.is_one() {
            factors.push(self.push(Node::Const(t.coeff.clone())));
        }
        for (&v, &e) in t.exponents() {
            for _ in 0..e {
                factors.push(self.input(v));
            }
        }
        self.product(&factors)
    }

    pub fn finish(self, n: usize, output: usize) -> Circuit {
        Circuit::new(n, self.nodes, output).expect("builder emits topologically ordered nodes")
    }
}
