//! Encoders from graphs, matrices and formulas to polynomials.
//!
//! Variable numbering is fixed per encoder (see each function) so that
//! generated instances print identically run to run.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::counting::{BipartiteGraph, IntMatrix};
use crate::error::{Error, Result};
use crate::poly::{Circuit, CircuitBuilder, Clause, Node, PiSigmaPi, Term};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edges are unordered; `(u, v)` and `(v, u)` name the same edge.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::validation(format!("self-loop at vertex {}", u + 1)));
            }
            if u >= n || v >= n {
                return Err(Error::validation(format!(
                    "edge ({}, {}) outside {n} vertices",
                    u + 1,
                    v + 1
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Edges as `(low, high)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

/// CNF formula whose clauses have one or two literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf2Sat {
    vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl Cnf2Sat {
    pub fn new(vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if !(1..=2).contains(&c.len()) {
                return Err(Error::validation(format!(
                    "clause {} has {} literals, expected 1 or 2",
                    i + 1,
                    c.len()
                )));
            }
            if let Some(l) = c.iter().find(|l| l.var >= vars) {
                return Err(Error::validation(format!(
                    "clause {} uses variable {} of {vars}",
                    i + 1,
                    l.var + 1
                )));
            }
        }
        Ok(Cnf2Sat { vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Clauses satisfied by `assignment`.
    pub fn satisfied(&self, assignment: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| l.holds(assignment)))
            .count()
    }

    /// Occurrences of each variable as `(clause, position, positive)`, in
    /// clause order then literal order.
    fn occurrences(&self) -> Vec<Vec<(usize, usize, bool)>> {
        let mut occ = vec![Vec::new(); self.vars];
        for (ci, c) in self.clauses.iter().enumerate() {
            for (pi, l) in c.iter().enumerate() {
                occ[l.var].push((ci, pi, l.positive));
            }
        }
        occ
    }

    /// Every variable occurs at most three times, and three times only as two
    /// positive occurrences plus one negative.
    pub fn check_restricted(&self) -> Result<()> {
        for (v, occ) in self.occurrences().iter().enumerate() {
            let positives = occ.iter().filter(|o| o.2).count();
            let ok = match occ.len() {
                0..=2 => true,
                3 => positives == 2,
                _ => false,
            };
            if !ok {
                return Err(Error::shape(format!(
                    "variable {} occurs {} times ({} positive); at most three with exactly two positive are allowed",
                    v + 1,
                    occ.len(),
                    positives
                )));
            }
        }
        Ok(())
    }
}

/// Circuit for `p(G, k) = sum_i p_{k,i}` with `p_{1,i} = x_i^c` and
/// `p_{l+1,i} = x_i^c * sum_{j ~ i} p_{l,j}`. Each `p_{l,j}` is one node shared
/// by all its readers. Variable `i` is vertex `i`.
pub fn k_path_polynomial(g: &Graph, k: usize, c: u32) -> Result<Circuit> {
    if k == 0 || c == 0 {
        return Err(Error::validation("path length and exponent must be at least 1"));
    }
    let n = g.num_vertices();
    let mut b = CircuitBuilder::default();
    let powers: Vec<usize> = (0..n).map(|i| b.power(i, c)).collect();
    let adjacency: Vec<Vec<usize>> = (0..n).map(|i| g.neighbors(i).collect()).collect();
    // None marks an identically zero p_{l,i}
    let mut level: Vec<Option<usize>> = powers.iter().copied().map(Some).collect();
    for _ in 1..k {
        let next = (0..n)
            .map(|i| {
                let parts: Vec<usize> = adjacency[i].iter().filter_map(|&j| level[j]).collect();
                if parts.is_empty() {
                    return None;
                }
                let sum = match parts.as_slice() {
                    [one] => *one,
                    _ => b.push(Node::Add(parts)),
                };
                Some(b.push(Node::Mul(powers[i], sum)))
            })
            .collect();
        level = next;
    }
    let out = b.push(Node::Add(level.into_iter().flatten().collect()));
    Ok(b.finish(n, out))
}

/// `F(G) = prod_i sum_{(i,j) in E} x_i y_j` over `2t` variables: `x_i` is
/// variable `i`, `y_j` is variable `t + j`.
pub fn matching_polynomial_xy(g: &BipartiteGraph) -> PiSigmaPi {
    let t = g.side();
    let clauses = (0..t)
        .map(|i| Clause::new(g.neighbors(i).map(|j| Term::product([i, t + j])).collect()))
        .collect();
    PiSigmaPi::new(2 * t, clauses).expect("variables below 2t")
}

/// `H(G) = prod_i sum_{(i,j) in E} x_j` over the `t` right-side variables.
pub fn matching_polynomial_h(g: &BipartiteGraph) -> PiSigmaPi {
    let clauses = (0..g.side())
        .map(|i| Clause::linear(g.neighbors(i)))
        .collect();
    PiSigmaPi::new(g.side(), clauses).expect("variables below t")
}

/// `P(A) = prod_i sum_j a_ij x_j`; zero entries contribute no term.
pub fn permanent_polynomial(a: &IntMatrix) -> PiSigmaPi {
    let clauses = (0..a.dim())
        .map(|i| {
            Clause::new(
                a.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| Term::new(x.clone(), [(j, 1)]))
                    .collect(),
            )
        })
        .collect();
    PiSigmaPi::new(a.dim(), clauses).expect("variables below n")
}

/// `(T(v_1) + ... + T(v_n))^n` as `n` identical clauses, where `T(v_i)` is
/// the product of the edge variables at `v_i` padded with private variables
/// up to length `n - 1`.
///
/// Numbering: edge variables first, in lexicographic edge order; then the
/// padding variables of vertex 0, of vertex 1, and so on.
pub fn independent_set_polynomial(g: &Graph) -> PiSigmaPi {
    let n = g.num_vertices();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut next = edges.len();
    let terms: Vec<Term> = (0..n)
        .map(|v| {
            let mut vars: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .map(|(idx, _)| idx)
                .collect();
            let pad = (n - 1) - vars.len();
            vars.extend(next..next + pad);
            next += pad;
            Term::product(vars)
        })
        .collect();
    PiSigmaPi::new(next, vec![Clause::new(terms); n]).expect("variables below total")
}

/// `(clause index, literal index)`.
type Slot = (usize, usize);

/// Replaces each literal by a product of two fresh variables so that two
/// literals conflict (share a variable) exactly when they are complementary.
///
/// Per variable, by occurrence pattern (in clause order):
/// one occurrence `-> y1 y2`; two of one sign `-> y1 y2, y3 y4`; one of each
/// sign `-> y1 y2` for both; two positive and one negative `-> y1 y2, y3 y4`
/// for the positives and `y1 y3` for the negative. The `y` slots of variable
/// 0 come first, then those of variable 1, and so on; unused variables get none.
pub fn twosat_polynomial(f: &Cnf2Sat) -> Result<PiSigmaPi> {
    f.check_restricted()?;
    let occ = f.occurrences();
    let mut replacement: Vec<Vec<Option<Term>>> =
        f.clauses().iter().map(|c| vec![None; c.len()]).collect();
    let mut base = 0;
    for list in &occ {
        let y = |k: usize| base + k - 1;
        let positives: Vec<_> = list.iter().filter(|o| o.2).collect();
        let negatives: Vec<_> = list.iter().filter(|o| !o.2).collect();
        let (assign, slots): (Vec<(Slot, Term)>, usize) = match list.len() {
            0 => (Vec::new(), 0),
            1 => (vec![((list[0].0, list[0].1), Term::product([y(1), y(2)]))], 2),
            2 if positives.len() == 1 => (
                list.iter()
                    .map(|o| ((o.0, o.1), Term::product([y(1), y(2)])))
                    .collect(),
                2,
            ),
            2 => (
                vec![
                    ((list[0].0, list[0].1), Term::product([y(1), y(2)])),
                    ((list[1].0, list[1].1), Term::product([y(3), y(4)])),
                ],
                4,
            ),
            _ => (
                vec![
                    ((positives[0].0, positives[0].1), Term::product([y(1), y(2)])),
                    ((positives[1].0, positives[1].1), Term::product([y(3), y(4)])),
                    ((negatives[0].0, negatives[0].1), Term::product([y(1), y(3)])),
                ],
                4,
            ),
        };
        for ((ci, pi), term) in assign {
            replacement[ci][pi] = Some(term);
        }
        base += slots;
    }
    let clauses = replacement
        .into_iter()
        .map(|c| Clause::new(c.into_iter().map(|t| t.expect("every literal replaced")).collect()))
        .collect();
    PiSigmaPi::new(base, clauses)
}
