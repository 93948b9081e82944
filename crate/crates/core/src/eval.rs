//! Coefficient extraction for all multilinear monomials at once.
//!
//! Two evaluators share the filtered table algebra: a bottom-up pass over an
//! arithmetic circuit, and a clause-by-clause fold for clause lists. A third,
//! [`oracle_expand`], expands the product in full with exponent vectors and
//! filters only at the end; it exists to check the other two.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, ResourceError, ResourceKind, Result};
use crate::poly::{Circuit, CircuitBuilder, Node, PiSigmaPi};
use crate::table::{clause_to_table, Meter, MultilinearTable};
use crate::varset::VarSet;

/// Caps on the exponential work of an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalBudget {
    pub max_table_entries: usize,
    /// Upper bound on key-pair inspections across all products.
    pub max_total_work: u64,
}

impl EvalBudget {
    pub const DEFAULT_ENTRIES: usize = 1 << 22;
    pub const DEFAULT_WORK: u64 = 1 << 32;

    pub fn new(max_table_entries: usize, max_total_work: u64) -> Result<Self> {
        if max_table_entries == 0 || max_total_work == 0 {
            return Err(Error::validation("budget limits must be positive"));
        }
        Ok(EvalBudget {
            max_table_entries,
            max_total_work,
        })
    }

    pub fn unlimited() -> Self {
        EvalBudget {
            max_table_entries: usize::MAX,
            max_total_work: u64::MAX,
        }
    }

    /// Default budget, raised by `MLMKIT_BUDGET=<entries>[,<work>]` when set.
    /// Values below the defaults are ignored.
    pub fn from_env() -> Self {
        let mut b = EvalBudget::default();
        if let Ok(raw) = std::env::var("MLMKIT_BUDGET") {
            let mut parts = raw.split(',').map(str::trim);
            if let Some(Ok(e)) = parts.next().map(str::parse::<usize>) {
                b.max_table_entries = b.max_table_entries.max(e);
            }
            if let Some(Ok(w)) = parts.next().map(str::parse::<u64>) {
                b.max_total_work = b.max_total_work.max(w);
            }
        }
        b
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter::new(self.max_table_entries, self.max_total_work)
    }
}

impl Default for EvalBudget {
    fn default() -> Self {
        EvalBudget {
            max_table_entries: Self::DEFAULT_ENTRIES,
            max_total_work: Self::DEFAULT_WORK,
        }
    }
}

/// Multilinear part of the polynomial computed by `c`.
///
/// Resource errors carry the id of the node being evaluated.
pub fn eval_circuit(c: &Circuit, budget: &EvalBudget) -> Result<MultilinearTable> {
    let n = c.num_vars();
    let nodes = c.nodes();
    // drop intermediate tables after their last reader
    let mut last_use = vec![0usize; nodes.len()];
    for (id, node) in nodes.iter().enumerate() {
        match node {
            Node::Add(children) => children.iter().for_each(|&ch| last_use[ch] = id),
            Node::Mul(a, b) => {
                last_use[*a] = id;
                last_use[*b] = id;
            }
            Node::Input(_) | Node::Const(_) => {}
        }
    }
    last_use[c.output()] = usize::MAX;

    let mut meter = budget.meter();
    let mut values: Vec<Option<MultilinearTable>> = vec![None; nodes.len()];
    for (id, node) in nodes.iter().enumerate() {
        let table = match node {
            Node::Input(v) => MultilinearTable::from_entries(n, [(VarSet::singleton(*v), 1.into())])?,
            Node::Const(k) => MultilinearTable::from_entries(n, [(VarSet::empty(), k.clone())])?,
            Node::Add(children) => {
                let mut acc = MultilinearTable::zero(n);
                for &ch in children {
                    let child = values[ch].as_ref().expect("child evaluated and still live");
                    acc = acc.add_unchecked(child);
                }
                acc
            }
            Node::Mul(a, b) => {
                let live = |ch: usize| values[ch].as_ref().expect("child evaluated and still live");
                live(*a)
                    .mul_metered(live(*b), &mut meter)
                    .map_err(|e| e.at_node(id))?
            }
        };
        meter
            .check_entries(table.len())
            .map_err(|e| e.at_node(id))?;
        values[id] = Some(table);
        for ch in children_of(node) {
            if last_use[ch] == id {
                values[ch] = None;
            }
        }
    }
    Ok(values[c.output()].take().expect("output evaluated"))
}

fn children_of(node: &Node) -> Vec<usize> {
    match node {
        Node::Add(children) => children.clone(),
        Node::Mul(a, b) => vec![*a, *b],
        Node::Input(_) | Node::Const(_) => Vec::new(),
    }
}

/// Order in which clause tables are multiplied into the accumulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FoldOrder {
    /// Fewest terms first (stable), which keeps early tables small.
    #[default]
    BySize,
    LeftToRight,
    /// Last clause first, as `F_{m-1} * F_m`, then `F_{m-2} * G_{m-1}`, ...
    RightToLeft,
}

/// Multilinear part of the product of `f`'s clauses.
pub fn eval_pisigmapi(f: &PiSigmaPi, budget: &EvalBudget) -> Result<MultilinearTable> {
    eval_pisigmapi_with(f, budget, FoldOrder::default())
}

pub fn eval_pisigmapi_with(
    f: &PiSigmaPi,
    budget: &EvalBudget,
    order: FoldOrder,
) -> Result<MultilinearTable> {
    let n = f.num_vars();
    if f.has_empty_clause() {
        return Ok(MultilinearTable::zero(n));
    }
    let mut clauses: Vec<_> = f.clauses().iter().collect();
    match order {
        FoldOrder::BySize => clauses.sort_by_key(|c| c.len()),
        FoldOrder::LeftToRight => {}
        FoldOrder::RightToLeft => clauses.reverse(),
    }
    let mut meter = budget.meter();
    let mut acc = MultilinearTable::one(n);
    for clause in clauses {
        let table = clause_to_table(clause, n);
        acc = table.mul_metered(&acc, &mut meter)?;
        if acc.is_empty() {
            break;
        }
    }
    Ok(acc)
}

/// `c(F, pi)`: zero when `pi` is not a key of the table.
pub fn coefficient(t: &MultilinearTable, pi: &VarSet) -> BigInt {
    t.coefficient(pi)
}

/// `S(F)`: sum of all multilinear coefficients.
pub fn sum_coefficients(t: &MultilinearTable) -> BigInt {
    t.sum()
}

/// Default cap on monomials enumerated by [`oracle_expand`].
pub const ORACLE_LIMIT: u64 = 1_000_000;

/// Full sum-product expansion by enumerating one term per clause, with
/// exponent vectors; non-multilinear monomials are removed only at the end.
///
/// Fails when the number of term choices exceeds `limit`.
pub fn oracle_expand(f: &PiSigmaPi, limit: u64) -> Result<MultilinearTable> {
    let n = f.num_vars();
    if f.has_empty_clause() {
        return Ok(MultilinearTable::zero(n));
    }
    let clauses = f.clauses();
    let choices = clauses
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    match choices {
        Some(k) if k <= limit => {}
        _ => return Err(ResourceError::new(ResourceKind::ExpansionLimit, u128::from(limit)).into()),
    }

    let mut expansion: HashMap<Vec<u32>, BigInt> = HashMap::new();
    let mut pick = vec![0usize; clauses.len()];
    loop {
        let mut exps = vec![0u32; n];
        let mut coeff = BigInt::from(1);
        for (c, &j) in clauses.iter().zip(&pick) {
            let term = &c.terms[j];
            coeff *= &term.coeff;
            for (&v, &e) in term.exponents() {
                exps[v] += e;
            }
        }
        *expansion.entry(exps).or_default() += coeff;

        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == pick.len() {
                return finish_oracle(n, expansion);
            }
            pick[i] += 1;
            if pick[i] < clauses[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

fn finish_oracle(n: usize, expansion: HashMap<Vec<u32>, BigInt>) -> Result<MultilinearTable> {
    let multilinear = expansion
        .into_iter()
        .filter(|(exps, c)| !c.is_zero() && exps.iter().all(|&e| e <= 1))
        .map(|(exps, c)| {
            let key: VarSet = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e == 1)
                .map(|(v, _)| v)
                .collect();
            (key, c)
        });
    MultilinearTable::from_entries(n, multilinear)
}

/// Circuit with the same expansion as `f`: one sum node per clause, products
/// of the clause sums chained left-deep in clause order.
pub fn circuit_from_pisigmapi(f: &PiSigmaPi) -> Circuit {
    let mut b = CircuitBuilder::default();
    let sums: Vec<usize> = f
        .clauses()
        .iter()
        .map(|clause| {
            let terms: Vec<usize> = clause.terms.iter().map(|t| b.term(t)).collect();
            match terms.as_slice() {
                // a one-term clause is its term
                [single] => *single,
                _ => b.push(Node::Add(terms)),
            }
        })
        .collect();
    let out = b.product(&sums);
    b.finish(f.num_vars(), out)
}
