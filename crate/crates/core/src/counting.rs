//! Permanents and perfect-matching counts through the clause-fold evaluator,
//! plus Ryser's inclusion-exclusion formula as an independent check.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, ResourceError, ResourceKind, Result};
use crate::eval::{eval_pisigmapi, EvalBudget};
use crate::generators::{matching_polynomial_h, permanent_polynomial};
use crate::varset::VarSet;

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::shape(format!(
                "matrix is not square: row {} has {} entries, expected {n}",
                i + 1,
                r.len()
            )));
        }
        Ok(IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        IntMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        IntMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::from_fn(n, |i, j| BigInt::from(u8::from(i == j)))
    }

    pub fn ones(n: usize) -> Self {
        IntMatrix::from_fn(n, |_, _| BigInt::one())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }
}

/// Bipartite graph with `t` vertices per side; edge `(i, j)` joins left
/// vertex `i` to right vertex `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    t: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(t: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= t || j >= t) {
            return Err(Error::validation(format!(
                "edge ({}, {}) outside a side of size {t}",
                i + 1,
                j + 1
            )));
        }
        Ok(BipartiteGraph { t, edges })
    }

    /// `K_{t,t}`.
    pub fn complete(t: usize) -> Self {
        BipartiteGraph {
            t,
            edges: (0..t).flat_map(|i| (0..t).map(move |j| (i, j))).collect(),
        }
    }

    pub fn side(&self) -> usize {
        self.t
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// Right neighbours of left vertex `i`, ascending.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j)
    }
}

/// Permanent as the coefficient of `x_1 ... x_n` in `prod_i sum_j a_ij x_j`.
pub fn permanent(a: &IntMatrix, budget: &EvalBudget) -> Result<BigInt> {
    let table = eval_pisigmapi(&permanent_polynomial(a), budget)?;
    Ok(table.coefficient(&VarSet::full(a.dim())))
}

/// Largest dimension [`permanent_ryser`] accepts.
pub const RYSER_MAX_DIM: usize = 30;

/// Ryser's formula `sum_S (-1)^(n-|S|) prod_i sum_{j in S} a_ij` over column
/// subsets `S`, visited in Gray-code order so each step updates one column.
pub fn permanent_ryser(a: &IntMatrix) -> Result<BigInt> {
    let n = a.dim();
    if n > RYSER_MAX_DIM {
        return Err(ResourceError::new(ResourceKind::Dimension, RYSER_MAX_DIM as u128).into());
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut row_sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut gray = 0u64;
    for k in 1u64..(1 << n) {
        let col = k.trailing_zeros() as usize;
        gray ^= 1 << col;
        let added = gray & (1 << col) != 0;
        for (i, s) in row_sums.iter_mut().enumerate() {
            if added {
                *s += a.get(i, col);
            } else {
                *s -= a.get(i, col);
            }
        }
        let prod: BigInt = row_sums.iter().product();
        if (n - gray.count_ones() as usize).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

/// Number of perfect matchings, read off `H(G) = prod_i sum_{(i,j) in E} x_j`.
pub fn count_perfect_matchings(g: &BipartiteGraph, budget: &EvalBudget) -> Result<BigInt> {
    let table = eval_pisigmapi(&matching_polynomial_h(g), budget)?;
    Ok(table.coefficient(&VarSet::full(g.side())))
}

/// 0/1 biadjacency matrix: entry `(i, j)` is 1 iff edge `(i, j)` exists.
pub fn biadjacency(g: &BipartiteGraph) -> IntMatrix {
    IntMatrix::from_fn(g.side(), |i, j| BigInt::from(u8::from(g.has_edge(i, j))))
}
