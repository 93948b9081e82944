//! Approximation schemes for linear-clause products.
//!
//! Coefficients of `prod_i (sum of variables)` reduce to perfect-matching
//! counts, so every scheme here is written against a [`CountBackend`] that
//! counts (or estimates) matchings:
//!
//! * [`approx_coefficient`] maps `c(F, pi)` to the matchings of a bipartite
//!   graph of clauses versus the variables of `pi`;
//! * [`sum_via_padding`] multiplies in `n - m` copies of `x_1 + ... + x_n` so
//!   that `S(F) * (n - m)!` becomes the coefficient of `x_1 ... x_n`;
//! * [`hybrid_coefficient`] expands a small general factor and sums backend
//!   estimates over its multilinear monomials.
//!
//! The Monte-Carlo backend is Rasmussen's sequential estimator. It is
//! unbiased, but it does not carry a worst-case `(1 ± eps)` guarantee; the
//! schemes inherit exactly whatever accuracy the backend provides.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::{count_perfect_matchings, BipartiteGraph};
use crate::error::{Error, Result};
use crate::eval::{eval_pisigmapi, EvalBudget};
use crate::poly::{Clause, PiSigmaPi};
use crate::varset::VarSet;

/// How perfect matchings are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountBackend {
    Exact(EvalBudget),
    /// Mean of `samples` sequential-sampling estimates. One ChaCha8 stream
    /// seeded from `seed` drives all samples in order.
    MonteCarlo { samples: u64, seed: u64 },
}

impl CountBackend {
    pub fn exact() -> Self {
        CountBackend::Exact(EvalBudget::default())
    }

    pub fn monte_carlo(samples: u64, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::validation("sample count must be at least 1"));
        }
        Ok(CountBackend::MonteCarlo { samples, seed })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CountBackend::Exact(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    pub value: BigRational,
    /// True when `value` is exact.
    pub exact: bool,
    /// Standard error of `value` as a sample mean, for plain Monte-Carlo
    /// estimates. `None` for exact results and for combined estimates.
    pub std_error: Option<f64>,
}

impl ApproxResult {
    pub fn exact(value: impl Into<BigInt>) -> Self {
        ApproxResult {
            value: BigRational::from_integer(value.into()),
            exact: true,
            std_error: None,
        }
    }

    /// The value as an integer, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.value.is_integer().then(|| self.value.to_integer())
    }
}

/// Result of restricting a linear-clause product to the variables of a
/// monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    /// Left vertex `i` is clause `i`; right vertex `j` is `columns[j]`, the
    /// `j`-th smallest variable of the monomial.
    Graph {
        graph: BipartiteGraph,
        columns: Vec<usize>,
    },
    /// The coefficient is zero without counting anything.
    DefinitelyZero,
}

/// Checks the shape the matching reduction needs: every term a single
/// variable with coefficient 1, no variable repeated within a clause.
fn require_unit_linear(f: &PiSigmaPi) -> Result<()> {
    for (i, c) in f.clauses().iter().enumerate() {
        let mut seen = VarSet::empty();
        for t in &c.terms {
            if t.degree() != 1 {
                return Err(Error::shape(format!(
                    "clause {} has a term of degree {}; expected single variables",
                    i + 1,
                    t.degree()
                )));
            }
            if !t.coeff.is_one() {
                return Err(Error::shape(format!(
                    "clause {} has a term with coefficient {}; expected 1",
                    i + 1,
                    t.coeff
                )));
            }
            let v = t.max_var().expect("degree-1 term has a variable");
            if seen.contains(v) {
                return Err(Error::shape(format!(
                    "clause {} repeats variable x{}",
                    i + 1,
                    v + 1
                )));
            }
            seen.insert(v);
        }
    }
    Ok(())
}

fn check_monomial(f: &PiSigmaPi, pi: &VarSet) -> Result<()> {
    match pi.max_var() {
        Some(v) if v >= f.num_vars() => Err(Error::shape(format!(
            "monomial uses x{} but the polynomial has {} variables",
            v + 1,
            f.num_vars()
        ))),
        _ => Ok(()),
    }
}

/// Restricts every clause to the variables of `pi` and builds the
/// clause/variable incidence graph, whose perfect matchings are exactly the
/// ways of drawing `pi` one variable per clause.
pub fn reduce_coeff_to_matching(f: &PiSigmaPi, pi: &VarSet) -> Result<Reduction> {
    require_unit_linear(f)?;
    check_monomial(f, pi)?;
    let m = f.clauses().len();
    if pi.len() != m {
        return Ok(Reduction::DefinitelyZero);
    }
    let columns: Vec<usize> = pi.iter().collect();
    let mut edges = Vec::new();
    for (i, clause) in f.clauses().iter().enumerate() {
        let before = edges.len();
        for t in &clause.terms {
            let v = t.max_var().expect("degree-1 term");
            if let Ok(j) = columns.binary_search(&v) {
                edges.push((i, j));
            }
        }
        if edges.len() == before {
            return Ok(Reduction::DefinitelyZero);
        }
    }
    let graph = BipartiteGraph::new(m, edges).expect("indices below m");
    Ok(Reduction::Graph { graph, columns })
}

/// Estimate of `c(f, pi)` for a product of unit linear clauses.
pub fn approx_coefficient(f: &PiSigmaPi, pi: &VarSet, backend: &CountBackend) -> Result<ApproxResult> {
    match reduce_coeff_to_matching(f, pi)? {
        Reduction::DefinitelyZero => Ok(ApproxResult::exact(0)),
        Reduction::Graph { graph, .. } => estimate_matchings(&graph, backend),
    }
}

/// Estimate of `S(f)`, the sum of all multilinear coefficients, through the
/// coefficient of `x_1 ... x_n` in `f * (x_1 + ... + x_n)^(n-m)`.
pub fn sum_via_padding(f: &PiSigmaPi, backend: &CountBackend) -> Result<ApproxResult> {
    require_unit_linear(f)?;
    let n = f.num_vars();
    let m = f.clauses().len();
    if m > n {
        return Ok(ApproxResult::exact(0));
    }
    let mut clauses: Vec<Clause> = f.clauses().to_vec();
    clauses.extend(std::iter::repeat_n(Clause::linear(0..n), n - m));
    let padded = PiSigmaPi::new(n, clauses)?;
    let est = approx_coefficient(&padded, &VarSet::full(n), backend)?;
    let scale: BigInt = (1..=(n - m) as u64).map(BigInt::from).product();
    let scale_f = scale.to_f64().unwrap_or(f64::INFINITY);
    Ok(ApproxResult {
        value: est.value / BigRational::from_integer(scale),
        exact: est.exact,
        std_error: est.std_error.map(|se| se / scale_f),
    })
}

/// Estimate of `c(f1 * f2, pi)` where `f2` is a product of unit linear
/// clauses and `f1` is small enough to expand.
///
/// Returns `None` ("no") when no multilinear monomial of `f1` divides `pi`.
/// Otherwise sums `b_psi * c(f2, pi \ psi)` over the multilinear monomials
/// `psi ⊆ pi` of `f1`, visited in table order, with each `c(f2, ·)` from the
/// backend.
pub fn hybrid_coefficient(
    f1: &PiSigmaPi,
    f2: &PiSigmaPi,
    pi: &VarSet,
    backend: &CountBackend,
) -> Result<Option<ApproxResult>> {
    if f1.num_vars() != f2.num_vars() {
        return Err(Error::shape(format!(
            "factors over {} and {} variables",
            f1.num_vars(),
            f2.num_vars()
        )));
    }
    require_unit_linear(f2)?;
    check_monomial(f2, pi)?;
    let budget = match backend {
        CountBackend::Exact(b) => *b,
        CountBackend::MonteCarlo { .. } => EvalBudget::default(),
    };
    let expansion = eval_pisigmapi(f1, &budget)?;
    let candidates: Vec<_> = expansion
        .sorted()
        .into_iter()
        .filter(|(psi, _)| psi.is_subset(pi))
        .collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    let mut value = BigRational::zero();
    let mut exact = true;
    for (psi, b) in candidates {
        let rest = pi.difference(psi);
        let est = approx_coefficient(f2, &rest, backend)?;
        exact &= est.exact;
        value += BigRational::from_integer(b.clone()) * est.value;
    }
    Ok(Some(ApproxResult {
        value,
        exact,
        std_error: None,
    }))
}

/// Counts (exact backend) or estimates (Monte-Carlo backend) the perfect
/// matchings of `g`.
///
/// One Monte-Carlo sample walks the left vertices in order; at each it picks
/// a uniformly random still-free neighbour and multiplies the running weight
/// by the number of free neighbours, or stops with weight 0 if there is none.
/// The weight's expectation is the matching count.
pub fn estimate_matchings(g: &BipartiteGraph, backend: &CountBackend) -> Result<ApproxResult> {
    let (samples, seed) = match *backend {
        CountBackend::Exact(budget) => {
            return Ok(ApproxResult::exact(count_perfect_matchings(g, &budget)?));
        }
        CountBackend::MonteCarlo { samples, seed } => (samples, seed),
    };
    let t = g.side();
    let adjacency: Vec<Vec<usize>> = (0..t).map(|i| g.neighbors(i).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = BigInt::zero();
    let mut sum_sq = BigInt::zero();
    let mut used = vec![false; t];
    let mut free = Vec::with_capacity(t);
    for _ in 0..samples {
        used.iter_mut().for_each(|u| *u = false);
        let mut weight = BigInt::one();
        for nbrs in &adjacency {
            free.clear();
            free.extend(nbrs.iter().copied().filter(|&j| !used[j]));
            if free.is_empty() {
                weight = BigInt::zero();
                break;
            }
            weight *= free.len();
            used[free[rng.random_range(0..free.len())]] = true;
        }
        sum_sq += &weight * &weight;
        sum += weight;
    }
    let count = BigInt::from(samples);
    let mean = BigRational::new(sum.clone(), count.clone());
    let std_error = if samples > 1 {
        // unbiased sample variance of the weights, divided by the sample count
        let var = (BigRational::from_integer(sum_sq) - BigRational::new(&sum * &sum, count.clone()))
            / BigRational::from_integer(&count - 1);
        let var_of_mean = var / BigRational::from_integer(count);
        var_of_mean.to_f64().map(f64::sqrt)
    } else {
        None
    };
    Ok(ApproxResult {
        value: mean,
        exact: false,
        std_error,
    })
}
