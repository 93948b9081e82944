//! Coefficients of multilinear monomials in products of sums of products and
//! in arithmetic circuits, computed exactly over the integers.
//!
//! The central type is [`MultilinearTable`]: every multilinear monomial of a
//! polynomial with its coefficient, all other monomials dropped as soon as
//! they appear. On top of it sit permanents and perfect-matching counts,
//! approximation schemes built on matching counters, and a greedy
//! approximation for the longest multilinear monomial a clause product can
//! form.

pub mod approx;
pub mod cli;
pub mod counting;
pub mod error;
pub mod eval;
pub mod generators;
pub mod maxmlm;
pub mod poly;
pub mod table;
pub mod text;
pub mod varset;

pub use approx::{
    approx_coefficient, estimate_matchings, hybrid_coefficient, reduce_coeff_to_matching,
    sum_via_padding, ApproxResult, CountBackend, Reduction,
};
pub use counting::{
    biadjacency, count_perfect_matchings, permanent, permanent_ryser, BipartiteGraph, IntMatrix,
};
pub use error::{Error, ResourceError, ResourceKind, Result};
pub use eval::{
    circuit_from_pisigmapi, coefficient, eval_circuit, eval_pisigmapi, eval_pisigmapi_with,
    oracle_expand, sum_coefficients, EvalBudget, FoldOrder,
};
pub use generators::{Cnf2Sat, Graph, Literal};
pub use maxmlm::{exact_max_mlm, greedy_max_mlm, SelectedMonomial};
pub use poly::{Circuit, Clause, Node, PiSigmaPi, Term};
pub use table::MultilinearTable;
pub use varset::VarSet;
