//! Random instance generators and brute-force reference implementations
//! shared by the integration tests. Nothing here calls into the table
//! algebra, so agreement with it is meaningful.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use mlmkit::{
    BipartiteGraph, Circuit, Clause, Cnf2Sat, Graph, IntMatrix, Literal, MultilinearTable, Node,
    PiSigmaPi, Term, VarSet,
};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random clause list over exactly `n` variables with `m` clauses of 1..=s
/// terms, each of degree 0..=t (repeated variables allowed) and coefficient
/// drawn from `coeffs`.
pub fn random_pisigmapi(
    rng: &mut impl Rng,
    n: usize,
    m: usize,
    s: usize,
    t: usize,
    coeffs: std::ops::RangeInclusive<i64>,
) -> PiSigmaPi {
    let clauses = (0..m)
        .map(|_| {
            let terms = (0..rng.random_range(1..=s))
                .map(|_| {
                    let degree = if n == 0 { 0 } else { rng.random_range(0..=t) };
                    let factors: Vec<(usize, u32)> =
                        (0..degree).map(|_| (rng.random_range(0..n), 1)).collect();
                    Term::new(rng.random_range(coeffs.clone()), factors)
                })
                .collect();
            Clause::new(terms)
        })
        .collect();
    PiSigmaPi::new(n, clauses).unwrap()
}

/// Product of `m` clauses, each a sum of 1..=max_len distinct variables with
/// coefficient 1.
pub fn random_unit_linear(rng: &mut impl Rng, n: usize, m: usize, max_len: usize) -> PiSigmaPi {
    let all: Vec<usize> = (0..n).collect();
    let clauses = (0..m)
        .map(|_| {
            let len = rng.random_range(1..=max_len.min(n));
            Clause::linear(all.choose_multiple(rng, len).copied())
        })
        .collect();
    PiSigmaPi::new(n, clauses).unwrap()
}

/// Random circuit with `n` inputs followed by constants, sums and products
/// until `size` nodes; the last node is the output.
pub fn random_circuit(rng: &mut impl Rng, n: usize, size: usize) -> Circuit {
    let mut nodes: Vec<Node> = (0..n).map(Node::Input).collect();
    while nodes.len() < size.max(n + 1) {
        let id = nodes.len();
        let node = match rng.random_range(0..10) {
            0 => Node::Const(BigInt::from(rng.random_range(-3..=3))),
            1..=4 => {
                let k = rng.random_range(1..=3);
                Node::Add((0..k).map(|_| rng.random_range(0..id)).collect())
            }
            _ => Node::Mul(rng.random_range(0..id), rng.random_range(0..id)),
        };
        nodes.push(node);
    }
    let out = nodes.len() - 1;
    Circuit::new(n, nodes, out).unwrap()
}

type Dense = HashMap<Vec<u32>, BigInt>;

/// Full polynomial expansion of a clause list with explicit exponent vectors;
/// non-multilinear monomials are dropped only at the very end.
pub fn expand_pisigmapi(f: &PiSigmaPi) -> MultilinearTable {
    let n = f.num_vars();
    let mut acc: Dense = HashMap::from([(vec![0; n], BigInt::from(1))]);
    for clause in f.clauses() {
        let mut next: Dense = HashMap::new();
        for (mono, c) in &acc {
            for term in &clause.terms {
                let mut m = mono.clone();
                for (&v, &e) in term.exponents() {
                    m[v] += e;
                }
                *next.entry(m).or_default() += c * &term.coeff;
            }
        }
        acc = next;
    }
    finish(n, acc)
}

/// Full expansion of a circuit with exponent vectors. Monomials of total
/// degree above `n` cannot be multilinear and are pruned; `None` when some
/// node holds more than `max_terms` monomials.
pub fn expand_circuit(c: &Circuit, max_terms: usize) -> Option<MultilinearTable> {
    let n = c.num_vars();
    let mut vals: Vec<Dense> = Vec::with_capacity(c.size());
    for node in c.nodes() {
        let v: Dense = match node {
            Node::Input(i) => {
                let mut m = vec![0; n];
                m[*i] = 1;
                HashMap::from([(m, BigInt::from(1))])
            }
            Node::Const(k) => HashMap::from([(vec![0; n], k.clone())]),
            Node::Add(ch) => {
                let mut s: Dense = HashMap::new();
                for &x in ch {
                    for (m, c) in &vals[x] {
                        *s.entry(m.clone()).or_default() += c;
                    }
                }
                s
            }
            Node::Mul(a, b) => {
                let mut p: Dense = HashMap::new();
                for (ma, ca) in &vals[*a] {
                    for (mb, cb) in &vals[*b] {
                        let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                        if m.iter().sum::<u32>() as usize <= n {
                            *p.entry(m).or_default() += ca * cb;
                        }
                    }
                }
                p
            }
        };
        let v: Dense = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if v.len() > max_terms {
            return None;
        }
        vals.push(v);
    }
    Some(finish(n, vals.swap_remove(c.output())))
}

fn finish(n: usize, dense: Dense) -> MultilinearTable {
    let entries = dense
        .into_iter()
        .filter(|(m, _)| m.iter().all(|&e| e <= 1))
        .map(|(m, c)| {
            let set: VarSet = m.iter().enumerate().filter(|(_, &e)| e == 1).map(|(i, _)| i).collect();
            (set, c)
        });
    MultilinearTable::from_entries(n, entries).unwrap()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                prefix.push(j);
                go(prefix, used, out);
                prefix.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `sum_sigma prod_i a_{i, sigma(i)}`.
pub fn naive_permanent(a: &IntMatrix) -> BigInt {
    permutations(a.dim())
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &j)| a.get(i, j).clone()).product::<BigInt>())
        .sum()
}

pub fn random_matrix(rng: &mut impl Rng, n: usize, entries: std::ops::RangeInclusive<i64>) -> IntMatrix {
    IntMatrix::from_fn(n, |_, _| BigInt::from(rng.random_range(entries.clone())))
}

pub fn random_bigraph(rng: &mut impl Rng, t: usize, p: f64) -> BipartiteGraph {
    let edges: Vec<_> = (0..t)
        .flat_map(|i| (0..t).map(move |j| (i, j)))
        .filter(|_| rng.random_bool(p))
        .collect();
    BipartiteGraph::new(t, edges).unwrap()
}

/// Perfect matchings by checking every permutation.
pub fn naive_matchings(g: &BipartiteGraph) -> u64 {
    permutations(g.side())
        .iter()
        .filter(|p| p.iter().enumerate().all(|(i, &j)| g.has_edge(i, j)))
        .count() as u64
}

/// Every simple graph on `n` labelled vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
        Graph::new(n, edges).unwrap()
    })
}

pub fn max_independent_set(g: &Graph) -> usize {
    let n = g.num_vertices();
    (0u32..1 << n)
        .filter(|&s| g.edges().all(|(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn max_2sat(f: &Cnf2Sat) -> usize {
    let n = f.num_vars();
    (0u32..1 << n)
        .map(|bits| {
            let assignment: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            f.satisfied(&assignment)
        })
        .max()
        .unwrap_or(0)
}

/// Random formula meeting the occurrence restriction: each variable takes
/// one of the allowed sign patterns, and the literals are shuffled into
/// clauses of one or two literals.
pub fn random_restricted_2sat(rng: &mut impl Rng, vars: usize, max_clauses: usize) -> Cnf2Sat {
    const PATTERNS: [&[bool]; 7] = [&[], &[true], &[false], &[true, true], &[false, false], &[true, false], &[true, true, false]];
    let mut lits: Vec<Literal> = (0..vars)
        .flat_map(|v| {
            let p = PATTERNS[rng.random_range(0..PATTERNS.len())];
            p.iter().map(move |&positive| Literal { var: v, positive })
        })
        .collect();
    lits.shuffle(rng);
    let mut clauses = Vec::new();
    let mut rest = lits.as_slice();
    while !rest.is_empty() && clauses.len() < max_clauses {
        let take = if rest.len() >= 2 && rng.random_bool(0.7) { 2 } else { 1 };
        clauses.push(rest[..take].to_vec());
        rest = &rest[take..];
    }
    Cnf2Sat::new(vars, clauses).unwrap()
}

/// Whether `g` has a simple path on exactly `k` vertices.
pub fn has_simple_path(g: &Graph, k: usize) -> bool {
    fn extend(g: &Graph, v: usize, left: usize, seen: &mut Vec<bool>) -> bool {
        if left == 0 {
            return true;
        }
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        for u in nbrs {
            if !seen[u] {
                seen[u] = true;
                if extend(g, u, left - 1, seen) {
                    return true;
                }
                seen[u] = false;
            }
        }
        false
    }
    let n = g.num_vertices();
    (0..n).any(|v| {
        let mut seen = vec![false; n];
        seen[v] = true;
        extend(g, v, k - 1, &mut seen)
    })
}

/// Number of simple paths on `k` vertices using exactly the vertex set
/// `set`, counted with direction, by brute force over orderings.
pub fn directed_paths_on(g: &Graph, set: &[usize]) -> u64 {
    permutations(set.len())
        .iter()
        .filter(|p| p.windows(2).all(|w| g.has_edge(set[w[0]], set[w[1]])))
        .count() as u64
}

/// Keys of a table grouped by cardinality, for readable assertion failures.
pub fn by_size(t: &MultilinearTable) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for (k, _) in t.iter() {
        *out.entry(k.len()).or_default() += 1;
    }
    out
}

/// Product of two tables read as polynomials, expanded with exponent vectors
/// and filtered afterwards.
pub fn naive_table_mul(a: &MultilinearTable, b: &MultilinearTable) -> MultilinearTable {
    let n = a.num_vars();
    let dense = |k: &VarSet| -> Vec<u32> { (0..n).map(|i| u32::from(k.contains(i))).collect() };
    let mut out: Dense = HashMap::new();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            let m: Vec<u32> = dense(ka).iter().zip(dense(kb)).map(|(x, y)| x + y).collect();
            *out.entry(m).or_default() += ca * cb;
        }
    }
    finish(n, out)
}
