//! Multilinear tables: the multilinear part of a polynomial as a map from
//! variable subsets to exact coefficients, with multilinear-filtered sum and
//! product.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, ResourceError, ResourceKind, Result};
use crate::poly::Clause;
use crate::varset::{submasks, VarSet};

/// Resource accounting shared by the table algebra and the evaluators.
///
/// Work is counted in key-pair inspections during multiplication, which
/// bounds the number of coefficient products from above.
#[derive(Debug, Clone)]
pub(crate) struct Meter {
    max_entries: usize,
    work_limit: u64,
    work_done: u64,
}

impl Meter {
    pub fn new(max_entries: usize, work_limit: u64) -> Self {
        Meter {
            max_entries,
            work_limit,
            work_done: 0,
        }
    }

    pub fn unlimited() -> Self {
        Meter::new(usize::MAX, u64::MAX)
    }

    fn charge(&mut self, units: u64) -> Result<(), ResourceError> {
        self.work_done = self.work_done.saturating_add(units);
        if self.work_done > self.work_limit {
            return Err(ResourceError::new(
                ResourceKind::Work,
                u128::from(self.work_limit),
            ));
        }
        Ok(())
    }

    pub fn check_entries(&self, len: usize) -> Result<(), ResourceError> {
        if len > self.max_entries {
            return Err(ResourceError::new(
                ResourceKind::TableEntries,
                self.max_entries as u128,
            ));
        }
        Ok(())
    }
}

/// Coefficients of the multilinear monomials of a polynomial over `n`
/// variables. Never stores a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearTable {
    n: usize,
    entries: HashMap<VarSet, BigInt>,
}

impl MultilinearTable {
    /// The zero polynomial.
    pub fn zero(n: usize) -> Self {
        MultilinearTable {
            n,
            entries: HashMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one(n: usize) -> Self {
        let mut t = MultilinearTable::zero(n);
        t.entries.insert(VarSet::empty(), BigInt::one());
        t
    }

    /// Sums coefficients of repeated keys and drops zeros.
    pub fn from_entries(
        n: usize,
        entries: impl IntoIterator<Item = (VarSet, BigInt)>,
    ) -> Result<Self> {
        let mut t = MultilinearTable::zero(n);
        for (k, c) in entries {
            if let Some(v) = k.max_var().filter(|&v| v >= n) {
                return Err(Error::validation(format!(
                    "monomial uses x{} but the table has {n} variables",
                    v + 1
                )));
            }
            t.accumulate(k, c);
        }
        t.canonicalize();
        Ok(t)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &VarSet) -> Option<&BigInt> {
        self.entries.get(key)
    }

    /// Coefficient of the multilinear monomial `key`, zero when absent.
    pub fn coefficient(&self, key: &VarSet) -> BigInt {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    /// Sum of all multilinear coefficients.
    pub fn sum(&self) -> BigInt {
        self.entries.values().sum()
    }

    /// Entries in arbitrary order.
    pub fn iter(&self) -> impl Iterator<Item = (&VarSet, &BigInt)> {
        self.entries.iter()
    }

    /// Entries ordered by cardinality, then by ascending variable list.
    pub fn sorted(&self) -> Vec<(&VarSet, &BigInt)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add(&self, other: &MultilinearTable) -> Result<MultilinearTable> {
        self.same_universe(other)?;
        Ok(self.add_unchecked(other))
    }

    /// Product with every non-multilinear monomial discarded.
    pub fn mul(&self, other: &MultilinearTable) -> Result<MultilinearTable> {
        self.same_universe(other)?;
        Ok(self
            .mul_metered(other, &mut Meter::unlimited())
            .expect("unlimited meter"))
    }

    fn same_universe(&self, other: &MultilinearTable) -> Result<()> {
        if self.n != other.n {
            return Err(Error::shape(format!(
                "tables over {} and {} variables",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub(crate) fn add_unchecked(&self, other: &MultilinearTable) -> MultilinearTable {
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (k, c) in &small.entries {
            out.accumulate(k.clone(), c.clone());
        }
        out.canonicalize();
        out
    }

    /// For every disjoint key pair `(S, T)`, adds `a[S] * b[T]` at `S | T`.
    ///
    /// Iterates the smaller table. For each of its keys `S` the partner keys
    /// are either scanned from the larger table or, when that table holds more
    /// keys than the complement of `S` has subsets, looked up by enumerating
    /// those subsets. The latter keeps one product within `O(3^n)` lookups.
    pub(crate) fn mul_metered(
        &self,
        other: &MultilinearTable,
        meter: &mut Meter,
    ) -> Result<MultilinearTable, ResourceError> {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = MultilinearTable::zero(n);
        let universe = (n <= 64).then(|| VarSet::full(n).as_word().unwrap_or(0));
        for (s, c) in &small.entries {
            let free = n - s.len();
            let enumerate = match (universe, s.as_word()) {
                (Some(u), Some(w)) if free < 64 && (big.len() as u64) > (1u64 << free) => {
                    Some(u & !w)
                }
                _ => None,
            };
            match enumerate {
                Some(complement) => {
                    meter.charge(1u64 << free)?;
                    for sub in submasks(complement) {
                        let key = VarSet::from_word(sub);
                        if let Some(d) = big.entries.get(&key) {
                            out.accumulate(s.union(&key), c * d);
                        }
                    }
                }
                None => {
                    meter.charge(big.len() as u64)?;
                    for (t, d) in &big.entries {
                        if s.is_disjoint(t) {
                            out.accumulate(s.union(t), c * d);
                        }
                    }
                }
            }
            meter.check_entries(out.len())?;
        }
        out.canonicalize();
        Ok(out)
    }

    fn accumulate(&mut self, key: VarSet, c: BigInt) {
        if c.is_zero() {
            return;
        }
        *self.entries.entry(key).or_default() += c;
    }

    fn canonicalize(&mut self) {
        self.entries.retain(|_, c| !c.is_zero());
    }
}

/// The multilinear part of one clause: each multilinear term becomes an
/// entry (equal supports merged), terms with a repeated variable are dropped.
///
/// Every variable in `clause` must be below `n`.
pub fn clause_to_table(clause: &Clause, n: usize) -> MultilinearTable {
    let mut t = MultilinearTable::zero(n);
    for term in clause.terms.iter().filter(|t| t.is_multilinear()) {
        debug_assert!(term.max_var().is_none_or(|v| v < n));
        t.accumulate(term.support(), term.coeff.clone());
    }
    t.canonicalize();
    t
}
