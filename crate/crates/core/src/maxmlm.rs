//! Longest multilinear monomial formed by picking pairwise variable-disjoint
//! terms from distinct clauses.

use crate::error::{Error, ResourceError, ResourceKind, Result};
use crate::poly::PiSigmaPi;
use crate::varset::VarSet;

/// A choice of at most one term per clause whose product is multilinear.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SelectedMonomial {
    /// `(clause index, term index)` in selection order.
    pub picks: Vec<(usize, usize)>,
    pub varset: VarSet,
}

impl SelectedMonomial {
    /// Number of variables, the length of a multilinear monomial.
    pub fn length(&self) -> usize {
        self.varset.len()
    }

    /// Checks that picks name existing multilinear terms in distinct clauses,
    /// pairwise disjoint, and that `varset` is their union.
    pub fn validate(&self, f: &PiSigmaPi) -> Result<()> {
        let mut clauses = std::collections::BTreeSet::new();
        let mut union = VarSet::empty();
        for &(ci, ti) in &self.picks {
            let term = f
                .clauses()
                .get(ci)
                .and_then(|c| c.terms.get(ti))
                .ok_or_else(|| Error::validation(format!("no term {ti} in clause {ci}")))?;
            if !clauses.insert(ci) {
                return Err(Error::validation(format!("clause {ci} picked twice")));
            }
            if !term.is_multilinear() {
                return Err(Error::validation(format!("term {ti} of clause {ci} is not multilinear")));
            }
            let support = term.support();
            if !union.is_disjoint(&support) {
                return Err(Error::validation(format!("term {ti} of clause {ci} overlaps earlier picks")));
            }
            union = union.union(&support);
        }
        if union != self.varset {
            return Err(Error::validation("varset is not the union of the picked terms"));
        }
        Ok(())
    }
}

/// Candidate terms per clause: multilinear, non-constant, as `(term index, support)`.
fn candidates(f: &PiSigmaPi) -> Vec<Vec<(usize, VarSet)>> {
    f.clauses()
        .iter()
        .map(|c| {
            c.terms
                .iter()
                .enumerate()
                .filter(|(_, t)| t.is_multilinear() && !t.is_constant())
                .map(|(j, t)| (j, t.support()))
                .collect()
        })
        .collect()
}

/// Repeatedly takes the longest term, among clauses not yet used, that shares
/// no variable with the terms taken so far. Ties go to the lowest clause
/// index, then the lowest term index.
///
/// When every term has degree at most `λ`, the result is at least `1/λ` of
/// the optimum length. Constant terms are never picked; they add no length.
pub fn greedy_max_mlm(f: &PiSigmaPi) -> SelectedMonomial {
    let cands = candidates(f);
    let mut used = vec![false; cands.len()];
    let mut sel = SelectedMonomial::default();
    loop {
        let mut best: Option<(usize, usize, &VarSet)> = None;
        for (ci, terms) in cands.iter().enumerate() {
            if used[ci] {
                continue;
            }
            for (ti, support) in terms {
                if !support.is_disjoint(&sel.varset) {
                    continue;
                }
                if best.is_none_or(|(_, _, b)| support.len() > b.len()) {
                    best = Some((ci, *ti, support));
                }
            }
        }
        let Some((ci, ti, support)) = best else {
            return sel;
        };
        used[ci] = true;
        sel.picks.push((ci, ti));
        sel.varset = sel.varset.union(support);
    }
}

/// Default cap on the search tree of [`exact_max_mlm`].
pub const EXACT_SEARCH_LIMIT: u128 = 100_000_000;

/// A longest selection, by depth-first search over clauses where each clause
/// either contributes one disjoint term or is skipped.
///
/// Among longest selections, returns the lexicographically smallest pick
/// sequence (picks listed in clause order). Fails when
/// `prod (clause size + 1)` exceeds `limit`.
pub fn exact_max_mlm(f: &PiSigmaPi, limit: u128) -> Result<SelectedMonomial> {
    let tree = f
        .clauses()
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128 + 1));
    if tree.is_none_or(|size| size > limit) {
        return Err(ResourceError::new(ResourceKind::SearchLimit, limit).into());
    }
    let cands = candidates(f);
    let mut search = Search {
        cands: &cands,
        picks: Vec::new(),
        best: SelectedMonomial::default(),
        best_len: 0,
    };
    search.visit(0, &VarSet::empty());
    Ok(search.best)
}

struct Search<'a> {
    cands: &'a [Vec<(usize, VarSet)>],
    picks: Vec<(usize, usize)>,
    best: SelectedMonomial,
    best_len: usize,
}

impl Search<'_> {
    fn visit(&mut self, clause: usize, current: &VarSet) {
        let len = current.len();
        if len > self.best_len {
            self.best_len = len;
            self.best = SelectedMonomial {
                picks: self.picks.clone(),
                varset: current.clone(),
            };
        }
        if clause == self.cands.len() {
            return;
        }
        // each remaining clause adds at most its longest still-compatible term
        let bound: usize = self.cands[clause..]
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .filter(|(_, s)| s.is_disjoint(current))
                    .map(|(_, s)| s.len())
                    .max()
                    .unwrap_or(0)
            })
            .sum();
        if len + bound <= self.best_len {
            return;
        }
        for (ti, support) in &self.cands[clause] {
            if support.is_disjoint(current) {
                self.picks.push((clause, *ti));
                self.visit(clause + 1, &current.union(support));
                self.picks.pop();
            }
        }
        self.visit(clause + 1, current);
    }
}
