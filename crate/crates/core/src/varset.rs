//! Sets of variable indices, the identity of a multilinear monomial.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

/// A set of 0-based variable indices.
///
/// Stored as a little-endian bitset. Universes of up to 64 variables fit in
/// one inline word; larger ones spill to more words. Trailing zero words are
/// never stored, so equality and hashing do not depend on how the set was
/// built.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VarSet {
    words: SmallVec<[u64; 1]>,
}

impl VarSet {
    pub fn empty() -> Self {
        VarSet::default()
    }

    pub fn singleton(var: usize) -> Self {
        let mut s = VarSet::empty();
        s.insert(var);
        s
    }

    /// Set whose members are the bits of `word`.
    pub fn from_word(word: u64) -> Self {
        let mut words = SmallVec::new();
        if word != 0 {
            words.push(word);
        }
        VarSet { words }
    }

    /// The set as a single word, when every member is below 64.
    pub fn as_word(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        let mut words: SmallVec<[u64; 1]> = SmallVec::from_elem(u64::MAX, n / WORD);
        if !n.is_multiple_of(WORD) {
            words.push((1u64 << (n % WORD)) - 1);
        }
        VarSet { words }
    }

    pub fn insert(&mut self, var: usize) {
        let (w, b) = (var / WORD, var % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn contains(&self, var: usize) -> bool {
        let (w, b) = (var / WORD, var % WORD);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_disjoint(&self, other: &VarSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        VarSet { words }
    }

    pub fn difference(&self, other: &VarSet) -> VarSet {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        let mut s = VarSet { words };
        s.trim();
        s
    }

    /// Largest member, if any.
    pub fn max_var(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (WORD - 1 - last.leading_zeros() as usize))
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + b)
            })
        })
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VarSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Orders by cardinality, then by the ascending member list.
impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Writes `x1,x3,...` with 1-based indices, or `{}` for the empty set.
impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "x{}", v + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterates all submasks of `mask`, including `mask` itself and zero.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}
