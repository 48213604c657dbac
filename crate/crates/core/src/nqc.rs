//! Interval counts, nqc-relations, chain bounds and step sizes.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{KacError, Result};
use crate::weights::{AtypicalPair, Weight};

/// Relation between two atypical indices `s ≤ t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// Normally related.
    N,
    /// Quasi-critically related.
    Q,
    /// Critically related.
    C,
}

impl Relation {
    /// Classifies an interval count against the index distance.
    pub fn classify(ell: usize, dist: usize) -> Self {
        use std::cmp::Ordering::*;
        match ell.cmp(&dist) {
            Greater => Relation::N,
            Equal => Relation::Q,
            Less => Relation::C,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Relation::N => 'n',
            Relation::Q => 'q',
            Relation::C => 'c',
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.symbol().encode_utf8(&mut [0; 4]))
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_char(self.symbol())
    }
}

/// A sorted set of integers with gap queries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntSet(Vec<i64>);

impl IntSet {
    pub fn new<I: IntoIterator<Item = i64>>(it: I) -> Self {
        let mut v: Vec<i64> = it.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn insert(&mut self, x: i64) {
        if let Err(i) = self.0.binary_search(&x) {
            self.0.insert(i, x);
        }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Number of integers in `[a, b]` outside the set; `0` when `a > b`.
    pub fn missing_in(&self, a: i64, b: i64) -> usize {
        if a > b {
            return 0;
        }
        let lo = self.0.partition_point(|&x| x < a);
        let hi = self.0.partition_point(|&x| x <= b);
        (b - a + 1) as usize - (hi - lo)
    }

    /// The `nu`-th integer above `v` outside the set (`nu ≥ 1`).
    pub fn nth_missing_above(&self, v: i64, nu: usize) -> i64 {
        let mut x = v;
        let mut left = nu;
        while left > 0 {
            x += 1;
            if !self.contains(x) {
                left -= 1;
            }
        }
        x
    }

    /// The `nu`-th integer below `v` outside the set (`nu ≥ 1`).
    pub fn nth_missing_below(&self, v: i64, nu: usize) -> i64 {
        let mut x = v;
        let mut left = nu;
        while left > 0 {
            x -= 1;
            if !self.contains(x) {
                left -= 1;
            }
        }
        x
    }
}

/// Relation data of a dominant weight, computed once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NqcTable {
    pub r: usize,
    /// `rel[s-1][t-s]` is `c_{s,t}`.
    pub rel: Vec<Vec<Relation>>,
    /// `ell[s-1][t-s]` is `ℓ_{s,t}`.
    pub ell: Vec<Vec<usize>>,
    pub p: Vec<usize>,
    pub plow: Vec<usize>,
    #[serde(skip)]
    values: Vec<i64>,
    #[serde(skip)]
    entries: IntSet,
}

impl NqcTable {
    pub fn new(w: &Weight) -> Result<Self> {
        if !w.is_dominant() {
            return Err(KacError::NotDominant);
        }
        let values = w.atypical_data().values();
        let entries = IntSet::new(w.even().iter().chain(w.odd()).copied());
        Ok(Self::from_parts(values, entries))
    }

    fn from_parts(values: Vec<i64>, entries: IntSet) -> Self {
        let r = values.len();
        let ell: Vec<Vec<usize>> =
            (0..r).map(|s| (s..r).map(|t| entries.missing_in(values[s], values[t])).collect()).collect();
        let rel: Vec<Vec<Relation>> =
            ell.iter().map(|row| row.iter().enumerate().map(|(d, &l)| Relation::classify(l, d)).collect()).collect();
        let p = (0..r)
            .map(|s| {
                let run = rel[s][1..].iter().take_while(|&&c| c == Relation::C).count();
                s + 1 + run
            })
            .collect();
        let plow = (0..r)
            .map(|s| {
                let run = (0..s).rev().take_while(|&q| rel[q][s - q] == Relation::C).count();
                s + 1 - run
            })
            .collect();
        Self { r, rel, ell, p, plow, values, entries }
    }

    fn check(&self, s: usize) -> Result<()> {
        if s == 0 || s > self.r {
            Err(KacError::IndexOutOfRange { index: s, max: self.r })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, s: usize, t: usize) -> Result<()> {
        self.check(s)?;
        self.check(t)?;
        if s > t {
            return Err(KacError::IndexOutOfRange { index: t, max: s });
        }
        Ok(())
    }

    /// Atypical values `λ_{m_1} < … < λ_{m_r}`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// The entry set `S(λ)`.
    pub fn entries(&self) -> &IntSet {
        &self.entries
    }

    pub fn ell(&self, s: usize, t: usize) -> Result<usize> {
        self.check_pair(s, t)?;
        Ok(self.ell[s - 1][t - s])
    }

    pub fn relation(&self, s: usize, t: usize) -> Result<Relation> {
        self.check_pair(s, t)?;
        Ok(self.rel[s - 1][t - s])
    }

    /// Unchecked relation lookup for hot loops; indices are 1-based with `s ≤ t`.
    #[inline]
    pub(crate) fn c(&self, s: usize, t: usize) -> Relation {
        self.rel[s - 1][t - s]
    }

    pub fn p_upper(&self, s: usize) -> Result<usize> {
        self.check(s)?;
        Ok(self.p[s - 1])
    }

    pub fn p_lower(&self, s: usize) -> Result<usize> {
        self.check(s)?;
        Ok(self.plow[s - 1])
    }

    /// `k̂^(ν)_s`: distance to the `ν`-th missing integer above `λ_{m_s}`.
    pub fn k_hat(&self, s: usize, nu: usize) -> Result<i64> {
        self.check(s)?;
        let v = self.values[s - 1];
        Ok(self.entries.nth_missing_above(v, nu) - v)
    }

    /// `k̲^(ν)_s`: distance to the `ν`-th missing integer below `λ_{m_s}`.
    pub fn k_low(&self, s: usize, nu: usize) -> Result<i64> {
        self.check(s)?;
        let v = self.values[s - 1];
        Ok(v - self.entries.nth_missing_below(v, nu))
    }

    /// `k_s = k̂^(p_s+1-s)_s`.
    pub fn k_step(&self, s: usize) -> Result<i64> {
        self.k_hat(s, self.p_upper(s)? + 1 - s)
    }

    pub fn k_steps(&self) -> Vec<i64> {
        (1..=self.r).map(|s| self.k_step(s).expect("index in range")).collect()
    }

    /// Relation table of the window `a..=b`, re-indexed from 1.
    pub fn window(&self, a: usize, b: usize) -> Window<'_> {
        debug_assert!(1 <= a && a <= b + 1 && b <= self.r);
        Window { table: self, start: a, len: b + 1 - a }
    }
}

/// A contiguous index window `[start, start+len)` of a table, re-indexed from 1.
#[derive(Debug, Clone, Copy)]
pub struct Window<'a> {
    table: &'a NqcTable,
    start: usize,
    len: usize,
}

impl<'a> Window<'a> {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Local relation `c_{s,t}`, `1 ≤ s ≤ t ≤ len`.
    #[inline]
    pub fn c(&self, s: usize, t: usize) -> Relation {
        self.table.c(self.start + s - 1, self.start + t - 1)
    }

    /// Sub-window with local bounds `a..=b`.
    pub fn sub(&self, a: usize, b: usize) -> Window<'a> {
        Window { table: self.table, start: self.start + a - 1, len: (b + 1).saturating_sub(a) }
    }
}

/// Step sizes by the growing-set procedure for any regular weight and a
/// list of atypical pairs: pairs are handled in decreasing order of their
/// current value; each takes the first free integer above it.
pub fn k_step_sequential(w: &Weight, pairs: &[AtypicalPair]) -> Result<Vec<i64>> {
    if !w.is_regular() {
        return Err(KacError::NonRegular);
    }
    let mut set = IntSet::new(w.even().iter().chain(w.odd()).copied());
    let mut current: Vec<(i64, usize)> = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let v = w.at(p.even)?;
            if w.at(p.odd)? != v {
                return Err(KacError::NotAtypicalPair { even: p.even, odd: p.odd });
            }
            Ok((v, i))
        })
        .collect::<Result<_>>()?;
    current.sort_unstable_by(|a, b| b.cmp(a));
    let mut k = vec![0; pairs.len()];
    for (v, i) in current {
        let target = set.nth_missing_above(v, 1);
        k[i] = target - v;
        set.insert(target);
    }
    Ok(k)
}
