//! Integral weights of gl(m|n) in shifted and partition notation.
//!
//! A weight is stored in shifted notation: an even tuple of length `m` and an
//! odd tuple of length `n`. Positions are 1-based over `1..=m+n`, the odd
//! entry `η` living at position `m + η`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KacError, Result};

/// Weight in shifted notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    even: Vec<i64>,
    odd: Vec<i64>,
}

/// Weight in partition notation `(λ¹ | λ²)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionWeight {
    pub even: Vec<i64>,
    pub odd: Vec<i64>,
}

/// One atypical pair: an even and an odd position holding the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AtypicalPair {
    /// Position `m_s` in `1..=m`.
    pub even: usize,
    /// Position `n_s` in `m+1..=m+n`.
    pub odd: usize,
    pub value: i64,
}

/// Atypical pairs ordered by increasing value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtypicalData {
    pub pairs: Vec<AtypicalPair>,
}

impl AtypicalData {
    /// Degree of atypicality `r`.
    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    pub fn m_positions(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.even).collect()
    }

    pub fn n_positions(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.odd).collect()
    }

    pub fn values(&self) -> Vec<i64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    /// Pair `s`, 1-based.
    pub fn pair(&self, s: usize) -> Result<AtypicalPair> {
        s.checked_sub(1)
            .and_then(|i| self.pairs.get(i).copied())
            .ok_or(KacError::IndexOutOfRange { index: s, max: self.degree() })
    }
}

/// The sets `S`, `T` and `T̄` of entry values, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySets {
    pub all: Vec<i64>,
    pub atypical: Vec<i64>,
    pub typical: Vec<i64>,
}

impl Weight {
    pub fn new(even: Vec<i64>, odd: Vec<i64>) -> Result<Self> {
        if even.is_empty() || odd.is_empty() {
            return Err(KacError::Parse("both sides of a weight must be non-empty".into()));
        }
        Ok(Self { even, odd })
    }

    pub fn m(&self) -> usize {
        self.even.len()
    }

    pub fn n(&self) -> usize {
        self.odd.len()
    }

    pub fn even(&self) -> &[i64] {
        &self.even
    }

    pub fn odd(&self) -> &[i64] {
        &self.odd
    }

    /// Entry at a 1-based position in `1..=m+n`.
    pub fn at(&self, pos: usize) -> Result<i64> {
        let m = self.m();
        match pos {
            0 => Err(KacError::IndexOutOfRange { index: pos, max: m + self.n() }),
            p if p <= m => Ok(self.even[p - 1]),
            p if p <= m + self.n() => Ok(self.odd[p - m - 1]),
            _ => Err(KacError::IndexOutOfRange { index: pos, max: m + self.n() }),
        }
    }

    /// Adds `delta` to the entries at an even and an odd position.
    pub(crate) fn bump(&mut self, pair: AtypicalPair, delta: i64) {
        let m = self.m();
        self.even[pair.even - 1] += delta;
        self.odd[pair.odd - m - 1] += delta;
    }

    pub fn from_partition(p: &PartitionWeight) -> Result<Self> {
        let m = p.even.len() as i64;
        let even = p.even.iter().zip(1..).map(|(&x, i)| x + (m + 1 - i)).collect();
        let odd = p.odd.iter().zip(1..).map(|(&x, eta)| eta - x).collect();
        Self::new(even, odd)
    }

    pub fn to_partition(&self) -> PartitionWeight {
        let m = self.m() as i64;
        PartitionWeight {
            even: self.even.iter().zip(1..).map(|(&x, i)| x - (m + 1 - i)).collect(),
            odd: self.odd.iter().zip(1..).map(|(&x, eta)| eta - x).collect(),
        }
    }

    /// Even side strictly decreasing, odd side strictly increasing.
    pub fn is_dominant(&self) -> bool {
        self.even.windows(2).all(|w| w[0] > w[1]) && self.odd.windows(2).all(|w| w[0] < w[1])
    }

    /// No repeated entry within either side.
    pub fn is_regular(&self) -> bool {
        fn distinct(v: &[i64]) -> bool {
            let mut s = v.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        }
        distinct(&self.even) && distinct(&self.odd)
    }

    /// The unique dominant weight in the Weyl orbit of a regular weight.
    pub fn dominant_conjugate(&self) -> Result<Self> {
        if !self.is_regular() {
            return Err(KacError::NonRegular);
        }
        let mut even = self.even.clone();
        let mut odd = self.odd.clone();
        even.sort_unstable_by(|a, b| b.cmp(a));
        odd.sort_unstable();
        Ok(Self { even, odd })
    }

    /// All pairs of equal even/odd entries, ordered by value then position.
    pub fn atypical_data(&self) -> AtypicalData {
        let m = self.m();
        let mut pairs: Vec<AtypicalPair> = self
            .even
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| {
                self.odd.iter().enumerate().filter(move |&(_, &y)| y == x).map(move |(eta, _)| AtypicalPair {
                    even: i + 1,
                    odd: m + eta + 1,
                    value: x,
                })
            })
            .collect();
        pairs.sort_by_key(|p| (p.value, p.even, p.odd));
        AtypicalData { pairs }
    }

    pub fn degree(&self) -> usize {
        self.atypical_data().degree()
    }

    /// `m × n` boolean matrix, `true` where the entries agree.
    pub fn atypicality_matrix(&self) -> Vec<Vec<bool>> {
        self.even.iter().map(|x| self.odd.iter().map(|y| x == y).collect()).collect()
    }

    pub fn entry_sets(&self) -> EntrySets {
        let mut all: Vec<i64> = self.even.iter().chain(&self.odd).copied().collect();
        all.sort_unstable();
        all.dedup();
        let mut atypical = self.atypical_data().values();
        atypical.dedup();
        let typical = all.iter().copied().filter(|v| atypical.binary_search(v).is_err()).collect();
        EntrySets { all, atypical, typical }
    }

    /// Adds `c` to every entry.
    pub fn shift(&self, c: i64) -> Self {
        Self { even: self.even.iter().map(|x| x + c).collect(), odd: self.odd.iter().map(|x| x + c).collect() }
    }

    /// Restriction `λ^{(s,t)}`: the entries strictly between the atypical
    /// pairs `s-1` and `t` (even side) and from pair `s-1` up to pair `t`
    /// (odd side). Pair 0 stands for the virtual positions `m+1` and `m`.
    pub fn restrict(&self, s: usize, t: usize) -> Result<Self> {
        if !self.is_dominant() {
            return Err(KacError::NotDominant);
        }
        let at = self.atypical_data();
        let r = at.degree();
        if s == 0 || s > t {
            return Err(KacError::IndexOutOfRange { index: s, max: t });
        }
        if t > r {
            return Err(KacError::IndexOutOfRange { index: t, max: r });
        }
        let m = self.m();
        let (m_prev, n_prev) = if s == 1 {
            (m + 1, m)
        } else {
            let p = at.pair(s - 1)?;
            (p.even, p.odd)
        };
        let last = at.pair(t)?;
        let even = self.even[last.even - 1..m_prev - 1].to_vec();
        let odd = self.odd[n_prev - m..last.odd - m].to_vec();
        Self::new(even, odd)
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            let x = x.trim();
            x.parse::<i64>().map_err(|_| KacError::Parse(format!("bad integer {x:?}")))
        })
        .collect()
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl FromStr for Weight {
    type Err = KacError;

    /// Parses `even|odd`; `||` is accepted as separator too.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace("||", "|");
        let (a, b) = s.split_once('|').ok_or_else(|| KacError::Parse(format!("expected 'even|odd', got {s:?}")))?;
        Self::new(parse_list(a)?, parse_list(b)?)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", join(&self.even), join(&self.odd))
    }
}

impl FromStr for PartitionWeight {
    type Err = KacError;

    /// Parses `λ¹/λ²`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) =
            s.trim().split_once('/').ok_or_else(|| KacError::Parse(format!("expected 'even/odd', got {s:?}")))?;
        let (even, odd) = (parse_list(a)?, parse_list(b)?);
        if even.is_empty() || odd.is_empty() {
            return Err(KacError::Parse("both sides of a weight must be non-empty".into()));
        }
        Ok(Self { even, odd })
    }
}

impl fmt::Display for PartitionWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", join(&self.even), join(&self.odd))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running() -> Weight {
        "15,11,10,7,6,4,3|3,5,7,8,10,15".parse().unwrap()
    }

    #[test]
    fn partition_round_trip_on_running_example() {
        let p: PartitionWeight = "8,5,5,3,3,2,2/-2,-3,-4,-4,-5,-9".parse().unwrap();
        let w = Weight::from_partition(&p).unwrap();
        assert_eq!(w, running());
        assert_eq!(w.to_partition(), p);
    }

    #[test]
    fn atypical_positions() {
        let at = running().atypical_data();
        assert_eq!(at.m_positions(), vec![7, 4, 3, 1]);
        assert_eq!(at.n_positions(), vec![8, 10, 12, 13]);
        assert_eq!(at.values(), vec![3, 7, 10, 15]);
    }

    #[test]
    fn entry_sets_of_running_example() {
        let e = running().entry_sets();
        assert_eq!(e.all, vec![3, 4, 5, 6, 7, 8, 10, 11, 15]);
        assert_eq!(e.typical, vec![4, 5, 6, 8, 11]);
    }

    #[test]
    fn smallest_atypical_weight() {
        let w: Weight = "1|1".parse().unwrap();
        let at = w.atypical_data();
        assert_eq!((at.m_positions(), at.n_positions()), (vec![1], vec![2]));
    }

    #[test]
    fn conjugate_sorts_each_side() {
        let w: Weight = "2,5,1|4,3".parse().unwrap();
        assert_eq!(w.dominant_conjugate().unwrap().to_string(), "5,2,1|3,4");
        let bad: Weight = "2,2|1".parse().unwrap();
        assert_eq!(bad.dominant_conjugate(), Err(KacError::NonRegular));
    }

    #[test]
    fn restrictions_of_running_example() {
        let w = running();
        assert_eq!(w.restrict(2, 3).unwrap().to_string(), "10,7,6,4|5,7,8,10");
        assert_eq!(w.restrict(3, 4).unwrap().to_string(), "15,11,10|8,10,15");
        assert_eq!(w.restrict(1, 4).unwrap(), w);
    }

    #[test]
    fn parse_errors() {
        assert!("1,2".parse::<Weight>().is_err());
        assert!("1,x|2".parse::<Weight>().is_err());
        assert!("|2".parse::<Weight>().is_err());
    }
}
