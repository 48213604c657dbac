//! The index set `Θ^λ`: membership, direct and recursive enumeration, counting.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{KacError, Result};
use crate::nqc::{NqcTable, Relation, Window};

/// A tuple `θ` with `θ_s ≤ s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Theta(pub Vec<usize>);

impl Theta {
    pub fn zeros(r: usize) -> Self {
        Self(vec![0; r])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `θ_s`, 1-based.
    pub fn get(&self, s: usize) -> usize {
        self.0[s - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Checks membership in the ambient set `Θ_r`.
    pub fn check_bounds(&self) -> Result<()> {
        match self.0.iter().zip(1..).find(|&(&v, s)| v > s) {
            Some((&value, s)) => Err(KacError::ThetaOutOfRange { s, value }),
            None => Ok(()),
        }
    }

    /// `a_s = s + 1 - θ_s`, defined when `θ_s ≠ 0`.
    pub fn first_column(&self, s: usize) -> Option<usize> {
        let v = self.get(s);
        (v != 0).then(|| s + 1 - v)
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn parse_digits(s: &str) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| KacError::Parse(format!("bad tuple entry {x:?}")))).collect()
}

impl FromStr for Theta {
    type Err = KacError;

    fn from_str(s: &str) -> Result<Self> {
        parse_digits(s).map(Theta)
    }
}

/// A 0/1 tuple selecting atypical pairs to raise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaPrime(pub Vec<bool>);

impl ThetaPrime {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// All of `{0,1}^r` in lexicographic order.
    pub fn all(r: usize) -> impl Iterator<Item = ThetaPrime> {
        (0u64..1 << r).map(move |bits| ThetaPrime((0..r).map(|i| bits >> (r - 1 - i) & 1 == 1).collect()))
    }
}

impl fmt::Display for ThetaPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for ThetaPrime {
    type Err = KacError;

    fn from_str(s: &str) -> Result<Self> {
        parse_digits(s)?
            .into_iter()
            .map(|d| match d {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(KacError::Parse(format!("expected 0 or 1, got {d}"))),
            })
            .collect::<Result<_>>()
            .map(ThetaPrime)
    }
}

impl Serialize for ThetaPrime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&b| u8::from(b)))
    }
}

/// Membership conditions, in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    /// `c_{a_s-1,s} ≠ c` (skipped when `a_s = 1`).
    C1a,
    /// `c_{a_s,s} ≠ n`.
    C1b,
    /// `θ_p ≤ θ_s - s + p`, with equality forcing `c_{p,s} = c`.
    C2,
    /// `θ_p ≠ 0`, or a later q-related index reaching back to `p`.
    C3,
    /// `θ_{a_s} = 0` when `a_s < s` and `c_{a_s,s} = q`.
    C4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub s: usize,
    pub p: Option<usize>,
    pub detail: String,
}

/// Violations of the conditions attached to index `s` (local to `w`).
fn violations_at(w: &Window<'_>, th: &[usize], s: usize, out: &mut Vec<Violation>) {
    let ts = th[s - 1];
    if ts == 0 {
        return;
    }
    let a = s + 1 - ts;
    let mut push = |condition, p, detail: String| out.push(Violation { condition, s, p, detail });
    if a >= 2 && w.c(a - 1, s) == Relation::C {
        push(Condition::C1a, Some(a - 1), format!("c_{{{},{s}}} = c", a - 1));
    }
    if w.c(a, s) == Relation::N {
        push(Condition::C1b, Some(a), format!("c_{{{a},{s}}} = n"));
    }
    for p in a..s {
        let tp = th[p - 1];
        let rel = w.c(p, s);
        if tp + s > ts + p {
            push(Condition::C2, Some(p), format!("θ_{p} = {tp} exceeds θ_{s} - {s} + {p}"));
        } else if tp + s == ts + p && rel != Relation::C {
            push(Condition::C2, Some(p), format!("θ_{p} attains its bound but c_{{{p},{s}}} = {rel}"));
        }
        if rel != Relation::N && tp == 0 {
            let rescued = (p + 1..=s).any(|q| w.c(p, q) == Relation::Q && th[q - 1] + p > q);
            if !rescued {
                push(Condition::C3, Some(p), format!("θ_{p} = 0 with no q-related index reaching {p}"));
            }
        }
        if p == a && rel == Relation::Q && tp != 0 {
            push(Condition::C4, Some(p), format!("c_{{{p},{s}}} = q requires θ_{p} = 0"));
        }
    }
}

fn window_valid_at(w: &Window<'_>, th: &[usize], s: usize) -> bool {
    let mut v = Vec::new();
    violations_at(w, th, s, &mut v);
    v.is_empty()
}

/// All violated conditions of `θ`; empty means `θ ∈ Θ^λ`.
pub fn theta_valid(table: &NqcTable, theta: &Theta) -> Result<Vec<Violation>> {
    if theta.len() != table.r {
        return Err(KacError::DegreeMismatch { expected: table.r, found: theta.len() });
    }
    theta.check_bounds()?;
    let w = table.window(1, table.r);
    let mut out = Vec::new();
    for s in 1..=table.r {
        violations_at(&w, &theta.0, s, &mut out);
    }
    Ok(out)
}

pub fn is_member(table: &NqcTable, theta: &Theta) -> bool {
    theta_valid(table, theta).map(|v| v.is_empty()).unwrap_or(false)
}

/// The ambient set `Θ_r` in lexicographic order.
pub fn ambient(r: usize) -> impl Iterator<Item = Theta> {
    let mut next = Some(vec![0usize; r]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if succ[i] < i + 1 {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Theta(cur))
    })
}

/// Filters `Θ_r` through the membership test.
pub fn enumerate_direct(table: &NqcTable) -> Vec<Theta> {
    ambient(table.r).filter(|t| is_member(table, t)).collect()
}

/// Largest degree for which [`enumerate`] filters `Θ_r` directly.
pub const DIRECT_LIMIT: usize = 7;

/// `Θ^λ`, lexicographically sorted, by the cheaper enumerator for the degree.
pub fn enumerate(table: &NqcTable) -> Vec<Theta> {
    if table.r <= DIRECT_LIMIT {
        enumerate_direct(table)
    } else {
        enumerate_recursive(table).expect("recursive enumeration is consistent")
    }
}

type Set = Rc<Vec<Vec<usize>>>;

/// Recursive decomposition over windows of one table. Window `(start, len)`
/// plays the role of the restricted weight on those indices.
struct Recursion<'a> {
    table: &'a NqcTable,
    all: HashMap<(usize, usize), Set>,
    top: HashMap<(usize, usize), Set>,
}

impl<'a> Recursion<'a> {
    fn new(table: &'a NqcTable) -> Self {
        Self { table, all: HashMap::new(), top: HashMap::new() }
    }

    fn window(&self, start: usize, len: usize) -> Window<'a> {
        self.table.window(start, start + len - 1)
    }

    /// Indices `s ∈ [1, r+1]` opening a part of the decomposition.
    fn openers(w: &Window<'_>) -> Vec<usize> {
        let r = w.len();
        (1..=r + 1)
            .filter(|&s| (s < 2 || w.c(s - 1, r) != Relation::C) && (s > r || w.c(s, r) != Relation::N))
            .collect()
    }

    /// Whether every index `q` of `θ` in `lo..=hi` with `a_q = lo` passes its
    /// conditions on the full window.
    fn boundary_ok(w: &Window<'_>, th: &[usize], lo: usize, hi: usize) -> bool {
        (lo..=hi).all(|q| th[q - 1] == 0 || q + 1 - th[q - 1] != lo || window_valid_at(w, th, q))
    }

    /// Elements of the window's index set with `θ_r = r`.
    fn top(&mut self, start: usize, len: usize) -> Set {
        if let Some(s) = self.top.get(&(start, len)) {
            return s.clone();
        }
        let w = self.window(start, len);
        let r = len;
        let mut out = Vec::new();
        if r == 1 {
            out.push(vec![1]);
        } else {
            match w.c(1, r) {
                Relation::Q => {
                    for z in self.all(start + 1, r - 2).iter() {
                        let mut th = Vec::with_capacity(r);
                        th.push(0);
                        th.extend_from_slice(z);
                        th.push(r);
                        if Self::boundary_ok(&w, &th, 2, r - 1) && window_valid_at(&w, &th, r) {
                            out.push(th);
                        }
                    }
                }
                Relation::C => {
                    for z in self.all(start, r - 1).iter() {
                        let mut th = z.clone();
                        th.push(r);
                        if window_valid_at(&w, &th, r) {
                            out.push(th);
                        }
                    }
                }
                Relation::N => {}
            }
        }
        let out = Rc::new(out);
        self.top.insert((start, len), out.clone());
        out
    }

    /// The full index set of the window.
    fn all(&mut self, start: usize, len: usize) -> Set {
        if len == 0 {
            return Rc::new(vec![Vec::new()]);
        }
        if let Some(s) = self.all.get(&(start, len)) {
            return s.clone();
        }
        let w = self.window(start, len);
        let r = len;
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in Self::openers(&w) {
            let before = out.len();
            if s == r + 1 {
                for x in self.all(start, r - 1).iter() {
                    let mut th = x.clone();
                    th.push(0);
                    out.push(th);
                }
            } else if s == 1 {
                out.extend(self.top(start, r).iter().cloned());
            } else {
                let prefix = self.all(start, s - 1);
                let tops = self.top(start + s - 1, r + 1 - s);
                for x in prefix.iter() {
                    for y in tops.iter() {
                        let mut th = x.clone();
                        th.extend_from_slice(y);
                        if Self::boundary_ok(&w, &th, s, r) && window_valid_at(&w, &th, r) {
                            out.push(th);
                        }
                    }
                }
            }
            let expect_last = (r + 1 - s) % (r + 1);
            assert!(out[before..].iter().all(|th| th[r - 1] == expect_last), "decomposition parts overlap");
        }
        out.sort();
        let out = Rc::new(out);
        self.all.insert((start, len), out.clone());
        out
    }
}

/// `Θ^λ` by recursive decomposition into restricted windows, sorted.
pub fn enumerate_recursive(table: &NqcTable) -> Result<Vec<Theta>> {
    let mut rec = Recursion::new(table);
    let set = rec.all(1, table.r);
    let mut out: Vec<Theta> = set.iter().cloned().map(Theta).collect();
    out.sort();
    if out.windows(2).any(|p| p[0] == p[1]) {
        return Err(KacError::Invariant("recursive decomposition produced duplicates".into()));
    }
    Ok(out)
}

/// `|Θ^λ|` by the same decomposition, multiplying part sizes instead of
/// forming products.
pub fn count_theta(table: &NqcTable) -> u64 {
    fn count(rec: &mut Recursion<'_>, memo: &mut HashMap<(usize, usize), u64>, start: usize, len: usize) -> u64 {
        if len == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(&(start, len)) {
            return c;
        }
        let w = rec.window(start, len);
        let r = len;
        let mut total = 0;
        for s in Recursion::openers(&w) {
            total += if s == r + 1 {
                count(rec, memo, start, r - 1)
            } else if s == 1 {
                rec.top(start, r).len() as u64
            } else {
                count(rec, memo, start, s - 1) * rec.top(start + s - 1, r + 1 - s).len() as u64
            };
        }
        memo.insert((start, len), total);
        total
    }
    let mut rec = Recursion::new(table);
    count(&mut rec, &mut HashMap::new(), 1, table.r)
}

/// The subtuple of `θ` on the 1-based indices in `indices`, in order.
pub fn theta_restrict(theta: &Theta, indices: &[usize]) -> Result<Vec<usize>> {
    indices
        .iter()
        .map(|&s| {
            (1..=theta.len())
                .contains(&s)
                .then(|| theta.get(s))
                .ok_or(KacError::IndexOutOfRange { index: s, max: theta.len() })
        })
        .collect()
}
