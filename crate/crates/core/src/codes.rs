//! Permissible codes and their correspondence with `Θ^λ`.
//!
//! A code has one column per atypical index. A column is either the zero
//! column `[0]` or a strictly increasing list of labels from `1..=r`; its
//! first entry is the top label.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{KacError, Result};
use crate::nqc::{NqcTable, Relation};
use crate::theta::{self, Theta};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    pub columns: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIIPrime,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::I => "i",
            Rule::II => "ii",
            Rule::III => "iii",
            Rule::IV => "iv",
            Rule::V => "v",
            Rule::VI => "vi",
            Rule::VII => "vii",
            Rule::VIIPrime => "vii'",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleViolation {
    pub rule: Rule,
    pub columns: Vec<usize>,
    pub labels: Vec<usize>,
    pub message: String,
}

impl Code {
    pub fn zero(r: usize) -> Self {
        Self { columns: vec![vec![0]; r] }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Column `s`, 1-based.
    pub fn column(&self, s: usize) -> &[usize] {
        &self.columns[s - 1]
    }

    pub fn top(&self, s: usize) -> usize {
        self.columns[s - 1][0]
    }

    pub fn contains(&self, s: usize, label: usize) -> bool {
        label != 0 && self.columns[s - 1].contains(&label)
    }

    /// Checks column shapes against degree `r`.
    pub fn check_shape(&self, r: usize) -> Result<()> {
        if self.len() != r {
            return Err(KacError::MalformedCode(format!("{} columns for degree {r}", self.len())));
        }
        for (i, col) in self.columns.iter().enumerate() {
            let s = i + 1;
            match col.as_slice() {
                [] => return Err(KacError::MalformedCode(format!("column {s} is empty"))),
                [0] => {}
                _ if col.contains(&0) => {
                    return Err(KacError::MalformedCode(format!("column {s} mixes 0 with labels")))
                }
                _ if col.iter().any(|&x| x > r) => {
                    return Err(KacError::MalformedCode(format!("column {s} has a label above {r}")))
                }
                _ if col.windows(2).any(|w| w[0] >= w[1]) => {
                    return Err(KacError::MalformedCode(format!("column {s} is not increasing")))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> =
            self.columns.iter().map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")).collect();
        f.write_str(&cols.join(";"))
    }
}

impl FromStr for Code {
    type Err = KacError;

    /// Parses `1,3;3;3;0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Code { columns: Vec::new() });
        }
        let columns = s
            .split(';')
            .map(|col| {
                col.split(',')
                    .map(|x| x.trim().parse().map_err(|_| KacError::MalformedCode(format!("bad label {x:?}"))))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Code { columns })
    }
}

impl Serialize for Code {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.columns.serialize(s)
    }
}

fn violation(rule: Rule, columns: Vec<usize>, labels: Vec<usize>, message: String) -> RuleViolation {
    RuleViolation { rule, columns, labels, message }
}

/// All rule violations of `code`, grouped by rule in order.
pub fn validate_code(table: &NqcTable, code: &Code) -> Result<Vec<RuleViolation>> {
    let r = table.r;
    code.check_shape(r)?;
    let c = |s: usize, t: usize| table.relation(s, t).expect("indices in range");
    let top = |s: usize| code.top(s);
    let mut out = Vec::new();

    // (i)
    for s in 1..=r {
        let a = top(s);
        let ok = a == 0 || a == s || (a > s && (s + 1..=r).any(|t| c(s, t) == Relation::Q && top(t) == a));
        if !ok {
            out.push(violation(Rule::I, vec![s], vec![a], format!("top label {a} not allowed in column {s}")));
        }
    }
    // (ii)
    for t in 2..=r {
        let a = top(t);
        if a < t {
            continue;
        }
        for s in 1..t {
            if (s..t).all(|x| c(x, t) == Relation::C) && !code.column(s)[1..].contains(&a) {
                out.push(violation(
                    Rule::II,
                    vec![s, t],
                    vec![a],
                    format!("label {a} missing below the top of column {s}"),
                ));
            }
        }
    }
    // (iii)
    for (i, col) in code.columns.iter().enumerate() {
        for (j, &x) in col.iter().enumerate().filter(|&(_, &x)| x != 0) {
            for &y in &col[j + 1..] {
                if !(y > x && top(y) == y && c(x, y) == Relation::C) {
                    out.push(violation(Rule::III, vec![i + 1], vec![x, y], format!("label {y} may not sit below {x}")));
                }
            }
        }
    }
    // (iv)
    for x in 1..=r {
        let holders: Vec<usize> = (1..=r).filter(|&s| code.contains(s, x)).collect();
        let succ: BTreeSet<Option<usize>> = holders
            .iter()
            .map(|&s| {
                let col = code.column(s);
                let i = col.iter().position(|&y| y == x).expect("label present");
                col.get(i + 1).copied()
            })
            .collect();
        if succ.len() > 1 {
            out.push(violation(Rule::IV, holders, vec![x], format!("label {x} has differing successors")));
        }
    }
    // (v)
    for s in 1..=r {
        for t in s + 1..=r {
            if c(s, t) != Relation::Q {
                continue;
            }
            for u in t + 1..=r {
                if c(t, u) == Relation::Q && top(s) != 0 && top(s) == top(u) && top(t) == 0 {
                    out.push(violation(
                        Rule::V,
                        vec![s, t, u],
                        vec![top(s)],
                        format!("column {t} is zero between equal tops of {s} and {u}"),
                    ));
                }
            }
        }
    }
    // (vi)
    for s in 1..=r {
        for t in s + 1..=r {
            for u in t + 1..=r {
                for v in u + 1..=r {
                    let (a, b) = (top(s), top(t));
                    if a == 0 || b == 0 || top(u) != a || top(v) != b {
                        continue;
                    }
                    let (need, cols) = if a < b { (b, [s, u]) } else { (a, [t, v]) };
                    if a != b && !cols.iter().all(|&x| code.contains(x, need)) {
                        out.push(violation(
                            Rule::VI,
                            vec![s, t, u, v],
                            vec![a, b],
                            format!("columns {} and {} must contain {need}", cols[0], cols[1]),
                        ));
                    }
                }
            }
        }
    }
    // (vii) and (vii')
    for s in 1..=r {
        let col = code.column(s);
        if col.len() < 2 {
            continue;
        }
        let next: &[usize] = if s < r { code.column(s + 1) } else { &[] };
        let last = *col.last().expect("non-empty");
        if !next.contains(&last) {
            out.push(violation(
                Rule::VII,
                vec![s, s + 1],
                vec![last],
                format!("label {last} missing from column {}", s + 1),
            ));
        }
        let missing: Vec<usize> = col[1..].iter().copied().filter(|x| !next.contains(x)).collect();
        if !missing.is_empty() {
            out.push(violation(
                Rule::VIIPrime,
                vec![s, s + 1],
                missing,
                format!("non-top labels of column {s} missing from column {}", s + 1),
            ));
        }
    }
    Ok(out)
}

/// The strengthened interleaving rule, which valid codes satisfy
/// automatically. Returns `true` when it holds.
pub fn interleaving_holds(code: &Code) -> bool {
    let r = code.len();
    let labels = |s: usize| code.column(s).iter().copied().filter(|&x| x != 0).collect::<Vec<_>>();
    for s in 1..=r {
        for t in s + 1..=r {
            for u in t + 1..=r {
                for v in u + 1..=r {
                    for &a in &labels(s) {
                        for &b in &labels(t) {
                            if a == b || !code.contains(u, a) || !code.contains(v, b) {
                                continue;
                            }
                            let ok = if a < b {
                                code.contains(s, b) && code.contains(u, b)
                            } else {
                                code.contains(t, a) && code.contains(v, a)
                            };
                            if !ok {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Candidate columns for position `s`: the zero column, and every top
/// allowed by (i) followed by a pairwise critical chain allowed by (iii).
fn candidate_columns(table: &NqcTable, s: usize) -> Vec<Vec<usize>> {
    let r = table.r;
    let mut out = vec![vec![0]];
    let tops = std::iter::once(s).chain((s + 1..=r).filter(|&a| table.c(s, a) == Relation::Q));
    for a in tops {
        let below: Vec<usize> = (a + 1..=r).filter(|&y| table.c(a, y) == Relation::C).collect();
        let mut chain = vec![a];
        extend_chains(table, &below, 0, &mut chain, &mut out);
    }
    out
}

fn extend_chains(table: &NqcTable, pool: &[usize], from: usize, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(chain.clone());
    for i in from..pool.len() {
        let y = pool[i];
        if chain[1..].iter().all(|&x| table.c(x, y) == Relation::C) {
            chain.push(y);
            extend_chains(table, pool, i + 1, chain, out);
            chain.pop();
        }
    }
}

/// Every permissible code, in lexicographic order of columns.
pub fn enumerate_codes(table: &NqcTable) -> Vec<Code> {
    let r = table.r;
    let cands: Vec<Vec<Vec<usize>>> = (1..=r).map(|s| candidate_columns(table, s)).collect();
    let mut out = Vec::new();
    let mut cols: Vec<Vec<usize>> = Vec::with_capacity(r);
    fn go(table: &NqcTable, cands: &[Vec<Vec<usize>>], cols: &mut Vec<Vec<usize>>, out: &mut Vec<Code>) {
        let s = cols.len();
        if s == cands.len() {
            let code = Code { columns: cols.clone() };
            if validate_code(table, &code).map(|v| v.is_empty()).unwrap_or(false) {
                out.push(code);
            }
            return;
        }
        for col in &cands[s] {
            if let Some(prev) = cols.last() {
                if prev.len() >= 2 && !prev[1..].iter().all(|x| col.contains(x)) {
                    continue;
                }
            }
            cols.push(col.clone());
            go(table, cands, cols, out);
            cols.pop();
        }
    }
    go(table, &cands, &mut cols, &mut out);
    out.sort();
    out
}

/// `θ_s = s + 1 - (first column containing s)`, or `0` when `s` is absent.
pub fn code_to_theta(table: &NqcTable, code: &Code) -> Result<Theta> {
    let v = validate_code(table, code)?;
    if let Some(first) = v.first() {
        return Err(KacError::InvalidCode(format!("rule ({}): {}", first.rule, first.message)));
    }
    let r = table.r;
    Ok(Theta((1..=r).map(|s| (1..=r).find(|&p| code.contains(p, s)).map_or(0, |a| s + 1 - a)).collect()))
}

/// Builds the code of `θ ∈ Θ^λ`, placing labels in increasing order.
pub fn theta_to_code(table: &NqcTable, theta: &Theta) -> Result<Code> {
    if !theta::is_member(table, theta) {
        return Err(KacError::ThetaNotInThetaLambda(theta.to_string()));
    }
    let r = table.r;
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); r];
    for s in 1..=r {
        let Some(a) = theta.first_column(s) else { continue };
        cols[s - 1].insert(s);
        cols[a - 1].insert(s);
        for p in a + 1..s {
            let include = match table.c(p, s) {
                Relation::C => true,
                Relation::Q => !cols[p - 1].range(p..s).any(|_| true),
                Relation::N => false,
            };
            if include {
                cols[p - 1].insert(s);
            }
        }
    }
    Ok(Code {
        columns: cols.into_iter().map(|c| if c.is_empty() { vec![0] } else { c.into_iter().collect() }).collect(),
    })
}
