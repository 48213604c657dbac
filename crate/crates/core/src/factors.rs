//! Composition factors, the raising criterion and its brute-force oracle.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{KacError, Result};
use crate::nqc::NqcTable;
use crate::operators::{lower_theta, raise_with_steps};
use crate::theta::{self, Theta, ThetaPrime};
use crate::weights::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub theta: Theta,
    pub mu: Weight,
}

/// Primitive weights of `K(λ)`, each with multiplicity one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorSet {
    pub lambda: Weight,
    /// Sorted by the tuple of atypical values of `mu`.
    pub factors: Vec<Factor>,
}

impl FactorSet {
    pub fn weights(&self) -> BTreeSet<Weight> {
        self.factors.iter().map(|f| f.mu.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RaisingWitness {
    pub theta_prime: ThetaPrime,
    pub check: bool,
}

/// `{L'_θ(λ) : θ ∈ Θ^λ}`.
pub fn composition_factors(lambda: &Weight) -> Result<FactorSet> {
    let table = NqcTable::new(lambda)?;
    let mut factors = theta::enumerate(&table)
        .into_iter()
        .map(|theta| {
            let mu = lower_theta(lambda, &theta)?.result;
            Ok(Factor { theta, mu })
        })
        .collect::<Result<Vec<_>>>()?;
    factors.sort_by_cached_key(|f| f.mu.atypical_data().values());
    Ok(FactorSet { lambda: lambda.clone(), factors })
}

fn same_shape(a: &Weight, b: &Weight) -> Result<()> {
    if a.m() != b.m() || a.n() != b.n() {
        return Err(KacError::DimensionMismatch { m1: a.m(), n1: a.n(), m2: b.m(), n2: b.n() });
    }
    if !a.is_dominant() || !b.is_dominant() {
        return Err(KacError::NotDominant);
    }
    Ok(())
}

/// Searches `θ' ∈ {0,1}^r` with `R_{θ'}(μ) = λ`.
pub fn brundan_witness(lambda: &Weight, mu: &Weight) -> Result<Option<RaisingWitness>> {
    same_shape(lambda, mu)?;
    let table = NqcTable::new(mu)?;
    let ks = table.k_steps();
    for tp in ThetaPrime::all(table.r) {
        if raise_with_steps(mu, &ks, &tp)? == *lambda {
            return Ok(Some(RaisingWitness { theta_prime: tp, check: true }));
        }
    }
    Ok(None)
}

/// Composition multiplicity `[K(λ) : L(μ)] ∈ {0, 1}`.
pub fn multiplicity(lambda: &Weight, mu: &Weight) -> Result<u8> {
    brundan_witness(lambda, mu).map(|w| u8::from(w.is_some()))
}

/// Default oracle search margin `r·(m+n)`.
pub fn default_margin(lambda: &Weight) -> i64 {
    (lambda.degree() * (lambda.m() + lambda.n())) as i64
}

/// Every dominant `μ` with the typical entries of `λ` and `r` atypical
/// values in `[min S - margin, max S]`, kept when the raising criterion
/// holds. Independent of the index-set machinery.
pub fn primitive_set_oracle(lambda: &Weight, margin: i64) -> Result<BTreeSet<Weight>> {
    if !lambda.is_dominant() {
        return Err(KacError::NotDominant);
    }
    let sets = lambda.entry_sets();
    let r = sets.atypical.len();
    let is_typ = |v: &i64| sets.atypical.binary_search(v).is_err();
    let even_typ: Vec<i64> = lambda.even().iter().copied().filter(is_typ).collect();
    let odd_typ: Vec<i64> = lambda.odd().iter().copied().filter(is_typ).collect();
    let lo = sets.all.first().copied().unwrap_or(0) - margin;
    let hi = sets.all.last().copied().unwrap_or(0);
    let pool: Vec<i64> = (lo..=hi).filter(|v| sets.typical.binary_search(v).is_err()).collect();

    let mut out = BTreeSet::new();
    for chosen in Combinations::new(pool.len(), r) {
        let vals: Vec<i64> = chosen.iter().map(|&i| pool[i]).collect();
        let mut even: Vec<i64> = even_typ.iter().chain(&vals).copied().collect();
        let mut odd: Vec<i64> = odd_typ.iter().chain(&vals).copied().collect();
        even.sort_unstable_by(|a, b| b.cmp(a));
        odd.sort_unstable();
        let mu = Weight::new(even, odd)?;
        if brundan_witness(lambda, &mu)?.is_some() {
            out.insert(mu);
        }
    }
    Ok(out)
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.take()?;
        let k = cur.len();
        let mut nxt = cur.clone();
        if let Some(i) = (0..k).rev().find(|&i| nxt[i] < self.n - k + i) {
            nxt[i] += 1;
            for j in i + 1..k {
                nxt[j] = nxt[j - 1] + 1;
            }
            self.cur = Some(nxt);
        }
        Some(cur)
    }
}

/// Data behind the 0/1 tuple that raises a factor back to `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaPrimeData {
    /// `a_s = s + 1 - θ_s`, `None` where `θ_s = 0`.
    pub a: Vec<Option<usize>>,
    /// `N_s`, `-1` where `θ_s = 0`.
    pub n: Vec<i64>,
    /// `π_s`: indices whose first column is `s`.
    pub pi: Vec<usize>,
    pub theta_prime: ThetaPrime,
}

/// `N_{s,p}`: indices `p' ∈ [a_s, p-1]` with `θ_{p'} ≠ 0` and `a_{p'} = a_s`.
fn n_count(theta: &Theta, s: usize, p: usize) -> i64 {
    match theta.first_column(s) {
        None => -1,
        Some(a) => (a..p).filter(|&q| theta.first_column(q) == Some(a)).count() as i64,
    }
}

/// The raising tuple for the factor `L'_θ(λ)`.
///
/// `θ'_p = 1` exactly when the `p`-th atypical value of the factor comes from
/// a moved pair (`θ_s ≠ 0`). The first-column statistics are computed along
/// the way and checked against their counting identities.
pub fn theta_prime_for(lambda: &Weight, theta: &Theta) -> Result<ThetaPrimeData> {
    let table = NqcTable::new(lambda)?;
    if !theta::is_member(&table, theta) {
        return Err(KacError::ThetaNotInThetaLambda(theta.to_string()));
    }
    let r = table.r;
    let a: Vec<Option<usize>> = (1..=r).map(|s| theta.first_column(s)).collect();
    let n: Vec<i64> = (1..=r).map(|s| n_count(theta, s, s)).collect();
    let mut pi = vec![0; r];
    for &col in a.iter().flatten() {
        pi[col - 1] += 1;
    }

    for s in 1..=r {
        let Some(a_s) = a[s - 1] else { continue };
        let expected = (s - a_s) as i64 - table.ell(a_s, s)? as i64;
        if n[s - 1] != expected {
            return Err(KacError::Invariant(format!("N_{s} = {} but s - a_s - ell = {expected}", n[s - 1])));
        }
        // Strict below the last index sharing column a_s, equal after it.
        let last_shared = (a_s..s).rev().find(|&q| a[q - 1] == Some(a_s));
        for p in a_s..s {
            let nsp = n_count(theta, s, p);
            if nsp > n[s - 1] || (last_shared.is_some_and(|l| p <= l) && nsp == n[s - 1]) {
                return Err(KacError::Invariant(format!("N_{{{s},{p}}} = {nsp} against N_{s} = {}", n[s - 1])));
            }
            if matches!(a[p - 1], Some(a_p) if a_p < a_s || a_p > p) {
                return Err(KacError::Invariant(format!("a_{p} lies outside [a_{s}, {p}]")));
            }
        }
    }

    let trace = lower_theta(lambda, theta)?;
    let mut finals: Vec<(i64, bool)> =
        table.values().iter().zip(&trace.kk).zip(theta.iter()).map(|((&v, &k), t)| (v - k, t != 0)).collect();
    finals.sort_unstable();
    let theta_prime = ThetaPrime(finals.into_iter().map(|(_, moved)| moved).collect());

    let moved = theta.iter().filter(|&t| t != 0).count();
    if pi.iter().sum::<usize>() != moved || theta_prime.count_ones() != moved {
        return Err(KacError::Invariant("first-column counts disagree with the moved pairs".into()));
    }
    Ok(ThetaPrimeData { a, n, pi, theta_prime })
}
