//! Raising and lowering operators on atypical pairs.

use serde::Serialize;

use crate::error::{KacError, Result};
use crate::nqc::{k_step_sequential, IntSet, NqcTable};
use crate::theta::{Theta, ThetaPrime};
use crate::weights::{AtypicalPair, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Raise,
    Lower,
}

/// Record of a composite lowering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoweringTrace {
    pub theta: Theta,
    /// `λ^(0) = λ, …, λ^(r)`, unsorted.
    pub intermediates: Vec<Weight>,
    /// Effective drop at each stage, `0` where `θ_s = 0`.
    pub kk: Vec<i64>,
    pub result: Weight,
}

fn entry_set(w: &Weight) -> IntSet {
    IntSet::new(w.even().iter().chain(w.odd()).copied())
}

fn checked_pair(w: &Weight, pair: AtypicalPair) -> Result<i64> {
    let v = w.at(pair.even)?;
    if pair.even > w.m() || pair.odd <= w.m() || w.at(pair.odd)? != v {
        return Err(KacError::NotAtypicalPair { even: pair.even, odd: pair.odd });
    }
    Ok(v)
}

/// Lowers the pair at fixed positions by `k̲^(ν)` computed on `w` itself.
/// Returns the new weight and the drop.
pub fn lower_power_at(w: &Weight, pair: AtypicalPair, nu: usize) -> Result<(Weight, i64)> {
    if !w.is_regular() {
        return Err(KacError::NonRegular);
    }
    let v = checked_pair(w, pair)?;
    if nu == 0 {
        return Ok((w.clone(), 0));
    }
    let k = v - entry_set(w).nth_missing_below(v, nu);
    let mut out = w.clone();
    out.bump(pair, -k);
    Ok((out, k))
}

/// `L_{m_s,n_s}`, with `s` ranking the atypical pairs of `w` by value.
pub fn lower_once(w: &Weight, s: usize) -> Result<Weight> {
    lower_power(w, s, 1)
}

/// `L^ν_{m_s,n_s}`.
pub fn lower_power(w: &Weight, s: usize, nu: usize) -> Result<Weight> {
    let pair = w.atypical_data().pair(s)?;
    lower_power_at(w, pair, nu).map(|(x, _)| x)
}

/// Raises pair `s` of `pairs` by its sequential step size on `w`.
pub fn raise_at(w: &Weight, pairs: &[AtypicalPair], s: usize) -> Result<Weight> {
    let ks = k_step_sequential(w, pairs)?;
    let i = s.checked_sub(1).filter(|&i| i < pairs.len());
    let i = i.ok_or(KacError::IndexOutOfRange { index: s, max: pairs.len() })?;
    let mut out = w.clone();
    out.bump(pairs[i], ks[i]);
    Ok(out)
}

/// `R_{m_s,n_s}`, with `s` ranking the atypical pairs of `w` by value.
pub fn raise_once(w: &Weight, s: usize) -> Result<Weight> {
    raise_at(w, &w.atypical_data().pairs, s)
}

/// `R_{θ'}(μ)`: every step size is read off `μ`, all selected pairs are
/// raised at once, then the result is sorted.
pub fn raise_theta(mu: &Weight, theta_prime: &ThetaPrime) -> Result<Weight> {
    let table = NqcTable::new(mu)?;
    raise_with_steps(mu, &table.k_steps(), theta_prime)
}

/// Closed-form raising with precomputed step sizes of `mu`.
pub(crate) fn raise_with_steps(mu: &Weight, ks: &[i64], theta_prime: &ThetaPrime) -> Result<Weight> {
    let pairs = mu.atypical_data().pairs;
    if theta_prime.len() != pairs.len() {
        return Err(KacError::DegreeMismatch { expected: pairs.len(), found: theta_prime.len() });
    }
    let mut out = mu.clone();
    for ((pair, &k), on) in pairs.iter().zip(ks).zip(theta_prime.iter()) {
        if on {
            out.bump(*pair, k);
        }
    }
    out.dominant_conjugate()
}

/// `L'_θ(λ)`: stage `s` lowers the original pair `s` on the raw previous
/// stage; sorting happens once at the end.
pub fn lower_theta(lambda: &Weight, theta: &Theta) -> Result<LoweringTrace> {
    if !lambda.is_dominant() {
        return Err(KacError::NotDominant);
    }
    let pairs = lambda.atypical_data().pairs;
    if theta.len() != pairs.len() {
        return Err(KacError::DegreeMismatch { expected: pairs.len(), found: theta.len() });
    }
    theta.check_bounds()?;
    let mut intermediates = vec![lambda.clone()];
    let mut kk = Vec::with_capacity(pairs.len());
    for (pair, nu) in pairs.iter().zip(theta.iter()) {
        let (next, k) = lower_power_at(intermediates.last().expect("non-empty"), *pair, nu)?;
        if !next.is_regular() {
            return Err(KacError::Invariant(format!("stage {next} is not regular")));
        }
        kk.push(k);
        intermediates.push(next);
    }
    let result = intermediates.last().expect("non-empty").dominant_conjugate()?;
    Ok(LoweringTrace { theta: theta.clone(), intermediates, kk, result })
}
