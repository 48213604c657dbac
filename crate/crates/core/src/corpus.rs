//! Weight families and seeded random weights for tests and benchmarks.

use rand::seq::index::sample;
use rand::Rng;

use crate::nqc::Relation;
use crate::weights::Weight;

/// An `r`-fold atypical weight of gl(r|r) whose atypical values are pairwise
/// related by `rel`: spacing 1, 2 or 3 with no typical entries.
pub fn totally(rel: Relation, r: usize) -> Weight {
    let gap = match rel {
        Relation::C => 1,
        Relation::Q => 2,
        Relation::N => 3,
    };
    let odd: Vec<i64> = (0..r as i64).map(|i| 1 + gap * i).collect();
    let even = odd.iter().rev().copied().collect();
    Weight::new(even, odd).expect("r >= 1")
}

/// Bounds for [`random_dominant`].
#[derive(Debug, Clone, Copy)]
pub struct RandomSpec {
    pub max_m: usize,
    pub max_n: usize,
    pub lo: i64,
    pub hi: i64,
    pub max_r: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self { max_m: 6, max_n: 6, lo: -20, hi: 20, max_r: 4 }
    }
}

/// A dominant weight with `m ≤ max_m`, `n ≤ max_n`, entries in `[lo, hi]`
/// and degree exactly the drawn `r ≤ max_r`.
pub fn random_dominant<R: Rng + ?Sized>(rng: &mut R, spec: &RandomSpec) -> Weight {
    let span = (spec.hi - spec.lo + 1) as usize;
    loop {
        let m = rng.gen_range(1..=spec.max_m);
        let n = rng.gen_range(1..=spec.max_n);
        let r = rng.gen_range(0..=spec.max_r.min(m).min(n));
        if m + n - r > span {
            continue;
        }
        let vals: Vec<i64> = sample(rng, span, m + n - r).into_iter().map(|i| spec.lo + i as i64).collect();
        let (shared, rest) = vals.split_at(r);
        let (even_only, odd_only) = rest.split_at(m - r);
        let mut even: Vec<i64> = shared.iter().chain(even_only).copied().collect();
        let mut odd: Vec<i64> = shared.iter().chain(odd_only).copied().collect();
        even.sort_unstable_by(|a, b| b.cmp(a));
        odd.sort_unstable();
        return Weight::new(even, odd).expect("m, n >= 1");
    }
}

/// The weight used throughout the documentation.
pub fn running_example() -> Weight {
    "15,11,10,7,6,4,3|3,5,7,8,10,15".parse().expect("valid literal")
}
