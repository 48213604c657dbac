//! Fixed inputs shared by the benchmarks.

use kacmod::corpus::{random_dominant, running_example, totally, RandomSpec};
use kacmod::{Relation, Weight};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Named weights of increasing degree.
pub fn named() -> Vec<(String, Weight)> {
    let mut out = vec![("running".to_string(), running_example())];
    for (rel, tag) in [(Relation::C, "c"), (Relation::Q, "q"), (Relation::N, "n")] {
        for r in [3, 5] {
            out.push((format!("totally-{tag}-{r}"), totally(rel, r)));
        }
    }
    out
}

/// A fixed batch of random dominant weights.
pub fn random_batch(n: usize, seed: u64) -> Vec<Weight> {
    let mut rng = StdRng::seed_from_u64(seed);
    let spec = RandomSpec::default();
    (0..n).map(|_| random_dominant(&mut rng, &spec)).collect()
}
