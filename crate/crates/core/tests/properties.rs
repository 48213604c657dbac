use std::collections::BTreeSet;

use kacmod::codes::{code_to_theta, enumerate_codes, interleaving_holds, theta_to_code, validate_code};
use kacmod::corpus::{random_dominant, RandomSpec};
use kacmod::diagrams::{build_diagram, strip_labeling};
use kacmod::factors::{brundan_witness, composition_factors, primitive_set_oracle};
use kacmod::nqc::k_step_sequential;
use kacmod::operators::{lower_theta, raise_at, raise_theta};
use kacmod::theta::{ambient, count_theta, enumerate_direct, enumerate_recursive, is_member};
use kacmod::{CompositeDiagram, NqcTable, Part, Relation, Theta, ThetaPrime, Weight};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn weight(seed: u64, spec: RandomSpec) -> Weight {
    random_dominant(&mut StdRng::seed_from_u64(seed), &spec)
}

fn small() -> RandomSpec {
    RandomSpec { max_m: 5, max_n: 5, lo: -12, hi: 12, max_r: 3 }
}

fn regular_after(w: &Weight, delta: &[(usize, i64)]) -> bool {
    let pairs = w.atypical_data().pairs;
    let mut even = w.even().to_vec();
    let mut odd = w.odd().to_vec();
    for &(s, k) in delta {
        let p = pairs[s - 1];
        even[p.even - 1] += k;
        odd[p.odd - w.m() - 1] += k;
    }
    Weight::new(even, odd).unwrap().is_regular()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partition_notation_round_trips(seed in any::<u64>()) {
        let w = weight(seed, RandomSpec::default());
        prop_assert_eq!(Weight::from_partition(&w.to_partition()).unwrap(), w.clone());
        let text = w.to_string();
        prop_assert_eq!(text.parse::<Weight>().unwrap(), w.clone());
        let ptext = w.to_partition().to_string();
        prop_assert_eq!(ptext.parse::<kacmod::PartitionWeight>().unwrap(), w.to_partition());
    }

    #[test]
    fn relations_match_interval_scan(seed in any::<u64>()) {
        let w = weight(seed, RandomSpec::default());
        let t = NqcTable::new(&w).unwrap();
        let sets = w.entry_sets();
        let vals = t.values().to_vec();
        for s in 1..=t.r {
            for u in s..=t.r {
                let free = (vals[s - 1]..=vals[u - 1]).filter(|x| !sets.all.contains(x)).count();
                let want = match free.cmp(&(u - s)) {
                    std::cmp::Ordering::Greater => Relation::N,
                    std::cmp::Ordering::Equal => Relation::Q,
                    std::cmp::Ordering::Less => Relation::C,
                };
                prop_assert_eq!(t.relation(s, u).unwrap(), want);
            }
        }
    }

    #[test]
    fn relation_transitivity(seed in any::<u64>()) {
        let w = weight(seed, RandomSpec { max_r: 5, ..RandomSpec::default() });
        let t = NqcTable::new(&w).unwrap();
        for s in 1..=t.r {
            for u in s..=t.r {
                for v in u..=t.r {
                    let (a, b, c) = (t.relation(s, u).unwrap(), t.relation(u, v).unwrap(), t.relation(s, v).unwrap());
                    if a == b && a != Relation::Q {
                        prop_assert_eq!(c, a);
                    }
                    if a == Relation::Q && b == Relation::Q {
                        prop_assert_eq!(c, Relation::Q);
                    }
                }
            }
        }
    }

    #[test]
    fn chain_bounds_follow_the_table(seed in any::<u64>()) {
        let w = weight(seed, RandomSpec::default());
        let t = NqcTable::new(&w).unwrap();
        for s in 1..=t.r {
            let p = t.p_upper(s).unwrap();
            prop_assert!((s + 1..=p).all(|i| t.relation(s, i).unwrap() == Relation::C));
            prop_assert!(p == t.r || t.relation(s, p + 1).unwrap() != Relation::C);
            let q = t.p_lower(s).unwrap();
            prop_assert!((q..s).all(|i| t.relation(i, s).unwrap() == Relation::C));
            prop_assert!(q == 1 || t.relation(q - 1, s).unwrap() != Relation::C);
        }
    }

    #[test]
    fn step_size_identities(seed in any::<u64>()) {
        let w = weight(seed, RandomSpec::default());
        let t = NqcTable::new(&w).unwrap();
        let seq = k_step_sequential(&w, &w.atypical_data().pairs).unwrap();
        prop_assert_eq!(&seq, &t.k_steps());
        for s in 1..=t.r {
            prop_assert_eq!(t.k_hat(s, t.p[s - 1] + 1 - s).unwrap(), t.k_step(s).unwrap());
            // Smallest downward step keeping the weight regular.
            let kl = t.k_low(s, 1).unwrap();
            prop_assert!(regular_after(&w, &[(s, -kl)]));
            prop_assert!((1..kl).all(|k| !regular_after(&w, &[(s, -k)])));
        }
    }

    #[test]
    fn step_sizes_are_minimal_for_all_raisings(seed in any::<u64>()) {
        let w = weight(seed, small());
        let t = NqcTable::new(&w).unwrap();
        let ks = t.k_steps();
        let r = t.r;
        // k_s is the least k keeping every raising of the pairs above s regular.
        for s in 1..=r {
            let ok = |k: i64| ThetaPrime::all(r - s).all(|tp| {
                let mut delta: Vec<(usize, i64)> = tp.iter().enumerate().filter(|&(_, b)| b).map(|(i, _)| (s + 1 + i, ks[s + i])).collect();
                delta.push((s, k));
                regular_after(&w, &delta)
            });
            prop_assert!(ok(ks[s - 1]));
            prop_assert!((1..ks[s - 1]).all(|k| !ok(k)));
        }
    }

    #[test]
    fn restriction_preserves_relations(seed in any::<u64>()) {
        let w = weight(seed, RandomSpec { max_r: 5, ..RandomSpec::default() });
        let t = NqcTable::new(&w).unwrap();
        for s in 1..=t.r {
            for u in s..=t.r {
                let sub = w.restrict(s, u).unwrap();
                prop_assert!(sub.is_dominant());
                let st = NqcTable::new(&sub).unwrap();
                prop_assert_eq!(st.r, u - s + 1);
                for a in 1..=st.r {
                    for b in a..=st.r {
                        prop_assert_eq!(st.relation(a, b).unwrap(), t.relation(s - 1 + a, s - 1 + b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn enumerators_agree(seed in any::<u64>()) {
        let w = weight(seed, RandomSpec { max_r: 6, ..RandomSpec::default() });
        let t = NqcTable::new(&w).unwrap();
        let direct = enumerate_direct(&t);
        prop_assert_eq!(&enumerate_recursive(&t).unwrap(), &direct);
        prop_assert_eq!(count_theta(&t), direct.len() as u64);
        prop_assert!(direct.contains(&Theta::zeros(t.r)));
    }

    #[test]
    fn raising_closed_form_matches_composition(seed in any::<u64>()) {
        let mu = weight(seed, RandomSpec::default());
        let pairs = mu.atypical_data().pairs;
        for tp in ThetaPrime::all(pairs.len()) {
            let mut w = mu.clone();
            for s in (1..=pairs.len()).filter(|&s| tp.0[s - 1]) {
                w = raise_at(&w, &pairs, s).unwrap();
            }
            prop_assert_eq!(w.dominant_conjugate().unwrap(), raise_theta(&mu, &tp).unwrap());
        }
    }

    #[test]
    fn lowering_preserves_typical_part(seed in any::<u64>()) {
        let w = weight(seed, RandomSpec::default());
        let sets = w.entry_sets();
        let fs = composition_factors(&w).unwrap();
        prop_assert_eq!(fs.weights().len(), fs.len());
        for f in &fs.factors {
            prop_assert_eq!(f.mu.degree(), w.degree());
            prop_assert_eq!(&f.mu.entry_sets().typical, &sets.typical);
            let lowered = f.mu.atypical_data().values().into_iter().zip(w.atypical_data().values()).all(|(a, b)| a <= b);
            prop_assert!(lowered);
        }
    }

    #[test]
    fn codes_biject_with_index_set(seed in any::<u64>()) {
        let w = weight(seed, RandomSpec { max_r: 5, ..RandomSpec::default() });
        let t = NqcTable::new(&w).unwrap();
        let thetas = enumerate_direct(&t);
        for th in &thetas {
            let code = theta_to_code(&t, th).unwrap();
            prop_assert!(validate_code(&t, &code).unwrap().is_empty(), "{} {} {}", w, th, code);
            prop_assert_eq!(&code_to_theta(&t, &code).unwrap(), th);
            prop_assert!(interleaving_holds(&code));
            for s in 1..=t.r {
                if (1..=t.r).any(|p| code.contains(p, s)) {
                    prop_assert_eq!(code.top(s), s);
                }
            }
        }
        if t.r <= 4 {
            let codes = enumerate_codes(&t);
            let mapped: BTreeSet<Theta> = codes.iter().map(|c| code_to_theta(&t, c).unwrap()).collect();
            prop_assert_eq!(codes.len(), thetas.len());
            prop_assert_eq!(mapped, thetas.into_iter().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn diagram_pipeline_matches_lowering(seed in any::<u64>()) {
        let w = weight(seed, small());
        let t = NqcTable::new(&w).unwrap();
        for th in enumerate_direct(&t) {
            let l = strip_labeling(&w, &th).unwrap();
            let mu = lower_theta(&w, &th).unwrap().result;
            prop_assert_eq!(l.remaining.partition_weight(), mu.to_partition());
            let full = CompositeDiagram::at_shift(&w, l.shift).unwrap();
            let drop = |part| full.size(part) - l.remaining.size(part);
            let trace = lower_theta(&w, &th).unwrap();
            let total: i64 = trace.kk.iter().sum();
            prop_assert_eq!(drop(Part::Covariant) as i64, total);
            prop_assert_eq!(drop(Part::Contravariant) as i64, total);
            prop_assert_eq!(l.cells.len() as i64, 2 * total);
        }
    }

    #[test]
    fn normalization_is_translation_invariant(seed in any::<u64>(), c in -30i64..30) {
        let w = weight(seed, RandomSpec::default());
        let v = w.shift(c);
        let (dw, dv) = (build_diagram(&w, 2).unwrap(), build_diagram(&v, 2).unwrap());
        if dw.shift > 0 && dv.shift > 0 {
            prop_assert_eq!(&dw.covariant, &dv.covariant);
            prop_assert_eq!(&dw.contravariant, &dv.contravariant);
            prop_assert_eq!(dw.shift - dv.shift, c);
        }
        prop_assert_eq!(dw.partition_weight(), w.to_partition());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn oracle_equals_factor_set(seed in any::<u64>()) {
        let w = weight(seed, small());
        let margin = kacmod::factors::default_margin(&w);
        prop_assert_eq!(primitive_set_oracle(&w, margin).unwrap(), composition_factors(&w).unwrap().weights());
    }

    #[test]
    fn direct_filter_matches_raising_criterion(seed in any::<u64>()) {
        // Every tuple of the ambient set is a member exactly when its lowering
        // is raised back by some 0/1 tuple.
        let w = weight(seed, small());
        let t = NqcTable::new(&w).unwrap();
        for th in ambient(t.r) {
            let Ok(trace) = lower_theta(&w, &th) else { continue };
            if is_member(&t, &th) {
                prop_assert!(brundan_witness(&w, &trace.result).unwrap().is_some());
            }
        }
    }
}

#[test]
fn lexicographic_minimality_of_raising_steps() {
    let mut rng = StdRng::seed_from_u64(31);
    for _ in 0..100 {
        let w = random_dominant(&mut rng, &RandomSpec { max_m: 4, max_n: 4, lo: -8, hi: 8, max_r: 3 });
        let t = NqcTable::new(&w).unwrap();
        let r = t.r;
        let ks = t.k_steps();
        let good = |k: &[i64]| {
            ThetaPrime::all(r).all(|tp| {
                let delta: Vec<(usize, i64)> =
                    tp.iter().zip(1..).filter(|&(b, _)| b).map(|(_, s)| (s, k[s - 1])).collect();
                regular_after(&w, &delta)
            })
        };
        assert!(good(&ks), "{w}");
        // Every tuple lexicographically below (k_r, …, k_1) fails.
        let bound = ks.iter().copied().max().unwrap_or(1);
        let mut k = vec![1i64; r];
        loop {
            let rev: Vec<i64> = k.iter().rev().copied().collect();
            let target: Vec<i64> = ks.iter().rev().copied().collect();
            if rev < target {
                assert!(!good(&k), "{w}: {k:?} beats {ks:?}");
            }
            let Some(i) = (0..r).find(|&i| k[i] < bound) else { break };
            k[i] += 1;
            k[..i].fill(1);
        }
    }
}
