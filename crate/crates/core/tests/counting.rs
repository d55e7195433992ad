use std::sync::OnceLock;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tricount::config::BUILTIN_NAMES;
use tricount::enumerate::enumerate_full;
use tricount::exec::{
    count_builtin, count_oracle, execute_plan, execute_plan_wide, list_occurrences, oracle_admits, CompiledPlan,
};
use tricount::plan::{generate_plans, CountingPlan, PlanSet};
use tricount::random::distinct_systems;
use tricount::sts::{affine_plane_9, fano_plane, SteinerTripleSystem};
use tricount::{builtin, Configuration, Error};

fn small_systems() -> &'static [SteinerTripleSystem] {
    static S: OnceLock<Vec<SteinerTripleSystem>> = OnceLock::new();
    S.get_or_init(|| {
        let mut s = vec![fano_plane(), affine_plane_9()];
        s.extend(distinct_systems(13, 100, 2).unwrap());
        s.extend(distinct_systems(15, 200, 2).unwrap());
        s
    })
}

fn plan_sets() -> &'static Vec<(String, PlanSet)> {
    static P: OnceLock<Vec<(String, PlanSet)>> = OnceLock::new();
    P.get_or_init(|| {
        BUILTIN_NAMES
            .iter()
            .map(|n| (n.to_string(), generate_plans(&builtin(n).unwrap()).unwrap()))
            .collect()
    })
}

/// Every `stride`-th plan of a set, always including the first and last.
fn sample(set: &PlanSet, count: usize) -> Vec<&CountingPlan> {
    let stride = (set.count() / count).max(1);
    let mut out: Vec<&CountingPlan> = set.plans.iter().step_by(stride).map(|p| &p.plan).collect();
    out.push(&set.plans.last().unwrap().plan);
    out
}

#[test]
fn anchor_values() {
    let s7 = fano_plane();
    let s9 = affine_plane_9();
    let pasch = builtin("pasch").unwrap();
    let mitre = builtin("mitre").unwrap();
    let fano = builtin("fano").unwrap();
    assert_eq!(count_builtin("pasch", &s7).unwrap(), 7);
    assert_eq!(count_oracle(&pasch, &s7).unwrap(), 7);
    assert_eq!(count_builtin("pasch", &s9).unwrap(), 0);
    assert_eq!(count_oracle(&pasch, &s9).unwrap(), 0);
    assert_eq!(count_builtin("mitre", &s9).unwrap(), 36);
    assert_eq!(count_oracle(&mitre, &s9).unwrap(), 36);
    assert_eq!(count_builtin("fano", &s7).unwrap(), 1);
    assert_eq!(count_oracle(&fano, &s7).unwrap(), 1);
    assert_eq!(count_builtin("fano", &s9).unwrap(), 0);
}

#[test]
fn listed_occurrences() {
    let s7 = fano_plane();
    let pasch = list_occurrences(&builtin("pasch").unwrap(), &s7).unwrap();
    assert_eq!(pasch.len(), 7);
    let mut dedup = pasch.clone();
    dedup.dedup();
    assert_eq!(dedup.len(), 7);
    let fano = list_occurrences(&builtin("fano").unwrap(), &s7).unwrap();
    assert_eq!(fano, vec![s7.blocks().to_vec()]);
    assert!(list_occurrences(&builtin("pasch").unwrap(), &affine_plane_9()).unwrap().is_empty());
}

#[test]
fn builtins_agree_with_oracles_and_plans() {
    for (name, set) in plan_sets() {
        let cfg = builtin(name).unwrap();
        let plans = sample(set, 20);
        for s in small_systems() {
            let b = count_builtin(name, s).unwrap();
            assert_eq!(list_occurrences(&cfg, s).unwrap().len() as u64, b, "{name} lister v={}", s.order());
            assert!(oracle_admits(&cfg, s));
            assert_eq!(count_oracle(&cfg, s).unwrap(), b, "{name} oracle v={}", s.order());
            for p in &plans {
                assert_eq!(execute_plan(p, s).unwrap(), b, "{name} plan v={}\n{}", s.order(), p.to_text());
            }
        }
    }
}

#[test]
fn disjoint_lines_oracles_agree() {
    let lines: Vec<[usize; 3]> = (0..4).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect();
    let four = Configuration::from_lines(&lines).unwrap();
    let two = Configuration::from_lines(&lines[..2]).unwrap();
    let s9 = affine_plane_9();
    assert_eq!(count_oracle(&four, &s9).unwrap(), 0);
    assert_eq!(list_occurrences(&four, &s9).unwrap().len(), 0);
    // Two disjoint lines, counted directly from the block list.
    let direct = s9
        .blocks()
        .iter()
        .enumerate()
        .flat_map(|(i, a)| s9.blocks()[i + 1..].iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.iter().all(|p| !b.contains(p)))
        .count() as u64;
    assert_eq!(count_oracle(&two, &s9).unwrap(), direct);
    assert_eq!(list_occurrences(&two, &s9).unwrap().len() as u64, direct);
    let s13 = &small_systems()[2];
    assert_eq!(count_oracle(&two, s13).unwrap(), list_occurrences(&two, s13).unwrap().len() as u64);
}

#[test]
fn small_plans_on_tiny_systems_are_empty() {
    // Loop offsets exceed the order, so the ranges are empty.
    let s3 = SteinerTripleSystem::new(3, [[0, 1, 2]]).unwrap();
    for (name, set) in plan_sets() {
        for p in sample(set, 5) {
            assert_eq!(execute_plan(p, &s3).unwrap(), 0, "{name}");
        }
        assert_eq!(count_builtin(name, &s3).unwrap(), 0);
    }
}

#[test]
fn unknown_builtin() {
    assert!(matches!(count_builtin("heptagon", &fano_plane()), Err(Error::UnknownConfiguration(_))));
}

#[test]
fn oracle_guard() {
    let grid = builtin("grid").unwrap();
    let big = distinct_systems(19, 5, 1).unwrap().remove(0);
    assert!(!oracle_admits(&grid, &big));
    assert!(matches!(count_oracle(&grid, &big), Err(Error::SizeGuard(_))));
}

#[test]
fn divisibility_failure_is_reported() {
    let set = &plan_sets().iter().find(|(n, _)| n == "pasch").unwrap().1;
    let mut plan = set.plans[0].plan.clone();
    plan.q = 1_000_003;
    let err = execute_plan(&plan, &small_systems()[4]).unwrap_err();
    assert!(matches!(err, Error::Divisibility { q: 1_000_003, .. }), "{err}");
}

#[test]
fn three_line_configurations_are_constant() {
    let mut classes: Vec<Configuration> = Vec::new();
    // Every configuration with at most three lines, up to isomorphism.
    for b in 1..=3 {
        let w_max = 3 * b;
        let triples: Vec<[usize; 3]> = (0..w_max)
            .flat_map(|x| (x + 1..w_max).flat_map(move |y| (y + 1..w_max).map(move |z| [x, y, z])))
            .collect();
        let mut pick = |lines: Vec<[usize; 3]>| {
            if let Ok(c) = Configuration::from_lines(&lines) {
                if !classes.iter().any(|d| d.is_isomorphic(&c)) {
                    classes.push(c);
                }
            }
        };
        let n = triples.len();
        for i in 0..n {
            if b == 1 {
                pick(vec![triples[i]]);
                continue;
            }
            for j in i + 1..n {
                if b == 2 {
                    pick(vec![triples[i], triples[j]]);
                    continue;
                }
                for k in j + 1..n {
                    pick(vec![triples[i], triples[j], triples[k]]);
                }
            }
        }
    }
    // 1 with one line, 2 with two, 5 with three.
    assert_eq!(classes.len(), 8);
    let systems = distinct_systems(19, 7, 3).unwrap();
    for c in &classes {
        let counts: Vec<u64> = systems.iter().map(|s| count_oracle(c, s).unwrap()).collect();
        assert!(counts.iter().all(|&x| x == counts[0]), "{:?} {counts:?}", c.lines());
    }
    // Four lines are not: the Pasch count varies.
    let pasch: Vec<u64> = distinct_systems(19, 7, 6)
        .unwrap()
        .iter()
        .map(|s| count_builtin("pasch", s).unwrap())
        .collect();
    assert!(pasch.iter().any(|&x| x != pasch[0]), "{pasch:?}");
}

#[test]
fn full_configurations_with_few_lines_agree_across_methods() {
    let s13 = &small_systems()[2];
    for c in enumerate_full(6).unwrap() {
        let plans = generate_plans(&c).unwrap();
        let via_plan = execute_plan(&plans.plans[0].plan, s13).unwrap();
        assert_eq!(via_plan, list_occurrences(&c, s13).unwrap().len() as u64);
        assert_eq!(via_plan, count_oracle(&c, s13).unwrap());
    }
}

fn random_perm(v: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..v).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn counts_survive_relabelling(cfg_idx in 0usize..9, sys_idx in 0usize..6, seed in any::<u64>()) {
        let name = BUILTIN_NAMES[cfg_idx];
        let s = &small_systems()[sys_idx];
        let t = s.relabel(&random_perm(s.order(), seed)).unwrap();
        prop_assert_eq!(count_builtin(name, s).unwrap(), count_builtin(name, &t).unwrap());
        let set = &plan_sets()[cfg_idx].1;
        let plan = &set.plans[(seed % set.count() as u64) as usize].plan;
        prop_assert_eq!(execute_plan(plan, s).unwrap(), execute_plan(plan, &t).unwrap());
    }

    #[test]
    fn tight_and_wide_ranges_agree(cfg_idx in 0usize..9, sys_idx in 0usize..6, pick in any::<u64>()) {
        let set = &plan_sets()[cfg_idx].1;
        let plan = &set.plans[(pick % set.count() as u64) as usize].plan;
        let s = &small_systems()[sys_idx];
        prop_assert_eq!(execute_plan(plan, s).unwrap(), execute_plan_wide(plan, s).unwrap());
    }
}

/// At least 10⁴ executions: every sampled plan of every configuration on
/// every system, each checked for `Q | r` and agreement with the builtin.
#[test]
fn raw_counts_are_divisible_by_q() {
    let mut executions = 0;
    let mut systems: Vec<SteinerTripleSystem> = small_systems().to_vec();
    systems.extend(distinct_systems(19, 300, 2).unwrap());
    for (name, set) in plan_sets() {
        let plans: Vec<CompiledPlan> =
            sample(set, 250).into_iter().map(|p| CompiledPlan::new(p, false).unwrap()).collect();
        for s in &systems {
            let expect = count_builtin(name, s).unwrap();
            for p in &plans {
                let raw = p.raw_count(s);
                assert_eq!(raw % p.q(), 0, "{name} v={}", s.order());
                assert_eq!(raw / p.q(), expect, "{name} v={}", s.order());
                executions += 1;
            }
        }
    }
    assert!(executions >= 10_000, "{executions}");
}
