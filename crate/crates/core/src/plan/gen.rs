//! Exhaustive plan synthesis.
//!
//! For every transversal tuple `M` (the loop order), every symmetry
//! constraint set obtainable from `(Z, E)` and its truncations, and every
//! way of completing the closure after each loop, one plan is emitted.
//! Plans are merged by their normalized serialization.

use std::collections::HashMap;

use rayon::prelude::*;

use super::chain::{order_closure, permutations, transitive_reduction, transversal, Extremum, OrbitChain};
use super::{CountingPlan, Rel, Step};
use crate::config::{mask_points, Configuration, PermGroup};
use crate::error::{Error, Result};

/// Largest minimum generating set size handled by the generator.
pub const MAX_GENERATORS: usize = 5;

/// A distinct plan with the number of raw constructions that produced it.
#[derive(Clone, Debug)]
pub struct GeneratedPlan {
    pub id: usize,
    pub plan: CountingPlan,
    /// Produced only by truncated orbit chains.
    pub truncated: bool,
    pub sources: usize,
    pub key: String,
}

#[derive(Clone, Debug)]
pub struct PlanSet {
    pub plans: Vec<GeneratedPlan>,
    /// Plans built before merging.
    pub raw: usize,
}

impl PlanSet {
    /// The number of distinct algorithms.
    pub fn count(&self) -> usize {
        self.plans.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Event {
    Loop(usize),
    Assign(usize, [usize; 2], usize),
}

/// All ways to run the loops in `tuple` order and close after each loop.
fn buildups(cfg: &Configuration, tuple: &[usize]) -> Vec<Vec<Event>> {
    fn go(
        cfg: &Configuration,
        tuple: &[usize],
        next_loop: usize,
        assigned: u64,
        events: &mut Vec<Event>,
        out: &mut Vec<Vec<Event>>,
    ) {
        let mut moved = false;
        for (li, l) in cfg.lines().iter().enumerate() {
            let inside: Vec<usize> =
                l.iter().map(|&p| p as usize).filter(|&p| assigned >> p & 1 == 1).collect();
            if inside.len() != 2 {
                continue;
            }
            let x = l.iter().map(|&p| p as usize).find(|&p| assigned >> p & 1 == 0).unwrap();
            moved = true;
            events.push(Event::Assign(x, [inside[0], inside[1]], li));
            go(cfg, tuple, next_loop, assigned | 1 << x, events, out);
            events.pop();
        }
        if moved {
            return;
        }
        if next_loop == tuple.len() {
            if assigned == cfg.all_points() {
                out.push(events.clone());
            }
            return;
        }
        let x = tuple[next_loop];
        events.push(Event::Loop(x));
        go(cfg, tuple, next_loop + 1, assigned | 1 << x, events, out);
        events.pop();
    }
    let mut out = Vec::new();
    go(cfg, tuple, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// A reduced inequality set with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Constraints {
    pairs: Vec<(usize, usize)>,
    q: usize,
}

/// Distinct constraint sets over all `Z`, `E` (with `e_1 = min`) and
/// truncation depths; the flag is true when only truncated chains give it.
fn constraint_sets(group: &PermGroup, w: usize, tuple: &[usize]) -> Vec<(Constraints, bool)> {
    let m = tuple.len();
    let mut seen: HashMap<Constraints, bool> = HashMap::new();
    for z in permutations(tuple) {
        for bits in 0..1usize << (m - 1) {
            let mut e = vec![Extremum::Min; m];
            for (i, slot) in e.iter_mut().enumerate().skip(1) {
                if bits >> (i - 1) & 1 == 1 {
                    *slot = Extremum::Max;
                }
            }
            for depth in 0..=m {
                let chain = OrbitChain::new(group, &z, &e, depth);
                let c = Constraints { pairs: transitive_reduction(w, &chain.inequalities()), q: chain.q };
                let truncated = depth < m;
                seen.entry(c).and_modify(|t| *t &= truncated).or_insert(truncated);
            }
        }
    }
    let mut out: Vec<(Constraints, bool)> = seen.into_iter().collect();
    out.sort_by(|a, b| (&a.0.pairs, a.0.q).cmp(&(&b.0.pairs, b.0.q)));
    out
}

fn build(cfg: &Configuration, name: &str, events: &[Event], c: &Constraints) -> CountingPlan {
    let w = cfg.points();
    let above = order_closure(w, &c.pairs);
    let mut below = vec![0u64; w];
    for p in 0..w {
        for q in mask_points(above[p]) {
            below[q] |= 1 << p;
        }
    }
    let between = |lo: usize, hi: usize| (above[lo] & below[hi]).count_ones() as usize;
    let mut steps = Vec::new();
    let mut assigned = 0u64;
    let mut established = vec![false; cfg.num_lines()];
    for &ev in events {
        let (x, definers) = match ev {
            Event::Loop(x) => (x, None),
            Event::Assign(x, from, li) => (x, Some((from, li))),
        };
        // Relations to assigned variables not implied through another
        // assigned variable.
        let lower: Vec<usize> = mask_points(below[x] & assigned)
            .filter(|&y| (above[y] & below[x] & assigned) == 0)
            .collect();
        let upper: Vec<usize> = mask_points(above[x] & assigned)
            .filter(|&y| (above[x] & below[y] & assigned) == 0)
            .collect();
        let comparable = (above[x] | below[x]) & assigned;
        let mut neq: Vec<usize> = mask_points(assigned & !comparable).collect();
        match definers {
            None => {
                steps.push(Step::Loop {
                    var: x,
                    lo: below[x].count_ones() as usize,
                    hi_offset: 1 + above[x].count_ones() as usize,
                });
                for &y in &upper {
                    steps.push(Step::Bound { var: x, rel: Rel::Lt, other: y, gap: between(x, y) });
                }
                for &y in &lower {
                    steps.push(Step::Bound { var: x, rel: Rel::Gt, other: y, gap: between(y, x) });
                }
            }
            Some((from, li)) => {
                let mut f = from;
                f.sort_unstable_by(|a, b| b.cmp(a));
                steps.push(Step::Assign { var: x, from: f });
                // x differs from u when an established line other than the
                // defining one joins u to a definer.
                neq.retain(|&u| {
                    if from.contains(&u) {
                        return false;
                    }
                    !cfg.lines().iter().enumerate().any(|(lj, l)| {
                        lj != li
                            && established[lj]
                            && l.contains(&(u as u8))
                            && (l.contains(&(from[0] as u8)) || l.contains(&(from[1] as u8)))
                    })
                });
                established[li] = true;
                for &y in &upper {
                    steps.push(Step::Bound { var: x, rel: Rel::Lt, other: y, gap: 0 });
                }
                for &y in &lower {
                    steps.push(Step::Bound { var: x, rel: Rel::Gt, other: y, gap: 0 });
                }
            }
        }
        if !neq.is_empty() {
            steps.push(Step::Neq { var: x, others: neq });
        }
        assigned |= 1 << x;
        for (lj, l) in cfg.lines().iter().enumerate() {
            if !established[lj] && l.iter().all(|&p| assigned >> p & 1 == 1) {
                established[lj] = true;
                steps.push(Step::Line { points: [l[0] as usize, l[1] as usize, l[2] as usize] });
            }
        }
    }
    steps.push(Step::Count);
    CountingPlan { config: name.to_string(), w, q: c.q as u64, steps }
}

struct Raw {
    plan: CountingPlan,
    key: String,
    truncated: bool,
}

fn plans_for_tuple(
    cfg: &Configuration,
    name: &str,
    group: &PermGroup,
    tuple: &[usize],
) -> Vec<Raw> {
    let ups = buildups(cfg, tuple);
    let sets = constraint_sets(group, cfg.points(), tuple);
    let mut out = Vec::with_capacity(ups.len() * sets.len());
    for (c, truncated) in &sets {
        for ev in &ups {
            let plan = build(cfg, name, ev, c);
            let key = plan.normalized_key();
            out.push(Raw { plan, key, truncated: *truncated });
        }
    }
    out
}

fn merge(raw: Vec<Raw>) -> PlanSet {
    let total = raw.len();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut plans: Vec<GeneratedPlan> = Vec::new();
    for r in raw {
        match index.get(&r.key) {
            Some(&i) => {
                plans[i].sources += 1;
                plans[i].truncated &= r.truncated;
            }
            None => {
                index.insert(r.key.clone(), plans.len());
                plans.push(GeneratedPlan { id: 0, plan: r.plan, truncated: r.truncated, sources: 1, key: r.key });
            }
        }
    }
    for (i, p) in plans.iter_mut().enumerate() {
        p.id = i;
    }
    PlanSet { plans, raw: total }
}

fn check_supported(cfg: &Configuration) -> Result<usize> {
    let m = cfg.generating_number();
    if m == 0 || m > MAX_GENERATORS {
        return Err(Error::Unsupported(format!(
            "plan generation needs 1 ≤ m ≤ {MAX_GENERATORS}, configuration has m = {m}"
        )));
    }
    Ok(m)
}

/// All distinct counting plans for `cfg`, in a deterministic order.
pub fn generate_plans(cfg: &Configuration) -> Result<PlanSet> {
    check_supported(cfg)?;
    let name = cfg.name().unwrap_or("cfg").to_string();
    let group = cfg.automorphism_group();
    let (_, sets) = cfg.minimum_generating_sets();
    let tuples = transversal(&group, &sets);
    let raw: Vec<Raw> = tuples
        .par_iter()
        .flat_map_iter(|t| plans_for_tuple(cfg, &name, &group, t))
        .collect();
    Ok(merge(raw))
}

/// One plan without searching all alternatives: the first transversal
/// tuple, its first build-up, and the full orbit chain with every `z_i`
/// the least point of its orbit.
pub fn default_plan(cfg: &Configuration) -> Result<CountingPlan> {
    check_supported(cfg)?;
    let name = cfg.name().unwrap_or("cfg").to_string();
    let group = cfg.automorphism_group();
    let (_, sets) = cfg.minimum_generating_sets();
    let tuple = transversal(&group, &sets).into_iter().next().expect("a generating set exists");
    let events = buildups(cfg, &tuple).into_iter().next().expect("a build-up exists");
    let chain = OrbitChain::new(&group, &tuple, &vec![Extremum::Min; tuple.len()], tuple.len());
    let c = Constraints { pairs: transitive_reduction(cfg.points(), &chain.inequalities()), q: chain.q };
    Ok(build(cfg, &name, &events, &c))
}

/// Plans whose loops run in the order of `tuple` (which need not be a
/// transversal representative).
pub fn generate_plans_for_tuple(cfg: &Configuration, tuple: &[usize]) -> Result<PlanSet> {
    check_supported(cfg)?;
    if !cfg.generates(tuple.iter().fold(0, |m, &p| m | 1 << p)) || tuple.len() != cfg.generating_number() {
        return Err(Error::InvalidArgument("tuple is not a minimum generating set".into()));
    }
    let name = cfg.name().unwrap_or("cfg").to_string();
    let group = cfg.automorphism_group();
    Ok(merge(plans_for_tuple(cfg, &name, &group, tuple)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::builtin;

    #[test]
    fn fano_buildups_start_with_loops_in_order() {
        let fano = builtin("fano").unwrap();
        let ups = buildups(&fano, &[0, 1, 2]);
        assert!(!ups.is_empty());
        for ev in &ups {
            assert_eq!(ev[0], Event::Loop(0));
            assert_eq!(ev[1], Event::Loop(1));
            assert!(matches!(ev[2], Event::Assign(4, _, _)));
            assert_eq!(ev[3], Event::Loop(2));
            assert_eq!(ev.len(), 7);
        }
    }

    #[test]
    fn plans_reference_each_line_once() {
        for name in ["pasch", "fano", "crown"] {
            let cfg = builtin(name).unwrap();
            let set = generate_plans(&cfg).unwrap();
            assert!(set.count() > 0);
            for p in &set.plans {
                p.plan.validate_against(&cfg).unwrap();
                let checks = p.plan.steps.iter().filter(|s| matches!(s, Step::Line { .. })).count();
                let m = p.plan.loop_count();
                assert_eq!(checks + cfg.points(), cfg.num_lines() + m);
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let cfg = builtin("mitre").unwrap();
        for p in generate_plans(&cfg).unwrap().plans.iter().take(50) {
            let back = CountingPlan::from_text(&p.plan.to_text()).unwrap();
            assert_eq!(back, p.plan);
        }
    }
}
