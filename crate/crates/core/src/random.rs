//! Random Steiner triple systems by Stinson's hill climbing.
//!
//! A partial system is grown one switch step at a time: pick a live point
//! `x` (replication below `(v−1)/2`) and two points `y`, `z` not yet paired
//! with `x`. If `{y, z}` is uncovered the block `{x, y, z}` is added,
//! otherwise the block through `{y, z}` is swapped out for it. Every choice is
//! uniform, drawn from a ChaCha8 stream seeded with the 64-bit seed, so
//! outputs are reproducible across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sts::{admissible_order, block_count, SteinerTripleSystem};

/// Restarts attempted (each with a derived seed) before giving up.
pub const MAX_RESTARTS: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HillClimbConfig {
    pub v: usize,
    pub seed: u64,
    /// Switch steps allowed without a new best block count before a restart.
    pub max_stagnation: u64,
}

impl HillClimbConfig {
    /// Default budget of `100·v²` switch steps without progress.
    pub fn new(v: usize, seed: u64) -> Self {
        HillClimbConfig { v, seed, max_stagnation: 100 * (v as u64) * (v as u64) }
    }
}

const NONE: u32 = u32::MAX;

/// Indexed set with O(1) insert, remove and uniform sampling.
struct SampleSet {
    items: Vec<u32>,
    pos: Vec<u32>,
}

impl SampleSet {
    fn full(n: usize, skip: Option<usize>) -> Self {
        let mut s = SampleSet { items: Vec::with_capacity(n), pos: vec![NONE; n] };
        for i in 0..n {
            if Some(i) != skip {
                s.insert(i as u32);
            }
        }
        s
    }

    fn insert(&mut self, x: u32) {
        debug_assert_eq!(self.pos[x as usize], NONE);
        self.pos[x as usize] = self.items.len() as u32;
        self.items.push(x);
    }

    fn remove(&mut self, x: u32) {
        let p = self.pos[x as usize];
        debug_assert_ne!(p, NONE);
        let last = self.items.pop().unwrap();
        if last != x {
            self.items[p as usize] = last;
            self.pos[last as usize] = p;
        }
        self.pos[x as usize] = NONE;
    }

    fn sample(&self, rng: &mut impl Rng) -> u32 {
        self.items[rng.gen_range(0..self.items.len())]
    }

    fn len(&self) -> usize {
        self.items.len()
    }
}

struct Partial {
    v: usize,
    third: Vec<u32>,
    live_points: SampleSet,
    partners: Vec<SampleSet>,
    blocks: usize,
}

impl Partial {
    fn new(v: usize) -> Self {
        Partial {
            v,
            third: vec![NONE; v * v],
            live_points: SampleSet::full(v, None),
            partners: (0..v).map(|x| SampleSet::full(v, Some(x))).collect(),
            blocks: 0,
        }
    }

    fn cover(&mut self, x: u32, y: u32, z: u32) {
        let v = self.v;
        self.third[x as usize * v + y as usize] = z;
        self.third[y as usize * v + x as usize] = z;
        self.partners[x as usize].remove(y);
        self.partners[y as usize].remove(x);
    }

    fn uncover(&mut self, x: u32, y: u32) {
        let v = self.v;
        self.third[x as usize * v + y as usize] = NONE;
        self.third[y as usize * v + x as usize] = NONE;
        self.partners[x as usize].insert(y);
        self.partners[y as usize].insert(x);
    }

    fn add_block(&mut self, x: u32, y: u32, z: u32) {
        self.cover(x, y, z);
        self.cover(x, z, y);
        self.cover(y, z, x);
        for p in [x, y, z] {
            if self.partners[p as usize].len() == 0 {
                self.live_points.remove(p);
            }
        }
        self.blocks += 1;
    }

    fn remove_block(&mut self, x: u32, y: u32, z: u32) {
        for p in [x, y, z] {
            if self.partners[p as usize].len() == 0 {
                self.live_points.insert(p);
            }
        }
        self.uncover(x, y);
        self.uncover(x, z);
        self.uncover(y, z);
        self.blocks -= 1;
    }

    fn switch_step(&mut self, rng: &mut impl Rng) {
        let x = self.live_points.sample(rng);
        let partners = &self.partners[x as usize];
        // A live point has an even, positive number of uncovered partners.
        let y = partners.sample(rng);
        let z = loop {
            let z = partners.sample(rng);
            if z != y {
                break z;
            }
        };
        let w = self.third[y as usize * self.v + z as usize];
        if w != NONE {
            self.remove_block(w, y, z);
        }
        self.add_block(x, y, z);
    }

    fn into_system(self) -> SteinerTripleSystem {
        let v = self.v;
        let mut blocks = Vec::with_capacity(self.blocks);
        for x in 0..v {
            for y in x + 1..v {
                let z = self.third[x * v + y] as usize;
                if z > y {
                    blocks.push([x, y, z]);
                }
            }
        }
        SteinerTripleSystem::new(v, blocks).expect("hill climbing yields a valid system")
    }
}

fn derived_seed(seed: u64, restart: u32) -> u64 {
    seed.wrapping_add(u64::from(restart).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Generates a random STS(v). Deterministic in `(v, seed, max_stagnation)`.
pub fn hill_climb(cfg: &HillClimbConfig) -> Result<SteinerTripleSystem> {
    if !admissible_order(cfg.v) {
        return Err(Error::InadmissibleOrder(cfg.v));
    }
    if cfg.max_stagnation == 0 {
        return Err(Error::InvalidArgument("max_stagnation must be positive".into()));
    }
    let target = block_count(cfg.v);
    let mut total = 0u64;
    for restart in 0..=MAX_RESTARTS {
        let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(cfg.seed, restart));
        let mut partial = Partial::new(cfg.v);
        let mut best = 0;
        let mut stagnant = 0u64;
        while partial.blocks < target && stagnant < cfg.max_stagnation {
            partial.switch_step(&mut rng);
            total += 1;
            if partial.blocks > best {
                best = partial.blocks;
                stagnant = 0;
            } else {
                stagnant += 1;
            }
        }
        if partial.blocks == target {
            return Ok(partial.into_system());
        }
    }
    Err(Error::BudgetExhausted { iterations: total })
}

/// Generates `count` systems with pairwise distinct block sets, drawing seeds
/// `seed, seed+1, …` and skipping duplicates.
pub fn distinct_systems(v: usize, seed: u64, count: usize) -> Result<Vec<SteinerTripleSystem>> {
    let mut out: Vec<SteinerTripleSystem> = Vec::with_capacity(count);
    let mut next = seed;
    let mut attempts = 0usize;
    while out.len() < count {
        let s = hill_climb(&HillClimbConfig::new(v, next))?;
        next = next.wrapping_add(1);
        attempts += 1;
        if !out.iter().any(|t| t.blocks() == s.blocks()) {
            out.push(s);
        } else if attempts > 100 * count + 100 {
            return Err(Error::InvalidArgument(format!(
                "could not draw {count} distinct STS({v})"
            )));
        }
    }
    Ok(out)
}
