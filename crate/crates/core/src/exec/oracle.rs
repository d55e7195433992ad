//! Two slow, independent counting methods used to check the fast ones.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::config::{for_each_subset, CanonicalForm, Configuration, PointSet};
use crate::error::{Error, Result};
use crate::sts::{Block, SteinerTripleSystem};

/// Largest configuration (in lines) for the subset oracle on small systems.
pub const ORACLE_MAX_LINES: usize = 8;
/// Largest block count of a "small" system.
pub const ORACLE_MAX_BLOCKS: usize = 40;
/// Largest configuration for the subset oracle on STS(19), STS(21), STS(25).
pub const ORACLE_MAX_LINES_LARGE: usize = 5;
/// Largest number of starting `m`-subsets the lister accepts.
pub const LISTER_MAX_STARTS: u128 = 20_000_000;

/// Whether the subset oracle accepts this pair of sizes.
pub fn oracle_admits(cfg: &Configuration, sts: &SteinerTripleSystem) -> bool {
    let b = cfg.num_lines();
    (b <= ORACLE_MAX_LINES && sts.blocks().len() <= ORACLE_MAX_BLOCKS)
        || (b <= ORACLE_MAX_LINES_LARGE && matches!(sts.order(), 19 | 21 | 25))
}

/// The configuration formed by `blocks`, points relabelled densely in
/// increasing order.
pub fn blocks_configuration(blocks: &[Block]) -> Configuration {
    let mut pts: Vec<u32> = blocks.iter().flatten().copied().collect();
    pts.sort_unstable();
    pts.dedup();
    let idx = |p: u32| pts.binary_search(&p).unwrap();
    Configuration::new(pts.len(), blocks.iter().map(|b| [idx(b[0]), idx(b[1]), idx(b[2])]))
        .expect("blocks of a system form a configuration")
}

fn sorted_degrees(c: &Configuration) -> Vec<u8> {
    let mut d = c.degrees().to_vec();
    d.sort_unstable();
    d
}

struct Target {
    form: CanonicalForm,
    w: usize,
    b: usize,
    degrees: Vec<u8>,
    max_degree: u8,
}

impl Target {
    fn new(cfg: &Configuration) -> Self {
        let degrees = sorted_degrees(cfg);
        Target {
            form: cfg.canonical_form(),
            w: cfg.points(),
            b: cfg.num_lines(),
            max_degree: degrees.last().copied().unwrap_or(0),
            degrees,
        }
    }

    fn matches(&self, blocks: &[Block]) -> bool {
        let c = blocks_configuration(blocks);
        c.points() == self.w && sorted_degrees(&c) == self.degrees && c.canonical_form() == self.form
    }
}

/// Counts the `b`-subsets of blocks isomorphic to `cfg` by enumerating
/// subsets directly.
pub fn count_oracle(cfg: &Configuration, sts: &SteinerTripleSystem) -> Result<u64> {
    if !oracle_admits(cfg, sts) {
        return Err(Error::SizeGuard(format!(
            "subset oracle: {} lines in STS({}) is over the limit",
            cfg.num_lines(),
            sts.order()
        )));
    }
    let target = Target::new(cfg);
    let mut deg = vec![0u8; sts.order()];
    let mut chosen = Vec::with_capacity(target.b);
    let mut count = 0;
    subsets(sts.blocks(), 0, 0, &target, &mut deg, &mut chosen, &mut count);
    Ok(count)
}

fn subsets(
    blocks: &[Block],
    start: usize,
    points: usize,
    t: &Target,
    deg: &mut [u8],
    chosen: &mut Vec<Block>,
    count: &mut u64,
) {
    if chosen.len() == t.b {
        if points == t.w && t.matches(chosen) {
            *count += 1;
        }
        return;
    }
    let need = t.b - chosen.len();
    for i in start..=blocks.len().saturating_sub(need) {
        let bl = blocks[i];
        let new = bl.iter().filter(|&&p| deg[p as usize] == 0).count();
        if points + new > t.w || bl.iter().any(|&p| deg[p as usize] == t.max_degree) {
            continue;
        }
        bl.iter().for_each(|&p| deg[p as usize] += 1);
        chosen.push(bl);
        subsets(blocks, i + 1, points + new, t, deg, chosen, count);
        chosen.pop();
        bl.iter().for_each(|&p| deg[p as usize] -= 1);
    }
}

/// Lists every occurrence of `cfg` in `sts` once, as sorted block lists.
///
/// For each `m`-subset `V₀` of points (`m` the generating number of `cfg`),
/// blocks with two points in the growing point set are decided one pair at a
/// time: take the block or forbid it. Each block subset is therefore reached
/// at most once per `V₀`, and an occurrence is kept only when `V₀` is the
/// lexicographically least `m`-subset of its points generating it.
pub fn list_occurrences(cfg: &Configuration, sts: &SteinerTripleSystem) -> Result<Vec<Vec<Block>>> {
    let m = cfg.generating_number();
    let v = sts.order();
    if v > 64 {
        return Err(Error::SizeGuard(format!("lister: STS({v}) has more than 64 points")));
    }
    if m > v {
        return Ok(Vec::new());
    }
    let starts = (0..m).fold(1u128, |acc, i| acc * (v - i) as u128 / (i + 1) as u128);
    if starts > LISTER_MAX_STARTS {
        return Err(Error::SizeGuard(format!("lister: C({v},{m}) = {starts} starting sets")));
    }
    let target = Target::new(cfg);
    let mut starts = Vec::new();
    for_each_subset(v, m, |v0| starts.push(v0));
    let mut out: Vec<Vec<Block>> = starts
        .par_iter()
        .flat_map_iter(|&v0| {
            let mut found = Vec::new();
            let mut st = Lister {
                sts,
                t: &target,
                m,
                v0,
                pts: crate::config::mask_points(v0).collect(),
                in_pts: v0,
                deg: vec![0; v],
                chosen: Vec::new(),
                forbidden: HashSet::new(),
                seen: HashSet::new(),
                out: &mut found,
            };
            st.grow(0, 1);
            found
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

struct Lister<'a> {
    sts: &'a SteinerTripleSystem,
    t: &'a Target,
    m: usize,
    v0: PointSet,
    /// Points in insertion order.
    pts: Vec<usize>,
    in_pts: PointSet,
    deg: Vec<u8>,
    chosen: Vec<Block>,
    /// Blocks ruled out on this branch, by sorted triple.
    forbidden: HashSet<Block>,
    seen: HashSet<Vec<Block>>,
    out: &'a mut Vec<Vec<Block>>,
}

impl Lister<'_> {
    fn block_of(&self, x: usize, y: usize) -> Block {
        let z = self.sts.pair_third(x as u32, y as u32);
        let mut b = [x as u32, y as u32, z];
        b.sort_unstable();
        b
    }

    // Pairs (pts[i], pts[j]) with i < j are visited in order of j, then i;
    // `(i, j)` is the next pair to consider.
    fn grow(&mut self, i: usize, j: usize) {
        if self.chosen.len() == self.t.b {
            self.leaf();
            return;
        }
        let (mut i, mut j) = (i, j);
        loop {
            if j >= self.pts.len() {
                return;
            }
            if i >= j {
                i = 0;
                j += 1;
                continue;
            }
            let bl = self.block_of(self.pts[i], self.pts[j]);
            if self.chosen.contains(&bl) || self.forbidden.contains(&bl) {
                i += 1;
                continue;
            }
            break;
        }
        let bl = self.block_of(self.pts[i], self.pts[j]);
        // Take the block.
        let new: Vec<usize> =
            bl.iter().map(|&p| p as usize).filter(|&p| self.in_pts >> p & 1 == 0).collect();
        let fits = self.pts.len() + new.len() <= self.t.w
            && bl.iter().all(|&p| self.deg[p as usize] < self.t.max_degree);
        if fits {
            for &p in &new {
                self.pts.push(p);
                self.in_pts |= 1 << p;
            }
            bl.iter().for_each(|&p| self.deg[p as usize] += 1);
            self.chosen.push(bl);
            self.grow(i + 1, j);
            self.chosen.pop();
            bl.iter().for_each(|&p| self.deg[p as usize] -= 1);
            for &p in &new {
                self.pts.pop();
                self.in_pts &= !(1 << p);
            }
        }
        // Forbid it.
        self.forbidden.insert(bl);
        self.grow(i + 1, j);
        self.forbidden.remove(&bl);
    }

    fn leaf(&mut self) {
        if self.pts.len() != self.t.w {
            return;
        }
        let mut blocks = self.chosen.clone();
        blocks.sort_unstable();
        if self.seen.contains(&blocks) || !self.t.matches(&blocks) || !self.least_generator(&blocks) {
            return;
        }
        self.seen.insert(blocks.clone());
        self.out.push(blocks);
    }

    // Is `v0` the least `m`-subset of the occurrence's points generating it?
    fn least_generator(&self, blocks: &[Block]) -> bool {
        let c = blocks_configuration(blocks);
        let mut pts: Vec<usize> = blocks.iter().flatten().map(|&p| p as usize).collect();
        pts.sort_unstable();
        pts.dedup();
        let local_v0 = pts
            .iter()
            .enumerate()
            .filter(|&(_, &p)| self.v0 >> p & 1 == 1)
            .fold(0 as PointSet, |acc, (i, _)| acc | 1 << i);
        let mut first = None;
        for_each_subset(pts.len(), self.m, |s| {
            if first.is_none() && c.generates(s) {
                first = Some(s);
            }
        });
        first == Some(local_v0)
    }
}
