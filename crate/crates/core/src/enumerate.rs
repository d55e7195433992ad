//! Isomorph-free enumeration of full `n`-line and `w_3` configurations.
//!
//! Configurations grow one line at a time. A child is kept only when
//! deleting its canonically last line gives back (a copy of) its parent, so
//! every isomorphism class is reached from exactly one parent class;
//! isomorphic children of the same parent are merged by canonical form.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::config::{canonical_labeling, CanonicalForm, Configuration};
use crate::error::{Error, Result};

/// Largest line count accepted by [`enumerate_full`].
pub const MAX_FULL_LINES: usize = 9;
/// Largest point count accepted by [`enumerate_w3`].
pub const MAX_W3_POINTS: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Full,
    W3,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Full => "full",
            Kind::W3 => "w3",
        }
    }
}

struct Target {
    lines: usize,
    max_points: usize,
    kind: Kind,
}

impl Target {
    // Can `cfg` with `cfg.num_lines()` lines still grow into a target?
    fn viable(&self, cfg: &Configuration) -> bool {
        if cfg.points() > self.max_points {
            return false;
        }
        let remaining = self.lines - cfg.num_lines();
        match self.kind {
            Kind::Full => {
                let deficiency: usize =
                    cfg.degrees().iter().map(|&d| 2usize.saturating_sub(d as usize)).sum();
                deficiency <= 3 * remaining
            }
            Kind::W3 => cfg.degrees().iter().all(|&d| d <= 3),
        }
    }

    fn accepts(&self, cfg: &Configuration) -> bool {
        let c = cfg.classify();
        match self.kind {
            Kind::Full => c.is_full,
            Kind::W3 => c.is_w3,
        }
    }
}

fn without_line(cfg: &Configuration, line: [u8; 3]) -> Configuration {
    let rest: Vec<[usize; 3]> = cfg
        .lines()
        .iter()
        .filter(|&&l| l != line)
        .map(|l| [l[0] as usize, l[1] as usize, l[2] as usize])
        .collect();
    Configuration::from_lines(&rest).expect("a subset of lines is a configuration")
}

fn children(parent: &CanonicalForm, target: &Target) -> Vec<CanonicalForm> {
    let base = parent.to_configuration();
    let w = base.points();
    let mut lines: Vec<[usize; 3]> =
        base.lines().iter().map(|l| [l[0] as usize, l[1] as usize, l[2] as usize]).collect();
    let free = |x: usize, y: usize| base.third(x, y).is_none();
    let mut candidates = Vec::new();
    for x in 0..w {
        for y in x + 1..w {
            if !free(x, y) {
                continue;
            }
            for z in y + 1..w {
                if free(x, z) && free(y, z) {
                    candidates.push([x, y, z]);
                }
            }
            candidates.push([x, y, w]);
        }
        candidates.push([x, w, w + 1]);
    }
    candidates.push([w, w + 1, w + 2]);

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for cand in candidates {
        let points = w.max(cand[2] + 1);
        lines.push(cand);
        let child = Configuration::new(points, lines.iter().copied());
        lines.pop();
        let child = match child {
            Ok(c) => c,
            Err(_) => continue,
        };
        if !target.viable(&child) {
            continue;
        }
        let lab = canonical_labeling(&child);
        if seen.contains(&lab.form) {
            continue;
        }
        let added = [cand[0] as u8, cand[1] as u8, cand[2] as u8];
        let last = lab.last_line();
        if last != added && without_line(&child, last).canonical_form() != *parent {
            continue;
        }
        seen.insert(lab.form.clone());
        out.push(lab.form);
    }
    out
}

fn run(target: Target) -> Vec<Configuration> {
    let mut level = vec![Configuration::new(3, [[0, 1, 2]]).unwrap().canonical_form()];
    for _ in 1..target.lines {
        level = level.par_iter().flat_map_iter(|p| children(p, &target)).collect();
    }
    let mut out: Vec<CanonicalForm> =
        level.into_iter().filter(|f| target.accepts(&f.to_configuration())).collect();
    out.sort_unstable();
    out.iter().map(CanonicalForm::to_configuration).collect()
}

/// One representative per isomorphism class of full `n`-line configurations,
/// sorted by canonical form.
pub fn enumerate_full(n: usize) -> Result<Vec<Configuration>> {
    if !(4..=MAX_FULL_LINES).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "full enumeration supports 4 ≤ n ≤ {MAX_FULL_LINES}, got {n}"
        )));
    }
    Ok(run(Target { lines: n, max_points: 3 * n / 2, kind: Kind::Full }))
}

/// One representative per isomorphism class of `w_3` configurations,
/// sorted by canonical form.
pub fn enumerate_w3(w: usize) -> Result<Vec<Configuration>> {
    if !(7..=MAX_W3_POINTS).contains(&w) {
        return Err(Error::InvalidArgument(format!(
            "w_3 enumeration supports 7 ≤ w ≤ {MAX_W3_POINTS}, got {w}"
        )));
    }
    Ok(run(Target { lines: w, max_points: w, kind: Kind::W3 }))
}

pub fn enumerate(kind: Kind, param: usize) -> Result<Vec<Configuration>> {
    match kind {
        Kind::Full => enumerate_full(param),
        Kind::W3 => enumerate_w3(param),
    }
}

/// Class counts, automorphism group orders and minimum generating set sizes
/// of an enumerated family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumStats {
    pub kind: Kind,
    /// `n` for full configurations, `w` for `w_3` ones.
    pub param: usize,
    pub classes: usize,
    /// Group order → number of classes.
    pub aut_distribution: BTreeMap<usize, usize>,
    /// Minimum generating set size → number of classes.
    pub gen_size_distribution: BTreeMap<usize, usize>,
}

impl EnumStats {
    /// `N_k` for the table columns.
    pub fn gen_count(&self, k: usize) -> usize {
        self.gen_size_distribution.get(&k).copied().unwrap_or(0)
    }

    /// Group orders written as `order^count` in increasing order.
    pub fn aut_string(&self) -> String {
        let mut s = String::new();
        for (order, count) in &self.aut_distribution {
            if !s.is_empty() {
                s.push(' ');
            }
            let _ = write!(s, "{order}^{count}");
        }
        s
    }

    pub fn csv_header(&self) -> &'static str {
        match self.kind {
            Kind::Full => "n,N,aut,N3,N4,N5,N6,N7,N8,N9",
            Kind::W3 => "w,N,aut,N3,N4,N5,N6,N7,N8,N9",
        }
    }

    pub fn csv_row(&self) -> String {
        let mut s = format!("{},{},{}", self.param, self.classes, self.aut_string());
        for k in 3..=9 {
            let _ = write!(s, ",{}", self.gen_count(k));
        }
        s
    }
}

/// Statistics of a list of class representatives.
pub fn tabulate(kind: Kind, param: usize, configs: &[Configuration]) -> EnumStats {
    let per: Vec<(usize, usize)> = configs
        .par_iter()
        .map(|c| (c.automorphism_group().order(), c.generating_number()))
        .collect();
    let mut aut_distribution = BTreeMap::new();
    let mut gen_size_distribution = BTreeMap::new();
    for (a, g) in per {
        *aut_distribution.entry(a).or_insert(0) += 1;
        *gen_size_distribution.entry(g).or_insert(0) += 1;
    }
    EnumStats { kind, param, classes: configs.len(), aut_distribution, gen_size_distribution }
}
