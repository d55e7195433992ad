//! Canonical labeling by branch and bound over point orderings.
//!
//! Points receive the labels `0, 1, 2, …` one at a time. Giving label `k` to
//! a point `x` fixes the step key of `k`: the sorted list of label pairs
//! `(j, i)`, `i < j < k`, such that `{i, j, x}` is a line, followed by the
//! degree of `x`. A labeling is scored by the sequence of its step keys and
//! the canonical labeling is the minimum. Keys compare their pair lists
//! element-wise, a list that extends another is smaller, and among equal
//! lists the larger degree is smaller. Ignoring the degree, this is the
//! lexicographically least list of lines written as descending triples.
//!
//! Only candidates attaining the least key at each step are branched on, so
//! the search visits few more leaves than the configuration has
//! automorphisms. Automorphisms found at equal leaves prune the first level.

use std::cmp::Ordering;
use std::fmt;

use super::Configuration;

const UNLABELED: u8 = u8::MAX;
const MAX_DEGREE: usize = 32;

/// Canonical representative of an isomorphism class: lines over labels
/// `0..w`, each sorted ascending, the list in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub w: usize,
    pub lines: Vec<[u8; 3]>,
}

impl CanonicalForm {
    pub fn to_configuration(&self) -> Configuration {
        Configuration::new(
            self.w,
            self.lines.iter().map(|l| [l[0] as usize, l[1] as usize, l[2] as usize]),
        )
        .expect("canonical forms are valid configurations")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.lines.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}{}", l[0], l[1], l[2])?;
        }
        Ok(())
    }
}

/// A canonical form together with the labeling that produced it.
#[derive(Clone, Debug)]
pub struct CanonicalLabeling {
    pub form: CanonicalForm,
    /// `label[x]` is the canonical label of original point `x`.
    pub label: Vec<u8>,
    /// `order[k]` is the original point carrying canonical label `k`.
    pub order: Vec<u8>,
}

impl CanonicalLabeling {
    /// The line that comes last when the canonical lines are written as
    /// descending triples, in original point names.
    pub fn last_line(&self) -> [u8; 3] {
        let last = self
            .form
            .lines
            .iter()
            .max_by_key(|l| (l[2], l[1], l[0]))
            .expect("configuration has lines");
        let mut l = [self.order[last[0] as usize], self.order[last[1] as usize], self.order[last[2] as usize]];
        l.sort_unstable();
        l
    }
}

#[derive(Clone, Copy)]
struct StepKey {
    len: u8,
    deg: u8,
    pairs: [u16; MAX_DEGREE],
}

impl StepKey {
    fn pairs(&self) -> &[u16] {
        &self.pairs[..self.len as usize]
    }
}

impl PartialEq for StepKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_key(other) == Ordering::Equal
    }
}

impl StepKey {
    fn cmp_key(&self, other: &Self) -> Ordering {
        let (a, b) = (self.pairs(), other.pairs());
        for (x, y) in a.iter().zip(b) {
            match x.cmp(y) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        // The longer list wins: its next line precedes anything later.
        b.len().cmp(&a.len()).then(other.deg.cmp(&self.deg))
    }
}

struct Search<'a> {
    w: usize,
    degrees: &'a [u8],
    through: Vec<Vec<(u8, u8)>>,
    label: Vec<u8>,
    order: Vec<u8>,
    keys: Vec<StepKey>,
    best_keys: Vec<StepKey>,
    best_order: Vec<u8>,
    has_best: bool,
    eq_len: usize,
    orbit: Vec<u8>,
}

impl<'a> Search<'a> {
    fn find(&mut self, x: u8) -> u8 {
        let mut r = x;
        while self.orbit[r as usize] != r {
            r = self.orbit[r as usize];
        }
        let mut y = x;
        while self.orbit[y as usize] != r {
            let next = self.orbit[y as usize];
            self.orbit[y as usize] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: u8, b: u8) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.orbit[hi as usize] = lo;
        }
    }

    fn key_of(&self, x: usize) -> StepKey {
        let mut key = StepKey { len: 0, deg: self.degrees[x], pairs: [0; MAX_DEGREE] };
        for &(q, r) in &self.through[x] {
            let (lq, lr) = (self.label[q as usize], self.label[r as usize]);
            if lq != UNLABELED && lr != UNLABELED {
                let (hi, lo) = if lq > lr { (lq, lr) } else { (lr, lq) };
                key.pairs[key.len as usize] = (hi as u16) << 6 | lo as u16;
                key.len += 1;
            }
        }
        key.pairs[..key.len as usize].sort_unstable();
        key
    }

    fn push(&mut self, x: usize, key: StepKey) {
        let k = self.keys.len();
        self.label[x] = k as u8;
        self.order.push(x as u8);
        if self.has_best && self.eq_len == k && key.cmp_key(&self.best_keys[k]) == Ordering::Equal {
            self.eq_len = k + 1;
        }
        self.keys.push(key);
    }

    fn pop(&mut self) {
        let x = self.order.pop().unwrap();
        self.label[x as usize] = UNLABELED;
        self.keys.pop();
        self.eq_len = self.eq_len.min(self.keys.len());
    }

    fn leaf(&mut self) {
        if !self.has_best || self.eq_len < self.w {
            self.best_keys = self.keys.clone();
            self.best_order = self.order.clone();
            self.has_best = true;
            self.eq_len = self.w;
        } else {
            for i in 0..self.w {
                let (a, b) = (self.order[i], self.best_order[i]);
                self.union(a, b);
            }
        }
    }

    fn descend(&mut self) {
        let k = self.keys.len();
        if k == self.w {
            self.leaf();
            return;
        }
        let mut best: Option<StepKey> = None;
        let mut cands: Vec<(usize, StepKey)> = Vec::new();
        for x in 0..self.w {
            if self.label[x] != UNLABELED {
                continue;
            }
            let key = self.key_of(x);
            match best.as_ref().map(|b| key.cmp_key(b)) {
                None | Some(Ordering::Less) => {
                    best = Some(key);
                    cands.clear();
                    cands.push((x, key));
                }
                Some(Ordering::Equal) => cands.push((x, key)),
                Some(Ordering::Greater) => {}
            }
        }
        let min_key = best.expect("an unlabeled point remains");
        if self.has_best && self.eq_len == k && min_key.cmp_key(&self.best_keys[k]) == Ordering::Greater {
            return;
        }
        let mut tried: Vec<u8> = Vec::new();
        for (x, key) in cands {
            if k == 0 {
                let r = self.find(x as u8);
                if tried.contains(&r) {
                    continue;
                }
                tried.push(r);
            }
            self.push(x, key);
            self.descend();
            self.pop();
            if k == 0 {
                // Orbits may have merged below; re-root the recorded classes.
                for t in tried.iter_mut() {
                    *t = self.find(*t);
                }
            }
        }
    }
}

/// Computes the canonical labeling of `cfg`.
pub fn canonical_labeling(cfg: &Configuration) -> CanonicalLabeling {
    let w = cfg.points();
    let mut through = vec![Vec::new(); w];
    for l in cfg.lines() {
        through[l[0] as usize].push((l[1], l[2]));
        through[l[1] as usize].push((l[0], l[2]));
        through[l[2] as usize].push((l[0], l[1]));
    }
    let mut search = Search {
        w,
        degrees: cfg.degrees(),
        through,
        label: vec![UNLABELED; w],
        order: Vec::with_capacity(w),
        keys: Vec::with_capacity(w),
        best_keys: Vec::new(),
        best_order: Vec::new(),
        has_best: false,
        eq_len: 0,
        orbit: (0..w as u8).collect(),
    };
    if w > 0 {
        search.descend();
    }
    let order = search.best_order;
    let mut label = vec![0u8; w];
    for (k, &x) in order.iter().enumerate() {
        label[x as usize] = k as u8;
    }
    let mut lines: Vec<[u8; 3]> = cfg
        .lines()
        .iter()
        .map(|l| {
            let mut m = [label[l[0] as usize], label[l[1] as usize], label[l[2] as usize]];
            m.sort_unstable();
            m
        })
        .collect();
    lines.sort_unstable();
    CanonicalLabeling { form: CanonicalForm { w, lines }, label, order }
}
