//! Small configurations: partial linear spaces with lines of size three.
//!
//! Points are `0..w` (at most 64, so point sets fit in a `u64` mask).
//! Every pair of points lies on at most one line and every point lies on at
//! least one line.

mod builtin;
mod canon;
mod group;

use std::fmt::Write as _;

pub use builtin::{builtin, builtin_names, parse_point_name, point_name, BUILTIN_NAMES};
pub use canon::{canonical_labeling, CanonicalForm, CanonicalLabeling};
pub use group::PermGroup;

use crate::error::{Error, Result};

/// A point set as a bit mask.
pub type PointSet = u64;

/// Largest supported number of points.
pub const MAX_POINTS: usize = 64;

const NO_LINE: u8 = u8::MAX;

#[derive(Clone, Debug)]
pub struct Configuration {
    w: usize,
    lines: Vec<[u8; 3]>,
    name: Option<String>,
    // `third[x * w + y]` is the third point of the line through x and y.
    third: Vec<u8>,
    degrees: Vec<u8>,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.w == other.w && self.lines == other.lines
    }
}

impl Eq for Configuration {}

/// Fullness and regularity of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_full: bool,
    pub is_w3: bool,
}

impl Configuration {
    /// Builds a configuration on points `0..w` from its lines.
    pub fn new(w: usize, lines: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        if w > MAX_POINTS {
            return Err(Error::InvalidConfiguration(format!(
                "{w} points exceed the limit of {MAX_POINTS}"
            )));
        }
        let mut third = vec![NO_LINE; w * w];
        let mut degrees = vec![0u8; w];
        let mut stored = Vec::new();
        for raw in lines {
            if let Some(&p) = raw.iter().find(|&&p| p >= w) {
                return Err(Error::PointOutOfRange { point: p, v: w });
            }
            let mut l = raw;
            l.sort_unstable();
            if l[0] == l[1] || l[1] == l[2] {
                return Err(Error::DegenerateBlock(raw[0], raw[1], raw[2]));
            }
            for (x, y, z) in [(l[0], l[1], l[2]), (l[0], l[2], l[1]), (l[1], l[2], l[0])] {
                if third[x * w + y] != NO_LINE {
                    return Err(Error::PairsCoveredTwice(vec![(x, y)]));
                }
                third[x * w + y] = z as u8;
                third[y * w + x] = z as u8;
            }
            for &p in &l {
                degrees[p] += 1;
            }
            stored.push([l[0] as u8, l[1] as u8, l[2] as u8]);
        }
        if let Some(p) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::InvalidConfiguration(format!("point {p} lies on no line")));
        }
        stored.sort_unstable();
        Ok(Configuration { w, lines: stored, name: None, third, degrees })
    }

    /// Builds a configuration from lines over arbitrary point labels,
    /// renumbering the points densely in increasing label order.
    pub fn from_lines(lines: &[[usize; 3]]) -> Result<Self> {
        let mut labels: Vec<usize> = lines.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let index = |p: usize| labels.binary_search(&p).expect("label present");
        Configuration::new(labels.len(), lines.iter().map(|l| [index(l[0]), index(l[1]), index(l[2])]))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of points `w`.
    pub fn points(&self) -> usize {
        self.w
    }

    /// Number of lines `b`.
    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    /// Lines, each sorted ascending, in lexicographic order.
    pub fn lines(&self) -> &[[u8; 3]] {
        &self.lines
    }

    pub fn degrees(&self) -> &[u8] {
        &self.degrees
    }

    /// All points as a mask.
    pub fn all_points(&self) -> PointSet {
        if self.w == 64 {
            u64::MAX
        } else {
            (1u64 << self.w) - 1
        }
    }

    /// The third point on the line through `x` and `y`, if any.
    #[inline]
    pub fn third(&self, x: usize, y: usize) -> Option<usize> {
        match self.third[x * self.w + y] {
            NO_LINE => None,
            z => Some(z as usize),
        }
    }

    /// Index of the line containing `x` and `y`, if any.
    pub fn line_index(&self, x: usize, y: usize) -> Option<usize> {
        let z = self.third(x, y)?;
        let mut l = [x as u8, y as u8, z as u8];
        l.sort_unstable();
        self.lines.binary_search(&l).ok()
    }

    /// Least superset of `start` closed under completing lines that already
    /// have two points in the set.
    pub fn closure(&self, start: PointSet) -> PointSet {
        let mut set = start & self.all_points();
        loop {
            let before = set;
            for l in &self.lines {
                let inside = (0..3).filter(|&i| set >> l[i] & 1 == 1).count();
                if inside >= 2 {
                    set |= (1 << l[0]) | (1 << l[1]) | (1 << l[2]);
                }
            }
            if set == before {
                return set;
            }
        }
    }

    /// Lines reached while closing `start`: those that at some stage had two
    /// points inside the growing set.
    pub fn generated_lines(&self, start: PointSet) -> usize {
        let closed = self.closure(start);
        self.lines
            .iter()
            .filter(|l| l.iter().filter(|&&p| closed >> p & 1 == 1).count() >= 2)
            .count()
    }

    /// True iff `start` generates the whole configuration: its closure is
    /// every point and every line is reached on the way.
    pub fn generates(&self, start: PointSet) -> bool {
        self.closure(start) == self.all_points() && self.generated_lines(start) == self.lines.len()
    }

    pub fn classify(&self) -> Classification {
        let is_full = self.degrees.iter().all(|&d| d >= 2);
        let is_w3 = self.lines.len() == self.w && self.degrees.iter().all(|&d| d == 3);
        Classification { is_full, is_w3 }
    }

    /// Minimum generating set size and every generating set of that size,
    /// each as a mask, in lexicographic order of their sorted point lists.
    pub fn minimum_generating_sets(&self) -> (usize, Vec<PointSet>) {
        for k in 0..=self.w {
            let mut found = Vec::new();
            for_each_subset(self.w, k, |set| {
                if self.generates(set) {
                    found.push(set);
                }
            });
            if !found.is_empty() {
                return (k, found);
            }
        }
        unreachable!("the full point set generates")
    }

    /// Size of a smallest generating set.
    pub fn generating_number(&self) -> usize {
        for k in 0..=self.w {
            let mut hit = false;
            for_each_subset(self.w, k, |set| hit = hit || self.generates(set));
            if hit {
                return k;
            }
        }
        self.w
    }

    /// Relabels points: `perm[x]` is the new label of `x`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.w {
            return Err(Error::InvalidArgument("permutation length differs from w".into()));
        }
        let lines = self
            .lines
            .iter()
            .map(|l| [perm[l[0] as usize], perm[l[1] as usize], perm[l[2] as usize]]);
        let mut c = Configuration::new(self.w, lines)?;
        c.name = self.name.clone();
        Ok(c)
    }

    /// The canonical representative of this isomorphism class.
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_labeling(self).form
    }

    pub fn is_isomorphic(&self, other: &Configuration) -> bool {
        self.w == other.w
            && self.lines.len() == other.lines.len()
            && sorted_degrees(self) == sorted_degrees(other)
            && self.canonical_form() == other.canonical_form()
    }

    /// All point permutations mapping the line set onto itself.
    pub fn automorphism_group(&self) -> PermGroup {
        group::automorphisms(self)
    }

    /// Disjoint union, with `other`'s points shifted past this one's.
    pub fn disjoint_union(&self, other: &Configuration) -> Result<Self> {
        let shift = self.w;
        let lines = self
            .lines
            .iter()
            .map(|l| [l[0] as usize, l[1] as usize, l[2] as usize])
            .chain(
                other
                    .lines
                    .iter()
                    .map(|l| [l[0] as usize + shift, l[1] as usize + shift, l[2] as usize + shift]),
            );
        Configuration::new(self.w + other.w, lines)
    }

    /// Removes the points and lines of a proper `n_3` subconfiguration of a
    /// `w_3` configuration, leaving a `(w−n)_3` configuration.
    ///
    /// `sub` lists indices into [`Configuration::lines`].
    pub fn remove_subconfiguration(&self, sub: &[usize]) -> Result<Self> {
        if !self.classify().is_w3 {
            return Err(Error::InvalidConfiguration("outer configuration is not w_3".into()));
        }
        let mut chosen = vec![false; self.lines.len()];
        for &i in sub {
            if i >= self.lines.len() || chosen[i] {
                return Err(Error::InvalidArgument(format!("bad or repeated line index {i}")));
            }
            chosen[i] = true;
        }
        if sub.is_empty() || sub.len() == self.lines.len() {
            return Err(Error::InvalidConfiguration("subconfiguration is not proper".into()));
        }
        let sub_lines: Vec<[usize; 3]> = sub
            .iter()
            .map(|&i| {
                let l = self.lines[i];
                [l[0] as usize, l[1] as usize, l[2] as usize]
            })
            .collect();
        let inner = Configuration::from_lines(&sub_lines)?;
        if !inner.classify().is_w3 {
            return Err(Error::InvalidConfiguration("removed lines do not form an n_3 configuration".into()));
        }
        let removed: PointSet = sub_lines.iter().flatten().fold(0, |m, &p| m | 1 << p);
        let rest: Vec<[usize; 3]> = self
            .lines
            .iter()
            .enumerate()
            .filter(|(i, _)| !chosen[*i])
            .map(|(_, l)| [l[0] as usize, l[1] as usize, l[2] as usize])
            .collect();
        if rest.iter().flatten().any(|&p| removed >> p & 1 == 1) {
            return Err(Error::InvalidConfiguration(
                "remaining lines meet the removed points".into(),
            ));
        }
        Configuration::from_lines(&rest)
    }

    /// Text format: `w b`, then one line `x y z` per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.w, self.lines.len());
        for l in &self.lines {
            let _ = writeln!(out, "{} {} {}", l[0], l[1], l[2]);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|s| {
                    s.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("`{s}` is not a nonnegative integer"),
                    })
                })
                .collect::<Result<_>>()?;
            match header {
                None if nums.len() == 2 => header = Some((nums[0], nums[1])),
                None => {
                    return Err(Error::Parse { line: line_no, msg: "expected header `w b`".into() })
                }
                Some(_) if nums.len() == 3 => lines.push([nums[0], nums[1], nums[2]]),
                Some(_) => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("expected 3 points per line, found {}", nums.len()),
                    })
                }
            }
        }
        let (w, b) = header.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        if lines.len() != b {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header announces {b} lines, found {}", lines.len()),
            });
        }
        Configuration::new(w, lines)
    }
}

pub(crate) fn sorted_degrees(c: &Configuration) -> Vec<u8> {
    let mut d = c.degrees.clone();
    d.sort_unstable();
    d
}

/// Calls `f` with every `k`-subset of `0..n` as a mask, in lexicographic
/// order of the sorted element lists.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(PointSet)) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(idx.iter().fold(0, |m, &i| m | 1 << i));
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Points of a mask in increasing order.
pub fn mask_points(mask: PointSet) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(p)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pasch() -> Configuration {
        builtin("pasch").unwrap()
    }

    // Letters a..i map to 0..8.
    const A: usize = 0;
    const B: usize = 1;
    const E: usize = 4;
    const F: usize = 5;

    #[test]
    fn pasch_closure() {
        let p = pasch();
        let abf = 1 << A | 1 << B | 1 << F;
        assert_eq!(p.closure(abf), p.all_points());
        assert_eq!(p.closure(1 << A | 1 << B), 1 << A | 1 << B | 1 << E);
        assert_eq!(p.closure(1 << A), 1 << A);
        assert_eq!(p.closure(0), 0);
        assert!(p.generates(abf));
        assert!(!p.generates(1 << A | 1 << B | 1 << E));
    }

    #[test]
    fn classification() {
        assert_eq!(pasch().classify(), Classification { is_full: true, is_w3: false });
        assert_eq!(builtin("fano").unwrap().classify(), Classification { is_full: true, is_w3: true });
        let single = Configuration::new(3, [[0, 1, 2]]).unwrap();
        assert_eq!(single.classify(), Classification { is_full: false, is_w3: false });
    }

    #[test]
    fn generating_sets_of_builtins() {
        let (m, sets) = builtin("fano").unwrap().minimum_generating_sets();
        assert_eq!((m, sets.len()), (3, 28));
        let (m, sets) = pasch().minimum_generating_sets();
        assert_eq!((m, sets.len()), (3, 16));
        let (m, sets) = builtin("prism").unwrap().minimum_generating_sets();
        assert_eq!((m, sets.len()), (4, 75));
    }

    #[test]
    fn two_fanos_need_six_generators() {
        let fano = builtin("fano").unwrap();
        let two = fano.disjoint_union(&fano).unwrap();
        assert_eq!(two.points(), 14);
        assert!(two.classify().is_w3);
        assert_eq!(two.generating_number(), 6);
    }

    #[test]
    fn remove_fano_from_two_fanos() {
        let fano = builtin("fano").unwrap();
        let two = fano.disjoint_union(&fano).unwrap();
        let first: Vec<usize> = (0..two.num_lines()).filter(|&i| two.lines()[i][0] < 7).collect();
        let rest = two.remove_subconfiguration(&first).unwrap();
        assert!(rest.is_isomorphic(&fano));
        assert!(rest.classify().is_w3);

        // Three lines through one point do not form an n_3 configuration.
        let err = two.remove_subconfiguration(&[0, 1, 2]).unwrap_err();
        assert!(matches!(err, Error::InvalidConfiguration(_)), "{err:?}");
        assert!(two.remove_subconfiguration(&(0..14).collect::<Vec<_>>()).is_err());
    }

    #[test]
    fn rejects_invalid() {
        assert!(Configuration::new(4, [[0, 1, 2], [0, 1, 3]]).is_err());
        assert!(Configuration::new(4, [[0, 1, 2]]).is_err());
        assert!(Configuration::new(3, [[0, 1, 3]]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = builtin("mitre").unwrap();
        let back = Configuration::from_text(&c.to_text()).unwrap();
        assert_eq!(back, c);
        assert!(Configuration::from_text("3 2\n0 1 2\n").is_err());
    }

    #[test]
    fn subsets_in_lex_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |m| seen.push(mask_points(m).collect::<Vec<_>>()));
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut n = 0;
        for_each_subset(5, 0, |_| n += 1);
        assert_eq!(n, 1);
        for_each_subset(2, 3, |_| n += 1);
        assert_eq!(n, 1);
    }
}
