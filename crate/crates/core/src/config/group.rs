//! Permutation groups stored as full element lists.
//!
//! Groups here have at most a few tens of thousands of elements, so orbits
//! and stabilizers are computed by scanning the elements.

use super::Configuration;

/// A permutation group of degree `w`. Element `g` maps `x` to `g[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Vec<u8>>,
}

impl PermGroup {
    /// Wraps a list of permutations known to form a group. The list is
    /// sorted, so the identity comes first.
    pub fn from_elements(degree: usize, mut elements: Vec<Vec<u8>>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        PermGroup { degree, elements }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, elements: vec![(0..degree as u8).collect()] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<u8>] {
        &self.elements
    }

    /// The orbit of `x`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.elements.iter().map(|g| g[x] as usize).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// The subgroup fixing `x`.
    pub fn stabilizer(&self, x: usize) -> PermGroup {
        PermGroup {
            degree: self.degree,
            elements: self.elements.iter().filter(|g| g[x] as usize == x).cloned().collect(),
        }
    }

    /// Images of a tuple under every element.
    pub fn tuple_images<'a>(&'a self, tuple: &'a [usize]) -> impl Iterator<Item = Vec<usize>> + 'a {
        self.elements.iter().map(move |g| tuple.iter().map(|&x| g[x] as usize).collect())
    }

    /// Checks closure under composition and inverses, and that the identity
    /// is present.
    pub fn is_group(&self) -> bool {
        let id: Vec<u8> = (0..self.degree as u8).collect();
        if self.elements.binary_search(&id).is_err() {
            return false;
        }
        let contains = |p: &Vec<u8>| self.elements.binary_search(p).is_ok();
        for g in &self.elements {
            let mut inv = vec![0u8; self.degree];
            for (x, &gx) in g.iter().enumerate() {
                inv[gx as usize] = x as u8;
            }
            if !contains(&inv) {
                return false;
            }
            for h in &self.elements {
                let gh: Vec<u8> = h.iter().map(|&hx| g[hx as usize]).collect();
                if !contains(&gh) {
                    return false;
                }
            }
        }
        true
    }
}

const NONE: u8 = u8::MAX;

struct AutSearch<'a> {
    cfg: &'a Configuration,
    order: Vec<usize>,
    image: Vec<u8>,
    used: Vec<bool>,
    found: Vec<Vec<u8>>,
}

impl AutSearch<'_> {
    // Every pair {p, q} with q already mapped must keep its incidence.
    fn consistent(&self, p: usize, img: usize) -> bool {
        let c = self.cfg;
        for q in 0..c.points() {
            let iq = self.image[q];
            if q == p || iq == NONE {
                continue;
            }
            let t = c.third(p, q);
            let it = c.third(img, iq as usize);
            match (t, it) {
                (None, None) => {}
                (Some(t), Some(it)) => {
                    let mapped = self.image[t];
                    if mapped != NONE {
                        if mapped as usize != it {
                            return false;
                        }
                    } else if self.used[it] {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    fn run(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.found.push(self.image.clone());
            return;
        }
        let p = self.order[depth];
        let deg = self.cfg.degrees()[p];
        for img in 0..self.cfg.points() {
            if self.used[img] || self.cfg.degrees()[img] != deg || !self.consistent(p, img) {
                continue;
            }
            self.image[p] = img as u8;
            self.used[img] = true;
            self.run(depth + 1);
            self.image[p] = NONE;
            self.used[img] = false;
        }
    }
}

/// All automorphisms of `cfg` by backtracking on point images.
pub(super) fn automorphisms(cfg: &Configuration) -> PermGroup {
    let w = cfg.points();
    // Breadth-first order over collinearity so later points are mostly
    // determined by earlier ones.
    let mut order = Vec::with_capacity(w);
    let mut seen = vec![false; w];
    for start in 0..w {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for q in 0..w {
                if !seen[q] && cfg.third(p, q).is_some() {
                    seen[q] = true;
                    order.push(q);
                }
            }
        }
    }
    let mut search = AutSearch { cfg, order, image: vec![NONE; w], used: vec![false; w], found: Vec::new() };
    search.run(0);
    PermGroup::from_elements(w, search.found)
}
