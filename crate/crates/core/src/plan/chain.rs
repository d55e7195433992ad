//! Ordered generating sets up to symmetry and the orbit/stabilizer chains
//! that turn symmetry into pairwise inequalities.

use std::collections::BTreeSet;

use crate::config::{mask_points, Configuration, PermGroup};

/// Whether `z_i` is the least or the greatest point of its orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extremum {
    Min,
    Max,
}

/// Orbits and stabilizer orders along an ordered generating tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitChain {
    pub z: Vec<usize>,
    pub e: Vec<Extremum>,
    /// `orbits[i]` is `O_{i+1}`, sorted. Only the first `depth` positions.
    pub orbits: Vec<Vec<usize>>,
    /// `stabilizer_orders[i]` is `|Γ_i|`, starting with `|Γ_0| = |Γ|`.
    pub stabilizer_orders: Vec<usize>,
    /// Number of positions whose orbits were determined.
    pub depth: usize,
    /// Times each occurrence is met: `|Γ_depth|`.
    pub q: usize,
}

impl OrbitChain {
    /// Builds the chain for the first `depth` positions of `z`.
    pub fn new(group: &PermGroup, z: &[usize], e: &[Extremum], depth: usize) -> Self {
        assert_eq!(z.len(), e.len());
        assert!(depth <= z.len());
        let mut g = group.clone();
        let mut orbits = Vec::with_capacity(depth);
        let mut orders = vec![g.order()];
        for &zi in &z[..depth] {
            orbits.push(g.orbit(zi));
            g = g.stabilizer(zi);
            orders.push(g.order());
        }
        OrbitChain { z: z.to_vec(), e: e.to_vec(), orbits, stabilizer_orders: orders, depth, q: g.order() }
    }

    /// Strict inequalities `(lo, hi)` meaning `lo < hi`, one for every other
    /// point of each determined orbit.
    pub fn inequalities(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, orbit) in self.orbits.iter().enumerate() {
            let zi = self.z[i];
            for &p in orbit {
                if p != zi {
                    out.push(match self.e[i] {
                        Extremum::Min => (zi, p),
                        Extremum::Max => (p, zi),
                    });
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// The strict order generated by `pairs` on `0..w`, as reachability masks:
/// bit `q` of `above[p]` is set iff `p < q` follows from the pairs.
pub fn order_closure(w: usize, pairs: &[(usize, usize)]) -> Vec<u64> {
    let mut above = vec![0u64; w];
    for &(lo, hi) in pairs {
        above[lo] |= 1 << hi;
    }
    // Warshall on bit rows.
    for k in 0..w {
        for p in 0..w {
            if above[p] >> k & 1 == 1 {
                above[p] |= above[k];
            }
        }
    }
    above
}

/// Removes every inequality implied by the others through transitivity.
pub fn transitive_reduction(w: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let above = order_closure(w, pairs);
    let mut out: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(lo, hi)| !mask_points(above[lo]).any(|mid| mid != hi && above[mid] >> hi & 1 == 1))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Orbit chain and reduced inequalities for `(Z, E)` with every position
/// determined.
pub fn derive_constraints(
    cfg: &Configuration,
    z: &[usize],
    e: &[Extremum],
) -> (OrbitChain, Vec<(usize, usize)>) {
    let group = cfg.automorphism_group();
    let chain = OrbitChain::new(&group, z, e, z.len());
    let reduced = transitive_reduction(cfg.points(), &chain.inequalities());
    (chain, reduced)
}

/// All orderings of `items`, in lexicographic order of positions.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// One lexicographically least representative of every `Γ`-orbit on the
/// ordered minimum generating tuples, sorted.
pub fn ordered_genset_transversal(cfg: &Configuration) -> Vec<Vec<usize>> {
    let group = cfg.automorphism_group();
    let (_, sets) = cfg.minimum_generating_sets();
    transversal(&group, &sets)
}

pub(crate) fn transversal(group: &PermGroup, sets: &[u64]) -> Vec<Vec<usize>> {
    let mut reps = BTreeSet::new();
    for &set in sets {
        let pts: Vec<usize> = mask_points(set).collect();
        for t in permutations(&pts) {
            if group.tuple_images(&t).all(|img| img >= t) {
                reps.insert(t);
            }
        }
    }
    reps.into_iter().collect()
}

/// The structural columns of the generated-algorithm table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSetSummary {
    pub b: usize,
    pub w: usize,
    pub m: usize,
    pub aut: usize,
    /// Minimum generating sets.
    pub sets: usize,
    /// Ordered minimum generating tuples.
    pub ordered: usize,
    /// Orbits of ordered tuples under the automorphism group.
    pub orbits: usize,
}

pub fn summarize(cfg: &Configuration) -> GenSetSummary {
    let group = cfg.automorphism_group();
    let (m, sets) = cfg.minimum_generating_sets();
    let ordered = sets.len() * (1..=m).product::<usize>();
    GenSetSummary {
        b: cfg.num_lines(),
        w: cfg.points(),
        m,
        aut: group.order(),
        sets: sets.len(),
        ordered,
        orbits: transversal(&group, &sets).len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::builtin;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    const E: usize = 4;
    const F: usize = 5;
    const G: usize = 6;

    #[test]
    fn fano_worked_example() {
        let fano = builtin("fano").unwrap();
        let (chain, reduced) = derive_constraints(&fano, &[C, B, A], &[Extremum::Min; 3]);
        assert_eq!(chain.orbits[0], vec![A, B, C, D, E, F, G]);
        assert_eq!(chain.stabilizer_orders, vec![168, 24, 4, 1]);
        assert_eq!(chain.orbits[1], vec![A, B, D, E, F, G]);
        assert_eq!(chain.orbits[2], vec![A, D, E, G]);
        assert_eq!(chain.q, 1);
        let mut expect = vec![(C, B), (B, A), (A, D), (A, E), (A, G), (B, F)];
        expect.sort_unstable();
        assert_eq!(reduced, expect);
    }

    #[test]
    fn reduction_drops_implied() {
        assert_eq!(transitive_reduction(3, &[(0, 1), (1, 2), (0, 2)]), vec![(0, 1), (1, 2)]);
        assert_eq!(transitive_reduction(3, &[(0, 2)]), vec![(0, 2)]);
    }

    #[test]
    fn transversal_sizes() {
        assert_eq!(ordered_genset_transversal(&builtin("fano").unwrap()), vec![vec![A, B, C]]);
        assert_eq!(ordered_genset_transversal(&builtin("pasch").unwrap()).len(), 4);
        assert_eq!(ordered_genset_transversal(&builtin("crown").unwrap()).len(), 138);
    }

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(&[1, 2, 3]).len(), 6);
        assert_eq!(permutations(&[1, 2, 3])[1], vec![1, 3, 2]);
        assert_eq!(permutations(&[]), vec![Vec::<usize>::new()]);
    }
}
