//! Steiner triple systems with constant-time pair and triple queries.
//!
//! Points are the dense integers `0..v`. Besides the block list, a system
//! keeps a `v × v` table mapping every ordered pair of distinct points to the
//! third point of the block containing them; the diagonal holds the sentinel
//! `v`. Both `pair_third` and `has_block` are single table reads.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A point of a Steiner triple system.
pub type Point = u32;

/// A block, stored sorted ascending.
pub type Block = [Point; 3];

/// True iff an STS of order `v` exists, i.e. `v ≡ 1 or 3 (mod 6)`.
pub fn admissible_order(v: usize) -> bool {
    matches!(v % 6, 1 | 3)
}

/// Number of blocks of an STS(v).
pub fn block_count(v: usize) -> usize {
    v * v.saturating_sub(1) / 6
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTripleSystem {
    v: usize,
    blocks: Vec<Block>,
    pair_table: Vec<Point>,
}

impl SteinerTripleSystem {
    /// Validates `blocks` as an STS(v) and builds the pair table.
    ///
    /// Blocks are stored in canonical order: each block sorted ascending and
    /// the list sorted lexicographically.
    pub fn new(v: usize, blocks: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        if !admissible_order(v) {
            return Err(Error::InadmissibleOrder(v));
        }
        let sentinel = v as Point;
        let mut pair_table = vec![sentinel; v * v];
        let mut sorted = Vec::new();
        let mut doubled = Vec::new();
        for raw in blocks {
            for &p in &raw {
                if p >= v {
                    return Err(Error::PointOutOfRange { point: p, v });
                }
            }
            let mut b = raw;
            b.sort_unstable();
            if b[0] == b[1] || b[1] == b[2] {
                return Err(Error::DegenerateBlock(raw[0], raw[1], raw[2]));
            }
            for (x, y, z) in [(b[0], b[1], b[2]), (b[0], b[2], b[1]), (b[1], b[2], b[0])] {
                if pair_table[x * v + y] != sentinel {
                    doubled.push((x, y));
                    continue;
                }
                pair_table[x * v + y] = z as Point;
                pair_table[y * v + x] = z as Point;
            }
            sorted.push([b[0] as Point, b[1] as Point, b[2] as Point]);
        }
        if !doubled.is_empty() {
            doubled.sort_unstable();
            doubled.dedup();
            return Err(Error::PairsCoveredTwice(doubled));
        }
        let expected = block_count(v);
        if sorted.len() != expected {
            return Err(Error::BlockCount { found: sorted.len(), expected });
        }
        sorted.sort_unstable();
        Ok(SteinerTripleSystem { v, blocks: sorted, pair_table })
    }

    /// The order `v`.
    pub fn order(&self) -> usize {
        self.v
    }

    /// Blocks in canonical order.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// The third point of the block through `x` and `y`.
    ///
    /// Panics in debug builds if `x == y`.
    #[inline(always)]
    pub fn pair_third(&self, x: Point, y: Point) -> Point {
        debug_assert!(x != y, "pair_third called with x = y = {x}");
        self.pair_table[x as usize * self.v + y as usize]
    }

    /// True iff `{x, y, z}` is a block. Degenerate triples are never blocks.
    #[inline(always)]
    pub fn has_block(&self, x: Point, y: Point, z: Point) -> bool {
        // The diagonal sentinel `v` never equals a point, so x = y fails here;
        // a stored third point differs from both of its pair.
        self.pair_table[x as usize * self.v + y as usize] == z
    }

    /// The raw pair table, row-major, `v` on the diagonal.
    pub fn pair_table(&self) -> &[Point] {
        &self.pair_table
    }

    /// Applies a point permutation (`perm[x]` is the image of `x`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.v {
            return Err(Error::InvalidArgument(format!(
                "permutation of length {} for order {}",
                perm.len(),
                self.v
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| [perm[b[0] as usize], perm[b[1] as usize], perm[b[2] as usize]]);
        SteinerTripleSystem::new(self.v, blocks)
    }

    /// Number of blocks through each point.
    pub fn replication(&self) -> Vec<usize> {
        let mut r = vec![0; self.v];
        for b in &self.blocks {
            for &p in b {
                r[p as usize] += 1;
            }
        }
        r
    }

    /// Serializes in the text format: the order, then one block per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(12 * self.blocks.len() + 8);
        let _ = writeln!(out, "{}", self.v);
        for b in &self.blocks {
            let _ = writeln!(out, "{} {} {}", b[0], b[1], b[2]);
        }
        out
    }

    /// Parses the text format. `#` lines and blank lines are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut v = None;
        let mut blocks = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("`{s}` is not a nonnegative integer"),
                })
            };
            match v {
                None => {
                    if fields.len() != 1 {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "expected the order `v` on its own line".into(),
                        });
                    }
                    let order = parse(fields[0])?;
                    if !admissible_order(order) {
                        return Err(Error::InadmissibleOrder(order));
                    }
                    v = Some(order);
                }
                Some(_) => {
                    if fields.len() != 3 {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("expected 3 points per block, found {}", fields.len()),
                        });
                    }
                    blocks.push([parse(fields[0])?, parse(fields[1])?, parse(fields[2])?]);
                }
            }
        }
        let v = v.ok_or(Error::Parse { line: 0, msg: "missing order line".into() })?;
        SteinerTripleSystem::new(v, blocks)
    }
}

/// The Fano plane with the standard labeling used throughout the tests.
pub fn fano_plane() -> SteinerTripleSystem {
    SteinerTripleSystem::new(
        7,
        [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
    )
    .expect("the Fano plane is an STS(7)")
}

/// The affine plane AG(2,3), the unique STS(9).
pub fn affine_plane_9() -> SteinerTripleSystem {
    // Points (x, y) ∈ Z_3², encoded 3x + y; lines are the cosets of the four
    // one-dimensional subspaces.
    let mut blocks = Vec::new();
    let dirs = [(0, 1), (1, 0), (1, 1), (1, 2)];
    for (dx, dy) in dirs {
        let mut seen = [false; 9];
        for start in 0..9 {
            if seen[start] {
                continue;
            }
            let (x0, y0) = (start / 3, start % 3);
            let mut line = [0usize; 3];
            for (t, slot) in line.iter_mut().enumerate() {
                let p = 3 * ((x0 + t * dx) % 3) + (y0 + t * dy) % 3;
                seen[p] = true;
                *slot = p;
            }
            blocks.push(line);
        }
    }
    SteinerTripleSystem::new(9, blocks).expect("AG(2,3) is an STS(9)")
}

/// The projective triple system PG(n−1, 2) on `2^n − 1` points.
///
/// Points are the nonzero vectors of GF(2)^n (shifted down by one); blocks
/// are the triples `{x, y, x ⊕ y}`.
pub fn projective_system(n: u32) -> SteinerTripleSystem {
    let v = (1usize << n) - 1;
    let mut blocks = Vec::new();
    for x in 1..=v {
        for y in x + 1..=v {
            let z = x ^ y;
            if z > y {
                blocks.push([x - 1, y - 1, z - 1]);
            }
        }
    }
    SteinerTripleSystem::new(v, blocks).expect("PG(n-1,2) is an STS")
}
