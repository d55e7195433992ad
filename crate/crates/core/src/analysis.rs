//! Linear independence of configuration counts across random systems.
//!
//! Each system contributes the row `[1, c_1, …, c_r]` of its counts of every
//! full configuration with at most `n` lines. If the rows span a space of
//! dimension `r + 1`, no linear identity among the counts holds for all
//! systems.

use std::fmt::Write as _;
use std::ops::{Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};
use rayon::prelude::*;

use crate::config::{builtin, Configuration, BUILTIN_NAMES};
use crate::enumerate::enumerate_full;
use crate::error::{Error, Result};
use crate::exec::{list_occurrences, CompiledPlan};
use crate::plan::default_plan;
use crate::random::distinct_systems;
use crate::sts::{admissible_order, SteinerTripleSystem};

/// Rank by fraction-free (Bareiss) elimination. Every intermediate entry is
/// a minor of the input, so divisions are exact. Returns `None` if an
/// operation overflows `T`.
pub fn bareiss_rank<T>(rows: &[Vec<T>]) -> Option<usize>
where
    T: Clone + Zero + One + PartialEq + CheckedMul + CheckedSub + CheckedDiv,
{
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let n = a.len();
    let cols = a.iter().map(Vec::len).max().unwrap_or(0);
    for row in &mut a {
        row.resize(cols, T::zero());
    }
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                let x = pivot.checked_mul(&row[j])?;
                let y = lead.checked_mul(&pivot_row[j])?;
                row[j] = x.checked_sub(&y)?.checked_div(&prev)?;
            }
            row[col] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Rank by ordinary Gaussian elimination over a field.
pub fn field_rank<F>(rows: &[Vec<F>]) -> usize
where
    F: Clone + Zero + PartialEq + Mul<Output = F> + Sub<Output = F> + Div<Output = F>,
{
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let n = a.len();
    let cols = a.iter().map(Vec::len).max().unwrap_or(0);
    for row in &mut a {
        row.resize(cols, F::zero());
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone() / pivot_row[col].clone();
            for j in col..cols {
                row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        rank += 1;
    }
    rank
}

fn to_bigint(rows: &[Vec<u64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Exact rank over the rationals of a nonnegative integer matrix.
pub fn exact_rank(rows: &[Vec<u64>]) -> usize {
    bareiss_rank(&to_bigint(rows)).expect("big integers do not overflow")
}

/// [`exact_rank`] in 128-bit arithmetic; `None` on overflow.
pub fn exact_rank_i128(rows: &[Vec<u64>]) -> Option<usize> {
    let a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    bareiss_rank(&a)
}

/// Rank by elimination over `Ratio<BigInt>`, for cross-checking.
pub fn rational_rank(rows: &[Vec<u64>]) -> usize {
    let a: Vec<Vec<Ratio<BigInt>>> =
        rows.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(BigInt::from(x))).collect()).collect();
    field_rank(&a)
}

enum Counter {
    Plan(CompiledPlan),
    Lister(Configuration),
}

/// One column of a count matrix.
pub struct Column {
    pub name: String,
    pub config: Configuration,
    counter: Counter,
}

impl Column {
    /// Uses a synthesized plan when the configuration is generated by at
    /// most four points, the extension lister otherwise.
    pub fn new(name: String, config: Configuration) -> Result<Self> {
        let counter = if config.generating_number() <= 4 {
            Counter::Plan(CompiledPlan::new(&default_plan(&config)?, false)?)
        } else {
            Counter::Lister(config.clone())
        };
        Ok(Column { name, config, counter })
    }

    pub fn count(&self, sts: &SteinerTripleSystem) -> Result<u64> {
        match &self.counter {
            Counter::Plan(p) => p.count(sts),
            Counter::Lister(c) => Ok(list_occurrences(c, sts)?.len() as u64),
        }
    }

    pub fn uses_plan(&self) -> bool {
        matches!(self.counter, Counter::Plan(_))
    }
}

/// All full configurations with 4 to `n` lines, in enumeration order.
/// Classes isomorphic to a named configuration carry its name, the others
/// are called `full<m>_<index>`.
pub fn full_columns(n: usize) -> Result<Vec<Column>> {
    let named: Vec<Configuration> = BUILTIN_NAMES.iter().map(|n| builtin(n).expect("builtin")).collect();
    let mut configs = Vec::new();
    for m in 4..=n {
        for (i, c) in enumerate_full(m)?.into_iter().enumerate() {
            let name = named
                .iter()
                .find(|b| b.is_isomorphic(&c))
                .and_then(|b| b.name().map(str::to_string))
                .unwrap_or_else(|| format!("full{m}_{i}"));
            configs.push((name, c));
        }
    }
    configs.into_par_iter().map(|(name, c)| Column::new(name.clone(), c.with_name(name))).collect()
}

/// `[1, c_1, …, c_r]`.
pub fn count_vector(sts: &SteinerTripleSystem, columns: &[Column]) -> Result<Vec<u64>> {
    let mut row = Vec::with_capacity(columns.len() + 1);
    row.push(1);
    for c in columns {
        row.push(c.count(sts)?);
    }
    Ok(row)
}

/// Rows are systems, the first column is the constant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMatrix {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<u64>>,
}

impl RankMatrix {
    pub fn rank(&self) -> usize {
        exact_rank(&self.rows)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("const");
        for c in &self.columns {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(u64::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub n: usize,
    pub v: usize,
    pub matrix: RankMatrix,
    pub rank: usize,
    /// `r + 1`.
    pub target: usize,
    pub full_rank: bool,
}

impl IndependenceReport {
    pub fn summary(&self) -> String {
        format!("rank={} target={} full_rank={}", self.rank, self.target, self.full_rank)
    }
}

/// Counts every full configuration with at most `n` lines in `num_systems`
/// distinct random STS(v) and reports the rank of the resulting matrix.
pub fn independence_check(n: usize, num_systems: usize, v: usize, seed: u64) -> Result<IndependenceReport> {
    if !admissible_order(v) {
        return Err(Error::InadmissibleOrder(v));
    }
    let columns = full_columns(n)?;
    let systems = distinct_systems(v, seed, num_systems)?;
    let rows = systems.par_iter().map(|s| count_vector(s, &columns)).collect::<Result<Vec<_>>>()?;
    let matrix = RankMatrix { columns: columns.iter().map(|c| c.name.clone()).collect(), rows };
    let rank = matrix.rank();
    let target = columns.len() + 1;
    Ok(IndependenceReport { n, v, rank, target, full_rank: rank == target, matrix })
}

/// Like [`independence_check`], but keeps drawing systems past
/// `num_systems` (up to `max_systems`) until the rank reaches `r + 1`.
/// Configurations that rarely occur in a random system, such as the Fano
/// plane, may need many draws before their column becomes nonzero.
pub fn independence_check_until(
    n: usize,
    num_systems: usize,
    max_systems: usize,
    v: usize,
    seed: u64,
) -> Result<IndependenceReport> {
    if !admissible_order(v) {
        return Err(Error::InadmissibleOrder(v));
    }
    let columns = full_columns(n)?;
    let target = columns.len() + 1;
    let mut systems: Vec<SteinerTripleSystem> = Vec::new();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut next = seed;
    let mut rank = 0;
    while systems.len() < max_systems.max(num_systems) {
        let want = if systems.len() < num_systems { num_systems - systems.len() } else { 1 };
        let mut batch = Vec::new();
        while batch.len() < want {
            let s = crate::random::hill_climb(&crate::random::HillClimbConfig::new(v, next))?;
            next = next.wrapping_add(1);
            if !systems.iter().chain(&batch).any(|t: &SteinerTripleSystem| t.blocks() == s.blocks()) {
                batch.push(s);
            }
        }
        let new_rows = batch.par_iter().map(|s| count_vector(s, &columns)).collect::<Result<Vec<_>>>()?;
        systems.extend(batch);
        rows.extend(new_rows);
        rank = exact_rank(&rows);
        if systems.len() >= num_systems && rank == target {
            break;
        }
    }
    let matrix = RankMatrix { columns: columns.iter().map(|c| c.name.clone()).collect(), rows };
    Ok(IndependenceReport { n, v, rank, target, full_rank: rank == target, matrix })
}

/// Columns that are zero in every row.
pub fn zero_columns(matrix: &RankMatrix) -> Vec<&str> {
    matrix
        .columns
        .iter()
        .enumerate()
        .filter(|&(i, _)| matrix.rows.iter().all(|r| r[i + 1] == 0))
        .map(|(_, c)| c.as_str())
        .collect()
}
