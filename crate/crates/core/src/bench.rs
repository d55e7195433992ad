//! Selecting the fastest plan for a configuration by a three-phase
//! tournament on random systems of growing order.
//!
//! Within a phase every plan sees the same random systems, drawn lazily
//! from a seed and shared. Each plan runs once as a discarded warm-up, then
//! on successive systems until its time budget is spent (at least one
//! system), optionally capped. Only plan execution is timed.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exec::{count_builtin, CompiledPlan, BUILTIN_COUNTERS};
use crate::plan::GeneratedPlan;
use crate::random::{hill_climb, HillClimbConfig};
use crate::sts::{admissible_order, SteinerTripleSystem};

/// How many plans leave a phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Survivors {
    /// `max{min, ⌈fraction · A⌉}` where `A` is the number of entrants.
    Fraction { min: usize, fraction: f64 },
    Top(usize),
}

impl Survivors {
    pub fn count(&self, entrants: usize) -> usize {
        let k = match *self {
            Survivors::Fraction { min, fraction } => min.max((fraction * entrants as f64).ceil() as usize),
            Survivors::Top(k) => k,
        };
        k.clamp(1, entrants.max(1))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSpec {
    pub v: usize,
    /// Seconds of plan execution allowed per plan.
    pub budget: f64,
    pub survivors: Survivors,
    /// Upper limit on systems per plan, if any.
    pub max_systems: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TournamentSpec {
    pub phases: Vec<PhaseSpec>,
    pub seed: u64,
}

impl TournamentSpec {
    /// Full-size parameters: orders 93, 121, 151 with long budgets.
    pub fn paper(seed: u64) -> Self {
        TournamentSpec {
            phases: vec![
                PhaseSpec { v: 93, budget: 0.5, survivors: Survivors::Fraction { min: 100, fraction: 0.01 }, max_systems: None },
                PhaseSpec { v: 121, budget: 60.0, survivors: Survivors::Top(5), max_systems: None },
                PhaseSpec { v: 151, budget: 600.0, survivors: Survivors::Top(1), max_systems: None },
            ],
            seed,
        }
    }

    /// Parameters for a laptop: smaller orders and budgets, fewer survivors,
    /// and a cap on systems per plan so tens of thousands of plans finish in minutes.
    pub fn desk(seed: u64) -> Self {
        TournamentSpec {
            phases: vec![
                PhaseSpec { v: 19, budget: 0.2, survivors: Survivors::Fraction { min: 10, fraction: 0.001 }, max_systems: Some(1) },
                PhaseSpec { v: 63, budget: 2.0, survivors: Survivors::Top(5), max_systems: Some(3) },
                PhaseSpec { v: 93, budget: 10.0, survivors: Survivors::Top(1), max_systems: Some(3) },
            ],
            seed,
        }
    }

    pub fn preset(name: &str, seed: u64) -> Result<Self> {
        match name {
            "paper" => Ok(Self::paper(seed)),
            "desk" => Ok(Self::desk(seed)),
            _ => Err(Error::InvalidArgument(format!("unknown preset `{name}` (expected paper or desk)"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.phases.is_empty() {
            return Err(Error::InvalidArgument("tournament without phases".into()));
        }
        for p in &self.phases {
            if !admissible_order(p.v) {
                return Err(Error::InadmissibleOrder(p.v));
            }
            if p.budget.is_nan() || p.budget <= 0.0 || p.max_systems == Some(0) {
                return Err(Error::InvalidArgument("phase budgets and caps must be positive".into()));
            }
        }
        Ok(())
    }
}

/// One plan's result in one phase.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseEntry {
    pub phase: usize,
    pub plan_id: usize,
    pub systems: usize,
    pub total_s: f64,
    pub avg_s: f64,
    /// 1-based rank within the phase.
    pub rank: usize,
    /// Count on each system evaluated, in order.
    pub counts: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct TournamentReport {
    pub config: String,
    pub entries: Vec<PhaseEntry>,
    pub winner: usize,
    /// The winner ranked among the five best in phase 1.
    pub winner_top5_phase1: bool,
    /// Every count of the winner equals the reference count on the same
    /// system; `None` when no reference counter exists for the configuration.
    pub winner_verified: Option<bool>,
}

impl TournamentReport {
    pub const CSV_HEADER: &'static str = "phase,plan_id,systems,total_s,avg_s,rank";

    /// The report as CSV, preceded by `#` comment lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# config={} winner={}", self.config, self.winner);
        let _ = writeln!(out, "# timings cover plan execution only; system generation is excluded");
        let _ = writeln!(out, "# winner_top5_phase1={}", self.winner_top5_phase1);
        match self.winner_verified {
            Some(v) => {
                let _ = writeln!(out, "# winner_verified={v}");
            }
            None => out.push_str("# winner_verified=unchecked\n"),
        }
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{},{},{},{:.6},{:.9},{}",
                e.phase, e.plan_id, e.systems, e.total_s, e.avg_s, e.rank
            );
        }
        out
    }

    pub fn phase(&self, phase: usize) -> impl Iterator<Item = &PhaseEntry> {
        self.entries.iter().filter(move |e| e.phase == phase)
    }
}

/// Systems of one order, generated on first use and shared by all plans.
struct SystemPool {
    v: usize,
    seed: u64,
    systems: Vec<SteinerTripleSystem>,
}

impl SystemPool {
    fn get(&mut self, i: usize) -> Result<&SteinerTripleSystem> {
        while self.systems.len() <= i {
            let k = self.systems.len() as u64;
            let s = hill_climb(&HillClimbConfig::new(self.v, self.seed.wrapping_add(k)))?;
            self.systems.push(s);
        }
        Ok(&self.systems[i])
    }
}

fn phase_seed(seed: u64, phase: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(phase as u64 * 1_000_003)
}

/// Runs the tournament. Plans are measured one at a time on the calling
/// thread.
pub fn run_tournament(plans: &[GeneratedPlan], spec: &TournamentSpec) -> Result<TournamentReport> {
    spec.validate()?;
    let first = plans.first().ok_or_else(|| Error::InvalidArgument("no plans to compare".into()))?;
    let config = first.plan.config.clone();
    let compiled: Vec<(usize, CompiledPlan)> = plans
        .iter()
        .map(|p| Ok((p.id, CompiledPlan::new(&p.plan, false)?)))
        .collect::<Result<_>>()?;
    let mut alive: Vec<usize> = (0..compiled.len()).collect();
    let mut entries = Vec::new();
    let mut pools = Vec::new();
    for (k, phase) in spec.phases.iter().enumerate() {
        let number = k + 1;
        let mut pool = SystemPool { v: phase.v, seed: phase_seed(spec.seed, number), systems: Vec::new() };
        let mut results = Vec::with_capacity(alive.len());
        for &idx in &alive {
            let (id, plan) = &compiled[idx];
            plan.count(pool.get(0)?)?;
            let mut total = 0.0;
            let mut counts = Vec::new();
            loop {
                let sts = pool.get(counts.len())?;
                let start = Instant::now();
                let c = plan.count(sts)?;
                total += start.elapsed().as_secs_f64();
                counts.push(c);
                if total >= phase.budget || phase.max_systems.is_some_and(|m| counts.len() >= m) {
                    break;
                }
            }
            let n = counts.len();
            results.push((idx, PhaseEntry {
                phase: number,
                plan_id: *id,
                systems: n,
                total_s: total,
                avg_s: total / n as f64,
                rank: 0,
                counts,
            }));
        }
        results.sort_by(|a, b| a.1.avg_s.total_cmp(&b.1.avg_s).then(a.1.plan_id.cmp(&b.1.plan_id)));
        for (r, (_, e)) in results.iter_mut().enumerate() {
            e.rank = r + 1;
        }
        let keep = if k + 1 == spec.phases.len() { 1 } else { phase.survivors.count(results.len()) };
        alive = results.iter().take(keep).map(|(i, _)| *i).collect();
        entries.extend(results.into_iter().map(|(_, e)| e));
        pools.push(pool);
    }
    let winner = compiled[alive[0]].0;
    let winner_top5_phase1 = entries.iter().any(|e| e.phase == 1 && e.plan_id == winner && e.rank <= 5);
    let winner_verified = if BUILTIN_COUNTERS.contains(&config.as_str()) {
        let mut ok = true;
        for (e, pool) in entries.iter().filter(|e| e.plan_id == winner).zip(&pools) {
            for (i, &c) in e.counts.iter().enumerate() {
                ok &= count_builtin(&config, &pool.systems[i])? == c;
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(TournamentReport { config, entries, winner, winner_top5_phase1, winner_verified })
}
