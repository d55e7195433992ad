use crate::error::{Error, Result};
use crate::plan::{CountingPlan, Rel, Step};
use crate::sts::{Point, SteinerTripleSystem};

#[derive(Clone, Copy, Debug)]
enum Op {
    Assign { var: u8, a: u8, b: u8 },
    /// `vals[var] > vals[other] + gap` (or `<` with `-gap`).
    Above { var: u8, other: u8, gap: u32 },
    Below { var: u8, other: u8, gap: u32 },
    Neq { var: u8, other: u8 },
    Line { a: u8, b: u8, c: u8 },
}

#[derive(Clone, Debug)]
struct Level {
    var: u8,
    lo: u32,
    hi_offset: u32,
    /// `(other, gap)`: `var ≥ other + 1 + gap`.
    lower: Vec<(u8, u32)>,
    /// `(other, gap)`: `var ≤ other − 1 − gap`.
    upper: Vec<(u8, u32)>,
    body: Vec<Op>,
}

/// A plan lowered to nested loop levels for execution.
#[derive(Clone, Debug)]
pub struct CompiledPlan {
    /// Operations before the first loop.
    prefix: Vec<Op>,
    levels: Vec<Level>,
    w: usize,
    q: u64,
    wide: bool,
}

impl CompiledPlan {
    /// Lowers `plan`. With `wide` set, every loop runs over all points and
    /// range-narrowing bounds become plain strict comparisons. Counts must
    /// not change; this exists to test the tight ranges.
    pub fn new(plan: &CountingPlan, wide: bool) -> Result<Self> {
        plan.validate()?;
        if plan.w > u8::MAX as usize {
            return Err(Error::Unsupported(format!("plan with {} variables", plan.w)));
        }
        let mut prefix = Vec::new();
        let mut levels: Vec<Level> = Vec::new();
        let mut after_loop = false;
        for s in &plan.steps {
            let push = |levels: &mut Vec<Level>, prefix: &mut Vec<Op>, op: Op| match levels.last_mut() {
                Some(l) => l.body.push(op),
                None => prefix.push(op),
            };
            match *s {
                Step::Loop { var, lo, hi_offset } => {
                    levels.push(Level {
                        var: var as u8,
                        lo: lo as u32,
                        hi_offset: hi_offset as u32,
                        lower: Vec::new(),
                        upper: Vec::new(),
                        body: Vec::new(),
                    });
                    after_loop = true;
                    continue;
                }
                Step::Bound { var, rel, other, gap } => {
                    let (var, other) = (var as u8, other as u8);
                    let level = levels.last_mut();
                    match level {
                        Some(l) if after_loop && l.var == var && !wide => match rel {
                            Rel::Gt => l.lower.push((other, gap as u32)),
                            Rel::Lt => l.upper.push((other, gap as u32)),
                        },
                        _ => {
                            let gap = if wide { 0 } else { gap as u32 };
                            let op = match rel {
                                Rel::Gt => Op::Above { var, other, gap },
                                Rel::Lt => Op::Below { var, other, gap },
                            };
                            push(&mut levels, &mut prefix, op);
                        }
                    }
                    continue;
                }
                Step::Assign { var, from } => {
                    push(&mut levels, &mut prefix, Op::Assign { var: var as u8, a: from[0] as u8, b: from[1] as u8 })
                }
                Step::Neq { var, ref others } => {
                    for &o in others {
                        push(&mut levels, &mut prefix, Op::Neq { var: var as u8, other: o as u8 });
                    }
                }
                Step::Line { points } => push(
                    &mut levels,
                    &mut prefix,
                    Op::Line { a: points[0] as u8, b: points[1] as u8, c: points[2] as u8 },
                ),
                Step::Count => {}
            }
            after_loop = false;
        }
        if !prefix.is_empty() {
            return Err(Error::InvalidArgument("plan steps before the first loop".into()));
        }
        Ok(CompiledPlan { prefix, levels, w: plan.w, q: plan.q, wide })
    }

    /// Raw count `r`, before division by `Q`.
    pub fn raw_count(&self, sts: &SteinerTripleSystem) -> u64 {
        let mut vals = vec![0 as Point; self.w];
        let mut r = 0;
        let v = sts.order() as Point;
        if self.run_ops(&self.prefix, sts, &mut vals) {
            self.descend(0, sts, v, &mut vals, &mut r);
        }
        r
    }

    /// `r / Q`, failing if `Q` does not divide `r`.
    pub fn count(&self, sts: &SteinerTripleSystem) -> Result<u64> {
        let raw = self.raw_count(sts);
        if !raw.is_multiple_of(self.q) {
            return Err(Error::Divisibility { raw, q: self.q });
        }
        Ok(raw / self.q)
    }

    #[inline]
    fn run_ops(&self, ops: &[Op], sts: &SteinerTripleSystem, vals: &mut [Point]) -> bool {
        let table = sts.pair_table();
        let v = sts.order();
        for op in ops {
            match *op {
                Op::Assign { var, a, b } => {
                    // The diagonal holds the sentinel `v`, so equal inputs are
                    // rejected rather than producing a point.
                    let t = table[vals[a as usize] as usize * v + vals[b as usize] as usize];
                    if t as usize == v {
                        return false;
                    }
                    vals[var as usize] = t;
                }
                Op::Above { var, other, gap } => {
                    if vals[var as usize] <= vals[other as usize] + gap {
                        return false;
                    }
                }
                Op::Below { var, other, gap } => {
                    if vals[var as usize] + gap >= vals[other as usize] {
                        return false;
                    }
                }
                Op::Neq { var, other } => {
                    if vals[var as usize] == vals[other as usize] {
                        return false;
                    }
                }
                Op::Line { a, b, c } => {
                    if !sts.has_block(vals[a as usize], vals[b as usize], vals[c as usize]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn descend(&self, depth: usize, sts: &SteinerTripleSystem, v: Point, vals: &mut [Point], r: &mut u64) {
        let Some(level) = self.levels.get(depth) else {
            *r += 1;
            return;
        };
        let (mut lo, mut hi) = if self.wide {
            (0i64, v as i64 - 1)
        } else {
            (level.lo as i64, v as i64 - level.hi_offset as i64)
        };
        for &(o, gap) in &level.lower {
            lo = lo.max(vals[o as usize] as i64 + 1 + gap as i64);
        }
        for &(o, gap) in &level.upper {
            hi = hi.min(vals[o as usize] as i64 - 1 - gap as i64);
        }
        let mut x = lo;
        while x <= hi {
            vals[level.var as usize] = x as Point;
            if self.run_ops(&level.body, sts, vals) {
                self.descend(depth + 1, sts, v, vals, r);
            }
            x += 1;
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// Runs `plan` on `sts` and returns `r / Q`.
pub fn execute_plan(plan: &CountingPlan, sts: &SteinerTripleSystem) -> Result<u64> {
    CompiledPlan::new(plan, false)?.count(sts)
}

/// Like [`execute_plan`] but with every loop over all points and every
/// bound checked as a plain comparison.
pub fn execute_plan_wide(plan: &CountingPlan, sts: &SteinerTripleSystem) -> Result<u64> {
    CompiledPlan::new(plan, true)?.count(sts)
}
