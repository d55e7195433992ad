//! Counting plans: a small loop/assign/check language, its text format, and
//! the generator that compiles configurations into plans.
//!
//! A plan names one variable per configuration point. Loop variables range
//! over points of the system; every other variable is the third point of a
//! system block through two earlier variables. Checks reject the current
//! assignment, and `COUNT` increments the raw count `r`. Executing a plan
//! yields `r / Q`.

mod chain;
mod gen;

use std::collections::BTreeSet;
use std::fmt::Write as _;

pub use chain::{
    derive_constraints, order_closure, ordered_genset_transversal, permutations, summarize,
    transitive_reduction, Extremum, GenSetSummary, OrbitChain,
};
pub use gen::{default_plan, generate_plans, generate_plans_for_tuple, GeneratedPlan, PlanSet, MAX_GENERATORS};

use crate::config::{parse_point_name, point_name, Configuration};
use crate::error::{Error, Result};

/// Direction of a `BOUND` step: `x < y` or `x > y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Lt,
    Gt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// `var` runs from `lo` to `v − hi_offset` inclusive, further narrowed by
    /// the `Bound` steps that follow it.
    Loop { var: usize, lo: usize, hi_offset: usize },
    /// `var rel other`, with at least `gap` values strictly between. Right
    /// after a `Loop` it narrows the range; elsewhere it is a check.
    Bound { var: usize, rel: Rel, other: usize, gap: usize },
    /// `var ← third point of the block through from[0] and from[1]`.
    Assign { var: usize, from: [usize; 2] },
    /// `var` differs from every listed variable.
    Neq { var: usize, others: Vec<usize> },
    /// The three variables form a block.
    Line { points: [usize; 3] },
    Count,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingPlan {
    pub config: String,
    /// Number of variables.
    pub w: usize,
    pub q: u64,
    pub steps: Vec<Step>,
}

fn name(p: usize) -> String {
    point_name(p)
}

impl CountingPlan {
    /// Variables in assignment order.
    pub fn assignment_order(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Loop { var, .. } | Step::Assign { var, .. } => Some(*var),
                _ => None,
            })
            .collect()
    }

    pub fn loop_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Loop { .. })).count()
    }

    /// The configuration lines the plan relies on: one per `Assign` and one
    /// per `Line`, each sorted ascending, in step order.
    pub fn referenced_lines(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for s in &self.steps {
            let mut l = match s {
                Step::Assign { var, from } => [*var, from[0], from[1]],
                Step::Line { points } => *points,
                _ => continue,
            };
            l.sort_unstable();
            out.push(l);
        }
        out
    }

    /// Checks that every variable is assigned exactly once before any use,
    /// that `COUNT` comes last, and that `Q ≥ 1`.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(format!("invalid plan: {msg}")));
        if self.q == 0 {
            return bad("Q = 0".into());
        }
        let mut set = vec![false; self.w];
        let check = |set: &[bool], v: usize| v < self.w && set[v];
        for (i, s) in self.steps.iter().enumerate() {
            if matches!(s, Step::Count) != (i + 1 == self.steps.len()) {
                return bad("COUNT must be the single last step".into());
            }
            let (defined, used): (Option<usize>, Vec<usize>) = match s {
                Step::Loop { var, .. } => (Some(*var), vec![]),
                Step::Assign { var, from } => (Some(*var), from.to_vec()),
                Step::Bound { var, other, .. } => (None, vec![*var, *other]),
                Step::Neq { var, others } => (None, std::iter::once(*var).chain(others.iter().copied()).collect()),
                Step::Line { points } => (None, points.to_vec()),
                Step::Count => (None, vec![]),
            };
            for u in used {
                if !check(&set, u) {
                    return bad(format!("step {} uses unassigned {}", i + 1, name(u)));
                }
            }
            if let Some(d) = defined {
                if d >= self.w || set[d] {
                    return bad(format!("step {} reassigns {}", i + 1, name(d)));
                }
                set[d] = true;
            }
        }
        if let Some(p) = set.iter().position(|&s| !s) {
            return bad(format!("{} is never assigned", name(p)));
        }
        Ok(())
    }

    /// Checks that the plan matches `cfg`: one variable per point and every
    /// line referenced exactly once.
    pub fn validate_against(&self, cfg: &Configuration) -> Result<()> {
        self.validate()?;
        if self.w != cfg.points() {
            return Err(Error::InvalidArgument(format!(
                "plan has {} variables, configuration has {} points",
                self.w,
                cfg.points()
            )));
        }
        let mut lines = self.referenced_lines();
        lines.sort_unstable();
        let expect: Vec<[usize; 3]> =
            cfg.lines().iter().map(|l| [l[0] as usize, l[1] as usize, l[2] as usize]).collect();
        if lines != expect {
            return Err(Error::InvalidArgument("plan lines differ from the configuration".into()));
        }
        Ok(())
    }

    /// The text format, one step per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("PLAN cfg={} Q={}\n", self.config, self.q);
        for s in &self.steps {
            out.push_str(&step_text(s, &name));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut config = None;
        let mut q = None;
        let mut steps = Vec::new();
        let mut w = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
            let var = |s: &str| parse_point_name(s).ok_or_else(|| err(&format!("bad variable `{s}`")));
            let toks: Vec<&str> = line.split_whitespace().collect();
            if config.is_none() {
                if toks.first() != Some(&"PLAN") {
                    return Err(err("expected `PLAN cfg=<name> Q=<q>`"));
                }
                for t in &toks[1..] {
                    if let Some(c) = t.strip_prefix("cfg=") {
                        config = Some(c.to_string());
                    } else if let Some(v) = t.strip_prefix("Q=") {
                        q = Some(v.parse::<u64>().map_err(|_| err("bad Q"))?);
                    } else {
                        return Err(err(&format!("unknown header field `{t}`")));
                    }
                }
                if config.is_none() || q.is_none() {
                    return Err(err("header needs cfg= and Q="));
                }
                continue;
            }
            let step = match toks.as_slice() {
                ["LOOP", x, lo, hi] => {
                    let lo = lo.strip_prefix("lo=").and_then(|s| s.parse().ok()).ok_or_else(|| err("bad lo"))?;
                    let hi_offset = hi
                        .strip_prefix("hi=v-")
                        .and_then(|s| s.parse().ok())
                        .filter(|&k: &usize| k >= 1)
                        .ok_or_else(|| err("bad hi"))?;
                    Step::Loop { var: var(x)?, lo, hi_offset }
                }
                ["BOUND", x, r, y, rest @ ..] => {
                    let rel = match *r {
                        "<" => Rel::Lt,
                        ">" => Rel::Gt,
                        _ => return Err(err("relation must be < or >")),
                    };
                    let gap = match rest {
                        [] => 0,
                        [g] => g.strip_prefix('+').and_then(|s| s.parse().ok()).ok_or_else(|| err("bad gap"))?,
                        _ => return Err(err("trailing tokens")),
                    };
                    Step::Bound { var: var(x)?, rel, other: var(y)?, gap }
                }
                ["ASSIGN", x, "=", call] => {
                    let inner = call
                        .strip_prefix("third(")
                        .and_then(|s| s.strip_suffix(')'))
                        .ok_or_else(|| err("expected third(y,z)"))?;
                    let (a, b) = inner.split_once(',').ok_or_else(|| err("expected two arguments"))?;
                    Step::Assign { var: var(x)?, from: [var(a)?, var(b)?] }
                }
                ["NEQ", x, set] => {
                    let inner = set
                        .strip_prefix('{')
                        .and_then(|s| s.strip_suffix('}'))
                        .ok_or_else(|| err("expected {a,b,...}"))?;
                    let others = inner.split(',').map(var).collect::<Result<Vec<_>>>()?;
                    Step::Neq { var: var(x)?, others }
                }
                ["LINE", x, y, z] => Step::Line { points: [var(x)?, var(y)?, var(z)?] },
                ["COUNT"] => Step::Count,
                _ => return Err(err(&format!("unrecognized step `{line}`"))),
            };
            let mut touch = |v: usize| w = w.max(v + 1);
            match &step {
                Step::Loop { var, .. } => touch(*var),
                Step::Assign { var, from } => {
                    touch(*var);
                    from.iter().for_each(|&v| touch(v));
                }
                Step::Bound { var, other, .. } => {
                    touch(*var);
                    touch(*other);
                }
                Step::Neq { var, others } => {
                    touch(*var);
                    others.iter().for_each(|&v| touch(v));
                }
                Step::Line { points } => points.iter().for_each(|&v| touch(v)),
                Step::Count => {}
            }
            steps.push(step);
        }
        let plan = CountingPlan {
            config: config.ok_or(Error::Parse { line: 0, msg: "missing PLAN header".into() })?,
            w,
            q: q.unwrap_or(1),
            steps,
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Serialization with variables renamed in assignment order and every
    /// order-free group sorted. Equal keys mean the same algorithm.
    pub fn normalized_key(&self) -> String {
        let mut rename = vec![usize::MAX; self.w];
        for (i, v) in self.assignment_order().into_iter().enumerate() {
            rename[v] = i;
        }
        let r = |v: usize| rename[v];
        let mut steps: Vec<Step> = self
            .steps
            .iter()
            .map(|s| match s {
                Step::Loop { var, lo, hi_offset } => Step::Loop { var: r(*var), lo: *lo, hi_offset: *hi_offset },
                Step::Bound { var, rel, other, gap } => {
                    Step::Bound { var: r(*var), rel: *rel, other: r(*other), gap: *gap }
                }
                Step::Assign { var, from } => {
                    let mut f = [r(from[0]), r(from[1])];
                    f.sort_unstable();
                    Step::Assign { var: r(*var), from: f }
                }
                Step::Neq { var, others } => {
                    let mut o: Vec<usize> = others.iter().map(|&x| r(x)).collect();
                    o.sort_unstable();
                    Step::Neq { var: r(*var), others: o }
                }
                Step::Line { points } => {
                    let mut p = points.map(r);
                    p.sort_unstable();
                    Step::Line { points: p }
                }
                Step::Count => Step::Count,
            })
            .collect();
        // Consecutive bounds and consecutive line checks commute.
        let mut i = 0;
        while i < steps.len() {
            let kind = |s: &Step| match s {
                Step::Bound { .. } => 1,
                Step::Line { .. } => 2,
                _ => 0,
            };
            let k = kind(&steps[i]);
            let mut j = i + 1;
            while k != 0 && j < steps.len() && kind(&steps[j]) == k {
                j += 1;
            }
            steps[i..j].sort_by_key(|s| step_text(s, &|v| v.to_string()));
            i = j;
        }
        let mut out = format!("Q={}\n", self.q);
        for s in &steps {
            out.push_str(&step_text(s, &|v| v.to_string()));
            out.push('\n');
        }
        out
    }

    /// Pseudocode in the style of the reference listings.
    pub fn pretty(&self) -> String {
        let mut out = String::from("r ← 0\n");
        let mut depth = 0;
        let mut i = 0;
        let pad = |d: usize| "  ".repeat(d);
        while i < self.steps.len() {
            match &self.steps[i] {
                Step::Loop { var, lo, hi_offset } => {
                    let mut j = i + 1;
                    let (mut lower, mut upper) = (Vec::new(), Vec::new());
                    while let Some(Step::Bound { var: bv, rel, other, gap }) = self.steps.get(j) {
                        if bv != var {
                            break;
                        }
                        match rel {
                            Rel::Gt => lower.push((*other, *gap)),
                            Rel::Lt => upper.push((*other, *gap)),
                        }
                        j += 1;
                    }
                    let lo_s = if lower.is_empty() { lo.to_string() } else { var_bound(&lower, "max", '+') };
                    let hi_s = if upper.is_empty() {
                        format!("v−{hi_offset}")
                    } else {
                        var_bound(&upper, "min", '−')
                    };
                    let _ = writeln!(out, "{}for {} ← {} to {} do", pad(depth), name(*var), lo_s, hi_s);
                    depth += 1;
                    i = j;
                    if let Some(Step::Neq { var: nv, others }) = self.steps.get(i) {
                        if nv == var {
                            let _ = writeln!(out, "{}if {} then continue", pad(depth), neq_text(*var, others));
                            i += 1;
                        }
                    }
                    continue;
                }
                Step::Assign { var, from } => {
                    let mut f = *from;
                    f.sort_unstable_by(|a, b| b.cmp(a));
                    let _ = writeln!(out, "{}{} ← B2({},{})", pad(depth), name(*var), name(f[0]), name(f[1]));
                    let mut j = i + 1;
                    let (mut upper, mut lower, mut neq) = (Vec::new(), Vec::new(), None);
                    loop {
                        match self.steps.get(j) {
                            Some(Step::Bound { var: bv, rel, other, .. }) if bv == var => match rel {
                                Rel::Lt => upper.push(*other),
                                Rel::Gt => lower.push(*other),
                            },
                            Some(Step::Neq { var: nv, others }) if nv == var => neq = Some(others.clone()),
                            _ => break,
                        }
                        j += 1;
                    }
                    let mut conds: Vec<String> = Vec::new();
                    upper.sort_unstable();
                    lower.sort_unstable();
                    conds.extend(upper.iter().map(|&y| format!("{} ≤ {}", name(y), name(*var))));
                    conds.extend(lower.iter().map(|&y| format!("{} ≤ {}", name(*var), name(y))));
                    if let Some(o) = neq {
                        conds.push(neq_text(*var, &o));
                    }
                    if !conds.is_empty() {
                        let _ = writeln!(out, "{}if {} then continue", pad(depth), conds.join(" ∨ "));
                    }
                    i = j;
                    continue;
                }
                Step::Line { points } => {
                    let mut p = *points;
                    p.sort_unstable();
                    let _ = writeln!(
                        out,
                        "{}if B3({},{},{}) = 0 then continue",
                        pad(depth),
                        name(p[0]),
                        name(p[1]),
                        name(p[2])
                    );
                }
                Step::Bound { var, rel, other, .. } => {
                    let (a, b) = match rel {
                        Rel::Lt => (*other, *var),
                        Rel::Gt => (*var, *other),
                    };
                    let _ = writeln!(out, "{}if {} ≤ {} then continue", pad(depth), name(a), name(b));
                }
                Step::Neq { var, others } => {
                    let _ = writeln!(out, "{}if {} then continue", pad(depth), neq_text(*var, others));
                }
                Step::Count => {
                    let _ = writeln!(out, "{}r ← r + 1", pad(depth));
                }
            }
            i += 1;
        }
        if self.q == 1 {
            out.push_str("return r\n");
        } else {
            let _ = writeln!(out, "return r/{}", self.q);
        }
        out
    }

    /// Variables constrained by some `Bound`, for reporting.
    pub fn bounded_variables(&self) -> BTreeSet<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Bound { var, .. } => Some(*var),
                _ => None,
            })
            .collect()
    }
}

fn var_bound(list: &[(usize, usize)], f: &str, sign: char) -> String {
    let mut list = list.to_vec();
    list.sort_unstable();
    let same_gap = list.iter().all(|&(_, g)| g == list[0].1);
    let k = |g: usize| g + 1;
    if list.len() == 1 {
        format!("{}{}{}", name(list[0].0), sign, k(list[0].1))
    } else if same_gap {
        let names: Vec<String> = list.iter().map(|&(y, _)| name(y)).collect();
        format!("{f}{{{}}}{}{}", names.join(","), sign, k(list[0].1))
    } else {
        let terms: Vec<String> = list.iter().map(|&(y, g)| format!("{}{}{}", name(y), sign, k(g))).collect();
        format!("{f}{{{}}}", terms.join(","))
    }
}

fn neq_text(var: usize, others: &[usize]) -> String {
    let mut o = others.to_vec();
    o.sort_unstable();
    if o.len() == 1 {
        format!("{} = {}", name(var), name(o[0]))
    } else {
        let names: Vec<String> = o.iter().map(|&u| name(u)).collect();
        format!("{} ∈ {{{}}}", name(var), names.join(","))
    }
}

fn step_text(s: &Step, n: &dyn Fn(usize) -> String) -> String {
    match s {
        Step::Loop { var, lo, hi_offset } => format!("LOOP {} lo={} hi=v-{}", n(*var), lo, hi_offset),
        Step::Bound { var, rel, other, gap } => {
            let r = match rel {
                Rel::Lt => "<",
                Rel::Gt => ">",
            };
            if *gap == 0 {
                format!("BOUND {} {} {}", n(*var), r, n(*other))
            } else {
                format!("BOUND {} {} {} +{}", n(*var), r, n(*other), gap)
            }
        }
        Step::Assign { var, from } => format!("ASSIGN {} = third({},{})", n(*var), n(from[0]), n(from[1])),
        Step::Neq { var, others } => {
            let o: Vec<String> = others.iter().map(|&u| n(u)).collect();
            format!("NEQ {} {{{}}}", n(*var), o.join(","))
        }
        Step::Line { points } => format!("LINE {} {} {}", n(points[0]), n(points[1]), n(points[2])),
        Step::Count => "COUNT".to_string(),
    }
}
