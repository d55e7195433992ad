//! Hand-written counters for the nine named configurations, each a direct
//! transcription of a reference listing. Loop bounds are signed so that
//! ranges like `0 ..= v−6` are simply empty for small `v`.

use crate::error::{Error, Result};
use crate::sts::{Point, SteinerTripleSystem};

struct S<'a> {
    sts: &'a SteinerTripleSystem,
}

impl S<'_> {
    #[inline(always)]
    fn b2(&self, x: i64, y: i64) -> i64 {
        self.sts.pair_third(x as Point, y as Point) as i64
    }
    #[inline(always)]
    fn b3(&self, x: i64, y: i64, z: i64) -> bool {
        self.sts.has_block(x as Point, y as Point, z as Point)
    }
}

/// Names accepted by [`count_builtin`], in listing order.
pub const BUILTIN_COUNTERS: [&str; 9] =
    ["fano", "pasch", "mitre", "fano-line", "crown", "hexagon", "prism", "grid", "moebius-kantor"];

/// Counts occurrences of a named configuration with its hand-written counter.
pub fn count_builtin(name: &str, sts: &SteinerTripleSystem) -> Result<u64> {
    let s = S { sts };
    let v = sts.order() as i64;
    let r = match name {
        "fano" => fano(&s, v),
        "pasch" => pasch(&s, v),
        "mitre" => mitre(&s, v),
        "fano-line" => fano_line(&s, v),
        "crown" => crown(&s, v),
        "hexagon" => hexagon(&s, v),
        "prism" => prism(&s, v),
        "grid" => grid(&s, v),
        "moebius-kantor" => moebius_kantor(&s, v),
        _ => return Err(Error::UnknownConfiguration(name.to_string())),
    };
    Ok(r)
}

fn fano(s: &S, v: i64) -> u64 {
    let mut r = 0;
    for a in 2..=v - 4 {
        for b in 1..=a - 1 {
            let e = s.b2(b, a);
            if e <= a {
                continue;
            }
            for c in 0..=b - 1 {
                let g = s.b2(c, a);
                if g <= a {
                    continue;
                }
                let d = s.b2(e, c);
                if d <= a {
                    continue;
                }
                if !s.b3(b, d, g) {
                    continue;
                }
                let f = s.b2(g, e);
                if f <= b {
                    continue;
                }
                if !s.b3(a, d, f) {
                    continue;
                }
                if !s.b3(b, c, f) {
                    continue;
                }
                r += 1;
            }
        }
    }
    r
}

fn pasch(s: &S, v: i64) -> u64 {
    let mut r = 0;
    for a in 0..=v - 6 {
        for b in a + 1..=v - 2 {
            let e = s.b2(b, a);
            if e <= a {
                continue;
            }
            for f in b.max(e) + 1..=v - 1 {
                let c = s.b2(f, a);
                if f <= c || c <= a {
                    continue;
                }
                let d = s.b2(f, e);
                if d <= a {
                    continue;
                }
                if !s.b3(b, c, d) {
                    continue;
                }
                r += 1;
            }
        }
    }
    r
}

fn mitre(s: &S, v: i64) -> u64 {
    let mut r = 0;
    for a in 0..=v - 3 {
        for c in a + 1..=v - 2 {
            let f = s.b2(c, a);
            for e in c.max(f) + 1..=v - 1 {
                let g = s.b2(f, e);
                let b = s.b2(g, a);
                if e <= b {
                    continue;
                }
                let d = s.b2(g, c);
                if e <= d {
                    continue;
                }
                if !s.b3(b, d, e) {
                    continue;
                }
                r += 1;
            }
        }
    }
    r
}

fn fano_line(s: &S, v: i64) -> u64 {
    let mut r = 0;
    for c in 2..=v - 2 {
        for e in 0..=c - 2 {
            let b = s.b2(c, e);
            for f in e + 1..=c - 1 {
                if f == b {
                    continue;
                }
                let g = s.b2(f, b);
                if g <= c {
                    continue;
                }
                let d = s.b2(e, g);
                if !s.b3(c, d, f) {
                    continue;
                }
                let a = s.b2(f, e);
                if !s.b3(a, c, g) {
                    continue;
                }
                r += 1;
            }
        }
    }
    r
}

fn crown(s: &S, v: i64) -> u64 {
    let mut r = 0;
    for f in 0..=v - 2 {
        for e in 0..=v - 1 {
            if e == f {
                continue;
            }
            let h = s.b2(f, e);
            for g in f + 1..=v - 1 {
                if g == e || g == h {
                    continue;
                }
                let d = s.b2(e, g);
                let b = s.b2(f, d);
                let c = s.b2(h, g);
                if c == b {
                    continue;
                }
                let a = s.b2(f, g);
                if !s.b3(a, b, c) {
                    continue;
                }
                r += 1;
            }
        }
    }
    r
}

fn hexagon(s: &S, v: i64) -> u64 {
    let mut r = 0;
    for b in 0..=v - 6 {
        for c in b + 2..=v - 1 {
            let a = s.b2(c, b);
            for d in b + 1..=c - 1 {
                if d == a {
                    continue;
                }
                let e = s.b2(d, a);
                if e <= b {
                    continue;
                }
                let h = s.b2(d, b);
                let g = s.b2(h, c);
                if g <= b || g == e {
                    continue;
                }
                let f = s.b2(h, e);
                if f <= b {
                    continue;
                }
                if !s.b3(a, f, g) {
                    continue;
                }
                r += 1;
            }
        }
    }
    r
}

fn prism(s: &S, v: i64) -> u64 {
    let mut r = 0;
    for a in 1..=v - 2 {
        for f in 0..=a - 1 {
            for b in 0..=v - 1 {
                if b == a || b == f {
                    continue;
                }
                let e = s.b2(b, a);
                if e == f {
                    continue;
                }
                let c = s.b2(f, b);
                let h = s.b2(e, c);
                if h <= a {
                    continue;
                }
                for d in e + 1..=v - 1 {
                    if [a, b, c, f, h].contains(&d) {
                        continue;
                    }
                    let g = s.b2(d, a);
                    if [c, f, h].contains(&g) {
                        continue;
                    }
                    let i = s.b2(h, d);
                    if i == b || i == f {
                        continue;
                    }
                    if !s.b3(f, g, i) {
                        continue;
                    }
                    r += 1;
                }
            }
        }
    }
    r
}

fn grid(s: &S, v: i64) -> u64 {
    let mut r = 0;
    for a in 0..=v - 9 {
        for b in a + 1..=v - 3 {
            let d = s.b2(b, a);
            if d <= b {
                continue;
            }
            for e in d + 1..=v - 1 {
                let g = s.b2(e, a);
                if e <= g || g <= a {
                    continue;
                }
                for c in a + 1..=v - 1 {
                    if [b, d, e, g].contains(&c) {
                        continue;
                    }
                    let f = s.b2(c, b);
                    if f <= a || f == e || f == g {
                        continue;
                    }
                    let h = s.b2(e, c);
                    if h <= a || h == d {
                        continue;
                    }
                    let i = s.b2(g, f);
                    if i <= a || i == d || i == h {
                        continue;
                    }
                    if !s.b3(d, h, i) {
                        continue;
                    }
                    r += 1;
                }
            }
        }
    }
    r
}

fn moebius_kantor(s: &S, v: i64) -> u64 {
    let mut r = 0;
    for a in 1..=v - 6 {
        for b in a + 1..=v - 1 {
            let g = s.b2(b, a);
            if g <= a {
                continue;
            }
            for c in 0..=a - 1 {
                let d = s.b2(c, a);
                if d <= a {
                    continue;
                }
                let h = s.b2(c, b);
                if h <= a {
                    continue;
                }
                let e = s.b2(d, b);
                if e <= c {
                    continue;
                }
                if !s.b3(e, g, h) {
                    continue;
                }
                let f = s.b2(e, a);
                if f <= a {
                    continue;
                }
                if !s.b3(c, f, g) {
                    continue;
                }
                if !s.b3(d, f, h) {
                    continue;
                }
                r += 1;
            }
        }
    }
    r
}
