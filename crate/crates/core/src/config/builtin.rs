//! The nine configurations drawn in the figures, with the figures' point
//! names: letter `a` is point 0, `b` is 1, and so on.

use super::Configuration;
use crate::error::{Error, Result};

/// Names accepted by [`builtin`], in table order.
pub const BUILTIN_NAMES: [&str; 9] = [
    "pasch",
    "mitre",
    "fano-line",
    "crown",
    "hexagon",
    "prism",
    "grid",
    "fano",
    "moebius-kantor",
];

const PASCH: &[&str] = &["abe", "afc", "bdc", "edf"];
const MITRE: &[&str] = &["abg", "acf", "bde", "cdg", "feg"];
const FANO_LINE: &[&str] = &["cag", "afe", "cbe", "bfg", "cfd", "edg"];
const CROWN: &[&str] = &["abc", "afg", "bdf", "chg", "deg", "feh"];
const HEXAGON: &[&str] = &["bac", "eda", "agf", "bdh", "cgh", "ehf"];
const PRISM: &[&str] = &["abe", "agd", "bcf", "ech", "dih", "fig"];
const GRID: &[&str] = &["abd", "aeg", "bcf", "ech", "dhi", "gfi"];
const FANO: &[&str] = &["abe", "acg", "adf", "bcf", "bdg", "cde", "efg"];
const MOEBIUS_KANTOR: &[&str] = &["abg", "bch", "cgf", "ghe", "hfd", "fea", "edb", "dac"];

fn lines_of(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "pasch" => PASCH,
        "mitre" => MITRE,
        "fano-line" => FANO_LINE,
        "crown" => CROWN,
        "hexagon" => HEXAGON,
        "prism" => PRISM,
        "grid" => GRID,
        "fano" => FANO,
        "moebius-kantor" => MOEBIUS_KANTOR,
        _ => return None,
    })
}

/// Looks up a built-in configuration by name.
pub fn builtin(name: &str) -> Result<Configuration> {
    let words = lines_of(name).ok_or_else(|| Error::UnknownConfiguration(name.to_string()))?;
    let lines: Vec<[usize; 3]> = words
        .iter()
        .map(|w| {
            let b = w.as_bytes();
            [(b[0] - b'a') as usize, (b[1] - b'a') as usize, (b[2] - b'a') as usize]
        })
        .collect();
    let w = lines.iter().flatten().max().map_or(0, |&p| p + 1);
    Ok(Configuration::new(w, lines)
        .expect("built-in configurations are valid")
        .with_name(name))
}

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTIN_NAMES.iter().copied()
}

/// Name of point `p`: letters `a`–`z`, then `p26`, `p27`, ….
pub fn point_name(p: usize) -> String {
    if p < 26 {
        ((b'a' + p as u8) as char).to_string()
    } else {
        format!("p{p}")
    }
}

/// Inverse of [`point_name`].
pub fn parse_point_name(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    if b.len() == 1 && b[0].is_ascii_lowercase() {
        return Some((b[0] - b'a') as usize);
    }
    s.strip_prefix('p')?.parse().ok().filter(|&p: &usize| p >= 26)
}
