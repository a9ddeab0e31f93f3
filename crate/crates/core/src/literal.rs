//! Text and JSON literals for atoms, subcategories, torsion pairs, window
//! pairs and extended hearts.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dercat::{DAtom, DerivedWindow, WindowPair};
use crate::error::{Error, Result};
use crate::hrs::ExtendedHeart;
use crate::quiver::Interval;
use crate::torspairs::AtomSet;

/// Splits `M[1,2], M[3,3]@1` (optionally wrapped in brackets) into atom
/// tokens. Commas inside brackets do not split.
pub fn split_atoms(s: &str) -> Result<Vec<String>> {
    let mut body = s.trim();
    if body.starts_with('[') && body.ends_with(']') {
        body = &body[1..body.len() - 1];
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in body.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::parse(s, "unbalanced brackets"));
        }
        cur.push(c);
    }
    if depth != 0 {
        return Err(Error::parse(s, "unbalanced brackets"));
    }
    out.push(cur);
    let out: Vec<String> = out.into_iter().map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect();
    Ok(out)
}

pub fn parse_modules(s: &str) -> Result<BTreeSet<Interval>> {
    split_atoms(s)?.iter().map(|t| Interval::from_str(t)).collect()
}

pub fn parse_datoms(s: &str) -> Result<BTreeSet<DAtom>> {
    split_atoms(s)?.iter().map(|t| DAtom::from_str(t)).collect()
}

/// A torsion pair literal with raw atom tokens on each side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairLiteral {
    #[serde(rename = "U")]
    pub u: Vec<String>,
    #[serde(rename = "V")]
    pub v: Vec<String>,
}

impl FromStr for PairLiteral {
    type Err = Error;

    /// `U = [...]; V = [...]`
    fn from_str(s: &str) -> Result<Self> {
        let mut u = None;
        let mut v = None;
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(|| Error::parse(part, "expected `U = [...]` or `V = [...]`"))?;
            let atoms = split_atoms(val)?;
            match key.trim() {
                "U" => u = Some(atoms),
                "V" => v = Some(atoms),
                k => return Err(Error::parse(k, "unknown side, expected U or V")),
            }
        }
        match (u, v) {
            (Some(u), Some(v)) => Ok(PairLiteral { u, v }),
            _ => Err(Error::parse(s, "both U and V are required")),
        }
    }
}

impl PairLiteral {
    pub fn modules(&self) -> Result<(BTreeSet<Interval>, BTreeSet<Interval>)> {
        let p = |xs: &[String]| xs.iter().map(|t| Interval::from_str(t)).collect::<Result<BTreeSet<_>>>();
        Ok((p(&self.u)?, p(&self.v)?))
    }
}

/// Reads `@path` from disk; anything else is returned as is.
pub fn load_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(arg.to_string()),
    }
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// A module torsion pair from a literal, a JSON object `{"U": [...], "V": [...]}`
/// or `@file` holding either.
pub fn module_pair(arg: &str) -> Result<PairLiteral> {
    let text = load_arg(arg)?;
    if is_json(&text) {
        serde_json::from_str(&text).map_err(|e| Error::parse(text.trim(), e.to_string()))
    } else {
        text.trim().parse()
    }
}

/// A window pair from JSON or `@file`.
pub fn window_pair(arg: &str) -> Result<WindowPair> {
    let text = load_arg(arg)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::parse(text.trim(), e.to_string()))?;
    WindowPair::from_json(&v)
}

#[derive(Serialize, Deserialize)]
struct HeartJson {
    m: i32,
    atoms: Vec<String>,
}

pub fn heart_to_json(dw: &DerivedWindow, e: &ExtendedHeart) -> Value {
    serde_json::to_value(HeartJson { m: e.m, atoms: dw.atoms_of(e.atoms).iter().map(|a| a.to_string()).collect() })
        .expect("serializable")
}

/// An extended heart `{m, atoms}` from JSON or `@file`; atoms must lie in
/// the window.
pub fn extended_heart(dw: &DerivedWindow, arg: &str) -> Result<ExtendedHeart> {
    let text = load_arg(arg)?;
    let raw: HeartJson = serde_json::from_str(&text).map_err(|e| Error::parse(text.trim(), e.to_string()))?;
    let atoms = raw.atoms.iter().map(|t| DAtom::from_str(t)).collect::<Result<Vec<_>>>()?;
    Ok(ExtendedHeart { m: raw.m, atoms: dw.set_of(&atoms)?, source: None })
}

/// Atoms of a window from a list literal.
pub fn window_atoms(dw: &DerivedWindow, s: &str) -> Result<AtomSet> {
    let atoms: Vec<DAtom> = parse_datoms(s)?.into_iter().collect();
    dw.set_of(&atoms)
}
