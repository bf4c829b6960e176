//! Input files and command-line vectors.

use std::path::Path;

use anyhow::{bail, Context, Result};
use kclean::exponents::{Exp, ExpVec, Fin, Inf};
use kclean::{MonomialIdeal, Multicomplex, SearchBound, SimplicialComplex};
use serde_json::Value;

/// A parsed input file, detected from its keys.
pub enum Input {
    Ideal(MonomialIdeal),
    Multicomplex(Multicomplex),
    Complex(SimplicialComplex),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Ideal(_) => "ideal",
            Input::Multicomplex(_) => "multicomplex",
            Input::Complex(_) => "complex",
        }
    }
}

pub fn read(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text).with_context(|| format!("malformed input file {}", path.display()))
}

pub fn parse(text: &str) -> Result<Input> {
    let value: Value = serde_json::from_str(text)?;
    let Some(map) = value.as_object() else { bail!("expected a JSON object") };
    if map.contains_key("gens") {
        Ok(Input::Ideal(serde_json::from_value(value)?))
    } else if map.contains_key("vertices") {
        Ok(Input::Complex(serde_json::from_value(value)?))
    } else if map.contains_key("facets") && map.contains_key("n") {
        Ok(Input::Multicomplex(serde_json::from_value(value)?))
    } else {
        bail!("expected keys {{n, gens}}, {{n, facets}} or {{vertices, facets}}")
    }
}

/// `2,0,inf` → `(2,0,∞)`.
pub fn exp_vec(text: &str) -> Result<ExpVec> {
    let entries = text
        .split(',')
        .map(|t| match t.trim() {
            "inf" | "INF" | "∞" => Ok(Inf),
            t => t.parse::<u32>().map(Fin).with_context(|| format!("bad exponent {t:?}")),
        })
        .collect::<Result<Vec<Exp>>>()?;
    Ok(ExpVec::new(entries)?)
}

/// `1,4` → 0-based vertices `[0, 3]`.
pub fn vertex_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let v: usize = t.trim().parse().with_context(|| format!("bad vertex {t:?}"))?;
            if v == 0 {
                bail!("vertices are numbered from 1");
            }
            Ok(v - 1)
        })
        .collect()
}

/// `3` → uniform caps, `2,3,1` → one cap per coordinate.
pub fn bound(text: &str) -> Result<SearchBound> {
    let caps = text
        .split(',')
        .map(|t| t.trim().parse::<u32>().with_context(|| format!("bad cap {t:?}")))
        .collect::<Result<Vec<u32>>>()?;
    Ok(match caps.as_slice() {
        [c] => SearchBound::Uniform(*c),
        _ => SearchBound::PerCoordinate(caps),
    })
}

pub fn check_bound_dim(bound: &SearchBound, n: usize) -> Result<()> {
    if let SearchBound::PerCoordinate(caps) = bound {
        if caps.len() != n {
            bail!("--bound has {} caps but the input has {n} variables", caps.len());
        }
    }
    Ok(())
}

pub fn check_k(k: i64, min: i64) -> Result<usize> {
    if k < min {
        bail!("k must be at least {min}, got {k}");
    }
    Ok(k.max(0) as usize)
}
