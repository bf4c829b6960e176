//! Candidate enumeration shared by the shedding-face and cleaner-monomial searches.

use serde::{Deserialize, Serialize};

use crate::exponents::{grid, ExpVec};

/// Per-coordinate exponent caps for candidate enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchBound {
    /// Caps derived from the instance at every node of the search.
    #[default]
    Auto,
    /// The same cap on every coordinate.
    Uniform(u32),
    /// One cap per coordinate.
    PerCoordinate(Vec<u32>),
}

impl SearchBound {
    pub(crate) fn resolve(&self, auto: Vec<u32>) -> Vec<u32> {
        match self {
            SearchBound::Auto => auto,
            SearchBound::Uniform(c) => vec![*c; auto.len()],
            SearchBound::PerCoordinate(caps) => {
                assert_eq!(caps.len(), auto.len(), "bound has the wrong number of coordinates");
                caps.clone()
            }
        }
    }
}

/// Nonzero finite vectors under `caps` with at most `max_support` nonzero
/// coordinates, ordered by support size, then total degree, then canonical order.
pub(crate) fn ordered_candidates(caps: &[u32], max_support: usize) -> Vec<ExpVec> {
    let mut out: Vec<(usize, u64, ExpVec)> = grid(caps)
        .filter(|v| !v.is_zero())
        .map(|v| (v.support().len(), v.degree(), v))
        .filter(|(s, _, _)| *s <= max_support)
        .collect();
    out.sort();
    out.into_iter().map(|(_, _, v)| v).collect()
}
