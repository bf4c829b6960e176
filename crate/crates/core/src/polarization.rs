//! Polarization of monomial ideals and of their multicomplexes.
//!
//! Variable `x_i` is replaced by the block `x_{i1}, …, x_{it_i}`; blocks are
//! laid out consecutively, so `x_{ij}` sits at position `offset(i) + j - 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{ExpVec, Fin, Inf};
use crate::ideals::MonomialIdeal;
use crate::multicomplex::Multicomplex;

/// Block sizes `t_1, …, t_n`; serialized as `{"blocks":[…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationMap {
    pub blocks: Vec<u32>,
}

impl PolarizationMap {
    /// `t_i` is the largest exponent of `x_i` among the generators, or 1.
    pub fn for_ideal(ideal: &MonomialIdeal) -> Self {
        PolarizationMap { blocks: ideal.max_exponents().into_iter().map(|t| t.max(1)).collect() }
    }

    pub fn source_dim(&self) -> usize {
        self.blocks.len()
    }

    pub fn target_dim(&self) -> usize {
        self.blocks.iter().map(|&t| t as usize).sum()
    }

    pub fn offset(&self, i: usize) -> usize {
        self.blocks[..i].iter().map(|&t| t as usize).sum()
    }

    /// Position of `x_{ij}` (both 0-based).
    pub fn position(&self, i: usize, j: usize) -> usize {
        self.offset(i) + j
    }

    fn check_source(&self, a: &ExpVec) -> Result<()> {
        if a.dim() != self.source_dim() {
            return Err(Error::DimensionMismatch { expected: self.source_dim(), found: a.dim() });
        }
        Ok(())
    }

    /// `x^a ↦ ∏_i x_{i1} ⋯ x_{i a(i)}`.
    pub fn polarize_monomial(&self, a: &ExpVec) -> Result<ExpVec> {
        self.transport_shedding(a)
    }

    /// The facet map `β`.
    pub fn beta(&self, a: &ExpVec) -> Result<ExpVec> {
        self.check_source(a)?;
        let mut out = Vec::with_capacity(self.target_dim());
        for (i, (&e, &t)) in a.entries().iter().zip(&self.blocks).enumerate() {
            match e {
                Inf => out.extend(std::iter::repeat_n(Inf, t as usize)),
                Fin(v) if v < t => out.extend((0..t).map(|j| if j == v { Fin(0) } else { Inf })),
                Fin(v) => {
                    return Err(Error::PolarizationAnomaly { facet: a.to_string(), coord: i + 1, entry: v, block: t })
                }
            }
        }
        ExpVec::new(out)
    }

    /// `a'(ij) = 1` for `j <= a(i)`, else 0.
    pub fn transport_shedding(&self, a: &ExpVec) -> Result<ExpVec> {
        self.check_source(a)?;
        a.require_finite()?;
        let mut out = Vec::with_capacity(self.target_dim());
        for (i, (&e, &t)) in a.entries().iter().zip(&self.blocks).enumerate() {
            let v = e.finite().expect("finite");
            if v > t {
                return Err(Error::InvalidArgument(format!("entry {v} at coordinate {} exceeds t = {t}", i + 1)));
            }
            out.extend((0..t).map(|j| Fin(u32::from(j < v))));
        }
        ExpVec::new(out)
    }

    /// Block sums: the inverse of [`transport_shedding`](Self::transport_shedding).
    pub fn untransport(&self, b: &ExpVec) -> Result<ExpVec> {
        if b.dim() != self.target_dim() {
            return Err(Error::DimensionMismatch { expected: self.target_dim(), found: b.dim() });
        }
        b.require_finite()?;
        let mut out = Vec::with_capacity(self.source_dim());
        let mut pos = 0;
        for &t in &self.blocks {
            let s = b.entries()[pos..pos + t as usize].iter().map(|e| e.finite().expect("finite")).sum();
            out.push(Fin(s));
            pos += t as usize;
        }
        ExpVec::new(out)
    }
}

/// `I^p` together with its block map.
pub fn polarize_ideal(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, PolarizationMap)> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let map = PolarizationMap::for_ideal(ideal);
    let gens = ideal.gens().iter().map(|g| map.polarize_monomial(g)).collect::<Result<Vec<_>>>()?;
    Ok((MonomialIdeal::new(map.target_dim(), gens)?, map))
}

/// `Γ^p`, the image of `F(Γ)` under `β`, with blocks taken from `I(Γ)`.
pub fn polarize_multicomplex(g: &Multicomplex) -> Result<(Multicomplex, PolarizationMap)> {
    let map = PolarizationMap::for_ideal(&g.to_ideal());
    let facets = g.facets().iter().map(|a| map.beta(a)).collect::<Result<Vec<_>>>()?;
    Ok((Multicomplex::generated_by(map.target_dim(), facets)?, map))
}
