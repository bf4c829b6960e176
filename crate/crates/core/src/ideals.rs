//! Monomial ideals stored by their unique minimal generating set.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{monomial_string, ExpVec, Fin};
use crate::multicomplex::Multicomplex;

/// A monomial ideal of `K[x_1, …, x_n]`.
///
/// The generator list is the minimal generating set in canonical order, so
/// structural equality is ideal equality. The zero ideal has no generators;
/// the unit ideal is generated by the zero vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealRecord", into = "IdealRecord")]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<ExpVec>,
}

#[derive(Serialize, Deserialize)]
struct IdealRecord {
    n: usize,
    gens: Vec<ExpVec>,
}

impl TryFrom<IdealRecord> for MonomialIdeal {
    type Error = Error;

    fn try_from(r: IdealRecord) -> Result<Self> {
        MonomialIdeal::new(r.n, r.gens)
    }
}

impl From<MonomialIdeal> for IdealRecord {
    fn from(i: MonomialIdeal) -> Self {
        IdealRecord { n: i.n, gens: i.gens }
    }
}

/// The prime `(x_i : i ∈ vars)`; 0-based variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialPrime {
    pub n: usize,
    pub vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let vars: BTreeSet<usize> = vars.into_iter().collect();
        assert!(vars.iter().all(|&v| v < n), "variable index out of range");
        MonomialPrime { n, vars: vars.into_iter().collect() }
    }

    pub fn is_subset(&self, other: &MonomialPrime) -> bool {
        self.vars.iter().all(|v| other.vars.binary_search(v).is_ok())
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        let mut gens: Vec<ExpVec> = self.vars.iter().map(|&i| ExpVec::unit(self.n, i)).collect();
        gens.sort();
        MonomialIdeal { n: self.n, gens }
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.vars.iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "({})", vars.join(","))
    }
}

/// Keeps the inclusion-minimal elements of a finite set of vectors, in canonical order.
pub fn minimal_elements(mut vs: Vec<ExpVec>) -> Vec<ExpVec> {
    vs.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    vs.dedup();
    let mut kept: Vec<ExpVec> = Vec::with_capacity(vs.len());
    for v in vs {
        if !kept.iter().any(|k| k.below(&v)) {
            kept.push(v);
        }
    }
    kept.sort();
    kept
}

fn lcm(a: &ExpVec, b: &ExpVec) -> ExpVec {
    a.join(b).expect("dimensions checked by caller")
}

impl MonomialIdeal {
    /// Minimizes `raw_gens` into the canonical generating set.
    pub fn new(n: usize, raw_gens: Vec<ExpVec>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        for g in &raw_gens {
            if g.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
            }
            g.require_finite()?;
        }
        Ok(MonomialIdeal { n, gens: minimal_elements(raw_gens) })
    }

    /// Convenience constructor from exponent rows.
    pub fn from_rows(n: usize, rows: &[&[u32]]) -> Result<Self> {
        let gens = rows
            .iter()
            .map(|r| ExpVec::new(r.iter().copied().map(Fin).collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, gens)
    }

    pub(crate) fn from_minimal_unchecked(n: usize, gens: Vec<ExpVec>) -> Self {
        MonomialIdeal { n, gens: minimal_elements(gens) }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![] }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![ExpVec::zeros(n)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[ExpVec] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.entries().iter().all(|&e| e <= Fin(1)))
    }

    /// Largest exponent of each variable over the generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut caps = vec![0u32; self.n];
        for g in &self.gens {
            for (c, e) in caps.iter_mut().zip(g.entries()) {
                *c = (*c).max(e.finite().unwrap_or(0));
            }
        }
        caps
    }

    /// Variables dividing some generator.
    pub fn support(&self) -> BTreeSet<usize> {
        self.gens.iter().flat_map(|g| g.support()).collect()
    }

    /// Membership: some generator divides `m`. For a vector with infinite
    /// entries this asks whether some finite truncation lies in the ideal.
    pub fn contains(&self, m: &ExpVec) -> bool {
        self.gens.iter().any(|g| g.below(m))
    }

    /// `I ⊆ J`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    fn check_dim(&self, v: &ExpVec) -> Result<()> {
        if v.dim() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, found: v.dim() })
        }
    }

    /// `I : x^u`. Infinite coordinates of `u` saturate.
    pub fn colon(&self, u: &ExpVec) -> Result<MonomialIdeal> {
        self.check_dim(u)?;
        Ok(MonomialIdeal { n: self.n, gens: minimal_elements(self.gens.iter().map(|g| g.monus(u)).collect()) })
    }

    /// `I + (x^u)`.
    pub fn add_principal(&self, u: &ExpVec) -> Result<MonomialIdeal> {
        self.check_dim(u)?;
        u.require_finite()?;
        if self.contains(u) {
            return Ok(self.clone());
        }
        let mut gens: Vec<ExpVec> = self.gens.iter().filter(|g| !u.below(g)).cloned().collect();
        gens.push(u.clone());
        gens.sort();
        Ok(MonomialIdeal { n: self.n, gens })
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(Self::from_minimal_unchecked(self.n, self.gens.iter().chain(&other.gens).cloned().collect()))
    }

    /// `I ∩ J`, generated by pairwise least common multiples.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let lcms = self.gens.iter().flat_map(|g| other.gens.iter().map(move |h| lcm(g, h))).collect();
        Ok(Self::from_minimal_unchecked(self.n, lcms))
    }

    /// `√I`: the squarefree part of every generator.
    pub fn radical(&self) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let entries = g.entries().iter().map(|&e| if e.is_zero() { e } else { Fin(1) }).collect();
                ExpVec::new(entries).expect("n >= 1")
            })
            .collect();
        Self::from_minimal_unchecked(self.n, gens)
    }

    /// The variable set if the ideal is generated by variables. The zero ideal is prime.
    pub fn is_prime(&self) -> Option<MonomialPrime> {
        let mut vars = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let supp = g.support();
            if supp.len() != 1 || g.get(supp[0]) != Fin(1) {
                return None;
            }
            vars.push(supp[0]);
        }
        Some(MonomialPrime::new(self.n, vars))
    }

    /// Irredundant decomposition into ideals generated by pure powers.
    pub fn irreducible_decomposition(&self) -> Result<Vec<MonomialIdeal>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let mut leaves = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(ideal) = stack.pop() {
            match ideal.gens.iter().position(|g| g.support().len() > 1) {
                None => leaves.push(ideal),
                Some(pos) => {
                    let g = &ideal.gens[pos];
                    let first = g.support()[0];
                    let mut power = ExpVec::zeros(self.n);
                    power.set(first, g.get(first));
                    let mut rest = g.clone();
                    rest.set(first, Fin(0));
                    let others: Vec<ExpVec> =
                        ideal.gens.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, h)| h.clone()).collect();
                    for piece in [power, rest] {
                        let mut gens = others.clone();
                        gens.push(piece);
                        stack.push(Self::from_minimal_unchecked(self.n, gens));
                    }
                }
            }
        }
        leaves.sort_by(|a, b| a.gens.cmp(&b.gens));
        leaves.dedup();
        // Q is redundant iff another component is strictly contained in it.
        let irredundant: Vec<MonomialIdeal> = leaves
            .iter()
            .filter(|q| !leaves.iter().any(|p| p != *q && p.is_subset(q)))
            .cloned()
            .collect();
        Ok(irredundant)
    }

    /// `Ass(S/I)`, read off the facets of `Γ(I)`.
    pub fn ass(&self) -> Result<Vec<MonomialPrime>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Ok(associated_primes(self))
    }

    /// Inclusion-minimal associated primes.
    pub fn min_primes(&self) -> Result<Vec<MonomialPrime>> {
        self.ass().map(|a| minimal_primes(&a))
    }

    /// True when every associated prime is minimal.
    pub fn has_no_embedded_primes(&self) -> Result<bool> {
        let ass = self.ass()?;
        Ok(minimal_primes(&ass).len() == ass.len())
    }

    /// Product of ideals living on disjoint sets of variables.
    pub fn product_disjoint(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if !self.support().is_disjoint(&other.support()) {
            return Err(Error::OverlappingBlocks);
        }
        let prods = self
            .gens
            .iter()
            .flat_map(|g| other.gens.iter().map(move |h| g.add(h).expect("same n")))
            .collect();
        Ok(Self::from_minimal_unchecked(self.n, prods))
    }

    /// Places this ideal into `total` variables starting at `offset`.
    pub fn embed(&self, total: usize, offset: usize) -> Result<MonomialIdeal> {
        if offset + self.n > total {
            return Err(Error::InvalidArgument(format!(
                "cannot place {} variables at offset {offset} in {total}",
                self.n
            )));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![Fin(0); total];
                e[offset..offset + self.n].copy_from_slice(g.entries());
                ExpVec::new(e).expect("total >= 1")
            })
            .collect();
        Ok(MonomialIdeal { n: total, gens })
    }
}

/// `Ass(S/I)` for any proper ideal, including `{(0)}` for the zero ideal.
pub(crate) fn associated_primes(ideal: &MonomialIdeal) -> Vec<MonomialPrime> {
    debug_assert!(!ideal.is_unit());
    let gamma = Multicomplex::from_ideal(ideal);
    let primes: BTreeSet<MonomialPrime> =
        gamma.facets().iter().map(|b| MonomialPrime::new(ideal.n(), b.fpt())).collect();
    primes.into_iter().collect()
}

pub(crate) fn minimal_primes(primes: &[MonomialPrime]) -> Vec<MonomialPrime> {
    primes.iter().filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p))).cloned().collect()
}

/// The prime `(x_j : j ∈ vars)` as an ideal, compared against a colon ideal.
pub(crate) fn is_prime_on(ideal: &MonomialIdeal, vars: &[usize]) -> bool {
    match ideal.is_prime() {
        Some(p) => p.vars == vars,
        None => false,
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("(0)");
        }
        let gens: Vec<String> = self.gens.iter().map(monomial_string).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// Finite exponent vector shorthand used by tests and examples.
pub fn mono(entries: &[u32]) -> ExpVec {
    ExpVec::finite(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::Exp;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_rows(n, rows).unwrap()
    }

    fn prime(n: usize, vars: &[usize]) -> MonomialPrime {
        MonomialPrime::new(n, vars.iter().map(|v| v - 1))
    }

    fn cyclic_ideal() -> MonomialIdeal {
        ideal(3, &[&[1, 2, 0], &[0, 1, 2], &[2, 0, 1]])
    }

    #[test]
    fn minimize_examples() {
        let i = ideal(3, &[&[1, 2, 0], &[0, 1, 2], &[2, 0, 1], &[2, 2, 1]]);
        assert_eq!(i, cyclic_ideal());
        assert_eq!(i.gens().len(), 3);
        assert!(MonomialIdeal::new(2, vec![]).unwrap().is_zero());
        assert_eq!(ideal(2, &[&[3, 1], &[4, 0], &[4, 1]]), ideal(2, &[&[3, 1], &[4, 0]]));
    }

    #[test]
    fn minimize_rejects_infinite_generators() {
        let g = ExpVec::new(vec![Fin(1), Exp::Inf]).unwrap();
        assert!(matches!(MonomialIdeal::new(2, vec![g]), Err(Error::InfiniteEntry(_))));
    }

    #[test]
    fn contains_examples() {
        let i = ideal(2, &[&[4, 0], &[3, 1]]);
        assert!(!i.contains(&mono(&[3, 0])));
        assert!(i.contains(&mono(&[3, 2])));
        assert!(!MonomialIdeal::zero(2).contains(&mono(&[5, 5])));
    }

    #[test]
    fn colon_examples() {
        assert_eq!(cyclic_ideal().colon(&mono(&[2, 0, 0])).unwrap(), ideal(3, &[&[0, 2, 0], &[0, 0, 1]]));
        assert_eq!(ideal(2, &[&[4, 0], &[3, 1]]).colon(&mono(&[3, 0])).unwrap(), ideal(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(cyclic_ideal().colon(&mono(&[0, 0, 0])).unwrap(), cyclic_ideal());
    }

    #[test]
    fn add_principal_examples() {
        let sum = cyclic_ideal().add_principal(&mono(&[2, 0, 0])).unwrap();
        assert_eq!(sum, ideal(3, &[&[1, 2, 0], &[0, 1, 2], &[2, 0, 0]]));
        assert_eq!(cyclic_ideal().add_principal(&mono(&[2, 2, 2])).unwrap(), cyclic_ideal());
        assert_eq!(MonomialIdeal::zero(2).add_principal(&mono(&[1, 0])).unwrap(), ideal(2, &[&[1, 0]]));
    }

    #[test]
    fn radical_examples() {
        assert_eq!(cyclic_ideal().radical(), ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]));
        let sqf = ideal(3, &[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(sqf.radical(), sqf);
        assert_eq!(ideal(2, &[&[4, 0], &[3, 1]]).radical(), ideal(2, &[&[1, 0]]));
    }

    #[test]
    fn is_prime_examples() {
        assert_eq!(ideal(3, &[&[0, 1, 0], &[0, 0, 1]]).is_prime(), Some(prime(3, &[2, 3])));
        assert_eq!(ideal(3, &[&[0, 2, 0], &[0, 0, 1]]).is_prime(), None);
        assert_eq!(MonomialIdeal::zero(3).is_prime(), Some(prime(3, &[])));
        assert_eq!(MonomialIdeal::unit(3).is_prime(), None);
    }

    #[test]
    fn irreducible_decomposition_examples() {
        let dec = ideal(2, &[&[4, 0], &[3, 1]]).irreducible_decomposition().unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec.contains(&ideal(2, &[&[3, 0]])));
        assert!(dec.contains(&ideal(2, &[&[4, 0], &[0, 1]])));
        let pure = ideal(2, &[&[2, 0], &[0, 1]]);
        assert_eq!(pure.irreducible_decomposition().unwrap(), vec![pure]);
        let dec = ideal(2, &[&[1, 1]]).irreducible_decomposition().unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec.contains(&ideal(2, &[&[1, 0]])) && dec.contains(&ideal(2, &[&[0, 1]])));
        assert_eq!(MonomialIdeal::unit(2).irreducible_decomposition(), Err(Error::UnitIdeal));
    }

    #[test]
    fn ass_of_cyclic_ideal_and_its_neighbours() {
        let expect = |v: &[&[usize]]| -> Vec<MonomialPrime> {
            let mut ps: Vec<MonomialPrime> = v.iter().map(|p| prime(3, p)).collect();
            ps.sort();
            ps
        };
        assert_eq!(cyclic_ideal().ass().unwrap(), expect(&[&[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]]));
        let sum = cyclic_ideal().add_principal(&mono(&[2, 0, 0])).unwrap();
        assert_eq!(sum.ass().unwrap(), expect(&[&[1, 2], &[1, 3], &[1, 2, 3]]));
        let colon = cyclic_ideal().colon(&mono(&[2, 0, 0])).unwrap();
        assert_eq!(colon.ass().unwrap(), expect(&[&[2, 3]]));
    }

    #[test]
    fn ass_rejects_trivial_ideals() {
        assert_eq!(MonomialIdeal::unit(2).ass(), Err(Error::UnitIdeal));
        assert_eq!(MonomialIdeal::zero(2).ass(), Err(Error::ZeroIdeal));
    }

    #[test]
    fn product_disjoint_examples() {
        let x1 = ideal(2, &[&[1, 0]]);
        let x2 = ideal(2, &[&[0, 1]]);
        assert_eq!(x1.product_disjoint(&x2).unwrap(), ideal(2, &[&[1, 1]]));
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0]]);
        let j = ideal(3, &[&[0, 0, 1]]);
        assert_eq!(i.product_disjoint(&j).unwrap(), ideal(3, &[&[2, 0, 1], &[1, 1, 1]]));
        assert_eq!(i.product_disjoint(&MonomialIdeal::unit(3)).unwrap(), i);
        assert_eq!(i.product_disjoint(&ideal(3, &[&[0, 1, 0]])), Err(Error::OverlappingBlocks));
    }

    #[test]
    fn json_round_trip_and_minimization() {
        let i: MonomialIdeal = serde_json::from_str(r#"{"n":3,"gens":[[1,2,0],[0,1,2],[2,0,1],[2,2,1]]}"#).unwrap();
        assert_eq!(i, cyclic_ideal());
        let text = serde_json::to_string(&i).unwrap();
        assert_eq!(serde_json::from_str::<MonomialIdeal>(&text).unwrap(), i);
        assert!(serde_json::from_str::<MonomialIdeal>(r#"{"n":2,"gens":[[1,2,3]]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(cyclic_ideal().to_string(), "(x2*x3^2, x1*x2^2, x1^2*x3)");
        assert_eq!(MonomialIdeal::zero(2).to_string(), "(0)");
        assert_eq!(MonomialIdeal::unit(2).to_string(), "(1)");
    }
}
