//! Cleaner and pretty cleaner monomials, (pretty) k-clean deciders with ideal
//! tree certificates, prime filtrations and cleanness length.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::ExpVec;
use crate::ideals::{associated_primes, minimal_primes, MonomialIdeal, MonomialPrime};
use crate::search::{ordered_candidates, SearchBound};

/// Which recursive cleanness notion a search certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cleanness {
    /// Cleaner monomials and no embedded primes at every internal node.
    KClean,
    /// Pretty cleaner monomials.
    PrettyKClean,
}

/// Ordering/support condition checked by [`verify_filtration`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationMode {
    Clean,
    PrettyClean,
}

fn check_candidate(ideal: &MonomialIdeal, u: &ExpVec) -> Result<()> {
    if u.dim() != ideal.n() {
        return Err(Error::DimensionMismatch { expected: ideal.n(), found: u.dim() });
    }
    u.require_finite()?;
    if u.is_zero() {
        return Err(Error::InvalidArgument("the monomial 1 is never a cleaner".into()));
    }
    if ideal.contains(u) {
        return Err(Error::InvalidArgument(format!("{u} lies in the ideal")));
    }
    Ok(())
}

/// `min(ass(I + (u))) ⊆ min(ass(I))`.
pub fn is_cleaner(ideal: &MonomialIdeal, u: &ExpVec) -> Result<bool> {
    check_candidate(ideal, u)?;
    Ok(cleaner(ideal, u))
}

fn cleaner(ideal: &MonomialIdeal, u: &ExpVec) -> bool {
    let sum = ideal.add_principal(u).expect("checked");
    let old = minimal_primes(&associated_primes(ideal));
    minimal_primes(&associated_primes(&sum)).iter().all(|p| old.contains(p))
}

/// No `P ∈ ass(I : u)` lies strictly inside a `Q ∈ ass(I + (u))`.
pub fn is_pretty_cleaner(ideal: &MonomialIdeal, u: &ExpVec) -> Result<bool> {
    check_candidate(ideal, u)?;
    Ok(pretty_cleaner(ideal, u))
}

fn pretty_cleaner(ideal: &MonomialIdeal, u: &ExpVec) -> bool {
    let colon = associated_primes(&ideal.colon(u).expect("checked"));
    let sum = associated_primes(&ideal.add_principal(u).expect("checked"));
    !colon.iter().any(|p| sum.iter().any(|q| p != q && p.is_subset(q)))
}

fn no_embedded(ideal: &MonomialIdeal) -> bool {
    let ass = associated_primes(ideal);
    minimal_primes(&ass).len() == ass.len()
}

/// Certificate: a cleaner monomial at every internal node, prime or unit leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum IdealTree {
    Leaf {
        ideal: MonomialIdeal,
    },
    Node {
        ideal: MonomialIdeal,
        monomial: ExpVec,
        colon: Arc<IdealTree>,
        sum: Arc<IdealTree>,
    },
}

impl IdealTree {
    pub fn ideal(&self) -> &MonomialIdeal {
        match self {
            IdealTree::Leaf { ideal } | IdealTree::Node { ideal, .. } => ideal,
        }
    }

    /// Number of cleaner monomials, `l(T)`.
    pub fn len(&self) -> usize {
        match self {
            IdealTree::Leaf { .. } => 0,
            IdealTree::Node { colon, sum, .. } => 1 + colon.len() + sum.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn is_leaf(ideal: &MonomialIdeal) -> bool {
    ideal.is_unit() || ideal.is_prime().is_some()
}

/// Re-checks an ideal tree from scratch.
pub fn verify_ideal_tree(tree: &IdealTree, k: usize, kind: Cleanness) -> std::result::Result<(), String> {
    match tree {
        IdealTree::Leaf { ideal } => {
            if is_leaf(ideal) {
                Ok(())
            } else {
                Err(format!("leaf {ideal} is neither prime nor the unit ideal"))
            }
        }
        IdealTree::Node { ideal, monomial, colon, sum } => {
            check_candidate(ideal, monomial).map_err(|e| e.to_string())?;
            if monomial.support().len() > k + 1 {
                return Err(format!("{monomial} is supported on more than {} variables", k + 1));
            }
            let ok = match kind {
                Cleanness::KClean => no_embedded(ideal) && cleaner(ideal, monomial),
                Cleanness::PrettyKClean => pretty_cleaner(ideal, monomial),
            };
            if !ok {
                return Err(format!("{monomial} fails the node condition at {ideal}"));
            }
            if colon.ideal() != &ideal.colon(monomial).expect("checked") {
                return Err(format!("colon child at {ideal} does not match"));
            }
            if sum.ideal() != &ideal.add_principal(monomial).expect("checked") {
                return Err(format!("sum child at {ideal} does not match"));
            }
            verify_ideal_tree(colon, k, kind)?;
            verify_ideal_tree(sum, k, kind)
        }
    }
}

type MemoKey = (usize, Vec<ExpVec>, usize, Cleanness);

/// Memoized search for cleanness certificates.
///
/// One search may serve both notions; the memo is keyed by
/// `(generators, k, notion)`.
#[derive(Default)]
pub struct CleanSearch {
    bound: SearchBound,
    memo: HashMap<MemoKey, Option<Arc<IdealTree>>>,
    lengths: HashMap<(usize, Vec<ExpVec>, usize), Option<usize>>,
}

impl CleanSearch {
    pub fn new(bound: SearchBound) -> Self {
        CleanSearch { bound, ..Default::default() }
    }

    /// Caps in effect at the root of a query on `ideal`.
    pub fn caps(&self, ideal: &MonomialIdeal) -> Vec<u32> {
        self.bound.resolve(ideal.max_exponents())
    }

    /// Cleaner candidates that make progress on both branches.
    fn candidates(&self, ideal: &MonomialIdeal, k: usize) -> impl Iterator<Item = (ExpVec, MonomialIdeal, MonomialIdeal)> + '_ {
        let ideal = ideal.clone();
        ordered_candidates(&self.caps(&ideal), k + 1).into_iter().filter_map(move |u| {
            if ideal.contains(&u) {
                return None;
            }
            let colon = ideal.colon(&u).expect("same n");
            if colon == ideal {
                return None;
            }
            let sum = ideal.add_principal(&u).expect("same n");
            Some((u, colon, sum))
        })
    }

    pub fn decide(&mut self, ideal: &MonomialIdeal, k: usize, kind: Cleanness) -> Option<Arc<IdealTree>> {
        if is_leaf(ideal) {
            return Some(Arc::new(IdealTree::Leaf { ideal: ideal.clone() }));
        }
        let key = (ideal.n(), ideal.gens().to_vec(), k, kind);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let result = self.search(ideal, k, kind);
        self.memo.insert(key, result.clone());
        result
    }

    fn search(&mut self, ideal: &MonomialIdeal, k: usize, kind: Cleanness) -> Option<Arc<IdealTree>> {
        if kind == Cleanness::KClean && !no_embedded(ideal) {
            return None;
        }
        let candidates: Vec<_> = self.candidates(ideal, k).collect();
        for (u, colon, sum) in candidates {
            let ok = match kind {
                Cleanness::KClean => cleaner(ideal, &u),
                Cleanness::PrettyKClean => pretty_cleaner(ideal, &u),
            };
            if !ok {
                continue;
            }
            let Some(colon_tree) = self.decide(&colon, k, kind) else {
                continue;
            };
            let Some(sum_tree) = self.decide(&sum, k, kind) else {
                continue;
            };
            return Some(Arc::new(IdealTree::Node {
                ideal: ideal.clone(),
                monomial: u,
                colon: colon_tree,
                sum: sum_tree,
            }));
        }
        None
    }

    /// Fewest pretty cleaner monomials over all pretty k-clean trees within the bound.
    pub fn length(&mut self, ideal: &MonomialIdeal, k: usize) -> Option<usize> {
        if is_leaf(ideal) {
            return Some(0);
        }
        let key = (ideal.n(), ideal.gens().to_vec(), k);
        if let Some(&hit) = self.lengths.get(&key) {
            return hit;
        }
        let candidates: Vec<_> = self.candidates(ideal, k).collect();
        let mut best: Option<usize> = None;
        for (u, colon, sum) in candidates {
            if !pretty_cleaner(ideal, &u) {
                continue;
            }
            let (Some(a), Some(b)) = (self.length(&colon, k), self.length(&sum, k)) else {
                continue;
            };
            best = Some(best.map_or(1 + a + b, |v| v.min(1 + a + b)));
        }
        self.lengths.insert(key, best);
        best
    }
}

fn nonneg(k: i64) -> Result<usize> {
    usize::try_from(k).map_err(|_| Error::InvalidArgument(format!("k must be >= 0, got {k}")))
}

/// Pretty k-clean certificate with the default bound.
pub fn is_pretty_k_clean(ideal: &MonomialIdeal, k: i64) -> Result<Option<Arc<IdealTree>>> {
    let k = nonneg(k)?;
    Ok(CleanSearch::default().decide(ideal, k, Cleanness::PrettyKClean))
}

/// k-clean certificate with the default bound.
pub fn is_k_clean(ideal: &MonomialIdeal, k: i64) -> Result<Option<Arc<IdealTree>>> {
    let k = nonneg(k)?;
    Ok(CleanSearch::default().decide(ideal, k, Cleanness::KClean))
}

/// `l(I)` over pretty k-clean trees within the default bound.
pub fn cleanness_length(ideal: &MonomialIdeal, k: i64) -> Result<Option<usize>> {
    let k = nonneg(k)?;
    Ok(CleanSearch::default().length(ideal, k))
}

/// One step `I_{i-1} ⊂ I_i = I_{i-1} + (u_i)` with `I_{i-1} : u_i = P_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationStep {
    pub before: MonomialIdeal,
    pub witness: ExpVec,
    pub after: MonomialIdeal,
    pub prime: MonomialPrime,
}

/// Chain `I = I_0 ⊂ I_1 ⊂ … ⊂ I_r = S` with cyclic prime quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFiltration {
    pub steps: Vec<FiltrationStep>,
}

impl PrimeFiltration {
    /// Builds the chain from `ideal` and the witness/prime pairs.
    pub fn from_witnesses(ideal: &MonomialIdeal, pairs: Vec<(ExpVec, MonomialPrime)>) -> Result<Self> {
        let mut steps = Vec::with_capacity(pairs.len());
        let mut current = ideal.clone();
        for (witness, prime) in pairs {
            let after = current.add_principal(&witness)?;
            steps.push(FiltrationStep { before: current, witness, after: after.clone(), prime });
            current = after;
        }
        Ok(PrimeFiltration { steps })
    }

    /// `Supp(F)`: the distinct primes, sorted.
    pub fn support(&self) -> Vec<MonomialPrime> {
        let mut primes: Vec<MonomialPrime> = self.steps.iter().map(|s| s.prime.clone()).collect();
        primes.sort();
        primes.dedup();
        primes
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for PrimeFiltration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(
                f,
                "{} --{}--> {} : {}",
                s.before,
                crate::exponents::monomial_string(&s.witness),
                s.after,
                s.prime
            )?;
        }
        Ok(())
    }
}

/// Stacks a certificate into a prime filtration: the colon branch's
/// witnesses multiplied by `u`, then the sum branch's.
pub fn filtration_from_tree(tree: &IdealTree) -> Result<PrimeFiltration> {
    let mut pairs = Vec::new();
    collect_witnesses(tree, &mut pairs)?;
    PrimeFiltration::from_witnesses(tree.ideal(), pairs)
}

fn collect_witnesses(tree: &IdealTree, out: &mut Vec<(ExpVec, MonomialPrime)>) -> Result<()> {
    match tree {
        IdealTree::Leaf { ideal } => {
            if ideal.is_unit() {
                return Ok(());
            }
            let prime = ideal.is_prime().ok_or_else(|| Error::Malformed(format!("leaf {ideal} is not prime")))?;
            out.push((ExpVec::zeros(ideal.n()), prime));
            Ok(())
        }
        IdealTree::Node { monomial, colon, sum, .. } => {
            let mut inner = Vec::new();
            collect_witnesses(colon, &mut inner)?;
            for (w, p) in inner {
                out.push((w.add(monomial)?, p));
            }
            collect_witnesses(sum, out)
        }
    }
}

/// Checks the chain algebra and the mode's condition on the primes.
pub fn verify_filtration(
    ideal: &MonomialIdeal,
    filtration: &PrimeFiltration,
    mode: FiltrationMode,
) -> std::result::Result<(), String> {
    let mut current = ideal.clone();
    for (i, s) in filtration.steps.iter().enumerate() {
        let step = i + 1;
        if s.before != current {
            return Err(format!("step {step}: chain is broken at {}", s.before));
        }
        let after = current.add_principal(&s.witness).map_err(|e| e.to_string())?;
        if s.after != after {
            return Err(format!("step {step}: {} is not {} + ({})", s.after, current, s.witness));
        }
        if after == current {
            return Err(format!("step {step}: witness {} already lies in {current}", s.witness));
        }
        let colon = current.colon(&s.witness).map_err(|e| e.to_string())?;
        if colon != s.prime.to_ideal() {
            return Err(format!("step {step}: colon is {colon}, not {}", s.prime));
        }
        current = after;
    }
    if !current.is_unit() {
        return Err(format!("chain ends at {current}, not the unit ideal"));
    }
    match mode {
        FiltrationMode::PrettyClean => {
            let primes: Vec<&MonomialPrime> = filtration.steps.iter().map(|s| &s.prime).collect();
            for i in 0..primes.len() {
                for j in i + 1..primes.len() {
                    if primes[i] != primes[j] && primes[i].is_subset(primes[j]) {
                        return Err(format!("P_{} = {} lies strictly inside P_{} = {}", i + 1, primes[i], j + 1, primes[j]));
                    }
                }
            }
        }
        FiltrationMode::Clean => {
            if ideal.is_unit() {
                return Ok(());
            }
            let mut min = minimal_primes(&associated_primes(ideal));
            min.sort();
            if filtration.support() != min {
                return Err("Supp(F) differs from the minimal primes".into());
            }
        }
    }
    Ok(())
}
