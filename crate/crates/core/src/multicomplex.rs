//! Multicomplexes in `N^n_∞`, their facets, and the shedding-face machinery.
//!
//! A multicomplex is stored by its maximal elements `M(Γ)`; the facet set
//! `F(Γ)` is derived on demand. `Γ(I)` and `I(Γ)` translate between
//! multicomplexes and monomial ideals: `Γ(I)` is the set of exponents whose
//! monomials avoid `I`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{ExpVec, Fin, Inf};
use crate::ideals::{is_prime_on, MonomialIdeal};
use crate::search::{ordered_candidates, SearchBound};

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "MulticomplexRecord", into = "MulticomplexRecord")]
pub struct Multicomplex {
    n: usize,
    maximal: Vec<ExpVec>,
    facets: OnceLock<Vec<ExpVec>>,
}

#[derive(Serialize, Deserialize)]
struct MulticomplexRecord {
    n: usize,
    facets: Vec<ExpVec>,
}

impl TryFrom<MulticomplexRecord> for Multicomplex {
    type Error = Error;

    fn try_from(r: MulticomplexRecord) -> Result<Self> {
        Multicomplex::generated_by(r.n, r.facets)
    }
}

impl From<Multicomplex> for MulticomplexRecord {
    fn from(g: Multicomplex) -> Self {
        MulticomplexRecord { n: g.n, facets: g.facets().to_vec() }
    }
}

impl PartialEq for Multicomplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.maximal == other.maximal
    }
}

impl Eq for Multicomplex {}

impl Hash for Multicomplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.maximal.hash(state);
    }
}

impl fmt::Debug for Multicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multicomplex{self}")
    }
}

impl fmt::Display for Multicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.maximal.iter().map(|m| m.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// The translate `degree + ⟨m⟩` where `m` is `∞` exactly on `directions`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleySet {
    pub degree: ExpVec,
    pub directions: Vec<usize>,
}

/// Why a face is not a shedding face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShedVerdict {
    Shedding,
    /// `⟨b⟩ \ (Γ \ a)` is not a Stanley set of degree `a`.
    NotStanleyInterval { star_facet: ExpVec },
    /// `fpt(b) ⊊ fpt(c)` for a star facet `b` and a deletion facet `c`.
    FptInclusion { star_facet: ExpVec, deletion_facet: ExpVec },
}

impl ShedVerdict {
    pub fn is_shedding(&self) -> bool {
        matches!(self, ShedVerdict::Shedding)
    }
}

impl fmt::Display for ShedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShedVerdict::Shedding => f.write_str("shedding face"),
            ShedVerdict::NotStanleyInterval { star_facet } => {
                write!(f, "condition (i) fails: interval under {star_facet} is not a Stanley set of the face's degree")
            }
            ShedVerdict::FptInclusion { star_facet, deletion_facet } => {
                write!(f, "condition (ii) fails: fpt{star_facet} is strictly inside fpt{deletion_facet}")
            }
        }
    }
}

/// Ideal of `⟨m⟩`: `(x_j^{m_j+1} : j ∈ fpt(m))`.
fn principal_ideal(m: &ExpVec) -> MonomialIdeal {
    let n = m.dim();
    let gens = m
        .entries()
        .iter()
        .enumerate()
        .filter_map(|(j, e)| e.finite().map(|v| (j, v)))
        .map(|(j, v)| {
            let mut g = ExpVec::zeros(n);
            g.set(j, Fin(v + 1));
            g
        })
        .collect();
    MonomialIdeal::from_minimal_unchecked(n, gens)
}

impl Multicomplex {
    /// `⟨elems⟩`, the smallest multicomplex containing `elems`.
    pub fn generated_by(n: usize, elems: impl IntoIterator<Item = ExpVec>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        let elems: Vec<ExpVec> = elems.into_iter().collect();
        if let Some(bad) = elems.iter().find(|e| e.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
        }
        Ok(Self::from_generators(n, elems))
    }

    fn from_generators(n: usize, mut elems: Vec<ExpVec>) -> Self {
        elems.sort();
        elems.dedup();
        let maximal: Vec<ExpVec> =
            elems.iter().filter(|a| !elems.iter().any(|b| b != *a && a.below(b))).cloned().collect();
        Multicomplex { n, maximal, facets: OnceLock::new() }
    }

    pub fn empty(n: usize) -> Self {
        Multicomplex { n, maximal: vec![], facets: OnceLock::new() }
    }

    /// `Γ(I)`: exponents of the monomials outside `I`.
    pub fn from_ideal(ideal: &MonomialIdeal) -> Self {
        let n = ideal.n();
        if ideal.is_unit() {
            return Self::empty(n);
        }
        if ideal.is_zero() {
            return Self::from_generators(n, vec![ExpVec::infinite(n)]);
        }
        let components = ideal.irreducible_decomposition().expect("proper ideal");
        let corners = components
            .iter()
            .map(|q| {
                let mut m = ExpVec::infinite(n);
                for g in q.gens() {
                    let j = g.support()[0];
                    let power = g.get(j).finite().expect("finite generator");
                    m.set(j, Fin(power - 1));
                }
                m
            })
            .collect();
        Self::from_generators(n, corners)
    }

    /// `I(Γ) = ⋂_{m ∈ M(Γ)} I(⟨m⟩)`.
    pub fn to_ideal(&self) -> MonomialIdeal {
        self.maximal.iter().fold(MonomialIdeal::unit(self.n), |acc, m| {
            acc.intersect(&principal_ideal(m)).expect("same dimension")
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    /// `M(Γ)` in canonical order.
    pub fn maximal(&self) -> &[ExpVec] {
        &self.maximal
    }

    /// `F(Γ)` in canonical order.
    ///
    /// Under each maximal `m`, every `a` with `infpt(a) = infpt(m)` and
    /// `a(j) <= m(j)` on `fpt(m)` is a candidate; it is a facet when every
    /// maximal element above it has the same infinite positions.
    pub fn facets(&self) -> &[ExpVec] {
        self.facets.get_or_init(|| {
            let mut out = BTreeSet::new();
            for m in &self.maximal {
                let infpt = m.infpt();
                let fpt = m.fpt();
                let caps: Vec<u32> = fpt.iter().map(|&j| m.get(j).finite().unwrap()).collect();
                let total: u64 = caps.iter().map(|&c| u64::from(c) + 1).product();
                for mut idx in 0..total {
                    let mut a = m.clone();
                    for (k, &j) in fpt.iter().enumerate().rev() {
                        let base = u64::from(caps[k]) + 1;
                        a.set(j, Fin((idx % base) as u32));
                        idx /= base;
                    }
                    let is_facet = self.maximal.iter().filter(|m2| a.below(m2)).all(|m2| m2.infpt() == infpt);
                    if is_facet {
                        out.insert(a);
                    }
                }
            }
            out.into_iter().collect()
        })
    }

    pub fn member(&self, a: &ExpVec) -> bool {
        self.maximal.iter().any(|m| a.below(m))
    }

    fn check_face_arg(&self, a: &ExpVec) -> Result<()> {
        if a.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: a.dim() });
        }
        a.require_finite()
    }

    /// `⟨b ∈ F(Γ) : a ⪯ b⟩`.
    pub fn star(&self, a: &ExpVec) -> Result<Multicomplex> {
        self.check_face_arg(a)?;
        Ok(Self::from_generators(self.n, self.facets_above(a)))
    }

    /// `Γ \ a = ⟨b ∈ F(Γ) : a ⋠ b⟩`.
    pub fn deletion(&self, a: &ExpVec) -> Result<Multicomplex> {
        self.check_face_arg(a)?;
        Ok(self.deletion_unchecked(a))
    }

    fn deletion_unchecked(&self, a: &ExpVec) -> Multicomplex {
        Self::from_generators(self.n, self.facets().iter().filter(|b| !a.below(b)).cloned().collect())
    }

    /// `lk_Γ a = ⟨b − a : b ∈ F(Γ), a ⪯ b⟩`.
    pub fn link(&self, a: &ExpVec) -> Result<Multicomplex> {
        self.check_face_arg(a)?;
        Ok(self.link_unchecked(a))
    }

    fn link_unchecked(&self, a: &ExpVec) -> Multicomplex {
        let shifted = self.facets_above(a).iter().map(|b| b.sub(a).expect("a below b")).collect();
        Self::from_generators(self.n, shifted)
    }

    /// Facets of the star of `a` that lie above `a`; equal to `{b ∈ F(Γ) : a ⪯ b}`.
    pub fn facets_above(&self, a: &ExpVec) -> Vec<ExpVec> {
        self.facets().iter().filter(|b| a.below(b)).cloned().collect()
    }

    /// Positions that are nonzero in some element.
    pub fn support(&self) -> BTreeSet<usize> {
        self.maximal.iter().flat_map(|m| m.support()).collect()
    }

    /// `Γ1 · Γ2` for multicomplexes supported on disjoint coordinates.
    pub fn join(&self, other: &Multicomplex) -> Result<Multicomplex> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if !self.support().is_disjoint(&other.support()) {
            return Err(Error::OverlappingBlocks);
        }
        let sums = self
            .maximal
            .iter()
            .flat_map(|a| other.maximal.iter().map(move |b| a.add(b).expect("same n")))
            .collect();
        Ok(Self::from_generators(self.n, sums))
    }

    /// `max |infpt(a)| − 1` over the facets.
    pub fn dim(&self) -> Result<i64> {
        self.maximal
            .iter()
            .map(|m| m.infpt().len() as i64 - 1)
            .max()
            .ok_or(Error::EmptyMulticomplex)
    }

    fn check_face(&self, a: &ExpVec) -> Result<()> {
        self.check_face_arg(a)?;
        if self.member(a) {
            Ok(())
        } else {
            Err(Error::NotAFace(a.to_string()))
        }
    }

    /// Decides whether `⟨b⟩ \ (Γ \ a)` is the Stanley set `a + ⟨m⟩` with
    /// `infpt(m) = infpt(b)`, via the cyclic-quotient criterion
    /// `I(⟨Γ \ a, b⟩) : x^a = (x_j : j ∈ fpt(b))`.
    pub fn stanley_interval(&self, a: &ExpVec, b: &ExpVec) -> Result<Option<StanleySet>> {
        self.check_face(a)?;
        if b.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: b.dim() });
        }
        if !a.below(b) || self.facets().binary_search(b).is_err() {
            return Err(Error::InvalidArgument(format!("{b} is not a facet of the star of {a}")));
        }
        Ok(self.stanley_interval_unchecked(&self.deletion_unchecked(a), a, b))
    }

    fn stanley_interval_unchecked(&self, deletion: &Multicomplex, a: &ExpVec, b: &ExpVec) -> Option<StanleySet> {
        // everything in ⟨b⟩ not above a must already lie in the deletion
        for j in 0..self.n {
            if let Fin(v) = a.get(j) {
                if v > 0 {
                    let mut lowered = b.clone();
                    lowered.set(j, Fin(v - 1));
                    if !deletion.member(&lowered) {
                        return None;
                    }
                }
            }
        }
        let mut gens = deletion.maximal.clone();
        gens.push(b.clone());
        let extended = Self::from_generators(self.n, gens);
        let colon = extended.to_ideal().colon(a).expect("same dimension");
        is_prime_on(&colon, &b.fpt()).then(|| StanleySet { degree: a.clone(), directions: b.infpt() })
    }

    /// Checks both shedding conditions for the face `a`. The size condition
    /// on `fpt*(a)` is left to the caller.
    pub fn is_shedding_face(&self, a: &ExpVec) -> Result<ShedVerdict> {
        self.check_face(a)?;
        Ok(self.shed_verdict(a, &self.deletion_unchecked(a)))
    }

    fn shed_verdict(&self, a: &ExpVec, deletion: &Multicomplex) -> ShedVerdict {
        let star = self.facets_above(a);
        for b in &star {
            let fb = b.fpt();
            for c in deletion.facets() {
                let fc = c.fpt();
                if fb.len() < fc.len() && fb.iter().all(|j| fc.binary_search(j).is_ok()) {
                    return ShedVerdict::FptInclusion { star_facet: b.clone(), deletion_facet: c.clone() };
                }
            }
        }
        for b in &star {
            if self.stanley_interval_unchecked(deletion, a, b).is_none() {
                return ShedVerdict::NotStanleyInterval { star_facet: b.clone() };
            }
        }
        ShedVerdict::Shedding
    }

    /// Default per-coordinate caps for shedding-face candidates: one past the
    /// largest finite entry in each coordinate, or 0 if the coordinate is
    /// infinite in every facet.
    pub fn default_caps(&self) -> Vec<u32> {
        (0..self.n)
            .map(|i| self.maximal.iter().filter_map(|m| m.get(i).finite()).max().map_or(0, |v| v + 1))
            .collect()
    }

    /// Checks that `order` is a shelling: every step adds a Stanley set and no
    /// earlier step has strictly fewer directions than a later one.
    pub fn is_shelling(&self, order: &[ExpVec]) -> Result<bool> {
        Ok(self.shelling_steps(order)?.is_some())
    }

    /// The Stanley sets `S_1, …, S_r` of a shelling, or `None` if `order` is not one.
    pub fn shelling_steps(&self, order: &[ExpVec]) -> Result<Option<Vec<StanleySet>>> {
        let mut sorted = order.to_vec();
        sorted.sort();
        if sorted != self.facets() {
            return Err(Error::NotAPermutation(format!(
                "order has {} entries, multicomplex has {} facets",
                order.len(),
                self.facets().len()
            )));
        }
        let mut ideal = MonomialIdeal::unit(self.n);
        let mut steps: Vec<StanleySet> = Vec::with_capacity(order.len());
        for a in order {
            let Some((next, set)) = shelling_step(&ideal, a) else {
                return Ok(None);
            };
            if steps.iter().any(|s| strict_subset(&s.directions, &set.directions)) {
                return Ok(None);
            }
            ideal = next;
            steps.push(set);
        }
        Ok(Some(steps))
    }

    /// Backtracking search for a shelling, trying facets in canonical order.
    pub fn find_shelling(&self) -> Option<Vec<ExpVec>> {
        let facets = self.facets();
        let mut search = ShellingSearch {
            facets,
            placed: vec![false; facets.len()],
            order: Vec::with_capacity(facets.len()),
            directions: Vec::with_capacity(facets.len()),
            dead: HashSet::new(),
        };
        search.extend(&MonomialIdeal::unit(self.n)).then(|| search.order.iter().map(|&i| facets[i].clone()).collect())
    }
}

fn strict_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Adds the facet `a` after a prefix whose ideal is `prev`; returns the new
/// ideal and the Stanley set `S_i` when `⟨a⟩ \ Γ_{i-1}` is one.
fn shelling_step(prev: &MonomialIdeal, a: &ExpVec) -> Option<(MonomialIdeal, StanleySet)> {
    let next = prev.intersect(&principal_ideal(a)).expect("same dimension");
    let mut outside = prev.gens().iter().filter(|g| !next.contains(g));
    let degree = outside.next()?;
    if outside.next().is_some() {
        return None;
    }
    let colon = next.colon(degree).expect("same dimension");
    if !is_prime_on(&colon, &a.fpt()) {
        return None;
    }
    Some((next.clone(), StanleySet { degree: degree.clone(), directions: a.infpt() }))
}

struct ShellingSearch<'a> {
    facets: &'a [ExpVec],
    placed: Vec<bool>,
    order: Vec<usize>,
    directions: Vec<Vec<usize>>,
    dead: HashSet<Vec<bool>>,
}

impl ShellingSearch<'_> {
    fn extend(&mut self, ideal: &MonomialIdeal) -> bool {
        if self.order.len() == self.facets.len() {
            return true;
        }
        if self.dead.contains(&self.placed) {
            return false;
        }
        for i in 0..self.facets.len() {
            if self.placed[i] {
                continue;
            }
            let Some((next, set)) = shelling_step(ideal, &self.facets[i]) else {
                continue;
            };
            if self.directions.iter().any(|d| strict_subset(d, &set.directions)) {
                continue;
            }
            self.placed[i] = true;
            self.order.push(i);
            self.directions.push(set.directions);
            if self.extend(&next) {
                return true;
            }
            self.directions.pop();
            self.order.pop();
            self.placed[i] = false;
        }
        self.dead.insert(self.placed.clone());
        false
    }
}

/// Certificate of k-decomposability: a shedding face at every internal node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SheddingTree {
    Leaf {
        complex: Multicomplex,
    },
    Node {
        complex: Multicomplex,
        face: ExpVec,
        link: Arc<SheddingTree>,
        deletion: Arc<SheddingTree>,
    },
}

impl SheddingTree {
    pub fn complex(&self) -> &Multicomplex {
        match self {
            SheddingTree::Leaf { complex } | SheddingTree::Node { complex, .. } => complex,
        }
    }

    /// Number of shedding faces in the tree.
    pub fn len(&self) -> usize {
        match self {
            SheddingTree::Leaf { .. } => 0,
            SheddingTree::Node { link, deletion, .. } => 1 + link.len() + deletion.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Re-checks a shedding-tree certificate from scratch.
pub fn verify_shedding_tree(tree: &SheddingTree, k: usize) -> std::result::Result<(), String> {
    match tree {
        SheddingTree::Leaf { complex } => {
            if complex.facets().len() <= 1 {
                Ok(())
            } else {
                Err(format!("leaf {complex} has {} facets", complex.facets().len()))
            }
        }
        SheddingTree::Node { complex, face, link, deletion } => {
            if face.fpt_star().len() > k + 1 {
                return Err(format!("face {face} has |fpt*| > {}", k + 1));
            }
            let verdict = complex.is_shedding_face(face).map_err(|e| e.to_string())?;
            if !verdict.is_shedding() {
                return Err(format!("{face} in {complex}: {verdict}"));
            }
            if link.complex() != &complex.link_unchecked(face) {
                return Err(format!("link child of {face} does not match"));
            }
            if deletion.complex() != &complex.deletion_unchecked(face) {
                return Err(format!("deletion child of {face} does not match"));
            }
            verify_shedding_tree(link, k)?;
            verify_shedding_tree(deletion, k)
        }
    }
}

/// Memoized search for shedding-face decompositions.
///
/// The memo is keyed by `(M(Γ), k)`; reuse one search across queries on
/// related multicomplexes to share work.
#[derive(Default)]
pub struct DecompositionSearch {
    bound: SearchBound,
    memo: HashMap<(Vec<ExpVec>, usize), Option<Arc<SheddingTree>>>,
}

impl DecompositionSearch {
    pub fn new(bound: SearchBound) -> Self {
        DecompositionSearch { bound, memo: HashMap::new() }
    }

    /// Caps in effect at the root of a query on `g`.
    pub fn caps(&self, g: &Multicomplex) -> Vec<u32> {
        self.bound.resolve(g.default_caps())
    }

    /// A shedding tree if `g` is k-decomposable within the search bound.
    pub fn decompose(&mut self, g: &Multicomplex, k: usize) -> Option<Arc<SheddingTree>> {
        if g.facets().len() <= 1 {
            return Some(Arc::new(SheddingTree::Leaf { complex: g.clone() }));
        }
        let key = (g.maximal.clone(), k);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let result = self.search(g, k);
        self.memo.insert(key, result.clone());
        result
    }

    fn search(&mut self, g: &Multicomplex, k: usize) -> Option<Arc<SheddingTree>> {
        let caps = self.caps(g);
        for a in ordered_candidates(&caps, k + 1) {
            if !g.member(&a) {
                continue;
            }
            let link = g.link_unchecked(&a);
            if link == *g {
                continue;
            }
            let deletion = g.deletion_unchecked(&a);
            if !g.shed_verdict(&a, &deletion).is_shedding() {
                continue;
            }
            let Some(link_tree) = self.decompose(&link, k) else {
                continue;
            };
            let Some(deletion_tree) = self.decompose(&deletion, k) else {
                continue;
            };
            return Some(Arc::new(SheddingTree::Node {
                complex: g.clone(),
                face: a,
                link: link_tree,
                deletion: deletion_tree,
            }));
        }
        None
    }
}

/// k-decomposability with the default search bound.
pub fn is_k_decomposable(g: &Multicomplex, k: i64) -> Result<Option<Arc<SheddingTree>>> {
    let k = usize::try_from(k).map_err(|_| Error::InvalidArgument(format!("k must be >= 0, got {k}")))?;
    Ok(DecompositionSearch::default().decompose(g, k))
}

/// Shorthand for the vector `(v_1, …, v_n)` with `None` meaning `∞`.
pub fn face(entries: &[Option<u32>]) -> ExpVec {
    ExpVec::new(entries.iter().map(|e| e.map_or(Inf, Fin)).collect()).expect("nonempty")
}
