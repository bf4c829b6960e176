//! Simplicial complexes on at most 64 vertices, stored as facet bitmasks.
//!
//! Vertices are 0-based in the API and 1-based in the JSON format
//! `{"vertices":6,"facets":[[1,2,4],...]}`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exponents::{ExpVec, Fin, Inf};
use crate::ideals::MonomialIdeal;
use crate::multicomplex::Multicomplex;

pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexRecord", into = "ComplexRecord")]
pub struct SimplicialComplex {
    vertices: usize,
    facets: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRecord {
    vertices: usize,
    facets: Vec<Vec<usize>>,
}

impl TryFrom<ComplexRecord> for SimplicialComplex {
    type Error = Error;

    fn try_from(r: ComplexRecord) -> Result<Self> {
        let mut facets = Vec::with_capacity(r.facets.len());
        for f in &r.facets {
            if f.iter().any(|&v| v == 0 || v > r.vertices) {
                return Err(Error::Malformed(format!("vertex labels must lie in 1..={}", r.vertices)));
            }
            facets.push(f.iter().map(|v| v - 1).collect::<Vec<_>>());
        }
        SimplicialComplex::new(r.vertices, &facets)
    }
}

impl From<SimplicialComplex> for ComplexRecord {
    fn from(d: SimplicialComplex) -> Self {
        ComplexRecord { vertices: d.vertices, facets: d.facets.iter().map(|&f| labels(f)).collect() }
    }
}

/// 1-based labels of a face.
pub fn labels(face: u64) -> Vec<usize> {
    members(face).map(|v| v + 1).collect()
}

fn members(face: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |v| face >> v & 1 == 1)
}

fn mask(face: &[usize]) -> u64 {
    face.iter().fold(0, |m, &v| m | 1 << v)
}

fn face_string(face: u64) -> String {
    let parts: Vec<String> = labels(face).iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Canonical facet order: lexicographic on sorted vertex lists.
fn canonical(mut facets: Vec<u64>) -> Vec<u64> {
    facets.sort_unstable();
    facets.dedup();
    let mut kept: Vec<u64> =
        facets.iter().copied().filter(|&f| !facets.iter().any(|&g| g != f && f & g == f)).collect();
    kept.sort_by_key(|&f| members(f).collect::<Vec<_>>());
    kept
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex({self})")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.facets.iter().map(|&m| face_string(m)).collect();
        write!(f, "<{}> on {} vertices", parts.join(", "), self.vertices)
    }
}

impl SimplicialComplex {
    /// The complex generated by `facets` (0-based vertex lists).
    pub fn new(vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if vertices > MAX_VERTICES {
            return Err(Error::TooLarge(format!("{vertices} vertices (at most {MAX_VERTICES})")));
        }
        if let Some(v) = facets.iter().flatten().find(|&&v| v >= vertices) {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range for {vertices} vertices")));
        }
        Ok(Self::from_masks(vertices, facets.iter().map(|f| mask(f)).collect()))
    }

    pub(crate) fn from_masks(vertices: usize, facets: Vec<u64>) -> Self {
        SimplicialComplex { vertices, facets: canonical(facets) }
    }

    /// The complex with no faces at all.
    pub fn void(vertices: usize) -> Self {
        SimplicialComplex { vertices, facets: vec![] }
    }

    /// The complex `{∅}`.
    pub fn empty_face(vertices: usize) -> Self {
        SimplicialComplex { vertices, facets: vec![0] }
    }

    pub fn simplex(vertices: usize) -> Self {
        let full = if vertices == 64 { u64::MAX } else { (1u64 << vertices) - 1 };
        SimplicialComplex { vertices, facets: vec![full] }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// Facet bitmasks in canonical order.
    pub fn facet_masks(&self) -> &[u64] {
        &self.facets
    }

    /// Facets as 0-based vertex lists.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| members(f).collect()).collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    pub fn dim(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.count_ones() as i64 - 1).max()
    }

    pub fn contains_mask(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| face & f == face)
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        face.iter().all(|&v| v < self.vertices) && self.contains_mask(mask(face))
    }

    fn check_face(&self, face: &[usize]) -> Result<u64> {
        if self.contains(face) {
            Ok(mask(face))
        } else {
            Err(Error::NotAFace(face_string(mask(face))))
        }
    }

    /// `Δ \ σ = {G ∈ Δ : σ ⊄ G}`.
    pub fn deletion(&self, face: &[usize]) -> Result<Self> {
        let s = self.check_face(face)?;
        Ok(self.deletion_mask(s))
    }

    fn deletion_mask(&self, s: u64) -> Self {
        let mut out = Vec::new();
        for &f in &self.facets {
            if f & s != s {
                out.push(f);
            } else {
                out.extend(members(s).map(|v| f & !(1 << v)));
            }
        }
        Self::from_masks(self.vertices, out)
    }

    /// `lk_Δ σ = {G ∈ Δ : G ∩ σ = ∅, G ∪ σ ∈ Δ}`.
    pub fn link(&self, face: &[usize]) -> Result<Self> {
        let s = self.check_face(face)?;
        Ok(self.link_mask(s))
    }

    fn link_mask(&self, s: u64) -> Self {
        let out = self.facets.iter().filter(|&&f| f & s == s).map(|&f| f & !s).collect();
        Self::from_masks(self.vertices, out)
    }

    /// All faces containing `s`.
    fn faces_above(&self, s: u64) -> HashSet<u64> {
        let mut out = HashSet::new();
        for &f in self.facets.iter().filter(|&&f| f & s == s) {
            let free = f & !s;
            let mut sub = free;
            loop {
                out.insert(s | sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        out
    }

    /// Exchange-property shedding test over every face containing `face`.
    pub fn is_shedding_face(&self, face: &[usize]) -> Result<bool> {
        let s = self.check_face(face)?;
        if s == 0 {
            return Err(Error::InvalidArgument("a shedding face must be nonempty".into()));
        }
        Ok(self.sheds(s))
    }

    fn sheds(&self, s: u64) -> bool {
        self.faces_above(s).into_iter().all(|tau| {
            members(s).all(|v| {
                (0..self.vertices)
                    .filter(|&w| tau >> w & 1 == 0)
                    .any(|w| self.contains_mask((tau | 1 << w) & !(1 << v)))
            })
        })
    }

    /// Faces of size at most `max_size`, nonempty, ordered by size then vertex list.
    fn small_faces(&self, max_size: usize) -> Vec<u64> {
        let mut out: HashSet<u64> = HashSet::new();
        for &f in &self.facets {
            let mut sub = f;
            while sub != 0 {
                if sub.count_ones() as usize <= max_size {
                    out.insert(sub);
                }
                sub = (sub - 1) & f;
            }
        }
        let mut v: Vec<u64> = out.into_iter().collect();
        v.sort_by_key(|&m| (m.count_ones(), members(m).collect::<Vec<_>>()));
        v
    }

    /// Join on the disjoint union of the vertex sets; `other`'s vertices come after `self`'s.
    pub fn join(&self, other: &SimplicialComplex) -> Result<Self> {
        let vertices = self.vertices + other.vertices;
        if vertices > MAX_VERTICES {
            return Err(Error::TooLarge(format!("{vertices} vertices (at most {MAX_VERTICES})")));
        }
        let out = self
            .facets
            .iter()
            .flat_map(|&a| other.facets.iter().map(move |&b| a | b << self.vertices))
            .collect();
        Ok(Self::from_masks(vertices, out))
    }

    /// The multicomplex with facets `a_F` (`∞` on `F`, `0` elsewhere).
    pub fn to_multicomplex(&self) -> Result<Multicomplex> {
        let n = self.vertices;
        let facets = self.facets.iter().map(|&f| {
            ExpVec::new((0..n).map(|i| if f >> i & 1 == 1 { Inf } else { Fin(0) }).collect()).expect("n >= 1")
        });
        Multicomplex::generated_by(n, facets)
    }

    /// Inverse of [`to_multicomplex`](Self::to_multicomplex).
    pub fn from_squarefree_multicomplex(g: &Multicomplex) -> Result<Self> {
        let mut out = Vec::with_capacity(g.facets().len());
        for a in g.facets() {
            if !a.is_zero_inf() {
                return Err(Error::NotSquarefreeFacet(a.to_string()));
            }
            out.push(mask(&a.infpt()));
        }
        if g.n() > MAX_VERTICES {
            return Err(Error::TooLarge(format!("{} vertices (at most {MAX_VERTICES})", g.n())));
        }
        Ok(Self::from_masks(g.n(), out))
    }

    /// Stanley–Reisner ideal: generated by the minimal non-faces.
    pub fn stanley_reisner(&self) -> Result<MonomialIdeal> {
        Ok(self.to_multicomplex()?.to_ideal())
    }

    /// The complex whose Stanley–Reisner ideal is `ideal`.
    pub fn from_stanley_reisner(ideal: &MonomialIdeal) -> Result<Self> {
        if !ideal.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Self::from_squarefree_multicomplex(&Multicomplex::from_ideal(ideal))
    }

    /// Checks the exchange condition for the given facet order.
    pub fn is_shelling(&self, order: &[Vec<usize>]) -> Result<bool> {
        let masks: Vec<u64> = order.iter().map(|f| mask(f)).collect();
        let mut sorted = masks.clone();
        sorted.sort_unstable();
        let mut own = self.facets.clone();
        own.sort_unstable();
        if sorted != own {
            return Err(Error::NotAPermutation(format!("{} facets given, complex has {}", order.len(), own.len())));
        }
        for j in 0..masks.len() {
            if !extends_shelling(&masks[..j], masks[j]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Backtracking search for a shelling in canonical order.
    pub fn find_shelling(&self) -> Option<Vec<Vec<usize>>> {
        let mut search = ShellSearch {
            facets: &self.facets,
            placed: vec![false; self.facets.len()],
            order: vec![],
            dead: HashSet::new(),
        };
        search.extend().then(|| search.order.iter().map(|&f| members(f).collect()).collect())
    }
}

/// Whether `f` can follow the facets in `prefix`: for every earlier `F_i`
/// some `v ∈ F_j \ F_i` has `F_j \ F_l = {v}` for an earlier `F_l`.
fn extends_shelling(prefix: &[u64], f: u64) -> bool {
    let singles: u64 = prefix.iter().map(|&g| f & !g).filter(|d| d.count_ones() == 1).fold(0, |a, d| a | d);
    prefix.iter().all(|&g| f & !g & singles != 0)
}

struct ShellSearch<'a> {
    facets: &'a [u64],
    placed: Vec<bool>,
    order: Vec<u64>,
    dead: HashSet<Vec<bool>>,
}

impl ShellSearch<'_> {
    fn extend(&mut self) -> bool {
        if self.order.len() == self.facets.len() {
            return true;
        }
        if self.dead.contains(&self.placed) {
            return false;
        }
        for (i, &f) in self.facets.iter().enumerate() {
            if self.placed[i] || !extends_shelling(&self.order, f) {
                continue;
            }
            self.placed[i] = true;
            self.order.push(f);
            if self.extend() {
                return true;
            }
            self.order.pop();
            self.placed[i] = false;
        }
        self.dead.insert(self.placed.clone());
        false
    }
}

fn ser_face<S: Serializer>(face: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    labels(*face).serialize(s)
}

/// Certificate of simplicial k-decomposability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ComplexTree {
    Leaf {
        complex: SimplicialComplex,
    },
    Node {
        complex: SimplicialComplex,
        #[serde(serialize_with = "ser_face")]
        face: u64,
        link: Arc<ComplexTree>,
        deletion: Arc<ComplexTree>,
    },
}

impl ComplexTree {
    pub fn complex(&self) -> &SimplicialComplex {
        match self {
            ComplexTree::Leaf { complex } | ComplexTree::Node { complex, .. } => complex,
        }
    }
}

/// Re-checks a simplicial decomposition certificate.
pub fn verify_complex_tree(tree: &ComplexTree, k: i64) -> std::result::Result<(), String> {
    match tree {
        ComplexTree::Leaf { complex } => {
            if complex.facets.len() <= 1 {
                Ok(())
            } else {
                Err(format!("leaf {complex} is not a simplex"))
            }
        }
        ComplexTree::Node { complex, face, link, deletion } => {
            if i64::from(face.count_ones()) > k + 1 || *face == 0 {
                return Err(format!("face {} has the wrong size for k = {k}", face_string(*face)));
            }
            if !complex.contains_mask(*face) || !complex.sheds(*face) {
                return Err(format!("{} is not a shedding face of {complex}", face_string(*face)));
            }
            if link.complex() != &complex.link_mask(*face) || deletion.complex() != &complex.deletion_mask(*face) {
                return Err(format!("children of {} do not match", face_string(*face)));
            }
            verify_complex_tree(link, k)?;
            verify_complex_tree(deletion, k)
        }
    }
}

/// k-decomposability with shedding faces of dimension at most `k` (`k >= -1`).
pub fn is_k_decomposable_sc(d: &SimplicialComplex, k: i64) -> Result<Option<Arc<ComplexTree>>> {
    if k < -1 {
        return Err(Error::InvalidArgument(format!("k must be >= -1, got {k}")));
    }
    let max_size = usize::try_from(k + 1).unwrap_or(0);
    Ok(decompose(d, max_size, &mut HashMap::new()))
}

fn decompose(
    d: &SimplicialComplex,
    max_size: usize,
    memo: &mut HashMap<Vec<u64>, Option<Arc<ComplexTree>>>,
) -> Option<Arc<ComplexTree>> {
    if d.facets.len() <= 1 {
        return Some(Arc::new(ComplexTree::Leaf { complex: d.clone() }));
    }
    if let Some(hit) = memo.get(&d.facets) {
        return hit.clone();
    }
    let mut result = None;
    for s in d.small_faces(max_size) {
        if !d.sheds(s) {
            continue;
        }
        let Some(link) = decompose(&d.link_mask(s), max_size, memo) else {
            continue;
        };
        let Some(deletion) = decompose(&d.deletion_mask(s), max_size, memo) else {
            continue;
        };
        result = Some(Arc::new(ComplexTree::Node { complex: d.clone(), face: s, link, deletion }));
        break;
    }
    memo.insert(d.facets.clone(), result.clone());
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::mono;

    fn sc(vertices: usize, facets: &[&[usize]]) -> SimplicialComplex {
        let f: Vec<Vec<usize>> = facets.iter().map(|f| f.iter().map(|v| v - 1).collect()).collect();
        SimplicialComplex::new(vertices, &f).unwrap()
    }

    fn six_vertex_complex() -> SimplicialComplex {
        let rows: [[usize; 3]; 11] = [
            [1, 2, 4],
            [1, 2, 5],
            [1, 2, 6],
            [1, 3, 5],
            [1, 3, 6],
            [1, 4, 5],
            [2, 3, 6],
            [2, 4, 5],
            [2, 5, 6],
            [3, 4, 5],
            [3, 4, 6],
        ];
        let f: Vec<&[usize]> = rows.iter().map(|r| r.as_slice()).collect();
        sc(6, &f)
    }

    fn triangle_boundary() -> SimplicialComplex {
        sc(3, &[&[1, 2], &[2, 3], &[1, 3]])
    }

    #[test]
    fn stanley_reisner_examples() {
        let path = sc(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(path.stanley_reisner().unwrap(), MonomialIdeal::new(3, vec![mono(&[1, 0, 1])]).unwrap());
        assert!(SimplicialComplex::simplex(4).stanley_reisner().unwrap().is_zero());
        let d = six_vertex_complex();
        let back = SimplicialComplex::from_stanley_reisner(&d.stanley_reisner().unwrap()).unwrap();
        assert_eq!(back, d);
        let square = MonomialIdeal::new(2, vec![mono(&[2, 0])]).unwrap();
        assert_eq!(SimplicialComplex::from_stanley_reisner(&square), Err(Error::NotSquarefree));
    }

    #[test]
    fn void_and_empty_face_are_distinct() {
        assert_ne!(SimplicialComplex::void(2), SimplicialComplex::empty_face(2));
        assert!(SimplicialComplex::void(2).stanley_reisner().unwrap().is_unit());
        let max = SimplicialComplex::empty_face(2).stanley_reisner().unwrap();
        assert_eq!(max, MonomialIdeal::new(2, vec![mono(&[1, 0]), mono(&[0, 1])]).unwrap());
    }

    #[test]
    fn link_and_deletion_examples() {
        let path = sc(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(path.link(&[1]).unwrap(), sc(3, &[&[1], &[3]]));
        assert_eq!(path.deletion(&[1]).unwrap(), sc(3, &[&[1], &[3]]));
        assert_eq!(path.link(&[]).unwrap(), path);
        assert!(matches!(path.link(&[0, 2]), Err(Error::NotAFace(_))));
    }

    #[test]
    fn shedding_face_examples() {
        let t = triangle_boundary();
        for v in 0..3 {
            assert!(t.is_shedding_face(&[v]).unwrap());
        }
        assert!(sc(2, &[&[1], &[2]]).is_shedding_face(&[0]).unwrap());
        assert!(!sc(2, &[&[1, 2]]).is_shedding_face(&[0]).unwrap());
        assert!(t.is_shedding_face(&[]).is_err());
    }

    #[test]
    fn decomposability_examples() {
        assert!(is_k_decomposable_sc(&SimplicialComplex::simplex(3), -1).unwrap().is_some());
        assert!(is_k_decomposable_sc(&SimplicialComplex::void(3), 0).unwrap().is_some());
        assert!(is_k_decomposable_sc(&SimplicialComplex::empty_face(3), 0).unwrap().is_some());
        let tree = is_k_decomposable_sc(&triangle_boundary(), 0).unwrap().unwrap();
        verify_complex_tree(&tree, 0).unwrap();
        assert!(is_k_decomposable_sc(&triangle_boundary(), -2).is_err());
    }

    #[test]
    fn six_vertex_complex_sheds_vertex_four_first() {
        let tree = is_k_decomposable_sc(&six_vertex_complex(), 0).unwrap().expect("vertex-decomposable");
        verify_complex_tree(&tree, 0).unwrap();
        assert!(matches!(*tree, ComplexTree::Node { face, .. } if face == 1 << 3));
    }

    #[test]
    fn six_vertex_complex_is_decomposable_for_some_k() {
        let found = (1..=2).find_map(|k| is_k_decomposable_sc(&six_vertex_complex(), k).unwrap().map(|t| (k, t)));
        let (k, tree) = found.expect("k-decomposable for some k <= 2");
        verify_complex_tree(&tree, k).unwrap();
    }

    #[test]
    fn shelling_examples() {
        let path = sc(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(path.find_shelling(), Some(vec![vec![0, 1], vec![1, 2]]));
        let order = six_vertex_complex().find_shelling().expect("shellable");
        assert_eq!(order.len(), 11);
        assert!(six_vertex_complex().is_shelling(&order).unwrap());
        assert_eq!(sc(4, &[&[1, 2], &[3, 4]]).find_shelling(), None);
        assert!(!sc(4, &[&[1, 2], &[3, 4]]).is_shelling(&[vec![0, 1], vec![2, 3]]).unwrap());
    }

    #[test]
    fn multicomplex_round_trip() {
        let d = sc(3, &[&[1, 2]]);
        let g = d.to_multicomplex().unwrap();
        assert_eq!(g.facets(), &[ExpVec::new(vec![Inf, Inf, Fin(0)]).unwrap()]);
        assert_eq!(SimplicialComplex::from_squarefree_multicomplex(&g).unwrap(), d);
        let d = six_vertex_complex();
        assert_eq!(SimplicialComplex::from_squarefree_multicomplex(&d.to_multicomplex().unwrap()).unwrap(), d);
        let g = Multicomplex::generated_by(1, [ExpVec::finite(&[1])]).unwrap();
        assert!(matches!(SimplicialComplex::from_squarefree_multicomplex(&g), Err(Error::NotSquarefreeFacet(_))));
    }

    #[test]
    fn join_places_second_complex_after_first() {
        let j = sc(2, &[&[1], &[2]]).join(&sc(1, &[&[1]])).unwrap();
        assert_eq!(j, sc(3, &[&[1, 3], &[2, 3]]));
    }

    #[test]
    fn json_is_one_based() {
        let d: SimplicialComplex = serde_json::from_str(r#"{"vertices":3,"facets":[[1,2],[2,3]]}"#).unwrap();
        assert_eq!(d, sc(3, &[&[1, 2], &[2, 3]]));
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"vertices":3,"facets":[[1,2],[2,3]]}"#);
        assert!(serde_json::from_str::<SimplicialComplex>(r#"{"vertices":3,"facets":[[0,1]]}"#).is_err());
    }
}
