//! Brute-force reference implementations.
//!
//! Everything here works on raw generator lists and bounded grids and uses
//! nothing from the other modules except exponent-vector arithmetic. The
//! functions are slow on purpose and refuse instances that are too large.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exponents::{grid, Exp, ExpVec, Fin, Inf};
use crate::ideals::{MonomialIdeal, MonomialPrime};
use crate::multicomplex::Multicomplex;

/// Largest dimension and exponent the recursive oracles accept.
pub const MAX_DIM: usize = 3;
pub const MAX_ENTRY: u32 = 3;

/// Per-coordinate grid bounds `{0..B_1} × … × {0..B_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationBox {
    pub caps: Vec<u32>,
}

impl TruncationBox {
    pub fn uniform(n: usize, cap: u32) -> Self {
        TruncationBox { caps: vec![cap; n] }
    }

    /// One past the largest exponent of each variable among the generators.
    pub fn for_ideal(ideal: &MonomialIdeal) -> Self {
        let mut caps = vec![1u32; ideal.n()];
        for g in ideal.gens() {
            for (c, e) in caps.iter_mut().zip(g.entries()) {
                if let Fin(v) = e {
                    *c = (*c).max(v + 1);
                }
            }
        }
        TruncationBox { caps }
    }

    /// Two past the largest finite entry among the generators, in every coordinate.
    pub fn for_multicomplex(g: &Multicomplex) -> Self {
        let top = g.maximal().iter().flat_map(|m| m.entries().iter().filter_map(|e| e.finite())).max().unwrap_or(0);
        Self::uniform(g.n(), top + 2)
    }
}

fn divides(g: &ExpVec, m: &ExpVec) -> bool {
    g.entries().iter().zip(m.entries()).all(|(a, b)| a <= b)
}

fn in_ideal(gens: &[ExpVec], m: &ExpVec) -> bool {
    gens.iter().any(|g| divides(g, m))
}

/// `v ∈ P_S` iff some variable of `S` divides `v`.
fn in_prime(vars: &[usize], v: &ExpVec) -> bool {
    vars.iter().any(|&j| v.get(j) != Fin(0))
}

/// The prime `I : u` equals on the grid, if any.
fn colon_prime_on_grid(gens: &[ExpVec], u: &ExpVec, caps: &[u32]) -> Option<Vec<usize>> {
    let n = u.dim();
    let vars: Vec<usize> = (0..n).filter(|&j| in_ideal(gens, &u.add(&ExpVec::unit(n, j)).expect("same n"))).collect();
    grid(caps)
        .all(|v| in_ideal(gens, &u.add(&v).expect("same n")) == in_prime(&vars, &v))
        .then_some(vars)
}

/// `{I : u prime : u in the box}`.
pub fn oracle_ass(ideal: &MonomialIdeal, bx: &TruncationBox) -> Vec<MonomialPrime> {
    ass_of(ideal.gens(), &bx.caps).into_iter().map(|vars| MonomialPrime::new(ideal.n(), vars)).collect()
}

fn ass_of(gens: &[ExpVec], caps: &[u32]) -> BTreeSet<Vec<usize>> {
    let probe: Vec<u32> = caps.iter().map(|&c| c.max(1)).collect();
    grid(caps).filter_map(|u| colon_prime_on_grid(gens, &u, &probe)).collect()
}

/// Minimal elements of the complement of `Γ` inside the box: `I(Γ)` by scanning.
pub fn oracle_ideal_of(g: &Multicomplex, bx: &TruncationBox) -> Vec<ExpVec> {
    let outside: Vec<ExpVec> = grid(&bx.caps).filter(|c| !member(g.maximal(), c)).collect();
    let mut min: Vec<ExpVec> =
        outside.iter().filter(|c| !outside.iter().any(|d| d != *c && divides(d, c))).cloned().collect();
    min.sort();
    min
}

fn member(gens: &[ExpVec], c: &ExpVec) -> bool {
    gens.iter().any(|m| c.entries().iter().zip(m.entries()).all(|(x, y)| x <= y))
}

/// All of `{0..B}∪{∞}` per coordinate.
fn extended_grid(n: usize, cap: u32) -> Vec<ExpVec> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * (cap as usize + 2));
        for prefix in &out {
            for e in (0..=cap).map(Fin).chain([Inf]) {
                let mut p: Vec<Exp> = prefix.clone();
                p.push(e);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(|e| ExpVec::new(e).expect("n >= 1")).collect()
}

/// Facets by brute force: elements where raising any finite coordinate to `∞` leaves `Γ`.
fn facets_of(n: usize, gens: &[ExpVec], cap: u32) -> Vec<ExpVec> {
    let mut out: Vec<ExpVec> = extended_grid(n, cap)
        .into_iter()
        .filter(|a| member(gens, a))
        .filter(|a| {
            (0..n).filter(|&j| a.get(j) != Inf).all(|j| {
                let mut b = a.clone();
                b.set(j, Inf);
                !member(gens, &b)
            })
        })
        .collect();
    out.sort();
    out
}

fn top_entry(gens: &[ExpVec]) -> u32 {
    gens.iter().flat_map(|m| m.entries().iter().filter_map(|e| e.finite())).max().unwrap_or(0)
}

/// `F(Γ)` by brute force.
pub fn oracle_facets(g: &Multicomplex) -> Vec<ExpVec> {
    facets_of(g.n(), g.maximal(), top_entry(g.maximal()))
}

fn below(a: &ExpVec, b: &ExpVec) -> bool {
    a.entries().iter().zip(b.entries()).all(|(x, y)| x <= y)
}

fn deletion_gens(facets: &[ExpVec], a: &ExpVec) -> Vec<ExpVec> {
    facets.iter().filter(|b| !below(a, b)).cloned().collect()
}

/// Literal check of `⟨b⟩ \ (Γ \ a) = a + ⟨m⟩`, `infpt(m) = infpt(b)`, inside the box.
pub fn oracle_stanley_interval(g: &Multicomplex, a: &ExpVec, b: &ExpVec, bx: &TruncationBox) -> bool {
    let facets = oracle_facets(g);
    stanley_on_grid(&deletion_gens(&facets, a), a, b, &bx.caps)
}

fn stanley_on_grid(deletion: &[ExpVec], a: &ExpVec, b: &ExpVec, caps: &[u32]) -> bool {
    let under_b: Vec<u32> = caps.iter().zip(b.entries()).map(|(&c, e)| e.finite().map_or(c, |v| v.min(c))).collect();
    let agree = grid(&under_b).all(|u| {
        let in_difference = !member(deletion, &u);
        let in_translate = (0..u.dim()).all(|j| match b.get(j) {
            Inf => u.get(j) >= a.get(j),
            Fin(_) => u.get(j) == a.get(j),
        });
        in_difference == in_translate
    });
    agree
}

fn refuse(n: usize, top: u32) -> Result<()> {
    if n > MAX_DIM || top > MAX_ENTRY {
        return Err(Error::TooLarge(format!("oracles accept n <= {MAX_DIM} and entries <= {MAX_ENTRY}")));
    }
    Ok(())
}

/// Definition-level k-decomposability: exhaustive candidates up to `cap` in
/// every coordinate, no memo, no pruning beyond skipping `lk = Γ`.
pub fn oracle_decomposable(g: &Multicomplex, k: usize, cap: u32) -> Result<bool> {
    refuse(g.n(), top_entry(g.maximal()))?;
    Ok(decomposable(g.n(), g.maximal(), k, cap))
}

fn decomposable(n: usize, gens: &[ExpVec], k: usize, cap: u32) -> bool {
    let scan = cap.max(top_entry(gens)) + 1;
    let facets = facets_of(n, gens, scan);
    if facets.len() <= 1 {
        return true;
    }
    for a in grid(&vec![cap; n]) {
        let big = a.entries().iter().filter(|e| **e != Fin(0)).count();
        if a.entries().iter().all(|e| *e == Fin(0)) || big > k + 1 || !member(gens, &a) {
            continue;
        }
        let link: Vec<ExpVec> =
            facets.iter().filter(|b| below(&a, b)).map(|b| b.sub(&a).expect("a below b")).collect();
        if facets_of(n, &link, scan) == facets {
            continue;
        }
        let deletion = deletion_gens(&facets, &a);
        if !shedding(n, &facets, &deletion, &a, scan) {
            continue;
        }
        if decomposable(n, &link, k, cap) && decomposable(n, &deletion, k, cap) {
            return true;
        }
    }
    false
}

/// Both conditions, with the star taken literally as `⟨a⟩ · lk_Γ a`.
fn shedding(n: usize, facets: &[ExpVec], deletion: &[ExpVec], a: &ExpVec, scan: u32) -> bool {
    let link: Vec<ExpVec> = facets.iter().filter(|b| below(a, b)).map(|b| b.sub(a).expect("a below b")).collect();
    let star: Vec<ExpVec> = link.iter().map(|c| c.add(a).expect("same n")).collect();
    let star_facets: Vec<ExpVec> = facets_of(n, &star, scan).into_iter().filter(|b| below(a, b)).collect();
    let deletion_facets = facets_of(n, deletion, scan);
    let caps = vec![scan + 2; n];
    let cond_i = star_facets.iter().all(|b| stanley_on_grid(deletion, a, b, &caps));
    let cond_ii = star_facets.iter().all(|b| {
        let fb = b.fpt();
        deletion_facets.iter().all(|c| {
            let fc = c.fpt();
            !fb.iter().all(|j| fc.contains(j)) || fb == fc
        })
    });
    cond_i && cond_ii
}

/// Definition-level pretty k-cleanness with candidates up to `cap` in every coordinate.
pub fn oracle_pretty_k_clean(ideal: &MonomialIdeal, k: usize, cap: u32) -> Result<bool> {
    refuse(ideal.n(), top_entry(ideal.gens()))?;
    Ok(pretty_clean(ideal.n(), ideal.gens().to_vec(), k, cap))
}

fn same_ideal(a: &[ExpVec], b: &[ExpVec], caps: &[u32]) -> bool {
    grid(caps).all(|v| in_ideal(a, &v) == in_ideal(b, &v))
}

fn pretty_clean(n: usize, gens: Vec<ExpVec>, k: usize, cap: u32) -> bool {
    let caps = vec![cap.max(top_entry(&gens)) + 1; n];
    let zero = ExpVec::zeros(n);
    if in_ideal(&gens, &zero) || colon_prime_on_grid(&gens, &zero, &caps).is_some() {
        return true;
    }
    for u in grid(&vec![cap; n]) {
        let supp = u.entries().iter().filter(|e| **e != Fin(0)).count();
        if supp == 0 || supp > k + 1 || in_ideal(&gens, &u) {
            continue;
        }
        let colon: Vec<ExpVec> = gens.iter().map(|g| g.monus(&u)).collect();
        if same_ideal(&colon, &gens, &caps) {
            continue;
        }
        let mut sum = gens.clone();
        sum.push(u.clone());
        let ass_colon = ass_of(&colon, &caps);
        let ass_sum = ass_of(&sum, &caps);
        let strict = ass_colon
            .iter()
            .any(|p| ass_sum.iter().any(|q| p != q && p.iter().all(|j| q.contains(j))));
        if strict {
            continue;
        }
        if pretty_clean(n, colon, k, cap) && pretty_clean(n, sum, k, cap) {
            return true;
        }
    }
    false
}
