//! Randomized property suites shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::sync::Arc;

use kclean::cleanness::{
    filtration_from_tree, verify_filtration, verify_ideal_tree, CleanSearch, Cleanness, FiltrationMode,
};
use kclean::exponents::{grid, Exp, ExpVec, Fin, Inf};
use kclean::multicomplex::{verify_shedding_tree, DecompositionSearch, Multicomplex};
use kclean::oracles::{
    oracle_ass, oracle_decomposable, oracle_facets, oracle_ideal_of, oracle_pretty_k_clean, oracle_stanley_interval,
    TruncationBox,
};
use kclean::polarization::{polarize_ideal, polarize_multicomplex};
use kclean::sample::{random_complex, random_disjoint_ideals, random_ideal, random_multicomplex};
use kclean::simplicial::{is_k_decomposable_sc, SimplicialComplex};
use kclean::{IdealTree, MonomialIdeal};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const KS: [usize; 3] = [0, 1, 2];

/// Outcome of one randomized suite.
pub struct Suite {
    pub name: &'static str,
    pub instances: usize,
    pub counterexamples: Vec<String>,
}

impl Suite {
    pub fn new(name: &'static str) -> Self {
        Suite { name, instances: 0, counterexamples: vec![] }
    }

    fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok {
            self.counterexamples.push(describe());
        }
    }

    pub fn passed(&self, min_instances: usize) -> bool {
        self.counterexamples.is_empty() && self.instances >= min_instances
    }

    pub fn summary(&self) -> String {
        match self.counterexamples.first() {
            None => format!("{}: {} instances, 0 counterexamples", self.name, self.instances),
            Some(first) => format!(
                "{}: {} instances, {} counterexamples (first: {first})",
                self.name,
                self.instances,
                self.counterexamples.len()
            ),
        }
    }
}

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// n ≤ 3, exponents ≤ 2, at most 4 generators.
pub fn small_ideals(seed: u64, count: usize) -> Vec<MonomialIdeal> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.random_range(1..=3);
            random_ideal(&mut r, n, 2, 4)
        })
        .collect()
}

fn pretty(search: &mut CleanSearch, i: &MonomialIdeal, k: usize) -> Option<Arc<IdealTree>> {
    search.decide(i, k, Cleanness::PrettyKClean)
}

fn clean(search: &mut CleanSearch, i: &MonomialIdeal, k: usize) -> Option<Arc<IdealTree>> {
    search.decide(i, k, Cleanness::KClean)
}

fn decomposable(search: &mut DecompositionSearch, g: &Multicomplex, k: usize) -> bool {
    search.decompose(g, k).is_some()
}

/// Pretty k-cleanness of `I` against k-decomposability of `Γ(I)`, split by direction.
pub struct Equivalence {
    pub both: Suite,
    pub only_if: Suite,
    pub positives: Vec<(MonomialIdeal, Arc<IdealTree>)>,
}

pub fn clean_vs_decomposable(ideals: &[MonomialIdeal]) -> Equivalence {
    let mut both = Suite::new("pretty k-clean == k-decomposable");
    let mut only_if = Suite::new("k-decomposable => pretty k-clean");
    let mut positives = vec![];
    for i in ideals {
        both.instances += 1;
        only_if.instances += 1;
        let g = Multicomplex::from_ideal(i);
        let mut cs = CleanSearch::default();
        let mut ds = DecompositionSearch::default();
        for k in KS {
            let tree = pretty(&mut cs, i, k);
            let dec = ds.decompose(&g, k);
            if let Some(t) = &dec {
                only_if.expect(verify_shedding_tree(t, k).is_ok(), || format!("{i}: bad shedding tree"));
            }
            let p = tree.is_some();
            let d = dec.is_some();
            both.expect(p == d, || format!("{i} k={k}: pretty={p} decomposable={d}"));
            only_if.expect(!d || p, || format!("{i} k={k}: decomposable but not pretty clean"));
            if let Some(t) = tree {
                positives.push((i.clone(), t));
            }
        }
    }
    Equivalence { both, only_if, positives }
}

pub fn pretty_vs_polarized(ideals: &[MonomialIdeal]) -> Suite {
    let mut s = Suite::new("pretty k-clean(I) == k-clean(I^p)");
    for i in ideals {
        s.instances += 1;
        let (ip, _) = polarize_ideal(i).expect("proper nonzero");
        let mut cs = CleanSearch::default();
        for k in KS {
            let a = pretty(&mut cs, i, k).is_some();
            let b = clean(&mut cs, &ip, k).is_some();
            s.expect(a == b, || format!("{i} k={k}: pretty={a} polarized k-clean={b}"));
        }
    }
    s
}

pub fn certificate_filtrations(positives: &[(MonomialIdeal, Arc<IdealTree>)]) -> Suite {
    let mut s = Suite::new("certificate filtrations are pretty clean with Supp = ass");
    for (i, t) in positives {
        s.instances += 1;
        let f = match filtration_from_tree(t) {
            Ok(f) => f,
            Err(e) => {
                s.expect(false, || format!("{i}: {e}"));
                continue;
            }
        };
        let verdict = verify_filtration(i, &f, FiltrationMode::PrettyClean);
        s.expect(verdict.is_ok(), || format!("{i}: {}", verdict.clone().unwrap_err()));
        let ass = i.ass().expect("proper nonzero");
        s.expect(f.support() == ass, || format!("{i}: Supp(F) != ass(I)"));
    }
    s
}

pub fn clean_vs_pretty_unmixed(ideals: &[MonomialIdeal]) -> Suite {
    let mut s = Suite::new("k-clean == pretty k-clean and ass == min");
    for i in ideals {
        s.instances += 1;
        let mut cs = CleanSearch::default();
        let unmixed = i.has_no_embedded_primes().expect("proper nonzero");
        for k in KS {
            let a = clean(&mut cs, i, k);
            if let Some(t) = &a {
                s.expect(verify_ideal_tree(t, k, Cleanness::KClean).is_ok(), || format!("{i}: bad k-clean tree"));
            }
            let b = pretty(&mut cs, i, k).is_some() && unmixed;
            s.expect(a.is_some() == b, || format!("{i} k={k}: k-clean={} pretty&unmixed={b}", a.is_some()));
        }
    }
    s
}

pub fn colon_closure(ideals: &[MonomialIdeal]) -> Suite {
    let mut s = Suite::new("colons of pretty k-clean ideals are pretty k-clean");
    for i in ideals {
        s.instances += 1;
        let mut cs = CleanSearch::default();
        for k in KS {
            if pretty(&mut cs, i, k).is_none() {
                continue;
            }
            for u in grid(&i.max_exponents()) {
                let c = i.colon(&u).expect("same n");
                let ok = pretty(&mut cs, &c, k).is_some();
                s.expect(ok, || format!("{i} k={k}: I:{u} = {c} is not pretty clean"));
            }
        }
    }
    s
}

pub fn radical_closure(ideals: &[MonomialIdeal]) -> Suite {
    let mut s = Suite::new("radicals of pretty k-clean ideals are k-clean");
    for i in ideals {
        s.instances += 1;
        let mut cs = CleanSearch::default();
        let r = i.radical();
        for k in KS {
            if pretty(&mut cs, i, k).is_none() {
                continue;
            }
            let a = pretty(&mut cs, &r, k).is_some();
            let b = clean(&mut cs, &r, k).is_some();
            s.expect(a && b, || format!("{i} k={k}: radical {r} pretty={a} clean={b}"));
        }
    }
    s
}

pub fn monotonicity(ideals: &[MonomialIdeal]) -> Suite {
    let mut s = Suite::new("pretty k-clean => pretty k'-clean for k' >= k");
    for i in ideals {
        s.instances += 1;
        let mut cs = CleanSearch::default();
        let answers: Vec<bool> = KS.iter().map(|&k| pretty(&mut cs, i, k).is_some()).collect();
        s.expect(answers.windows(2).all(|w| !w[0] || w[1]), || format!("{i}: {answers:?}"));
    }
    s
}

/// Mix of `Γ(I)` for small ideals and general random multicomplexes.
pub fn small_multicomplexes(seed: u64, count: usize) -> Vec<Multicomplex> {
    let mut r = rng(seed);
    (0..count)
        .map(|j| {
            let n = r.random_range(1..=3);
            if j % 2 == 0 {
                Multicomplex::from_ideal(&random_ideal(&mut r, n, 2, 4))
            } else {
                random_multicomplex(&mut r, n, 2, 3)
            }
        })
        .collect()
}

pub fn link_closure(complexes: &[Multicomplex]) -> Suite {
    let mut s = Suite::new("links of k-decomposable multicomplexes are k-decomposable");
    for g in complexes {
        s.instances += 1;
        let mut ds = DecompositionSearch::default();
        for k in KS {
            if !decomposable(&mut ds, g, k) {
                continue;
            }
            for a in grid(&g.default_caps()).filter(|a| g.member(a)) {
                let lk = g.link(&a).expect("finite face");
                s.expect(decomposable(&mut ds, &lk, k), || format!("{g} k={k}: link of {a} = {lk}"));
            }
        }
    }
    s
}

fn random_entry(r: &mut StdRng, max: u32) -> Exp {
    if r.random_bool(0.3) {
        Inf
    } else {
        Fin(r.random_range(0..=max))
    }
}

pub fn single_maximal_element(seed: u64, count: usize) -> Suite {
    let mut s = Suite::new("<b> is k-decomposable iff |fpt*(b)| <= k+1");
    let mut r = rng(seed);
    for _ in 0..count {
        s.instances += 1;
        let n = r.random_range(1..=3);
        let b = ExpVec::new((0..n).map(|_| random_entry(&mut r, 2)).collect()).expect("n >= 1");
        let g = Multicomplex::generated_by(n, [b.clone()]).expect("same n");
        let mut ds = DecompositionSearch::default();
        for k in KS {
            let want = b.fpt_star().len() <= k + 1;
            let got = decomposable(&mut ds, &g, k);
            s.expect(got == want, || format!("<{b}> k={k}: decided {got}, expected {want}"));
        }
    }
    s
}

fn pad(v: &ExpVec, before: usize, after: usize) -> ExpVec {
    let mut e = vec![Fin(0); before];
    e.extend_from_slice(v.entries());
    e.extend(std::iter::repeat_n(Fin(0), after));
    ExpVec::new(e).expect("nonempty")
}

fn embed(g: &Multicomplex, before: usize, after: usize) -> Multicomplex {
    let n = before + g.n() + after;
    Multicomplex::generated_by(n, g.maximal().iter().map(|m| pad(m, before, after))).expect("same n")
}

fn random_zero_inf(r: &mut StdRng, n: usize) -> Multicomplex {
    let count = r.random_range(1..=3);
    let gens: Vec<ExpVec> = (0..count)
        .map(|_| ExpVec::new((0..n).map(|_| if r.random_bool(0.5) { Inf } else { Fin(0) }).collect()).expect("n >= 1"))
        .collect();
    Multicomplex::generated_by(n, gens).expect("same n")
}

pub fn join_closure(seed: u64, count: usize) -> Suite {
    let mut s = Suite::new("joins of multicomplexes");
    let mut r = rng(seed);
    for j in 0..count {
        s.instances += 1;
        let n1 = r.random_range(1..=2);
        let n2 = r.random_range(1..=2);
        let g1 = if j % 2 == 0 {
            Multicomplex::from_ideal(&random_ideal(&mut r, n1, 2, 3))
        } else {
            random_multicomplex(&mut r, n1, 2, 3)
        };
        let zero_inf = j % 3 != 0;
        let g2 = if zero_inf {
            random_zero_inf(&mut r, n2)
        } else {
            Multicomplex::from_ideal(&random_ideal(&mut r, n2, 2, 2))
        };
        let a = embed(&g1, 0, n2);
        let b = embed(&g2, n1, 0);
        let joined = a.join(&b).expect("disjoint");
        let mut ds = DecompositionSearch::default();
        for k in KS {
            let both = decomposable(&mut ds, &a, k) && decomposable(&mut ds, &b, k);
            let jd = decomposable(&mut ds, &joined, k);
            if zero_inf {
                s.expect(jd == both, || format!("{a} * {b} k={k}: join={jd} factors={both}"));
            } else {
                s.expect(!jd || both, || format!("{a} * {b} k={k}: join decomposable, factors not"));
            }
        }
    }
    s
}

pub fn decomposable_vs_shellable(complexes: &[Multicomplex]) -> Suite {
    let mut s = Suite::new("k-decomposable => shellable => decomposable for some k");
    for g in complexes {
        s.instances += 1;
        let shelling = g.find_shelling();
        if let Some(order) = &shelling {
            s.expect(g.is_shelling(order).unwrap_or(false), || format!("{g}: returned order is not a shelling"));
        }
        let mut ds = DecompositionSearch::default();
        let any_k = (0..g.n()).any(|k| decomposable(&mut ds, g, k));
        for k in KS {
            if decomposable(&mut ds, g, k) {
                s.expect(shelling.is_some(), || format!("{g} k={k}: decomposable but no shelling"));
            }
        }
        if shelling.is_some() {
            s.expect(any_k, || format!("{g}: shellable but not k-decomposable for k <= n-1"));
        }
    }
    s
}

pub fn small_complexes(seed: u64, count: usize) -> Vec<SimplicialComplex> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let v = r.random_range(2..=5);
            random_complex(&mut r, v, 5)
        })
        .collect()
}

pub fn simplicial_bridge(complexes: &[SimplicialComplex]) -> Suite {
    let mut s = Suite::new("simplicial and multicomplex k-decomposability agree");
    for d in complexes {
        s.instances += 1;
        let g = d.to_multicomplex().expect("small");
        let mut ds = DecompositionSearch::default();
        for k in KS {
            let a = is_k_decomposable_sc(d, k as i64).expect("k >= -1").is_some();
            let b = decomposable(&mut ds, &g, k);
            s.expect(a == b, || format!("{d} k={k}: simplicial={a} multicomplex={b}"));
        }
    }
    s
}

pub fn shellability_bridge(complexes: &[SimplicialComplex]) -> Suite {
    let mut s = Suite::new("simplicial and multicomplex shellability agree");
    for d in complexes {
        s.instances += 1;
        let a = d.find_shelling().is_some();
        let b = d.to_multicomplex().expect("small").find_shelling().is_some();
        s.expect(a == b, || format!("{d}: simplicial={a} multicomplex={b}"));
    }
    s
}

pub fn simplicial_joins(seed: u64, count: usize) -> Suite {
    let mut s = Suite::new("joins of simplicial complexes");
    let mut r = rng(seed);
    for _ in 0..count {
        s.instances += 1;
        let v1 = r.random_range(1..=3);
        let v2 = r.random_range(1..=3);
        let d1 = random_complex(&mut r, v1, 3);
        let d2 = random_complex(&mut r, v2, 3);
        let j = d1.join(&d2).expect("small");
        for k in KS {
            let k = k as i64;
            let a = is_k_decomposable_sc(&j, k).expect("k").is_some();
            let b = is_k_decomposable_sc(&d1, k).expect("k").is_some() && is_k_decomposable_sc(&d2, k).expect("k").is_some();
            s.expect(a == b, || format!("{d1} * {d2} k={k}: join={a} factors={b}"));
        }
    }
    s
}

pub fn stanley_reisner_bridges(complexes: &[SimplicialComplex]) -> (Suite, Suite) {
    let mut t14 = Suite::new("k-decomposable complex == k-clean Stanley-Reisner ideal");
    let mut dress = Suite::new("shellable complex == clean Stanley-Reisner ideal");
    for d in complexes {
        t14.instances += 1;
        dress.instances += 1;
        let i = d.stanley_reisner().expect("small");
        let mut cs = CleanSearch::default();
        for k in KS {
            let a = is_k_decomposable_sc(d, k as i64).expect("k").is_some();
            let b = clean(&mut cs, &i, k).is_some();
            t14.expect(a == b, || format!("{d} k={k}: decomposable={a} clean={b}"));
        }
        let full = d.vertices().saturating_sub(1);
        let shellable = d.find_shelling().is_some();
        let has_clean = clean(&mut cs, &i, full).is_some();
        dress.expect(shellable == has_clean, || format!("{d}: shellable={shellable} clean={has_clean}"));
    }
    (t14, dress)
}

pub fn unmixed_vs_polarized(ideals: &[MonomialIdeal]) -> Suite {
    let mut s = Suite::new("for ass == min, k-clean(I) == k-clean(I^p)");
    for i in ideals.iter().filter(|i| i.has_no_embedded_primes().unwrap_or(false)) {
        s.instances += 1;
        let (ip, _) = polarize_ideal(i).expect("proper nonzero");
        let mut cs = CleanSearch::default();
        for k in KS {
            let a = clean(&mut cs, i, k).is_some();
            let b = clean(&mut cs, &ip, k).is_some();
            s.expect(a == b, || format!("{i} k={k}: k-clean={a} polarized={b}"));
        }
    }
    s
}

pub fn disjoint_products(seed: u64, count: usize) -> Suite {
    let mut s = Suite::new("products of disjoint ideals");
    let mut r = rng(seed);
    for _ in 0..count {
        s.instances += 1;
        let n1 = r.random_range(1..=2);
        let n2 = r.random_range(1..=3);
        let (i, j) = random_disjoint_ideals(&mut r, n1, n2, 2, 2);
        let ij = i.product_disjoint(&j).expect("disjoint");
        let mut cs = CleanSearch::default();
        for k in KS {
            let a = pretty(&mut cs, &i, k).is_some() && pretty(&mut cs, &j, k).is_some();
            let b = pretty(&mut cs, &ij, k).is_some();
            s.expect(a == b, || format!("{i} * {j} k={k}: factors={a} product={b}"));
        }
    }
    s
}

pub fn disjoint_sums(seed: u64, count: usize) -> Suite {
    let mut s = Suite::new("sums of disjoint ideals");
    let mut r = rng(seed);
    for _ in 0..count {
        s.instances += 1;
        let n1 = r.random_range(1..=2);
        let n2 = r.random_range(1..=3);
        let (i, j) = random_disjoint_ideals(&mut r, n1, n2, 2, 2);
        let sum = i.sum(&j).expect("same n");
        let mut cs = CleanSearch::default();
        for k in KS {
            let a = pretty(&mut cs, &i, k).is_some() && pretty(&mut cs, &j, k).is_some();
            let b = pretty(&mut cs, &sum, k).is_some();
            s.expect(a == b, || format!("{i} + {j} k={k}: factors={a} sum={b}"));
        }
    }
    s
}

pub fn multicomplex_polarization(ideals: &[MonomialIdeal]) -> Suite {
    let mut s = Suite::new("Gamma k-decomposable == Gamma^p k-decomposable");
    for i in ideals {
        s.instances += 1;
        let g = Multicomplex::from_ideal(i);
        let (gp, _) = polarize_multicomplex(&g).expect("facets below the blocks");
        let mut ds = DecompositionSearch::default();
        for k in KS {
            let a = decomposable(&mut ds, &g, k);
            let b = decomposable(&mut ds, &gp, k);
            s.expect(a == b, || format!("{i} k={k}: Gamma={a} Gamma^p={b}"));
        }
    }
    s
}

pub fn oracle_ass_agreement(seed: u64, count: usize) -> Suite {
    let mut s = Suite::new("facet-based ass == oracle ass");
    let mut r = rng(seed);
    for _ in 0..count {
        s.instances += 1;
        let n = r.random_range(1..=3);
        let i = random_ideal(&mut r, n, 3, 4);
        let fast = i.ass().expect("proper nonzero");
        let slow = oracle_ass(&i, &TruncationBox::for_ideal(&i));
        s.expect(fast == slow, || format!("{i}: {fast:?} vs {slow:?}"));
    }
    s
}

pub fn oracle_structure_agreement(complexes: &[Multicomplex]) -> Suite {
    let mut s = Suite::new("facets and I(Gamma) == brute force");
    for g in complexes {
        s.instances += 1;
        s.expect(g.facets() == oracle_facets(g).as_slice(), || format!("{g}: facets differ"));
        let bx = TruncationBox::for_multicomplex(g);
        s.expect(g.to_ideal().gens() == oracle_ideal_of(g, &bx).as_slice(), || format!("{g}: I(Gamma) differs"));
    }
    s
}

pub fn oracle_stanley_agreement(complexes: &[Multicomplex]) -> Suite {
    let mut s = Suite::new("is_stanley_interval == oracle_stanley_interval");
    for g in complexes {
        s.instances += 1;
        let bx = TruncationBox::for_multicomplex(g);
        for a in grid(&g.default_caps()).filter(|a| g.member(a)) {
            for b in g.facets_above(&a) {
                let fast = g.stanley_interval(&a, &b).expect("valid").is_some();
                let slow = oracle_stanley_interval(g, &a, &b, &bx);
                s.expect(fast == slow, || format!("{g} a={a} b={b}: fast={fast} oracle={slow}"));
            }
        }
    }
    s
}

/// Fast deciders at their default caps against the oracles one step further out.
pub fn oracle_decider_agreement(seed: u64, count: usize) -> Suite {
    let mut s = Suite::new("fast deciders == oracle deciders");
    let mut r = rng(seed);
    for _ in 0..count {
        s.instances += 1;
        let n = r.random_range(1..=3);
        let i = random_ideal(&mut r, n, 2, 3);
        let g = Multicomplex::from_ideal(&i);
        let mut cs = CleanSearch::default();
        let mut ds = DecompositionSearch::default();
        let ideal_cap = i.max_exponents().into_iter().max().unwrap_or(0) + 1;
        let complex_cap = g.default_caps().into_iter().max().unwrap_or(0) + 1;
        for k in KS {
            let fast = pretty(&mut cs, &i, k).is_some();
            let slow = oracle_pretty_k_clean(&i, k, ideal_cap).expect("within oracle limits");
            s.expect(fast == slow, || format!("{i} k={k}: pretty fast={fast} oracle={slow}"));
            let fast = decomposable(&mut ds, &g, k);
            let slow = oracle_decomposable(&g, k, complex_cap).expect("within oracle limits");
            s.expect(fast == slow, || format!("{g} k={k}: decomposable fast={fast} oracle={slow}"));
        }
    }
    s
}
