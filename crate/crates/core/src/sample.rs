//! Seeded random instances for property tests and cross-checks.

use rand::Rng;

use crate::exponents::{ExpVec, Fin, Inf};
use crate::ideals::MonomialIdeal;
use crate::multicomplex::Multicomplex;
use crate::simplicial::SimplicialComplex;

/// A proper nonzero monomial ideal with 1..=`max_gens` generators and
/// exponents at most `max_exp`.
pub fn random_ideal<R: Rng + ?Sized>(rng: &mut R, n: usize, max_exp: u32, max_gens: usize) -> MonomialIdeal {
    let count = rng.random_range(1..=max_gens.max(1));
    let gens = (0..count).map(|_| random_nonzero(rng, n, max_exp)).collect();
    MonomialIdeal::new(n, gens).expect("n >= 1")
}

fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, n: usize, max_exp: u32) -> ExpVec {
    loop {
        let v: Vec<u32> = (0..n).map(|_| rng.random_range(0..=max_exp)).collect();
        if v.iter().any(|&e| e > 0) {
            return ExpVec::finite(&v);
        }
    }
}

/// A squarefree proper nonzero ideal.
pub fn random_squarefree_ideal<R: Rng + ?Sized>(rng: &mut R, n: usize, max_gens: usize) -> MonomialIdeal {
    random_ideal(rng, n, 1, max_gens)
}

/// A multicomplex generated by 1..=`max_gens` elements with entries in
/// `{0..max_entry} ∪ {∞}`.
pub fn random_multicomplex<R: Rng + ?Sized>(rng: &mut R, n: usize, max_entry: u32, max_gens: usize) -> Multicomplex {
    let count = rng.random_range(1..=max_gens.max(1));
    let gens = (0..count).map(|_| {
        let e = (0..n)
            .map(|_| if rng.random_bool(0.35) { Inf } else { Fin(rng.random_range(0..=max_entry)) })
            .collect();
        ExpVec::new(e).expect("n >= 1")
    });
    Multicomplex::generated_by(n, gens).expect("consistent dimension")
}

/// A complex with 1..=`max_facets` random nonempty facets.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, vertices: usize, max_facets: usize) -> SimplicialComplex {
    let count = rng.random_range(1..=max_facets.max(1));
    let facets: Vec<Vec<usize>> = (0..count)
        .map(|_| loop {
            let f: Vec<usize> = (0..vertices).filter(|_| rng.random_bool(0.5)).collect();
            if !f.is_empty() {
                break f;
            }
        })
        .collect();
    SimplicialComplex::new(vertices, &facets).expect("vertices in range")
}

/// Two ideals in `n1 + n2` variables supported on the first `n1` and the last `n2` variables.
pub fn random_disjoint_ideals<R: Rng + ?Sized>(
    rng: &mut R,
    n1: usize,
    n2: usize,
    max_exp: u32,
    max_gens: usize,
) -> (MonomialIdeal, MonomialIdeal) {
    let total = n1 + n2;
    let a = random_ideal(rng, n1, max_exp, max_gens).embed(total, 0).expect("fits");
    let b = random_ideal(rng, n2, max_exp, max_gens).embed(total, n1).expect("fits");
    (a, b)
}
