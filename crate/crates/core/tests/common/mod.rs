#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trefoil_core::*;

pub fn ring(vars: &[&str]) -> PolyRing {
    PolyRing::grevlex(vars, FieldSpec::Prime(DEFAULT_PRIME)).unwrap()
}

pub fn poly(r: &PolyRing, src: &str) -> Polynomial {
    parse(src, r).unwrap()
}

pub fn ideal(r: &PolyRing, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| poly(r, s)).collect()).unwrap()
}

/// A random homogeneous polynomial of the given degree with the given number
/// of terms (deduplicated monomials, so possibly fewer).
pub fn random_form(r: &PolyRing, rng: &mut ChaCha8Rng, degree: u32, terms: usize) -> Polynomial {
    let pool = monomials_of_degree(r.nvars(), degree);
    let field = r.field();
    let mut picked = Vec::new();
    for _ in 0..terms {
        let mon = pool[rng.gen_range(0..pool.len())].clone();
        let coeff = field.from_i64(rng.gen_range(1..100));
        picked.push(Term { coeff, mon });
    }
    Polynomial::from_terms(r, picked)
}

/// A random ideal with `ngens` homogeneous generators of degree <= maxdeg.
pub fn random_ideal(r: &PolyRing, rng: &mut ChaCha8Rng, ngens: usize, maxdeg: u32) -> Ideal {
    let mut gens = Vec::new();
    while gens.len() < ngens {
        let d = rng.gen_range(1..=maxdeg);
        let f = random_form(r, rng, d, 3);
        if !f.is_zero() {
            gens.push(f);
        }
    }
    Ideal::new(r, gens).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
