use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trefoil_core::*;
use trefoil_harness::stress::{evaluate_triple, sample_triple, Family};

fn main() {
    let ring = PolyRing::new(
        (1..=6).map(|i| format!("x{i}")).collect(),
        FieldSpec::Prime(32003),
        MonomialOrder::GrevLex,
    ).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13036983977487386679u64);
    let gens = sample_triple(&mut rng, &ring, Family::Uniform, 0.25).unwrap();
    for g in &gens { eprintln!("gen ({} terms)", g.num_terms()); }
    let i = Ideal::new(&ring, gens).unwrap();
    let t0 = std::time::Instant::now();
    let gb = i.groebner_basis().unwrap();
    eprintln!("gb {} elements [{:?}]", gb.elements().len(), t0.elapsed());
    let t0 = std::time::Instant::now();
    eprintln!("ht {:?} [{:?}]", i.height(), t0.elapsed());
    let t0 = std::time::Instant::now();
    let (ht, e, pd, verdict) = evaluate_triple(&i);
    eprintln!("ht={ht:?} e={e:?} pd={pd:?} verdict={verdict:?} [{:?}]", t0.elapsed());
}
