//! Randomized falsification harness: sample triples of cubic forms, compute
//! height, multiplicity and projective dimension, and assert the bounds that
//! the computations must never violate. Uniform sampling almost never lands
//! on height two, so structured families biased toward that branch ship
//! alongside it.

use std::fmt;
use std::io::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use trefoil_core::budget::with_deadline;
use trefoil_core::{
    monomials_of_degree, Error, FieldSpec, Ideal, PolyRing, Polynomial, Term,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Three independent random cubics.
    Uniform,
    /// Two cubes of variables plus a mixed cubic, after the simplest known
    /// large-pd example: all three generators lie in (x1, x2).
    Pinned,
    /// Two cubics sharing a random linear factor, plus a random cubic.
    SharedFactor,
    /// All three generators inside the prime (x1, x2), with quadric cofactors.
    PrimaryPencil,
}

impl Family {
    pub fn parse(name: &str) -> Option<Family> {
        match name {
            "uniform" => Some(Family::Uniform),
            "pinned" => Some(Family::Pinned),
            "shared-factor" => Some(Family::SharedFactor),
            "primary-pencil" => Some(Family::PrimaryPencil),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Pinned => "pinned",
            Family::SharedFactor => "shared-factor",
            Family::PrimaryPencil => "primary-pencil",
        }
    }

    pub const ALL: &'static [Family] = &[
        Family::Uniform,
        Family::Pinned,
        Family::SharedFactor,
        Family::PrimaryPencil,
    ];
}

#[derive(Debug, Clone)]
pub struct TrialConfig {
    pub nvars: usize,
    pub field_char: u32,
    pub trials: usize,
    pub seed: u64,
    /// Probability that a degree-3 monomial occurs in a uniform cubic.
    pub density: f64,
    pub budget: Duration,
    pub family: Family,
}

impl TrialConfig {
    pub fn new(nvars: usize, trials: usize, seed: u64) -> Result<TrialConfig, Error> {
        if !(4..=12).contains(&nvars) {
            return Err(Error::precondition("nvars must lie in 4..=12"));
        }
        Ok(TrialConfig {
            nvars,
            field_char: trefoil_core::DEFAULT_PRIME,
            trials,
            seed,
            density: 0.25,
            budget: Duration::from_secs(10),
            family: Family::Uniform,
        })
    }

    pub fn ring(&self) -> Result<PolyRing, Error> {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        PolyRing::new(
            names,
            FieldSpec::from_char(self.field_char)?,
            trefoil_core::MonomialOrder::GrevLex,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// Carries the violated inequality verbatim.
    BoundViolation(String),
    SkippedHeight,
    Timeout,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => write!(f, "ok"),
            Verdict::BoundViolation(_) => write!(f, "bound_violation"),
            Verdict::SkippedHeight => write!(f, "skipped_height"),
            Verdict::Timeout => write!(f, "timeout"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub nvars: usize,
    pub field_char: u32,
    pub ht: Option<usize>,
    pub e: Option<i64>,
    pub pd: Option<usize>,
    pub depth: Option<usize>,
    pub verdict: Verdict,
    pub elapsed_ms: u128,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub trial: usize,
    pub message: String,
    pub generators: Vec<String>,
}

/// A random homogeneous cubic: each degree-3 monomial independently with
/// probability `density`, coefficients uniform and nonzero. All-zero draws
/// are retried a bounded number of times.
pub fn random_cubic(
    rng: &mut ChaCha8Rng,
    ring: &PolyRing,
    density: f64,
) -> Result<Polynomial, Error> {
    let pool = monomials_of_degree(ring.nvars(), 3);
    let field = ring.field();
    let p = field.characteristic() as i64;
    for _ in 0..64 {
        let mut terms = Vec::new();
        for mon in &pool {
            if rng.gen_bool(density) {
                let c = field.from_i64(rng.gen_range(1..p.max(2)));
                terms.push(Term {
                    coeff: c,
                    mon: mon.clone(),
                });
            }
        }
        let f = Polynomial::from_terms(ring, terms);
        if !f.is_zero() {
            return Ok(f);
        }
    }
    Err(Error::domain("could not draw a nonzero cubic"))
}

fn random_form(
    rng: &mut ChaCha8Rng,
    ring: &PolyRing,
    degree: u32,
    density: f64,
) -> Result<Polynomial, Error> {
    let pool = monomials_of_degree(ring.nvars(), degree);
    let field = ring.field();
    let p = field.characteristic() as i64;
    for _ in 0..64 {
        let mut terms = Vec::new();
        for mon in &pool {
            if rng.gen_bool(density) {
                let c = field.from_i64(rng.gen_range(1..p.max(2)));
                terms.push(Term {
                    coeff: c,
                    mon: mon.clone(),
                });
            }
        }
        let f = Polynomial::from_terms(ring, terms);
        if !f.is_zero() {
            return Ok(f);
        }
    }
    Err(Error::domain("could not draw a nonzero form"))
}

/// Samples the three cubic generators for one trial of the given family.
pub fn sample_triple(
    rng: &mut ChaCha8Rng,
    ring: &PolyRing,
    family: Family,
    density: f64,
) -> Result<Vec<Polynomial>, Error> {
    let x = Polynomial::var(ring, 0);
    let y = Polynomial::var(ring, 1);
    match family {
        Family::Uniform => Ok(vec![
            random_cubic(rng, ring, density)?,
            random_cubic(rng, ring, density)?,
            random_cubic(rng, ring, density)?,
        ]),
        Family::Pinned => {
            // x^3, y^3, x^2 a + x y b + y^2 c with random linear a, b, c.
            let a = random_form(rng, ring, 1, 0.5)?;
            let b = random_form(rng, ring, 1, 0.5)?;
            let c = random_form(rng, ring, 1, 0.5)?;
            let x2 = x.mul(&x)?;
            let y2 = y.mul(&y)?;
            let f3 = x2
                .mul(&a)?
                .add(&x.mul(&y)?.mul(&b)?)?
                .add(&y2.mul(&c)?)?;
            Ok(vec![x2.mul(&x)?, y2.mul(&y)?, f3])
        }
        Family::SharedFactor => {
            let l = random_form(rng, ring, 1, 0.5)?;
            let q1 = random_form(rng, ring, 2, density.max(0.3))?;
            let q2 = random_form(rng, ring, 2, density.max(0.3))?;
            Ok(vec![l.mul(&q1)?, l.mul(&q2)?, random_cubic(rng, ring, density)?])
        }
        Family::PrimaryPencil => {
            let mut gens = Vec::with_capacity(3);
            for _ in 0..3 {
                let q = random_form(rng, ring, 2, density.max(0.3))?;
                let r = random_form(rng, ring, 2, density.max(0.3))?;
                let f = x.mul(&q)?.add(&y.mul(&r)?)?;
                if f.is_zero() {
                    return Err(Error::domain("degenerate pencil draw"));
                }
                gens.push(f);
            }
            Ok(gens)
        }
    }
}

/// The invariants and verdict for one sampled triple. This is the oracle the
/// whole harness exists for: any bound violation is a counterexample to the
/// degree-three bounds and must surface loudly.
pub fn evaluate_triple(ideal: &Ideal) -> (Option<usize>, Option<i64>, Option<usize>, Verdict) {
    let run = || -> Result<(Option<usize>, Option<i64>, Option<usize>, Verdict), Error> {
        let ht = ideal.height()?;
        match ht {
            0 | 1 => Ok((Some(ht), None, None, Verdict::SkippedHeight)),
            2 => {
                let e = ideal.multiplicity()?;
                let pd = ideal.pd()?;
                if e > 7 {
                    return Ok((
                        Some(ht),
                        Some(e),
                        Some(pd),
                        Verdict::BoundViolation(format!("ht = 2 but e = {e} > 7")),
                    ));
                }
                if pd > 5 {
                    return Ok((
                        Some(ht),
                        Some(e),
                        Some(pd),
                        Verdict::BoundViolation(format!("ht = 2 but pd = {pd} > 5")),
                    ));
                }
                if e == 7 && pd != 2 {
                    return Ok((
                        Some(ht),
                        Some(e),
                        Some(pd),
                        Verdict::BoundViolation(format!("e = 7 but pd = {pd} != 2")),
                    ));
                }
                Ok((Some(ht), Some(e), Some(pd), Verdict::Ok))
            }
            3 => {
                let e = ideal.multiplicity()?;
                let pd = ideal.pd()?;
                if pd != 3 {
                    return Ok((
                        Some(ht),
                        Some(e),
                        Some(pd),
                        Verdict::BoundViolation(format!(
                            "ht = 3 (complete intersection) but pd = {pd} != 3"
                        )),
                    ));
                }
                Ok((Some(ht), Some(e), Some(pd), Verdict::Ok))
            }
            other => Ok((
                Some(other),
                None,
                None,
                Verdict::BoundViolation(format!("three cubics with ht = {other} > 3")),
            )),
        }
    };
    match run() {
        Ok(t) => t,
        Err(Error::Timeout) => (None, None, None, Verdict::Timeout),
        Err(e) => (
            None,
            None,
            None,
            Verdict::BoundViolation(format!("computation error: {e}")),
        ),
    }
}

fn trial_seed(master: u64, index: usize) -> u64 {
    // splitmix64 over the master seed and trial index.
    let mut z = master ^ (index as u64).wrapping_mul(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn run_one(config: &TrialConfig, ring: &PolyRing, index: usize) -> TrialRecord {
    let seed = trial_seed(config.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let started = Instant::now();
    let (generators, ht, e, pd, verdict) = with_deadline(config.budget, || {
        match sample_triple(&mut rng, ring, config.family, config.density) {
            Err(err) => (
                Vec::new(),
                None,
                None,
                None,
                Verdict::BoundViolation(format!("sampling failed: {err}")),
            ),
            Ok(gens) => {
                let texts: Vec<String> = gens.iter().map(trefoil_core::format).collect();
                match Ideal::new(ring, gens) {
                    Err(err) => (
                        texts,
                        None,
                        None,
                        None,
                        Verdict::BoundViolation(format!("ideal construction failed: {err}")),
                    ),
                    Ok(ideal) => {
                        let (ht, e, pd, verdict) = evaluate_triple(&ideal);
                        (texts, ht, e, pd, verdict)
                    }
                }
            }
        }
    });
    TrialRecord {
        trial: index,
        seed,
        nvars: config.nvars,
        field_char: config.field_char,
        ht,
        e,
        pd,
        depth: pd.map(|p| config.nvars - p),
        verdict,
        elapsed_ms: started.elapsed().as_millis(),
        generators,
    }
}

/// Runs all trials (in parallel when a rayon pool is active); the record
/// stream is ordered by trial index, and the violation list is expected to
/// come back empty.
pub fn run_trials(config: &TrialConfig) -> Result<(Vec<TrialRecord>, Vec<Violation>), Error> {
    let ring = config.ring()?;
    let records: Vec<TrialRecord> = (0..config.trials)
        .into_par_iter()
        .map(|i| run_one(config, &ring, i))
        .collect();
    let violations = records
        .iter()
        .filter_map(|r| match &r.verdict {
            Verdict::BoundViolation(msg) => Some(Violation {
                trial: r.trial,
                message: msg.clone(),
                generators: r.generators.clone(),
            }),
            _ => None,
        })
        .collect();
    Ok((records, violations))
}

pub const CSV_HEADER: &str = "trial,seed,nvars,char,ht,e,pd,depth,verdict,elapsed_ms";

pub fn csv_line(r: &TrialRecord) -> String {
    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.trial,
        r.seed,
        r.nvars,
        r.field_char,
        opt(r.ht.map(|x| x as i64)),
        opt(r.e),
        opt(r.pd.map(|x| x as i64)),
        opt(r.depth.map(|x| x as i64)),
        r.verdict,
        r.elapsed_ms
    )
}

/// Writes the per-trial CSV (header + one row per trial, stable column order).
pub fn write_csv(records: &[TrialRecord], path: &Path) -> Result<(), Error> {
    let mut out = String::with_capacity(records.len() * 48 + 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&csv_line(r));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| Error::domain(format!("writing {path:?}: {e}")))
}

/// Sidecar generator dump, keyed by trial index: violations always, every
/// trial on request.
pub fn write_generators(
    records: &[TrialRecord],
    path: &Path,
    only_violations: bool,
) -> Result<(), Error> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| Error::domain(format!("creating {path:?}: {e}")))?;
    for r in records {
        let is_violation = matches!(r.verdict, Verdict::BoundViolation(_));
        if only_violations && !is_violation {
            continue;
        }
        let detail = match &r.verdict {
            Verdict::BoundViolation(msg) => format!(" {msg}"),
            _ => String::new(),
        };
        writeln!(file, "trial {} [{}]{}", r.trial, r.verdict, detail)
            .and_then(|_| {
                for g in &r.generators {
                    writeln!(file, "  {g}")?;
                }
                Ok(())
            })
            .map_err(|e| Error::domain(format!("writing {path:?}: {e}")))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_cubic_is_deterministic_per_seed() {
        let cfg = TrialConfig::new(6, 1, 7).unwrap();
        let ring = cfg.ring().unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(99);
        let mut b = ChaCha8Rng::seed_from_u64(99);
        let fa = random_cubic(&mut a, &ring, 0.25).unwrap();
        let fb = random_cubic(&mut b, &ring, 0.25).unwrap();
        assert_eq!(fa, fb);
        assert!(fa.is_homogeneous());
        assert_eq!(fa.total_degree(), Some(3));
    }

    #[test]
    fn dense_cubic_in_two_effective_vars_uses_every_monomial() {
        let ring = PolyRing::grevlex(&["x", "y"], FieldSpec::Prime(32003)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_cubic(&mut rng, &ring, 1.0).unwrap();
        assert_eq!(f.num_terms(), 4);
    }

    #[test]
    fn expected_density() {
        let cfg = TrialConfig::new(6, 1, 7).unwrap();
        let ring = cfg.ring().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut total = 0usize;
        for _ in 0..50 {
            total += random_cubic(&mut rng, &ring, 0.25).unwrap().num_terms();
        }
        let mean = total as f64 / 50.0;
        // 56 monomials at density 0.25: expect about 14.
        assert!((10.0..18.0).contains(&mean), "mean terms {mean}");
    }

    #[test]
    fn zero_trials_is_an_empty_report() {
        let cfg = TrialConfig::new(6, 0, 1).unwrap();
        let (records, violations) = run_trials(&cfg).unwrap();
        assert!(records.is_empty());
        assert!(violations.is_empty());
    }

    #[test]
    fn small_uniform_run_has_no_violations() {
        let mut cfg = TrialConfig::new(4, 10, 42).unwrap();
        cfg.density = 0.4;
        let (records, violations) = run_trials(&cfg).unwrap();
        assert_eq!(records.len(), 10);
        assert!(violations.is_empty(), "{violations:?}");
        for r in &records {
            assert!(!matches!(r.verdict, Verdict::BoundViolation(_)));
        }
    }

    #[test]
    fn injected_intro_example_is_ok_with_pd_5() {
        let ring = PolyRing::grevlex(&["x", "y", "a", "b", "c"], FieldSpec::Prime(32003)).unwrap();
        let gens = ["x^3", "y^3", "x^2*a+x*y*b+y^2*c"]
            .iter()
            .map(|s| trefoil_core::parse(s, &ring).unwrap())
            .collect();
        let ideal = Ideal::new(&ring, gens).unwrap();
        let (ht, e, pd, verdict) = evaluate_triple(&ideal);
        assert_eq!(ht, Some(2));
        assert_eq!(pd, Some(5));
        assert!(e.unwrap() <= 7);
        assert_eq!(verdict, Verdict::Ok);
    }

    #[test]
    fn csv_shape_and_determinism() {
        let cfg = TrialConfig::new(4, 2, 9).unwrap();
        let (records, _) = run_trials(&cfg).unwrap();
        let dir = std::env::temp_dir().join("trefoil-stress-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        write_csv(&records, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CSV_HEADER);

        // Identical config: identical CSV modulo the elapsed_ms column.
        let (again, _) = run_trials(&cfg).unwrap();
        let strip = |rs: &[TrialRecord]| -> Vec<String> {
            rs.iter()
                .map(|r| {
                    let line = csv_line(r);
                    line.rsplit_once(',').unwrap().0.to_string()
                })
                .collect()
        };
        assert_eq!(strip(&records), strip(&again));
    }

    #[test]
    fn structured_families_hit_height_two() {
        for family in [Family::Pinned, Family::SharedFactor, Family::PrimaryPencil] {
            let mut cfg = TrialConfig::new(6, 6, 11).unwrap();
            cfg.family = family;
            let (records, violations) = run_trials(&cfg).unwrap();
            assert!(violations.is_empty(), "{family:?}: {violations:?}");
            let ht2 = records.iter().filter(|r| r.ht == Some(2)).count();
            assert!(
                ht2 >= records.len() / 2,
                "{family:?} produced too few height-2 samples"
            );
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::parse(f.name()), Some(*f));
        }
        assert_eq!(Family::parse("nope"), None);
    }
}
