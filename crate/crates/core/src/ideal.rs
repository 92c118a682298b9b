//! Homogeneous ideals and their calculus: sum, product, intersection, colon,
//! saturation, elimination, graded slices, and the unmixed part.
//!
//! Intersections go through a single auxiliary variable t and a block
//! elimination order; colon ideals reuse intersections. The non-homogeneous
//! intermediate (1 - t) never escapes this module.

use std::fmt;
use std::sync::OnceLock;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::{buchberger, reduce_basis, GroebnerBasis};
use crate::hilbert::HilbertSeries;
use crate::linalg::row_reduce;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order::MonomialOrder;
use crate::parse::format;
use crate::poly::{Polynomial, Term};
use crate::resolution::BettiTable;
use crate::ring::PolyRing;

/// A regular sequence inside some ideal, with its verification status.
#[derive(Debug, Clone)]
pub struct CompleteIntersectionWitness {
    pub gens: Vec<Polynomial>,
    pub verified: bool,
}

impl CompleteIntersectionWitness {
    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.total_degree().unwrap_or(0)).collect()
    }
}

/// A homogeneous ideal with a lazily cached reduced Groebner basis. The cache
/// is a write-once cell: concurrent readers may race to fill it, and the
/// unique reduced basis makes every outcome identical.
#[derive(Debug)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
    hilbert: OnceLock<HilbertSeries>,
    betti: OnceLock<BettiTable>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb: clone_cell(&self.gb),
            hilbert: clone_cell(&self.hilbert),
            betti: clone_cell(&self.betti),
        }
    }
}

fn clone_cell<T: Clone>(cell: &OnceLock<T>) -> OnceLock<T> {
    let out = OnceLock::new();
    if let Some(v) = cell.get() {
        let _ = out.set(v.clone());
    }
    out
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(format).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl Ideal {
    /// Builds an ideal from homogeneous generators. Zero generators are
    /// dropped; non-homogeneous ones are rejected.
    pub fn new(ring: &PolyRing, gens: Vec<Polynomial>) -> Result<Ideal> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneous(format(&g)));
            }
            kept.push(g);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            gb: OnceLock::new(),
            hilbert: OnceLock::new(),
            betti: OnceLock::new(),
        })
    }

    pub fn zero(ring: &PolyRing) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    /// Construction from a precomputed reduced basis, caching it.
    fn from_reduced_gb(ring: &PolyRing, elements: Vec<Polynomial>) -> Result<Ideal> {
        let ideal = Ideal::new(ring, elements)?;
        let gb = GroebnerBasis::from_reduced_parts(ring.clone(), ideal.gens.clone());
        let _ = ideal.gb.set(gb);
        Ok(ideal)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// The cached reduced Groebner basis in the ring's order.
    pub fn groebner_basis(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let computed = if self.gens.is_empty() {
            GroebnerBasis::from_reduced_parts(self.ring.clone(), Vec::new())
        } else {
            buchberger(&self.gens)?
        };
        let _ = self.gb.set(computed);
        Ok(self.gb.get().unwrap())
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.total_degree() == Some(0)) {
            return Ok(true);
        }
        Ok(self.groebner_basis()?.is_unit_ideal())
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Result<Ideal> {
        if k == 0 {
            return Err(Error::precondition("ideal power requires k >= 1"));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Intersection via elimination: I cap J = (t I + (1-t) J) cap R.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let tname = self.ring.fresh_var_name("t");
        let aux = self.ring.extend_front(&[&tname])?;
        let t = Polynomial::var(&aux, 0);
        let one_minus_t = Polynomial::one(&aux).sub(&t)?;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for g in &self.gens {
            gens.push(t.mul(&g.prepend_vars(&aux, 1))?);
        }
        for h in &other.gens {
            gens.push(one_minus_t.mul(&h.prepend_vars(&aux, 1))?);
        }
        let gb = buchberger(&gens)?;
        let mut eliminated = Vec::new();
        for e in gb.elements() {
            if e.leading_monomial()?.exp(0) == 0 {
                eliminated.push(e.drop_vars(&self.ring, 1)?);
            }
        }
        // The eliminated elements form a basis of the intersection; the
        // reduced form restores canonical, homogeneous generators.
        let reduced = reduce_basis(&self.ring, eliminated)?;
        Ideal::from_reduced_gb(&self.ring, reduced)
    }

    /// Colon by a single element: I : f, computed from I cap (f).
    pub fn colon_elem(&self, f: &Polynomial) -> Result<Ideal> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::domain("colon by the zero element"));
        }
        if f.total_degree() == Some(0) {
            return Ok(self.clone());
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(meet.gens.len());
        for g in &meet.gens {
            gens.push(g.exact_div(f)?);
        }
        Ideal::new(&self.ring, gens)
    }

    /// Ideal quotient I : J = { g : gJ inside I }.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if other.is_zero_ideal() {
            return Err(Error::domain("colon by the zero ideal"));
        }
        let mut acc: Option<Ideal> = None;
        for f in &other.gens {
            let part = self.colon_elem(f)?;
            acc = Some(match acc {
                None => part,
                Some(cur) => cur.intersect(&part)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// Stable value of the ascending chain I : J^k.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if other.is_zero_ideal() {
            return Err(Error::domain("saturation by the zero ideal"));
        }
        let mut current = self.clone();
        loop {
            let next = current.colon(other)?;
            if next.equal(&current)? {
                return Ok(current);
            }
            current = next;
        }
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        self.groebner_basis()?.contains(f)
    }

    /// Containment of `other` inside `self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in &other.gens {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual containment.
    pub fn equal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// Generators of I cap k[x_{b+1}, ..., x_n]: a Groebner basis under the
    /// two-block order, restricted to elements free of the first b variables.
    pub fn eliminate(&self, first_vars: usize) -> Result<Ideal> {
        if first_vars == 0 {
            return Ok(self.clone());
        }
        if first_vars > self.ring.nvars() {
            return Err(Error::precondition("cannot eliminate more variables than the ring has"));
        }
        if self.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let block = self.ring.with_order(MonomialOrder::Block { split: first_vars })?;
        let moved: Vec<Polynomial> = self.gens.iter().map(|g| g.reorder(&block)).collect();
        let gb = buchberger(&moved)?;
        let mut kept = Vec::new();
        for e in gb.elements() {
            if e.leading_monomial()?.exps()[..first_vars].iter().all(|&x| x == 0) {
                kept.push(e.reorder(&self.ring));
            }
        }
        let reduced = reduce_basis(&self.ring, kept)?;
        Ideal::from_reduced_gb(&self.ring, reduced)
    }

    /// The paper-style degree slice [I]_n: the ideal generated by a k-basis
    /// of the degree-n forms in I, found by row-reducing monomial multiples
    /// of the basis elements.
    pub fn degree_part(&self, n: u32) -> Result<Ideal> {
        let gb = self.groebner_basis()?;
        let polys = degree_slice_basis(&self.ring, gb.elements(), n)?;
        Ideal::new(&self.ring, polys)
    }

    /// dim_k [I]_n.
    pub fn degree_part_dim(&self, n: u32) -> Result<usize> {
        Ok(self.degree_part(n)?.generators().len())
    }

    pub fn hilbert_series(&self) -> Result<&HilbertSeries> {
        if let Some(h) = self.hilbert.get() {
            return Ok(h);
        }
        let gb = self.groebner_basis()?;
        let lead: Vec<Monomial> = crate::groebner::lead_ideal(gb);
        let series = HilbertSeries::from_monomials(self.ring.nvars(), &lead);
        let _ = self.hilbert.set(series);
        Ok(self.hilbert.get().unwrap())
    }

    pub fn hilbert_function(&self, n: u32) -> Result<i64> {
        Ok(self.hilbert_series()?.hilbert_function(n))
    }

    /// Krull dimension of R/I (-1 for the unit ideal).
    pub fn dim(&self) -> Result<i64> {
        Ok(self.hilbert_series()?.dim())
    }

    /// Height of the ideal; nvars for the unit ideal by convention.
    pub fn height(&self) -> Result<usize> {
        Ok(self.hilbert_series()?.height())
    }

    /// Multiplicity e(R/I) = Q(1) of the reduced Hilbert series.
    pub fn multiplicity(&self) -> Result<i64> {
        self.hilbert_series()?.multiplicity()
    }

    /// The graded Betti table of R/I (cached).
    pub fn betti(&self) -> Result<&BettiTable> {
        if let Some(b) = self.betti.get() {
            return Ok(b);
        }
        let (_, betti) = crate::resolution::free_resolution(self)?;
        let _ = self.betti.set(betti);
        Ok(self.betti.get().unwrap())
    }

    /// Projective dimension of R/I; errors on the unit ideal.
    pub fn pd(&self) -> Result<usize> {
        if self.is_unit_ideal()? {
            return Err(Error::domain("pd of the zero module is undefined"));
        }
        Ok(self.betti()?.pd())
    }

    /// depth(R/I) = nvars - pd by the graded Auslander-Buchsbaum formula.
    pub fn depth(&self) -> Result<usize> {
        Ok(self.ring.nvars() - self.pd()?)
    }

    /// Cohen-Macaulay exactly when pd equals the height.
    pub fn is_cm(&self) -> Result<bool> {
        Ok(self.pd()? == self.height()?)
    }

    /// Alternating Betti sums must reproduce the Hilbert numerator.
    pub fn euler_check(&self) -> Result<bool> {
        let numer = self.hilbert_series()?.numerator().to_vec();
        let euler = self.betti()?.euler_numerator();
        Ok(numer == euler)
    }

    /// The unmixed part computed by double linkage: C : (C : I) for a
    /// complete intersection C inside I of full height. The witness is
    /// auto-selected when absent; the result is checked to preserve height
    /// and multiplicity, so a bad witness fails loudly instead of silently.
    pub fn unmixed_part(
        &self,
        witness: Option<&CompleteIntersectionWitness>,
        seed: u64,
    ) -> Result<Ideal> {
        let g = self.height()?;
        if self.is_zero_ideal() || g == 0 {
            return Err(Error::precondition("unmixed part requires height >= 1"));
        }
        if self.is_unit_ideal()? {
            return Err(Error::precondition("unmixed part of the unit ideal is undefined"));
        }
        let witness = match witness {
            Some(w) => {
                verify_witness(self, w, g)?;
                w.clone()
            }
            None => auto_witness(self, g, seed)?,
        };
        let c = Ideal::new(&self.ring, witness.gens.clone())?;
        let link = c.colon(self)?;
        let unmixed = c.colon(&link)?;
        if unmixed.height()? != g {
            return Err(Error::domain("unmixed part changed height; witness was not a complete intersection"));
        }
        if unmixed.multiplicity()? != self.multiplicity()? {
            return Err(Error::domain("unmixed part changed multiplicity; witness was not a complete intersection"));
        }
        debug_assert!(unmixed.contains(self)?);
        Ok(unmixed)
    }
}

/// A k-basis of the degree-n slice of the ideal spanned by `elements`
/// (which must generate it in every degree, e.g. a Groebner basis or, for
/// the brute-force oracle, the original generators).
pub fn degree_slice_basis(
    ring: &PolyRing,
    elements: &[Polynomial],
    n: u32,
) -> Result<Vec<Polynomial>> {
    let cols = monomials_of_degree(ring.nvars(), n);
    let col_index: std::collections::HashMap<&Monomial, usize> =
        cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let field = ring.field();
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for g in elements {
        let Some(d) = g.total_degree() else { continue };
        if d > n {
            continue;
        }
        for m in monomials_of_degree(ring.nvars(), n - d) {
            let prod = g.mul_term(&field.one(), &m);
            let mut row = vec![field.zero(); cols.len()];
            for t in prod.terms() {
                row[col_index[&t.mon]] = t.coeff.clone();
            }
            rows.push(row);
        }
    }
    row_reduce(&mut rows, field);
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let terms: Vec<Term> = row
            .into_iter()
            .zip(&cols)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| Term {
                coeff: c,
                mon: m.clone(),
            })
            .collect();
        out.push(Polynomial::from_terms(ring, terms));
    }
    Ok(out)
}

fn verify_witness(ideal: &Ideal, w: &CompleteIntersectionWitness, g: usize) -> Result<()> {
    if w.gens.len() != g {
        return Err(Error::precondition(format!(
            "witness has {} generators but the ideal has height {g}",
            w.gens.len()
        )));
    }
    let c = Ideal::new(ideal.ring(), w.gens.clone())?;
    if !ideal.contains(&c)? {
        return Err(Error::precondition("witness is not contained in the ideal"));
    }
    if c.height()? != g {
        return Err(Error::precondition("witness is not a complete intersection of full height"));
    }
    Ok(())
}

fn auto_witness(ideal: &Ideal, g: usize, seed: u64) -> Result<CompleteIntersectionWitness> {
    find_ci_candidates(ideal, g, None, seed, 40)
}

/// Searches for a complete intersection of height `g` inside `ideal`:
/// generator subsets first, then seeded random combinations of generators.
/// When `degrees` is given, candidate elements are constrained to match it.
pub fn find_ci_candidates(
    ideal: &Ideal,
    g: usize,
    degrees: Option<&[u32]>,
    seed: u64,
    attempts: usize,
) -> Result<CompleteIntersectionWitness> {
    let ring = ideal.ring();
    let gens = ideal.generators();
    let gen_degrees: Vec<u32> = gens.iter().map(|p| p.total_degree().unwrap()).collect();

    // Pass 1: subsets of the generators, in index order.
    for combo in combinations(gens.len(), g) {
        if let Some(want) = degrees {
            let mut have: Vec<u32> = combo.iter().map(|&i| gen_degrees[i]).collect();
            let mut want = want.to_vec();
            have.sort_unstable();
            want.sort_unstable();
            if have != want {
                continue;
            }
        }
        let subset: Vec<Polynomial> = combo.iter().map(|&i| gens[i].clone()).collect();
        let c = Ideal::new(ring, subset.clone())?;
        if c.height()? == g {
            return Ok(CompleteIntersectionWitness {
                gens: subset,
                verified: true,
            });
        }
    }

    // Pass 2: random homogeneous combinations of the generators.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_deg = gen_degrees.iter().copied().max().unwrap_or(0);
    let target: Vec<u32> = match degrees {
        Some(d) => d.to_vec(),
        None => vec![max_deg; g],
    };
    for _ in 0..attempts {
        let mut cand = Vec::with_capacity(g);
        for &d in &target {
            let mut f = Polynomial::zero(ring);
            for (j, gp) in gens.iter().enumerate() {
                if gen_degrees[j] > d {
                    continue;
                }
                let pool = monomials_of_degree(ring.nvars(), d - gen_degrees[j]);
                let m = pool[rng.gen_range(0..pool.len())].clone();
                let c = random_nonzero_coeff(ring, &mut rng);
                f = f.add(&gp.mul_term(&c, &m))?;
            }
            if f.is_zero() {
                break;
            }
            cand.push(f);
        }
        if cand.len() != g {
            continue;
        }
        let c = Ideal::new(ring, cand.clone())?;
        if c.height()? == g && ideal.contains(&c)? {
            return Ok(CompleteIntersectionWitness {
                gens: cand,
                verified: true,
            });
        }
    }
    Err(Error::WitnessSearchFailed { height: g, attempts })
}

fn random_nonzero_coeff(ring: &PolyRing, rng: &mut ChaCha8Rng) -> Coeff {
    let field = ring.field();
    match field.characteristic() {
        0 => field.from_i64(rng.gen_range(1..=100)),
        p => field.from_i64(rng.gen_range(1..p as i64)),
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Advance the last index that can still move right.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
