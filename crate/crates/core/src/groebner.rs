//! Buchberger's algorithm with the Gebauer-Moeller pair criteria, normal
//! forms, and reduced Groebner bases.
//!
//! Pair selection follows the normal strategy (smallest lcm degree first)
//! with a sugar-degree tie break. The main loop only top-reduces; full
//! inter-reduction happens once at the end.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use smallvec::SmallVec;

use crate::budget::check_deadline;
use crate::geobucket::Geobucket;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// Criteria toggles, exposed so tests can compare runs with and without the
/// pair-elimination criteria.
#[derive(Debug, Clone, Copy)]
pub struct BuchbergerOpts {
    pub product_criterion: bool,
    pub chain_criterion: bool,
}

impl Default for BuchbergerOpts {
    fn default() -> Self {
        BuchbergerOpts {
            product_criterion: true,
            chain_criterion: true,
        }
    }
}

/// A reduced Groebner basis: monic elements, no term of any element divisible
/// by the leading monomial of another, sorted by ascending leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Wraps elements already known to be a reduced basis (e.g. the output of
    /// an elimination step followed by `reduce_basis`).
    pub(crate) fn from_reduced_parts(ring: PolyRing, elements: Vec<Polynomial>) -> GroebnerBasis {
        GroebnerBasis { ring, elements }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].leading_monomial().map_or(false, |m| m.is_one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    /// Normal form against this basis; zero exactly for ideal members.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }
}

/// An S-pair in the queue. The ordering key implements the selection
/// strategy; indices make it a total order for determinism.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SPair {
    lcm_deg: u32,
    sugar: u32,
    lcm_exps: SmallVec<[u16; 12]>,
    i: u32,
    j: u32,
}

impl Ord for SPair {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.lcm_deg, self.sugar, &self.lcm_exps, self.i, self.j).cmp(&(
            other.lcm_deg,
            other.sugar,
            &other.lcm_exps,
            other.i,
            other.j,
        ))
    }
}

impl PartialOrd for SPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn buchberger(gens: &[Polynomial]) -> Result<GroebnerBasis> {
    buchberger_with(gens, BuchbergerOpts::default())
}

pub fn buchberger_with(gens: &[Polynomial], opts: BuchbergerOpts) -> Result<GroebnerBasis> {
    let ring = common_ring(gens)?;
    let Some(ring) = ring else {
        return Err(Error::domain("cannot infer the ring of an empty generator list"));
    };
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    // Canonical input order makes runs reproducible regardless of caller
    // permutation (the reduced basis is unique anyway).
    let order = ring.order();
    input.sort_by(|a, b| {
        order
            .cmp_mon(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then_with(|| cmp_polys(a, b))
    });
    input.dedup();

    let mut state = Engine {
        ring: ring.clone(),
        basis: Vec::new(),
        sugars: Vec::new(),
        pairs: BTreeSet::new(),
        opts,
    };
    for g in input {
        let sugar = g.total_degree().unwrap_or(0);
        state.add_element(g, sugar);
    }

    while let Some(pair) = state.pairs.pop_first() {
        check_deadline()?;
        let (i, j) = (pair.i as usize, pair.j as usize);
        let spoly = state.s_polynomial(i, j)?;
        let mut sugar = pair.sugar;
        let reduced = state.top_reduce(spoly, &mut sugar)?;
        if !reduced.is_zero() {
            state.add_element(reduced.monic(), sugar);
        }
    }

    let elements = reduce_basis(&ring, state.basis)?;
    Ok(GroebnerBasis { ring, elements })
}

struct Engine {
    ring: PolyRing,
    basis: Vec<Polynomial>,
    sugars: Vec<u32>,
    pairs: BTreeSet<SPair>,
    opts: BuchbergerOpts,
}

impl Engine {
    fn lm(&self, i: usize) -> &Monomial {
        self.basis[i].leading_monomial().unwrap()
    }

    fn s_polynomial(&self, i: usize, j: usize) -> Result<Polynomial> {
        let (fi, fj) = (&self.basis[i], &self.basis[j]);
        let lcm = self.lm(i).lcm(self.lm(j));
        let field = self.ring.field();
        let a = fi.mul_term(&field.one(), &lcm.div(self.lm(i))?);
        let b = fj.mul_term(&field.one(), &lcm.div(self.lm(j))?);
        a.sub(&b)
    }

    /// Reduces the leading term until it is irreducible modulo the basis,
    /// accumulating in a geobucket so each step costs a bucket merge rather
    /// than a full-polynomial merge.
    fn top_reduce(&self, f: Polynomial, sugar: &mut u32) -> Result<Polynomial> {
        let field = *self.ring.field();
        let order = self.ring.order();
        let mut bucket = Geobucket::new(field, order);
        bucket.add(f.into_term_vec());
        'outer: loop {
            check_deadline()?;
            let Some(lt) = bucket.extract_lt() else {
                return Ok(Polynomial::zero(&self.ring));
            };
            for (g, gsugar) in self.basis.iter().zip(&self.sugars) {
                let gm = g.leading_monomial().unwrap();
                if gm.divides(&lt.mon) {
                    let m = lt.mon.div(gm)?;
                    *sugar = (*sugar).max(gsugar + m.degree());
                    // Basis elements are monic and the heads cancel exactly,
                    // so only the reducer's tail enters the bucket.
                    bucket.add(scaled_tail(&field, g, &field.neg(&lt.coeff), &m));
                    continue 'outer;
                }
            }
            let mut terms = vec![lt];
            terms.extend(bucket.into_terms());
            return Ok(Polynomial::from_sorted_terms(&self.ring, terms));
        }
    }

    /// Gebauer-Moeller update: installs pairs for a new basis element,
    /// pruning by the chain and product criteria where enabled.
    fn add_element(&mut self, h: Polynomial, sugar: u32) {
        let hidx = self.basis.len();
        self.basis.push(h);
        self.sugars.push(sugar);
        let t = self.lm(hidx).clone();

        let candidates: Vec<usize> = (0..hidx).collect();
        let lcm_with_t: Vec<Monomial> = candidates.iter().map(|&i| self.lm(i).lcm(&t)).collect();

        // Phase 1 (chain criterion among the new pairs): keep (i, h) only if
        // no other new pair's lcm divides its lcm. Coprime pairs survive this
        // phase so they can knock out others.
        let mut keep = vec![true; candidates.len()];
        if self.opts.chain_criterion {
            for a in 0..candidates.len() {
                if !keep[a] {
                    continue;
                }
                if self.lm(candidates[a]).coprime(&t) {
                    continue;
                }
                for b in 0..candidates.len() {
                    if a == b || !keep[b] {
                        continue;
                    }
                    if lcm_with_t[b].divides(&lcm_with_t[a]) {
                        let proper = lcm_with_t[b] != lcm_with_t[a];
                        // For equal lcms keep the earlier index.
                        if proper || b < a {
                            keep[a] = false;
                            break;
                        }
                    }
                }
            }
        }

        // Phase 2: product criterion.
        if self.opts.product_criterion {
            for (a, &i) in candidates.iter().enumerate() {
                if keep[a] && self.lm(i).coprime(&t) {
                    keep[a] = false;
                }
            }
        }

        // Phase 3: prune old pairs strictly superseded by the new element.
        if self.opts.chain_criterion {
            let old: Vec<SPair> = std::mem::take(&mut self.pairs).into_iter().collect();
            for p in old {
                let lcm_ij = Monomial::from_exps(&p.lcm_exps);
                let drop = t.divides(&lcm_ij)
                    && lcm_with_t[p.i as usize] != lcm_ij
                    && lcm_with_t[p.j as usize] != lcm_ij;
                if !drop {
                    self.pairs.insert(p);
                }
            }
        }

        for (a, &i) in candidates.iter().enumerate() {
            if !keep[a] {
                continue;
            }
            let lcm = &lcm_with_t[a];
            let si = self.sugars[i] + lcm.div(self.lm(i)).unwrap().degree();
            let sh = sugar + lcm.div(&t).unwrap().degree();
            self.pairs.insert(SPair {
                lcm_deg: lcm.degree(),
                sugar: si.max(sh),
                lcm_exps: lcm.exps().iter().copied().collect(),
                i: i as u32,
                j: hidx as u32,
            });
        }
    }
}

/// Full normal form of `f` against an arbitrary list of reducers: no term of
/// the result is divisible by any leading monomial of the list.
pub fn normal_form(f: &Polynomial, reducers: &[Polynomial]) -> Result<Polynomial> {
    let ring = f.ring();
    for g in reducers {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
    }
    let field = *ring.field();
    let mut bucket = Geobucket::new(field, ring.order());
    bucket.add(f.terms().to_vec());
    let mut done: Vec<crate::poly::Term> = Vec::new();
    'outer: loop {
        check_deadline()?;
        let Some(lt) = bucket.extract_lt() else {
            break;
        };
        for g in reducers {
            if g.is_zero() {
                continue;
            }
            let glt = g.leading_term()?;
            if glt.mon.divides(&lt.mon) {
                let m = lt.mon.div(&glt.mon)?;
                let c = field.div(&lt.coeff, &glt.coeff);
                bucket.add(scaled_tail(&field, g, &field.neg(&c), &m));
                continue 'outer;
            }
        }
        // Irreducible leading term: retire it. Remaining terms are strictly
        // smaller, so `done` stays sorted.
        done.push(lt);
    }
    Ok(Polynomial::from_sorted_terms(ring, done))
}

/// `c * m * (g - lt(g))` as a descending term list.
fn scaled_tail(
    field: &crate::field::FieldSpec,
    g: &Polynomial,
    c: &crate::field::Coeff,
    m: &Monomial,
) -> Vec<crate::poly::Term> {
    g.terms()[1..]
        .iter()
        .map(|t| crate::poly::Term {
            coeff: field.mul(&t.coeff, c),
            mon: t.mon.mul(m),
        })
        .collect()
}

/// Inter-reduces a Groebner basis (or any generating set whose leading terms
/// already generate the lead ideal) into the unique reduced basis.
pub fn reduce_basis(ring: &PolyRing, polys: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let order = ring.order();
    let mut nonzero: Vec<Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    nonzero.sort_by(|a, b| {
        order
            .cmp_mon(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then_with(|| cmp_polys(a, b))
    });

    // Minimal generators of the lead ideal: ascending order guarantees any
    // divisor appears before its multiples.
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in nonzero {
        let gm = g.leading_monomial()?.clone();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(&gm))
        {
            minimal.push(g);
        }
    }

    // Tail-reduce every element against the full set. No tail term can be
    // divisible by the element's own leading monomial (it would have to be at
    // least as large in the order), so keeping `g` in the reducer list is safe.
    let snapshot = minimal.clone();
    let mut out = Vec::with_capacity(minimal.len());
    for g in &snapshot {
        let lt = g.leading_term()?.clone();
        let lead = Polynomial::term(ring, lt.coeff, lt.mon);
        let tail = g.sub(&lead)?;
        let reduced_tail = normal_form(&tail, &snapshot)?;
        out.push(lead.add(&reduced_tail)?.monic());
    }
    out.sort_by(|a, b| order.cmp_mon(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(out)
}

/// Minimal monomial generators of the initial ideal of a reduced basis.
pub fn lead_ideal(gb: &GroebnerBasis) -> Vec<Monomial> {
    gb.elements
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect()
}

/// Checks the Buchberger criterion directly: every S-polynomial reduces to
/// zero. Intended as a test oracle, so no pair-elimination shortcuts.
pub fn is_groebner(polys: &[Polynomial]) -> Result<bool> {
    let nonzero: Vec<&Polynomial> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.len() <= 1 {
        return Ok(true);
    }
    let ring = nonzero[0].ring().clone();
    let field = ring.field();
    let list: Vec<Polynomial> = nonzero.iter().map(|p| (*p).clone()).collect();
    for i in 0..list.len() {
        for j in (i + 1)..list.len() {
            let (li, lj) = (list[i].leading_term()?, list[j].leading_term()?);
            let lcm = li.mon.lcm(&lj.mon);
            let a = list[i].mul_term(&field.inv(&li.coeff), &lcm.div(&li.mon)?);
            let b = list[j].mul_term(&field.inv(&lj.coeff), &lcm.div(&lj.mon)?);
            let s = a.sub(&b)?;
            if !normal_form(&s, &list)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn common_ring(polys: &[Polynomial]) -> Result<Option<PolyRing>> {
    let mut ring: Option<PolyRing> = None;
    for p in polys {
        match &ring {
            None => ring = Some(p.ring().clone()),
            Some(r) => {
                if r != p.ring() {
                    return Err(Error::RingMismatch);
                }
            }
        }
    }
    Ok(ring)
}

fn cmp_polys(a: &Polynomial, b: &Polynomial) -> Ordering {
    let order = a.ring().order();
    for (ta, tb) in a.terms().iter().zip(b.terms()) {
        match order.cmp_mon(&ta.mon, &tb.mon) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a.terms().len().cmp(&b.terms().len())
}
