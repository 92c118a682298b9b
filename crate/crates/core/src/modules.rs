//! Groebner bases for submodules of free modules, used to compute syzygies.
//!
//! Syzygies of (g_1, ..., g_k) in R^r are read off a basis of the extended
//! module generated by (g_i, e_i) in R^r (+) R^k under a block order that
//! makes every term in the R^r part larger than every term in the R^k part:
//! basis elements whose lead lands in the second block have their whole first
//! block zero and project to generators of the syzygy module.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use smallvec::SmallVec;

use crate::budget::check_deadline;
use crate::error::{Error, Result};
use crate::geobucket::Geobucket;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// An element of a free module R^rank, stored componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModElem {
    comps: Vec<Polynomial>,
}

impl ModElem {
    pub fn new(comps: Vec<Polynomial>) -> ModElem {
        ModElem { comps }
    }

    pub fn zero(ring: &PolyRing, rank: usize) -> ModElem {
        ModElem {
            comps: (0..rank).map(|_| Polynomial::zero(ring)).collect(),
        }
    }

    pub fn comps(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn add(&self, other: &ModElem) -> Result<ModElem> {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(ModElem { comps })
    }

    fn mul_term(&self, coeff: &crate::field::Coeff, mon: &Monomial) -> ModElem {
        ModElem {
            comps: self.comps.iter().map(|c| c.mul_term(coeff, mon)).collect(),
        }
    }

    /// Leading (position, monomial, coeff) under the split order: terms in
    /// positions below `split` dominate, ties fall to the ring order, then to
    /// the lower position.
    fn lead(&self, ring: &PolyRing, split: usize) -> Option<(usize, &Monomial, &crate::field::Coeff)> {
        let order = ring.order();
        let mut best: Option<(usize, &Monomial, &crate::field::Coeff)> = None;
        for (pos, c) in self.comps.iter().enumerate() {
            let Ok(t) = c.leading_term() else { continue };
            let cand = (pos, &t.mon, &t.coeff);
            best = Some(match best {
                None => cand,
                Some(cur) => {
                    if term_cmp(order, split, (cand.0, cand.1), (cur.0, cur.1)) == Ordering::Greater {
                        cand
                    } else {
                        cur
                    }
                }
            });
        }
        best
    }

    /// Twisted degree of a homogeneous element; errors if components disagree.
    pub fn twisted_degree(&self, twists: &[u32]) -> Result<u32> {
        let mut deg: Option<u32> = None;
        for (pos, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_homogeneous() {
                return Err(Error::NonHomogeneous(format!("component {pos}")));
            }
            let d = c.total_degree().unwrap() + twists[pos];
            match deg {
                None => deg = Some(d),
                Some(existing) if existing == d => {}
                Some(existing) => {
                    return Err(Error::NonHomogeneous(format!(
                        "component degrees disagree: {existing} vs {d}"
                    )))
                }
            }
        }
        deg.ok_or(Error::ZeroPolynomial)
    }
}

fn term_cmp(
    order: crate::order::MonomialOrder,
    split: usize,
    a: (usize, &Monomial),
    b: (usize, &Monomial),
) -> Ordering {
    let block = |p: usize| usize::from(p >= split);
    block(b.0)
        .cmp(&block(a.0))
        .then_with(|| order.cmp_mon(a.1, b.1))
        .then_with(|| b.0.cmp(&a.0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ModPair {
    sugar: u32,
    lcm_deg: u32,
    pos: usize,
    lcm_exps: SmallVec<[u16; 12]>,
    i: u32,
    j: u32,
}

impl Ord for ModPair {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.sugar, self.lcm_deg, self.pos, &self.lcm_exps, self.i, self.j).cmp(&(
            other.sugar,
            other.lcm_deg,
            other.pos,
            &other.lcm_exps,
            other.i,
            other.j,
        ))
    }
}

impl PartialOrd for ModPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Generators of the syzygy module of `gens` (elements of a common R^r).
/// `twists` gives the degree of each basis vector of R^r, so results can be
/// graded; pass zeros for the ungraded case.
pub fn syzygies(ring: &PolyRing, gens: &[ModElem], twists: &[u32]) -> Result<Vec<ModElem>> {
    let k = gens.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let r = gens[0].rank();
    debug_assert_eq!(twists.len(), r);
    let field = ring.field();

    // Extended elements (g_i, e_i) in R^(r+k).
    let mut extended = Vec::with_capacity(k);
    for (i, g) in gens.iter().enumerate() {
        debug_assert_eq!(g.rank(), r);
        let mut comps = g.comps.to_vec();
        comps.extend((0..k).map(|j| {
            if j == i {
                Polynomial::one(ring)
            } else {
                Polynomial::zero(ring)
            }
        }));
        extended.push(ModElem { comps });
    }

    let mut engine = ModEngine {
        ring: ring.clone(),
        split: r,
        basis: Vec::new(),
        leads: Vec::new(),
        sugars: Vec::new(),
        pairs: BTreeSet::new(),
    };
    for (i, e) in extended.into_iter().enumerate() {
        // Sugar from the twisted degree of the underlying generator.
        let sugar = gens[i]
            .twisted_degree(twists)
            .unwrap_or_else(|_| e.comps[..r].iter().filter_map(|c| c.total_degree()).max().unwrap_or(0));
        engine.add_element(e, sugar);
    }

    while let Some(pair) = engine.pairs.pop_first() {
        check_deadline()?;
        let (i, j) = (pair.i as usize, pair.j as usize);
        let s = engine.s_vector(i, j)?;
        let mut sugar = pair.sugar;
        let reduced = engine.top_reduce(s, &mut sugar)?;
        if !reduced.is_zero() {
            engine.add_element(reduced, sugar);
        }
    }

    // Elements whose first block vanished are the syzygies; drop the ones
    // whose leads are divisible by another's so the caller sees a minimal
    // Groebner basis rather than the full redundancy of the extended run.
    let mut raw = Vec::new();
    for b in engine.basis {
        if b.comps[..r].iter().all(|c| c.is_zero()) {
            raw.push(ModElem {
                comps: b.comps[r..].to_vec(),
            });
        }
    }
    minimalize_leads(ring, field, raw)
}

/// Monic elements with pairwise non-divisible leads (per position), in a
/// deterministic order. Tails are left untouched; callers that feed the
/// result onward only need a generating set.
fn minimalize_leads(
    ring: &PolyRing,
    field: &crate::field::FieldSpec,
    elems: Vec<ModElem>,
) -> Result<Vec<ModElem>> {
    let order = ring.order();
    let mut with_leads: Vec<(usize, Monomial, ModElem)> = elems
        .into_iter()
        .filter(|e| !e.is_zero())
        .map(|e| {
            let (p, m, c) = e.lead(ring, 0).expect("nonzero");
            let (p, m, c) = (p, m.clone(), c.clone());
            let e = if c.is_one() {
                e
            } else {
                e.mul_term(&field.inv(&c), &Monomial::one(ring.nvars()))
            };
            (p, m, e)
        })
        .collect();
    with_leads.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| order.cmp_mon(&a.1, &b.1))
            .then_with(|| cmp_elems(&a.2, &b.2, ring))
    });

    let mut minimal: Vec<(usize, Monomial, ModElem)> = Vec::new();
    for (p, m, e) in with_leads {
        if !minimal
            .iter()
            .any(|(hp, hm, _)| *hp == p && hm.divides(&m))
        {
            minimal.push((p, m, e));
        }
    }
    Ok(minimal.into_iter().map(|(_, _, e)| e).collect())
}

/// Selects a minimal generating set from homogeneous generators of a graded
/// submodule of a twisted free module, working degree by degree: an element
/// is kept exactly when it falls outside the span of positive-degree
/// multiples of the full set plus the generators already kept (graded
/// Nakayama). Feeding resolutions minimal sets at every level keeps the
/// iterated syzygy sizes proportional to the Betti numbers.
pub fn minimal_generators(
    ring: &PolyRing,
    elems: Vec<ModElem>,
    twists: &[u32],
) -> Result<Vec<ModElem>> {
    let field = *ring.field();
    let mut with_deg: Vec<(u32, ModElem)> = Vec::with_capacity(elems.len());
    for e in elems {
        if e.is_zero() {
            continue;
        }
        with_deg.push((e.twisted_degree(twists)?, e));
    }
    with_deg.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_elems(&a.1, &b.1, ring)));

    let mut kept: Vec<ModElem> = Vec::new();
    let mut d_idx = 0;
    while d_idx < with_deg.len() {
        check_deadline()?;
        let d = with_deg[d_idx].0;
        let mut end = d_idx;
        while end < with_deg.len() && with_deg[end].0 == d {
            end += 1;
        }
        // Column basis: all (position, monomial) pairs of twisted degree d.
        let mut columns: Vec<(usize, Monomial)> = Vec::new();
        let rank = with_deg[d_idx].1.rank();
        for pos in 0..rank {
            if twists[pos] > d {
                continue;
            }
            for m in crate::monomial::monomials_of_degree(ring.nvars(), d - twists[pos]) {
                columns.push((pos, m));
            }
        }
        let col_index: std::collections::HashMap<(usize, &Monomial), usize> = columns
            .iter()
            .enumerate()
            .map(|(i, (p, m))| ((*p, m), i))
            .collect();
        let to_vector = |e: &ModElem| -> Vec<crate::field::Coeff> {
            let mut v = vec![field.zero(); columns.len()];
            for (pos, comp) in e.comps.iter().enumerate() {
                for t in comp.terms() {
                    v[col_index[&(pos, &t.mon)]] = t.coeff.clone();
                }
            }
            v
        };

        let mut sweep = crate::linalg::RankSweep::new(field);
        // Positive-degree multiples of the generators kept so far. They
        // already generate every lower degree, so the discarded raw elements
        // contribute nothing new here.
        for e in &kept {
            let e_deg = e.twisted_degree(twists)?;
            if e_deg >= d {
                continue;
            }
            for m in crate::monomial::monomials_of_degree(ring.nvars(), d - e_deg) {
                let multiple = e.mul_term(&field.one(), &m);
                sweep.absorb(to_vector(&multiple));
            }
        }
        for k in d_idx..end {
            if sweep.absorb(to_vector(&with_deg[k].1)) {
                kept.push(with_deg[k].1.clone());
            }
        }
        d_idx = end;
    }
    Ok(kept)
}

fn cmp_elems(a: &ModElem, b: &ModElem, ring: &PolyRing) -> Ordering {
    let order = ring.order();
    for (ca, cb) in a.comps.iter().zip(&b.comps) {
        for (ta, tb) in ca.terms().iter().zip(cb.terms()) {
            match order.cmp_mon(&ta.mon, &tb.mon) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match ca.num_terms().cmp(&cb.num_terms()) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

struct ModEngine {
    ring: PolyRing,
    split: usize,
    basis: Vec<ModElem>,
    leads: Vec<(usize, Monomial)>,
    sugars: Vec<u32>,
    pairs: BTreeSet<ModPair>,
}

impl ModEngine {
    fn s_vector(&self, i: usize, j: usize) -> Result<ModElem> {
        let (pi, mi) = &self.leads[i];
        let (pj, mj) = &self.leads[j];
        debug_assert_eq!(pi, pj);
        let lcm = mi.lcm(mj);
        let field = self.ring.field();
        let a = self.basis[i].mul_term(&field.one(), &lcm.div(mi)?);
        let b = self.basis[j].mul_term(&field.neg(&field.one()), &lcm.div(mj)?);
        a.add(&b)
    }

    /// Top reduction over per-component geobuckets; the reducer's lead
    /// component enters tail-only since its head cancels exactly.
    fn top_reduce(&self, f: ModElem, sugar: &mut u32) -> Result<ModElem> {
        let field = *self.ring.field();
        let order = self.ring.order();
        let rank = f.rank();
        let mut bufs: Vec<Geobucket> = f
            .comps
            .into_iter()
            .map(|c| {
                let mut b = Geobucket::new(field, order);
                b.add(c.into_term_vec());
                b
            })
            .collect();
        'outer: loop {
            check_deadline()?;
            let mut best: Option<(usize, crate::poly::Term)> = None;
            for (pos, b) in bufs.iter_mut().enumerate() {
                let Some(t) = b.peek_lt() else { continue };
                best = Some(match best {
                    None => (pos, t),
                    Some((bp, bt)) => {
                        if term_cmp(order, self.split, (pos, &t.mon), (bp, &bt.mon))
                            == Ordering::Greater
                        {
                            (pos, t)
                        } else {
                            (bp, bt)
                        }
                    }
                });
            }
            let Some((pos, lt)) = best else {
                return Ok(ModElem::zero(&self.ring, rank));
            };
            for (idx, (gpos, gmon)) in self.leads.iter().enumerate() {
                if *gpos == pos && gmon.divides(&lt.mon) {
                    let m = lt.mon.div(gmon)?;
                    *sugar = (*sugar).max(self.sugars[idx] + m.degree());
                    let neg = field.neg(&lt.coeff);
                    // Pop the consolidated head; the reducer is monic so the
                    // heads cancel exactly.
                    bufs[pos].extract_lt();
                    let g = &self.basis[idx];
                    for (j, comp) in g.comps.iter().enumerate() {
                        if comp.is_zero() {
                            continue;
                        }
                        let terms: Vec<crate::poly::Term> = if j == pos {
                            comp.terms()[1..]
                                .iter()
                                .map(|t| crate::poly::Term {
                                    coeff: field.mul(&t.coeff, &neg),
                                    mon: t.mon.mul(&m),
                                })
                                .collect()
                        } else {
                            comp.terms()
                                .iter()
                                .map(|t| crate::poly::Term {
                                    coeff: field.mul(&t.coeff, &neg),
                                    mon: t.mon.mul(&m),
                                })
                                .collect()
                        };
                        bufs[j].add(terms);
                    }
                    continue 'outer;
                }
            }
            // Irreducible lead: materialize what is left.
            let comps: Vec<Polynomial> = bufs
                .into_iter()
                .map(|b| Polynomial::from_sorted_terms(&self.ring, b.into_terms()))
                .collect();
            return Ok(ModElem { comps });
        }
    }

    fn add_element(&mut self, e: ModElem, sugar: u32) {
        let field = self.ring.field();
        let (pos, mon, coeff) = {
            let (p, m, c) = e.lead(&self.ring, self.split).expect("nonzero element");
            (p, m.clone(), c.clone())
        };
        let e = if coeff.is_one() {
            e
        } else {
            e.mul_term(&field.inv(&coeff), &Monomial::one(self.ring.nvars()))
        };
        let hidx = self.basis.len();
        self.basis.push(e);
        self.leads.push((pos, mon.clone()));
        self.sugars.push(sugar);

        // Candidate pairs share the lead position. The product criterion is
        // not valid for modules, so only the chain criterion prunes here.
        let candidates: Vec<usize> = (0..hidx).filter(|&i| self.leads[i].0 == pos).collect();
        let lcms: Vec<Monomial> = candidates
            .iter()
            .map(|&i| self.leads[i].1.lcm(&mon))
            .collect();

        let mut keep = vec![true; candidates.len()];
        for a in 0..candidates.len() {
            if !keep[a] {
                continue;
            }
            for b in 0..candidates.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if lcms[b].divides(&lcms[a]) && (lcms[b] != lcms[a] || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }

        let old: Vec<ModPair> = std::mem::take(&mut self.pairs).into_iter().collect();
        for p in old {
            let same_pos = p.pos == pos;
            if same_pos {
                let lcm_ij = Monomial::from_exps(&p.lcm_exps);
                let li = self.leads[p.i as usize].1.lcm(&mon);
                let lj = self.leads[p.j as usize].1.lcm(&mon);
                if mon.divides(&lcm_ij) && li != lcm_ij && lj != lcm_ij {
                    continue;
                }
            }
            self.pairs.insert(p);
        }

        for (a, &i) in candidates.iter().enumerate() {
            if !keep[a] {
                continue;
            }
            let lcm = &lcms[a];
            let si = self.sugars[i] + lcm.div(&self.leads[i].1).unwrap().degree();
            let sh = sugar + lcm.div(&mon).unwrap().degree();
            self.pairs.insert(ModPair {
                sugar: si.max(sh),
                lcm_deg: lcm.degree(),
                pos,
                lcm_exps: lcm.exps().iter().copied().collect(),
                i: i as u32,
                j: hidx as u32,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::grevlex(vars, FieldSpec::Prime(32003)).unwrap()
    }

    fn elem(ring: &PolyRing, comps: &[&str]) -> ModElem {
        ModElem::new(comps.iter().map(|s| parse(s, ring).unwrap()).collect())
    }

    #[test]
    fn koszul_syzygy_of_two_elements() {
        let r = ring(&["x", "y"]);
        let gens = vec![elem(&r, &["x"]), elem(&r, &["y"])];
        let syz = syzygies(&r, &gens, &[0]).unwrap();
        assert_eq!(syz.len(), 1);
        // y * x - x * y = 0 up to sign and scaling.
        let s = &syz[0];
        let check = s.comps()[0]
            .mul(&parse("x", &r).unwrap())
            .unwrap()
            .add(&s.comps()[1].mul(&parse("y", &r).unwrap()).unwrap())
            .unwrap();
        assert!(check.is_zero());
    }

    #[test]
    fn redundant_generator_syzygy() {
        let r = ring(&["x", "y"]);
        // g2 = x * g1 forces the syzygy (x, -1).
        let gens = vec![elem(&r, &["x^2"]), elem(&r, &["x^3"])];
        let syz = syzygies(&r, &gens, &[0]).unwrap();
        assert!(!syz.is_empty());
        for s in &syz {
            let check = s.comps()[0]
                .mul(&parse("x^2", &r).unwrap())
                .unwrap()
                .add(&s.comps()[1].mul(&parse("x^3", &r).unwrap()).unwrap())
                .unwrap();
            assert!(check.is_zero());
        }
    }

    #[test]
    fn syzygies_of_a_regular_sequence_are_koszul() {
        let r = ring(&["x", "y", "z"]);
        let gens = vec![elem(&r, &["x"]), elem(&r, &["y"]), elem(&r, &["z"])];
        let syz = syzygies(&r, &gens, &[0]).unwrap();
        // All syzygies of a regular sequence are spanned by the three Koszul
        // relations; the computed set generates, so it has at least three.
        assert!(syz.len() >= 3);
        for s in &syz {
            let mut acc = Polynomial::zero(&r);
            for (c, g) in s.comps().iter().zip(&gens) {
                acc = acc.add(&c.mul(&g.comps()[0]).unwrap()).unwrap();
            }
            assert!(acc.is_zero());
            assert_eq!(s.twisted_degree(&[1, 1, 1]).unwrap(), 2);
        }
    }
}
