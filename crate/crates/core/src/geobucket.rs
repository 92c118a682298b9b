//! Geobucket accumulator for polynomial reduction. Long division repeatedly
//! adds medium-sized polynomials into one big work polynomial; merging into
//! size-stratified buckets amortizes that to roughly log-many merges per
//! term instead of one full merge per reduction step.

use std::cmp::Ordering;

use crate::field::FieldSpec;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Term;

const FANOUT: usize = 4;

pub(crate) struct Geobucket {
    field: FieldSpec,
    order: MonomialOrder,
    /// Each bucket holds terms sorted strictly descending, from `head` on.
    buckets: Vec<(Vec<Term>, usize)>,
}

impl Geobucket {
    pub fn new(field: FieldSpec, order: MonomialOrder) -> Geobucket {
        Geobucket {
            field,
            order,
            buckets: Vec::new(),
        }
    }

    fn capacity(level: usize) -> usize {
        FANOUT.pow(level as u32 + 1)
    }


    /// Adds terms (sorted strictly descending, no zeros, no duplicates).
    pub fn add(&mut self, terms: Vec<Term>) {
        if terms.is_empty() {
            return;
        }
        let mut level = 0;
        while level < self.buckets.len() && terms.len() > Self::capacity(level) {
            level += 1;
        }
        let mut carry = terms;
        loop {
            if level == self.buckets.len() {
                self.buckets.push((carry, 0));
                return;
            }
            let (existing, head) = std::mem::take(&mut self.buckets[level]);
            if existing.len() == head {
                self.buckets[level] = (carry, 0);
                return;
            }
            let merged = merge(&self.field, self.order, &existing[head..], &carry);
            if merged.len() <= Self::capacity(level) {
                self.buckets[level] = (merged, 0);
                return;
            }
            self.buckets[level] = (Vec::new(), 0);
            carry = merged;
            level += 1;
        }
    }

    /// Removes and returns the leading term, resolving cancellations between
    /// bucket heads. None when the accumulated polynomial is zero.
    pub fn extract_lt(&mut self) -> Option<Term> {
        loop {
            let mut best: Option<(usize, &Monomial)> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                let Some(t) = b.0.get(b.1) else { continue };
                best = Some(match best {
                    None => (i, &t.mon),
                    Some((bi, bm)) => {
                        if self.order.cmp_mon(&t.mon, bm) == Ordering::Greater {
                            (i, &t.mon)
                        } else {
                            (bi, bm)
                        }
                    }
                });
            }
            let (_, mon) = best?;
            let mon = mon.clone();
            let mut coeff = self.field.zero();
            for b in self.buckets.iter_mut() {
                if b.0.get(b.1).map(|t| &t.mon) == Some(&mon) {
                    coeff = self.field.add(&coeff, &b.0[b.1].coeff);
                    b.1 += 1;
                }
            }
            if !coeff.is_zero() {
                return Some(Term { coeff, mon });
            }
        }
    }

    /// Leading term without removing it (cancellations are still resolved;
    /// the surviving head is consolidated back into the bucket).
    pub fn peek_lt(&mut self) -> Option<Term> {
        let t = self.extract_lt()?;
        self.add(vec![t.clone()]);
        Some(t)
    }

    /// Drains everything into one descending term list.
    pub fn into_terms(mut self) -> Vec<Term> {
        let mut out = Vec::new();
        while let Some(t) = self.extract_lt() {
            out.push(t);
        }
        out
    }
}

fn merge(field: &FieldSpec, order: MonomialOrder, a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp_mon(&a[i].mon, &b[j].mon) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let coeff = field.add(&a[i].coeff, &b[j].coeff);
                if !coeff.is_zero() {
                    out.push(Term {
                        coeff,
                        mon: a[i].mon.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn t(c: i64, e: &[u16], f: &FieldSpec) -> Term {
        Term {
            coeff: f.from_i64(c),
            mon: Monomial::from_exps(e),
        }
    }

    #[test]
    fn accumulates_and_cancels() {
        let f = FieldSpec::Prime(32003);
        let mut gb = Geobucket::new(f, MonomialOrder::GrevLex);
        gb.add(vec![t(1, &[2, 0], &f), t(2, &[0, 1], &f)]);
        gb.add(vec![t(-1, &[2, 0], &f), t(3, &[1, 0], &f)]);
        let terms = gb.into_terms();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].mon, Monomial::from_exps(&[1, 0]));
        assert_eq!(terms[1].mon, Monomial::from_exps(&[0, 1]));
    }

    #[test]
    fn many_small_adds() {
        let f = FieldSpec::Prime(32003);
        let mut gb = Geobucket::new(f, MonomialOrder::GrevLex);
        for k in 0..100u16 {
            gb.add(vec![t(1, &[k, 0], &f)]);
            gb.add(vec![t(1, &[k, 0], &f)]);
        }
        let terms = gb.into_terms();
        assert_eq!(terms.len(), 100);
        assert!(terms.iter().all(|x| x.coeff == f.from_i64(2)));
    }
}
