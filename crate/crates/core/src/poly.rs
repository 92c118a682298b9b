//! Multivariate polynomials with exact coefficients, kept in canonical form:
//! terms strictly descending in the ring's monomial order, no zero terms.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::ring::PolyRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coeff,
    pub mon: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &PolyRing) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &PolyRing) -> Polynomial {
        Polynomial::constant(ring, 1)
    }

    pub fn constant(ring: &PolyRing, n: i64) -> Polynomial {
        let c = ring.field().from_i64(n);
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                coeff: c,
                mon: Monomial::one(ring.nvars()),
            }],
        }
    }

    pub fn var(ring: &PolyRing, i: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                coeff: ring.field().one(),
                mon: Monomial::var(ring.nvars(), i),
            }],
        }
    }

    pub fn term(ring: &PolyRing, coeff: Coeff, mon: Monomial) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero(ring);
        }
        debug_assert_eq!(mon.nvars(), ring.nvars());
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term { coeff, mon }],
        }
    }

    /// Builds a polynomial from arbitrary (coeff, monomial) pairs, sorting,
    /// merging duplicates and dropping zeros.
    pub fn from_terms(ring: &PolyRing, mut terms: Vec<Term>) -> Polynomial {
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp_mon(&b.mon, &a.mon));
        let field = ring.field();
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mon == t.mon => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !t.coeff.is_zero() {
                        out.push(t);
                    }
                }
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms already in strictly descending canonical order.
    pub(crate) fn from_sorted_terms(ring: &PolyRing, terms: Vec<Term>) -> Polynomial {
        #[cfg(debug_assertions)]
        {
            let order = ring.order();
            for w in terms.windows(2) {
                debug_assert_eq!(
                    order.cmp_mon(&w[0].mon, &w[1].mon),
                    Ordering::Greater,
                    "terms not strictly descending"
                );
            }
            debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn into_term_vec(self) -> Vec<Term> {
        self.terms
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// The maximal term under the ring's order. Errors on the zero polynomial.
    pub fn leading_term(&self) -> Result<&Term> {
        self.terms.first().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        Ok(&self.leading_term()?.mon)
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mon.degree()).max()
    }

    /// True when every term shares one total degree (vacuously for zero).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => {
                let d = first.mon.degree();
                self.terms.iter().all(|t| t.mon.degree() == d)
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match order.cmp_mon(&a.mon, &b.mon) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let coeff = if negate_other {
                        field.neg(&b.coeff)
                    } else {
                        b.coeff.clone()
                    };
                    out.push(Term {
                        coeff,
                        mon: b.mon.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = if negate_other {
                        field.sub(&a.coeff, &b.coeff)
                    } else {
                        field.add(&a.coeff, &b.coeff)
                    };
                    if !coeff.is_zero() {
                        out.push(Term {
                            coeff,
                            mon: a.mon.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for b in &other.terms[j..] {
            let coeff = if negate_other {
                field.neg(&b.coeff)
            } else {
                b.coeff.clone()
            };
            out.push(Term {
                coeff,
                mon: b.mon.clone(),
            });
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.neg(&t.coeff),
                    mon: t.mon.clone(),
                })
                .collect(),
        }
    }

    /// Multiplies by a single term. Order-preserving, so no re-sort needed.
    pub fn mul_term(&self, coeff: &Coeff, mon: &Monomial) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(&t.coeff, coeff),
                    mon: t.mon.mul(mon),
                })
                .collect(),
        }
    }

    pub fn scale(&self, coeff: &Coeff) -> Polynomial {
        self.mul_term(coeff, &Monomial::one(self.ring.nvars()))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        // Accumulate partial products by merging; keeps everything canonical.
        let (short, long) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for t in &short.terms {
            let part = long.mul_term(&t.coeff, &t.mon);
            acc = acc.merge(&part, false);
        }
        Ok(acc)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(lead) => {
                if lead.coeff.is_one() {
                    self.clone()
                } else {
                    self.scale(&self.ring.field().inv(&lead.coeff))
                }
            }
        }
    }

    /// Exact division by `divisor`; errors unless the quotient is exact.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::domain("division by the zero polynomial"));
        }
        let field = self.ring.field();
        let dlt = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot_terms = Vec::new();
        while let Some(lt) = rem.terms.first() {
            let mon = lt.mon.div(&dlt.mon).map_err(|_| Error::InexactDivision)?;
            let coeff = field.div(&lt.coeff, &dlt.coeff);
            let piece = divisor.mul_term(&coeff, &mon);
            rem = rem.merge(&piece, true);
            quot_terms.push(Term { coeff, mon });
        }
        // Leading terms strictly decrease, so the quotient is already sorted.
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: quot_terms,
        })
    }

    /// Transplants the polynomial into a ring with `extra` new variables in
    /// front (the elimination ring used by intersections).
    pub fn prepend_vars(&self, target: &PolyRing, extra: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                mon: t.mon.prepend_vars(extra),
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Inverse of `prepend_vars`: drops the first `extra` variables, which
    /// must not occur in any term.
    pub fn drop_vars(&self, target: &PolyRing, extra: usize) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                coeff: t.coeff.clone(),
                mon: t.mon.drop_vars(extra)?,
            });
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Reinterprets the polynomial in a ring with the same variables but a
    /// different order or field (integer coefficients map through i64 only
    /// when fields differ; here fields must agree).
    pub fn reorder(&self, target: &PolyRing) -> Polynomial {
        debug_assert_eq!(self.ring.vars(), target.vars());
        debug_assert_eq!(self.ring.field(), target.field());
        let terms = self.terms.to_vec();
        Polynomial::from_terms(target, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring2() -> PolyRing {
        PolyRing::grevlex(&["x", "y"], FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn add_cancels() {
        let r = ring2();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let s = x.add(&y).unwrap();
        let d = x.sub(&y).unwrap();
        let two_x = s.add(&d).unwrap();
        assert_eq!(two_x, x.scale(&r.field().from_i64(2)));
        assert_eq!(x.add(&Polynomial::zero(&r)).unwrap(), x);
    }

    #[test]
    fn modular_add() {
        let r = PolyRing::grevlex(&["x"], FieldSpec::Prime(32003)).unwrap();
        let x = Polynomial::var(&r, 0);
        let a = x.scale(&r.field().from_i64(32000));
        let b = x.scale(&r.field().from_i64(5));
        assert_eq!(a.add(&b).unwrap(), x.scale(&r.field().from_i64(2)));
    }

    #[test]
    fn mul_difference_of_squares() {
        let r = ring2();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let lhs = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let rhs = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(x.mul(&Polynomial::one(&r)).unwrap(), x);
    }

    #[test]
    fn leading_term_grevlex() {
        let r = PolyRing::grevlex(&["x", "y", "z"], FieldSpec::Rationals).unwrap();
        // x^2 - y z: same degree, x^2 wins under grevlex.
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let z = Polynomial::var(&r, 2);
        let f = x.mul(&x).unwrap().sub(&y.mul(&z).unwrap()).unwrap();
        assert_eq!(f.leading_monomial().unwrap(), &Monomial::from_exps(&[2, 0, 0]));
        assert!(Polynomial::zero(&r).leading_term().is_err());
    }

    #[test]
    fn homogeneity_and_degree() {
        let r = ring2();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let xy = x.mul(&y).unwrap();
        let x2 = x.mul(&x).unwrap();
        assert!(x2.add(&xy).unwrap().is_homogeneous());
        assert!(!x2.add(&x).unwrap().is_homogeneous());
        assert_eq!(Polynomial::zero(&r).total_degree(), None);
        assert_eq!(x2.total_degree(), Some(2));
    }

    #[test]
    fn exact_division() {
        let r = ring2();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = x.add(&y).unwrap();
        let g = x.sub(&y).unwrap();
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod.exact_div(&f).unwrap(), g);
        assert!(x.exact_div(&y).is_err());
    }
}
