//! Monomial orders: graded reverse lexicographic, lexicographic, and a
//! two-block elimination order (grevlex within each block).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Degree first; ties broken by the last nonzero entry of the exponent
    /// difference being negative for the larger monomial.
    GrevLex,
    /// Pure lexicographic, first variable strongest.
    Lex,
    /// Eliminates the first `split` variables: any monomial involving them
    /// exceeds any monomial that does not. Grevlex inside each block.
    Block { split: usize },
}

impl MonomialOrder {
    /// Total-order comparison. Errors when the exponent vectors disagree in
    /// length (monomials from different rings).
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::LengthMismatch {
                left: a.nvars(),
                right: b.nvars(),
            });
        }
        Ok(self.cmp_mon(a, b))
    }

    /// Comparison for monomials known to live in one ring.
    pub fn cmp_mon(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::GrevLex => grevlex(a.exps(), b.exps(), a.degree(), b.degree()),
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::Block { split } => {
                let (a1, a2) = a.exps().split_at(*split);
                let (b1, b2) = b.exps().split_at(*split);
                grevlex_slices(a1, b1).then_with(|| grevlex_slices(a2, b2))
            }
        }
    }
}

fn grevlex(a: &[u16], b: &[u16], deg_a: u32, deg_b: u32) -> Ordering {
    match deg_a.cmp(&deg_b) {
        Ordering::Equal => revlex_tie(a, b),
        ord => ord,
    }
}

fn grevlex_slices(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    grevlex(a, b, da, db)
}

fn revlex_tie(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            // Smaller trailing exponent means the larger monomial.
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}
