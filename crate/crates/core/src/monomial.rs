//! Dense-exponent monomials with a cached total degree.

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Exps = SmallVec<[u16; 12]>;

/// A monomial in a fixed number of variables, stored as a dense exponent
/// vector. The total degree is cached and kept consistent by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: std::iter::repeat(0).take(nvars).collect(),
            deg: 0,
        }
    }

    /// The single variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Monomial {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps: exps.iter().copied().collect(),
            deg,
        }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Exact quotient `self / other`.
    pub fn div(&self, other: &Monomial) -> Result<Monomial> {
        if !other.divides(self) {
            return Err(Error::InexactDivision);
        }
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Monomial {
            exps,
            deg: self.deg - other.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Embeds into a ring with extra variables prepended.
    pub fn prepend_vars(&self, extra: usize) -> Monomial {
        let mut exps: Exps = std::iter::repeat(0).take(extra).collect();
        exps.extend(self.exps.iter().copied());
        Monomial {
            exps,
            deg: self.deg,
        }
    }

    /// Drops the first `extra` variables; they must all have exponent zero.
    pub fn drop_vars(&self, extra: usize) -> Result<Monomial> {
        if self.exps[..extra].iter().any(|&e| e != 0) {
            return Err(Error::InexactDivision);
        }
        Ok(Monomial::from_exps(&self.exps[extra..]))
    }
}

/// All monomials of the given total degree in `nvars` variables, in a fixed
/// deterministic order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    fill(&mut out, &mut exps, 0, degree);
    out
}

fn fill(out: &mut Vec<Monomial>, exps: &mut Vec<u16>, var: usize, rest: u32) {
    if var + 1 == exps.len() {
        exps[var] = rest as u16;
        out.push(Monomial::from_exps(exps));
        exps[var] = 0;
        return;
    }
    for e in (0..=rest).rev() {
        exps[var] = e as u16;
        fill(out, exps, var + 1, rest - e);
    }
    exps[var] = 0;
}
