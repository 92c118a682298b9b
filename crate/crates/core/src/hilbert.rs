//! Hilbert series of graded quotients, computed from the lead ideal by the
//! standard pivot recursion on monomial ideals.
//!
//! The series of R/I is N(t)/(1-t)^n. The reduced form Q(t)/(1-t)^d with
//! Q(1) != 0 exposes the Krull dimension d and the multiplicity Q(1).

use crate::error::{Error, Result};
use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    /// Coefficients of N(t); empty means the zero series (unit ideal).
    numerator: Vec<i64>,
    nvars: usize,
    /// Q(t) after cancelling all (1-t) factors.
    reduced: Vec<i64>,
    /// d with series Q(t)/(1-t)^d; equals the Krull dimension of R/I.
    dim: i64,
}

impl HilbertSeries {
    /// Series of R/I where the monomial list generates the lead ideal of I.
    pub fn from_monomials(nvars: usize, gens: &[Monomial]) -> HilbertSeries {
        let minimal = minimalize(gens.to_vec());
        let numerator = numerator(minimal, nvars);
        HilbertSeries::from_numerator(nvars, numerator)
    }

    fn from_numerator(nvars: usize, numerator: Vec<i64>) -> HilbertSeries {
        if numerator.is_empty() {
            return HilbertSeries {
                numerator,
                nvars,
                reduced: Vec::new(),
                dim: -1,
            };
        }
        let mut reduced = trim(numerator.clone());
        let mut cancelled = 0;
        while let Some(q) = divide_by_one_minus_t(&reduced) {
            reduced = q;
            cancelled += 1;
        }
        HilbertSeries {
            numerator,
            nvars,
            reduced,
            dim: nvars as i64 - cancelled as i64,
        }
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Krull dimension of R/I; -1 for the unit ideal.
    pub fn dim(&self) -> i64 {
        self.dim
    }

    /// Height (codimension) of the ideal; nvars for the unit ideal.
    pub fn height(&self) -> usize {
        if self.dim < 0 {
            self.nvars
        } else {
            self.nvars - self.dim as usize
        }
    }

    /// Multiplicity e = Q(1). Errors on the unit ideal, whose quotient is zero.
    pub fn multiplicity(&self) -> Result<i64> {
        if self.numerator.is_empty() {
            return Err(Error::domain("multiplicity of the zero module is undefined"));
        }
        Ok(self.reduced.iter().sum())
    }

    /// dim_k (R/I)_n.
    pub fn hilbert_function(&self, n: u32) -> i64 {
        let nv = self.nvars as i64;
        let mut total = 0i64;
        for (j, &c) in self.numerator.iter().enumerate() {
            let j = j as i64;
            if j <= n as i64 {
                total += c * binomial(n as i64 - j + nv - 1, nv - 1);
            }
        }
        total
    }
}

/// Drops trailing zeros.
fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Divides by (1-t) when exact, i.e. when the coefficient sum vanishes.
fn divide_by_one_minus_t(n: &[i64]) -> Option<Vec<i64>> {
    if n.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut out = Vec::with_capacity(n.len().saturating_sub(1));
    let mut acc = 0i64;
    for &c in &n[..n.len().saturating_sub(1)] {
        acc += c;
        out.push(acc);
    }
    Some(trim(out))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    if gens
        .iter()
        .all(|g| g.exps().iter().filter(|&&e| e > 0).count() == 1)
    {
        // A regular sequence of pure powers: N = prod (1 - t^deg).
        let mut acc = vec![1i64];
        for g in &gens {
            acc = mul_one_minus_power(&acc, g.degree() as usize);
        }
        return trim(acc);
    }

    // Pivot on the most frequent variable among the mixed minimal generators
    // (those in at least two variables). Restricting to mixed generators
    // guarantees I + (pivot) strictly shrinks, so the recursion terminates.
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        if g.exps().iter().filter(|&&e| e > 0).count() < 2 {
            continue;
        }
        for (v, &e) in g.exps().iter().enumerate() {
            if e > 0 {
                counts[v] += 1;
            }
        }
    }
    let pivot = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(v, _)| v)
        .unwrap();

    // I + (x_pivot): generators free of the pivot, plus the pivot itself.
    let mut plus: Vec<Monomial> = gens
        .iter()
        .filter(|g| g.exp(pivot) == 0)
        .cloned()
        .collect();
    plus.push(Monomial::var(nvars, pivot));

    // I : x_pivot: pivot exponents reduced by one.
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            if g.exp(pivot) > 0 {
                let mut exps: Vec<u16> = g.exps().to_vec();
                exps[pivot] -= 1;
                Monomial::from_exps(&exps)
            } else {
                g.clone()
            }
        })
        .collect();

    let a = numerator(minimalize(plus), nvars);
    let b = numerator(minimalize(colon), nvars);
    // N(I) = N(I + (p)) + t * N(I : p).
    let mut out = vec![0i64; a.len().max(b.len() + 1)];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i + 1] += c;
    }
    trim(out)
}

fn mul_one_minus_power(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i] += c;
        out[i + d] -= c;
    }
    out
}

pub(crate) fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}
